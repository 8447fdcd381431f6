#include "relroots/poly.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

namespace relroots {

Int binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    if (denominator(r) == 1) {
        os << numerator(r);
    } else {
        os << numerator(r) << "/" << denominator(r);
    }
    return os.str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::runtime_error("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw parse_error("invalid rational \"" + s + "\"", 0);
    }
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(Int c) {
    Poly p;
    if (c != 0) p.c_.push_back(std::move(c));
    return p;
}

Poly Poly::q_power(int k) {
    Poly p;
    p.c_.assign(k + 1, 0);
    p.c_[k] = 1;
    return p;
}

Poly Poly::one_minus_q_power(int k) {
    Poly p;
    p.c_.assign(k + 1, 0);
    p.c_[0] = 1;
    p.c_[k] -= 1;  // k == 0 gives the zero polynomial
    p.trim();
    return p;
}

Poly Poly::one_minus_q_to(int k) {
    Poly p;
    p.c_.resize(k + 1);
    for (int i = 0; i <= k; ++i) {
        p.c_[i] = binomial(k, i);
        if (i & 1) p.c_[i] = -p.c_[i];
    }
    return p;
}

const Int& Poly::coeff(int i) const {
    static const Int kZero = 0;
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<std::size_t>(i)];
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        if (i < c_.size()) r.c_[i] += c_[i];
        if (i < o.c_.size()) r.c_[i] += o.c_[i];
    }
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        if (i < c_.size()) r.c_[i] += c_[i];
        if (i < o.c_.size()) r.c_[i] -= o.c_[i];
    }
    r.trim();
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    Poly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    r.trim();
    return r;
}

Poly Poly::operator*(const Int& k) const {
    if (k == 0) return zero();
    Poly r = *this;
    for (auto& c : r.c_) c *= k;
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return zero();
    Poly r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * static_cast<int>(i);
    r.trim();
    return r;
}

Rat Poly::eval(const Rat& q0) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= q0;
        acc += *it;
    }
    return acc;
}

Int Poly::eval_int(const Int& q0) const {
    Int acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= q0;
        acc += *it;
    }
    return acc;
}

Poly Poly::divide_exact(const Poly& divisor) const {
    if (divisor.is_zero()) throw integrity_error("exact division by zero polynomial");
    if (is_zero()) return zero();
    if (degree() < divisor.degree())
        throw integrity_error("exact division: divisor degree exceeds dividend degree");

    std::vector<Int> rem = c_;
    const auto& d = divisor.c_;
    const Int& lead = d.back();
    const int qdeg = degree() - divisor.degree();
    std::vector<Int> quot(qdeg + 1);
    for (int k = qdeg; k >= 0; --k) {
        Int top = rem[k + divisor.degree()];
        if (top == 0) {
            quot[k] = 0;
            continue;
        }
        if (top % lead != 0)
            throw integrity_error("exact division: fractional quotient coefficient");
        quot[k] = top / lead;
        for (std::size_t j = 0; j < d.size(); ++j) rem[k + j] -= quot[k] * d[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw integrity_error("exact division: nonzero remainder");
    return Poly(std::move(quot));
}

Int Poly::content() const {
    Int g = 0;
    for (const auto& c : c_) g = boost::multiprecision::gcd(g, c);
    return g;
}

Poly Poly::primitive_part() const {
    if (is_zero()) return zero();
    Int g = content();
    if (c_.back() < 0) g = -g;
    Poly r = *this;
    for (auto& c : r.c_) c /= g;
    return r;
}

namespace {

// Pseudo-remainder of a by b: repeated leading-term elimination with the
// dividend scaled by lead(b) at each step, exact over Int. Differs from the
// textbook prem by a unit power of lead(b), which the primitive-PRS gcd
// normalizes away.
Poly pseudo_rem(Poly a, const Poly& b) {
    const Int& lb = b.coeffs().back();
    while (!a.is_zero() && a.degree() >= b.degree()) {
        int shift = a.degree() - b.degree();
        Int la = a.coeffs().back();
        a = a * lb - (b * la) * Poly::q_power(shift);
    }
    return a;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    Poly x = a.primitive_part();
    Poly y = b.primitive_part();
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        Poly r = pseudo_rem(x, y).primitive_part();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

std::vector<std::pair<Poly, int>> Poly::squarefree_factors() const {
    std::vector<std::pair<Poly, int>> out;
    Poly f = primitive_part();
    if (f.degree() <= 0) return out;

    // Yun's algorithm; every division below is exact over the integers.
    Poly g = gcd(f, f.derivative());
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    Poly w = f.divide_exact(g);
    Poly z = f.derivative().divide_exact(g) - w.derivative();
    int mult = 1;
    while (!z.is_zero()) {
        Poly p = gcd(w, z);
        if (p.degree() >= 1) out.emplace_back(p, mult);
        w = w.divide_exact(p);
        z = z.divide_exact(p) - w.derivative();
        ++mult;
    }
    if (w.degree() >= 1) out.emplace_back(w, mult);

    // Reconstruction guard: the factorization must multiply back to f.
    Poly check = Poly::one();
    for (const auto& [p, m] : out)
        for (int i = 0; i < m; ++i) check *= p;
    if (check.primitive_part() != f)
        throw integrity_error("squarefree decomposition failed to reconstruct input");
    return out;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Int a = c_[i];
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        Int mag = abs(a);
        if (mag != 1 || i == 0) os << mag;
        if (i == 1) os << "q";
        if (i > 1) os << "q^" << i;
        first = false;
    }
    return os.str();
}

}  // namespace relroots
