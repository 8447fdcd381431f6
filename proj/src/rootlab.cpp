#include "relroots/rootlab.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace relroots {

XReal ComplexRoot::modulus() const {
    return sqrt(re * re + im * im);
}

int RootSet::total_complex_count() const {
    int total = 0;
    for (const auto& r : complex_roots) total += r.multiplicity;
    return total;
}

XReal RootSet::min_modulus() const {
    XReal best = -1;
    for (const auto& r : complex_roots) {
        XReal m = r.modulus();
        if (best < 0 || m < best) best = m;
    }
    if (trivial_root_one_multiplicity > 0 && (best < 0 || best > 1)) best = 1;
    return best;  // -1 when there are no roots at all
}

std::string xreal_to_string(const XReal& x, int significant_digits) {
    std::ostringstream os;
    os.precision(significant_digits);
    os << x;
    return os.str();
}

namespace {

// Durand-Kerner/Aberth simultaneous iteration in double precision; seeds for
// the extended-precision Newton polish.
std::vector<std::complex<double>> aberth_double(const std::vector<double>& c, int iter_cap,
                                                bool& converged) {
    const int n = static_cast<int>(c.size()) - 1;  // degree
    std::vector<std::complex<double>> z(n);
    double r0 = std::pow(std::abs(c[0] / c[n]), 1.0 / n);
    if (!std::isfinite(r0) || r0 <= 0) r0 = 1.0;
    for (int j = 0; j < n; ++j) {
        double ang = 2.0 * M_PI * j / n + 0.4;  // perturbed circle
        z[j] = std::polar(r0, ang);
    }
    auto eval = [&](std::complex<double> x, std::complex<double>& f, std::complex<double>& df) {
        f = c[n];
        df = 0.0;
        for (int i = n - 1; i >= 0; --i) {
            df = df * x + f;
            f = f * x + c[i];
        }
    };
    converged = false;
    for (int it = 0; it < iter_cap; ++it) {
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            std::complex<double> f, df;
            eval(z[j], f, df);
            if (std::abs(f) == 0.0) continue;
            std::complex<double> ratio = df == 0.0 ? std::complex<double>(0.0) : f / df;
            std::complex<double> sum = 0.0;
            for (int l = 0; l < n; ++l)
                if (l != j) sum += 1.0 / (z[j] - z[l]);
            std::complex<double> denom = 1.0 - ratio * sum;
            std::complex<double> w = std::abs(denom) < 1e-300 ? ratio : ratio / denom;
            z[j] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[j])));
        }
        if (worst < 1e-13) {
            converged = true;
            break;
        }
    }
    return z;
}

struct XPoly {
    std::vector<XReal> c;

    explicit XPoly(const Poly& p) {
        c.reserve(p.degree() + 1);
        for (int i = 0; i <= p.degree(); ++i) c.emplace_back(p.coeff(i));
    }
    XComplex eval(const XComplex& x) const {
        XComplex acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + XComplex(*it);
        return acc;
    }
    XComplex eval_deriv(const XComplex& x) const {
        XComplex acc = 0;
        for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i)
            acc = acc * x + XComplex(c[i] * i);
        return acc;
    }
};

// Newton refinement at extended precision (about 4x double's digits).
XComplex polish_root(const XPoly& p, XComplex z, int iter_cap) {
    const XReal tol = XReal("1e-45");
    for (int it = 0; it < iter_cap; ++it) {
        XComplex f = p.eval(z);
        XComplex df = p.eval_deriv(z);
        if (abs(df) == 0) break;
        XComplex dz = f / df;
        z -= dz;
        if (abs(dz) <= tol * (1 + abs(z))) break;
    }
    return z;
}

}  // namespace

RootSet solve_h_roots(const Poly& h) {
    if (h.is_zero()) throw std::domain_error("solve_h_roots: zero polynomial");
    if (h.coeff(0) == 0) throw std::domain_error("solve_h_roots: H(0) must be nonzero");
    if (h.coeffs().back() <= 0)
        throw std::domain_error("solve_h_roots: leading coefficient must be positive");

    RootSet rs;
    if (h.degree() == 0) return rs;

    const XPoly hx(h);
    for (const auto& [factor, mult] : h.squarefree_factors()) {
        const int deg = factor.degree();
        std::vector<XComplex> seeds;
        if (deg == 1) {
            seeds.emplace_back(XComplex(XReal(-factor.coeff(0)) / XReal(factor.coeff(1))));
        } else {
            std::vector<double> dc(deg + 1);
            for (int i = 0; i <= deg; ++i) dc[i] = factor.coeff(i).convert_to<double>();
            bool converged = false;
            auto approx = aberth_double(dc, 200, converged);
            // Even a non-converged simultaneous pass usually seeds Newton
            // well enough; the residual gate below is the arbiter.
            for (auto z : approx) seeds.emplace_back(XComplex(XReal(z.real()), XReal(z.imag())));
        }
        const XPoly fx(factor);
        for (auto seed : seeds) {
            XComplex z = polish_root(fx, seed, 100);
            ComplexRoot root;
            root.re = z.real();
            root.im = z.imag();
            // Snap numerically-axial roots onto the axes.
            if (abs(root.im) <= XReal("1e-25") * (1 + abs(root.re))) root.im = 0;
            if (abs(root.re) <= XReal("1e-25") * (1 + abs(root.im))) root.re = 0;
            root.residual = abs(hx.eval(XComplex(root.re, root.im))).convert_to<double>();
            root.multiplicity = mult;
            rs.complex_roots.push_back(root);
        }
    }

    // Enforce conjugate symmetry: pair strictly-complex roots and average.
    std::vector<std::size_t> upper, lower;
    for (std::size_t i = 0; i < rs.complex_roots.size(); ++i) {
        if (rs.complex_roots[i].im > 0) upper.push_back(i);
        if (rs.complex_roots[i].im < 0) lower.push_back(i);
    }
    if (upper.size() == lower.size()) {
        std::vector<bool> taken(lower.size(), false);
        for (std::size_t ui : upper) {
            std::size_t best = lower.size();
            XReal best_dist = 0;
            for (std::size_t li = 0; li < lower.size(); ++li) {
                if (taken[li]) continue;
                const auto& a = rs.complex_roots[ui];
                const auto& b = rs.complex_roots[lower[li]];
                XReal dist = abs(a.re - b.re) + abs(a.im + b.im);
                if (best == lower.size() || dist < best_dist) {
                    best = li;
                    best_dist = dist;
                }
            }
            if (best == lower.size()) break;
            taken[best] = true;
            auto& a = rs.complex_roots[ui];
            auto& b = rs.complex_roots[lower[best]];
            XReal re = (a.re + b.re) / 2;
            XReal im = (a.im - b.im) / 2;
            a.re = b.re = re;
            a.im = im;
            b.im = -im;
        }
    }

    std::sort(rs.complex_roots.begin(), rs.complex_roots.end(),
              [](const ComplexRoot& a, const ComplexRoot& b) {
                  if (a.re != b.re) return a.re < b.re;
                  return a.im < b.im;
              });

    if (rs.total_complex_count() != h.degree()) {
        throw solver_error("solve_h_roots: root count does not match degree", rs);
    }
    for (std::size_t i = 0; i + 1 < rs.complex_roots.size(); ++i) {
        const auto& a = rs.complex_roots[i];
        const auto& b = rs.complex_roots[i + 1];
        if (abs(a.re - b.re) + abs(a.im - b.im) < XReal("1e-20"))
            throw solver_error("solve_h_roots: two iterates collapsed onto one root", rs);
    }
    for (const auto& r : rs.complex_roots) {
        if (!(r.residual <= kResidualBound))
            throw solver_error("solve_h_roots: residual above bound after refinement", rs);
    }
    return rs;
}

Annulus ek_annulus(const Poly& h) {
    if (h.degree() < 1) throw std::domain_error("ek_annulus: degree must be >= 1");
    for (int i = 0; i <= h.degree(); ++i)
        if (h.coeff(i) <= 0)
            throw std::domain_error("ek_annulus: coefficients must be strictly positive");
    Annulus a;
    for (int j = 0; j + 1 <= h.degree(); ++j) {
        Rat ratio(h.coeff(j), h.coeff(j + 1));
        if (j == 0) {
            a.r = a.R = ratio;
        } else {
            a.r = std::min(a.r, ratio);
            a.R = std::max(a.R, ratio);
        }
    }
    return a;
}

GcdTest inner_circle_gcd_test(const Poly& h) {
    Annulus a = ek_annulus(h);
    GcdTest t;
    for (int i = 1; i <= h.degree(); ++i) {
        Rat ratio(h.coeff(i - 1), h.coeff(i));
        if (ratio > a.r) t.indices.push_back(i);
    }
    if (t.indices.empty()) {
        t.verdict = GcdTest::Verdict::Inconclusive;
        t.inner_root_excluded = false;
        return t;
    }
    Int g = 0;
    for (int i : t.indices) g = boost::multiprecision::gcd(g, Int(i));
    t.gcd = g;
    t.inner_root_excluded = g == 1;
    t.verdict = g == 1 ? GcdTest::Verdict::Excluded : GcdTest::Verdict::Possible;
    return t;
}

bool is_log_concave(const HVector& h) {
    const auto& e = h.entries;
    for (std::size_t i = 1; i + 1 < e.size(); ++i)
        if (e[i - 1] * e[i + 1] > e[i] * e[i]) return false;
    return true;
}

RootSet analyze_roots(const Multigraph& g, ReliabilityEngine& engine) {
    if (!is_connected(g)) throw std::domain_error("analyze_roots: graph is not connected");
    Poly rel = engine.reliability(g);
    RootSet rs;
    if (g.n >= 1) rs.trivial_root_one_multiplicity = g.n - 1;
    Poly h = rel.divide_exact(Poly::one_minus_q_to(g.n - 1));
    if (h.degree() >= 1) {
        RootSet solved = solve_h_roots(h);
        rs.complex_roots = std::move(solved.complex_roots);
    }
    if (g.n >= 2) rs.rational_roots = rational_roots(g, engine).roots;
    return rs;
}

RationalRootReport rational_roots(const Multigraph& g, ReliabilityEngine& engine) {
    if (g.n < 2) throw std::domain_error("rational_roots: order must be >= 2");
    if (!is_connected(g)) throw std::domain_error("rational_roots: graph is not connected");

    Poly rel = engine.reliability(g);
    RationalRootReport report;
    std::vector<Rat> candidates;
    candidates.emplace_back(1);
    for (int k = 1; k <= g.n - 1; ++k) candidates.emplace_back(Rat(-1, k));
    for (const auto& c : candidates)
        if (rel.eval(c) == 0) report.roots.push_back(c);
    std::sort(report.roots.begin(), report.roots.end());

    // Numerical cross-check: any solved root sitting within 1e-8 of a
    // candidate -1/k must be exactly confirmed.
    Poly h = rel.divide_exact(Poly::one_minus_q_to(g.n - 1));
    if (h.degree() >= 1) {
        RootSet rs = solve_h_roots(h);
        for (const auto& z : rs.complex_roots) {
            if (abs(z.im) > XReal("1e-8")) continue;
            for (int k = 1; k <= g.n - 1; ++k) {
                Rat cand(-1, k);
                XReal dist = abs(z.re - XReal(-1) / k);
                if (dist <= XReal("1e-8")) {
                    bool confirmed = std::binary_search(report.roots.begin(),
                                                        report.roots.end(), cand);
                    if (!confirmed) {
                        report.near_miss = true;
                        report.notes.push_back("numerical root near -1/" + std::to_string(k) +
                                               " lacks exact confirmation");
                    }
                }
            }
        }
    }
    return report;
}

RationalRootReport rational_roots(const Multigraph& g) {
    ReliabilityEngine engine(1u << 14);
    return rational_roots(g, engine);
}

namespace {

std::vector<Int> divisors_of(Int n) {
    if (n < 0) n = -n;
    if (n > Int("1000000000000"))
        throw std::domain_error("complete_rational_roots: leading coefficient too large");
    std::vector<Int> divs;
    for (Int i = 1; i * i <= n; ++i) {
        if (n % i != 0) continue;
        divs.push_back(i);
        if (i * i != n) divs.push_back(n / i);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace

std::vector<Rat> complete_rational_roots(const Poly& p) {
    std::vector<Rat> out;
    if (p.is_zero() || p.degree() == 0) return out;
    if (p.coeff(0) == 0)
        throw std::domain_error("complete_rational_roots: zero constant term");
    auto nums = divisors_of(p.coeff(0));
    auto dens = divisors_of(p.coeffs().back());
    for (const auto& a : nums) {
        for (const auto& b : dens) {
            for (int sign : {1, -1}) {
                Rat cand(sign * a, b);
                if (p.eval(cand) == 0 &&
                    std::find(out.begin(), out.end(), cand) == out.end())
                    out.push_back(cand);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

LocationChecks root_location_checks(const Multigraph& g, const RootSet& rs) {
    LocationChecks c{true, true, true};
    const XReal eps("1e-9");
    const XReal im_tol("1e-10");
    const int n = g.n;
    for (const auto& z : rs.complex_roots) {
        if (abs(z.im) <= im_tol) {
            bool in_negative_band = z.re >= XReal(-1) - eps && z.re <= -eps;
            bool is_one = z.re == 1;
            if (!in_negative_band && !is_one) c.real_range_ok = false;
        }
        XReal mod = z.modulus();
        if (n >= 2 && mod > XReal(n - 1) + eps) c.modulus_bound_ok = false;
        if (n >= 2 && mod < XReal(1) / (n - 1) - eps) c.min_modulus_ok = false;
    }
    if (rs.trivial_root_one_multiplicity > 0 && n >= 2) {
        if (XReal(1) > XReal(n - 1) + eps) c.modulus_bound_ok = false;
        if (XReal(1) < XReal(1) / (n - 1) - eps) c.min_modulus_ok = false;
    }
    return c;
}

}  // namespace relroots
