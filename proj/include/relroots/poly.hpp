#pragma once

#include <utility>
#include <vector>

#include "relroots/common.hpp"

namespace relroots {

// Dense univariate polynomial in q with exact arbitrary-precision integer
// coefficients. coeff(i) is the coefficient of q^i. Trailing zeros are
// trimmed; the zero polynomial has empty storage and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly{}; }
    static Poly one() { return constant(1); }
    static Poly constant(Int c);
    static Poly q_power(int k);            // q^k
    static Poly one_minus_q_power(int k);  // 1 - q^k
    static Poly one_minus_q_to(int k);     // (1-q)^k

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Int& coeff(int i) const;
    const std::vector<Int>& coeffs() const { return c_; }

    bool operator==(const Poly&) const = default;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Int& k) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly derivative() const;

    // Exact evaluation at a rational point; no rounding anywhere.
    Rat eval(const Rat& q0) const;
    Int eval_int(const Int& q0) const;

    // Exact quotient. Throws integrity_error if any division step leaves a
    // fractional coefficient or the final remainder is nonzero.
    Poly divide_exact(const Poly& divisor) const;

    Int content() const;          // gcd of coefficients (0 for zero poly)
    Poly primitive_part() const;  // content removed, leading coefficient > 0

    // Primitive gcd over the integers, positive leading coefficient.
    static Poly gcd(const Poly& a, const Poly& b);

    // Yun squarefree decomposition: pairwise-coprime primitive factors with
    // multiplicities, product (up to content) equal to this polynomial.
    std::vector<std::pair<Poly, int>> squarefree_factors() const;

    std::string to_string() const;  // e.g. "1 + 3q + 6q^2"

private:
    void trim();

    std::vector<Int> c_;
};

}  // namespace relroots
