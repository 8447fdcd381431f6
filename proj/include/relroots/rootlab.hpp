#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <vector>

#include "relroots/multigraph.hpp"
#include "relroots/poly.hpp"
#include "relroots/relpoly.hpp"

namespace relroots {

// Extended precision for root polishing and residual certification:
// 64 decimal digits, about four times double's working precision.
using XReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<64>>;
using XComplex = boost::multiprecision::cpp_complex<64>;

struct ComplexRoot {
    XReal re, im;
    double residual;   // |H(z)| certified at extended precision
    int multiplicity;

    XReal modulus() const;
};

// The roots of Rel(G) = (1-q)^{n-1} H(q): numerically solved roots of H plus
// the root 1 attached symbolically with multiplicity n-1. rational_roots
// holds only exactly confirmed values.
struct RootSet {
    std::vector<ComplexRoot> complex_roots;
    int trivial_root_one_multiplicity = 0;
    std::vector<Rat> rational_roots;

    int total_complex_count() const;  // sum of multiplicities; equals deg H
    // Minimum modulus over all roots, the symbolic 1 included.
    XReal min_modulus() const;
};

// Raised when the iteration cap is reached or residuals stay above bound;
// carries whatever roots were obtained.
class solver_error : public integrity_error {
public:
    solver_error(const std::string& what, RootSet partial)
        : integrity_error(what), partial_result(std::move(partial)) {}
    RootSet partial_result;
};

// All complex roots of H with per-root residual <= 1e-10 after refinement.
// Requires H(0) != 0 and a positive leading coefficient. Multiple roots are
// split off by exact squarefree decomposition before iteration.
RootSet solve_h_roots(const Poly& h);

inline constexpr double kResidualBound = 1e-10;

// Eneström–Kakeya annulus of a positive-coefficient polynomial: every root z
// satisfies r <= |z| <= R with r/R the extreme successive-coefficient ratios.
struct Annulus {
    Rat r, R;
};
Annulus ek_annulus(const Poly& h);

// Criterion for a root of modulus exactly r: possible only if the indices
// whose ratio exceeds r have gcd > 1. An empty index set (all ratios equal)
// is inconclusive rather than assigned a gcd.
struct GcdTest {
    enum class Verdict { Excluded, Possible, Inconclusive };
    std::vector<int> indices;
    Int gcd = 0;  // meaningful only when indices is nonempty
    bool inner_root_excluded = false;
    Verdict verdict = Verdict::Inconclusive;
};
GcdTest inner_circle_gcd_test(const Poly& h);

bool is_log_concave(const HVector& h);

struct RationalRootReport {
    std::vector<Rat> roots;      // exactly confirmed, ascending
    bool near_miss = false;      // a numerical root sat within 1e-8 of some
                                 // -1/k without exact confirmation
    std::vector<std::string> notes;
};

// Evaluates Rel exactly at 1 and at -1/k for k = 1..n-1, returning the exact
// zeros, and cross-checks the numerical roots against those candidates.
// Requires G connected of order >= 2.
RationalRootReport rational_roots(const Multigraph& g);
RationalRootReport rational_roots(const Multigraph& g, ReliabilityEngine& engine);

// Exhaustive rational roots of an integer polynomial via the rational root
// theorem (divisor enumeration). Independent of the theorem-guided candidate
// list above; used as a completeness cross-check.
std::vector<Rat> complete_rational_roots(const Poly& p);

struct LocationChecks {
    bool real_range_ok = false;    // real roots in [-1-1e-9, -1e-9] or == 1
    bool modulus_bound_ok = false; // every |z| <= n-1 + 1e-9
    bool min_modulus_ok = false;   // every |z| >= 1/(n-1) - 1e-9
};
LocationChecks root_location_checks(const Multigraph& g, const RootSet& rs);

// Root analysis bundle for one connected graph: strips (1-q)^{n-1}, solves H,
// confirms rational roots exactly.
RootSet analyze_roots(const Multigraph& g, ReliabilityEngine& engine);

std::string xreal_to_string(const XReal& x, int significant_digits = 20);

}  // namespace relroots
