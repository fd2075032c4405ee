#pragma once

#include "newton/number_field.hpp"
#include "newton/rational_poly.hpp"

#include <array>
#include <optional>
#include <string>

namespace newton {

// Reduced rational map num/den: gcd(num, den) = 1, den monic. A constant
// numerator with den = 1 (map degree 0) arises only from linear input to
// build_newton_map.
struct RationalMap {
    RationalPoly num;
    RationalPoly den;

    RationalMap(const RationalPoly& n, const RationalPoly& d);
    int map_degree() const { return std::max(num.degree(), den.degree()); }
    bool operator==(const RationalMap& o) const { return num == o.num && den == o.den; }

    // Joint clearing of denominators: num/den = P/Q with P, Q integer
    // polynomials, gcd of contents 1, lc(Q) > 0.
    std::pair<std::vector<Int>, std::vector<Int>> integer_pair() const;

    Rat operator()(const Rat& x) const; // throws std::domain_error at poles
};

// N_f = t - f/f' in reduced form: (t*D - rad) / D. Degree-1 input gives the
// constant map at the root.
RationalMap build_newton_map(const RationalPoly& f);

// D = sum_i m_i prod_{j != i} (t - a_j), computed root-free as
// f' / (lc(f) * gcd_monic(f, f')). Degree r-1, leading coefficient deg f.
RationalPoly compute_D(const RationalPoly& f);

// E_alpha = sum_{i>1} m_i prod_{j != 1, i} (t - a_j) at a simple root alpha,
// via two exact divisions: E = (D - rad/(t-alpha)) / (t-alpha).
RationalPoly compute_E_alpha(const RationalPoly& f, const Rat& alpha);
NFPoly compute_E_alpha(const RationalPoly& f, const NFElement& alpha);

struct FixedPoints {
    std::vector<Rat> rational;     // rational fixed points = rational roots of rad(f)
    RationalPoly residual;         // rad(f) / prod(t - q), monic; 1 if none left
    bool includes_infinity;
};
FixedPoints fixed_points(const RationalPoly& f);

// E_alpha == (d-1)(t-alpha)^(r-2), cross-checked against the multiplicity of
// (t-alpha) in num(N) - alpha*den(N) equaling deg N.
bool is_totally_ramified_at(const RationalPoly& f, const Rat& alpha);
bool is_totally_ramified_at(const RationalPoly& f, const NFElement& alpha);

// sigma(t) = b*t + c with b != 0.
struct AffineMap {
    Rat b, c;
    AffineMap(const Rat& b_, const Rat& c_);
    static AffineMap identity() { return AffineMap(1, 0); }
    Rat operator()(const Rat& x) const { return b * x + c; }
    AffineMap inverse() const { return AffineMap(1 / b, -c / b); }
    RationalPoly as_poly() const;
};

// g(t) = A * f(sigma(t)).
RationalPoly conjugate_polynomial(const RationalPoly& f, const Rat& A, const AffineMap& sigma);

// Checks N_g == sigma^{-1} o N_f o sigma as an identity of reduced maps.
bool verify_conjugacy(const RationalPoly& f, const RationalPoly& g, const AffineMap& sigma);

enum class Verdict { Exceptional, NotExceptional, Unresolved };
enum class ReasonTag {
    MultipleRoot,
    FewDistinctRoots,
    EAlphaCriterion,
    NormalForm,
    IrreducibleDegree3Plus,
};

struct RootBlock {
    std::optional<Rat> rational_root; // engaged when the block is one rational root
    RationalPoly factor;              // monic; its roots are the block
    int multiplicity;
    Verdict verdict;
    ReasonTag reason;
    std::string witness;              // human-checkable evidence
};

struct ExceptionalityReport {
    int degree;
    int distinct_roots;
    std::vector<RootBlock> blocks;
};

// Decision ladder: multiple roots; r <= 2; rational simple roots by the
// E_alpha criterion; irrational roots of squarefree f (any exceptional root
// would be rational); irrational simple roots of non-squarefree f through
// Q[t]/(modulus) when supplied, else Unresolved.
ExceptionalityReport classify_exceptional_roots(
    const RationalPoly& f, const std::optional<RationalPoly>& modulus = std::nullopt);

struct StandardFormWitness {
    std::optional<std::array<Rat, 3>> normal_form; // {A, B, alpha}: f = A(t-alpha)^d + B(t-alpha)
    std::string zeta;                              // symbolic: "any root of z^(d-1) = -B/A"
    std::string note;
};

// Dynamical equivalence to t^d - t (squarefree f only). Quadratics always
// succeed; for deg >= 3 the witness exists iff f = A(t-alpha)^d + B(t-alpha)
// with rational alpha.
std::optional<StandardFormWitness> equiv_to_standard_form(const RationalPoly& f);

const char* verdict_name(Verdict v);
const char* reason_name(ReasonTag r);

} // namespace newton
