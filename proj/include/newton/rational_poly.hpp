#pragma once

#include "newton/rational.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace newton {

// Dense univariate polynomial over Q, coefficients ascending by power.
// The zero polynomial has an empty coefficient vector and degree -1.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(const Rat& constant);
    explicit RationalPoly(std::vector<Rat> coeffs);

    static RationalPoly variable();                         // t
    static RationalPoly from_ints(std::initializer_list<long> ascending);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& coeff(int i) const;                          // 0 outside range
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const;                             // requires nonzero

    RationalPoly operator-() const;
    RationalPoly operator+(const RationalPoly& o) const;
    RationalPoly operator-(const RationalPoly& o) const;
    RationalPoly operator*(const RationalPoly& o) const;
    RationalPoly operator*(const Rat& s) const;
    bool operator==(const RationalPoly& o) const { return c_ == o.c_; }

    Rat operator()(const Rat& x) const;                     // Horner
    RationalPoly derivative() const;
    RationalPoly compose(const RationalPoly& inner) const;  // this(inner(t))
    RationalPoly pow(unsigned k) const;
    RationalPoly monic() const;                             // requires nonzero

    // Long division: this = q*d + r with deg r < deg d. d must be nonzero.
    static std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& n,
                                                        const RationalPoly& d);
    // Division with a zero-remainder assertion (std::logic_error otherwise).
    RationalPoly exact_div(const RationalPoly& d) const;

    // f = scale * F with F a primitive integer polynomial, lc(F) > 0.
    struct IntegerForm {
        std::vector<Int> coeffs;
        Rat scale;
    };
    IntegerForm integer_form() const;                       // requires nonzero

private:
    std::vector<Rat> c_;
    void trim();
};

inline RationalPoly operator*(const Rat& s, const RationalPoly& p) { return p * s; }

// Monic gcd; errors if both inputs are zero.
RationalPoly poly_gcd(const RationalPoly& a, const RationalPoly& b);

// f = unit * prod(factor_i ^ multiplicity_i), factors monic squarefree and
// pairwise coprime, multiplicities strictly increasing (Yun).
struct FactorProfile {
    struct Part {
        RationalPoly factor;
        int multiplicity;
    };
    Rat unit;
    std::vector<Part> parts;
};
FactorProfile squarefree_profile(const RationalPoly& f);

// Monic product of the distinct-root factors of f.
RationalPoly radical(const RationalPoly& f);

// Exactly { q in Q : f(q) = 0 }, ascending.
std::vector<Rat> rational_roots(const RationalPoly& f);

// Resultant of two integer polynomials (Sylvester determinant, fraction-free
// Bareiss elimination). Zero inputs yield 0.
Int resultant_int(const std::vector<Int>& a, const std::vector<Int>& b);

// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f); zero iff f has a repeated root.
Rat discriminant(const RationalPoly& f);

std::string render_polynomial(const RationalPoly& f); // defined in parse.cpp

} // namespace newton
