#pragma once

#include "newton/rational_poly.hpp"

#include <memory>

namespace newton {

// Q[t]/(m) for a monic squarefree modulus m. The modulus is not checked for
// irreducibility; zero divisors surface lazily on inversion.
class NumberField {
public:
    explicit NumberField(const RationalPoly& modulus);
    const RationalPoly& modulus() const { return m_; }
    int degree() const { return m_.degree(); }

private:
    RationalPoly m_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

FieldPtr make_field(const RationalPoly& modulus);

class NFElement {
public:
    NFElement(FieldPtr field, const RationalPoly& rep);
    static NFElement generator(const FieldPtr& field);      // class of t
    static NFElement from_rational(const FieldPtr& field, const Rat& q);

    const RationalPoly& rep() const { return rep_; }
    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return rep_.is_zero(); }

    NFElement operator+(const NFElement& o) const;
    NFElement operator-(const NFElement& o) const;
    NFElement operator*(const NFElement& o) const;
    NFElement operator*(const Rat& s) const;
    NFElement operator-() const;
    bool operator==(const NFElement& o) const;

    // Throws std::domain_error naming a nontrivial factor of the modulus
    // when the element is a zero divisor; std::invalid_argument on zero.
    NFElement inverse() const;

private:
    FieldPtr field_;
    RationalPoly rep_;
};

// f(alpha) in Q[t]/(m), by Horner.
NFElement evaluate(const RationalPoly& f, const NFElement& alpha);

bool nf_root_check(const RationalPoly& f, const NFElement& alpha);

// Polynomial with NFElement coefficients, ascending; just enough arithmetic
// for the E_alpha computation over Q[t]/(m).
class NFPoly {
public:
    explicit NFPoly(FieldPtr field);
    NFPoly(FieldPtr field, std::vector<NFElement> coeffs);

    static NFPoly lift(const RationalPoly& f, const FieldPtr& field);
    // scale * (t - alpha)^k
    static NFPoly linear_power(const NFElement& alpha, unsigned k, const Rat& scale);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    NFElement coeff(int i) const;
    const FieldPtr& field() const { return field_; }

    NFPoly operator-(const NFPoly& o) const;
    NFPoly operator*(const NFElement& s) const;
    bool operator==(const NFPoly& o) const;

    // Synthetic division by (t - alpha): this = q*(t - alpha) + r.
    std::pair<NFPoly, NFElement> divmod_linear(const NFElement& alpha) const;

private:
    FieldPtr field_;
    std::vector<NFElement> c_;
    void trim();
};

} // namespace newton
