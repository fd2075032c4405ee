#include "newton/number_field.hpp"

namespace newton {

NumberField::NumberField(const RationalPoly& modulus) {
    if (modulus.degree() < 1)
        throw std::invalid_argument("NumberField modulus must be nonconstant");
    RationalPoly m = modulus.monic();
    if (poly_gcd(m, m.derivative()).degree() != 0)
        throw std::invalid_argument("NumberField modulus must be squarefree");
    m_ = m;
}

FieldPtr make_field(const RationalPoly& modulus) {
    return std::make_shared<const NumberField>(modulus);
}

namespace {

void check_same_field(const NFElement& a, const NFElement& b) {
    if (!(a.field()->modulus() == b.field()->modulus()))
        throw std::invalid_argument("NFElement operands live in different fields");
}

} // namespace

NFElement::NFElement(FieldPtr field, const RationalPoly& rep) : field_(std::move(field)) {
    rep_ = RationalPoly::divmod(rep, field_->modulus()).second;
}

NFElement NFElement::generator(const FieldPtr& field) {
    return NFElement(field, RationalPoly::variable());
}

NFElement NFElement::from_rational(const FieldPtr& field, const Rat& q) {
    return NFElement(field, RationalPoly(q));
}

NFElement NFElement::operator+(const NFElement& o) const {
    check_same_field(*this, o);
    return NFElement(field_, rep_ + o.rep_);
}

NFElement NFElement::operator-(const NFElement& o) const {
    check_same_field(*this, o);
    return NFElement(field_, rep_ - o.rep_);
}

NFElement NFElement::operator*(const NFElement& o) const {
    check_same_field(*this, o);
    return NFElement(field_, rep_ * o.rep_);
}

NFElement NFElement::operator*(const Rat& s) const {
    return NFElement(field_, rep_ * s);
}

NFElement NFElement::operator-() const {
    return NFElement(field_, -rep_);
}

bool NFElement::operator==(const NFElement& o) const {
    check_same_field(*this, o);
    return rep_ == o.rep_;
}

NFElement NFElement::inverse() const {
    if (rep_.is_zero())
        throw std::invalid_argument("inverse of zero");
    // extended Euclid: track u with u*rep = r mod modulus
    RationalPoly r0 = field_->modulus(), r1 = rep_;
    RationalPoly u0, u1(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r2] = RationalPoly::divmod(r0, r1);
        RationalPoly u2 = u0 - q * u1;
        r0 = r1;
        r1 = r2;
        u0 = u1;
        u1 = u2;
    }
    if (r0.degree() > 0)
        throw std::domain_error("not invertible in Q[t]/(m): modulus has factor " +
                                render_polynomial(r0.monic()));
    return NFElement(field_, u0 * Rat(1 / r0.leading()));
}

NFElement evaluate(const RationalPoly& f, const NFElement& alpha) {
    NFElement acc = NFElement::from_rational(alpha.field(), 0);
    for (int i = f.degree(); i >= 0; --i)
        acc = acc * alpha + NFElement::from_rational(alpha.field(), f.coeff(i));
    return acc;
}

bool nf_root_check(const RationalPoly& f, const NFElement& alpha) {
    return evaluate(f, alpha).is_zero();
}

NFPoly::NFPoly(FieldPtr field) : field_(std::move(field)) {}

NFPoly::NFPoly(FieldPtr field, std::vector<NFElement> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    trim();
}

void NFPoly::trim() {
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

NFPoly NFPoly::lift(const RationalPoly& f, const FieldPtr& field) {
    std::vector<NFElement> c;
    c.reserve(static_cast<size_t>(f.degree() + 1));
    for (int i = 0; i <= f.degree(); ++i)
        c.push_back(NFElement::from_rational(field, f.coeff(i)));
    return NFPoly(field, std::move(c));
}

NFPoly NFPoly::linear_power(const NFElement& alpha, unsigned k, const Rat& scale) {
    const FieldPtr& fld = alpha.field();
    std::vector<NFElement> c{NFElement::from_rational(fld, scale)};
    for (unsigned i = 0; i < k; ++i) {
        // multiply by (t - alpha)
        std::vector<NFElement> next(c.size() + 1, NFElement::from_rational(fld, 0));
        for (size_t j = 0; j < c.size(); ++j) {
            next[j + 1] = next[j + 1] + c[j];
            next[j] = next[j] - c[j] * alpha;
        }
        c = std::move(next);
    }
    return NFPoly(fld, std::move(c));
}

NFElement NFPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return NFElement::from_rational(field_, 0);
    return c_[static_cast<size_t>(i)];
}

NFPoly NFPoly::operator-(const NFPoly& o) const {
    std::vector<NFElement> c;
    int n = std::max(degree(), o.degree());
    c.reserve(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
        c.push_back(coeff(i) - o.coeff(i));
    return NFPoly(field_, std::move(c));
}

NFPoly NFPoly::operator*(const NFElement& s) const {
    std::vector<NFElement> c;
    c.reserve(c_.size());
    for (const auto& x : c_)
        c.push_back(x * s);
    return NFPoly(field_, std::move(c));
}

bool NFPoly::operator==(const NFPoly& o) const {
    return (*this - o).is_zero();
}

std::pair<NFPoly, NFElement> NFPoly::divmod_linear(const NFElement& alpha) const {
    if (is_zero())
        return {NFPoly(field_), NFElement::from_rational(field_, 0)};
    std::vector<NFElement> q(c_.size() > 1 ? c_.size() - 1 : 0,
                             NFElement::from_rational(field_, 0));
    NFElement carry = c_.back();
    for (int i = degree() - 1; i >= 0; --i) {
        q[static_cast<size_t>(i)] = carry;
        carry = c_[static_cast<size_t>(i)] + carry * alpha;
    }
    return {NFPoly(field_, std::move(q)), carry};
}

} // namespace newton
