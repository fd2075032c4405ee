#include "newton/rational_poly.hpp"

#include "newton/int_factor.hpp"

#include <algorithm>

namespace newton {

namespace {

const Rat kZero = 0;

std::vector<Int> divisors_from(const Int& n) {
    return divisors_of(factor_integer_complete(abs(n)));
}

} // namespace

RationalPoly::RationalPoly(const Rat& constant) {
    if (constant != 0)
        c_.push_back(constant);
}

RationalPoly::RationalPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    for (auto& q : c_)
        q.canonicalize();
    trim();
}

RationalPoly RationalPoly::variable() {
    return RationalPoly(std::vector<Rat>{0, 1});
}

RationalPoly RationalPoly::from_ints(std::initializer_list<long> ascending) {
    std::vector<Rat> c;
    c.reserve(ascending.size());
    for (long v : ascending)
        c.emplace_back(v);
    return RationalPoly(std::move(c));
}

void RationalPoly::trim() {
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

const Rat& RationalPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return kZero;
    return c_[static_cast<size_t>(i)];
}

const Rat& RationalPoly::leading() const {
    if (c_.empty())
        throw std::invalid_argument("leading coefficient of the zero polynomial");
    return c_.back();
}

RationalPoly RationalPoly::operator-() const {
    RationalPoly r = *this;
    for (auto& q : r.c_)
        q = -q;
    return r;
}

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
    std::vector<Rat> c(std::max(c_.size(), o.c_.size()), kZero);
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < c_.size())
            c[i] += c_[i];
        if (i < o.c_.size())
            c[i] += o.c_[i];
    }
    return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const {
    return *this + (-o);
}

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
    if (is_zero() || o.is_zero())
        return RationalPoly();
    std::vector<Rat> c(c_.size() + o.c_.size() - 1, kZero);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] += c_[i] * o.c_[j];
    return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::operator*(const Rat& s) const {
    if (s == 0)
        return RationalPoly();
    RationalPoly r = *this;
    for (auto& q : r.c_)
        q *= s;
    return r;
}

Rat RationalPoly::operator()(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

RationalPoly RationalPoly::derivative() const {
    if (c_.size() <= 1)
        return RationalPoly();
    std::vector<Rat> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        c[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::compose(const RationalPoly& inner) const {
    RationalPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * inner + RationalPoly(*it);
    return acc;
}

RationalPoly RationalPoly::pow(unsigned k) const {
    RationalPoly acc(Rat(1)), base = *this;
    while (k) {
        if (k & 1)
            acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

RationalPoly RationalPoly::monic() const {
    return *this * Rat(1 / leading());
}

std::pair<RationalPoly, RationalPoly> RationalPoly::divmod(const RationalPoly& n,
                                                           const RationalPoly& d) {
    if (d.is_zero())
        throw std::invalid_argument("polynomial division by zero");
    if (n.degree() < d.degree())
        return {RationalPoly(), n};
    std::vector<Rat> rem = n.c_;
    std::vector<Rat> quot(static_cast<size_t>(n.degree() - d.degree()) + 1, kZero);
    const Rat& lead = d.leading();
    for (int k = n.degree() - d.degree(); k >= 0; --k) {
        Rat q = rem[static_cast<size_t>(k + d.degree())] / lead;
        quot[static_cast<size_t>(k)] = q;
        if (q == 0)
            continue;
        for (int i = 0; i <= d.degree(); ++i)
            rem[static_cast<size_t>(k + i)] -= q * d.c_[static_cast<size_t>(i)];
    }
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly RationalPoly::exact_div(const RationalPoly& d) const {
    auto [q, r] = divmod(*this, d);
    if (!r.is_zero())
        throw std::logic_error("inexact polynomial division");
    return q;
}

RationalPoly::IntegerForm RationalPoly::integer_form() const {
    if (is_zero())
        throw std::invalid_argument("integer_form of the zero polynomial");
    Int den_lcm = 1;
    for (const auto& q : c_)
        den_lcm = lcm(den_lcm, Int(q.get_den()));
    std::vector<Int> ic(c_.size());
    Int content = 0;
    for (size_t i = 0; i < c_.size(); ++i) {
        ic[i] = Int(c_[i].get_num()) * (den_lcm / Int(c_[i].get_den()));
        content = gcd(content, ic[i]);
    }
    if (ic.back() < 0)
        content = -content;
    for (auto& v : ic)
        v /= content;
    return {std::move(ic), Rat(content) / Rat(den_lcm)};
}

namespace {

// ---- integer-polynomial helpers for the primitive PRS gcd ----

void itrim(std::vector<Int>& v) {
    while (!v.empty() && v.back() == 0)
        v.pop_back();
}

Int icontent(const std::vector<Int>& v) {
    Int g = 0;
    for (const auto& x : v)
        g = gcd(g, x);
    return g;
}

void make_primitive(std::vector<Int>& v) {
    itrim(v);
    if (v.empty())
        return;
    Int g = icontent(v);
    if (v.back() < 0)
        g = -g;
    for (auto& x : v)
        x /= g;
}

// lc(d)^k * n  mod  d over Z, one factor of lc(d) per elimination step.
std::vector<Int> pseudo_rem(std::vector<Int> n, const std::vector<Int>& d) {
    int dd = static_cast<int>(d.size()) - 1;
    const Int& lead = d.back();
    itrim(n);
    while (static_cast<int>(n.size()) - 1 >= dd) {
        int k = static_cast<int>(n.size()) - 1 - dd;
        Int top = n.back();
        for (auto& x : n)
            x *= lead;
        for (int i = 0; i <= dd; ++i)
            n[static_cast<size_t>(k + i)] -= top * d[static_cast<size_t>(i)];
        n.pop_back();
        itrim(n);
    }
    return n;
}

} // namespace

RationalPoly poly_gcd(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() && b.is_zero())
        throw std::invalid_argument("undefined gcd of two zero polynomials");
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    std::vector<Int> A = a.integer_form().coeffs;
    std::vector<Int> B = b.integer_form().coeffs;
    if (A.size() < B.size())
        std::swap(A, B);
    while (!B.empty()) {
        std::vector<Int> R = pseudo_rem(A, B);
        make_primitive(R);
        A = std::move(B);
        B = std::move(R);
    }
    std::vector<Rat> c(A.size());
    for (size_t i = 0; i < A.size(); ++i)
        c[i] = Rat(A[i]) / Rat(A.back());
    return RationalPoly(std::move(c));
}

FactorProfile squarefree_profile(const RationalPoly& f) {
    if (f.degree() < 1)
        throw std::invalid_argument("squarefree_profile requires a nonconstant polynomial");
    FactorProfile out;
    out.unit = f.leading();
    RationalPoly g = f.monic();
    RationalPoly u = poly_gcd(g, g.derivative());
    RationalPoly v = g.exact_div(u);
    RationalPoly w = g.derivative().exact_div(u);
    for (int i = 1; v.degree() > 0; ++i) {
        RationalPoly z = w - v.derivative();
        RationalPoly h = poly_gcd(v, z);
        if (h.degree() > 0)
            out.parts.push_back({h, i});
        v = v.exact_div(h);
        w = z.exact_div(h);
    }
    return out;
}

RationalPoly radical(const RationalPoly& f) {
    RationalPoly r(Rat(1));
    for (const auto& part : squarefree_profile(f).parts)
        r = r * part.factor;
    return r;
}

std::vector<Rat> rational_roots(const RationalPoly& f) {
    if (f.is_zero())
        throw std::invalid_argument("rational_roots of the zero polynomial");
    std::vector<Rat> roots;
    if (f.degree() == 0)
        return roots;
    // Strip t^k; 0 is a root iff k >= 1.
    size_t k = 0;
    while (f.coeff(static_cast<int>(k)) == 0)
        ++k;
    if (k >= 1)
        roots.emplace_back(0);
    std::vector<Rat> shifted(f.coeffs().begin() + static_cast<long>(k), f.coeffs().end());
    RationalPoly g(std::move(shifted));
    if (g.degree() >= 1) {
        auto ints = g.integer_form().coeffs;
        auto lows = divisors_from(abs(ints.front()));
        auto highs = divisors_from(abs(ints.back()));
        for (const auto& p : lows)
            for (const auto& q : highs) {
                Rat cand(p, q);
                cand.canonicalize();
                if (g(cand) == 0)
                    roots.push_back(cand);
                cand = -cand;
                if (g(cand) == 0)
                    roots.push_back(cand);
            }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

Int resultant_int(const std::vector<Int>& a, const std::vector<Int>& b) {
    int da = static_cast<int>(a.size()) - 1;
    int db = static_cast<int>(b.size()) - 1;
    if (da < 0 || db < 0)
        return 0;
    if (da == 0 && db == 0)
        return 1;
    int n = da + db;
    std::vector<std::vector<Int>> m(static_cast<size_t>(n),
                                    std::vector<Int>(static_cast<size_t>(n), Int(0)));
    for (int row = 0; row < db; ++row)
        for (int j = 0; j <= da; ++j)
            m[static_cast<size_t>(row)][static_cast<size_t>(row + j)] =
                a[static_cast<size_t>(da - j)];
    for (int row = 0; row < da; ++row)
        for (int j = 0; j <= db; ++j)
            m[static_cast<size_t>(db + row)][static_cast<size_t>(row + j)] =
                b[static_cast<size_t>(db - j)];
    // Bareiss fraction-free elimination.
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0)
                return 0;
            std::swap(m[static_cast<size_t>(k)], m[static_cast<size_t>(pivot)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = m[static_cast<size_t>(k)][static_cast<size_t>(k)] *
                              m[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                          m[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                              m[static_cast<size_t>(k)][static_cast<size_t>(j)];
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] = num / prev;
            }
            m[static_cast<size_t>(i)][static_cast<size_t>(k)] = 0;
        }
        prev = m[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    return sign * m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

Rat discriminant(const RationalPoly& f) {
    int d = f.degree();
    if (d < 1)
        throw std::invalid_argument("discriminant requires deg f >= 1");
    if (d == 1)
        return Rat(1);
    auto [fi, scale] = f.integer_form();
    std::vector<Int> der(fi.size() - 1);
    for (size_t i = 1; i < fi.size(); ++i)
        der[i - 1] = fi[i] * Int(static_cast<long>(i));
    Int res = resultant_int(fi, der);
    Rat disc = Rat(res) / Rat(fi.back());
    if ((static_cast<long>(d) * (d - 1) / 2) % 2 != 0)
        disc = -disc;
    // disc(scale * F) = scale^(2d-2) disc(F)
    Rat s = 1;
    for (int i = 0; i < 2 * d - 2; ++i)
        s *= scale;
    return s * disc;
}

} // namespace newton
