#include "newton/newton_map.hpp"

#include <sstream>

namespace newton {

namespace {

// monic t - alpha
RationalPoly linear(const Rat& alpha) {
    return RationalPoly(std::vector<Rat>{-alpha, Rat(1)});
}

} // namespace

RationalMap::RationalMap(const RationalPoly& n, const RationalPoly& d) {
    if (d.is_zero())
        throw std::invalid_argument("rational map with zero denominator");
    if (n.is_zero()) {
        num = RationalPoly();
        den = RationalPoly(Rat(1));
        return;
    }
    RationalPoly g = poly_gcd(n, d);
    RationalPoly rn = n.exact_div(g);
    RationalPoly rd = d.exact_div(g);
    Rat lead = rd.leading();
    num = rn * Rat(1 / lead);
    den = rd * Rat(1 / lead);
}

std::pair<std::vector<Int>, std::vector<Int>> RationalMap::integer_pair() const {
    Int l = 1;
    for (const auto& q : num.coeffs())
        l = lcm(l, Int(q.get_den()));
    for (const auto& q : den.coeffs())
        l = lcm(l, Int(q.get_den()));
    auto clear = [&](const RationalPoly& p) {
        std::vector<Int> v(static_cast<size_t>(p.degree() + 1));
        for (int i = 0; i <= p.degree(); ++i) {
            Rat s = p.coeff(i) * Rat(l);
            v[static_cast<size_t>(i)] = Int(s.get_num()); // s integral by construction
        }
        return v;
    };
    std::vector<Int> pn = clear(num), pd = clear(den);
    Int g = 0;
    for (const auto& x : pn)
        g = gcd(g, x);
    for (const auto& x : pd)
        g = gcd(g, x);
    if (pd.back() < 0)
        g = -g;
    for (auto& x : pn)
        x /= g;
    for (auto& x : pd)
        x /= g;
    return {std::move(pn), std::move(pd)};
}

Rat RationalMap::operator()(const Rat& x) const {
    Rat d = den(x);
    if (d == 0)
        throw std::domain_error("rational map evaluated at a pole");
    return num(x) / d;
}

RationalPoly compute_D(const RationalPoly& f) {
    if (f.degree() < 2)
        throw std::invalid_argument("compute_D requires deg f >= 2");
    RationalPoly h = poly_gcd(f, f.derivative());
    RationalPoly d = f.derivative().exact_div(h * f.leading());
    int r = f.degree() - h.degree();
    if (d.degree() != r - 1 || d.leading() != Rat(f.degree()))
        throw std::logic_error("compute_D: degree or leading coefficient off");
    return d;
}

RationalMap build_newton_map(const RationalPoly& f) {
    if (f.degree() < 1)
        throw std::invalid_argument("Newton map undefined for constant polynomials");
    if (f.degree() == 1) {
        // N is the constant map at the root.
        Rat root = -f.coeff(0) / f.coeff(1);
        return RationalMap(RationalPoly(root), RationalPoly(Rat(1)));
    }
    RationalPoly d = compute_D(f);
    RationalPoly rad = f.exact_div(poly_gcd(f, f.derivative()) * f.leading());
    RationalPoly num = RationalPoly::variable() * d - rad;
    RationalMap n(num, d);
    int r = rad.degree();
    if (n.map_degree() != r)
        throw std::logic_error("Newton map degree differs from distinct-root count");
    return n;
}

namespace {

// Multiplicity of (t - alpha) in f; 0 when alpha is not a root.
int linear_multiplicity(const RationalPoly& f, const Rat& alpha) {
    RationalPoly lin = linear(alpha);
    RationalPoly g = f;
    int k = 0;
    while (!g.is_zero() && g(alpha) == 0) {
        g = g.exact_div(lin);
        ++k;
    }
    return k;
}

void require_simple_root(const RationalPoly& f, const Rat& alpha) {
    if (f(alpha) != 0)
        throw std::invalid_argument("alpha is not a root of f");
    if (f.derivative()(alpha) == 0)
        throw std::invalid_argument("E_alpha defined only at simple roots");
}

} // namespace

RationalPoly compute_E_alpha(const RationalPoly& f, const Rat& alpha) {
    if (f.degree() < 2)
        throw std::invalid_argument("compute_E_alpha requires deg f >= 2");
    require_simple_root(f, alpha);
    RationalPoly d = compute_D(f);
    RationalPoly rad = radical(f);
    RationalPoly lin = linear(alpha);
    RationalPoly q1 = rad.exact_div(lin);
    RationalPoly e = (d - q1).exact_div(lin);
    int deg = f.degree(), r = rad.degree();
    if (e.degree() != r - 2 || e.leading() != Rat(deg - 1))
        throw std::logic_error("compute_E_alpha: degree or leading coefficient off");
    return e;
}

NFPoly compute_E_alpha(const RationalPoly& f, const NFElement& alpha) {
    if (f.degree() < 2)
        throw std::invalid_argument("compute_E_alpha requires deg f >= 2");
    if (!nf_root_check(f, alpha))
        throw std::invalid_argument("alpha is not a root of f in Q[t]/(m)");
    // Simplicity in every component of the ring: f'(alpha) must be a unit.
    evaluate(f.derivative(), alpha).inverse();
    const FieldPtr& fld = alpha.field();
    NFPoly d = NFPoly::lift(compute_D(f), fld);
    NFPoly rad = NFPoly::lift(radical(f), fld);
    auto [q1, rem1] = rad.divmod_linear(alpha);
    if (!rem1.is_zero())
        throw std::logic_error("compute_E_alpha: rad(alpha) != 0 despite root check");
    auto [e, rem2] = (d - q1).divmod_linear(alpha);
    if (!rem2.is_zero())
        throw std::logic_error("compute_E_alpha: identity division left a remainder");
    return e;
}

FixedPoints fixed_points(const RationalPoly& f) {
    if (f.degree() < 2)
        throw std::invalid_argument("fixed_points requires deg f >= 2");
    FixedPoints out;
    RationalPoly rad = radical(f);
    out.rational = rational_roots(rad);
    RationalPoly residual = rad;
    for (const auto& q : out.rational)
        residual = residual.exact_div(linear(q));
    out.residual = residual;
    out.includes_infinity = true;
    return out;
}

bool is_totally_ramified_at(const RationalPoly& f, const Rat& alpha) {
    RationalPoly e = compute_E_alpha(f, alpha);
    int r = radical(f).degree();
    RationalPoly lin = linear(alpha);
    bool by_criterion = e == lin.pow(static_cast<unsigned>(r - 2)) * Rat(f.degree() - 1);
    // Independent check: multiplicity of (t - alpha) in num(N) - alpha*den(N).
    RationalMap n = build_newton_map(f);
    int mult = linear_multiplicity(n.num - n.den * alpha, alpha);
    bool by_multiplicity = mult == n.map_degree();
    if (by_criterion != by_multiplicity)
        throw std::logic_error("total-ramification criteria disagree");
    return by_criterion;
}

bool is_totally_ramified_at(const RationalPoly& f, const NFElement& alpha) {
    NFPoly e = compute_E_alpha(f, alpha);
    int r = radical(f).degree();
    bool by_criterion =
        e == NFPoly::linear_power(alpha, static_cast<unsigned>(r - 2), Rat(f.degree() - 1));
    // Multiplicity check over the ring: strip (t - alpha) while the remainder
    // vanishes identically.
    RationalMap n = build_newton_map(f);
    NFPoly g = NFPoly::lift(n.num, alpha.field()) -
               NFPoly::lift(n.den, alpha.field()) * alpha;
    int mult = 0;
    while (!g.is_zero()) {
        auto [q, rem] = g.divmod_linear(alpha);
        if (!rem.is_zero())
            break;
        g = q;
        ++mult;
    }
    bool by_multiplicity = mult == n.map_degree();
    if (by_criterion != by_multiplicity)
        throw std::logic_error("total-ramification criteria disagree");
    return by_criterion;
}

AffineMap::AffineMap(const Rat& b_, const Rat& c_) : b(b_), c(c_) {
    if (b == 0)
        throw std::invalid_argument("affine map requires b != 0");
}

RationalPoly AffineMap::as_poly() const {
    return RationalPoly(std::vector<Rat>{c, b});
}

RationalPoly conjugate_polynomial(const RationalPoly& f, const Rat& A, const AffineMap& sigma) {
    if (A == 0)
        throw std::invalid_argument("conjugate_polynomial requires A != 0");
    return f.compose(sigma.as_poly()) * A;
}

bool verify_conjugacy(const RationalPoly& f, const RationalPoly& g, const AffineMap& sigma) {
    if (f.degree() < 2 || g.degree() < 2)
        throw std::invalid_argument("verify_conjugacy requires deg >= 2");
    RationalMap nf = build_newton_map(f);
    RationalMap ng = build_newton_map(g);
    RationalPoly p = nf.num.compose(sigma.as_poly());
    RationalPoly q = nf.den.compose(sigma.as_poly());
    // sigma^{-1}(p/q) = (p - c*q) / (b*q)
    RationalMap conj(p - q * sigma.c, q * sigma.b);
    return ng == conj;
}

namespace {

std::string rat_str(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

// Rational-root witness: checks f == A(t-alpha)^d + B(t-alpha) with A = lc(f),
// B = f'(alpha); returns true when the normal form holds exactly.
bool normal_form_holds(const RationalPoly& f, const Rat& alpha, Rat& A, Rat& B) {
    A = f.leading();
    B = f.derivative()(alpha);
    RationalPoly lin = linear(alpha);
    RationalPoly rhs = lin.pow(static_cast<unsigned>(f.degree())) * A + lin * B;
    return f == rhs;
}

} // namespace

ExceptionalityReport classify_exceptional_roots(const RationalPoly& f,
                                                const std::optional<RationalPoly>& modulus) {
    if (f.degree() < 2)
        throw std::invalid_argument("classify_exceptional_roots requires deg f >= 2");
    ExceptionalityReport report;
    report.degree = f.degree();
    FactorProfile profile = squarefree_profile(f);
    int r = 0;
    for (const auto& part : profile.parts)
        r += part.factor.degree();
    report.distinct_roots = r;
    const bool squarefree =
        profile.parts.size() == 1 && profile.parts.front().multiplicity == 1;
    const int d = f.degree();

    for (const auto& part : profile.parts) {
        std::vector<Rat> roots = rational_roots(part.factor);
        RationalPoly residual = part.factor;
        for (const auto& q : roots)
            residual = residual.exact_div(linear(q));

        for (const auto& q : roots) {
            RootBlock block;
            block.rational_root = q;
            block.factor = linear(q);
            block.multiplicity = part.multiplicity;
            if (part.multiplicity >= 2) {
                block.verdict = Verdict::Exceptional;
                block.reason = ReasonTag::MultipleRoot;
                block.witness = "multiplicity " + std::to_string(part.multiplicity);
            } else if (r <= 2) {
                block.verdict = Verdict::Exceptional;
                block.reason = ReasonTag::FewDistinctRoots;
                block.witness = "at most two distinct roots (r = " + std::to_string(r) + ")";
            } else {
                RationalPoly e = compute_E_alpha(f, q);
                RationalPoly lin = linear(q);
                bool exceptional =
                    e == lin.pow(static_cast<unsigned>(r - 2)) * Rat(d - 1);
                Rat A, B;
                if (squarefree) {
                    // For squarefree f the normal form f = A(t-q)^d + B(t-q)
                    // holds exactly when q is exceptional; check both routes.
                    bool nf = normal_form_holds(f, q, A, B);
                    if (nf != exceptional)
                        throw std::logic_error(
                            "normal-form and E_alpha verdicts disagree");
                }
                if (exceptional) {
                    block.verdict = Verdict::Exceptional;
                    if (squarefree) {
                        block.reason = ReasonTag::NormalForm;
                        block.witness = "normal form A=" + rat_str(A) + ", B=" + rat_str(B);
                    } else {
                        block.reason = ReasonTag::EAlphaCriterion;
                        block.witness =
                            "E_alpha = (d-1)(t-alpha)^(r-2) = " + render_polynomial(e);
                    }
                } else {
                    block.verdict = Verdict::NotExceptional;
                    block.reason = ReasonTag::EAlphaCriterion;
                    block.witness = "E_alpha = " + render_polynomial(e) +
                                    " != (d-1)(t-alpha)^(r-2)";
                }
            }
            report.blocks.push_back(std::move(block));
        }

        if (residual.degree() >= 1) {
            RootBlock block;
            block.factor = residual;
            block.multiplicity = part.multiplicity;
            if (part.multiplicity >= 2) {
                block.verdict = Verdict::Exceptional;
                block.reason = ReasonTag::MultipleRoot;
                block.witness = "multiplicity " + std::to_string(part.multiplicity);
            } else if (r <= 2) {
                block.verdict = Verdict::Exceptional;
                block.reason = ReasonTag::FewDistinctRoots;
                block.witness = "at most two distinct roots (r = " + std::to_string(r) + ")";
            } else if (squarefree) {
                block.verdict = Verdict::NotExceptional;
                if (residual.degree() == d && d == 3) {
                    block.reason = ReasonTag::IrreducibleDegree3Plus;
                    block.witness = "irreducible cubic: no exceptional roots";
                } else {
                    block.reason = ReasonTag::NormalForm;
                    block.witness =
                        "an exceptional root of a squarefree polynomial is rational; "
                        "this block has none";
                }
            } else {
                // simple irrational roots of a non-squarefree polynomial
                block.verdict = Verdict::Unresolved;
                block.reason = ReasonTag::EAlphaCriterion;
                block.witness = "needs arithmetic in Q[t]/(m); supply the block's modulus";
                if (modulus) {
                    try {
                        FieldPtr fld = make_field(*modulus);
                        NFElement alpha = NFElement::generator(fld);
                        if (nf_root_check(residual, alpha)) {
                            bool exceptional = is_totally_ramified_at(f, alpha);
                            block.verdict = exceptional ? Verdict::Exceptional
                                                        : Verdict::NotExceptional;
                            block.witness = "E_alpha criterion in Q[t]/(" +
                                            render_polynomial(*modulus) + ")";
                        } else {
                            block.witness =
                                "supplied modulus does not annihilate this block";
                        }
                    } catch (const std::domain_error& err) {
                        block.witness = std::string("field arithmetic failed: ") + err.what();
                    }
                }
            }
            report.blocks.push_back(std::move(block));
        }
    }
    return report;
}

std::optional<StandardFormWitness> equiv_to_standard_form(const RationalPoly& f) {
    int d = f.degree();
    if (d < 2)
        throw std::invalid_argument("equiv_to_standard_form requires deg f >= 2");
    if (discriminant(f) == 0)
        throw std::invalid_argument("equiv_to_standard_form requires squarefree f");
    StandardFormWitness w;
    if (d == 2) {
        std::vector<Rat> roots = rational_roots(f);
        if (!roots.empty()) {
            Rat A, B;
            normal_form_holds(f, roots.front(), A, B); // always true for a quadratic at a root
            w.normal_form = std::array<Rat, 3>{A, B, roots.front()};
            w.zeta = "any root of z = " + rat_str(-B / A);
            w.note = "every separable quadratic is equivalent to t^2 - t";
        } else {
            w.zeta = "any root of z^(d-1) = -B/A with alpha either root of f";
            w.note = "equivalent to t^2 - t over the splitting field of f";
        }
        return w;
    }
    // alpha is forced by the t^(d-1) coefficient of A(t-alpha)^d + B(t-alpha).
    Rat alpha = -f.coeff(d - 1) / (Rat(d) * f.leading());
    Rat A, B;
    if (!normal_form_holds(f, alpha, A, B))
        return std::nullopt;
    w.normal_form = std::array<Rat, 3>{A, B, alpha};
    w.zeta = "any root of z^" + std::to_string(d - 1) + " = " + rat_str(-B / A);
    w.note = "f = A(t-alpha)^" + std::to_string(d) + " + B(t-alpha)";
    return w;
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Exceptional:
        return "Exceptional";
    case Verdict::NotExceptional:
        return "NotExceptional";
    default:
        return "Unresolved";
    }
}

const char* reason_name(ReasonTag r) {
    switch (r) {
    case ReasonTag::MultipleRoot:
        return "MultipleRoot";
    case ReasonTag::FewDistinctRoots:
        return "FewDistinctRoots";
    case ReasonTag::EAlphaCriterion:
        return "EAlphaCriterion";
    case ReasonTag::NormalForm:
        return "NormalForm";
    default:
        return "IrreducibleDegree3Plus";
    }
}

} // namespace newton
