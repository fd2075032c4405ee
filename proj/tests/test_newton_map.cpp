#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "newton/newton_map.hpp"
#include "newton/number_field.hpp"
#include "newton/rational_poly.hpp"

#include <random>
#include <vector>

using namespace newton;

namespace {

RationalPoly P(std::initializer_list<long> ascending) {
    return RationalPoly::from_ints(ascending);
}

const RationalPoly kCube = P({-1, 0, 0, 1});   // t^3 - 1
const RationalPoly kRace = P({0, -1, 0, 1});   // t^3 - t
const RationalPoly kDouble = P({2, -3, 0, 1}); // (t-1)^2 (t+2)

} // namespace

TEST_CASE("build_newton_map on the reference polynomials") {
    RationalMap n = build_newton_map(kCube);
    CHECK(n == RationalMap(P({1, 0, 0, 2}), P({0, 0, 3}))); // (2t^3+1)/(3t^2)
    CHECK(n.map_degree() == 3);
    auto [p, q] = n.integer_pair();
    CHECK(p == std::vector<Int>{1, 0, 0, 2});
    CHECK(q == std::vector<Int>{0, 0, 3});

    RationalMap m = build_newton_map(P({0, -1, 1})); // t^2 - t
    CHECK(m == RationalMap(P({0, 0, 1}), P({-1, 2}))); // t^2/(2t-1)
    CHECK(m.map_degree() == 2);

    RationalMap r = build_newton_map(kRace);
    auto [rp, rq] = r.integer_pair();
    CHECK(rp == std::vector<Int>{0, 0, 0, 2}); // 2t^3
    CHECK(rq == std::vector<Int>{-1, 0, 3});   // 3t^2 - 1
}

TEST_CASE("Newton map degree is the distinct-root count") {
    CHECK(build_newton_map(kDouble).map_degree() == 2);
    auto [p, q] = build_newton_map(kDouble).integer_pair();
    CHECK(p == std::vector<Int>{2, 2, 2});
    CHECK(q == std::vector<Int>{3, 3});

    CHECK(build_newton_map(P({-1, 0, 2})).map_degree() == 2);
    CHECK(build_newton_map(P({0, 0, 0, 1})).map_degree() == 1); // t^3: one root
}

TEST_CASE("degenerate Newton maps") {
    RationalMap c = build_newton_map(P({-6, 2})); // root 3
    CHECK(c.num == RationalPoly(Rat(3)));
    CHECK(c.den == RationalPoly(Rat(1)));
    CHECK(c.map_degree() == 0);
    CHECK(c(Rat(11)) == 3);

    CHECK_THROWS_AS(build_newton_map(RationalPoly(Rat(2))), std::invalid_argument);
}

TEST_CASE("RationalMap normalization and evaluation") {
    RationalMap m(P({0, 2}), P({0, 0, 4})); // 2t/4t^2
    CHECK(m.num == RationalPoly(Rat(1, 2)));
    CHECK(m.den == P({0, 1}));
    CHECK(m.map_degree() == 1);
    auto [p, q] = m.integer_pair();
    CHECK(p == std::vector<Int>{1});
    CHECK(q == std::vector<Int>{0, 2});

    CHECK_THROWS_AS(RationalMap(P({1}), RationalPoly()), std::invalid_argument);

    RationalMap n = build_newton_map(kCube);
    CHECK(n(Rat(2)) == Rat(17, 12));
    CHECK(n(Rat(1)) == 1);
    CHECK_THROWS_AS(build_newton_map(P({0, -1, 1}))(Rat(1, 2)), std::domain_error);
}

TEST_CASE("compute_D") {
    CHECK(compute_D(kCube) == P({0, 0, 3}));
    CHECK(compute_D(kRace) == P({-1, 0, 3}));
    CHECK(compute_D(kDouble) == P({3, 3}));
    CHECK(compute_D(P({-1, 0, 2})) == P({0, 2}));
    CHECK_THROWS_AS(compute_D(P({1, 1})), std::invalid_argument);

    // leading coefficient is always deg f
    CHECK(compute_D(kDouble).leading() == 3);
    CHECK(compute_D(kDouble).degree() == 1); // r - 1
}

TEST_CASE("E_alpha at rational simple roots") {
    CHECK(compute_E_alpha(kRace, Rat(0)) == P({0, 2}));
    CHECK(compute_E_alpha(kRace, Rat(1)) == P({1, 2}));
    CHECK(compute_E_alpha(kRace, Rat(-1)) == P({-1, 2}));
    CHECK(compute_E_alpha(kCube, Rat(1)) == P({1, 2}));

    CHECK_THROWS_WITH_AS(compute_E_alpha(kCube, Rat(2)), "alpha is not a root of f",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(compute_E_alpha(kDouble, Rat(1)),
                         "E_alpha defined only at simple roots", std::invalid_argument);
}

TEST_CASE("E_alpha over Q[t]/(m)") {
    // f = (t^2 - 2)(t - 1)^2, alpha = sqrt(2)
    RationalPoly f = P({-2, 0, 1}) * P({1, -2, 1});
    FieldPtr k = make_field(P({-2, 0, 1}));
    NFElement s = NFElement::generator(k);

    NFPoly e = compute_E_alpha(f, s);
    CHECK(e.degree() == 1);
    CHECK(e.coeff(1) == NFElement::from_rational(k, 3));
    CHECK(e.coeff(0) == s * Rat(2) - NFElement::from_rational(k, 1)); // 2 sqrt(2) - 1

    CHECK_FALSE(is_totally_ramified_at(f, s));
    CHECK_THROWS_AS(compute_E_alpha(kCube, s), std::invalid_argument);
}

TEST_CASE("total ramification of t^d - t at zero") {
    for (int d = 2; d <= 10; ++d) {
        std::vector<Rat> c(static_cast<size_t>(d) + 1, Rat(0));
        c[1] = -1;
        c[static_cast<size_t>(d)] = 1;
        CHECK(is_totally_ramified_at(RationalPoly(c), Rat(0)));
    }
    CHECK_FALSE(is_totally_ramified_at(kRace, Rat(1)));
    CHECK_FALSE(is_totally_ramified_at(kRace, Rat(-1)));
    CHECK_FALSE(is_totally_ramified_at(kCube, Rat(1)));
}

TEST_CASE("fixed points") {
    FixedPoints fp = fixed_points(kCube);
    CHECK(fp.rational == std::vector<Rat>{Rat(1)});
    CHECK(fp.residual == P({1, 1, 1}));
    CHECK(fp.includes_infinity);

    fp = fixed_points(kRace);
    CHECK(fp.rational == std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
    CHECK(fp.residual == RationalPoly(Rat(1)));

    fp = fixed_points(kDouble); // radical kills the multiplicity
    CHECK(fp.rational == std::vector<Rat>{Rat(-2), Rat(1)});
    CHECK(fp.residual == RationalPoly(Rat(1)));

    CHECK_THROWS_AS(fixed_points(P({1, 1})), std::invalid_argument);
}

TEST_CASE("affine conjugacy") {
    AffineMap sigma(Rat(3), Rat(2));
    CHECK(sigma(Rat(1)) == 5);
    CHECK(sigma.inverse()(Rat(5)) == 1);
    CHECK(sigma.as_poly() == P({2, 3}));
    CHECK_THROWS_AS(AffineMap(Rat(0), Rat(1)), std::invalid_argument);

    RationalPoly g = conjugate_polynomial(kRace, Rat(5), sigma);
    CHECK(g.degree() == 3);
    CHECK(verify_conjugacy(kRace, g, sigma));
    CHECK_FALSE(verify_conjugacy(kRace, g, AffineMap(Rat(3), Rat(1))));
    CHECK_THROWS_AS(conjugate_polynomial(kRace, Rat(0), sigma), std::invalid_argument);
}

TEST_CASE("conjugation commutes with the Newton construction") {
    std::mt19937 gen(2718);
    std::uniform_int_distribution<long> small(-5, 5);
    for (int i = 0; i < 40; ++i) {
        long b = small(gen), c = small(gen), a = small(gen);
        if (b == 0 || a == 0)
            continue;
        AffineMap sigma(Rat(b), Rat(c, 2));
        RationalPoly g = conjugate_polynomial(kCube, Rat(a, 3), sigma);
        CHECK(verify_conjugacy(kCube, g, sigma));
    }
}

TEST_CASE("exceptionality: multiple and scarce roots") {
    // (t-1)^2 (t+2): multiplicity beats everything, then r = 2
    ExceptionalityReport rep = classify_exceptional_roots(kDouble);
    CHECK(rep.degree == 3);
    CHECK(rep.distinct_roots == 2);
    REQUIRE(rep.blocks.size() == 2);
    CHECK(rep.blocks[0].rational_root == Rat(-2));
    CHECK(rep.blocks[0].verdict == Verdict::Exceptional);
    CHECK(rep.blocks[0].reason == ReasonTag::FewDistinctRoots);
    CHECK(rep.blocks[1].rational_root == Rat(1));
    CHECK(rep.blocks[1].multiplicity == 2);
    CHECK(rep.blocks[1].verdict == Verdict::Exceptional);
    CHECK(rep.blocks[1].reason == ReasonTag::MultipleRoot);
    CHECK(rep.blocks[1].witness == "multiplicity 2");

    // irrational pair still exceptional when r = 2
    rep = classify_exceptional_roots(P({-3, 0, 1}));
    REQUIRE(rep.blocks.size() == 1);
    CHECK_FALSE(rep.blocks[0].rational_root.has_value());
    CHECK(rep.blocks[0].factor == P({-3, 0, 1}));
    CHECK(rep.blocks[0].verdict == Verdict::Exceptional);
    CHECK(rep.blocks[0].reason == ReasonTag::FewDistinctRoots);

    CHECK_THROWS_AS(classify_exceptional_roots(P({1, 1})), std::invalid_argument);
}

TEST_CASE("exceptionality: E_alpha decides rational roots when r >= 3") {
    ExceptionalityReport rep = classify_exceptional_roots(kRace);
    REQUIRE(rep.blocks.size() == 3);
    CHECK(rep.blocks[0].rational_root == Rat(-1));
    CHECK(rep.blocks[0].verdict == Verdict::NotExceptional);
    CHECK(rep.blocks[1].rational_root == Rat(0));
    CHECK(rep.blocks[1].verdict == Verdict::Exceptional);
    CHECK(rep.blocks[1].reason == ReasonTag::NormalForm);
    CHECK(rep.blocks[2].rational_root == Rat(1));
    CHECK(rep.blocks[2].verdict == Verdict::NotExceptional);
    CHECK(rep.blocks[2].reason == ReasonTag::EAlphaCriterion);

    rep = classify_exceptional_roots(kCube);
    REQUIRE(rep.blocks.size() == 2);
    CHECK(rep.blocks[0].rational_root == Rat(1));
    CHECK(rep.blocks[0].verdict == Verdict::NotExceptional);
    CHECK(rep.blocks[1].factor == P({1, 1, 1}));
    CHECK(rep.blocks[1].verdict == Verdict::NotExceptional);

    // rational-root-free cubic
    rep = classify_exceptional_roots(P({-2, 0, 0, 1}));
    REQUIRE(rep.blocks.size() == 1);
    CHECK(rep.blocks[0].verdict == Verdict::NotExceptional);
    CHECK(rep.blocks[0].reason == ReasonTag::IrreducibleDegree3Plus);
}

TEST_CASE("exceptionality: irrational simple roots need a modulus") {
    RationalPoly f = P({-2, 0, 1}) * P({1, -2, 1}); // (t^2-2)(t-1)^2
    ExceptionalityReport rep = classify_exceptional_roots(f);
    REQUIRE(rep.blocks.size() == 2);
    CHECK(rep.blocks[0].factor == P({-2, 0, 1}));
    CHECK(rep.blocks[0].verdict == Verdict::Unresolved);
    CHECK(rep.blocks[1].rational_root == Rat(1));
    CHECK(rep.blocks[1].verdict == Verdict::Exceptional);
    CHECK(rep.blocks[1].reason == ReasonTag::MultipleRoot);

    rep = classify_exceptional_roots(f, P({-2, 0, 1}));
    CHECK(rep.blocks[0].verdict == Verdict::NotExceptional);
    CHECK(rep.blocks[0].reason == ReasonTag::EAlphaCriterion);

    // a modulus that misses the block leaves it unresolved
    rep = classify_exceptional_roots(f, P({-3, 0, 1}));
    CHECK(rep.blocks[0].verdict == Verdict::Unresolved);
}

TEST_CASE("standard form witnesses") {
    auto w = equiv_to_standard_form(kRace);
    REQUIRE(w.has_value());
    REQUIRE(w->normal_form.has_value());
    CHECK((*w->normal_form)[0] == 1);
    CHECK((*w->normal_form)[1] == -1);
    CHECK((*w->normal_form)[2] == 0);

    CHECK_FALSE(equiv_to_standard_form(kCube).has_value());

    // conjugates of t^3 - t keep a rational witness
    RationalPoly g = conjugate_polynomial(kRace, Rat(5), AffineMap(Rat(3), Rat(2)));
    w = equiv_to_standard_form(g);
    REQUIRE(w.has_value());
    REQUIRE(w->normal_form.has_value());
    CHECK((*w->normal_form)[0] == 135);
    CHECK((*w->normal_form)[1] == -15);
    CHECK((*w->normal_form)[2] == Rat(-2, 3));
}

TEST_CASE("standard form quadratics") {
    auto w = equiv_to_standard_form(P({0, -1, 1}));
    REQUIRE(w.has_value());
    REQUIRE(w->normal_form.has_value());
    CHECK((*w->normal_form)[0] == 1);
    CHECK((*w->normal_form)[1] == -1);
    CHECK((*w->normal_form)[2] == 0);

    w = equiv_to_standard_form(P({-3, 0, 1})); // no rational root, still equivalent
    REQUIRE(w.has_value());
    CHECK_FALSE(w->normal_form.has_value());
    CHECK_FALSE(w->note.empty());

    CHECK_THROWS_AS(equiv_to_standard_form(kDouble), std::invalid_argument);
}

TEST_CASE("verdict and reason names") {
    CHECK(std::string(verdict_name(Verdict::Exceptional)) == "Exceptional");
    CHECK(std::string(verdict_name(Verdict::NotExceptional)) == "NotExceptional");
    CHECK(std::string(verdict_name(Verdict::Unresolved)) == "Unresolved");
    CHECK(std::string(reason_name(ReasonTag::MultipleRoot)) == "MultipleRoot");
    CHECK(std::string(reason_name(ReasonTag::NormalForm)) == "NormalForm");
}
