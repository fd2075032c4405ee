#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "newton/local.hpp"
#include "newton/modular.hpp"
#include "newton/rational.hpp"
#include "newton/rational_poly.hpp"

#include <set>
#include <vector>

using namespace newton;

namespace {

RationalPoly P(std::initializer_list<long> ascending) {
    return RationalPoly::from_ints(ascending);
}

const RationalPoly kCube = P({-1, 0, 0, 1});   // t^3 - 1
const RationalPoly kRace = P({0, -1, 0, 1});   // t^3 - t
const RationalPoly kDouble = P({2, -3, 0, 1}); // (t-1)^2 (t+2)

std::vector<long> root_trace(const RationalPoly& f, const Rat& x0, int n, const Rat& q,
                             long p) {
    OrbitRecord orbit = exact_orbit(f, x0, n);
    std::vector<long> out;
    for (const Rat& x : orbit.entries)
        out.push_back(ord_p(Rat(x - q), Int(p)));
    return out;
}

} // namespace

TEST_CASE("prime field arithmetic") {
    CHECK(fp::add(5, 6, 7) == 4);
    CHECK(fp::sub(2, 5, 7) == 4);
    CHECK(fp::mul(3, 5, 7) == 1);
    CHECK(fp::pow(2, 10, 1009) == 15);
    CHECK(fp::inv(3, 7) == 5);
    CHECK(fp::inv(9, 11) == 5);

    // products route through 128 bits
    const fp::u64 m61 = 2305843009213693951ull;
    fp::u64 big = 1ull << 60;
    CHECK(fp::mul(big, big, m61) == (1ull << 59));
    CHECK(fp::pow(2, 120, m61) == (1ull << 59));
}

TEST_CASE("polynomial reduction mod p") {
    std::vector<Int> c{1, 0, 0, 2};
    CHECK(reduce_poly_mod_p(c, 5) == std::vector<std::uint64_t>{1, 0, 0, 2});
    CHECK(reduce_poly_mod_p(c, 2) == std::vector<std::uint64_t>{1}); // degree collapses
    CHECK(reduce_poly_mod_p({Int(-1), Int(3)}, 5) == std::vector<std::uint64_t>{4, 3});
    CHECK(reduce_poly_mod_p({Int(10), Int(5)}, 5).empty());

    CHECK(eval_poly_mod_p({1, 0, 0, 2}, 2, 5) == 2); // 17 mod 5
    CHECK(eval_poly_mod_p({}, 3, 5) == 0);

    CHECK(gcd_degree_mod_p({4, 0, 1}, {1, 2, 1}, 5) == 1); // t^2-1, (t+1)^2 mod 5
    CHECK(gcd_degree_mod_p({1, 0, 1}, {4, 0, 1}, 5) == 0);
    CHECK_THROWS_AS(gcd_degree_mod_p({}, {1, 1}, 5), std::invalid_argument);
}

TEST_CASE("reduced Newton map mod p") {
    std::vector<Int> num{1, 0, 0, 2}, den{0, 0, 3}; // (2t^3+1)/(3t^2)
    CHECK_FALSE(ReducedMap::reduce(num, den, 2).has_value());
    CHECK_FALSE(ReducedMap::reduce(num, den, 3).has_value());

    auto m = ReducedMap::reduce(num, den, 5);
    REQUIRE(m.has_value());
    CHECK(m->prime() == 5);
    CHECK((*m)(ProjPoint::finite(2)) == ProjPoint::finite(1));
    CHECK((*m)(ProjPoint::finite(1)) == ProjPoint::finite(1));
    CHECK((*m)(ProjPoint::finite(0)) == ProjPoint::infinity()); // pole of the map
    CHECK((*m)(ProjPoint::infinity()) == ProjPoint::infinity());

    // t^2/(2t-1) mod 5 sends 3 to infinity
    auto q = ReducedMap::reduce({Int(0), Int(0), Int(1)}, {Int(-1), Int(2)}, 5);
    REQUIRE(q.has_value());
    CHECK((*q)(ProjPoint::finite(3)) == ProjPoint::infinity());
    CHECK((*q)(ProjPoint::finite(0)) == ProjPoint::finite(0));
}

TEST_CASE("cycle detection") {
    auto m = ReducedMap::reduce({Int(1), Int(0), Int(0), Int(2)}, {Int(0), Int(0), Int(3)}, 11);
    REQUIRE(m.has_value());

    // 2 -> 6 -> 9 -> 7 -> 4 -> 2 is a pure 5-cycle
    CycleInfo info = find_cycle(*m, ProjPoint::finite(2));
    CHECK(info.tail == 0);
    CHECK(info.period == 5);
    CHECK(info.entry == ProjPoint::finite(2));

    // 10 falls onto the cycle at 7
    info = find_cycle(*m, ProjPoint::finite(10));
    CHECK(info.tail == 1);
    CHECK(info.period == 5);
    CHECK(info.entry == ProjPoint::finite(7));

    info = find_cycle(*m, ProjPoint::infinity());
    CHECK(info.tail == 0);
    CHECK(info.period == 1);
    CHECK(info.entry == ProjPoint::infinity());

    info = find_cycle(*m, ProjPoint::finite(0));
    CHECK(info.tail == 1);
    CHECK(info.period == 1);
    CHECK(info.entry == ProjPoint::infinity());
}

TEST_CASE("bad prime supersets") {
    LocalContext cube(kCube, Rat(2));
    std::vector<Int> bad = cube.bad_primes().primes();
    CHECK(bad == std::vector<Int>{2, 3});
    CHECK(cube.is_bad(2));
    CHECK(cube.is_bad(3));
    CHECK_FALSE(cube.is_bad(5));
    CHECK_FALSE(cube.is_bad(97373));

    std::set<BadReason> why;
    CHECK(cube.is_bad(2, &why));
    CHECK(why.count(BadReason::DividesDegreeMinusOne) == 1);
    CHECK(why.count(BadReason::ReductionDegreeDrops) == 1);
    why.clear();
    CHECK(cube.is_bad(3, &why));
    CHECK(why.count(BadReason::DividesDegree) == 1);
    CHECK(why.count(BadReason::DividesDiscriminantOfRadical) == 1);

    CHECK(compute_bad_primes(kRace, Rat(2)).primes() == std::vector<Int>{2, 3});
    CHECK(compute_bad_primes(P({-1, 0, 2}), Rat(2)).primes() == std::vector<Int>{2});
}

TEST_CASE("bad primes from the leading coefficient, denominators, and x0") {
    BadPrimeSet bad = compute_bad_primes(P({-1, 0, 0, 5}), Rat(2));
    CHECK(bad.contains(5));
    CHECK(bad.reasons.at(5).count(BadReason::DividesLeadingCoeff) == 1);

    bad = compute_bad_primes(kCube, Rat(1, 5));
    CHECK(bad.primes() == std::vector<Int>{2, 3, 5});
    CHECK(bad.reasons.at(5).count(BadReason::DividesX0Denominator) == 1);

    RationalPoly f({Rat(1, 7), Rat(-1), Rat(0), Rat(1)}); // t^3 - t + 1/7
    bad = compute_bad_primes(f, Rat(2));
    CHECK(bad.contains(7));
    CHECK(bad.reasons.at(7).count(BadReason::DividesCoeffDenominator) == 1);
    CHECK(bad.contains(13)); // disc numerator 169/49
    CHECK(bad.reasons.at(13).count(BadReason::DividesDiscriminantOfRadical) == 1);

    CHECK(bad_reason_name(BadReason::DividesLeadingCoeff) == "DividesLeadingCoeff");
    CHECK(bad_reason_name(BadReason::ReductionDegreeDrops) == "ReductionDegreeDrops");

    CHECK_THROWS_AS(LocalContext(P({1, 1}), Rat(0)), std::invalid_argument);
}

TEST_CASE("classification of good primes") {
    LocalContext cube(kCube, Rat(2));
    CHECK(cube.roots() == std::vector<Rat>{Rat(1)});

    PrimeClassification c = cube.classify(5);
    CHECK(c.outcome == PrimeOutcome::Converged);
    CHECK(c.residue == 1);
    CHECK(c.root == Rat(1));
    CHECK(c.block.empty());

    // 2 is already a simple root of f mod 7, but of the block t^2 + t + 1
    c = cube.classify(7);
    CHECK(c.outcome == PrimeOutcome::Converged);
    CHECK(c.residue == 2);
    CHECK_FALSE(c.root.has_value());
    CHECK(c.block == "t^2 + t + 1");

    c = cube.classify(11);
    CHECK(c.outcome == PrimeOutcome::Diverged);
    CHECK(c.period == 5);
    CHECK(c.tail == 0);
    CHECK(c.cycle_entry == ProjPoint::finite(2));

    c = cube.classify(2);
    CHECK(c.outcome == PrimeOutcome::Bad);
    CHECK(c.bad_reasons.count(BadReason::DividesDegreeMinusOne) == 1);
}

TEST_CASE("converged residue on a rational-root-free block") {
    // x0 = 3 is a simple root of t^3 - 2 mod 5 and a fixed residue
    PrimeClassification c = classify_prime(P({-2, 0, 0, 1}), Rat(3), 5);
    CHECK(c.outcome == PrimeOutcome::Converged);
    CHECK(c.residue == 3);
    CHECK_FALSE(c.root.has_value());
    CHECK(c.block == "t^3 - 2");
}

TEST_CASE("orbit landing at infinity counts as diverged") {
    PrimeClassification c = classify_prime(P({0, -1, 1}), Rat(3), 5);
    CHECK(c.outcome == PrimeOutcome::Diverged);
    CHECK(c.period == 1);
    CHECK(c.tail == 1);
    CHECK(c.cycle_entry == ProjPoint::infinity());
}

TEST_CASE("multiple-root residues never converge") {
    // x_n = 1 mod 7 throughout, but 1 is a double root of (t-1)^2 (t+2)
    PrimeClassification c = classify_prime(kDouble, Rat(3), 7);
    CHECK(c.outcome == PrimeOutcome::Diverged);
    CHECK(c.period == 1);
    CHECK(c.cycle_entry == ProjPoint::finite(1));
}

TEST_CASE("eventual periods") {
    auto ep = eventual_period(kCube, Rat(2), 5);
    REQUIRE(ep.has_value());
    CHECK(*ep == std::pair<std::uint64_t, std::uint64_t>{1, 1});

    ep = eventual_period(kCube, Rat(2), 11);
    REQUIRE(ep.has_value());
    CHECK(*ep == std::pair<std::uint64_t, std::uint64_t>{0, 5});

    ep = eventual_period(kCube, Rat(1), 5); // start on the root
    REQUIRE(ep.has_value());
    CHECK(*ep == std::pair<std::uint64_t, std::uint64_t>{0, 1});

    CHECK_FALSE(eventual_period(kCube, Rat(2), 3).has_value());
}

TEST_CASE("exact orbits") {
    OrbitRecord orbit = exact_orbit(kCube, Rat(2), 2);
    REQUIRE(orbit.entries.size() == 3);
    CHECK(orbit.entries[0] == 2);
    CHECK(orbit.entries[1] == Rat(17, 12));
    CHECK(orbit.entries[2] == Rat(5777, 5202));
    CHECK_FALSE(orbit.periodic_flag);

    orbit = exact_orbit(P({0, -1, 1}), Rat(1), 5); // fixed point of N
    CHECK(orbit.periodic_flag);
    CHECK(orbit.entries == std::vector<Rat>{Rat(1), Rat(1)});

    orbit = exact_orbit(kCube, Rat(2), 0);
    CHECK(orbit.entries == std::vector<Rat>{Rat(2)});

    CHECK_THROWS_WITH_AS(exact_orbit(P({0, -1, 1}), Rat(1, 2), 3),
                         "Newton map has a pole at iterate n = 0 (x_n = 1/2)",
                         std::domain_error);
    CHECK_THROWS_AS(exact_orbit(kCube, Rat(2), -1), std::invalid_argument);
}

TEST_CASE("valuations double at a simple root") {
    // ord_5(x_0 - 1) = 1 and the Newton step squares the distance
    CHECK(root_trace(kCube, Rat(6), 4, Rat(1), 5) == std::vector<long>{1, 2, 4, 8, 16});
}

TEST_CASE("valuations stall at a multiple root") {
    CHECK(root_trace(kDouble, Rat(3), 8, Rat(1), 7) ==
          std::vector<long>{0, 1, 1, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("negative valuations are stationary") {
    OrbitRecord orbit = exact_orbit(kCube, Rat(1, 289), 5);
    for (const Rat& x : orbit.entries)
        CHECK(ord_p(x, Int(17)) == -2);
}

TEST_CASE("primitive prime factors, gamma = 1") {
    std::vector<PrimitiveFactors> pf = primitive_prime_factors(kCube, Rat(2), Rat(1), 8);
    REQUIRE(pf.size() == 9);

    CHECK(pf[0].primitive_part == 1); // x_0 - 1 = 1
    CHECK(pf[0].primes.empty());
    CHECK(pf[0].complete);
    CHECK(pf[1].primes == std::vector<Int>{5});
    CHECK(pf[2].primes == std::vector<Int>{23});
    CHECK(pf[3].primes == std::vector<Int>{2, 59, 71});
    CHECK(pf[3].complete);
    CHECK(pf[4].primes == std::vector<Int>{456193, 1724677});
    CHECK(pf[4].complete);
    CHECK(pf[5].primes ==
          std::vector<Int>{103, 31881043, 758528833, Int("65181174652957511")});
    CHECK(pf[5].complete);

    // the budget gives up on the huge cofactors but keeps the small factors
    CHECK(pf[6].primes == std::vector<Int>{43, 1097});
    CHECK_FALSE(pf[6].complete);
    CHECK(pf[7].primes == std::vector<Int>{983});
    CHECK_FALSE(pf[7].complete);
    CHECK(pf[8].primes == std::vector<Int>{181});
    CHECK_FALSE(pf[8].complete);

    // every step past the first contributes a new prime
    for (std::size_t n = 1; n < pf.size(); ++n)
        CHECK_FALSE(pf[n].primes.empty());
}

TEST_CASE("primitive prime factors, gamma = 0") {
    std::vector<PrimitiveFactors> pf = primitive_prime_factors(kRace, Rat(2), Rat(0), 8);
    REQUIRE(pf.size() == 9);
    CHECK(pf[0].primitive_part == 2);
    CHECK(pf[0].primes == std::vector<Int>{2});
    for (std::size_t n = 1; n < pf.size(); ++n) {
        CHECK(pf[n].primitive_part == 1);
        CHECK(pf[n].primes.empty());
        CHECK(pf[n].complete);
    }

    CHECK_THROWS_WITH_AS(primitive_prime_factors(kCube, Rat(2), Rat(2), 3),
                         "orbit hits gamma at n = 0", std::domain_error);
}

TEST_CASE("probe certifies the convergent bad primes of t^3 - 1") {
    ProbeReport r = bad_prime_probe(kCube, Rat(2), 2);
    CHECK(r.verdict == ProbeReport::Verdict::Converges);
    CHECK(r.target == Rat(1));
    CHECK(r.ord_trace.size() == 13);

    r = bad_prime_probe(kCube, Rat(2), 3);
    CHECK(r.verdict == ProbeReport::Verdict::Diverges);
    CHECK_FALSE(r.target.has_value());

    CHECK(bad_prime_probe(kCube, Rat(3), 2).verdict == ProbeReport::Verdict::Converges);
    CHECK(bad_prime_probe(kCube, Rat(3), 2).target == Rat(1));
    CHECK(bad_prime_probe(kCube, Rat(3), 3).verdict == ProbeReport::Verdict::Diverges);

    CHECK(bad_prime_probe(kCube, Rat(4), 2).target == Rat(1));
    CHECK(bad_prime_probe(kCube, Rat(4), 3).target == Rat(1));

    CHECK(bad_prime_probe(kCube, Rat(5), 2).target == Rat(1));
    CHECK(bad_prime_probe(kCube, Rat(5), 3).verdict == ProbeReport::Verdict::Diverges);
}

TEST_CASE("probe targets for t^3 - t split by starting point") {
    auto target = [](long x0, std::uint64_t p) {
        ProbeReport r = bad_prime_probe(kRace, Rat(x0), p);
        REQUIRE(r.verdict == ProbeReport::Verdict::Converges);
        REQUIRE(r.target.has_value());
        return *r.target;
    };
    CHECK(target(2, 2) == Rat(0));
    CHECK(target(2, 3) == Rat(-1));
    CHECK(target(3, 2) == Rat(-1));
    CHECK(target(3, 3) == Rat(0));
    CHECK(target(4, 2) == Rat(0));
    CHECK(target(4, 3) == Rat(1));
    CHECK(target(5, 2) == Rat(1));
    CHECK(target(5, 3) == Rat(-1));
}

TEST_CASE("probe refuses stalled valuations") {
    ProbeReport r = bad_prime_probe(kDouble, Rat(3), 7, 8);
    CHECK(r.verdict == ProbeReport::Verdict::Diverges);
    CHECK_FALSE(r.target.has_value());
}

TEST_CASE("probe depth backs off for huge starts") {
    CHECK(probe_depth(kCube, Rat(2)) == 12);
    CHECK(probe_depth(kCube, Rat(2), 6) == 6);
    Rat huge(pow10_int(500000));
    CHECK(probe_depth(kCube, huge) == 0);
}

TEST_CASE("LocalContext accessors") {
    LocalContext ctx(kRace, Rat(1, 3));
    CHECK(ctx.polynomial() == kRace);
    CHECK(ctx.start() == Rat(1, 3));
    CHECK(ctx.newton_map().map_degree() == 3);
    CHECK(ctx.roots() == std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
    CHECK(ctx.is_bad(3)); // x0 denominator
    std::set<BadReason> why;
    ctx.is_bad(3, &why);
    CHECK(why.count(BadReason::DividesX0Denominator) == 1);
}
