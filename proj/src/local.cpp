#include "newton/local.hpp"

#include "newton/int_factor.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace newton {

std::string bad_reason_name(BadReason r) {
    switch (r) {
        case BadReason::DividesLeadingCoeff: return "DividesLeadingCoeff";
        case BadReason::DividesCoeffDenominator: return "DividesCoeffDenominator";
        case BadReason::DividesDiscriminantOfRadical: return "DividesDiscriminantOfRadical";
        case BadReason::DividesDegree: return "DividesDegree";
        case BadReason::DividesDegreeMinusOne: return "DividesDegreeMinusOne";
        case BadReason::ReductionDegreeDrops: return "ReductionDegreeDrops";
        case BadReason::DividesX0Denominator: return "DividesX0Denominator";
    }
    return "?";
}

std::vector<Int> BadPrimeSet::primes() const {
    std::vector<Int> out;
    out.reserve(reasons.size());
    for (const auto& [p, _] : reasons) out.push_back(p);
    return out;
}

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Divisibility witness helpers: p is bad for a tag iff p divides the witness.
bool divides(std::uint64_t p, const Int& witness) {
    if (witness == 0) return false;
    return mpz_divisible_ui_p(witness.get_mpz_t(), p) != 0;
}

} // namespace

LocalContext::LocalContext(const RationalPoly& f, const Rat& x0)
    : f_(f), x0_(x0), map_(build_newton_map(f)) {
    if (f.degree() < 2)
        throw std::invalid_argument("local analysis requires deg f >= 2");

    std::tie(num_, den_) = map_.integer_pair();

    lc_num_ = abs_int(Int(f.leading().get_num()));
    denom_lcm_ = 1;
    for (int i = 0; i <= f.degree(); ++i) {
        Int d = f.coeff(i).get_den();
        mpz_lcm(denom_lcm_.get_mpz_t(), denom_lcm_.get_mpz_t(), d.get_mpz_t());
    }
    Rat disc = discriminant(radical(f));
    disc_rad_ = abs_int(Int(disc.get_num() * disc.get_den()));
    degree_ = f.degree();
    degree_minus_one_ = f.degree() - 1;
    x0_den_ = x0.get_den();

    Int res = resultant_int(num_, den_);
    reduction_witness_ = abs_int(num_.back() * den_.back() * res);
    if (reduction_witness_ == 0)
        throw std::logic_error("Newton map numerator and denominator share a factor");

    roots_ = rational_roots(f);

    auto fi = f.integer_form();
    f_int_ = fi.coeffs;
    auto di = f.derivative().integer_form();
    f_der_int_ = di.coeffs;

    block_ = radical(f);
    for (const Rat& q : roots_) {
        std::vector<Rat> lin{-q, Rat(1)};
        block_ = block_.exact_div(RationalPoly(lin));
    }
}

bool LocalContext::is_bad(std::uint64_t p, std::set<BadReason>* why) const {
    bool bad = false;
    auto mark = [&](bool hit, BadReason r) {
        if (!hit) return;
        bad = true;
        if (why) why->insert(r);
    };
    mark(divides(p, lc_num_), BadReason::DividesLeadingCoeff);
    mark(divides(p, denom_lcm_) && denom_lcm_ != 1, BadReason::DividesCoeffDenominator);
    mark(divides(p, disc_rad_), BadReason::DividesDiscriminantOfRadical);
    mark(divides(p, degree_), BadReason::DividesDegree);
    mark(divides(p, degree_minus_one_), BadReason::DividesDegreeMinusOne);
    mark(divides(p, reduction_witness_), BadReason::ReductionDegreeDrops);
    mark(divides(p, x0_den_) && x0_den_ != 1, BadReason::DividesX0Denominator);
    return bad;
}

BadPrimeSet LocalContext::bad_primes() const {
    BadPrimeSet out;
    auto add = [&](const Int& witness, BadReason r, bool skip_one) {
        if (witness == 0 || (skip_one && witness == 1)) return;
        for (const auto& [p, e] : factor_integer_complete(abs_int(witness)).primes) {
            (void)e;
            out.reasons[p].insert(r);
        }
    };
    add(lc_num_, BadReason::DividesLeadingCoeff, false);
    add(denom_lcm_, BadReason::DividesCoeffDenominator, true);
    add(disc_rad_, BadReason::DividesDiscriminantOfRadical, false);
    add(degree_, BadReason::DividesDegree, false);
    add(degree_minus_one_, BadReason::DividesDegreeMinusOne, false);
    add(reduction_witness_, BadReason::ReductionDegreeDrops, false);
    add(x0_den_, BadReason::DividesX0Denominator, true);
    return out;
}

ProjPoint LocalContext::start_point(std::uint64_t p) const {
    if (divides(p, x0_den_)) return ProjPoint::infinity();
    return ProjPoint::finite(mod_p(x0_, p));
}

PrimeClassification LocalContext::classify(std::uint64_t p) const {
    PrimeClassification out;
    std::set<BadReason> why;
    if (is_bad(p, &why)) {
        out.outcome = PrimeOutcome::Bad;
        out.bad_reasons = std::move(why);
        return out;
    }

    auto reduced = ReducedMap::reduce(num_, den_, p);
    if (!reduced)
        throw std::logic_error("good prime failed reduction; bad-prime superset is wrong");

    CycleInfo cyc = find_cycle(*reduced, start_point(p));
    out.tail = cyc.tail;
    out.period = cyc.period;
    out.cycle_entry = cyc.entry;

    if (cyc.period == 1 && !cyc.entry.infinite) {
        std::uint64_t r = cyc.entry.value;
        std::uint64_t fv = eval_poly_mod_p(reduce_poly_mod_p(f_int_, p), r, p);
        std::uint64_t dv = eval_poly_mod_p(reduce_poly_mod_p(f_der_int_, p), r, p);
        if (fv == 0 && dv != 0) {
            out.outcome = PrimeOutcome::Converged;
            out.residue = r;
            for (const Rat& q : roots_) {
                if (mod_p(q, p) == r) {
                    out.root = q;
                    break;
                }
            }
            if (!out.root) {
                auto bi = block_.integer_form();
                std::uint64_t bv = eval_poly_mod_p(reduce_poly_mod_p(bi.coeffs, p), r, p);
                if (bv != 0)
                    throw std::logic_error("converged residue matches no factor of f");
                out.block = render_polynomial(block_);
            }
            return out;
        }
    }
    out.outcome = PrimeOutcome::Diverged;
    return out;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
LocalContext::eventual_period(std::uint64_t p) const {
    if (is_bad(p)) return std::nullopt;
    auto reduced = ReducedMap::reduce(num_, den_, p);
    if (!reduced)
        throw std::logic_error("good prime failed reduction; bad-prime superset is wrong");
    CycleInfo cyc = find_cycle(*reduced, start_point(p));
    return std::make_pair(cyc.tail, cyc.period);
}

BadPrimeSet compute_bad_primes(const RationalPoly& f, const Rat& x0) {
    return LocalContext(f, x0).bad_primes();
}

PrimeClassification classify_prime(const RationalPoly& f, const Rat& x0, std::uint64_t p) {
    return LocalContext(f, x0).classify(p);
}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
eventual_period(const RationalPoly& f, const Rat& x0, std::uint64_t p) {
    return LocalContext(f, x0).eventual_period(p);
}

OrbitRecord exact_orbit(const RationalPoly& f, const Rat& x0, int n_max) {
    if (n_max < 0) throw std::invalid_argument("exact_orbit: n_max must be >= 0");
    RationalMap N = build_newton_map(f);
    OrbitRecord rec;
    rec.entries.push_back(x0);
    for (int n = 0; n < n_max; ++n) {
        const Rat& x = rec.entries.back();
        if (N.den(x) == 0) {
            std::ostringstream msg;
            msg << "Newton map has a pole at iterate n = " << n << " (x_n = " << x << ")";
            throw std::domain_error(msg.str());
        }
        Rat next = N(x);
        if (std::find(rec.entries.begin(), rec.entries.end(), next) != rec.entries.end()) {
            rec.entries.push_back(next);
            rec.periodic_flag = true;
            return rec;
        }
        rec.entries.push_back(next);
    }
    return rec;
}

std::vector<PrimitiveFactors> primitive_prime_factors(const RationalPoly& f, const Rat& x0,
                                                      const Rat& gamma, int n_max) {
    OrbitRecord orbit = exact_orbit(f, x0, n_max);
    std::vector<PrimitiveFactors> out;
    std::vector<Int> earlier;
    for (std::size_t n = 0; n < orbit.entries.size(); ++n) {
        Rat diff = orbit.entries[n] - gamma;
        if (diff == 0) {
            std::ostringstream msg;
            msg << "orbit hits gamma at n = " << n;
            throw std::domain_error(msg.str());
        }
        Int numer = abs_int(Int(diff.get_num()));
        // Strip every prime already seen in an earlier numerator.
        Int prim = numer;
        for (const Int& m : earlier) {
            Int g;
            mpz_gcd(g.get_mpz_t(), prim.get_mpz_t(), m.get_mpz_t());
            while (g > 1) {
                while (mpz_divisible_p(prim.get_mpz_t(), g.get_mpz_t()))
                    prim /= g;
                mpz_gcd(g.get_mpz_t(), prim.get_mpz_t(), m.get_mpz_t());
            }
        }
        PrimitiveFactors pf;
        pf.primitive_part = prim;
        if (prim > 1) {
            Factorization fac = factor_integer(prim);
            for (const auto& [p, e] : fac.primes) {
                (void)e;
                pf.primes.push_back(p);
            }
            std::sort(pf.primes.begin(), pf.primes.end());
            pf.complete = fac.complete();
        }
        out.push_back(std::move(pf));
        earlier.push_back(numer);
    }
    return out;
}

namespace {

constexpr long kOrdInfinity = 1L << 30;

long ord_or_infinity(const Rat& v, const Int& p) {
    if (v == 0) return kOrdInfinity;
    return ord_p(v, p);
}

// A trace certifies convergence when its tail keeps strictly climbing: the
// last `window` steps each increase, ending at a comfortably positive value.
bool certified_growth(const std::vector<long>& t, int window, long floor_value) {
    if (static_cast<int>(t.size()) < window + 1) return false;
    std::size_t k = t.size();
    for (int i = 0; i < window; ++i) {
        long a = t[k - 1 - i], b = t[k - 2 - i];
        if (a == kOrdInfinity && b == kOrdInfinity) continue;
        if (a <= b) return false;
    }
    return t.back() >= floor_value;
}

} // namespace

int probe_depth(const RationalPoly& f, const Rat& x0, int n_max) {
    // Iterate digits grow by roughly a factor deg N per step; stay under ~1.5M.
    double digits = static_cast<double>(mpz_sizeinbase(x0.get_num().get_mpz_t(), 10) +
                                        mpz_sizeinbase(x0.get_den().get_mpz_t(), 10));
    double growth = std::max(2, f.degree());
    int depth = 0;
    while (depth < n_max && digits * growth <= 1.5e6) {
        digits *= growth;
        ++depth;
    }
    return depth;
}

ProbeReport bad_prime_probe(const RationalPoly& f, const Rat& x0, std::uint64_t p,
                            int n_max) {
    return bad_prime_probe(f, exact_orbit(f, x0, probe_depth(f, x0, n_max)), p);
}

ProbeReport bad_prime_probe(const RationalPoly& f, const OrbitRecord& orbit,
                            std::uint64_t p) {
    ProbeReport rep;
    Int P(static_cast<unsigned long>(p));

    for (const Rat& x : orbit.entries) rep.ord_trace.push_back(ord_or_infinity(f(x), P));

    // A rational root whose distance to the orbit gains valuation every step
    // certifies the p-adic limit.
    for (const Rat& q : rational_roots(f)) {
        std::vector<long> trace;
        for (const Rat& x : orbit.entries) trace.push_back(ord_or_infinity(x - q, P));
        if (certified_growth(trace, 4, 6)) {
            rep.verdict = ProbeReport::Verdict::Converges;
            rep.target = q;
            return rep;
        }
    }
    if (certified_growth(rep.ord_trace, 4, 6)) {
        rep.verdict = ProbeReport::Verdict::Converges;
        return rep;
    }

    // Bounded valuations throughout the tail are evidence against convergence.
    long first_half_max = rep.ord_trace.front(), second_half_max = rep.ord_trace.front();
    std::size_t half = rep.ord_trace.size() / 2;
    for (std::size_t i = 0; i < rep.ord_trace.size(); ++i) {
        long v = rep.ord_trace[i];
        if (i < half) first_half_max = std::max(first_half_max, v);
        else second_half_max = std::max(second_half_max, v);
    }
    if (second_half_max <= std::max(first_half_max, 1L))
        rep.verdict = ProbeReport::Verdict::Diverges;
    return rep;
}

} // namespace newton
