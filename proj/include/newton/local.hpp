#pragma once

#include "newton/modular.hpp"
#include "newton/newton_map.hpp"
#include "newton/rational_poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace newton {

enum class BadReason {
    DividesLeadingCoeff,
    DividesCoeffDenominator,
    DividesDiscriminantOfRadical,
    DividesDegree,
    DividesDegreeMinusOne,
    ReductionDegreeDrops,
    DividesX0Denominator,
};

std::string bad_reason_name(BadReason r);

struct BadPrimeSet {
    // Sorted by prime; a finite superset of the primes lacking good reduction.
    std::map<Int, std::set<BadReason>> reasons;

    std::vector<Int> primes() const;
    bool contains(const Int& p) const { return reasons.count(p) != 0; }
};

enum class PrimeOutcome { Converged, Diverged, Bad };

struct PrimeClassification {
    PrimeOutcome outcome = PrimeOutcome::Bad;

    // Converged: the fixed residue, plus either a matching rational root of f
    // or the rational-root-free squarefree block vanishing at the residue.
    std::uint64_t residue = 0;
    std::optional<Rat> root;
    std::string block;

    // Diverged: orbit shape. A period-1 cycle here sits on infinity or on a
    // residue that is not a simple root of f mod p.
    std::uint64_t tail = 0;
    std::uint64_t period = 0;
    ProjPoint cycle_entry;

    // Bad: why the prime was excluded.
    std::set<BadReason> bad_reasons;
};

struct OrbitRecord {
    std::vector<Rat> entries; // x_0, ..., x_n exactly
    bool periodic_flag = false;
};

struct PrimitiveFactors {
    Int primitive_part;      // |numerator of x_n - gamma| with all earlier prime support removed
    std::vector<Int> primes; // prime factors of primitive_part found within budget, ascending
    bool complete = true;    // primes accounts for all of primitive_part
};

struct ProbeReport {
    enum class Verdict { Converges, Diverges, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Rat> target;  // rational root certified as the p-adic limit
    std::vector<long> ord_trace; // ord_p(f(x_n)) for n = 0.. (capped when f(x_n) = 0)
};

// Precomputed per-(f, x0) data shared across many primes: the Newton map with
// cleared denominators, divisibility witnesses for the bad-prime superset, and
// root labels. Classification per prime is pure and cheap against this.
class LocalContext {
public:
    LocalContext(const RationalPoly& f, const Rat& x0);

    const RationalPoly& polynomial() const { return f_; }
    const Rat& start() const { return x0_; }
    const RationalMap& newton_map() const { return map_; }

    bool is_bad(std::uint64_t p, std::set<BadReason>* why = nullptr) const;
    BadPrimeSet bad_primes() const;

    PrimeClassification classify(std::uint64_t p) const;

    // Minimal (tail, period) of the mod-p orbit; nullopt for bad primes.
    std::optional<std::pair<std::uint64_t, std::uint64_t>>
    eventual_period(std::uint64_t p) const;

    const std::vector<Rat>& roots() const { return roots_; }

private:
    ProjPoint start_point(std::uint64_t p) const;

    RationalPoly f_;
    Rat x0_;
    RationalMap map_;
    std::vector<Int> num_, den_; // integer pair for map_

    // Divisibility witnesses: a prime is bad iff it divides one of these.
    Int lc_num_;        // numerator of lc(f)
    Int denom_lcm_;     // lcm of coefficient denominators
    Int disc_rad_;      // numerator * denominator of disc(rad f)
    Int degree_, degree_minus_one_;
    Int x0_den_;
    Int reduction_witness_; // lc(num) * lc(den) * Res(num, den)

    std::vector<Rat> roots_; // rational roots of f
    std::vector<Int> f_int_, f_der_int_;     // integer forms of f and f'
    RationalPoly block_;                     // squarefree part of f with rational roots removed
};

BadPrimeSet compute_bad_primes(const RationalPoly& f, const Rat& x0);

PrimeClassification classify_prime(const RationalPoly& f, const Rat& x0, std::uint64_t p);

// (tail, period) for a good prime, nullopt for a bad one.
std::optional<std::pair<std::uint64_t, std::uint64_t>>
eventual_period(const RationalPoly& f, const Rat& x0, std::uint64_t p);

// Exact iteration x_{k+1} = N(x_k) for n_max steps. Stops early with
// periodic_flag when a value repeats. Throws when an iterate is a pole of N.
OrbitRecord exact_orbit(const RationalPoly& f, const Rat& x0, int n_max);

// For n = 0..n_max: the primes dividing numerator(x_n - gamma) but no earlier
// numerator. Factorization is budgeted; nonemptiness is exact either way.
std::vector<PrimitiveFactors> primitive_prime_factors(const RationalPoly& f, const Rat& x0,
                                                      const Rat& gamma, int n_max);

// Heuristic evidence at a bad prime: run the exact orbit and watch p-adic
// valuations. Converges needs a certified strictly growing tail; the verdict
// never feeds a density count unless the caller opts in. The depth defaults
// to 12 but backs off when iterates would outgrow a few megabits.
ProbeReport bad_prime_probe(const RationalPoly& f, const Rat& x0, std::uint64_t p,
                            int n_max = 12);
ProbeReport bad_prime_probe(const RationalPoly& f, const OrbitRecord& orbit,
                            std::uint64_t p);

// Largest depth <= n_max whose iterate stays below the digit guard.
int probe_depth(const RationalPoly& f, const Rat& x0, int n_max = 12);

} // namespace newton
