#pragma once

#include "newton/local.hpp"
#include "newton/rational.hpp"
#include "newton/rational_poly.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace newton {

// Policy for bad primes in the density counts. Converged consults
// bad_prime_probe and moves only certified primes (to their certified root in
// the race split); Diverged reassigns all of them bluntly.
enum class CountBadAs { Excluded, Converged, Diverged };

struct DensityRow {
    std::uint64_t X = 0, pi_X = 0;
    std::uint64_t converged = 0, diverged = 0, bad = 0;
    Rat delta;                 // exact 100 * converged / pi_X
    std::string delta_percent; // 4 significant digits
};

struct RaceRow {
    std::uint64_t X = 0, pi_X = 0;
    std::uint64_t to_plus = 0, to_minus = 0, other = 0, diverged = 0, bad = 0;
    Rat delta_plus, delta_minus;
    std::string delta_plus_percent, delta_minus_percent;
};

struct DensityTable {
    std::vector<Rat> x0s;
    std::vector<std::uint64_t> grid;
    std::vector<std::vector<DensityRow>> rows; // rows[i][j]: x0s[i], grid[j]
};

struct RaceTable {
    std::vector<Rat> x0s;
    std::vector<std::uint64_t> grid;
    std::vector<std::vector<RaceRow>> rows;
};

struct CrossingRecord {
    std::uint64_t prime = 0; // prime at which sign(to_minus - to_plus) changed
    int sign_before = 0;
    int sign_after = 0;
};

struct PeriodHistogram {
    std::map<std::uint64_t, std::uint64_t> counts; // period -> good primes
    std::uint64_t good_primes = 0;
    std::uint64_t ell1_root = 0;        // converged: fixed simple-root residue
    std::uint64_t ell1_other_fixed = 0; // fixed residue that is no simple root
    std::uint64_t ell1_infinity = 0;    // orbit settles at infinity
    Rat ell1_fraction() const;
};

// Thread-count resolution: requested > 0 wins, then NEWTON_PLACES_THREADS,
// then hardware concurrency.
int resolve_threads(int requested);

// Classify every prime in `primes` against ctx, fanned out over threads.
// Output order matches input order; identical for any thread count.
std::vector<PrimeClassification> classify_primes(const LocalContext& ctx,
                                                 const std::vector<std::uint64_t>& primes,
                                                 int threads);

DensityTable density_table(const RationalPoly& f, const std::vector<Rat>& x0s,
                           const std::vector<std::uint64_t>& X_grid,
                           CountBadAs policy = CountBadAs::Excluded, int threads = 0);

RaceTable race_table(const RationalPoly& g, const std::vector<Rat>& x0s,
                     const std::vector<std::uint64_t>& X_grid,
                     CountBadAs policy = CountBadAs::Excluded, int threads = 0);

// Running to_minus - to_plus over ascending primes <= X; one record per sign
// change. Aggregation is inherently sequential; classification still fans out.
std::vector<CrossingRecord> lead_change_scan(const RationalPoly& g, const Rat& x0,
                                             std::uint64_t X,
                                             CountBadAs policy = CountBadAs::Excluded,
                                             int threads = 0);

PeriodHistogram period_histogram(const RationalPoly& f, const Rat& x0, std::uint64_t X,
                                 int threads = 0);

// CSV per x0: header X,pi_X,converged,diverged,bad,delta_percent (density) or
// X,pi_X,to_plus,to_minus,other,diverged,bad,delta_plus,delta_minus (race).
// LF line endings, no locale formatting.
std::string density_csv(const DensityTable& table, std::size_t x0_index);
std::string race_csv(const RaceTable& table, std::size_t x0_index);

// Markdown tables: one row per X, one column per x0.
std::string density_markdown(const DensityTable& table);
std::string race_markdown(const RaceTable& table);

} // namespace newton
