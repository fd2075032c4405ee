#include "newton/density.hpp"

#include "newton/sieve.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace newton {

Rat PeriodHistogram::ell1_fraction() const {
    if (good_primes == 0) return Rat(0);
    auto it = counts.find(1);
    std::uint64_t ell1 = it == counts.end() ? 0 : it->second;
    return Rat(Int(ell1)) / Rat(Int(good_primes));
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NEWTON_PLACES_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<PrimeClassification> classify_primes(const LocalContext& ctx,
                                                 const std::vector<std::uint64_t>& primes,
                                                 int threads) {
    threads = resolve_threads(threads);
    std::vector<PrimeClassification> out(primes.size());
    if (primes.empty()) return out;
    std::size_t n_workers = std::min<std::size_t>(threads, primes.size());
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < primes.size(); ++i) out[i] = ctx.classify(primes[i]);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    // Contiguous chunks: each worker owns a disjoint slice of the output.
    std::size_t chunk = (primes.size() + n_workers - 1) / n_workers;
    for (std::size_t w = 0; w < n_workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(primes.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = ctx.classify(primes[i]);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

namespace {

void require_not_periodic(const RationalPoly& f, const Rat& x0) {
    OrbitRecord probe = exact_orbit(f, x0, 8);
    if (probe.periodic_flag) {
        std::ostringstream msg;
        msg << "x0 = " << x0
            << " is eventually periodic under the Newton map; the density statistic assumes "
               "the Newton approximation sequence (x_n) is not eventually periodic";
        throw std::domain_error(msg.str());
    }
}

// Effective outcome of a classification under a bad-prime policy. For
// Converged policy the probe result is looked up in `probed`.
struct Resolved {
    PrimeOutcome outcome;
    std::optional<Rat> root; // rational target when Converged, if known
};

Resolved resolve(const PrimeClassification& c, CountBadAs policy,
                 const std::map<std::uint64_t, ProbeReport>& probed, std::uint64_t p) {
    if (c.outcome != PrimeOutcome::Bad) return {c.outcome, c.root};
    switch (policy) {
        case CountBadAs::Excluded: return {PrimeOutcome::Bad, std::nullopt};
        case CountBadAs::Diverged: return {PrimeOutcome::Diverged, std::nullopt};
        case CountBadAs::Converged: {
            auto it = probed.find(p);
            if (it != probed.end() &&
                it->second.verdict == ProbeReport::Verdict::Converges)
                return {PrimeOutcome::Converged, it->second.target};
            return {PrimeOutcome::Bad, std::nullopt};
        }
    }
    return {PrimeOutcome::Bad, std::nullopt};
}

std::map<std::uint64_t, ProbeReport> probe_bad_primes(const RationalPoly& f, const Rat& x0,
                                                      const LocalContext& ctx,
                                                      CountBadAs policy) {
    std::map<std::uint64_t, ProbeReport> probed;
    if (policy != CountBadAs::Converged) return probed;
    OrbitRecord orbit = exact_orbit(f, x0, probe_depth(f, x0));
    for (const Int& p : ctx.bad_primes().primes()) {
        if (!p.fits_ulong_p()) continue;
        std::uint64_t pu = p.get_ui();
        probed.emplace(pu, bad_prime_probe(f, orbit, pu));
    }
    return probed;
}

std::string percent_string(std::uint64_t count, std::uint64_t pi) {
    if (pi == 0) return "0.000";
    return decimal_sig(Rat(100) * Rat(Int(count)) / Rat(Int(pi)), 4);
}

} // namespace

DensityTable density_table(const RationalPoly& f, const std::vector<Rat>& x0s,
                           const std::vector<std::uint64_t>& X_grid,
                           CountBadAs policy, int threads) {
    if (x0s.empty() || X_grid.empty())
        throw std::invalid_argument("density_table needs at least one x0 and one X");
    if (!std::is_sorted(X_grid.begin(), X_grid.end()))
        throw std::invalid_argument("X grid must be ascending");

    DensityTable table;
    table.x0s = x0s;
    table.grid = X_grid;
    std::vector<std::uint64_t> primes = sieve_primes(X_grid.back());

    for (const Rat& x0 : x0s) {
        require_not_periodic(f, x0);
        LocalContext ctx(f, x0);
        auto classes = classify_primes(ctx, primes, threads);
        auto probed = probe_bad_primes(f, x0, ctx, policy);

        std::vector<DensityRow> rows;
        std::size_t i = 0;
        std::uint64_t converged = 0, diverged = 0, bad = 0;
        for (std::uint64_t X : X_grid) {
            for (; i < primes.size() && primes[i] <= X; ++i) {
                Resolved r = resolve(classes[i], policy, probed, primes[i]);
                switch (r.outcome) {
                    case PrimeOutcome::Converged: ++converged; break;
                    case PrimeOutcome::Diverged: ++diverged; break;
                    case PrimeOutcome::Bad: ++bad; break;
                }
            }
            DensityRow row;
            row.X = X;
            row.pi_X = converged + diverged + bad;
            row.converged = converged;
            row.diverged = diverged;
            row.bad = bad;
            row.delta = row.pi_X == 0 ? Rat(0)
                                      : Rat(100) * Rat(Int(converged)) / Rat(Int(row.pi_X));
            row.delta_percent = percent_string(converged, row.pi_X);
            rows.push_back(std::move(row));
        }
        table.rows.push_back(std::move(rows));
    }
    return table;
}

namespace {

void require_race_roots(const RationalPoly& g) {
    bool has_plus = false, has_minus = false;
    for (const Rat& q : rational_roots(g)) {
        if (q == 1) has_plus = true;
        if (q == -1) has_minus = true;
    }
    if (!has_plus || !has_minus)
        throw std::domain_error("race requires labeled rational roots");
}

} // namespace

RaceTable race_table(const RationalPoly& g, const std::vector<Rat>& x0s,
                     const std::vector<std::uint64_t>& X_grid, CountBadAs policy,
                     int threads) {
    if (x0s.empty() || X_grid.empty())
        throw std::invalid_argument("race_table needs at least one x0 and one X");
    if (!std::is_sorted(X_grid.begin(), X_grid.end()))
        throw std::invalid_argument("X grid must be ascending");
    require_race_roots(g);

    RaceTable table;
    table.x0s = x0s;
    table.grid = X_grid;
    std::vector<std::uint64_t> primes = sieve_primes(X_grid.back());

    for (const Rat& x0 : x0s) {
        require_not_periodic(g, x0);
        LocalContext ctx(g, x0);
        auto classes = classify_primes(ctx, primes, threads);
        auto probed = probe_bad_primes(g, x0, ctx, policy);

        std::vector<RaceRow> rows;
        std::size_t i = 0;
        std::uint64_t to_plus = 0, to_minus = 0, other = 0, diverged = 0, bad = 0;
        for (std::uint64_t X : X_grid) {
            for (; i < primes.size() && primes[i] <= X; ++i) {
                Resolved r = resolve(classes[i], policy, probed, primes[i]);
                switch (r.outcome) {
                    case PrimeOutcome::Converged:
                        if (r.root && *r.root == 1) ++to_plus;
                        else if (r.root && *r.root == -1) ++to_minus;
                        else ++other;
                        break;
                    case PrimeOutcome::Diverged: ++diverged; break;
                    case PrimeOutcome::Bad: ++bad; break;
                }
            }
            RaceRow row;
            row.X = X;
            row.pi_X = to_plus + to_minus + other + diverged + bad;
            row.to_plus = to_plus;
            row.to_minus = to_minus;
            row.other = other;
            row.diverged = diverged;
            row.bad = bad;
            row.delta_plus = row.pi_X == 0 ? Rat(0)
                                           : Rat(100) * Rat(Int(to_plus)) / Rat(Int(row.pi_X));
            row.delta_minus = row.pi_X == 0
                                  ? Rat(0)
                                  : Rat(100) * Rat(Int(to_minus)) / Rat(Int(row.pi_X));
            row.delta_plus_percent = percent_string(to_plus, row.pi_X);
            row.delta_minus_percent = percent_string(to_minus, row.pi_X);
            rows.push_back(std::move(row));
        }
        table.rows.push_back(std::move(rows));
    }
    return table;
}

std::vector<CrossingRecord> lead_change_scan(const RationalPoly& g, const Rat& x0,
                                             std::uint64_t X, CountBadAs policy,
                                             int threads) {
    require_race_roots(g);
    require_not_periodic(g, x0);
    LocalContext ctx(g, x0);
    std::vector<std::uint64_t> primes = sieve_primes(X);
    auto classes = classify_primes(ctx, primes, threads);
    auto probed = probe_bad_primes(g, x0, ctx, policy);

    std::vector<CrossingRecord> crossings;
    long long to_plus = 0, to_minus = 0;
    int sign = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        Resolved r = resolve(classes[i], policy, probed, primes[i]);
        if (r.outcome == PrimeOutcome::Converged && r.root) {
            if (*r.root == 1) ++to_plus;
            else if (*r.root == -1) ++to_minus;
        }
        long long d = to_minus - to_plus;
        int s = d > 0 ? 1 : d < 0 ? -1 : 0;
        if (s != sign) {
            crossings.push_back({primes[i], sign, s});
            sign = s;
        }
    }
    return crossings;
}

PeriodHistogram period_histogram(const RationalPoly& f, const Rat& x0, std::uint64_t X,
                                 int threads) {
    require_not_periodic(f, x0);
    LocalContext ctx(f, x0);
    std::vector<std::uint64_t> primes = sieve_primes(X);
    auto classes = classify_primes(ctx, primes, threads);

    PeriodHistogram hist;
    for (const auto& c : classes) {
        if (c.outcome == PrimeOutcome::Bad) continue;
        ++hist.good_primes;
        ++hist.counts[c.period];
        if (c.period != 1) continue;
        if (c.outcome == PrimeOutcome::Converged) ++hist.ell1_root;
        else if (c.cycle_entry.infinite) ++hist.ell1_infinity;
        else ++hist.ell1_other_fixed;
    }
    return hist;
}

std::string density_csv(const DensityTable& table, std::size_t x0_index) {
    const auto& rows = table.rows.at(x0_index);
    std::ostringstream out;
    out << "X,pi_X,converged,diverged,bad,delta_percent\n";
    for (const auto& r : rows)
        out << r.X << ',' << r.pi_X << ',' << r.converged << ',' << r.diverged << ','
            << r.bad << ',' << r.delta_percent << '\n';
    return out.str();
}

std::string race_csv(const RaceTable& table, std::size_t x0_index) {
    const auto& rows = table.rows.at(x0_index);
    std::ostringstream out;
    out << "X,pi_X,to_plus,to_minus,other,diverged,bad,delta_plus,delta_minus\n";
    for (const auto& r : rows)
        out << r.X << ',' << r.pi_X << ',' << r.to_plus << ',' << r.to_minus << ','
            << r.other << ',' << r.diverged << ',' << r.bad << ','
            << r.delta_plus_percent << ',' << r.delta_minus_percent << '\n';
    return out.str();
}

namespace {

std::string rat_label(const Rat& q) {
    std::ostringstream out;
    out << q;
    return out.str();
}

} // namespace

std::string density_markdown(const DensityTable& table) {
    std::ostringstream out;
    out << "| X ";
    for (const Rat& x0 : table.x0s) out << "| x0 = " << rat_label(x0) << ' ';
    out << "|\n|---";
    for (std::size_t i = 0; i < table.x0s.size(); ++i) out << "|---";
    out << "|\n";
    for (std::size_t j = 0; j < table.grid.size(); ++j) {
        out << "| " << table.grid[j] << ' ';
        for (std::size_t i = 0; i < table.x0s.size(); ++i)
            out << "| " << table.rows[i][j].delta_percent << ' ';
        out << "|\n";
    }
    return out.str();
}

std::string race_markdown(const RaceTable& table) {
    std::ostringstream out;
    out << "| X ";
    for (const Rat& x0 : table.x0s) out << "| x0 = " << rat_label(x0) << ' ';
    out << "|\n|---";
    for (std::size_t i = 0; i < table.x0s.size(); ++i) out << "|---";
    out << "|\n";
    for (std::size_t j = 0; j < table.grid.size(); ++j) {
        out << "| " << table.grid[j] << ' ';
        for (std::size_t i = 0; i < table.x0s.size(); ++i)
            out << "| " << table.rows[i][j].delta_plus_percent << " / "
                << table.rows[i][j].delta_minus_percent << ' ';
        out << "|\n";
    }
    return out.str();
}

} // namespace newton
