#include "newton/cli.hpp"

#include "newton/density.hpp"
#include "newton/local.hpp"
#include "newton/newton_map.hpp"
#include "newton/parse.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace newton {

namespace {

RationalPoly poly_arg(const std::string& text) { return parse_polynomial(text); }

std::vector<Rat> x0_list_arg(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw ParseError("empty x0 list", 0);
    return out;
}

std::vector<std::uint64_t> make_grid(std::uint64_t Xmax, std::uint64_t step) {
    if (step < 2 || Xmax < step)
        throw CLI::ValidationError("--step must be >= 2 and <= --Xmax");
    std::vector<std::uint64_t> grid;
    for (std::uint64_t X = step; X <= Xmax; X += step) grid.push_back(X);
    if (grid.back() != Xmax) grid.push_back(Xmax);
    return grid;
}

CountBadAs bad_policy(const std::string& name) {
    if (name == "excluded") return CountBadAs::Excluded;
    if (name == "converged") return CountBadAs::Converged;
    if (name == "diverged") return CountBadAs::Diverged;
    throw CLI::ValidationError("--count-bad-as must be converged, diverged or excluded");
}

std::string x0_file_tag(const Rat& x0) {
    std::ostringstream out;
    out << x0;
    std::string s = out.str();
    for (char& c : s)
        if (c == '/' || c == '-') c = '_';
    return s;
}

std::string out_path_for(const std::string& base, const Rat& x0, bool multiple) {
    if (!multiple) return base;
    std::size_t dot = base.find_last_of('.');
    std::string stem = dot == std::string::npos ? base : base.substr(0, dot);
    std::string ext = dot == std::string::npos ? "" : base.substr(dot);
    return stem + "_x0_" + x0_file_tag(x0) + ext;
}

// All CSV content is rendered before any file is opened, so a failed run
// leaves no partial output behind.
void write_all(const std::vector<std::pair<std::string, std::string>>& files) {
    for (const auto& [path, content] : files) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + path);
    }
}

std::string proj_point_string(const ProjPoint& p) {
    return p.infinite ? "infinity" : std::to_string(p.value);
}

void print_classification(const PrimeClassification& c, std::uint64_t p) {
    switch (c.outcome) {
        case PrimeOutcome::Converged:
            std::cout << "p = " << p << ": converges, residue " << c.residue;
            if (c.root) std::cout << ", root " << *c.root;
            else std::cout << ", block " << c.block;
            std::cout << " (tail " << c.tail << ")\n";
            break;
        case PrimeOutcome::Diverged:
            std::cout << "p = " << p << ": diverges, tail " << c.tail << ", period "
                      << c.period << ", cycle entry " << proj_point_string(c.cycle_entry)
                      << "\n";
            break;
        case PrimeOutcome::Bad: {
            std::cout << "p = " << p << ": bad prime (";
            bool first = true;
            for (BadReason r : c.bad_reasons) {
                if (!first) std::cout << ", ";
                std::cout << bad_reason_name(r);
                first = false;
            }
            std::cout << ")\n";
            break;
        }
    }
}

const char* probe_verdict_name(ProbeReport::Verdict v) {
    switch (v) {
        case ProbeReport::Verdict::Converges: return "converges";
        case ProbeReport::Verdict::Diverges: return "diverges";
        case ProbeReport::Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

int cmd_analyze(const std::string& poly_text, const std::string& modulus_text) {
    RationalPoly f = poly_arg(poly_text);
    std::optional<RationalPoly> modulus;
    if (!modulus_text.empty()) modulus = poly_arg(modulus_text);

    std::cout << "f(t) = " << render_polynomial(f) << "\n";
    RationalMap N = build_newton_map(f);
    auto [P, Q] = N.integer_pair();
    auto as_poly = [](const std::vector<Int>& v) {
        std::vector<Rat> c(v.begin(), v.end());
        return RationalPoly(std::move(c));
    };
    std::cout << "N(t) = (" << render_polynomial(as_poly(P)) << ") / ("
              << render_polynomial(as_poly(Q)) << ")\n";
    if (f.degree() >= 1) {
        std::cout << "D(t) = " << render_polynomial(compute_D(f)) << "\n";
        std::cout << "rad(t) = " << render_polynomial(radical(f)) << "\n";
    }

    FixedPoints fixed = fixed_points(f);
    std::cout << "fixed points:";
    for (const Rat& q : fixed.rational) std::cout << ' ' << q;
    if (fixed.residual.degree() > 0)
        std::cout << " roots of " << render_polynomial(fixed.residual);
    if (fixed.includes_infinity) std::cout << " infinity";
    std::cout << "\n\n";

    ExceptionalityReport report = classify_exceptional_roots(f, modulus);
    std::cout << "degree " << report.degree << ", distinct roots " << report.distinct_roots
              << "\n";
    for (const RootBlock& b : report.blocks) {
        std::cout << "- ";
        if (b.rational_root) std::cout << "root " << *b.rational_root;
        else std::cout << "roots of " << render_polynomial(b.factor);
        std::cout << " (multiplicity " << b.multiplicity
                  << "): " << verdict_name(b.verdict) << " [" << reason_name(b.reason)
                  << "]";
        if (!b.witness.empty()) std::cout << " " << b.witness;
        std::cout << "\n";
        if (b.rational_root && b.verdict != Verdict::Unresolved && b.multiplicity == 1) {
            RationalPoly E = compute_E_alpha(f, *b.rational_root);
            std::cout << "  E_alpha = " << render_polynomial(E) << "\n";
        }
    }

    if (discriminant(f) != 0) {
        if (auto w = equiv_to_standard_form(f)) {
            std::cout << "\nstandard form t^d - t: ";
            if (w->normal_form) {
                const auto& nf = *w->normal_form;
                std::cout << "f = A(t-alpha)^d + B(t-alpha) with A = " << nf[0]
                          << ", B = " << nf[1] << ", alpha = " << nf[2] << "; " << w->zeta;
            }
            if (!w->note.empty()) std::cout << (w->normal_form ? "; " : "") << w->note;
            std::cout << "\n";
        } else {
            std::cout << "\nnot equivalent to t^d - t over Q\n";
        }
    }
    return 0;
}

int cmd_classify(const std::string& poly_text, const std::string& x0_text,
                 std::uint64_t prime) {
    RationalPoly f = poly_arg(poly_text);
    Rat x0 = parse_rational(x0_text);
    LocalContext ctx(f, x0);
    PrimeClassification c = ctx.classify(prime);
    print_classification(c, prime);
    if (c.outcome == PrimeOutcome::Bad) {
        ProbeReport probe = bad_prime_probe(f, x0, prime);
        std::cout << "heuristic: " << probe_verdict_name(probe.verdict);
        if (probe.target) std::cout << " to root " << *probe.target;
        std::cout << " (ord_p trace:";
        for (long v : probe.ord_trace) std::cout << ' ' << v;
        std::cout << ")\n";
    }
    return 0;
}

int cmd_density(const std::string& poly_text, const std::string& x0_text,
                std::uint64_t Xmax, std::uint64_t step, const std::string& policy_name,
                int threads, const std::string& out_path) {
    RationalPoly f = poly_arg(poly_text);
    std::vector<Rat> x0s = x0_list_arg(x0_text);
    DensityTable table =
        density_table(f, x0s, make_grid(Xmax, step), bad_policy(policy_name), threads);
    std::cout << density_markdown(table);
    if (!out_path.empty()) {
        std::vector<std::pair<std::string, std::string>> files;
        for (std::size_t i = 0; i < x0s.size(); ++i)
            files.emplace_back(out_path_for(out_path, x0s[i], x0s.size() > 1),
                               density_csv(table, i));
        write_all(files);
    }
    return 0;
}

int cmd_race(const std::string& poly_text, const std::string& x0_text, std::uint64_t Xmax,
             std::uint64_t step, const std::string& policy_name, int threads,
             const std::string& out_path, bool crossings) {
    RationalPoly g = poly_arg(poly_text);
    std::vector<Rat> x0s = x0_list_arg(x0_text);
    CountBadAs policy = bad_policy(policy_name);
    RaceTable table = race_table(g, x0s, make_grid(Xmax, step), policy, threads);
    std::cout << race_markdown(table);
    if (crossings) {
        for (const Rat& x0 : x0s) {
            auto records = lead_change_scan(g, x0, Xmax, policy, threads);
            std::cout << "\nlead changes for x0 = " << x0 << " (sign of to_minus - to_plus):\n";
            if (records.empty()) std::cout << "  none\n";
            for (const auto& r : records)
                std::cout << "  p = " << r.prime << ": " << r.sign_before << " -> "
                          << r.sign_after << "\n";
        }
    }
    if (!out_path.empty()) {
        std::vector<std::pair<std::string, std::string>> files;
        for (std::size_t i = 0; i < x0s.size(); ++i)
            files.emplace_back(out_path_for(out_path, x0s[i], x0s.size() > 1),
                               race_csv(table, i));
        write_all(files);
    }
    return 0;
}

int cmd_periods(const std::string& poly_text, const std::string& x0_text,
                std::uint64_t Xmax, int threads) {
    RationalPoly f = poly_arg(poly_text);
    Rat x0 = parse_rational(x0_text);
    PeriodHistogram hist = period_histogram(f, x0, Xmax, threads);
    std::cout << "| period | count |\n|---|---|\n";
    for (const auto& [period, count] : hist.counts)
        std::cout << "| " << period << " | " << count << " |\n";
    std::cout << "good primes: " << hist.good_primes << "\n";
    std::cout << "period 1 split: " << hist.ell1_root << " on a simple-root residue, "
              << hist.ell1_other_fixed << " on another fixed residue, " << hist.ell1_infinity
              << " at infinity\n";
    std::cout << "period-1 fraction: " << decimal_sig(hist.ell1_fraction(), 4) << "\n";
    return 0;
}

int cmd_orbit(const std::string& poly_text, const std::string& x0_text, int n) {
    RationalPoly f = poly_arg(poly_text);
    Rat x0 = parse_rational(x0_text);
    OrbitRecord orbit = exact_orbit(f, x0, n);
    for (std::size_t i = 0; i < orbit.entries.size(); ++i)
        std::cout << "x_" << i << " = " << orbit.entries[i] << "\n";
    if (orbit.periodic_flag)
        std::cout << "orbit is eventually periodic (value repeated)\n";
    return 0;
}

int cmd_factors(const std::string& poly_text, const std::string& x0_text,
                const std::string& gamma_text, int n) {
    RationalPoly f = poly_arg(poly_text);
    Rat x0 = parse_rational(x0_text);
    Rat gamma = parse_rational(gamma_text);
    auto rows = primitive_prime_factors(f, x0, gamma, n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::cout << "n = " << i << ": ";
        if (rows[i].primitive_part == 1) {
            std::cout << "none\n";
            continue;
        }
        bool first = true;
        for (const Int& p : rows[i].primes) {
            if (!first) std::cout << ", ";
            std::cout << p;
            first = false;
        }
        if (!rows[i].complete) {
            Int rest = rows[i].primitive_part;
            for (const Int& p : rows[i].primes)
                while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) rest /= p;
            std::cout << (first ? "" : ", ") << "composite cofactor with "
                      << mpz_sizeinbase(rest.get_mpz_t(), 10) << " digits";
        }
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Arithmetic dynamics of Newton's method over Q: exceptional roots, "
                 "p-adic convergence, and prime-density experiments"};
    app.require_subcommand(1);

    std::string poly_text, x0_text, gamma_text, modulus_text, policy_name = "excluded";
    std::string out_path;
    std::uint64_t prime = 0, Xmax = 0, step = 20000;
    int threads = 0, n_steps = 10;
    bool crossings = false;

    auto* analyze = app.add_subcommand("analyze", "Newton map and exceptional-root report");
    analyze->add_option("polynomial", poly_text, "polynomial in t")->required();
    analyze->add_option("--modulus", modulus_text,
                        "minimal polynomial for algebraic-root analysis in Q[t]/(m)");

    auto* classify = app.add_subcommand("classify", "orbit behavior at a single prime");
    classify->add_option("polynomial", poly_text)->required();
    classify->add_option("--x0", x0_text, "starting rational")->required();
    classify->add_option("--prime", prime, "prime p")->required();

    auto* density = app.add_subcommand("density", "convergence density over primes <= X");
    density->add_option("polynomial", poly_text)->required();
    density->add_option("--x0", x0_text, "comma-separated starting rationals")->required();
    density->add_option("--Xmax", Xmax, "largest bound")->default_val(200000);
    density->add_option("--step", step, "grid step")->default_val(20000);
    density->add_option("--count-bad-as", policy_name, "converged|diverged|excluded");
    density->add_option("--threads", threads, "worker threads (0 = auto)");
    density->add_option("--out", out_path, "CSV output path");

    auto* race = app.add_subcommand("race", "two-root race delta+ / delta-");
    race->add_option("polynomial", poly_text)->required();
    race->add_option("--x0", x0_text, "comma-separated starting rationals")->required();
    race->add_option("--Xmax", Xmax, "largest bound")->default_val(100000);
    race->add_option("--step", step, "grid step")->default_val(20000);
    race->add_option("--count-bad-as", policy_name, "converged|diverged|excluded");
    race->add_option("--threads", threads, "worker threads (0 = auto)");
    race->add_option("--out", out_path, "CSV output path");
    race->add_flag("--crossings", crossings, "scan for lead changes");

    auto* periods = app.add_subcommand("periods", "eventual-period histogram");
    periods->add_option("polynomial", poly_text)->required();
    periods->add_option("--x0", x0_text)->required();
    periods->add_option("--Xmax", Xmax)->default_val(20000);
    periods->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* orbit = app.add_subcommand("orbit", "exact Newton orbit");
    orbit->add_option("polynomial", poly_text)->required();
    orbit->add_option("--x0", x0_text)->required();
    orbit->add_option("--n", n_steps, "iterations")->default_val(10);

    auto* factors = app.add_subcommand("factors", "primitive prime factors of x_n - gamma");
    factors->add_option("polynomial", poly_text)->required();
    factors->add_option("--x0", x0_text)->required();
    factors->add_option("--gamma", gamma_text, "target rational")->required();
    factors->add_option("--n", n_steps, "orbit depth")->default_val(8);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(poly_text, modulus_text);
        if (app.got_subcommand(classify)) return cmd_classify(poly_text, x0_text, prime);
        if (app.got_subcommand(density))
            return cmd_density(poly_text, x0_text, Xmax, step, policy_name, threads,
                               out_path);
        if (app.got_subcommand(race))
            return cmd_race(poly_text, x0_text, Xmax, step, policy_name, threads, out_path,
                            crossings);
        if (app.got_subcommand(periods)) return cmd_periods(poly_text, x0_text, Xmax, threads);
        if (app.got_subcommand(orbit)) return cmd_orbit(poly_text, x0_text, n_steps);
        if (app.got_subcommand(factors))
            return cmd_factors(poly_text, x0_text, gamma_text, n_steps);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace newton
