#include "newton/int_factor.hpp"

#include <algorithm>
#include <map>

namespace newton {

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

namespace {

// Pollard rho (Brent variant); returns a nontrivial factor or 0 on failure.
Int rho_factor(const Int& n, unsigned long iterations, unsigned long seed) {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    Int c = rng.get_z_range(n - 3) + 1;
    Int y = rng.get_z_range(n - 2) + 1;
    Int x = y, q = 1, g = 1, ys = y;
    const unsigned long m = 128;
    unsigned long r = 1;
    unsigned long spent = 0;
    while (g == 1 && spent < iterations) {
        x = y;
        for (unsigned long i = 0; i < r && spent < iterations; ++i, ++spent)
            y = (y * y + c) % n;
        for (unsigned long k = 0; k < r && g == 1 && spent < iterations; k += m) {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim && spent < iterations; ++i, ++spent) {
                y = (y * y + c) % n;
                q = q * abs(x - y) % n;
            }
            g = gcd(q, n);
        }
        r *= 2;
    }
    if (g == n) {
        // backtrack one step at a time
        do {
            ys = (ys * ys + c) % n;
            g = gcd(Int(abs(x - ys)), n);
        } while (g == 1);
    }
    if (g > 1 && g < n)
        return g;
    return 0;
}

void factor_rec(const Int& n, const FactorBudget& budget, std::map<Int, int>& primes,
                Int& cofactor, int depth) {
    if (n == 1)
        return;
    if (is_probable_prime(n)) {
        ++primes[n];
        return;
    }
    if (depth > 64 || mpz_sizeinbase(n.get_mpz_t(), 10) > budget.rho_digit_limit) {
        cofactor *= n;
        return;
    }
    Int g = 0;
    for (int attempt = 0; attempt < budget.rho_attempts && g == 0; ++attempt)
        g = rho_factor(n, budget.rho_iterations,
                       0x9e3779b97f4a7c15ull + 977u * static_cast<unsigned long>(attempt) +
                           static_cast<unsigned long>(depth));
    if (g == 0) {
        cofactor *= n;
        return;
    }
    factor_rec(g, budget, primes, cofactor, depth + 1);
    factor_rec(Int(n / g), budget, primes, cofactor, depth + 1);
}

} // namespace

Factorization factor_integer(const Int& n, const FactorBudget& budget) {
    if (n < 1)
        throw std::invalid_argument("factor_integer requires n >= 1");
    Factorization out;
    if (n == 1)
        return out;
    std::map<Int, int> primes;
    Int rest = n;
    for (unsigned long d = 2; d <= budget.trial_bound; d += (d == 2) ? 1 : 2) {
        if (Int(d) * d > rest)
            break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
            ++primes[Int(d)];
            rest /= d;
        }
    }
    Int cofactor = 1;
    factor_rec(rest, budget, primes, cofactor, 0);
    out.primes.assign(primes.begin(), primes.end());
    out.cofactor = cofactor;
    return out;
}

Factorization factor_integer_complete(const Int& n, const FactorBudget& budget) {
    Factorization f = factor_integer(n, budget);
    if (!f.complete())
        throw std::domain_error("factor_integer_complete: budget exhausted at cofactor " +
                                f.cofactor.get_str());
    return f;
}

std::vector<Int> divisors_of(const Factorization& f, std::size_t cap) {
    if (!f.complete())
        throw std::domain_error("divisors_of requires a complete factorization");
    std::vector<Int> divs{1};
    for (const auto& [p, e] : f.primes) {
        std::size_t base = divs.size();
        if (base * static_cast<std::size_t>(e + 1) > cap)
            throw std::domain_error("divisors_of: divisor count exceeds cap");
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace newton
