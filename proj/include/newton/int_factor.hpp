#pragma once

#include "newton/rational.hpp"

#include <utility>
#include <vector>

namespace newton {

struct FactorBudget {
    unsigned long trial_bound = 100000;    // trial division up to this
    unsigned long rho_iterations = 500000; // per Pollard-rho attempt
    int rho_attempts = 32;
    // Composites with more decimal digits than this go straight to the
    // cofactor; rho cannot realistically split them within the budget anyway.
    std::size_t rho_digit_limit = 48;
};

// primes ascending with multiplicities; cofactor == 1 when the
// factorization is complete, otherwise a composite remainder whose prime
// factors all exceed the trial bound.
struct Factorization {
    std::vector<std::pair<Int, int>> primes;
    Int cofactor = 1;
    bool complete() const { return cofactor == 1; }
};

bool is_probable_prime(const Int& n);

// Factor n >= 1 within the budget; never throws on hard composites (they
// end up in the cofactor).
Factorization factor_integer(const Int& n, const FactorBudget& budget = {});

// As factor_integer but throws std::domain_error if the budget is exhausted
// before the factorization completes.
Factorization factor_integer_complete(const Int& n, const FactorBudget& budget = {});

// All positive divisors of a completely factored integer, ascending.
// Throws std::domain_error if the factorization is incomplete or the
// divisor count exceeds `cap`.
std::vector<Int> divisors_of(const Factorization& f, std::size_t cap = 1u << 20);

} // namespace newton
