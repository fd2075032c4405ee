#pragma once

#include <cstdint>
#include <vector>

namespace newton {

// All primes <= x, ascending. sieve_primes(10) == {2, 3, 5, 7}.
std::vector<std::uint64_t> sieve_primes(std::uint64_t x);

} // namespace newton
