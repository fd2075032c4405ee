#include "newton/sieve.hpp"

namespace newton {

std::vector<std::uint64_t> sieve_primes(std::uint64_t x) {
    if (x < 2)
        return {};
    std::vector<bool> composite(x + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= x; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        if (i <= x / i)
            for (std::uint64_t j = i * i; j <= x; j += i)
                composite[j] = true;
    }
    return primes;
}

} // namespace newton
