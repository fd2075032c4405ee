#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace newton {

using Int = mpz_class;
using Rat = mpq_class;

// p-adic valuation ord_p(n); n must be nonzero, p >= 2.
long ord_p(const Int& n, const Int& p);

// ord_p extended to nonzero rationals: ord(num) - ord(den).
long ord_p(const Rat& x, const Int& p);

// 10^k as an integer, k >= 0.
Int pow10_int(unsigned long k);

// Renders |value| to `sig` significant digits, round half up (half away
// from zero for negatives), plain decimal notation without exponents.
// decimal_sig(2750/1131, 4) == "2.431", decimal_sig(1/2, 4) == "0.5000".
std::string decimal_sig(const Rat& value, int sig);

// x mod p for a p-integral rational (p must not divide den(x)); p odd or 2, prime.
std::uint64_t mod_p(const Rat& x, std::uint64_t p);

} // namespace newton
