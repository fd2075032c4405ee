#include "newton/rational.hpp"

namespace newton {

long ord_p(const Int& n, const Int& p) {
    if (n == 0)
        throw std::invalid_argument("ord_p of zero is undefined");
    if (p < 2)
        throw std::invalid_argument("ord_p requires p >= 2");
    Int rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long ord_p(const Rat& x, const Int& p) {
    if (x == 0)
        throw std::invalid_argument("ord_p of zero is undefined");
    return ord_p(Int(x.get_num()), p) - ord_p(Int(x.get_den()), p);
}

Int pow10_int(unsigned long k) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return r;
}

std::string decimal_sig(const Rat& value, int sig) {
    if (sig < 1)
        throw std::invalid_argument("decimal_sig requires sig >= 1");
    if (value == 0)
        return "0";
    const bool neg = value < 0;
    Int n = abs(Int(value.get_num()));
    Int d = value.get_den();

    // Locate e with 10^e <= n/d < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 10));
    auto at_least_pow = [&](long k) {
        Int lhs = n, rhs = d;
        if (k >= 0)
            rhs *= pow10_int(static_cast<unsigned long>(k));
        else
            lhs *= pow10_int(static_cast<unsigned long>(-k));
        return lhs >= rhs;
    };
    while (!at_least_pow(e))
        --e;
    while (at_least_pow(e + 1))
        ++e;

    // s = round-half-up(v * 10^(sig-1-e)), an integer with exactly sig digits.
    long k = sig - 1 - e;
    Int num = n, den = d;
    if (k >= 0)
        num *= pow10_int(static_cast<unsigned long>(k));
    else
        den *= pow10_int(static_cast<unsigned long>(-k));
    Int s = (2 * num + den) / (2 * den);
    if (s == pow10_int(static_cast<unsigned long>(sig))) {
        s = pow10_int(static_cast<unsigned long>(sig - 1));
        ++e;
    }

    std::string digits = s.get_str();
    std::string out;
    if (e >= sig - 1)
        out = digits + std::string(static_cast<size_t>(e - sig + 1), '0');
    else if (e >= 0)
        out = digits.substr(0, static_cast<size_t>(e + 1)) + "." +
              digits.substr(static_cast<size_t>(e + 1));
    else
        out = "0." + std::string(static_cast<size_t>(-e - 1), '0') + digits;
    return neg ? "-" + out : out;
}

std::uint64_t mod_p(const Rat& x, std::uint64_t p) {
    Int num(x.get_num()), den(x.get_den());
    std::uint64_t a = mpz_fdiv_ui(num.get_mpz_t(), p);
    std::uint64_t b = mpz_fdiv_ui(den.get_mpz_t(), p);
    if (b == 0)
        throw std::invalid_argument("mod_p: p divides the denominator");
    if (b == 1)
        return a;
    // b^(p-2) mod p via binary powering (p prime).
    unsigned __int128 acc = 1, base = b;
    std::uint64_t exp = p - 2;
    while (exp) {
        if (exp & 1)
            acc = acc * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * acc % p);
}

} // namespace newton
