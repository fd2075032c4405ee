#pragma once

#include "newton/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace newton {

// Arithmetic mod a prime p < 2^62; products go through 128-bit intermediates.
namespace fp {

using u64 = std::uint64_t;

inline u64 add(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mul(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}
u64 pow(u64 base, u64 exp, u64 p);
inline u64 inv(u64 a, u64 p) { return pow(a, p - 2, p); }

} // namespace fp

// Point of P^1(F_p): a finite residue or the point at infinity.
struct ProjPoint {
    std::uint64_t value = 0;
    bool infinite = false;

    static ProjPoint finite(std::uint64_t v) { return {v, false}; }
    static ProjPoint infinity() { return {0, true}; }
    bool operator==(const ProjPoint& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

// Integer polynomial reduced mod p, ascending, trailing zeros trimmed.
std::vector<std::uint64_t> reduce_poly_mod_p(const std::vector<Int>& c, std::uint64_t p);

std::uint64_t eval_poly_mod_p(const std::vector<std::uint64_t>& c, std::uint64_t x,
                              std::uint64_t p);

// Degree of gcd of two nonzero polynomials over F_p.
int gcd_degree_mod_p(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                     std::uint64_t p);

// A rational map with good reduction mod p: both degrees preserved and no
// common root. reduce() returns nullopt when reduction fails either test.
class ReducedMap {
public:
    static std::optional<ReducedMap> reduce(const std::vector<Int>& num,
                                            const std::vector<Int>& den, std::uint64_t p);

    ProjPoint operator()(const ProjPoint& x) const;
    std::uint64_t prime() const { return p_; }

private:
    std::vector<std::uint64_t> num_, den_;
    std::uint64_t p_ = 0;
    std::uint64_t lead_num_ = 0, lead_den_ = 0;
    int deg_num_ = 0, deg_den_ = 0;
};

// Brent cycle detection on the orbit of start: minimal tail and period.
struct CycleInfo {
    std::uint64_t tail = 0;
    std::uint64_t period = 0;
    ProjPoint entry; // first point on the cycle
};
CycleInfo find_cycle(const ReducedMap& map, const ProjPoint& start);

} // namespace newton
