#include "newton/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace newton {

namespace fp {

u64 pow(u64 base, u64 exp, u64 p) {
    u64 r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = mul(r, base, p);
        base = mul(base, base, p);
        exp >>= 1;
    }
    return r;
}

} // namespace fp

std::vector<std::uint64_t> reduce_poly_mod_p(const std::vector<Int>& c, std::uint64_t p) {
    std::vector<std::uint64_t> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = mpz_fdiv_ui(c[i].get_mpz_t(), p);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::uint64_t eval_poly_mod_p(const std::vector<std::uint64_t>& c, std::uint64_t x,
                              std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = fp::add(fp::mul(acc, x, p), c[i] % p, p);
    return acc;
}

namespace {

void trim(std::vector<std::uint64_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b over F_p, in place on a.
void rem_mod_p(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
               std::uint64_t p) {
    const std::uint64_t lead_inv = fp::inv(b.back(), p);
    while (a.size() >= b.size()) {
        std::uint64_t q = fp::mul(a.back(), lead_inv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = fp::sub(a[shift + i], fp::mul(q, b[i], p), p);
        trim(a);
        if (a.empty()) break;
    }
}

} // namespace

int gcd_degree_mod_p(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                     std::uint64_t p) {
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) throw std::invalid_argument("gcd_degree_mod_p: zero polynomial");
    while (!b.empty()) {
        rem_mod_p(a, b, p);
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

std::optional<ReducedMap> ReducedMap::reduce(const std::vector<Int>& num,
                                             const std::vector<Int>& den, std::uint64_t p) {
    ReducedMap m;
    m.p_ = p;
    m.num_ = reduce_poly_mod_p(num, p);
    m.den_ = reduce_poly_mod_p(den, p);
    // Good reduction: leading coefficients survive and the reductions stay coprime.
    if (m.num_.size() != num.size() || m.den_.size() != den.size()) return std::nullopt;
    if (m.num_.empty() || m.den_.empty()) return std::nullopt;
    if (gcd_degree_mod_p(m.num_, m.den_, p) != 0) return std::nullopt;
    m.deg_num_ = static_cast<int>(m.num_.size()) - 1;
    m.deg_den_ = static_cast<int>(m.den_.size()) - 1;
    m.lead_num_ = m.num_.back();
    m.lead_den_ = m.den_.back();
    return m;
}

ProjPoint ReducedMap::operator()(const ProjPoint& x) const {
    if (x.infinite) {
        // Homogenize at the common degree: the image of infinity is
        // lc(num)/lc(den) when deg num > deg den, infinity when deg num
        // exceeds, and 0 never occurs since gcd(num, den) = 1 fails first.
        if (deg_num_ > deg_den_) return ProjPoint::infinity();
        if (deg_num_ < deg_den_) return ProjPoint::finite(0);
        return ProjPoint::finite(fp::mul(lead_num_, fp::inv(lead_den_, p_), p_));
    }
    std::uint64_t n = eval_poly_mod_p(num_, x.value, p_);
    std::uint64_t d = eval_poly_mod_p(den_, x.value, p_);
    if (d == 0) return ProjPoint::infinity(); // coprimality guarantees n != 0 here
    return ProjPoint::finite(fp::mul(n, fp::inv(d, p_), p_));
}

CycleInfo find_cycle(const ReducedMap& map, const ProjPoint& start) {
    // Brent's algorithm: find the period first, then the tail length.
    std::uint64_t power = 1, period = 1;
    ProjPoint tortoise = start;
    ProjPoint hare = map(start);
    while (!(tortoise == hare)) {
        if (power == period) {
            tortoise = hare;
            power *= 2;
            period = 0;
        }
        hare = map(hare);
        ++period;
    }
    tortoise = start;
    hare = start;
    for (std::uint64_t i = 0; i < period; ++i) hare = map(hare);
    std::uint64_t tail = 0;
    while (!(tortoise == hare)) {
        tortoise = map(tortoise);
        hare = map(hare);
        ++tail;
    }
    return {tail, period, tortoise};
}

} // namespace newton
