#include "cdm/arith.hpp"

#include <cmath>

namespace cdm {

u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

SpfTable build_spf_table(u64 limit, u64 entry_cap) {
    if (limit < 2) throw std::invalid_argument("spf table needs limit >= 2");
    if (limit + 1 > entry_cap)
        throw ResourceLimit("spf table of " + std::to_string(limit) +
                            " entries exceeds the cap");
    SpfTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (t.spf[i] != 0) continue;
        for (u64 j = i; j <= limit; j += i)
            if (t.spf[j] == 0) t.spf[j] = static_cast<u32>(i);
    }
    return t;
}

KernelDecomposition kernel_decompose(u64 n, const SpfTable& table) {
    if (n == 0) throw std::invalid_argument("kernel_decompose: n must be positive");
    KernelDecomposition d;
    d.n = n;
    if (n == 1) return d;
    if (n > table.limit)
        throw std::out_of_range("kernel_decompose: n exceeds the spf table limit");
    u64 q = 1, m = 1;
    while (n > 1) {
        u64 p = table.spf[n];
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        for (unsigned i = 0; i + 1 < e; i += 2) m *= p;
        if (e & 1u) q *= p;
    }
    d.kernel = q;
    d.multiplier = m;
    return d;
}

double sawtooth(double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("sawtooth: non-finite input");
    return t - std::floor(t) - 0.5;
}

double nearest_integer_distance(double t) {
    if (!std::isfinite(t))
        throw std::invalid_argument("nearest_integer_distance: non-finite input");
    double f = t - std::floor(t);
    return f <= 0.5 ? f : 1.0 - f;
}

}  // namespace cdm
