#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cdm {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using i128 = __int128_t;
using u128 = __uint128_t;

// Thrown when a requested table would exceed the configured memory cap.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Default cap on sieve/table entries (u32 each).  Overridable per call.
inline constexpr u64 kDefaultEntryCap = 200'000'000;

u64 isqrt_u64(u64 n);

// floor with a few-ulp snap toward the nearest integer, so that arguments
// meant to be integral (products of parsed decimals) land on the integer.
inline double guarded_floor(double t) {
    double r = __builtin_nearbyint(t);
    double tol = 4.0 * std::numeric_limits<double>::epsilon() *
                 (t < 0 ? -t : t > 1.0 ? t : 1.0);
    double d = t - r;
    if (d < 0) d = -d;
    if (d <= tol) return r;
    return __builtin_floor(t);
}

// Smallest-prime-factor table for 2..limit.  spf[p] = p for prime p.
struct SpfTable {
    u64 limit = 0;
    std::vector<u32> spf;  // index 0..limit; entries 0 and 1 unused

    u32 operator[](u64 n) const { return spf[n]; }
};

// O(limit log log limit).  limit >= 2; practical ceiling ~1e8 entries.
SpfTable build_spf_table(u64 limit, u64 entry_cap = kDefaultEntryCap);

// n = kernel * multiplier^2 with kernel squarefree; the decomposition is unique.
struct KernelDecomposition {
    u64 n = 1;
    u64 kernel = 1;
    u64 multiplier = 1;
};

KernelDecomposition kernel_decompose(u64 n, const SpfTable& table);

// psi(t) = t - [t] - 1/2, in [-1/2, 1/2); psi(n) = -1/2 at integers.
double sawtooth(double t);

// ||t|| = distance to the nearest integer, in [0, 1/2].
double nearest_integer_distance(double t);

}  // namespace cdm
