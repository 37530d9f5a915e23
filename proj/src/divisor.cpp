#include "cdm/divisor.hpp"

#include <cmath>

#include "cdm/special.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cdm {

namespace {

void check_limit(u64 limit, u64 entry_cap) {
    if (limit < 1) throw std::invalid_argument("divisor sieve: limit must be >= 1");
    if (limit + 1 > entry_cap)
        throw ResourceLimit("divisor table of " + std::to_string(limit) +
                            " entries exceeds the cap of " + std::to_string(entry_cap));
}

// increments counts[n1*n2] for all admissible pairs with lo <= n1*n2 <= hi
void sieve_block(const CongruenceSpec& s, u64 lo, u64 hi, std::vector<u32>& counts) {
    const u64 l1 = s.l1, m1 = s.m1, l2 = s.l2, m2 = s.m2;
    for (u64 n1 = l1; n1 * l2 <= hi; n1 += m1) {
        u64 n2min = (lo + n1 - 1) / n1;
        u64 n2 = l2;
        if (n2min > l2) n2 = l2 + ((n2min - l2 + m2 - 1) / m2) * m2;
        for (u64 prod = n1 * n2; prod <= hi; n2 += m2, prod = n1 * n2)
            counts[prod]++;
    }
}

}  // namespace

DivisorTable sieve_divisor_table(const CongruenceSpec& spec, u64 limit, u64 entry_cap) {
    spec.validate();
    check_limit(limit, entry_cap);
    DivisorTable t;
    t.spec = spec;
    t.limit = limit;
    t.counts.assign(limit + 1, 0);

    // Disjoint target blocks: no write contention, and the counts are exact
    // integers, so the result is identical for any thread count.
    const u64 block = 1u << 16;
    const i64 nblocks = static_cast<i64>((limit + block - 1) / block);
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 b = 0; b < nblocks; ++b) {
        u64 lo = static_cast<u64>(b) * block + 1;
        u64 hi = std::min(limit, lo + block - 1);
        sieve_block(spec, lo, hi, t.counts);
    }
    return t;
}

DivisorTable sieve_divisor_table_serial(const CongruenceSpec& spec, u64 limit,
                                        u64 entry_cap) {
    spec.validate();
    check_limit(limit, entry_cap);
    DivisorTable t;
    t.spec = spec;
    t.limit = limit;
    t.counts.assign(limit + 1, 0);
    for (u64 n1 = spec.l1; n1 * spec.l2 <= limit; n1 += spec.m1)
        for (u64 n2 = spec.l2; n1 * n2 <= limit; n2 += spec.m2)
            t.counts[n1 * n2]++;
    return t;
}

std::vector<u64> prefix_counts(const DivisorTable& table) {
    std::vector<u64> p(table.limit + 1, 0);
    u64 acc = 0;
    for (u64 n = 1; n <= table.limit; ++n) {
        acc += table.counts[n];
        p[n] = acc;
    }
    return p;
}

u64 summatory_hyperbola_exact(const CongruenceSpec& spec, u64 X) {
    if (X < 1) throw std::invalid_argument("summatory_hyperbola: X must be >= 1");
    const u64 l1 = spec.l1, m1 = spec.m1, l2 = spec.l2, m2 = spec.m2;
    const u64 R = isqrt_u64(X);

    // #\{n <= X/n1, n = l (mod m)\} = floor((X - l*n1)/(m*n1)) + 1 when X >= l*n1
    u64 s1 = 0;
    for (u64 n1 = l1; n1 <= R; n1 += m1)
        if (X >= l2 * n1) s1 += (X - l2 * n1) / (m2 * n1) + 1;
    u64 s2 = 0;
    for (u64 n2 = l2; n2 <= R; n2 += m2)
        if (X >= l1 * n2) s2 += (X - l1 * n2) / (m1 * n2) + 1;

    u64 c1 = (R >= l1) ? (R - l1) / m1 + 1 : 0;
    u64 c2 = (R >= l2) ? (R - l2) / m2 + 1 : 0;
    return s1 + s2 - c1 * c2;
}

u64 summatory_hyperbola(const CongruenceSpec& spec, double X) {
    if (!(X >= 1)) throw std::invalid_argument("summatory_hyperbola: X must be >= 1");
    return summatory_hyperbola_exact(spec, static_cast<u64>(guarded_floor(X)));
}

double main_term(const CongruenceSpec& spec, double x) {
    if (!(x >= 1)) throw std::invalid_argument("main_term: x must be >= 1");
    double g1 = hurwitz_laurent_constant(spec.lambda1());
    double g2 = hurwitz_laurent_constant(spec.lambda2());
    return x * (std::log(x) - 1.0 + g1 + g2) +
           (0.5 - spec.lambda1()) * (0.5 - spec.lambda2());
}

double delta(const CongruenceSpec& spec, double x) {
    if (!(x >= 1)) throw std::invalid_argument("delta: x must be >= 1");
    double scaled = static_cast<double>(spec.modulus_product()) * x;
    if (scaled >= 9.0e15)
        throw ResourceLimit("delta: M1*M2*x too large for exact counting");
    u64 X = static_cast<u64>(guarded_floor(scaled));
    return static_cast<double>(summatory_hyperbola_exact(spec, X)) - main_term(spec, x);
}

double eval_F12(const CongruenceSpec& spec, double x) {
    if (!(x >= 1)) throw std::invalid_argument("eval_F12: x must be >= 1");
    const double P = static_cast<double>(spec.modulus_product());
    const u64 nmax = static_cast<u64>(guarded_floor(std::sqrt(P * x)));
    const double shift = spec.lambda2();
    const double m1x = static_cast<double>(spec.m1) * x;
    long double acc = 0.0L;
    for (u64 n1 = spec.l1; n1 <= nmax; n1 += spec.m1)
        acc += sawtooth(m1x / static_cast<double>(n1) - shift);
    return -static_cast<double>(acc);
}

double eval_F21(const CongruenceSpec& spec, double x) {
    if (!(x >= 1)) throw std::invalid_argument("eval_F21: x must be >= 1");
    const double P = static_cast<double>(spec.modulus_product());
    const u64 nmax = static_cast<u64>(guarded_floor(std::sqrt(P * x)));
    const double shift = spec.lambda1();
    const double m2x = static_cast<double>(spec.m2) * x;
    long double acc = 0.0L;
    for (u64 n2 = spec.l2; n2 <= nmax; n2 += spec.m2)
        acc += sawtooth(m2x / static_cast<double>(n2) - shift);
    return -static_cast<double>(acc);
}

MainTermFit fit_main_term(const CongruenceSpec& spec, u64 x_limit, u64 entry_cap) {
    if (x_limit < 10) throw std::invalid_argument("fit_main_term: x_limit too small");
    const u64 P = static_cast<u64>(spec.modulus_product());
    DivisorTable table = sieve_divisor_table(spec, P * x_limit, entry_cap);

    // Weighted normal equations for y ~ a*x ln x + b*x + c at the jump
    // abscissae x = K/P, with midpoint counts prefix(K) - d(K)/2 and weight
    // x^{-1/2} (the fluctuation scale is ~x^{1/4}).
    long double G[3][3] = {};
    long double rhs[3] = {};
    long double acc = 0.0L;
    for (u64 K = 1; K <= P * x_limit; ++K) {
        acc += table.counts[K];
        if (K < P) continue;  // x >= 1
        long double x = static_cast<long double>(K) / P;
        long double f0 = x * logl(x), f1 = x, f2 = 1.0L;
        long double y = acc - 0.5L * table.counts[K];
        long double w = 1.0L / x;  // weight^2: (x^{-1/2})^2
        long double f[3] = {f0, f1, f2};
        for (int i = 0; i < 3; ++i) {
            rhs[i] += w * f[i] * y;
            for (int j = i; j < 3; ++j) G[i][j] += w * f[i] * f[j];
        }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < i; ++j) G[i][j] = G[j][i];

    // 3x3 Gaussian elimination with partial pivoting
    long double A[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) A[i][j] = G[i][j];
        A[i][3] = rhs[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (fabsl(A[r][col]) > fabsl(A[piv][col])) piv = r;
        for (int j = 0; j < 4; ++j) std::swap(A[col][j], A[piv][j]);
        for (int r = col + 1; r < 3; ++r) {
            long double f = A[r][col] / A[col][col];
            for (int j = col; j < 4; ++j) A[r][j] -= f * A[col][j];
        }
    }
    long double sol[3];
    for (int i = 2; i >= 0; --i) {
        long double v = A[i][3];
        for (int j = i + 1; j < 3; ++j) v -= A[i][j] * sol[j];
        sol[i] = v / A[i][i];
    }

    MainTermFit fit;
    fit.a = static_cast<double>(sol[0]);
    fit.b = static_cast<double>(sol[1]);
    fit.c = static_cast<double>(sol[2]);
    fit.a_true = 1.0;
    fit.b_true = -1.0 + hurwitz_laurent_constant(spec.lambda1()) +
                 hurwitz_laurent_constant(spec.lambda2());
    fit.c_true = (0.5 - spec.lambda1()) * (0.5 - spec.lambda2());
    return fit;
}

}  // namespace cdm
