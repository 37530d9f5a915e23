#include "cdm/constants.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cdm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kTailKappa = 10.0;

// e(j/D) for j = 0..D-1
std::vector<std::complex<double>> phasor_table(i64 D) {
    std::vector<std::complex<double>> t(D);
    for (i64 j = 0; j < D; ++j) {
        long double a = kTwoPi * (long double)j / (long double)D;
        t[j] = {static_cast<double>(cosl(a)), static_cast<double>(sinl(a))};
    }
    return t;
}

// phase numerator of h*l2/M2 + r*l1/M1 + 1/8 over denominator D = 8*M1*M2
inline i64 phase_numerator(const CongruenceSpec& s, i64 h, i64 r, i64 D) {
    i64 num = (8 * (h * s.l2 * s.m1 + r * s.l1 * s.m2) + s.m1 * s.m2) % D;
    return num;
}

void weights_block(const CongruenceSpec& s, u64 lo, u64 hi,
                   const std::vector<std::complex<double>>& ph, i64 D,
                   std::vector<std::complex<double>>& w) {
    for (u64 h = 1; h <= hi; ++h) {
        u64 r = (lo + h - 1) / h;
        if (r < 1) r = 1;
        for (; h * r <= hi; ++r)
            w[h * r] += ph[phase_numerator(s, static_cast<i64>(h),
                                           static_cast<i64>(r), D)];
    }
}

void check_y(u64 y, u64 entry_cap) {
    if (y < 1) throw std::invalid_argument("weight table: y must be >= 1");
    if (y + 1 > entry_cap)
        throw ResourceLimit("weight table of " + std::to_string(y) +
                            " entries exceeds the cap");
}

}  // namespace

TwistedWeightTable build_twisted_weights(const CongruenceSpec& spec, u64 y,
                                         u64 entry_cap) {
    spec.validate();
    check_y(y, entry_cap);
    TwistedWeightTable t;
    t.spec = spec;
    t.y = y;
    t.w.assign(y + 1, {0.0, 0.0});
    const i64 D = 8 * spec.m1 * spec.m2;
    const auto ph = phasor_table(D);

    const u64 block = 1u << 15;
    const i64 nblocks = static_cast<i64>((y + block - 1) / block);
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 b = 0; b < nblocks; ++b) {
        u64 lo = static_cast<u64>(b) * block + 1;
        u64 hi = std::min(y, lo + block - 1);
        weights_block(spec, lo, hi, ph, D, t.w);
    }
    return t;
}

TwistedWeightTable build_twisted_weights_serial(const CongruenceSpec& spec, u64 y,
                                                u64 entry_cap) {
    spec.validate();
    check_y(y, entry_cap);
    TwistedWeightTable t;
    t.spec = spec;
    t.y = y;
    t.w.assign(y + 1, {0.0, 0.0});
    const i64 D = 8 * spec.m1 * spec.m2;
    const auto ph = phasor_table(D);
    for (u64 h = 1; h <= y; ++h)
        for (u64 r = 1; h * r <= y; ++r)
            t.w[h * r] += ph[phase_numerator(spec, static_cast<i64>(h),
                                             static_cast<i64>(r), D)];
    return t;
}

namespace {

using cplx = std::complex<long double>;

// per-kernel weighted multiplier vector a[m] = w(q m^2)/m^{3/2}
std::vector<cplx> kernel_vector(const TwistedWeightTable& w, const KernelIndex::Group& g) {
    u32 mmax = g.multipliers.back();
    std::vector<cplx> a(mmax + 1, cplx{0.0L, 0.0L});
    for (u32 m : g.multipliers) {
        u64 n = g.kernel * u64(m) * m;
        a[m] = cplx(w.w[n].real(), w.w[n].imag()) /
               powl(static_cast<long double>(m), 1.5L);
    }
    return a;
}

// ordered-pair convolution P(s) = sum_{m1+m2=s} a(m1) a(m2)
std::vector<cplx> pair_convolution(const std::vector<cplx>& a) {
    std::size_t M = a.size() - 1;
    std::vector<cplx> P(2 * M + 1, cplx{0.0L, 0.0L});
    for (std::size_t i = 1; i <= M; ++i)
        for (std::size_t j = 1; j <= M; ++j) P[i + j] += a[i] * a[j];
    return P;
}

long double kernel_contribution_v2(const TwistedWeightTable& w,
                                   const KernelIndex::Group& g) {
    auto a = kernel_vector(w, g);
    auto P = pair_convolution(a);
    long double acc = 0.0L;
    for (const cplx& p : P) acc += p.real() * p.real() + p.imag() * p.imag();
    long double q = static_cast<long double>(g.kernel);
    return acc / (q * q * q);
}

long double kernel_contribution_v13(const TwistedWeightTable& w,
                                    const KernelIndex::Group& g, int v) {
    auto a = kernel_vector(w, g);
    std::size_t M = a.size() - 1;
    auto P = pair_convolution(a);
    long double acc = 0.0L;
    // C3(s) = sum_{m1+m2+m3=s} a a a, needed only for s <= M
    for (std::size_t s = 3; s <= M; ++s) {
        cplx c3{0.0L, 0.0L};
        for (std::size_t m3 = 1; m3 + 2 <= s; ++m3) c3 += P[s - m3] * a[m3];
        // v=1: triple carries w, singleton conj(w); v=3 is the mirror image.
        // Re[conj(a_s) C3] == Re[a_s conj(C3)], so both v share the value.
        (void)v;
        acc += a[s].real() * c3.real() + a[s].imag() * c3.imag();
    }
    long double q = static_cast<long double>(g.kernel);
    return acc / (q * q * q);
}

}  // namespace

SeriesValue s4v_truncated(const TwistedWeightTable& weights, int v,
                          const KernelIndex& index) {
    if (v < 1 || v > 3) throw std::invalid_argument("s4v: v must be in {1,2,3}");
    if (index.y != weights.y)
        throw std::invalid_argument("s4v: kernel index and weight table disagree on y");

    const i64 ng = static_cast<i64>(index.groups.size());
    std::vector<long double> contrib(ng, 0.0L);

    if (v == 2) {
        std::vector<long double> Sq(ng, 0.0L);
#pragma omp parallel for schedule(dynamic, 8)
        for (i64 i = 0; i < ng; ++i) {
            contrib[i] = kernel_contribution_v2(weights, index.groups[i]);
            long double sq = 0.0L;
            for (u32 m : index.groups[i].multipliers) {
                u64 n = index.groups[i].kernel * u64(m) * m;
                long double w2 = (long double)weights.w[n].real() * weights.w[n].real() +
                                 (long double)weights.w[n].imag() * weights.w[n].imag();
                sq += w2 / powl(static_cast<long double>(n), 1.5L);
            }
            Sq[i] = sq;
        }
        long double total = 0.0L, S = 0.0L, Sq2 = 0.0L;
        for (i64 i = 0; i < ng; ++i) {
            total += contrib[i];
            S += Sq[i];
            Sq2 += Sq[i] * Sq[i];
        }
        total += 2.0L * (S * S - Sq2);
        return {2, weights.y, static_cast<double>(total),
                kTailKappa / std::sqrt(static_cast<double>(weights.y))};
    }

#pragma omp parallel for schedule(dynamic, 8)
    for (i64 i = 0; i < ng; ++i)
        contrib[i] = kernel_contribution_v13(weights, index.groups[i], v);
    long double total = 0.0L;
    for (i64 i = 0; i < ng; ++i) total += contrib[i];
    return {v, weights.y, static_cast<double>(total),
            kTailKappa / std::sqrt(static_cast<double>(weights.y))};
}

C4Result c4_estimate(const CongruenceSpec& spec, u64 y, u64 entry_cap) {
    if (y < 10) throw std::invalid_argument("c4_estimate: y must be >= 10");
    SpfTable spf = build_spf_table(y, entry_cap);
    KernelIndex index = build_kernel_index(y, spf);
    TwistedWeightTable w = build_twisted_weights(spec, y, entry_cap);
    SeriesValue s1 = s4v_truncated(w, 1, index);
    SeriesValue s2 = s4v_truncated(w, 2, index);
    SeriesValue s3 = s4v_truncated(w, 3, index);
    C4Result r;
    r.s41 = s1.value;
    r.s42 = s2.value;
    r.s43 = s3.value;
    r.c4 = 3 * s1.value + 3 * s2.value + s3.value;
    r.tail = 3 * s1.tail_estimate + 3 * s2.tail_estimate + s3.tail_estimate;
    return r;
}

namespace {

struct FactorPair {
    i64 phase_num;  // numerator over D
};

std::vector<std::vector<FactorPair>> factor_phase_lists(const CongruenceSpec& s, u64 y) {
    const i64 D = 8 * s.m1 * s.m2;
    std::vector<std::vector<FactorPair>> f(y + 1);
    for (u64 h = 1; h <= y; ++h)
        for (u64 r = 1; h * r <= y; ++r)
            f[h * r].push_back({phase_numerator(s, static_cast<i64>(h),
                                                static_cast<i64>(r), D)});
    return f;
}

}  // namespace

double s4v_bruteforce_pattern(const CongruenceSpec& spec, const int ivec[3], u64 y) {
    spec.validate();
    if (y > 50) throw std::invalid_argument("s4v_bruteforce: y capped at 50");
    if (y < 1) throw std::invalid_argument("s4v_bruteforce: y must be >= 1");
    const int sign[4] = {1, ivec[0] ? -1 : 1, ivec[1] ? -1 : 1, ivec[2] ? -1 : 1};

    SpfTable spf = build_spf_table(std::max<u64>(y, 2));
    std::vector<u64> ker(y + 1);
    std::vector<i64> mul(y + 1);
    for (u64 n = 1; n <= y; ++n) {
        auto d = kernel_decompose(n, spf);
        ker[n] = d.kernel;
        mul[n] = static_cast<i64>(d.multiplier);
    }
    auto lists = factor_phase_lists(spec, y);
    const i64 D = 8 * spec.m1 * spec.m2;
    std::vector<double> cos_tab(D);
    for (i64 j = 0; j < D; ++j)
        cos_tab[j] = static_cast<double>(
            cosl(kTwoPi * (long double)j / (long double)D));

    long double total = 0.0L;
    u64 ns[4];
    for (ns[0] = 1; ns[0] <= y; ++ns[0])
        for (ns[1] = 1; ns[1] <= y; ++ns[1])
            for (ns[2] = 1; ns[2] <= y; ++ns[2])
                for (ns[3] = 1; ns[3] <= y; ++ns[3]) {
                    // exact zero test: signed multiplier sums per kernel
                    u64 qs[4];
                    i64 cs[4];
                    int nq = 0;
                    bool zero = true;
                    for (int j = 0; j < 4; ++j) {
                        u64 q = ker[ns[j]];
                        i64 c = sign[j] * mul[ns[j]];
                        int k = 0;
                        while (k < nq && qs[k] != q) ++k;
                        if (k == nq) {
                            qs[nq] = q;
                            cs[nq++] = c;
                        } else {
                            cs[k] += c;
                        }
                    }
                    for (int k = 0; k < nq; ++k)
                        if (cs[k] != 0) zero = false;
                    if (!zero) continue;

                    long double sub = 0.0L;
                    for (const auto& f1 : lists[ns[0]])
                        for (const auto& f2 : lists[ns[1]])
                            for (const auto& f3 : lists[ns[2]])
                                for (const auto& f4 : lists[ns[3]]) {
                                    i64 num = sign[0] * f1.phase_num +
                                              sign[1] * f2.phase_num +
                                              sign[2] * f3.phase_num +
                                              sign[3] * f4.phase_num;
                                    num %= D;
                                    if (num < 0) num += D;
                                    sub += cos_tab[num];
                                }
                    long double denom = powl(
                        (long double)ns[0] * ns[1] * ns[2] * ns[3], 0.75L);
                    total += sub / denom;
                }
    return static_cast<double>(total);
}

double s4v_bruteforce(const CongruenceSpec& spec, int v, u64 y) {
    if (v < 1 || v > 3) throw std::invalid_argument("s4v_bruteforce: v must be in {1,2,3}");
    const int patterns[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
    return s4v_bruteforce_pattern(spec, patterns[v - 1], y);
}

}  // namespace cdm
