#include "cdm/voronoi.hpp"

#include <cmath>
#include <random>

#include "cdm/divisor.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cdm {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInvSqrt2Pi = 0.22507907903927651;  // 1/(sqrt(2) pi)
}  // namespace

PsiExpansion psi_finite_expansion(double u, double H) {
    if (!(H >= 2)) throw std::invalid_argument("psi_finite_expansion: H must be >= 2");
    if (!std::isfinite(u)) throw std::invalid_argument("psi_finite_expansion: non-finite u");
    const u64 hmax = static_cast<u64>(H);
    long double acc = 0.0L;
    for (u64 h = 1; h <= hmax; ++h)
        acc += std::sin(kTwoPi * static_cast<double>(h) * u) / static_cast<double>(h);
    PsiExpansion out;
    out.approx = static_cast<double>(-acc / kPi);
    double dist = nearest_integer_distance(u);
    out.error_budget = (dist == 0.0) ? 1.0 : std::min(1.0, 1.0 / (H * dist));
    return out;
}

double tau(const CongruenceSpec& spec, u64 n, double x, PhaseMode mode) {
    spec.validate();
    if (n < 1) throw std::invalid_argument("tau: n must be >= 1");
    if (!(x >= 1)) throw std::invalid_argument("tau: x must be >= 1");
    const double theta = 4.0 * kPi * std::sqrt(static_cast<double>(n) * x);
    const i64 D = 8 * spec.m1 * spec.m2;
    long double acc = 0.0L;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        u64 e = n / d;
        // ordered pairs (d, e) and (e, d); once when d == e
        for (int swap = 0; swap < (d == e ? 1 : 2); ++swap) {
            u64 h = swap ? e : d, r = swap ? d : e;
            if (mode == PhaseMode::exact_rational) {
                i64 num = (8 * (static_cast<i64>(h) * spec.l2 * spec.m1 +
                                static_cast<i64>(r) * spec.l1 * spec.m2) +
                           spec.m1 * spec.m2) %
                          D;
                acc += std::cos(theta - kTwoPi * static_cast<double>(num) /
                                            static_cast<double>(D));
            } else {
                double phase = static_cast<double>(h) * spec.l2 / spec.m2 +
                               static_cast<double>(r) * spec.l1 / spec.m1 + 0.125;
                acc += std::cos(theta - kTwoPi * phase);
            }
        }
    }
    return static_cast<double>(acc);
}

TruncatedVoronoi::TruncatedVoronoi(const VoronoiConfig& cfg, u64 entry_cap)
    : cfg_(cfg) {
    cfg_.spec.validate();
    if (!(cfg_.y >= 0) || !std::isfinite(cfg_.y))
        throw std::invalid_argument("truncated_voronoi: bad y");
    u64 ylim = static_cast<u64>(guarded_floor(cfg_.y));
    if (ylim >= 1)
        weights_ = build_twisted_weights(cfg_.spec, ylim, entry_cap);
    else
        weights_.y = 0;
}

double TruncatedVoronoi::operator()(double x) const {
    if (!(x >= 1)) throw std::invalid_argument("truncated_voronoi: x must be >= 1");
    if (weights_.y < 1) return 0.0;
    long double acc = 0.0L;
    for (u64 n = 1; n <= weights_.y; ++n) {
        double theta = 4.0 * kPi * std::sqrt(static_cast<double>(n) * x);
        // tau(n,x) = Re[e^{i theta} conj(w(n))]
        double t = std::cos(theta) * weights_.w[n].real() +
                   std::sin(theta) * weights_.w[n].imag();
        acc += t / std::pow(static_cast<double>(n), 0.75);
    }
    return std::pow(x, 0.25) * kInvSqrt2Pi * static_cast<double>(acc);
}

std::vector<double> TruncatedVoronoi::evaluate_partial(double x,
                                                       const std::vector<u64>& ys) const {
    if (!(x >= 1)) throw std::invalid_argument("truncated_voronoi: x must be >= 1");
    std::vector<double> out(ys.size(), 0.0);
    long double acc = 0.0L;
    std::size_t next = 0;
    const double scale = std::pow(x, 0.25) * kInvSqrt2Pi;
    for (u64 n = 1; n <= weights_.y && next < ys.size(); ++n) {
        double theta = 4.0 * kPi * std::sqrt(static_cast<double>(n) * x);
        double t = std::cos(theta) * weights_.w[n].real() +
                   std::sin(theta) * weights_.w[n].imag();
        acc += t / std::pow(static_cast<double>(n), 0.75);
        while (next < ys.size() && ys[next] == n) out[next++] = scale * static_cast<double>(acc);
    }
    while (next < ys.size()) out[next++] = scale * static_cast<double>(acc);
    return out;
}

double truncated_voronoi(const VoronoiConfig& cfg, double x) {
    return TruncatedVoronoi(cfg)(x);
}

ResidualReport voronoi_residual_report(const CongruenceSpec& spec, double T,
                                       const std::vector<u64>& y_list,
                                       u64 samples, u64 seed) {
    spec.validate();
    if (!(T >= 1e3)) throw std::invalid_argument("residual report: T must be >= 1e3");
    if (samples < 100) throw std::invalid_argument("residual report: samples must be >= 100");
    if (y_list.empty()) throw std::invalid_argument("residual report: empty y list");
    std::vector<u64> ys = y_list;
    std::sort(ys.begin(), ys.end());

    ResidualReport rep;
    rep.spec = spec;
    rep.T = T;
    rep.samples = samples;
    rep.seed = seed;

    // sample x ~ U[T/2, T]; the mapping below uses only the raw 64-bit
    // stream, so the values are reproducible across platforms
    std::mt19937_64 rng(seed);
    std::vector<double> xs(samples);
    for (u64 i = 0; i < samples; ++i) {
        double u01 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        xs[i] = T / 2 + (T / 2) * u01;
    }

    VoronoiConfig cfg{spec, static_cast<double>(ys.back()), PhaseMode::exact_rational};
    TruncatedVoronoi r0(cfg);

    std::vector<double> dvals(samples);
    std::vector<std::vector<double>> rvals(ys.size(), std::vector<double>(samples));
#pragma omp parallel for schedule(dynamic, 16)
    for (i64 i = 0; i < static_cast<i64>(samples); ++i) {
        dvals[i] = delta(spec, xs[i]);
        auto partial = r0.evaluate_partial(xs[i], ys);
        for (std::size_t j = 0; j < ys.size(); ++j) rvals[j][i] = partial[j];
    }

    for (std::size_t j = 0; j < ys.size(); ++j) {
        long double sd = 0, sr = 0, sdd = 0, srr = 0, sdr = 0, sres = 0;
        for (u64 i = 0; i < samples; ++i) {
            long double d = dvals[i], r = rvals[j][i];
            sd += d;
            sr += r;
            sdd += d * d;
            srr += r * r;
            sdr += d * r;
            sres += (d - r) * (d - r);
        }
        long double n = static_cast<long double>(samples);
        long double cov = sdr / n - (sd / n) * (sr / n);
        long double vard = sdd / n - (sd / n) * (sd / n);
        long double varr = srr / n - (sr / n) * (sr / n);
        ResidualRow row;
        row.y = static_cast<double>(ys[j]);
        row.mse_residual = static_cast<double>(sres / n);
        row.mse_delta = static_cast<double>(sdd / n);
        row.correlation = static_cast<double>(cov / sqrtl(vard * varr));
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace cdm
