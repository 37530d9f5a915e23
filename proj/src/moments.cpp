#include "cdm/moments.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "cdm/special.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cdm {

const GaussLegendre& gauss_legendre(int order) {
    if (order < 2 || order > 32)
        throw std::invalid_argument("gauss_legendre: order must be in [2, 32]");
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussLegendre gl;
    gl.nodes.resize(order);
    gl.weights.resize(order);
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-like initial guess
        long double x = cosl(3.14159265358979323846L * (i + 0.75L) / (n + 0.5L));
        long double dp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0L);
            long double dx = p1 / dp;
            x -= dx;
            if (fabsl(dx) < 1e-19L) break;
        }
        long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        gl.nodes[i] = static_cast<double>(-x);
        gl.nodes[n - 1 - i] = static_cast<double>(x);
        gl.weights[i] = static_cast<double>(w);
        gl.weights[n - 1 - i] = static_cast<double>(w);
    }
    return cache.emplace(order, std::move(gl)).first->second;
}

namespace {

struct MainTermCoeffs {
    double c_log_shift;  // M(x) = x*(ln x + c_log_shift) + c_const
    double c_const;
};

MainTermCoeffs main_coeffs(const CongruenceSpec& spec) {
    double g1 = hurwitz_laurent_constant(spec.lambda1());
    double g2 = hurwitz_laurent_constant(spec.lambda2());
    return {g1 + g2 - 1.0, (0.5 - spec.lambda1()) * (0.5 - spec.lambda2())};
}

// integral of (A - M(x))^k over [a, b], k = 1..4 together
inline void segment_integrals(double A, double a, double b, const GaussLegendre& gl,
                              const MainTermCoeffs& mc, long double out[4]) {
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        double x = mid + rad * gl.nodes[j];
        double d = A - (x * (std::log(x) + mc.c_log_shift) + mc.c_const);
        double wj = gl.weights[j] * rad;
        double d2 = d * d;
        out[0] += wj * d;
        out[1] += wj * d2;
        out[2] += wj * d2 * d;
        out[3] += wj * d2 * d2;
    }
}

void validate_window(double T1, double T2, int quad_order) {
    if (!(T1 >= 1) || !(T1 < T2))
        throw std::invalid_argument("integrate: need 1 <= T1 < T2");
    if (quad_order < 4 || quad_order > 16)
        throw std::invalid_argument("integrate: quad_order must be in [4, 16]");
}

// integrals of (A_j - M(x))^k over [T1, T2] for the jump lattice x = n/P,
// starting from the prefix count at floor(P*T1)
void integrate_range(const DivisorTable& table, double T1, double T2,
                     u64 count_at_start, const GaussLegendre& gl,
                     const MainTermCoeffs& mc, long double out[4]) {
    const u64 P = static_cast<u64>(table.spec.modulus_product());
    const u64 n1 = static_cast<u64>(guarded_floor(P * T1));
    const u64 n2 = static_cast<u64>(guarded_floor(P * T2));
    u64 A = count_at_start;
    if (n1 == n2) {
        segment_integrals(static_cast<double>(A), T1, T2, gl, mc, out);
        return;
    }
    double right = static_cast<double>(n1 + 1) / P;
    if (right > T1)
        segment_integrals(static_cast<double>(A), T1, right, gl, mc, out);
    for (u64 n = n1 + 1; n < n2; ++n) {
        A += table.counts[n];
        segment_integrals(static_cast<double>(A), static_cast<double>(n) / P,
                          static_cast<double>(n + 1) / P, gl, mc, out);
    }
    A += table.counts[n2];
    double left = static_cast<double>(n2) / P;
    if (T2 > left)
        segment_integrals(static_cast<double>(A), left, T2, gl, mc, out);
}

u64 prefix_at(const DivisorTable& table, u64 n) {
    u64 acc = 0;
    for (u64 k = 1; k <= n; ++k) acc += table.counts[k];
    return acc;
}

}  // namespace

std::array<double, 4> integrate_delta_powers(const DivisorTable& table, double T1,
                                             double T2, int quad_order, bool parallel) {
    validate_window(T1, T2, quad_order);
    const u64 P = static_cast<u64>(table.spec.modulus_product());
    if (static_cast<double>(table.limit) < P * T2 - 1)
        throw std::invalid_argument("integrate: divisor table too small for T2");
    const GaussLegendre& gl = gauss_legendre(quad_order);
    const MainTermCoeffs mc = main_coeffs(table.spec);

    if (!parallel) {
        long double acc[4] = {};
        integrate_range(table, T1, T2, prefix_at(table, static_cast<u64>(guarded_floor(P * T1))),
                        gl, mc, acc);
        return {static_cast<double>(acc[0]), static_cast<double>(acc[1]),
                static_cast<double>(acc[2]), static_cast<double>(acc[3])};
    }

    // fixed chunk count, canonical-order reduction: the result does not
    // depend on the number of workers
    const int nchunks = 240;
    std::vector<double> cut(nchunks + 1);
    for (int i = 0; i <= nchunks; ++i) {
        double t = T1 + (T2 - T1) * i / nchunks;
        // snap interior cuts to the jump lattice so chunks meet at segment ends
        if (i > 0 && i < nchunks) t = guarded_floor(P * t) / static_cast<double>(P);
        cut[i] = t;
    }
    // chunk-start prefix counts in one serial pass
    std::vector<u64> start_count(nchunks);
    {
        u64 acc = 0, n = 0;
        for (int i = 0; i < nchunks; ++i) {
            u64 target = static_cast<u64>(guarded_floor(P * cut[i]));
            for (; n < target;) acc += table.counts[++n];
            start_count[i] = acc;
        }
    }
    std::vector<std::array<long double, 4>> partial(nchunks, {0.0L, 0.0L, 0.0L, 0.0L});
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < nchunks; ++i) {
        if (!(cut[i] < cut[i + 1])) continue;
        long double acc[4] = {};
        integrate_range(table, cut[i], cut[i + 1], start_count[i], gl, mc, acc);
        for (int k = 0; k < 4; ++k) partial[i][k] = acc[k];
    }
    long double total[4] = {};
    for (int i = 0; i < nchunks; ++i)
        for (int k = 0; k < 4; ++k) total[k] += partial[i][k];
    return {static_cast<double>(total[0]), static_cast<double>(total[1]),
            static_cast<double>(total[2]), static_cast<double>(total[3])};
}

namespace {

DivisorTable table_for(const CongruenceSpec& spec, double T2, u64 entry_cap) {
    const u64 P = static_cast<u64>(spec.modulus_product());
    u64 limit = static_cast<u64>(guarded_floor(P * T2)) + 1;
    return sieve_divisor_table(spec, limit, entry_cap);
}

void check_k(int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("moment power k must be in {1,2,3,4}");
}

}  // namespace

double integrate_delta_power(const CongruenceSpec& spec, int k, double T1, double T2,
                             int quad_order, u64 entry_cap) {
    check_k(k);
    validate_window(T1, T2, quad_order);
    DivisorTable table = table_for(spec, T2, entry_cap);
    return integrate_delta_powers(table, T1, T2, quad_order, true)[k - 1];
}

double integrate_delta_power_serial(const CongruenceSpec& spec, int k, double T1,
                                    double T2, int quad_order, u64 entry_cap) {
    check_k(k);
    validate_window(T1, T2, quad_order);
    DivisorTable table = table_for(spec, T2, entry_cap);
    return integrate_delta_powers(table, T1, T2, quad_order, false)[k - 1];
}

std::vector<std::array<double, 4>> integrate_delta_powers_cumulative(
    const DivisorTable& table, const std::vector<double>& checkpoints, int quad_order) {
    if (checkpoints.empty())
        throw std::invalid_argument("integrate: no checkpoints");
    for (std::size_t i = 0; i < checkpoints.size(); ++i)
        if (!(checkpoints[i] > 1) ||
            (i > 0 && !(checkpoints[i] > checkpoints[i - 1])))
            throw std::invalid_argument("integrate: checkpoints must be ascending and > 1");

    std::vector<std::array<double, 4>> out;
    std::array<long double, 4> acc{};
    double t_prev = 1.0;
    for (double t : checkpoints) {
        auto piece = integrate_delta_powers(table, t_prev, t, quad_order, true);
        for (int k = 0; k < 4; ++k) acc[k] += piece[k];
        out.push_back({static_cast<double>(acc[0]), static_cast<double>(acc[1]),
                       static_cast<double>(acc[2]), static_cast<double>(acc[3])});
        t_prev = t;
    }
    return out;
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& rows) {
    if (rows.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 rows");
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const long double n = static_cast<long double>(rows.size());
    for (const auto& [T, v] : rows) {
        if (!(v > 0))
            throw std::invalid_argument("fit_power_law: values must be positive");
        long double x = logl(T), y = logl(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    long double den = n * sxx - sx * sx;
    long double slope = (n * sxy - sx * sy) / den;
    long double intercept = (sy - slope * sx) / n;
    long double ss_res = 0, ss_x = sxx - sx * sx / n;
    for (const auto& [T, v] : rows) {
        long double r = logl(v) - (intercept + slope * logl(T));
        ss_res += r * r;
    }
    PowerLawFit fit;
    fit.exponent = static_cast<double>(slope);
    fit.log_constant = static_cast<double>(intercept);
    fit.stderr_exponent =
        rows.size() > 2
            ? static_cast<double>(sqrtl(ss_res / (n - 2) / ss_x))
            : 0.0;
    return fit;
}

MomentReport moment_experiment(const CongruenceSpec& spec, int k,
                               const std::vector<double>& T_list, u64 y_const,
                               int quad_order, u64 entry_cap) {
    check_k(k);
    spec.validate();
    if (T_list.empty()) throw std::invalid_argument("moment_experiment: empty T list");
    for (std::size_t i = 1; i < T_list.size(); ++i)
        if (!(T_list[i] > T_list[i - 1]))
            throw std::invalid_argument("moment_experiment: T list must be ascending");

    MomentReport rep;
    rep.spec = spec;
    rep.k = k;
    rep.y_const = y_const;
    rep.quad_order = quad_order;

    // checkpoints at T/2 and T for every requested T
    std::vector<double> checkpoints;
    for (double T : T_list) {
        checkpoints.push_back(T / 2);
        checkpoints.push_back(T);
    }
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                      checkpoints.end());

    DivisorTable table = table_for(spec, T_list.back(), entry_cap);
    auto cumulative = integrate_delta_powers_cumulative(table, checkpoints, quad_order);
    auto at = [&](double t) {
        auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(), t);
        return cumulative[it - checkpoints.begin()][k - 1];
    };

    const double pi4 = std::pow(3.14159265358979323846, 4);
    double c4_scale = 0;
    if (k == 4) {
        C4Result c4 = c4_estimate(spec, y_const, entry_cap);
        rep.c4 = c4.c4;
        rep.c4_tail = c4.tail;
        c4_scale = c4.c4 / (32.0 * pi4);
    } else {
        // constant fitted at the fixed theoretical exponent 1 + k/4
        long double s = 0;
        for (double T : T_list)
            s += logl(std::fabs(at(T))) - (1.0L + k / 4.0L) * logl(T);
        c4_scale = static_cast<double>(expl(s / static_cast<long double>(T_list.size())));
    }

    std::vector<std::pair<double, double>> fit_rows;
    for (double T : T_list) {
        MomentRow row;
        row.T = T;
        row.integral = at(T);
        row.integral_half = at(T) - at(T / 2);
        if (k == 4) {
            row.predicted = c4_scale * (T * T - 1.0) / 2.0;
            row.predicted_half = c4_scale * (T * T - T * T / 4.0) / 2.0;
        } else {
            row.predicted = c4_scale * std::pow(T, 1.0 + k / 4.0);
            row.predicted_half =
                c4_scale * (std::pow(T, 1.0 + k / 4.0) - std::pow(T / 2, 1.0 + k / 4.0));
        }
        row.ratio = row.integral / row.predicted;
        row.ratio_half = row.integral_half / row.predicted_half;
        rep.rows.push_back(row);
        fit_rows.push_back({T, std::fabs(row.integral)});
    }
    rep.sign = rep.rows.back().integral >= 0 ? +1 : -1;
    if (T_list.size() >= 3) {
        PowerLawFit fit = fit_power_law(fit_rows);
        rep.fitted_exponent = fit.exponent;
        rep.fitted_log_constant = fit.log_constant;
        rep.fitted_stderr = fit.stderr_exponent;
    }
    return rep;
}

double cos_sqrt_integral(double alpha, double A, double B, double T) {
    if (A == 0) throw std::invalid_argument("cos_sqrt_integral: A must be nonzero");
    const GaussLegendre& gl = gauss_legendre(8);
    const int panels = 512;
    long double acc = 0.0L;
    for (int p = 0; p < panels; ++p) {
        double a = T * (1.0 + static_cast<double>(p) / panels);
        double b = T * (1.0 + static_cast<double>(p + 1) / panels);
        double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
            double t = mid + rad * gl.nodes[j];
            acc += gl.weights[j] * rad * std::pow(t, alpha) *
                   std::cos(A * std::sqrt(t) + B);
        }
    }
    return static_cast<double>(acc);
}

}  // namespace cdm
