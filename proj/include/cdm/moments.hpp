#pragma once

#include <array>
#include <vector>

#include "cdm/congruence.hpp"
#include "cdm/divisor.hpp"

namespace cdm {

// Gauss-Legendre nodes/weights on [-1, 1], 2 <= n <= 32.
struct GaussLegendre {
    std::vector<double> nodes, weights;
};
const GaussLegendre& gauss_legendre(int order);

// Exact-segment integral of Delta^k over [T1, T2]:
// the counting function jumps only at x = n/(M1M2), so on each open segment
// Delta(x) = A - M(x) with A the running count, and the segment integral is
// Gauss-Legendre quadrature of a smooth integrand.  Streams the sieve in one
// pass; all four powers are accumulated together.
std::array<double, 4> integrate_delta_powers(const DivisorTable& table,
                                             double T1, double T2,
                                             int quad_order, bool parallel = true);

double integrate_delta_power(const CongruenceSpec& spec, int k, double T1,
                             double T2, int quad_order,
                             u64 entry_cap = kDefaultEntryCap);
double integrate_delta_power_serial(const CongruenceSpec& spec, int k, double T1,
                                    double T2, int quad_order,
                                    u64 entry_cap = kDefaultEntryCap);

// Cumulative integrals from 1 to each checkpoint (ascending), one sieve pass.
std::vector<std::array<double, 4>> integrate_delta_powers_cumulative(
    const DivisorTable& table, const std::vector<double>& checkpoints,
    int quad_order);

struct PowerLawFit {
    double exponent = 0;
    double log_constant = 0;
    double stderr_exponent = 0;
};

// Least squares on (ln T, ln value); values must be positive, >= 3 rows.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& rows);

struct MomentRow {
    double T;
    double integral;        // signed, over [1, T]
    double predicted;
    double ratio;
    double integral_half;   // over [T/2, T]
    double predicted_half;
    double ratio_half;
};

struct MomentReport {
    CongruenceSpec spec;
    int k = 0;
    u64 y_const = 0;
    int quad_order = 8;
    double c4 = 0, c4_tail = 0;  // k = 4 only
    std::vector<MomentRow> rows;
    double fitted_exponent = 0;
    double fitted_log_constant = 0;
    double fitted_stderr = 0;
    int sign = +1;  // sign of the largest-T integral (odd k is signed)
};

// k = 4: predicted = c4(y_const)/(32 pi^4) * (T^2-1)/2 on [1,T], and
// c4/(32 pi^4) * 3T^2/8 on [T/2, T].  k in {1,2,3}: predicted is the pure
// power T^{1+k/4} scaled by the constant fitted at that fixed exponent
// (exponent check only).  Exponent fitting always uses |integral|.
MomentReport moment_experiment(const CongruenceSpec& spec, int k,
                               const std::vector<double>& T_list, u64 y_const,
                               int quad_order = 8,
                               u64 entry_cap = kDefaultEntryCap);

// int_T^{2T} t^alpha cos(A sqrt t + B) dt by composite Gauss-Legendre;
// compared in tests against the bound C * T^{1/2+alpha} / |A|.
double cos_sqrt_integral(double alpha, double A, double B, double T);

}  // namespace cdm
