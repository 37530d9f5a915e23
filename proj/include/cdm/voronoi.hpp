#pragma once

#include <vector>

#include "cdm/arith.hpp"
#include "cdm/congruence.hpp"
#include "cdm/constants.hpp"

namespace cdm {

enum class PhaseMode { exact_rational, floating };

struct VoronoiConfig {
    CongruenceSpec spec;
    double y = 1;
    PhaseMode phase_mode = PhaseMode::exact_rational;
};

struct PsiExpansion {
    double approx;        // -sum_{1<=|h|<=H} e(hu)/(2 pi i h), as a sine series
    double error_budget;  // min(1, 1/(H ||u||)), with 1 at ||u|| = 0
};

// Finite Fourier expansion of the sawtooth; H >= 2.
PsiExpansion psi_finite_expansion(double u, double H);

// tau(n, x) = sum_{hr=n} cos(4 pi sqrt(nx) - 2 pi (h l2/M2 + r l1/M1 + 1/8)),
// over all ordered factorizations.  exact_rational reduces the phase mod 1
// over the denominator 8*M1*M2 in integers first.
double tau(const CongruenceSpec& spec, u64 n, double x,
           PhaseMode mode = PhaseMode::exact_rational);

// R0(x; y) = x^{1/4}/(sqrt 2 pi) * sum_{n<=y} tau(n,x) / n^{3/4}.
// The weight table amortizes the factorization sums: per point each term is
// one cos/sin pair against the precomputed w(n).
class TruncatedVoronoi {
  public:
    explicit TruncatedVoronoi(const VoronoiConfig& cfg,
                              u64 entry_cap = kDefaultEntryCap);

    double operator()(double x) const;

    // partial sums at several truncation lengths in one pass (ascending ys)
    std::vector<double> evaluate_partial(double x, const std::vector<u64>& ys) const;

    const VoronoiConfig& config() const { return cfg_; }

  private:
    VoronoiConfig cfg_;
    TwistedWeightTable weights_;
};

double truncated_voronoi(const VoronoiConfig& cfg, double x);

struct ResidualRow {
    double y;
    double mse_residual;  // mean (Delta - R0)^2
    double mse_delta;
    double correlation;   // Pearson corr(Delta, R0)
};

struct ResidualReport {
    CongruenceSpec spec;
    double T = 0;
    u64 samples = 0;
    u64 seed = 0;
    std::vector<ResidualRow> rows;
};

// Seeded uniform samples x in [T/2, T]; Delta by the hyperbola method, R0 by
// one weight table at max(y_list) with partial sums captured per y.
// Sample values depend only on the seed, so the parallel evaluation is
// worker-count independent.
ResidualReport voronoi_residual_report(const CongruenceSpec& spec, double T,
                                       const std::vector<u64>& y_list,
                                       u64 samples, u64 seed);

}  // namespace cdm
