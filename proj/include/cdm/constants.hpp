#pragma once

#include <complex>
#include <vector>

#include "cdm/arith.hpp"
#include "cdm/congruence.hpp"
#include "cdm/relations.hpp"

namespace cdm {

// w[n] = sum_{hr=n} e(h*l2/M2 + r*l1/M1 + 1/8).  |w[n]| <= d(n).
// Phases are reduced mod 1 as integers over the common denominator 8*M1*M2
// before any trigonometric call, so h, r magnitudes never cost accuracy.
struct TwistedWeightTable {
    CongruenceSpec spec;
    u64 y = 0;
    std::vector<std::complex<double>> w;  // index 0 unused
};

TwistedWeightTable build_twisted_weights(const CongruenceSpec& spec, u64 y,
                                         u64 entry_cap = kDefaultEntryCap);
TwistedWeightTable build_twisted_weights_serial(const CongruenceSpec& spec, u64 y,
                                                u64 entry_cap = kDefaultEntryCap);

struct SeriesValue {
    int v = 0;
    u64 y = 0;
    double value = 0;
    double tail_estimate = 0;  // kappa * y^{-1/2}, kappa = 10 (reporting only)
};

// Truncated series over ordered quadruples <= y whose square roots satisfy
// the v-vs-(4-v) relation, each factor carrying the twisted weight w (plus
// side) or conj(w) (minus side), divided by (n1 n2 n3 n4)^{3/4}.
//
// v = 2 splits into the same-kernel family (per-kernel pair convolutions,
// |P_q(s)|^2) plus the cross-kernel pairing family in closed form
// 2*(S^2 - sum_q S_q^2), S = sum |w(n)|^2 n^{-3/2}.  v in {1,3} reduce to
// per-kernel triple convolutions.  The bookkeeping is checked against
// s4v_bruteforce before anything downstream trusts it.
SeriesValue s4v_truncated(const TwistedWeightTable& weights, int v,
                          const KernelIndex& index);

struct C4Result {
    double c4 = 0;
    double tail = 0;
    double s41 = 0, s42 = 0, s43 = 0;
};

// c4 = 3*s41(y) + 3*s42(y) + s43(y).  Requires y >= 10.
C4Result c4_estimate(const CongruenceSpec& spec, u64 y,
                     u64 entry_cap = kDefaultEntryCap);

// Independent oracle: direct quadruple loop with the exact relation test and
// direct cos accumulation over factorization tuples -- no weight table, no
// kernel-family split.  Guarded at y <= 50 (O(y^4 d^4)).
double s4v_bruteforce(const CongruenceSpec& spec, int v, u64 y);

// Same, for an explicit sign vector i in {0,1}^3 (signs +,(-1)^i1,(-1)^i2,(-1)^i3).
double s4v_bruteforce_pattern(const CongruenceSpec& spec, const int ivec[3], u64 y);

}  // namespace cdm
