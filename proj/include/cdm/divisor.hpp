#pragma once

#include <vector>

#include "cdm/arith.hpp"
#include "cdm/congruence.hpp"

namespace cdm {

// counts[n] = d(n; spec) for 1 <= n <= limit.
struct DivisorTable {
    CongruenceSpec spec;
    u64 limit = 0;
    std::vector<u32> counts;  // index 0 unused
};

// Sieve by the double loop over n1 = l1 (mod M1), n2 = l2 (mod M2) with
// n1*n2 <= limit.  The parallel version partitions the target range into
// disjoint blocks, so the result is identical for any thread count.
DivisorTable sieve_divisor_table(const CongruenceSpec& spec, u64 limit,
                                 u64 entry_cap = kDefaultEntryCap);
DivisorTable sieve_divisor_table_serial(const CongruenceSpec& spec, u64 limit,
                                        u64 entry_cap = kDefaultEntryCap);

std::vector<u64> prefix_counts(const DivisorTable& table);

// Sum_{n <= X} d(n; spec), exactly, in O(sqrt(X)) by the hyperbolic method
// (S1 + S2 - S3, inner counts via integer floor divisions).
u64 summatory_hyperbola_exact(const CongruenceSpec& spec, u64 X);
u64 summatory_hyperbola(const CongruenceSpec& spec, double X);

// M(x) = x(ln x - 1 + gamma0(lambda1) + gamma0(lambda2))
//        + (1/2 - lambda1)(1/2 - lambda2),
// the sum of the residues at s = 1 and s = 0 after the substitution that
// makes the count run to M1*M2*x.  Verified against a least-squares fit of
// the exact counting function (fit_main_term below).
double main_term(const CongruenceSpec& spec, double x);

// Delta(M1M2 x; spec) = count(M1M2 x) - M(x).
double delta(const CongruenceSpec& spec, double x);

// The two psi-sums of the hyperbola decomposition; Delta = F12 + F21 + O(1).
double eval_F12(const CongruenceSpec& spec, double x);
double eval_F21(const CongruenceSpec& spec, double x);

struct MainTermFit {
    double a = 0, b = 0, c = 0;  // fit of a*x*ln x + b*x + c
    double a_true = 0, b_true = 0, c_true = 0;
};

// Weighted least squares on the exact counting function, sampled at the jump
// abscissae x = K/(M1M2) with midpoint values prefix(K) - d(K)/2 and weights
// x^{-1/2}.  Sampling exactly at the jumps with full right-continuous values
// would bias the constant by ~ln(x)/2.
MainTermFit fit_main_term(const CongruenceSpec& spec, u64 x_limit,
                          u64 entry_cap = kDefaultEntryCap);

}  // namespace cdm
