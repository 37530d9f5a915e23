#pragma once

#include <array>
#include <vector>

#include "cdm/arith.hpp"

namespace cdm {

// Every n <= y written as n = q*m^2, grouped by squarefree kernel q.
// sqrt(n) = m*sqrt(q), and the sqrt(q) are linearly independent over Q,
// which makes zero-testing of signed root sums an integer problem.
struct KernelIndex {
    u64 y = 0;
    std::vector<u64> kernel_of;  // index 1..y
    std::vector<u32> mult_of;
    struct Group {
        u64 kernel;
        std::vector<u32> multipliers;  // ascending, q*m^2 <= y
    };
    std::vector<Group> groups;  // ascending kernel
};

KernelIndex build_kernel_index(u64 y, const SpfTable& table);

enum class RelationShape { two_two, three_one };

struct QuadrupleRelation {
    u64 n1, n2, n3, n4;
    RelationShape shape;
    bool operator==(const QuadrupleRelation&) const = default;
};

// Solutions of sqrt(n1)+sqrt(n2) = sqrt(n3)+sqrt(n4), all <= y.
// Class A (materialized): all four share one kernel and m1+m2 = m3+m4.
// Class B (symbolic, cross-kernel): kernels of n1, n2 differ and
// {(n3,n4)} = {(n1,n2)} as a pair; |B| = Theta(y^2), so it is returned as a
// count, not a stream.  A and B are disjoint and exhaustive; proved-by-test
// against the brute-force oracle.
struct TwoTwoEnumeration {
    std::vector<QuadrupleRelation> class_a;
    u64 class_b_ordered_pairs = 0;      // ordered (a,b), kernel(a) != kernel(b)
    u64 class_b_quadruples = 0;         // = 2 * class_b_ordered_pairs
};

TwoTwoEnumeration enumerate_two_two(const KernelIndex& index);

// Ordered solutions of sqrt(n1)+sqrt(n2)+sqrt(n3) = sqrt(n4), all <= y.
// All four necessarily share one kernel with m1+m2+m3 = m4.
std::vector<QuadrupleRelation> enumerate_three_one(const KernelIndex& index);

enum class SignPattern {
    two_two,   // ++--  : sqrt n1 + sqrt n2 - sqrt n3 - sqrt n4
    three_one  // +++-  : sqrt n1 + sqrt n2 + sqrt n3 - sqrt n4
};

// Dyadic boxes n_j in (N_j, 2N_j].
struct NearRelationQuery {
    std::array<u64, 4> ranges{1, 1, 1, 1};
    double window = 0;
    SignPattern pattern = SignPattern::two_two;
};

// Exact count of ordered quadruples with 0 < |signed root sum| < window.
// Zero-exclusion is decided in integers via kernel matching, never by
// epsilon; magnitudes are compared in long double.
u64 count_near_relations(const NearRelationQuery& query, const SpfTable& table);

struct MinGapResult {
    double gap = 0;
    std::array<u64, 4> witness{};  // (n, m, k, l) in pattern order
    double kong_ratio = 0;         // gap * (nmkl)^{1/2} * max(n,m,k,l)^{3/2}
};

// Minimal nonzero |sqrt n + sqrt m +/- sqrt k - sqrt l| over quadruples
// <= bound, 2 <= bound <= 500.  Sorted pair/triple scan, not O(bound^4).
MinGapResult min_nonzero_gap(u64 bound, SignPattern pattern, const SpfTable& table);

}  // namespace cdm
