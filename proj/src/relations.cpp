#include "cdm/relations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace cdm {

namespace {

// canonical form of sqrt(a) + sqrt(b): one or two (kernel, coeff) terms
struct PairKey {
    u64 q1 = 0, q2 = 0;  // q2 = 0 for a single-term form
    u32 c1 = 0, c2 = 0;
    bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const {
        u64 h = 1469598103934665603ull;
        auto mix = [&h](u64 v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(k.q1);
        mix(k.q2);
        mix((u64(k.c1) << 32) | k.c2);
        return static_cast<std::size_t>(h);
    }
};

PairKey make_pair_key(u64 qa, u32 ca, u64 qb, u32 cb) {
    PairKey k;
    if (qa == qb) {
        k.q1 = qa;
        k.c1 = ca + cb;
    } else {
        if (qa > qb) {
            std::swap(qa, qb);
            std::swap(ca, cb);
        }
        k = PairKey{qa, qb, ca, cb};
    }
    return k;
}

struct ValueEntry {
    long double value;
    PairKey key;
    u32 a, b;
};

}  // namespace

KernelIndex build_kernel_index(u64 y, const SpfTable& table) {
    if (y < 1) throw std::invalid_argument("kernel index: y must be >= 1");
    if (table.limit < y)
        throw std::out_of_range("kernel index: spf table smaller than y");
    KernelIndex idx;
    idx.y = y;
    idx.kernel_of.assign(y + 1, 0);
    idx.mult_of.assign(y + 1, 0);
    std::map<u64, std::vector<u32>> groups;
    for (u64 n = 1; n <= y; ++n) {
        KernelDecomposition d = kernel_decompose(n, table);
        idx.kernel_of[n] = d.kernel;
        idx.mult_of[n] = static_cast<u32>(d.multiplier);
        groups[d.kernel].push_back(static_cast<u32>(d.multiplier));
    }
    idx.groups.reserve(groups.size());
    for (auto& [q, ms] : groups) {
        std::sort(ms.begin(), ms.end());
        idx.groups.push_back({q, std::move(ms)});
    }
    return idx;
}

TwoTwoEnumeration enumerate_two_two(const KernelIndex& index) {
    TwoTwoEnumeration out;
    // class A: same kernel, m1+m2 = m3+m4; bucket ordered pairs by sum
    for (const auto& g : index.groups) {
        const auto& ms = g.multipliers;
        u32 mmax = ms.back();
        std::vector<std::vector<std::pair<u32, u32>>> by_sum(2 * mmax + 1);
        for (u32 a : ms)
            for (u32 b : ms) by_sum[a + b].push_back({a, b});
        for (const auto& bucket : by_sum)
            for (const auto& left : bucket)
                for (const auto& right : bucket)
                    out.class_a.push_back({g.kernel * u64(left.first) * left.first,
                                           g.kernel * u64(left.second) * left.second,
                                           g.kernel * u64(right.first) * right.first,
                                           g.kernel * u64(right.second) * right.second,
                                           RelationShape::two_two});
    }
    // class B: ordered cross-kernel pairs; each yields (a,b,a,b) and (a,b,b,a)
    u64 same_kernel_pairs = 0;
    for (const auto& g : index.groups) {
        u64 c = g.multipliers.size();
        same_kernel_pairs += c * c;
    }
    out.class_b_ordered_pairs = index.y * index.y - same_kernel_pairs;
    out.class_b_quadruples = 2 * out.class_b_ordered_pairs;
    return out;
}

std::vector<QuadrupleRelation> enumerate_three_one(const KernelIndex& index) {
    std::vector<QuadrupleRelation> out;
    for (const auto& g : index.groups) {
        const auto& ms = g.multipliers;
        u32 mmax = ms.back();
        std::vector<char> present(mmax + 1, 0);
        for (u32 m : ms) present[m] = 1;
        auto n_of = [&](u32 m) { return g.kernel * u64(m) * m; };
        for (u32 m1 : ms)
            for (u32 m2 : ms) {
                if (u64(m1) + m2 >= mmax) break;  // m3 >= 1 needs m1+m2 < m4 <= mmax
                for (u32 m4 = m1 + m2 + 1; m4 <= mmax; ++m4) {
                    if (!present[m4]) continue;
                    u32 m3 = m4 - m1 - m2;
                    if (m3 <= mmax && present[m3])
                        out.push_back({n_of(m1), n_of(m2), n_of(m3), n_of(m4),
                                       RelationShape::three_one});
                }
            }
    }
    return out;
}

namespace {

std::vector<ValueEntry> range_pairs(u64 N1, u64 N2, const KernelIndex& idx) {
    std::vector<ValueEntry> v;
    v.reserve((N1 > 0 ? N1 : 1) * (N2 > 0 ? N2 : 1));
    for (u64 a = N1 + 1; a <= 2 * N1; ++a) {
        long double sa = sqrtl(static_cast<long double>(a));
        for (u64 b = N2 + 1; b <= 2 * N2; ++b) {
            ValueEntry e;
            e.value = sa + sqrtl(static_cast<long double>(b));
            e.key = make_pair_key(idx.kernel_of[a], idx.mult_of[a],
                                  idx.kernel_of[b], idx.mult_of[b]);
            e.a = static_cast<u32>(a);
            e.b = static_cast<u32>(b);
            v.push_back(e);
        }
    }
    return v;
}

}  // namespace

u64 count_near_relations(const NearRelationQuery& query, const SpfTable& table) {
    if (!(query.window > 0))
        throw std::invalid_argument("count_near_relations: window must be positive");
    u64 maxn = 0;
    for (u64 N : query.ranges) {
        if (N < 1) throw std::invalid_argument("count_near_relations: ranges must be >= 1");
        maxn = std::max(maxn, 2 * N);
    }
    if (table.limit < maxn)
        throw std::out_of_range("count_near_relations: spf table too small");
    KernelIndex idx = build_kernel_index(maxn, table);
    const long double w = query.window;
    u64 count = 0;

    if (query.pattern == SignPattern::two_two) {
        auto left = range_pairs(query.ranges[0], query.ranges[1], idx);
        auto right = range_pairs(query.ranges[2], query.ranges[3], idx);
        std::vector<long double> rv;
        rv.reserve(right.size());
        std::unordered_map<PairKey, u64, PairKeyHash> exact;
        for (const auto& e : right) {
            rv.push_back(e.value);
            exact[e.key]++;
        }
        std::sort(rv.begin(), rv.end());
        for (const auto& e : left) {
            auto lo = std::upper_bound(rv.begin(), rv.end(), e.value - w);
            auto hi = std::lower_bound(rv.begin(), rv.end(), e.value + w);
            u64 in_window = static_cast<u64>(hi - lo);
            auto it = exact.find(e.key);
            if (it != exact.end()) in_window -= std::min(in_window, it->second);
            count += in_window;
        }
    } else {
        // triples (n1,n2,n3) against singles n4
        std::vector<long double> singles;
        for (u64 l = query.ranges[3] + 1; l <= 2 * query.ranges[3]; ++l)
            singles.push_back(sqrtl(static_cast<long double>(l)));
        std::sort(singles.begin(), singles.end());
        auto in_single_range = [&](u64 n) {
            return n > query.ranges[3] && n <= 2 * query.ranges[3];
        };
        for (u64 a = query.ranges[0] + 1; a <= 2 * query.ranges[0]; ++a)
            for (u64 b = query.ranges[1] + 1; b <= 2 * query.ranges[1]; ++b)
                for (u64 c = query.ranges[2] + 1; c <= 2 * query.ranges[2]; ++c) {
                    long double v = sqrtl((long double)a) + sqrtl((long double)b) +
                                    sqrtl((long double)c);
                    auto lo = std::upper_bound(singles.begin(), singles.end(), v - w);
                    auto hi = std::lower_bound(singles.begin(), singles.end(), v + w);
                    u64 in_window = static_cast<u64>(hi - lo);
                    // exact match only when the triple collapses to one kernel
                    if (idx.kernel_of[a] == idx.kernel_of[b] &&
                        idx.kernel_of[a] == idx.kernel_of[c]) {
                        u64 s = u64(idx.mult_of[a]) + idx.mult_of[b] + idx.mult_of[c];
                        u64 target = idx.kernel_of[a] * s * s;
                        if (in_single_range(target) && in_window > 0) in_window -= 1;
                    }
                    count += in_window;
                }
    }
    return count;
}

MinGapResult min_nonzero_gap(u64 bound, SignPattern pattern, const SpfTable& table) {
    if (bound < 2 || bound > 500)
        throw std::invalid_argument("min_nonzero_gap: bound must be in [2, 500]");
    if (table.limit < bound)
        throw std::out_of_range("min_nonzero_gap: spf table too small");
    KernelIndex idx = build_kernel_index(bound, table);

    MinGapResult best;
    long double best_gap = 1e30L;

    if (pattern == SignPattern::two_two) {
        std::vector<ValueEntry> v;
        v.reserve(bound * (bound + 1) / 2);
        for (u64 a = 1; a <= bound; ++a) {
            long double sa = sqrtl(static_cast<long double>(a));
            for (u64 b = a; b <= bound; ++b) {
                ValueEntry e;
                e.value = sa + sqrtl(static_cast<long double>(b));
                e.key = make_pair_key(idx.kernel_of[a], idx.mult_of[a],
                                      idx.kernel_of[b], idx.mult_of[b]);
                e.a = static_cast<u32>(a);
                e.b = static_cast<u32>(b);
                v.push_back(e);
            }
        }
        std::sort(v.begin(), v.end(),
                  [](const ValueEntry& x, const ValueEntry& y) { return x.value < y.value; });
        // minimal nonzero gap is between consecutive distinct values;
        // equal canonical keys mean an exact relation (gap 0), skip those
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            if (v[i].key == v[i + 1].key) continue;
            long double g = v[i + 1].value - v[i].value;
            if (g < best_gap) {
                best_gap = g;
                best.witness = {v[i].a, v[i].b, v[i + 1].a, v[i + 1].b};
            }
        }
    } else {
        struct Tri {
            long double value;
            u32 a, b, c;
        };
        std::vector<Tri> tris;
        tris.reserve(bound * bound * bound / 6 + bound * bound);
        for (u64 a = 1; a <= bound; ++a) {
            long double sa = sqrtl(static_cast<long double>(a));
            for (u64 b = a; b <= bound; ++b) {
                long double sab = sa + sqrtl(static_cast<long double>(b));
                for (u64 c = b; c <= bound; ++c)
                    tris.push_back({sab + sqrtl(static_cast<long double>(c)),
                                    static_cast<u32>(a), static_cast<u32>(b),
                                    static_cast<u32>(c)});
            }
        }
        std::sort(tris.begin(), tris.end(),
                  [](const Tri& x, const Tri& y) { return x.value < y.value; });
        auto is_exact = [&](const Tri& t, u64 l) {
            return idx.kernel_of[t.a] == idx.kernel_of[t.b] &&
                   idx.kernel_of[t.a] == idx.kernel_of[t.c] &&
                   idx.kernel_of[t.a] == idx.kernel_of[l] &&
                   u64(idx.mult_of[t.a]) + idx.mult_of[t.b] + idx.mult_of[t.c] ==
                       idx.mult_of[l];
        };
        for (u64 l = 1; l <= bound; ++l) {
            long double target = sqrtl(static_cast<long double>(l));
            auto it = std::lower_bound(tris.begin(), tris.end(), target,
                                       [](const Tri& t, long double v) { return t.value < v; });
            // walk outward past exact relations on each side
            for (auto j = it; j != tris.end(); ++j) {
                if (is_exact(*j, l)) continue;
                long double g = j->value - target;
                if (g < best_gap) {
                    best_gap = g;
                    best.witness = {j->a, j->b, j->c, l};
                }
                break;
            }
            for (auto j = it; j != tris.begin();) {
                --j;
                if (is_exact(*j, l)) continue;
                long double g = target - j->value;
                if (g < best_gap) {
                    best_gap = g;
                    best.witness = {j->a, j->b, j->c, l};
                }
                break;
            }
        }
    }

    best.gap = static_cast<double>(best_gap);
    long double prod = 1.0L;
    u64 mx = 0;
    for (u64 n : best.witness) {
        prod *= static_cast<long double>(n);
        mx = std::max(mx, n);
    }
    best.kong_ratio = static_cast<double>(
        best_gap * sqrtl(prod) * powl(static_cast<long double>(mx), 1.5L));
    return best;
}

}  // namespace cdm
