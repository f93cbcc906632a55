#pragma once

// Independent oracles for the test suite.  Everything here is written
// against the problem statement alone: no pruning, no bitset tricks, no
// reuse of the code under test beyond treating the opposition relation as
// a black-box predicate.

#include <cstdint>
#include <vector>

#include "opp/geometry_id.hpp"

namespace oracles {

// Every size-m vertex set with no common opposite object, by scanning all
// ascending tuples and, for each, all objects.  Output in lexicographic
// tuple order.
inline std::vector<std::vector<std::uint32_t>> naive_blockers(const opp::OppositionContext& o,
                                                              unsigned m) {
    const std::uint32_t nv = static_cast<std::uint32_t>(o.opp.size());
    const std::size_t nobj = o.num_objects();
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> tuple(m);

    auto blocked = [&]() {
        for (std::size_t x = 0; x < nobj; ++x) {
            bool opposite_to_all = true;
            for (std::uint32_t v : tuple)
                if (!o.opp[v].test(x)) {
                    opposite_to_all = false;
                    break;
                }
            if (opposite_to_all) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, unsigned depth, std::uint32_t lo) -> void {
        if (depth == m) {
            if (blocked()) out.push_back(tuple);
            return;
        }
        for (std::uint32_t v = lo; v < nv; ++v) {
            tuple[depth] = v;
            self(self, depth + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

// True when some proper subset of `tuple` of size >= 1 already has no
// common opposite (checked on all subsets, not just prefixes).
inline bool has_blocking_proper_subset(const opp::OppositionContext& o,
                                       const std::vector<std::uint32_t>& tuple) {
    const std::size_t nobj = o.num_objects();
    const unsigned m = static_cast<unsigned>(tuple.size());
    for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
        bool any_common = false;
        for (std::size_t x = 0; x < nobj && !any_common; ++x) {
            bool all = true;
            for (unsigned i = 0; i < m; ++i)
                if ((mask >> i) & 1u)
                    if (!o.opp[tuple[i]].test(x)) {
                        all = false;
                        break;
                    }
            any_common = all;
        }
        if (!any_common) return true;
    }
    return false;
}

// q^0 + q^1 + ... + q^d.
inline unsigned long long projective_points(unsigned d, unsigned q) {
    unsigned long long n = 0, p = 1;
    for (unsigned i = 0; i <= d; ++i, p *= q) n += p;
    return n;
}

// Incident (point, hyperplane) pairs of PG(d, q).
inline unsigned long long incident_point_hyperplane_pairs(unsigned d, unsigned q) {
    return projective_points(d, q) * projective_points(d - 1, q);
}

// Hyperbolic line count of a polar space from first principles: pairs of
// non-collinear points divided by pairs inside one hyperbolic line.
inline unsigned long long hyperbolic_line_count(const opp::PolarSpace& p) {
    const std::size_t np = p.num_points();
    unsigned long long noncollinear_pairs = 0;
    std::size_t size = 0;
    bool size_known = false;
    for (std::uint32_t x = 0; x < np; ++x)
        for (std::uint32_t y = x + 1; y < np; ++y) {
            if (p.adj(x).test(y)) continue;
            ++noncollinear_pairs;
            if (!size_known) {
                size = p.hyperbolic_line(x, y).size();
                size_known = true;
            }
        }
    if (!size_known || size < 2) return 0;
    return noncollinear_pairs / (size * (size - 1) / 2);
}

}  // namespace oracles
