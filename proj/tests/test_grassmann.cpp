#include "doctest.h"

#include "opp/geometry_id.hpp"

#include <algorithm>
#include <random>

using namespace opp;

namespace {

Geometry make(const char* spec) { return build_geometry(parse_geometry(spec)); }

std::size_t opp_degree(const OppositionContext& o, std::uint32_t v) {
    return o.opp[v].count();
}

}  // namespace

TEST_CASE("projective Grassmannians: vertex counts, pencils, opposition degree") {
    Geometry pts = make("PG(3,2)");
    CHECK(pts.g.vertices.size() == 15);
    CHECK(pts.g.lines.size() == 35);
    CHECK(pts.g.line_size == 3);
    // points vs hyperplanes: opposite = complementary, 8 hyperplanes miss a point
    CHECK_FALSE(pts.opp.self_typed);
    CHECK(pts.opp.num_objects() == 15);
    for (std::uint32_t v = 0; v < 15; ++v) CHECK(opp_degree(pts.opp, v) == 8);

    Geometry lines = make("PG(3,2) i=2");
    CHECK(lines.g.vertices.size() == 35);
    CHECK(lines.g.lines.size() == 105);  // one pencil per incident point-plane pair
    CHECK(lines.g.line_size == 3);
    CHECK(lines.opp.self_typed);
    // disjoint line pairs in PG(3,2)
    for (std::uint32_t v = 0; v < 35; ++v) CHECK(opp_degree(lines.opp, v) == 16);
}

TEST_CASE("polar Grassmannians: counts and line sizes by type") {
    Geometry w1 = make("W(5,2)");
    CHECK(w1.g.vertices.size() == 63);
    CHECK(w1.g.lines.size() == 315);
    CHECK(w1.g.line_size == 3);

    Geometry w2 = make("W(5,2) i=2");
    CHECK(w2.g.vertices.size() == 315);
    CHECK(w2.g.lines.size() == 945);  // pencils between points and generators
    CHECK(w2.g.line_size == 3);

    Geometry w3 = make("W(5,2) i=3");
    CHECK(w3.g.vertices.size() == 135);
    CHECK(w3.g.lines.size() == 315);  // one per submaximal
    CHECK(w3.g.line_size == 3);

    Geometry h = make("H(3,4) i=2");
    CHECK(h.g.vertices.size() == 27);
    CHECK(h.g.lines.size() == 45);
    CHECK(h.g.line_size == 3);  // t+1 generators per point at rank 2
}

TEST_CASE("half-spin geometries split the generators evenly") {
    Geometry a = make("Q+(5,2) halfspin:A");
    Geometry b = make("Q+(5,2) halfspin:B");
    CHECK(a.g.vertices.size() == 15);
    CHECK(b.g.vertices.size() == 15);
    CHECK(a.g.lines.size() == 35);
    CHECK(a.g.line_size == 3);
    for (const auto& v : a.g.vertices)
        CHECK(std::find(b.g.vertices.begin(), b.g.vertices.end(), v) == b.g.vertices.end());

    // same-class generators meet in even codimension
    const Field& F = *a.F;
    for (const auto& u : a.g.vertices)
        for (const auto& w : a.g.vertices) CHECK((u.k - meet(F, u, w).k) % 2 == 0);
    for (const auto& u : a.g.vertices)
        for (const auto& w : b.g.vertices) CHECK((u.k - meet(F, u, w).k) % 2 == 1);

    // rank 3 is odd: opposition crosses to the other class
    CHECK_FALSE(a.opp.self_typed);
    CHECK(a.opp.objects.size() == 15);
    CHECK(a.opp.num_objects() == 15);
    for (std::uint32_t v = 0; v < 15; ++v) CHECK(opp_degree(a.opp, v) == 8);

    // rank 4 is even: opposition stays inside the class
    Geometry d4 = make("Q+(7,2) halfspin:A");
    CHECK(d4.g.vertices.size() == 135);
    CHECK(d4.g.lines.size() == 1575);
    CHECK(d4.opp.self_typed);
}

TEST_CASE("opposition matrices are symmetric and irreflexive for self-typed kinds") {
    for (const char* spec : {"W(3,3)", "W(5,2) i=3", "Q-(5,2) i=2", "Q+(7,2) halfspin:B"}) {
        CAPTURE(spec);
        Geometry g = make(spec);
        REQUIRE(g.opp.self_typed);
        const std::size_t nv = g.g.vertices.size();
        for (std::uint32_t u = 0; u < nv; ++u) {
            CHECK_FALSE(g.opp.opp[u].test(u));
            for (std::uint32_t w = u + 1; w < nv; ++w)
                CHECK(g.opp.opp[u].test(w) == g.opp.opp[w].test(u));
        }
    }
}

TEST_CASE("non-opposition columns are the transposed complement") {
    Geometry g = make("Q(4,2) i=2");
    const std::size_t nv = g.g.vertices.size();
    REQUIRE(g.opp.nonopp_col.size() == g.opp.num_objects());
    for (std::uint32_t u = 0; u < nv; ++u)
        for (std::uint32_t o = 0; o < g.opp.num_objects(); ++o)
            CHECK(g.opp.nonopp_col[o].test(u) == !g.opp.opp[u].test(o));
}

TEST_CASE("generator opposition equals the pointwise perp condition") {
    Geometry g = make("W(5,2) i=3");
    const PolarSpace& p = *g.polar;
    const auto& gens = g.g.vertices;
    for (std::size_t i = 0; i < gens.size(); i += 7)
        for (std::size_t j = 0; j < gens.size(); j += 5) {
            bool direct = is_opposite_singular(p, gens[i], gens[j]);
            CHECK(direct == g.opp.opp[i].test(j));
            if (direct) CHECK(meet(*g.F, gens[i], gens[j]).k == 0);
        }
}

TEST_CASE("glue decomposition separates opposite from non-opposite generators") {
    Geometry g = make("W(5,2) i=3");
    const PolarSpace& p = *g.polar;
    const Field& F = *g.F;
    const auto& gens = g.g.vertices;
    std::mt19937 rng(424242);
    int opposite_seen = 0, blocked_seen = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::uint32_t i = rng() % gens.size(), j = rng() % gens.size();
        if (i == j) continue;
        // A runs over the points of U
        auto upts = projective_points(F, gens[i]);
        Subspace A = row_space(F, 6, {upts[rng() % upts.size()]});
        GlueCheck gc = glue_decomposition(p, gens[i], gens[j], A);
        if (g.opp.opp[i].test(j)) {
            ++opposite_seen;
            CHECK(gc.meets_match);
            CHECK(gc.locally_opposite);
            CHECK(gc.b.k == 2);  // hyperplane of W
            CHECK(gc.s.k == 3);
        } else {
            // the glue collapses unless A is exactly the (then 1-dim) meet
            Subspace m = meet(F, gens[i], gens[j]);
            if (!(m == A)) {
                ++blocked_seen;
                CHECK_FALSE(gc.meets_match);
            }
        }
    }
    CHECK(opposite_seen > 20);
    CHECK(blocked_seen > 20);
}

TEST_CASE("geometry and opposition audits pass across kinds") {
    for (const char* spec : {"PG(3,3) i=2", "W(5,2) i=2", "Q-(5,2) i=2", "H(3,4)",
                             "Q+(5,2) halfspin:A", "Q+(7,2) halfspin:A"}) {
        CAPTURE(spec);
        Geometry g = make(spec);
        CHECK(audit_geometry(g.g).ok);
        CHECK(audit_opposition(g.g, g.opp).ok);
    }
}

TEST_CASE("local opposition detects the failing direction") {
    Geometry g = make("W(5,2) i=2");
    const PolarSpace& p = *g.polar;
    const auto& ls = g.g.vertices;
    unsigned both = 0, neither = 0;
    for (std::size_t i = 0; i < ls.size(); i += 11)
        for (std::size_t j = i + 1; j < ls.size(); j += 13) {
            bool lo = is_locally_opposite(p, ls[i], ls[j]);
            bool full = g.opp.opp[i].test(j);
            if (full) CHECK(lo);  // opposite implies locally opposite
            if (lo) ++both;
            else ++neither;
        }
    CHECK(both > 0);
    CHECK(neither > 0);
}
