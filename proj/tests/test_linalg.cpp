#include "doctest.h"

#include "opp/linalg.hpp"

#include <algorithm>
#include <climits>
#include <random>

using namespace opp;

TEST_CASE("row_space canonicalizes any generating set of the same subspace") {
    Field F(3);
    // three generating sets of one plane in GF(3)^4
    std::vector<Vec> g1 = {{1, 0, 2, 1}, {0, 1, 1, 1}};
    std::vector<Vec> g2 = {{1, 1, 0, 2}, {2, 0, 1, 2}};          // sums/scalings of g1
    std::vector<Vec> g3 = {{1, 0, 2, 1}, {0, 1, 1, 1}, {1, 1, 0, 2}};  // redundant row
    Subspace a = row_space(F, 4, g1);
    Subspace b = row_space(F, 4, g2);
    Subspace c = row_space(F, 4, g3);
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.k == 2);
    for (const auto& v : g2) CHECK(contains_vector(F, a, v));
}

TEST_CASE("meet and join satisfy the dimension formula") {
    Field F(2);
    auto planes = enumerate_subspaces(F, 4, 2);
    REQUIRE(planes.size() == gaussian_binomial(4, 2, 2));
    for (std::size_t i = 0; i < planes.size(); ++i)
        for (std::size_t j = i; j < planes.size(); ++j) {
            Subspace m = meet(F, planes[i], planes[j]);
            Subspace s = join(F, planes[i], planes[j]);
            CHECK(m.k + s.k == 4);
            CHECK(contains(F, planes[i], m));
            CHECK(contains(F, s, planes[j]));
        }
}

TEST_CASE("subspace enumeration is sorted, duplicate-free, and complete") {
    for (unsigned q : {2u, 3u, 4u}) {
        CAPTURE(q);
        Field F(q);
        for (unsigned k = 0; k <= 3; ++k) {
            auto subs = enumerate_subspaces(F, 3, k);
            CHECK(subs.size() == gaussian_binomial(3, k, q));
            CHECK(std::is_sorted(subs.begin(), subs.end()));
            CHECK(std::adjacent_find(subs.begin(), subs.end()) == subs.end());
        }
    }
}

TEST_CASE("subspaces_of agrees with filtering the global enumeration") {
    Field F(2);
    Subspace big = row_space(F, 5, {{1, 0, 0, 1, 0}, {0, 1, 0, 0, 1}, {0, 0, 1, 1, 1}});
    auto inside = subspaces_of(F, big, 2);
    auto all = enumerate_subspaces(F, 5, 2);
    std::vector<Subspace> expect;
    for (const auto& s : all)
        if (contains(F, big, s)) expect.push_back(s);
    CHECK(inside == expect);
    CHECK(inside.size() == gaussian_binomial(3, 2, 2));
}

TEST_CASE("projective points are normalized and count (q^k - 1)/(q - 1)") {
    Field F(4);
    Subspace plane = row_space(F, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto pts = projective_points(F, plane);
    CHECK(pts.size() == 21);
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    for (const auto& v : pts) {
        auto lead = std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
        REQUIRE(lead != v.end());
        CHECK(*lead == 1);
    }
}

TEST_CASE("gaussian binomials: exact values and saturation") {
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(4, 1, 3) == 40);
    CHECK(gaussian_binomial(6, 3, 3) == 33880);
    CHECK(gaussian_binomial(5, 2, 4) == 5797);
    CHECK(gaussian_binomial(3, 1, 16) == 273);
    // symmetric in k <-> n-k
    for (unsigned n = 1; n <= 6; ++n)
        for (unsigned k = 0; k <= n; ++k)
            CHECK(gaussian_binomial(n, k, 3) == gaussian_binomial(n, n - k, 3));
    // far past 2^64: must clamp, not wrap
    CHECK(gaussian_binomial(60, 30, 16) == ULLONG_MAX);
}

TEST_CASE("SolveContext recombines coordinates over the original rows") {
    Field F(5);
    std::vector<Vec> rows = {{1, 2, 0, 4}, {0, 1, 1, 3}, {2, 0, 1, 0}};
    SolveContext ctx(F, rows);

    std::mt19937 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        Vec coef = {static_cast<std::uint8_t>(rng() % 5), static_cast<std::uint8_t>(rng() % 5),
                    static_cast<std::uint8_t>(rng() % 5)};
        Vec v(4, 0);
        for (unsigned r = 0; r < 3; ++r)
            for (unsigned c = 0; c < 4; ++c)
                v[c] = F.add(v[c], F.mul(coef[r], rows[r][c]));
        auto x = ctx.solve(v);
        REQUIRE(x.has_value());
        CHECK(*x == coef);
    }
    // outside the span (the RREF of the rows has no pivot in column 2)
    CHECK_FALSE(ctx.solve({0, 0, 1, 0}).has_value());
    // dependent rows are a caller bug
    CHECK_THROWS(SolveContext(F, {{1, 2, 0, 4}, {2, 4, 0, 3}, {3, 1, 0, 2}}));
}

TEST_CASE("rref is a projection: applying it twice changes nothing") {
    Field F(7);
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Vec> m(3, Vec(5));
        for (auto& row : m)
            for (auto& x : row) x = static_cast<std::uint8_t>(rng() % 7);
        std::vector<Vec> once = m;
        unsigned r1 = rref(F, 5, once);
        std::vector<Vec> twice = once;
        unsigned r2 = rref(F, 5, twice);
        CHECK(r1 == r2);
        CHECK(once == twice);
        CHECK(once.size() == r1);
    }
}
