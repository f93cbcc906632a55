// Acceptance gate for the census pipeline.  Each criterion rebuilds its
// geometries, runs the exhaustive search, and compares against counts that
// were frozen from independent derivations (closed formulas or the naive
// enumerator).  One line is printed per criterion; the process exits
// nonzero when any of A1..A11 fails.  A12 is a stretch target: it is
// reported but never affects the exit code.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "opp/census.hpp"
#include "opp/geometry_id.hpp"

namespace {

using opp::WitnessFamily;

std::map<std::string, opp::Geometry>& geometry_cache() {
    static std::map<std::string, opp::Geometry> cache;
    return cache;
}

const opp::Geometry& geo(const std::string& spec) {
    auto& cache = geometry_cache();
    auto it = cache.find(spec);
    if (it == cache.end())
        it = cache.emplace(spec, opp::build_geometry(opp::parse_geometry(spec))).first;
    return it->second;
}

struct CensusOpts {
    std::uint64_t cap = 64;
    bool geometric = false;
};

opp::CensusReport census(const std::string& spec, unsigned m, CensusOpts o = {}) {
    opp::CensusConfig cfg;
    cfg.m = m;
    cfg.witness_cap = o.cap;
    cfg.check_geometric = o.geometric;
    return opp::run_census(geo(spec), cfg);
}

const opp::FamilyTally* tally(const opp::CensusReport& rep, WitnessFamily f) {
    for (const auto& t : rep.families)
        if (t.family == f) return &t;
    return nullptr;
}

// The census must be clean (exhaustive, minimal, fully classified) and its
// nonzero families must match the expected map exactly.
std::string check_census(const opp::CensusReport& rep,
                         const std::map<WitnessFamily, std::uint64_t>& expected) {
    if (rep.partial) return rep.geometry + ": search flagged partial";
    if (!rep.minimality_ok) return rep.geometry + ": minimality violated";
    if (!rep.classification_complete) return rep.geometry + ": unclassified witnesses";
    for (const auto& t : rep.families) {
        auto it = expected.find(t.family);
        const std::uint64_t want = it == expected.end() ? 0 : it->second;
        if (t.count != want)
            return rep.geometry + ": family " + opp::family_name(t.family) + " count " +
                   std::to_string(t.count) + ", expected " + std::to_string(want);
    }
    std::uint64_t total = 0;
    for (const auto& [f, c] : expected) total += c;
    if (rep.num_blockers != total)
        return rep.geometry + ": " + std::to_string(rep.num_blockers) +
               " witnesses, expected " + std::to_string(total);
    return {};
}

// Vertex of a type-1 geometry -> index of its polar point.
std::uint32_t point_of(const opp::Geometry& g, std::uint32_t v) {
    return g.polar->point_index(g.g.vertices[v].row(0));
}

std::vector<std::uint32_t> points_of(const opp::Geometry& g,
                                     const std::vector<std::uint32_t>& witness) {
    std::vector<std::uint32_t> pts;
    for (auto v : witness) pts.push_back(point_of(g, v));
    std::sort(pts.begin(), pts.end());
    return pts;
}

opp::Subspace iterated_meet(const opp::Geometry& g, const std::vector<std::uint32_t>& w) {
    opp::Subspace m = g.g.vertices[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) m = opp::meet(*g.F, m, g.g.vertices[w[i]]);
    return m;
}

opp::Subspace iterated_join(const opp::Geometry& g, const std::vector<std::uint32_t>& w) {
    opp::Subspace j = g.g.vertices[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) j = opp::join(*g.F, j, g.g.vertices[w[i]]);
    return j;
}

// Naive reference enumerator: every ascending m-tuple whose opposition
// rows intersect to nothing, in lexicographic order.
std::vector<std::vector<std::uint32_t>> naive_blockers(const opp::OppositionContext& opp,
                                                       unsigned m) {
    const std::uint32_t V = static_cast<std::uint32_t>(opp.opp.size());
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> tuple;
    std::vector<opp::Bitset> surv;
    auto rec = [&](auto&& self, std::uint32_t from) -> void {
        if (tuple.size() == m) {
            if (surv.back().none()) out.push_back(tuple);
            return;
        }
        for (std::uint32_t v = from; v < V; ++v) {
            opp::Bitset next = surv.empty() ? opp.opp[v] : surv.back();
            if (!surv.empty()) next &= opp.opp[v];
            tuple.push_back(v);
            surv.push_back(std::move(next));
            self(self, v + 1);
            tuple.pop_back();
            surv.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

struct Criterion {
    std::string id;
    std::string what;
    double budget_s;  // wall-clock target; exceeding it fails the criterion
    std::function<std::string()> run;
    bool binding = true;
};

// ---- criterion bodies -------------------------------------------------

std::string crit_a1() {
    for (auto [spec, m, q] : {std::tuple{"PG(2,2)", 3u, 2u}, {"PG(2,3)", 4u, 3u}}) {
        const std::uint64_t nlines = opp::gaussian_binomial(3, 2, q);
        if (nlines != std::uint64_t{q} * q + q + 1) return "line-count formula mismatch";
        auto rep = census(spec, m, {.cap = 64});
        if (auto e = check_census(rep, {{WitnessFamily::GrassmannLine, nlines}}); !e.empty())
            return e;
        // with the cap above every witness was kept: they are the lines
        const auto* t = tally(rep, WitnessFamily::GrassmannLine);
        auto got = t->samples;
        auto want = geo(spec).g.lines;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want) return std::string(spec) + ": witness set differs from the line set";
    }
    return {};
}

std::string crit_a2() {
    auto rep = census("PG(3,2) i=2", 3, {.cap = 128});
    const std::uint64_t pencils =
        opp::gaussian_binomial(4, 1, 2) * opp::gaussian_binomial(3, 2, 2);
    if (auto e = check_census(rep, {{WitnessFamily::GrassmannLine, pencils}}); !e.empty())
        return e;
    const opp::Geometry& g = geo("PG(3,2) i=2");
    for (const auto& w : tally(rep, WitnessFamily::GrassmannLine)->samples) {
        if (iterated_meet(g, w).k != 1) return "pencil witness without a common point";
        if (iterated_join(g, w).k != 3) return "pencil witness without a common plane";
    }
    return {};
}

std::string check_hyperbolic_witnesses(const std::string& spec, const opp::CensusReport& rep) {
    const opp::Geometry& g = geo(spec);
    const auto* t = tally(rep, WitnessFamily::HyperbolicLineInResidue);
    if (t->samples.size() != t->count) return spec + ": witness cap clipped the samples";
    for (const auto& w : t->samples) {
        auto pts = points_of(g, w);
        auto hl = g.polar->hyperbolic_line(pts[0], pts[1]);
        std::sort(hl.begin(), hl.end());
        if (hl != pts) return spec + ": witness is not a full hyperbolic line";
        if (!g.polar->is_large_hyperbolic_line(hl))
            return spec + ": witness hyperbolic line is not large";
    }
    return {};
}

std::string crit_a3() {
    auto rep2 = census("W(3,2)", 3, {.cap = 64});
    if (auto e = check_census(rep2, {{WitnessFamily::GrassmannLine, 15},
                                     {WitnessFamily::HyperbolicLineInResidue, 20}});
        !e.empty())
        return e;
    if (auto e = check_hyperbolic_witnesses("W(3,2)", rep2); !e.empty()) return e;

    auto rep3 = census("W(3,3)", 4, {.cap = 128});
    if (auto e = check_census(rep3, {{WitnessFamily::GrassmannLine, 40},
                                     {WitnessFamily::HyperbolicLineInResidue, 90}});
        !e.empty())
        return e;
    return check_hyperbolic_witnesses("W(3,3)", rep3);
}

std::string crit_a4() {
    auto rep = census("Q(4,2) i=2", 3, {.cap = 64});
    if (auto e = check_census(rep, {{WitnessFamily::DualPolarLine, 15},
                                    {WitnessFamily::DualHyperbolicLineInResidue, 20}});
        !e.empty())
        return e;
    const opp::Geometry& g = geo("Q(4,2) i=2");
    auto meets = [&](std::uint32_t a, std::uint32_t b) {
        return opp::meet(*g.F, g.g.vertices[a], g.g.vertices[b]).k >= 1;
    };
    auto transversals = [&](const std::vector<std::uint32_t>& trip) {
        std::vector<std::uint32_t> out;
        for (std::uint32_t h = 0; h < g.g.vertices.size(); ++h) {
            bool all = true;
            for (auto w : trip) all = all && meets(h, w);
            if (all) out.push_back(h);
        }
        return out;
    };
    for (const auto& w : tally(rep, WitnessFamily::DualHyperbolicLineInResidue)->samples) {
        auto tr = transversals(w);
        if (tr.size() != 3) return "regulus witness with transversal count " +
                                   std::to_string(tr.size());
        if (transversals(tr) != w) return "double transversals do not close onto the witness";
    }
    return {};
}

std::string crit_a5() {
    auto rep = census("H(3,4)", 5, {.cap = 256});
    if (auto e = check_census(rep, {{WitnessFamily::GrassmannLine, 27},
                                    {WitnessFamily::GQOvoidInSubGQ, 216}});
        !e.empty())
        return e;
    const opp::PolarSpace& amb = *geo("H(3,4)").polar;
    const std::uint64_t lines = std::uint64_t{1 + amb.t()} * (1 + amb.s() * amb.t());
    if (lines != 27 || amb.lines().size() != lines) return "line-count formula mismatch";
    const auto* t = tally(rep, WitnessFamily::GQOvoidInSubGQ);
    if (!t->subgq_order || *t->subgq_order != std::pair{2u, 2u})
        return "ovoid subquadrangle order is not (2,2)";
    if (t->samples.size() != t->count) return "witness cap clipped the samples";
    const opp::Geometry& g = geo("H(3,4)");
    const opp::IncidenceGQ gq = opp::IncidenceGQ::from_polar(*g.polar);
    for (const auto& w : t->samples) {
        auto tset = points_of(g, w);
        opp::SubGQ sub = opp::ovoid_closure(gq, tset);
        if (!sub.ok || sub.s != 2 || sub.t != 2)
            return "ovoid witness closure is not a subquadrangle of order (2,2)";
        if (!opp::audit_ovoid_hits(gq, tset, sub))
            return "ovoid witness fails the collinearity hit counts";
    }
    return {};
}

std::string crit_a6() {
    auto rep = census("Q-(5,2) i=2", 5, {.cap = 256});
    if (auto e = check_census(rep, {{WitnessFamily::DualPolarLine, 27},
                                    {WitnessFamily::GQSpreadInSubGQ, 216}});
        !e.empty())
        return e;
    const auto* sp = tally(rep, WitnessFamily::GQSpreadInSubGQ);
    if (!sp->subgq_order || *sp->subgq_order != std::pair{2u, 2u})
        return "spread subquadrangle order is not (2,2)";
    const opp::Geometry& g = geo("Q-(5,2) i=2");
    for (const auto& w : tally(rep, WitnessFamily::DualPolarLine)->samples)
        if (iterated_meet(g, w).k != 1) return "pencil witness without a common point";
    return {};
}

std::string crit_a7() {
    auto rep = census("Q+(5,2) halfspin:A", 3, {.cap = 64});
    if (auto e = check_census(rep, {{WitnessFamily::HalfSpinLine, 35}}); !e.empty()) return e;
    const opp::Geometry& g = geo("Q+(5,2) halfspin:A");
    const auto* t = tally(rep, WitnessFamily::HalfSpinLine);
    if (t->samples.size() != t->count) return "witness cap clipped the samples";
    for (const auto& w : t->samples)
        if (iterated_meet(g, w).k + 2 != g.g.vertices[w[0]].k)
            return "half-spin witness triple lacks a codimension-2 common subspace";
    auto pts = census("Q+(5,2)", 3);
    return check_census(pts, {{WitnessFamily::GrassmannLine, 105}});
}

std::string crit_a8() {
    const std::vector<std::pair<std::string, unsigned>> instances = {
        {"PG(2,2)", 3},  {"PG(2,3)", 4},          {"PG(3,2) i=2", 3},
        {"W(3,2)", 3},   {"W(3,3)", 4},           {"Q(4,2) i=2", 3},
        {"H(3,4)", 5},   {"Q-(5,2) i=2", 5},      {"Q+(5,2) halfspin:A", 3},
        {"Q+(5,2)", 3},
    };
    for (const auto& [spec, m] : instances) {
        for (unsigned k = 2; k < m; ++k) {
            opp::CensusConfig cfg;
            cfg.m = k;
            opp::SearchOutcome out = opp::find_blockers(geo(spec).opp, cfg);
            if (!out.minimality_ok || !out.blockers.empty())
                return spec + ": a set of size " + std::to_string(k) +
                       " already blocks every opposite";
        }
    }
    return {};
}

std::string crit_a9() {
    if (auto e = check_census(census("W(5,2)", 3),
                              {{WitnessFamily::GrassmannLine, 315},
                               {WitnessFamily::HyperbolicLineInResidue, 336}});
        !e.empty())
        return e;
    if (auto e = check_census(census("W(5,2) i=2", 3),
                              {{WitnessFamily::GrassmannLine, 945},
                               {WitnessFamily::HyperbolicLineInResidue, 1260}});
        !e.empty())
        return e;
    return check_census(census("W(5,2) i=3", 3),
                        {{WitnessFamily::DualPolarLine, 315},
                         {WitnessFamily::DualHyperbolicLineInResidue, 1260}});
}

std::string crit_a10() {
    struct Row {
        const char* spec;
        unsigned m;
        bool ovoid_exception;
    };
    for (const Row& r : {Row{"PG(3,2)", 3, false}, Row{"W(3,3)", 4, false},
                         Row{"W(5,3)", 4, false}, Row{"H(3,4)", 5, true}}) {
        auto rep = census(r.spec, r.m, {.geometric = true});
        if (!rep.geometric_checked || !rep.geometric_ok)
            return std::string(r.spec) + ": geometric-line conformance failed";
        if (rep.violation_exit()) return std::string(r.spec) + ": census not clean";
        for (const auto& t : rep.families) {
            if (t.count == 0) continue;
            const bool exceptional =
                r.ovoid_exception && t.family == WitnessFamily::GQOvoidInSubGQ;
            if (exceptional) {
                if (t.geometric_expected || t.geometric_holds != 0 ||
                    t.geometric_fails != t.count)
                    return std::string(r.spec) + ": ovoid witnesses behave like lines";
            } else if (!t.geometric_expected || t.geometric_holds != t.count ||
                       t.geometric_fails != 0) {
                return std::string(r.spec) + ": family " + opp::family_name(t.family) +
                       " does not consist of geometric lines";
            }
        }
    }
    return {};
}

std::string crit_a11() {
    // pruned search vs the naive enumerator on everything small enough
    const std::vector<std::pair<std::string, unsigned>> instances = {
        {"PG(2,2)", 3},  {"PG(2,3)", 4},  {"PG(3,2)", 3},      {"PG(3,2) i=2", 3},
        {"W(3,2)", 3},   {"W(3,3)", 4},   {"Q(4,2)", 3},       {"Q(4,2) i=2", 3},
        {"Q(4,3)", 4},   {"Q(4,3) i=2", 4}, {"W(5,2)", 3},     {"W(5,2) i=3", 3},
        {"Q+(5,2)", 3},  {"Q+(5,2) halfspin:A", 3},            {"Q+(7,2) halfspin:A", 3},
        {"Q-(5,2)", 3},  {"Q-(5,2) i=2", 5}, {"H(3,4) i=2", 3},
    };
    for (const auto& [spec, m] : instances) {
        opp::CensusConfig cfg;
        cfg.m = m;
        opp::SearchOutcome pruned = opp::find_blockers(geo(spec).opp, cfg);
        if (!pruned.minimality_ok) return spec + ": minimality violated";
        if (pruned.blockers != naive_blockers(geo(spec).opp, m))
            return spec + ": pruned search differs from the naive enumerator";
    }

    // decomposition property: an opposite pair glues through every point
    {
        const opp::Geometry& g = geo("W(5,2) i=3");
        const opp::PolarSpace& p = *g.polar;
        unsigned checked = 0;
        for (std::uint32_t u = 0; u < g.g.vertices.size(); u += 17) {
            const std::size_t w = g.opp.opp[u].next(u % 29);
            if (w >= g.opp.opp[u].size()) continue;
            const opp::Subspace& U = g.g.vertices[u];
            const opp::Subspace& W = g.g.vertices[w];
            for (const auto& A : opp::subspaces_of(*g.F, U, 1)) {
                opp::GlueCheck gc = opp::glue_decomposition(p, U, W, A);
                if (!gc.meets_match || !gc.locally_opposite || gc.b.k != 2 || gc.s.k != 3)
                    return "opposite generator pair fails the glue decomposition";
                ++checked;
            }
        }
        if (checked < 40) return "too few glue samples";
    }

    // structural audits on a spread of spaces
    for (const char* spec : {"W(3,3)", "Q(4,3)", "Q+(5,2)", "Q-(5,2)", "H(3,4)", "W(5,2)"}) {
        const opp::PolarSpace& p = *geo(spec).polar;
        if (auto r = opp::audit_polar_axioms(p); !r.ok)
            return std::string(spec) + ": " + r.detail;
        if (auto r = opp::audit_order(p); !r.ok) return std::string(spec) + ": " + r.detail;
        for (std::uint32_t x = 0; x < p.num_points(); ++x) {
            if (!p.adj(x).test(x)) return std::string(spec) + ": collinearity not reflexive";
            for (std::uint32_t y = x + 1; y < p.num_points(); ++y)
                if (p.adj(x).test(y) != p.adj(y).test(x))
                    return std::string(spec) + ": collinearity not symmetric";
        }
        for (std::uint32_t x = 0; x < p.num_points(); x += 7)
            for (std::uint32_t y = 0; y < p.num_points(); y += 5) {
                if (x == y || p.adj(x).test(y)) continue;
                auto hl = p.hyperbolic_line(x, y);
                if (std::find(hl.begin(), hl.end(), x) == hl.end() ||
                    std::find(hl.begin(), hl.end(), y) == hl.end())
                    return std::string(spec) + ": double perp loses its generating pair";
            }
    }

    // thick panels, and residues that are again polar spaces
    for (const char* spec : {"W(3,3)", "Q(4,3)", "Q-(5,2)", "H(3,4)", "W(5,2)"}) {
        const opp::PolarSpace& p = *geo(spec).polar;
        if (p.s() < 2 || p.t() < 2) return std::string(spec) + ": thin panel";
    }
    {
        const opp::PolarSpace& p = *geo("W(5,2)").polar;
        if (auto r = opp::audit_residue(p, p.singulars(1)[0]); !r.ok)
            return std::string("W(5,2): ") + r.detail;
    }
    return {};
}

std::string crit_a12() {
    opp::CensusConfig cfg;
    cfg.m = 5;
    cfg.witness_cap = 8;
    cfg.restrict_first = true;
    cfg.time_budget = 300;
    auto rep = opp::run_census(geo("Q-(7,2) i=3"), cfg);
    if (rep.partial)
        return "time budget exhausted after " + std::to_string(rep.roots_completed) +
               " roots (non-blocking)";
    if (auto e = check_census(rep, {{WitnessFamily::DualPolarLine, 7},
                                    {WitnessFamily::SpreadInSubGQ, 168}});
        !e.empty())
        return e;
    if (!rep.extrapolation_exact) return "restricted extrapolation inexact";
    const auto* dp = tally(rep, WitnessFamily::DualPolarLine);
    const auto* sp = tally(rep, WitnessFamily::SpreadInSubGQ);
    if (dp->predicted_total != 1071 || sp->predicted_total != 25704)
        return "extrapolated totals differ from the frozen values";
    if (!sp->subgq_order || *sp->subgq_order != std::pair{2u, 2u})
        return "spread subquadrangle order is not (2,2)";
    return {};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"A1", "projective plane: smallest blockers are exactly the lines", 1, crit_a1},
        {"A2", "projective line Grassmannian: every witness is a plane pencil", 5, crit_a2},
        {"A3", "symplectic quadrangle points: lines and large hyperbolic lines", 30, crit_a3},
        {"A4", "parabolic quadrangle generators: pencils and three-transversal reguli", 10,
         crit_a4},
        {"A5", "hermitian quadrangle points: lines and ovoids of (2,2) subquadrangles", 120,
         crit_a5},
        {"A6", "elliptic quadric lines: pencils and spreads of (2,2) subquadrangles", 120,
         crit_a6},
        {"A7", "half-spin triples share a codimension-2 singular subspace", 10, crit_a7},
        {"A8", "no proper subset of any witness already blocks", 120, crit_a8},
        {"A9", "rank-3 symplectic census agrees at all three vertex types", 600, crit_a9},
        {"A10", "witness families match the geometric-line test, ovoids excepted", 300,
         crit_a10},
        {"A11", "pruned search equals brute force; structural audits hold", 600, crit_a11},
        {"A12", "restricted census of a rank-4 elliptic quadric (stretch)", 600, crit_a12,
         false},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = c.run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = detail.empty();
        if (pass && secs > c.budget_s) {
            pass = false;
            detail = "exceeded the " + std::to_string(static_cast<int>(c.budget_s)) +
                     "s time target";
        }
        std::ostringstream line;
        line << std::left << std::setw(4) << c.id << std::setw(72) << c.what
             << (pass ? "pass" : (c.binding ? "FAIL" : "miss")) << "  " << std::fixed
             << std::setprecision(1) << secs << "s";
        std::cout << line.str() << "\n";
        if (!pass) {
            std::cout << "      " << detail << "\n";
            if (c.binding) ++failures;
        }
    }
    if (failures == 0)
        std::cout << "acceptance: all binding criteria pass\n";
    else
        std::cout << "acceptance: " << failures << " binding criteria FAILED\n";
    return failures == 0 ? 0 : 1;
}
