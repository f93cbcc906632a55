#include "opp/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace opp {

namespace {

using Clock = std::chrono::steady_clock;

// b := bits at indices >= from (b must already have the right size).
void fill_tail(Bitset& b, std::size_t from) {
    b.set_all();
    auto& w = b.raw();
    const std::size_t full = std::min(from / 64, w.size());
    for (std::size_t i = 0; i < full; ++i) w[i] = 0;
    if (full < w.size() && (from & 63)) w[full] &= ~std::uint64_t{0} << (from & 63);
}

struct RootResult {
    std::vector<std::vector<std::uint32_t>> blockers;
    bool done = false;
};

struct SharedSearch {
    const OppositionContext* opp;
    const CensusConfig* cfg;
    std::uint32_t nv = 0;
    std::vector<std::uint32_t> roots;
    std::atomic<std::uint32_t> next{0};
    std::atomic<bool> stop{false};
    std::atomic<std::uint64_t> nodes{0};
    bool has_deadline = false;
    Clock::time_point deadline;
    std::mutex violation_mu;
    bool violated = false;
    std::vector<std::uint32_t> violation;
    std::vector<RootResult> results;

    void record_violation(const std::vector<std::uint32_t>& path) {
        std::lock_guard<std::mutex> lk(violation_mu);
        if (!violated) {
            violated = true;
            violation = path;
        }
        stop.store(true, std::memory_order_relaxed);
    }
};

class Worker {
public:
    explicit Worker(SharedSearch& sh) : sh_(&sh) {}

    void run() {
        while (true) {
            std::uint32_t slot = sh_->next.fetch_add(1, std::memory_order_relaxed);
            if (slot >= sh_->roots.size()) break;
            if (expired()) break;
            search_root(slot);
            sh_->nodes.fetch_add(local_nodes_, std::memory_order_relaxed);
            local_nodes_ = 0;
        }
    }

private:
    SharedSearch* sh_;
    std::uint64_t local_nodes_ = 0;
    std::vector<std::uint32_t> path_;
    std::vector<Bitset> scratch_;  // survivor set per depth, reused across nodes
    Bitset completion_;            // candidate mask for the final level

    bool expired() {
        if (sh_->stop.load(std::memory_order_relaxed)) return true;
        if (sh_->has_deadline && Clock::now() >= sh_->deadline) {
            sh_->stop.store(true, std::memory_order_relaxed);
            return true;
        }
        return false;
    }

    bool tick() {
        if (++local_nodes_ % 8192 == 0 && expired()) return true;
        return false;
    }

    void search_root(std::uint32_t slot) {
        const OppositionContext& opp = *sh_->opp;
        const unsigned m = sh_->cfg->m;
        RootResult& out = sh_->results[slot];
        const std::uint32_t root = sh_->roots[slot];

        path_.assign(1, root);
        if (scratch_.size() < m) scratch_.assign(m, Bitset());
        if (completion_.size() != sh_->nv) completion_ = Bitset(sh_->nv);
        const Bitset& s0 = opp.opp[root];
        if (m == 1) {
            if (s0.none()) out.blockers.push_back(path_);
            out.done = !sh_->stop.load(std::memory_order_relaxed);
            return;
        }
        if (s0.none()) {
            sh_->record_violation(path_);
            return;
        }
        bool ok = extend(s0, out);
        out.done = ok && !sh_->stop.load(std::memory_order_relaxed);
    }

    // path_ holds d chosen vertices with non-empty survivor set `s`.
    // Returns false when aborted by stop/deadline.
    bool extend(const Bitset& s, RootResult& out) {
        const OppositionContext& opp = *sh_->opp;
        const unsigned m = sh_->cfg->m;
        const std::uint32_t nv = sh_->nv;
        const std::uint32_t from = path_.back() + 1;

        if (path_.size() + 1 == m) {
            // Completions are vertices beyond the path end that are
            // non-opposite to every survivor:  intersect the survivor
            // columns, bailing out as soon as nothing remains.
            Bitset& c = completion_;
            fill_tail(c, from);
            ++local_nodes_;
            bool alive = true;
            for (std::size_t o = s.next(0); o < s.size() && alive;
                 o = s.next(o + 1))
                alive = c.and_assign_any(opp.nonopp_col[o]);
            if (alive)
                c.for_each([&](std::uint32_t v) {
                    path_.push_back(v);
                    out.blockers.push_back(path_);
                    path_.pop_back();
                });
            return !tick();
        }

        Bitset& s2 = scratch_[path_.size()];
        for (std::uint32_t u = from; u < nv; ++u) {
            s2 = s;
            bool alive = s2.and_assign_any(opp.opp[u]);
            if (tick()) return false;
            path_.push_back(u);
            if (!alive) {
                sh_->record_violation(path_);
                path_.pop_back();
                return false;
            }
            bool cont = extend(s2, out);
            path_.pop_back();
            if (!cont) return false;
        }
        return true;
    }
};

}  // namespace

SearchOutcome find_blockers(const OppositionContext& opp, const CensusConfig& cfg) {
    SearchOutcome out;
    if (cfg.m == 0) return out;
    const std::uint32_t nv = static_cast<std::uint32_t>(opp.opp.size());

    SharedSearch sh;
    sh.opp = &opp;
    sh.cfg = &cfg;
    sh.nv = nv;
    if (cfg.restrict_first) {
        if (nv > 0) sh.roots.push_back(0);
    } else {
        sh.roots.resize(nv);
        for (std::uint32_t i = 0; i < nv; ++i) sh.roots[i] = i;
    }
    sh.results.resize(sh.roots.size());
    if (cfg.time_budget > 0) {
        sh.has_deadline = true;
        sh.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                         std::chrono::duration<double>(cfg.time_budget));
    }

    unsigned jobs = cfg.jobs ? cfg.jobs : std::thread::hardware_concurrency();
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(sh.roots.size())));
    if (jobs <= 1) {
        Worker(sh).run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < jobs; ++i)
            pool.emplace_back([&sh] { Worker(sh).run(); });
        for (auto& t : pool) t.join();
    }

    out.nodes = sh.nodes.load();
    out.minimality_ok = !sh.violated;
    out.violation = sh.violation;

    std::uint32_t prefix = 0;
    while (prefix < sh.results.size() && sh.results[prefix].done) ++prefix;
    out.roots_completed = prefix;
    out.partial = prefix < sh.results.size() && !sh.violated;
    for (std::uint32_t r = 0; r < prefix; ++r)
        for (auto& b : sh.results[r].blockers) out.blockers.push_back(std::move(b));
    return out;
}

CensusReport run_census(const Geometry& geom, const CensusConfig& cfg) {
    const auto t0 = Clock::now();
    CensusReport rep;
    rep.geometry = to_string(geom.desc);
    rep.m = cfg.m;
    rep.num_vertices = geom.g.vertices.size();
    rep.num_objects = geom.opp.num_objects();
    rep.num_lines = geom.g.lines.size();
    rep.restricted = cfg.restrict_first;
    rep.witness_cap = cfg.witness_cap;
    rep.geometric_checked = cfg.check_geometric;

    SearchOutcome search = find_blockers(geom.opp, cfg);
    rep.nodes = search.nodes;
    rep.partial = search.partial;
    rep.roots_completed = search.roots_completed;
    rep.minimality_ok = search.minimality_ok;
    rep.minimality_violation = search.violation;
    rep.num_blockers = search.blockers.size();

    auto scale = [&](std::uint64_t count) -> std::uint64_t {
        if (!cfg.restrict_first) return count;
        unsigned __int128 total = static_cast<unsigned __int128>(count) * rep.num_vertices;
        if (total % cfg.m != 0) rep.extrapolation_exact = false;
        return static_cast<std::uint64_t>(total / cfg.m);
    };

    Classifier cls(geom);
    std::vector<FamilyTally> tally;
    auto slot = [&](WitnessFamily f) -> FamilyTally& {
        for (auto& t : tally)
            if (t.family == f) return t;
        tally.push_back({});
        tally.back().family = f;
        tally.back().geometric_expected = Classifier::expected_geometric(f);
        return tally.back();
    };
    for (const auto& w : search.blockers) {
        ClassifyResult c = cls.classify(w);
        FamilyTally& t = slot(c.family);
        ++t.count;
        if (!t.subgq_order && c.subgq_order) t.subgq_order = c.subgq_order;
        if (t.samples.size() < cfg.witness_cap) t.samples.push_back(w);
        if (c.family == WitnessFamily::Unclassified) rep.classification_complete = false;
        if (cfg.check_geometric) {
            bool gl = cls.is_geometric_line(w);
            if (gl)
                ++t.geometric_holds;
            else
                ++t.geometric_fails;
        }
    }
    std::sort(tally.begin(), tally.end(), [](const FamilyTally& a, const FamilyTally& b) {
        return static_cast<int>(a.family) < static_cast<int>(b.family);
    });
    for (auto& t : tally) {
        t.predicted_total = scale(t.count);
        if (cfg.check_geometric) {
            const bool conforms =
                t.geometric_expected ? t.geometric_fails == 0 : t.geometric_holds == 0;
            if (!conforms) rep.geometric_ok = false;
        }
    }
    rep.predicted_blockers = scale(rep.num_blockers);
    rep.families = std::move(tally);
    rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
}

}  // namespace opp
