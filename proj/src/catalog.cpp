#include "opp/catalog.hpp"

#include <algorithm>
#include <stdexcept>

namespace opp {

const char* family_name(WitnessFamily f) {
    switch (f) {
        case WitnessFamily::GrassmannLine: return "GrassmannLine";
        case WitnessFamily::DualPolarLine: return "DualPolarLine";
        case WitnessFamily::HalfSpinLine: return "HalfSpinLine";
        case WitnessFamily::HyperbolicLineInResidue: return "HyperbolicLineInResidue";
        case WitnessFamily::DualHyperbolicLineInResidue:
            return "DualHyperbolicLineInResidue";
        case WitnessFamily::OvoidInIdealSubGQ: return "OvoidInIdealSubGQ";
        case WitnessFamily::SpreadInSubGQ: return "SpreadInSubGQ";
        case WitnessFamily::GQOvoidInSubGQ: return "GQOvoidInSubGQ";
        case WitnessFamily::GQSpreadInSubGQ: return "GQSpreadInSubGQ";
        case WitnessFamily::Unclassified: return "Unclassified";
    }
    return "?";
}

SubGQ ovoid_closure(const IncidenceGQ& gq, const std::vector<std::uint32_t>& tset) {
    SubGQ out;
    if (tset.size() < 2) return out;
    for (std::size_t a = 0; a < tset.size(); ++a)
        for (std::size_t b = a + 1; b < tset.size(); ++b)
            if (gq.adj[tset[a]].test(tset[b])) return out;

    Bitset x(gq.npts);
    for (auto p : tset) x.set(p);
    for (std::size_t a = 0; a < tset.size(); ++a)
        for (std::size_t b = a + 1; b < tset.size(); ++b) {
            Bitset pairperp = gq.adj[tset[a]];
            pairperp &= gq.adj[tset[b]];
            x |= pairperp;
        }
    x.for_each([&](std::uint32_t p) { out.xpoints.push_back(p); });

    for (const auto& l : gq.lines) {
        std::vector<std::uint32_t> in;
        for (auto p : l)
            if (x.test(p)) in.push_back(p);
        if (in.size() >= 2) out.xlines.push_back(std::move(in));
    }
    if (out.xlines.empty()) return out;

    const unsigned lsz = static_cast<unsigned>(out.xlines[0].size());
    for (const auto& l : out.xlines)
        if (l.size() != lsz) return out;
    out.s = lsz - 1;

    // Local indexing and closure collinearity.
    std::unordered_map<std::uint32_t, std::uint32_t> loc;
    for (std::uint32_t i = 0; i < out.xpoints.size(); ++i) loc.emplace(out.xpoints[i], i);
    const std::uint32_t nx = static_cast<std::uint32_t>(out.xpoints.size());
    std::vector<Bitset> cadj(nx, Bitset(nx));
    for (std::uint32_t i = 0; i < nx; ++i) cadj[i].set(i);
    std::vector<std::uint32_t> degree(nx, 0);
    std::vector<std::vector<std::uint32_t>> local_lines;
    for (const auto& l : out.xlines) {
        std::vector<std::uint32_t> ll;
        for (auto p : l) ll.push_back(loc.at(p));
        for (std::size_t a = 0; a < ll.size(); ++a) {
            ++degree[ll[a]];
            for (std::size_t b = a + 1; b < ll.size(); ++b) {
                if (cadj[ll[a]].test(ll[b])) return out;  // two lines, two points
                cadj[ll[a]].set(ll[b]);
                cadj[ll[b]].set(ll[a]);
            }
        }
        local_lines.push_back(std::move(ll));
    }
    for (auto d : degree)
        if (d != degree[0]) return out;
    if (degree[0] == 0) return out;
    out.t = degree[0] - 1;

    // One-or-all in the closure: a point off a line is closure-collinear
    // with exactly one of its points.
    for (std::uint32_t i = 0; i < nx; ++i)
        for (const auto& ll : local_lines) {
            unsigned c = 0;
            bool on = false;
            for (auto j : ll) {
                if (j == i) on = true;
                if (cadj[i].test(j)) ++c;
            }
            if (on) continue;
            if (c != 1) return out;
        }

    if (static_cast<unsigned long long>(nx) !=
        static_cast<unsigned long long>(1 + out.s) * (1 + out.s * out.t))
        return out;

    // T is an ovoid of the closure: one point per induced line.
    for (const auto& l : out.xlines) {
        unsigned hit = 0;
        for (auto p : l)
            if (std::find(tset.begin(), tset.end(), p) != tset.end()) ++hit;
        if (hit != 1) return out;
    }
    if (tset.size() != 1ull + static_cast<unsigned long long>(out.s) * out.t) return out;

    out.ok = true;
    return out;
}

bool audit_ovoid_hits(const IncidenceGQ& gq, const std::vector<std::uint32_t>& tset,
                      const SubGQ& sub) {
    Bitset tb(gq.npts), xb(gq.npts);
    for (auto p : tset) tb.set(p);
    for (auto p : sub.xpoints) xb.set(p);
    for (std::uint32_t p = 0; p < gq.npts; ++p) {
        Bitset seen = gq.adj[p];
        seen &= tb;
        std::size_t c = seen.count();
        std::size_t want = tb.test(p) ? 1 : xb.test(p) ? sub.t + 1 : 1;
        if (c != want) return false;
    }
    return true;
}

Classifier::Classifier(const Geometry& geom) : geom_(&geom) {}

const Residue* Classifier::residue_for(const Subspace& u) {
    if (u.k == 0) return nullptr;
    auto it = residues_.find(u);
    if (it == residues_.end())
        it = residues_.emplace(u, std::make_unique<Residue>(*geom_->polar, u)).first;
    return it->second.get();
}

std::optional<Subspace> Classifier::common_subspace(
    const std::vector<std::uint32_t>& witness, unsigned dim) const {
    const Field& F = *geom_->F;
    Subspace m = geom_->g.vertices[witness.at(0)];
    for (std::size_t i = 1; i < witness.size() && m.k >= dim; ++i)
        m = meet(F, m, geom_->g.vertices[witness[i]]);
    if (m.k != dim) return std::nullopt;
    if (dim == 0) return zero_subspace(m.n);
    return m;
}

bool Classifier::hyperbolic_line_in_residue(const std::vector<std::uint32_t>& witness,
                                            ClassifyResult& out) {
    auto u = common_subspace(witness, geom_->g.type - 1);
    if (!u) return false;
    const Residue* res = residue_for(*u);
    const PolarSpace& space = res ? res->space() : *geom_->polar;

    std::vector<std::uint32_t> pushed;
    for (auto w : witness)
        pushed.push_back(res ? res->push_point(geom_->g.vertices[w]) : w);
    std::sort(pushed.begin(), pushed.end());

    std::uint32_t px = pushed[0], py = pushed[0];
    bool found = false;
    for (std::size_t a = 0; a < pushed.size() && !found; ++a)
        for (std::size_t b = a + 1; b < pushed.size() && !found; ++b)
            if (!space.adj(pushed[a]).test(pushed[b])) {
                px = pushed[a];
                py = pushed[b];
                found = true;
            }
    if (!found) return false;
    if (space.hyperbolic_line(px, py) != pushed) return false;
    out.family = WitnessFamily::HyperbolicLineInResidue;
    out.common_dim = u->k;
    return true;
}

namespace {

// Residue line index of a generator through the base (dimension u.k + 2).
std::uint32_t residue_line_index(const Geometry& geom, const Residue* res,
                                 const Subspace& x) {
    if (!res) return geom.polar->singular_index(x);
    return res->space().singular_index(res->push_subspace(x));
}

std::vector<std::uint32_t> transversals_of(const IncidenceGQ& gq,
                                           const std::vector<std::uint32_t>& lines) {
    std::vector<Bitset> lpts;
    for (auto l : lines) {
        Bitset b(gq.npts);
        for (auto p : gq.lines[l]) b.set(p);
        lpts.push_back(std::move(b));
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t l = 0; l < gq.lines.size(); ++l) {
        bool all = true;
        Bitset b(gq.npts);
        for (auto p : gq.lines[l]) b.set(p);
        for (const auto& t : lpts)
            if (!b.intersects(t)) {
                all = false;
                break;
            }
        if (all) out.push_back(l);
    }
    return out;
}

}  // namespace

bool Classifier::dual_hyperbolic_line(const std::vector<std::uint32_t>& witness,
                                      ClassifyResult& out) {
    const unsigned r = geom_->polar->rank();
    auto u = common_subspace(witness, r - 2);
    if (!u) return false;
    const Residue* res = residue_for(*u);
    const PolarSpace& space = res ? res->space() : *geom_->polar;

    std::vector<std::uint32_t> pushed;
    for (auto w : witness)
        pushed.push_back(residue_line_index(*geom_, res, geom_->g.vertices[w]));
    std::sort(pushed.begin(), pushed.end());

    IncidenceGQ gq = IncidenceGQ::from_polar(space);
    // Pairwise disjoint residue lines.
    for (std::size_t a = 0; a < pushed.size(); ++a)
        for (std::size_t b = a + 1; b < pushed.size(); ++b) {
            const auto& la = gq.lines[pushed[a]];
            const auto& lb = gq.lines[pushed[b]];
            for (auto p : la)
                if (std::find(lb.begin(), lb.end(), p) != lb.end()) return false;
        }

    std::vector<std::uint32_t> trans = transversals_of(gq, pushed);
    if (trans.size() != pushed.size()) return false;
    if (transversals_of(gq, trans) != pushed) return false;
    out.family = WitnessFamily::DualHyperbolicLineInResidue;
    out.common_dim = u->k;
    out.transversals = static_cast<unsigned>(trans.size());
    return true;
}

bool Classifier::residue_ovoid(const std::vector<std::uint32_t>& witness,
                               ClassifyResult& out) {
    auto u = common_subspace(witness, geom_->g.type - 1);
    if (!u) return false;
    const Residue* res = residue_for(*u);
    const PolarSpace& space = res ? res->space() : *geom_->polar;
    if (space.rank() != 2) return false;

    std::vector<std::uint32_t> pushed;
    for (auto w : witness)
        pushed.push_back(res ? res->push_point(geom_->g.vertices[w]) : w);

    IncidenceGQ gq = IncidenceGQ::from_polar(space);
    SubGQ sub = ovoid_closure(gq, pushed);
    if (!sub.ok) return false;
    // Ideal subquadrangle of order (t,t) inside (s,t).
    if (sub.t != gq.t || sub.s != gq.t) return false;
    out.family = WitnessFamily::OvoidInIdealSubGQ;
    out.common_dim = u->k;
    out.subgq_order = {sub.s, sub.t};
    return true;
}

bool Classifier::residue_spread(const std::vector<std::uint32_t>& witness,
                                ClassifyResult& out) {
    const unsigned r = geom_->polar->rank();
    auto u = common_subspace(witness, r - 2);
    if (!u) return false;
    const Residue* res = residue_for(*u);
    const PolarSpace& space = res ? res->space() : *geom_->polar;

    std::vector<std::uint32_t> pushed;
    for (auto w : witness)
        pushed.push_back(residue_line_index(*geom_, res, geom_->g.vertices[w]));

    IncidenceGQ gq = IncidenceGQ::from_polar(space);
    if (gq.t % gq.s != 0) return false;
    SubGQ sub = ovoid_closure(gq.dual(), pushed);
    if (!sub.ok) return false;
    // Measured in the dual; the ambient reading swaps the entries.
    unsigned ps = sub.t, pt = sub.s;
    if (ps != gq.s || pt != gq.t / gq.s) return false;
    out.family = WitnessFamily::SpreadInSubGQ;
    out.common_dim = u->k;
    out.subgq_order = {ps, pt};
    return true;
}

bool Classifier::ambient_gq_ovoid(const std::vector<std::uint32_t>& witness,
                                  ClassifyResult& out) {
    IncidenceGQ gq = IncidenceGQ::from_polar(*geom_->polar);
    SubGQ sub = ovoid_closure(gq, witness);
    if (!sub.ok) return false;
    out.family = WitnessFamily::GQOvoidInSubGQ;
    out.subgq_order = {sub.s, sub.t};
    return true;
}

bool Classifier::ambient_gq_spread(const std::vector<std::uint32_t>& witness,
                                   ClassifyResult& out) {
    IncidenceGQ gq = IncidenceGQ::from_polar(*geom_->polar);
    SubGQ sub = ovoid_closure(gq.dual(), witness);
    if (!sub.ok) return false;
    out.family = WitnessFamily::GQSpreadInSubGQ;
    out.subgq_order = {sub.t, sub.s};
    return true;
}

ClassifyResult Classifier::classify(const std::vector<std::uint32_t>& witness) {
    ClassifyResult out;
    std::vector<std::uint32_t> sw = witness;
    std::sort(sw.begin(), sw.end());

    if (sw.size() == geom_->g.line_size && geom_->g.has_line(sw)) {
        switch (geom_->g.kind) {
            case GeomKind::DualPolar: out.family = WitnessFamily::DualPolarLine; break;
            case GeomKind::HalfSpin: out.family = WitnessFamily::HalfSpinLine; break;
            default: out.family = WitnessFamily::GrassmannLine; break;
        }
        return out;
    }

    const PolarSpace* p = geom_->polar.get();
    if (p && sw.size() >= 2) {
        const GeomKind kind = geom_->g.kind;
        if (kind == GeomKind::Polar &&
            (p->is_symplectic() || p->is_quadric(QuadKind::Parabolic)) &&
            hyperbolic_line_in_residue(sw, out))
            return out;
        if (kind == GeomKind::DualPolar && dual_hyperbolic_line(sw, out)) return out;
        if (kind == GeomKind::Polar && p->small_hermitian() && p->rank() >= 3 &&
            geom_->g.type == p->rank() - 1 && residue_ovoid(sw, out))
            return out;
        if (kind == GeomKind::DualPolar && p->is_quadric(QuadKind::Elliptic) &&
            p->rank() >= 3 && residue_spread(sw, out))
            return out;
        if (kind == GeomKind::Polar && geom_->g.type == 1 && p->rank() == 2 &&
            ambient_gq_ovoid(sw, out))
            return out;
        if (kind == GeomKind::DualPolar && p->rank() == 2 && ambient_gq_spread(sw, out))
            return out;
    }
    out = {};
    return out;
}

bool Classifier::is_geometric_line(const std::vector<std::uint32_t>& witness) const {
    const auto& opp = geom_->opp;
    Bitset tb(geom_->g.vertices.size());
    for (auto w : witness) tb.set(w);
    const std::size_t m = witness.size();
    for (const Bitset& col : opp.nonopp_col) {
        Bitset hit = col;
        hit &= tb;
        std::size_t c = hit.count();
        if (c != 1 && c != m) return false;
    }
    return true;
}

bool Classifier::expected_geometric(WitnessFamily f) {
    switch (f) {
        case WitnessFamily::OvoidInIdealSubGQ:
        case WitnessFamily::SpreadInSubGQ:
        case WitnessFamily::GQOvoidInSubGQ:
        case WitnessFamily::GQSpreadInSubGQ: return false;
        default: return true;
    }
}

}  // namespace opp
