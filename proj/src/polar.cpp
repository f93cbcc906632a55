#include "opp/polar.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace opp {

namespace {

// Acceptance rule for the singular-subspace search.  Each subspace X has a
// unique greedy generating sequence g_1 < g_2 < ... (g_{j+1} is the least
// point of X outside the span of the earlier ones), so X is produced from
// exactly one (parent, point) pair: the parent spanned by g_1..g_{d-1} and
// p = g_d.  A candidate extension (S, p) matches that shape iff p exceeds
// the last greedy pick of S and p is the least new point of span(S, p).
struct SearchNode {
    Subspace s;
    Bitset pts;
    Bitset perp;
    std::uint32_t last;
};

}  // namespace

PolarSpace::PolarSpace(Form form) : form_(std::move(form)) {
    const Field& F = field();
    const unsigned n = form_.n();

    for (auto& v : projective_points(F, full_space(F, n)))
        if (form_.isotropic_point(v)) points_.push_back(std::move(v));
    const std::uint32_t np = static_cast<std::uint32_t>(points_.size());
    point_index_.reserve(np);
    for (std::uint32_t i = 0; i < np; ++i) point_index_.emplace(points_[i], i);

    adj_.assign(np, Bitset(np));
    for (std::uint32_t i = 0; i < np; ++i) {
        adj_[i].set(i);
        for (std::uint32_t j = i + 1; j < np; ++j)
            if (form_.bilinear(points_[i], points_[j]) == 0) {
                adj_[i].set(j);
                adj_[j].set(i);
            }
    }

    singulars_.assign(n, {});
    singular_pts_.assign(n, {});
    auto point_set_of = [&](const Subspace& s) {
        Bitset b(np);
        for (const Vec& v : projective_points(F, s)) b.set(point_index_.at(v));
        return b;
    };
    std::vector<SearchNode> stack;
    for (std::uint32_t i = 0; i < np; ++i) {
        Bitset pb(np);
        pb.set(i);
        stack.push_back({row_space(F, n, {points_[i]}), std::move(pb), adj_[i], i});
        while (!stack.empty()) {
            SearchNode node = std::move(stack.back());
            stack.pop_back();
            const unsigned d = node.s.k;
            singulars_[d - 1].push_back(node.s);
            singular_pts_[d - 1].push_back(node.pts);
            for (std::uint32_t p = node.perp.next(node.last + 1); p < np;
                 p = node.perp.next(p + 1)) {
                if (node.pts.test(p)) continue;
                Subspace x = span_with(F, node.s, points_[p]);
                Bitset xpts = point_set_of(x);
                std::uint32_t least_new = np;
                for (std::uint32_t b = xpts.next(0); b < np; b = xpts.next(b + 1))
                    if (!node.pts.test(b)) {
                        least_new = b;
                        break;
                    }
                if (least_new != p) continue;
                Bitset cperp = node.perp;
                cperp &= adj_[p];
                stack.push_back({std::move(x), std::move(xpts), std::move(cperp), p});
            }
        }
    }
    while (!singulars_.empty() && singulars_.back().empty()) {
        singulars_.pop_back();
        singular_pts_.pop_back();
    }
    rank_ = static_cast<unsigned>(singulars_.size());
    if (rank_ < 2) throw std::invalid_argument(form_.name() + ": rank below 2, no lines");

    for (unsigned d = 1; d <= rank_; ++d) {
        auto& subs = singulars_[d - 1];
        auto& pts = singular_pts_[d - 1];
        std::vector<std::uint32_t> ord(subs.size());
        std::iota(ord.begin(), ord.end(), 0u);
        std::sort(ord.begin(), ord.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return subs[a] < subs[b]; });
        std::vector<Subspace> s2(subs.size());
        std::vector<Bitset> p2(pts.size());
        for (std::size_t i = 0; i < ord.size(); ++i) {
            s2[i] = std::move(subs[ord[i]]);
            p2[i] = std::move(pts[ord[i]]);
        }
        subs = std::move(s2);
        pts = std::move(p2);
    }
    singular_index_.resize(rank_);
    for (unsigned d = 1; d <= rank_; ++d) {
        auto& m = singular_index_[d - 1];
        m.reserve(singulars_[d - 1].size());
        for (std::uint32_t i = 0; i < singulars_[d - 1].size(); ++i)
            m.emplace(singulars_[d - 1][i], i);
    }

    lines_.reserve(singulars_[1].size());
    for (const Bitset& b : singular_pts_[1]) {
        std::vector<std::uint32_t> l;
        b.for_each([&](std::uint32_t i) { l.push_back(i); });
        lines_.push_back(std::move(l));
    }
    s_ = static_cast<unsigned>(lines_.at(0).size()) - 1;
    for (const auto& l : lines_)
        if (l.size() != s_ + 1)
            throw std::logic_error(form_.name() + ": line sizes are not constant");

    std::vector<std::uint32_t> gens_per_submax(singulars_[rank_ - 2].size(), 0);
    for (const Subspace& g : singulars_[rank_ - 1])
        for (const Subspace& h : subspaces_of(F, g, rank_ - 1))
            ++gens_per_submax[singular_index_[rank_ - 2].at(h)];
    t_ = gens_per_submax.at(0) - 1;
    for (auto c : gens_per_submax)
        if (c != t_ + 1)
            throw std::logic_error(form_.name() + ": generator counts are not constant");
}

std::uint32_t PolarSpace::point_index(const Vec& v) const {
    auto it = point_index_.find(v);
    if (it == point_index_.end()) throw std::out_of_range("not a point of the polar space");
    return it->second;
}

const std::vector<Subspace>& PolarSpace::singulars(unsigned d) const {
    if (d < 1 || d > rank_) throw std::out_of_range("singular dimension out of range");
    return singulars_[d - 1];
}

const std::vector<Bitset>& PolarSpace::singular_point_sets(unsigned d) const {
    if (d < 1 || d > rank_) throw std::out_of_range("singular dimension out of range");
    return singular_pts_[d - 1];
}

std::uint32_t PolarSpace::singular_index(const Subspace& s) const {
    if (s.k < 1 || s.k > rank_) throw std::out_of_range("singular dimension out of range");
    return singular_index_[s.k - 1].at(s);
}

Bitset PolarSpace::perp_set(const std::vector<std::uint32_t>& pts) const {
    Bitset acc(points_.size());
    acc.set_all();
    for (auto i : pts) acc &= adj_[i];
    return acc;
}

Bitset PolarSpace::perp_set(const Bitset& pts) const {
    Bitset acc(points_.size());
    acc.set_all();
    pts.for_each([&](std::uint32_t i) { acc &= adj_[i]; });
    return acc;
}

std::vector<std::uint32_t> PolarSpace::hyperbolic_line(std::uint32_t x, std::uint32_t y) const {
    if (x == y || adj_[x].test(y))
        throw std::invalid_argument("hyperbolic line needs two non-collinear points");
    Bitset mid = adj_[x];
    mid &= adj_[y];
    Bitset h = perp_set(mid);
    std::vector<std::uint32_t> out;
    h.for_each([&](std::uint32_t i) { out.push_back(i); });
    return out;
}

bool PolarSpace::is_large_hyperbolic_line(const std::vector<std::uint32_t>& h) const {
    Bitset hb(points_.size());
    for (auto i : h) hb.set(i);
    std::vector<std::uint32_t> p;
    perp_set(h).for_each([&](std::uint32_t i) { p.push_back(i); });
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b) {
            Bitset pair = adj_[p[a]];
            pair &= adj_[p[b]];
            if (!(pair == hb)) return false;
        }
    return true;
}

Subspace PolarSpace::project(const Subspace& u, const Subspace& w) const {
    return meet(field(), form_.perp(w), u);
}

Residue::Residue(const PolarSpace& parent, const Subspace& u) : parent_(&parent), u_(u) {
    const Field& F = parent.field();
    const unsigned n = parent.form().n();
    if (u.k < 1 || u.k + 2u > parent.rank())
        throw std::invalid_argument("residue base must leave rank at least 2");
    if (!parent.form().singular(u))
        throw std::invalid_argument("residue base must be totally singular");

    Subspace uperp = parent.form().perp(u);
    Subspace grown = u;
    for (unsigned r = 0; r < uperp.k; ++r) {
        Vec v = uperp.row(r);
        if (contains_vector(F, grown, v)) continue;
        comp_.push_back(v);
        grown = span_with(F, grown, v);
    }
    const unsigned m = static_cast<unsigned>(comp_.size());

    std::vector<Vec> basis;
    for (unsigned r = 0; r < u.k; ++r) basis.push_back(u.row(r));
    for (const Vec& c : comp_) basis.push_back(c);
    solver_ = std::make_unique<SolveContext>(F, std::move(basis));

    const Form& pf = parent.form();
    std::vector<std::uint8_t> mat(static_cast<std::size_t>(m) * m, 0);
    if (pf.kind() == FormKind::Quadratic) {
        for (unsigned i = 0; i < m; ++i) {
            mat[static_cast<std::size_t>(i) * m + i] = pf.quadratic(comp_[i]);
            for (unsigned j = i + 1; j < m; ++j)
                mat[static_cast<std::size_t>(i) * m + j] = pf.bilinear(comp_[i], comp_[j]);
        }
    } else {
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j)
                mat[static_cast<std::size_t>(i) * m + j] = pf.bilinear(comp_[i], comp_[j]);
    }
    space_ = std::make_unique<PolarSpace>(
        Form::from_matrix(pf.field_ptr(), pf.kind(), pf.quad_kind(), m, std::move(mat)));
    if (space_->rank() != parent.rank() - u.k)
        throw std::logic_error("residue rank mismatch");

    lift_.assign(space_->num_points(), Subspace{});
    std::vector<bool> hit(space_->num_points(), false);
    for (const Subspace& x : parent.singulars(u.k + 1)) {
        if (!contains(F, x, u)) continue;
        std::uint32_t i = push_point(x);
        if (hit[i]) throw std::logic_error("residue point hit twice");
        hit[i] = true;
        lift_[i] = x;
    }
    for (bool h : hit)
        if (!h) throw std::logic_error("residue point not reached");
    (void)n;
}

Vec Residue::quotient_coords(const Vec& v) const {
    auto sol = solver_->solve(v);
    if (!sol) throw std::invalid_argument("vector outside the perp of the residue base");
    return Vec(sol->begin() + u_.k, sol->end());
}

std::uint32_t Residue::push_point(const Subspace& x) const {
    const Field& F = parent_->field();
    if (x.k != u_.k + 1 || !contains(F, x, u_))
        throw std::invalid_argument("push_point needs a one-step extension of the base");
    for (unsigned r = 0; r < x.k; ++r) {
        Vec qc = quotient_coords(x.row(r));
        unsigned lead = 0;
        while (lead < qc.size() && qc[lead] == 0) ++lead;
        if (lead == qc.size()) continue;
        std::uint8_t inv = F.inv(qc[lead]);
        for (auto& e : qc) e = F.mul(e, inv);
        return space_->point_index(qc);
    }
    throw std::logic_error("extension collapses into the base");
}

Subspace Residue::push_subspace(const Subspace& x) const {
    const Field& F = parent_->field();
    if (x.k <= u_.k || !contains(F, x, u_))
        throw std::invalid_argument("push_subspace needs a proper extension of the base");
    std::vector<Vec> rows;
    for (unsigned r = 0; r < x.k; ++r) rows.push_back(quotient_coords(x.row(r)));
    Subspace s = row_space(F, static_cast<unsigned>(comp_.size()), rows);
    if (s.k != x.k - u_.k) throw std::logic_error("quotient dimension mismatch");
    return s;
}

const Subspace& Residue::lift_point(std::uint32_t res_pt) const { return lift_.at(res_pt); }

Subspace Residue::lift_subspace(const Subspace& res_sub) const {
    const Field& F = parent_->field();
    const unsigned n = parent_->form().n();
    std::vector<Vec> rows;
    for (unsigned r = 0; r < u_.k; ++r) rows.push_back(u_.row(r));
    for (unsigned r = 0; r < res_sub.k; ++r) {
        Vec v(n, 0);
        Vec mu = res_sub.row(r);
        for (unsigned j = 0; j < comp_.size(); ++j) {
            if (mu[j] == 0) continue;
            for (unsigned c = 0; c < n; ++c)
                v[c] = F.add(v[c], F.mul(mu[j], comp_[j][c]));
        }
        rows.push_back(std::move(v));
    }
    Subspace s = row_space(F, n, rows);
    if (s.k != u_.k + res_sub.k) throw std::logic_error("lift dimension mismatch");
    return s;
}

IncidenceGQ IncidenceGQ::from_polar(const PolarSpace& p) {
    if (p.rank() != 2) throw std::invalid_argument("incidence view needs a rank-2 space");
    IncidenceGQ gq;
    gq.npts = static_cast<std::uint32_t>(p.num_points());
    gq.s = p.s();
    gq.t = p.t();
    gq.lines = p.lines();
    gq.adj.reserve(gq.npts);
    for (std::uint32_t i = 0; i < gq.npts; ++i) gq.adj.push_back(p.adj(i));
    return gq;
}

IncidenceGQ IncidenceGQ::dual() const {
    IncidenceGQ d;
    d.npts = static_cast<std::uint32_t>(lines.size());
    d.s = t;
    d.t = s;
    d.lines.assign(npts, {});
    for (std::uint32_t l = 0; l < lines.size(); ++l)
        for (auto p : lines[l]) d.lines[p].push_back(l);
    d.adj.assign(d.npts, Bitset(d.npts));
    for (std::uint32_t i = 0; i < d.npts; ++i) d.adj[i].set(i);
    for (const auto& pencil : d.lines)
        for (std::size_t a = 0; a < pencil.size(); ++a)
            for (std::size_t b = a + 1; b < pencil.size(); ++b) {
                d.adj[pencil[a]].set(pencil[b]);
                d.adj[pencil[b]].set(pencil[a]);
            }
    return d;
}

AxiomReport audit_polar_axioms(const PolarSpace& p) {
    const std::uint32_t np = static_cast<std::uint32_t>(p.num_points());
    auto fail = [](std::string d) { return AxiomReport{false, std::move(d)}; };

    for (std::uint32_t i = 0; i < np; ++i) {
        if (!p.adj(i).test(i)) return fail("collinearity is not reflexive");
        if (p.adj(i).count() == np) return fail("degenerate: a point collinear to all");
    }
    for (std::uint32_t i = 0; i < np; ++i)
        for (std::uint32_t j = i + 1; j < np; ++j)
            if (p.adj(i).test(j) != p.adj(j).test(i))
                return fail("collinearity is not symmetric");

    const auto& lines = p.lines();
    if (lines.empty()) return fail("no lines");
    std::unordered_set<std::uint64_t> pair_seen;
    for (const auto& l : lines) {
        if (l.size() < 3) return fail("a line with fewer than 3 points");
        for (std::size_t a = 0; a < l.size(); ++a)
            for (std::size_t b = a + 1; b < l.size(); ++b) {
                std::uint64_t key = (static_cast<std::uint64_t>(l[a]) << 32) | l[b];
                if (!pair_seen.insert(key).second)
                    return fail("two lines share two points");
            }
    }

    for (std::uint32_t x = 0; x < np; ++x)
        for (const auto& l : lines) {
            unsigned c = 0;
            bool on = false;
            for (auto y : l) {
                if (y == x) on = true;
                if (p.adj(x).test(y)) ++c;
            }
            if (on) {
                if (c != l.size()) return fail("a line not inside a point's perp");
            } else if (c != 1 && c != l.size()) {
                return fail("one-or-all violated");
            }
        }
    return {};
}

AxiomReport audit_order(const PolarSpace& p) {
    auto fail = [](std::string d) { return AxiomReport{false, std::move(d)}; };
    for (const auto& l : p.lines())
        if (l.size() != p.s() + 1) return fail("line size differs from s+1");

    const Field& F = p.field();
    std::vector<std::uint32_t> count(p.singulars(p.rank() - 1).size(), 0);
    for (const Subspace& g : p.singulars(p.rank()))
        for (const Subspace& h : subspaces_of(F, g, p.rank() - 1))
            ++count[p.singular_index(h)];
    for (auto c : count)
        if (c != p.t() + 1) return fail("generator count per submaximal differs from t+1");

    std::vector<std::uint32_t> per_point(p.num_points(), 0);
    for (const auto& l : p.lines())
        for (auto i : l) ++per_point[i];
    for (auto c : per_point)
        if (c != per_point[0]) return fail("line count per point is not constant");
    return {};
}

AxiomReport audit_residue(const PolarSpace& p, const Subspace& u) {
    auto fail = [](std::string d) { return AxiomReport{false, std::move(d)}; };
    Residue res(p, u);
    const PolarSpace& rs = res.space();
    const Field& F = p.field();

    if (rs.rank() != p.rank() - u.k) return fail("residue rank mismatch");
    for (std::uint32_t i = 0; i < rs.num_points(); ++i) {
        const Subspace& x = res.lift_point(i);
        if (x.k != u.k + 1 || !contains(F, x, u) || !p.form().singular(x))
            return fail("lifted point is not a singular extension of the base");
        if (res.push_point(x) != i) return fail("push of lift is not the identity");
    }

    // Residue collinearity must mirror ambient spans: two residue points are
    // collinear exactly when their lifts span a singular subspace.
    for (std::uint32_t i = 0; i < rs.num_points(); ++i)
        for (std::uint32_t j = i + 1; j < rs.num_points(); ++j) {
            Subspace joined = join(F, res.lift_point(i), res.lift_point(j));
            bool amb = joined.k == u.k + 2 && p.form().singular(joined);
            if (amb != rs.adj(i).test(j)) return fail("residue collinearity mismatch");
        }

    std::size_t ambient_through = 0;
    for (const Subspace& x : p.singulars(u.k + 2))
        if (contains(F, x, u)) ++ambient_through;
    if (ambient_through != rs.singulars(2).size())
        return fail("residue line count mismatch");
    for (const Subspace& l2 : rs.singulars(2)) {
        Subspace x = res.lift_subspace(l2);
        if (!p.form().singular(x)) return fail("lift of a residue line is not singular");
        if (!(res.push_subspace(x) == l2)) return fail("push of a lifted line mismatch");
    }
    return {};
}

}  // namespace opp
