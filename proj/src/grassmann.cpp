#include "opp/grassmann.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace opp {

std::uint32_t PointLineGeometry::index_of(const Subspace& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || !(*it == v)) throw std::out_of_range("not a vertex");
    return static_cast<std::uint32_t>(it - vertices.begin());
}

bool PointLineGeometry::has_line(const std::vector<std::uint32_t>& sorted_tuple) const {
    return std::binary_search(lines.begin(), lines.end(), sorted_tuple);
}

PointLineGeometry build_projective(const Field& F, unsigned dim_proj, unsigned i) {
    const unsigned n = dim_proj + 1;
    if (i < 1 || i > dim_proj) throw std::invalid_argument("projective type out of range");
    PointLineGeometry g;
    g.kind = GeomKind::Projective;
    g.type = i;
    g.vertices = enumerate_subspaces(F, n, i);

    std::vector<Subspace> tops = enumerate_subspaces(F, n, i + 1);
    for (const Subspace& w : tops) {
        std::vector<Subspace> members = subspaces_of(F, w, i);
        std::vector<Subspace> bottoms =
            i == 1 ? std::vector<Subspace>{zero_subspace(n)} : subspaces_of(F, w, i - 1);
        for (const Subspace& u : bottoms) {
            std::vector<std::uint32_t> line;
            for (const Subspace& x : members)
                if (contains(F, x, u)) line.push_back(g.index_of(x));
            std::sort(line.begin(), line.end());
            g.lines.push_back(std::move(line));
        }
    }
    std::sort(g.lines.begin(), g.lines.end());
    g.line_size = static_cast<unsigned>(g.lines.at(0).size());
    return g;
}

PointLineGeometry build_polar_grassmannian(const PolarSpace& p, unsigned i) {
    const Field& F = p.field();
    const unsigned r = p.rank();
    if (i < 1 || i > r) throw std::invalid_argument("polar type out of range");
    if (p.is_quadric(QuadKind::Hyperbolic) && i + 2 > r)
        throw std::invalid_argument(
            "hyperbolic quadrics split their top types; use the half-spin build");
    PointLineGeometry g;
    g.kind = i == r ? GeomKind::DualPolar : GeomKind::Polar;
    g.type = i;
    g.vertices = p.singulars(i);
    g.vertex_pts = p.singular_point_sets(i);

    if (i == r) {
        // Pencils over submaximals.
        g.lines.assign(p.singulars(r - 1).size(), {});
        for (std::uint32_t v = 0; v < g.vertices.size(); ++v)
            for (const Subspace& h : subspaces_of(F, g.vertices[v], r - 1))
                g.lines[p.singular_index(h)].push_back(v);
        for (auto& l : g.lines) std::sort(l.begin(), l.end());
    } else {
        for (const Subspace& w : p.singulars(i + 1)) {
            std::vector<Subspace> members = subspaces_of(F, w, i);
            std::vector<Subspace> bottoms =
                i == 1 ? std::vector<Subspace>{zero_subspace(p.form().n())}
                       : subspaces_of(F, w, i - 1);
            for (const Subspace& u : bottoms) {
                std::vector<std::uint32_t> line;
                for (const Subspace& x : members)
                    if (contains(F, x, u)) line.push_back(p.singular_index(x));
                std::sort(line.begin(), line.end());
                g.lines.push_back(std::move(line));
            }
        }
    }
    std::sort(g.lines.begin(), g.lines.end());
    g.line_size = static_cast<unsigned>(g.lines.at(0).size());
    return g;
}

namespace {

// Class split of the generators of a hyperbolic quadric: even-codimension
// intersection is an equivalence with exactly two classes.  Returns one
// flag per generator; generator 0 is in class 'A'.
std::vector<char> half_spin_classes(const PolarSpace& p) {
    const Field& F = p.field();
    const auto& gens = p.singulars(p.rank());
    std::vector<char> cls(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        unsigned codim = p.rank() - meet(F, gens[0], gens[i]).k;
        cls[i] = codim % 2 == 0 ? 'A' : 'B';
    }
    // The split must be consistent: equal classes <=> even codimension.
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            unsigned codim = p.rank() - meet(F, gens[i], gens[j]).k;
            if ((codim % 2 == 0) != (cls[i] == cls[j]))
                throw std::logic_error("generator classes are not an even-codim split");
        }
    return cls;
}

}  // namespace

PointLineGeometry build_half_spin(const PolarSpace& p, char cls) {
    const Field& F = p.field();
    const unsigned r = p.rank();
    if (!p.is_quadric(QuadKind::Hyperbolic))
        throw std::invalid_argument("half-spin needs a hyperbolic quadric");
    if (r < 3) throw std::invalid_argument("half-spin needs rank at least 3");
    if (cls != 'A' && cls != 'B') throw std::invalid_argument("half-spin class must be A or B");

    std::vector<char> split = half_spin_classes(p);
    PointLineGeometry g;
    g.kind = GeomKind::HalfSpin;
    g.type = r;
    g.halfspin_class = cls;
    const auto& gens = p.singulars(r);
    const auto& gpts = p.singular_point_sets(r);
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (split[i] == cls) {
            g.vertices.push_back(gens[i]);
            g.vertex_pts.push_back(gpts[i]);
        }

    // Lines: class members through a common (r-2)-space.
    g.lines.assign(p.singulars(r - 2).size(), {});
    for (std::uint32_t v = 0; v < g.vertices.size(); ++v)
        for (const Subspace& h : subspaces_of(F, g.vertices[v], r - 2))
            g.lines[p.singular_index(h)].push_back(v);
    for (auto& l : g.lines) std::sort(l.begin(), l.end());
    std::sort(g.lines.begin(), g.lines.end());
    g.line_size = static_cast<unsigned>(g.lines.at(0).size());
    for (const auto& l : g.lines)
        if (l.size() != g.line_size)
            throw std::logic_error("half-spin line sizes are not constant");
    return g;
}

bool is_opposite_singular(const PolarSpace& p, const Subspace& u, const Subspace& w) {
    const Field& F = p.field();
    if (u.k != w.k) throw std::invalid_argument("opposition needs equal dimensions");
    bool fwd = meet(F, u, p.form().perp(w)).k == 0;
    bool bwd = meet(F, w, p.form().perp(u)).k == 0;
    if (fwd != bwd) throw std::logic_error("opposition is not symmetric");
    return fwd;
}

bool is_locally_opposite(const PolarSpace& p, const Subspace& u, const Subspace& w) {
    const Field& F = p.field();
    Subspace m = meet(F, u, w);
    return meet(F, u, p.form().perp(w)) == m && meet(F, w, p.form().perp(u)) == m;
}

GlueCheck glue_decomposition(const PolarSpace& p, const Subspace& u, const Subspace& w,
                             const Subspace& a) {
    const Field& F = p.field();
    if (!contains(F, u, a)) throw std::invalid_argument("A must lie inside U");
    GlueCheck out;
    out.a = a;
    out.b = meet(F, p.form().perp(a), w);
    out.s = join(F, a, out.b);
    out.meets_match = meet(F, out.s, u) == a && meet(F, out.s, w) == out.b;
    out.locally_opposite =
        is_locally_opposite(p, out.s, u) && is_locally_opposite(p, out.s, w);
    return out;
}

OppositionContext build_opposition(const Field& F, const PointLineGeometry& g,
                                   const PolarSpace* p) {
    OppositionContext o;
    const std::uint32_t nv = static_cast<std::uint32_t>(g.vertices.size());

    if (g.kind == GeomKind::Projective) {
        const unsigned n = g.vertices.at(0).n;
        o.self_typed = 2 * g.type == n;
        const std::vector<Subspace>& objs =
            o.self_typed ? g.vertices
                         : (o.objects = enumerate_subspaces(F, n, n - g.type), o.objects);
        const std::uint32_t no = static_cast<std::uint32_t>(objs.size());
        o.opp.assign(nv, Bitset(no));
        for (std::uint32_t v = 0; v < nv; ++v)
            for (std::uint32_t j = 0; j < no; ++j)
                if (meet(F, g.vertices[v], objs[j]).k == 0) o.opp[v].set(j);
    } else if (g.kind == GeomKind::HalfSpin) {
        const unsigned r = g.type;
        o.self_typed = r % 2 == 0;
        std::vector<const Bitset*> obj_pts;
        if (o.self_typed) {
            for (const Bitset& b : g.vertex_pts) obj_pts.push_back(&b);
        } else {
            PointLineGeometry other = build_half_spin(*p, g.halfspin_class == 'A' ? 'B' : 'A');
            o.objects = std::move(other.vertices);
            o.object_pts = std::move(other.vertex_pts);
            for (const Bitset& b : o.object_pts) obj_pts.push_back(&b);
        }
        const std::uint32_t no = static_cast<std::uint32_t>(obj_pts.size());
        o.opp.assign(nv, Bitset(no));
        for (std::uint32_t v = 0; v < nv; ++v)
            for (std::uint32_t j = 0; j < no; ++j)
                if (!g.vertex_pts[v].intersects(*obj_pts[j])) o.opp[v].set(j);
    } else {
        // Polar and dual polar: opposite exactly when no point of one is
        // collinear with every point of the other.
        o.self_typed = true;
        std::vector<Bitset> perps;
        perps.reserve(nv);
        for (const Bitset& b : g.vertex_pts) perps.push_back(p->perp_set(b));
        o.opp.assign(nv, Bitset(nv));
        for (std::uint32_t v = 0; v < nv; ++v)
            for (std::uint32_t j = 0; j < nv; ++j)
                if (!g.vertex_pts[v].intersects(perps[j])) o.opp[v].set(j);
    }

    const std::size_t no = o.opp.at(0).size();
    o.nonopp_col.assign(no, Bitset(nv));
    for (std::uint32_t v = 0; v < nv; ++v)
        for (std::uint32_t j = 0; j < no; ++j)
            if (!o.opp[v].test(j)) o.nonopp_col[j].set(v);
    return o;
}

AxiomReport audit_geometry(const PointLineGeometry& g) {
    auto fail = [](std::string d) { return AxiomReport{false, std::move(d)}; };
    if (g.lines.empty()) return fail("no lines");
    std::vector<std::uint32_t> per_vertex(g.vertices.size(), 0);
    std::unordered_set<std::uint64_t> pair_seen;
    for (const auto& l : g.lines) {
        if (l.size() != g.line_size) return fail("line size is not constant");
        if (!std::is_sorted(l.begin(), l.end())) return fail("line tuple not sorted");
        for (std::size_t a = 0; a < l.size(); ++a) {
            ++per_vertex[l[a]];
            for (std::size_t b = a + 1; b < l.size(); ++b) {
                std::uint64_t key = (static_cast<std::uint64_t>(l[a]) << 32) | l[b];
                if (!pair_seen.insert(key).second) return fail("two lines share two vertices");
            }
        }
    }
    for (auto c : per_vertex)
        if (c == 0) return fail("a vertex on no line");
    if (!std::is_sorted(g.lines.begin(), g.lines.end())) return fail("line list not sorted");
    return {};
}

AxiomReport audit_opposition(const PointLineGeometry& g, const OppositionContext& o) {
    auto fail = [](std::string d) { return AxiomReport{false, std::move(d)}; };
    const std::uint32_t nv = static_cast<std::uint32_t>(g.vertices.size());
    for (std::uint32_t v = 0; v < nv; ++v)
        if (!o.opp[v].any()) return fail("a vertex with no opposite");
    if (o.self_typed) {
        for (std::uint32_t v = 0; v < nv; ++v) {
            if (o.opp[v].test(v)) return fail("opposition is not irreflexive");
            for (std::uint32_t j = v + 1; j < nv; ++j)
                if (o.opp[v].test(j) != o.opp[j].test(v))
                    return fail("opposition is not symmetric");
        }
    }
    const std::size_t no = o.opp.at(0).size();
    for (std::size_t j = 0; j < no; ++j) {
        if (o.nonopp_col[j].size() != nv) return fail("column bitset size mismatch");
        for (std::uint32_t v = 0; v < nv; ++v)
            if (o.nonopp_col[j].test(v) == o.opp[v].test(j))
                return fail("column bitsets disagree with rows");
    }
    return {};
}

}  // namespace opp
