#pragma once

#include <cstdint>
#include <vector>

#include "opp/polar.hpp"

namespace opp {

enum class GeomKind { Projective, Polar, DualPolar, HalfSpin };

// A point-line geometry on building vertices of one type: projective or
// polar Grassmannians, dual polar spaces, half-spin geometries.  Vertices
// are subspaces in a fixed deterministic order; lines are sorted index
// tuples, themselves sorted.
struct PointLineGeometry {
    GeomKind kind = GeomKind::Projective;
    unsigned type = 0;        // vector dimension of the vertices
    char halfspin_class = 0;  // 'A' or 'B' when kind == HalfSpin
    unsigned line_size = 0;   // vertices per line (s+1 of the panel)
    std::vector<Subspace> vertices;
    std::vector<Bitset> vertex_pts;  // ambient polar point sets; empty for projective
    std::vector<std::vector<std::uint32_t>> lines;

    std::uint32_t index_of(const Subspace& v) const;  // throws when absent
    bool has_line(const std::vector<std::uint32_t>& sorted_tuple) const;
};

// Opposition between the vertices and the objects of the opposite type.
// For self-dual types the objects are the vertices themselves and the
// objects vector stays empty.
struct OppositionContext {
    bool self_typed = true;
    std::vector<Subspace> objects;
    std::vector<Bitset> object_pts;  // polar point sets of the objects
    std::vector<Bitset> opp;         // row u: objects opposite vertex u
    std::vector<Bitset> nonopp_col;  // column o: vertices not opposite object o

    std::size_t num_objects() const { return opp.empty() ? 0 : opp[0].size(); }
};

// Vertices: i-dimensional subspaces of GF(q)^{dim_proj+1}; lines: pencils
// between nested (i-1)- and (i+1)-dimensional subspaces.
PointLineGeometry build_projective(const Field& F, unsigned dim_proj, unsigned i);

// Vertices: totally singular i-spaces.  For i < rank the lines are pencils
// between nested singulars; for i == rank (the dual polar space) the lines
// are the pencils over submaximals.  Hyperbolic quadrics only admit
// i <= rank-2 here; their maximal types live in build_half_spin.
PointLineGeometry build_polar_grassmannian(const PolarSpace& p, unsigned i);

// One equivalence class of generators of a hyperbolic quadric (two
// generators are equivalent when their intersection has even codimension);
// lines collect the class members through a common (rank-2)-space.
PointLineGeometry build_half_spin(const PolarSpace& p, char cls);

// Opposition rows for g against the opposite-type objects.  p is required
// for the polar kinds and ignored for projective.
OppositionContext build_opposition(const Field& F, const PointLineGeometry& g,
                                   const PolarSpace* p);

// Same-dimension totally singular subspaces are opposite exactly when no
// point of either is collinear with all points of the other.
bool is_opposite_singular(const PolarSpace& p, const Subspace& u, const Subspace& w);

// U and W (any dimensions) are locally opposite when U cap W^perp and
// W cap U^perp both collapse to U cap W.
bool is_locally_opposite(const PolarSpace& p, const Subspace& u, const Subspace& w);

// Decomposition behind the opposition test for same-dimension singulars:
// given a subspace A of U, set B = A^perp cap W and S = span(A, B).  When
// U and W are opposite, S meets U exactly in A and W exactly in B, and S
// is locally opposite to both.
struct GlueCheck {
    Subspace a, b, s;
    bool meets_match = false;  // S cap U == A and S cap W == B
    bool locally_opposite = false;
};
GlueCheck glue_decomposition(const PolarSpace& p, const Subspace& u, const Subspace& w,
                             const Subspace& a);

AxiomReport audit_geometry(const PointLineGeometry& g);
AxiomReport audit_opposition(const PointLineGeometry& g, const OppositionContext& o);

}  // namespace opp
