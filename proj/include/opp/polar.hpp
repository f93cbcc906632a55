#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "opp/bits.hpp"
#include "opp/forms.hpp"

namespace opp {

struct VecHash {
    std::size_t operator()(const Vec& v) const {
        std::size_t h = 1469598103934665603ull;
        for (auto b : v) h = (h ^ b) * 1099511628211ull;
        return h;
    }
};

// A finite classical polar space materialized from a form: the isotropic
// (singular) projective points, reflexive collinearity rows, the line set,
// and the full inventory of totally singular subspaces per dimension.
//
// Point order is lexicographic on normalized coordinates; singular
// subspaces are ordered lexicographically on flattened RREF.  All indices
// used elsewhere refer to these orders, which makes every downstream
// artifact deterministic.
class PolarSpace {
public:
    explicit PolarSpace(Form form);

    const Form& form() const { return form_; }
    const Field& field() const { return form_.field(); }
    unsigned rank() const { return rank_; }
    unsigned s() const { return s_; }  // points per line - 1
    unsigned t() const { return t_; }  // generators per submaximal - 1

    std::size_t num_points() const { return points_.size(); }
    const Vec& point(std::uint32_t i) const { return points_[i]; }
    std::uint32_t point_index(const Vec& v) const;
    const Bitset& adj(std::uint32_t i) const { return adj_[i]; }

    const std::vector<std::vector<std::uint32_t>>& lines() const { return lines_; }

    // Totally singular subspaces of vector dimension d (projective d-1),
    // 1 <= d <= rank, each with its point set.
    const std::vector<Subspace>& singulars(unsigned d) const;
    const std::vector<Bitset>& singular_point_sets(unsigned d) const;
    std::uint32_t singular_index(const Subspace& s) const;

    // Intersection of the perps of a point set (reflexive convention).
    Bitset perp_set(const std::vector<std::uint32_t>& pts) const;
    Bitset perp_set(const Bitset& pts) const;

    // {x,y}^perp^perp for non-collinear points; throws if collinear.
    std::vector<std::uint32_t> hyperbolic_line(std::uint32_t x, std::uint32_t y) const;

    // A hyperbolic line H is large when {u,v}^perp = H for every distinct
    // pair u,v in H^perp.
    bool is_large_hyperbolic_line(const std::vector<std::uint32_t>& h) const;

    // proj_U(W) = W^perp  intersect U.
    Subspace project(const Subspace& u, const Subspace& w) const;

    bool is_symplectic() const { return form_.kind() == FormKind::Alternating; }
    bool is_hermitian() const { return form_.kind() == FormKind::Hermitian; }
    bool is_quadric(QuadKind k) const {
        return form_.kind() == FormKind::Quadratic && form_.quad_kind() == k;
    }
    bool char2() const { return field().p() == 2; }
    // Parabolic-type behavior: parabolic quadric, or symplectic in char 2.
    bool parabolic_type() const {
        return is_quadric(QuadKind::Parabolic) || (is_symplectic() && char2());
    }
    // Order (q^2, q): odd projective dimension hermitian.
    bool small_hermitian() const { return is_hermitian() && form_.n() % 2 == 0; }

private:
    Form form_;
    unsigned rank_ = 0, s_ = 0, t_ = 0;
    std::vector<Vec> points_;
    std::unordered_map<Vec, std::uint32_t, VecHash> point_index_;
    std::vector<Bitset> adj_;
    std::vector<std::vector<std::uint32_t>> lines_;
    std::vector<std::vector<Subspace>> singulars_;     // [d-1]
    std::vector<std::vector<Bitset>> singular_pts_;    // [d-1]
    std::vector<std::unordered_map<Subspace, std::uint32_t, SubspaceHash>> singular_index_;
};

// The residue of a totally singular subspace U with 1 <= dim U <= rank-2:
// the polar space induced on U^perp / U, together with push/lift maps
// between residue objects and ambient singular subspaces through U.
class Residue {
public:
    Residue(const PolarSpace& parent, const Subspace& u);

    const PolarSpace& space() const { return *space_; }
    const Subspace& base() const { return u_; }

    // Ambient singular X with U subset X: its image in the residue.
    // dim X = dim U + 1 maps to a point index; larger X to a Subspace.
    std::uint32_t push_point(const Subspace& x) const;
    Subspace push_subspace(const Subspace& x) const;

    // Residue point index -> the ambient (dim U + 1) singular subspace.
    const Subspace& lift_point(std::uint32_t res_pt) const;
    Subspace lift_subspace(const Subspace& res_sub) const;

private:
    const PolarSpace* parent_;
    Subspace u_;
    std::vector<Vec> comp_;  // complement basis of U in U^perp
    std::unique_ptr<SolveContext> solver_;
    std::unique_ptr<PolarSpace> space_;
    std::vector<Subspace> lift_;  // per residue point

    Vec quotient_coords(const Vec& v) const;  // coords in comp_ modulo U
};

// Rank-2 incidence view used by the subquadrangle machinery: points, lines
// as sorted point-index sets, reflexive collinearity.  Duality swaps the
// roles, so ovoid logic doubles as spread logic.
struct IncidenceGQ {
    std::uint32_t npts = 0;
    unsigned s = 0, t = 0;
    std::vector<std::vector<std::uint32_t>> lines;
    std::vector<Bitset> adj;

    static IncidenceGQ from_polar(const PolarSpace& p);
    IncidenceGQ dual() const;
};

// Exhaustive audits used by tests and the verification suite.
struct AxiomReport {
    bool ok = true;
    std::string detail;
};
AxiomReport audit_polar_axioms(const PolarSpace& p);
AxiomReport audit_order(const PolarSpace& p);
AxiomReport audit_residue(const PolarSpace& p, const Subspace& u);

}  // namespace opp
