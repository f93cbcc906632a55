#pragma once

#include <memory>
#include <optional>
#include <string>

#include "opp/linalg.hpp"

namespace opp {

enum class FormKind { Alternating, Quadratic, Hermitian };
enum class QuadKind { Hyperbolic, Parabolic, Elliptic };

// A reflexive sesquilinear or quadratic form over GF(q) in one of the fixed
// standard models:
//   symplectic 2r:    B(x,y) = sum x_{2i} y_{2i+1} - x_{2i+1} y_{2i}
//   hyperbolic 2n:    Q(x)   = sum x_{2i} x_{2i+1}
//   parabolic 2n+1:   Q(x)   = x_0^2 + sum x_{2i-1} x_{2i}
//   elliptic 2n+2:    Q(x)   = sum_{i<n} x_{2i} x_{2i+1} + g(x_{2n}, x_{2n+1})
//                     with g the least irreducible binary quadratic over GF(q)
//   hermitian n+1:    h(x,y) = sum x_i conj(y_j) with identity Gram
//
// Quadratic forms are stored as upper-triangular coefficient matrices since
// the polarization degenerates in characteristic 2.
class Form {
public:
    FormKind kind() const { return kind_; }
    QuadKind quad_kind() const { return quad_kind_; }
    unsigned n() const { return n_; }
    const Field& field() const { return *F_; }
    std::shared_ptr<const Field> field_ptr() const { return F_; }
    // Hermitian: order of the fixed subfield of the conjugation.
    unsigned sub_order() const { return sub_order_; }

    std::uint8_t bilinear(const Vec& x, const Vec& y) const;
    std::uint8_t quadratic(const Vec& x) const;  // Quadratic kind only

    bool isotropic_point(const Vec& v) const;
    bool singular(const Subspace& s) const;

    // {v : B(v, s) = 0 for all s in S} (polarization B for quadratic forms).
    Subspace perp(const Subspace& s) const;

    // Maximal dimension of a totally singular subspace, by exhaustive
    // depth-first extension over the standard-model point set.
    unsigned witt_index() const;

    std::string name() const;

    static Form symplectic(std::shared_ptr<const Field> F, unsigned n);
    static Form hyperbolic(std::shared_ptr<const Field> F, unsigned n);
    static Form parabolic(std::shared_ptr<const Field> F, unsigned n);
    static Form elliptic(std::shared_ptr<const Field> F, unsigned n);
    static Form hermitian(std::shared_ptr<const Field> F, unsigned n);

    // A form given by an explicit n*n matrix: the Gram matrix for
    // Alternating/Hermitian, the upper-triangular coefficient matrix for
    // Quadratic (quad then names the inherited isometry type).  Used for
    // the induced form on a quotient U^perp / U.
    static Form from_matrix(std::shared_ptr<const Field> F, FormKind kind,
                            QuadKind quad, unsigned n,
                            std::vector<std::uint8_t> m);

private:
    Form() = default;
    void validate() const;  // throws on a degenerate model

    FormKind kind_ = FormKind::Alternating;
    QuadKind quad_kind_ = QuadKind::Hyperbolic;  // meaningful for Quadratic
    unsigned n_ = 0;
    std::shared_ptr<const Field> F_;
    unsigned sub_order_ = 0;
    std::vector<std::uint8_t> gram_;  // n*n; Alternating/Hermitian
    std::vector<std::uint8_t> quad_;  // n*n upper triangular; Quadratic

    std::uint8_t gram_at(unsigned i, unsigned j) const {
        return gram_[static_cast<std::size_t>(i) * n_ + j];
    }
    std::uint8_t quad_at(unsigned i, unsigned j) const {
        return quad_[static_cast<std::size_t>(i) * n_ + j];
    }
};

}  // namespace opp
