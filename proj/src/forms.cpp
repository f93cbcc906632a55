#include "opp/forms.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace opp {

std::uint8_t Form::bilinear(const Vec& x, const Vec& y) const {
    const Field& F = *F_;
    std::uint8_t acc = 0;
    switch (kind_) {
        case FormKind::Alternating:
            for (unsigned i = 0; i < n_; ++i) {
                if (x[i] == 0) continue;
                std::uint8_t row = 0;
                for (unsigned j = 0; j < n_; ++j)
                    if (gram_at(i, j) != 0 && y[j] != 0)
                        row = F.add(row, F.mul(gram_at(i, j), y[j]));
                acc = F.add(acc, F.mul(x[i], row));
            }
            return acc;
        case FormKind::Hermitian:
            for (unsigned i = 0; i < n_; ++i) {
                if (x[i] == 0) continue;
                std::uint8_t row = 0;
                for (unsigned j = 0; j < n_; ++j)
                    if (gram_at(i, j) != 0 && y[j] != 0)
                        row = F.add(row, F.mul(gram_at(i, j), F.conj(y[j], sub_order_)));
                acc = F.add(acc, F.mul(x[i], row));
            }
            return acc;
        case FormKind::Quadratic: {
            // Polarization: B(x,y) = Q(x+y) - Q(x) - Q(y), expanded to the
            // bilinear cross terms of the coefficient matrix.
            for (unsigned i = 0; i < n_; ++i)
                for (unsigned j = i + 1; j < n_; ++j) {
                    std::uint8_t c = quad_at(i, j);
                    if (c == 0) continue;
                    acc = F.add(acc, F.mul(c, F.add(F.mul(x[i], y[j]), F.mul(x[j], y[i]))));
                }
            // Diagonal contributes 2*c*x_i*y_i.
            for (unsigned i = 0; i < n_; ++i) {
                std::uint8_t c = quad_at(i, i);
                if (c == 0) continue;
                std::uint8_t t = F.mul(c, F.mul(x[i], y[i]));
                acc = F.add(acc, F.add(t, t));
            }
            return acc;
        }
    }
    return acc;
}

std::uint8_t Form::quadratic(const Vec& x) const {
    if (kind_ != FormKind::Quadratic)
        throw std::domain_error("quadratic evaluation on a non-quadratic form");
    const Field& F = *F_;
    std::uint8_t acc = 0;
    for (unsigned i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (unsigned j = i; j < n_; ++j) {
            std::uint8_t c = quad_at(i, j);
            if (c == 0 || x[j] == 0) continue;
            acc = F.add(acc, F.mul(c, F.mul(x[i], x[j])));
        }
    }
    return acc;
}

bool Form::isotropic_point(const Vec& v) const {
    switch (kind_) {
        case FormKind::Alternating: return true;
        case FormKind::Quadratic: return quadratic(v) == 0;
        case FormKind::Hermitian: return bilinear(v, v) == 0;
    }
    return false;
}

bool Form::singular(const Subspace& s) const {
    // Basis isotropy plus pairwise orthogonality suffices for all kinds:
    // Q(u+v) = Q(u) + Q(v) + B(u,v) handles the quadratic case.
    for (unsigned r = 0; r < s.k; ++r) {
        Vec vr = s.row(r);
        if (!isotropic_point(vr)) return false;
        for (unsigned t = r + 1; t < s.k; ++t)
            if (bilinear(vr, s.row(t)) != 0) return false;
    }
    return true;
}

Subspace Form::perp(const Subspace& s) const {
    const Field& F = *F_;
    // v is orthogonal to row r iff sum_j M[r][j] v_j = 0 with
    // M[r][j] = sum_i b_i gram[i][j] (suitably conjugated for hermitian);
    // the perp is the kernel of M, computed via RREF null space.
    std::vector<Vec> M;
    for (unsigned r = 0; r < s.k; ++r) {
        Vec b = s.row(r);
        Vec row(n_, 0);
        if (kind_ == FormKind::Quadratic) {
            // row_j = B(b, e_j)
            Vec ej(n_, 0);
            for (unsigned j = 0; j < n_; ++j) {
                ej[j] = 1;
                row[j] = bilinear(b, ej);
                ej[j] = 0;
            }
        } else if (kind_ == FormKind::Alternating) {
            for (unsigned j = 0; j < n_; ++j) {
                std::uint8_t acc = 0;
                for (unsigned i = 0; i < n_; ++i)
                    if (b[i] != 0 && gram_at(i, j) != 0)
                        acc = F.add(acc, F.mul(b[i], gram_at(i, j)));
                row[j] = acc;
            }
        } else {
            // h(b, v) = 0  <=>  conj(h(b, v)) = 0, which is linear in v:
            // sum_j conj(sum_i b_i g_ij) v_j = 0.
            for (unsigned j = 0; j < n_; ++j) {
                std::uint8_t acc = 0;
                for (unsigned i = 0; i < n_; ++i)
                    if (b[i] != 0 && gram_at(i, j) != 0)
                        acc = F.add(acc, F.mul(b[i], gram_at(i, j)));
                row[j] = F.conj(acc, sub_order_);
            }
        }
        M.push_back(std::move(row));
    }
    unsigned rank = rref(F, n_, M);
    // Kernel basis from the RREF of M.
    std::vector<bool> is_piv(n_, false);
    std::vector<unsigned> piv_of_col(n_, 0);
    {
        unsigned r = 0;
        for (const auto& row : M) {
            unsigned c = 0;
            while (c < n_ && row[c] == 0) ++c;
            is_piv[c] = true;
            piv_of_col[c] = r++;
        }
    }
    std::vector<Vec> ker;
    for (unsigned freec = 0; freec < n_; ++freec) {
        if (is_piv[freec]) continue;
        Vec v(n_, 0);
        v[freec] = 1;
        for (unsigned c = 0; c < n_; ++c)
            if (is_piv[c]) v[c] = F.neg(M[piv_of_col[c]][freec]);
        ker.push_back(std::move(v));
    }
    (void)rank;
    return row_space(F, n_, ker);
}

unsigned Form::witt_index() const {
    const Field& F = *F_;
    std::vector<Vec> pts = projective_points(F, full_space(F, n_));
    std::vector<Vec> iso;
    for (auto& v : pts)
        if (isotropic_point(v)) iso.push_back(std::move(v));
    unsigned best = 0;
    // Exhaustive depth-first extension over isotropic points, with a visited
    // set so each totally singular subspace is expanded exactly once.  Every
    // singular subspace is reached: each arises as span(S', p) for a singular
    // hyperplane S' of itself, by induction already expanded.
    std::unordered_set<Subspace, SubspaceHash> seen;
    std::function<void(const Subspace&)> rec = [&](const Subspace& s) {
        if (s.k > best) best = s.k;
        for (const Vec& v : iso) {
            bool ok = true;
            for (unsigned r = 0; r < s.k && ok; ++r)
                if (bilinear(s.row(r), v) != 0) ok = false;
            if (!ok || contains_vector(F, s, v)) continue;
            Subspace bigger = span_with(F, s, v);
            if (seen.insert(bigger).second) rec(bigger);
        }
    };
    rec(zero_subspace(n_));
    return best;
}

void Form::validate() const {
    // Bilinear radical must contain no singular point; for alternating and
    // hermitian forms that means trivial radical.
    Subspace rad = perp(full_space(*F_, n_));
    if (kind_ != FormKind::Quadratic) {
        if (rad.k != 0) throw std::invalid_argument(name() + ": degenerate form");
        return;
    }
    for (const Vec& v : projective_points(*F_, rad))
        if (quadratic(v) == 0)
            throw std::invalid_argument(name() + ": singular radical point");
}

Form Form::symplectic(std::shared_ptr<const Field> F, unsigned n) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("symplectic dimension must be even");
    Form f;
    f.kind_ = FormKind::Alternating;
    f.n_ = n;
    f.F_ = std::move(F);
    f.gram_.assign(static_cast<std::size_t>(n) * n, 0);
    for (unsigned i = 0; i + 1 < n; i += 2) {
        f.gram_[static_cast<std::size_t>(i) * n + i + 1] = 1;
        f.gram_[static_cast<std::size_t>(i + 1) * n + i] = f.F_->neg(1);
    }
    f.validate();
    return f;
}

Form Form::hyperbolic(std::shared_ptr<const Field> F, unsigned n) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("hyperbolic dimension must be even");
    Form f;
    f.kind_ = FormKind::Quadratic;
    f.quad_kind_ = QuadKind::Hyperbolic;
    f.n_ = n;
    f.F_ = std::move(F);
    f.quad_.assign(static_cast<std::size_t>(n) * n, 0);
    for (unsigned i = 0; i + 1 < n; i += 2) f.quad_[static_cast<std::size_t>(i) * n + i + 1] = 1;
    f.validate();
    return f;
}

Form Form::parabolic(std::shared_ptr<const Field> F, unsigned n) {
    if (n < 3 || n % 2 != 1) throw std::invalid_argument("parabolic dimension must be odd");
    Form f;
    f.kind_ = FormKind::Quadratic;
    f.quad_kind_ = QuadKind::Parabolic;
    f.n_ = n;
    f.F_ = std::move(F);
    f.quad_.assign(static_cast<std::size_t>(n) * n, 0);
    f.quad_[0] = 1;  // x_0^2
    for (unsigned i = 1; i + 1 < n; i += 2) f.quad_[static_cast<std::size_t>(i) * n + i + 1] = 1;
    f.validate();
    return f;
}

Form Form::elliptic(std::shared_ptr<const Field> F, unsigned n) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("elliptic dimension must be even");
    Form f;
    f.kind_ = FormKind::Quadratic;
    f.quad_kind_ = QuadKind::Elliptic;
    f.n_ = n;
    f.F_ = std::move(F);
    f.quad_.assign(static_cast<std::size_t>(n) * n, 0);
    for (unsigned i = 0; i + 2 < n; i += 2) f.quad_[static_cast<std::size_t>(i) * n + i + 1] = 1;
    // Least irreducible binary quadratic a u^2 + b uv + c v^2 on the last two
    // coordinates, ordered by the (a,b,c) coefficient triple ascending.
    const Field& Fld = *f.F_;
    bool found = false;
    for (unsigned a = 0; a < Fld.q() && !found; ++a)
        for (unsigned b = 0; b < Fld.q() && !found; ++b)
            for (unsigned c = 0; c < Fld.q() && !found; ++c) {
                bool irred = true;
                for (unsigned u = 0; u < Fld.q() && irred; ++u)
                    for (unsigned v = 0; v < Fld.q() && irred; ++v) {
                        if (u == 0 && v == 0) continue;
                        std::uint8_t val = Fld.add(
                            Fld.add(Fld.mul(static_cast<std::uint8_t>(a),
                                            Fld.mul(static_cast<std::uint8_t>(u),
                                                    static_cast<std::uint8_t>(u))),
                                    Fld.mul(static_cast<std::uint8_t>(b),
                                            Fld.mul(static_cast<std::uint8_t>(u),
                                                    static_cast<std::uint8_t>(v)))),
                            Fld.mul(static_cast<std::uint8_t>(c),
                                    Fld.mul(static_cast<std::uint8_t>(v),
                                            static_cast<std::uint8_t>(v))));
                        if (val == 0) irred = false;
                    }
                if (irred) {
                    f.quad_[static_cast<std::size_t>(n - 2) * n + n - 2] =
                        static_cast<std::uint8_t>(a);
                    f.quad_[static_cast<std::size_t>(n - 2) * n + n - 1] =
                        static_cast<std::uint8_t>(b);
                    f.quad_[static_cast<std::size_t>(n - 1) * n + n - 1] =
                        static_cast<std::uint8_t>(c);
                    found = true;
                }
            }
    if (!found) throw std::logic_error("no anisotropic binary quadratic found");
    f.validate();
    return f;
}

Form Form::hermitian(std::shared_ptr<const Field> F, unsigned n) {
    Form f;
    f.kind_ = FormKind::Hermitian;
    f.n_ = n;
    unsigned q = F->q();
    unsigned s = 1;
    while (s * s < q) ++s;
    if (s * s != q) throw std::invalid_argument("hermitian form needs a square field order");
    f.sub_order_ = s;
    f.F_ = std::move(F);
    f.gram_.assign(static_cast<std::size_t>(n) * n, 0);
    for (unsigned i = 0; i < n; ++i) f.gram_[static_cast<std::size_t>(i) * n + i] = 1;
    f.validate();
    return f;
}

Form Form::from_matrix(std::shared_ptr<const Field> F, FormKind kind, QuadKind quad,
                       unsigned n, std::vector<std::uint8_t> m) {
    if (m.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("form matrix has wrong size");
    Form f;
    f.kind_ = kind;
    f.quad_kind_ = quad;
    f.n_ = n;
    f.F_ = std::move(F);
    const Field& Fld = *f.F_;
    switch (kind) {
        case FormKind::Alternating:
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j) {
                    std::uint8_t a = m[static_cast<std::size_t>(i) * n + j];
                    if (i == j && a != 0)
                        throw std::invalid_argument("alternating matrix needs zero diagonal");
                    if (m[static_cast<std::size_t>(j) * n + i] != Fld.neg(a))
                        throw std::invalid_argument("matrix is not antisymmetric");
                }
            f.gram_ = std::move(m);
            break;
        case FormKind::Hermitian: {
            unsigned q = Fld.q(), s = 1;
            while (s * s < q) ++s;
            if (s * s != q)
                throw std::invalid_argument("hermitian form needs a square field order");
            f.sub_order_ = s;
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j)
                    if (m[static_cast<std::size_t>(j) * n + i] !=
                        Fld.conj(m[static_cast<std::size_t>(i) * n + j], s))
                        throw std::invalid_argument("matrix is not conjugate-symmetric");
            f.gram_ = std::move(m);
            break;
        }
        case FormKind::Quadratic:
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < i; ++j)
                    if (m[static_cast<std::size_t>(i) * n + j] != 0)
                        throw std::invalid_argument("coefficient matrix must be upper triangular");
            f.quad_ = std::move(m);
            break;
    }
    f.validate();
    return f;
}

std::string Form::name() const {
    switch (kind_) {
        case FormKind::Alternating: return "Sp(" + std::to_string(n_) + "," + std::to_string(F_->q()) + ")";
        case FormKind::Hermitian:
            return "SU(" + std::to_string(n_) + "," + std::to_string(F_->q()) + ")";
        case FormKind::Quadratic:
            switch (quad_kind_) {
                case QuadKind::Hyperbolic: return "O+(" + std::to_string(n_) + "," + std::to_string(F_->q()) + ")";
                case QuadKind::Parabolic: return "O(" + std::to_string(n_) + "," + std::to_string(F_->q()) + ")";
                case QuadKind::Elliptic: return "O-(" + std::to_string(n_) + "," + std::to_string(F_->q()) + ")";
            }
    }
    return "?";
}

}  // namespace opp
