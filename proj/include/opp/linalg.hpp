#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opp/field.hpp"

namespace opp {

using Vec = std::vector<std::uint8_t>;  // coordinate vector over a Field

// A linear subspace of F^n held in reduced row echelon form.  RREF is the
// canonical representative: two Subspace values are equal exactly when they
// are the same subspace of the same ambient space.
struct Subspace {
    std::uint8_t n = 0;           // ambient dimension
    std::uint8_t k = 0;           // rank
    std::vector<std::uint8_t> a;  // k*n entries, row major, RREF
    std::vector<std::uint8_t> pivots;

    std::uint8_t at(unsigned r, unsigned c) const { return a[static_cast<std::size_t>(r) * n + c]; }

    Vec row(unsigned r) const {
        return Vec(a.begin() + static_cast<std::size_t>(r) * n,
                   a.begin() + static_cast<std::size_t>(r + 1) * n);
    }

    friend bool operator==(const Subspace&, const Subspace&) = default;
    // Lexicographic on (k, flattened RREF entries): the deterministic
    // enumeration/indexing order used throughout.
    friend auto operator<=>(const Subspace& x, const Subspace& y) {
        if (auto c = x.n <=> y.n; c != 0) return c;
        if (auto c = x.k <=> y.k; c != 0) return c;
        return x.a <=> y.a;
    }
};

// Rows of an arbitrary generating set -> canonical Subspace.
Subspace row_space(const Field& F, unsigned n, const std::vector<Vec>& rows);

// In-place Gaussian elimination to RREF; returns rank.  Rows of `m` are
// vectors of length n; zero rows are removed.
unsigned rref(const Field& F, unsigned n, std::vector<Vec>& m);

Subspace zero_subspace(unsigned n);
Subspace full_space(const Field& F, unsigned n);

bool contains(const Field& F, const Subspace& big, const Subspace& small);
bool contains_vector(const Field& F, const Subspace& s, const Vec& v);

Subspace meet(const Field& F, const Subspace& x, const Subspace& y);
Subspace join(const Field& F, const Subspace& x, const Subspace& y);

Subspace span_with(const Field& F, const Subspace& s, const Vec& v);

// All k-dimensional subspaces of F^n, ordered lexicographically on the
// flattened RREF matrix.  Count equals the Gaussian binomial [n choose k]_q.
std::vector<Subspace> enumerate_subspaces(const Field& F, unsigned n, unsigned k);

// d-dimensional subspaces of span(s), as subspaces of the ambient space.
std::vector<Subspace> subspaces_of(const Field& F, const Subspace& s, unsigned d);

// Projective points of span(s): one normalized vector (leading coefficient 1)
// per 1-dimensional subspace, in lexicographic vector order.
std::vector<Vec> projective_points(const Field& F, const Subspace& s);

// Gaussian binomial [n choose k]_q as unsigned long long (desk scale).
unsigned long long gaussian_binomial(unsigned n, unsigned k, unsigned q);

// Repeated coordinate solving against a fixed independent row set: given
// rows r_0..r_{k-1}, solve(v) returns x with sum x_i r_i = v, or nullopt
// when v is outside the span.  Precomputes the RREF and the transform
// taking RREF coordinates back to the original rows.
class SolveContext {
public:
    SolveContext(const Field& F, std::vector<Vec> rows);
    std::optional<Vec> solve(const Vec& v) const;

private:
    const Field* F_;
    unsigned n_ = 0, k_ = 0;
    std::vector<Vec> rref_;           // k rows, RREF of the input
    std::vector<Vec> trans_;          // k*k: rref_ = trans_ * rows
    std::vector<unsigned> pivots_;
};

std::string to_string(const Subspace& s);

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const {
        std::size_t h = s.n * 1315423911u ^ (s.k * 2654435761u);
        for (auto b : s.a) h = h * 1099511628211ull ^ b;
        return h;
    }
};

}  // namespace opp
