#include "opp/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace opp {

unsigned rref(const Field& F, unsigned n, std::vector<Vec>& m) {
    for (const auto& r : m)
        if (r.size() != n) throw std::invalid_argument("row length mismatch");
    unsigned rank = 0;
    for (unsigned col = 0; col < n && rank < m.size(); ++col) {
        unsigned piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        std::uint8_t s = F.inv(m[rank][col]);
        for (unsigned j = col; j < n; ++j) m[rank][j] = F.mul(m[rank][j], s);
        for (unsigned r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            std::uint8_t c = m[r][col];
            for (unsigned j = col; j < n; ++j)
                m[r][j] = F.sub(m[r][j], F.mul(c, m[rank][j]));
        }
        ++rank;
    }
    m.resize(rank);
    return rank;
}

Subspace row_space(const Field& F, unsigned n, const std::vector<Vec>& rows) {
    std::vector<Vec> m = rows;
    unsigned rank = rref(F, n, m);
    Subspace s;
    s.n = static_cast<std::uint8_t>(n);
    s.k = static_cast<std::uint8_t>(rank);
    s.a.reserve(static_cast<std::size_t>(rank) * n);
    for (const auto& r : m) s.a.insert(s.a.end(), r.begin(), r.end());
    s.pivots.reserve(rank);
    for (unsigned r = 0; r < rank; ++r) {
        unsigned c = 0;
        while (c < n && s.at(r, c) == 0) ++c;
        s.pivots.push_back(static_cast<std::uint8_t>(c));
    }
    return s;
}

Subspace zero_subspace(unsigned n) {
    Subspace s;
    s.n = static_cast<std::uint8_t>(n);
    return s;
}

Subspace full_space(const Field& F, unsigned n) {
    std::vector<Vec> rows(n, Vec(n, 0));
    for (unsigned i = 0; i < n; ++i) rows[i][i] = 1;
    return row_space(F, n, rows);
}

bool contains_vector(const Field& F, const Subspace& s, const Vec& v) {
    Vec w = v;
    for (unsigned r = 0; r < s.k; ++r) {
        std::uint8_t c = w[s.pivots[r]];
        if (c == 0) continue;
        for (unsigned j = 0; j < s.n; ++j) w[j] = F.sub(w[j], F.mul(c, s.at(r, j)));
    }
    return std::all_of(w.begin(), w.end(), [](std::uint8_t x) { return x == 0; });
}

bool contains(const Field& F, const Subspace& big, const Subspace& small) {
    for (unsigned r = 0; r < small.k; ++r)
        if (!contains_vector(F, big, small.row(r))) return false;
    return true;
}

Subspace join(const Field& F, const Subspace& x, const Subspace& y) {
    if (x.n != y.n) throw std::invalid_argument("ambient mismatch");
    std::vector<Vec> rows;
    rows.reserve(x.k + y.k);
    for (unsigned r = 0; r < x.k; ++r) rows.push_back(x.row(r));
    for (unsigned r = 0; r < y.k; ++r) rows.push_back(y.row(r));
    return row_space(F, x.n, rows);
}

// Zassenhaus: RREF of [X|X; Y|0]; rows with zero left block carry an
// intersection basis in the right block.
Subspace meet(const Field& F, const Subspace& x, const Subspace& y) {
    if (x.n != y.n) throw std::invalid_argument("ambient mismatch");
    unsigned n = x.n;
    std::vector<Vec> m;
    m.reserve(x.k + y.k);
    for (unsigned r = 0; r < x.k; ++r) {
        Vec row(2 * n, 0);
        for (unsigned j = 0; j < n; ++j) row[j] = row[n + j] = x.at(r, j);
        m.push_back(std::move(row));
    }
    for (unsigned r = 0; r < y.k; ++r) {
        Vec row(2 * n, 0);
        for (unsigned j = 0; j < n; ++j) row[j] = y.at(r, j);
        m.push_back(std::move(row));
    }
    rref(F, 2 * n, m);
    std::vector<Vec> inter;
    for (const auto& row : m) {
        bool left_zero = std::all_of(row.begin(), row.begin() + n,
                                     [](std::uint8_t v) { return v == 0; });
        if (left_zero) inter.emplace_back(row.begin() + n, row.end());
    }
    return row_space(F, n, inter);
}

Subspace span_with(const Field& F, const Subspace& s, const Vec& v) {
    std::vector<Vec> rows;
    rows.reserve(s.k + 1);
    for (unsigned r = 0; r < s.k; ++r) rows.push_back(s.row(r));
    rows.push_back(v);
    return row_space(F, s.n, rows);
}

std::vector<Subspace> enumerate_subspaces(const Field& F, unsigned n, unsigned k) {
    if (k > n) throw std::invalid_argument("k exceeds ambient dimension");
    std::vector<Subspace> out;
    if (k == 0) {
        out.push_back(zero_subspace(n));
        return out;
    }
    // Pivot column combinations; for each, fill the free entries.  A free
    // entry sits at (row r, col c) with c > pivot[r], c not a pivot column.
    std::vector<unsigned> piv(k);
    for (unsigned i = 0; i < k; ++i) piv[i] = i;
    auto next_comb = [&]() {
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && piv[i] == n - k + i) --i;
        if (i < 0) return false;
        ++piv[i];
        for (unsigned j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
        return true;
    };
    do {
        std::vector<bool> is_piv(n, false);
        for (unsigned i = 0; i < k; ++i) is_piv[piv[i]] = true;
        std::vector<std::pair<unsigned, unsigned>> free_pos;
        for (unsigned r = 0; r < k; ++r)
            for (unsigned c = piv[r] + 1; c < n; ++c)
                if (!is_piv[c]) free_pos.emplace_back(r, c);
        std::vector<std::uint8_t> vals(free_pos.size(), 0);
        while (true) {
            Subspace s;
            s.n = static_cast<std::uint8_t>(n);
            s.k = static_cast<std::uint8_t>(k);
            s.a.assign(static_cast<std::size_t>(k) * n, 0);
            for (unsigned r = 0; r < k; ++r) s.a[static_cast<std::size_t>(r) * n + piv[r]] = 1;
            for (std::size_t i = 0; i < free_pos.size(); ++i)
                s.a[static_cast<std::size_t>(free_pos[i].first) * n + free_pos[i].second] = vals[i];
            s.pivots.assign(piv.begin(), piv.end());
            out.push_back(std::move(s));
            // odometer over free values
            std::size_t i = 0;
            while (i < vals.size() && vals[i] == F.q() - 1) vals[i++] = 0;
            if (i == vals.size()) break;
            ++vals[i];
        }
    } while (next_comb());
    std::sort(out.begin(), out.end(),
              [](const Subspace& a, const Subspace& b) { return a.a < b.a; });
    return out;
}

std::vector<Vec> projective_points(const Field& F, const Subspace& s) {
    std::vector<Vec> pts;
    if (s.k == 0) return pts;
    // Enumerate coefficient tuples with first nonzero coefficient 1: one
    // representative per projective point, already normalized because the
    // basis is RREF (leading entry of the representative is 1).
    Vec coef(s.k, 0);
    std::function<void(unsigned, bool)> rec = [&](unsigned i, bool lead_set) {
        if (i == s.k) {
            if (!lead_set) return;
            Vec v(s.n, 0);
            for (unsigned r = 0; r < s.k; ++r) {
                if (coef[r] == 0) continue;
                for (unsigned j = 0; j < s.n; ++j)
                    v[j] = F.add(v[j], F.mul(coef[r], s.at(r, j)));
            }
            pts.push_back(std::move(v));
            return;
        }
        if (!lead_set) {
            coef[i] = 0;
            rec(i + 1, false);
            coef[i] = 1;
            rec(i + 1, true);
            coef[i] = 0;
        } else {
            for (unsigned v = 0; v < F.q(); ++v) {
                coef[i] = static_cast<std::uint8_t>(v);
                rec(i + 1, true);
            }
            coef[i] = 0;
        }
    };
    rec(0, false);
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::vector<Subspace> subspaces_of(const Field& F, const Subspace& s, unsigned d) {
    if (d > s.k) throw std::invalid_argument("subspace dimension exceeds span");
    std::vector<Subspace> inner = enumerate_subspaces(F, s.k, d);
    std::vector<Subspace> out;
    out.reserve(inner.size());
    for (const auto& in : inner) {
        std::vector<Vec> rows;
        rows.reserve(d);
        for (unsigned r = 0; r < in.k; ++r) {
            Vec v(s.n, 0);
            for (unsigned c = 0; c < s.k; ++c) {
                if (in.at(r, c) == 0) continue;
                for (unsigned j = 0; j < s.n; ++j)
                    v[j] = F.add(v[j], F.mul(in.at(r, c), s.at(c, j)));
            }
            rows.push_back(std::move(v));
        }
        out.push_back(row_space(F, s.n, rows));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

unsigned long long gaussian_binomial(unsigned n, unsigned k, unsigned q) {
    if (k > n) return 0;
    // [n k]_q = prod_{i=0}^{k-1} (q^{n-i}-1)/(q^{i+1}-1); each partial
    // product is itself a Gaussian binomial, so stepwise division is exact.
    // Saturates instead of overflowing (callers use this as a size guard).
    const unsigned long long cap = ~0ull;
    unsigned __int128 val = 1;
    for (unsigned i = 0; i < k; ++i) {
        unsigned __int128 top = 1;
        for (unsigned j = 0; j < n - i; ++j) top *= q;
        top -= 1;
        unsigned __int128 bot = 1;
        for (unsigned j = 0; j < i + 1; ++j) bot *= q;
        bot -= 1;
        val = val * top / bot;
        if (val > cap) return cap;
    }
    return static_cast<unsigned long long>(val);
}

SolveContext::SolveContext(const Field& F, std::vector<Vec> rows) : F_(&F) {
    k_ = static_cast<unsigned>(rows.size());
    n_ = k_ ? static_cast<unsigned>(rows[0].size()) : 0;
    // Eliminate [rows | I] so the identity block records the transform.
    std::vector<Vec> aug(k_);
    for (unsigned r = 0; r < k_; ++r) {
        aug[r] = rows[r];
        aug[r].resize(n_ + k_, 0);
        aug[r][n_ + r] = 1;
    }
    unsigned rank = rref(F, n_ + k_, aug);
    if (rank != k_) throw std::invalid_argument("SolveContext rows are dependent");
    rref_.resize(k_);
    trans_.resize(k_);
    for (unsigned r = 0; r < k_; ++r) {
        rref_[r] = Vec(aug[r].begin(), aug[r].begin() + n_);
        trans_[r] = Vec(aug[r].begin() + n_, aug[r].end());
        unsigned c = 0;
        while (c < n_ && rref_[r][c] == 0) ++c;
        if (c == n_) throw std::invalid_argument("SolveContext rows are dependent");
        pivots_.push_back(c);
    }
}

std::optional<Vec> SolveContext::solve(const Vec& v) const {
    const Field& F = *F_;
    Vec w = v;
    Vec mu(k_, 0);  // coordinates in the RREF basis
    for (unsigned r = 0; r < k_; ++r) {
        std::uint8_t c = w[pivots_[r]];
        if (c == 0) continue;
        mu[r] = c;  // RREF pivots are 1
        for (unsigned j = 0; j < n_; ++j)
            if (rref_[r][j] != 0) w[j] = F.sub(w[j], F.mul(c, rref_[r][j]));
    }
    for (unsigned j = 0; j < n_; ++j)
        if (w[j] != 0) return std::nullopt;
    Vec x(k_, 0);
    for (unsigned r = 0; r < k_; ++r) {
        if (mu[r] == 0) continue;
        for (unsigned i = 0; i < k_; ++i)
            if (trans_[r][i] != 0) x[i] = F.add(x[i], F.mul(mu[r], trans_[r][i]));
    }
    return x;
}

std::string to_string(const Subspace& s) {
    static const char* digits = "0123456789abcdef";
    std::string out = "[";
    for (unsigned r = 0; r < s.k; ++r) {
        if (r) out += " ";
        for (unsigned c = 0; c < s.n; ++c) out += digits[s.at(r, c) & 0xf];
    }
    out += "]";
    return out;
}

}  // namespace opp
