#include "opp/field.hpp"

#include <stdexcept>

namespace opp {
namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over GF(p) as coefficient vectors, constant term first.
using Poly = std::vector<std::uint8_t>;

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mod(Poly a, const Poly& m, unsigned p) {
    a = trim(std::move(a));
    while (a.size() >= m.size()) {
        unsigned shift = a.size() - m.size();
        // m is monic, so the leading coefficient cancels directly.
        std::uint8_t c = a.back();
        for (std::size_t i = 0; i < m.size(); ++i) {
            unsigned t = a[shift + i] + static_cast<unsigned>(p - 1) * c % p * m[i];
            a[shift + i] = static_cast<std::uint8_t>(t % p);
        }
        a = trim(std::move(a));
    }
    return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, unsigned p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint8_t>((r[i + j] + a[i] * b[j]) % p);
    return poly_mod(std::move(r), m, p);
}

Poly decode(unsigned v, unsigned p, unsigned len) {
    Poly f(len, 0);
    for (unsigned i = 0; i < len; ++i) {
        f[i] = static_cast<std::uint8_t>(v % p);
        v /= p;
    }
    return trim(std::move(f));
}

// Trial division by all monic polynomials of degree 1..deg/2.
bool is_irreducible(const Poly& f, unsigned p) {
    unsigned deg = static_cast<unsigned>(f.size()) - 1;
    for (unsigned d = 1; 2 * d <= deg; ++d) {
        unsigned count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (unsigned v = 0; v < count; ++v) {
            Poly g = decode(v, p, d);
            g.resize(d + 1, 0);
            g[d] = 1;  // monic divisor candidate
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

Field::Field(unsigned q) : q_(q) {
    if (q < 2 || q > 16)
        throw std::invalid_argument("field order out of supported range [2,16]");
    unsigned p = 2;
    while (p <= q && q % p != 0) ++p;
    if (!is_prime(p)) throw std::invalid_argument("field order is not a prime power");
    unsigned e = 0, t = q;
    while (t > 1) {
        if (t % p != 0) throw std::invalid_argument("field order is not a prime power");
        t /= p;
        ++e;
    }
    p_ = p;
    e_ = e;

    if (e_ == 1) {
        mod_ = {0, 1};  // x, unused
    } else {
        unsigned count = 1;
        for (unsigned i = 0; i < e_; ++i) count *= p_;
        for (unsigned v = 0; v < count; ++v) {
            Poly f = decode(v, p_, e_);
            f.resize(e_ + 1, 0);
            f[e_] = 1;
            if (is_irreducible(f, p_)) {
                mod_ = f;
                break;
            }
        }
    }

    add_.resize(static_cast<std::size_t>(q_) * q_);
    mul_.resize(static_cast<std::size_t>(q_) * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);

    for (unsigned a = 0; a < q_; ++a) {
        Poly fa = decode(a, p_, e_);
        for (unsigned b = 0; b < q_; ++b) {
            Poly fb = decode(b, p_, e_);
            // add
            Poly s(e_, 0);
            for (unsigned i = 0; i < e_; ++i) {
                unsigned x = (i < fa.size() ? fa[i] : 0) + (i < fb.size() ? fb[i] : 0);
                s[i] = static_cast<std::uint8_t>(x % p_);
            }
            unsigned sv = 0, pw = 1;
            for (unsigned i = 0; i < e_; ++i) {
                sv += s[i] * pw;
                pw *= p_;
            }
            add_[idx(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b))] =
                static_cast<std::uint8_t>(sv);
            // mul
            Poly m = e_ == 1 ? Poly{static_cast<std::uint8_t>(a * b % p_)}
                             : poly_mul_mod(fa, fb, mod_, p_);
            unsigned mv = 0;
            pw = 1;
            for (std::size_t i = 0; i < m.size(); ++i) {
                mv += m[i] * pw;
                pw *= p_;
            }
            mul_[idx(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b))] =
                static_cast<std::uint8_t>(mv);
        }
    }
    for (unsigned a = 0; a < q_; ++a)
        for (unsigned b = 0; b < q_; ++b) {
            if (add_[idx(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b))] == 0)
                neg_[a] = static_cast<std::uint8_t>(b);
            if (mul_[idx(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b))] == 1)
                inv_[a] = static_cast<std::uint8_t>(b);
        }
}

std::uint8_t Field::inv(std::uint8_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return inv_[a];
}

std::uint8_t Field::pow(std::uint8_t a, unsigned n) const {
    std::uint8_t r = 1;
    for (unsigned i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

std::uint8_t Field::conj(std::uint8_t a, unsigned s) const {
    if (s * s != q_) throw std::invalid_argument("conjugation needs q = s^2");
    return pow(a, s);
}

std::string Field::to_string(std::uint8_t a) const {
    return std::to_string(static_cast<unsigned>(a));
}

}  // namespace opp
