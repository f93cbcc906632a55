#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opp {

// GF(p^e) for p^e <= 16, with dense add/mul/inv tables so element arithmetic
// is branch-free table lookup.  Elements are indices 0..q-1; the index is the
// base-p digit encoding of the polynomial representative, so index 0 is the
// zero element and index 1 is the multiplicative identity.
//
// The reduction polynomial for e > 1 is the least monic irreducible of degree
// e over GF(p), comparing coefficient vectors high-degree-first (equivalently
// ascending sum(c_i p^i)): x^2+x+1 for GF(4), x^3+x+1 for GF(8), x^2+1 for
// GF(9), x^4+x+1 for GF(16).
class Field {
public:
    explicit Field(unsigned q);

    unsigned q() const { return q_; }
    unsigned p() const { return p_; }
    unsigned degree() const { return e_; }
    // Reduction polynomial coefficients, constant term first, length e+1.
    const std::vector<std::uint8_t>& modulus() const { return mod_; }

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[idx(a, b)]; }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[idx(a, neg_[b])]; }
    std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[idx(a, b)]; }
    std::uint8_t inv(std::uint8_t a) const;  // throws on a == 0
    std::uint8_t div(std::uint8_t a, std::uint8_t b) const { return mul(a, inv(b)); }

    std::uint8_t pow(std::uint8_t a, unsigned n) const;

    // x -> x^s, the involutory automorphism with fixed field GF(s).
    // Requires q == s*s.
    std::uint8_t conj(std::uint8_t a, unsigned s) const;

    std::string to_string(std::uint8_t a) const;

private:
    std::size_t idx(std::uint8_t a, std::uint8_t b) const {
        return static_cast<std::size_t>(a) * q_ + b;
    }

    unsigned q_ = 0, p_ = 0, e_ = 0;
    std::vector<std::uint8_t> mod_;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

}  // namespace opp
