#pragma once

#include "opp/linalg.hpp"

namespace opp {

// Number of totally singular subspaces of vector dimension d in a polar
// space of rank r whose panels have orders (q, t):
//   [r choose d]_q * prod_{i=1}^{d} (q^{r-i} t + 1).
// Saturates at ULLONG_MAX like gaussian_binomial; callers treat the value
// as a size guard as well as an exact count below saturation.
inline unsigned long long singular_count(unsigned r, unsigned q, unsigned long long t,
                                         unsigned d) {
    if (d > r) return 0;
    const unsigned long long cap = ~0ull;
    unsigned long long out = gaussian_binomial(r, d, q);
    for (unsigned i = 1; i <= d; ++i) {
        unsigned __int128 f = 1;
        for (unsigned j = 0; j + i < r; ++j) f *= q;
        f = f * t + 1;
        unsigned __int128 v = static_cast<unsigned __int128>(out) * f;
        if (v > cap) return cap;
        out = static_cast<unsigned long long>(v);
    }
    return out;
}

// (q^n - 1)/(q - 1), saturating: points of PG(n-1, q).
inline unsigned long long projective_point_count(unsigned n, unsigned q) {
    const unsigned long long cap = ~0ull;
    unsigned __int128 acc = 0, pw = 1;
    for (unsigned i = 0; i < n; ++i) {
        acc += pw;
        if (acc > cap) return cap;
        pw *= q;
    }
    return static_cast<unsigned long long>(acc);
}

}  // namespace opp
