#pragma once

#include <memory>
#include <string>

#include "opp/grassmann.hpp"

namespace opp {

enum class GeomFamilyTag { PG, W, Q, Qplus, Qminus, H };

// A parsed geometry identifier.  The grammar accepts
//   PG(n,q)  W(n,q)  Q(n,q)  Q+(n,q)  Q-(n,q)  H(n,q)
// with an optional type suffix " i=K" (vector dimension of the vertices,
// default 1) or, for Q+ only, " halfspin:A" / " halfspin:B".
struct GeometryDesc {
    GeomFamilyTag family = GeomFamilyTag::PG;
    unsigned dim_proj = 0;  // the n as written
    unsigned q = 0;         // field order as written (H: the square order)
    unsigned type = 0;      // 0 = default
    char halfspin = 0;      // 'A' or 'B'

    friend bool operator==(const GeometryDesc&, const GeometryDesc&) = default;
};

GeometryDesc parse_geometry(const std::string& src);  // throws std::invalid_argument
std::string to_string(const GeometryDesc& d);

unsigned polar_rank(const GeometryDesc& d);  // 0 for PG
// (q, t) panel parameters of the polar family; PG has none.
std::pair<unsigned, unsigned long long> panel_orders(const GeometryDesc& d);
// Effective vertex type (default resolved).
unsigned effective_type(const GeometryDesc& d);
// Exact vertex count by formula; doubles as the size guard input.
unsigned long long vertex_count_formula(const GeometryDesc& d);

// Everything the census needs about one geometry.
struct Geometry {
    GeometryDesc desc;
    std::shared_ptr<const Field> F;
    std::shared_ptr<const PolarSpace> polar;  // null for projective
    PointLineGeometry g;
    OppositionContext opp;
};

// Builds the geometry, enforcing the size guard (vertex and ambient point
// formulas, opposition matrix footprint) before any enumeration, and
// checking the built vertex count against the formula afterwards.
Geometry build_geometry(const GeometryDesc& d);

// The ambient polar space alone (the classical form picked by the family
// tag); invalid for projective descriptions.
std::shared_ptr<const PolarSpace> build_polar_space(std::shared_ptr<const Field> F,
                                                    const GeometryDesc& d);

}  // namespace opp
