#include "opp/geometry_id.hpp"

#include <cctype>
#include <stdexcept>

#include "opp/counts.hpp"

namespace opp {

namespace {

[[noreturn]] void bad(const std::string& src, const std::string& why) {
    throw std::invalid_argument("cannot parse geometry '" + src + "': " + why);
}

bool is_prime_power(unsigned q) {
    if (q < 2) return false;
    unsigned p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (p * p > q) p = q;  // q prime
    while (q % p == 0) q /= p;
    return q == 1;
}

unsigned parse_uint(const std::string& src, std::size_t& pos) {
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
        bad(src, "expected a number at position " + std::to_string(pos));
    unsigned v = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        v = v * 10 + (src[pos] - '0');
        if (v > 1000000) bad(src, "number too large");
        ++pos;
    }
    return v;
}

void expect(const std::string& src, std::size_t& pos, char c) {
    if (pos >= src.size() || src[pos] != c)
        bad(src, std::string("expected '") + c + "' at position " + std::to_string(pos));
    ++pos;
}

unsigned isqrt(unsigned q) {
    unsigned s = 1;
    while (s * s < q) ++s;
    return s;
}

}  // namespace

GeometryDesc parse_geometry(const std::string& src) {
    GeometryDesc d;
    std::size_t pos = 0;
    while (pos < src.size() && src[pos] == ' ') ++pos;

    std::string name;
    while (pos < src.size() && src[pos] != '(') name += src[pos++];
    while (!name.empty() && name.back() == ' ') name.pop_back();
    if (name == "PG")
        d.family = GeomFamilyTag::PG;
    else if (name == "W")
        d.family = GeomFamilyTag::W;
    else if (name == "Q")
        d.family = GeomFamilyTag::Q;
    else if (name == "Q+")
        d.family = GeomFamilyTag::Qplus;
    else if (name == "Q-")
        d.family = GeomFamilyTag::Qminus;
    else if (name == "H")
        d.family = GeomFamilyTag::H;
    else
        bad(src, "unknown family '" + name + "'");

    expect(src, pos, '(');
    d.dim_proj = parse_uint(src, pos);
    expect(src, pos, ',');
    while (pos < src.size() && src[pos] == ' ') ++pos;
    d.q = parse_uint(src, pos);
    expect(src, pos, ')');
    while (pos < src.size() && src[pos] == ' ') ++pos;

    if (pos < src.size()) {
        if (src.compare(pos, 2, "i=") == 0) {
            pos += 2;
            d.type = parse_uint(src, pos);
            if (d.type == 0) bad(src, "type must be positive");
        } else if (src.compare(pos, 9, "halfspin:") == 0) {
            pos += 9;
            if (pos >= src.size() || (src[pos] != 'A' && src[pos] != 'B'))
                bad(src, "half-spin class must be A or B");
            d.halfspin = src[pos++];
        } else {
            bad(src, "unexpected suffix at position " + std::to_string(pos));
        }
        while (pos < src.size() && src[pos] == ' ') ++pos;
        if (pos != src.size()) bad(src, "trailing characters");
    }

    if (d.q < 2 || d.q > 16 || !is_prime_power(d.q))
        bad(src, "field order must be a prime power in [2,16]");
    switch (d.family) {
        case GeomFamilyTag::PG:
            if (d.dim_proj < 2) bad(src, "PG needs projective dimension >= 2");
            if (d.halfspin) bad(src, "half-spin applies to Q+ only");
            if (d.type > d.dim_proj) bad(src, "type exceeds the dimension");
            break;
        case GeomFamilyTag::W:
            if (d.dim_proj < 3 || d.dim_proj % 2 == 0) bad(src, "W needs odd dimension >= 3");
            if (d.halfspin) bad(src, "half-spin applies to Q+ only");
            break;
        case GeomFamilyTag::Q:
            if (d.dim_proj < 4 || d.dim_proj % 2 == 1) bad(src, "Q needs even dimension >= 4");
            if (d.halfspin) bad(src, "half-spin applies to Q+ only");
            break;
        case GeomFamilyTag::Qplus:
            if (d.dim_proj < 5 || d.dim_proj % 2 == 0) bad(src, "Q+ needs odd dimension >= 5");
            break;
        case GeomFamilyTag::Qminus:
            if (d.dim_proj < 5 || d.dim_proj % 2 == 0) bad(src, "Q- needs odd dimension >= 5");
            if (d.halfspin) bad(src, "half-spin applies to Q+ only");
            break;
        case GeomFamilyTag::H:
            if (d.dim_proj < 3) bad(src, "H needs dimension >= 3");
            if (isqrt(d.q) * isqrt(d.q) != d.q) bad(src, "H needs a square field order");
            if (d.halfspin) bad(src, "half-spin applies to Q+ only");
            break;
    }
    if (d.family != GeomFamilyTag::PG) {
        unsigned r = polar_rank(d);
        unsigned maxi = d.family == GeomFamilyTag::Qplus ? r - 2 : r;
        if (d.type > maxi)
            bad(src, d.family == GeomFamilyTag::Qplus
                         ? "Q+ splits its top types; use halfspin:A or halfspin:B"
                         : "type exceeds the rank");
        if (d.family == GeomFamilyTag::Qplus && r < 3 && !d.halfspin)
            bad(src, "Q+ of rank 2 has no census types");
    }
    return d;
}

std::string to_string(const GeometryDesc& d) {
    std::string name;
    switch (d.family) {
        case GeomFamilyTag::PG: name = "PG"; break;
        case GeomFamilyTag::W: name = "W"; break;
        case GeomFamilyTag::Q: name = "Q"; break;
        case GeomFamilyTag::Qplus: name = "Q+"; break;
        case GeomFamilyTag::Qminus: name = "Q-"; break;
        case GeomFamilyTag::H: name = "H"; break;
    }
    std::string out =
        name + "(" + std::to_string(d.dim_proj) + "," + std::to_string(d.q) + ")";
    if (d.halfspin)
        out += std::string(" halfspin:") + d.halfspin;
    else if (d.type)
        out += " i=" + std::to_string(d.type);
    return out;
}

unsigned polar_rank(const GeometryDesc& d) {
    switch (d.family) {
        case GeomFamilyTag::PG: return 0;
        case GeomFamilyTag::W: return (d.dim_proj + 1) / 2;
        case GeomFamilyTag::Q: return d.dim_proj / 2;
        case GeomFamilyTag::Qplus: return (d.dim_proj + 1) / 2;
        case GeomFamilyTag::Qminus: return (d.dim_proj - 1) / 2;
        case GeomFamilyTag::H: return (d.dim_proj + 1) / 2;
    }
    return 0;
}

std::pair<unsigned, unsigned long long> panel_orders(const GeometryDesc& d) {
    const unsigned long long q = d.q;
    switch (d.family) {
        case GeomFamilyTag::W:
        case GeomFamilyTag::Q: return {d.q, q};
        case GeomFamilyTag::Qplus: return {d.q, 1};
        case GeomFamilyTag::Qminus: return {d.q, q * q};
        case GeomFamilyTag::H: {
            unsigned long long r = isqrt(d.q);
            return {d.q, d.dim_proj % 2 == 1 ? r : r * r * r};
        }
        case GeomFamilyTag::PG: break;
    }
    throw std::invalid_argument("projective spaces have no panel orders");
}

unsigned effective_type(const GeometryDesc& d) {
    if (d.halfspin) return polar_rank(d);
    return d.type ? d.type : 1;
}

unsigned long long vertex_count_formula(const GeometryDesc& d) {
    unsigned i = effective_type(d);
    if (d.family == GeomFamilyTag::PG)
        return gaussian_binomial(d.dim_proj + 1, i, d.q);
    auto [q, t] = panel_orders(d);
    unsigned long long n = singular_count(polar_rank(d), q, t, i);
    if (d.halfspin) n /= 2;
    return n;
}

Geometry build_geometry(const GeometryDesc& d) {
    const unsigned n = d.dim_proj + 1;
    const unsigned long long v = vertex_count_formula(d);
    const unsigned long long ambient = projective_point_count(n, d.q);
    if (ambient > 2000000ull)
        throw std::invalid_argument(to_string(d) + ": ambient space too large (" +
                                    std::to_string(ambient) + " points)");
    if (v > 100000ull)
        throw std::invalid_argument(to_string(d) + ": too many vertices (" +
                                    std::to_string(v) + ")");
    unsigned long long objs = v;
    if (d.family == GeomFamilyTag::PG)
        objs = gaussian_binomial(n, n - effective_type(d), d.q);
    if (static_cast<unsigned __int128>(v) * objs > (1ull << 31))
        throw std::invalid_argument(to_string(d) + ": opposition table too large");

    Geometry out;
    out.desc = d;
    out.F = std::make_shared<const Field>(d.q);
    if (d.family == GeomFamilyTag::PG) {
        out.g = build_projective(*out.F, d.dim_proj, effective_type(d));
    } else {
        out.polar = build_polar_space(out.F, d);
        out.g = d.halfspin ? build_half_spin(*out.polar, d.halfspin)
                           : build_polar_grassmannian(*out.polar, effective_type(d));
    }
    if (out.g.vertices.size() != v)
        throw std::logic_error(to_string(d) + ": built vertex count " +
                               std::to_string(out.g.vertices.size()) +
                               " diverges from the formula value " + std::to_string(v));
    out.opp = build_opposition(*out.F, out.g, out.polar.get());
    return out;
}

std::shared_ptr<const PolarSpace> build_polar_space(std::shared_ptr<const Field> F,
                                                    const GeometryDesc& d) {
    const unsigned n = d.dim_proj + 1;
    Form f = [&] {
        switch (d.family) {
            case GeomFamilyTag::W: return Form::symplectic(F, n);
            case GeomFamilyTag::Q: return Form::parabolic(F, n);
            case GeomFamilyTag::Qplus: return Form::hyperbolic(F, n);
            case GeomFamilyTag::Qminus: return Form::elliptic(F, n);
            case GeomFamilyTag::H: return Form::hermitian(F, n);
            case GeomFamilyTag::PG: break;
        }
        throw std::invalid_argument("projective spaces carry no form");
    }();
    return std::make_shared<const PolarSpace>(std::move(f));
}

}  // namespace opp
