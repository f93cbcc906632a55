#include "opp/cache.hpp"

#include <zlib.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace opp {

namespace {

namespace fs = std::filesystem;

constexpr char kMagic[4] = {'O', 'P', 'G', '1'};

// --- byte-buffer writers/readers -----------------------------------------

struct Buf {
    std::vector<std::uint8_t> b;

    void u8(std::uint8_t v) { b.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void bytes(const void* p, std::size_t n) {
        const auto* s = static_cast<const std::uint8_t*>(p);
        b.insert(b.end(), s, s + n);
    }
};

struct Cur {
    const std::uint8_t* p;
    std::size_t left;

    void need(std::size_t n) const {
        if (left < n) throw std::runtime_error("geometry cache: truncated file");
    }
    std::uint8_t u8() {
        need(1);
        --left;
        return *p++;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(*p++) << (8 * i);
        left -= 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(*p++) << (8 * i);
        left -= 8;
        return v;
    }
    const std::uint8_t* bytes(std::size_t n) {
        need(n);
        const std::uint8_t* s = p;
        p += n;
        left -= n;
        return s;
    }
};

std::uint32_t crc_of(const std::vector<std::uint8_t>& payload) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, payload.data(), static_cast<uInt>(payload.size())));
}

// --- field-level encodings ------------------------------------------------

void put_bitset(Buf& out, const Bitset& s) {
    const std::size_t nbytes = (s.size() + 7) / 8;
    std::vector<std::uint8_t> packed(nbytes, 0);
    s.for_each([&](std::size_t i) { packed[i >> 3] |= std::uint8_t(1u << (i & 7)); });
    out.bytes(packed.data(), packed.size());
}

Bitset get_bitset(Cur& in, std::size_t nbits) {
    const std::size_t nbytes = (nbits + 7) / 8;
    const std::uint8_t* raw = in.bytes(nbytes);
    Bitset s(nbits);
    for (std::size_t i = 0; i < nbits; ++i)
        if (raw[i >> 3] & (1u << (i & 7))) s.set(i);
    return s;
}

void put_subspaces(Buf& out, const std::vector<Subspace>& v, unsigned n) {
    for (const Subspace& s : v) {
        if (s.n != n) throw std::logic_error("geometry cache: ambient dimension mismatch");
        out.u8(s.k);
        out.bytes(s.a.data(), s.a.size());
    }
}

std::vector<Subspace> get_subspaces(Cur& in, const Field& F, unsigned n, std::uint64_t count) {
    std::vector<Subspace> v;
    v.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const unsigned k = in.u8();
        if (k > n) throw std::runtime_error("geometry cache: subspace rank exceeds dimension");
        const std::uint8_t* raw = in.bytes(static_cast<std::size_t>(k) * n);
        std::vector<Vec> rows(k);
        for (unsigned r = 0; r < k; ++r) rows[r] = Vec(raw + r * n, raw + (r + 1) * n);
        Subspace s = row_space(F, n, rows);
        // Stored rows must already be the canonical form.
        if (s.k != k || std::memcmp(s.a.data(), raw, s.a.size()) != 0)
            throw std::runtime_error("geometry cache: subspace rows not canonical");
        v.push_back(std::move(s));
    }
    return v;
}

void add_section(Buf& file, const char tag[4], const Buf& payload) {
    file.bytes(tag, 4);
    file.u64(payload.b.size());
    file.u32(crc_of(payload.b));
    file.bytes(payload.b.data(), payload.b.size());
}

struct Section {
    char tag[5] = {};
    std::vector<std::uint8_t> payload;
};

char sanitize(char c) {
    switch (c) {
        case '(': case ')': case ' ': case '=': case ':': case ',': return '_';
        case '+': return 'p';
        case '-': return 'm';
        default: return c;
    }
}

}  // namespace

std::string cache_file_name(const GeometryDesc& d) {
    std::string s = to_string(d);
    for (char& c : s) c = sanitize(c);
    return s + ".opg";
}

void save_geometry(const Geometry& g, const std::string& path) {
    const unsigned n = g.desc.dim_proj + 1;
    const std::size_t nv = g.g.vertices.size();
    const std::size_t npts = g.polar ? g.polar->num_points() : 0;
    const std::size_t ncols = g.opp.num_objects();

    Buf meta;
    meta.u32(static_cast<std::uint32_t>(g.g.kind));
    meta.u32(g.g.type);
    meta.u32(static_cast<std::uint32_t>(g.g.halfspin_class));
    meta.u32(g.g.line_size);
    meta.u64(nv);
    meta.u64(npts);
    meta.u64(g.g.lines.size());
    meta.u32(g.opp.self_typed ? 1 : 0);
    meta.u64(g.opp.objects.size());
    meta.u64(ncols);
    meta.u32(g.desc.q);
    meta.u32(n);

    Buf vert;
    put_subspaces(vert, g.g.vertices, n);

    Buf vpts;
    for (const Bitset& s : g.g.vertex_pts) put_bitset(vpts, s);

    Buf objs;
    if (!g.opp.self_typed) {
        put_subspaces(objs, g.opp.objects, n);
        for (const Bitset& s : g.opp.object_pts) put_bitset(objs, s);
    }

    Buf line;
    for (const auto& l : g.g.lines) {
        if (l.size() != g.g.line_size)
            throw std::logic_error("geometry cache: ragged line");
        for (std::uint32_t m : l) line.u32(m);
    }

    Buf oppr;
    for (const Bitset& row : g.opp.opp) put_bitset(oppr, row);

    Buf file;
    file.bytes(kMagic, 4);
    file.u32(kCacheSchema);
    file.u32(kCacheCodeVersion);
    const std::string desc = to_string(g.desc);
    file.u32(static_cast<std::uint32_t>(desc.size()));
    file.bytes(desc.data(), desc.size());
    file.u32(6);
    add_section(file, "META", meta);
    add_section(file, "VERT", vert);
    add_section(file, "VPTS", vpts);
    add_section(file, "OBJS", objs);
    add_section(file, "LINE", line);
    add_section(file, "OPPR", oppr);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("geometry cache: cannot write " + tmp);
        out.write(reinterpret_cast<const char*>(file.b.data()),
                  static_cast<std::streamsize>(file.b.size()));
        if (!out) throw std::runtime_error("geometry cache: short write to " + tmp);
    }
    fs::rename(tmp, path);
}

Geometry load_geometry(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("geometry cache: cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    Cur cur{data.data(), data.size()};

    const std::uint8_t* magic = cur.bytes(4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("geometry cache: bad magic in " + path);
    if (cur.u32() != kCacheSchema) throw std::runtime_error("geometry cache: schema mismatch");
    if (cur.u32() != kCacheCodeVersion)
        throw std::runtime_error("geometry cache: code version mismatch");
    const std::uint32_t desc_len = cur.u32();
    const std::uint8_t* desc_raw = cur.bytes(desc_len);
    const std::string desc_str(reinterpret_cast<const char*>(desc_raw), desc_len);
    const GeometryDesc desc = parse_geometry(desc_str);
    if (to_string(desc) != desc_str)
        throw std::runtime_error("geometry cache: non-canonical description");

    const std::uint32_t nsect = cur.u32();
    std::vector<Section> sections(nsect);
    for (auto& s : sections) {
        std::memcpy(s.tag, cur.bytes(4), 4);
        const std::uint64_t len = cur.u64();
        const std::uint32_t crc = cur.u32();
        const std::uint8_t* raw = cur.bytes(len);
        s.payload.assign(raw, raw + len);
        if (crc_of(s.payload) != crc)
            throw std::runtime_error(std::string("geometry cache: checksum failure in section ") +
                                     s.tag);
    }
    if (cur.left != 0) throw std::runtime_error("geometry cache: trailing bytes");

    auto section = [&](const char* tag) -> Cur {
        for (const auto& s : sections)
            if (std::strcmp(s.tag, tag) == 0) return Cur{s.payload.data(), s.payload.size()};
        throw std::runtime_error(std::string("geometry cache: missing section ") + tag);
    };

    Cur meta = section("META");
    const auto kind = static_cast<GeomKind>(meta.u32());
    const unsigned type = meta.u32();
    const char halfspin_class = static_cast<char>(meta.u32());
    const unsigned line_size = meta.u32();
    const std::uint64_t nv = meta.u64();
    const std::uint64_t npts = meta.u64();
    const std::uint64_t nlines = meta.u64();
    const bool self_typed = meta.u32() != 0;
    const std::uint64_t nobjs = meta.u64();
    const std::uint64_t ncols = meta.u64();
    const std::uint32_t q = meta.u32();
    const std::uint32_t n = meta.u32();
    if (q != desc.q || n != desc.dim_proj + 1)
        throw std::runtime_error("geometry cache: metadata diverges from description");
    if (nv != vertex_count_formula(desc))
        throw std::runtime_error("geometry cache: vertex count diverges from the formula");

    Geometry out;
    out.desc = desc;
    out.F = std::make_shared<const Field>(desc.q);
    if (desc.family != GeomFamilyTag::PG) {
        out.polar = build_polar_space(out.F, desc);
        if (out.polar->num_points() != npts)
            throw std::runtime_error("geometry cache: ambient point count mismatch");
    } else if (npts != 0) {
        throw std::runtime_error("geometry cache: projective entry stores polar points");
    }

    out.g.kind = kind;
    out.g.type = type;
    out.g.halfspin_class = halfspin_class;
    out.g.line_size = line_size;

    Cur vert = section("VERT");
    out.g.vertices = get_subspaces(vert, *out.F, n, nv);
    if (vert.left != 0) throw std::runtime_error("geometry cache: VERT length mismatch");

    Cur vpts = section("VPTS");
    if (out.polar) {
        out.g.vertex_pts.reserve(nv);
        for (std::uint64_t i = 0; i < nv; ++i) out.g.vertex_pts.push_back(get_bitset(vpts, npts));
    }
    if (vpts.left != 0) throw std::runtime_error("geometry cache: VPTS length mismatch");

    Cur objs = section("OBJS");
    out.opp.self_typed = self_typed;
    if (!self_typed) {
        out.opp.objects = get_subspaces(objs, *out.F, n, nobjs);
        out.opp.object_pts.reserve(nobjs);
        for (std::uint64_t i = 0; i < nobjs; ++i)
            out.opp.object_pts.push_back(get_bitset(objs, npts));
    }
    if (objs.left != 0) throw std::runtime_error("geometry cache: OBJS length mismatch");

    Cur line = section("LINE");
    out.g.lines.reserve(nlines);
    for (std::uint64_t i = 0; i < nlines; ++i) {
        std::vector<std::uint32_t> l(line_size);
        for (auto& m : l) {
            m = line.u32();
            if (m >= nv) throw std::runtime_error("geometry cache: line member out of range");
        }
        out.g.lines.push_back(std::move(l));
    }
    if (line.left != 0) throw std::runtime_error("geometry cache: LINE length mismatch");

    Cur oppr = section("OPPR");
    out.opp.opp.reserve(nv);
    for (std::uint64_t i = 0; i < nv; ++i) out.opp.opp.push_back(get_bitset(oppr, ncols));
    if (oppr.left != 0) throw std::runtime_error("geometry cache: OPPR length mismatch");

    // Non-opposition columns are derived data; recompute them.
    const std::size_t cols = ncols;
    out.opp.nonopp_col.assign(cols, Bitset(nv));
    for (std::size_t u = 0; u < nv; ++u)
        for (std::size_t o = 0; o < cols; ++o)
            if (!out.opp.opp[u].test(o)) out.opp.nonopp_col[o].set(u);
    return out;
}

Geometry build_geometry_cached(const GeometryDesc& d, const std::string& cache_dir) {
    if (cache_dir.empty()) return build_geometry(d);
    const fs::path dir(cache_dir);
    const fs::path file = dir / cache_file_name(d);
    std::error_code ec;
    if (fs::exists(file, ec)) {
        try {
            return load_geometry(file.string());
        } catch (const std::exception&) {
            // Stale or damaged entry: fall through to a fresh build.
        }
    }
    Geometry g = build_geometry(d);
    fs::create_directories(dir, ec);
    try {
        save_geometry(g, file.string());
    } catch (const std::exception&) {
        // Caching is an optimization; the build result stands on its own.
    }
    return g;
}

std::vector<CacheEntry> list_cache(const std::string& dir) {
    std::vector<CacheEntry> out;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(dir, ec)) {
        if (!e.is_regular_file() || e.path().extension() != ".opg") continue;
        CacheEntry ent;
        ent.file = e.path().filename().string();
        ent.bytes = e.file_size(ec);
        ent.desc = "?";
        std::ifstream in(e.path(), std::ios::binary);
        char head[16];
        if (in.read(head, 16) && std::memcmp(head, kMagic, 4) == 0) {
            std::uint32_t len = 0;
            std::memcpy(&len, head + 12, 4);
            if (len < 256) {
                std::string d(len, '\0');
                if (in.read(d.data(), len)) ent.desc = d;
            }
        }
        out.push_back(std::move(ent));
    }
    std::sort(out.begin(), out.end(),
              [](const CacheEntry& a, const CacheEntry& b) { return a.file < b.file; });
    return out;
}

}  // namespace opp
