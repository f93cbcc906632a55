#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opp/geometry_id.hpp"

namespace opp {

// On-disk geometry cache.  A cache file stores the enumerated vertices,
// their ambient point sets, the lines, and the opposition rows of one
// geometry, keyed by the canonical description string and a format/code
// version pair.  The polar scaffolding is cheap and deterministic, so it
// is rebuilt on load rather than stored; anything derivable in O(table)
// time (non-opposition columns) is likewise recomputed.
//
// Layout, all little-endian:
//   "OPG1"  u32 schema  u32 codever  u32 desc_len  desc bytes  u32 nsect
//   per section: 4-byte tag, u64 payload length, u32 crc32, payload
// Any structural mismatch, checksum failure, or divergence from the
// freshly rebuilt scaffolding throws std::runtime_error.

inline constexpr std::uint32_t kCacheSchema = 1;
inline constexpr std::uint32_t kCacheCodeVersion = 1;

// Description string mangled into a portable file name, ".opg" appended.
std::string cache_file_name(const GeometryDesc& d);

void save_geometry(const Geometry& g, const std::string& path);
Geometry load_geometry(const std::string& path);

// Loads desc from cache_dir when present and valid, otherwise builds the
// geometry and writes the cache entry (best effort; an unwritable
// directory degrades to a plain build).  An empty dir disables caching.
Geometry build_geometry_cached(const GeometryDesc& d, const std::string& cache_dir);

struct CacheEntry {
    std::string file;         // file name inside the directory
    std::string desc;         // canonical description, "?" when unreadable
    std::uint64_t bytes = 0;  // file size
};

// The *.opg entries of a directory, sorted by file name.
std::vector<CacheEntry> list_cache(const std::string& dir);

}  // namespace opp
