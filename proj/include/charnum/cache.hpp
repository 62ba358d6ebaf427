#pragma once

#include "charnum/geometry.hpp"
#include "charnum/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace charnum {

inline constexpr const char* kCacheFormat = "charnum-cache 1";
inline constexpr const char* kCacheDirEnv = "CHARNUM_CACHE_DIR";

// Memo records (descendant keys -> values) stored on disk, tied to one geometry.
// File layout: format line, "fingerprint <geometry fingerprint>", then "key<TAB>value" lines.
using MemoRecords = std::map<std::string, Rational>;

// $CHARNUM_CACHE_DIR/descendants-<name>.cache, or nullopt when the variable is unset or empty.
std::optional<std::string> default_cache_path(const TargetGeometry& geom);

// Records of a matching cache file; empty when the file is missing, malformed, or was written for
// another geometry or format. Takes a shared lock while reading.
MemoRecords load_cache(const std::string& path, const TargetGeometry& geom);

// Merges `records` into the file under an exclusive lock; writes a temporary file and renames it.
// Throws std::runtime_error when the file cannot be written.
void save_cache(const std::string& path, const TargetGeometry& geom, const MemoRecords& records);

}  // namespace charnum
