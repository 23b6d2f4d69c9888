#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "cornerkit/census.hpp"
#include "cornerkit/extremal.hpp"

namespace cornerkit {

inline constexpr const char* kToolVersion = "cornerkit 0.1.0";
inline constexpr const char* kCacheEnvVar = "CORNERKIT_CACHE_DIR";

struct CacheData {
  int k = 0;
  std::vector<ExtremalRecord> extremal;
  std::vector<CensusRecord> census;
};

// One JSON file per dimension k. Writes take a lock file, re-read, merge
// and replace the file atomically (write-then-rename). Exact records are
// never overwritten by bounded ones; conflicting exact values are refused.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(int k) const;

  CacheData load(int k) const;  // missing file -> empty data
  ExtremalRecord upsert_extremal(const ExtremalRecord&);  // returns merged record
  CensusRecord upsert_census(const CensusRecord&);

  // Populates a table with every extremal record cached for k.
  void fill_table(int k, ExtremalTable&) const;

 private:
  std::filesystem::path dir_;
  void update(int k, const std::function<void(CacheData&)>& fn) const;
};

}  // namespace cornerkit
