#include "cornerkit/cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <thread>

#include "cornerkit/io.hpp"

namespace cornerkit {

namespace fs = std::filesystem;
using nlohmann::json;

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
}

fs::path ResultCache::default_dir() {
  if (const char* env = std::getenv(kCacheEnvVar)) return fs::path(env);
  return fs::path(".cornerkit-cache");
}

fs::path ResultCache::file_for(int k) const {
  return dir_ / ("cache-k" + std::to_string(k) + ".json");
}

namespace {

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json cache_to_json(const CacheData& data) {
  json extremal = json::array();
  for (const auto& r : data.extremal) extremal.push_back(extremal_record_to_json(r));
  json census = json::array();
  for (const auto& r : data.census) census.push_back(census_record_to_json(r));
  return json{{"schema", 1},
              {"kind", "cornerkit.cache"},
              {"k", data.k},
              {"extremal", extremal},
              {"census", census},
              {"provenance", json{{"tool", kToolVersion}, {"updated", timestamp()}}}};
}

CacheData cache_from_json(const json& j, int k) {
  if (!j.is_object() || j.value("kind", "") != "cornerkit.cache" ||
      j.value("schema", 0) != 1 || j.value("k", -1) != k)
    throw CacheError("cache file has an unexpected shape");
  CacheData data;
  data.k = k;
  for (const auto& rj : j.at("extremal"))
    data.extremal.push_back(extremal_record_from_json(rj));
  for (const auto& rj : j.at("census"))
    data.census.push_back(census_record_from_json(rj));
  return data;
}

// Lock file via O_CREAT|O_EXCL with bounded retries.
class FileLock {
 public:
  explicit FileLock(const fs::path& target) : path_(target.string() + ".lock") {
    for (int attempt = 0; attempt < 200; ++attempt) {
      fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
      if (fd_ >= 0) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    throw CacheError("could not acquire cache lock " + path_);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::close(fd_);
      ::unlink(path_.c_str());
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  std::string path_;
  int fd_ = -1;
};

}  // namespace

CacheData ResultCache::load(int k) const {
  const fs::path file = file_for(k);
  if (!fs::exists(file)) return CacheData{k, {}, {}};
  std::ifstream in(file);
  if (!in) throw CacheError("cannot read cache file " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw CacheError("cache file " + file.string() + " is corrupt: " + e.what());
  }
  try {
    return cache_from_json(j, k);
  } catch (const json::exception& e) {
    throw CacheError("cache file " + file.string() + " is corrupt: " + e.what());
  }
}

void ResultCache::update(int k, const std::function<void(CacheData&)>& fn) const {
  const fs::path file = file_for(k);
  FileLock lock(file);
  CacheData data = load(k);  // corrupt cache throws before any write
  fn(data);
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << cache_to_json(data).dump(2) << "\n";
  }
  fs::rename(tmp, file);
}

ExtremalRecord ResultCache::upsert_extremal(const ExtremalRecord& rec) {
  ExtremalRecord merged = rec;
  update(rec.k, [&](CacheData& data) {
    ExtremalTable table;
    for (const auto& r : data.extremal) table.merge(r);
    table.merge(rec);
    data.extremal.clear();
    for (const ExtremalRecord* r : table.records_for(rec.k)) {
      data.extremal.push_back(*r);
      if (r->n == rec.n) merged = *r;
    }
  });
  return merged;
}

CensusRecord ResultCache::upsert_census(const CensusRecord& rec) {
  CensusRecord merged = rec;
  update(rec.k, [&](CacheData& data) {
    bool replaced = false;
    for (auto& r : data.census) {
      if (r.n != rec.n) continue;
      replaced = true;
      if (r.exact && !rec.exact) {
        merged = r;  // exact results win
      } else if (r.exact && rec.exact && r.count != rec.count) {
        throw CacheError("conflicting exact census values for n=" + std::to_string(rec.n));
      } else {
        r = rec;
      }
    }
    if (!replaced) data.census.push_back(rec);
    std::sort(data.census.begin(), data.census.end(),
              [](const CensusRecord& a, const CensusRecord& b) { return a.n < b.n; });
  });
  return merged;
}

void ResultCache::fill_table(int k, ExtremalTable& table) const {
  for (const auto& r : load(k).extremal) table.merge(r);
}

}  // namespace cornerkit
