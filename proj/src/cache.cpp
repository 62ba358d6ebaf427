#include "charnum/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace charnum {

namespace {

// flock on a sibling lock file, so the rename of the data file never races the lock
class FileLock {
 public:
  FileLock(const std::string& path, int mode) {
    fd_ = ::open((path + ".lock").c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ >= 0 && ::flock(fd_, mode) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  bool held() const { return fd_ >= 0; }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

MemoRecords read_records(const std::string& path, const TargetGeometry& geom) {
  MemoRecords out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  if (!std::getline(in, line) || line != kCacheFormat) return out;
  if (!std::getline(in, line) || line != "fingerprint " + geom.fingerprint()) return out;
  while (std::getline(in, line)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) return {};
    try {
      out[line.substr(0, tab)] = parse_rational(line.substr(tab + 1));
    } catch (const std::invalid_argument&) {
      return {};
    }
  }
  return out;
}

}  // namespace

std::optional<std::string> default_cache_path(const TargetGeometry& geom) {
  const char* dir = std::getenv(kCacheDirEnv);
  if (!dir || !*dir) return std::nullopt;
  return (std::filesystem::path(dir) / ("descendants-" + geom.name + ".cache")).string();
}

MemoRecords load_cache(const std::string& path, const TargetGeometry& geom) {
  if (!std::filesystem::exists(path)) return {};
  FileLock lock(path, LOCK_SH);
  return read_records(path, geom);
}

void save_cache(const std::string& path, const TargetGeometry& geom, const MemoRecords& records) {
  std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  FileLock lock(path, LOCK_EX);
  if (!lock.held()) throw std::runtime_error("cannot lock cache file " + path);
  MemoRecords merged = read_records(path, geom);
  for (const auto& [k, v] : records) merged[k] = v;
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp);
    out << kCacheFormat << "\n" << "fingerprint " << geom.fingerprint() << "\n";
    for (const auto& [k, v] : merged) out << k << '\t' << to_string(v) << "\n";
    if (!out.flush()) throw std::runtime_error("cannot write cache file " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot replace cache file " + path + ": " + ec.message());
  }
}

}  // namespace charnum
