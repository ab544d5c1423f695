#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <string>

namespace salmetrics::testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
  public:
    TempDir() {
        static std::atomic<int> counter{0};
        const int id = counter.fetch_add(1);
        char buf[64];
        std::snprintf(buf, sizeof buf, "salmetrics_test_%ld_%d",
                      static_cast<long>(::getpid()), id);
        path_ = std::filesystem::temp_directory_path() / buf;
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  private:
    std::filesystem::path path_;
};

}  // namespace salmetrics::testutil
