#pragma once

#include <filesystem>
#include <random>
#include <string>

namespace varinf::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(VARINF_TEST_FIXTURES) / name;
}

inline std::filesystem::path golden(const std::string& name) {
  return std::filesystem::path(VARINF_TEST_GOLDEN) / name;
}

inline std::filesystem::path bundled(const std::string& name) {
  return std::filesystem::path(VARINF_TEST_DATA) / name;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("varinf-test-" + std::to_string(rd()) + std::to_string(rd()));
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

}  // namespace varinf::testing
