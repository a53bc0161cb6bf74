#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace optkb::archive {

enum class Format { Tar, TarGz, Zip, Unknown };

// Detects by magic bytes.
Format detect(std::string_view data);

// zlib/gzip inflate of a complete gzip member. Throws std::runtime_error.
std::string gunzip(std::string_view data);

// Writes regular files of a tar, tar.gz or zip archive below `dest` and
// returns their relative paths. Entries with absolute paths or ".."
// components are refused. Throws std::runtime_error on malformed input.
std::vector<std::string> extract(std::string_view data,
                                 const std::filesystem::path& dest);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace optkb::archive
