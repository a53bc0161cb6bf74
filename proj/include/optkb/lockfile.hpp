#pragma once

#include <filesystem>
#include <stdexcept>

namespace optkb {

class LockedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exclusive advisory lock on "<store>.lock", held for the object's lifetime.
// Throws LockedError when another process holds it.
class StoreLock {
 public:
  explicit StoreLock(const std::filesystem::path& store);
  ~StoreLock();
  StoreLock(const StoreLock&) = delete;
  StoreLock& operator=(const StoreLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace optkb
