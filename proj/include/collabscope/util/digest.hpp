#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace collabscope::util {

/// Incremental SHA-256; hex output is lowercase.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::string_view bytes);
  /// Appends the length as 8 big-endian bytes followed by the bytes, so that
  /// concatenated fields can never alias one another.
  void update_field(std::string_view bytes);
  std::string hex_digest();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string sha256_hex(std::string_view bytes);

}  // namespace collabscope::util
