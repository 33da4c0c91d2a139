#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace taut {

/// Raised for cache files that cannot be read or fail validation.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First line of every cache file.
inline constexpr const char* kCacheHeader = "# taut-psi-cache v1";

/// Loads intersection numbers into the memo. A missing file is not an error
/// (returns 0). Every line is "g;d1,d2,...;p/q;checksum" with exponents
/// sorted and an FNV-1a checksum of the first three fields in hex.
std::size_t load_psi_cache(const std::filesystem::path& path);

/// Writes the whole memo (sorted, so identical memos give identical files)
/// through a temporary file and an atomic rename. Returns entries written.
std::size_t save_psi_cache(const std::filesystem::path& path);

/// 64-bit FNV-1a of a string, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace taut
