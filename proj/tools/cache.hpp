#pragma once

// On-disk cache of Fourier expansions: <root>/<schema>/<form-id>.json.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "e8jacobi/jacobi.hpp"
#include "json.hpp"

namespace e8jac::cli {

inline constexpr int kSchemaVersion = 1;

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CacheEntry {
  int schema = kSchemaVersion;
  std::string form_id;
  JacobiExpansion payload;
};

nlohmann::json expansion_to_json(const JacobiExpansion& f);
JacobiExpansion expansion_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CacheEntry& e);
// Throws CacheError on a schema mismatch or malformed payload.
CacheEntry entry_from_json(const nlohmann::json& j);

// 64-bit FNV-1a, 16 hex digits.
std::string fnv1a_hex(std::string_view text);
// Generator and named-form identifiers are used verbatim; anything else is hashed.
std::string form_id(const std::string& canonical_text);

class ExpansionCache {
 public:
  explicit ExpansionCache(std::filesystem::path root) : root_(std::move(root)) {}
  std::filesystem::path path_for(const std::string& id) const;
  // Truncated to the request when a deeper expansion is stored.
  std::optional<JacobiExpansion> load(const std::string& id, int truncation) const;
  // Keeps the deeper of the stored and the new expansion; write-temp-then-rename.
  void store(const CacheEntry& e) const;

 private:
  std::filesystem::path root_;
};

}  // namespace e8jac::cli
