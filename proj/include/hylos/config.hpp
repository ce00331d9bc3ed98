#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hylos/grid.hpp"

namespace hylos {

enum class KeyType { real, integer, text, real_list };

struct KeySpec {
  std::string key;
  KeyType type;
  std::string fallback;  ///< default value as text; empty means "unset"
  std::string help;
};

const std::vector<KeySpec>& config_schema();

/// Flat `section.key = value` file. `#` starts a comment. Unknown keys,
/// duplicates and ill-typed values are config errors.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<string>");
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  /// Explicit value or schema default.
  std::string text(const std::string& key) const;
  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  Point point(const std::string& key) const;

  const std::map<std::string, std::string>& explicit_values() const { return values_; }
  /// Every schema key with its resolved value, one `key = value` per line.
  std::string canonical() const;
  /// FNV-1a over canonical(), as 16 hex digits.
  std::string hash() const;

 private:
  std::map<std::string, std::string> values_;
};

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace hylos
