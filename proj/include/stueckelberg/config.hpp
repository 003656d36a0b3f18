#pragma once

#include <map>
#include <string>
#include <vector>

namespace stueckelberg {

// Line-oriented configuration: one `dotted.key = value` per line, `#`
// comments, exactly one experiment per file. Values stay strings until read
// through a typed getter. Key names carry their unit as a suffix
// (e.g. bloch.t1_us) so files are self-describing.
class Config {
 public:
  Config() = default;

  // Throws std::invalid_argument with a line number on malformed input or
  // duplicate keys.
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  // Canonical form: keys sorted, single `key = value` per line.
  std::string serialize() const;

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // Rejects any key not in `known`, naming the closest valid key.
  void require_known_keys(const std::vector<std::string>& known) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  bool operator==(const Config&) const = default;

 private:
  std::map<std::string, std::string> entries_;
};

// Closest candidate by edit distance; empty when `known` is empty.
std::string nearest_key(const std::string& key, const std::vector<std::string>& known);

}  // namespace stueckelberg
