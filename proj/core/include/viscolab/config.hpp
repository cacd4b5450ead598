#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace viscolab {

/// Line-oriented key = value configuration with dotted section keys:
///
///   # comment
///   kind = eigen
///   domain.shape = disc
///   grid.h = 1/128
///
/// Duplicate keys are an error. Accessors record which keys were read;
/// unused_keys() powers strict unknown-key rejection at the call site.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  /// Accepts plain decimals and a/b fractions (1/128).
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated doubles (fractions allowed).
  std::vector<double> get_list(const std::string& key) const;
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const;

  /// Keys sharing a dotted prefix ("operator.b" matches "operator.b.kind").
  std::vector<std::string> keys_under(const std::string& prefix) const;
  std::vector<std::string> keys() const;

  /// Keys never touched by any accessor; empty means fully consumed.
  std::vector<std::string> unused_keys() const;
  /// Marks a key consumed without reading it.
  void touch(const std::string& key) const;

  const std::string& text() const { return text_; }

 private:
  std::map<std::string, std::string> kv_;
  mutable std::set<std::string> used_;
  std::string text_;

  const std::string& raw(const std::string& key) const;
};

}  // namespace viscolab
