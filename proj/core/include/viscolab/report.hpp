#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace viscolab {

/// FNV-1a 64-bit content hash; the manifest fingerprint for configs and
/// emitted files.
std::uint64_t fnv1a64(std::string_view s);
std::string fnv1a64_hex(std::string_view s);

/// JSON run report, schema "viscolab.report.v1". Keys are emitted in sorted
/// order and numbers in round-trip precision, so byte-identical inputs give
/// byte-identical reports. The JSON library stays an implementation detail.
class Report {
 public:
  Report(const std::string& kind, std::uint64_t seed);
  ~Report();
  Report(Report&&) noexcept;
  Report& operator=(Report&&) noexcept;

  void put(const std::string& dotted_key, double v);
  void put(const std::string& dotted_key, const std::string& v);
  void put(const std::string& dotted_key, const char* v);
  void put(const std::string& dotted_key, bool v);
  void put(const std::string& dotted_key, std::int64_t v);
  void put(const std::string& dotted_key, int v);
  void put_array(const std::string& dotted_key, const std::vector<double>& v);

  /// manifest.<name> = fnv1a hex of the content.
  void put_manifest(const std::string& name, std::string_view content);
  /// Records an emitted file under manifest.files.<name> with its hash.
  void attach_file(const std::string& name, const std::string& path);

  void set_status(const std::string& status, const std::string& detail = "");

  std::string to_json() const;
  void write(const std::string& path) const;

  /// manifest.json companion: schema "viscolab.manifest.v1" listing every
  /// emitted file with its content hash plus the config fingerprint.
  static void write_manifest(
      const std::string& path, const std::string& kind, std::uint64_t seed,
      const std::string& config_hash,
      const std::vector<std::pair<std::string, std::string>>& files);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace viscolab
