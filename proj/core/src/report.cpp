#include "viscolab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace viscolab {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view s) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

struct Report::Impl {
  nlohmann::json j;
};

namespace {

nlohmann::json* resolve(nlohmann::json& root, const std::string& dotted) {
  nlohmann::json* cur = &root;
  std::size_t start = 0;
  while (true) {
    auto dot = dotted.find('.', start);
    const std::string part =
        dotted.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty()) throw std::invalid_argument("report: empty key segment");
    if (dot == std::string::npos) return &(*cur)[part];
    cur = &(*cur)[part];
    start = dot + 1;
  }
}

}  // namespace

Report::Report(const std::string& kind, std::uint64_t seed)
    : impl_(new Impl) {
  impl_->j["schema"] = "viscolab.report.v1";
  impl_->j["kind"] = kind;
  impl_->j["seed"] = seed;
  impl_->j["status"] = "ok";
}

Report::~Report() = default;
Report::Report(Report&&) noexcept = default;
Report& Report::operator=(Report&&) noexcept = default;

void Report::put(const std::string& k, double v) { *resolve(impl_->j, k) = v; }
void Report::put(const std::string& k, const std::string& v) {
  *resolve(impl_->j, k) = v;
}
void Report::put(const std::string& k, const char* v) {
  *resolve(impl_->j, k) = std::string(v);
}
void Report::put(const std::string& k, bool v) { *resolve(impl_->j, k) = v; }
void Report::put(const std::string& k, std::int64_t v) {
  *resolve(impl_->j, k) = v;
}
void Report::put(const std::string& k, int v) {
  *resolve(impl_->j, k) = static_cast<std::int64_t>(v);
}
void Report::put_array(const std::string& k, const std::vector<double>& v) {
  *resolve(impl_->j, k) = v;
}

void Report::put_manifest(const std::string& name, std::string_view content) {
  impl_->j["manifest"][name] = fnv1a64_hex(content);
}

void Report::attach_file(const std::string& name, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("report: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  impl_->j["manifest"]["files"][name] = fnv1a64_hex(ss.str());
}

void Report::set_status(const std::string& status, const std::string& detail) {
  impl_->j["status"] = status;
  if (!detail.empty()) impl_->j["status_detail"] = detail;
}

std::string Report::to_json() const { return impl_->j.dump(2) + "\n"; }

void Report::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot write '" + path + "'");
  out << to_json();
}

void Report::write_manifest(
    const std::string& path, const std::string& kind, std::uint64_t seed,
    const std::string& config_hash,
    const std::vector<std::pair<std::string, std::string>>& files) {
  nlohmann::json j;
  j["schema"] = "viscolab.manifest.v1";
  j["kind"] = kind;
  j["seed"] = seed;
  j["config"] = config_hash;
  j["files"] = nlohmann::json::object();
  for (const auto& [name, hash] : files) j["files"][name] = hash;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace viscolab
