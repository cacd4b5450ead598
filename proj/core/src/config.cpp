#include "viscolab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace viscolab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_number(const std::string& key, const std::string& v) {
  const auto slash = v.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const std::string num = trim(v.substr(0, slash));
      const std::string den = trim(v.substr(slash + 1));
      const double a = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(v);
      const double b = std::stod(den, &used);
      if (used != den.size() || b == 0.0) throw std::invalid_argument(v);
      return a / b;
    }
    const double a = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return a;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' has non-numeric value '" +
                             v + "'");
  }
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config c;
  c.text_ = text;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(lineno) +
                               " has no '='");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config: line " + std::to_string(lineno) +
                               " has an empty key");
    if (c.kv_.count(key))
      throw std::runtime_error("config: duplicate key '" + key + "' at line " +
                               std::to_string(lineno));
    c.kv_[key] = val;
  }
  return c;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

const std::string& Config::raw(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end())
    throw std::runtime_error("config: missing required key '" + key + "'");
  used_.insert(key);
  return it->second;
}

std::string Config::get_string(const std::string& key) const { return raw(key); }
std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  return has(key) ? raw(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  return parse_number(key, raw(key));
}
double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long Config::get_int(const std::string& key) const {
  const double v = get_double(key);
  const long r = static_cast<long>(v);
  if (static_cast<double>(r) != v)
    throw std::runtime_error("config: key '" + key + "' is not an integer");
  return r;
}
long Config::get_int(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key) const {
  const std::string v = raw(key);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw std::runtime_error("config: key '" + key + "' is not a boolean");
}
bool Config::get_bool(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

std::vector<double> Config::get_list(const std::string& key) const {
  const std::string v = raw(key);
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    auto comma = v.find(',', start);
    if (comma == std::string::npos) comma = v.size();
    const std::string item = trim(v.substr(start, comma - start));
    if (!item.empty()) out.push_back(parse_number(key, item));
    start = comma + 1;
  }
  if (out.empty())
    throw std::runtime_error("config: key '" + key + "' has an empty list");
  return out;
}
std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& fallback) const {
  return has(key) ? get_list(key) : fallback;
}

std::vector<std::string> Config::keys_under(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv_)
    if (k.rfind(prefix + ".", 0) == 0 || k == prefix) out.push_back(k);
  return out;
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv_) out.push_back(k);
  return out;
}

std::vector<std::string> Config::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv_)
    if (!used_.count(k)) out.push_back(k);
  return out;
}

void Config::touch(const std::string& key) const {
  if (kv_.count(key)) used_.insert(key);
}

}  // namespace viscolab
