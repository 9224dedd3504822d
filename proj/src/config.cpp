#include "adelab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adelab/factor.hpp"

namespace adelab {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

KeyValueConfig KeyValueConfig::from_text(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    cfg.set(section.empty() ? key : section + "." + key, value);
  }
  return cfg;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, const std::string& fallback) const {
  auto v = get(key);
  return v ? *v : fallback;
}

void KeyValueConfig::require_known_keys(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : values_) {
    if (!allowed.count(k)) throw ConfigError("unknown config key: " + k);
  }
}

std::string KeyValueConfig::to_json() const {
  nlohmann::json j;
  for (const auto& [k, v] : values_) j[k] = v;  // std::map keeps keys sorted
  return j.dump();
}

MetricFamily parse_metric(const std::string& text, int ambient) {
  if (text == "canonical" || text == "can") return MetricFamily::canonical(ambient);
  if (text == "fs" || text == "fubini-study") return MetricFamily::fubini_study(ambient);
  // perturbed(<base>;<f-expr>;<t>)
  if (text.rfind("perturbed(", 0) == 0 && text.back() == ')') {
    std::string body = text.substr(10, text.size() - 11);
    // split on top-level ';' into exactly three fields
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : body) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ';' && depth == 0 && parts.size() < 2) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
    if (parts.size() != 3) {
      throw ConfigError("metric grammar: perturbed(<base>;<f>;<t>) expected");
    }
    Rat t;
    try {
      t = Rat(parts[2]);
      t.canonicalize();
    } catch (const std::invalid_argument&) {
      throw ConfigError("metric grammar: bad rational t '" + parts[2] + "'");
    }
    return MetricFamily::perturbed(parse_metric(parts[0], ambient),
                                   Place::rational_archimedean(),
                                   ElementaryFunction::parse(parts[1]), t);
  }
  throw ConfigError("metric grammar: expected canonical | fs | perturbed(...)");
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      out.push_back(std::stol(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::stol(cur));
  return out;
}

std::vector<std::vector<long>> parse_moment_list(const std::string& text) {
  std::vector<std::vector<long>> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      out.push_back(parse_long_list(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(parse_long_list(cur));
  if (out.empty()) throw ConfigError("moments: empty list");
  return out;
}

std::vector<long> parse_schedule(const std::string& text) {
  if (text.rfind("list:", 0) == 0) {
    auto out = parse_long_list(text.substr(5));
    if (out.empty()) throw ConfigError("schedule: empty list");
    return out;
  }
  if (text.rfind("primes:", 0) == 0) {
    auto rest = text.substr(7);
    auto colon = rest.find(':');
    long bound = std::stol(colon == std::string::npos ? rest : rest.substr(0, colon));
    auto primes = primes_up_to(bound);
    if (primes.empty()) throw ConfigError("schedule: no primes below the bound");
    if (colon == std::string::npos) return primes;
    // geometric thinning to about K entries, always keeping the largest
    long target = std::stol(rest.substr(colon + 1));
    if (target <= 0) throw ConfigError("schedule: thinning count must be positive");
    if (static_cast<long>(primes.size()) <= target) return primes;
    std::vector<long> out;
    double ratio = std::pow(static_cast<double>(primes.back()) / primes.front(),
                            1.0 / static_cast<double>(target - 1));
    double next = primes.front();
    for (long p : primes) {
      if (p >= next - 0.5) {
        out.push_back(p);
        next = std::max(next * ratio, static_cast<double>(p) + 1);
      }
    }
    if (out.back() != primes.back()) out.push_back(primes.back());
    return out;
  }
  throw ConfigError("schedule grammar: list:... or primes:B or primes:B:K");
}

QuadratureConfig quadrature_from_config(const KeyValueConfig& cfg) {
  QuadratureConfig q;
  q.radial_order = std::stoi(cfg.get_or("quadrature.radial_order", "64"));
  q.radial_panels = std::stoi(cfg.get_or("quadrature.radial_panels", "16"));
  q.angular_order = std::stoi(cfg.get_or("quadrature.angular_order", "256"));
  q.tolerance = std::stod(cfg.get_or("quadrature.tolerance", "1e-6"));
  q.tail_mass = std::stod(cfg.get_or("quadrature.tail_mass", "1e-9"));
  return q;
}

}  // namespace adelab
