#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adelab/equidist.hpp"
#include "adelab/heights.hpp"
#include "adelab/metrics.hpp"

namespace adelab {

// Flat "key = value" configuration with [section] headers; keys are stored
// as "section.key".  CLI flags override file values.  Strict mode: keys
// outside the allowed set are rejected.
class KeyValueConfig {
 public:
  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_text(const std::string& text);

  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;

  void require_known_keys(const std::set<std::string>& allowed) const;

  // deterministic provenance echo (sorted keys)
  std::string to_json() const;

 private:
  std::map<std::string, std::string> values_;
};

// shared parsers for CLI values
MetricFamily parse_metric(const std::string& text, int ambient);
std::vector<long> parse_long_list(const std::string& text);
std::vector<std::vector<long>> parse_moment_list(const std::string& text);
// "list:5,7,11" | "primes:B" (all primes <= B) | "primes:B:K" (about K
// primes <= B, geometrically thinned)
std::vector<long> parse_schedule(const std::string& text);

QuadratureConfig quadrature_from_config(const KeyValueConfig& cfg);

}  // namespace adelab
