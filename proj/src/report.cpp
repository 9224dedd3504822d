#include "adelab/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace adelab {

std::string experiment_csv(const ExperimentResult& result, const std::string& config_json) {
  std::ostringstream os;
  if (!config_json.empty()) os << "# " << config_json << "\n";
  os << "family,N,orbit_size,degree,height,normalized_height,smallness_value,moment_index,"
        "moment_re,moment_im,oracle_re,oracle_im,abs_error,genericity_fraction\n";
  for (const auto& r : result.rows) {
    os << r.family << "," << r.conductor << "," << r.orbit_size << ","
       << format_double17(r.degree) << "," << format_double17(r.height) << ","
       << format_double17(r.normalized_height) << "," << format_double17(r.smallness_value)
       << "," << r.moment_index << "," << format_double17(r.moment.real()) << ","
       << format_double17(r.moment.imag()) << "," << format_double17(r.oracle.real()) << ","
       << format_double17(r.oracle.imag()) << "," << format_double17(r.abs_error) << ","
       << format_double17(r.genericity_fraction) << "\n";
  }
  return os.str();
}

std::string height_value_json(const HeightValue& h) {
  nlohmann::json j;
  j["total"] = h.total;
  nlohmann::json finite = nlohmann::json::array();
  for (const auto& term : h.finite) {
    nlohmann::json entry = nlohmann::json::array();
    entry.push_back(static_cast<long>(term.coeff.get_num().get_si()));
    entry.push_back(static_cast<long>(term.coeff.get_den().get_si()));
    if (term.base.fits_slong_p() && term.base < Int("9007199254740992")) {
      entry.push_back(static_cast<long>(term.base.get_si()));
    } else {
      entry.push_back(term.base.get_str());
    }
    finite.push_back(entry);
  }
  j["finite_part"] = finite;
  j["archimedean"] = h.archimedean;
  j["trace"] = h.trace;
  return j.dump();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << content;
}

}  // namespace adelab
