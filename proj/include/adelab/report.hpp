#pragma once

#include <string>

#include "adelab/equidist.hpp"
#include "adelab/heights.hpp"

namespace adelab {

// CSV with the fixed header
//   family,N,orbit_size,degree,height,normalized_height,smallness_value,
//   moment_index,moment_re,moment_im,oracle_re,oracle_im,abs_error,
//   genericity_fraction
// and all floating values printed with 17 significant digits.  When
// config_json is nonempty it is echoed as a leading "# {...}" comment line.
std::string experiment_csv(const ExperimentResult& result, const std::string& config_json = "");

// {total, finite_part: [[coeff_num, coeff_den, base]], archimedean, trace};
// bases beyond 2^53 are serialized as strings to stay lossless.
std::string height_value_json(const HeightValue& h);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace adelab
