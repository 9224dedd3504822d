#pragma once

#include <vector>

#include "adelab/cyclotomic.hpp"
#include "adelab/numeric.hpp"

namespace adelab {

// Hermite normal form of the row span of an integer matrix (rows are
// generators, columns are coordinates).  Returns the reduced row-echelon
// Hermite basis; rank = number of returned rows.
std::vector<std::vector<Int>> hermite_normal_form(std::vector<std::vector<Int>> rows);

// Index [Z^dim : row span], i.e. the absolute determinant of the HNF basis.
// DomainError if the span has rank < dim.
Int row_module_index(std::vector<std::vector<Int>> rows, long dim);

// Norm of the content ideal (p_0, ..., p_n) in Z[zeta_N]: the index of the
// Z-module spanned by zeta^j * p_i inside Z[zeta_N].  Coordinates must be
// integral and not all zero.
Int content_ideal_norm(const std::vector<CyclotomicElement>& coords);

// log of the norm, the exact finite-place aggregate used by heights.
double content_ideal_lognorm(const std::vector<CyclotomicElement>& coords);

}  // namespace adelab
