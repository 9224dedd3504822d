#include "adelab/hnf.hpp"

#include <algorithm>
#include <cmath>

namespace adelab {

namespace {

bool row_is_zero(const std::vector<Int>& r) {
  return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

}  // namespace

std::vector<std::vector<Int>> hermite_normal_form(std::vector<std::vector<Int>> rows) {
  rows.erase(std::remove_if(rows.begin(), rows.end(), row_is_zero), rows.end());
  if (rows.empty()) return rows;
  const std::size_t ncols = rows[0].size();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
    // gcd-eliminate the column below pivot_row
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = pivot_row; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
      }
      if (best == rows.size()) break;  // column clear below
      std::swap(rows[pivot_row], rows[best]);
      Int piv = rows[pivot_row][col];
      bool reduced_all = true;
      for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), piv.get_mpz_t());
        for (std::size_t j = col; j < ncols; ++j) rows[i][j] -= q * rows[pivot_row][j];
        if (rows[i][col] != 0) reduced_all = false;
      }
      if (reduced_all) {
        // pivot found; normalize sign and reduce the rows above
        if (rows[pivot_row][col] < 0) {
          for (std::size_t j = col; j < ncols; ++j) rows[pivot_row][j] = -rows[pivot_row][j];
        }
        Int p = rows[pivot_row][col];
        for (std::size_t i = 0; i < pivot_row; ++i) {
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), p.get_mpz_t());
          if (q == 0) continue;
          for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= q * rows[pivot_row][j];
        }
        ++pivot_row;
        break;
      }
    }
  }
  rows.erase(std::remove_if(rows.begin(), rows.end(), row_is_zero), rows.end());
  return rows;
}

Int row_module_index(std::vector<std::vector<Int>> rows, long dim) {
  auto h = hermite_normal_form(std::move(rows));
  if (static_cast<long>(h.size()) != dim) {
    throw DomainError("row_module_index: module has deficient rank");
  }
  Int det = 1;
  // echelon basis: row i has its pivot in some column; product of pivots
  std::size_t col = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    while (col < h[i].size() && h[i][col] == 0) ++col;
    if (col >= h[i].size()) throw DomainError("row_module_index: malformed echelon basis");
    det *= h[i][col];
    ++col;
  }
  return det;
}

Int content_ideal_norm(const std::vector<CyclotomicElement>& coords) {
  if (coords.empty()) throw DomainError("content_ideal_norm: no coordinates");
  const auto& ctx = coords[0].ctx();
  const long phi = ctx->degree();
  bool all_zero = true;
  for (const auto& c : coords) {
    if (!c.is_integral()) throw DomainError("content_ideal_norm: non-integral coordinate");
    if (!c.is_zero()) all_zero = false;
  }
  if (all_zero) throw DomainError("content_ideal_norm: all coordinates zero");

  // a unit coordinate generates everything
  for (const auto& c : coords) {
    if (c.is_root_of_unity()) return Int(1);
  }

  std::vector<std::vector<Int>> rows;
  rows.reserve(coords.size() * static_cast<std::size_t>(phi));
  auto zeta = CyclotomicElement::root_of_unity(ctx, 1);
  for (const auto& c : coords) {
    CyclotomicElement cur = c;
    for (long j = 0; j < phi; ++j) {
      std::vector<Int> row;
      row.reserve(static_cast<std::size_t>(phi));
      for (const auto& r : cur.coeffs()) row.push_back(r.get_num());
      rows.push_back(std::move(row));
      if (j + 1 < phi) cur = cur * zeta;
    }
  }
  return row_module_index(std::move(rows), phi);
}

double content_ideal_lognorm(const std::vector<CyclotomicElement>& coords) {
  Int norm = content_ideal_norm(coords);
  signed long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, norm.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

}  // namespace adelab
