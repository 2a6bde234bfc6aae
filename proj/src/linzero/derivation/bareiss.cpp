#include "linzero/derivation/bareiss.hpp"

#include <utility>

#include "linzero/errors.hpp"

namespace linzero {

namespace {

MPoly exact_quotient(const MPoly& a, const MPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw ConsistencyError("Bareiss step produced an inexact division");
  return std::move(*q);
}

// Eliminates in place; returns the rank and flips `sign` for each row swap.
std::size_t eliminate(PolyMatrix& m, int& sign) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m.front().size();
  const std::size_t nv = m.front().empty() ? 1 : m.front().front().variable_count();
  MPoly prev = MPoly::constant(nv, 1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        MPoly v = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        m[i][j] = exact_quotient(v, prev);
      }
      m[i][c] = MPoly(nv);
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

}  // namespace

std::size_t bareiss_rank(PolyMatrix m) {
  int sign = 1;
  return eliminate(m, sign);
}

MPoly bareiss_determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw UsageError("determinant of a non-square matrix");
  if (n == 0) throw UsageError("determinant of an empty matrix");
  int sign = 1;
  const std::size_t rank = eliminate(m, sign);
  if (rank < n) return MPoly(m[0][0].variable_count());
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace linzero
