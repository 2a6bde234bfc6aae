#ifndef LINZERO_DERIVATION_LINSYS_HPP
#define LINZERO_DERIVATION_LINSYS_HPP

#include <cstddef>
#include <vector>

#include "linzero/polyring/mpoly.hpp"

namespace linzero {

// How the declared degree bound is read: jointly in (t, p) or in t alone
// with the parameters acting as coefficients.
enum class DegreeKind { joint, t_only };

// x' = A(t, p) x with integer polynomial entries in (t, p1..pq).
class LinSys {
 public:
  // `entries` is row-major, n*n polynomials with 1 + q variables.
  LinSys(std::size_t n, std::size_t q, unsigned degree, std::vector<MPoly> entries,
         DegreeKind kind = DegreeKind::joint);

  std::size_t n() const { return n_; }
  std::size_t q() const { return q_; }
  std::size_t variable_count() const { return q_ + 1; }
  unsigned degree() const { return degree_; }
  DegreeKind degree_kind() const { return kind_; }

  const MPoly& entry(std::size_t row, std::size_t col) const {
    return entries_[row * n_ + col];
  }
  const std::vector<MPoly>& entries() const { return entries_; }

  // Largest |coefficient| over all entries; 0 for the zero system.
  const Integer& max_coefficient() const { return max_coeff_; }

  // Largest joint total degree actually present.
  unsigned actual_degree() const;

 private:
  std::size_t n_;
  std::size_t q_;
  unsigned degree_;
  DegreeKind kind_;
  std::vector<MPoly> entries_;
  Integer max_coeff_;
};

using PolyVector = std::vector<MPoly>;
using PolyMatrix = std::vector<std::vector<MPoly>>;  // row-major

}  // namespace linzero

#endif
