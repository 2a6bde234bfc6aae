#include "linzero/derivation/linsys.hpp"

#include <algorithm>
#include <string>

#include "linzero/errors.hpp"

namespace linzero {

LinSys::LinSys(std::size_t n, std::size_t q, unsigned degree,
               std::vector<MPoly> entries, DegreeKind kind)
    : n_(n), q_(q), degree_(degree), kind_(kind), entries_(std::move(entries)) {
  if (n_ == 0) throw UsageError("system dimension must be at least 1");
  if (entries_.size() != n_ * n_) throw UsageError("matrix must have n*n entries");
  max_coeff_ = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const MPoly& p = entries_[i];
    const std::string where =
        "entry (" + std::to_string(i / n_) + "," + std::to_string(i % n_) + ")";
    if (p.variable_count() != q_ + 1)
      throw UsageError(where + " has the wrong number of variables");
    if (!p.has_integer_coefficients())
      throw UsageError(where + " has a non-integer coefficient");
    const int deg = kind_ == DegreeKind::joint ? p.total_degree() : p.degree_in(0);
    if (deg > static_cast<int>(degree_))
      throw UsageError(where + " exceeds the declared degree");
    for (const auto& [e, c] : p.terms()) {
      Integer a = abs(c.get_num());
      if (a > max_coeff_) max_coeff_ = a;
    }
  }
}

unsigned LinSys::actual_degree() const {
  int d = 0;
  for (const MPoly& p : entries_) d = std::max(d, p.total_degree());
  return static_cast<unsigned>(d);
}

}  // namespace linzero
