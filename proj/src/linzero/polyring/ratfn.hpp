#ifndef LINZERO_POLYRING_RATFN_HPP
#define LINZERO_POLYRING_RATFN_HPP

#include <string>

#include "linzero/polyring/mpoly.hpp"

namespace linzero {

// Quotient of polynomials kept in lowest terms. The denominator is scaled to
// integer coefficients with gcd 1 and a positive grlex leading coefficient,
// which makes the representation canonical.
class RatFn {
 public:
  RatFn(MPoly num, MPoly den);
  explicit RatFn(const MPoly& p);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }

  bool is_polynomial() const { return den_.is_constant(); }

  friend bool operator==(const RatFn& a, const RatFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  MPoly num_;
  MPoly den_;
};

}  // namespace linzero

#endif
