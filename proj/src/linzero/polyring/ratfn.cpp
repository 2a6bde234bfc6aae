#include "linzero/polyring/ratfn.hpp"

#include "linzero/errors.hpp"

namespace linzero {

RatFn::RatFn(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw UsageError("rational function with zero denominator");
  if (num_.variable_count() != den_.variable_count())
    throw UsageError("numerator and denominator live in different rings");
  if (num_.is_zero()) {
    den_ = MPoly::constant(den_.variable_count(), 1);
    return;
  }
  const MPoly g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = *divide_exact(num_, g);
    den_ = *divide_exact(den_, g);
  }
  const MPoly normalized = primitive_integral(den_);
  const Rational scale = normalized.leading_coefficient() / den_.leading_coefficient();
  num_ *= scale;
  den_ = normalized;
}

RatFn::RatFn(const MPoly& p) : RatFn(p, MPoly::constant(p.variable_count(), 1)) {}

std::string RatFn::to_string() const {
  if (den_ == MPoly::constant(den_.variable_count(), 1)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace linzero
