#ifndef LINZERO_NUMERICS_NUMERICS_HPP
#define LINZERO_NUMERICS_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "linzero/derivation/derivation.hpp"

namespace linzero {

// Polynomial in t with double coefficients, lowest degree first.
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(std::vector<double> coeffs) : c_(std::move(coeffs)) {}
  // Substitutes eps (if any) exactly, then rounds the t-coefficients.
  static TPoly at_parameter(const MPoly& p, const Rational& epsilon);

  double operator()(double t) const {
    double v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
  }
  bool is_zero() const { return c_.empty(); }

 private:
  std::vector<double> c_;
};

// One accepted Dormand-Prince step with its quartic dense-output coefficients.
struct DenseStep {
  double t0 = 0;
  double h = 0;  // negative for steps taken backwards from t = 0
  std::vector<double> coeffs;  // 5 blocks of n values

  double left() const { return h > 0 ? t0 : t0 + h; }
  double right() const { return h > 0 ? t0 + h : t0; }
};

// Solution of x' = A(t, eps) x on [-R/2, R/2], integrated from t = 0 in both
// directions with local error control.
struct Trajectory {
  Rational epsilon;
  double lo = 0, hi = 0;
  std::vector<double> nodes;               // strictly increasing
  std::vector<std::vector<double>> states;  // one per node
  double local_tol = 0;
  unsigned interpolant_order = 4;
  std::vector<DenseStep> steps;  // sorted by position on the segment

  std::size_t dimension() const { return states.empty() ? 0 : states.front().size(); }
  std::vector<double> state_at(double t) const;
  double component_at(double t, std::size_t component) const;
};

Trajectory integrate_system(const LinSys& sys, const Rational& epsilon,
                            std::span<const double> init, double R, double tol);

struct ZeroCount {
  std::size_t count = 0;
  std::vector<std::pair<double, double>> brackets;
  std::vector<double> suspects;  // near-zero dips without a sign change
  double refine_tol = 0;
};

// Sign changes of the dense interpolant on a fine mesh, each bracket bisected
// to width <= refine_tol. Dips below refine_tol * max|x| without a sign change
// are reported as suspects and not counted.
ZeroCount count_zeros(const Trajectory& traj, std::size_t component, double refine_tol);

// Integrates the system and checks beta*x1^(k) = sum gamma_i x1^(i) at every
// node with x1^(i) = a^(i)(t, eps) . x computed from exact covectors. Returns
// the maximum residual normalized by the magnitude of the terms. Throws
// DegenerateParameter if eps lies on the exceptional locus.
double claim1_residual(const LinSys& sys, const DerivedEq& eq, const Rational& epsilon,
                       std::span<const double> init, double R, double tol);

// fn(t) returns f(t), f'(t), ..., f^(k)(t).
using ClosedForm = std::function<std::vector<double>(double)>;

// Max over a uniform grid on [-R/2, R/2] of
// |f^(k) - sum A_i f^(i)| / (|f^(k)| + sum |A_i f^(i)|) using the reduced
// coefficients A_i at eps. Grid points where a denominator vanishes are skipped.
double closed_form_residual(const DerivedEq& eq, const Rational& epsilon, const ClosedForm& fn,
                            double R, std::size_t points = 100);

}  // namespace linzero

#endif
