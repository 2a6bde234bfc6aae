#include "linzero/numerics/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linzero/errors.hpp"

namespace linzero {

TPoly TPoly::at_parameter(const MPoly& p, const Rational& epsilon) {
  MPoly fixed = p;
  if (p.variable_count() == 2) {
    const Rational eps[] = {epsilon};
    fixed = eval_params(p, eps);
  } else if (p.variable_count() != 1) {
    throw UnsupportedParameterCount("numerics supports at most one parameter");
  }
  std::vector<double> c;
  if (!fixed.is_zero()) {
    c.assign(static_cast<std::size_t>(fixed.degree_in(0)) + 1, 0.0);
    for (const auto& [e, v] : fixed.terms()) c[e[0]] += v.get_d();
  }
  return TPoly(std::move(c));
}

namespace {

// Dormand-Prince 5(4) tableau with Hairer's dense output.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr std::size_t kMaxSteps = 2000000;

class LinearRhs {
 public:
  LinearRhs(const LinSys& sys, const Rational& epsilon) : n_(sys.n()) {
    for (const MPoly& p : sys.entries()) a_.push_back(TPoly::at_parameter(p, epsilon));
    scratch_.resize(n_ * n_);
  }

  void operator()(double t, const std::vector<double>& x, std::vector<double>& dx) {
    for (std::size_t i = 0; i < n_ * n_; ++i) scratch_[i] = a_[i].is_zero() ? 0.0 : a_[i](t);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n_; ++j) s += scratch_[i * n_ + j] * x[j];
      dx[i] = s;
    }
  }

 private:
  std::size_t n_;
  std::vector<TPoly> a_;
  std::vector<double> scratch_;
};

// Integrates from 0 to `end` (either sign) and appends accepted steps.
void integrate_leg(LinearRhs& f, std::vector<double> y, double end, double tol,
                   std::vector<DenseStep>& steps) {
  const std::size_t n = y.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), y1(n);
  double t = 0;
  const double dir = end > 0 ? 1.0 : -1.0;
  double h = dir * std::min(std::abs(end), 1e-2);
  f(t, y, k1);
  std::size_t count = 0;
  while (dir * (end - t) > 0) {
    if (++count > kMaxSteps) throw IntegrationError("step budget exhausted", t);
    if (dir * (t + h - end) > 0) h = end - t;
    auto stage = [&](std::vector<double>& out, double ct,
                     std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (const auto& [coef, k] : terms) s += coef * (*k)[i];
        yt[i] = y[i] + h * s;
      }
      f(t + ct * h, yt, out);
    };
    stage(k2, c2, {{a21, &k1}});
    stage(k3, c3, {{a31, &k1}, {a32, &k2}});
    stage(k4, c4, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    stage(k5, c5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    stage(k6, 1.0, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    for (std::size_t i = 0; i < n; ++i)
      y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    f(t + h, y1, k7);

    double err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = tol + tol * std::max(std::abs(y[i]), std::abs(y1[i]));
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]);
      err += (ei / sk) * (ei / sk);
    }
    err = std::sqrt(err / static_cast<double>(n));
    if (!std::isfinite(err)) throw IntegrationError("non-finite error estimate", t);

    double fac = err == 0 ? 10.0 : 0.9 * std::pow(err, -0.2);
    if (err <= 1.0) {
      DenseStep step;
      step.t0 = t;
      step.h = h;
      step.coeffs.resize(5 * n);
      for (std::size_t i = 0; i < n; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        step.coeffs[i] = y[i];
        step.coeffs[n + i] = ydiff;
        step.coeffs[2 * n + i] = bspl;
        step.coeffs[3 * n + i] = ydiff - h * k7[i] - bspl;
        step.coeffs[4 * n + i] =
            h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      steps.push_back(std::move(step));
      t += h;
      y = y1;
      k1 = k7;
      h *= std::clamp(fac, 0.2, 10.0);
    } else {
      h *= std::clamp(fac, 0.2, 1.0);
    }
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
      throw IntegrationError("step size underflow", t);
  }
}

double dense_eval(const DenseStep& s, std::size_t n, std::size_t i, double t) {
  const double th = (t - s.t0) / s.h;
  const double th1 = 1 - th;
  const double* c = s.coeffs.data();
  return c[i] + th * (c[n + i] + th1 * (c[2 * n + i] + th * (c[3 * n + i] + th1 * c[4 * n + i])));
}

}  // namespace

std::vector<double> Trajectory::state_at(double t) const {
  std::vector<double> out(dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = component_at(t, i);
  return out;
}

double Trajectory::component_at(double t, std::size_t component) const {
  const std::size_t n = dimension();
  if (component >= n) throw UsageError("trajectory component out of range");
  if (steps.empty()) return states.front()[component];
  auto it = std::lower_bound(steps.begin(), steps.end(), t,
                             [](const DenseStep& s, double v) { return s.right() < v; });
  if (it == steps.end()) it = std::prev(steps.end());
  return dense_eval(*it, n, component, t);
}

Trajectory integrate_system(const LinSys& sys, const Rational& epsilon,
                            std::span<const double> init, double R, double tol) {
  if (sys.q() > 1) throw UnsupportedParameterCount("numerics supports at most one parameter");
  if (!(tol > 0)) throw UsageError("integration tolerance must be positive");
  if (!(R > 0)) throw UsageError("segment length must be positive");
  if (init.size() != sys.n()) throw UsageError("initial state has the wrong dimension");

  LinearRhs f(sys, epsilon);
  const std::vector<double> y0(init.begin(), init.end());
  std::vector<DenseStep> back, fwd;
  integrate_leg(f, y0, -R / 2, tol, back);
  integrate_leg(f, y0, R / 2, tol, fwd);

  Trajectory traj;
  traj.epsilon = epsilon;
  traj.lo = -R / 2;
  traj.hi = R / 2;
  traj.local_tol = tol;
  traj.steps.assign(back.rbegin(), back.rend());
  traj.steps.insert(traj.steps.end(), fwd.begin(), fwd.end());

  const std::size_t n = sys.n();
  auto end_state = [n](const DenseStep& s) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = s.coeffs[i] + s.coeffs[n + i];
    return v;
  };
  for (auto it = back.rbegin(); it != back.rend(); ++it) {
    traj.nodes.push_back(it->t0 + it->h);
    traj.states.push_back(end_state(*it));
  }
  traj.nodes.push_back(0.0);
  traj.states.push_back(y0);
  for (const DenseStep& s : fwd) {
    traj.nodes.push_back(s.t0 + s.h);
    traj.states.push_back(end_state(s));
  }
  return traj;
}

ZeroCount count_zeros(const Trajectory& traj, std::size_t component, double refine_tol) {
  if (component >= traj.dimension()) throw UsageError("component index out of range");
  if (!(refine_tol > 0)) throw UsageError("refinement tolerance must be positive");
  constexpr int kSub = 16;

  std::vector<double> ts;
  if (traj.steps.empty()) {
    ts = traj.nodes;
  } else {
    for (const DenseStep& s : traj.steps) {
      const double a = s.left(), b = s.right();
      for (int j = 0; j < kSub; ++j) ts.push_back(a + (b - a) * j / kSub);
    }
    ts.push_back(traj.steps.back().right());
  }
  std::vector<double> vs(ts.size());
  double scale = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    vs[i] = traj.component_at(ts[i], component);
    scale = std::max(scale, std::abs(vs[i]));
  }

  ZeroCount zc;
  zc.refine_tol = refine_tol;
  auto f = [&](double t) { return traj.component_at(t, component); };

  auto bisect = [&](double lo, double hi) {
    double flo = f(lo);
    while (hi - lo > refine_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = f(mid);
      if (fm == 0) return std::pair{mid, mid};
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return std::pair{lo, hi};
  };

  const double dip = refine_tol * scale;
  std::size_t last = ts.size();  // index of the last nonzero sample
  bool zero_seen = false;
  double zero_at = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (vs[i] == 0) {
      if (!zero_seen) zero_at = ts[i];
      zero_seen = true;
      continue;
    }
    if (last != ts.size()) {
      if ((vs[i] < 0) != (vs[last] < 0)) {
        zc.brackets.push_back(bisect(ts[last], ts[i]));
      } else if (zero_seen) {
        zc.suspects.push_back(zero_at);
      } else if (i >= 2 && last == i - 1 && vs[i - 2] != 0 &&
                 (vs[i - 2] < 0) == (vs[i - 1] < 0) &&
                 std::abs(vs[i - 1]) <= std::abs(vs[i - 2]) &&
                 std::abs(vs[i - 1]) <= std::abs(vs[i])) {
        // Local dip of |x| on the mesh; refine by golden section.
        double a = ts[i - 2], b = ts[i];
        const double g = (std::sqrt(5.0) - 1) / 2;
        for (int it = 0; it < 100 && b - a > refine_tol; ++it) {
          const double x1 = b - g * (b - a), x2 = a + g * (b - a);
          if (std::abs(f(x1)) < std::abs(f(x2))) b = x2; else a = x1;
        }
        const double tm = 0.5 * (a + b);
        if (std::abs(f(tm)) < dip) zc.suspects.push_back(tm);
      }
    } else if (zero_seen) {
      zc.suspects.push_back(zero_at);  // zero at the left end of the segment
    }
    zero_seen = false;
    last = i;
  }
  if (zero_seen) zc.suspects.push_back(zero_at);
  zc.count = zc.brackets.size();
  return zc;
}

double claim1_residual(const LinSys& sys, const DerivedEq& eq, const Rational& epsilon,
                       std::span<const double> init, double R, double tol) {
  if (sys.q() != 1) throw UnsupportedParameterCount("Claim 1 residual requires one parameter");
  const MPoly locus = exceptional_locus(eq);
  const Rational eps[] = {epsilon};
  if (eval_params(locus, eps).is_zero())
    throw DegenerateParameter("eps = " + epsilon.get_str() + " lies on the exceptional locus");

  const CovectorSeq seq = covector_sequence(sys, eq.k);
  std::vector<std::vector<TPoly>> cov(eq.k + 1);
  for (std::size_t i = 0; i <= eq.k; ++i)
    for (const MPoly& p : seq.vectors[i]) cov[i].push_back(TPoly::at_parameter(p, epsilon));
  const TPoly beta = TPoly::at_parameter(eq.beta, epsilon);
  std::vector<TPoly> gammas;
  for (const MPoly& g : eq.gammas) gammas.push_back(TPoly::at_parameter(g, epsilon));

  const Trajectory traj = integrate_system(sys, epsilon, init, R, tol);
  double worst = 0;
  std::vector<double> derivs(eq.k + 1);
  for (std::size_t m = 0; m < traj.nodes.size(); ++m) {
    const double t = traj.nodes[m];
    const auto& x = traj.states[m];
    for (std::size_t i = 0; i <= eq.k; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < x.size(); ++j)
        if (!cov[i][j].is_zero()) s += cov[i][j](t) * x[j];
      derivs[i] = s;
    }
    double lead = beta(t) * derivs[eq.k];
    double res = lead, mag = std::abs(lead);
    for (std::size_t i = 0; i < eq.k; ++i) {
      const double term = gammas[i](t) * derivs[i];
      res -= term;
      mag += std::abs(term);
    }
    if (mag > 0) worst = std::max(worst, std::abs(res) / mag);
  }
  return worst;
}

double closed_form_residual(const DerivedEq& eq, const Rational& epsilon, const ClosedForm& fn,
                            double R, std::size_t points) {
  if (points < 2) throw UsageError("closed-form residual needs at least two grid points");
  std::vector<TPoly> nums, dens;
  for (const RatFn& a : eq.reduced) {
    nums.push_back(TPoly::at_parameter(a.num(), epsilon));
    dens.push_back(TPoly::at_parameter(a.den(), epsilon));
  }
  double worst = 0;
  for (std::size_t p = 0; p < points; ++p) {
    const double t = -R / 2 + R * static_cast<double>(p) / static_cast<double>(points - 1);
    const std::vector<double> f = fn(t);
    if (f.size() < eq.k + 1) throw UsageError("closed form must supply k derivatives");
    double res = f[eq.k], mag = std::abs(f[eq.k]);
    bool skip = false;
    for (std::size_t i = 0; i < eq.k && !skip; ++i) {
      const double den = dens[i](t);
      if (den == 0) {
        skip = true;
        break;
      }
      const double term = nums[i](t) / den * f[i];
      res -= term;
      mag += std::abs(term);
    }
    if (skip || mag == 0) continue;
    worst = std::max(worst, std::abs(res) / mag);
  }
  return worst;
}

}  // namespace linzero
