#include <doctest.h>

#include <cmath>
#include <numbers>

#include "linzero/bounds/bounds.hpp"
#include "linzero/errors.hpp"
#include "linzero/harness/sysdoc.hpp"
#include "linzero/numerics/numerics.hpp"
#include "support.hpp"

using namespace linzero;
using lzt::Eps;
using lzt::K;
using lzt::T;

namespace {

LinSys harmonic() { return LinSys(2, 1, 0, {MPoly(2), K(1), K(-1), MPoly(2)}); }

LinSys demo_system() { return to_linsys(demo_document()); }

// Sign changes of f sampled at `points` midpoints of [lo, hi].
std::size_t scan_sign_changes(double (*f)(double), double lo, double hi, std::size_t points) {
  std::size_t changes = 0;
  const double h = (hi - lo) / static_cast<double>(points);
  double prev = f(lo + 0.5 * h);
  for (std::size_t i = 1; i < points; ++i) {
    const double v = f(lo + (static_cast<double>(i) + 0.5) * h);
    if ((v < 0) != (prev < 0)) ++changes;
    prev = v;
  }
  return changes;
}

double demo_quarter_01(double t) { return (std::exp(1.5 * t) - std::exp(0.5 * t)) / 4; }

}  // namespace

TEST_CASE("integrate_system examples") {
  const double init[] = {0, 1};
  const Trajectory s = integrate_system(harmonic(), 0, init, std::numbers::pi, 1e-10);
  CHECK(std::abs(s.component_at(std::numbers::pi / 2, 0) - 1) < 1e-8);
  CHECK(s.lo == doctest::Approx(-std::numbers::pi / 2));
  CHECK(s.hi == doctest::Approx(std::numbers::pi / 2));
  for (std::size_t i = 1; i < s.nodes.size(); ++i) CHECK(s.nodes[i] > s.nodes[i - 1]);

  const LinSys zero(3, 1, 0, std::vector<MPoly>(9, MPoly(2)));
  const double c[] = {2.5, -1, 0.25};
  const Trajectory z = integrate_system(zero, 0, c, 6, 1e-9);
  for (const auto& st : z.states)
    for (std::size_t i = 0; i < 3; ++i) CHECK(st[i] == c[i]);

  const double e1[] = {1, 0};
  const Trajectory d = integrate_system(demo_system(), Rational(1, 4), e1, 4, 1e-11);
  for (double t = -2; t <= 2; t += 0.125) {
    const double exact = 0.5 * std::exp(1.5 * t) + 0.5 * std::exp(0.5 * t);
    CHECK(std::abs(d.component_at(t, 0) - exact) < 1e-8);
  }

  CHECK_THROWS_AS(integrate_system(harmonic(), 0, init, 4, 0), UsageError);
  const double bad[] = {1};
  CHECK_THROWS_AS(integrate_system(harmonic(), 0, bad, 4, 1e-9), UsageError);
}

TEST_CASE("count_zeros examples") {
  const double init[] = {0, 1};
  const Trajectory s = integrate_system(harmonic(), 0, init, 10, 1e-10);
  const ZeroCount zs = count_zeros(s, 0, 1e-10);
  CHECK(zs.count == 3);
  CHECK(zs.suspects.empty());
  REQUIRE(zs.brackets.size() == 3);
  const double roots[] = {-std::numbers::pi, 0, std::numbers::pi};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(zs.brackets[i].first <= roots[i] + 1e-8);
    CHECK(zs.brackets[i].second >= roots[i] - 1e-8);
    CHECK(zs.brackets[i].second - zs.brackets[i].first <= 1e-10);
  }

  const LinSys grow(1, 1, 0, {K(1)});
  const double one[] = {1};
  const ZeroCount ze = count_zeros(integrate_system(grow, 0, one, 2, 1e-10), 0, 1e-10);
  CHECK(ze.count == 0);
  CHECK(ze.suspects.empty());

  const double e2[] = {0, 1};
  const Trajectory d = integrate_system(demo_system(), Rational(1, 4), e2, 20, 1e-10);
  const ZeroCount zd = count_zeros(d, 0, 1e-10);
  CHECK(zd.count == scan_sign_changes(demo_quarter_01, -10, 10, 1000000));
  CHECK(zd.count == 1);

  CHECK_THROWS_AS(count_zeros(d, 2, 1e-10), UsageError);
}

TEST_CASE("harmonic zero counts match the sine oracle") {
  const double init[] = {0, 1};
  for (double R : {4.0, 10.0, 20.0, 40.0}) {
    CAPTURE(R);
    const Trajectory s = integrate_system(harmonic(), 0, init, R, 1e-10);
    const ZeroCount z = count_zeros(s, 0, 1e-10);
    CHECK(z.count == 2 * static_cast<std::size_t>(std::floor(R / (2 * std::numbers::pi))) + 1);
    CHECK(z.suspects.empty());
  }
}

TEST_CASE("claim1_residual examples") {
  const LinSys demo = demo_system();
  const DerivedEq eq = derive(demo);
  lzt::Rng rng(51);
  const double init[] = {rng.real(-1, 1), rng.real(-1, 1)};
  CHECK(claim1_residual(demo, eq, Rational(3, 10), init, 2, 1e-9) <= 1e-6);
  CHECK_THROWS_AS(claim1_residual(demo, eq, Rational(0), init, 2, 1e-9), DegenerateParameter);

  const LinSys h = harmonic();
  CHECK(claim1_residual(h, derive(h), 0, init, 2, 1e-10) <= 1e-9);

  const LinSys zero(2, 1, 0, std::vector<MPoly>(4, MPoly(2)));
  CHECK(claim1_residual(zero, derive(zero), 0, init, 2, 1e-9) == 0);
}

TEST_CASE("closed_form_residual: the extra solution t e^t") {
  const DerivedEq eq = derive(demo_system());
  const ClosedForm tet = [](double t) {
    const double e = std::exp(t);
    return std::vector<double>{t * e, (t + 1) * e, (t + 2) * e};
  };
  const ClosedForm et = [](double t) {
    const double e = std::exp(t);
    return std::vector<double>{e, e, e};
  };
  const ClosedForm e2t = [](double t) {
    const double e = std::exp(2 * t);
    return std::vector<double>{e, 2 * e, 4 * e};
  };
  CHECK(closed_form_residual(eq, 0, tet, 2) <= 1e-10);
  CHECK(closed_form_residual(eq, 0, et, 2) <= 1e-10);
  CHECK(closed_form_residual(eq, 0, e2t, 2) >= 0.1);
  // te^t is not a solution away from eps = 0.
  CHECK(closed_form_residual(eq, Rational(1, 4), tet, 2) >= 0.01);
}

TEST_CASE("integration is deterministic") {
  const LinSys sys = to_linsys(lzt::ensemble_document(7));
  std::vector<double> init(sys.n(), 0.5);
  const Trajectory a = integrate_system(sys, Rational(1, 3), init, 4, 1e-9);
  const Trajectory b = integrate_system(sys, Rational(1, 3), init, 4, 1e-9);
  CHECK(a.nodes == b.nodes);
  CHECK(a.states == b.states);
  const ZeroCount za = count_zeros(a, 0, 1e-10), zb = count_zeros(b, 0, 1e-10);
  CHECK(za.count == zb.count);
  CHECK(za.brackets == zb.brackets);
  CHECK(za.suspects == zb.suspects);
}

TEST_CASE("covector derivatives agree with numeric differentiation") {
  lzt::Rng rng(52);
  for (std::size_t i = 0; i < 12; ++i) {
    const LinSys sys = to_linsys(lzt::ensemble_document(i));
    const CovectorSeq seq = covector_sequence(sys, 1);
    std::vector<double> init(sys.n());
    for (double& v : init) v = rng.real(-1, 1);
    const Rational e(1, 3);
    const Trajectory tr = integrate_system(sys, e, init, 2, 1e-11);
    for (double t : {-0.6, -0.1, 0.3, 0.7}) {
      const double h = 1e-4;
      const double fd = (tr.component_at(t + h, 0) - tr.component_at(t - h, 0)) / (2 * h);
      const std::vector<double> x = tr.state_at(t);
      double exact = 0, scale = 0;
      for (std::size_t j = 0; j < sys.n(); ++j) {
        const double c = TPoly::at_parameter(seq.vectors[1][j], e)(t);
        exact += c * x[j];
        scale += std::abs(c * x[j]);
      }
      CHECK(std::abs(fd - exact) <= 1e-5 * (1 + scale));
    }
  }
}

TEST_CASE("Claim 1 residual on the ensemble") {
  lzt::Rng rng(53);
  for (std::size_t i = 0; i < 24; ++i) {
    CAPTURE(i);
    const LinSys sys = to_linsys(lzt::ensemble_document(i));
    const DerivedEq eq = derive(sys);
    const MPoly locus = exceptional_locus(eq);
    int done = 0;
    while (done < 5) {
      const Rational e = rng.rational(9, 10);
      const Rational pt[] = {0, e};
      if (locus.evaluate(pt) == 0) continue;
      std::vector<double> init(sys.n());
      for (double& v : init) v = rng.real(-1, 1);
      CHECK(claim1_residual(sys, eq, e, init, 2, 1e-9) <= 1e-8);
      ++done;
    }
  }
}

TEST_CASE("empirical counts against the zero-count bound (probe)") {
  BoundConfig cfg;
  cfg.mu = 2;
  std::size_t violations = 0, probes = 0;
  for (std::size_t i = 0; i < 24; ++i) {
    const LinSys sys = to_linsys(lzt::ensemble_document(i));
    const DerivedEq eq = derive(sys);
    const Rational e(1, 3);
    const Rational pt[] = {0, e};
    if (exceptional_locus(eq).evaluate(pt) == 0) continue;
    const BoundReport br = bound_report(sys, eq, e, cfg);
    std::vector<double> init(sys.n(), 0);
    init.back() = 1;
    const ZeroCount z = count_zeros(integrate_system(sys, e, init, cfg.R, 1e-10), 0, 1e-10);
    ++probes;
    if (static_cast<double>(z.count) > br.iy_bound) {
      ++violations;
      MESSAGE("member " << i << ": count " << z.count << " exceeds bound " << br.iy_bound);
    }
  }
  MESSAGE(probes << " probes, " << violations << " bound violations at mu = 2");
  CHECK(probes > 0);
}
