#include <doctest.h>

#include <cmath>

#include "linzero/bounds/bounds.hpp"
#include "linzero/errors.hpp"
#include "linzero/harness/sysdoc.hpp"
#include "support.hpp"

using namespace linzero;
using lzt::Eps;
using lzt::K;
using lzt::T;

namespace {

const Rational kEbar = Rational(Integer(27182818285)) / Integer(10000000000);

Rational pow_q(const Rational& b, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Hand formula for the Cartan floor with the documented e bound.
Rational cartan_oracle(unsigned d, unsigned s) {
  return 1 / (pow_q(4 * kEbar, s * s + s) * pow_q(2, s + 1) * pow_q(d, s));
}

double horner(const std::vector<double>& c, double t) {
  double v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

BoundConfig unit() { return BoundConfig{}; }

}  // namespace

TEST_CASE("cartan_floor examples") {
  CHECK(cartan_floor(1, 0) == Rational(1, 2));
  CHECK(cartan_floor(2, 1) == cartan_oracle(2, 1));
  CHECK(cartan_floor(2, 1).get_d() == doctest::Approx(1.057e-3).epsilon(1e-3));
  CHECK(cartan_floor(3, 3) == cartan_oracle(3, 3));
  CHECK(cartan_floor(0, 0) == Rational(1, 2));
  CHECK(euler_upper_rational() == kEbar);
  CHECK(euler_upper() > std::exp(1.0));
  CHECK_THROWS_AS(cartan_floor(2, 3), UsageError);
}

TEST_CASE("coeff_sup examples") {
  CHECK(coeff_sup(K(3) * T() * T() * Eps() + K(2), 2, 1) == 8);
  CHECK(coeff_sup(MPoly(2), 3, 5) == 0);
  CHECK(coeff_sup(T().pow(4), 7, 1.5) == doctest::Approx(std::pow(1.5, 4)));
}

TEST_CASE("segment_leading_floor examples") {
  const SegmentFloor a = segment_leading_floor(T(), Rational(3), 2);
  CHECK(a.value >= 1 - 1e-12);
  CHECK(std::abs(std::abs(a.t_star) - 1) < 1e-9);
  const SegmentFloor b = segment_leading_floor(T() * T() - K(1), Rational(0), 2);
  CHECK(b.value >= 1 - 1e-12);
  const SegmentFloor c = segment_leading_floor(Eps(), Rational(1, 2), 2);
  CHECK(c.value == 0.5);
  CHECK_THROWS_AS(segment_leading_floor(Eps(), Rational(0), 2), DegenerateParameter);
}

TEST_CASE("iy_zero_bound examples") {
  CHECK(iy_zero_bound(1, 1, 2, 1) == 3);
  CHECK(iy_zero_bound(10, 2, 1, 2) == 36);
  CHECK(iy_zero_bound(0, 1, 3, 1.5) == doctest::Approx(std::pow(3.0, 1.5)));
  CHECK_THROWS_AS(iy_zero_bound(1, 0, 2, 1), UsageError);
}

TEST_CASE("a-priori formula examples") {
  const BigValue l1 = apriori_lemma5(1, 0, 1, 2, 1, unit());
  CHECK(lzt::rel_close(l1.value, 5, 1e-12));
  const BigValue l2 = apriori_lemma5(2, 1, 1, 2, 2, unit());
  CHECK(lzt::rel_close(l2.value, 16 * std::exp(1.0) + 2, 1e-12));
  CHECK(lzt::rel_close(l2.log10, std::log10(16 * std::exp(1.0) + 2), 1e-12));

  const BigValue t1 = apriori_theorem2(1, 1, 0, 1, 2, unit());
  CHECK(lzt::rel_close(t1.value, 5, 1e-12));
  const BigValue t2 = apriori_theorem2(1, 2, 1, 1, 2, unit());
  const double expect = 512 / std::log(10.0) + std::log10(32.0);
  CHECK(lzt::rel_close(t2.log10, expect, 1e-12));
  CHECK(t2.log10 == doctest::Approx(223.9).epsilon(1e-3));
}

TEST_CASE("size bound examples") {
  const auto [deg, coeff] = size_bounds(2, 1, 1, 1, 2);
  CHECK(deg == 2);
  CHECK(coeff == 100);
  CHECK(lemma9_degree_bound(2, 1) == 3);
  CHECK(lemma3_coefficient_bound(1, 1) == 24);
  CHECK(lemma3_coefficient_bound(1, 2) == 24 * 16);
}

TEST_CASE("bound report on the worked example") {
  const LinSys sys = to_linsys(demo_document());
  const DerivedEq eq = derive(sys);
  const BoundReport r = bound_report(sys, eq, Rational(1, 2), unit());
  CHECK(r.a == 0.5);
  CHECK(r.A > 0);
  CHECK(r.iy_bound == doctest::Approx(r.A / r.a + 2));
  CHECK_THROWS_AS(bound_report(sys, eq, Rational(0), unit()), DegenerateParameter);
}

TEST_CASE("Cartan floor is never beaten by a monic polynomial") {
  lzt::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned s = static_cast<unsigned>(rng.integer(0, 6));
    std::vector<double> c(s + 1, 1.0);
    for (unsigned i = 0; i < s; ++i) c[i] = rng.real(-1, 1);
    double best = 0;
    for (int g = 0; g <= 2000; ++g) best = std::max(best, std::abs(horner(c, -1 + g / 1000.0)));
    CHECK(best >= cartan_floor(6, s).get_d());
    CHECK(cartan_floor(6, s) == cartan_oracle(6, s));
  }
}

TEST_CASE("coeff_sup bounds the polynomial on the box") {
  lzt::Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const MPoly p = lzt::random_poly(rng, 2, 4, 9, 6);
    const double E = rng.real(0.1, 3), R = rng.real(0.1, 3);
    const double sup = coeff_sup(p, E, R);
    for (int i = 0; i < 100; ++i) {
      const double t = rng.real(-R, R), e = rng.real(-E, E);
      double v = 0;
      for (const auto& [ex, c] : p.terms()) v += c.get_d() * std::pow(t, ex[0]) * std::pow(e, ex[1]);
      CHECK(std::abs(v) <= sup * (1 + 1e-12));
    }
  }
}

TEST_CASE("a-priori formulas are monotone on a probe grid") {
  const BoundConfig cfg = unit();
  for (long M : {1, 2, 5})
    for (unsigned d : {0u, 1u, 2u})
      for (double E : {0.5, 1.0, 2.0})
        for (double R : {2.0, 4.0})
          for (std::size_t k : {1u, 2u, 3u}) {
            const double base = apriori_lemma5(M, d, E, R, k, cfg).log10;
            CHECK(apriori_lemma5(M + 1, d, E, R, k, cfg).log10 >= base);
            CHECK(apriori_lemma5(M, d + 1, E, R, k, cfg).log10 >= base);
            CHECK(apriori_lemma5(M, d, E * 2, R, k, cfg).log10 >= base);
            CHECK(apriori_lemma5(M, d, E, R * 2, k, cfg).log10 >= base);
            CHECK(apriori_lemma5(M, d, E, R, k + 1, cfg).log10 >= base);

            const std::size_t n = k;
            const double tb = apriori_theorem2(M, n, d, E, R, cfg).log10;
            CHECK(apriori_theorem2(M + 1, n, d, E, R, cfg).log10 >= tb);
            CHECK(apriori_theorem2(M, n + 1, d, E, R, cfg).log10 >= tb);
            CHECK(apriori_theorem2(M, n, d + 1, E, R, cfg).log10 >= tb);
            CHECK(apriori_theorem2(M, n, d, E * 2, R, cfg).log10 >= tb);
            CHECK(apriori_theorem2(M, n, d, E, R * 2, cfg).log10 >= tb);
          }
}

TEST_CASE("segment floor is attained and stays below coeff_sup") {
  lzt::Rng rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const MPoly beta = lzt::random_poly(rng, 2, 4, 6, 5);
    const Rational e = rng.rational(5, 4);
    const Rational pt[] = {0, e};
    bool zero_slice = true;
    for (const MPoly& c : beta.coefficients_in(0))
      if (!c.is_zero() && c.evaluate(pt) != 0) zero_slice = false;
    if (zero_slice) {
      CHECK_THROWS_AS(segment_leading_floor(beta, e, 4), DegenerateParameter);
      continue;
    }
    const SegmentFloor f = segment_leading_floor(beta, e, 4);
    const Rational at[] = {Rational(f.t_star), e};
    CHECK(std::abs(beta.evaluate(at).get_d()) == doctest::Approx(f.value).epsilon(1e-9));
    CHECK(std::abs(f.t_star) <= 2);
    CHECK(f.value <= coeff_sup(beta, std::abs(e.get_d()), 2) * (1 + 1e-12));
  }
}

TEST_CASE("Lemma 8 size bounds hold on the ensemble") {
  for (std::size_t i = 0; i < 40; ++i) {
    const LinSys sys = to_linsys(lzt::ensemble_document(i));
    const CovectorSeq seq = covector_sequence(sys, sys.n());
    for (unsigned j = 0; j < seq.vectors.size(); ++j) {
      const auto [deg, coeff] = size_bounds(sys, j);
      for (const MPoly& p : seq.vectors[j]) {
        if (p.is_zero()) continue;
        CHECK(p.total_degree() <= static_cast<int>(deg));
        CHECK(p.max_abs_coefficient() <= Rational(coeff));
      }
    }
  }
}
