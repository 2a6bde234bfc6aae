#include <doctest.h>

#include "linzero/derivation/derivation.hpp"
#include "linzero/errors.hpp"
#include "linzero/harness/sysdoc.hpp"
#include "linzero/perturbation/perturbation.hpp"
#include "support.hpp"

using namespace linzero;
using lzt::Eps;
using lzt::K;
using lzt::T;

namespace {

std::vector<MPoly> nonzero_t_coefficients(const MPoly& p) {
  std::vector<MPoly> out;
  for (MPoly& c : p.coefficients_in(0))
    if (!c.is_zero()) out.push_back(std::move(c));
  return out;
}

// Independent check of a certificate.
bool reproduces(const DivisionCertificate& c, const MPoly& target, const std::vector<MPoly>& basis) {
  MPoly sum(target.variable_count());
  for (std::size_t j = 0; j < basis.size(); ++j) sum += c.cofactors[j] * basis[j];
  return sum == target;
}

}  // namespace

TEST_CASE("perturbation verdict examples") {
  const PerturbationReport demo = perturbation_verdict(derive(to_linsys(demo_document())));
  CHECK(demo.verdict == Verdict::not_perturbed);
  CHECK(demo.witnesses.empty());

  // eps*y' - y = 0, i.e. beta = eps, gamma_0 = 1.
  const PerturbationReport sp = perturbation_verdict(make_scalar_equation(Eps(), {K(1)}));
  CHECK(sp.verdict == Verdict::perturbed);
  REQUIRE(sp.witnesses.size() == 1);
  CHECK(sp.witnesses[0].coefficient == 0);
  CHECK(sp.witnesses[0].content == Eps());

  // A pole that is not uniform in t is not a singular perturbation.
  const PerturbationReport np = perturbation_verdict(make_scalar_equation(Eps() + T(), {K(1)}));
  CHECK(np.verdict == Verdict::not_perturbed);

  const LinSys two(1, 2, 1, {MPoly::variable(3, 1)});
  CHECK_THROWS_AS(perturbation_verdict(derive(two)), UnsupportedParameterCount);
}

TEST_CASE("valuation profile examples") {
  const ValuationProfile a = valuation_profile(Eps() * Eps() * T(), Eps().pow(3), 0);
  CHECK(a.numerator == 2u);
  CHECK(a.denominator == 3);
  const ValuationProfile b = valuation_profile(RatFn(T() + K(1), Eps()), 0);
  CHECK(b.numerator == 0u);
  CHECK(b.denominator == 1);
  const MPoly e1 = Eps() - K(1);
  const ValuationProfile c = valuation_profile(e1 * e1, e1, 1);
  CHECK(c.numerator == 2u);
  CHECK(c.denominator == 1);
  const ValuationProfile z = valuation_profile(MPoly(2), Eps(), 0);
  CHECK_FALSE(z.numerator.has_value());
}

TEST_CASE("effective division examples") {
  const std::vector<MPoly> eps{Eps()};
  auto c = effective_division(Eps() * Eps(), eps, 1);
  REQUIRE(c);
  CHECK(c->cofactors[0] == Eps());

  // Worked example: t-coefficients of gamma_0 = eps(eps - 1) and
  // gamma_1 = 2 eps against {eps}.
  const DerivedEq eq = derive(to_linsys(demo_document()));
  const auto basis = nonzero_t_coefficients(eq.beta);
  REQUIRE(basis == eps);
  auto g0 = effective_division(eq.gammas[0], basis, 1);
  REQUIRE(g0);
  CHECK(g0->cofactors[0] == Eps() - K(1));
  auto g1 = effective_division(eq.gammas[1], basis, 1);
  REQUIRE(g1);
  CHECK(g1->cofactors[0] == K(2));
  CHECK_FALSE(effective_division(eq.gammas[0], basis, 0));

  // a b is not in (a^2, b^2) at any cap.
  const MPoly a = MPoly::variable(3, 1), b = MPoly::variable(3, 2);
  const std::vector<MPoly> sq{a * a, b * b};
  CHECK_FALSE(effective_division(a * b, sq, 6));
  CHECK(effective_division(a * a * b + b.pow(3), sq, 6));

  CHECK_THROWS_AS(effective_division(Eps(), std::vector<MPoly>{}, 2), UsageError);
  CHECK_THROWS_AS(effective_division(T(), eps, 2), UsageError);
}

TEST_CASE("Bezout membership examples") {
  const std::vector<MPoly> pair{Eps() - K(1), Eps() + K(1)};
  auto c = bezout_membership(Eps(), pair);
  REQUIRE(c);
  CHECK(reproduces(*c, Eps(), pair));

  CHECK_FALSE(bezout_membership(K(1), std::vector<MPoly>{Eps()}));

  const std::vector<MPoly> sq{Eps() * Eps(), Eps() * Eps() + Eps().pow(3)};
  auto d = bezout_membership(Eps().pow(3), sq);
  REQUIRE(d);
  CHECK(reproduces(*d, Eps().pow(3), sq));

  CHECK_THROWS_AS(bezout_membership(Eps(), std::vector<MPoly>{}), UsageError);
}

TEST_CASE("planted ideal members get certificates from both constructions") {
  lzt::Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const MPoly common = lzt::random_eps_poly(rng, 2, 3);
    if (common.is_zero()) continue;
    std::vector<MPoly> basis;
    const int nb = static_cast<int>(rng.integer(1, 3));
    for (int j = 0; j < nb; ++j) {
      MPoly b = common * lzt::random_eps_poly(rng, 2, 4);
      if (!b.is_zero()) basis.push_back(b);
    }
    if (basis.empty()) continue;
    MPoly target(2);
    for (const MPoly& b : basis) target += lzt::random_eps_poly(rng, 2, 4) * b;
    if (target.is_zero()) continue;

    auto bz = bezout_membership(target, basis);
    REQUIRE(bz);
    CHECK(reproduces(*bz, target, basis));
    int D = target.total_degree();
    for (const MPoly& b : basis) D = std::max(D, b.total_degree());
    const int cap = std::max(0, 2 * D - 1);
    auto ed = effective_division(target, basis, static_cast<unsigned>(cap));
    REQUIRE(ed);
    CHECK(reproduces(*ed, target, basis));
    for (const MPoly& h : ed->cofactors) CHECK(h.total_degree() <= cap);
  }
}

TEST_CASE("effective division success implies Bezout success") {
  lzt::Rng rng(32);
  int positives = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::vector<MPoly> basis{lzt::random_eps_poly(rng, 3, 3), lzt::random_eps_poly(rng, 3, 3)};
    if (basis[0].is_zero() || basis[1].is_zero()) continue;
    const MPoly target = lzt::random_eps_poly(rng, 3, 3);
    if (target.is_zero()) continue;
    auto ed = effective_division(target, basis, 4);
    auto bz = bezout_membership(target, basis);
    if (ed) {
      ++positives;
      REQUIRE(bz);
      CHECK(reproduces(*ed, target, basis));
      CHECK(reproduces(*bz, target, basis));
    }
  }
  CHECK(positives > 0);
}

TEST_CASE("Theorem 2 and Lemma 2 on part of the ensemble") {
  for (std::size_t i = 0; i < 40; ++i) {
    CAPTURE(i);
    const DerivedEq eq = derive(to_linsys(lzt::ensemble_document(i)));
    CHECK(perturbation_verdict(eq).verdict == Verdict::not_perturbed);
    const auto basis = nonzero_t_coefficients(eq.beta);
    for (const MPoly& g : eq.gammas)
      for (const MPoly& c : nonzero_t_coefficients(g)) {
        auto bz = bezout_membership(c, basis);
        REQUIRE(bz);
        CHECK(reproduces(*bz, c, basis));
      }
  }
}
