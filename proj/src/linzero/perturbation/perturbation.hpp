#ifndef LINZERO_PERTURBATION_PERTURBATION_HPP
#define LINZERO_PERTURBATION_PERTURBATION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "linzero/derivation/derivation.hpp"

namespace linzero {

enum class Verdict { not_perturbed, perturbed };

struct PerturbationWitness {
  std::size_t coefficient;  // index i of A_i
  MPoly content;            // non-constant eps-content of the reduced denominator
};

struct PerturbationReport {
  Verdict verdict = Verdict::not_perturbed;
  std::vector<PerturbationWitness> witnesses;
  std::vector<MPoly> reduced_den_contents;  // one per coefficient
};

// A coefficient A_i = u/v (lowest terms) is singularly perturbed at eps0 when
// (eps - eps0) divides every t-coefficient of v, i.e. v(., eps0) == 0 while
// u(., eps0) != 0. Checked root-free: the eps-content of v must be constant.
// Requires one parameter.
PerturbationReport perturbation_verdict(const DerivedEq& eq);

// (eps - root)-adic valuations of a numerator/denominator pair. A zero
// numerator has infinite valuation, reported as nullopt.
struct ValuationProfile {
  std::optional<unsigned> numerator;
  unsigned denominator = 0;
};
ValuationProfile valuation_profile(const MPoly& num, const MPoly& den, const Rational& root);
ValuationProfile valuation_profile(const RatFn& f, const Rational& root);

// sum_j cofactors[j] * basis[j] == target, exactly.
struct DivisionCertificate {
  std::size_t target_index = 0;
  std::vector<MPoly> cofactors;
  unsigned degree_cap = 0;
};

bool certificate_holds(const DivisionCertificate& cert, const MPoly& target,
                       std::span<const MPoly> basis);

// Searches cofactors of total degree <= cap in the parameters by solving the
// coefficient linear system over Q. Inputs must not involve t. Returns
// nullopt when the system is infeasible at this cap.
std::optional<DivisionCertificate> effective_division(const MPoly& target,
                                                      std::span<const MPoly> basis,
                                                      unsigned cap);

// Same, sharing one elimination across many targets. Certificates carry the
// index of their target.
std::vector<std::optional<DivisionCertificate>> effective_division_batch(
    std::span<const MPoly> targets, std::span<const MPoly> basis, unsigned cap);

// Constructive ideal membership for one parameter: factor out the common
// divisor b of the basis, require b | target, and combine extended-Euclid
// cofactors of the coprime parts. Returns nullopt if b does not divide target.
std::optional<DivisionCertificate> bezout_membership(const MPoly& target,
                                                     std::span<const MPoly> basis);

}  // namespace linzero

#endif
