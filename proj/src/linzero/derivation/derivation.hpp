#ifndef LINZERO_DERIVATION_DERIVATION_HPP
#define LINZERO_DERIVATION_DERIVATION_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "linzero/derivation/linsys.hpp"
#include "linzero/polyring/ratfn.hpp"

namespace linzero {

// Row vectors a^(0), a^(1), ... with x1^(i) = a^(i) . x along solutions.
struct CovectorSeq {
  std::vector<PolyVector> vectors;

  std::size_t dimension() const { return vectors.empty() ? 0 : vectors.front().size(); }
};

// Scalar equation  beta * y^(k) = sum_i gamma_i * y^(i)  for y = x1, i.e.
// y^(k) - A_{k-1} y^(k-1) - ... - A_0 y = 0 with A_i = gamma_i / beta.
struct DerivedEq {
  std::size_t k = 0;
  std::vector<std::size_t> minor_rows;  // 0-based, sorted
  MPoly beta;
  std::vector<MPoly> gammas;   // gamma_0 .. gamma_{k-1}
  std::vector<RatFn> reduced;  // A_0 .. A_{k-1} in lowest terms
  MPoly content;               // gcd(beta, gammas...)

  std::size_t variable_count() const { return beta.variable_count(); }
};

// Minor determinants of (a^(0) .. a^(k-1)) split by powers of t. Each
// generator is a polynomial in the parameters only.
struct DegeneracyIdeal {
  std::vector<std::vector<std::size_t>> minors;  // row subsets, lex order
  std::vector<MPoly> determinants;               // one per minor
  std::vector<MPoly> generators;
  std::vector<std::size_t> minor_index;  // generator -> minor
  std::vector<unsigned> t_power;         // generator -> power of t
};

// diff_t(a) + A^T a
PolyVector covector_step(const LinSys& sys, const PolyVector& a);

// a^(0) = e1 through a^(upto); upto <= n.
CovectorSeq covector_sequence(const LinSys& sys, std::size_t upto);

// Least k with a^(0..k) linearly dependent over the fraction field.
// The sequence must reach index n.
std::size_t minimal_k(const CovectorSeq& seq);

// Unique decomposition of a^(k) through the lexicographically smallest
// nonsingular k-row minor. Throws ConsistencyError if none exists or the
// identity beta*a^(k) = sum gamma_i a^(i) fails.
DerivedEq decompose(const CovectorSeq& seq, std::size_t k);

// Same decomposition through the given rows; nullopt if that minor is
// singular.
std::optional<DerivedEq> decompose_with_minor(const CovectorSeq& seq, std::size_t k,
                                              const std::vector<std::size_t>& rows);

DegeneracyIdeal degeneracy_generators(const CovectorSeq& seq, std::size_t k);

// gcd of the t-coefficients of beta (one parameter only). Its roots are the
// parameter values where beta vanishes identically in t.
MPoly exceptional_locus(const DerivedEq& eq);

// Whole pipeline: sequence to index n, minimal k, decomposition.
DerivedEq derive(const LinSys& sys);

// Builds a scalar equation from explicit beta and gammas (not necessarily
// coming from a system).
DerivedEq make_scalar_equation(MPoly beta, std::vector<MPoly> gammas);

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> row_subsets(std::size_t n, std::size_t k);

}  // namespace linzero

#endif
