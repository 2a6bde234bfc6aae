#ifndef LINZERO_BOUNDS_BOUNDS_HPP
#define LINZERO_BOUNDS_BOUNDS_HPP

#include <cstddef>
#include <utility>

#include "linzero/derivation/derivation.hpp"

namespace linzero {

// Constants the zero-count formulas leave unspecified. Defaults of 1 make the
// a-priori values illustrative only; the exact-path quantities (A, a) do not
// depend on them.
struct BoundConfig {
  double C = 1.0;
  double sigma = 1.0;
  double mu = 1.0;
  double E = 1.0;  // parameter disc radius
  double R = 2.0;  // segment [-R/2, R/2], R >= 2

  void validate() const;
};

// A value that may exceed double range; log10 is always finite for finite
// inputs.
struct BigValue {
  double value;  // +inf when out of range
  double log10;
};

// Rational upper bound for e used by the exact Cartan floor.
Rational euler_upper_rational();
// Smallest double above e; used where e appears inside upper bounds.
double euler_upper();

// 1 / ((4e)^(s^2+s) * 2^(s+1) * d^s), e replaced by an upper bound so the
// floor stays valid. d^0 = 1. Throws UsageError when s > d.
Rational cartan_floor(unsigned d, unsigned s);

// sum |c| R^(t-degree) E^(parameter degree): an upper bound for |p| on
// |t| <= R, |eps| <= E. At most one parameter.
double coeff_sup(const MPoly& p, double E, double R);

struct SegmentFloor {
  double value;   // best sampled |beta(t*, eps)|
  double t_star;
};

// Sampled lower bound for max |beta(t, eps)| on [-R/2, R/2]: uniform grid
// plus golden-section refinement around the best sample. Throws
// DegenerateParameter when beta(., eps) is identically zero.
SegmentFloor segment_leading_floor(const MPoly& beta, const Rational& epsilon, double R,
                                   std::size_t grid = 2001);

// (A/a + order)^mu
double iy_zero_bound(double A, double a, std::size_t order, double mu);

// ((Me)^(C d^3) (E^(2d) + 1) R^(d+1) + k)^sigma
BigValue apriori_lemma5(const Integer& M, unsigned d, double E, double R, std::size_t k,
                        const BoundConfig& cfg);

// ((Me)^(C n^9 d^4) (E^(n(n+1)d) + 1) R^(n(n+1)d/2 + 1) + n)^sigma
BigValue apriori_theorem2(const Integer& M, std::size_t n, unsigned d, double E, double R,
                          const BoundConfig& cfg);

// log10 of e^(e^(e^P)) (E R)^(C n^2 d) for a caller-supplied value of the
// unspecified polynomial P(n, d). Overflows to +inf quickly.
double apriori_multiparameter_log10(double P, std::size_t n, unsigned d, double E, double R,
                                    const BoundConfig& cfg);

// Degree d*i and coefficient bound n^i (d + (d+1)^(q+1) M)^i of a^(i).
std::pair<unsigned, Integer> size_bounds(const LinSys& sys, unsigned i);
std::pair<unsigned, Integer> size_bounds(std::size_t n, std::size_t q, unsigned d,
                                         const Integer& M, unsigned i);

// k(k+1)d/2
unsigned lemma9_degree_bound(std::size_t k, unsigned d);

// (2d(d+1))! * M^(2d(d+1))
Integer lemma3_coefficient_bound(unsigned d, const Integer& M);

// Exact-path and a-priori quantities for one parameter value.
struct BoundReport {
  double A = 0;         // max coeff_sup over beta and gammas at fixed eps
  double a = 0;         // segment floor of beta at fixed eps
  double t_star = 0;
  Rational cartan;      // cartan_floor(deg beta in t, s) with s = deg beta in t
  double iy_bound = 0;
  BigValue lemma5{0, 0};
  BigValue theorem2{0, 0};
  Integer lemma3_coeff_bound;
  unsigned lemma9_degree = 0;
  bool m_floored = false;  // system M = 0 was raised to 1
};

// Only the parameter-independent fields (cartan, lemma5, theorem2,
// lemma3_coeff_bound, lemma9_degree, m_floored).
BoundReport apriori_report(const LinSys& sys, const DerivedEq& eq, const BoundConfig& cfg);

// Throws DegenerateParameter when beta(., eps) is identically zero.
BoundReport bound_report(const LinSys& sys, const DerivedEq& eq, const Rational& epsilon,
                         const BoundConfig& cfg);

}  // namespace linzero

#endif
