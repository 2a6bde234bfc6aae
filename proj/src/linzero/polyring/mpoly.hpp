#ifndef LINZERO_POLYRING_MPOLY_HPP
#define LINZERO_POLYRING_MPOLY_HPP

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace linzero {

using Integer = mpz_class;
// Always canonical: positive denominator, reduced, zero is 0/1.
using Rational = mpq_class;

using Exponents = std::vector<unsigned>;

// Graded-lexicographic order; variable 0 (t) is the most significant.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

unsigned total_degree(const Exponents& e);

// Sparse polynomial over Q in variables (t, p1, ..., pq). Variable 0 is t.
// Terms are kept in a map keyed by exponent vector, so two polynomials are
// equal iff their term maps are equal; zero coefficients are never stored.
class MPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  explicit MPoly(std::size_t variable_count = 1);

  static MPoly constant(std::size_t variable_count, const Rational& c);
  static MPoly variable(std::size_t variable_count, std::size_t var);
  static MPoly monomial(std::size_t variable_count, Exponents exps,
                        const Rational& c);
  // (x_var - root)
  static MPoly linear(std::size_t variable_count, std::size_t var,
                      const Rational& root);

  std::size_t variable_count() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool depends_on(std::size_t var) const;
  bool has_integer_coefficients() const;

  // -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;

  // Leading term under grlex; undefined for zero.
  const Exponents& leading_exponents() const;
  const Rational& leading_coefficient() const;

  Rational coefficient(const Exponents& e) const;
  Rational max_abs_coefficient() const;

  // Accumulates c * x^e into the polynomial.
  void add_term(const Exponents& e, const Rational& c);

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& rhs);
  MPoly& operator-=(const MPoly& rhs);
  MPoly& operator*=(const MPoly& rhs);
  MPoly& operator*=(const Rational& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MPoly pow(unsigned e) const;

  // Partial derivative with respect to `var`.
  MPoly diff(std::size_t var) const;

  // Coefficients of var^0, var^1, ... as polynomials in the same ring with
  // the exponent of `var` zeroed.
  std::vector<MPoly> coefficients_in(std::size_t var) const;

  MPoly substitute(std::size_t var, const Rational& value) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  // Rendered in descending grlex order, e.g. "2*t^2*eps - eps + 1/2".
  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;

 private:
  void check_compatible(const MPoly& other) const;

  std::size_t nvars_;
  TermMap terms_;
};

// Default display names: t, eps for q = 1, t, p1..pq otherwise.
std::vector<std::string> default_variable_names(std::size_t variable_count);

// Exact partial derivative in t.
MPoly diff_t(const MPoly& p);

// Substitutes values for p1..pq; the result lives in the same ring and
// involves t only.
MPoly eval_params(const MPoly& p, std::span<const Rational> values);

// Quotient when b divides a exactly, otherwise nullopt. b must be nonzero.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);

// Largest m such that (x_var - root)^m divides p.
unsigned valuation(const MPoly& p, std::size_t var, const Rational& root);

// Scales p to integer coefficients with gcd 1 and a positive leading
// coefficient. Zero maps to zero.
MPoly primitive_integral(const MPoly& p);

// Pseudo-remainder of a by b viewed as polynomials in `var`.
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var);

// Greatest common divisor, normalized by primitive_integral. Throws
// UsageError when both inputs are zero.
MPoly gcd(const MPoly& a, const MPoly& b);
MPoly gcd(std::span<const MPoly> polys);

// gcd of the coefficients of p with respect to `var`.
MPoly content_in(const MPoly& p, std::size_t var);

// Univariate division with remainder over Q; both inputs may only involve
// `var`. Returns {quotient, remainder}.
std::pair<MPoly, MPoly> divide_univariate(const MPoly& a, const MPoly& b,
                                          std::size_t var);

struct ExtendedGcd {
  MPoly g;  // monic gcd
  MPoly s;  // s*a + t*b = g
  MPoly t;
};
ExtendedGcd extended_gcd_univariate(const MPoly& a, const MPoly& b,
                                    std::size_t var);

}  // namespace linzero

#endif
