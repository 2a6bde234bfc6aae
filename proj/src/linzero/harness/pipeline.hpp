#ifndef LINZERO_HARNESS_PIPELINE_HPP
#define LINZERO_HARNESS_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "linzero/bounds/bounds.hpp"
#include "linzero/harness/sysdoc.hpp"

namespace linzero {

// "1/4", "-0.25", "3" -> exact rational. Throws UsageError.
Rational parse_rational(std::string_view text);
// Comma-separated list of rationals.
std::vector<Rational> parse_rational_list(std::string_view text);
// Comma-separated list of doubles.
std::vector<double> parse_double_list(std::string_view text);

nlohmann::json poly_json(const MPoly& p);
MPoly poly_from_json(const nlohmann::json& j, std::size_t variable_count);

// "y'' - 2*y' + (-eps + 1)*y = 0"
std::string equation_string(const DerivedEq& eq);

// {±1/3, ±2/3} * E with exceptional-locus roots removed.
std::vector<Rational> default_epsilon_samples(const MPoly& locus, double E);

// k, beta, gammas, reduced coefficients, degeneracy generators and (q = 1)
// the exceptional locus, plus the input document and its fingerprint.
nlohmann::json derive_report(const SystemDoc& doc);

struct VerifyOptions {
  BoundConfig bounds;
  double tol = 1e-9;
  std::optional<unsigned> cap;  // default 2D - 1, D = max joint degree of beta, gammas
  std::vector<Rational> epsilons;  // empty: default samples
  std::uint64_t seed = 1;
  double residual_threshold = 1e-6;
};

struct VerifyOutcome {
  bool passed = false;
  nlohmann::json report;
};

struct CertificateSection {
  nlohmann::json report;
  std::size_t missing = 0;
  std::size_t expected_negative = 0;
};

// Bezout (one parameter only) and effective-division certificates for every
// t-coefficient of every gamma against the t-coefficients of beta. With
// `multi` set, effective-division failures are expected negatives rather
// than missing certificates.
CertificateSection certify_equation(const DerivedEq& eq, unsigned cap, bool multi);

// Perturbation verdict, Bezout and effective-division certificates for every
// t-coefficient of every gamma against the t-coefficients of beta, and the
// Claim 1 residual with zero counts and bounds at each sample. With more than
// one parameter only effective division runs; its failures are recorded as
// expected negatives.
VerifyOutcome run_verify(const SystemDoc& doc, const VerifyOptions& opts);

struct SweepOptions {
  BoundConfig bounds;
  std::vector<Rational> eps_grid;
  std::size_t component = 0;
  std::vector<double> init;  // empty: last unit vector e_n
  double tol = 1e-10;
  double refine_tol = 1e-10;
  std::string comment;  // written as a leading '#' line when non-empty
};

inline constexpr std::string_view kSweepHeader =
    "epsilon,count,suspects,A,a,iy_bound,lemma5,theorem2_log10,degenerate";

// One CSV row per grid value. Rows on the exceptional locus are emitted with
// degenerate = 1 and nan for the exact-path columns.
std::string run_sweep(const SystemDoc& doc, const SweepOptions& opts);

// Re-derives the equation from the embedded document and re-checks every
// embedded certificate. Returns an empty string on success, else the reason.
std::string recheck_report(const nlohmann::json& report);

}  // namespace linzero

#endif
