#include "linzero/bounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "linzero/errors.hpp"

namespace linzero {

void BoundConfig::validate() const {
  if (!(C > 0) || !(sigma > 0) || !(mu > 0) || !(E > 0))
    throw UsageError("bound constants C, sigma, mu, E must be positive");
  if (!(R >= 2)) throw UsageError("segment length R must be at least 2");
}

Rational euler_upper_rational() {
  Rational e(27182818285L, 10000000000L);
  e.canonicalize();
  return e;
}

double euler_upper() {
  return std::nextafter(std::numbers::e, std::numeric_limits<double>::infinity());
}

Rational cartan_floor(unsigned d, unsigned s) {
  if (s > d) throw UsageError("cartan_floor requires s <= d");
  const Rational four_e = 4 * euler_upper_rational();
  Rational den = 1;
  for (unsigned i = 0; i < s * s + s; ++i) den *= four_e;
  for (unsigned i = 0; i < s + 1; ++i) den *= 2;
  for (unsigned i = 0; i < s; ++i) den *= d;
  return 1 / den;
}

double coeff_sup(const MPoly& p, double E, double R) {
  if (p.variable_count() > 2) throw UsageError("coeff_sup supports at most one parameter");
  double sum = 0;
  for (const auto& [e, c] : p.terms()) {
    double v = std::abs(c.get_d()) * std::pow(R, e[0]);
    if (e.size() > 1) v *= std::pow(E, e[1]);
    sum += v;
  }
  return sum;
}

namespace {

std::vector<double> t_coefficients(const MPoly& p) {
  std::vector<double> out(static_cast<std::size_t>(std::max(0, p.degree_in(0))) + 1, 0.0);
  for (const auto& [e, c] : p.terms()) out[e[0]] += c.get_d();
  return out;
}

double horner(const std::vector<double>& c, double t) {
  double v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

}  // namespace

SegmentFloor segment_leading_floor(const MPoly& beta, const Rational& epsilon, double R,
                                   std::size_t grid) {
  if (beta.variable_count() != 2)
    throw UnsupportedParameterCount("segment floor requires exactly one parameter");
  if (grid < 2) throw UsageError("segment floor needs at least two grid points");
  const Rational eps[] = {epsilon};
  const MPoly fixed = eval_params(beta, eps);
  if (fixed.is_zero())
    throw DegenerateParameter("leading coefficient vanishes identically at eps = " +
                              epsilon.get_str());
  const auto c = t_coefficients(fixed);
  const double lo = -R / 2, hi = R / 2;
  const double step = (hi - lo) / static_cast<double>(grid - 1);
  double best = -1, best_t = 0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = i + 1 == grid ? hi : lo + step * static_cast<double>(i);
    const double v = std::abs(horner(c, t));
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  // Golden-section on |beta| in the neighbouring cells.
  double a = std::max(lo, best_t - step), b = std::min(hi, best_t + step);
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = std::abs(horner(c, x1)), f2 = std::abs(horner(c, x2));
  for (int it = 0; it < 80 && b - a > 1e-14 * std::max(1.0, R); ++it) {
    if (f1 > f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - g * (b - a);
      f1 = std::abs(horner(c, x1));
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + g * (b - a);
      f2 = std::abs(horner(c, x2));
    }
  }
  if (f1 > best) { best = f1; best_t = x1; }
  if (f2 > best) { best = f2; best_t = x2; }
  return {best, best_t};
}

double iy_zero_bound(double A, double a, std::size_t order, double mu) {
  if (!(a > 0)) throw UsageError("iy_zero_bound requires a > 0");
  if (A < 0) throw UsageError("iy_zero_bound requires A >= 0");
  return std::pow(A / a + static_cast<double>(order), mu);
}

namespace {

constexpr double kLn10 = std::numbers::ln10;

// ln(x + y) from ln x and ln y.
double log_add(double lx, double ly) {
  if (lx == -std::numeric_limits<double>::infinity()) return ly;
  if (ly == -std::numeric_limits<double>::infinity()) return lx;
  const double m = std::max(lx, ly);
  return m + std::log1p(std::exp(std::min(lx, ly) - m));
}

double log_integer(const Integer& M) {
  // mpz_get_d_2exp keeps precision for huge integers.
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, M.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::numbers::ln2;
}

BigValue from_log(double ln_value) {
  const double l10 = ln_value / kLn10;
  const double v = l10 > 307.0 ? std::numeric_limits<double>::infinity() : std::exp(ln_value);
  return {v, l10};
}

// ln(((M e)^growth (E^power + 1) R^rpow + k)^sigma)
BigValue growth_formula(const Integer& M, double growth, double E, double epower, double R,
                        double rpow, double k, double sigma) {
  if (M < 1) throw UsageError("a-priori bounds require M >= 1");
  if (!(E > 0) || !(R > 0)) throw UsageError("a-priori bounds require E, R > 0");
  const double ln_me = log_integer(M) + std::log(euler_upper());
  const double ln_epart = log_add(epower * std::log(E), 0.0);
  const double ln_main = growth * ln_me + ln_epart + rpow * std::log(R);
  const double ln_k = k > 0 ? std::log(k) : -std::numeric_limits<double>::infinity();
  return from_log(sigma * log_add(ln_main, ln_k));
}

}  // namespace

BigValue apriori_lemma5(const Integer& M, unsigned d, double E, double R, std::size_t k,
                        const BoundConfig& cfg) {
  const double dd = d;
  return growth_formula(M, cfg.C * dd * dd * dd, E, 2 * dd, R, dd + 1,
                        static_cast<double>(k), cfg.sigma);
}

BigValue apriori_theorem2(const Integer& M, std::size_t n, unsigned d, double E, double R,
                          const BoundConfig& cfg) {
  if (n < 1) throw UsageError("a-priori bound requires n >= 1");
  const double nn = static_cast<double>(n), dd = d;
  const double growth = cfg.C * std::pow(nn, 9) * std::pow(dd, 4);
  const double epower = nn * (nn + 1) * dd;
  const double rpow = nn * (nn + 1) * dd / 2 + 1;
  return growth_formula(M, growth, E, epower, R, rpow, nn, cfg.sigma);
}

double apriori_multiparameter_log10(double P, std::size_t n, unsigned d, double E, double R,
                                    const BoundConfig& cfg) {
  const double e = euler_upper();
  // log10(e^(e^(e^P))) = e^(e^P) / ln 10
  const double tower = std::pow(e, std::pow(e, P)) / kLn10;
  return tower + cfg.C * static_cast<double>(n * n) * d * std::log10(E * R);
}

std::pair<unsigned, Integer> size_bounds(std::size_t n, std::size_t q, unsigned d,
                                         const Integer& M, unsigned i) {
  Integer d1q = 1;
  for (std::size_t j = 0; j < q + 1; ++j) d1q *= (d + 1);
  const Integer base = Integer(static_cast<unsigned long>(n)) * (d + d1q * M);
  Integer bound = 1;
  for (unsigned j = 0; j < i; ++j) bound *= base;
  return {d * i, bound};
}

std::pair<unsigned, Integer> size_bounds(const LinSys& sys, unsigned i) {
  return size_bounds(sys.n(), sys.q(), sys.degree(), sys.max_coefficient(), i);
}

unsigned lemma9_degree_bound(std::size_t k, unsigned d) {
  return static_cast<unsigned>(k * (k + 1) * d / 2);
}

Integer lemma3_coefficient_bound(unsigned d, const Integer& M) {
  const unsigned long m = 2ul * d * (d + 1);
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), m);
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), M.get_mpz_t(), m);
  return f * p;
}

BoundReport apriori_report(const LinSys& sys, const DerivedEq& eq, const BoundConfig& cfg) {
  cfg.validate();
  BoundReport rep;
  // Lemma 5 style values use the derived equation's own degree and
  // coefficient size; the final bound uses the system's.
  Integer eq_m = 0;
  int eq_d = 0;
  auto scan = [&](const MPoly& p) {
    eq_d = std::max(eq_d, p.total_degree());
    for (const auto& [e, c] : p.terms()) eq_m = std::max(eq_m, Integer(abs(c.get_num())));
  };
  scan(eq.beta);
  for (const MPoly& g : eq.gammas) scan(g);
  const unsigned ed = static_cast<unsigned>(eq_d);
  if (eq_m < 1) eq_m = 1;
  rep.m_floored = sys.max_coefficient() < 1;
  const Integer sys_m = rep.m_floored ? Integer(1) : sys.max_coefficient();
  rep.cartan = cartan_floor(ed, ed);
  rep.lemma5 = apriori_lemma5(eq_m, ed, cfg.E, cfg.R, eq.k, cfg);
  rep.theorem2 = apriori_theorem2(sys_m, sys.n(), sys.degree(), cfg.E, cfg.R, cfg);
  rep.lemma3_coeff_bound = lemma3_coefficient_bound(ed, eq_m);
  rep.lemma9_degree = lemma9_degree_bound(eq.k, sys.degree());
  return rep;
}

BoundReport bound_report(const LinSys& sys, const DerivedEq& eq, const Rational& epsilon,
                         const BoundConfig& cfg) {
  BoundReport rep = apriori_report(sys, eq, cfg);
  const Rational eps[] = {epsilon};
  rep.A = coeff_sup(eval_params(eq.beta, eps), cfg.E, cfg.R);
  for (const MPoly& g : eq.gammas)
    rep.A = std::max(rep.A, coeff_sup(eval_params(g, eps), cfg.E, cfg.R));
  const SegmentFloor floor = segment_leading_floor(eq.beta, epsilon, cfg.R);
  rep.a = floor.value;
  rep.t_star = floor.t_star;
  rep.iy_bound = iy_zero_bound(rep.A, rep.a, eq.k, cfg.mu);
  return rep;
}

}  // namespace linzero
