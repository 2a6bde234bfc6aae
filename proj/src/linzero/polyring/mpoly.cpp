#include "linzero/polyring/mpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "linzero/errors.hpp"

namespace linzero {

unsigned total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MPoly::MPoly(std::size_t variable_count) : nvars_(variable_count) {}

MPoly MPoly::constant(std::size_t variable_count, const Rational& c) {
  MPoly p(variable_count);
  p.add_term(Exponents(variable_count, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t variable_count, std::size_t var) {
  if (var >= variable_count) throw UsageError("variable index out of range");
  Exponents e(variable_count, 0);
  e[var] = 1;
  return monomial(variable_count, std::move(e), 1);
}

MPoly MPoly::monomial(std::size_t variable_count, Exponents exps,
                      const Rational& c) {
  if (exps.size() != variable_count)
    throw UsageError("exponent vector length does not match variable count");
  MPoly p(variable_count);
  p.add_term(exps, c);
  return p;
}

MPoly MPoly::linear(std::size_t variable_count, std::size_t var,
                    const Rational& root) {
  return variable(variable_count, var) - constant(variable_count, root);
}

bool MPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && linzero::total_degree(terms_.begin()->first) == 0);
}

bool MPoly::depends_on(std::size_t var) const {
  for (const auto& [e, c] : terms_)
    if (e[var] != 0) return true;
  return false;
}

bool MPoly::has_integer_coefficients() const {
  for (const auto& [e, c] : terms_)
    if (c.get_den() != 1) return false;
  return true;
}

int MPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(linzero::total_degree(terms_.rbegin()->first));
}

int MPoly::degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return static_cast<int>(d);
}

const Exponents& MPoly::leading_exponents() const {
  return terms_.rbegin()->first;
}

const Rational& MPoly::leading_coefficient() const {
  return terms_.rbegin()->second;
}

Rational MPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MPoly::max_abs_coefficient() const {
  Rational m = 0;
  for (const auto& [e, c] : terms_) {
    Rational a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

void MPoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_)
    throw UsageError("exponent vector length does not match variable count");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void MPoly::check_compatible(const MPoly& other) const {
  if (nvars_ != other.nvars_)
    throw UsageError("polynomials live in rings with different variable counts");
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_compatible(b);
  MPoly r(a.nvars_);
  Exponents e(a.nvars_);
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      r.add_term(e, prod);
    }
  }
  return r;
}

MPoly& MPoly::operator*=(const MPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result = constant(nvars_, 1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

MPoly MPoly::diff(std::size_t var) const {
  if (var >= nvars_) throw UsageError("variable index out of range");
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    r.add_term(f, c * e[var]);
  }
  return r;
}

std::vector<MPoly> MPoly::coefficients_in(std::size_t var) const {
  if (var >= nvars_) throw UsageError("variable index out of range");
  const int deg = degree_in(var);
  std::vector<MPoly> out(deg < 0 ? 0 : static_cast<std::size_t>(deg) + 1,
                         MPoly(nvars_));
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f[var] = 0;
    out[e[var]].add_term(f, c);
  }
  return out;
}

MPoly MPoly::substitute(std::size_t var, const Rational& value) const {
  if (var >= nvars_) throw UsageError("variable index out of range");
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f[var] = 0;
    Rational v = c;
    for (unsigned i = 0; i < e[var]; ++i) v *= value;
    r.add_term(f, v);
  }
  return r;
}

Rational MPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw UsageError("evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned j = 0; j < e[i]; ++j) v *= point[i];
    sum += v;
  }
  return sum;
}

double MPoly::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw UsageError("evaluation point has wrong length");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double v = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i)
      v *= std::pow(point[i], static_cast<double>(e[i]));
    sum += v;
  }
  return sum;
}

std::vector<std::string> default_variable_names(std::size_t variable_count) {
  std::vector<std::string> names{"t"};
  if (variable_count == 2) {
    names.emplace_back("eps");
  } else {
    for (std::size_t i = 1; i < variable_count; ++i)
      names.push_back("p" + std::to_string(i));
  }
  names.resize(variable_count);
  return names;
}

std::string MPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = sgn(c) < 0;
    Rational a = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = (a == 1);
    bool wrote = false;
    if (!unit || linzero::total_degree(e) == 0) {
      os << a.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::string MPoly::to_string() const {
  const auto names = default_variable_names(nvars_);
  return to_string(names);
}

MPoly diff_t(const MPoly& p) { return p.diff(0); }

MPoly eval_params(const MPoly& p, std::span<const Rational> values) {
  if (values.size() + 1 != p.variable_count())
    throw UsageError("parameter value count does not match polynomial ring");
  MPoly r = p;
  for (std::size_t i = 0; i < values.size(); ++i) r = r.substitute(i + 1, values[i]);
  return r;
}

namespace {

bool divides_monomial(const Exponents& d, const Exponents& e) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > e[i]) return false;
  return true;
}

}  // namespace

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  if (a.variable_count() != b.variable_count())
    throw UsageError("polynomials live in rings with different variable counts");
  if (b.is_zero()) throw UsageError("division by the zero polynomial");
  const std::size_t nv = a.variable_count();
  MPoly q(nv);
  MPoly r = a;
  const Exponents& lb = b.leading_exponents();
  const Rational& cb = b.leading_coefficient();
  Exponents e(nv);
  // With a single divisor the grlex division remainder is zero iff b | a.
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    if (!divides_monomial(lb, lr)) return std::nullopt;
    for (std::size_t i = 0; i < nv; ++i) e[i] = lr[i] - lb[i];
    MPoly term = MPoly::monomial(nv, e, r.leading_coefficient() / cb);
    q += term;
    r -= term * b;
  }
  return q;
}

unsigned valuation(const MPoly& p, std::size_t var, const Rational& root) {
  if (p.is_zero()) throw UsageError("valuation of the zero polynomial is undefined");
  const MPoly factor = MPoly::linear(p.variable_count(), var, root);
  unsigned m = 0;
  MPoly cur = p;
  while (auto q = divide_exact(cur, factor)) {
    cur = std::move(*q);
    ++m;
  }
  return m;
}

MPoly primitive_integral(const MPoly& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  for (const auto& [e, c] : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& [e, c] : p.terms()) {
    Integer v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(p.leading_coefficient()) < 0) scale = -scale;
  return p * scale;
}

std::pair<MPoly, MPoly> divide_univariate(const MPoly& a, const MPoly& b,
                                          std::size_t var) {
  if (b.is_zero()) throw UsageError("division by the zero polynomial");
  const std::size_t nv = a.variable_count();
  for (std::size_t i = 0; i < nv; ++i) {
    if (i == var) continue;
    if (a.depends_on(i) || b.depends_on(i))
      throw UsageError("univariate division applied to a multivariate polynomial");
  }
  const int db = b.degree_in(var);
  const Rational lb = b.leading_coefficient();
  MPoly q(nv);
  MPoly r = a;
  Exponents e(nv, 0);
  while (!r.is_zero() && r.degree_in(var) >= db) {
    e[var] = static_cast<unsigned>(r.degree_in(var) - db);
    MPoly term = MPoly::monomial(nv, e, r.leading_coefficient() / lb);
    q += term;
    r -= term * b;
  }
  return {q, r};
}

ExtendedGcd extended_gcd_univariate(const MPoly& a, const MPoly& b,
                                    std::size_t var) {
  const std::size_t nv = a.variable_count();
  MPoly r0 = a, r1 = b;
  MPoly s0 = MPoly::constant(nv, 1), s1(nv);
  MPoly t0(nv), t1 = MPoly::constant(nv, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divide_univariate(r0, r1, var);
    r0 = std::move(r1);
    r1 = std::move(r);
    MPoly s2 = s0 - q * s1;
    MPoly t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Rational inv = 1 / r0.leading_coefficient();
  return {r0 * inv, s0 * inv, t0 * inv};
}

}  // namespace linzero
