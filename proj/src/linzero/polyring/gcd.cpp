// Multivariate gcd over Q by recursive content / primitive-part reduction.
// The primitive parts are handled with the subresultant PRS in one main
// variable, whose intermediate divisions are exact in the coefficient ring.
// Coprime primitive parts, the common case, are recognised first by a
// single modular specialization.

#include <cassert>
#include <cstdint>
#include <vector>

#include "linzero/errors.hpp"
#include "linzero/polyring/mpoly.hpp"

namespace linzero {

namespace {

MPoly leading_coefficient_in(const MPoly& p, std::size_t var) {
  return p.coefficients_in(var).back();
}

MPoly exact(const MPoly& a, const MPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw ConsistencyError("expected exact division failed in gcd");
  return std::move(*q);
}

MPoly gcd_impl(const MPoly& a, const MPoly& b);

// Arithmetic modulo the Mersenne prime 2^61 - 1.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1) r = mul_mod(r, a);
  return r;
}

std::uint64_t residue(const Rational& c) {
  return mpz_fdiv_ui(c.get_num_mpz_t(), kPrime);
}

using ModPoly = std::vector<std::uint64_t>;  // lowest degree first

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Image of p in F_p[var] after sending every other variable to point[v].
// p must have integer coefficients.
ModPoly specialize(const MPoly& p, std::size_t var, const std::vector<std::uint64_t>& point) {
  ModPoly out(static_cast<std::size_t>(p.degree_in(var)) + 1, 0);
  for (const auto& [e, c] : p.terms()) {
    std::uint64_t v = residue(c);
    for (std::size_t k = 0; k < e.size(); ++k)
      if (k != var && e[k]) v = mul_mod(v, pow_mod(point[k], e[k]));
    out[e[var]] = (out[e[var]] + v) % kPrime;
  }
  return out;
}

std::size_t gcd_degree_mod(ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = pow_mod(b.back(), kPrime - 2);
    while (a.size() >= b.size()) {
      const std::uint64_t f = mul_mod(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[i + shift] = (a[i + shift] + kPrime - mul_mod(f, b[i])) % kPrime;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// True only if a and b (primitive in var) provably share no factor of
// positive degree in var: a common factor h keeps its degree under any
// specialization that does not kill the leading coefficients, since lc(h)
// divides both of them.
bool coprime_by_specialization(const MPoly& a, const MPoly& b, std::size_t var) {
  const MPoly ia = primitive_integral(a), ib = primitive_integral(b);
  const std::size_t da = static_cast<std::size_t>(ia.degree_in(var));
  const std::size_t db = static_cast<std::size_t>(ib.degree_in(var));
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<std::uint64_t> point(a.variable_count());
    for (auto& x : point) {
      seed ^= seed << 13;
      seed ^= seed >> 7;
      seed ^= seed << 17;
      x = seed % kPrime;
    }
    const ModPoly sa = specialize(ia, var, point), sb = specialize(ib, var, point);
    if (sa.back() == 0 || sb.back() == 0 || sa.size() != da + 1 || sb.size() != db + 1) continue;
    return gcd_degree_mod(sa, sb) == 0;
  }
  return false;
}

MPoly content_impl(const MPoly& p, std::size_t var) {
  MPoly g(p.variable_count());
  for (const MPoly& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? primitive_integral(c) : gcd_impl(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MPoly subresultant_gcd(MPoly a, MPoly b, std::size_t var) {
  const std::size_t nv = a.variable_count();
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  MPoly g = MPoly::constant(nv, 1);
  MPoly h = MPoly::constant(nv, 1);
  while (true) {
    const int delta = a.degree_in(var) - b.degree_in(var);
    MPoly r = pseudo_remainder(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return MPoly::constant(nv, 1);
    a = std::move(b);
    b = exact(r, g * h.pow(static_cast<unsigned>(delta)));
    g = leading_coefficient_in(a, var);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact(g.pow(static_cast<unsigned>(delta)),
                h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  return exact(b, content_impl(b, var));
}

MPoly gcd_impl(const MPoly& a, const MPoly& b) {
  const std::size_t nv = a.variable_count();
  if (a.is_zero()) return primitive_integral(b);
  if (b.is_zero()) return primitive_integral(a);
  if (a.is_constant() || b.is_constant()) return MPoly::constant(nv, 1);

  for (std::size_t v = 0; v < nv; ++v) {
    const bool in_a = a.depends_on(v);
    const bool in_b = b.depends_on(v);
    if (in_a && !in_b) return gcd_impl(content_impl(a, v), b);
    if (in_b && !in_a) return gcd_impl(a, content_impl(b, v));
  }

  std::size_t var = 0;
  while (!a.depends_on(var)) ++var;

  const MPoly ca = content_impl(a, var);
  const MPoly cb = content_impl(b, var);
  const MPoly c = gcd_impl(ca, cb);
  const MPoly pa = exact(a, ca);
  const MPoly pb = exact(b, cb);
  if (coprime_by_specialization(pa, pb, var)) return primitive_integral(c);
  return primitive_integral(c * subresultant_gcd(pa, pb, var));
}

}  // namespace

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var) {
  if (b.is_zero()) throw UsageError("pseudo-remainder by the zero polynomial");
  const std::size_t nv = a.variable_count();
  const int db = b.degree_in(var);
  const MPoly lb = leading_coefficient_in(b, var);
  int e = a.degree_in(var) - db + 1;
  if (e < 0) e = 0;
  MPoly r = a;
  Exponents shift(nv, 0);
  while (!r.is_zero() && r.degree_in(var) >= db) {
    shift[var] = static_cast<unsigned>(r.degree_in(var) - db);
    MPoly s = leading_coefficient_in(r, var) * MPoly::monomial(nv, shift, 1);
    r = lb * r - s * b;
    --e;
  }
  assert(e >= 0);
  return lb.pow(static_cast<unsigned>(e)) * r;
}

MPoly content_in(const MPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return content_impl(p, var);
}

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.variable_count() != b.variable_count())
    throw UsageError("polynomials live in rings with different variable counts");
  if (a.is_zero() && b.is_zero()) throw UsageError("gcd(0, 0) is undefined");
  return gcd_impl(a, b);
}

MPoly gcd(std::span<const MPoly> polys) {
  if (polys.empty()) throw UsageError("gcd of an empty list");
  MPoly g(polys.front().variable_count());
  for (const MPoly& p : polys) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? primitive_integral(p) : gcd(g, p);
  }
  if (g.is_zero()) throw UsageError("gcd(0, 0) is undefined");
  return g;
}

}  // namespace linzero
