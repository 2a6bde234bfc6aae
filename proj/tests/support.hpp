#ifndef LINZERO_TESTS_SUPPORT_HPP
#define LINZERO_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "linzero/harness/sysdoc.hpp"
#include "linzero/polyring/mpoly.hpp"

namespace lzt {

using linzero::Exponents;
using linzero::Integer;
using linzero::MPoly;
using linzero::Rational;

// splitmix64; small, seedable and identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [lo, hi].
  long integer(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double real(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  Rational rational(long max_num, long max_den) {
    Rational r(integer(-max_num, max_num), integer(1, max_den));
    r.canonicalize();
    return r;
  }

 private:
  std::uint64_t s_;
};

// Up to `terms` random monomials of total degree <= maxdeg with integer
// coefficients in [-maxcoef, maxcoef].
inline MPoly random_poly(Rng& rng, std::size_t nvars, unsigned maxdeg, long maxcoef, int terms) {
  MPoly p(nvars);
  for (int i = 0; i < terms; ++i) {
    Exponents e(nvars, 0);
    unsigned left = static_cast<unsigned>(rng.integer(0, maxdeg));
    for (std::size_t v = 0; v < nvars && left > 0; ++v) {
      const unsigned k = v + 1 == nvars ? left : static_cast<unsigned>(rng.integer(0, left));
      e[v] = k;
      left -= k;
    }
    p.add_term(e, Rational(rng.integer(-maxcoef, maxcoef)));
  }
  return p;
}

// Polynomial in the parameter only (variable 1 of a two-variable ring).
inline MPoly random_eps_poly(Rng& rng, unsigned maxdeg, long maxcoef) {
  MPoly p(2);
  const unsigned deg = static_cast<unsigned>(rng.integer(0, maxdeg));
  for (unsigned j = 0; j <= deg; ++j) p.add_term({0, j}, Rational(rng.integer(-maxcoef, maxcoef)));
  return p;
}

// Members of the seeded one-parameter ensemble: n in 1..4, d in 0..2,
// M in 1..5, every (n, d) pair represented.
struct EnsembleMember {
  std::size_t n;
  unsigned d;
  unsigned M;
  std::int64_t seed;
};

inline EnsembleMember ensemble_member(std::size_t i) {
  return {1 + i % 4, static_cast<unsigned>((i / 4) % 3), static_cast<unsigned>(1 + (i * 7) % 5),
          static_cast<std::int64_t>(1000 + i)};
}

inline linzero::SystemDoc ensemble_document(std::size_t i) {
  const EnsembleMember m = ensemble_member(i);
  return linzero::gen_random(m.n, m.d, m.M, 1, m.seed);
}

// Shorthands for the two-variable ring (t, eps).
inline MPoly T() { return MPoly::variable(2, 0); }
inline MPoly Eps() { return MPoly::variable(2, 1); }
inline MPoly K(const Rational& c, std::size_t nvars = 2) { return MPoly::constant(nvars, c); }

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace lzt

#endif
