#include "linzero/perturbation/perturbation.hpp"

#include <algorithm>
#include <map>

#include "linzero/errors.hpp"

namespace linzero {

namespace {

constexpr std::size_t kParam = 1;

void require_one_parameter(std::size_t variable_count, const char* what) {
  if (variable_count != 2)
    throw UnsupportedParameterCount(std::string(what) + " requires exactly one parameter");
}

void require_parameters_only(const MPoly& p, const char* what) {
  if (p.depends_on(0))
    throw UsageError(std::string(what) + " expects polynomials in the parameters only");
}

}  // namespace

PerturbationReport perturbation_verdict(const DerivedEq& eq) {
  require_one_parameter(eq.variable_count(), "perturbation verdict");
  PerturbationReport report;
  for (std::size_t i = 0; i < eq.reduced.size(); ++i) {
    const MPoly content = gcd(eq.reduced[i].den().coefficients_in(0));
    report.reduced_den_contents.push_back(content);
    if (!content.is_constant()) report.witnesses.push_back({i, content});
  }
  report.verdict = report.witnesses.empty() ? Verdict::not_perturbed : Verdict::perturbed;
  return report;
}

ValuationProfile valuation_profile(const MPoly& num, const MPoly& den, const Rational& root) {
  require_one_parameter(den.variable_count(), "valuation profile");
  if (den.is_zero()) throw UsageError("valuation profile with zero denominator");
  ValuationProfile profile;
  if (!num.is_zero()) profile.numerator = valuation(num, kParam, root);
  profile.denominator = valuation(den, kParam, root);
  return profile;
}

ValuationProfile valuation_profile(const RatFn& f, const Rational& root) {
  return valuation_profile(f.num(), f.den(), root);
}

bool certificate_holds(const DivisionCertificate& cert, const MPoly& target,
                       std::span<const MPoly> basis) {
  if (cert.cofactors.size() != basis.size()) return false;
  MPoly sum(target.variable_count());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (cert.cofactors[j].variable_count() != target.variable_count()) return false;
    sum += cert.cofactors[j] * basis[j];
  }
  return sum == target;
}

namespace {

// All parameter exponent vectors (t exponent 0) of total degree <= cap.
std::vector<Exponents> parameter_monomials(std::size_t nvars, unsigned cap) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  // Odometer over variables 1..nvars-1 bounded by the remaining degree.
  auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var == nvars) {
      out.push_back(e);
      return;
    }
    for (unsigned d = 0; d <= remaining; ++d) {
      e[var] = d;
      self(self, var + 1, remaining - d);
    }
    e[var] = 0;
  };
  if (nvars == 1) {
    out.push_back(e);
  } else {
    rec(rec, 1, cap);
  }
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

}  // namespace

namespace {

// One dense solve with cofactors of degree <= cap.
std::vector<std::optional<DivisionCertificate>> solve_division(std::span<const MPoly> targets,
                                                               std::span<const MPoly> basis,
                                                               unsigned cap) {
  const std::size_t nv = basis.front().variable_count();
  const std::vector<Exponents> monos = parameter_monomials(nv, cap);
  const std::size_t per = monos.size();
  const std::size_t unknowns = per * basis.size();

  // Equation rows are indexed by the monomials that can appear.
  std::map<Exponents, std::size_t, GrlexLess> row_of;
  auto row_index = [&](const Exponents& e) {
    auto [it, inserted] = row_of.try_emplace(e, row_of.size());
    return it->second;
  };
  struct Entry {
    std::size_t row, col;
    Rational value;
  };
  std::vector<Entry> entries;
  Exponents prod(nv);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t u = 0; u < per; ++u) {
      for (const auto& [e, c] : basis[j].terms()) {
        for (std::size_t v = 0; v < nv; ++v) prod[v] = e[v] + monos[u][v];
        entries.push_back({row_index(prod), j * per + u, c});
      }
    }
  }
  for (const MPoly& t : targets)
    for (const auto& [e, c] : t.terms()) row_index(e);

  const std::size_t rows = row_of.size();
  const std::size_t rhs_cols = targets.size();
  const std::size_t width = unknowns + rhs_cols;
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(width));
  for (const Entry& en : entries) m[en.row][en.col] += en.value;
  for (std::size_t k = 0; k < targets.size(); ++k)
    for (const auto& [e, c] : targets[k].terms()) m[row_of.at(e)][unknowns + k] = c;

  // Reduced row echelon form, lowest-index pivots.
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    nz.clear();
    for (std::size_t j = c; j < width; ++j) {
      if (sgn(m[r][j]) == 0) continue;
      m[r][j] *= inv;
      nz.push_back(j);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j : nz) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<std::optional<DivisionCertificate>> out(targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    bool feasible = true;
    for (std::size_t i = r; i < rows && feasible; ++i)
      if (sgn(m[i][unknowns + k]) != 0) feasible = false;
    if (!feasible) continue;
    DivisionCertificate cert;
    cert.target_index = k;
    cert.degree_cap = cap;
    cert.cofactors.assign(basis.size(), MPoly(nv));
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t c = pivot_col[i];
      cert.cofactors[c / per].add_term(monos[c % per], m[i][unknowns + k]);
    }
    if (!certificate_holds(cert, targets[k], basis))
      throw ConsistencyError("effective division produced a certificate that does not verify");
    out[k] = std::move(cert);
  }
  return out;
}

}  // namespace

std::vector<std::optional<DivisionCertificate>> effective_division_batch(
    std::span<const MPoly> targets, std::span<const MPoly> basis, unsigned cap) {
  if (basis.empty()) throw UsageError("effective division with an empty basis");
  const std::size_t nv = basis.front().variable_count();
  for (const MPoly& b : basis) {
    if (b.variable_count() != nv) throw UsageError("basis polynomials live in different rings");
    require_parameters_only(b, "effective division");
  }
  for (const MPoly& t : targets) {
    if (t.variable_count() != nv) throw UsageError("target lives in a different ring");
    require_parameters_only(t, "effective division");
  }

  // Small caps first: a certificate within a smaller cap is also one within
  // `cap`, and the dense system grows quickly with the cap. Targets still
  // open are retried at the next cap, ending with `cap` itself.
  std::vector<std::optional<DivisionCertificate>> out(targets.size());
  std::vector<std::size_t> open(targets.size());
  for (std::size_t k = 0; k < open.size(); ++k) open[k] = k;
  unsigned c = std::min(cap, 1u);
  while (!open.empty()) {
    std::vector<MPoly> sub;
    for (std::size_t k : open) sub.push_back(targets[k]);
    auto found = solve_division(sub, basis, c);
    std::vector<std::size_t> still;
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (found[i]) {
        found[i]->target_index = open[i];
        found[i]->degree_cap = cap;
        out[open[i]] = std::move(found[i]);
      } else {
        still.push_back(open[i]);
      }
    }
    open = std::move(still);
    if (c == cap) break;
    c = std::min(cap, 2 * c + 1);
  }
  return out;
}

std::optional<DivisionCertificate> effective_division(const MPoly& target,
                                                      std::span<const MPoly> basis,
                                                      unsigned cap) {
  auto out = effective_division_batch(std::span<const MPoly>(&target, 1), basis, cap);
  return std::move(out.front());
}

std::optional<DivisionCertificate> bezout_membership(const MPoly& target,
                                                     std::span<const MPoly> basis) {
  if (basis.empty()) throw UsageError("ideal membership with an empty basis");
  const std::size_t nv = target.variable_count();
  require_one_parameter(nv, "Bezout membership");
  require_parameters_only(target, "Bezout membership");
  for (const MPoly& b : basis) {
    if (b.variable_count() != nv) throw UsageError("basis lives in a different ring");
    require_parameters_only(b, "Bezout membership");
  }

  DivisionCertificate cert;
  cert.cofactors.assign(basis.size(), MPoly(nv));

  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (!basis[j].is_zero()) live.push_back(j);
  if (live.empty()) {
    if (!target.is_zero()) return std::nullopt;
    return cert;
  }
  if (target.is_zero()) return cert;

  // target = d * b with b the common factor of the basis.
  const MPoly b = gcd(basis);
  auto d = divide_exact(target, b);
  if (!d) return std::nullopt;

  std::vector<MPoly> c;
  for (std::size_t j : live) c.push_back(*divide_exact(basis[j], b));

  // Iterated extended Euclid: sum h_i c_i = g, ending with g = 1.
  std::vector<MPoly> h(c.size(), MPoly(nv));
  h[0] = MPoly::constant(nv, 1);
  MPoly g = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) {
    ExtendedGcd eg = extended_gcd_univariate(g, c[i], kParam);
    for (std::size_t j = 0; j < i; ++j) h[j] *= eg.s;
    h[i] = eg.t;
    g = eg.g;
  }
  if (!g.is_constant()) throw ConsistencyError("coprime parts have a common factor");
  const Rational ginv = 1 / g.leading_coefficient();
  for (MPoly& hi : h) hi = hi * ginv * *d;

  // Keep degrees small by reducing all but the last cofactor modulo the last
  // coprime part and moving the quotients over.
  const std::size_t last = c.size() - 1;
  if (!c[last].is_constant()) {
    for (std::size_t j = 0; j < last; ++j) {
      auto [q, rem] = divide_univariate(h[j], c[last], kParam);
      h[j] = std::move(rem);
      h[last] += q * c[j];
    }
  }

  unsigned maxdeg = 0;
  for (std::size_t i = 0; i < live.size(); ++i) {
    maxdeg = std::max(maxdeg, static_cast<unsigned>(std::max(0, h[i].total_degree())));
    cert.cofactors[live[i]] = std::move(h[i]);
  }
  cert.degree_cap = maxdeg;
  if (!certificate_holds(cert, target, basis))
    throw ConsistencyError("Bezout certificate does not verify");
  return cert;
}

}  // namespace linzero
