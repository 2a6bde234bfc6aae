#include "linzero/derivation/derivation.hpp"

#include <string>

#include "linzero/derivation/bareiss.hpp"
#include "linzero/errors.hpp"

namespace linzero {

PolyVector covector_step(const LinSys& sys, const PolyVector& a) {
  const std::size_t n = sys.n();
  if (a.size() != n) throw UsageError("covector length does not match system dimension");
  for (const MPoly& p : a)
    if (p.variable_count() != sys.variable_count())
      throw UsageError("covector entries live in a different ring");
  PolyVector out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    MPoly v = diff_t(a[j]);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].is_zero() || sys.entry(i, j).is_zero()) continue;
      v += sys.entry(i, j) * a[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

CovectorSeq covector_sequence(const LinSys& sys, std::size_t upto) {
  if (upto > sys.n()) throw UsageError("covector sequence requested past index n");
  const std::size_t nv = sys.variable_count();
  CovectorSeq seq;
  PolyVector a(sys.n(), MPoly(nv));
  a[0] = MPoly::constant(nv, 1);
  seq.vectors.push_back(a);
  for (std::size_t i = 1; i <= upto; ++i) {
    a = covector_step(sys, a);
    seq.vectors.push_back(a);
  }
  return seq;
}

namespace {

// Columns a^(0) .. a^(count-1) restricted to `rows`.
PolyMatrix column_block(const CovectorSeq& seq, const std::vector<std::size_t>& rows,
                        std::size_t count) {
  PolyMatrix m;
  m.reserve(rows.size());
  for (std::size_t r : rows) {
    std::vector<MPoly> row;
    row.reserve(count);
    for (std::size_t c = 0; c < count; ++c) row.push_back(seq.vectors[c][r]);
    m.push_back(std::move(row));
  }
  return m;
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  return rows;
}

void check_k(const CovectorSeq& seq, std::size_t k) {
  if (k == 0 || k >= seq.vectors.size() || k > seq.dimension())
    throw UsageError("derived order k out of range for this covector sequence");
}

MPoly gcd_or_one(std::span<const MPoly> polys) {
  for (const MPoly& p : polys)
    if (!p.is_zero()) return gcd(polys);
  return MPoly::constant(polys.front().variable_count(), 1);
}

}  // namespace

std::vector<std::vector<std::size_t>> row_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::size_t minimal_k(const CovectorSeq& seq) {
  const std::size_t n = seq.dimension();
  if (seq.vectors.size() < n + 1)
    throw UsageError("covector sequence must extend to index n");
  const auto rows = all_rows(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (bareiss_rank(column_block(seq, rows, k + 1)) <= k) return k;
  }
  // n+1 vectors in an n-dimensional space are always dependent.
  throw ConsistencyError("covector sequence has full rank n+1");
}

std::optional<DerivedEq> decompose_with_minor(const CovectorSeq& seq, std::size_t k,
                                              const std::vector<std::size_t>& rows) {
  check_k(seq, k);
  if (rows.size() != k) throw UsageError("minor must select exactly k rows");
  PolyMatrix base = column_block(seq, rows, k);
  MPoly beta = bareiss_determinant(base);
  if (beta.is_zero()) return std::nullopt;

  DerivedEq eq;
  eq.k = k;
  eq.minor_rows = rows;
  eq.beta = beta;
  // Cramer: gamma_i = det of the minor with column i replaced by a^(k).
  for (std::size_t i = 0; i < k; ++i) {
    PolyMatrix m = base;
    for (std::size_t r = 0; r < k; ++r) m[r][i] = seq.vectors[k][rows[r]];
    eq.gammas.push_back(bareiss_determinant(std::move(m)));
  }

  // beta * a^(k) = sum gamma_i a^(i) on every row, not only the minor's.
  for (std::size_t r = 0; r < seq.dimension(); ++r) {
    MPoly lhs = beta * seq.vectors[k][r];
    for (std::size_t i = 0; i < k; ++i) lhs -= eq.gammas[i] * seq.vectors[i][r];
    if (!lhs.is_zero())
      throw ConsistencyError("decomposition identity fails on row " + std::to_string(r));
  }

  for (const MPoly& g : eq.gammas) eq.reduced.emplace_back(g, beta);
  std::vector<MPoly> all = eq.gammas;
  all.push_back(beta);
  eq.content = gcd_or_one(all);
  return eq;
}

DerivedEq decompose(const CovectorSeq& seq, std::size_t k) {
  check_k(seq, k);
  for (const auto& rows : row_subsets(seq.dimension(), k)) {
    if (auto eq = decompose_with_minor(seq, k, rows)) return std::move(*eq);
  }
  throw ConsistencyError("no nonsingular k-minor; k is not minimal");
}

DegeneracyIdeal degeneracy_generators(const CovectorSeq& seq, std::size_t k) {
  check_k(seq, k);
  DegeneracyIdeal ideal;
  ideal.minors = row_subsets(seq.dimension(), k);
  for (std::size_t m = 0; m < ideal.minors.size(); ++m) {
    MPoly det = bareiss_determinant(column_block(seq, ideal.minors[m], k));
    const auto coeffs = det.coefficients_in(0);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j].is_zero()) continue;
      ideal.generators.push_back(coeffs[j]);
      ideal.minor_index.push_back(m);
      ideal.t_power.push_back(static_cast<unsigned>(j));
    }
    ideal.determinants.push_back(std::move(det));
  }
  return ideal;
}

MPoly exceptional_locus(const DerivedEq& eq) {
  if (eq.variable_count() != 2)
    throw UnsupportedParameterCount("exceptional locus requires exactly one parameter");
  if (eq.beta.is_zero()) throw ConsistencyError("leading coefficient is identically zero");
  return gcd(eq.beta.coefficients_in(0));
}

DerivedEq derive(const LinSys& sys) {
  const CovectorSeq seq = covector_sequence(sys, sys.n());
  return decompose(seq, minimal_k(seq));
}

DerivedEq make_scalar_equation(MPoly beta, std::vector<MPoly> gammas) {
  if (beta.is_zero()) throw UsageError("leading coefficient must be nonzero");
  if (gammas.empty()) throw UsageError("scalar equation needs order at least 1");
  DerivedEq eq;
  eq.k = gammas.size();
  eq.beta = std::move(beta);
  eq.gammas = std::move(gammas);
  for (const MPoly& g : eq.gammas) eq.reduced.emplace_back(g, eq.beta);
  std::vector<MPoly> all = eq.gammas;
  all.push_back(eq.beta);
  eq.content = gcd(all);
  return eq;
}

}  // namespace linzero
