#include "linzero/harness/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <sstream>

#include "linzero/errors.hpp"
#include "linzero/numerics/numerics.hpp"
#include "linzero/perturbation/perturbation.hpp"

namespace linzero {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(',', start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Nonzero t-coefficients of p with their powers of t.
std::vector<std::pair<unsigned, MPoly>> t_parts(const MPoly& p) {
  std::vector<std::pair<unsigned, MPoly>> out;
  const auto parts = p.coefficients_in(0);
  for (std::size_t j = 0; j < parts.size(); ++j)
    if (!parts[j].is_zero()) out.emplace_back(static_cast<unsigned>(j), parts[j]);
  return out;
}

// A system without parameters is treated as a one-parameter system that
// ignores its parameter, so the eps-indexed machinery applies unchanged.
SystemDoc with_one_parameter(SystemDoc doc) {
  if (doc.q != 0) return doc;
  doc.q = 1;
  for (auto& row : doc.matrix)
    for (auto& entry : row)
      for (auto& m : entry) m.p_exp = {0};
  return doc;
}

json bound_config_json(const BoundConfig& cfg) {
  return {{"C", cfg.C}, {"sigma", cfg.sigma}, {"mu", cfg.mu}, {"E", cfg.E}, {"R", cfg.R}};
}

json big_json(const BigValue& v) {
  json j{{"log10", v.log10}};
  if (std::isfinite(v.value)) j["value"] = v.value;
  else j["value"] = nullptr;
  return j;
}

json bound_json(const BoundReport& b, bool exact_path) {
  json j{{"cartanFloor", b.cartan.get_str()},
         {"lemma5", big_json(b.lemma5)},
         {"theorem2", big_json(b.theorem2)},
         {"lemma3CoefficientBound", b.lemma3_coeff_bound.get_str()},
         {"lemma9DegreeBound", b.lemma9_degree},
         {"mFloored", b.m_floored}};
  if (exact_path) {
    j["A"] = b.A;
    j["a"] = b.a;
    j["tStar"] = b.t_star;
    j["iyBound"] = b.iy_bound;
  }
  return j;
}

unsigned default_cap(const DerivedEq& eq) {
  int D = eq.beta.total_degree();
  for (const MPoly& g : eq.gammas) D = std::max(D, g.total_degree());
  return D <= 0 ? 0u : static_cast<unsigned>(2 * D - 1);
}

std::vector<double> seeded_init(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

std::string derivative_name(std::size_t i) {
  if (i <= 3) return "y" + std::string(i, '\'');
  return "y^(" + std::to_string(i) + ")";
}

struct Targets {
  std::vector<MPoly> basis;                   // nonzero t-coefficients of beta
  std::vector<MPoly> polys;                   // nonzero t-coefficients of the gammas
  std::vector<std::pair<std::size_t, unsigned>> origin;  // (gamma index, t power)
};

Targets certificate_targets(const DerivedEq& eq) {
  Targets t;
  for (auto& [j, c] : t_parts(eq.beta)) t.basis.push_back(c);
  for (std::size_t i = 0; i < eq.gammas.size(); ++i) {
    for (auto& [j, c] : t_parts(eq.gammas[i])) {
      t.polys.push_back(c);
      t.origin.emplace_back(i, j);
    }
  }
  return t;
}

json certificate_json(const char* method, const DivisionCertificate& cert) {
  json cof = json::array();
  for (const MPoly& h : cert.cofactors) cof.push_back(poly_json(h));
  json j{{"method", method}, {"cofactors", std::move(cof)}};
  if (std::string_view(method) == "effective") j["cap"] = cert.degree_cap;
  return j;
}

std::string verdict_name(Verdict v) {
  return v == Verdict::not_perturbed ? "notPerturbed" : "perturbed";
}

}  // namespace

Rational parse_rational(std::string_view raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw UsageError("empty rational value");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  const std::string body = s.substr(i);
  Rational r;
  if (const auto slash = body.find('/'); slash != std::string::npos) {
    const std::string p = body.substr(0, slash), q = body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) throw UsageError("malformed rational '" + s + "'");
    const Integer den(q);
    if (den == 0) throw UsageError("zero denominator in '" + s + "'");
    r = Rational(Integer(p), den);
    r.canonicalize();
  } else {
    const auto dot = body.find('.');
    const std::string ip = body.substr(0, dot);
    const std::string fp = dot == std::string::npos ? "" : body.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp)) || (dot != std::string::npos && fp.empty() && ip.empty()))
      throw UsageError("malformed number '" + s + "'");
    Integer scale = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
    r = Rational(Integer(ip.empty() ? "0" : ip) * scale + Integer(fp.empty() ? "0" : fp), scale);
    r.canonicalize();
  }
  return neg ? Rational(-r) : r;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (const std::string& item : split_commas(text)) out.push_back(parse_rational(item));
  return out;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (const std::string& item : split_commas(text)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw UsageError("malformed number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

json poly_json(const MPoly& p) {
  const auto names = default_variable_names(p.variable_count());
  json terms = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back({{"exp", it->first}, {"coeff", it->second.get_str()}});
  return {{"text", p.to_string(names)}, {"terms", std::move(terms)}};
}

MPoly poly_from_json(const json& j, std::size_t variable_count) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("polynomial must be an object with a terms array", "");
  MPoly p(variable_count);
  for (const json& t : j["terms"]) {
    if (!t.contains("exp") || !t.contains("coeff") || !t["coeff"].is_string())
      throw ParseError("malformed polynomial term", "");
    auto e = t["exp"].get<Exponents>();
    if (e.size() != variable_count) throw ParseError("exponent length mismatch", "");
    Rational c;
    try {
      c = parse_rational(t["coeff"].get<std::string>());
    } catch (const UsageError& err) {
      throw ParseError(err.what(), "");
    }
    p.add_term(e, c);
  }
  return p;
}

std::string equation_string(const DerivedEq& eq) {
  std::string out = derivative_name(eq.k);
  for (std::size_t idx = eq.k; idx-- > 0;) {
    const RatFn& a = eq.reduced[idx];
    if (a.num().is_zero()) continue;
    // The normalized coefficient of y^(idx) is -A_idx.
    const RatFn c(-a.num(), a.den());
    const std::string y = derivative_name(idx);
    if (c.is_polynomial() && c.num().is_constant()) {
      const Rational v = c.num().leading_coefficient() / c.den().leading_coefficient();
      const Rational mag = abs(v);
      out += v < 0 ? " - " : " + ";
      if (mag != 1) out += mag.get_str() + "*";
      out += y;
    } else {
      out += " + (" + c.to_string() + ")*" + y;
    }
  }
  return out + " = 0";
}

std::vector<Rational> default_epsilon_samples(const MPoly& locus, double E) {
  Rational e(E);
  std::vector<Rational> out;
  for (int k : {-2, -1, 1, 2}) {
    Rational v = e * k / 3;
    const Rational pt[] = {0, v};
    if (locus.variable_count() == 2 && !locus.is_zero() && locus.evaluate(pt) == 0) continue;
    out.push_back(v);
  }
  return out;
}

json derive_report(const SystemDoc& doc) {
  const LinSys sys = to_linsys(doc);
  const CovectorSeq seq = covector_sequence(sys, sys.n());
  const std::size_t k = minimal_k(seq);
  const DerivedEq eq = decompose(seq, k);
  const DegeneracyIdeal ideal = degeneracy_generators(seq, k);

  json rep;
  rep["fingerprint"] = fingerprint(doc);
  rep["document"] = json::parse(render_document(doc));
  rep["n"] = sys.n();
  rep["q"] = sys.q();
  rep["M"] = sys.max_coefficient().get_str();
  rep["mFloored"] = sys.max_coefficient() == 0;
  rep["k"] = k;
  json rows = json::array();
  for (std::size_t r : eq.minor_rows) rows.push_back(r + 1);
  rep["minorRows"] = std::move(rows);
  rep["beta"] = poly_json(eq.beta);
  json gammas = json::array(), reduced = json::array();
  for (std::size_t i = 0; i < eq.k; ++i) {
    gammas.push_back(poly_json(eq.gammas[i]));
    reduced.push_back({{"num", poly_json(eq.reduced[i].num())},
                       {"den", poly_json(eq.reduced[i].den())},
                       {"text", eq.reduced[i].to_string()}});
  }
  rep["gammas"] = std::move(gammas);
  rep["reduced"] = std::move(reduced);
  rep["content"] = poly_json(eq.content);
  rep["equation"] = equation_string(eq);

  json gens = json::array();
  for (std::size_t g = 0; g < ideal.generators.size(); ++g) {
    json minor = json::array();
    for (std::size_t r : ideal.minors[ideal.minor_index[g]]) minor.push_back(r + 1);
    gens.push_back(
        {{"minor", std::move(minor)}, {"tPower", ideal.t_power[g]}, {"poly", poly_json(ideal.generators[g])}});
  }
  rep["degeneracyGenerators"] = std::move(gens);
  if (sys.q() == 1) rep["exceptionalLocus"] = poly_json(exceptional_locus(eq));
  else rep["exceptionalLocus"] = nullptr;
  return rep;
}

CertificateSection certify_equation(const DerivedEq& eq, unsigned cap, bool multi) {
  // Certificates for every t-coefficient of every gamma against beta's.
  const Targets tg = certificate_targets(eq);
  const auto batch = effective_division_batch(tg.polys, tg.basis, cap);
  json basis = json::array();
  for (const MPoly& b : tg.basis) basis.push_back(poly_json(b));
  json entries = json::array();
  CertificateSection out;
  for (std::size_t i = 0; i < tg.polys.size(); ++i) {
    json e{{"gamma", tg.origin[i].first},
           {"tPower", tg.origin[i].second},
           {"target", poly_json(tg.polys[i])}};
    json certs = json::array();
    if (!multi) {
      if (auto bz = bezout_membership(tg.polys[i], tg.basis)) certs.push_back(certificate_json("bezout", *bz));
      else {
        e["bezoutMissing"] = true;
        ++out.missing;
      }
    }
    if (batch[i]) {
      certs.push_back(certificate_json("effective", *batch[i]));
    } else if (multi) {
      e["status"] = "expectedNegative";
      ++out.expected_negative;
    } else {
      e["effectiveMissing"] = true;
      ++out.missing;
    }
    e["certificates"] = std::move(certs);
    entries.push_back(std::move(e));
  }
  out.report = {{"basis", std::move(basis)},
                {"entries", std::move(entries)},
                {"missing", out.missing},
                {"expectedNegative", out.expected_negative}};
  return out;
}

VerifyOutcome run_verify(const SystemDoc& input, const VerifyOptions& opts) {
  opts.bounds.validate();
  if (!(opts.tol > 0)) throw UsageError("integrator tolerance must be positive");
  const auto started = std::chrono::steady_clock::now();

  const bool multi = input.q > 1;
  const SystemDoc doc = with_one_parameter(input);
  const LinSys sys = to_linsys(doc);
  const DerivedEq eq = derive(sys);

  VerifyOutcome out;
  json& rep = out.report;
  rep = derive_report(input);
  const unsigned cap = opts.cap.value_or(default_cap(eq));
  rep["config"] = {{"bounds", bound_config_json(opts.bounds)},
                   {"tol", opts.tol},
                   {"cap", cap},
                   {"seed", opts.seed},
                   {"residualThreshold", opts.residual_threshold}};

  bool ok = true;
  json checks = json::object();

  // Perturbation verdict.
  if (!multi) {
    const PerturbationReport pr = perturbation_verdict(eq);
    json witnesses = json::array();
    for (const auto& w : pr.witnesses)
      witnesses.push_back({{"coefficient", w.coefficient}, {"content", poly_json(w.content)}});
    rep["verdict"] = {{"value", verdict_name(pr.verdict)}, {"witnesses", std::move(witnesses)}};
    checks["verdict"] = pr.verdict == Verdict::not_perturbed;
    ok = ok && pr.verdict == Verdict::not_perturbed;
  } else {
    rep["verdict"] = {{"value", nullptr}, {"note", "requires exactly one parameter"}};
  }

  const CertificateSection cs = certify_equation(eq, cap, multi);
  rep["certificates"] = cs.report;
  const std::size_t missing = cs.missing;
  checks["certificates"] = missing == 0;
  ok = ok && missing == 0;

  // Claim 1 residuals, zero counts and bounds at the sampled parameters.
  json samples = json::array();
  if (!multi) {
    rep["apriori"] = bound_json(apriori_report(sys, eq, opts.bounds), false);
    const MPoly locus = exceptional_locus(eq);
    std::vector<Rational> eps = opts.epsilons;
    if (eps.empty()) eps = default_epsilon_samples(locus, opts.bounds.E);
    const auto init = seeded_init(sys.n(), opts.seed);
    bool residual_ok = true;
    for (const Rational& e : eps) {
      json s{{"epsilon", e.get_str()}};
      const Rational pt[] = {0, e};
      if (!locus.is_constant() && locus.evaluate(pt) == 0) {
        s["degenerate"] = true;
        samples.push_back(std::move(s));
        continue;
      }
      const double res = claim1_residual(sys, eq, e, init, opts.bounds.R, opts.tol);
      s["residual"] = res;
      s["residualOk"] = res <= opts.residual_threshold;
      residual_ok = residual_ok && res <= opts.residual_threshold;
      const Trajectory traj = integrate_system(sys, e, init, opts.bounds.R, opts.tol);
      const ZeroCount zc = count_zeros(traj, 0, opts.tol);
      s["count"] = zc.count;
      s["suspects"] = zc.suspects.size();
      s["bounds"] = bound_json(bound_report(sys, eq, e, opts.bounds), true);
      samples.push_back(std::move(s));
    }
    checks["residuals"] = residual_ok;
    ok = ok && residual_ok;
  } else {
    rep["samplesNote"] = "numeric checks require exactly one parameter";
  }
  rep["init"] = seeded_init(sys.n(), opts.seed);
  rep["samples"] = std::move(samples);
  rep["checks"] = std::move(checks);
  rep["passed"] = ok;
  rep["timingMs"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  out.passed = ok;
  return out;
}

std::string run_sweep(const SystemDoc& input, const SweepOptions& opts) {
  opts.bounds.validate();
  if (input.q > 1) throw UnsupportedParameterCount("sweep requires at most one parameter");
  if (opts.eps_grid.empty()) throw UsageError("sweep needs a non-empty epsilon grid");
  const Rational E(opts.bounds.E);
  for (const Rational& e : opts.eps_grid)
    if (!(abs(e) < E)) throw UsageError("epsilon " + e.get_str() + " lies outside (-E, E)");

  const SystemDoc doc = with_one_parameter(input);
  const LinSys sys = to_linsys(doc);
  if (opts.component >= sys.n()) throw UsageError("component index out of range");
  std::vector<double> init = opts.init;
  if (init.empty()) {
    init.assign(sys.n(), 0.0);
    init.back() = 1.0;
  }
  if (init.size() != sys.n()) throw UsageError("initial vector must have n entries");

  const DerivedEq eq = derive(sys);
  const MPoly locus = exceptional_locus(eq);
  const BoundReport apriori = apriori_report(sys, eq, opts.bounds);

  auto row = [&](const Rational& e) {
    const Trajectory traj = integrate_system(sys, e, init, opts.bounds.R, opts.tol);
    const ZeroCount zc = count_zeros(traj, opts.component, opts.refine_tol);
    const Rational pt[] = {0, e};
    const bool degenerate = !locus.is_constant() && locus.evaluate(pt) == 0;
    double A = 0, a = NAN, iy = NAN;
    if (degenerate) {
      const Rational eps[] = {e};
      A = coeff_sup(eval_params(eq.beta, eps), opts.bounds.E, opts.bounds.R);
      for (const MPoly& g : eq.gammas)
        A = std::max(A, coeff_sup(eval_params(g, eps), opts.bounds.E, opts.bounds.R));
    } else {
      const BoundReport b = bound_report(sys, eq, e, opts.bounds);
      A = b.A;
      a = b.a;
      iy = b.iy_bound;
    }
    std::ostringstream os;
    os << fmt(e.get_d()) << ',' << zc.count << ',' << zc.suspects.size() << ',' << fmt(A) << ','
       << fmt(a) << ',' << fmt(iy) << ',' << fmt(apriori.lemma5.value) << ','
       << fmt(apriori.theorem2.log10) << ',' << (degenerate ? 1 : 0) << '\n';
    return os.str();
  };

  std::vector<std::future<std::string>> jobs;
  jobs.reserve(opts.eps_grid.size());
  for (const Rational& e : opts.eps_grid) jobs.push_back(std::async(std::launch::async, row, e));

  std::string csv;
  if (!opts.comment.empty()) csv += "# " + opts.comment + "\n";
  csv += kSweepHeader;
  csv += '\n';
  for (auto& j : jobs) csv += j.get();
  return csv;
}

std::string recheck_report(const json& report) {
  try {
    if (!report.contains("document")) return "report has no embedded document";
    const SystemDoc input = parse_document(report["document"].dump());
    if (report.value("fingerprint", "") != fingerprint(input)) return "fingerprint mismatch";
    const DerivedEq plain = derive(to_linsys(input));
    const std::size_t nv = input.q + 1;
    if (report.value("k", std::size_t{0}) != plain.k) return "order k does not re-derive";
    if (poly_from_json(report["beta"], nv) != plain.beta) return "beta does not re-derive";
    for (std::size_t i = 0; i < plain.k; ++i)
      if (poly_from_json(report["gammas"][i], nv) != plain.gammas[i])
        return "gamma_" + std::to_string(i) + " does not re-derive";
    if (!report.contains("certificates")) return "";
    const DerivedEq eq = input.q == 0 ? derive(to_linsys(with_one_parameter(input))) : plain;

    // Certificates are checked against a basis and targets recomputed from
    // the document; only the cofactors are taken from the report.
    const Targets tg = certificate_targets(eq);
    const std::size_t cnv = eq.variable_count();
    const json& entries = report["certificates"]["entries"];
    if (entries.size() != tg.polys.size()) return "certificate count does not match the targets";
    for (std::size_t i = 0; i < tg.polys.size(); ++i) {
      const json& e = entries[i];
      if (e["gamma"].get<std::size_t>() != tg.origin[i].first ||
          e["tPower"].get<unsigned>() != tg.origin[i].second)
        return "certificate " + std::to_string(i) + " refers to the wrong target";
      for (const json& c : e["certificates"]) {
        DivisionCertificate cert;
        for (const json& h : c["cofactors"]) cert.cofactors.push_back(poly_from_json(h, cnv));
        if (!certificate_holds(cert, tg.polys[i], tg.basis))
          return "certificate " + std::to_string(i) + " (" + c["method"].get<std::string>() +
                 ") does not verify";
      }
    }
    return "";
  } catch (const std::exception& e) {
    return std::string("recheck failed: ") + e.what();
  }
}

}  // namespace linzero
