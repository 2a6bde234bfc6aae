#include "linzero/linzero.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "linzero/errors.hpp"
#include "linzero/harness/pipeline.hpp"
#include "linzero/harness/sysdoc.hpp"

struct lz_system {
  linzero::SystemDoc doc;
};

struct lz_derived {
  linzero::DerivedEq eq;
};

namespace {

thread_local std::string last_error;

lz_status fail(lz_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

template <class F>
lz_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const linzero::ParseError& e) {
    return fail(LZ_PARSE, e.what());
  } catch (const linzero::UnsupportedParameterCount& e) {
    return fail(LZ_UNSUPPORTED, e.what());
  } catch (const linzero::UsageError& e) {
    return fail(LZ_USAGE, e.what());
  } catch (const linzero::ConsistencyError& e) {
    return fail(LZ_CONSISTENCY, e.what());
  } catch (const linzero::DegenerateParameter& e) {
    return fail(LZ_DEGENERATE, e.what());
  } catch (const linzero::IntegrationError& e) {
    return fail(LZ_INTEGRATION, std::string(e.what()) + " near t = " + std::to_string(e.location()));
  } catch (const std::bad_alloc&) {
    return fail(LZ_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LZ_INTERNAL, e.what());
  } catch (...) {
    return fail(LZ_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lz_status need(const void* p, const char* what) {
  return p ? LZ_OK : fail(LZ_USAGE, std::string(what) + " must not be NULL");
}

linzero::BoundConfig bounds_of(const lz_options& o) {
  linzero::BoundConfig b;
  b.C = o.C;
  b.sigma = o.sigma;
  b.mu = o.mu;
  b.E = o.E;
  b.R = o.R;
  return b;
}

lz_status emit(std::string text, char** out) {
  *out = dup_string(text);
  return LZ_OK;
}

}  // namespace

extern "C" {

const char* lz_last_error(void) { return last_error.c_str(); }

const char* lz_version(void) { return "1.0.0"; }

void lz_string_free(char* s) { std::free(s); }

lz_status lz_system_parse(const char* json_text, lz_system** out) {
  if (need(json_text, "json_text") || need(out, "out")) return LZ_USAGE;
  return guarded([&] {
    *out = new lz_system{linzero::parse_document(json_text)};
    linzero::to_linsys((*out)->doc);  // full validation
    return LZ_OK;
  });
}

lz_status lz_system_demo(lz_system** out) {
  if (need(out, "out")) return LZ_USAGE;
  return guarded([&] {
    *out = new lz_system{linzero::demo_document()};
    return LZ_OK;
  });
}

lz_status lz_system_random(size_t n, unsigned d, unsigned M, size_t q, int64_t seed,
                           lz_system** out) {
  if (need(out, "out")) return LZ_USAGE;
  return guarded([&] {
    *out = new lz_system{linzero::gen_random(n, d, M, q, seed)};
    return LZ_OK;
  });
}

void lz_system_free(lz_system* sys) { delete sys; }

size_t lz_system_dimension(const lz_system* sys) { return sys ? sys->doc.n : 0; }
size_t lz_system_parameters(const lz_system* sys) { return sys ? sys->doc.q : 0; }
unsigned lz_system_degree(const lz_system* sys) { return sys ? sys->doc.degree : 0; }

lz_status lz_system_to_json(const lz_system* sys, char** out) {
  if (need(sys, "sys") || need(out, "out")) return LZ_USAGE;
  return guarded([&] { return emit(linzero::render_document(sys->doc), out); });
}

lz_status lz_system_fingerprint(const lz_system* sys, char** out) {
  if (need(sys, "sys") || need(out, "out")) return LZ_USAGE;
  return guarded([&] { return emit(linzero::fingerprint(sys->doc), out); });
}

lz_status lz_derive(const lz_system* sys, lz_derived** out) {
  if (need(sys, "sys") || need(out, "out")) return LZ_USAGE;
  return guarded([&] {
    *out = new lz_derived{linzero::derive(linzero::to_linsys(sys->doc))};
    return LZ_OK;
  });
}

void lz_derived_free(lz_derived* eq) { delete eq; }

size_t lz_derived_order(const lz_derived* eq) { return eq ? eq->eq.k : 0; }

lz_status lz_derived_beta(const lz_derived* eq, char** out) {
  if (need(eq, "eq") || need(out, "out")) return LZ_USAGE;
  return guarded([&] { return emit(eq->eq.beta.to_string(), out); });
}

lz_status lz_derived_gamma(const lz_derived* eq, size_t i, char** out) {
  if (need(eq, "eq") || need(out, "out")) return LZ_USAGE;
  if (i >= eq->eq.k) return fail(LZ_USAGE, "coefficient index out of range");
  return guarded([&] { return emit(eq->eq.gammas[i].to_string(), out); });
}

lz_status lz_derived_coefficient(const lz_derived* eq, size_t i, char** out) {
  if (need(eq, "eq") || need(out, "out")) return LZ_USAGE;
  if (i >= eq->eq.k) return fail(LZ_USAGE, "coefficient index out of range");
  return guarded([&] { return emit(eq->eq.reduced[i].to_string(), out); });
}

lz_status lz_derived_equation(const lz_derived* eq, char** out) {
  if (need(eq, "eq") || need(out, "out")) return LZ_USAGE;
  return guarded([&] { return emit(linzero::equation_string(eq->eq), out); });
}

void lz_options_default(lz_options* opts) {
  if (!opts) return;
  const linzero::BoundConfig b;
  const linzero::VerifyOptions v;
  const linzero::SweepOptions s;
  opts->C = b.C;
  opts->sigma = b.sigma;
  opts->mu = b.mu;
  opts->E = b.E;
  opts->R = b.R;
  opts->tol = v.tol;
  opts->cap = -1;
  opts->seed = v.seed;
  opts->epsilons = nullptr;
  opts->residual_threshold = v.residual_threshold;
  opts->eps_grid = nullptr;
  opts->component = 0;
  opts->init = nullptr;
  opts->sweep_tol = s.tol;
  opts->refine_tol = s.refine_tol;
  opts->comment = nullptr;
}

lz_status lz_derive_report(const lz_system* sys, char** report) {
  if (need(sys, "sys") || need(report, "report")) return LZ_USAGE;
  return guarded([&] { return emit(linzero::derive_report(sys->doc).dump(2) + "\n", report); });
}

lz_status lz_verify(const lz_system* sys, const lz_options* opts, char** report) {
  if (need(sys, "sys") || need(opts, "opts") || need(report, "report")) return LZ_USAGE;
  *report = nullptr;
  return guarded([&] {
    linzero::VerifyOptions v;
    v.bounds = bounds_of(*opts);
    v.tol = opts->tol;
    if (opts->cap >= 0) v.cap = static_cast<unsigned>(opts->cap);
    v.seed = opts->seed;
    if (opts->epsilons) v.epsilons = linzero::parse_rational_list(opts->epsilons);
    v.residual_threshold = opts->residual_threshold;
    const linzero::VerifyOutcome res = linzero::run_verify(sys->doc, v);
    emit(res.report.dump(2) + "\n", report);
    if (!res.passed) return fail(LZ_VERIFICATION_FAILED, "verification failed; see report");
    return LZ_OK;
  });
}

lz_status lz_sweep(const lz_system* sys, const lz_options* opts, char** csv) {
  if (need(sys, "sys") || need(opts, "opts") || need(csv, "csv")) return LZ_USAGE;
  if (!opts->eps_grid) return fail(LZ_USAGE, "sweep needs an epsilon grid");
  return guarded([&] {
    linzero::SweepOptions s;
    s.bounds = bounds_of(*opts);
    s.eps_grid = linzero::parse_rational_list(opts->eps_grid);
    s.component = opts->component;
    if (opts->init) s.init = linzero::parse_double_list(opts->init);
    s.tol = opts->sweep_tol;
    s.refine_tol = opts->refine_tol;
    if (opts->comment) s.comment = opts->comment;
    return emit(linzero::run_sweep(sys->doc, s), csv);
  });
}

lz_status lz_report_recheck(const char* report_json) {
  if (need(report_json, "report_json")) return LZ_USAGE;
  return guarded([&] {
    nlohmann::json rep;
    try {
      rep = nlohmann::json::parse(report_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw linzero::ParseError(std::string("malformed report: ") + e.what(), "");
    }
    const std::string reason = linzero::recheck_report(rep);
    if (!reason.empty()) return fail(LZ_VERIFICATION_FAILED, reason);
    return LZ_OK;
  });
}

}  // extern "C"
