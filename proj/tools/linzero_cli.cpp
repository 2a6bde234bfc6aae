// Command-line front end. Talks to the library only through linzero.h.

#include <CLI11.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "linzero/linzero.h"

namespace {

enum Exit { kOk = 0, kParse = 2, kConsistency = 3, kVerification = 4 };

int exit_code(lz_status s) {
  switch (s) {
    case LZ_OK: return kOk;
    case LZ_USAGE:
    case LZ_PARSE:
    case LZ_UNSUPPORTED: return kParse;
    case LZ_VERIFICATION_FAILED:
    case LZ_DEGENERATE:
    case LZ_INTEGRATION: return kVerification;
    default: return kConsistency;
  }
}

int report_failure(lz_status s) {
  std::cerr << "linzero: " << lz_last_error() << "\n";
  return exit_code(s);
}

bool read_input(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  text.assign(std::istreambuf_iterator<char>(in), {});
  return true;
}

bool write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return std::fflush(stdout) == 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// Owns a library string.
struct Text {
  char* p = nullptr;
  ~Text() { lz_string_free(p); }
};

struct System {
  lz_system* p = nullptr;
  ~System() { lz_system_free(p); }
};

int load(const std::string& path, System& sys) {
  std::string text;
  if (!read_input(path, text)) {
    std::cerr << "linzero: cannot read " << path << "\n";
    return kParse;
  }
  const lz_status s = lz_system_parse(text.c_str(), &sys.p);
  return s == LZ_OK ? kOk : report_failure(s);
}

int emit(const std::string& out, const Text& t) {
  if (!write_output(out, t.p)) {
    std::cerr << "linzero: cannot write " << out << "\n";
    return kParse;
  }
  return kOk;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void add_bound_flags(CLI::App* cmd, lz_options& o) {
  cmd->add_option("--E", o.E, "parameter disc radius")->capture_default_str();
  cmd->add_option("--R", o.R, "segment length, zeros counted on [-R/2, R/2]")->capture_default_str();
  cmd->add_option("--mu", o.mu, "exponent of the zero-count bound")->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "exponent of the a-priori bounds")->capture_default_str();
  cmd->add_option("--C", o.C, "constant in the a-priori bounds")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derived scalar equations, perturbation certificates and zero bounds for\n"
               "parameter-dependent linear ODE systems."};
  app.require_subcommand(1);
  app.set_version_flag("--version", lz_version());

  lz_options opts;
  lz_options_default(&opts);
  std::string input, out, epsilons, eps_grid, init;
  std::size_t component = 1;
  std::int64_t seed = 1;
  std::size_t n = 2, q = 1;
  unsigned d = 1, M = 1;
  int cap = -1;
  bool as_document = false;

  auto* derive = app.add_subcommand("derive", "derive the scalar equation for x1 and write a JSON report");
  derive->add_option("input", input, "system document, or - for stdin")->required();
  derive->add_option("--out", out, "output path (default stdout)");

  auto* verify = app.add_subcommand(
      "verify", "certify the derived equation and check it numerically at sampled parameters");
  verify->add_option("input", input, "system document, or - for stdin")->required();
  verify->add_option("--epsilon,--epsilon-samples", epsilons,
                     "comma-separated parameter samples (default +-1/3, +-2/3 times E)");
  verify->add_option("--tol", opts.tol, "integrator tolerance")->capture_default_str();
  verify->add_option("--cap", cap, "effective-division degree cap (default 2D-1)");
  verify->add_option("--seed", seed, "seed for the initial vector")->capture_default_str();
  verify->add_option("--out", out, "report path (default stdout)");
  add_bound_flags(verify, opts);

  auto* sweep = app.add_subcommand("sweep", "zero counts and bounds over a parameter grid, as CSV");
  sweep->add_option("input", input, "system document, or - for stdin")->required();
  sweep->add_option("--eps-grid", eps_grid, "comma-separated parameter values in (-E, E)")->required();
  sweep->add_option("--component", component, "1-based component whose zeros are counted")
      ->capture_default_str();
  sweep->add_option("--init", init, "comma-separated initial vector at t = 0 (default e_n)");
  sweep->add_option("--tol", opts.sweep_tol, "integrator and bisection tolerance")->capture_default_str();
  sweep->add_option("--out", out, "CSV path (default stdout)");
  add_bound_flags(sweep, opts);

  auto* random = app.add_subcommand("random", "write a seeded random system document");
  random->add_option("--n", n, "dimension")->capture_default_str();
  random->add_option("--d", d, "joint degree bound")->capture_default_str();
  random->add_option("--M", M, "coefficient bound")->capture_default_str();
  random->add_option("--q", q, "number of parameters")->capture_default_str();
  random->add_option("--seed", seed, "generator seed")->capture_default_str();
  random->add_option("--out", out, "output path (default stdout)");

  auto* demo = app.add_subcommand("demo", "derive the built-in example x' = x + eps*y, y' = x + y");
  demo->add_flag("--document", as_document, "print the system document instead");
  demo->add_option("--out", out, "output path (default stdout)");

  auto* recheck = app.add_subcommand("recheck", "re-derive a report and re-verify its certificates");
  recheck->add_option("report", input, "report written by verify")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  Text text;
  if (*derive) {
    System sys;
    if (int rc = load(input, sys)) return rc;
    if (lz_status s = lz_derive_report(sys.p, &text.p)) return report_failure(s);
    return emit(out, text);
  }
  if (*verify) {
    System sys;
    if (int rc = load(input, sys)) return rc;
    opts.cap = cap;
    opts.seed = static_cast<std::uint64_t>(seed);
    if (!epsilons.empty()) opts.epsilons = epsilons.c_str();
    const lz_status s = lz_verify(sys.p, &opts, &text.p);
    if (text.p) {
      if (int rc = emit(out, text)) return rc;
    }
    return s == LZ_OK ? kOk : report_failure(s);
  }
  if (*sweep) {
    System sys;
    if (int rc = load(input, sys)) return rc;
    if (component == 0) {
      std::cerr << "linzero: --component is 1-based\n";
      return kParse;
    }
    opts.component = component - 1;
    opts.refine_tol = opts.sweep_tol;
    opts.eps_grid = eps_grid.c_str();
    if (!init.empty()) opts.init = init.c_str();
    const std::string comment = "linzero sweep " + std::string(lz_version()) + " at " + utc_now();
    opts.comment = comment.c_str();
    if (lz_status s = lz_sweep(sys.p, &opts, &text.p)) return report_failure(s);
    return emit(out, text);
  }
  if (*random) {
    System sys;
    if (lz_status s = lz_system_random(n, d, M, q, seed, &sys.p)) return report_failure(s);
    if (lz_status s = lz_system_to_json(sys.p, &text.p)) return report_failure(s);
    return emit(out, text);
  }
  if (*demo) {
    System sys;
    if (lz_status s = lz_system_demo(&sys.p)) return report_failure(s);
    const lz_status s = as_document ? lz_system_to_json(sys.p, &text.p) : lz_derive_report(sys.p, &text.p);
    if (s) return report_failure(s);
    return emit(out, text);
  }
  if (*recheck) {
    std::string report;
    if (!read_input(input, report)) {
      std::cerr << "linzero: cannot read " << input << "\n";
      return kParse;
    }
    if (lz_status s = lz_report_recheck(report.c_str())) return report_failure(s);
    std::cout << "all certificates re-verified\n";
    return kOk;
  }
  return kParse;
}
