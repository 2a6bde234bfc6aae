#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "linzero/errors.hpp"
#include "linzero/harness/pipeline.hpp"
#include "linzero/harness/sysdoc.hpp"
#include "support.hpp"

using namespace linzero;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "linzero_harness_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(LZ_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const char* kBadCoefficient = R"({"n":1,"q":1,"degree":0,"matrix":[[[{"tExp":0,"pExp":[0],"coeff":"3/2"}]]]})";

}  // namespace

TEST_CASE("parse_rational examples") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2") == -2);
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
  CHECK_THROWS_AS(parse_rational("abc"), UsageError);
  CHECK_THROWS_AS(parse_rational(""), UsageError);
  CHECK(parse_rational_list("1/3,-2/3, 0.5") == std::vector<Rational>{Rational(1, 3), Rational(-2, 3), Rational(1, 2)});
  CHECK(parse_double_list("1,-0.5") == std::vector<double>{1, -0.5});
}

TEST_CASE("document parsing errors carry a location") {
  try {
    parse_document(kBadCoefficient);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.location() == "/matrix/0/0/0/coeff");
  }
  CHECK_THROWS_AS(parse_document("{"), ParseError);
  CHECK_THROWS_AS(parse_document("[]"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"n":0,"q":1,"degree":0,"matrix":[]})"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"n":1,"q":1,"degree":0,"matrix":[[[{"tExp":1,"pExp":[0],"coeff":1}]]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_document(R"({"n":1,"q":1,"degree":0,"matrix":[[[{"tExp":0,"pExp":[0,0],"coeff":1}]]]})"),
                  ParseError);
}

TEST_CASE("documents round trip and random generation is seeded") {
  const SystemDoc demo = demo_document();
  CHECK(parse_document(render_document(demo)) == demo);
  CHECK(from_linsys(to_linsys(demo), demo.name) == demo);

  for (std::size_t i = 0; i < 20; ++i) {
    const SystemDoc a = lzt::ensemble_document(i);
    const SystemDoc b = lzt::ensemble_document(i);
    CHECK(a == b);
    CHECK(fingerprint(a) == fingerprint(b));
    CHECK(parse_document(render_document(a)) == a);
    const LinSys sys = to_linsys(a);
    CHECK(sys.actual_degree() <= sys.degree());
    CHECK(sys.max_coefficient() <= lzt::ensemble_member(i).M);
  }
  CHECK(fingerprint(lzt::ensemble_document(0)) != fingerprint(lzt::ensemble_document(1)));
  CHECK_THROWS_AS(gen_random(0, 1, 1, 1, 1), UsageError);
}

TEST_CASE("polynomial JSON round trip") {
  lzt::Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    MPoly p = lzt::random_poly(rng, 2, 4, 7, 6);
    p *= MPoly::constant(2, Rational(1, 3));
    CHECK(poly_from_json(poly_json(p), 2) == p);
  }
  CHECK_THROWS_AS(poly_from_json(json::parse(R"({"terms":[{"exp":[1],"coeff":"1"}]})"), 2), ParseError);
}

TEST_CASE("derive report on the worked example") {
  const json r = derive_report(demo_document());
  CHECK(r["k"] == 2);
  CHECK(r["n"] == 2);
  CHECK(r["q"] == 1);
  CHECK(r["equation"] == "y'' - 2*y' + (-eps + 1)*y = 0");
  CHECK(r["beta"]["text"] == "eps");
  CHECK(r["gammas"][0]["text"] == "eps^2 - eps");
  CHECK(r["gammas"][1]["text"] == "2*eps");
  CHECK(r["exceptionalLocus"]["text"] == "eps");
  CHECK(r["minorRows"] == json::array({1, 2}));
  CHECK(r["mFloored"] == false);
  CHECK(r["fingerprint"] == fingerprint(demo_document()));
}

TEST_CASE("derive report matches the golden file") {
  const json golden = json::parse(slurp(std::filesystem::path(LZ_GOLDEN_DIR) / "demo_derive.json"));
  CHECK(derive_report(demo_document()) == golden);
  const SystemDoc doc = parse_document(slurp(std::filesystem::path(LZ_GOLDEN_DIR) / "demo_document.json"));
  CHECK(doc == demo_document());
}

TEST_CASE("default epsilon samples avoid the locus") {
  const MPoly eps = lzt::Eps();
  CHECK(default_epsilon_samples(eps, 1) ==
        std::vector<Rational>{Rational(-2, 3), Rational(-1, 3), Rational(1, 3), Rational(2, 3)});
  const MPoly third = eps - lzt::K(Rational(1, 3));
  CHECK(default_epsilon_samples(third, 1) == std::vector<Rational>{Rational(-2, 3), Rational(-1, 3), Rational(2, 3)});
}

TEST_CASE("verify and recheck on the worked example") {
  VerifyOptions opts;
  const VerifyOutcome v = run_verify(demo_document(), opts);
  CHECK(v.passed);
  CHECK(v.report["passed"] == true);
  CHECK(v.report["certificates"]["missing"] == 0);
  CHECK(v.report["samples"].size() == 4);
  CHECK(recheck_report(v.report) == "");

  json tampered = v.report;
  auto& cof = tampered["certificates"]["entries"][0]["certificates"][0]["cofactors"][0];
  cof = poly_json(MPoly::constant(2, 7));
  CHECK(recheck_report(tampered) != "");

  json wrong_doc = v.report;
  wrong_doc["fingerprint"] = "0000";
  CHECK(recheck_report(wrong_doc) != "");

  VerifyOptions tight;
  tight.cap = 0;
  CHECK_FALSE(run_verify(demo_document(), tight).passed);
}

TEST_CASE("sweep output is structured and deterministic") {
  SweepOptions opts;
  opts.eps_grid = {Rational(-1, 2), Rational(0), Rational(1, 4)};
  const std::string a = run_sweep(demo_document(), opts);
  CHECK(a == run_sweep(demo_document(), opts));
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  CHECK(line == kSweepHeader);
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].rfind("0,", 0) == 0);
  CHECK(rows[1].substr(rows[1].size() - 2) == ",1");
  CHECK(rows[2].substr(rows[2].size() - 2) == ",0");

  opts.comment = "probe";
  CHECK(run_sweep(demo_document(), opts).rfind("# probe\n", 0) == 0);

  SweepOptions outside;
  outside.eps_grid = {Rational(1)};
  CHECK_THROWS_AS(run_sweep(demo_document(), outside), UsageError);
}

TEST_CASE("CLI golden exit codes") {
  const auto bad = scratch("bad.json");
  write_file(bad, kBadCoefficient);
  const auto demo = scratch("demo.json");
  write_file(demo, render_document(demo_document()));

  CHECK(cli("demo").code == 0);
  CHECK(json::parse(cli("demo").out)["equation"] == "y'' - 2*y' + (-eps + 1)*y = 0");
  CHECK(cli("derive " + demo.string()).code == 0);
  CHECK(cli("verify " + demo.string()).code == 0);
  CHECK(cli("verify --cap 0 " + demo.string()).code == 4);
  CHECK(cli("derive " + bad.string()).code == 2);
  CHECK(cli("derive " + scratch("missing.json").string()).code == 2);
  CHECK(cli("sweep " + demo.string() + " --eps-grid 1/2,3").code == 2);
  CHECK(cli("no-such-command").code == 2);

  const auto sweep = cli("sweep " + demo.string() + " --eps-grid 1/4 --R 20");
  CHECK(sweep.code == 0);
  CHECK(sweep.out.find(kSweepHeader) != std::string::npos);

  const auto rnd = cli("random --n 3 --d 1 --M 2 --seed 9");
  CHECK(rnd.code == 0);
  CHECK(parse_document(rnd.out) == gen_random(3, 1, 2, 1, 9));

  const auto report = scratch("report.json");
  CHECK(cli("verify " + demo.string() + " --out " + report.string()).code == 0);
  CHECK(cli("recheck " + report.string()).code == 0);
}

TEST_CASE("two-parameter counterexample is flagged as an expected negative") {
  const MPoly a = MPoly::variable(3, 1), b = MPoly::variable(3, 2), t = MPoly::variable(3, 0);
  const DerivedEq frac = make_scalar_equation(a * a + b * b * t, {a * b});
  const CertificateSection cs = certify_equation(frac, 6, true);
  CHECK(cs.expected_negative == 1);
  CHECK(cs.missing == 0);
  CHECK(cs.report["entries"][0]["status"] == "expectedNegative");
  CHECK(cs.report["entries"][0]["certificates"].empty());

  // Positive control: a^3 + a b^2 = a * a^2 + a * b^2.
  const DerivedEq member = make_scalar_equation(a * a + b * b * t, {a.pow(3) + a * b * b});
  const CertificateSection ok = certify_equation(member, 6, true);
  CHECK(ok.expected_negative == 0);
  CHECK(ok.report["entries"][0]["certificates"][0]["method"] == "effective");
}

TEST_CASE("two-parameter document runs the multi-parameter path") {
  const SystemDoc doc = parse_document(slurp(std::filesystem::path(LZ_GOLDEN_DIR) / "two_parameter.json"));
  const VerifyOutcome v = run_verify(doc, VerifyOptions{});
  CHECK(v.report["k"] == 2);
  CHECK(v.report["beta"]["text"] == "t*p2^2 + p1^2");
  CHECK(v.report["verdict"]["value"].is_null());
  CHECK(v.report["exceptionalLocus"].is_null());
  CHECK(v.report["samples"].empty());
  // The derived coefficients of this system do lie in the ideal of beta's
  // t-coefficients, so nothing is flagged.
  CHECK(v.report["certificates"]["expectedNegative"] == 0);
  CHECK(v.passed);
  CHECK(recheck_report(v.report) == "");
}
