#ifndef LINZERO_HARNESS_SYSDOC_HPP
#define LINZERO_HARNESS_SYSDOC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linzero/derivation/linsys.hpp"

namespace linzero {

struct MonomialRecord {
  unsigned t_exp = 0;
  std::vector<unsigned> p_exp;  // length q
  Integer coeff;

  friend bool operator==(const MonomialRecord&, const MonomialRecord&) = default;
};

// JSON system document:
//   {"n": 2, "q": 1, "degree": 1, "degreeKind": "joint",
//    "matrix": [[[{"tExp": 0, "pExp": [0], "coeff": 1}], ...], ...],
//    "name": "...", "seed": 7}
// "degreeKind" ("joint" | "t") and the metadata are optional. Coefficients
// are JSON integers or decimal strings for values beyond 64 bits.
struct SystemDoc {
  std::size_t n = 0;
  std::size_t q = 0;
  unsigned degree = 0;
  DegreeKind degree_kind = DegreeKind::joint;
  std::vector<std::vector<std::vector<MonomialRecord>>> matrix;  // n x n entries
  std::optional<std::string> name;
  std::optional<std::int64_t> seed;

  friend bool operator==(const SystemDoc&, const SystemDoc&) = default;
};

// Throws ParseError with a JSON-pointer location.
SystemDoc parse_document(std::string_view text);
std::string render_document(const SystemDoc& doc);

LinSys to_linsys(const SystemDoc& doc);
LinSys parse_system(std::string_view text);

// Inverse of to_linsys: one record per stored term.
SystemDoc from_linsys(const LinSys& sys, std::optional<std::string> name = std::nullopt);

// Uniform integer coefficients in [-M, M] for every monomial with
// tExp + |pExp| <= d; zero draws are omitted. Deterministic in seed.
SystemDoc gen_random(std::size_t n, unsigned d, unsigned M, std::size_t q, std::int64_t seed);

// x' = x + eps y, y' = x + y
SystemDoc demo_document();

// 64-bit FNV-1a of the canonical rendering, as 16 hex digits.
std::string fingerprint(const SystemDoc& doc);

}  // namespace linzero

#endif
