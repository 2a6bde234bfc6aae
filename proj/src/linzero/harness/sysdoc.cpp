#include "linzero/harness/sysdoc.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "linzero/errors.hpp"

namespace linzero {

using nlohmann::json;

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t idx) {
  return base + "/" + std::to_string(idx);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'", where);
  return *it;
}

std::uint64_t natural(const json& v, const std::string& where) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    throw ParseError("expected a non-negative integer", where);
  return v.get<std::uint64_t>();
}

Integer integer_coefficient(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return Integer(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return Integer(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    bool ok = i < s.size();
    for (; i < s.size(); ++i) ok = ok && s[i] >= '0' && s[i] <= '9';
    if (!ok) throw ParseError("coefficient must be an integer, got \"" + s + "\"", where);
    return Integer(s);
  }
  throw ParseError("coefficient must be an integer", where);
}

json coefficient_json(const Integer& c) {
  if (c.fits_slong_p()) return json(c.get_si());
  return json(c.get_str());
}

}  // namespace

SystemDoc parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), "");
  }
  if (!root.is_object()) throw ParseError("document must be a JSON object", "");

  SystemDoc doc;
  doc.n = natural(field(root, "n", ""), "/n");
  doc.q = natural(field(root, "q", ""), "/q");
  doc.degree = static_cast<unsigned>(natural(field(root, "degree", ""), "/degree"));
  if (doc.n == 0) throw ParseError("n must be at least 1", "/n");
  if (auto it = root.find("degreeKind"); it != root.end()) {
    if (*it == "joint") doc.degree_kind = DegreeKind::joint;
    else if (*it == "t") doc.degree_kind = DegreeKind::t_only;
    else throw ParseError("degreeKind must be \"joint\" or \"t\"", "/degreeKind");
  }
  if (auto it = root.find("name"); it != root.end()) {
    if (!it->is_string()) throw ParseError("name must be a string", "/name");
    doc.name = it->get<std::string>();
  }
  if (auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_integer()) throw ParseError("seed must be an integer", "/seed");
    doc.seed = it->get<std::int64_t>();
  }

  const json& matrix = field(root, "matrix", "");
  if (!matrix.is_array() || matrix.size() != doc.n)
    throw ParseError("matrix must be an array of n rows", "/matrix");
  doc.matrix.resize(doc.n);
  for (std::size_t i = 0; i < doc.n; ++i) {
    const std::string rw = at("/matrix", i);
    const json& row = matrix[i];
    if (!row.is_array() || row.size() != doc.n)
      throw ParseError("row must be an array of n entries", rw);
    doc.matrix[i].resize(doc.n);
    for (std::size_t j = 0; j < doc.n; ++j) {
      const std::string ew = at(rw, j);
      const json& entry = row[j];
      if (!entry.is_array()) throw ParseError("entry must be an array of monomials", ew);
      for (std::size_t m = 0; m < entry.size(); ++m) {
        const std::string mw = at(ew, m);
        const json& mono = entry[m];
        if (!mono.is_object()) throw ParseError("monomial must be an object", mw);
        MonomialRecord rec;
        rec.t_exp = static_cast<unsigned>(natural(field(mono, "tExp", mw), at(mw, "tExp")));
        const json& pexp = field(mono, "pExp", mw);
        if (!pexp.is_array() || pexp.size() != doc.q)
          throw ParseError("pExp must have exactly q entries", at(mw, "pExp"));
        unsigned total = rec.t_exp;
        for (std::size_t k = 0; k < doc.q; ++k) {
          rec.p_exp.push_back(static_cast<unsigned>(natural(pexp[k], at(at(mw, "pExp"), k))));
          total += rec.p_exp.back();
        }
        rec.coeff = integer_coefficient(field(mono, "coeff", mw), at(mw, "coeff"));
        const unsigned deg = doc.degree_kind == DegreeKind::joint ? total : rec.t_exp;
        if (deg > doc.degree)
          throw ParseError("monomial degree " + std::to_string(deg) + " exceeds declared degree " +
                               std::to_string(doc.degree),
                           mw);
        doc.matrix[i][j].push_back(std::move(rec));
      }
    }
  }
  return doc;
}

std::string render_document(const SystemDoc& doc) {
  json root;
  root["n"] = doc.n;
  root["q"] = doc.q;
  root["degree"] = doc.degree;
  root["degreeKind"] = doc.degree_kind == DegreeKind::joint ? "joint" : "t";
  json matrix = json::array();
  for (const auto& row : doc.matrix) {
    json r = json::array();
    for (const auto& entry : row) {
      json e = json::array();
      for (const MonomialRecord& m : entry)
        e.push_back({{"tExp", m.t_exp}, {"pExp", m.p_exp}, {"coeff", coefficient_json(m.coeff)}});
      r.push_back(std::move(e));
    }
    matrix.push_back(std::move(r));
  }
  root["matrix"] = std::move(matrix);
  if (doc.name) root["name"] = *doc.name;
  if (doc.seed) root["seed"] = *doc.seed;
  return root.dump(2) + "\n";
}

LinSys to_linsys(const SystemDoc& doc) {
  const std::size_t nv = doc.q + 1;
  std::vector<MPoly> entries;
  entries.reserve(doc.n * doc.n);
  for (const auto& row : doc.matrix) {
    for (const auto& entry : row) {
      MPoly p(nv);
      for (const MonomialRecord& m : entry) {
        Exponents e{m.t_exp};
        e.insert(e.end(), m.p_exp.begin(), m.p_exp.end());
        p.add_term(e, Rational(m.coeff));
      }
      entries.push_back(std::move(p));
    }
  }
  try {
    return LinSys(doc.n, doc.q, doc.degree, std::move(entries), doc.degree_kind);
  } catch (const UsageError& e) {
    throw ParseError(e.what(), "/matrix");
  }
}

LinSys parse_system(std::string_view text) { return to_linsys(parse_document(text)); }

SystemDoc from_linsys(const LinSys& sys, std::optional<std::string> name) {
  SystemDoc doc;
  doc.n = sys.n();
  doc.q = sys.q();
  doc.degree = sys.degree();
  doc.degree_kind = sys.degree_kind();
  doc.name = std::move(name);
  doc.matrix.assign(sys.n(), std::vector<std::vector<MonomialRecord>>(sys.n()));
  for (std::size_t i = 0; i < sys.n(); ++i) {
    for (std::size_t j = 0; j < sys.n(); ++j) {
      for (const auto& [e, c] : sys.entry(i, j).terms()) {
        MonomialRecord m;
        m.t_exp = e[0];
        m.p_exp.assign(e.begin() + 1, e.end());
        m.coeff = c.get_num();
        doc.matrix[i][j].push_back(std::move(m));
      }
    }
  }
  return doc;
}

SystemDoc gen_random(std::size_t n, unsigned d, unsigned M, std::size_t q, std::int64_t seed) {
  if (n == 0) throw UsageError("random system needs n >= 1");
  if (M == 0) throw UsageError("random system needs M >= 1");
  // Monomials (t, p1..pq) of joint degree <= d in grlex order.
  std::vector<Exponents> monos;
  Exponents e(q + 1, 0);
  auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var == e.size()) {
      monos.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      e[var] = k;
      self(self, var + 1, remaining - k);
    }
    e[var] = 0;
  };
  rec(rec, 0, d);
  std::sort(monos.begin(), monos.end(), GrlexLess{});

  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::uniform_int_distribution<long> coeff(-static_cast<long>(M), static_cast<long>(M));

  SystemDoc doc;
  doc.n = n;
  doc.q = q;
  doc.degree = d;
  doc.seed = seed;
  doc.name = "random-n" + std::to_string(n) + "-d" + std::to_string(d) + "-M" +
             std::to_string(M) + "-q" + std::to_string(q);
  doc.matrix.assign(n, std::vector<std::vector<MonomialRecord>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (const Exponents& m : monos) {
        const long c = coeff(rng);
        if (c == 0) continue;
        doc.matrix[i][j].push_back({m[0], Exponents(m.begin() + 1, m.end()), Integer(c)});
      }
    }
  }
  return doc;
}

SystemDoc demo_document() {
  SystemDoc doc;
  doc.n = 2;
  doc.q = 1;
  doc.degree = 1;
  doc.name = "demo: x' = x + eps*y, y' = x + y";
  doc.matrix = {{{{0, {0}, 1}}, {{0, {1}, 1}}}, {{{0, {0}, 1}}, {{0, {0}, 1}}}};
  return doc;
}

std::string fingerprint(const SystemDoc& doc) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : render_document(doc)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace linzero
