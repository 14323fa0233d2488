#include "a1lab/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace a1lab {
namespace {

[[noreturn]] void fail_at(const std::string& where, const std::string& what) {
  throw ParseError("at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail_at(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail_at(where, std::string("missing key \"") + key + "\"");
  return *it;
}

long long int_value(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail_at(where, "expected an integer");
  return j.get<long long>();
}

std::uint64_t unsigned_value(const Json& j, const std::string& where) {
  const long long v = int_value(j, where);
  if (v < 0) fail_at(where, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

mpz_class integer_text(const std::string& s, const std::string& where) {
  static const std::regex pattern("[+-]?[0-9]+");
  if (!std::regex_match(s, pattern)) fail_at(where, "expected a decimal integer, got \"" + s + "\"");
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

mpz_class integer_of(const Json& j, const std::string& where) {
  if (j.is_string()) return integer_text(j.get<std::string>(), where);
  if (j.is_number_integer()) return integer_text(j.dump(), where);
  fail_at(where, "expected an integer or a decimal string");
}

std::uint64_t residue(const mpz_class& z, std::uint64_t p) {
  mpz_class m;
  mpz_fdiv_r_ui(m.get_mpz_t(), z.get_mpz_t(), p);
  return m.get_ui();
}

Rational rational_of(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(integer_of(j, where));
  if (!j.is_string()) fail_at(where, "expected a rational \"a/b\" or an integer");
  const std::string s = j.get<std::string>();
  static const std::regex pattern("([+-]?[0-9]+)(/([0-9]+))?");
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) fail_at(where, "expected a rational \"a/b\", got \"" + s + "\"");
  const mpz_class num = integer_text(m[1].str(), where);
  const mpz_class den = m[3].matched ? mpz_class(m[3].str(), 10) : mpz_class(1);
  if (den == 0) fail_at(where, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Gf gf_of(const Json& j, const GaloisField& field, const std::string& where) {
  if (field.is_prime_field()) return field.from_int(static_cast<long long>(residue(integer_of(j, where), field.p())));
  if (!j.is_array() || j.size() != static_cast<std::size_t>(field.r()))
    fail_at(where, "expected " + std::to_string(field.r()) + " residues for " + field.spec().name());
  std::vector<std::uint64_t> digits;
  for (std::size_t i = 0; i < j.size(); ++i)
    digits.push_back(residue(integer_of(j[i], where + "/" + std::to_string(i)), field.p()));
  return field.from_residues(digits);
}

template <class S, class Coeff>
MultiPoly<S> poly_of(const Json& j, std::size_t num_vars, const std::string& where, Coeff&& coeff) {
  if (!j.is_array()) fail_at(where, "expected an array of terms");
  std::vector<typename MultiPoly<S>::Term> terms;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string at = where + "/" + std::to_string(t);
    const Json& term = j[t];
    if (!term.is_array() || term.size() != 2) fail_at(at, "expected a term [coeff, [e_0, ..., e_n]]");
    const Json& exps = term[1];
    if (!exps.is_array() || exps.size() != num_vars)
      fail_at(at + "/1", "expected " + std::to_string(num_vars) + " exponents");
    Exponents e(num_vars);
    for (std::size_t i = 0; i < num_vars; ++i) {
      const std::uint64_t v = unsigned_value(exps[i], at + "/1/" + std::to_string(i));
      if (v > 0xffff) fail_at(at + "/1/" + std::to_string(i), "exponent too large");
      e[i] = static_cast<std::uint16_t>(v);
    }
    terms.push_back({std::move(e), coeff(term[0], at + "/0")});
  }
  return MultiPoly<S>::from_terms(num_vars, std::move(terms));
}

Json exponents_json(const Exponents& e) {
  Json out = Json::array();
  for (auto v : e) out.push_back(v);
  return out;
}

Json coeff_json(const Gf& c) {
  const GaloisField& f = *c.field();
  if (f.is_prime_field()) return c.to_string();
  Json out = Json::array();
  for (auto d : f.residues(c.raw())) out.push_back(std::to_string(d));
  return out;
}

std::vector<int> int_list(const Json& j, const std::string& where) {
  if (!j.is_array()) fail_at(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const long long v = int_value(j[i], where + "/" + std::to_string(i));
    if (v < -1'000'000 || v > 1'000'000) fail_at(where + "/" + std::to_string(i), "value out of range");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

template <class S>
Json pair_json(const CIPair<S>& pair) {
  Json j;
  j["n"] = pair.type.n;
  j["degrees"] = pair.type.degrees;
  j["k"] = pair.type.k;
  j["field"] = field_to_json(pair.field);
  bool linear = false;
  for (int d : pair.type.degrees) linear = linear || d < 2;
  if (linear) j["allow_linear_interior"] = true;
  Json F = Json::array();
  for (const auto& f : pair.F) F.push_back(poly_to_json(f));
  j["F"] = std::move(F);
  j["G"] = poly_to_json(pair.G);
  return j;
}

}  // namespace

FieldSpec field_from_json(const Json& j) {
  const std::string where = "/field";
  const Json& kind = member(j, "kind", where);
  if (!kind.is_string()) fail_at(where + "/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "rationals") return FieldSpec::rationals();
    const std::uint64_t p = unsigned_value(member(j, "p", where), where + "/p");
    if (k == "prime") return FieldSpec::prime(p);
    if (k != "extension") fail_at(where + "/kind", "expected \"rationals\", \"prime\" or \"extension\"");
    const long long r = int_value(member(j, "r", where), where + "/r");
    if (r < 1 || r > 4) fail_at(where + "/r", "extension degree must lie in [1, 4]");
    if (!j.contains("modulus")) return make_extension(p, static_cast<int>(r));
    const Json& mod = j["modulus"];
    if (!mod.is_array()) fail_at(where + "/modulus", "expected an array of residues");
    FieldSpec spec{FieldKind::extension, p, static_cast<int>(r), {}};
    for (std::size_t i = 0; i < mod.size(); ++i) spec.modulus.push_back(unsigned_value(mod[i], where + "/modulus"));
    if (r == 1) return FieldSpec::prime(p);
    GaloisField::get(spec);
    return spec;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail_at(where, e.what());
  }
}

Json field_to_json(const FieldSpec& spec) {
  Json j;
  switch (spec.kind) {
    case FieldKind::rationals:
      j["kind"] = "rationals";
      break;
    case FieldKind::prime:
      j["kind"] = "prime";
      j["p"] = spec.p;
      break;
    case FieldKind::extension:
      j["kind"] = "extension";
      j["p"] = spec.p;
      j["r"] = spec.r;
      j["modulus"] = spec.modulus;
      break;
  }
  return j;
}

MultiPoly<Rational> rational_poly_from_json(const Json& j, std::size_t num_vars, const std::string& where) {
  return poly_of<Rational>(j, num_vars, where, [](const Json& c, const std::string& at) { return rational_of(c, at); });
}

MultiPoly<Gf> gf_poly_from_json(const Json& j, std::size_t num_vars, const GaloisField& field,
                                const std::string& where) {
  return poly_of<Gf>(j, num_vars, where, [&](const Json& c, const std::string& at) { return gf_of(c, field, at); });
}

Json poly_to_json(const MultiPoly<Rational>& f) {
  Json out = Json::array();
  for (const auto& t : f.terms()) out.push_back(Json::array({t.coeff.get_str(), exponents_json(t.exps)}));
  return out;
}

Json poly_to_json(const MultiPoly<Gf>& f) {
  Json out = Json::array();
  for (const auto& t : f.terms()) out.push_back(Json::array({coeff_json(t.coeff), exponents_json(t.exps)}));
  return out;
}

AnyPair pair_from_json(const Json& j) {
  if (!j.is_object()) fail_at("", "expected a pair object");
  for (const auto& [key, value] : j.items()) {
    static const std::vector<std::string> known{"n", "degrees", "k", "field", "F", "G", "allow_linear_interior"};
    if (std::find(known.begin(), known.end(), key) == known.end()) fail_at("/" + key, "unknown key");
  }
  PairType type;
  const long long n = int_value(member(j, "n", ""), "/n");
  if (n < 1 || n > 64) fail_at("/n", "ambient dimension out of range");
  type.n = static_cast<int>(n);
  type.degrees = int_list(member(j, "degrees", ""), "/degrees");
  const long long k = int_value(member(j, "k", ""), "/k");
  if (k < 1 || k > 64) fail_at("/k", "boundary degree out of range");
  type.k = static_cast<int>(k);
  bool allow_linear = false;
  if (j.contains("allow_linear_interior")) {
    if (!j["allow_linear_interior"].is_boolean()) fail_at("/allow_linear_interior", "expected a boolean");
    allow_linear = j["allow_linear_interior"].get<bool>();
  }
  const FieldSpec spec = field_from_json(member(j, "field", ""));
  const Json& Fj = member(j, "F", "");
  if (!Fj.is_array()) fail_at("/F", "expected an array of polynomials");
  const std::size_t nv = static_cast<std::size_t>(type.n) + 1;
  try {
    if (spec.kind == FieldKind::rationals) {
      std::vector<MultiPoly<Rational>> F;
      for (std::size_t i = 0; i < Fj.size(); ++i) F.push_back(rational_poly_from_json(Fj[i], nv, "/F/" + std::to_string(i)));
      auto G = rational_poly_from_json(member(j, "G", ""), nv, "/G");
      return make_pair(type, std::move(F), std::move(G), spec, allow_linear);
    }
    const GaloisField& field = GaloisField::get(spec);
    std::vector<MultiPoly<Gf>> F;
    for (std::size_t i = 0; i < Fj.size(); ++i) F.push_back(gf_poly_from_json(Fj[i], nv, field, "/F/" + std::to_string(i)));
    auto G = gf_poly_from_json(member(j, "G", ""), nv, field, "/G");
    return make_pair(type, std::move(F), std::move(G), spec, allow_linear);
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(std::string("invalid pair: ") + e.what());
  }
}

AnyPair parse_pair(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column) + " (byte " +
                     std::to_string(e.byte) + ")");
  }
  return pair_from_json(j);
}

AnyPair read_pair_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open pair file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_pair(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json pair_to_json(const CIPair<Rational>& pair) { return pair_json(pair); }
Json pair_to_json(const CIPair<Gf>& pair) { return pair_json(pair); }

PairType type_of(const AnyPair& pair) {
  return std::visit([](const auto& p) { return p.type; }, pair);
}

const FieldSpec& field_spec_of(const AnyPair& pair) {
  return std::visit([](const auto& p) -> const FieldSpec& { return p.field; }, pair);
}

Point parse_point(std::string_view text, const GaloisField& field) {
  Point out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  std::size_t index = 0;
  const std::string where = "point";
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    const std::string at = where + " coordinate " + std::to_string(index++);
    if (item.find(':') == std::string::npos) {
      const mpz_class z = integer_text(item, at);
      out.push_back(field.from_int(static_cast<long long>(residue(z, field.p()))));
      continue;
    }
    std::vector<std::uint64_t> digits;
    std::stringstream parts(item);
    std::string part;
    while (std::getline(parts, part, ':')) digits.push_back(residue(integer_text(part, at), field.p()));
    if (digits.size() != static_cast<std::size_t>(field.r()))
      throw ParseError("at " + at + ": expected " + std::to_string(field.r()) + " residues for " + field.spec().name());
    out.push_back(field.from_residues(digits));
  }
  if (out.empty()) throw ParseError("empty point");
  return out;
}

Json point_to_json(const Point& x) {
  Json out = Json::array();
  for (const auto& c : x) out.push_back(c.to_string());
  return out;
}

Json points_to_json(const std::vector<Point>& pts) {
  Json out = Json::array();
  for (const auto& x : pts) out.push_back(point_to_json(x));
  return out;
}

Json type_to_json(const PairType& type) {
  Json j;
  j["n"] = type.n;
  j["degrees"] = type.degrees;
  j["k"] = type.k;
  j["label"] = type.to_string();
  return j;
}

Json report_to_json(const CheckReport& report) {
  Json j;
  j["points-examined"] = report.points_examined;
  if (report.solutions_found <= kListedSolutions)
    j["solutions-found"] = points_to_json(report.solutions);
  else
    j["solutions-found"] = report.solutions_found;
  j["dimension-estimate"] = report.dimension_estimate ? Json(*report.dimension_estimate) : Json(nullptr);
  j["codim-observed"] = report.codim_observed ? Json(*report.codim_observed) : Json(nullptr);
  j["verdict"] = to_string(report.verdict);
  j["witness"] = report.witness ? point_to_json(*report.witness) : Json(nullptr);
  j["seed"] = report.seed;
  j["wall-time-ms"] = report.wall_time_ms ? Json(*report.wall_time_ms) : Json(nullptr);
  j["message"] = report.message;
  return j;
}

Json presentation_to_json(const ModuliPresentation<Gf>& pres) {
  Json j;
  j["ambient-dim"] = pres.ambient_dim;
  j["declared-type"] = pres.declared_type;
  j["expected-dim"] = pres.expected_dim;
  j["generically-empty"] = pres.generically_empty();
  j["labels"] = pres.labels;
  Json eqs = Json::array();
  for (const auto& e : pres.equations) eqs.push_back(poly_to_json(e));
  j["equations"] = std::move(eqs);
  Json log = Json::array();
  for (const auto& e : pres.redundancy_log) {
    Json entry;
    entry["kept"] = e.kept;
    entry["dropped"] = std::string(1, e.side) + std::to_string(e.index);
    entry["reason"] = e.reason;
    log.push_back(std::move(entry));
  }
  j["redundancy-log"] = std::move(log);
  return j;
}

namespace {

int depth(const Json& j) {
  if (!j.is_structured()) return 0;
  int d = 0;
  for (const auto& c : j) d = std::max(d, depth(c));
  return d + 1;
}

void write(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out += pad + Json(key).dump() + ": ";
      write(value, indent + 2, out);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
    return;
  }
  const int d = depth(j);
  if (!j.is_array() || j.empty() || d <= 1 || (d == 2 && j.dump().size() <= 100)) {
    out += j.dump();
    return;
  }
  out += "[\n";
  for (std::size_t i = 0; i < j.size(); ++i) {
    out += pad;
    write(j[i], indent + 2, out);
    out += i + 1 < j.size() ? ",\n" : "\n";
  }
  out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(j, 0, out);
  return out + "\n";
}

}  // namespace a1lab
