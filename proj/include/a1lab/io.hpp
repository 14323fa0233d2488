#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

#include "a1lab/cipair.hpp"
#include "a1lab/moduli.hpp"
#include "a1lab/report.hpp"

namespace a1lab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "a1lab-report/1";

/// A pair as read from a file, over Q or over a finite field.
using AnyPair = std::variant<CIPair<Rational>, CIPair<Gf>>;

/// {"kind": "rationals"} | {"kind": "prime", "p": 7} | {"kind": "extension", "p": 5, "r": 2, "modulus": [2, 4, 1]}.
/// The modulus (low to high, monic) is optional and defaults to the one make_extension picks.
FieldSpec field_from_json(const Json& j);
Json field_to_json(const FieldSpec& spec);

/// Polynomial literal: an array of terms [coeff, [e_0, ..., e_n]]. Coefficients are
/// "a/b" strings or integers over Q, residues over F_p, and length-r residue
/// arrays over F_{p^r}. Errors carry the JSON pointer of the offending value.
MultiPoly<Rational> rational_poly_from_json(const Json& j, std::size_t num_vars, const std::string& where = "");
MultiPoly<Gf> gf_poly_from_json(const Json& j, std::size_t num_vars, const GaloisField& field,
                                const std::string& where = "");
Json poly_to_json(const MultiPoly<Rational>& f);
Json poly_to_json(const MultiPoly<Gf>& f);

/// Pair file: {"n", "degrees", "k", "field", "F", "G"} plus the optional flag
/// "allow_linear_interior" that universal covers of k = 1 pairs carry.
AnyPair pair_from_json(const Json& j);
AnyPair parse_pair(std::string_view text);
AnyPair read_pair_file(const std::string& path);
Json pair_to_json(const CIPair<Rational>& pair);
Json pair_to_json(const CIPair<Gf>& pair);
PairType type_of(const AnyPair& pair);
const FieldSpec& field_spec_of(const AnyPair& pair);

/// "c0,...,cn" with integer coordinates, or colon-separated residues "a0:a1" in extension fields.
Point parse_point(std::string_view text, const GaloisField& field);
Json point_to_json(const Point& x);
Json points_to_json(const std::vector<Point>& pts);

Json type_to_json(const PairType& type);
Json report_to_json(const CheckReport& report);
Json presentation_to_json(const ModuliPresentation<Gf>& pres);

/// Two-space indented text with short arrays kept on one line, plus a trailing newline.
std::string dump(const Json& j);

}  // namespace a1lab
