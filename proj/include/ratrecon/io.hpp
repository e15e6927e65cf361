#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ratrecon/counterexample.hpp"
#include "ratrecon/detinterp.hpp"
#include "ratrecon/expr.hpp"
#include "ratrecon/hankel.hpp"
#include "ratrecon/slicerecon.hpp"

namespace ratrecon {

/// Keys keep insertion order so serialized output is stable.
using Json = nlohmann::ordered_json;

std::string_view version() noexcept;

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Whole file; throws ParseError when it cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// {"field": "q" | "fp:<p>", "coeffs": ["a_0", "a_1", ...]}; coefficients may
/// also be JSON integers. `field` overrides the file's field. Throws ParseError
/// (with the byte offset for malformed JSON) or InvalidField.
SeriesPrefix parse_series_json(std::string_view text, std::optional<Field> field = std::nullopt);
Json series_json(const SeriesPrefix& s);

/// One "a,f" pair per line; blank lines, lines starting with '#', and a
/// leading "a,f" header are skipped. Throws ParseError naming the line, or
/// DegenerateInput on a repeated abscissa.
SampleSet1 parse_samples_csv(std::string_view text, const Field& field);
/// {"samples": [{"a": "1", "f": "1/2"}, ...]} (a "field" key is ignored here).
SampleSet1 parse_samples_json(std::string_view text, const Field& field);

/// Canonical "(num)/(den)" text, or any expression the parser accepts.
RatFunN parse_ratfun(std::string_view text, const Field& field, std::size_t nvars);

Json element_json(const FieldElement& x);
Json certificate_json(const RationalityCertificate& c);
/// Phase timings are only included when asked for, so that reports from
/// equal seeds compare byte for byte.
Json report_json(const ReconReport& r, bool with_timings = false);
Json nonrationality_json(const NonrationalityCertificate& c);
Json expr_json(const Expr& e);
Json config_json(const ReconConfig& cfg);

/// Recorded oracle answers: point -> value, nullopt for "undefined".
struct OracleTable {
  Field field;
  std::size_t arity;
  std::map<std::vector<std::string>, std::optional<FieldElement>> entries;
};

/// Header "x1,...,xk,f" then one line per point; undefined values are
/// written as "undefined". Lines are sorted, so the file does not depend on
/// call order.
std::string oracle_table_csv(const OracleTable& t);
OracleTable parse_oracle_table(std::string_view text, const Field& field);

}  // namespace ratrecon
