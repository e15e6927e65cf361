#include "ratrecon/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#ifndef RATRECON_VERSION
#define RATRECON_VERSION "0.0.0"
#endif

namespace ratrecon {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

// Calls fn(line_number, line) for every non-blank, non-comment line.
template <class F>
void for_each_line(std::string_view text, F&& fn) {
  std::size_t start = 0, number = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const std::string line = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    ++number;
    if (!line.empty() && line[0] != '#') fn(number, line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

FieldElement element_from(const Json& j, const Field& field, const std::string& where) {
  try {
    if (j.is_string()) return field.parse_element(j.get<std::string>());
    if (j.is_number_integer()) return field.from_integer(mpz_class(j.dump()));
  } catch (const Error& e) {
    throw Error(Errc::ParseError, where + ": " + e.what());
  }
  throw Error(Errc::ParseError, where + ": expected a string or integer, got " + j.dump());
}

FieldElement element_from(const std::string& s, const Field& field, const std::string& where) {
  try {
    return field.parse_element(s);
  } catch (const Error& e) {
    throw Error(Errc::ParseError, where + ": " + e.what());
  }
}

Json verification_json(const VerificationCounts& v) {
  Json j{{"trials", v.trials}, {"agreements", v.agreements}, {"undefined_skips", v.undefined_skips}};
  if (v.first_mismatch) {
    Json pt = Json::array();
    for (const auto& x : v.first_mismatch->point) pt.push_back(element_json(x));
    j["first_mismatch"] = {{"point", pt}, {"oracle", element_json(v.first_mismatch->expected)},
                           {"candidate", element_json(v.first_mismatch->got)}};
  }
  return j;
}

}  // namespace

std::string_view version() noexcept { return RATRECON_VERSION; }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(Errc::ParseError, "SHA-256 computation failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(contents.data(), static_cast<std::streamsize>(contents.size())))
    throw Error(Errc::ParseError, "cannot write " + path);
}

SeriesPrefix parse_series_json(std::string_view text, std::optional<Field> field) {
  const Json j = parse_json(text);
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw Error(Errc::ParseError, "series JSON needs an object with a \"coeffs\" array");
  if (!field) field = j.contains("field") ? Field::parse(j["field"].get<std::string>()) : Field::rationals();
  SeriesPrefix s{*field, {}};
  for (std::size_t i = 0; i < j["coeffs"].size(); ++i)
    s.coeffs.push_back(element_from(j["coeffs"][i], *field, "coeffs[" + std::to_string(i) + "]"));
  if (s.coeffs.empty()) throw Error(Errc::ParseError, "series has no coefficients");
  return s;
}

Json series_json(const SeriesPrefix& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs) coeffs.push_back(element_json(c));
  return {{"field", s.field.to_string()}, {"coeffs", coeffs}};
}

SampleSet1 parse_samples_csv(std::string_view text, const Field& field) {
  std::vector<Sample> pts;
  bool first = true;
  for_each_line(text, [&](std::size_t number, const std::string& line) {
    const auto cells = split(line, ',');
    const bool header = first && cells.size() == 2 && cells[0] == "a" && cells[1] == "f";
    first = false;
    if (header) return;
    const std::string where = "line " + std::to_string(number);
    if (cells.size() != 2) throw Error(Errc::ParseError, where + ": expected \"a,f\"");
    pts.push_back({element_from(cells[0], field, where), element_from(cells[1], field, where)});
  });
  return SampleSet1(field, std::move(pts));
}

SampleSet1 parse_samples_json(std::string_view text, const Field& field) {
  const Json j = parse_json(text);
  if (!j.is_object() || !j.contains("samples") || !j["samples"].is_array())
    throw Error(Errc::ParseError, "samples JSON needs an object with a \"samples\" array");
  std::vector<Sample> pts;
  for (std::size_t i = 0; i < j["samples"].size(); ++i) {
    const Json& s = j["samples"][i];
    const std::string where = "samples[" + std::to_string(i) + "]";
    if (!s.is_object() || !s.contains("a") || !s.contains("f")) throw Error(Errc::ParseError, where + ": expected {\"a\", \"f\"}");
    pts.push_back({element_from(s["a"], field, where + ".a"), element_from(s["f"], field, where + ".f")});
  }
  return SampleSet1(field, std::move(pts));
}

RatFunN parse_ratfun(std::string_view text, const Field& field, std::size_t nvars) {
  return expand(*parse_expr(text, nvars), field, nvars);
}

Json element_json(const FieldElement& x) { return x.to_string(); }

Json certificate_json(const RationalityCertificate& c) {
  const bool rational = c.verdict == RationalityCertificate::Verdict::RationalWitness;
  Json j{{"verdict", rational ? "RationalWitness" : "NoWitnessUpTo"}, {"l", c.l}, {"m", c.m},
         {"checked_prefix_length", c.checked_prefix_length}};
  if (c.witness) {
    j["witness"] = RatFunN::from_ratfun1(*c.witness).to_string();
    const auto [num, den] = c.witness->with_unit_constant_term();
    Json nj = Json::array(), dj = Json::array();
    for (const auto& x : num.coeffs()) nj.push_back(element_json(x));
    for (const auto& x : den.coeffs()) dj.push_back(element_json(x));
    j["numerator_coeffs"] = nj;
    j["denominator_coeffs"] = dj;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json report_json(const ReconReport& r, bool with_timings) {
  Json hist = Json::array();
  for (const auto& [key, count] : r.histogram.counts) hist.push_back({{"d", key.first}, {"e", key.second}, {"count", count}});
  Json anchors = Json::array();
  for (const auto& a : r.anchors) anchors.push_back(element_json(a));
  Json children = Json::array();
  for (const auto& c : r.children) children.push_back(report_json(c, with_timings));
  Json j{{"result", r.result.to_string()},
         {"arity", r.arity},
         {"profile", {{"d", r.profile.d}, {"e", r.profile.e}, {"n", r.profile.n}, {"m", r.profile.m}, {"l", r.profile.l}}},
         {"class_histogram", {{"slices", r.histogram.slices}, {"failures", r.histogram.failures}, {"classes", hist}}},
         {"anchors", anchors},
         {"verification", verification_json(r.verification)},
         {"children", children}};
  if (with_timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

Json nonrationality_json(const NonrationalityCertificate& c) {
  Json degrees = Json::array();
  for (const auto& d : c.degrees) {
    Json e{{"degree_bound", d.degree_bound}, {"unknowns", d.unknowns}, {"refuted", d.refuted}, {"nullspace_dim", d.nullspace_dim}};
    if (d.witness)
      e["witness"] = {{"points_used", d.witness->points_used}, {"n", d.witness->n}, {"m", d.witness->m},
                      {"a_n", element_json(d.witness->a_n)}, {"a_m", element_json(d.witness->a_m)},
                      {"value", element_json(d.witness->value)}};
    else
      e["witness"] = nullptr;
    degrees.push_back(e);
  }
  return {{"field", "q"},
          {"note", "the field is Q with the Calkin-Wilf enumeration; Q is countable but not algebraically closed"},
          {"claim", "no P/Q with total degrees <= D and Q nonzero on the table agrees with f on the table"},
          {"d_max", c.d_max},
          {"grid", c.grid},
          {"probe_order", "max(n, m), then n, then m"},
          {"degrees", degrees}};
}

Json expr_json(const Expr& e) {
  using K = Expr::Kind;
  Json j{{"node", kind_name(e.kind)}};
  switch (e.kind) {
    case K::IntLiteral: j["value"] = e.value.get_str(); break;
    case K::Var:
      j["index"] = e.var;
      j["name"] = "x" + std::to_string(e.var + 1);
      break;
    case K::Neg: j["operand"] = expr_json(*e.lhs); break;
    case K::Pow:
      j["base"] = expr_json(*e.lhs);
      j["exponent"] = e.exponent;
      break;
    default:
      j["lhs"] = expr_json(*e.lhs);
      j["rhs"] = expr_json(*e.rhs);
  }
  return j;
}

Json config_json(const ReconConfig& cfg) {
  return {{"samples_per_class", cfg.samples_per_class}, {"max_degree", cfg.max_degree},
          {"validation_extra", cfg.validation_extra},   {"verify_trials", cfg.verify_trials},
          {"height_bound", cfg.height_bound},           {"anchor_probes", cfg.anchor_probes},
          {"seed", cfg.seed}};
}

std::string oracle_table_csv(const OracleTable& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.arity; ++i) out << 'x' << i + 1 << ',';
  out << "f\n";
  for (const auto& [pt, v] : t.entries) {
    for (const auto& x : pt) out << x << ',';
    out << (v ? v->to_string() : "undefined") << '\n';
  }
  return out.str();
}

OracleTable parse_oracle_table(std::string_view text, const Field& field) {
  OracleTable t{field, 0, {}};
  bool header = true;
  for_each_line(text, [&](std::size_t number, const std::string& line) {
    const auto cells = split(line, ',');
    const std::string where = "line " + std::to_string(number);
    if (header) {
      header = false;
      for (std::size_t i = 0; i + 1 < cells.size(); ++i)
        if (cells[i] != "x" + std::to_string(i + 1)) throw Error(Errc::ParseError, where + ": expected header x1,...,xk,f");
      if (cells.size() < 2 || cells.back() != "f") throw Error(Errc::ParseError, where + ": expected header x1,...,xk,f");
      t.arity = cells.size() - 1;
      return;
    }
    if (cells.size() != t.arity + 1) throw Error(Errc::ParseError, where + ": expected " + std::to_string(t.arity + 1) + " fields");
    std::vector<std::string> key;
    for (std::size_t i = 0; i < t.arity; ++i) key.push_back(element_from(cells[i], field, where).to_string());
    std::optional<FieldElement> v;
    if (cells.back() != "undefined") v = element_from(cells.back(), field, where);
    t.entries[key] = v;
  });
  if (header) throw Error(Errc::ParseError, "oracle table is empty");
  return t;
}

}  // namespace ratrecon
