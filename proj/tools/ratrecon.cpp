// ratrecon command-line tool. JSON goes to stdout, diagnostics to stderr.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <mutex>

#include "CLI11.hpp"
#include "ratrecon/io.hpp"

using namespace ratrecon;

namespace {

// Stable exit statuses, documented in docs/cli.md.
constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInternalError = 2;
constexpr int kNoWitness = 3;
constexpr int kBetaZero = 4;
constexpr int kNoFit = 5;
constexpr int kVerificationFailed = 6;
constexpr int kReconstructionFailed = 7;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::BetaZero: return kBetaZero;
    case Errc::NoFit:
    case Errc::Ambiguous: return kNoFit;
    case Errc::VerificationFailed: return kVerificationFailed;
    case Errc::TooManyFailures:
    case Errc::AnchorSearchFailed:
    case Errc::BudgetExhausted:
    case Errc::DomainTooSparse:
    case Errc::EmptyHistogram:
    case Errc::CalibrationFailure: return kReconstructionFailed;
    default: return kInputError;
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

struct Common {
  std::string field;
  std::optional<std::uint64_t> seed;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RATRECON_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(Errc::ParseError, "RATRECON_SEED is not an unsigned integer: " + std::string(env));
  }
  return 0;
}

Json manifest(const std::string& command, const std::string& field, std::uint64_t seed, Json config, Json inputs) {
  return {{"tool", "ratrecon"}, {"version", std::string(version())}, {"command", command}, {"field", field},
          {"seed", seed},       {"config", std::move(config)},      {"inputs", std::move(inputs)}};
}

Json file_input(const std::string& path, const std::string& contents) {
  return {{"path", path}, {"sha256", sha256_hex(contents)}};
}

// ---------------------------------------------------------------- hankel

struct HankelArgs {
  std::string series;
  std::size_t lmax = 4;
  std::size_t mmax = 4;
  std::string field;
};

int run_hankel(const HankelArgs& a, Json& man) {
  const std::string text = read_file(a.series);
  man["inputs"] = {{"series", file_input(a.series, text)}};
  std::optional<Field> field;
  if (!a.field.empty()) field = Field::parse(a.field);
  const SeriesPrefix s = parse_series_json(text, field);
  man["field"] = s.field.to_string();
  const auto cert = certify_rationality(s, a.lmax, a.mmax);
  emit({{"manifest", man}, {"certificate", certificate_json(cert)}});
  return cert.verdict == RationalityCertificate::Verdict::RationalWitness ? kOk : kNoWitness;
}

// ---------------------------------------------------------------- interp

struct InterpArgs {
  std::string samples;
  int n = 0;
  int m = 0;
  std::string at;
  bool fit = false;
  bool plain = false;
  std::string field = "q";
};

int run_interp(const InterpArgs& a, Json& man) {
  const std::string text = read_file(a.samples);
  man["inputs"] = {{"samples", file_input(a.samples, text)}};
  const Field field = Field::parse(a.field);
  const bool json = a.samples.size() >= 5 && a.samples.substr(a.samples.size() - 5) == ".json";
  const SampleSet1 samples = json ? parse_samples_json(text, field) : parse_samples_csv(text, field);

  if (a.fit) {
    const RatFun1 f = fit_ratfun(samples, a.n, a.m);
    const std::string canonical = RatFunN::from_ratfun1(f).to_string();
    if (a.plain) {
      std::cout << canonical << '\n';
      return kOk;
    }
    const auto p = DegreeProfile::of(f);
    emit({{"manifest", man},
          {"fit", {{"function", canonical}, {"samples_used", samples.size()},
                   {"profile", {{"d", p.d}, {"e", p.e}, {"n", p.n}, {"m", p.m}, {"l", p.l}}}}}});
    return kOk;
  }

  const auto profile = DegreeProfile::from_block_sizes(a.n, a.m);
  const auto need = static_cast<std::size_t>(profile.l + 1);
  if (samples.size() < need)
    throw Error(Errc::SizeMismatch, "--n " + std::to_string(a.n) + " --m " + std::to_string(a.m) + " needs " +
                                        std::to_string(need) + " samples, got " + std::to_string(samples.size()));
  const SampleSet1 used = samples.prefix(need);
  const FieldElement point = field.parse_element(a.at);
  const auto [alpha, beta] = alpha_beta(used, profile, point);
  const FieldElement value = interp_point(used, profile, point);
  if (a.plain) {
    std::cout << value.to_string() << '\n';
    return kOk;
  }
  emit({{"manifest", man},
        {"interpolation", {{"at", element_json(point)}, {"value", element_json(value)}, {"alpha", element_json(alpha)},
                           {"beta", element_json(beta)}, {"sign", interp_sign(profile.n, profile.m)},
                           {"samples_used", need}}}});
  return kOk;
}

// ---------------------------------------------------------------- reconstruct

struct ReconArgs {
  std::string expr;
  std::string replay;
  std::string record;
  std::size_t arity = 0;
  std::string field = "fp:1000003";
  bool timings = false;
  ReconConfig cfg;
};

int run_reconstruct(ReconArgs a, Json& man) {
  const Field field = Field::parse(a.field);
  SliceOracle oracle{field, a.arity, nullptr, false};
  Json input;
  std::shared_ptr<std::size_t> misses;

  if (!a.expr.empty()) {
    if (a.arity == 0) throw Error(Errc::SizeMismatch, "--arity is required with --expr");
    const ExprPtr e = parse_expr(a.expr, a.arity);
    oracle.eval = [e, field](std::span<const FieldElement> x) { return eval_expr(*e, field, x); };
    input = {{"expr", a.expr}, {"sha256", sha256_hex(a.expr)}, {"ast", expr_json(*e)}};
  } else {
    const std::string text = read_file(a.replay);
    auto table = std::make_shared<const OracleTable>(parse_oracle_table(text, field));
    if (a.arity != 0 && a.arity != table->arity)
      throw Error(Errc::SizeMismatch, "--arity " + std::to_string(a.arity) + " but the table has arity " + std::to_string(table->arity));
    oracle.arity = table->arity;
    misses = std::make_shared<std::size_t>(0);
    auto lock = std::make_shared<std::mutex>();
    oracle.eval = [table, misses, lock](std::span<const FieldElement> x) -> std::optional<FieldElement> {
      std::vector<std::string> key;
      for (const auto& v : x) key.push_back(v.to_string());
      const auto it = table->entries.find(key);
      if (it != table->entries.end()) return it->second;
      std::lock_guard guard(*lock);
      ++*misses;
      return std::nullopt;
    };
    input = {{"replay", file_input(a.replay, text)}, {"entries", table->entries.size()}};
  }
  man["inputs"] = input;
  man["arity"] = oracle.arity;

  std::shared_ptr<OracleTable> recorded;
  if (!a.record.empty()) {
    recorded = std::make_shared<OracleTable>(OracleTable{field, oracle.arity, {}});
    auto inner = oracle.eval;
    oracle.eval = [inner, recorded](std::span<const FieldElement> x) {
      auto v = inner(x);
      std::vector<std::string> key;
      for (const auto& c : x) key.push_back(c.to_string());
      recorded->entries[key] = v;
      return v;
    };
    oracle.serial = true;
  }

  auto finish = [&](Json out) {
    if (recorded) write_file(a.record, oracle_table_csv(*recorded));
    if (misses) {
      out["replay_misses"] = *misses;
      if (*misses) std::cerr << "ratrecon: " << *misses << " queries were not in the replay table and read as undefined\n";
    }
    emit(out);
  };

  try {
    const ReconReport report = reconstruct(oracle, a.cfg);
    finish({{"manifest", man}, {"report", report_json(report, a.timings)}});
    return kOk;
  } catch (const VerificationFailure& e) {
    std::cerr << "ratrecon: " << e.what() << '\n';
    finish({{"manifest", man},
            {"error", {{"code", "VerificationFailed"}, {"message", e.what()}}},
            {"report", report_json(e.report(), a.timings)}});
    return kVerificationFailed;
  }
}

// ---------------------------------------------------------------- counterexample

struct CounterArgs {
  std::size_t n = 20;
  std::optional<int> dmax;
  std::size_t grid = 16;
  std::string table_csv;
};

int run_counterexample(const CounterArgs& a, Json& man) {
  if (a.n == 0) throw Error(Errc::SizeMismatch, "--n must be positive");
  const auto table = counter_table(a.n);
  bool symmetric = true;
  for (std::size_t r = 0; r < a.n; ++r)
    for (std::size_t c = 0; c < r; ++c) symmetric = symmetric && table.values(r, c) == table.values(c, r);
  Json degrees = Json::array();
  for (std::size_t m = 0; m < a.n; ++m) degrees.push_back(std::max(0, slice_poly(m, a.n).degree()));
  const std::string csv = table_csv(table);
  Json t{{"size", a.n}, {"symmetric", symmetric}, {"slice_degrees", degrees}, {"sha256", sha256_hex(csv)}};
  if (a.table_csv.empty()) {
    t["csv"] = csv;
  } else {
    write_file(a.table_csv, csv);
    t["csv_file"] = a.table_csv;
  }
  Json out{{"manifest", man}, {"table", t}};
  if (a.dmax) out["certificate"] = nonrationality_json(nonrationality_report(*a.dmax, a.grid));
  emit(out);
  return kOk;
}

void add_seed(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed, "Random seed (default: $RATRECON_SEED, else 0)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact reconstruction of rational functions from partial black-box oracles"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  Common common;

  HankelArgs ha;
  auto* hankel = app.add_subcommand("hankel", "Kronecker/Hankel rationality certificate for a power-series prefix");
  hankel->add_option("--series", ha.series, "Series JSON file")->required();
  hankel->add_option("--lmax", ha.lmax, "Largest offset l scanned")->capture_default_str();
  hankel->add_option("--mmax", ha.mmax, "Largest Hankel order m scanned")->capture_default_str();
  hankel->add_option("--field", ha.field, "Override the file's field: q or fp:<prime>");

  InterpArgs ia;
  auto* interp = app.add_subcommand("interp", "Determinantal interpolation or rational fit from univariate samples");
  interp->add_option("--samples", ia.samples, "Samples file (.csv with a,f lines, or .json)")->required();
  interp->add_option("--n", ia.n, "Numerator block size n")->required()->check(CLI::NonNegativeNumber);
  interp->add_option("--m", ia.m, "Denominator block size m")->required()->check(CLI::NonNegativeNumber);
  auto* at = interp->add_option("--at", ia.at, "Evaluate the interpolant at this point");
  auto* fit = interp->add_flag("--fit", ia.fit, "Fit P/Q with deg P <= n, deg Q <= m to all samples");
  at->excludes(fit);
  interp->add_flag("--plain", ia.plain, "Print only the value or the canonical function");
  interp->add_option("--field", ia.field, "q or fp:<prime>")->capture_default_str();

  ReconArgs ra;
  auto* recon = app.add_subcommand("reconstruct", "Reconstruct a multivariate rational function from an oracle");
  auto* expr = recon->add_option("--expr", ra.expr, "Oracle as an expression in x1..x<arity>");
  auto* replay = recon->add_option("--oracle-replay", ra.replay, "Oracle as a recorded table (CSV)");
  expr->excludes(replay);
  recon->add_option("--record", ra.record, "Write every oracle query and answer to this CSV file");
  recon->add_option("--arity", ra.arity, "Number of variables");
  recon->add_option("--field", ra.field, "q or fp:<prime>")->capture_default_str();
  recon->add_option("--samples-per-class", ra.cfg.samples_per_class, "Slices classified per level")->capture_default_str()->check(CLI::PositiveNumber);
  recon->add_option("--max-degree", ra.cfg.max_degree, "Largest slice degree tried")->capture_default_str()->check(CLI::NonNegativeNumber);
  recon->add_option("--validation-extra", ra.cfg.validation_extra, "Extra points validating each fit")->capture_default_str()->check(CLI::PositiveNumber);
  recon->add_option("--verify-trials", ra.cfg.verify_trials, "Random points in the final check")->capture_default_str()->check(CLI::NonNegativeNumber);
  recon->add_option("--height-bound", ra.cfg.height_bound, "Height of random rationals over Q")->capture_default_str()->check(CLI::PositiveNumber);
  recon->add_option("--anchor-probes", ra.cfg.anchor_probes, "Definedness probes per anchor")->capture_default_str()->check(CLI::PositiveNumber);
  recon->add_option("--threads", ra.cfg.threads, "Worker cap")->capture_default_str()->check(CLI::PositiveNumber);
  recon->add_flag("--timings", ra.timings, "Include per-phase wall times (output is then not reproducible)");

  CounterArgs ca;
  auto* counter = app.add_subcommand("counterexample", "Slice-polynomial but non-rational function on Q x Q");
  counter->add_option("--n", ca.n, "Table size N")->capture_default_str();
  counter->add_option("--dmax", ca.dmax, "Refute every total degree bound D <= dmax");
  counter->add_option("--grid", ca.grid, "Table size used for the refutation")->capture_default_str();
  counter->add_option("--table-csv", ca.table_csv, "Write the table here instead of embedding it");

  for (auto* cmd : {hankel, interp, recon, counter}) add_seed(cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  Json man;
  try {
    const std::uint64_t seed = resolve_seed(common.seed);
    if (*hankel) {
      man = manifest("hankel", ha.field.empty() ? "from-file" : ha.field, seed, {{"lmax", ha.lmax}, {"mmax", ha.mmax}}, Json::object());
      return run_hankel(ha, man);
    }
    if (*interp) {
      if (!ia.fit && ia.at.empty()) throw Error(Errc::ParseError, "interp needs --at <value> or --fit");
      man = manifest("interp", ia.field, seed,
                     {{"n", ia.n}, {"m", ia.m}, {"mode", ia.fit ? "fit" : "at"}, {"at", ia.fit ? Json(nullptr) : Json(ia.at)}},
                     Json::object());
      return run_interp(ia, man);
    }
    if (*recon) {
      if (ra.expr.empty() && ra.replay.empty()) throw Error(Errc::ParseError, "reconstruct needs --expr or --oracle-replay");
      ra.cfg.seed = seed;
      man = manifest("reconstruct", ra.field, seed, config_json(ra.cfg), Json::object());
      // worker cap is not part of the config echo: it does not change the output
      return run_reconstruct(ra, man);
    }
    man = manifest("counterexample", "q", seed,
                   {{"n", ca.n}, {"dmax", ca.dmax ? Json(*ca.dmax) : Json(nullptr)}, {"grid", ca.grid}}, Json::object());
    return run_counterexample(ca, man);
  } catch (const ParseFailure& e) {
    std::cerr << "ratrecon: " << e.what() << '\n';
    emit({{"manifest", man},
          {"error", {{"code", errc_name(e.code())}, {"message", e.what()}, {"offset", e.offset()}, {"expected", e.expected()}}}});
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "ratrecon: " << e.what() << '\n';
    emit({{"manifest", man}, {"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}});
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "ratrecon: internal error: " << e.what() << '\n';
    return kInternalError;
  }
}
