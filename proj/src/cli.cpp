#include "a1lab/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "CLI11.hpp"

#include "a1lab/geomcheck.hpp"
#include "a1lab/io.hpp"

namespace a1lab {
namespace {

struct RunConfig {
  std::string command;
  std::string pair_file;
  std::string field;
  std::string seed_text;
  std::uint64_t budget = 1000;
  std::vector<std::string> points;
  bool json = false;
  bool timing = false;
  bool validate = false;
  std::string out;
  std::string write_pair;
  unsigned threads = 0;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::uint64_t parse_seed(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos, 0);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text[0] == '-') throw UsageError("invalid " + what + ": \"" + text + "\"");
  return v;
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (!cfg.seed_text.empty()) return parse_seed(cfg.seed_text, "--seed");
  if (const char* env = std::getenv("A1LAB_SEED"); env && *env) return parse_seed(env, "A1LAB_SEED");
  return kDefaultSeed;
}

std::optional<std::pair<std::uint64_t, int>> parse_field_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  const std::uint64_t p = parse_seed(text.substr(0, comma), "--field");
  int r = 1;
  if (comma != std::string::npos) r = static_cast<int>(parse_seed(text.substr(comma + 1), "--field"));
  return std::make_pair(p, r);
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return kExitPass;
    case Verdict::fail:
      return kExitFail;
    case Verdict::inconclusive:
      return kExitInconclusive;
  }
  return kExitFail;
}

// The pair over a finite field and the field the analysis runs over.
struct Setting {
  CIPair<Gf> pair;
  const GaloisField* field = nullptr;
};

Setting finite_setting(const AnyPair& any, const RunConfig& cfg) {
  const auto flag = parse_field_flag(cfg.field);
  if (const auto* q = std::get_if<CIPair<Rational>>(&any)) {
    if (!flag) throw UsageError("a pair over Q needs --field p[,r] to be reduced");
    const GaloisField& prime = GaloisField::get(flag->first);
    return {reduce_mod(*q, prime), &GaloisField::get(flag->first, flag->second)};
  }
  const auto& pair = std::get<CIPair<Gf>>(any);
  if (!flag) return {pair, &GaloisField::get(pair.field)};
  if (flag->first != pair.field.p)
    throw UsageError("--field characteristic differs from the pair's field " + pair.field.name());
  const GaloisField& f = GaloisField::get(flag->first, flag->second);
  if (pair.field.r != 1 && f.spec() != pair.field)
    throw UsageError("a pair over " + pair.field.name() + " can only be analyzed over its own field");
  return {pair, &f};
}

Point point_arg(const std::string& text, const GaloisField& field, std::size_t num_vars) {
  Point x = parse_point(text, field);
  if (x.size() != num_vars)
    throw UsageError("point \"" + text + "\" has " + std::to_string(x.size()) + " coordinates, expected " +
                     std::to_string(num_vars));
  return x;
}

Json header(const RunConfig& cfg, const AnyPair& pair, std::uint64_t seed) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = cfg.command;
  Json p;
  p["type"] = type_to_json(type_of(pair));
  p["field"] = field_spec_of(pair).name();
  j["pair"] = std::move(p);
  j["seed"] = seed;
  return j;
}

struct Outcome {
  Json report;
  Verdict verdict = Verdict::pass;
  std::string summary;
};

Outcome cmd_validate(const RunConfig& cfg, const AnyPair& any, std::uint64_t seed, const EngineOptions& opts) {
  const Setting s = finite_setting(any, cfg);
  const CheckReport rep = validate_pair(s.pair, *s.field, cfg.budget, seed, opts);
  Outcome o{header(cfg, any, seed), rep.verdict, {}};
  o.report["field"] = s.field->spec().name();
  o.report["check"] = report_to_json(rep);
  o.summary = "validate " + type_of(any).to_string() + " over " + s.field->spec().name() + ": " +
              to_string(rep.verdict) + " (" + rep.message + ")";
  return o;
}

Outcome cmd_lines(const RunConfig& cfg, const AnyPair& any, std::uint64_t seed, const EngineOptions& opts) {
  Setting s = finite_setting(any, cfg);
  if (cfg.points.size() > 1) throw UsageError("lines takes at most one --point");
  Rng rng(seed);
  Point x;
  bool chosen = false;
  if (cfg.points.empty()) {
    const auto gp = general_point(s.pair, *s.field, rng, {}, opts);
    x = gp.point;
    s.field = gp.field;
    chosen = true;
  } else {
    x = point_arg(cfg.points.front(), *s.field, s.pair.num_vars());
  }
  const GaloisField& f = *s.field;
  const auto pres = line_moduli_through_point(s.pair, x);
  const auto eqs = lift(std::span<const MultiPoly<Gf>>(pres.equations), f);
  const auto moduli_pts = enumerate_solutions(eqs, pres.num_vars(), f, opts);
  const auto oracle_pts = oracle_a1_lines(s.pair, x, f, opts);
  CheckReport check = smoothness_probe(eqs, pres.num_vars(), static_cast<int>(eqs.size()), f, cfg.budget, seed, opts);
  Rng slicing = rng.split(1);
  check.dimension_estimate = dimension_by_slicing(eqs, pres.num_vars(), f, 5, slicing, opts).value;
  const Verdict v = moduli_pts == oracle_pts ? Verdict::pass : Verdict::fail;

  Outcome o{header(cfg, any, seed), v, {}};
  o.report["field"] = f.spec().name();
  o.report["point"] = point_to_json(normalize_point(x));
  o.report["point-chosen"] = chosen;
  o.report["presentation"] = presentation_to_json(pres);
  o.report["moduli-points"] = points_to_json(moduli_pts);
  o.report["oracle-points"] = points_to_json(oracle_pts);
  o.report["equivalence"] = to_string(v);
  o.report["check"] = report_to_json(check);
  std::string type;
  for (int d : pres.declared_type) type += (type.empty() ? "" : ",") + std::to_string(d);
  o.summary = "lines " + type_of(any).to_string() + " over " + f.spec().name() + ": type (" + type +
              "), expected dim " + std::to_string(pres.expected_dim) + ", " + std::to_string(oracle_pts.size()) +
              " oracle points, equivalence " + to_string(v);
  return o;
}

Outcome cmd_conics(const RunConfig& cfg, const AnyPair& any, std::uint64_t seed, const EngineOptions& opts) {
  const PairType type = type_of(any);
  if (type.k != 1) throw UnsupportedError("conics needs a pair of type (d_1, ..., d_c; 1), got " + type.to_string());
  Setting s = finite_setting(any, cfg);
  Point p, q;
  bool chosen = false;
  if (cfg.points.empty()) {
    Rng rng(seed);
    const auto gp = general_point_pair(s.pair, *s.field, rng, {}, opts);
    p = gp.p;
    q = gp.q;
    s.field = gp.field;
    chosen = true;
  } else if (cfg.points.size() == 2) {
    p = point_arg(cfg.points[0], *s.field, s.pair.num_vars());
    q = point_arg(cfg.points[1], *s.field, s.pair.num_vars());
  } else {
    throw UsageError("conics takes either no --point or exactly two");
  }
  const GaloisField& f = *s.field;
  const auto delta = conic_boundary_locus(s.pair, p, q);
  const auto fiber = conic_fiber_type(type);
  const auto meta = delta_degree_metadata(type);
  const auto eqs = lift(std::span<const MultiPoly<Gf>>(delta.equations), f);
  const auto delta_pts = enumerate_solutions(eqs, delta.num_vars(), f, opts);
  const auto oracle = oracle_a1_conics(s.pair, p, q, f, opts);
  const Verdict v = delta_pts == oracle.node_points ? Verdict::pass : Verdict::fail;

  Outcome o{header(cfg, any, seed), v, {}};
  o.report["field"] = f.spec().name();
  o.report["p"] = point_to_json(normalize_point(p));
  o.report["q"] = point_to_json(normalize_point(q));
  o.report["points-chosen"] = chosen;
  o.report["delta"] = presentation_to_json(delta);
  Json fj;
  fj["type"] = fiber.type;
  fj["degree-sum"] = fiber.degree_sum;
  fj["n"] = type.n;
  fj["rationally-connected-bound"] = fiber.rationally_connected_bound;
  o.report["fiber"] = std::move(fj);
  Json mj;
  mj["delta-prime-degree"] = meta.delta_prime_degree;
  mj["delta-degree"] = meta.delta_degree;
  mj["pullback-multiplicity"] = meta.pullback_multiplicity;
  o.report["degree-metadata"] = std::move(mj);
  o.report["node-points"] = points_to_json(delta_pts);
  o.report["oracle-node-points"] = points_to_json(oracle.node_points);
  o.report["equivalence"] = to_string(v);
  o.report["smooth-conic-count"] = oracle.smooth_conic_count;
  o.report["planes"] = oracle.planes;
  o.summary = "conics " + type.to_string() + " over " + f.spec().name() + ": fiber degree sum " +
              std::to_string(fiber.degree_sum) + (fiber.rationally_connected_bound ? " <= " : " > ") + "n = " +
              std::to_string(type.n) + ", " + std::to_string(delta_pts.size()) + " node points, " +
              std::to_string(oracle.smooth_conic_count) + " smooth conics, equivalence " + to_string(v);
  return o;
}

Json criteria_json(const PairType& type) {
  const CriteriaReport c = criteria(type);
  Json j;
  j["d"] = c.d;
  j["sum-of-squares"] = c.sum_of_squares;
  j["log-fano"] = c.log_fano;
  j["a1-simply-connected-bound"] = c.a1_simply_connected_bound;
  j["cover-bound"] = c.cover_bound;
  j["affine-space"] = c.affine_space;
  return j;
}

Outcome cmd_criteria(const RunConfig& cfg, const AnyPair& any, std::uint64_t seed) {
  const PairType type = type_of(any);
  const CriteriaReport c = criteria(type);
  Outcome o{header(cfg, any, seed), Verdict::pass, {}};
  o.report["criteria"] = criteria_json(type);
  o.report["cover-type"] = type_to_json(cover_type(type));
  o.summary = "criteria " + type.to_string() + ": d = " + std::to_string(c.d) + ", log Fano " +
              (c.log_fano ? "yes" : "no") + ", sum d_i^2 <= n " + (c.a1_simply_connected_bound ? "yes" : "no") +
              ", sum d_i^2 + k^2 <= n + 1 " + (c.cover_bound ? "yes" : "no");
  return o;
}

Outcome cmd_cover(const RunConfig& cfg, const AnyPair& any, std::uint64_t seed, const EngineOptions& opts) {
  const AnyPair cover = std::visit([](const auto& p) { return AnyPair(universal_cover(p)); }, any);
  const Json cover_json = std::visit([](const auto& p) { return pair_to_json(p); }, cover);
  if (!cfg.write_pair.empty()) {
    std::ofstream file(cfg.write_pair, std::ios::binary);
    if (!file) throw UsageError("cannot write " + cfg.write_pair);
    file << dump(cover_json);
  }
  Outcome o{header(cfg, any, seed), Verdict::pass, {}};
  o.report["cover-type"] = type_to_json(type_of(cover));
  o.report["cover-criteria"] = criteria_json(type_of(cover));
  o.report["cover"] = cover_json;
  o.summary = "cover of " + type_of(any).to_string() + ": " + type_of(cover).to_string();
  if (cfg.validate) {
    const Setting s = finite_setting(cover, cfg);
    const CheckReport rep = validate_pair(s.pair, *s.field, cfg.budget, seed, opts);
    o.report["field"] = s.field->spec().name();
    o.report["check"] = report_to_json(rep);
    o.verdict = rep.verdict;
    o.summary += ", validation over " + s.field->spec().name() + ": " + to_string(rep.verdict);
  }
  return o;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--pair", cfg.pair_file, "pair file (JSON)")->required();
  sub->add_option("--field", cfg.field, "analysis field p[,r]");
  sub->add_option("--seed", cfg.seed_text, "RNG seed (decimal or 0x hex)");
  sub->add_option("--budget", cfg.budget, "sample budget")->check(CLI::PositiveNumber);
  sub->add_flag("--json", cfg.json, "emit the report as JSON");
  sub->add_option("--out", cfg.out, "write the report to a file");
  sub->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  sub->add_flag("--timing", cfg.timing, "record wall-clock time in the report");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Moduli equations and finite-field checks for complete intersection log pairs", "a1lab"};
  app.require_subcommand(1);
  auto* validate = app.add_subcommand("validate", "check smoothness of X and D");
  auto* lines = app.add_subcommand("lines", "A1-lines through a point: moduli equations and oracle");
  auto* conics = app.add_subcommand("conics", "node locus of A1-conics through two points");
  auto* crit = app.add_subcommand("criteria", "numeric criteria of the pair type");
  auto* cover = app.add_subcommand("cover", "universal cover branched along D");
  for (auto* sub : {validate, lines, conics, crit, cover}) add_common(sub, cfg);
  lines->add_option("--point", cfg.points, "base point c0,...,cn");
  conics->add_option("--point", cfg.points, "p and q, given twice");
  cover->add_option("--write-pair", cfg.write_pair, "write the cover's pair file");
  cover->add_flag("--validate", cfg.validate, "validate the cover over --field or the pair's field");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "a1lab: " << e.what() << "\n";
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  int code = kExitPass;
  Outcome outcome;
  std::string error;
  std::uint64_t seed = kDefaultSeed;
  try {
    seed = resolve_seed(cfg);
    EngineOptions opts;
    opts.threads = cfg.threads;
    const AnyPair pair = read_pair_file(cfg.pair_file);
    if (cfg.command == "validate") outcome = cmd_validate(cfg, pair, seed, opts);
    else if (cfg.command == "lines") outcome = cmd_lines(cfg, pair, seed, opts);
    else if (cfg.command == "conics") outcome = cmd_conics(cfg, pair, seed, opts);
    else if (cfg.command == "criteria") outcome = cmd_criteria(cfg, pair, seed);
    else outcome = cmd_cover(cfg, pair, seed, opts);
    code = exit_code(outcome.verdict);
  } catch (const ConstructionError& e) {
    error = e.what();
    code = kExitFail;
  } catch (const ConsistencyError& e) {
    error = std::string("internal consistency check failed: ") + e.what();
    code = kExitFail;
  } catch (const GenerationError& e) {
    error = e.what();
    code = kExitInconclusive;
  } catch (const Error& e) {
    error = e.what();
    code = kExitUsage;
  }

  if (!error.empty()) {
    err << "a1lab " << cfg.command << ": " << error << "\n";
    outcome.report = Json();
    outcome.report["schema"] = kReportSchema;
    outcome.report["command"] = cfg.command;
    outcome.report["seed"] = seed;
    outcome.report["error"] = error;
    outcome.summary.clear();
  } else {
    outcome.report["verdict"] = to_string(outcome.verdict);
  }
  outcome.report["exit-code"] = code;
  if (cfg.timing) {
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    outcome.report["wall-time-ms"] = ms.count();
  } else {
    outcome.report["wall-time-ms"] = nullptr;
  }

  if (!cfg.json && outcome.summary.empty()) return code;
  const std::string text = cfg.json ? dump(outcome.report) : outcome.summary + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "a1lab: cannot write " << cfg.out << "\n";
      return kExitUsage;
    }
    file << text;
  }
  return code;
}

}  // namespace a1lab
