#include "vegas/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <tuple>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vegas/analysis.hpp"
#include "vegas/cli/verify.hpp"
#include "vegas/engine.hpp"
#include "vegas/errors.hpp"

namespace vegas::cli {

namespace {

constexpr std::uint64_t kDemoTrials = 10'000;
constexpr double kMaxSweepPoints = 10'000;

Cell num(double v) { return v; }
Cell count(std::uint64_t v) { return static_cast<std::int64_t>(v); }

// A config with its distribution and schedule built.
struct Prepared {
  const ExperimentConfig* config;
  RuntimeModel model;
  Schedule schedule;
};

std::vector<Prepared> prepare(const std::vector<ExperimentConfig>& configs) {
  std::vector<Prepared> out;
  for (const auto& c : configs) {
    DistX d = [&] {
      try {
        return build_distribution(c.distribution);
      } catch (const std::exception& e) {
        throw ConfigError(fmt::format("distribution: {}", e.what()));
      }
    }();
    Schedule s = build_schedule(c.schedule, d);
    out.push_back({&c, RuntimeModel{std::move(d), c.law}, std::move(s)});
  }
  // Deterministic order: (family, E[X], schedule, law), ties by config order.
  std::stable_sort(out.begin(), out.end(), [](const Prepared& a, const Prepared& b) {
    return std::make_tuple(a.config->distribution.kind, a.model.dist.expectation(), a.schedule.label(),
                           std::string(to_string(a.model.law))) <
           std::make_tuple(b.config->distribution.kind, b.model.dist.expectation(), b.schedule.label(),
                           std::string(to_string(b.model.law)));
  });
  return out;
}

template <class F>
Cell guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception&) {
    return std::monostate{};
  }
}

struct RowBuilder {
  std::vector<Cell> cells;

  RowBuilder(const Prepared& p, const char* mode) {
    const double ex = p.model.dist.expectation();
    cells.assign(result_columns().size(), std::monostate{});
    set("family", p.config->distribution.kind);
    set("distribution", p.model.dist.label());
    set("law", std::string(to_string(p.model.law)));
    set("schedule", p.schedule.label());
    set("mode", std::string(mode));
    set("EX", num(ex));
    set("e_to_EX", num(std::exp(ex)));
    set("expected_T", num(expected_runtime(p.model)));
  }

  void set(const std::string& column, Cell value) {
    const auto& cols = result_columns();
    const auto it = std::find(cols.begin(), cols.end(), column);
    cells[static_cast<std::size_t>(it - cols.begin())] = std::move(value);
  }
};

// Returns an exit code; fills the analytic columns.
int analytic_part(const Prepared& p, RowBuilder& row, std::ostream& err) {
  const ExperimentConfig& c = *p.config;
  const double ex = p.model.dist.expectation();
  CostEstimate est;
  try {
    est = analytic_cost(p.model, p.schedule, c.eps_tail, c.attempt_cap);
  } catch (const TailNotConvergent& e) {
    err << "error: " << e.what() << '\n';
    return kExitTailNotConvergent;
  }
  row.set("analytic_cost", num(est.expected_cost));
  row.set("tail_bound", num(est.tail_bound));
  const double log_cost = std::log(est.expected_cost);
  row.set("log_cost", num(log_cost));
  row.set("ratio", num(std::exp(log_cost - ex)));
  row.set("log_ratio", num(log_cost - ex));
  const DistX& d = p.model.dist;
  row.set("lemma3", guarded([&]() -> Cell { return find_lemma3_threshold(d).holds; }));
  if (ex >= 1.0) row.set("lemma5", guarded([&]() -> Cell { return check_two_threshold_lemma(d).holds; }));
  const double E = std::max(ex, 5.0);
  row.set("lemma9", guarded([&]() -> Cell { return check_core_lemma(d, E).holds; }));
  row.set("cor10", guarded([&]() -> Cell { return block_success_prob(p.model, E); }));
  if (est.infinite()) {
    err << fmt::format("error: infinite expected cost: {} ({}) with {}\n", d.label(),
                       to_string(p.model.law), p.schedule.label());
    return kExitInfiniteCost;
  }
  return kExitOk;
}

int simulate_part(const Prepared& p, const CommonOptions& opts, RowBuilder& row, std::ostream& err) {
  const ExperimentConfig& c = *p.config;
  const std::uint64_t trials = opts.trials.value_or(c.trials);
  const std::uint64_t seed = opts.seed.value_or(c.seed);
  if (trials < 2) throw ConfigError("simulate: trials must be >= 2");
  MCOptions mo;
  mo.caps = c.caps;
  mo.cap_policy = CapPolicy::count;
  const MCEstimate mc = mc_expected_cost(Process::sampler(p.model), p.schedule, trials, seed, mo);
  row.set("mc_mean", num(mc.mean));
  row.set("mc_std_error", num(mc.std_error));
  row.set("trials", count(mc.trials));
  row.set("seed", count(mc.seed));
  row.set("cap_trips", count(mc.cap_trips));
  const double fraction = static_cast<double>(mc.cap_trips) / static_cast<double>(mc.trials);
  if (fraction > c.max_cap_trip_fraction) {
    err << fmt::format("error: {} of {} trials tripped a cap for {} with {} (allowed fraction {:g})\n",
                       mc.cap_trips, mc.trials, p.model.dist.label(), p.schedule.label(),
                       c.max_cap_trip_fraction);
    return kExitCapTrips;
  }
  return kExitOk;
}

int run_rows(const std::vector<ExperimentConfig>& configs, const CommonOptions& opts, bool analyze,
             std::ostream& out, std::ostream& err) {
  std::vector<Prepared> prepared;
  try {
    prepared = prepare(configs);
    if (!analyze) {
      for (const auto& p : prepared) {
        if (opts.trials.value_or(p.config->trials) < 2) throw ConfigError("simulate: trials must be >= 2");
      }
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  Table table{result_columns(), {}};
  int code = kExitOk;
  auto note = [&code](int c) {
    if (code == kExitOk) code = c;
  };
  for (const auto& p : prepared) {
    const Mode mode = analyze ? p.config->mode : Mode::simulate;
    RowBuilder row(p, to_string(mode));
    int rc = kExitOk;
    if (mode != Mode::simulate) {
      rc = analytic_part(p, row, err);
      note(rc);
      if (rc == kExitTailNotConvergent) continue;
    }
    // An infinite oracle cost means simulation cannot terminate.
    if (mode != Mode::analyze && rc == kExitOk) {
      try {
        note(simulate_part(p, opts, row, err));
      } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
      }
    }
    table.rows.push_back(std::move(row.cells));
  }
  write_table(table, opts.format, out);
  return code;
}

}  // namespace

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols{
      "family",   "distribution", "law",         "schedule",  "mode",          "EX",
      "e_to_EX",  "expected_T",   "analytic_cost", "tail_bound", "log_cost",   "ratio",
      "log_ratio", "mc_mean",     "mc_std_error", "trials",    "seed",         "cap_trips",
      "lemma3",   "lemma5",       "lemma9",      "cor10"};
  return cols;
}

const std::vector<std::string>& verify_columns() {
  static const std::vector<std::string> cols{"check",   "subject", "law",    "schedule",
                                             "holds",   "witness", "margin", "detail"};
  return cols;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{"family",     "E",         "distribution", "EX",
                                             "law",        "schedule",  "analytic_cost", "tail_bound",
                                             "log_cost",   "log_cost_minus_EX"};
  return cols;
}

const std::vector<std::string>& demo_columns() {
  static const std::vector<std::string> cols{"process",      "schedule", "oracle_cost",
                                             "mc_mean",      "mc_std_error", "z_score",
                                             "trials",       "seed",     "cap_trips"};
  return cols;
}

int cmd_analyze(const std::vector<ExperimentConfig>& configs, const CommonOptions& opts,
                std::ostream& out, std::ostream& err) {
  return run_rows(configs, opts, true, out, err);
}

int cmd_simulate(const std::vector<ExperimentConfig>& configs, const CommonOptions& opts,
                 std::ostream& out, std::ostream& err) {
  return run_rows(configs, opts, false, out, err);
}

int cmd_verify(const std::string& scope, const CommonOptions& opts, std::ostream& out,
               std::ostream& err, double lambda_coefficient) {
  std::vector<Verdict> verdicts;
  try {
    verdicts = run_verify(scope, lambda_coefficient);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  Table table{verify_columns(), {}};
  std::size_t failures = 0;
  for (const auto& v : verdicts) {
    table.rows.push_back({v.check, v.subject, v.law, v.schedule, v.holds,
                          v.witness ? Cell{*v.witness} : Cell{}, num(v.margin), v.detail});
    if (!v.holds) {
      ++failures;
      err << failure_message(v) << '\n';
    }
  }
  write_table(table, opts.format, out);
  if (failures) {
    err << fmt::format("{} of {} verdicts failed\n", failures, verdicts.size());
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_sweep(const SweepOptions& sweep, const CommonOptions& opts, std::ostream& out,
              std::ostream& err) {
  struct Point {
    double E;
    RuntimeModel model;
    std::vector<Schedule> schedules;
  };
  std::vector<Point> points;
  try {
    if (sweep.schedules.empty()) throw ConfigError("sweep: empty schedule list");
    if (!(sweep.E_step > 0.0)) throw ConfigError("sweep: E step must be > 0");
    if (!(sweep.E_min <= sweep.E_max)) throw ConfigError("sweep: requires E_min <= E_max");
    const double n = std::floor((sweep.E_max - sweep.E_min) / sweep.E_step + 1e-9);
    if (n + 1.0 > kMaxSweepPoints) throw ConfigError("sweep: too many points");
    for (int i = 0; i <= static_cast<int>(n); ++i) {
      const double E = sweep.E_min + i * sweep.E_step;
      DistSpec spec;
      spec.kind = sweep.family;
      std::optional<double> family_t;
      if (sweep.family == "constant") {
        spec.c = E;
      } else {
        spec.E = E;
      }
      if (sweep.family == "fixed_t_counterexample") {
        family_t = sweep.t_factor * E + sweep.t_offset;
        spec.t = family_t;
      }
      if (sweep.family == "variance_counterexample") spec.V = sweep.V_factor * 2.0 * E * E * std::exp(-E);
      DistX d = [&] {
        try {
          return build_distribution(spec);
        } catch (const std::exception& e) {
          throw ConfigError(fmt::format("sweep: {}", e.what()));
        }
      }();
      std::vector<Schedule> schedules;
      for (const auto& kind : sweep.schedules) {
        ScheduleSpec ss;
        ss.kind = kind;
        if (kind == "single_threshold") {
          ss.t = sweep.threshold ? sweep.threshold : family_t;
          if (!ss.t) throw ConfigError("sweep: single_threshold needs --threshold for this family");
        }
        schedules.push_back(build_schedule(ss, d));
      }
      std::sort(schedules.begin(), schedules.end(),
                [](const Schedule& a, const Schedule& b) { return a.label() < b.label(); });
      points.push_back({E, RuntimeModel{std::move(d), sweep.law}, std::move(schedules)});
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  Table table{sweep_columns(), {}};
  int code = kExitOk;
  for (const auto& p : points) {
    const double ex = p.model.dist.expectation();
    for (const auto& s : p.schedules) {
      std::vector<Cell> row{sweep.family, num(p.E), p.model.dist.label(), num(ex),
                            std::string(to_string(sweep.law)), s.label()};
      try {
        const CostEstimate c = analytic_cost(p.model, s, sweep.eps_tail);
        const double lc = std::log(c.expected_cost);
        row.insert(row.end(), {num(c.expected_cost), num(c.tail_bound), num(lc), num(lc - ex)});
      } catch (const TailNotConvergent& e) {
        err << "error: " << e.what() << '\n';
        if (code == kExitOk) code = kExitTailNotConvergent;
        row.resize(sweep_columns().size());
      }
      table.rows.push_back(std::move(row));
    }
  }
  write_table(table, opts.format, out);
  return code;
}

int cmd_demo(const CommonOptions& opts, std::ostream& out, std::ostream&) {
  struct Case {
    Process process;
    DistX oracle_dist;
    Schedule schedule;
  };
  const double ln2 = std::log(2.0);
  const int bits = 8;
  const DistX coin = DistX::constant(ln2);
  const DistX planted = DistX::constant(bits * ln2);
  std::vector<Case> cases;
  for (const Schedule& s : {single_threshold_schedule(std::log(3.0)), luby_schedule(1.0), universal_schedule()}) {
    cases.push_back({geometric_coin_process(coin), coin, s});
  }
  for (const Schedule& s : {fixed_schedule(bits * ln2), luby_schedule(1.0), universal_schedule()}) {
    cases.push_back({planted_bitstring_process(bits), planted, s});
  }
  const std::uint64_t trials = opts.trials.value_or(kDemoTrials);
  const std::uint64_t seed = opts.seed.value_or(42);
  Table table{demo_columns(), {}};
  for (const auto& c : cases) {
    const double oracle = analytic_cost({c.oracle_dist, RuntimeLaw::geometric}, c.schedule).expected_cost;
    const MCEstimate mc = mc_expected_cost(c.process, c.schedule, trials, seed);
    const double z = mc.std_error > 0.0 ? (mc.mean - oracle) / mc.std_error : 0.0;
    table.rows.push_back({c.process.label(), c.schedule.label(), num(oracle), num(mc.mean),
                          num(mc.std_error), num(z), count(mc.trials), count(mc.seed),
                          count(mc.cap_trips)});
  }
  write_table(table, opts.format, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Restart schedules for Las Vegas algorithms: oracle, simulation and checks",
               "vegas_restart"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::string scope = "all";
  double lambda_coefficient = starfn::kLambdaCoefficient;
  SweepOptions sweep;
  std::string sweep_law = "deterministic";
  std::optional<double> threshold;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write the table to this file instead of stdout");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Exact expected cost and lemma checks per config");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate per config");
  for (CLI::App* sub : {analyze, simulate}) {
    sub->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sub->add_option("--seed", seed, "Override the configured seed");
    sub->add_option("--trials", trials, "Override the configured trial count");
    common(sub);
  }

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite over the built-in zoo");
  verify->add_option("--scope", scope, "all|starfn|lemma3|lemma5|lemma9|cor10|bounds");
  // Test fixture: a wrong lambda coefficient must make verify fail.
  verify->add_option("--lambda-coefficient", lambda_coefficient)->group("");
  common(verify);

  CLI::App* sw = app.add_subcommand("sweep", "Cost-versus-E curves for a distribution family");
  sw->add_option("--family", sweep.family, "two_point|fixed_t_counterexample|adversarial_density|"
                                           "variance_counterexample|constant")
      ->required();
  sw->add_option("--E-min", sweep.E_min)->required();
  sw->add_option("--E-max", sweep.E_max)->required();
  sw->add_option("--E-step", sweep.E_step);
  sw->add_option("--schedules", sweep.schedules, "Comma-separated schedule kinds")->delimiter(',');
  sw->add_option("--law", sweep_law)->check(CLI::IsMember({"deterministic", "geometric"}));
  sw->add_option("--t-factor", sweep.t_factor, "fixed_t_counterexample: t = factor * E + offset");
  sw->add_option("--t-offset", sweep.t_offset);
  sw->add_option("--V-factor", sweep.V_factor, "variance_counterexample: V = factor * 2E^2 e^-E");
  sw->add_option("--threshold", threshold, "single_threshold t (defaults to the family's t)");
  sw->add_option("--eps-tail", sweep.eps_tail);
  common(sw);

  CLI::App* demo = app.add_subcommand("demo", "Run the resumable demo processes end to end");
  demo->add_option("--seed", seed);
  demo->add_option("--trials", trials);
  common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  CommonOptions opts;
  opts.format = parse_format(format);
  opts.seed = seed;
  opts.trials = trials;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << out_path << " for writing\n";
      return kExitConfig;
    }
    sink = &file;
  }

  if (*analyze || *simulate) {
    std::vector<ExperimentConfig> configs;
    try {
      configs = load_config(config_path);
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      return kExitConfig;
    }
    return *analyze ? cmd_analyze(configs, opts, *sink, err) : cmd_simulate(configs, opts, *sink, err);
  }
  if (*verify) return cmd_verify(scope, opts, *sink, err, lambda_coefficient);
  if (*sw) {
    sweep.law = parse_law(sweep_law);
    sweep.threshold = threshold;
    std::erase_if(sweep.schedules, [](const std::string& s) { return s.empty(); });
    return cmd_sweep(sweep, opts, *sink, err);
  }
  return cmd_demo(opts, *sink, err);
}

}  // namespace vegas::cli
