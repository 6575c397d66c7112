// dltsim: divisible-load sequencing simulator.
//
//   dltsim solve     --config c.json [--sequence 1-2-3-4] [--seed S] [--out-dir D]
//   dltsim enumerate --config c.json [--out-dir D]
//   dltsim train     --config c.json | --manifest m.json  --out-dir D [--seed S]
//                    [--trials T] [--resume posterior.json]
//   dltsim report    --trials-csv trials.csv [--config c.json] [--window W]
//                    [--posterior p.json] [--out-dir D]
//
// Exit codes: 0 ok, 1 other error, 2 configuration error, 3 solver failure,
// 4 capacity error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dltbandit/errors.hpp"
#include "dltbandit/harness.hpp"
#include "dltbandit/io.hpp"
#include "dltbandit/schedule.hpp"

namespace fs = std::filesystem;
using namespace dltbandit;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool config_required) {
  auto* c = cmd->add_option("--config", o.config, "Experiment configuration (JSON)");
  if (config_required) c->required();
  cmd->add_option("--seed", o.seed, "Override the root seed");
  cmd->add_option("--out-dir", o.out_dir, "Directory for output files");
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

ExperimentConfig resolve(const CommonOptions& o) {
  ExperimentConfig cfg = load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  return cfg;
}

fs::path ensure_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create " + p.string() + ": " + ec.message());
  return p;
}

int run_solve(const CommonOptions& o, const std::string& sequence_text) {
  const ExperimentConfig cfg = resolve(o);
  const std::size_t n = cfg.system.n_workers();
  Sequence seq = Sequence::identity(n);
  if (!sequence_text.empty()) {
    try {
      seq = Sequence::parse(sequence_text);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--sequence: ") + e.what());
    }
    if (seq.size() != n) throw ConfigError("--sequence must name all " + std::to_string(n) + " workers");
  }

  ScheduleResult r;
  if (cfg.mode == Mode::time_varying) {
    Rng rng = make_stream(cfg.seed, Stream::traces);
    const SystemTraces traces = generate_traces(cfg.background, cfg.system, rng);
    r = solve_time_varying(cfg.system, traces, seq);
  } else {
    r = solve_time_invariant(cfg.system, seq);
  }

  std::string kappa = "kappa=(";
  for (std::size_t i = 0; i < n; ++i) kappa += (i ? ", " : "") + fixed6(r.kappa[i]);
  kappa += ")";
  std::cout << "mode: " << to_string(cfg.mode) << "\n";
  std::cout << "sequence: " << seq.to_string() << "\n";
  std::cout << kappa << "\n";
  if (cfg.system.control_computes) std::cout << "kappa0=" << fixed6(r.control_kappa) << "\n";
  std::cout << "T_f=" << fixed6(r.makespan) << "\n";
  std::cout << "position  processor  kappa      finish      omega_eq    z_eq\n";
  for (std::size_t p = 0; p < n; ++p) {
    const int w = seq[p];
    std::printf("%-9zu P%-9d %-10s %-11s %-11s %s\n", p + 1, w + 1, fixed6(r.kappa[w]).c_str(),
                fixed6(r.finish_times[w]).c_str(), fixed6(r.equivalent_omega[w]).c_str(),
                fixed6(r.equivalent_z[w]).c_str());
  }
  std::fflush(stdout);

  if (!o.out_dir.empty()) {
    const fs::path dir = ensure_out_dir(o.out_dir);
    std::string csv = "processor,position,kappa,finish_time,omega_eq,z_eq\n";
    for (std::size_t p = 0; p < n; ++p) {
      const int w = seq[p];
      csv += std::to_string(w + 1) + "," + std::to_string(p + 1) + "," + format_double(r.kappa[w]) +
             "," + format_double(r.finish_times[w]) + "," + format_double(r.equivalent_omega[w]) +
             "," + format_double(r.equivalent_z[w]) + "\n";
    }
    write_file(dir / "schedule.csv", csv);
  }
  return 0;
}

int run_enumerate(const CommonOptions& o) {
  const ExperimentConfig cfg = resolve(o);
  const auto table = enumerate_sequences(cfg.system, cfg.arm_cap);
  std::cout << "rank  sequence            T_f\n";
  std::string csv = "rank,sequence,makespan\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::printf("%-5zu %-19s %s\n", i + 1, table[i].sequence.to_string().c_str(),
                fixed6(table[i].makespan).c_str());
    csv += std::to_string(i + 1) + "," + table[i].sequence.to_string() + "," +
           format_double(table[i].makespan) + "\n";
  }
  std::fflush(stdout);
  if (!o.out_dir.empty()) write_file(ensure_out_dir(o.out_dir) / "enumeration.csv", csv);
  return 0;
}

int run_train(const CommonOptions& o, const std::string& manifest_path,
              std::optional<std::size_t> trials, const std::string& resume) {
  if (o.config.empty() == manifest_path.empty()) {
    throw ConfigError("train needs exactly one of --config or --manifest");
  }
  if (o.out_dir.empty()) throw ConfigError("train needs --out-dir");
  ExperimentConfig cfg =
      manifest_path.empty() ? load_config(o.config) : manifest_config(read_manifest(manifest_path));
  if (o.seed) cfg.seed = *o.seed;
  if (trials) cfg.trials = *trials;
  cfg.validate();

  const std::string started = utc_now();
  std::optional<Experiment> exp;
  if (resume.empty()) {
    exp.emplace(cfg);
  } else {
    exp.emplace(cfg, load_posterior(resume));
  }
  exp->run_to(cfg.trials);
  if (exp->records().empty()) throw ConfigError("snapshot already covers the requested trials");

  std::optional<std::vector<EnumeratedSequence>> enumeration;
  if (cfg.mode == Mode::time_invariant && cfg.system.n_workers() <= cfg.arm_cap) {
    enumeration = enumerate_sequences(cfg.system, cfg.arm_cap);
  }

  const fs::path dir = ensure_out_dir(o.out_dir);
  emit_trials_csv(exp->records(), dir / "trials.csv");
  emit_summary(exp->records(), enumeration ? &*enumeration : nullptr, cfg.window,
               exp->recommendation(), dir / "summary.json");
  save_posterior(exp->state(), dir / "posterior.json");
  write_file(dir / "config.json", config_to_json(cfg));

  RunManifest m;
  m.config_digest = config_digest(cfg);
  m.root_seed = cfg.seed;
  m.started_utc = started;
  m.finished_utc = utc_now();
  m.config_json = config_to_json(cfg);
  for (const char* name : {"trials.csv", "summary.json", "posterior.json", "config.json"}) {
    m.outputs.push_back({name, sha256_hex(read_file(dir / name))});
  }
  write_manifest(m, dir / "manifest.json");

  const auto rep = regret_report(exp->records(), cfg.window,
                                 enumeration ? std::optional(enumeration->front().makespan)
                                             : std::nullopt);
  std::cout << "trials: " << exp->trials_done() << " (" << to_string(cfg.algorithm) << ", "
            << to_string(cfg.mode) << ", seed " << cfg.seed << ")\n";
  std::cout << "first-window mean T_f: " << fixed6(rep.windows.front().mean_makespan) << "\n";
  std::cout << "last-window mean T_f:  " << fixed6(rep.windows.back().mean_makespan) << "\n";
  if (rep.cumulative) std::cout << "cumulative regret:     " << fixed6(*rep.cumulative) << "\n";
  const auto rec = exp->recommendation();
  std::cout << "recommended sequence:  " << rec.sequence.to_string()
            << (rec.trained ? "" : " (untrained)") << "\n";
  std::cout << "outputs written to " << dir.string() << "\n";
  return 0;
}

int run_report(const CommonOptions& o, const std::string& trials_csv, std::optional<std::size_t> window,
               const std::string& posterior_path) {
  const auto records = read_trials_csv(trials_csv);
  if (records.empty()) throw IoError(trials_csv + " has no trials");

  std::optional<ExperimentConfig> cfg;
  if (!o.config.empty()) cfg = load_config(o.config);
  std::optional<std::vector<EnumeratedSequence>> enumeration;
  if (cfg && cfg->mode == Mode::time_invariant && cfg->system.n_workers() <= cfg->arm_cap) {
    enumeration = enumerate_sequences(cfg->system, cfg->arm_cap);
  }
  const std::size_t w = window.value_or(cfg ? cfg->window : 100);
  if (w < 1) throw ConfigError("--window must be >= 1");

  std::optional<Recommendation> rec;
  if (!posterior_path.empty()) {
    const ExperimentState state = load_posterior(posterior_path);
    if (state.arms) {
      rec = recommend(*state.arms);
    } else if (state.weights) {
      rec = recommend(*state.weights, cfg ? cfg->arm_cap : kDefaultArmCap);
    } else if (state.batch) {
      BatchOptimizer batch(*state.batch);
      rec = Recommendation{batch.current_sequence(), batch.phases_completed() > 0};
    }
  }

  const std::string json =
      summary_json(records, enumeration ? &*enumeration : nullptr, w, rec);
  if (o.out_dir.empty()) {
    std::cout << json;
  } else {
    write_file(ensure_out_dir(o.out_dir) / "summary.json", json);
    std::cout << "summary written to " << (fs::path(o.out_dir) / "summary.json").string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisible-load sequencing simulator with Thompson-sampling bandits"};
  app.require_subcommand(1);

  CommonOptions solve_opts, enum_opts, train_opts, report_opts;
  std::string sequence_text, manifest_path, resume_path, trials_csv, posterior_path;
  std::optional<std::size_t> trials, window;

  auto* solve = app.add_subcommand("solve", "Optimal load fractions for one sequence");
  add_common(solve, solve_opts, true);
  solve->add_option("--sequence", sequence_text, "Distribution order, e.g. 2-1-3 (default 1-2-..-N)");

  auto* enumerate = app.add_subcommand("enumerate", "Finishing time of every sequence");
  add_common(enumerate, enum_opts, true);

  auto* train = app.add_subcommand("train", "Run a seeded training experiment");
  add_common(train, train_opts, false);
  train->add_option("--manifest", manifest_path, "Replay the configuration of a previous run");
  train->add_option("--trials", trials, "Override the number of trials");
  train->add_option("--resume", resume_path, "Continue from a posterior snapshot");

  auto* report = app.add_subcommand("report", "Recompute a summary from a trials CSV");
  add_common(report, report_opts, false);
  report->add_option("--trials-csv", trials_csv, "trials.csv written by train")->required();
  report->add_option("--window", window, "Averaging window (default: config window or 100)");
  report->add_option("--posterior", posterior_path, "posterior.json for the recommendation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return run_solve(solve_opts, sequence_text);
    if (*enumerate) return run_enumerate(enum_opts);
    if (*train) return run_train(train_opts, manifest_path, trials, resume_path);
    if (*report) return run_report(report_opts, trials_csv, window, posterior_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
