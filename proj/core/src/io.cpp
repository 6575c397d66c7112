#include "dltbandit/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dltbandit/errors.hpp"
#include "json.hpp"

namespace dltbandit {

using nlohmann::json;

namespace {

// --- strict JSON field access ----------------------------------------------

class Fields {
 public:
  Fields(const json& obj, std::string prefix, std::set<std::string> allowed)
      : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) throw ConfigError(where("") + " must be a JSON object");
    for (const auto& [key, value] : obj_.items()) {
      if (!allowed.contains(key)) throw ConfigError("unknown key '" + prefix_ + key + "'");
    }
  }

  bool has(const std::string& key) const { return obj_.contains(key); }
  const json& raw(const std::string& key) const { return obj_.at(key); }

  const json& require(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing key '" + prefix_ + key + "'");
    return obj_.at(key);
  }

  double number(const std::string& key) const {
    const json& v = require(key);
    if (!v.is_number()) throw ConfigError(where(key) + " must be a number");
    return v.get<double>();
  }

  std::uint64_t unsigned_integer(const std::string& key) const {
    const json& v = require(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
      throw ConfigError(where(key) + " must be non-negative");
    }
    throw ConfigError(where(key) + " must be an integer");
  }

  int integer(const std::string& key) const {
    const json& v = require(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + " must be an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& key) const {
    const json& v = require(key);
    if (!v.is_boolean()) throw ConfigError(where(key) + " must be true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) const {
    const json& v = require(key);
    if (!v.is_string()) throw ConfigError(where(key) + " must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const json& v = require(key);
    if (!v.is_array()) throw ConfigError(where(key) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(where(key) + " must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::string where(const std::string& key) const { return "key '" + prefix_ + key + "'"; }

 private:
  const json& obj_;
  std::string prefix_;
};

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string to_string(NormalizerStrategy s) {
  switch (s) {
    case NormalizerStrategy::single_processor_estimate: return "single_processor_estimate";
    case NormalizerStrategy::fixed_bound: return "fixed_bound";
    case NormalizerStrategy::adaptive_max_observed: return "adaptive_max_observed";
  }
  return "unknown";
}

std::string to_string(Redraw r) {
  return r == Redraw::per_unit_interval ? "per_unit_interval" : "single_draw";
}

std::string to_string(HorizonBehavior h) {
  return h == HorizonBehavior::hold_last ? "hold_last" : "cycle";
}

json config_object(const ExperimentConfig& c) {
  json j;
  j["N"] = c.system.n_workers();
  j["z"] = c.system.z;
  j["omega"] = c.system.omega;
  j["t_cm"] = c.system.t_cm;
  j["t_cp"] = c.system.t_cp;
  j["control_computes"] = c.system.control_computes;
  j["omega0"] = c.system.omega0;
  j["mode"] = to_string(c.mode);
  j["algorithm"] = to_string(c.algorithm);
  j["trials"] = c.trials;
  j["window"] = c.window;
  j["seed"] = c.seed;
  j["arm_cap"] = c.arm_cap;
  j["normalizer"] = {{"strategy", to_string(c.normalizer.strategy)}};
  if (c.normalizer.strategy == NormalizerStrategy::fixed_bound) {
    j["normalizer"]["value"] = c.normalizer.value;
  }
  j["hill_climb"] = {{"restarts", c.hill_climb.restarts},
                     {"iterations", c.hill_climb.iterations},
                     {"early_stop", c.hill_climb.early_stop}};
  j["batch"] = {{"batch_count", c.batch.batch_count},
                {"leaf_threshold", c.batch.leaf_threshold},
                {"trials_per_phase", c.batch.trials_per_phase}};
  j["background"] = {{"min_jobs", c.background.min_jobs},
                     {"max_jobs", c.background.max_jobs},
                     {"horizon", c.background.horizon},
                     {"redraw", to_string(c.background.redraw)},
                     {"horizon_behavior", to_string(c.background.horizon_behavior)}};
  return j;
}

ExperimentConfig config_from_object(const json& j) {
  const Fields f(j, "",
                 {"N", "z", "omega", "t_cm", "t_cp", "control_computes", "omega0", "mode",
                  "algorithm", "trials", "window", "seed", "arm_cap", "normalizer",
                  "hill_climb", "batch", "background"});
  ExperimentConfig c;
  c.system.z = f.numbers("z");
  c.system.omega = f.numbers("omega");
  if (f.has("N") && f.unsigned_integer("N") != c.system.omega.size()) {
    throw ConfigError("key 'N' does not match the length of 'omega'");
  }
  c.system.t_cm = f.number("t_cm");
  c.system.t_cp = f.number("t_cp");
  if (f.has("control_computes")) c.system.control_computes = f.boolean("control_computes");
  if (f.has("omega0")) c.system.omega0 = f.number("omega0");

  if (f.has("mode")) {
    auto m = parse_mode(f.string("mode"));
    if (!m) throw ConfigError("key 'mode' must be time_invariant or time_varying");
    c.mode = *m;
  }
  auto a = parse_algorithm(f.string("algorithm"));
  if (!a) {
    throw ConfigError(
        "key 'algorithm' must be one of ts_exhaustive, ts_weights, ts_hillclimb, ts_batch, "
        "random_baseline");
  }
  c.algorithm = *a;
  c.trials = f.has("trials") ? f.unsigned_integer("trials")
                             : (c.mode == Mode::time_varying ? 4000 : 5000);
  c.window = f.has("window") ? f.unsigned_integer("window")
                             : std::min<std::size_t>(100, std::max<std::size_t>(c.trials, 1));
  if (f.has("seed")) c.seed = f.unsigned_integer("seed");
  if (f.has("arm_cap")) c.arm_cap = f.unsigned_integer("arm_cap");

  if (f.has("normalizer")) {
    const Fields n(f.raw("normalizer"), "normalizer.", {"strategy", "value"});
    const std::string s = n.string("strategy");
    if (s == "single_processor_estimate") {
      c.normalizer.strategy = NormalizerStrategy::single_processor_estimate;
    } else if (s == "fixed_bound") {
      c.normalizer.strategy = NormalizerStrategy::fixed_bound;
      c.normalizer.value = n.number("value");
    } else if (s == "adaptive_max_observed") {
      c.normalizer.strategy = NormalizerStrategy::adaptive_max_observed;
    } else {
      throw ConfigError("key 'normalizer.strategy' has unknown value '" + s + "'");
    }
    if (c.normalizer.strategy != NormalizerStrategy::fixed_bound && n.has("value")) {
      throw ConfigError("key 'normalizer.value' only applies to fixed_bound");
    }
  }
  if (f.has("hill_climb")) {
    const Fields h(f.raw("hill_climb"), "hill_climb.", {"restarts", "iterations", "early_stop"});
    if (h.has("restarts")) c.hill_climb.restarts = h.unsigned_integer("restarts");
    if (h.has("iterations")) c.hill_climb.iterations = h.unsigned_integer("iterations");
    if (h.has("early_stop")) c.hill_climb.early_stop = h.boolean("early_stop");
  }
  if (f.has("batch")) {
    const Fields b(f.raw("batch"), "batch.", {"batch_count", "leaf_threshold", "trials_per_phase"});
    if (b.has("batch_count")) c.batch.batch_count = b.unsigned_integer("batch_count");
    if (b.has("leaf_threshold")) c.batch.leaf_threshold = b.unsigned_integer("leaf_threshold");
    if (b.has("trials_per_phase")) c.batch.trials_per_phase = b.unsigned_integer("trials_per_phase");
  }
  if (f.has("background")) {
    const Fields g(f.raw("background"), "background.",
                   {"min_jobs", "max_jobs", "horizon", "redraw", "horizon_behavior"});
    if (g.has("min_jobs")) c.background.min_jobs = g.integer("min_jobs");
    if (g.has("max_jobs")) c.background.max_jobs = g.integer("max_jobs");
    if (g.has("horizon")) c.background.horizon = g.number("horizon");
    if (g.has("redraw")) {
      const std::string r = g.string("redraw");
      if (r == "per_unit_interval") {
        c.background.redraw = Redraw::per_unit_interval;
      } else if (r == "single_draw") {
        c.background.redraw = Redraw::single_draw;
      } else {
        throw ConfigError("key 'background.redraw' has unknown value '" + r + "'");
      }
    }
    if (g.has("horizon_behavior")) {
      const std::string h = g.string("horizon_behavior");
      if (h == "hold_last") {
        c.background.horizon_behavior = HorizonBehavior::hold_last;
      } else if (h == "cycle") {
        c.background.horizon_behavior = HorizonBehavior::cycle;
      } else {
        throw ConfigError("key 'background.horizon_behavior' has unknown value '" + h + "'");
      }
    }
  }
  c.batch.arm_cap = c.arm_cap;
  c.validate();
  return c;
}

// --- posterior ---------------------------------------------------------------

json beta_json(const BetaParams& p) { return {{"alpha", p.alpha}, {"beta", p.beta}}; }

BetaParams beta_from(const json& j, const std::string& where) {
  const Fields f(j, where, {"alpha", "beta"});
  BetaParams p{f.number("alpha"), f.number("beta")};
  if (!p.valid() || !std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
    throw ConfigError("key '" + where + "' has negative Beta parameters");
  }
  if (!p.proper()) throw ConfigError("key '" + where + "' has a zero Beta parameter");
  return p;
}

std::vector<int> ints_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError("key '" + where + "' must be an array of integers");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ConfigError("key '" + where + "' must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

json batch_json(const BatchState& b) {
  json nodes = json::array();
  for (const auto& nd : b.nodes) {
    nodes.push_back({{"workers", nd.workers}, {"children", nd.children}, {"order", nd.order}});
  }
  json weights = json::array();
  for (const auto& p : b.weights) weights.push_back(beta_json(p));
  return {{"config",
           {{"batch_count", b.config.batch_count},
            {"leaf_threshold", b.config.leaf_threshold},
            {"trials_per_phase", b.config.trials_per_phase},
            {"arm_cap", b.config.arm_cap}}},
          {"n_workers", b.n_workers},
          {"nodes", nodes},
          {"pending", b.pending},
          {"active", b.active},
          {"trials_in_phase", b.trials_in_phase},
          {"phases_completed", b.phases_completed},
          {"weights", weights},
          {"candidate", b.candidate}};
}

BatchState batch_from(const json& j) {
  const Fields f(j, "batch.",
                 {"config", "n_workers", "nodes", "pending", "active", "trials_in_phase",
                  "phases_completed", "weights", "candidate"});
  BatchState b;
  const Fields c(f.require("config"), "batch.config.",
                 {"batch_count", "leaf_threshold", "trials_per_phase", "arm_cap"});
  b.config.batch_count = c.unsigned_integer("batch_count");
  b.config.leaf_threshold = c.unsigned_integer("leaf_threshold");
  b.config.trials_per_phase = c.unsigned_integer("trials_per_phase");
  b.config.arm_cap = c.unsigned_integer("arm_cap");
  b.n_workers = f.unsigned_integer("n_workers");
  for (const auto& nj : f.require("nodes")) {
    const Fields nf(nj, "batch.nodes[].", {"workers", "children", "order"});
    BatchNode nd;
    nd.workers = ints_from(nf.require("workers"), "batch.nodes[].workers");
    nd.children = ints_from(nf.require("children"), "batch.nodes[].children");
    nd.order = ints_from(nf.require("order"), "batch.nodes[].order");
    b.nodes.push_back(std::move(nd));
  }
  b.pending = ints_from(f.require("pending"), "batch.pending");
  b.active = f.integer("active");
  b.trials_in_phase = f.unsigned_integer("trials_in_phase");
  b.phases_completed = f.unsigned_integer("phases_completed");
  for (const auto& wj : f.require("weights")) b.weights.push_back(beta_from(wj, "batch.weights[]"));
  b.candidate = ints_from(f.require("candidate"), "batch.candidate");
  return b;
}


}  // namespace

// --- public API --------------------------------------------------------------

ExperimentConfig parse_config(std::string_view json_text) {
  return config_from_object(parse_json(json_text, "config"));
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

std::string config_to_json(const ExperimentConfig& cfg) {
  return config_object(cfg).dump(2) + "\n";
}

std::string config_digest(const ExperimentConfig& cfg) {
  return sha256_hex(config_object(cfg).dump());
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw IoError("cannot format number");
  return std::string(buf, ptr);
}

void emit_trials_csv(std::span<const TrialRecord> records, const std::filesystem::path& path) {
  if (records.empty()) throw IoError("no trial records to write");
  std::string out = "trial,sequence,makespan,reward,bernoulli,tf_max\n";
  for (const auto& r : records) {
    out += std::to_string(r.trial);
    out += ',';
    out += r.sequence.to_string();
    out += ',';
    out += format_double(r.makespan);
    out += ',';
    out += format_double(r.reward);
    out += ',';
    out += r.bernoulli ? '1' : '0';
    out += ',';
    out += format_double(r.tf_max);
    out += '\n';
  }
  write_file(path, out);
}

std::vector<TrialRecord> read_trials_csv(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "trial,sequence,makespan,reward,bernoulli,tf_max") {
    throw IoError(path.string() + ": unexpected CSV header");
  }
  std::vector<TrialRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    auto bad = [&]() {
      return IoError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
    };
    if (cells.size() != 6) throw bad();
    auto num = [&](std::string_view s) {
      double v = 0.0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size()) throw bad();
      return v;
    };
    TrialRecord r;
    auto [p, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), r.trial);
    if (ec != std::errc() || p != cells[0].data() + cells[0].size()) throw bad();
    try {
      r.sequence = Sequence::parse(cells[1]);
    } catch (const std::invalid_argument&) {
      throw bad();
    }
    r.makespan = num(cells[2]);
    r.reward = num(cells[3]);
    if (cells[4] != "0" && cells[4] != "1") throw bad();
    r.bernoulli = cells[4] == "1";
    r.tf_max = num(cells[5]);
    records.push_back(std::move(r));
  }
  return records;
}

std::string summary_json(std::span<const TrialRecord> records,
                         const std::vector<EnumeratedSequence>* enumeration, std::size_t window,
                         const std::optional<Recommendation>& recommendation) {
  std::optional<double> t_f_star;
  if (enumeration && !enumeration->empty()) t_f_star = enumeration->front().makespan;
  const RegretReport rep = regret_report(records, window, t_f_star);

  json j;
  j["trials"] = records.size();
  j["window"] = rep.windows.empty() ? window
                                    : rep.windows.front().last_trial - rep.windows.front().first_trial + 1;
  j["t_f_star"] = t_f_star ? json(*t_f_star) : json(nullptr);
  if (enumeration && !enumeration->empty()) {
    j["optimal_sequence"] = enumeration->front().sequence.to_string();
    j["worst_sequence"] = enumeration->back().sequence.to_string();
    j["worst_makespan"] = enumeration->back().makespan;
  } else {
    j["optimal_sequence"] = nullptr;
    j["worst_sequence"] = nullptr;
    j["worst_makespan"] = nullptr;
  }
  j["cumulative_regret"] = rep.cumulative ? json(*rep.cumulative) : json(nullptr);
  json windows = json::array();
  for (const auto& w : rep.windows) {
    windows.push_back({{"first_trial", w.first_trial},
                       {"last_trial", w.last_trial},
                       {"mean_makespan", w.mean_makespan},
                       {"mean_regret", w.mean_regret ? json(*w.mean_regret) : json(nullptr)}});
  }
  j["windows"] = windows;
  if (recommendation) {
    j["recommended_sequence"] = recommendation->sequence.to_string();
    j["recommendation_trained"] = recommendation->trained;
  } else {
    j["recommended_sequence"] = nullptr;
    j["recommendation_trained"] = nullptr;
  }
  return j.dump(2) + "\n";
}

void emit_summary(std::span<const TrialRecord> records,
                  const std::vector<EnumeratedSequence>* enumeration, std::size_t window,
                  const std::optional<Recommendation>& recommendation,
                  const std::filesystem::path& path) {
  write_file(path, summary_json(records, enumeration, window, recommendation));
}

std::string posterior_json(const ExperimentState& s) {
  json j;
  j["format_version"] = kSnapshotVersion;
  j["algorithm"] = to_string(s.algorithm);
  j["n_workers"] = s.n_workers;
  j["trials_done"] = s.trials_done;
  if (s.arms) {
    json arms = json::array();
    for (const auto& [seq, p] : s.arms->touched()) {
      arms.push_back({{"sequence", seq.to_string()}, {"alpha", p.alpha}, {"beta", p.beta}});
    }
    j["arm_table"] = {{"prior", beta_json(s.arms->prior())},
                      {"cap", s.arms->cap()},
                      {"arms", arms}};
  }
  if (s.weights) {
    json entries = json::array();
    for (const auto& p : s.weights->params()) entries.push_back(beta_json(p));
    j["weight_vector"] = {{"prior", beta_json(s.weights->prior())}, {"entries", entries}};
  }
  if (s.batch) j["batch"] = batch_json(*s.batch);
  j["normalizer_max_observed"] = s.max_observed ? json(*s.max_observed) : json(nullptr);
  j["rng_streams"] = s.rng_streams;
  return j.dump(2) + "\n";
}

ExperimentState parse_posterior(std::string_view json_text) {
  const json j = parse_json(json_text, "posterior snapshot");
  if (!j.is_object() || !j.contains("format_version")) {
    throw ConfigError("posterior snapshot lacks format_version");
  }
  if (!j["format_version"].is_number_integer() ||
      j["format_version"].get<int>() != kSnapshotVersion) {
    throw VersionMismatch("posterior snapshot format_version " + j["format_version"].dump() +
                          " is not supported (expected " + std::to_string(kSnapshotVersion) +
                          ")");
  }
  const Fields f(j, "",
                 {"format_version", "algorithm", "n_workers", "trials_done", "arm_table",
                  "weight_vector", "batch", "normalizer_max_observed", "rng_streams"});
  ExperimentState s;
  auto a = parse_algorithm(f.string("algorithm"));
  if (!a) throw ConfigError("key 'algorithm' is not a known algorithm");
  s.algorithm = *a;
  s.n_workers = f.unsigned_integer("n_workers");
  s.trials_done = f.unsigned_integer("trials_done");
  if (f.has("arm_table")) {
    const Fields t(f.raw("arm_table"), "arm_table.", {"prior", "cap", "arms"});
    ArmTable table(s.n_workers, beta_from(t.require("prior"), "arm_table.prior"),
                   t.unsigned_integer("cap"));
    for (const auto& arm : t.require("arms")) {
      const Fields af(arm, "arm_table.arms[].", {"sequence", "alpha", "beta"});
      Sequence seq;
      try {
        seq = Sequence::parse(af.string("sequence"));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("key 'arm_table.arms[].sequence': ") + e.what());
      }
      table.set(seq, beta_from(json{{"alpha", arm["alpha"]}, {"beta", arm["beta"]}},
                               "arm_table.arms[]"));
    }
    s.arms = std::move(table);
  }
  if (f.has("weight_vector")) {
    const Fields w(f.raw("weight_vector"), "weight_vector.", {"prior", "entries"});
    std::vector<BetaParams> params;
    for (const auto& e : w.require("entries")) {
      params.push_back(beta_from(e, "weight_vector.entries[]"));
    }
    s.weights = WeightVector(s.n_workers, std::move(params),
                             beta_from(w.require("prior"), "weight_vector.prior"));
  }
  if (f.has("batch")) s.batch = batch_from(f.raw("batch"));
  if (f.has("normalizer_max_observed") && !f.raw("normalizer_max_observed").is_null()) {
    s.max_observed = f.number("normalizer_max_observed");
  }
  const json& streams = f.require("rng_streams");
  if (!streams.is_object()) throw ConfigError("key 'rng_streams' must be an object");
  for (const auto& [name, state] : streams.items()) {
    if (!state.is_string()) throw ConfigError("key 'rng_streams." + name + "' must be a string");
    s.rng_streams[name] = state.get<std::string>();
  }

  const bool need_arms = s.algorithm == Algorithm::ts_exhaustive;
  const bool need_weights =
      s.algorithm == Algorithm::ts_weights || s.algorithm == Algorithm::ts_hillclimb;
  const bool need_batch = s.algorithm == Algorithm::ts_batch;
  if (need_arms != s.arms.has_value() || need_weights != s.weights.has_value() ||
      need_batch != s.batch.has_value()) {
    throw ConfigError("posterior state does not match algorithm " + to_string(s.algorithm));
  }
  return s;
}

void save_posterior(const ExperimentState& state, const std::filesystem::path& path) {
  write_file(path, posterior_json(state));
}

ExperimentState load_posterior(const std::filesystem::path& path) {
  return parse_posterior(read_file(path));
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
  json outputs = json::array();
  for (const auto& o : m.outputs) outputs.push_back({{"file", o.name}, {"sha256", o.sha256}});
  json j;
  j["artifact_version"] = m.artifact_version;
  j["config_digest"] = m.config_digest;
  j["root_seed"] = m.root_seed;
  j["started_utc"] = m.started_utc;
  j["finished_utc"] = m.finished_utc;
  j["config"] = parse_json(m.config_json, "manifest config");
  j["outputs"] = outputs;
  write_file(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
  const json j = parse_json(read_file(path), "manifest");
  const Fields f(j, "",
                 {"artifact_version", "config_digest", "root_seed", "started_utc",
                  "finished_utc", "config", "outputs"});
  RunManifest m;
  m.artifact_version = f.string("artifact_version");
  m.config_digest = f.string("config_digest");
  m.root_seed = f.unsigned_integer("root_seed");
  m.started_utc = f.string("started_utc");
  m.finished_utc = f.string("finished_utc");
  m.config_json = f.require("config").dump(2);
  for (const auto& o : f.require("outputs")) {
    const Fields of(o, "outputs[].", {"file", "sha256"});
    m.outputs.push_back({of.string("file"), of.string("sha256")});
  }
  return m;
}

ExperimentConfig manifest_config(const RunManifest& manifest) {
  ExperimentConfig cfg = parse_config(manifest.config_json);
  if (config_digest(cfg) != manifest.config_digest) {
    throw ConfigError("manifest config does not match its digest");
  }
  return cfg;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace dltbandit
