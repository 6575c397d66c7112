#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "dltbandit/errors.hpp"
#include "dltbandit/io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace dltbandit {
namespace {

const char* kMinimal = R"({"N":4, "z":[1,2,9,16], "omega":[1,2,9,16], "t_cm":1, "t_cp":4,
                           "algorithm":"ts_exhaustive", "trials":5000, "seed":7})";

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dltbandit_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

std::string slurp(const fs::path& p) { return read_file(p); }

TEST(LoadConfig, MinimalConfigGetsDefaults) {
  const auto c = parse_config(kMinimal);
  EXPECT_EQ(c.system.n_workers(), 4u);
  EXPECT_EQ(c.window, 100u);
  EXPECT_EQ(c.trials, 5000u);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.mode, Mode::time_invariant);
  EXPECT_EQ(c.algorithm, Algorithm::ts_exhaustive);
  EXPECT_EQ(c.normalizer.strategy, NormalizerStrategy::single_processor_estimate);
  EXPECT_EQ(c.hill_climb.restarts, 20u);
  EXPECT_EQ(c.batch.batch_count, 2u);
  EXPECT_EQ(c.background.min_jobs, 10);
}

TEST(LoadConfig, TrialDefaultsDependOnMode) {
  auto j = json::parse(kMinimal);
  j.erase("trials");
  EXPECT_EQ(parse_config(j.dump()).trials, 5000u);
  j["mode"] = "time_varying";
  EXPECT_EQ(parse_config(j.dump()).trials, 4000u);
  j["trials"] = 40;
  EXPECT_EQ(parse_config(j.dump()).window, 40u);
}

TEST(LoadConfig, RejectsNonPositiveSpeeds) {
  auto j = json::parse(kMinimal);
  j.erase("N");
  j["omega"] = {0, 1};
  j["z"] = {1, 1};
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
}

TEST(LoadConfig, UnknownKeysAreNamed) {
  auto j = json::parse(kMinimal);
  j["foo"] = 1;
  try {
    parse_config(j.dump());
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("foo"), std::string::npos);
  }
  j.erase("foo");
  j["hill_climb"] = {{"restarts", 3}, {"sweeps", 2}};
  try {
    parse_config(j.dump());
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("hill_climb.sweeps"), std::string::npos);
  }
}

TEST(LoadConfig, SchemaViolations) {
  const std::vector<std::pair<std::string, json>> bad{
      {"algorithm", "greedy"}, {"mode", "sometimes"}, {"trials", -1}, {"trials", 2.5},
      {"window", 6000},        {"N", 3},              {"z", "fast"},  {"t_cm", 0},
      {"normalizer", {{"strategy", "fixed_bound"}}},
      {"background", {{"min_jobs", 20}, {"max_jobs", 10}}},
      {"batch", {{"batch_count", 1}}}};
  for (const auto& [key, value] : bad) {
    auto j = json::parse(kMinimal);
    j[key] = value;
    EXPECT_THROW(parse_config(j.dump()), ConfigError) << key << " = " << value.dump();
  }
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  auto j = json::parse(kMinimal);
  j.erase("t_cp");
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
}

TEST(LoadConfig, RoundTripThroughJson) {
  auto j = json::parse(kMinimal);
  j["mode"] = "time_varying";
  j["normalizer"] = {{"strategy", "fixed_bound"}, {"value", 12.5}};
  j["background"] = {{"min_jobs", 0}, {"max_jobs", 3}, {"horizon", 12.5},
                     {"redraw", "single_draw"}, {"horizon_behavior", "cycle"}};
  const auto a = parse_config(j.dump());
  const auto b = parse_config(config_to_json(a));
  EXPECT_EQ(config_to_json(a), config_to_json(b));
  EXPECT_EQ(config_digest(a), config_digest(b));
  auto c = a;
  c.seed += 1;
  EXPECT_NE(config_digest(a), config_digest(c));
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(80.0), "80");
  EXPECT_EQ(format_double(25.0 / 7.0), "3.5714285714285716");
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(g);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST_F(IoTest, TrialsCsvTwoLineExample) {
  TrialRecord r;
  r.trial = 1;
  r.sequence = Sequence::identity(2);
  r.makespan = 25.0 / 7.0;
  r.tf_max = 80.0;
  r.reward = r.makespan / r.tf_max;
  r.bernoulli = false;
  EXPECT_NEAR(r.makespan, 3.5714286, 1e-7);
  EXPECT_NEAR(r.reward, 0.0446429, 1e-7);
  const std::vector<TrialRecord> one{r};
  emit_trials_csv(one, dir_ / "trials.csv");
  EXPECT_EQ(slurp(dir_ / "trials.csv"),
            "trial,sequence,makespan,reward,bernoulli,tf_max\n"
            "1,1-2,3.5714285714285716,0.044642857142857144,0,80\n");
}

TEST_F(IoTest, TrialsCsvErrors) {
  EXPECT_THROW(emit_trials_csv({}, dir_ / "empty.csv"), IoError);
  TrialRecord r;
  r.trial = 1;
  r.sequence = Sequence::identity(1);
  r.makespan = r.tf_max = 1.0;
  const std::vector<TrialRecord> one{r};
  EXPECT_THROW(emit_trials_csv(one, dir_ / "missing" / "dir" / "t.csv"), IoError);
  write_file(dir_ / "bad.csv", "trial,sequence\n1,1\n");
  EXPECT_THROW(read_trials_csv(dir_ / "bad.csv"), IoError);
}

TEST_F(IoTest, TrialsCsvRoundTrip) {
  ExperimentConfig c = parse_config(kMinimal);
  c.trials = 300;
  c.mode = Mode::time_varying;
  c.algorithm = Algorithm::ts_weights;
  const auto r = run_experiment(c);
  emit_trials_csv(r.records, dir_ / "t.csv");
  const auto back = read_trials_csv(dir_ / "t.csv");
  ASSERT_EQ(back.size(), r.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].trial, r.records[i].trial);
    EXPECT_EQ(back[i].sequence, r.records[i].sequence);
    EXPECT_EQ(back[i].bernoulli, r.records[i].bernoulli);
    EXPECT_NEAR(back[i].makespan, r.records[i].makespan, 1e-9 * r.records[i].makespan);
    EXPECT_NEAR(back[i].reward, r.records[i].reward, 1e-9);
    EXPECT_NEAR(back[i].tf_max, r.records[i].tf_max, 1e-9 * r.records[i].tf_max);
  }
}

TEST_F(IoTest, SummaryWindowsAndRecomputation) {
  ExperimentConfig c = parse_config(kMinimal);
  const auto r = run_experiment(c);
  const auto e = enumerate_sequences(c.system);
  emit_summary(r.records, &e, 100, r.recommendation, dir_ / "summary.json");
  emit_trials_csv(r.records, dir_ / "trials.csv");
  const auto s = json::parse(slurp(dir_ / "summary.json"));
  ASSERT_EQ(s["windows"].size(), 50u);
  EXPECT_EQ(s["trials"], 5000);
  EXPECT_EQ(s["optimal_sequence"], "1-2-3-4");
  EXPECT_EQ(s["recommended_sequence"], r.recommendation.sequence.to_string());

  // Recompute every window from the CSV alone.
  const auto csv = read_trials_csv(dir_ / "trials.csv");
  const double best = s["t_f_star"].get<double>();
  EXPECT_EQ(best, e.front().makespan);
  double cumulative = 0.0;
  for (const auto& rec : csv) cumulative += rec.makespan - best;
  EXPECT_NEAR(s["cumulative_regret"].get<double>(), cumulative, 1e-12 * std::abs(cumulative));
  for (std::size_t w = 0; w < 50; ++w) {
    double sum = 0.0;
    for (std::size_t t = w * 100; t < (w + 1) * 100; ++t) sum += csv[t].makespan;
    const auto& win = s["windows"][w];
    EXPECT_EQ(win["first_trial"], w * 100 + 1);
    EXPECT_EQ(win["last_trial"], (w + 1) * 100);
    EXPECT_NEAR(win["mean_makespan"].get<double>(), sum / 100.0, 1e-12);
    EXPECT_NEAR(win["mean_regret"].get<double>(), sum / 100.0 - best, 1e-12);
  }

  emit_summary(r.records, &e, 6000, std::nullopt, dir_ / "one.json");
  EXPECT_EQ(json::parse(slurp(dir_ / "one.json"))["windows"].size(), 1u);

  emit_summary(r.records, nullptr, 100, std::nullopt, dir_ / "noopt.json");
  const auto n = json::parse(slurp(dir_ / "noopt.json"));
  EXPECT_TRUE(n["t_f_star"].is_null());
  EXPECT_TRUE(n["windows"][0]["mean_regret"].is_null());
}

TEST_F(IoTest, PosteriorRoundTripAllAlgorithms) {
  for (auto a : {Algorithm::ts_exhaustive, Algorithm::ts_weights, Algorithm::ts_hillclimb,
                 Algorithm::ts_batch, Algorithm::random_baseline}) {
    ExperimentConfig c = parse_config(kMinimal);
    c.algorithm = a;
    c.trials = 250;
    c.window = 50;
    c.batch = {2, 2, 40};
    c.hill_climb = {3, 10, true};
    c.normalizer.strategy = NormalizerStrategy::adaptive_max_observed;
    Experiment e(c);
    e.run_to(250);
    save_posterior(e.state(), dir_ / "p.json");
    const auto back = load_posterior(dir_ / "p.json");
    EXPECT_EQ(back, e.state()) << to_string(a);
    EXPECT_EQ(posterior_json(back), slurp(dir_ / "p.json"));
    const Experiment restored(c, back);
    EXPECT_EQ(restored.recommendation().sequence, e.recommendation().sequence);
    EXPECT_EQ(restored.recommendation().trained, e.recommendation().trained);
  }
}

TEST_F(IoTest, PosteriorValidation) {
  ExperimentConfig c = parse_config(kMinimal);
  c.trials = 50;
  c.window = 50;
  Experiment e(c);
  e.run_to(50);
  auto j = json::parse(posterior_json(e.state()));

  auto tampered = j;
  tampered["arm_table"]["arms"][0]["alpha"] = -1.0;
  EXPECT_THROW(parse_posterior(tampered.dump()), ConfigError);

  auto version = j;
  version["format_version"] = 99;
  EXPECT_THROW(parse_posterior(version.dump()), VersionMismatch);

  auto unknown = j;
  unknown["extra"] = true;
  EXPECT_THROW(parse_posterior(unknown.dump()), ConfigError);
}

TEST_F(IoTest, ManifestRoundTripAndDigestCheck) {
  const ExperimentConfig c = parse_config(kMinimal);
  RunManifest m;
  m.config_digest = config_digest(c);
  m.root_seed = c.seed;
  m.started_utc = "2026-01-01T00:00:00Z";
  m.finished_utc = "2026-01-01T00:00:01Z";
  m.config_json = config_to_json(c);
  m.outputs = {{"trials.csv", sha256_hex("abc")}};
  write_manifest(m, dir_ / "manifest.json");
  const auto back = read_manifest(dir_ / "manifest.json");
  EXPECT_EQ(back.config_digest, m.config_digest);
  EXPECT_EQ(back.root_seed, 7u);
  EXPECT_EQ(back.artifact_version, std::string(kArtifactVersion));
  ASSERT_EQ(back.outputs.size(), 1u);
  EXPECT_EQ(back.outputs[0].sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(config_to_json(manifest_config(back)), config_to_json(c));

  auto bad = back;
  bad.config_digest = std::string(64, '0');
  EXPECT_THROW(manifest_config(bad), ConfigError);
}

}  // namespace
}  // namespace dltbandit
