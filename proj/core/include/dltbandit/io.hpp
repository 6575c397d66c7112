#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dltbandit/harness.hpp"

namespace dltbandit {

inline constexpr int kSnapshotVersion = 1;
inline constexpr std::string_view kArtifactVersion = "0.3.0";

// Parses and validates an experiment configuration (JSON). Unknown keys and
// invalid values raise ConfigError naming the key.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical JSON of a fully resolved configuration. parse_config accepts it.
std::string config_to_json(const ExperimentConfig& cfg);
// SHA-256 (hex) of the canonical JSON.
std::string config_digest(const ExperimentConfig& cfg);

// Shortest round-trip decimal form of a double, locale independent.
std::string format_double(double v);

// Header: trial,sequence,makespan,reward,bernoulli,tf_max
void emit_trials_csv(std::span<const TrialRecord> records, const std::filesystem::path& path);
std::vector<TrialRecord> read_trials_csv(const std::filesystem::path& path);

std::string summary_json(std::span<const TrialRecord> records,
                         const std::vector<EnumeratedSequence>* enumeration, std::size_t window,
                         const std::optional<Recommendation>& recommendation);
void emit_summary(std::span<const TrialRecord> records,
                  const std::vector<EnumeratedSequence>* enumeration, std::size_t window,
                  const std::optional<Recommendation>& recommendation,
                  const std::filesystem::path& path);

std::string posterior_json(const ExperimentState& state);
ExperimentState parse_posterior(std::string_view json_text);
void save_posterior(const ExperimentState& state, const std::filesystem::path& path);
ExperimentState load_posterior(const std::filesystem::path& path);

struct OutputFile {
  std::string name;
  std::string sha256;
};

struct RunManifest {
  std::string config_digest;
  std::uint64_t root_seed = 0;
  std::string artifact_version{kArtifactVersion};
  std::string started_utc;
  std::string finished_utc;
  std::string config_json;
  std::vector<OutputFile> outputs;
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);
// Config embedded in a manifest; the digest is checked.
ExperimentConfig manifest_config(const RunManifest& manifest);

std::string sha256_hex(std::string_view bytes);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace dltbandit
