#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace dltbandit {

using Rng = std::mt19937_64;

// Independent named streams derived from one root seed, so that changing
// the algorithm under test does not perturb e.g. trace generation.
enum class Stream : std::uint32_t {
  traces = 1,
  selection = 2,
  bernoulli = 3,
  search = 4,
  partition = 5,
};

Rng make_stream(std::uint64_t root_seed, Stream stream);
// Child generator for sub-tasks (e.g. one hill-climb restart).
Rng fork(Rng& parent);

// Draw from Beta(alpha, beta) via two Gamma variates. Both parameters must
// be strictly positive.
double sample_beta(double alpha, double beta, Rng& rng);

bool bernoulli_trial(double success_probability, Rng& rng);

std::string save_rng_state(const Rng& rng);
Rng load_rng_state(const std::string& state);

}  // namespace dltbandit
