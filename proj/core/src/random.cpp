#include "dltbandit/random.hpp"

#include <sstream>
#include <stdexcept>

namespace dltbandit {

Rng make_stream(std::uint64_t root_seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(root_seed & 0xffffffffu),
                    static_cast<std::uint32_t>(root_seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

Rng fork(Rng& parent) { return Rng(parent()); }

double sample_beta(double alpha, double beta, Rng& rng) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("Beta parameters must be positive");
  }
  std::gamma_distribution<double> ga(alpha, 1.0);
  std::gamma_distribution<double> gb(beta, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  if (x + y == 0.0) return alpha >= beta ? 1.0 : 0.0;
  return x / (x + y);
}

bool bernoulli_trial(double success_probability, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < success_probability;
}

std::string save_rng_state(const Rng& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

Rng load_rng_state(const std::string& state) {
  std::istringstream is(state);
  Rng rng;
  is >> rng;
  if (!is) throw std::invalid_argument("corrupt RNG state");
  return rng;
}

}  // namespace dltbandit
