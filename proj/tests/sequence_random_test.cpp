#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "dltbandit/random.hpp"
#include "dltbandit/root_finding.hpp"
#include "dltbandit/sequence.hpp"

namespace dltbandit {
namespace {

TEST(Sequence, ParseAndPrintUseOneBasedLabels) {
  const Sequence s = Sequence::parse("2-3-1");
  EXPECT_EQ(s.order(), (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(s.to_string(), "2-3-1");
  EXPECT_EQ(Sequence::from_one_based({2, 3, 1}), s);
  EXPECT_EQ(Sequence::identity(4).to_string(), "1-2-3-4");
}

TEST(Sequence, RejectsNonPermutations) {
  EXPECT_THROW(Sequence(std::vector<int>{0, 0}), std::invalid_argument);
  EXPECT_THROW(Sequence(std::vector<int>{0, 2}), std::invalid_argument);
  EXPECT_THROW(Sequence::parse("1-1"), std::invalid_argument);
  EXPECT_THROW(Sequence::parse("1-x"), std::invalid_argument);
  EXPECT_THROW(Sequence::parse(""), std::invalid_argument);
  EXPECT_THROW(Sequence::parse("0-1"), std::invalid_argument);
}

TEST(Sequence, SwapPositions) {
  Sequence s = Sequence::identity(3);
  s.swap_positions(0, 2);
  EXPECT_EQ(s.to_string(), "3-2-1");
  s.swap_positions(1, 1);
  EXPECT_EQ(s.to_string(), "3-2-1");
}

TEST(Sequence, AllSequencesAreLexicographicAndDistinct) {
  EXPECT_EQ(factorial(0), 1u);
  EXPECT_EQ(factorial(4), 24u);
  const auto all = all_sequences(4);
  ASSERT_EQ(all.size(), 24u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::set<Sequence>(all.begin(), all.end()).size(), 24u);
  EXPECT_EQ(all.front().to_string(), "1-2-3-4");
  EXPECT_EQ(all.back().to_string(), "4-3-2-1");
}

TEST(Random, StreamsAreReproducibleAndDistinct) {
  Rng a = make_stream(42, Stream::selection);
  Rng b = make_stream(42, Stream::selection);
  Rng c = make_stream(42, Stream::bernoulli);
  Rng d = make_stream(43, Stream::selection);
  const auto va = a(), vb = b(), vc = c(), vd = d();
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_NE(va, vd);
}

TEST(Random, StateRoundTrip) {
  Rng r = make_stream(5, Stream::search);
  for (int i = 0; i < 17; ++i) r();
  Rng copy = load_rng_state(save_rng_state(r));
  for (int i = 0; i < 100; ++i) ASSERT_EQ(r(), copy());
  EXPECT_THROW(load_rng_state("not a state"), std::exception);
}

TEST(Random, BetaSampleMomentsMatch) {
  Rng r = make_stream(1, Stream::selection);
  const double a = 2.0, b = 5.0;
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_beta(a, b, r);
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  EXPECT_NEAR(mean, a / (a + b), 3e-3);
  EXPECT_NEAR(var, a * b / ((a + b) * (a + b) * (a + b + 1)), 1e-3);
}

TEST(Random, BernoulliTrialFrequency) {
  Rng r = make_stream(9, Stream::bernoulli);
  int ones = 0;
  for (int i = 0; i < 100000; ++i) ones += bernoulli_trial(0.3, r);
  EXPECT_NEAR(ones / 100000.0, 0.3, 0.01);
  EXPECT_FALSE(bernoulli_trial(0.0, r));
  EXPECT_TRUE(bernoulli_trial(1.0, r));
}

TEST(RootFinding, FindsRootOfMonotoneFunction) {
  auto f = [](double x) { return x * x * x - 2.0; };
  const auto r = find_monotone_root(f, 0.0, 2.0, f(0.0), f(2.0), 1e-15, 0.0, 10000);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.x, std::cbrt(2.0), 1e-14);
}

TEST(RootFinding, HandlesSteepStepLikeFunction) {
  auto f = [](double x) { return x < 0.3 ? -1.0 + x : 1e6 * (x - 0.3) + 0.001; };
  const auto r = find_monotone_root(f, 0.0, 1.0, f(0.0), f(1.0), 1e-15, 0.0, 10000);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x, 0.3, 1e-12);
}

TEST(RootFinding, ReportsNonConvergence) {
  auto f = [](double x) { return x * x * x - 0.3; };
  const auto r = find_monotone_root(f, 0.0, 1.0, f(0.0), f(1.0), 0.0, 0.0, 1);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
}

}  // namespace
}  // namespace dltbandit
