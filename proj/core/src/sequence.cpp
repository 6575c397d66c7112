#include "dltbandit/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace dltbandit {

Sequence::Sequence(std::vector<int> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (int w : order_) {
    if (w < 0 || static_cast<std::size_t>(w) >= order_.size() || seen[w]) {
      throw std::invalid_argument("sequence is not a permutation");
    }
    seen[w] = true;
  }
}

Sequence Sequence::identity(std::size_t n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return Sequence(std::move(order));
}

Sequence Sequence::from_one_based(const std::vector<int>& labels) {
  std::vector<int> order;
  order.reserve(labels.size());
  for (int label : labels) order.push_back(label - 1);
  return Sequence(std::move(order));
}

Sequence Sequence::parse(std::string_view text) {
  std::vector<int> labels;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dash = text.find('-', pos);
    if (dash == std::string_view::npos) dash = text.size();
    std::string_view token = text.substr(pos, dash - pos);
    int label = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), label);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw std::invalid_argument("malformed sequence '" + std::string(text) + "'");
    }
    labels.push_back(label);
    pos = dash + 1;
  }
  return from_one_based(labels);
}

void Sequence::swap_positions(std::size_t a, std::size_t b) {
  std::swap(order_.at(a), order_.at(b));
}

std::string Sequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(order_[i] + 1);
  }
  return out;
}

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<Sequence> all_sequences(std::size_t n) {
  std::vector<Sequence> out;
  out.reserve(factorial(n));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    out.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::ostream& operator<<(std::ostream& os, const Sequence& seq) { return os << seq.to_string(); }

}  // namespace dltbandit
