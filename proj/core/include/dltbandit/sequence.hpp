#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dltbandit {

// A load-distribution order: position p receives load from the control
// processor p-th. Workers are stored 0-based; the textual form is 1-based
// and dash-joined ("2-3-1").
class Sequence {
 public:
  Sequence() = default;

  // Throws std::invalid_argument unless `order` is a permutation of 0..n-1.
  explicit Sequence(std::vector<int> order);

  static Sequence identity(std::size_t n);
  static Sequence parse(std::string_view text);
  // Builds from 1-based worker labels, e.g. {2, 3, 1}.
  static Sequence from_one_based(const std::vector<int>& labels);

  std::size_t size() const noexcept { return order_.size(); }
  int operator[](std::size_t position) const { return order_[position]; }
  const std::vector<int>& order() const noexcept { return order_; }

  // Exchanges the workers at two positions.
  void swap_positions(std::size_t a, std::size_t b);

  std::string to_string() const;

  friend bool operator==(const Sequence&, const Sequence&) = default;
  friend auto operator<=>(const Sequence& a, const Sequence& b) {
    return a.order_ <=> b.order_;
  }

 private:
  std::vector<int> order_;
};

std::size_t factorial(std::size_t n);

// All n! sequences in lexicographic order.
std::vector<Sequence> all_sequences(std::size_t n);

std::ostream& operator<<(std::ostream& os, const Sequence& seq);

}  // namespace dltbandit
