#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilcov/common.hpp"

namespace nilcov {

// A basic commutator on letters x1..xk: either a single letter, or a bracket
// [u,v] of two basic commutators with u > v and, when u = [p,q], q <= v.
// Immutable; copies share structure.
class BasicCommutator {
 public:
  static BasicCommutator leaf(int letter);
  static BasicCommutator bracket(const BasicCommutator& left,
                                 const BasicCommutator& right);

  bool is_leaf() const { return node_->letter != 0; }
  int letter() const;            // 1-based; leaf only
  BasicCommutator left() const;  // bracket only
  BasicCommutator right() const;
  int weight() const { return node_->weight; }

  // Bracket notation, e.g. "[[x2,x1],x1]".
  std::string str() const;

  // Total order: weight first, then letter (leaves) or (left, right)
  // recursively. Any order extending weight is admissible for a Hall family;
  // this one is fixed for reproducibility.
  friend int cmp(const BasicCommutator& a, const BasicCommutator& b);

  bool operator==(const BasicCommutator& o) const { return cmp(*this, o) == 0; }
  bool operator!=(const BasicCommutator& o) const { return cmp(*this, o) != 0; }
  bool operator<(const BasicCommutator& o) const { return cmp(*this, o) < 0; }
  bool operator>(const BasicCommutator& o) const { return cmp(*this, o) > 0; }
  bool operator<=(const BasicCommutator& o) const { return cmp(*this, o) <= 0; }
  bool operator>=(const BasicCommutator& o) const { return cmp(*this, o) >= 0; }

 private:
  struct Node {
    int letter = 0;  // 0 for brackets
    int weight = 1;
    std::shared_ptr<const Node> left, right;
  };
  explicit BasicCommutator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Hall condition for forming [u,v] from two basic commutators.
bool hall_condition(const BasicCommutator& u, const BasicCommutator& v);

// Full structural check that c is a member of the Hall family.
bool is_basic(const BasicCommutator& c);

// Number of basic commutators of weight w on k letters (Witt formula).
long long witt_count(long long k, long long w);

// Moebius function; rejects m <= 0.
int moebius(long long m);

// The ordered Hall basis of basic commutators on `letters` letters, all
// weights <= max_weight, grouped by nondecreasing weight. Immutable after
// construction and safe to share between threads.
class HallBasis {
 public:
  static constexpr std::size_t default_cap = 10000;

  HallBasis(int letters, int max_weight, std::size_t cap = default_cap);

  int letters() const { return letters_; }
  int max_weight() const { return max_weight_; }
  std::size_t size() const { return items_.size(); }

  const BasicCommutator& at(std::size_t i) const { return items_[i]; }
  int weight_of(std::size_t i) const { return weights_[i]; }
  // Children as basis indices; (-1,-1) for leaves.
  std::pair<int, int> children(std::size_t i) const { return kids_[i]; }

  // Half-open index range of the weight-m block.
  std::size_t weight_begin(int m) const;
  std::size_t weight_end(int m) const;

  std::optional<std::size_t> find(const BasicCommutator& c) const;
  std::size_t index_of(const BasicCommutator& c) const;  // throws if absent

 private:
  int letters_;
  int max_weight_;
  std::vector<BasicCommutator> items_;
  std::vector<int> weights_;
  std::vector<std::pair<int, int>> kids_;
  std::vector<std::size_t> block_begin_;  // block_begin_[m] for m in 1..w+1
  std::map<std::pair<int, int>, std::size_t> bracket_index_;
};

}  // namespace nilcov
