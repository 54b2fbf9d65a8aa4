#include "nilcov/hall.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilcov {

BasicCommutator BasicCommutator::leaf(int letter) {
  if (letter < 1) throw std::invalid_argument("letter index must be >= 1");
  auto n = std::make_shared<Node>();
  n->letter = letter;
  n->weight = 1;
  return BasicCommutator(std::move(n));
}

BasicCommutator BasicCommutator::bracket(const BasicCommutator& left,
                                         const BasicCommutator& right) {
  auto n = std::make_shared<Node>();
  n->letter = 0;
  n->weight = left.weight() + right.weight();
  n->left = left.node_;
  n->right = right.node_;
  return BasicCommutator(std::move(n));
}

int BasicCommutator::letter() const {
  if (!is_leaf()) throw std::logic_error("letter() on a bracket");
  return node_->letter;
}

BasicCommutator BasicCommutator::left() const {
  if (is_leaf()) throw std::logic_error("left() on a leaf");
  return BasicCommutator(node_->left);
}

BasicCommutator BasicCommutator::right() const {
  if (is_leaf()) throw std::logic_error("right() on a leaf");
  return BasicCommutator(node_->right);
}

std::string BasicCommutator::str() const {
  if (is_leaf()) return "x" + std::to_string(letter());
  return "[" + left().str() + "," + right().str() + "]";
}

int cmp(const BasicCommutator& a, const BasicCommutator& b) {
  if (a.node_ == b.node_) return 0;
  if (a.weight() != b.weight()) return a.weight() < b.weight() ? -1 : 1;
  if (a.is_leaf()) return a.letter() < b.letter() ? -1 : (a.letter() == b.letter() ? 0 : 1);
  // equal weight > 1: both are brackets
  if (int c = cmp(a.left(), b.left()); c != 0) return c;
  return cmp(a.right(), b.right());
}

bool hall_condition(const BasicCommutator& u, const BasicCommutator& v) {
  if (!(u > v)) return false;
  if (!u.is_leaf() && u.right() > v) return false;
  return true;
}

bool is_basic(const BasicCommutator& c) {
  if (c.is_leaf()) return true;
  return is_basic(c.left()) && is_basic(c.right()) &&
         hall_condition(c.left(), c.right());
}

int moebius(long long m) {
  if (m <= 0) throw std::invalid_argument("moebius: m must be positive");
  int primes = 0;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return 0;  // squareful
      ++primes;
    }
  }
  if (m > 1) ++primes;
  return primes % 2 == 0 ? 1 : -1;
}

long long witt_count(long long k, long long w) {
  if (k < 1 || w < 1) throw std::invalid_argument("witt_count: k, w must be >= 1");
  Int sum = 0;
  for (long long m = 1; m * m <= w; ++m) {
    if (w % m != 0) continue;
    long long d1 = m, d2 = w / m;
    sum += moebius(d1) * boost::multiprecision::pow(Int(k), static_cast<unsigned>(w / d1));
    if (d2 != d1)
      sum += moebius(d2) * boost::multiprecision::pow(Int(k), static_cast<unsigned>(w / d2));
  }
  return to_longlong(sum / w);
}

HallBasis::HallBasis(int letters, int max_weight, std::size_t cap)
    : letters_(letters), max_weight_(max_weight) {
  if (letters < 1 || max_weight < 1)
    throw std::invalid_argument("HallBasis: letters and max_weight must be >= 1");

  block_begin_.assign(static_cast<std::size_t>(max_weight) + 2, 0);
  auto push = [&](const BasicCommutator& c, int l, int r) {
    if (items_.size() >= cap)
      throw resource_error("Hall basis cap exceeded (" + std::to_string(cap) + " items)");
    items_.push_back(c);
    weights_.push_back(c.weight());
    kids_.emplace_back(l, r);
    if (l >= 0) bracket_index_[{l, r}] = items_.size() - 1;
  };

  block_begin_[1] = 0;
  for (int i = 1; i <= letters; ++i) push(BasicCommutator::leaf(i), -1, -1);

  for (int m = 2; m <= max_weight; ++m) {
    block_begin_[m] = items_.size();
    std::vector<std::pair<BasicCommutator, std::pair<int, int>>> block;
    // all pairs (u, v) of earlier items with weight(u) + weight(v) = m
    std::size_t prior = block_begin_[m];
    for (std::size_t iu = 0; iu < prior; ++iu) {
      for (std::size_t iv = 0; iv < prior; ++iv) {
        if (weights_[iu] + weights_[iv] != m) continue;
        if (!hall_condition(items_[iu], items_[iv])) continue;
        block.emplace_back(BasicCommutator::bracket(items_[iu], items_[iv]),
                           std::make_pair(static_cast<int>(iu), static_cast<int>(iv)));
      }
    }
    std::sort(block.begin(), block.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [c, lr] : block) push(c, lr.first, lr.second);
  }
  block_begin_[max_weight + 1] = items_.size();
}

std::size_t HallBasis::weight_begin(int m) const {
  if (m < 1 || m > max_weight_) throw std::out_of_range("weight block out of range");
  return block_begin_[m];
}

std::size_t HallBasis::weight_end(int m) const {
  if (m < 1 || m > max_weight_) throw std::out_of_range("weight block out of range");
  return block_begin_[m + 1];
}

std::optional<std::size_t> HallBasis::find(const BasicCommutator& c) const {
  if (c.weight() > max_weight_) return std::nullopt;
  if (c.is_leaf())
    return c.letter() <= letters_ ? std::optional<std::size_t>(c.letter() - 1)
                                  : std::nullopt;
  auto l = find(c.left());
  auto r = find(c.right());
  if (!l || !r) return std::nullopt;
  auto it = bracket_index_.find({static_cast<int>(*l), static_cast<int>(*r)});
  if (it == bracket_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t HallBasis::index_of(const BasicCommutator& c) const {
  auto i = find(c);
  if (!i) throw std::out_of_range("commutator not in Hall basis: " + c.str());
  return *i;
}

}  // namespace nilcov
