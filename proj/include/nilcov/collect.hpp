#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "nilcov/common.hpp"
#include "nilcov/hall.hpp"

namespace nilcov {

class NilGroupCtx;
using NilCtxPtr = std::shared_ptr<const NilGroupCtx>;

// Normal-form element of the free nilpotent group of rank k and class w:
// the product b_1^{e_1} ... b_N^{e_N} over the Hall basis, stored as the
// exponent sequence. Two elements are equal iff their exponents are equal.
class NilElement {
 public:
  NilElement(NilCtxPtr ctx, std::vector<Int> exps);

  const NilCtxPtr& ctx() const { return ctx_; }
  const std::vector<Int>& exponents() const { return exps_; }
  bool is_identity() const;

  bool operator==(const NilElement& o) const;
  bool operator!=(const NilElement& o) const { return !(*this == o); }

 private:
  NilCtxPtr ctx_;
  std::vector<Int> exps_;
};

// Context for F/gamma_{w+1}(F) on k letters: the Hall basis plus the memoized
// structure table of letter commutators. Immutable apart from the memo table,
// which is a write-once cache guarded by a mutex.
class NilGroupCtx : public std::enable_shared_from_this<NilGroupCtx> {
 public:
  static NilCtxPtr make(int letters, int nclass,
                        std::size_t basis_cap = HallBasis::default_cap);

  const HallBasis& basis() const { return basis_; }
  int letters() const { return basis_.letters(); }
  int nclass() const { return basis_.max_weight(); }

  NilElement identity() const;
  NilElement letter(int i) const;  // generator x_i, 1-based
  NilElement from_exponents(std::vector<Int> exps) const;

  // --- internal word machinery (public for the test oracle and tools) ---
  struct Syllable {
    int idx;
    Int exp;
  };
  using Word = std::vector<Syllable>;

  // Collect an arbitrary syllable word into normal form (sorted by basis
  // index, one syllable per index, no zero exponents).
  Word collect(Word w) const;
  Word mul_words(const Word& a, const Word& b) const;
  Word inv_word(const Word& a) const;
  // Group commutator [a, b] of two collected words.
  Word comm_words(const Word& a, const Word& b) const;
  // Memoized normal form of [b_j, b_i] for basis indices j > i.
  const Word& comm_table(int j, int i) const;

  Word word_of(const std::vector<Int>& exps) const;
  std::vector<Int> exps_of(const Word& w) const;

 private:
  explicit NilGroupCtx(int letters, int nclass, std::size_t cap);

  Word conj_word(const Word& z, const Word& g) const;  // z^g = z [z,g]
  Word comm_powers(int j, int i, const Int& e, const Int& f) const;
  Word comm_uncached(int j, int i) const;

  HallBasis basis_;
  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<int, int>, Word> table_;
  mutable std::set<std::pair<int, int>> computing_;  // re-entrancy guard
  mutable std::map<std::tuple<int, int, long long, long long>, Word> pow_memo_;
};

NilElement multiply(const NilElement& a, const NilElement& b);
NilElement inverse(const NilElement& a);
NilElement power(const NilElement& a, const Int& n);
// a^{-1} b^{-1} a b in normal form.
NilElement commutator(const NilElement& a, const NilElement& b);
// [[...[p1,p2],p3]...,pm]; requires at least two parts.
NilElement left_normed(const std::vector<NilElement>& parts);
// Weight-m exponent block of a; requires all exponents at weights < m to be
// zero (a lies in gamma_m of the truncated group).
std::vector<Int> layer_coords(const NilElement& a, int m);

}  // namespace nilcov
