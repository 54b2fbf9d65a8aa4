#include "nilcov/collect.hpp"

#include <algorithm>
#include <list>
#include <stdexcept>
#include <tuple>

namespace nilcov {

namespace {

bool fits_ll(const Int& v) {
  return v <= std::numeric_limits<long long>::max() &&
         v >= std::numeric_limits<long long>::min();
}

}  // namespace

NilElement::NilElement(NilCtxPtr ctx, std::vector<Int> exps)
    : ctx_(std::move(ctx)), exps_(std::move(exps)) {
  if (!ctx_) throw std::invalid_argument("NilElement: null context");
  if (exps_.size() != ctx_->basis().size())
    throw std::invalid_argument("NilElement: exponent count != basis size");
}

bool NilElement::is_identity() const {
  return std::all_of(exps_.begin(), exps_.end(),
                     [](const Int& e) { return e == 0; });
}

bool NilElement::operator==(const NilElement& o) const {
  if (ctx_ != o.ctx_)
    throw std::invalid_argument("NilElement comparison across contexts");
  return exps_ == o.exps_;
}

NilGroupCtx::NilGroupCtx(int letters, int nclass, std::size_t cap)
    : basis_(letters, nclass, cap) {}

NilCtxPtr NilGroupCtx::make(int letters, int nclass, std::size_t basis_cap) {
  return NilCtxPtr(new NilGroupCtx(letters, nclass, basis_cap));
}

NilElement NilGroupCtx::identity() const {
  return NilElement(shared_from_this(), std::vector<Int>(basis_.size(), 0));
}

NilElement NilGroupCtx::letter(int i) const {
  if (i < 1 || i > letters())
    throw std::invalid_argument("letter index out of range");
  std::vector<Int> e(basis_.size(), 0);
  e[i - 1] = 1;
  return NilElement(shared_from_this(), std::move(e));
}

NilElement NilGroupCtx::from_exponents(std::vector<Int> exps) const {
  return NilElement(shared_from_this(), std::move(exps));
}

NilGroupCtx::Word NilGroupCtx::word_of(const std::vector<Int>& exps) const {
  Word w;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) w.push_back({static_cast<int>(i), exps[i]});
  return w;
}

std::vector<Int> NilGroupCtx::exps_of(const Word& w) const {
  std::vector<Int> e(basis_.size(), 0);
  for (const auto& s : w) e[s.idx] = s.exp;
  return e;
}

/* The collection loop. Fix the leftmost violation: drop zero exponents,
 * merge adjacent syllables with equal index, and for an out-of-order pair
 * b_j^e b_i^f (j > i) rewrite
 *     b_j^e b_i^f  =  b_i^f b_j^e [b_j^e, b_i^f].
 * Every inserted letter has weight >= weight(b_j) + weight(b_i), so its
 * basis index is > j; created material strictly gains weight and collection
 * terminates in a nilpotent quotient. After a rewrite we step back one slot,
 * which is where the earliest new violation can appear.
 */
NilGroupCtx::Word NilGroupCtx::collect(Word w) const {
  std::list<Syllable> ls(w.begin(), w.end());
  auto it = ls.begin();
  auto backstep = [&](std::list<Syllable>::iterator at) {
    return at == ls.begin() ? at : std::prev(at);
  };
  while (it != ls.end()) {
    if (it->exp == 0) {
      it = backstep(ls.erase(it));
      continue;
    }
    auto nx = std::next(it);
    if (nx == ls.end()) break;
    if (nx->exp == 0) {
      ls.erase(nx);
      continue;
    }
    if (it->idx == nx->idx) {
      it->exp += nx->exp;
      ls.erase(nx);
      if (it->exp == 0) it = backstep(ls.erase(it));
      continue;
    }
    if (it->idx > nx->idx) {
      Word k = comm_powers(it->idx, nx->idx, it->exp, nx->exp);
      std::swap(*it, *nx);
      ls.insert(std::next(nx), k.begin(), k.end());
      it = backstep(it);
      continue;
    }
    ++it;
  }
  return Word(ls.begin(), ls.end());
}

NilGroupCtx::Word NilGroupCtx::mul_words(const Word& a, const Word& b) const {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return collect(std::move(w));
}

NilGroupCtx::Word NilGroupCtx::inv_word(const Word& a) const {
  Word w;
  w.reserve(a.size());
  for (auto it = a.rbegin(); it != a.rend(); ++it) w.push_back({it->idx, -it->exp});
  return collect(std::move(w));
}

NilGroupCtx::Word NilGroupCtx::conj_word(const Word& z, const Word& g) const {
  return mul_words(z, comm_words(z, g));
}

/* Group commutator of two words via
 *   [xy, z] = [x,z]^y [y,z]      and      [x, yz] = [x,z] [x,y]^z ,
 * reduced to letter-power pairs. Each nested call strictly raises the total
 * weight involved, so the recursion truncates at the group class.
 */
NilGroupCtx::Word NilGroupCtx::comm_words(const Word& a, const Word& b) const {
  if (a.empty() || b.empty()) return {};
  int minwa = nclass() + 1, minwb = nclass() + 1;
  for (const auto& s : a) minwa = std::min(minwa, basis_.weight_of(s.idx));
  for (const auto& s : b) minwb = std::min(minwb, basis_.weight_of(s.idx));
  if (minwa + minwb > nclass()) return {};
  if (a.size() == 1 && b.size() == 1)
    return comm_powers(a[0].idx, b[0].idx, a[0].exp, b[0].exp);
  if (a.size() > 1) {
    Word head{a[0]};
    Word tail(a.begin() + 1, a.end());
    return mul_words(conj_word(comm_words(head, b), tail), comm_words(tail, b));
  }
  Word head{b[0]};
  Word tail(b.begin() + 1, b.end());
  return mul_words(comm_words(a, tail), conj_word(comm_words(a, head), tail));
}

/* [b_j^e, b_i^f] for basis letters. Exponents are split in halves (log depth)
 * and negative powers use
 *   [x^{-1}, B] = ([x,B]^{-1})^{x^{-1}},   [A, y^{-1}] = ([A,y]^{-1})^{y^{-1}}.
 */
NilGroupCtx::Word NilGroupCtx::comm_powers(int j, int i, const Int& e,
                                           const Int& f) const {
  if (e == 0 || f == 0 || j == i) return {};
  if (basis_.weight_of(j) + basis_.weight_of(i) > nclass()) return {};
  if (j < i) return inv_word(comm_powers(i, j, f, e));
  if (e == 1 && f == 1) return comm_table(j, i);

  bool memoable = fits_ll(e) && fits_ll(f);
  std::tuple<int, int, long long, long long> key;
  if (memoable) {
    key = {j, i, static_cast<long long>(e), static_cast<long long>(f)};
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = pow_memo_.find(key);
    if (it != pow_memo_.end()) return it->second;
  }

  Word r;
  if (e == 1) {
    if (f < 0) {
      Word c = comm_powers(j, i, 1, -f);
      r = conj_word(inv_word(c), Word{{i, f}});
    } else {
      Int f1 = f / 2, f2 = f - f1;
      Word c2 = comm_powers(j, i, 1, f2);
      Word c1 = comm_powers(j, i, 1, f1);
      r = mul_words(c2, conj_word(c1, Word{{i, f2}}));
    }
  } else if (e < 0) {
    Word c = comm_powers(j, i, -e, f);
    r = conj_word(inv_word(c), Word{{j, e}});
  } else {
    Int e1 = e / 2, e2 = e - e1;
    Word c1 = comm_powers(j, i, e1, f);
    Word c2 = comm_powers(j, i, e2, f);
    r = mul_words(conj_word(c1, Word{{j, e2}}), c2);
  }

  if (memoable) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    pow_memo_.emplace(key, r);
  }
  return r;
}

const NilGroupCtx::Word& NilGroupCtx::comm_table(int j, int i) const {
  if (j <= i) throw std::logic_error("comm_table requires j > i");
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = table_.find({j, i});
  if (it != table_.end()) return it->second;
  if (!computing_.insert({j, i}).second)
    throw std::logic_error("re-entrant structure table computation");
  Word r = comm_uncached(j, i);
  computing_.erase({j, i});
  return table_.emplace(std::make_pair(j, i), std::move(r)).first->second;
}

/* Normal form of [b_j, b_i], j > i. When the bracket satisfies the Hall
 * condition it is itself a basis letter. Otherwise b_j = [b_p, b_q] with
 * b_q > b_i, and we expand via the defining word b_j = p^{-1} q^{-1} p q:
 * the pieces [b_p, b_i], [b_q, b_i] have strictly smaller total weight, and
 * the conjugation corrections touch pairs that are either lighter or have a
 * larger right-hand letter, so the memoized recursion bottoms out.
 */
NilGroupCtx::Word NilGroupCtx::comm_uncached(int j, int i) const {
  if (basis_.weight_of(j) + basis_.weight_of(i) > nclass()) return {};
  const BasicCommutator& u = basis_.at(j);
  const BasicCommutator& v = basis_.at(i);
  if (hall_condition(u, v)) {
    std::size_t idx = basis_.index_of(BasicCommutator::bracket(u, v));
    return Word{{static_cast<int>(idx), 1}};
  }
  auto [p, q] = basis_.children(j);
  Word def{{p, -1}, {q, -1}, {p, 1}, {q, 1}};
  return comm_words(def, Word{{i, 1}});
}

NilElement multiply(const NilElement& a, const NilElement& b) {
  if (a.ctx() != b.ctx())
    throw std::invalid_argument("multiply: context mismatch");
  const auto& ctx = *a.ctx();
  return a.ctx()->from_exponents(
      ctx.exps_of(ctx.mul_words(ctx.word_of(a.exponents()), ctx.word_of(b.exponents()))));
}

NilElement inverse(const NilElement& a) {
  const auto& ctx = *a.ctx();
  return a.ctx()->from_exponents(ctx.exps_of(ctx.inv_word(ctx.word_of(a.exponents()))));
}

NilElement power(const NilElement& a, const Int& n) {
  NilElement result = a.ctx()->identity();
  if (n == 0) return result;
  NilElement base = n > 0 ? a : inverse(a);
  Int nn = boost::multiprecision::abs(n);
  while (nn > 0) {
    if ((nn & 1) != 0) result = multiply(result, base);
    nn >>= 1;
    if (nn > 0) base = multiply(base, base);
  }
  return result;
}

NilElement commutator(const NilElement& a, const NilElement& b) {
  if (a.ctx() != b.ctx())
    throw std::invalid_argument("commutator: context mismatch");
  const auto& ctx = *a.ctx();
  return a.ctx()->from_exponents(ctx.exps_of(
      ctx.comm_words(ctx.word_of(a.exponents()), ctx.word_of(b.exponents()))));
}

NilElement left_normed(const std::vector<NilElement>& parts) {
  if (parts.size() < 2)
    throw std::invalid_argument("left_normed needs at least two parts");
  NilElement acc = commutator(parts[0], parts[1]);
  for (std::size_t i = 2; i < parts.size(); ++i)
    acc = commutator(acc, parts[i]);
  return acc;
}

std::vector<Int> layer_coords(const NilElement& a, int m) {
  const auto& basis = a.ctx()->basis();
  if (m < 1 || m > basis.max_weight())
    throw std::invalid_argument("layer_coords: weight out of range");
  for (std::size_t i = 0; i < basis.weight_begin(m); ++i)
    if (a.exponents()[i] != 0)
      throw std::domain_error("layer_coords: element not in gamma_" +
                              std::to_string(m));
  return std::vector<Int>(a.exponents().begin() + basis.weight_begin(m),
                          a.exponents().begin() + basis.weight_end(m));
}

}  // namespace nilcov
