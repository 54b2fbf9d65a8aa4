#pragma once

#include <vector>

#include "nilcov/collect.hpp"

namespace nilcov::testing {

/* Independent equality oracle for the collection engine: the truncated free
 * associative Z-algebra on k noncommuting letters modulo degree > w. Group
 * elements embed via x_i -> 1 + X_i. For a free group the m-th integral
 * dimension subgroup equals gamma_m (Magnus), so the induced map on
 * F/gamma_{w+1} is injective and series equality decides element equality.
 * Nothing here touches the collection code path.
 */
class MagnusSeries {
 public:
  MagnusSeries(int k, int w) : k_(k), w_(w), c_(w + 1) {
    std::size_t n = 1;
    for (int d = 0; d <= w; ++d) {
      c_[d].assign(n, Int(0));
      n *= static_cast<std::size_t>(k);
    }
  }

  static MagnusSeries one(int k, int w) {
    MagnusSeries s(k, w);
    s.c_[0][0] = 1;
    return s;
  }

  static MagnusSeries letter(int k, int w, int i) {  // 1 + X_i
    MagnusSeries s = one(k, w);
    if (w >= 1) s.c_[1][i - 1] = 1;
    return s;
  }

  friend MagnusSeries operator*(const MagnusSeries& a, const MagnusSeries& b) {
    MagnusSeries r(a.k_, a.w_);
    for (int da = 0; da <= a.w_; ++da)
      for (int db = 0; da + db <= a.w_; ++db) {
        const auto& bm = b.c_[db];
        for (std::size_t m = 0; m < a.c_[da].size(); ++m) {
          if (a.c_[da][m] == 0) continue;
          for (std::size_t n = 0; n < bm.size(); ++n) {
            if (bm[n] == 0) continue;
            r.c_[da + db][m * bm.size() + n] += a.c_[da][m] * bm[n];
          }
        }
      }
    return r;
  }

  MagnusSeries inv() const {
    // 1/(1+u) with u of positive degree: alternating geometric series
    MagnusSeries u = *this;
    u.c_[0][0] -= 1;
    MagnusSeries r = one(k_, w_);
    MagnusSeries upow = one(k_, w_);
    int sign = -1;
    for (int t = 1; t <= w_; ++t) {
      upow = upow * u;
      for (int d = 0; d <= w_; ++d)
        for (std::size_t m = 0; m < upow.c_[d].size(); ++m)
          r.c_[d][m] += sign * upow.c_[d][m];
      sign = -sign;
    }
    return r;
  }

  MagnusSeries pow(Int e) const {
    MagnusSeries base = e >= 0 ? *this : inv();
    if (e < 0) e = -e;
    MagnusSeries r = one(k_, w_);
    while (e > 0) {
      if ((e & 1) != 0) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  bool operator==(const MagnusSeries& o) const { return c_ == o.c_; }

 private:
  int k_, w_;
  std::vector<std::vector<Int>> c_;
};

class MagnusOracle {
 public:
  explicit MagnusOracle(NilCtxPtr ctx) : ctx_(std::move(ctx)) {
    const auto& basis = ctx_->basis();
    const int k = ctx_->letters(), w = ctx_->nclass();
    basis_series_.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis.at(i).is_leaf()) {
        basis_series_.push_back(MagnusSeries::letter(k, w, basis.at(i).letter()));
      } else {
        auto [l, r] = basis.children(i);
        const MagnusSeries& a = basis_series_[l];
        const MagnusSeries& b = basis_series_[r];
        basis_series_.push_back(a.inv() * b.inv() * a * b);
      }
    }
  }

  MagnusSeries series_of(const NilElement& e) const {
    MagnusSeries r = MagnusSeries::one(ctx_->letters(), ctx_->nclass());
    for (std::size_t i = 0; i < e.exponents().size(); ++i)
      if (e.exponents()[i] != 0) r = r * basis_series_[i].pow(e.exponents()[i]);
    return r;
  }

 private:
  NilCtxPtr ctx_;
  std::vector<MagnusSeries> basis_series_;
};

}  // namespace nilcov::testing
