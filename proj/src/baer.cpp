#include "nilcov/baer.hpp"

#include <stdexcept>

namespace nilcov {

void BaerInput::validate() const {
  if (r < 1 || s < 1) throw std::invalid_argument("r and s must be >= 1");
  if (c < 1) throw std::invalid_argument("c must be >= 1");
}

AbelianType baer_formula(const BaerInput& in) {
  in.validate();
  AbelianType out;
  long long d = in.d();
  if (d == 1) return out;
  long long n = witt_count(2, in.c + 1);
  out.factors.assign(static_cast<std::size_t>(n), Int(d));
  return out;
}

AbelianType baer_engine(const BaerInput& in, int class_cap, std::size_t basis_cap) {
  in.validate();
  if (in.c > class_cap)
    throw resource_error("baer_engine: class " + std::to_string(in.c) +
                         " exceeds cap " + std::to_string(class_cap));

  /* Free presentation 1 -> R -> F -> Z_r + Z_s -> 1 with F free on x1, x2 and
   * R = <x1^r, x2^s, gamma_2(F)>. Since gamma_2(F) <= R, the numerator
   * R n gamma_{c+1}(F) is the whole layer gamma_{c+1}/gamma_{c+2} = Z^n, and
   * the invariant is Z^n modulo the image of [S, cF], S = <x1^r, x2^s>^F.
   *
   * Row generators: conjugation acts trivially on gamma_{c+1}/gamma_{c+2}
   * (because [gamma_{c+1}, F] = gamma_{c+2}), so conjugates of x1^r, x2^s
   * contribute nothing new; a bracket with any entry in gamma_2 lands in
   * weight >= c+2; and the layer image of a bracket is additive in each slot
   * with inverses acting as negation. Hence the rows from u in {x1^r, x2^s}
   * and y_i in {x1, x2} already generate the image lattice, which is closed
   * under negation.
   */
  auto ctx = NilGroupCtx::make(2, in.c + 1, basis_cap);
  const std::size_t n = ctx->basis().weight_end(in.c + 1) -
                        ctx->basis().weight_begin(in.c + 1);
  if (n != static_cast<std::size_t>(witt_count(2, in.c + 1)))
    throw std::logic_error("baer_engine: layer rank != Witt count");

  std::vector<NilElement> relators{power(ctx->letter(1), in.r),
                                   power(ctx->letter(2), in.s)};
  std::vector<std::vector<Int>> rows;
  for (const auto& u : relators) {
    // odometer over (y_1, ..., y_c) in {x1, x2}^c
    std::vector<int> tuple(in.c, 1);
    for (;;) {
      std::vector<NilElement> parts{u};
      for (int t : tuple) parts.push_back(ctx->letter(t));
      NilElement v = left_normed(parts);
      rows.push_back(layer_coords(v, in.c + 1));  // throws if not in the layer
      int pos = in.c - 1;
      while (pos >= 0 && tuple[pos] == 2) tuple[pos--] = 1;
      if (pos < 0) break;
      ++tuple[pos];
    }
  }

  IntMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  return quotient_invariants(n, m);
}

}  // namespace nilcov
