#pragma once

#include <numeric>

#include "nilcov/collect.hpp"
#include "nilcov/lattice.hpp"

namespace nilcov {

// Inputs for N_cM(Z_r + Z_s): two cyclic orders and the nilpotency class.
struct BaerInput {
  long long r = 1;
  long long s = 1;
  int c = 1;

  long long d() const { return std::gcd(r, s); }
  void validate() const;
};

// Closed form: Z_d repeated witt_count(2, c+1) times (trivial when d = 1).
AbelianType baer_formula(const BaerInput& in);

// Independent recomputation from the free presentation of Z_r + Z_s on two
// letters: build the free nilpotent group of class c+1, generate the image of
// [S, cF] in the top layer by left-normed brackets, and read the quotient off
// the row lattice. Does not assume the closed form.
AbelianType baer_engine(const BaerInput& in, int class_cap = 6,
                        std::size_t basis_cap = HallBasis::default_cap);

}  // namespace nilcov
