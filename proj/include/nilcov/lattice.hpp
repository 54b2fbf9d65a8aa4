#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nilcov/common.hpp"

namespace nilcov {

// Dense integer matrix with exact entries, row-major.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

// Isomorphism type of a finitely generated abelian group: invariant factors
// d_1 | d_2 | ... (each >= 2; factors of 1 are not stored) plus free rank.
struct AbelianType {
  std::vector<Int> factors;
  std::size_t free_rank = 0;

  bool trivial() const { return factors.empty() && free_rank == 0; }
  bool finite() const { return free_rank == 0; }
  Int order() const;  // throws std::domain_error when infinite

  bool operator==(const AbelianType& o) const = default;
  // e.g. "1", "Z_2 + Z_6", "Z + Z + Z_4"
  std::string str() const;
};

// Diagonal of the Smith normal form: d_1 | d_2 | ... | d_min, nonnegative,
// length min(rows, cols). Deterministic.
std::vector<Int> smith_normal_form(const IntMatrix& m);

// Invariants of Z^n modulo the row space of `rows` (rows.cols must equal n;
// a 0-row matrix denotes the empty lattice).
AbelianType quotient_invariants(std::size_t n, const IntMatrix& rows);

}  // namespace nilcov
