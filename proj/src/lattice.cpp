#include "nilcov/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilcov {

Int AbelianType::order() const {
  if (!finite()) throw std::domain_error("order() of an infinite group");
  Int o = 1;
  for (const auto& d : factors) o *= d;
  return o;
}

std::string AbelianType::str() const {
  if (trivial()) return "1";
  std::string s;
  for (std::size_t i = 0; i < free_rank; ++i) s += (s.empty() ? "Z" : " + Z");
  for (const auto& d : factors)
    s += (s.empty() ? "Z_" : " + Z_") + d.str();
  return s;
}

namespace {

using boost::multiprecision::abs;

// position of the entry with smallest nonzero |value| in the submatrix
// starting at (t,t); deterministic row-major scan.
bool find_pivot(const IntMatrix& m, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Int best = 0;
  for (std::size_t r = t; r < m.rows; ++r)
    for (std::size_t c = t; c < m.cols; ++c) {
      const Int& v = m.at(r, c);
      if (v == 0) continue;
      if (!found || abs(v) < best) {
        best = abs(v);
        pr = r;
        pc = c;
        found = true;
      }
    }
  return found;
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(a, c), m.at(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows; ++r) std::swap(m.at(r, a), m.at(r, b));
}

}  // namespace

std::vector<Int> smith_normal_form(const IntMatrix& input) {
  if (input.rows == 0 || input.cols == 0)
    throw std::invalid_argument("smith_normal_form: empty matrix");
  IntMatrix m = input;
  std::size_t n = std::min(m.rows, m.cols);

  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pr, pc;
    if (!find_pivot(m, t, pr, pc)) break;  // submatrix is zero
    swap_rows(m, t, pr);
    swap_cols(m, t, pc);

    for (;;) {
      // clear column t below the pivot
      bool dirty = false;
      for (std::size_t r = t + 1; r < m.rows; ++r) {
        if (m.at(r, t) == 0) continue;
        Int q = m.at(r, t) / m.at(t, t);
        for (std::size_t c = t; c < m.cols; ++c) m.at(r, c) -= q * m.at(t, c);
        if (m.at(r, t) != 0) dirty = true;  // remainder smaller than pivot
      }
      // clear row t right of the pivot
      for (std::size_t c = t + 1; c < m.cols; ++c) {
        if (m.at(t, c) == 0) continue;
        Int q = m.at(t, c) / m.at(t, t);
        for (std::size_t r = t; r < m.rows; ++r) m.at(r, c) -= q * m.at(r, t);
        if (m.at(t, c) != 0) dirty = true;
      }
      if (dirty) {
        // a nonzero remainder beats the old pivot; reselect
        std::size_t qr, qc;
        find_pivot(m, t, qr, qc);
        swap_rows(m, t, qr);
        swap_cols(m, t, qc);
        continue;
      }
      // row and column are clear; enforce divisibility of the rest
      bool fixed = true;
      for (std::size_t r = t + 1; r < m.rows && fixed; ++r)
        for (std::size_t c = t + 1; c < m.cols && fixed; ++c)
          if (m.at(r, c) % m.at(t, t) != 0) {
            for (std::size_t cc = 0; cc < m.cols; ++cc) m.at(t, cc) += m.at(r, cc);
            fixed = false;
          }
      if (fixed) break;
    }
  }

  std::vector<Int> d(n, 0);
  for (std::size_t t = 0; t < n; ++t) d[t] = abs(m.at(t, t));
  return d;
}

AbelianType quotient_invariants(std::size_t n, const IntMatrix& rows) {
  if (n == 0) throw std::invalid_argument("quotient_invariants: n must be >= 1");
  AbelianType out;
  if (rows.rows == 0) {
    out.free_rank = n;
    return out;
  }
  if (rows.cols != n)
    throw std::invalid_argument("quotient_invariants: column count != n");
  std::vector<Int> d = smith_normal_form(rows);
  std::size_t rank = 0;
  for (const auto& v : d)
    if (v != 0) ++rank;
  out.free_rank = n - rank;
  for (const auto& v : d)
    if (v > 1) out.factors.push_back(v);
  return out;
}

}  // namespace nilcov
