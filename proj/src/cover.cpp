#include "nilcov/cover.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "nilcov/hall.hpp"

namespace nilcov {

std::string to_string(CoverStatus s) {
  switch (s) {
    case CoverStatus::NoneExists: return "none-exists";
    case CoverStatus::ExistsConstructed: return "exists-constructed";
    case CoverStatus::ExistsTrivially: return "exists-trivially";
  }
  return "?";
}

std::pair<std::shared_ptr<const FiniteGroup>, std::vector<int>> construct_c1_cover(
    long long r, long long s, std::size_t max_order) {
  if (r < 1 || s < 1) throw std::invalid_argument("construct_c1_cover: r, s >= 1");
  const long long d = std::gcd(r, s);
  const long long n = r * s * d;
  if (n > static_cast<long long>(max_order))
    throw resource_error("construct_c1_cover: order " + std::to_string(n) +
                         " exceeds guard " + std::to_string(max_order));

  auto idx = [&](long long i, long long j, long long k) {
    return static_cast<int>((i * s + j) * d + k);
  };
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels(n);
  for (long long i = 0; i < r; ++i)
    for (long long j = 0; j < s; ++j)
      for (long long k = 0; k < d; ++k) {
        labels[idx(i, j, k)] = "(" + std::to_string(i) + "," + std::to_string(j) +
                               "," + std::to_string(k) + ")";
        for (long long i2 = 0; i2 < r; ++i2)
          for (long long j2 = 0; j2 < s; ++j2)
            for (long long k2 = 0; k2 < d; ++k2)
              table[static_cast<std::size_t>(idx(i, j, k)) * n + idx(i2, j2, k2)] =
                  idx((i + i2) % r, (j + j2) % s, (k + k2 + j * i2) % d);
      }

  std::vector<int> gens{idx(1 % r, 0, 0), idx(0, 1 % s, 0), idx(0, 0, 1 % d)};
  auto g = std::make_shared<FiniteGroup>(std::move(table), static_cast<int>(n),
                                         std::move(labels), std::move(gens));
  std::vector<int> a_elems;
  for (long long k = 0; k < d; ++k) a_elems.push_back(idx(0, 0, k));
  return {std::move(g), std::move(a_elems)};
}

CoverVerdict stem_cover_verdict(const BaerInput& in, std::size_t max_order) {
  in.validate();
  CoverVerdict out;
  out.input = in;
  const long long d = in.d();
  const long long n = witt_count(2, in.c + 1);

  if (d == 1) {
    out.status = CoverStatus::ExistsTrivially;
    out.trace = {"gcd(r, s) = 1, so N_cM(Z_r + Z_s) = 1 by the closed form",
                 "G itself with A = 1 satisfies A <= gamma_{c+1}(G) n Z_c(G) "
                 "and A = N_cM(G); the extension is a (trivial) stem cover"};
    if (in.r * in.s <= static_cast<long long>(max_order)) {
      auto [g, a] = construct_c1_cover(in.r, in.s, max_order);
      out.witness_verified = is_stem_cover(*g, Subgroup(*g, a), in);
      out.witness = std::move(g);
      out.witness_a = std::move(a);
      if (!out.witness_verified)
        throw std::logic_error("trivial witness failed is_stem_cover");
    }
    return out;
  }

  if (in.c == 1) {
    out.status = CoverStatus::ExistsConstructed;
    auto [g, a] = construct_c1_cover(in.r, in.s, max_order);
    Subgroup sub(*g, a);
    out.witness_verified = is_stem_cover(*g, sub, in);
    if (!out.witness_verified)
      throw std::logic_error("constructed c=1 witness failed is_stem_cover");
    out.trace = {"c = 1: the bilinear-cocycle extension of order r*s*d is a "
                 "covering group; verified by is_stem_cover"};
    out.witness = std::move(g);
    out.witness_a = std::move(a);
    return out;
  }

  out.status = CoverStatus::NoneExists;
  out.trace = {
      "suppose 1 -> A -> G* -> G -> 1 is an N_c-stem cover of G = Z_" +
          std::to_string(in.r) + " + Z_" + std::to_string(in.s) +
          ": then A <= gamma_{c+1}(G*) n Z_c(G*), G*/A = G, and A = N_cM(G)",
      "G is abelian, so gamma_2(G*) <= A",
      "gamma_2(G*) <= A <= Z_c(G*) gives gamma_{c+2}(G*) = [gamma_2(G*), c G*] "
      "<= [Z_c(G*), c G*] = 1",
      "gamma_2(G*) <= A <= gamma_{c+1}(G*) gives gamma_3(G*) = "
      "[gamma_2(G*), G*] <= [gamma_{c+1}(G*), G*] = gamma_{c+2}(G*) = 1",
      "c >= 2 and gamma_3(G*) = 1 force gamma_{c+1}(G*) = 1, hence "
      "A <= gamma_{c+1}(G*) = 1",
      "but A = N_cM(G) = Z_" + std::to_string(d) + " ^ " + std::to_string(n) +
          " with d = " + std::to_string(d) + " != 1 and n = " +
          std::to_string(n) + " >= 1: contradiction, so no N_c-stem cover exists"};
  return out;
}

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// Minimal generator count d(G) of the presented p-group: G/Phi(G) is the
// elementary quotient F_p^m modulo the span of all tail vectors.
int minimal_generator_count(const Pcp& pcp) {
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < pcp.m; ++i) rows.push_back(pcp.power_tail[i]);
  for (int j = 0; j < pcp.m; ++j)
    for (int i = 0; i < j; ++i) rows.push_back(pcp.comm_tail[j][i]);
  int rank = 0;
  std::vector<int> pivot_col;
  for (auto& row : rows) {
    // reduce against existing pivots
    for (int t = 0; t < rank; ++t) {
      int c = pivot_col[t];
      if (row[c] == 0) continue;
      int f = row[c];
      // row -= f * pivotrow (pivot normalized to 1)
      for (int cc = 0; cc < pcp.m; ++cc)
        row[cc] = ((row[cc] - f * rows[t][cc]) % pcp.p + pcp.p) % pcp.p;
    }
    int c = -1;
    for (int cc = 0; cc < pcp.m; ++cc)
      if (row[cc] != 0) {
        c = cc;
        break;
      }
    if (c < 0) continue;
    // normalize pivot to 1 (p prime)
    int inv = 1;
    while (row[c] * inv % pcp.p != 1) ++inv;
    for (int cc = 0; cc < pcp.m; ++cc) row[cc] = row[cc] * inv % pcp.p;
    std::swap(rows[rank], row);
    pivot_col.push_back(c);
    ++rank;
    if (rank == static_cast<int>(rows.size())) break;
  }
  return pcp.m - rank;
}

Subgroup intersect(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<int> el;
  std::set_intersection(a.elements().begin(), a.elements().end(),
                        b.elements().begin(), b.elements().end(),
                        std::back_inserter(el));
  return Subgroup(g, std::move(el));
}

}  // namespace

/* Completeness of the searched class: a stem cover G* of Z_p + Z_p has order
 * |G| * |N_cM(G)| = p^(2+n). Reading generators along a chief series (central
 * in a p-group) gives a presentation with g_i^p and [g_j, g_i] over strictly
 * later generators, i.e. of the enumerated shape; the odometer covers every
 * tail assignment, so zero passes rules the whole class out. Over-enumeration
 * of isomorphic copies is deliberate - coverage matters, canonicity does not.
 */
SearchCertificate exhaustive_search(const BaerInput& in, long long p,
                                    std::size_t max_order) {
  in.validate();
  if (!is_prime(p)) throw std::invalid_argument("exhaustive_search: p must be prime");
  if (in.r != p || in.s != p)
    throw std::invalid_argument("exhaustive_search: requires r = s = p");

  const long long n = witt_count(2, in.c + 1);
  if (n > 58) throw resource_error("exhaustive_search: class too large");
  const int m = static_cast<int>(2 + n);
  Int big = boost::multiprecision::pow(Int(p), static_cast<unsigned>(m));
  const long long bound = std::min<long long>(64, static_cast<long long>(max_order));
  if (big > bound)
    throw resource_error("exhaustive_search: order " + big.str() +
                         " exceeds bound " + std::to_string(bound));
  const int order = static_cast<int>(big);
  const std::size_t a_order = static_cast<std::size_t>(
      boost::multiprecision::pow(Int(p), static_cast<unsigned>(n)).convert_to<long long>());

  SearchCertificate cert;
  cert.order = order;
  cert.length = m;

  IntMatrix rel(2, 2);
  rel.at(0, 0) = in.r;
  rel.at(1, 1) = in.s;
  const AbelianType target_g = quotient_invariants(2, rel);
  const AbelianType target_a = baer_formula(in);

  // free tail positions, odometer digits in [0, p)
  struct Slot {
    int j, i, pos;  // i == -1 marks a power tail slot for generator j
  };
  std::vector<Slot> slots;
  for (int i = 0; i < m; ++i)
    for (int pos = i + 1; pos < m; ++pos) slots.push_back({i, -1, pos});
  for (int j = 1; j < m; ++j)
    for (int i = 0; i < j; ++i)
      for (int pos = j + 1; pos < m; ++pos) slots.push_back({j, i, pos});

  Pcp pcp = Pcp::trivial(static_cast<int>(p), m);
  std::vector<int> digits(slots.size(), 0);

  for (;;) {
    for (std::size_t t = 0; t < slots.size(); ++t) {
      const Slot& sl = slots[t];
      if (sl.i < 0)
        pcp.power_tail[sl.j][sl.pos] = digits[t];
      else
        pcp.comm_tail[sl.j][sl.i][sl.pos] = digits[t];
    }
    ++cert.examined;

    if (pcp_consistency_check(pcp)) {
      ++cert.consistent;
      // Any stem cover candidate must be 2-generated: a qualifying A lies in
      // gamma_{c+1}(G*) <= gamma_2(G*) <= Phi(G*), and the quotient by A is
      // Z_p + Z_p, which needs two generators. Skipping d(G) != 2 candidates
      // cannot drop a passer.
      if (minimal_generator_count(pcp) == 2) {
        FiniteGroup g = materialize(pcp, static_cast<std::size_t>(order));
        auto lc = lower_central(g);
        auto uc = upper_central(g);
        auto lterm = [&](int i) -> const Subgroup& {
          return lc[std::min<std::size_t>(i - 1, lc.size() - 1)];
        };
        auto uterm = [&](int i) -> const Subgroup& {
          return uc[std::min<std::size_t>(i, uc.size() - 1)];
        };
        Subgroup region = intersect(g, lterm(in.c + 1), uterm(in.c));
        if (region.order() >= a_order && region.order() % a_order == 0) {
          for (const Subgroup& a :
               subgroups_of_order_in(g, region, a_order, /*normal_only=*/true)) {
            if (in.c >= 2 && abelian_invariants(g, a) == target_g) {
              // the proof's steps must hold on any such instance
              if (lterm(in.c + 2).order() != 1 || lterm(in.c + 1).order() != 1)
                throw std::logic_error(
                    "exhaustive_search: deduction step failed on a candidate");
            }
            if (is_stem_cover(g, a, in)) {
              // completeness justification, checked on every passer: a stem
              // cover has order p^m, two generators and class <= c+1, so it
              // carries a Pcp of the enumerated shape
              if (static_cast<int>(lc.size()) - 1 > in.c + 1)
                throw std::logic_error(
                    "exhaustive_search: passing candidate of class > c+1");
              ++cert.passing;
              WitnessSummary w;
              w.order = g.order();
              w.center_order = static_cast<int>(uterm(1).order());
              w.gamma2_order = static_cast<int>(lterm(2).order());
              for (int x = 0; x < g.order(); ++x)
                if (x != g.id() && g.mul(x, x) == g.id()) ++w.involutions;
              w.pcp = pcp.str();
              cert.witnesses.push_back(std::move(w));
            }
          }
        }
      }
    }

    // odometer
    std::size_t t = 0;
    while (t < digits.size() && digits[t] == p - 1) digits[t++] = 0;
    if (t == digits.size()) break;
    ++digits[t];
  }
  return cert;
}

}  // namespace nilcov
