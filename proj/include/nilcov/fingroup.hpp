#pragma once

#include <string>
#include <vector>

#include "nilcov/baer.hpp"
#include "nilcov/common.hpp"
#include "nilcov/lattice.hpp"

namespace nilcov {

// Power-commutator presentation of a group of order p^m: generators g1..gm,
// relations g_i^p = (word over later generators) and [g_j, g_i] = (word over
// generators past j) for j > i. Tails are exponent vectors of length m with
// entries in [0, p) and zeros at positions <= the owning generator.
struct Pcp {
  int p = 2;
  int m = 0;
  std::vector<std::vector<int>> power_tail;              // [i] over gens > i
  std::vector<std::vector<std::vector<int>>> comm_tail;  // [j][i], j > i, over gens > j

  static Pcp trivial(int p, int m);
  void validate() const;  // structural checks only, not consistency

  Int order() const;

  // one relation per line: "p = 2", "m = 4", "g1^2 = g3", "[g2,g1] = g3 g4";
  // omitted relations have trivial tails, "1" denotes the empty word.
  static Pcp parse(const std::string& text);
  std::string str() const;
};

// Normal form of a * (product of the given syllables), by collection from the
// left with power rewriting g_i^p -> tail. Entries of the result lie in [0,p).
std::vector<int> pcp_mult(const Pcp& pcp, const std::vector<int>& a,
                          const std::vector<std::pair<int, int>>& word);
std::vector<int> pcp_mult(const Pcp& pcp, const std::vector<int>& a,
                          const std::vector<int>& b);

// True iff the presentation defines a group of order exactly p^m, by the
// standard overlap test words.
bool pcp_consistency_check(const Pcp& pcp);

class Subgroup;

// A finite group as a fully materialized multiplication table on element
// indices 0..N-1. Construction verifies the group axioms (Latin square,
// identity, inverses, associativity) and throws std::invalid_argument on any
// failure. Immutable afterwards.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<int> table, int order,
              std::vector<std::string> labels = {},
              std::vector<int> generator_hint = {});

  int order() const { return n_; }
  int id() const { return id_; }
  int mul(int a, int b) const { return t_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int comm(int a, int b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  int pow(int a, long long n) const;
  int element_order(int a) const;
  bool is_abelian() const;
  const std::string& label(int i) const { return labels_[i]; }

 private:
  void verify(const std::vector<int>& gen_hint);
  int n_;
  std::vector<int> t_;
  int id_ = -1;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
};

// Materialized table of a consistent Pcp; order p^m exactly. Detects
// inconsistent input while building (the table fails the group axioms).
FiniteGroup materialize(const Pcp& pcp, std::size_t max_order = 1024);

// Subgroup as a sorted element-index set; keeps a pointer to the parent
// group, which must outlive it. Validated at construction.
class Subgroup {
 public:
  Subgroup(const FiniteGroup& g, std::vector<int> elements);

  const FiniteGroup& parent() const { return *g_; }
  const std::vector<int>& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  bool contains(int x) const;
  bool contains(const Subgroup& other) const;  // other subseteq this

  bool operator==(const Subgroup& o) const {
    return g_ == o.g_ && elems_ == o.elems_;
  }

 private:
  const FiniteGroup* g_;
  std::vector<int> elems_;
};

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup full_subgroup(const FiniteGroup& g);
Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens);
bool is_normal(const Subgroup& h);

// Re-materialize a subgroup as a group in its own right (indices reordered to
// 0..|H|-1 along the sorted element list).
FiniteGroup subgroup_as_group(const Subgroup& h);

// gamma_1 = G, gamma_{i+1} = <[x,y] : x in gamma_i, y in G>, until stable.
std::vector<Subgroup> lower_central(const FiniteGroup& g);
// Z_0 = 1, Z_{i+1} = {x : [x,y] in Z_i for all y}, until stable.
std::vector<Subgroup> upper_central(const FiniteGroup& g);
// Saturated access: gamma_i for any i >= 1 / Z_i for any i >= 0.
Subgroup lower_central_term(const FiniteGroup& g, int i);
Subgroup upper_central_term(const FiniteGroup& g, int i);

// Invariant factors of G/N via relation-matrix SNF on quotient generators;
// N must be normal with abelian quotient.
AbelianType abelian_invariants(const FiniteGroup& g, const Subgroup& n);
// Invariant factors of an abelian G.
AbelianType abelian_invariants(const FiniteGroup& g);

// All subgroups of order k (optionally only the normal ones), by closure of
// generating subsets. |G| <= 1024 enforced.
std::vector<Subgroup> subgroups_of_order(const FiniteGroup& g, std::size_t k,
                                         bool normal_only = false);
// Same, restricted to subgroups of `ambient`.
std::vector<Subgroup> subgroups_of_order_in(const FiniteGroup& g,
                                            const Subgroup& ambient,
                                            std::size_t k, bool normal_only);

// The N_c stem-cover condition for 1 -> A -> G* -> Z_r + Z_s -> 1:
// A normal, A <= gamma_{c+1}(G*) n Z_c(G*), G*/A of the same type as
// Z_r + Z_s, and A abelian of the same type as N_cM(Z_r + Z_s). The two
// target types are computed, not assumed.
bool is_stem_cover(const FiniteGroup& gstar, const Subgroup& a,
                   const BaerInput& in);

}  // namespace nilcov
