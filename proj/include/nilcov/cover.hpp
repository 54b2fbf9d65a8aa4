#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilcov/fingroup.hpp"

namespace nilcov {

enum class CoverStatus { NoneExists, ExistsConstructed, ExistsTrivially };

std::string to_string(CoverStatus s);

// Outcome of the stem-cover existence question for (r, s, c).
// NoneExists only for c >= 2 and d != 1 (with the deduction trace);
// ExistsConstructed only for c = 1 (with a verified witness);
// ExistsTrivially only for d = 1.
struct CoverVerdict {
  BaerInput input;
  CoverStatus status;
  std::vector<std::string> trace;  // deduction steps for NoneExists
  std::shared_ptr<const FiniteGroup> witness;  // when constructed and small enough
  std::vector<int> witness_a;                  // element indices of A in the witness
  bool witness_verified = false;               // is_stem_cover held on the witness
};

// The classical c = 1 covering group of Z_r + Z_s on triples
// (i, j, k) in Z_r x Z_s x Z_d with
//   (i,j,k)(i',j',k') = (i+i', j+j', k+k'+j*i'),
// together with A = {(0,0,k)}. The cocycle j*i' is bilinear, so the table is
// associative by construction; the pair passes is_stem_cover at c = 1.
std::pair<std::shared_ptr<const FiniteGroup>, std::vector<int>> construct_c1_cover(
    long long r, long long s, std::size_t max_order = 1024);

CoverVerdict stem_cover_verdict(const BaerInput& in, std::size_t max_order = 1024);

// Invariant summary of one passing candidate from the exhaustive search.
struct WitnessSummary {
  int order = 0;
  int center_order = 0;
  int gamma2_order = 0;
  int involutions = 0;  // elements of order exactly 2
  std::string pcp;
};

struct SearchCertificate {
  long long examined = 0;    // all tail assignments of the enumerated shape
  long long consistent = 0;  // those passing the consistency check
  long long passing = 0;     // those admitting an A with is_stem_cover true
  int order = 0;             // group order searched
  int length = 0;            // pcp length m
  std::vector<WitnessSummary> witnesses;
};

// Brute-force instantiation of the existence question for r = s = p prime:
// every length-m Pcp at p with m = log_p(r*s*d^n) is enumerated (no
// isomorphism rejection), each consistent one is materialized and every
// normal subgroup A of order |N_cM(G)| inside gamma_{c+1} n Z_c is tested.
SearchCertificate exhaustive_search(const BaerInput& in, long long p,
                                    std::size_t max_order = 64);

}  // namespace nilcov
