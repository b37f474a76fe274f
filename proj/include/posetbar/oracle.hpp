#pragma once

// Brute-force indecomposable decomposition, used to cross-check the
// multiplicity formulas. Las Vegas: it either returns a certified answer or
// throws Undecided.

#include <cstdint>
#include <vector>

#include "posetbar/rep.hpp"

namespace posetbar {

struct OracleOptions {
  std::size_t cap = 12;       // maximal total dimension
  std::size_t retries = 64;   // random endomorphisms tried per module
  std::uint64_t seed = 0x6f7261636c65ULL;
  std::uint32_t max_scan_modulus = 1024;  // eigenvalue scan over all of GF(p) up to this p
};

// Splits m into indecomposable summands. A summand is reported indecomposable
// only when End has dimension 1 or End is certified local: the basis elements
// shifted by their unique eigenvalues span a nilpotent ideal of codimension 1.
std::vector<RepPtr> decompose_oracle(const RepPtr& m, const OracleOptions& options = {});

// Number of summands isomorphic to k_support.
std::size_t count_interval_summands(const std::vector<RepPtr>& summands, const Support& support);

}  // namespace posetbar
