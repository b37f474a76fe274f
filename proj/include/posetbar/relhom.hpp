#pragma once

// Minimal approximations and resolutions relative to a set Q of intervals.

#include <cstddef>
#include <string>
#include <vector>

#include "posetbar/invariants.hpp"
#include "posetbar/rep.hpp"
#include "posetbar/workspace.hpp"

namespace posetbar {

// Catalog indices, sorted. Must contain every principal up-set.
class BasisSet {
 public:
  BasisSet(const Workspace& ws, std::vector<std::size_t> members);
  static BasisSet all_intervals(const Workspace& ws);
  static BasisSet projectives(const Workspace& ws);

  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(std::size_t index) const;

 private:
  std::vector<std::size_t> members_;
};

struct Approximation {
  RepPtr source;            // E, the direct sum of the chosen interval modules
  Morphism map;             // E -> M
  InvariantValue multiplicities;
  std::vector<std::size_t> summands;  // catalog index of each summand of E, in order
};

// Minimal right Q-approximation. Throws InternalError if the result is not an
// epimorphism or not a precover.
Approximation minimal_cover(const Workspace& ws, const RepPtr& m, const BasisSet& q);

// Cover multiplicities alone.
InvariantValue cover_multiplicities(const Workspace& ws, const RepPtr& m, const BasisSet& q);

struct ResolutionTerm {
  RepPtr module;                      // term I_i
  std::vector<std::size_t> summands;  // catalog indices
  InvariantValue multiplicities;
  Morphism differential;              // I_0 -> M, and I_i -> I_{i-1} for i > 0
  RepPtr syzygy;                      // the module covered at this step (M for i = 0)
};

struct Resolution {
  RepPtr target;
  std::vector<ResolutionTerm> terms;

  // Index of the last nonzero term; 0 for the empty resolution of 0.
  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
};

inline constexpr std::size_t kDefaultMaxDepth = 32;

// Throws CapExceeded when the syzygies are still nonzero after max_depth steps.
Resolution minimal_resolution(const Workspace& ws, const RepPtr& m, const BasisSet& q,
                              std::size_t max_depth = kDefaultMaxDepth);

InvariantValue betti(const Resolution& r, std::size_t i);
InvariantValue euler_char(const Resolution& r);

// Violations of exactness and of the alternating dimension count, one line each.
std::vector<std::string> audit_resolution(const Resolution& r);

}  // namespace posetbar
