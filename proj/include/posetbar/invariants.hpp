#pragma once

// Additive invariants of representations, valued in finitely supported
// integer functions on elements, segments or intervals.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "posetbar/rep.hpp"
#include "posetbar/workspace.hpp"

namespace posetbar {

enum class Keyspace { elements, segments, intervals };

std::string to_string(Keyspace k);
Keyspace keyspace_from_string(const std::string& s);

// Elements: {x}. Segments: {x, y} with x <= y. Intervals: the sorted support.
using Key = std::vector<ElementId>;

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const { return canonical_less(a, b); }
};

class InvariantValue {
 public:
  using Entries = std::map<Key, std::int64_t, KeyLess>;

  InvariantValue() = default;
  explicit InvariantValue(Keyspace keyspace) : keyspace_(keyspace) {}

  Keyspace keyspace() const { return keyspace_; }
  const Entries& entries() const { return entries_; }
  std::int64_t at(const Key& key) const;
  void add(const Key& key, std::int64_t coeff);  // drops keys that reach 0
  bool is_zero() const { return entries_.empty(); }

  InvariantValue& operator+=(const InvariantValue& o);
  InvariantValue& operator-=(const InvariantValue& o);
  InvariantValue scaled(std::int64_t s) const;
  friend InvariantValue operator+(InvariantValue a, const InvariantValue& b) { return a += b; }
  friend InvariantValue operator-(InvariantValue a, const InvariantValue& b) { return a -= b; }
  friend bool operator==(const InvariantValue&, const InvariantValue&) = default;

 private:
  Keyspace keyspace_ = Keyspace::intervals;
  Entries entries_;
};

InvariantValue dim_vector(const Representation& m);
// Rank of M(x -> y) for every x <= y.
InvariantValue rank_invariant(const Representation& m);
// rank(M|_I) for each catalog index in `which` (all intervals when empty).
InvariantValue generalized_rank(const Workspace& ws, const Representation& m,
                                const std::vector<std::size_t>& which = {});
// Möbius inversion of the generalized rank over (Int(P), ⊇).
InvariantValue gpd(const Workspace& ws, const Representation& m);
// Multiplicity of k_I as a summand, by the rank of the composition pairing
// Hom(k_I, M) x Hom(M, k_I) -> End(k_I) = k.
InvariantValue interval_multiplicity(const Workspace& ws, const RepPtr& m);
InvariantValue dimhom(const Workspace& ws, const RepPtr& m);

// Multiplicity of `probe` as a summand of m, assuming End(probe) = k: the rank
// of the pairing (f, g) -> g o f evaluated at any point of probe's support.
std::size_t pairing_multiplicity(const RepPtr& probe, const RepPtr& m);

// Values re-keyed from catalog order.
InvariantValue from_catalog_vector(const Workspace& ws, const std::vector<std::int64_t>& v);
std::vector<std::int64_t> to_catalog_vector(const Workspace& ws, const InvariantValue& v);
// Segment-keyed part of an interval-keyed value, re-keyed by endpoints.
InvariantValue restrict_to_segments(const Workspace& ws, const InvariantValue& interval_keyed);

// xi_I : Q_I -> P for one interval I.
struct CompressionEntry {
  PosetPtr probe_poset;
  std::vector<ElementId> map;  // map[q] in P
};

// One entry per catalog interval, in catalog order.
struct CompressionSystem {
  std::vector<CompressionEntry> entries;
};

CompressionSystem total_compression(const Workspace& ws);
std::vector<std::string> validate_compression(const Workspace& ws, const CompressionSystem& xi);
// M o xi_I as a representation of Q_I.
Representation pullback(const Representation& m, const CompressionEntry& entry);
InvariantValue compression_multiplicity(const Workspace& ws, const RepPtr& m, const CompressionSystem& xi);

}  // namespace posetbar
