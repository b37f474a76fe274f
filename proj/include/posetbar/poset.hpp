#pragma once

// Finite posets, their intervals, and the incidence algebra.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace posetbar {

using ElementId = std::uint32_t;

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool any() const;
  std::size_t count() const;
  bool intersects(const Bitset& o) const;
  Bitset& operator|=(const Bitset& o);
  Bitset& operator&=(const Bitset& o);
  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Cover {
  ElementId lower;
  ElementId upper;
  friend bool operator==(const Cover&, const Cover&) = default;
};

struct GridShape {
  std::size_t rows;
  std::size_t cols;
};

class FinitePoset {
 public:
  // Validates a Hasse diagram: distinct names, known endpoints, no cycles, no
  // transitively implied covers.
  static FinitePoset from_hasse(std::vector<std::string> names,
                                const std::vector<std::pair<std::string, std::string>>& covers);
  static FinitePoset from_hasse(std::vector<std::string> names, std::vector<Cover> covers);
  // Takes a partial order given as leq[a] = set of b with a <= b and extracts
  // its covers. The relation must already be a partial order.
  static FinitePoset from_order(std::vector<std::string> names, std::vector<Bitset> up_sets);
  // {1<..<rows} x {1<..<cols}. Element (i,j) has index (i-1)*cols + (j-1).
  static FinitePoset grid(std::size_t rows, std::size_t cols);
  static FinitePoset chain(std::size_t n);

  std::size_t size() const { return names_.size(); }
  const std::string& name(ElementId x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<ElementId> find(const std::string& name) const;

  bool leq(ElementId a, ElementId b) const { return up_[a].test(b); }
  bool less(ElementId a, ElementId b) const { return a != b && leq(a, b); }
  bool comparable(ElementId a, ElementId b) const { return leq(a, b) || leq(b, a); }
  const Bitset& up_set(ElementId x) const { return up_[x]; }
  const Bitset& down_set(ElementId x) const { return down_[x]; }

  const std::vector<Cover>& covers() const { return covers_; }
  std::optional<std::size_t> cover_index(ElementId lower, ElementId upper) const;
  const std::vector<ElementId>& upper_covers(ElementId x) const { return upper_covers_[x]; }
  const std::vector<ElementId>& lower_covers(ElementId x) const { return lower_covers_[x]; }
  // A linear extension: every element appears after all elements below it.
  const std::vector<ElementId>& linear_extension() const { return topo_; }

  std::optional<GridShape> grid_shape() const { return grid_; }
  // 1-based (row, column) of a grid element.
  std::pair<std::size_t, std::size_t> grid_coords(ElementId x) const;

  // Subset predicates; the support must be sorted and duplicate-free.
  bool is_connected(std::span<const ElementId> support) const;
  bool is_convex(std::span<const ElementId> support) const;
  bool is_interval(std::span<const ElementId> support) const;

  // Structural equality: same names and same covers in the same order.
  friend bool operator==(const FinitePoset& a, const FinitePoset& b) {
    return a.names_ == b.names_ && a.covers_ == b.covers_;
  }

 private:
  FinitePoset() = default;
  void finish();

  std::vector<std::string> names_;
  std::vector<Cover> covers_;
  std::vector<Bitset> up_;
  std::vector<Bitset> down_;
  std::vector<std::vector<ElementId>> upper_covers_;
  std::vector<std::vector<ElementId>> lower_covers_;
  std::vector<ElementId> topo_;
  std::unordered_map<std::string, ElementId> index_;
  std::unordered_map<std::uint64_t, std::size_t> cover_lookup_;
  std::optional<GridShape> grid_;
};

using PosetPtr = std::shared_ptr<const FinitePoset>;

inline PosetPtr make_poset(FinitePoset p) { return std::make_shared<const FinitePoset>(std::move(p)); }

// Sorted, duplicate-free set of element ids. Intervals and arbitrary subsets
// both use this type; is_interval() tells them apart.
using Support = std::vector<ElementId>;

struct IntervalInfo {
  Support support;
  bool is_segment = false;
  bool is_hook = false;
  bool is_principal_up_set = false;
};

// Size-then-lexicographic order on supports.
bool canonical_less(const Support& a, const Support& b);

class IntervalCatalog {
 public:
  static constexpr std::size_t kDefaultCap = 20;

  IntervalCatalog(PosetPtr poset, std::vector<IntervalInfo> intervals);

  const PosetPtr& poset() const { return poset_; }
  std::size_t size() const { return intervals_.size(); }
  const IntervalInfo& operator[](std::size_t i) const { return intervals_[i]; }
  const std::vector<IntervalInfo>& intervals() const { return intervals_; }
  std::optional<std::size_t> find(const Support& support) const;
  std::size_t index_of(const Support& support) const;  // throws if absent
  // (Int(P), ⊇): interval i <= interval j iff support(i) contains support(j).
  const FinitePoset& containment() const { return containment_; }

  std::vector<std::size_t> segments() const;
  std::vector<std::size_t> principal_up_sets() const;
  std::size_t segment_index(ElementId x, ElementId y) const;  // [x, y], x <= y
  std::uint64_t mask(const Support& support) const;

 private:
  PosetPtr poset_;
  std::vector<IntervalInfo> intervals_;
  FinitePoset containment_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;  // support bitmask -> index
};

using CatalogPtr = std::shared_ptr<const IntervalCatalog>;

// Exhaustive enumeration by breadth-first growth of Hasse-connected subsets,
// keeping the convex ones. Throws CapExceeded when |P| > cap.
CatalogPtr enumerate_intervals(const PosetPtr& poset, std::size_t cap = IntervalCatalog::kDefaultCap);

Support segment(const FinitePoset& p, ElementId x, ElementId z);
Support principal_up_set(const FinitePoset& p, ElementId x);
// <a, b< = {p : a <= p, not b <= p}; b = nullopt stands for infinity.
Support hook(const FinitePoset& p, ElementId a, std::optional<ElementId> b);

// Element of the incidence algebra: values on comparable pairs a <= b.
class IncidenceFunction {
 public:
  IncidenceFunction(const FinitePoset& q, std::vector<std::int64_t> dense);

  std::size_t size() const { return n_; }
  std::int64_t operator()(ElementId a, ElementId b) const { return values_[a * n_ + b]; }
  const std::vector<std::int64_t>& dense() const { return values_; }
  friend bool operator==(const IncidenceFunction&, const IncidenceFunction&) = default;

 private:
  std::size_t n_;
  std::vector<std::int64_t> values_;  // zero off the order relation
};

IncidenceFunction zeta(const FinitePoset& q);
IncidenceFunction delta(const FinitePoset& q);
// mu(a,a) = 1, mu(a,b) = -sum_{a <= r < b} mu(a,r).
IncidenceFunction mobius(const FinitePoset& q);
// (alpha beta)(p,r) = sum_{p <= q <= r} alpha(p,q) beta(q,r)
IncidenceFunction convolve(const IncidenceFunction& alpha, const IncidenceFunction& beta,
                           const FinitePoset& q);
// (f * alpha)(q) = sum_{p <= q} f(p) alpha(p,q)
std::vector<std::int64_t> convolve(std::span<const std::int64_t> f, const IncidenceFunction& alpha,
                                   const FinitePoset& q);

}  // namespace posetbar
