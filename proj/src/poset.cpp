#include "posetbar/poset.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_set>

#include "posetbar/error.hpp"

namespace posetbar {

bool Bitset::any() const {
  for (auto w : words_)
    if (w) return true;
  return false;
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bitset::intersects(const Bitset& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & o.words_[i]) return true;
  return false;
}

Bitset& Bitset::operator|=(const Bitset& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

Bitset& Bitset::operator&=(const Bitset& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

namespace {

std::uint64_t cover_key(ElementId lo, ElementId hi) { return (std::uint64_t{lo} << 32) | hi; }

}  // namespace

FinitePoset FinitePoset::from_hasse(std::vector<std::string> names,
                                    const std::vector<std::pair<std::string, std::string>>& covers) {
  std::unordered_map<std::string, ElementId> idx;
  for (ElementId i = 0; i < names.size(); ++i)
    if (!idx.emplace(names[i], i).second) throw DomainError("duplicate element '" + names[i] + "'");
  std::vector<Cover> cv;
  cv.reserve(covers.size());
  for (const auto& [lo, hi] : covers) {
    auto a = idx.find(lo), b = idx.find(hi);
    if (a == idx.end()) throw DomainError("cover references unknown element '" + lo + "'");
    if (b == idx.end()) throw DomainError("cover references unknown element '" + hi + "'");
    cv.push_back({a->second, b->second});
  }
  return from_hasse(std::move(names), std::move(cv));
}

FinitePoset FinitePoset::from_hasse(std::vector<std::string> names, std::vector<Cover> covers) {
  FinitePoset p;
  const std::size_t n = names.size();
  for (ElementId i = 0; i < n; ++i)
    if (!p.index_.emplace(names[i], i).second) throw DomainError("duplicate element '" + names[i] + "'");
  p.names_ = std::move(names);
  p.upper_covers_.assign(n, {});
  p.lower_covers_.assign(n, {});
  for (std::size_t i = 0; i < covers.size(); ++i) {
    const auto [lo, hi] = covers[i];
    if (lo >= n || hi >= n) throw DomainError("cover references unknown element index");
    if (lo == hi) throw DomainError("cycle detected: " + p.names_[lo] + " covers itself");
    if (!p.cover_lookup_.emplace(cover_key(lo, hi), i).second)
      throw DomainError("duplicate cover " + p.names_[lo] + "<" + p.names_[hi]);
    p.upper_covers_[lo].push_back(hi);
    p.lower_covers_[hi].push_back(lo);
  }
  p.covers_ = std::move(covers);
  for (auto& v : p.upper_covers_) std::sort(v.begin(), v.end());
  for (auto& v : p.lower_covers_) std::sort(v.begin(), v.end());

  // Kahn's algorithm, smallest index first for a deterministic extension.
  std::vector<std::size_t> indeg(n);
  for (ElementId x = 0; x < n; ++x) indeg[x] = p.lower_covers_[x].size();
  std::vector<ElementId> ready;
  for (ElementId x = 0; x < n; ++x)
    if (!indeg[x]) ready.push_back(x);
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    ElementId x = *it;
    ready.erase(it);
    p.topo_.push_back(x);
    for (auto y : p.upper_covers_[x])
      if (--indeg[y] == 0) ready.push_back(y);
  }
  if (p.topo_.size() != n) throw DomainError("cycle detected in cover relation");

  p.up_.assign(n, Bitset(n));
  for (auto it = p.topo_.rbegin(); it != p.topo_.rend(); ++it) {
    const ElementId x = *it;
    p.up_[x].set(x);
    for (auto y : p.upper_covers_[x]) p.up_[x] |= p.up_[y];
  }
  for (const auto& c : p.covers_) {
    for (auto other : p.upper_covers_[c.lower])
      if (other != c.upper && p.up_[other].test(c.upper))
        throw DomainError("cover " + p.names_[c.lower] + "<" + p.names_[c.upper] +
                          " is implied by transitivity through " + p.names_[other]);
  }
  p.finish();
  return p;
}

FinitePoset FinitePoset::from_order(std::vector<std::string> names, std::vector<Bitset> up_sets) {
  const std::size_t n = names.size();
  if (up_sets.size() != n) throw DomainError("order relation size mismatch");
  std::vector<Bitset> down(n, Bitset(n));
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      if (up_sets[a].test(b)) down[b].set(a);
  std::vector<Cover> covers;
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      if (a == b || !up_sets[a].test(b)) continue;
      Bitset between = up_sets[a];
      between &= down[b];
      between.reset(a);
      between.reset(b);
      if (!between.any()) covers.push_back({a, b});
    }
  }
  auto p = from_hasse(std::move(names), std::move(covers));
  if (!(p.up_ == up_sets)) throw DomainError("relation is not a partial order");
  return p;
}

FinitePoset FinitePoset::grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw DomainError("grid dimensions must be positive");
  std::vector<std::string> names;
  std::vector<Cover> covers;
  auto id = [cols](std::size_t i, std::size_t j) { return static_cast<ElementId>(i * cols + j); };
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      names.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (j + 1 < cols) covers.push_back({id(i, j), id(i, j + 1)});
      if (i + 1 < rows) covers.push_back({id(i, j), id(i + 1, j)});
    }
  auto p = from_hasse(std::move(names), std::move(covers));
  p.grid_ = GridShape{rows, cols};
  return p;
}

FinitePoset FinitePoset::chain(std::size_t n) {
  if (n == 0) throw DomainError("chain length must be positive");
  std::vector<std::string> names;
  std::vector<Cover> covers;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i + 1));
  for (ElementId i = 0; i + 1 < n; ++i) covers.push_back({i, i + 1});
  auto p = from_hasse(std::move(names), std::move(covers));
  p.grid_ = GridShape{1, n};
  return p;
}

void FinitePoset::finish() {
  const std::size_t n = names_.size();
  down_.assign(n, Bitset(n));
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      if (up_[a].test(b)) down_[b].set(a);
}

std::optional<ElementId> FinitePoset::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FinitePoset::cover_index(ElementId lower, ElementId upper) const {
  auto it = cover_lookup_.find(cover_key(lower, upper));
  if (it == cover_lookup_.end()) return std::nullopt;
  return it->second;
}

std::pair<std::size_t, std::size_t> FinitePoset::grid_coords(ElementId x) const {
  if (!grid_) throw DomainError("poset is not a grid");
  return {x / grid_->cols + 1, x % grid_->cols + 1};
}

bool FinitePoset::is_connected(std::span<const ElementId> support) const {
  if (support.empty()) return false;
  std::vector<bool> in(size(), false), seen(size(), false);
  for (auto x : support) in[x] = true;
  std::vector<ElementId> stack{support.front()};
  seen[support.front()] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    ++reached;
    for (auto y : support)
      if (!seen[y] && comparable(x, y)) {
        seen[y] = true;
        stack.push_back(y);
      }
  }
  return reached == support.size();
}

bool FinitePoset::is_convex(std::span<const ElementId> support) const {
  std::vector<bool> in(size(), false);
  for (auto x : support) in[x] = true;
  for (auto x : support)
    for (auto z : support) {
      if (!leq(x, z)) continue;
      for (ElementId y = 0; y < size(); ++y)
        if (!in[y] && leq(x, y) && leq(y, z)) return false;
    }
  return true;
}

bool FinitePoset::is_interval(std::span<const ElementId> support) const {
  return is_connected(support) && is_convex(support);
}

bool canonical_less(const Support& a, const Support& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Support segment(const FinitePoset& p, ElementId x, ElementId z) {
  if (!p.leq(x, z)) throw DomainError("segment endpoints are not ordered");
  Support s;
  for (ElementId y = 0; y < p.size(); ++y)
    if (p.leq(x, y) && p.leq(y, z)) s.push_back(y);
  return s;
}

Support principal_up_set(const FinitePoset& p, ElementId x) {
  Support s;
  for (ElementId y = 0; y < p.size(); ++y)
    if (p.leq(x, y)) s.push_back(y);
  return s;
}

Support hook(const FinitePoset& p, ElementId a, std::optional<ElementId> b) {
  if (b && !p.less(a, *b)) throw DomainError("hook endpoints must satisfy a < b");
  Support s;
  for (ElementId y = 0; y < p.size(); ++y)
    if (p.leq(a, y) && !(b && p.leq(*b, y))) s.push_back(y);
  return s;
}

namespace {

std::uint64_t to_mask(const Support& s) {
  std::uint64_t m = 0;
  for (auto x : s) m |= std::uint64_t{1} << x;
  return m;
}

Support from_mask(std::uint64_t m) {
  Support s;
  while (m) {
    s.push_back(static_cast<ElementId>(std::countr_zero(m)));
    m &= m - 1;
  }
  return s;
}

}  // namespace

IntervalCatalog::IntervalCatalog(PosetPtr poset, std::vector<IntervalInfo> intervals)
    : poset_(std::move(poset)), intervals_(std::move(intervals)), containment_(FinitePoset::chain(1)) {
  std::sort(intervals_.begin(), intervals_.end(),
            [](const IntervalInfo& a, const IntervalInfo& b) { return canonical_less(a.support, b.support); });
  const std::size_t n = intervals_.size();
  std::vector<std::uint64_t> masks(n);
  for (std::size_t i = 0; i < n; ++i) {
    masks[i] = to_mask(intervals_[i].support);
    if (!lookup_.emplace(masks[i], i).second) throw InternalError("duplicate interval in catalog");
  }
  std::vector<std::string> names(n);
  std::vector<Bitset> up(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = "I" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j)
      if ((masks[j] & ~masks[i]) == 0) up[i].set(j);
  }
  containment_ = FinitePoset::from_order(std::move(names), std::move(up));
}

std::uint64_t IntervalCatalog::mask(const Support& support) const { return to_mask(support); }

std::optional<std::size_t> IntervalCatalog::find(const Support& support) const {
  for (auto x : support)
    if (x >= poset_->size()) return std::nullopt;
  auto it = lookup_.find(to_mask(support));
  if (it == lookup_.end() || intervals_[it->second].support.size() != support.size()) return std::nullopt;
  return it->second;
}

std::size_t IntervalCatalog::index_of(const Support& support) const {
  auto i = find(support);
  if (!i) throw DomainError("subset is not an interval of the poset");
  return *i;
}

std::vector<std::size_t> IntervalCatalog::segments() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (intervals_[i].is_segment) out.push_back(i);
  return out;
}

std::vector<std::size_t> IntervalCatalog::principal_up_sets() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (intervals_[i].is_principal_up_set) out.push_back(i);
  return out;
}

std::size_t IntervalCatalog::segment_index(ElementId x, ElementId y) const {
  return index_of(segment(*poset_, x, y));
}

CatalogPtr enumerate_intervals(const PosetPtr& poset, std::size_t cap) {
  const auto& p = *poset;
  const std::size_t n = p.size();
  if (cap > 63) cap = 63;
  if (n > cap)
    throw CapExceeded("poset has " + std::to_string(n) + " elements; interval enumeration cap is " +
                      std::to_string(cap));
  std::vector<std::uint64_t> nbr(n, 0), up(n, 0), down(n, 0);
  for (const auto& c : p.covers()) {
    nbr[c.lower] |= std::uint64_t{1} << c.upper;
    nbr[c.upper] |= std::uint64_t{1} << c.lower;
  }
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y)
      if (p.leq(x, y)) {
        up[x] |= std::uint64_t{1} << y;
        down[y] |= std::uint64_t{1} << x;
      }

  // Every Hasse-connected set is reachable from a singleton by adding one
  // Hasse neighbour at a time (remove a leaf of a spanning tree).
  std::unordered_set<std::uint64_t> seen;
  std::deque<std::uint64_t> queue;
  for (ElementId x = 0; x < n; ++x) {
    seen.insert(std::uint64_t{1} << x);
    queue.push_back(std::uint64_t{1} << x);
  }
  std::vector<std::uint64_t> found;
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    bool convex = true;
    for (ElementId y = 0; y < n && convex; ++y)
      if (!((s >> y) & 1) && (down[y] & s) && (up[y] & s)) convex = false;
    if (convex) found.push_back(s);
    std::uint64_t frontier = 0;
    for (auto rest = s; rest; rest &= rest - 1) frontier |= nbr[std::countr_zero(rest)];
    frontier &= ~s;
    for (; frontier; frontier &= frontier - 1) {
      const auto t = s | (std::uint64_t{1} << std::countr_zero(frontier));
      if (seen.insert(t).second) queue.push_back(t);
    }
  }

  std::unordered_set<std::uint64_t> segs, hooks, ups;
  for (ElementId x = 0; x < n; ++x) {
    ups.insert(up[x]);
    hooks.insert(up[x]);
    for (ElementId z = 0; z < n; ++z) {
      if (p.leq(x, z)) segs.insert(up[x] & down[z]);
      if (p.less(x, z)) hooks.insert(up[x] & ~up[z]);
    }
  }
  std::vector<IntervalInfo> infos;
  infos.reserve(found.size());
  for (auto m : found)
    infos.push_back({from_mask(m), segs.count(m) > 0, hooks.count(m) > 0, ups.count(m) > 0});
  return std::make_shared<const IntervalCatalog>(poset, std::move(infos));
}

IncidenceFunction::IncidenceFunction(const FinitePoset& q, std::vector<std::int64_t> dense)
    : n_(q.size()), values_(std::move(dense)) {
  if (values_.size() != n_ * n_) throw DomainError("incidence function size mismatch");
  for (ElementId a = 0; a < n_; ++a)
    for (ElementId b = 0; b < n_; ++b)
      if (!q.leq(a, b) && values_[a * n_ + b] != 0)
        throw DomainError("incidence function nonzero on an incomparable pair");
}

IncidenceFunction zeta(const FinitePoset& q) {
  const auto n = q.size();
  std::vector<std::int64_t> v(n * n, 0);
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      if (q.leq(a, b)) v[a * n + b] = 1;
  return {q, std::move(v)};
}

IncidenceFunction delta(const FinitePoset& q) {
  const auto n = q.size();
  std::vector<std::int64_t> v(n * n, 0);
  for (ElementId a = 0; a < n; ++a) v[a * n + a] = 1;
  return {q, std::move(v)};
}

IncidenceFunction mobius(const FinitePoset& q) {
  const auto n = q.size();
  std::vector<std::int64_t> v(n * n, 0);
  const auto& order = q.linear_extension();
  for (ElementId a = 0; a < n; ++a) {
    v[a * n + a] = 1;
    for (auto b : order) {
      if (!q.less(a, b)) continue;
      std::int64_t sum = 0;
      for (ElementId r = 0; r < n; ++r)
        if (r != b && q.leq(a, r) && q.leq(r, b)) sum += v[a * n + r];
      v[a * n + b] = -sum;
    }
  }
  return {q, std::move(v)};
}

IncidenceFunction convolve(const IncidenceFunction& alpha, const IncidenceFunction& beta,
                           const FinitePoset& q) {
  const auto n = q.size();
  std::vector<std::int64_t> v(n * n, 0);
  for (ElementId a = 0; a < n; ++a)
    for (ElementId c = 0; c < n; ++c) {
      if (!q.leq(a, c)) continue;
      std::int64_t sum = 0;
      for (ElementId b = 0; b < n; ++b)
        if (q.leq(a, b) && q.leq(b, c)) sum += alpha(a, b) * beta(b, c);
      v[a * n + c] = sum;
    }
  return {q, std::move(v)};
}

std::vector<std::int64_t> convolve(std::span<const std::int64_t> f, const IncidenceFunction& alpha,
                                   const FinitePoset& q) {
  const auto n = q.size();
  if (f.size() != n) throw DomainError("function is not total on the poset");
  std::vector<std::int64_t> out(n, 0);
  for (ElementId b = 0; b < n; ++b)
    for (ElementId a = 0; a < n; ++a)
      if (q.leq(a, b)) out[b] += f[a] * alpha(a, b);
  return out;
}

}  // namespace posetbar
