#include "posetbar/invariants.hpp"

#include "posetbar/error.hpp"

namespace posetbar {

std::string to_string(Keyspace k) {
  switch (k) {
    case Keyspace::elements: return "elements";
    case Keyspace::segments: return "segments";
    case Keyspace::intervals: return "intervals";
  }
  return "intervals";
}

Keyspace keyspace_from_string(const std::string& s) {
  if (s == "elements") return Keyspace::elements;
  if (s == "segments") return Keyspace::segments;
  if (s == "intervals") return Keyspace::intervals;
  throw ParseError("unknown keyspace '" + s + "'");
}

std::int64_t InvariantValue::at(const Key& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second;
}

void InvariantValue::add(const Key& key, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = entries_.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) entries_.erase(it);
  }
}

InvariantValue& InvariantValue::operator+=(const InvariantValue& o) {
  if (keyspace_ != o.keyspace_ && !o.is_zero() && !is_zero())
    throw DomainError("adding invariant values over different keyspaces");
  if (is_zero()) keyspace_ = o.keyspace_;
  for (const auto& [k, v] : o.entries_) add(k, v);
  return *this;
}

InvariantValue& InvariantValue::operator-=(const InvariantValue& o) { return *this += o.scaled(-1); }

InvariantValue InvariantValue::scaled(std::int64_t s) const {
  InvariantValue out(keyspace_);
  for (const auto& [k, v] : entries_) out.add(k, v * s);
  return out;
}

InvariantValue dim_vector(const Representation& m) {
  InvariantValue out(Keyspace::elements);
  for (ElementId x = 0; x < m.dims().size(); ++x) out.add({x}, static_cast<std::int64_t>(m.dim(x)));
  return out;
}

InvariantValue rank_invariant(const Representation& m) {
  InvariantValue out(Keyspace::segments);
  const auto& p = *m.poset();
  for (ElementId x = 0; x < p.size(); ++x)
    for (ElementId y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) out.add({x, y}, static_cast<std::int64_t>(rank(m.composite(x, y))));
  return out;
}

InvariantValue from_catalog_vector(const Workspace& ws, const std::vector<std::int64_t>& v) {
  InvariantValue out(Keyspace::intervals);
  for (std::size_t i = 0; i < v.size(); ++i) out.add(ws.catalog()[i].support, v[i]);
  return out;
}

std::vector<std::int64_t> to_catalog_vector(const Workspace& ws, const InvariantValue& v) {
  if (v.keyspace() != Keyspace::intervals && !v.is_zero()) throw DomainError("value is not interval-keyed");
  std::vector<std::int64_t> out(ws.catalog().size(), 0);
  for (const auto& [k, c] : v.entries()) out[ws.catalog().index_of(k)] = c;
  return out;
}

InvariantValue restrict_to_segments(const Workspace& ws, const InvariantValue& interval_keyed) {
  InvariantValue out(Keyspace::segments);
  const auto& p = *ws.poset();
  for (ElementId x = 0; x < p.size(); ++x)
    for (ElementId y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) out.add({x, y}, interval_keyed.at(segment(p, x, y)));
  return out;
}

namespace {

std::vector<std::int64_t> rank_vector(const Workspace& ws, const Representation& m) {
  std::vector<std::int64_t> rk(ws.catalog().size());
  for (std::size_t i = 0; i < rk.size(); ++i)
    rk[i] = static_cast<std::int64_t>(rank_of(m, ws.catalog()[i].support));
  return rk;
}

}  // namespace

InvariantValue generalized_rank(const Workspace& ws, const Representation& m,
                                const std::vector<std::size_t>& which) {
  ws.check(m);
  InvariantValue out(Keyspace::intervals);
  if (which.empty()) return from_catalog_vector(ws, rank_vector(ws, m));
  for (auto i : which) {
    if (i >= ws.catalog().size()) throw DomainError("generalized rank requested at a non-interval key");
    out.add(ws.catalog()[i].support, static_cast<std::int64_t>(rank_of(m, ws.catalog()[i].support)));
  }
  return out;
}

InvariantValue gpd(const Workspace& ws, const Representation& m) {
  ws.check(m);
  const auto rk = rank_vector(ws, m);
  return from_catalog_vector(ws, convolve(rk, ws.containment_mobius(), ws.catalog().containment()));
}

std::size_t pairing_multiplicity(const RepPtr& probe, const RepPtr& m) {
  ElementId base = 0;
  while (base < probe->dims().size() && probe->dim(base) == 0) ++base;
  if (base == probe->dims().size()) return 0;
  const auto into = hom_space(probe, m);
  if (into.dimension() == 0) return 0;
  const auto out_of = hom_space(m, probe);
  if (out_of.dimension() == 0) return 0;
  Matrix pairing(into.dimension(), out_of.dimension(), m->field());
  for (std::size_t a = 0; a < into.dimension(); ++a) {
    const auto f = into.morphism(a);
    for (std::size_t b = 0; b < out_of.dimension(); ++b) {
      const auto g = out_of.morphism(b);
      pairing(a, b) = (g.components[base] * f.components[base])(0, 0);
    }
  }
  return rank(pairing);
}

InvariantValue interval_multiplicity(const Workspace& ws, const RepPtr& m) {
  ws.check(*m);
  InvariantValue out(Keyspace::intervals);
  for (std::size_t i = 0; i < ws.catalog().size(); ++i)
    out.add(ws.catalog()[i].support, static_cast<std::int64_t>(pairing_multiplicity(ws.interval_rep(i), m)));
  return out;
}

InvariantValue dimhom(const Workspace& ws, const RepPtr& m) {
  ws.check(*m);
  InvariantValue out(Keyspace::intervals);
  for (std::size_t i = 0; i < ws.catalog().size(); ++i)
    out.add(ws.catalog()[i].support, static_cast<std::int64_t>(hom_dimension(ws.interval_rep(i), m)));
  return out;
}

CompressionSystem total_compression(const Workspace& ws) {
  CompressionSystem xi;
  const auto& p = *ws.poset();
  for (const auto& info : ws.catalog().intervals()) {
    const auto& s = info.support;
    std::vector<std::string> names;
    std::vector<Bitset> up(s.size(), Bitset(s.size()));
    for (std::size_t a = 0; a < s.size(); ++a) {
      names.push_back(p.name(s[a]));
      for (std::size_t b = 0; b < s.size(); ++b)
        if (p.leq(s[a], s[b])) up[a].set(b);
    }
    xi.entries.push_back({make_poset(FinitePoset::from_order(std::move(names), std::move(up))), s});
  }
  return xi;
}

std::vector<std::string> validate_compression(const Workspace& ws, const CompressionSystem& xi) {
  std::vector<std::string> out;
  const auto& p = *ws.poset();
  const auto& cat = ws.catalog();
  if (xi.entries.size() != cat.size()) {
    out.push_back("compression system has " + std::to_string(xi.entries.size()) + " entries for " +
                  std::to_string(cat.size()) + " intervals");
    return out;
  }
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const auto& s = cat[i].support;
    const auto& e = xi.entries[i];
    const auto& q = *e.probe_poset;
    const std::string tag = "interval #" + std::to_string(i) + ": ";
    if (e.map.size() != q.size()) {
      out.push_back(tag + "map is not total on the probe poset");
      continue;
    }
    std::vector<ElementId> all(q.size());
    for (ElementId a = 0; a < q.size(); ++a) all[a] = a;
    if (!q.is_connected(all)) out.push_back(tag + "probe poset is not connected");
    std::vector<bool> in_interval(p.size(), false), hit(p.size(), false);
    for (auto x : s) in_interval[x] = true;
    bool lands = true;
    for (auto y : e.map) {
      if (y >= p.size() || !in_interval[y]) lands = false;
      else hit[y] = true;
    }
    if (!lands) {
      out.push_back(tag + "map does not land in the interval");
      continue;
    }
    for (const auto& c : q.covers())
      if (!p.leq(e.map[c.lower], e.map[c.upper])) out.push_back(tag + "map is not order-preserving");
    for (auto x : s) {
      bool minimal = true, maximal = true;
      for (auto y : s) {
        if (p.less(y, x)) minimal = false;
        if (p.less(x, y)) maximal = false;
      }
      if ((minimal || maximal) && !hit[x])
        out.push_back(tag + "image misses the extremal element " + p.name(x));
    }
    if (cat[i].is_segment) {
      ElementId lo = s.front(), hi = s.front();
      for (auto x : s) {
        if (p.leq(x, lo)) lo = x;
        if (p.leq(hi, x)) hi = x;
      }
      bool found = false;
      for (ElementId a = 0; a < q.size() && !found; ++a)
        for (ElementId b = 0; b < q.size() && !found; ++b)
          found = q.leq(a, b) && e.map[a] == lo && e.map[b] == hi;
      if (!found) out.push_back(tag + "no segment of the probe poset maps onto the segment");
    }
  }
  return out;
}

Representation pullback(const Representation& m, const CompressionEntry& entry) {
  const auto& q = *entry.probe_poset;
  std::vector<std::size_t> dims;
  for (auto y : entry.map) dims.push_back(m.dim(y));
  std::vector<Matrix> maps;
  for (const auto& c : q.covers()) maps.push_back(m.composite(entry.map[c.lower], entry.map[c.upper]));
  return Representation(entry.probe_poset, m.field(), std::move(dims), std::move(maps));
}

InvariantValue compression_multiplicity(const Workspace& ws, const RepPtr& m, const CompressionSystem& xi) {
  ws.check(*m);
  if (auto v = validate_compression(ws, xi); !v.empty()) throw DomainError("invalid compression system: " + v.front());
  InvariantValue out(Keyspace::intervals);
  for (std::size_t i = 0; i < xi.entries.size(); ++i) {
    const auto& e = xi.entries[i];
    Support everything(e.probe_poset->size());
    for (ElementId a = 0; a < everything.size(); ++a) everything[a] = a;
    auto probe = share(interval_module(e.probe_poset, everything, m->field()));
    auto compressed = share(pullback(*m, e));
    out.add(ws.catalog()[i].support, static_cast<std::int64_t>(pairing_multiplicity(probe, compressed)));
  }
  return out;
}

}  // namespace posetbar
