#include "posetbar/relhom.hpp"

#include <algorithm>

#include "posetbar/error.hpp"

namespace posetbar {

namespace {

Matrix side_by_side(const std::vector<Matrix>& cols, std::size_t rows, PrimeField field) {
  Matrix out(rows, 0, field);
  if (cols.empty()) return out;
  std::size_t width = 0;
  for (const auto& c : cols) width += c.cols();
  out = Matrix(rows, width, field);
  std::size_t at = 0;
  for (const auto& c : cols) {
    out.set_block(0, at, c);
    at += c.cols();
  }
  return out;
}

struct TopChoice {
  std::size_t index;               // catalog index
  std::vector<Morphism> lifts;     // k_I -> M, one per copy
};

std::vector<TopChoice> top(const Workspace& ws, const RepPtr& m, const BasisSet& q) {
  ws.check(*m);
  const auto field = ws.field();
  const auto& members = q.members();
  std::vector<HomSpace> into;
  into.reserve(members.size());
  for (auto j : members) into.push_back(hom_space(ws.interval_rep(j), m));

  std::vector<TopChoice> out;
  for (std::size_t a = 0; a < members.size(); ++a) {
    const auto& h_i = into[a];
    if (h_i.dimension() == 0) continue;
    const auto rows = h_i.basis.rows();
    std::vector<Matrix> generated;
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (b == a || into[b].dimension() == 0) continue;
      const auto& g_space = ws.interval_hom(members[a], members[b]);
      for (std::size_t gi = 0; gi < g_space.dimension(); ++gi) {
        const auto g = g_space.morphism(gi);
        for (std::size_t hj = 0; hj < into[b].dimension(); ++hj)
          generated.push_back(flatten(compose(into[b].morphism(hj), g)));
      }
    }
    Matrix acc = column_space(side_by_side(generated, rows, field));
    std::size_t r = acc.cols();
    TopChoice choice{members[a], {}};
    for (std::size_t j = 0; j < h_i.dimension() && r < h_i.dimension(); ++j) {
      Matrix candidate = hstack(acc, h_i.basis.column(j));
      if (rank(candidate) > r) {
        acc = std::move(candidate);
        ++r;
        choice.lifts.push_back(h_i.morphism(j));
      }
    }
    if (!choice.lifts.empty()) out.push_back(std::move(choice));
  }
  return out;
}

void verify_cover(const Workspace& ws, const Approximation& c, const RepPtr& m, const BasisSet& q) {
  for (ElementId x = 0; x < m->dims().size(); ++x)
    if (rank(c.map.components[x]) != m->dim(x))
      throw InternalError("cover is not surjective at " + m->poset()->name(x));
  for (auto j : q.members()) {
    const auto target = hom_space(ws.interval_rep(j), m);
    if (target.dimension() == 0) continue;
    const auto through = hom_space(ws.interval_rep(j), c.source);
    std::vector<Matrix> cols;
    for (std::size_t k = 0; k < through.dimension(); ++k) cols.push_back(flatten(compose(c.map, through.morphism(k))));
    if (!solve(side_by_side(cols, target.basis.rows(), ws.field()), target.basis))
      throw InternalError("cover is not a precover: a map from interval #" + std::to_string(j) +
                          " does not factor");
  }
}

}  // namespace

BasisSet::BasisSet(const Workspace& ws, std::vector<std::size_t> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (auto i : members_)
    if (i >= ws.catalog().size()) throw DomainError("basis set refers to interval #" + std::to_string(i));
  const auto& p = *ws.poset();
  for (auto i : ws.catalog().principal_up_sets()) {
    if (contains(i)) continue;
    const auto& s = ws.catalog()[i].support;
    auto least = *std::find_if(s.begin(), s.end(), [&](ElementId x) {
      return std::all_of(s.begin(), s.end(), [&](ElementId y) { return p.leq(x, y); });
    });
    throw DomainError("basis set misses the principal up-set of " + p.name(least));
  }
}

BasisSet BasisSet::all_intervals(const Workspace& ws) {
  std::vector<std::size_t> all(ws.catalog().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return BasisSet(ws, std::move(all));
}

BasisSet BasisSet::projectives(const Workspace& ws) { return BasisSet(ws, ws.catalog().principal_up_sets()); }

bool BasisSet::contains(std::size_t index) const {
  return std::binary_search(members_.begin(), members_.end(), index);
}

InvariantValue cover_multiplicities(const Workspace& ws, const RepPtr& m, const BasisSet& q) {
  InvariantValue out(Keyspace::intervals);
  for (const auto& t : top(ws, m, q))
    out.add(ws.catalog()[t.index].support, static_cast<std::int64_t>(t.lifts.size()));
  return out;
}

Approximation minimal_cover(const Workspace& ws, const RepPtr& m, const BasisSet& q) {
  const auto choices = top(ws, m, q);
  const auto field = ws.field();
  const auto& p = *ws.poset();

  Approximation c;
  c.multiplicities = InvariantValue(Keyspace::intervals);
  std::vector<RepPtr> parts;
  std::vector<const Morphism*> lifts;
  for (const auto& t : choices) {
    c.multiplicities.add(ws.catalog()[t.index].support, static_cast<std::int64_t>(t.lifts.size()));
    for (const auto& l : t.lifts) {
      parts.push_back(ws.interval_rep(t.index));
      c.summands.push_back(t.index);
      lifts.push_back(&l);
    }
  }
  c.source = parts.empty() ? share(Representation::zero(ws.poset(), field)) : share(direct_sum(parts));
  c.map = Morphism{c.source, m, {}};
  for (ElementId x = 0; x < p.size(); ++x) {
    Matrix comp(m->dim(x), c.source->dim(x), field);
    std::size_t col = 0;
    for (std::size_t s = 0; s < parts.size(); ++s) {
      if (parts[s]->dim(x) == 0) continue;
      comp.set_block(0, col++, lifts[s]->components[x]);
    }
    c.map.components.push_back(std::move(comp));
  }
  verify_cover(ws, c, m, q);
  return c;
}

Resolution minimal_resolution(const Workspace& ws, const RepPtr& m, const BasisSet& q, std::size_t max_depth) {
  Resolution r{m, {}};
  RepPtr current = m;
  std::optional<Morphism> into_previous;
  while (!current->is_zero()) {
    if (r.terms.size() > max_depth)
      throw CapExceeded("resolution does not terminate within depth " + std::to_string(max_depth));
    auto c = minimal_cover(ws, current, q);
    auto [syzygy, inclusion] = kernel_of(c.map);
    Morphism d = into_previous ? compose(*into_previous, c.map) : c.map;
    r.terms.push_back({c.source, std::move(c.summands), std::move(c.multiplicities), std::move(d), current});
    into_previous = std::move(inclusion);
    current = syzygy;
  }
  return r;
}

InvariantValue betti(const Resolution& r, std::size_t i) {
  if (i >= r.terms.size()) return InvariantValue(Keyspace::intervals);
  return r.terms[i].multiplicities;
}

InvariantValue euler_char(const Resolution& r) {
  InvariantValue out(Keyspace::intervals);
  for (std::size_t i = 0; i < r.terms.size(); ++i)
    out += i % 2 == 0 ? r.terms[i].multiplicities : r.terms[i].multiplicities.scaled(-1);
  return out;
}

std::vector<std::string> audit_resolution(const Resolution& r) {
  std::vector<std::string> out;
  const auto& m = *r.target;
  const auto& p = *m.poset();
  for (ElementId x = 0; x < p.size(); ++x) {
    std::int64_t alt = 0;
    for (std::size_t i = 0; i < r.terms.size(); ++i)
      alt += (i % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(r.terms[i].module->dim(x));
    if (alt != static_cast<std::int64_t>(m.dim(x)))
      out.push_back("alternating dimension count fails at " + p.name(x));
  }
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    const auto& t = r.terms[i];
    for (const auto& v : check_naturality(t.differential))
      out.push_back("term " + std::to_string(i) + ": " + v);
    for (ElementId x = 0; x < p.size(); ++x) {
      const auto here = rank(t.differential.components[x]);
      const auto below = i == 0 ? m.dim(x) : rank(r.terms[i - 1].differential.components[x]);
      // image of d_i must equal the kernel of d_{i-1} (or all of M for i = 0)
      const auto expected = i == 0 ? m.dim(x) : r.terms[i - 1].module->dim(x) - below;
      if (here != expected) out.push_back("not exact at term " + std::to_string(i) + ", " + p.name(x));
      if (i > 0 && !(r.terms[i - 1].differential.components[x] * t.differential.components[x]).is_zero())
        out.push_back("d o d is nonzero at term " + std::to_string(i) + ", " + p.name(x));
    }
  }
  if (!r.terms.empty()) {
    const auto& last = r.terms.back();
    for (ElementId x = 0; x < p.size(); ++x)
      if (rank(last.differential.components[x]) != last.module->dim(x))
        out.push_back("last differential is not injective at " + p.name(x));
  }
  return out;
}

}  // namespace posetbar
