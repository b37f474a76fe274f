#include "posetbar/rep.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "posetbar/error.hpp"

namespace posetbar {

Representation::Representation(PosetPtr poset, PrimeField field, std::vector<std::size_t> dims,
                               std::vector<Matrix> maps)
    : poset_(std::move(poset)), field_(field), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (!poset_) throw DomainError("representation without a poset");
  if (dims_.size() != poset_->size()) throw DomainError("dimension vector length does not match poset");
  if (maps_.size() != poset_->covers().size()) throw DomainError("map count does not match cover count");
}

Representation Representation::zero(PosetPtr poset, PrimeField field) {
  const auto n = poset->size();
  std::vector<Matrix> maps(poset->covers().size(), Matrix(0, 0, field));
  return Representation(std::move(poset), field, std::vector<std::size_t>(n, 0), std::move(maps));
}

std::size_t Representation::total_dim() const {
  std::size_t t = 0;
  for (auto d : dims_) t += d;
  return t;
}

Matrix Representation::composite(ElementId x, ElementId y) const {
  const auto& p = *poset_;
  if (!p.leq(x, y)) throw DomainError("composite requested for " + p.name(x) + " not <= " + p.name(y));
  Matrix acc = Matrix::identity(dims_[x], field_);
  while (x != y) {
    ElementId next = x;
    for (auto c : p.upper_covers(x))
      if (p.leq(c, y)) {
        next = c;
        break;
      }
    acc = maps_[*p.cover_index(x, next)] * acc;
    x = next;
  }
  return acc;
}

bool Representation::same_data(const Representation& other) const {
  return (poset_ == other.poset_ || *poset_ == *other.poset_) && field_ == other.field_ &&
         dims_ == other.dims_ && maps_ == other.maps_;
}

std::vector<std::string> validate(const Representation& m) {
  std::vector<std::string> out;
  const auto& p = *m.poset();
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto [x, y] = p.covers()[e];
    const auto& a = m.map(e);
    if (a.rows() != m.dim(y) || a.cols() != m.dim(x) || !(a.field() == m.field())) {
      std::ostringstream os;
      os << "shape: map " << p.name(x) << "<" << p.name(y) << " is " << a.rows() << "x" << a.cols()
         << ", expected " << m.dim(y) << "x" << m.dim(x);
      out.push_back(os.str());
    }
  }
  if (!out.empty()) return out;
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto [y, z] = p.covers()[e];
    for (ElementId x = 0; x < p.size(); ++x) {
      if (!p.leq(x, y)) continue;
      if (m.composite(x, z) != m.map(e) * m.composite(x, y)) {
        std::ostringstream os;
        os << "commutativity: path " << p.name(x) << " -> " << p.name(y) << " -> " << p.name(z)
           << " disagrees with the canonical path " << p.name(x) << " -> " << p.name(z);
        out.push_back(os.str());
      }
    }
  }
  return out;
}

void require_valid(const Representation& m) {
  auto v = validate(m);
  if (v.empty()) return;
  std::string msg = "invalid representation:";
  for (const auto& s : v) msg += "\n  " + s;
  throw DomainError(msg);
}


namespace {

bool same_poset(const PosetPtr& a, const PosetPtr& b) { return a == b || *a == *b; }

void require_compatible(const Representation& a, const Representation& b, const char* what) {
  if (!same_poset(a.poset(), b.poset()) || !(a.field() == b.field()))
    throw DomainError(std::string(what) + ": representations over different posets or fields");
}

}  // namespace

std::vector<std::string> check_naturality(const Morphism& f) {
  std::vector<std::string> out;
  const auto& s = *f.source;
  const auto& t = *f.target;
  require_compatible(s, t, "morphism");
  const auto& p = *s.poset();
  if (f.components.size() != p.size()) {
    out.push_back("shape: morphism has " + std::to_string(f.components.size()) + " components");
    return out;
  }
  for (ElementId x = 0; x < p.size(); ++x) {
    const auto& c = f.components[x];
    if (c.rows() != t.dim(x) || c.cols() != s.dim(x))
      out.push_back("shape: component at " + p.name(x) + " has the wrong shape");
  }
  if (!out.empty()) return out;
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto [x, y] = p.covers()[e];
    if (t.map(e) * f.components[x] != f.components[y] * s.map(e))
      out.push_back("naturality: square at " + p.name(x) + "<" + p.name(y) + " does not commute");
  }
  return out;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism h{f.source, g.target, {}};
  for (std::size_t x = 0; x < f.components.size(); ++x)
    h.components.push_back(g.components[x] * f.components[x]);
  return h;
}

Morphism identity_morphism(const RepPtr& m) {
  Morphism f{m, m, {}};
  for (auto d : m->dims()) f.components.push_back(Matrix::identity(d, m->field()));
  return f;
}

Morphism zero_morphism(const RepPtr& source, const RepPtr& target) {
  Morphism f{source, target, {}};
  for (std::size_t x = 0; x < source->dims().size(); ++x)
    f.components.emplace_back(target->dim(x), source->dim(x), source->field());
  return f;
}

Representation interval_module(const PosetPtr& poset, const Support& interval, PrimeField field) {
  const auto& p = *poset;
  if (!p.is_interval(interval)) throw DomainError("support is not an interval of the poset");
  std::vector<std::size_t> dims(p.size(), 0);
  for (auto x : interval) dims[x] = 1;
  std::vector<Matrix> maps;
  for (const auto& c : p.covers()) {
    Matrix a(dims[c.upper], dims[c.lower], field);
    if (dims[c.upper] && dims[c.lower]) a(0, 0) = 1;
    maps.push_back(std::move(a));
  }
  return Representation(poset, field, std::move(dims), std::move(maps));
}

std::optional<Support> as_interval_module(const Representation& m) {
  const auto& p = *m.poset();
  Support s;
  for (ElementId x = 0; x < p.size(); ++x) {
    if (m.dim(x) > 1) return std::nullopt;
    if (m.dim(x) == 1) s.push_back(x);
  }
  if (s.empty() || !p.is_interval(s)) return std::nullopt;
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto [x, y] = p.covers()[e];
    if (m.dim(x) == 1 && m.dim(y) == 1 && m.map(e)(0, 0) == 0) return std::nullopt;
  }
  return s;
}

Representation direct_sum(const std::vector<RepPtr>& summands) {
  if (summands.empty()) throw DomainError("direct sum of an empty list needs a poset; use zero()");
  const auto& first = *summands.front();
  for (const auto& s : summands) require_compatible(first, *s, "direct sum");
  const auto& p = *first.poset();
  std::vector<std::size_t> dims(p.size(), 0);
  for (const auto& s : summands)
    for (ElementId x = 0; x < p.size(); ++x) dims[x] += s->dim(x);
  std::vector<Matrix> maps;
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    std::vector<Matrix> blocks;
    for (const auto& s : summands) blocks.push_back(s->map(e));
    maps.push_back(block_diagonal(blocks, first.field()));
  }
  Representation out(first.poset(), first.field(), std::move(dims), std::move(maps));
  std::vector<RepPtr> flat;
  for (const auto& s : summands) {
    if (s->is_zero()) continue;
    if (s->blocks().empty())
      flat.push_back(s);
    else
      flat.insert(flat.end(), s->blocks().begin(), s->blocks().end());
  }
  if (flat.size() >= 2)
    out.set_blocks(std::move(flat));
  else if (flat.size() == 1)
    out.set_blocks(flat.front()->blocks());
  return out;
}

Morphism summand_inclusion(const std::vector<RepPtr>& summands, const RepPtr& sum, std::size_t i) {
  Morphism f{summands.at(i), sum, {}};
  const auto& p = *sum->poset();
  for (ElementId x = 0; x < p.size(); ++x) {
    std::size_t offset = 0;
    for (std::size_t j = 0; j < i; ++j) offset += summands[j]->dim(x);
    Matrix c(sum->dim(x), summands[i]->dim(x), sum->field());
    for (std::size_t k = 0; k < summands[i]->dim(x); ++k) c(offset + k, k) = 1;
    f.components.push_back(std::move(c));
  }
  return f;
}

Representation restrict(const Representation& m, const Support& subset) {
  const auto& p = *m.poset();
  if (subset.empty()) throw DomainError("restriction to the empty subset");
  for (std::size_t i = 0; i < subset.size(); ++i)
    if (subset[i] >= p.size() || (i && subset[i] <= subset[i - 1]))
      throw DomainError("restriction subset must be sorted element ids of the poset");
  const auto n = subset.size();
  std::vector<std::string> names;
  std::vector<Bitset> up(n, Bitset(n));
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(p.name(subset[a]));
    for (std::size_t b = 0; b < n; ++b)
      if (p.leq(subset[a], subset[b])) up[a].set(b);
  }
  auto sub = make_poset(FinitePoset::from_order(std::move(names), std::move(up)));
  std::vector<std::size_t> dims;
  for (auto x : subset) dims.push_back(m.dim(x));
  std::vector<Matrix> maps;
  for (const auto& c : sub->covers()) maps.push_back(m.composite(subset[c.lower], subset[c.upper]));
  return Representation(sub, m.field(), std::move(dims), std::move(maps));
}

Morphism HomSpace::morphism(std::size_t j) const {
  std::vector<Matrix::value_type> coeffs(dimension(), 0);
  coeffs.at(j) = 1;
  return combination(coeffs);
}

Morphism HomSpace::combination(const std::vector<Matrix::value_type>& coeffs) const {
  const auto& f = source->field();
  Morphism out{source, target, {}};
  const auto& p = *source->poset();
  for (ElementId x = 0; x < p.size(); ++x) {
    Matrix c(target->dim(x), source->dim(x), f);
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t k = 0; k < c.cols(); ++k) {
        const auto row = offsets[x] + r * c.cols() + k;
        Matrix::value_type v = 0;
        for (std::size_t j = 0; j < coeffs.size(); ++j) v = f.add(v, f.mul(coeffs[j], basis(row, j)));
        c(r, k) = v;
      }
    out.components.push_back(std::move(c));
  }
  return out;
}

HomSpace hom_space(const RepPtr& source, const RepPtr& target) {
  const auto& l = *source;
  const auto& m = *target;
  require_compatible(l, m, "hom");
  const auto& p = *l.poset();
  const auto& f = l.field();
  std::vector<std::size_t> offsets(p.size() + 1, 0);
  for (ElementId x = 0; x < p.size(); ++x) offsets[x + 1] = offsets[x] + m.dim(x) * l.dim(x);
  const auto unknowns = offsets[p.size()];
  std::size_t equations = 0;
  for (const auto& c : p.covers()) equations += m.dim(c.upper) * l.dim(c.lower);

  // M(e) phi_x - phi_y L(e) = 0 for every cover e = (x < y).
  Matrix sys(equations, unknowns, f);
  std::size_t row = 0;
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto [x, y] = p.covers()[e];
    const auto& me = m.map(e);
    const auto& le = l.map(e);
    const auto lx = l.dim(x), ly = l.dim(y), mx = m.dim(x);
    for (std::size_t i = 0; i < m.dim(y); ++i)
      for (std::size_t j = 0; j < lx; ++j, ++row) {
        for (std::size_t k = 0; k < mx; ++k) {
          const auto col = offsets[x] + k * lx + j;
          sys(row, col) = f.add(sys(row, col), me(i, k));
        }
        for (std::size_t k = 0; k < ly; ++k) {
          const auto col = offsets[y] + i * ly + k;
          sys(row, col) = f.sub(sys(row, col), le(k, j));
        }
      }
  }
  offsets.pop_back();
  return HomSpace{source, target, std::move(offsets), kernel_basis(sys)};
}

std::size_t hom_dimension(const RepPtr& source, const RepPtr& target) {
  return hom_space(source, target).dimension();
}

Matrix flatten(const Morphism& f) {
  std::size_t n = 0;
  for (const auto& c : f.components) n += c.rows() * c.cols();
  Matrix v(n, 1, f.source->field());
  std::size_t i = 0;
  for (const auto& c : f.components)
    for (auto e : c.data()) v(i++, 0) = e;
  return v;
}

namespace {

// Stacked constraint matrix of the diagram restricted to a subset: columns
// index the product of the M(x), one block row per subposet cover.
struct Stacked {
  Representation sub;
  std::vector<std::size_t> offsets;
  std::size_t total;
};

Stacked stack_subset(const Representation& m, const Support& subset) {
  if (!m.poset()->is_connected(subset)) throw DomainError("limit/colimit over a disconnected subset");
  Stacked s{restrict(m, subset), {}, 0};
  for (auto d : s.sub.dims()) {
    s.offsets.push_back(s.total);
    s.total += d;
  }
  return s;
}

}  // namespace

Limit limit(const Representation& m, const Support& subset) {
  auto s = stack_subset(m, subset);
  const auto& q = *s.sub.poset();
  std::size_t rows = 0;
  for (const auto& c : q.covers()) rows += s.sub.dim(c.upper);
  Matrix sys(rows, s.total, m.field());
  std::size_t r = 0;
  for (std::size_t e = 0; e < q.covers().size(); ++e) {
    const auto [x, y] = q.covers()[e];
    // M(x<y) v_x - v_y = 0
    sys.set_block(r, s.offsets[x], s.sub.map(e));
    for (std::size_t i = 0; i < s.sub.dim(y); ++i)
      sys(r + i, s.offsets[y] + i) = m.field().sub(sys(r + i, s.offsets[y] + i), 1);
    r += s.sub.dim(y);
  }
  auto k = kernel_basis(sys);
  return Limit{k.cols(), std::move(k)};
}

Colimit colimit(const Representation& m, const Support& subset) {
  auto s = stack_subset(m, subset);
  const auto& q = *s.sub.poset();
  std::size_t cols = 0;
  for (const auto& c : q.covers()) cols += s.sub.dim(c.lower);
  // Relations iota_y M(x<y) u - iota_x u, one column per basis vector u of M(x).
  Matrix rel(s.total, cols, m.field());
  std::size_t c0 = 0;
  for (std::size_t e = 0; e < q.covers().size(); ++e) {
    const auto [x, y] = q.covers()[e];
    rel.set_block(s.offsets[y], c0, s.sub.map(e));
    for (std::size_t i = 0; i < s.sub.dim(x); ++i)
      rel(s.offsets[x] + i, c0 + i) = m.field().sub(rel(s.offsets[x] + i, c0 + i), 1);
    c0 += s.sub.dim(x);
  }
  auto proj = cokernel_projection(rel);
  return Colimit{proj.rows(), std::move(proj)};
}

std::size_t rank_of(const Representation& m, const Support& subset) {
  auto lim = limit(m, subset);
  auto colim = colimit(m, subset);
  if (lim.dimension == 0 || colim.dimension == 0) return 0;
  // lim -> M(b) -> sum -> colim, for the first element b of the subset.
  const auto db = m.dim(subset.front());
  Matrix at_base = lim.inclusion.block(0, 0, db, lim.inclusion.cols());
  Matrix into_sum(colim.projection.cols(), db, m.field());
  for (std::size_t i = 0; i < db; ++i) into_sum(i, i) = 1;
  return rank(colim.projection * into_sum * at_base);
}

std::pair<RepPtr, Morphism> subrepresentation(const RepPtr& m, const std::vector<Matrix>& bases) {
  const auto& p = *m->poset();
  std::vector<std::size_t> dims;
  for (const auto& b : bases) dims.push_back(b.cols());
  std::vector<Matrix> maps;
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto [x, y] = p.covers()[e];
    auto a = solve(bases[y], m->map(e) * bases[x]);
    if (!a) throw DomainError("subspace family is not closed under the map " + p.name(x) + "<" + p.name(y));
    maps.push_back(std::move(*a));
  }
  auto sub = share(Representation(m->poset(), m->field(), std::move(dims), std::move(maps)));
  return {sub, Morphism{sub, m, bases}};
}

std::pair<RepPtr, Morphism> kernel_of(const Morphism& f) {
  if (auto v = check_naturality(f); !v.empty()) throw DomainError("kernel_of: " + v.front());
  std::vector<Matrix> bases;
  for (const auto& c : f.components) bases.push_back(kernel_basis(c));
  return subrepresentation(f.source, bases);
}

std::pair<RepPtr, Morphism> cokernel_of(const Morphism& f) {
  if (auto v = check_naturality(f); !v.empty()) throw DomainError("cokernel_of: " + v.front());
  const auto& t = *f.target;
  const auto& p = *t.poset();
  std::vector<Matrix> proj;
  std::vector<std::size_t> dims;
  for (const auto& c : f.components) {
    proj.push_back(cokernel_projection(c));
    dims.push_back(proj.back().rows());
  }
  std::vector<Matrix> maps;
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto [x, y] = p.covers()[e];
    // A Q_x = Q_y T(e)
    auto at = solve(proj[x].transpose(), (proj[y] * t.map(e)).transpose());
    if (!at) throw InternalError("cokernel map is not induced");
    maps.push_back(at->transpose());
  }
  auto q = share(Representation(t.poset(), t.field(), std::move(dims), std::move(maps)));
  return {q, Morphism{f.target, q, std::move(proj)}};
}

namespace {

Matrix::value_type draw(std::mt19937_64& rng, std::uint32_t p) {
  return static_cast<Matrix::value_type>(rng() % p);
}

Matrix random_invertible(std::size_t n, PrimeField field, std::mt19937_64& rng) {
  for (;;) {
    Matrix g(n, n, field);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) g(r, c) = draw(rng, field.modulus());
    if (rank(g) == n) return g;
  }
}

}  // namespace

Representation random_rep(const PosetPtr& poset, PrimeField field, RandomShape shape, std::uint64_t seed) {
  const auto& p = *poset;
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::uint64_t>(p.size());
  std::vector<ElementId> gens, rels;
  for (std::size_t i = 0; i < shape.generators; ++i) gens.push_back(static_cast<ElementId>(rng() % n));
  for (std::size_t i = 0; i < shape.relations; ++i) rels.push_back(static_cast<ElementId>(rng() % n));
  std::sort(gens.begin(), gens.end());
  std::sort(rels.begin(), rels.end());
  if (gens.empty()) return Representation::zero(poset, field);

  // coeff[j][i]: scalar of the map k_{rels[i]^} -> k_{gens[j]^}, zero unless gens[j] <= rels[i].
  std::vector<std::vector<Matrix::value_type>> coeff(gens.size(), std::vector<Matrix::value_type>(rels.size(), 0));
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < rels.size(); ++i)
      if (p.leq(gens[j], rels[i])) coeff[j][i] = draw(rng, field.modulus());

  auto projective_sum = [&](const std::vector<ElementId>& tops) {
    std::vector<RepPtr> parts;
    for (auto x : tops) parts.push_back(share(interval_module(poset, principal_up_set(p, x), field)));
    if (parts.empty()) return share(Representation::zero(poset, field));
    return share(direct_sum(parts));
  };
  auto f0 = projective_sum(gens);
  auto f1 = projective_sum(rels);
  Morphism d{f1, f0, {}};
  for (ElementId x = 0; x < p.size(); ++x) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (p.leq(gens[j], x)) rows.push_back(j);
    for (std::size_t i = 0; i < rels.size(); ++i)
      if (p.leq(rels[i], x)) cols.push_back(i);
    Matrix c(rows.size(), cols.size(), field);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t k = 0; k < cols.size(); ++k) c(r, k) = coeff[rows[r]][cols[k]];
    d.components.push_back(std::move(c));
  }
  auto coker = cokernel_of(d).first;
  return Representation(coker->poset(), field, coker->dims(), coker->maps());
}

Representation random_basis_change(const Representation& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& p = *m.poset();
  std::vector<Matrix> g, ginv;
  for (ElementId x = 0; x < p.size(); ++x) {
    g.push_back(random_invertible(m.dim(x), m.field(), rng));
    ginv.push_back(inverse(g.back()));
  }
  std::vector<Matrix> maps;
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto [x, y] = p.covers()[e];
    maps.push_back(g[y] * m.map(e) * ginv[x]);
  }
  return Representation(m.poset(), m.field(), m.dims(), std::move(maps));
}

}  // namespace posetbar
