#include "posetbar/groth.hpp"

#include <map>

#include "posetbar/error.hpp"

namespace posetbar {

namespace {

constexpr std::pair<InvariantKind, const char*> kNames[] = {
    {InvariantKind::dimvec, "dimvec"}, {InvariantKind::rk, "rk"},         {InvariantKind::grk, "grk"},
    {InvariantKind::gpd, "gpd"},       {InvariantKind::intmult, "intmult"}, {InvariantKind::dimhom, "dimhom"},
    {InvariantKind::betti0, "betti0"}, {InvariantKind::chi, "chi"},       {InvariantKind::ctot, "ctot"},
    {InvariantKind::cxi, "cxi"},
};

void require_same(const Workspace& ws, const KspElement& x) {
  for (const auto& t : x.terms()) ws.check(*t.rep);
}

}  // namespace

InvariantHandle InvariantHandle::parse(const std::string& name) {
  for (const auto& [k, n] : kNames)
    if (name == n) return InvariantHandle(k);
  throw ParseError("unknown invariant '" + name + "'");
}

std::string InvariantHandle::name() const {
  for (const auto& [k, n] : kNames)
    if (k == kind_) return n;
  return "?";
}

Keyspace InvariantHandle::keyspace() const {
  switch (kind_) {
    case InvariantKind::dimvec: return Keyspace::elements;
    case InvariantKind::rk: return Keyspace::segments;
    default: return Keyspace::intervals;
  }
}

bool InvariantHandle::barcoding() const {
  return kind_ == InvariantKind::gpd || kind_ == InvariantKind::intmult || kind_ == InvariantKind::betti0 ||
         kind_ == InvariantKind::chi;
}

InvariantValue InvariantHandle::operator()(const Workspace& ws, const RepPtr& m) const {
  ws.check(*m);
  switch (kind_) {
    case InvariantKind::dimvec: return dim_vector(*m);
    case InvariantKind::rk: return rank_invariant(*m);
    case InvariantKind::grk: return generalized_rank(ws, *m);
    case InvariantKind::gpd: return gpd(ws, *m);
    case InvariantKind::intmult: return interval_multiplicity(ws, m);
    case InvariantKind::dimhom: return dimhom(ws, m);
    case InvariantKind::betti0: return cover_multiplicities(ws, m, BasisSet::all_intervals(ws));
    case InvariantKind::chi: return euler_char(minimal_resolution(ws, m, BasisSet::all_intervals(ws)));
    case InvariantKind::ctot: return compression_multiplicity(ws, m, total_compression(ws));
    case InvariantKind::cxi:
      if (!xi_) throw DomainError("cxi needs a compression system");
      return compression_multiplicity(ws, m, *xi_);
  }
  throw InternalError("unhandled invariant kind");
}

KspElement& KspElement::operator+=(const KspElement& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

KspElement& KspElement::operator-=(const KspElement& o) { return *this += o.scaled(-1); }

KspElement KspElement::scaled(std::int64_t s) const {
  KspElement out;
  if (s == 0) return out;
  for (const auto& t : terms_) out.terms_.push_back({t.coeff * s, t.rep});
  return out;
}

KspElement normalize(const KspElement& x) {
  std::vector<KspTerm> others;
  std::map<Support, KspTerm, KeyLess> intervals;
  auto push = [&](std::int64_t coeff, const RepPtr& r) {
    if (r->is_zero()) return;
    if (auto s = as_interval_module(*r)) {
      auto [it, inserted] = intervals.emplace(*s, KspTerm{coeff, r});
      if (!inserted) it->second.coeff += coeff;
      return;
    }
    for (auto& t : others)
      if (t.rep == r || t.rep->same_data(*r)) {
        t.coeff += coeff;
        return;
      }
    others.push_back({coeff, r});
  };
  for (const auto& t : x.terms()) {
    if (t.coeff == 0) continue;
    if (t.rep->blocks().empty()) {
      push(t.coeff, t.rep);
    } else {
      for (const auto& b : t.rep->blocks()) push(t.coeff, b);
    }
  }
  std::vector<KspTerm> out;
  for (auto& t : others)
    if (t.coeff != 0) out.push_back(t);
  for (auto& [s, t] : intervals)
    if (t.coeff != 0) out.push_back(t);
  return KspElement(std::move(out));
}

bool same_class(const KspElement& a, const KspElement& b) { return normalize(a - b).empty(); }

InvariantValue eval(const Workspace& ws, const InvariantHandle& f, const KspElement& x) {
  require_same(ws, x);
  InvariantValue out(f.keyspace());
  const auto n = normalize(x);
  for (const auto& t : n.terms()) out += f(ws, t.rep).scaled(t.coeff);
  return out;
}

KspElement iota(const Workspace& ws, const InvariantValue& v) {
  if (v.keyspace() != Keyspace::intervals && !v.is_zero())
    throw DomainError("only interval-keyed values re-embed as interval modules");
  std::vector<KspTerm> terms;
  for (const auto& [key, coeff] : v.entries()) terms.push_back({coeff, ws.interval_rep(ws.catalog().index_of(key))});
  return KspElement(std::move(terms));
}

KspElement kernel_element(const Workspace& ws, const InvariantHandle& f, const KspElement& z) {
  if (!f.barcoding()) throw DomainError(f.name() + " is not a barcoding invariant");
  return normalize(z - iota(ws, eval(ws, f, z)));
}

KspElement flip(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g, const KspElement& x) {
  if (!f.barcoding() || !g.barcoding()) throw DomainError("flip needs two barcoding invariants");
  if (!eval(ws, f, x).is_zero()) throw DomainError("flip: the input is not in the kernel of " + f.name());
  const auto gx = eval(ws, g, x);
  auto y = normalize(x - iota(ws, gx));
  if (!eval(ws, g, y).is_zero()) throw InternalError("flip: result is not in the kernel of " + g.name());
  if (!(eval(ws, f, y) == gx.scaled(-1))) throw InternalError("flip: f(T x) differs from -g(x)");
  return y;
}

KspElement unflip(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g, const KspElement& y) {
  if (!f.barcoding() || !g.barcoding()) throw DomainError("flip needs two barcoding invariants");
  if (!eval(ws, g, y).is_zero()) throw DomainError("unflip: the input is not in the kernel of " + g.name());
  return normalize(y - iota(ws, eval(ws, f, y)));
}

std::pair<RepPtr, RepPtr> pos_neg_parts(const Workspace& ws, const KspElement& x) {
  require_same(ws, x);
  std::vector<RepPtr> pos, neg;
  const auto n = normalize(x);
  for (const auto& t : n.terms()) {
    auto& side = t.coeff > 0 ? pos : neg;
    for (std::int64_t k = 0; k < (t.coeff > 0 ? t.coeff : -t.coeff); ++k) side.push_back(t.rep);
  }
  auto sum = [&](const std::vector<RepPtr>& parts) {
    return parts.empty() ? share(Representation::zero(ws.poset(), ws.field())) : share(direct_sum(parts));
  };
  return {sum(pos), sum(neg)};
}

PairRecord evaluate_pair(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g,
                         const RepPtr& m, const RepPtr& n) {
  PairRecord r{f, g, m, n, f(ws, m), f(ws, n), g(ws, m), g(ws, n), false, false, {}};
  r.f_separates = !(r.f_first == r.f_second);
  r.g_separates = !(r.g_first == r.g_second);
  if (r.f_separates && r.g_separates)
    r.verdict = "both separate";
  else if (r.g_separates)
    r.verdict = g.name() + " separates, " + f.name() + " does not";
  else if (r.f_separates)
    r.verdict = f.name() + " separates, " + g.name() + " does not";
  else
    r.verdict = "neither separates";
  return r;
}

Certificate separating_pair_check(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g,
                                  const RepPtr& m, const RepPtr& n) {
  return {"separating-pair", {evaluate_pair(ws, f, g, m, n)}};
}

Certificate incomparability_certificate(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g,
                                        const RepPtr& m, const RepPtr& n) {
  auto seed = evaluate_pair(ws, f, g, m, n);
  if (seed.f_separates || !seed.g_separates)
    throw DomainError("seed pair must be separated by " + g.name() + " and not by " + f.name() + " (" +
                      seed.verdict + ")");
  const auto x = KspElement::of(m) - KspElement::of(n);
  const auto y = flip(ws, f, g, x);
  if (!same_class(unflip(ws, f, g, y), x)) throw InternalError("flip round trip failed");
  const auto [plus, minus] = pos_neg_parts(ws, y);
  auto reverse = evaluate_pair(ws, f, g, plus, minus);
  if (reverse.g_separates || !reverse.f_separates)
    throw InternalError("flipped pair does not reverse the separation (" + reverse.verdict + ")");
  return {"incomparability", {std::move(seed), std::move(reverse)}};
}

std::vector<std::string> reverify(const Workspace& ws, const Certificate& c) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    const auto& p = c.pairs[i];
    const auto fresh = evaluate_pair(ws, p.f, p.g, p.first, p.second);
    const std::string tag = "pair " + std::to_string(i) + ": ";
    if (!(fresh.f_first == p.f_first) || !(fresh.f_second == p.f_second))
      out.push_back(tag + "stored " + p.f.name() + " values do not reproduce");
    if (!(fresh.g_first == p.g_first) || !(fresh.g_second == p.g_second))
      out.push_back(tag + "stored " + p.g.name() + " values do not reproduce");
    if (fresh.f_separates != p.f_separates || fresh.g_separates != p.g_separates || fresh.verdict != p.verdict)
      out.push_back(tag + "stored verdict does not reproduce");
  }
  if (c.kind == "incomparability") {
    if (c.pairs.size() != 2)
      out.push_back("incomparability certificate needs two pairs");
    else if (c.pairs[0].f_separates || !c.pairs[0].g_separates || !c.pairs[1].f_separates ||
             c.pairs[1].g_separates)
      out.push_back("pairs do not witness both directions");
  }
  return out;
}

}  // namespace posetbar
