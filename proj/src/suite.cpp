#include "posetbar/suite.hpp"

#include <functional>
#include <random>

#include "posetbar/error.hpp"
#include "posetbar/groth.hpp"
#include "posetbar/oracle.hpp"

namespace posetbar {

namespace {

const char* const kChecks[] = {"validate", "mobius", "ctot", "dimh_chi", "audit", "flip", "oracle"};

enum class Outcome { pass, fail, skip };

struct Trial {
  Outcome outcome;
  std::string detail;
};

Trial require(bool ok, const std::string& what) { return {ok ? Outcome::pass : Outcome::fail, ok ? "" : what}; }

Trial check_mobius(const Workspace& ws, const RepPtr& m) {
  const auto dgm = to_catalog_vector(ws, gpd(ws, *m));
  const auto back = convolve(dgm, zeta(ws.catalog().containment()), ws.catalog().containment());
  return require(from_catalog_vector(ws, back) == generalized_rank(ws, *m), "gpd * zeta differs from grk");
}

Trial check_ctot(const Workspace& ws, const RepPtr& m) {
  return require(InvariantHandle(InvariantKind::ctot)(ws, m) == generalized_rank(ws, *m), "ctot differs from grk");
}

Trial check_dimh_chi(const Workspace& ws, const RepPtr& m) {
  const auto chi = to_catalog_vector(ws, InvariantHandle(InvariantKind::chi)(ws, m));
  const auto dh = to_catalog_vector(ws, dimhom(ws, m));
  for (std::size_t i = 0; i < dh.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < chi.size(); ++j)
      if (chi[j]) s += chi[j] * static_cast<std::int64_t>(ws.interval_hom(i, j).dimension());
    if (s != dh[i]) return {Outcome::fail, "dim Hom differs from the chi pairing at interval #" + std::to_string(i)};
  }
  return {Outcome::pass, ""};
}

Trial check_audit(const Workspace& ws, const RepPtr& m) {
  const auto r = minimal_resolution(ws, m, BasisSet::all_intervals(ws));
  const auto v = audit_resolution(r);
  if (!v.empty()) return {Outcome::fail, v.front()};
  for (std::size_t i = 0; i < r.terms.size(); ++i)
    if (!(cover_multiplicities(ws, r.terms[i].syzygy, BasisSet::all_intervals(ws)) == r.terms[i].multiplicities))
      return {Outcome::fail, "term " + std::to_string(i) + " is not minimal"};
  return {Outcome::pass, ""};
}

Trial check_flip(const Workspace& ws, const RepPtr& m) {
  const InvariantHandle f(InvariantKind::gpd), g(InvariantKind::chi);
  const auto z = KspElement::of(m);
  const auto x = kernel_element(ws, f, z);
  if (!same_class(unflip(ws, f, g, flip(ws, f, g, x)), x)) return {Outcome::fail, "S o T is not the identity"};
  const auto y = kernel_element(ws, g, z);
  if (!same_class(flip(ws, f, g, unflip(ws, f, g, y)), y)) return {Outcome::fail, "T o S is not the identity"};
  return {Outcome::pass, ""};
}

Trial check_oracle(const Workspace& ws, const RepPtr& m, std::size_t cap, std::uint64_t seed) {
  if (m->total_dim() > cap) return {Outcome::skip, ""};
  OracleOptions opt;
  opt.cap = cap;
  opt.seed = seed;
  std::vector<RepPtr> parts;
  try {
    parts = decompose_oracle(m, opt);
  } catch (const Undecided&) {
    return {Outcome::skip, ""};
  }
  const auto pi = to_catalog_vector(ws, interval_multiplicity(ws, m));
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const auto c = static_cast<std::int64_t>(count_interval_summands(parts, ws.catalog()[i].support));
    if (c != pi[i])
      return {Outcome::fail, "pairing multiplicity " + std::to_string(pi[i]) + " but oracle " + std::to_string(c) +
                                 " at interval #" + std::to_string(i)};
  }
  return {Outcome::pass, ""};
}

RepPtr corrupt(const RepPtr& m) {
  auto maps = m->maps();
  if (maps.empty()) {
    auto dims = m->dims();
    return share(Representation(m->poset(), m->field(), dims, maps));
  }
  auto& a = maps.front();
  a = Matrix(a.rows() + 1, a.cols(), m->field());
  return share(Representation(m->poset(), m->field(), m->dims(), std::move(maps)));
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(std::uint64_t{trial} >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

RepPtr trial_module(const Workspace& ws, const SuiteOptions& options, std::size_t trial) {
  const auto s = trial_seed(options.seed, trial);
  std::mt19937_64 rng(s);
  RandomShape shape;
  shape.generators = 1 + rng() % std::max<std::size_t>(options.max_generators, 1);
  shape.relations = rng() % (options.max_relations + 1);
  auto m = share(random_rep(ws.poset(), ws.field(), shape, rng()));
  return share(random_basis_change(*m, rng()));
}

SuiteReport run_identity_suite(const Workspace& ws, const SuiteOptions& options) {
  SuiteReport report;
  report.trials = options.trials;
  for (auto name : kChecks) report.checks.push_back({name, {}});
  auto tally = [&](std::size_t idx, std::size_t trial, std::uint64_t seed, const Trial& t) {
    auto& c = report.checks[idx].second;
    switch (t.outcome) {
      case Outcome::pass: ++c.passed; break;
      case Outcome::skip: ++c.skipped; break;
      case Outcome::fail:
        ++c.failed;
        report.failures.push_back({trial, seed, report.checks[idx].first, t.detail});
        break;
    }
  };

  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const auto seed = trial_seed(options.seed, trial);
    auto m = trial_module(ws, options, trial);
    if (options.adversarial && trial == 0) m = corrupt(m);

    const auto violations = validate(*m);
    if (!violations.empty()) {
      report.rejected.push_back({trial, seed, "validate", violations.front()});
      if (!(options.adversarial && trial == 0)) tally(0, trial, seed, {Outcome::fail, violations.front()});
      continue;
    }
    if (options.adversarial && trial == 0) {
      tally(0, trial, seed, {Outcome::fail, "corrupted module passed validation"});
      continue;
    }
    tally(0, trial, seed, {Outcome::pass, ""});

    const std::function<Trial()> runs[] = {
        [&] { return check_mobius(ws, m); },
        [&] { return check_ctot(ws, m); },
        [&] { return check_dimh_chi(ws, m); },
        [&] { return check_audit(ws, m); },
        [&] { return check_flip(ws, m); },
        [&] { return check_oracle(ws, m, options.oracle_cap, seed); },
    };
    for (std::size_t k = 0; k < std::size(runs); ++k) {
      Trial t;
      try {
        t = runs[k]();
      } catch (const std::exception& e) {
        t = {Outcome::fail, e.what()};
      }
      tally(k + 1, trial, seed, t);
    }
  }
  return report;
}

}  // namespace posetbar
