#pragma once

// Per-poset caches shared by the invariant, resolution and comparison code:
// the interval catalog, its Möbius function, the interval modules and the Hom
// spaces between them. Tables are built on first use; a Workspace may be read
// from several threads.

#include <memory>
#include <mutex>
#include <vector>

#include "posetbar/poset.hpp"
#include "posetbar/rep.hpp"

namespace posetbar {

class Workspace {
 public:
  Workspace(PosetPtr poset, PrimeField field, std::size_t cap = IntervalCatalog::kDefaultCap);
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const PosetPtr& poset() const { return poset_; }
  const PrimeField& field() const { return field_; }
  const IntervalCatalog& catalog() const { return *catalog_; }
  const CatalogPtr& catalog_ptr() const { return catalog_; }

  // Möbius function of (Int(P), ⊇).
  const IncidenceFunction& containment_mobius() const;
  const RepPtr& interval_rep(std::size_t i) const { return interval_reps_[i]; }
  // Hom(k_I, k_J) for catalog indices I, J.
  const HomSpace& interval_hom(std::size_t i, std::size_t j) const;

  // Throws DomainError unless m lives over this poset and field.
  void check(const Representation& m) const;

 private:
  PosetPtr poset_;
  PrimeField field_;
  CatalogPtr catalog_;
  std::vector<RepPtr> interval_reps_;

  mutable std::once_flag mobius_once_;
  mutable std::unique_ptr<IncidenceFunction> mobius_;
  mutable std::once_flag hom_once_;
  mutable std::vector<HomSpace> interval_homs_;
};

using WorkspacePtr = std::shared_ptr<const Workspace>;

inline WorkspacePtr make_workspace(PosetPtr poset, PrimeField field) {
  return std::make_shared<const Workspace>(std::move(poset), field);
}

}  // namespace posetbar
