#include "posetbar/workspace.hpp"

#include "posetbar/error.hpp"

namespace posetbar {

Workspace::Workspace(PosetPtr poset, PrimeField field, std::size_t cap)
    : poset_(std::move(poset)), field_(field), catalog_(enumerate_intervals(poset_, cap)) {
  interval_reps_.reserve(catalog_->size());
  for (const auto& info : catalog_->intervals())
    interval_reps_.push_back(share(interval_module(poset_, info.support, field_)));
}

const IncidenceFunction& Workspace::containment_mobius() const {
  std::call_once(mobius_once_, [this] {
    mobius_ = std::make_unique<IncidenceFunction>(mobius(catalog_->containment()));
  });
  return *mobius_;
}

const HomSpace& Workspace::interval_hom(std::size_t i, std::size_t j) const {
  std::call_once(hom_once_, [this] {
    const auto n = catalog_->size();
    interval_homs_.reserve(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) interval_homs_.push_back(hom_space(interval_reps_[a], interval_reps_[b]));
  });
  return interval_homs_[i * catalog_->size() + j];
}

void Workspace::check(const Representation& m) const {
  if (!(m.field() == field_)) throw DomainError("representation is over GF(" + std::to_string(m.field().modulus()) +
                                                "), workspace over GF(" + std::to_string(field_.modulus()) + ")");
  if (m.poset() != poset_ && !(*m.poset() == *poset_))
    throw DomainError("representation lives over a different poset");
}

}  // namespace posetbar
