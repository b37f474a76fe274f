#pragma once

// Representations of finite posets over GF(p) and their morphisms.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "posetbar/exactla.hpp"
#include "posetbar/poset.hpp"

namespace posetbar {

class Representation;
using RepPtr = std::shared_ptr<const Representation>;

// A functor P -> Vect given on the Hasse diagram. maps[e] is the matrix of
// the cover e = (x < y), shaped dims[y] x dims[x], acting on columns.
//
// The constructor only checks the number of maps; shapes and commutativity
// are checked by validate().
class Representation {
 public:
  Representation(PosetPtr poset, PrimeField field, std::vector<std::size_t> dims,
                 std::vector<Matrix> maps);

  static Representation zero(PosetPtr poset, PrimeField field);

  const PosetPtr& poset() const { return poset_; }
  const PrimeField& field() const { return field_; }
  std::size_t dim(ElementId x) const { return dims_[x]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

  const Matrix& map(std::size_t cover) const { return maps_[cover]; }
  const std::vector<Matrix>& maps() const { return maps_; }
  // M(x -> y) along the lexicographically least cover chain. Requires x <= y.
  Matrix composite(ElementId x, ElementId y) const;

  // Known direct-sum structure: the summands this value was assembled from by
  // direct_sum(), flattened. Empty for representations with no recorded
  // structure. Summands are never recorded for the zero representation.
  const std::vector<RepPtr>& blocks() const { return blocks_; }
  void set_blocks(std::vector<RepPtr> blocks) { blocks_ = std::move(blocks); }

  // Same poset, field, dims and matrices.
  bool same_data(const Representation& other) const;

 private:
  PosetPtr poset_;
  PrimeField field_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> maps_;
  std::vector<RepPtr> blocks_;
};

inline RepPtr share(Representation r) { return std::make_shared<const Representation>(std::move(r)); }

struct Morphism {
  RepPtr source;
  RepPtr target;
  std::vector<Matrix> components;  // components[x]: target.dim(x) x source.dim(x)
};

// Every shape or commutativity violation, one line each. Empty means valid.
std::vector<std::string> validate(const Representation& m);
std::vector<std::string> check_naturality(const Morphism& f);
void require_valid(const Representation& m);

Morphism compose(const Morphism& g, const Morphism& f);  // g after f
Morphism identity_morphism(const RepPtr& m);
Morphism zero_morphism(const RepPtr& source, const RepPtr& target);

Representation interval_module(const PosetPtr& poset, const Support& interval, PrimeField field);
// Support of m if m is isomorphic to an interval module by inspection: all
// dims 0 or 1, the support is an interval, and every cover inside it carries a
// nonzero scalar.
std::optional<Support> as_interval_module(const Representation& m);

Representation direct_sum(const std::vector<RepPtr>& summands);
// Coordinate inclusion/projection of summand i of direct_sum(summands).
Morphism summand_inclusion(const std::vector<RepPtr>& summands, const RepPtr& sum, std::size_t i);

// The induced representation on the full subposet with elements `subset`
// (sorted). Covers of the subposet get ambient composites.
Representation restrict(const Representation& m, const Support& subset);

// Naturality solution space. Column j of `basis` stacks the components of one
// morphism L -> M, each flattened row-major, at offsets[x].
struct HomSpace {
  RepPtr source;
  RepPtr target;
  std::vector<std::size_t> offsets;
  Matrix basis;

  std::size_t dimension() const { return basis.cols(); }
  Morphism morphism(std::size_t j) const;
  Morphism combination(const std::vector<Matrix::value_type>& coeffs) const;
};

HomSpace hom_space(const RepPtr& source, const RepPtr& target);
std::size_t hom_dimension(const RepPtr& source, const RepPtr& target);
// Stacks the components of f the same way HomSpace does.
Matrix flatten(const Morphism& f);

struct Limit {
  std::size_t dimension;
  Matrix inclusion;  // (sum of dims over the subset) x dimension, into the product
};
struct Colimit {
  std::size_t dimension;
  Matrix projection;  // dimension x (sum of dims over the subset), from the sum
};

// Both throw DomainError when the subset is not connected.
Limit limit(const Representation& m, const Support& subset);
Colimit colimit(const Representation& m, const Support& subset);
// Rank of the canonical map from the limit to the colimit of m restricted to
// a connected subset.
std::size_t rank_of(const Representation& m, const Support& subset);

// Pointwise kernel with induced maps and its inclusion. Throws DomainError if
// f is not natural.
std::pair<RepPtr, Morphism> kernel_of(const Morphism& f);
std::pair<RepPtr, Morphism> cokernel_of(const Morphism& f);
// Subrepresentation spanned pointwise by the columns of bases[x]; the bases
// must have full column rank and be closed under the structure maps.
std::pair<RepPtr, Morphism> subrepresentation(const RepPtr& m, const std::vector<Matrix>& bases);

struct RandomShape {
  std::size_t generators = 3;
  std::size_t relations = 3;
};

// Cokernel of a random map between random sums of projectives k_{x^}.
Representation random_rep(const PosetPtr& poset, PrimeField field, RandomShape shape, std::uint64_t seed);
// The same module with each M(x) replaced by a random change of basis.
Representation random_basis_change(const Representation& m, std::uint64_t seed);

}  // namespace posetbar
