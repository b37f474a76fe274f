#pragma once

// Formal combinations in the split Grothendieck group, invariants evaluated
// on them, the kernel flip, and separating-pair certificates.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posetbar/invariants.hpp"
#include "posetbar/relhom.hpp"
#include "posetbar/workspace.hpp"

namespace posetbar {

enum class InvariantKind { dimvec, rk, grk, gpd, intmult, dimhom, betti0, chi, ctot, cxi };

class InvariantHandle {
 public:
  explicit InvariantHandle(InvariantKind kind) : kind_(kind) {}
  InvariantHandle(InvariantKind kind, CompressionSystem xi) : kind_(kind), xi_(std::move(xi)) {}

  static InvariantHandle parse(const std::string& name);  // cxi needs a system; see with_system
  InvariantHandle with_system(CompressionSystem xi) const { return {kind_, std::move(xi)}; }

  InvariantKind kind() const { return kind_; }
  std::string name() const;
  Keyspace keyspace() const;
  // Codomain re-embeddable as interval modules and fixing them.
  bool barcoding() const;
  const std::optional<CompressionSystem>& system() const { return xi_; }

  InvariantValue operator()(const Workspace& ws, const RepPtr& m) const;

 private:
  InvariantKind kind_;
  std::optional<CompressionSystem> xi_;
};

struct KspTerm {
  std::int64_t coeff;
  RepPtr rep;
};

class KspElement {
 public:
  KspElement() = default;
  explicit KspElement(std::vector<KspTerm> terms) : terms_(std::move(terms)) {}
  static KspElement of(const RepPtr& m, std::int64_t coeff = 1) { return KspElement({{coeff, m}}); }

  const std::vector<KspTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  KspElement& operator+=(const KspElement& o);
  KspElement& operator-=(const KspElement& o);
  KspElement scaled(std::int64_t s) const;
  friend KspElement operator+(KspElement a, const KspElement& b) { return a += b; }
  friend KspElement operator-(KspElement a, const KspElement& b) { return a -= b; }

 private:
  std::vector<KspTerm> terms_;
};

// Expands recorded direct sums, merges interval modules by support and other
// terms by identical data, drops zero terms. Non-interval terms come first in
// order of appearance, then intervals in canonical order.
KspElement normalize(const KspElement& x);
// Two elements agree after normalization.
bool same_class(const KspElement& a, const KspElement& b);

InvariantValue eval(const Workspace& ws, const InvariantHandle& f, const KspElement& x);
// The formal combination of interval modules named by an interval-keyed value.
KspElement iota(const Workspace& ws, const InvariantValue& v);
// z - iota(f(z)), which lies in ker f.
KspElement kernel_element(const Workspace& ws, const InvariantHandle& f, const KspElement& z);
// T(x) = x - iota(g(x)) for x in ker f. Throws DomainError if f(x) != 0 and
// InternalError if f(T x) != -g(x) or g(T x) != 0.
KspElement flip(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g, const KspElement& x);
// S(y) = y - iota(f(y)), the inverse of flip.
KspElement unflip(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g, const KspElement& y);
// (X+, X-) with x = [X+] - [X-].
std::pair<RepPtr, RepPtr> pos_neg_parts(const Workspace& ws, const KspElement& x);

struct PairRecord {
  InvariantHandle f;
  InvariantHandle g;
  RepPtr first;
  RepPtr second;
  InvariantValue f_first, f_second, g_first, g_second;
  bool f_separates = false;
  bool g_separates = false;
  std::string verdict;
};

struct Certificate {
  std::string kind;  // "separating-pair" or "incomparability"
  std::vector<PairRecord> pairs;
};

PairRecord evaluate_pair(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g,
                         const RepPtr& m, const RepPtr& n);
Certificate separating_pair_check(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g,
                                  const RepPtr& m, const RepPtr& n);
// Seed (M, N) must satisfy f(M) = f(N) and g(M) != g(N). The second pair is
// (Y+, Y-) from flip(f, g, [M] - [N]), which g fails to separate and f does.
Certificate incomparability_certificate(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g,
                                        const RepPtr& m, const RepPtr& n);
// Re-evaluates every stored value; returns the mismatches.
std::vector<std::string> reverify(const Workspace& ws, const Certificate& c);

}  // namespace posetbar
