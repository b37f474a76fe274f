#include "posetbar/oracle.hpp"

#include <algorithm>
#include <random>

#include "posetbar/error.hpp"

namespace posetbar {

namespace {

using value_type = Matrix::value_type;

Matrix power(const Matrix& a, std::size_t n) {
  Matrix out = Matrix::identity(a.rows(), a.field());
  Matrix base = a;
  while (n) {
    if (n & 1) out = out * base;
    base = base * base;
    n >>= 1;
  }
  return out;
}

// Pointwise (phi - lambda)^n.
std::vector<Matrix> shifted_power(const Morphism& phi, value_type lambda, std::size_t n) {
  std::vector<Matrix> out;
  for (const auto& c : phi.components) {
    const auto shift = Matrix::identity(c.rows(), c.field()).scaled(lambda);
    out.push_back(power(c - shift, n));
  }
  return out;
}

std::size_t max_dim(const Representation& m) {
  std::size_t d = 0;
  for (auto x : m.dims()) d = std::max(d, x);
  return d;
}

Morphism unflatten(const Matrix& column, const RepPtr& m) {
  Morphism f{m, m, {}};
  std::size_t i = 0;
  for (auto d : m->dims()) {
    Matrix c(d, d, m->field());
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k) c(r, k) = column(i++, 0);
    f.components.push_back(std::move(c));
  }
  return f;
}

Matrix columns_of(const std::vector<Matrix>& cols, std::size_t rows, PrimeField field) {
  Matrix out(rows, cols.size(), field);
  for (std::size_t j = 0; j < cols.size(); ++j) out.set_block(0, j, cols[j]);
  return out;
}

class Decomposer {
 public:
  Decomposer(const OracleOptions& options, PrimeField field) : opt_(options), rng_(options.seed) {
    if (field.modulus() <= opt_.max_scan_modulus) {
      for (value_type l = 0; l < field.modulus(); ++l) lambdas_.push_back(l);
    } else {
      lambdas_ = {0, 1};
    }
  }

  void run(const RepPtr& m, std::vector<RepPtr>& out) {
    if (m->is_zero()) return;
    const auto end = hom_space(m, m);
    if (end.dimension() == 1) {
      out.push_back(m);
      return;
    }
    for (std::size_t j = 0; j < end.dimension(); ++j)
      if (try_split(m, end.morphism(j), out)) return;
    if (certify_local(m, end)) {
      out.push_back(m);
      return;
    }
    const auto p = m->field().modulus();
    for (std::size_t attempt = 0; attempt < opt_.retries; ++attempt) {
      std::vector<value_type> coeffs(end.dimension());
      for (auto& c : coeffs) c = static_cast<value_type>(rng_() % p);
      if (try_split(m, end.combination(coeffs), out)) return;
    }
    throw Undecided("decomposition oracle: no idempotent found and End is not certified local");
  }

 private:
  // Fitting decomposition of m along phi - lambda.
  bool try_split(const RepPtr& m, const Morphism& phi, std::vector<RepPtr>& out) {
    const auto total = m->total_dim();
    const auto n = max_dim(*m);
    for (auto lambda : lambdas_) {
      bool eigen = false;
      for (const auto& c : phi.components) {
        if (c.rows() == 0) continue;
        if (rank(c - Matrix::identity(c.rows(), c.field()).scaled(lambda)) < c.rows()) {
          eigen = true;
          break;
        }
      }
      if (!eigen) continue;
      auto psi = shifted_power(phi, lambda, n);
      std::size_t r = 0;
      for (const auto& c : psi) r += rank(c);
      if (r == 0 || r == total) continue;
      std::vector<Matrix> ker, img;
      for (const auto& c : psi) {
        ker.push_back(kernel_basis(c));
        img.push_back(column_space(c));
      }
      run(subrepresentation(m, ker).first, out);
      run(subrepresentation(m, img).first, out);
      return true;
    }
    return false;
  }

  bool certify_local(const RepPtr& m, const HomSpace& end) {
    const auto n = max_dim(*m);
    const auto field = m->field();
    const auto rows = end.basis.rows();
    std::vector<Matrix> shifted;
    for (std::size_t j = 0; j < end.dimension(); ++j) {
      const auto b = end.morphism(j);
      std::optional<value_type> eigenvalue;
      for (auto lambda : lambdas_) {
        auto psi = shifted_power(b, lambda, n);
        if (std::all_of(psi.begin(), psi.end(), [](const Matrix& c) { return c.is_zero(); })) {
          eigenvalue = lambda;
          break;
        }
      }
      if (!eigenvalue) return false;
      Morphism s = b;
      for (auto& c : s.components) c = c - Matrix::identity(c.rows(), field).scaled(*eigenvalue);
      shifted.push_back(flatten(s));
    }
    const Matrix radical = column_space(columns_of(shifted, rows, field));
    const Matrix one = flatten(identity_morphism(m));
    if (radical.cols() + 1 != end.dimension() || rank(hstack(radical, one)) != end.dimension()) return false;

    // Powers of the candidate ideal must shrink to zero while staying inside it.
    Matrix current = radical;
    while (current.cols() > 0) {
      std::vector<Matrix> products;
      for (std::size_t a = 0; a < current.cols(); ++a) {
        const auto left = unflatten(current.column(a), m);
        for (std::size_t b = 0; b < radical.cols(); ++b)
          products.push_back(flatten(compose(left, unflatten(radical.column(b), m))));
      }
      Matrix next = column_space(columns_of(products, rows, field));
      if (rank(hstack(radical, next)) != radical.cols()) return false;
      if (next.cols() >= current.cols()) return false;
      current = std::move(next);
    }
    return true;
  }

  OracleOptions opt_;
  std::mt19937_64 rng_;
  std::vector<value_type> lambdas_;
};

}  // namespace

std::vector<RepPtr> decompose_oracle(const RepPtr& m, const OracleOptions& options) {
  if (m->total_dim() > options.cap)
    throw CapExceeded("decomposition oracle: total dimension " + std::to_string(m->total_dim()) +
                      " exceeds cap " + std::to_string(options.cap));
  std::vector<RepPtr> out;
  Decomposer(options, m->field()).run(m, out);
  return out;
}

std::size_t count_interval_summands(const std::vector<RepPtr>& summands, const Support& support) {
  std::size_t c = 0;
  for (const auto& s : summands)
    if (auto sup = as_interval_module(*s); sup && *sup == support) ++c;
  return c;
}

}  // namespace posetbar
