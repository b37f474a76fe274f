#include "posetbar/exactla.hpp"

#include <sstream>
#include <utility>

#include "posetbar/error.hpp"

namespace posetbar {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw DomainError("modulus " + std::to_string(p) + " is not a prime below 2^31");
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw DomainError("inverse of zero in GF(" + std::to_string(p_) + ")");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<value_type>(result);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

Matrix::Matrix(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0), field_(field) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ragged matrix literal");
    for (auto v : r) data_.push_back(field_.reduce(v));
  }
}

Matrix Matrix::identity(std::size_t n, PrimeField field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(PrimeField field, std::size_t rows, std::size_t cols,
                         std::span<const std::int64_t> entries) {
  if (entries.size() != rows * cols) throw DomainError("matrix entry count does not match shape");
  Matrix m(rows, cols, field);
  for (std::size_t i = 0; i < entries.size(); ++i) m.data_[i] = field.reduce(entries[i]);
  return m;
}

bool Matrix::is_zero() const {
  for (auto v : data_)
    if (v) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::column(std::size_t c) const { return block(0, c, rows_, 1); }

Matrix Matrix::columns(std::span<const std::size_t> which) const {
  Matrix out(rows_, which.size(), field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < which.size(); ++j) out(r, j) = (*this)(r, which[j]);
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DomainError("matrix block out of range");
  Matrix out(nr, nc, field_);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DomainError("matrix block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw DomainError("matrix product shape mismatch: " + std::to_string(rows_) + "x" +
                      std::to_string(cols_) + " * " + std::to_string(rhs.rows_) + "x" +
                      std::to_string(rhs.cols_));
  if (!(field_ == rhs.field_)) throw DomainError("matrix product over different fields");
  Matrix out(rows_, rhs.cols_, field_);
  const std::uint64_t p = field_.modulus();
  std::vector<std::uint64_t> acc(rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = (*this)(i, k);
      if (!a) continue;
      const auto* brow = rhs.data_.data() + k * rhs.cols_;
      for (std::size_t j = 0; j < rhs.cols_; ++j) acc[j] = (acc[j] + a * brow[j]) % p;
    }
    for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) = static_cast<value_type>(acc[j]);
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("matrix sum shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("matrix difference shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub(data_[i], rhs.data_[i]);
  return out;
}

Matrix Matrix::scaled(value_type s) const {
  Matrix out = *this;
  for (auto& v : out.data_) v = field_.mul(v, s);
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
  }
  os << ']';
  return os.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DomainError("hstack row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols(), a.field());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DomainError("vstack column mismatch");
  Matrix out(a.rows() + b.rows(), a.cols(), a.field());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

Matrix block_diagonal(std::span<const Matrix> blocks, PrimeField field) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix out(r, c, field);
  r = c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

EchelonForm rref(const Matrix& a) {
  EchelonForm e{a, {}};
  Matrix& m = e.reduced;
  const auto& f = m.field();
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    const auto s = f.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), s);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const auto factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  return rref(a).pivots.size();
}

Matrix kernel_basis(const Matrix& a) {
  const auto& f = a.field();
  const std::size_t n = a.cols();
  if (a.rows() == 0) return Matrix::identity(n, f);
  const auto e = rref(a);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix k(n, free.size(), f);
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      k(e.pivots[r], j) = f.neg(e.reduced(r, free[j]));
  }
  return k;
}

Matrix column_space(const Matrix& a) {
  if (a.empty()) return Matrix(a.rows(), 0, a.field());
  const auto e = rref(a);
  return a.columns(e.pivots);
}

Matrix cokernel_projection(const Matrix& a) {
  return kernel_basis(a.transpose()).transpose();
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw DomainError("solve: A has " + std::to_string(a.rows()) + " rows but B has " +
                      std::to_string(b.rows()));
  const auto& f = a.field();
  Matrix x(a.cols(), b.cols(), f);
  if (a.rows() == 0) return x;
  const auto e = rref(hstack(a, b));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= a.cols()) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) x(e.pivots[r], c) = e.reduced(r, a.cols() + c);
  }
  return x;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw DomainError("inverse of a non-square matrix");
  auto x = solve(a, Matrix::identity(a.rows(), a.field()));
  if (!x || rank(a) != a.rows()) throw DomainError("matrix is singular");
  return *x;
}

}  // namespace posetbar
