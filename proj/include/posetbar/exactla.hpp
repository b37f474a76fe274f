#pragma once

// Dense linear algebra over a prime field GF(p).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace posetbar {

class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 2);

  std::uint32_t modulus() const { return p_; }

  value_type reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }
  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} * b) % p_);
  }
  value_type inv(value_type a) const;

  // Signed representative in (-p/2, p/2], used for printing.
  std::int64_t lift(value_type a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

// Row-major dense matrix. A 0xn or nx0 matrix is a map to/from the zero space.
class Matrix {
 public:
  using value_type = PrimeField::value_type;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, PrimeField field);
  Matrix(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static Matrix zero(std::size_t rows, std::size_t cols, PrimeField field) {
    return Matrix(rows, cols, field);
  }
  static Matrix identity(std::size_t n, PrimeField field);
  static Matrix from_rows(PrimeField field, std::size_t rows, std::size_t cols,
                          std::span<const std::int64_t> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  value_type operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { (*this)(r, c) = field_.reduce(v); }

  std::span<const value_type> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<value_type>& data() const { return data_; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix column(std::size_t c) const;
  Matrix columns(std::span<const std::size_t> which) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(value_type s) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  PrimeField field_{};
  std::vector<value_type> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(std::span<const Matrix> blocks, PrimeField field);

struct EchelonForm {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan elimination. Pivots are taken in column order, first nonzero
// row below the current one.
EchelonForm rref(const Matrix& a);

std::size_t rank(const Matrix& a);

// Columns form a basis of {v : Av = 0}, one per free column, each with a 1 in
// its free coordinate and zeros in the other free coordinates.
Matrix kernel_basis(const Matrix& a);

// Columns form a basis of the column space of a: the pivot columns of a.
Matrix column_space(const Matrix& a);

// Rows form a basis of {w : wA = 0}. Its null space is the column space of a.
Matrix cokernel_projection(const Matrix& a);

// Particular solution of AX = B with free variables set to 0, or nullopt if
// the system is inconsistent. Throws DomainError if A.rows != B.rows.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

Matrix inverse(const Matrix& a);

}  // namespace posetbar
