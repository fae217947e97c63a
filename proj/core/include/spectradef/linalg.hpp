#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spectradef/scalar.hpp"

namespace spectradef {

using Vector = std::vector<Scalar>;

bool is_zero(std::span<const Scalar> v);

/// Dense row-major matrix over Q(i).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;

  Matrix operator*(const Matrix& other) const;
  Vector apply(std::span<const Scalar> x) const;
  /// Conjugate transpose.
  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conj() const;

  bool is_zero() const;
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct Reduction {
  std::size_t rank = 0;
  /// Same shape as the input; zero rows collect at the bottom.
  Matrix rref;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination to reduced row-echelon form.
Reduction reduce(Matrix m);

class Subspace;

/// {x : m x = 0}
Subspace kernel(const Matrix& m);
/// Span of the columns of m.
Subspace image(const Matrix& m);

/// Any x with m x = b, or nullopt when b is not in the image.
std::optional<Vector> solve_particular(const Matrix& m, std::span<const Scalar> b);

/// The unique x with m x = b orthogonal to ker m under the standard Hermitian
/// product (coordinate basis orthonormal). Throws NoSolution.
Vector solve_min_norm(const Matrix& m, std::span<const Scalar> b);

/// <u, v> = sum conj(u_i) v_i
Scalar hermitian(std::span<const Scalar> u, std::span<const Scalar> v);

/// A linear subspace of Q(i)^n stored by its reduced row-echelon basis, which
/// is the canonical representative: equal subspaces have equal bases.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace span(const std::vector<Vector>& vectors, std::size_t ambient_dim);
  static Subspace from_rows(const Matrix& rows);
  static Subspace full(std::size_t ambient_dim);
  /// Coordinate subspace spanned by e_i for the given indices.
  static Subspace coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  Vector basis_vector(std::size_t k) const;
  std::vector<Vector> basis_vectors() const;

  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& other) const;
  /// Coefficients of v in the stored basis; v must be a member.
  Vector coordinates(std::span<const Scalar> v) const;
  /// v minus its components along the basis pivots; zero iff v is a member.
  Vector reduce_vector(std::span<const Scalar> v) const;

  /// {y : sum_i u_i y_i = 0 for all u in this}, the bilinear annihilator.
  Subspace annihilator() const;
  /// Hermitian orthogonal complement.
  Subspace orthogonal_complement() const;
  /// Orthogonal projection of v onto this subspace.
  Vector project(std::span<const Scalar> v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);
/// {x : a x in u}
Subspace preimage(const Matrix& a, const Subspace& u);
/// The image a(u).
Subspace image_of(const Matrix& a, const Subspace& u);
/// dim v - dim u for u contained in v. Throws NotContained / DimensionMismatch.
std::size_t quotient_dim(const Subspace& u, const Subspace& v);
bool member(std::span<const Scalar> v, const Subspace& u);

/// The quotient numerator/denominator with a canonical complement basis.
/// Representatives are the rref basis of the numerator reduced modulo the
/// denominator's pivot columns, so they are deterministic.
class Quotient {
 public:
  Quotient() = default;
  /// Throws NotContained unless denominator is a subspace of numerator.
  Quotient(Subspace numerator, Subspace denominator);

  std::size_t dim() const noexcept { return complement_.dim(); }
  std::size_t ambient_dim() const noexcept { return numerator_.ambient_dim(); }
  const Subspace& numerator() const noexcept { return numerator_; }
  const Subspace& denominator() const noexcept { return denominator_; }
  std::vector<Vector> representatives() const { return complement_.basis_vectors(); }

  /// Class coordinates of a numerator element. Throws NotContained otherwise.
  Vector class_of(std::span<const Scalar> v) const;
  bool is_trivial_class(std::span<const Scalar> v) const;

 private:
  Subspace numerator_;
  Subspace denominator_;
  Subspace complement_;
};

}  // namespace spectradef
