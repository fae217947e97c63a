#include "spectradef/linalg.hpp"

#include <utility>

#include "spectradef/error.hpp"

namespace spectradef {

bool is_zero(std::span<const Scalar> v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Scalar hermitian(std::span<const Scalar> u, std::span<const Scalar> v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "inner product of unequal lengths");
  Scalar acc;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k].is_zero() || v[k].is_zero()) continue;
    acc += u[k].conj() * v[k];
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged row list");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Scalar& b = other(k, c);
        if (b.is_zero()) continue;
        out(r, c) += a * b;
      }
    }
  }
  return out;
}

Vector Matrix::apply(std::span<const Scalar> x) const {
  if (x.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (a.is_zero() || x[c].is_zero()) continue;
      out[r] += a * x[c];
    }
  }
  return out;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Matrix Matrix::conj() const {
  Matrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].conj();
  return out;
}

bool Matrix::is_zero() const { return spectradef::is_zero(data_); }

// ---------------------------------------------------------------------------
// Elimination

Reduction reduce(Matrix m) {
  Reduction out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t pivot_row = lead;
    while (pivot_row < rows && m(pivot_row, c).is_zero()) ++pivot_row;
    if (pivot_row == rows) continue;
    if (pivot_row != lead) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(pivot_row, k), m(lead, k));
    }
    const Scalar inv = Scalar(1) / m(lead, c);
    for (std::size_t k = c; k < cols; ++k) {
      if (!m(lead, k).is_zero()) m(lead, k) *= inv;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || m(r, c).is_zero()) continue;
      const Scalar factor = m(r, c);
      for (std::size_t k = c; k < cols; ++k) {
        if (m(lead, k).is_zero()) continue;
        m(r, k) -= factor * m(lead, k);
      }
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.rank = lead;
  out.rref = std::move(m);
  return out;
}

Subspace kernel(const Matrix& m) {
  const std::size_t cols = m.cols();
  Reduction red = reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : red.pivots) is_pivot[c] = true;
  std::vector<Vector> vectors;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) {
      const Scalar& a = red.rref(i, f);
      if (!a.is_zero()) v[red.pivots[i]] = -a;
    }
    vectors.push_back(std::move(v));
  }
  return Subspace::span(vectors, cols);
}

Subspace image(const Matrix& m) { return Subspace::from_rows(m.transpose()); }

std::optional<Vector> solve_particular(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  Reduction red = reduce(std::move(aug));
  Vector x(m.cols());
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    if (red.pivots[i] == m.cols()) return std::nullopt;
    x[red.pivots[i]] = red.rref(i, m.cols());
  }
  return x;
}

Vector solve_min_norm(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  if (spectradef::is_zero(b)) return Vector(m.cols());
  // x = m^H y with (m m^H) y = b lies in ker(m)^perp, which pins it down.
  const Matrix adj = m.adjoint();
  auto y = solve_particular(m * adj, b);
  if (!y) throw Error(ErrorCode::NoSolution, "right-hand side is not in the image");
  Vector x = adj.apply(*y);
  if (m.apply(x) != Vector(b.begin(), b.end())) {
    throw Error(ErrorCode::NoSolution, "right-hand side is not in the image");
  }
  return x;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::from_rows(const Matrix& rows) {
  Reduction red = reduce(rows);
  Subspace out(rows.cols());
  out.basis_ = Matrix(red.rank, rows.cols());
  for (std::size_t r = 0; r < red.rank; ++r)
    for (std::size_t c = 0; c < rows.cols(); ++c) out.basis_(r, c) = red.rref(r, c);
  out.pivots_ = std::move(red.pivots);
  return out;
}

Subspace Subspace::span(const std::vector<Vector>& vectors, std::size_t ambient_dim) {
  return from_rows(Matrix::from_rows(vectors, ambient_dim));
}

Subspace Subspace::full(std::size_t ambient_dim) { return from_rows(Matrix::identity(ambient_dim)); }

Subspace Subspace::coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices) {
  std::vector<Vector> vectors;
  for (auto k : indices) {
    Vector v(ambient_dim);
    v.at(k) = 1;
    vectors.push_back(std::move(v));
  }
  return span(vectors, ambient_dim);
}

Vector Subspace::basis_vector(std::size_t k) const {
  auto r = basis_.row(k);
  return Vector(r.begin(), r.end());
}

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t k = 0; k < dim(); ++k) out.push_back(basis_vector(k));
  return out;
}

Vector Subspace::reduce_vector(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length vs ambient");
  Vector r(v.begin(), v.end());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Scalar coef = r[pivots_[i]];
    if (coef.is_zero()) continue;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (!basis_(i, c).is_zero()) r[c] -= coef * basis_(i, c);
    }
  }
  return r;
}

bool Subspace::contains(std::span<const Scalar> v) const { return spectradef::is_zero(reduce_vector(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::DimensionMismatch, "subspace ambient dims differ");
  for (std::size_t k = 0; k < other.dim(); ++k) {
    if (!contains(other.basis_.row(k))) return false;
  }
  return true;
}

Vector Subspace::coordinates(std::span<const Scalar> v) const {
  if (!contains(v)) throw Error(ErrorCode::NotContained, "vector is not a member of the subspace");
  Vector out(dim());
  for (std::size_t i = 0; i < pivots_.size(); ++i) out[i] = v[pivots_[i]];
  return out;
}

Subspace Subspace::annihilator() const { return kernel(basis_); }

Subspace Subspace::orthogonal_complement() const { return kernel(basis_.conj()); }

Vector Subspace::project(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length vs ambient");
  const std::size_t k = dim();
  Vector out(ambient_);
  if (k == 0) return out;
  Matrix gram(k, k);
  Vector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = hermitian(basis_.row(i), basis_.row(j));
    rhs[i] = hermitian(basis_.row(i), v);
  }
  auto coef = solve_particular(gram, rhs);
  for (std::size_t j = 0; j < k; ++j) {
    if ((*coef)[j].is_zero()) continue;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (!basis_(j, c).is_zero()) out[c] += (*coef)[j] * basis_(j, c);
    }
  }
  return out;
}

Subspace sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "sum of subspaces");
  auto vectors = u.basis_vectors();
  for (auto& w : v.basis_vectors()) vectors.push_back(std::move(w));
  return Subspace::span(vectors, u.ambient_dim());
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "intersection of subspaces");
  auto constraints = u.annihilator().basis_vectors();
  for (auto& w : v.annihilator().basis_vectors()) constraints.push_back(std::move(w));
  return kernel(Matrix::from_rows(constraints, u.ambient_dim()));
}

Subspace preimage(const Matrix& a, const Subspace& u) {
  if (a.rows() != u.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "preimage target dimension");
  const Matrix ann = u.annihilator().basis();
  if (ann.rows() == 0) return Subspace::full(a.cols());
  return kernel(ann * a);
}

Subspace image_of(const Matrix& a, const Subspace& u) {
  if (a.cols() != u.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "image source dimension");
  std::vector<Vector> vectors;
  for (std::size_t k = 0; k < u.dim(); ++k) vectors.push_back(a.apply(u.basis().row(k)));
  return Subspace::span(vectors, a.rows());
}

std::size_t quotient_dim(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "quotient of subspaces");
  if (!v.contains(u)) throw Error(ErrorCode::NotContained, "denominator is not contained in numerator");
  return v.dim() - u.dim();
}

bool member(std::span<const Scalar> v, const Subspace& u) { return u.contains(v); }

// ---------------------------------------------------------------------------
// Quotient

Quotient::Quotient(Subspace numerator, Subspace denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (numerator_.ambient_dim() != denominator_.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "quotient of subspaces");
  }
  if (!numerator_.contains(denominator_)) {
    throw Error(ErrorCode::NotContained, "denominator is not contained in numerator");
  }
  std::vector<Vector> reduced;
  for (std::size_t k = 0; k < numerator_.dim(); ++k) {
    reduced.push_back(denominator_.reduce_vector(numerator_.basis().row(k)));
  }
  complement_ = Subspace::span(reduced, numerator_.ambient_dim());
}

Vector Quotient::class_of(std::span<const Scalar> v) const {
  if (!numerator_.contains(v)) throw Error(ErrorCode::NotContained, "vector is not a cocycle of this quotient");
  return complement_.coordinates(denominator_.reduce_vector(v));
}

bool Quotient::is_trivial_class(std::span<const Scalar> v) const { return spectradef::is_zero(class_of(v)); }

}  // namespace spectradef
