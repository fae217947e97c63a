#pragma once

#include <random>

#include "spectradef/model.hpp"

namespace testsupport {

using namespace spectradef;

inline Scalar random_scalar(std::mt19937& rng, int range = 3) {
  std::uniform_int_distribution<int> dist(-range, range);
  return Scalar(Rational(dist(rng)), Rational(dist(rng)));
}

inline Vector random_vector(std::mt19937& rng, std::size_t n, int range = 3) {
  Vector v(n);
  for (auto& x : v) x = random_scalar(rng, range);
  return v;
}

inline Vector unit_vector(std::size_t n, std::size_t k) {
  Vector v(n);
  v.at(k) = Scalar(1);
  return v;
}

inline Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int range = 2) {
  Matrix m(rows, cols);
  std::uniform_int_distribution<int> sparse(0, 2);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (sparse(rng) != 0) m(r, c) = random_scalar(rng, range);
    }
  }
  return m;
}

inline Form random_form(std::mt19937& rng, const Model& model, Bidegree b) {
  return model.from_vector(random_vector(rng, model.dim(b)), b);
}

/// Random element of the full admissible algebra, all bidegrees.
inline Form random_mixed_form(std::mt19937& rng, const Model& model) {
  Form f;
  for (int p = 0; p <= model.n(); ++p) {
    for (int q = 0; q <= model.m(); ++q) f += random_form(rng, model, {p, q});
  }
  return f;
}

inline VectorForm random_vector_form(std::mt19937& rng, const Model& model, int q) {
  return model.from_vector(random_vector(rng, model.vector_basis(q).size()), q);
}

}  // namespace testsupport
