#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spectradef/scalar.hpp"

namespace spectradef {

struct Bidegree {
  int p = 0;
  int q = 0;
  int total() const noexcept { return p + q; }
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

/// "p,q"
std::string to_string(Bidegree b);

/// A wedge of distinct coframe generators in canonical order: holomorphic
/// generators first by increasing index, then antiholomorphic ones.
/// Bits 0..15 hold holomorphic indices, bits 16..31 antiholomorphic ones,
/// so bit order is canonical order.
struct Monomial {
  static constexpr int kAntiShift = 16;
  static constexpr int kMaxPerSide = 16;

  std::uint32_t bits = 0;

  static Monomial holo(int index) { return {std::uint32_t{1} << index}; }
  static Monomial anti(int index) { return {std::uint32_t{1} << (index + kAntiShift)}; }
  static Monomial from_parts(std::uint32_t holo_bits, std::uint32_t anti_bits) {
    return {holo_bits | (anti_bits << kAntiShift)};
  }

  std::uint32_t holo_bits() const noexcept { return bits & 0xFFFFu; }
  std::uint32_t anti_bits() const noexcept { return bits >> kAntiShift; }
  int p() const noexcept { return std::popcount(holo_bits()); }
  int q() const noexcept { return std::popcount(anti_bits()); }
  int degree() const noexcept { return std::popcount(bits); }
  Bidegree bidegree() const noexcept { return {p(), q()}; }
  bool has_holo(int index) const noexcept { return (bits >> index) & 1u; }
  bool has_anti(int index) const noexcept { return (bits >> (index + kAntiShift)) & 1u; }

  std::vector<int> holo_indices() const;
  std::vector<int> anti_indices() const;

  friend bool operator==(Monomial a, Monomial b) noexcept { return a.bits == b.bits; }
};

/// Bidegree first, then holomorphic indices lexicographically, then
/// antiholomorphic indices lexicographically.
struct MonomialOrder {
  bool operator()(Monomial a, Monomial b) const noexcept;
};

/// a wedge b as (sign, product); nullopt when they share a generator.
std::optional<std::pair<int, Monomial>> multiply(Monomial a, Monomial b);

/// Interior product of the frame vector dual to holomorphic generator
/// `index` with a monomial: (sign, result) or nullopt when it vanishes.
std::optional<std::pair<int, Monomial>> contract_monomial(int index, Monomial m);

/// A sparse element of the exterior algebra. Zero coefficients are never stored.
class Form {
 public:
  using Terms = std::map<Monomial, Scalar, MonomialOrder>;

  Form() = default;
  static Form monomial(Monomial m, const Scalar& coeff = 1);
  static Form one() { return monomial(Monomial{}); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Scalar coefficient(Monomial m) const;

  void add(Monomial m, const Scalar& coeff);

  /// Homogeneous component of the given bidegree.
  Form component(Bidegree b) const;
  /// Sum of the components with holomorphic degree >= p (or <= p).
  Form holo_degree_at_least(int p) const;
  Form holo_degree_at_most(int p) const;
  std::set<Bidegree> bidegrees() const;
  /// The shared bidegree of all terms; nullopt for zero or mixed forms.
  std::optional<Bidegree> bidegree() const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Scalar& s);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Scalar& s) { return a *= s; }
  friend Form operator*(const Scalar& s, Form a) { return a *= s; }
  Form operator-() const { return *this * Scalar(-1); }

  friend bool operator==(const Form& a, const Form& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// A form with values in the holomorphic tangent bundle, written in the
/// global frame theta_a dual to the holomorphic coframe: sum_a tau_a (x) theta_a.
/// Coefficients are (0,k)-forms for one shared k.
class VectorForm {
 public:
  VectorForm() = default;
  explicit VectorForm(std::size_t frame_size) : components_(frame_size) {}
  static VectorForm decomposable(std::size_t frame_size, Form coeff, int frame_index);

  std::size_t frame_size() const noexcept { return components_.size(); }
  const Form& component(std::size_t a) const { return components_.at(a); }
  Form& component(std::size_t a) { return components_.at(a); }
  const std::vector<Form>& components() const noexcept { return components_; }

  bool is_zero() const;
  /// k for (0,k)-valued coefficients; nullopt for zero.
  /// Throws std::invalid_argument when coefficients are not of one type (0,k).
  std::optional<int> degree() const;

  VectorForm& operator+=(const VectorForm& o);
  VectorForm& operator-=(const VectorForm& o);
  VectorForm& operator*=(const Scalar& s);
  friend VectorForm operator+(VectorForm a, const VectorForm& b) { return a += b; }
  friend VectorForm operator-(VectorForm a, const VectorForm& b) { return a -= b; }
  friend VectorForm operator*(VectorForm a, const Scalar& s) { return a *= s; }
  friend VectorForm operator*(const Scalar& s, VectorForm a) { return a *= s; }
  VectorForm operator-() const { return *this * Scalar(-1); }

  friend bool operator==(const VectorForm& a, const VectorForm& b);

 private:
  std::vector<Form> components_;
};

}  // namespace spectradef
