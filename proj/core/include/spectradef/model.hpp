#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectradef/form.hpp"
#include "spectradef/linalg.hpp"

namespace spectradef {

struct SpecTerm {
  Scalar coeff;
  std::vector<std::string> monomial;
};

/// Explicit value of [left, right] as a combination of holomorphic frame names.
struct BracketOverride {
  std::string left;
  std::string right;
  std::vector<std::pair<Scalar, std::string>> value;
};

/// Declarative description of a coframe model, as read from JSON.
struct ModelSpec {
  std::string name;
  std::vector<std::string> holo_generators;
  std::vector<std::string> antiholo_generators;
  /// Generators without a rule are closed.
  std::map<std::string, std::vector<SpecTerm>> d_rules;
  /// Keyed by bidegree; absent means every monomial is admissible.
  std::optional<std::map<Bidegree, std::vector<std::vector<std::string>>>> admissible_basis;
  std::vector<BracketOverride> frame_overrides;
  /// Free-form annotations carried through dump/load unchanged.
  std::map<std::string, std::string> notes;
};

/// Holomorphic-tangent-valued basis element tau (x) theta_frame.
struct VectorMonomial {
  Monomial coeff;
  int frame = 0;
  friend bool operator==(const VectorMonomial&, const VectorMonomial&) = default;
};

class Model;

/// Validates the spec and builds the bicomplex. Throws Error with codes
/// InvalidSpec, IntegrabilityViolation, NotClosed, BasisNotClosed,
/// JacobiViolation.
Model build_model(const ModelSpec& spec);

/// A validated bigraded coframe algebra. Immutable after construction.
///
/// Every operator works in the free exterior algebra and then checks that
/// inputs and outputs are admissible, throwing ModelClosure otherwise.
class Model {
 public:
  const ModelSpec& spec() const noexcept { return spec_; }
  const std::string& name() const noexcept { return spec_.name; }
  /// Number of holomorphic generators (complex dimension).
  int n() const noexcept { return n_; }
  /// Number of antiholomorphic generators.
  int m() const noexcept { return m_; }
  bool in_range(Bidegree b) const noexcept { return b.p >= 0 && b.q >= 0 && b.p <= n_ && b.q <= m_; }
  bool has_admissible_basis() const noexcept { return spec_.admissible_basis.has_value(); }

  // --- bases and coordinates ------------------------------------------------
  const std::vector<Monomial>& basis(Bidegree b) const;
  std::size_t dim(Bidegree b) const { return basis(b).size(); }
  bool admissible(Monomial m) const;
  bool admissible(const Form& f) const;
  /// Position of m in basis(m.bidegree()).
  std::optional<std::size_t> index_of(Monomial m) const;

  /// Coordinates of the (b)-component of f; other components are ignored.
  Vector to_vector(const Form& f, Bidegree b) const;
  Form from_vector(std::span<const Scalar> v, Bidegree b) const;

  /// Matrix of del: A^{p,q} -> A^{p+1,q} (rows: target, columns: source).
  const Matrix& del_matrix(Bidegree b) const;
  /// Matrix of delbar: A^{p,q} -> A^{p,q+1}.
  const Matrix& delbar_matrix(Bidegree b) const;

  // --- generators -----------------------------------------------------------
  Monomial holo_generator(int a) const { return Monomial::holo(a); }
  Monomial anti_generator(int a) const { return Monomial::anti(a); }
  std::vector<std::string> monomial_names(Monomial m) const;
  /// "phi1^phi3" style, or "1" for the unit.
  std::string monomial_label(Monomial m) const;
  /// Parses names in canonical order; throws InvalidSpec.
  Monomial monomial_from_names(const std::vector<std::string>& names) const;
  /// The product of all holomorphic generators.
  Monomial top_holo() const noexcept { return Monomial{(std::uint32_t{1} << n_) - 1}; }

  /// C^p_{ab} with [theta_a, theta_b] = sum_p C^p_{ab} theta_p.
  const Scalar& bracket_constant(int a, int b, int p) const;
  /// True when delbar of every holomorphic generator vanishes, so the frame
  /// theta_a is holomorphic and delbar acts on vector-valued forms componentwise.
  bool frame_flat() const noexcept { return frame_flat_; }
  const std::vector<std::string>& lint_warnings() const noexcept { return warnings_; }

  // --- scalar-valued operators ----------------------------------------------
  Form wedge(const Form& f, const Form& g) const;
  Form del(const Form& f) const;
  Form delbar(const Form& f) const;
  Form d(const Form& f) const;
  /// theta_a contracted into f.
  Form contract(int a, const Form& f) const;
  /// i_phi f = sum_a tau_a ^ (theta_a _| f).
  Form contract(const VectorForm& phi, const Form& f) const;
  /// sum_k i_phi^k f / k!
  Form exp_contract(const VectorForm& phi, const Form& f) const;
  /// [i_phi, del] in the graded sense: i_phi del - (-1)^{k-1} del i_phi.
  Form lie10(const VectorForm& phi, const Form& f) const;
  /// [i_phi, delbar] in the graded sense.
  Form lie01(const VectorForm& phi, const Form& f) const;
  /// delbar + [del, i_phi] for phi of type (0,1): delbar f + del i_phi f - i_phi del f.
  /// Throws FrameNotHolomorphic on a non-flat frame.
  Form delbar_phi(const VectorForm& phi, const Form& f) const;

  // --- vector-valued operators ----------------------------------------------
  VectorForm zero_vector() const { return VectorForm(static_cast<std::size_t>(n_)); }
  VectorForm bracket(const VectorForm& phi, const VectorForm& psi) const;
  /// Componentwise delbar. Throws FrameNotHolomorphic on a non-flat frame.
  VectorForm delbar(const VectorForm& phi) const;

  /// Admissible (0,q)-valued basis, ordered by frame index then coefficient.
  const std::vector<VectorMonomial>& vector_basis(int q) const;
  bool vector_admissible(Monomial coeff, int frame) const;
  bool admissible(const VectorForm& v) const;
  Vector to_vector(const VectorForm& v, int q) const;
  VectorForm from_vector(std::span<const Scalar> v, int q) const;
  /// delbar on (0,q)-valued forms: V^{0,q} -> V^{0,q+1}. Throws FrameNotHolomorphic.
  const Matrix& delbar_vector_matrix(int q) const;

 private:
  friend Model build_model(const ModelSpec& spec);
  Model() = default;

  std::size_t compress(Monomial m) const noexcept {
    return static_cast<std::size_t>(m.holo_bits() | (m.anti_bits() << n_));
  }
  Monomial expand(std::size_t c) const noexcept {
    const auto bits = static_cast<std::uint32_t>(c);
    return Monomial::from_parts(bits & ((std::uint32_t{1} << n_) - 1), bits >> n_);
  }

  // Free-algebra versions without admissibility checks.
  Form wedge_free(const Form& f, const Form& g) const;
  Form del_free(const Form& f) const;
  Form delbar_free(const Form& f) const;
  Form contract_free(int a, const Form& f) const;
  Form contract_free(const VectorForm& phi, const Form& f) const;
  Form exp_contract_free(const VectorForm& phi, const Form& f) const;
  VectorForm bracket_free(const VectorForm& phi, const VectorForm& psi) const;

  void require(const Form& f, const char* what) const;
  void require(const VectorForm& v, const char* what) const;
  void require_flat(const char* what) const;

  ModelSpec spec_;
  int n_ = 0;
  int m_ = 0;
  std::vector<std::string> names_;  // holo names then antiholo names

  // Indexed by compressed monomial.
  std::vector<Form> del_gen_;     // del of every free monomial
  std::vector<Form> delbar_gen_;  // delbar of every free monomial
  std::vector<int> position_;     // index in its bidegree basis, or -1 if not admissible

  std::map<Bidegree, std::vector<Monomial>> bases_;
  std::map<Bidegree, Matrix> del_mats_;
  std::map<Bidegree, Matrix> delbar_mats_;

  std::vector<Scalar> brackets_;  // n*n*n, index (a*n + b)*n + p
  bool frame_flat_ = false;
  bool omega_admissible_ = false;

  std::vector<std::vector<VectorMonomial>> vector_bases_;  // by q
  std::vector<int> vector_position_;                       // anti_bits * n + frame
  std::vector<Matrix> delbar_vector_mats_;                 // by q
  std::vector<std::string> warnings_;
};

}  // namespace spectradef
