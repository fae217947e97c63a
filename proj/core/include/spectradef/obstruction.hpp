#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "spectradef/model.hpp"
#include "spectradef/spectral.hpp"

namespace spectradef {

/// The top holomorphic monomial, checked to be admissible and delbar-closed.
/// Throws NoTrivialCanonical.
Form omega_form(const Model& model);

/// The unique sigma with i_sigma(Omega) = beta for beta of bidegree (n-1, q).
/// Throws NoTrivialCanonical.
VectorForm omega_inverse(const Model& model, const Form& beta);

/// Where the domain H^{0,2}(T) of the contraction map comes from.
enum class MuDomain {
  /// Prefer the Omega path, fall back to vector-valued Dolbeault.
  Automatic,
  /// ker delbar / im delbar on (0,2) vector-valued forms; needs a flat frame.
  VectorDolbeault,
  /// H^{n-1,2} pulled back through omega_inverse; needs trivial canonical bundle.
  OmegaRepresented,
};

std::string to_string(MuDomain d);

/// mu_{p,q}: H^{0,2}(T) -> Hom(H^{p,q}, H^{p-1,q+2}), [sigma] -> [i_sigma(.)].
struct ContractionMap {
  int p = 0;
  int q = 0;
  MuDomain domain = MuDomain::Automatic;
  /// Representatives of a basis of the domain.
  std::vector<VectorForm> domain_classes;
  /// Omega-path only: the (n-1,2) forms the domain classes came from.
  std::vector<Form> omega_images;
  std::vector<Form> source_classes;  // basis of H^{p,q}
  std::vector<Form> target_classes;  // basis of H^{p-1,q+2}
  /// One matrix per domain class, target x source.
  std::vector<Matrix> matrices;
  /// Domain coordinates of classes acting as zero.
  Subspace kernel;
};

/// Throws NoDomainPath when the requested (or any) path is unavailable.
ContractionMap mu(const Model& model, int p, int q, MuDomain domain = MuDomain::Automatic,
                  bool verify = false);
Subspace ker_mu(const Model& model, int p, int q, MuDomain domain = MuDomain::Automatic);

/// Matrix of [i_sigma(.)] : H^{p,q} -> H^{p-1,q+2} for one delbar-closed sigma.
Matrix mu_of(const Model& model, int p, int q, const VectorForm& sigma);
bool in_ker_mu(const Model& model, int p, int q, const VectorForm& sigma);

/// Is some route to the domain of mu available?
bool mu_available(const Model& model);

struct HypothesisFlag {
  std::string name;
  bool holds = true;
  /// (r, p', q', rank) for each nonzero differential found.
  std::vector<std::tuple<int, int, int, std::size_t>> evidence;
};

struct KodairaReport {
  int p = 0;
  int q = 0;
  std::vector<HypothesisFlag> hypotheses;
  bool all_hold = true;
  std::string conclusion;
  /// Absent when mu has no domain path.
  std::optional<Subspace> kernel;
  std::optional<MuDomain> kernel_domain;
};

KodairaReport check_refined_kodaira(const Model& model, int p, int q);
KodairaReport check_refined_kodaira(const SpectralSequence& ss, int p, int q);

enum class CYVerdict { Unobstructed, Inconclusive };
std::string to_string(CYVerdict v);

struct CYReport {
  CYVerdict verdict = CYVerdict::Inconclusive;
  /// Trivial canonical bundle, vanishing of all d_r^{n-1,1}, and the tail
  /// family starting at (n-2,2).
  bool theorem_route = false;
  /// Trivial canonical bundle, E_2 degeneration in total degree n, and
  /// d_1^{n-1,1} = d_1^{n-2,2} = 0.
  bool corollary_route = false;
  std::vector<HypothesisFlag> flags;
  std::vector<std::string> failing;
};

CYReport check_cy(const Model& model);
CYReport check_cy(const SpectralSequence& ss);

}  // namespace spectradef
