#include "spectradef/obstruction.hpp"

#include <bit>

#include "spectradef/error.hpp"

namespace spectradef {

namespace {

std::size_t rank_of(const Matrix& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : reduce(m).rank; }

std::string bideg_label(int p, int q) { return "^{" + std::to_string(p) + "," + std::to_string(q) + "}"; }

Quotient dolbeault_space(const Model& model, int p, int q) {
  if (!model.in_range({p, q})) return Quotient(Subspace(0), Subspace(0));
  return Quotient(kernel(model.delbar_matrix({p, q})), image(model.delbar_matrix({p, q - 1})));
}

std::vector<Form> forms_of(const Model& model, const Quotient& h, Bidegree b) {
  std::vector<Form> out;
  for (const auto& v : h.representatives()) out.push_back(model.from_vector(v, b));
  return out;
}

bool has_trivial_canonical(const Model& model) {
  try {
    omega_form(model);
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoTrivialCanonical) throw;
    return false;
  }
}

// Coordinates of [i_sigma(alpha)] in the target quotient.
Vector contracted_class(const Model& model, const VectorForm& sigma, const Form& alpha, const Quotient& target,
                        Bidegree tb) {
  if (target.dim() == 0 && target.ambient_dim() == 0) return {};
  const Form f = model.contract(sigma, alpha);
  try {
    return target.class_of(model.to_vector(f, tb));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotContained) throw;
    throw Error(ErrorCode::EquivalenceViolation, "i_sigma(alpha) is not delbar-closed");
  }
}

HypothesisFlag degeneration_flag(const SpectralSequence& ss, int p, int q) {
  HypothesisFlag flag;
  flag.name = "sum_r d_r" + bideg_label(p, q) + " = 0";
  if (!ss.model().in_range({p, q})) return flag;
  const DegenerationReport rep = ss.degeneration(p, q);
  flag.holds = rep.differentials_vanish;
  for (const auto& [r, rank] : rep.ranks) {
    if (rank != 0) flag.evidence.emplace_back(r, p, q, rank);
  }
  return flag;
}

HypothesisFlag tail_flag(const SpectralSequence& ss, int p, int q) {
  HypothesisFlag flag;
  flag.name = "sum_{0<=i<r} d_r^{" + std::to_string(p) + "-i," + std::to_string(q) + "+i} = 0";
  if (p < 0) return flag;
  const FiltrationReport rep = ss.filtration_condition(p, q);
  flag.holds = rep.differentials_vanish;
  flag.evidence = rep.nonzero;
  return flag;
}

HypothesisFlag first_differential_flag(const SpectralSequence& ss, int p, int q) {
  HypothesisFlag flag;
  flag.name = "d_1" + bideg_label(p, q) + " = 0";
  const std::size_t rank = rank_of(ss.differential(1, p, q));
  flag.holds = rank == 0;
  if (rank != 0) flag.evidence.emplace_back(1, p, q, rank);
  return flag;
}

}  // namespace

Form omega_form(const Model& model) {
  const Monomial top = model.top_holo();
  if (!model.admissible(top)) {
    throw Error(ErrorCode::NoTrivialCanonical, "the (n,0) admissible basis is empty");
  }
  Form omega = Form::monomial(top);
  if (!model.delbar(omega).is_zero()) {
    throw Error(ErrorCode::NoTrivialCanonical, "delbar of the top holomorphic monomial is nonzero");
  }
  return omega;
}

VectorForm omega_inverse(const Model& model, const Form& beta) {
  const Form omega = omega_form(model);
  const Monomial top = model.top_holo();
  VectorForm sigma = model.zero_vector();
  for (const auto& [mono, c] : beta.terms()) {
    const std::uint32_t missing = top.holo_bits() & ~mono.holo_bits();
    if ((mono.holo_bits() & ~top.holo_bits()) != 0 || std::popcount(missing) != 1) {
      throw Error(ErrorCode::DimensionMismatch, "omega_inverse needs a form of holomorphic degree n-1");
    }
    const int a = std::countr_zero(missing);
    const Monomial tau = Monomial::from_parts(0, mono.anti_bits());
    const auto contracted = contract_monomial(a, top);
    const auto product = multiply(tau, contracted->second);
    const int sign = contracted->first * product->first;
    sigma.component(static_cast<std::size_t>(a)).add(tau, sign == 1 ? c : -c);
  }
  return sigma;
}

std::string to_string(MuDomain d) {
  switch (d) {
    case MuDomain::Automatic: return "automatic";
    case MuDomain::VectorDolbeault: return "vector-dolbeault";
    case MuDomain::OmegaRepresented: return "omega-represented";
  }
  return "unknown";
}

bool mu_available(const Model& model) { return model.frame_flat() || has_trivial_canonical(model); }

ContractionMap mu(const Model& model, int p, int q, MuDomain domain, bool verify) {
  const bool omega_ok = has_trivial_canonical(model);
  if (domain == MuDomain::Automatic) {
    if (omega_ok) {
      domain = MuDomain::OmegaRepresented;
    } else if (model.frame_flat()) {
      domain = MuDomain::VectorDolbeault;
    } else {
      throw Error(ErrorCode::NoDomainPath, "frame is not holomorphic and the canonical bundle is not trivial");
    }
  }
  if (domain == MuDomain::OmegaRepresented && !omega_ok) {
    throw Error(ErrorCode::NoDomainPath, "the canonical bundle is not trivial in this model");
  }
  if (domain == MuDomain::VectorDolbeault && !model.frame_flat()) {
    throw Error(ErrorCode::NoDomainPath, "the frame is not holomorphic");
  }

  ContractionMap out;
  out.p = p;
  out.q = q;
  out.domain = domain;
  const int n = model.n();

  // Domain classes, plus generators of the coboundaries used for perturbation.
  std::vector<VectorForm> domain_boundaries;
  if (domain == MuDomain::VectorDolbeault) {
    const Quotient h(kernel(model.delbar_vector_matrix(2)), image(model.delbar_vector_matrix(1)));
    for (const auto& v : h.representatives()) out.domain_classes.push_back(model.from_vector(v, 2));
    for (const auto& v : h.denominator().basis_vectors()) domain_boundaries.push_back(model.from_vector(v, 2));
  } else {
    const Quotient h = dolbeault_space(model, n - 1, 2);
    out.omega_images = forms_of(model, h, {n - 1, 2});
    for (const auto& beta : out.omega_images) out.domain_classes.push_back(omega_inverse(model, beta));
    for (const auto& v : h.denominator().basis_vectors()) {
      domain_boundaries.push_back(omega_inverse(model, model.from_vector(v, {n - 1, 2})));
    }
  }

  const Quotient source = dolbeault_space(model, p, q);
  const Quotient target = dolbeault_space(model, p - 1, q + 2);
  out.source_classes = forms_of(model, source, {p, q});
  out.target_classes = forms_of(model, target, {p - 1, q + 2});
  const std::size_t s = out.source_classes.size();
  const std::size_t t = out.target_classes.size();

  Matrix stacked(s * t, out.domain_classes.size());
  for (std::size_t k = 0; k < out.domain_classes.size(); ++k) {
    Matrix m(t, s);
    for (std::size_t j = 0; j < s; ++j) {
      const Vector cls = contracted_class(model, out.domain_classes[k], out.source_classes[j], target, {p - 1, q + 2});
      for (std::size_t i = 0; i < t; ++i) {
        m(i, j) = cls[i];
        stacked(i * s + j, k) = cls[i];
      }
    }
    out.matrices.push_back(std::move(m));
  }
  out.kernel = kernel(stacked);

  if (verify && model.frame_flat() && t > 0) {
    std::vector<Form> source_boundaries;
    for (const auto& v : source.denominator().basis_vectors()) source_boundaries.push_back(model.from_vector(v, {p, q}));
    for (const auto& sigma : out.domain_classes) {
      for (const auto& b : source_boundaries) {
        if (!target.is_trivial_class(model.to_vector(model.contract(sigma, b), {p - 1, q + 2}))) {
          throw Error(ErrorCode::EquivalenceViolation, "mu depends on the representative of the source class");
        }
      }
    }
    for (const auto& sigma : domain_boundaries) {
      for (const auto& alpha : out.source_classes) {
        if (!target.is_trivial_class(model.to_vector(model.contract(sigma, alpha), {p - 1, q + 2}))) {
          throw Error(ErrorCode::EquivalenceViolation, "mu depends on the representative of the domain class");
        }
      }
    }
  }
  return out;
}

Subspace ker_mu(const Model& model, int p, int q, MuDomain domain) { return mu(model, p, q, domain).kernel; }

Matrix mu_of(const Model& model, int p, int q, const VectorForm& sigma) {
  if (!mu_available(model)) {
    throw Error(ErrorCode::NoDomainPath, "frame is not holomorphic and the canonical bundle is not trivial");
  }
  const Quotient source = dolbeault_space(model, p, q);
  const Quotient target = dolbeault_space(model, p - 1, q + 2);
  const auto sources = forms_of(model, source, {p, q});
  Matrix m(target.dim(), sources.size());
  for (std::size_t j = 0; j < sources.size(); ++j) {
    const Vector cls = contracted_class(model, sigma, sources[j], target, {p - 1, q + 2});
    for (std::size_t i = 0; i < cls.size(); ++i) m(i, j) = cls[i];
  }
  return m;
}

bool in_ker_mu(const Model& model, int p, int q, const VectorForm& sigma) {
  return mu_of(model, p, q, sigma).is_zero();
}

// ---------------------------------------------------------------------------

KodairaReport check_refined_kodaira(const SpectralSequence& ss, int p, int q) {
  const Model& model = ss.model();
  KodairaReport out;
  out.p = p;
  out.q = q;
  out.hypotheses.push_back(degeneration_flag(ss, p, q));
  out.hypotheses.push_back(degeneration_flag(ss, p - 1, q + 1));
  out.hypotheses.push_back(tail_flag(ss, p - 2, q + 2));
  for (const auto& h : out.hypotheses) out.all_hold = out.all_hold && h.holds;
  const std::string target = "ker mu_{" + std::to_string(p) + "," + std::to_string(q) + "}";
  out.conclusion = out.all_hold ? "every obstruction sum_{j=1}^N [phi_j, phi_{N+1-j}] lies in " + target
                                : "hypotheses fail; no conclusion about " + target;
  if (mu_available(model)) {
    ContractionMap m = mu(model, p, q);
    out.kernel = std::move(m.kernel);
    out.kernel_domain = m.domain;
  }
  return out;
}

KodairaReport check_refined_kodaira(const Model& model, int p, int q) {
  return check_refined_kodaira(SpectralSequence(model), p, q);
}

std::string to_string(CYVerdict v) { return v == CYVerdict::Unobstructed ? "UNOBSTRUCTED" : "INCONCLUSIVE"; }

CYReport check_cy(const SpectralSequence& ss) {
  const Model& model = ss.model();
  const int n = model.n();
  CYReport out;

  HypothesisFlag canonical;
  canonical.name = "trivial canonical bundle";
  canonical.holds = has_trivial_canonical(model);
  out.flags.push_back(canonical);
  out.flags.push_back(degeneration_flag(ss, n - 1, 1));
  out.flags.push_back(tail_flag(ss, n - 2, 2));

  HypothesisFlag e2;
  e2.name = "E_2 degeneration in total degree " + std::to_string(n);
  for (int k : {n - 1, n}) {
    for (int p = 0; p <= k; ++p) {
      if (!model.in_range({p, k - p})) continue;
      for (int r = 2; r <= ss.stabilization_index(); ++r) {
        const std::size_t rank = rank_of(ss.differential(r, p, k - p));
        if (rank != 0) e2.evidence.emplace_back(r, p, k - p, rank);
      }
    }
  }
  e2.holds = e2.evidence.empty();
  out.flags.push_back(e2);
  out.flags.push_back(first_differential_flag(ss, n - 1, 1));
  out.flags.push_back(first_differential_flag(ss, n - 2, 2));

  out.theorem_route = out.flags[0].holds && out.flags[1].holds && out.flags[2].holds;
  out.corollary_route = out.flags[0].holds && out.flags[3].holds && out.flags[4].holds && out.flags[5].holds;
  out.verdict = out.theorem_route || out.corollary_route ? CYVerdict::Unobstructed : CYVerdict::Inconclusive;
  for (const auto& f : out.flags) {
    if (!f.holds) out.failing.push_back(f.name);
  }
  return out;
}

CYReport check_cy(const Model& model) { return check_cy(SpectralSequence(model)); }

}  // namespace spectradef
