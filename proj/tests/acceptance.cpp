// Acceptance checks. Prints one PASS/FAIL line per criterion; exits 1 if any fail.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "random_spec.hpp"
#include "spectradef/builtins.hpp"
#include "spectradef/deformation.hpp"
#include "spectradef/error.hpp"
#include "spectradef/obstruction.hpp"
#include "spectradef/spectral.hpp"
#include "spectradef_cli/cli.hpp"
#include "support.hpp"

using namespace spectradef;

namespace {

/// Collects the first few failed conditions of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checked_;
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0 && checked_ > 0; }
  std::string summary() const {
    std::ostringstream s;
    if (checked_ == 0) return "nothing checked";
    s << checked_ - failed_ << "/" << checked_ << " conditions";
    for (const auto& f : failures_) s << "; failed: " << f;
    return s.str();
  }

 private:
  std::size_t checked_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

Form mono(const Model& m, std::vector<std::string> names, Scalar c = Scalar(1)) {
  return Form::monomial(m.monomial_from_names(names), c);
}

std::string cell(int r, int p, int q) {
  return "(" + std::to_string(r) + ";" + std::to_string(p) + "," + std::to_string(q) + ")";
}

bool zero_matrix(const Matrix& m) { return m.rows() == 0 || m.cols() == 0 || m.is_zero(); }

std::vector<ModelSpec> random_specs(std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<ModelSpec> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(testsupport::random_spec(rng, 4));
  return out;
}

// ---- independent helpers on oracle monomials (index lists, holomorphic first)

/// theta_a contracted into a monomial: removes index a with the sign of its position.
std::optional<std::pair<Scalar, oracle::Mono>> contract_index(int a, const oracle::Mono& m) {
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] != a) continue;
    oracle::Mono rest = m;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    return std::make_pair(Scalar(k % 2 == 0 ? 1 : -1), rest);
  }
  return std::nullopt;
}

/// i_{c (x) theta_a} beta = c ^ (theta_a _| beta)
oracle::Poly contract_poly(const oracle::Mono& c, int a, const oracle::Poly& beta) {
  oracle::Poly out;
  oracle::Poly left;
  left[c] = Scalar(1);
  for (const auto& [m, coeff] : beta) {
    auto hit = contract_index(a, m);
    if (!hit) continue;
    oracle::Poly right;
    right[hit->second] = coeff * hit->first;
    for (const auto& [t, v] : oracle::wedge(left, right)) oracle::accumulate(out, t, v);
  }
  return out;
}

// ---- series helpers for the extension criterion, built from model primitives

FormSeries contract_series(const Model& model, const VectorSeries& phi, const FormSeries& a) {
  FormSeries out(a.variables(), a.order());
  for (const auto& [i, v] : phi.terms()) {
    for (const auto& [j, f] : a.terms()) {
      MultiIndex sum = i;
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += j[k];
      out.add(sum, model.contract(v, f));
    }
  }
  return out;
}

FormSeries map_series(const FormSeries& a, const std::function<Form(const Form&)>& op) {
  FormSeries out(a.variables(), a.order());
  for (const auto& [i, f] : a.terms()) out.add(i, op(f));
  return out;
}

// ---- criteria

bool criterion_1(Check& c) {
  for (const ModelSpec& spec : {iwasawa_spec(), nakamura_spec(1)}) {
    const Model model = build_model(spec);
    for (int p = 0; p <= model.n(); ++p) {
      for (int q = 0; q <= model.m(); ++q) {
        const Bidegree b{p, q};
        const std::string where = spec.name + " " + to_string(b);
        c.expect(zero_matrix(model.del_matrix({p + 1, q}) * model.del_matrix(b)), where + " del^2");
        c.expect(zero_matrix(model.delbar_matrix({p, q + 1}) * model.delbar_matrix(b)), where + " delbar^2");
        const Matrix x = model.del_matrix({p, q + 1}) * model.delbar_matrix(b);
        const Matrix y = model.delbar_matrix({p + 1, q}) * model.del_matrix(b);
        bool anti = x.rows() == y.rows() && x.cols() == y.cols();
        for (std::size_t r = 0; anti && r < x.rows(); ++r) {
          for (std::size_t k = 0; k < x.cols(); ++k) anti = anti && (x(r, k) + y(r, k)).is_zero();
        }
        c.expect(anti, where + " del delbar + delbar del");
      }
    }
    c.expect(oracle::Reference(spec).d_squared_zero(), spec.name + " oracle d^2");
  }
  return c.ok();
}

bool criterion_2(Check& c) {
  const Model m = iwasawa();
  const SpectralSequence ss(m);
  const oracle::Reference ref(m.spec());
  c.expect(ss.dim(1, 1, 0) == 3, "dim H^{1,0} = 3");
  c.expect(ss.dim(1, 0, 1) == 2, "dim H^{0,1} = 2");
  const Quotient h01 = ss.dolbeault(0, 1);
  std::vector<Vector> quoted = {m.to_vector(mono(m, {"phibar1"}), {0, 1}), m.to_vector(mono(m, {"phibar2"}), {0, 1})};
  Subspace classes = Subspace::span(quoted, m.dim({0, 1}));
  std::vector<Vector> reps;
  for (const auto& f : ss.page(1, 0, 1)->representatives) reps.push_back(m.to_vector(f, {0, 1}));
  // Same span modulo im delbar (which is zero in degree (0,1) but is included anyway).
  auto with_boundaries = [&](std::vector<Vector> v) {
    for (const auto& b : h01.denominator().basis_vectors()) v.push_back(b);
    return Subspace::span(v, m.dim({0, 1}));
  };
  c.expect(with_boundaries(reps) == with_boundaries(quoted), "H^{0,1} spanned by [phibar1], [phibar2]");
  for (const auto& v : quoted) c.expect(!h01.is_trivial_class(v), "quoted class nonzero");
  c.expect(classes.dim() == 2, "quoted classes independent");
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 3; ++q) c.expect(ss.dim(1, p, q) == ref.hodge(p, q), "Hodge " + cell(1, p, q));
  }
  return c.ok();
}

bool criterion_3(Check& c) {
  const Model m = iwasawa();
  const SpectralSequence ss(m);
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 3; ++q) {
      if (ss.dim(1, p, q) == 0 || ss.dim(1, p + 1, q) == 0) continue;
      const bool nonzero = !zero_matrix(ss.differential(1, p, q));
      c.expect(nonzero == (p == 1), "d_1 " + cell(1, p, q) + (nonzero ? " nonzero" : " zero"));
    }
  }
  for (int r = 2; r <= ss.stabilization_index() + 1; ++r) {
    for (int p = 0; p <= 3; ++p) {
      for (int q = 0; q <= 3; ++q) c.expect(zero_matrix(ss.differential(r, p, q)), "d_r = 0 at " + cell(r, p, q));
    }
  }
  return c.ok();
}

bool criterion_4(Check& c) {
  const Model m = iwasawa();
  const MCState par = parallelisable_mc(m, 4);
  c.expect(par.solved(), "parallelisable solved through 4");
  c.expect(mc_residual(m, par).is_zero(), "residual is zero");
  for (const auto& [idx, v] : par.phi.terms()) c.expect(total_degree(idx) <= 2, "phi_k = 0 for k >= 3");

  // Residual recomputed term by term from delbar and the bracket.
  for (int k = 1; k <= 4; ++k) {
    for (const MultiIndex& idx : multi_indices(static_cast<int>(par.directions.size()), k)) {
      VectorForm lhs = m.zero_vector();
      if (const VectorForm* v = par.phi.find(idx)) lhs = m.delbar(*v);
      VectorForm rhs = m.zero_vector();
      for (const auto& [i, a] : par.phi.terms()) {
        for (const auto& [j, b] : par.phi.terms()) {
          MultiIndex sum = i;
          for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += j[t];
          if (sum == idx) rhs += m.bracket(a, b);
        }
      }
      c.expect(lhs * Scalar(2) == rhs, "Maurer-Cartan at " + to_string(idx));
    }
  }

  const MCState kur = kuranishi(m, 4);
  c.expect(kur.solved(), "kuranishi solved through 4");
  for (int n = 1; n <= 4; ++n) {
    for (const MCState* state : {&kur, &par}) {
      for (const auto& cls : obstruction_class(m, *state, n)) {
        c.expect(cls.is_zero(), state->method + " obstruction at order " + std::to_string(n + 1));
      }
    }
  }
  return c.ok();
}

bool criterion_5(Check& c) {
  const Model m = nakamura(1);
  const SpectralSequence ss(m);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{3, 1}, {2, 2}, {1, 3}}) {
    c.expect(zero_matrix(ss.differential(1, p, q)), "d_1 = 0 at " + cell(1, p, q));
  }

  // The image of [phi^{1 1~}] under d_1, in the engine's class bases.
  const auto src = ss.page(1, 1, 1);
  const auto dst = ss.page(1, 2, 1);
  const Form alpha = mono(m, {"phi1", "phit1"});
  const Form expected = mono(m, {"phi1", "phi3", "phit1"}, Scalar(0, 4));
  Matrix basis(m.dim({1, 1}), src->dim);
  for (std::size_t k = 0; k < src->dim; ++k) {
    const Vector v = m.to_vector(src->representatives[k], {1, 1});
    for (std::size_t r = 0; r < v.size(); ++r) basis(r, k) = v[r];
  }
  const auto coords = solve_particular(basis, m.to_vector(alpha, {1, 1}));
  c.expect(coords.has_value(), "phi^{1 1~} is one of the E_1^{1,1} classes");
  if (coords) {
    const Vector image = src->d_matrix.apply(*coords);
    Form result;
    for (std::size_t k = 0; k < image.size(); ++k) result += dst->representatives[k] * image[k];
    const Quotient h21 = ss.dolbeault(2, 1);
    const Vector diff = m.to_vector(result - expected, {2, 1});
    c.expect(h21.is_trivial_class(diff), "d_1[phi^{1 1~}] = [4i phi^{13 1~}]");
    c.expect(!h21.is_trivial_class(m.to_vector(expected, {2, 1})), "[4i phi^{13 1~}] != 0");
  }
  // Independent: del of phi^{1 1~} straight from the structure equations.
  const oracle::Reference ref(m.spec());
  const oracle::Poly d = ref.d({0, 3});
  c.expect(d.size() == 1 && d.begin()->first == oracle::Mono{0, 2, 3} && d.begin()->second == Scalar(0, 4),
           "oracle: d phi^{1 1~} = 4i phi^{13 1~}");

  for (int r = 2; r <= ss.stabilization_index() + 1; ++r) {
    for (int p = 0; p <= 4; ++p) c.expect(zero_matrix(ss.differential(r, p, 4 - p)), "d_r = 0 at " + cell(r, p, 4 - p));
  }
  return c.ok();
}

bool criterion_6(Check& c) {
  const Model m = nakamura(1);
  const SpectralSequence ss(m);
  const std::map<Bidegree, std::vector<std::vector<std::string>>> quoted = {
      {{2, 2},
       {{"phi1", "phi2", "phit1", "phit2"},
        {"phi1", "phi3", "phit1", "phit3"},
        {"phi1", "phi3", "phit2", "phit3"},
        {"phi2", "phi3", "phit1", "phit3"},
        {"phi2", "phi3", "phit2", "phit3"}}},
      {{3, 1}, {{"phi1", "phi2", "phi3", "phit3"}}},
      {{2, 3}, {{"phi1", "phi2", "phit1", "phit2", "phit3"}}},
      {{0, 1}, {{"phit3"}}},
      {{1, 0}, {{"phi3"}}},
  };
  for (const auto& [b, gens] : quoted) {
    c.expect(ss.dim(1, b.p, b.q) == gens.size(), "dim E_1^{" + to_string(b) + "}");
    const Quotient h = ss.dolbeault(b.p, b.q);
    std::vector<Vector> quoted_vecs = h.denominator().basis_vectors();
    std::vector<Vector> rep_vecs = quoted_vecs;
    for (const auto& g : gens) {
      const Vector v = m.to_vector(mono(m, g), b);
      c.expect(h.numerator().contains(v), "generator is delbar-closed in " + to_string(b));
      quoted_vecs.push_back(v);
    }
    for (const auto& f : ss.page(1, b.p, b.q)->representatives) rep_vecs.push_back(m.to_vector(f, b));
    const Subspace a = Subspace::span(quoted_vecs, m.dim(b));
    c.expect(a == Subspace::span(rep_vecs, m.dim(b)), "quoted generators span E_1^{" + to_string(b) + "}");
    c.expect(a.dim() == h.denominator().dim() + gens.size(), "quoted generators independent");
  }
  return c.ok();
}

bool criterion_7(Check& c) {
  const Model m = nakamura(1);
  const SpectralSequence ss(m);
  const ContractionMap map = mu(m, 3, 1);
  const Bidegree b{2, 2};
  const Quotient h22 = ss.dolbeault(2, 2);

  // Kernel classes transported to H^{2,2} through contraction with Omega.
  const Form omega = omega_form(m);
  std::vector<Vector> kernel_vecs = h22.denominator().basis_vectors();
  for (const auto& v : map.kernel.basis_vectors()) {
    VectorForm sigma = m.zero_vector();
    for (std::size_t k = 0; k < v.size(); ++k) sigma += map.domain_classes[k] * v[k];
    kernel_vecs.push_back(m.to_vector(m.contract(sigma, omega), b));
  }
  std::vector<Vector> quoted = h22.denominator().basis_vectors();
  for (const auto& g : std::vector<std::vector<std::string>>{{"phi1", "phi3", "phit1", "phit3"},
                                                             {"phi1", "phi3", "phit2", "phit3"},
                                                             {"phi2", "phi3", "phit1", "phit3"},
                                                             {"phi2", "phi3", "phit2", "phit3"}}) {
    quoted.push_back(m.to_vector(mono(m, g), b));
  }
  c.expect(map.kernel.dim() == 4, "dim ker mu_{3,1} = 4");
  c.expect(Subspace::span(kernel_vecs, m.dim(b)) == Subspace::span(quoted, m.dim(b)),
           "ker mu_{3,1} is spanned by the four quoted classes");

  // Independent: solve i_sigma Omega = phi^{12 1~2~} by search, then contract into phi^{123 3~}.
  const oracle::Reference ref(m.spec());
  const oracle::Mono top{0, 1, 2};
  const oracle::Mono target{0, 1, 3, 4};
  oracle::Poly omega_poly;
  omega_poly[top] = Scalar(1);
  std::optional<std::pair<oracle::Mono, int>> sigma;
  for (const oracle::Mono& coeff : std::vector<oracle::Mono>{{3, 4}, {3, 5}, {4, 5}}) {
    for (int a = 0; a < 3; ++a) {
      const oracle::Poly img = contract_poly(coeff, a, omega_poly);
      if (img.size() == 1 && img.begin()->first == target) sigma = {{coeff, a}};
    }
  }
  c.expect(sigma.has_value(), "oracle finds sigma with i_sigma Omega = phi^{12 1~2~}");
  if (sigma) {
    const auto& [coeff, a] = *sigma;
    oracle::Poly source;
    source[{0, 1, 2, 5}] = Scalar(1);
    oracle::Poly out = contract_poly(coeff, a, source);
    const bool multiple = out.size() == 1 && out.begin()->first == oracle::Mono{0, 1, 3, 4, 5};
    c.expect(multiple, "i_sigma phi^{123 3~} is a nonzero multiple of phi^{12 1~2~3~}");
    // Nonzero class: nothing in A^{2,2} hits A^{2,3} under delbar.
    c.expect(ref.map_rank(ref.basis(2, 2), ref.basis(2, 3), 1) == 0, "H^{2,3} has no delbar-boundaries");
  }
  // The engine agrees on the complementary class.
  c.expect(!in_ker_mu(m, 3, 1, omega_inverse(m, mono(m, {"phi1", "phi2", "phit1", "phit2"}))),
           "engine: [phi^{12 1~2~}] is outside ker mu_{3,1}");
  return c.ok();
}

bool criterion_8(Check& c) {
  const Model m = nakamura(1);
  const KodairaReport report = check_refined_kodaira(m, 3, 1);
  for (const auto& h : report.hypotheses) c.expect(h.holds, h.name);
  c.expect(report.all_hold, "all hypotheses hold");

  const MCState full = kuranishi(m, 2);
  c.expect(full.solved_through() >= 1, "order 1 solved");
  bool any_nonzero = false;
  // delbar vanishes on V^{0,1}, so a class is zero only if its representative is.
  c.expect(zero_matrix(m.delbar_vector_matrix(1)), "no delbar-boundaries in V^{0,2}");

  const auto check_state = [&](const MCState& state, const std::string& label) {
    const auto classes = obstruction_class(m, state, 1);
    const auto& eta = state.directions;
    for (const auto& cls : classes) {
      // Brute-force [phi_1, phi_1] coefficient at t^index.
      VectorForm expect = m.zero_vector();
      std::vector<std::size_t> hit;
      for (std::size_t k = 0; k < cls.index.size(); ++k) {
        for (int e = 0; e < cls.index[k]; ++e) hit.push_back(k);
      }
      if (hit.size() == 2) {
        expect = hit[0] == hit[1] ? m.bracket(eta[hit[0]], eta[hit[0]])
                                  : m.bracket(eta[hit[0]], eta[hit[1]]) + m.bracket(eta[hit[1]], eta[hit[0]]);
      }
      c.expect(cls.representative == expect, label + ": obstruction matches bracket expansion at " + to_string(cls.index));
      c.expect(in_ker_mu(m, 3, 1, cls.representative), label + ": class in ker mu_{3,1}");
      any_nonzero = any_nonzero || !cls.representative.is_zero();
    }
  };
  check_state(full, "all directions");
  for (std::size_t d = 0; d < full.directions.size(); ++d) check_state(kuranishi(m, 1, {d}), "direction " + std::to_string(d));
  c.expect(obstruction_in_ker_mu(m, full, 3, 1, 1), "obstruction_in_ker_mu");
  c.expect(any_nonzero, "some order-2 obstruction is nonzero");
  return c.ok();
}

bool criterion_9(Check& c) {
  const Model m = nakamura(1);
  const CYReport report = check_cy(m);
  c.expect(report.verdict == CYVerdict::Inconclusive, "verdict INCONCLUSIVE");
  bool d21 = true;
  bool d12 = true;
  for (const auto& f : report.flags) {
    if (f.name == "d_1^{2,1} = 0") d21 = f.holds;
    if (f.name == "d_1^{1,2} = 0") d12 = f.holds;
  }
  c.expect(!(d21 && d12), "d_1^{2,1} = 0 and d_1^{1,2} = 0 not both satisfied");
  c.expect(!report.failing.empty(), "failing flags listed");
  // Independent: delbar vanishes on every bidegree, so d_1 is del on forms.
  const oracle::Reference ref(m.spec());
  bool delbar_zero = true;
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q < 3; ++q) delbar_zero = delbar_zero && ref.map_rank(ref.basis(p, q), ref.basis(p, q + 1), 1) == 0;
  }
  c.expect(delbar_zero, "oracle: delbar = 0");
  const bool oracle_d12 = ref.map_rank(ref.basis(1, 2), ref.basis(2, 2), 0) == 0;
  const bool oracle_d21 = ref.map_rank(ref.basis(2, 1), ref.basis(3, 1), 0) == 0;
  c.expect(oracle_d12 == d12 && oracle_d21 == d21, "flags agree with the oracle");
  return c.ok();
}

bool criterion_10(Check& c) {
  std::vector<ModelSpec> specs = {iwasawa_spec(), nakamura_spec(1)};
  for (auto& s : random_specs(20, 2024)) specs.push_back(std::move(s));
  for (const auto& spec : specs) {
    const Model m = build_model(spec);
    const SpectralSequence ss(m);
    const oracle::Reference ref(spec);
    for (int p = 0; p <= m.n(); ++p) {
      for (int q = 0; q <= m.m(); ++q) {
        c.expect(ss.dim(1, p, q) == ref.hodge(p, q), spec.name + " Hodge " + cell(1, p, q));
        for (int r = 1; r <= 4; ++r) {
          c.expect(ss.dim(r, p, q) == ss.oracle_dim(r, p, q), spec.name + " " + cell(r, p, q));
        }
      }
    }
  }
  return c.ok();
}

bool criterion_11(Check& c) {
  for (const Model& m : {iwasawa(), nakamura(1)}) {
    const SpectralSequence ss(m);
    for (int p = 0; p <= m.n(); ++p) {
      for (int q = 0; q <= m.m(); ++q) {
        const DegenerationReport d = ss.degeneration(p, q);
        c.expect(d.differentials_vanish == d.lifts_exist && d.lifts_exist == d.filtration_identity,
                 m.name() + " degeneration " + to_string(Bidegree{p, q}));
        const FiltrationReport f = ss.filtration_condition(p, q);
        c.expect(f.differentials_vanish == f.filtration_identity, m.name() + " filtration " + to_string(Bidegree{p, q}));
      }
    }
  }
  return c.ok();
}

bool criterion_12(Check& c) {
  std::mt19937 rng(12);
  for (const Model& m : {iwasawa(), nakamura(1)}) {
    for (int t = 0; t < 10; ++t) {
      const VectorForm phi = testsupport::random_vector_form(rng, m, 1);
      const VectorForm psi = testsupport::random_vector_form(rng, m, 1);
      const VectorForm half = m.bracket(phi, phi) * Scalar(Rational(1, 2));
      const VectorForm br = m.bracket(phi, psi);
      bool conj_bar = true;
      bool conj = true;
      bool cartan = true;
      for (int p = 0; p <= m.n(); ++p) {
        for (int q = 0; q <= m.m(); ++q) {
          for (Monomial b : m.basis({p, q})) {
            const Form f = Form::monomial(b);
            conj_bar = conj_bar && m.exp_contract(-phi, m.delbar(m.exp_contract(phi, f))) == m.delbar(f) - m.lie01(phi, f);
            conj = conj && m.exp_contract(-phi, m.del(m.exp_contract(phi, f))) ==
                               m.del(f) - m.lie10(phi, f) - m.contract(half, f);
            cartan = cartan && m.lie10(phi, m.contract(psi, f)) - m.contract(psi, m.lie10(phi, f)) == m.contract(br, f);
          }
        }
      }
      const std::string label = m.name() + " sample " + std::to_string(t);
      c.expect(conj_bar, label + ": exp(-i_phi) delbar exp(i_phi)");
      c.expect(conj, label + ": exp(-i_phi) del exp(i_phi)");
      c.expect(cartan, label + ": Cartan identity");
    }
  }
  return c.ok();
}

bool criterion_13(Check& c) {
  std::vector<ModelSpec> specs = {iwasawa_spec(), nakamura_spec(1), abelian_spec(3)};
  for (auto& s : random_specs(20, 1313)) specs.push_back(std::move(s));
  std::size_t a1_zero = 0;
  std::size_t a2_zero = 0;
  for (const auto& spec : specs) {
    const Model m = build_model(spec);
    const SpectralSequence ss(m);
    const int n = m.n();
    const PopoviciMaps maps = ss.popovici();
    if (zero_matrix(maps.a1) && n >= 1) {
      ++a1_zero;
      c.expect(ss.degeneration(n - 1, 1).verdict, spec.name + ": A1 = 0 implies degeneration");
    }
    if (zero_matrix(maps.a2) && n >= 2) {
      ++a2_zero;
      c.expect(ss.filtration_condition(n - 2, 2).verdict, spec.name + ": A2 = 0 implies the filtration condition");
    }
  }
  c.expect(a1_zero > 0 && a2_zero > 0, "both implications exercised");
  return c.ok();
}

bool criterion_14(Check& c) {
  const Model m = iwasawa();
  const SpectralSequence ss(m);
  const Form alpha0 = mono(m, {"phi1", "phi2", "phi3"});
  const int order = 3;
  for (const MCState& state : {kuranishi(m, order), parallelisable_mc(m, order)}) {
    const ExtensionResult ext = extend_form(ss, alpha0, state, order);
    c.expect(ext.d_exp.is_zero() && ext.twisted.is_zero(), state.method + ": reported residuals vanish");
    const FormSeries& alpha = ext.alpha;
    const Form* constant = alpha.find(MultiIndex(state.phi.variables().size(), 0));
    c.expect(constant != nullptr && *constant == alpha0, state.method + ": alpha(0) = alpha0");

    // e^{i_phi} alpha as a truncated sum of iterated contractions.
    FormSeries term = alpha;
    FormSeries exp = alpha;
    for (int k = 1; k <= order; ++k) {
      term = contract_series(m, state.phi, term) * Scalar(Rational(1, k));
      exp += term;
    }
    c.expect(map_series(exp, [&](const Form& f) { return m.d(f); }).is_zero(),
             state.method + ": d(e^{i_phi} alpha) = 0 mod t^4");

    // (delbar + del i_phi - i_phi del + del) alpha, order by order.
    FormSeries twisted = map_series(alpha, [&](const Form& f) { return m.delbar(f) + m.del(f); });
    twisted += map_series(contract_series(m, state.phi, alpha), [&](const Form& f) { return m.del(f); });
    twisted -= contract_series(m, state.phi, map_series(alpha, [&](const Form& f) { return m.del(f); }));
    c.expect(twisted.is_zero(), state.method + ": (delbar_phi + del) alpha = 0 mod t^4");
  }
  return c.ok();
}

bool criterion_15(Check& c) {
  for (const ModelSpec& spec : {iwasawa_spec(), nakamura_spec(1)}) {
    const Model m = build_model(spec);
    const SpectralSequence ss(m);
    const oracle::Reference ref(spec);
    for (int k = 0; k <= m.n() + m.m(); ++k) {
      std::size_t sum = 0;
      for (int p = 0; p <= k; ++p) sum += ss.dim(ss.stabilization_index(), p, k - p);
      c.expect(sum == ss.de_rham(k), spec.name + " E_inf sum in degree " + std::to_string(k));
      c.expect(ss.de_rham(k) == ref.betti(k), spec.name + " Betti oracle in degree " + std::to_string(k));
    }
  }
  c.expect(de_rham(iwasawa(), 1) == 4, "Iwasawa b_1 = 4");
  return c.ok();
}

bool criterion_16(Check& c) {
  for (const std::string name : {"iwasawa", "nakamura"}) {
    const std::vector<std::string> args = {"report", "--manifold", name, "--format", "json"};
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "2", "8"}) {
      setenv("SPECTRA_DEF_THREADS", threads, 1);
      std::ostringstream out;
      std::ostringstream err;
      c.expect(cli::run(args, out, err) == 0, name + " report exit code");
      outputs.push_back(out.str());
    }
    unsetenv("SPECTRA_DEF_THREADS");
    for (const auto& o : outputs) c.expect(o == outputs.front() && !o.empty(), name + " identical bytes");
  }
  return c.ok();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool(Check&)>>> criteria = {
      {"structural validation of the built-ins", criterion_1},
      {"Iwasawa E_1 Hodge grid and H^{0,1} classes", criterion_2},
      {"Iwasawa differentials", criterion_3},
      {"Iwasawa deformations", criterion_4},
      {"Nakamura differentials", criterion_5},
      {"Nakamura E_1 generators", criterion_6},
      {"Nakamura ker mu_{3,1}", criterion_7},
      {"Nakamura refined Kodaira and obstructions", criterion_8},
      {"Nakamura Calabi-Yau criterion", criterion_9},
      {"page vs oracle dimensions", criterion_10},
      {"degeneration and filtration equivalences", criterion_11},
      {"operator identities", criterion_12},
      {"Popovici implications", criterion_13},
      {"form extension on Iwasawa", criterion_14},
      {"convergence bookkeeping", criterion_15},
      {"report determinism", criterion_16},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check check;
    bool ok = false;
    std::string detail;
    try {
      ok = criteria[k].second(check);
      detail = check.summary();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << " " << (k + 1 < 10 ? " " : "") << k + 1 << " " << criteria[k].first << " ["
              << detail << "]" << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
