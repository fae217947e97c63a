#include "spectradef/deformation.hpp"

#include <numeric>

#include "spectradef/error.hpp"
#include "spectradef/obstruction.hpp"

namespace spectradef {

int total_degree(const MultiIndex& index) { return std::accumulate(index.begin(), index.end(), 0); }

std::string to_string(const MultiIndex& index) {
  std::string out;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k != 0) out += ",";
    out += std::to_string(index[k]);
  }
  return out;
}

std::vector<MultiIndex> multi_indices(int vars, int degree) {
  std::vector<MultiIndex> out;
  if (vars <= 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  MultiIndex current(static_cast<std::size_t>(vars), 0);
  // Recursive fill: position k takes every value from the remaining budget down to 0.
  auto fill = [&](auto&& self, int k, int budget) -> void {
    if (k == vars - 1) {
      current[static_cast<std::size_t>(k)] = budget;
      out.push_back(current);
      return;
    }
    for (int v = budget; v >= 0; --v) {
      current[static_cast<std::size_t>(k)] = v;
      self(self, k + 1, budget - v);
    }
  };
  fill(fill, 0, degree);
  return out;
}

MultiIndex unit_index(int vars, int position) {
  MultiIndex out(static_cast<std::size_t>(vars), 0);
  out.at(static_cast<std::size_t>(position)) = 1;
  return out;
}

int MCState::solved_through() const {
  int k = 0;
  for (const auto& rec : records) {
    if (rec.status != OrderStatus::Solved || rec.order != k + 1) break;
    k = rec.order;
  }
  return k;
}

namespace {

std::vector<std::string> parameter_names(std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back("t" + std::to_string(k + 1));
  return out;
}

VectorSeries bracket_square(const Model& model, const VectorSeries& phi) {
  return convolve<VectorForm>(phi, phi, [&](const VectorForm& a, const VectorForm& b) { return model.bracket(a, b); });
}

// Terms of degree <= order, re-truncated at `order`.
template <class T>
Series<T> truncate(const Series<T>& s, int order) {
  Series<T> out(s.variables(), order);
  for (const auto& [idx, v] : s.terms()) out.add(idx, v);
  return out;
}

Subspace harmonic_space(const Model& model, int q) {
  const Matrix& out_map = model.delbar_vector_matrix(q);
  const std::size_t dim = model.vector_basis(q).size();
  const Subspace closed = out_map.rows() == 0 ? Subspace::full(dim) : kernel(out_map);
  const Subspace exact = q == 0 ? Subspace(dim) : image(model.delbar_vector_matrix(q - 1));
  return intersect(closed, exact.orthogonal_complement());
}

// Class data for a delbar-closed (0,2) vector form.
ObstructionClass classify(const Model& model, const Subspace& harmonic, const MultiIndex& index,
                          const VectorForm& rep) {
  const Vector v = model.to_vector(rep, 2);
  const Matrix& d2 = model.delbar_vector_matrix(2);
  if (d2.rows() != 0 && !is_zero(d2.apply(v))) {
    throw Error(ErrorCode::NotSolvable, "obstruction representative at " + to_string(index) + " is not delbar-closed");
  }
  ObstructionClass out;
  out.index = index;
  out.representative = rep;
  const Vector h = harmonic.project(v);
  out.harmonic = model.from_vector(h, 2);
  out.coordinates = harmonic.coordinates(h);
  return out;
}

Matrix column_block(const Matrix& m, std::size_t first, std::size_t count) {
  Matrix out(m.rows(), count);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < count; ++c) out(r, c) = m(r, first + c);
  }
  return out;
}

Matrix stack(const Matrix& top, const Matrix& bottom) {
  Matrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r) {
    for (std::size_t c = 0; c < top.cols(); ++c) out(r, c) = top(r, c);
  }
  for (std::size_t r = 0; r < bottom.rows(); ++r) {
    for (std::size_t c = 0; c < bottom.cols(); ++c) out(top.rows() + r, c) = bottom(r, c);
  }
  return out;
}

}  // namespace

std::vector<VectorForm> harmonic_vector_basis(const Model& model, int q) {
  std::vector<VectorForm> out;
  for (const auto& v : harmonic_space(model, q).basis_vectors()) out.push_back(model.from_vector(v, q));
  return out;
}

MCState kuranishi(const Model& model, int order, const std::vector<std::size_t>& direction_subset) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "order must be at least 1");
  const auto all = harmonic_vector_basis(model, 1);
  MCState state;
  state.method = "kuranishi";
  state.order = order;
  if (direction_subset.empty()) {
    state.directions = all;
  } else {
    for (auto k : direction_subset) {
      if (k >= all.size()) throw Error(ErrorCode::InvalidArgument, "direction index out of range");
      state.directions.push_back(all[k]);
    }
  }
  const int vars = static_cast<int>(state.directions.size());
  state.phi = VectorSeries(parameter_names(state.directions.size()), order);
  for (int k = 0; k < vars; ++k) state.phi.add(unit_index(vars, k), state.directions[static_cast<std::size_t>(k)]);
  state.records.push_back({1, OrderStatus::Solved, {}});

  const Matrix& d1 = model.delbar_vector_matrix(1);
  const Subspace harmonic2 = harmonic_space(model, 2);
  for (int k = 2; k <= order; ++k) {
    const VectorSeries rhs = bracket_square(model, state.phi).homogeneous(k);
    OrderRecord rec{k, OrderStatus::Solved, {}};
    std::vector<std::pair<MultiIndex, VectorForm>> solved;
    for (const auto& [idx, r] : rhs.terms()) {
      ObstructionClass cls = classify(model, harmonic2, idx, r);
      if (!cls.is_zero()) {
        rec.status = OrderStatus::Obstructed;
        rec.obstructions.push_back(std::move(cls));
        continue;
      }
      const Vector x = solve_min_norm(d1, model.to_vector(r, 2));
      solved.emplace_back(idx, model.from_vector(x, 1) * Scalar(Rational(1, 2)));
    }
    state.records.push_back(rec);
    if (rec.status == OrderStatus::Obstructed) break;
    for (const auto& [idx, v] : solved) state.phi.add(idx, v);
  }
  return state;
}

VectorSeries mc_residual(const Model& model, const MCState& state) {
  VectorSeries out(state.phi.variables(), state.phi.order());
  for (const auto& [idx, v] : state.phi.terms()) out.add(idx, model.delbar(v));
  out -= bracket_square(model, state.phi) * Scalar(Rational(1, 2));
  return out;
}

std::vector<ObstructionClass> obstruction_class(const Model& model, const MCState& state, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "order must be at least 1");
  if (state.solved_through() < n) {
    throw Error(ErrorCode::HypothesisFailed, "state is not solved through order " + std::to_string(n));
  }
  const VectorSeries phi = truncate(state.phi, n + 1);
  const VectorSeries sum = bracket_square(model, phi).homogeneous(n + 1);
  const Subspace harmonic2 = harmonic_space(model, 2);
  std::vector<ObstructionClass> out;
  for (const auto& [idx, r] : sum.terms()) out.push_back(classify(model, harmonic2, idx, r));
  return out;
}

bool obstruction_in_ker_mu(const Model& model, const MCState& state, int p, int q, int n) {
  if (!mu_available(model)) {
    throw Error(ErrorCode::NoDomainPath, "frame is not holomorphic and the canonical bundle is not trivial");
  }
  for (const auto& cls : obstruction_class(model, state, n)) {
    if (!in_ker_mu(model, p, q, cls.representative)) return false;
  }
  return true;
}

MCState parallelisable_mc(const Model& model, int order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "order must be at least 1");
  if (!model.frame_flat()) throw Error(ErrorCode::HypothesisFailed, "the frame is not holomorphic");

  const Matrix& dbar01 = model.delbar_matrix({0, 1});
  const Matrix& del01 = model.del_matrix({0, 1});
  for (const auto& v : kernel(dbar01).basis_vectors()) {
    if (!is_zero(del01.apply(v))) {
      throw Error(ErrorCode::HypothesisFailed, "a holomorphic (0,1)-form is not d-closed");
    }
  }

  MCState state;
  state.method = "parallelisable";
  state.order = order;

  // H^{0,2}_d = (ker d cap A^{0,2}) / (d A^{0,1} cap A^{0,2}).
  const Subspace closed02 = intersect(kernel(model.del_matrix({0, 2})), kernel(model.delbar_matrix({0, 2})));
  const Subspace exact02 = image_of(dbar01, kernel(del01));
  const std::size_t h02d = quotient_dim(exact02, closed02);

  const int n = model.n();
  bool two_step = true;
  for (int a = 0; a < n && two_step; ++a) {
    for (int b = 0; b < n && two_step; ++b) {
      for (int c = 0; c < n && two_step; ++c) {
        for (int s = 0; s < n; ++s) {
          Scalar v;
          for (int p = 0; p < n; ++p) v += model.bracket_constant(a, b, p) * model.bracket_constant(p, c, s);
          if (!v.is_zero()) {
            two_step = false;
            break;
          }
        }
      }
    }
  }

  const Subspace h01 = intersect(kernel(dbar01), image(model.delbar_matrix({0, 0})).orthogonal_complement());
  bool wedge_trivial = true;
  const auto psis = h01.basis_vectors();
  for (std::size_t i = 0; i < psis.size() && wedge_trivial; ++i) {
    for (std::size_t k = i + 1; k < psis.size(); ++k) {
      const Form w = model.wedge(model.from_vector(psis[i], {0, 1}), model.from_vector(psis[k], {0, 1}));
      if (!exact02.contains(model.to_vector(w, {0, 2}))) {
        wedge_trivial = false;
        break;
      }
    }
  }

  bool abelian_frame = true;
  for (int a = 0; a < n && abelian_frame; ++a) {
    for (int b = 0; b < n && abelian_frame; ++b) {
      for (int c = 0; c < n; ++c) {
        if (!model.bracket_constant(a, b, c).is_zero()) {
          abelian_frame = false;
          break;
        }
      }
    }
  }

  bool shortcut = false;
  if (abelian_frame) {
    state.notes.push_back("all frame brackets vanish");
    shortcut = true;
  } else if (h02d == 0) {
    state.notes.push_back("H^{0,2}_d = 0");
    shortcut = two_step && wedge_trivial;
  } else if (wedge_trivial && two_step) {
    state.notes.push_back("[H^{0,1}, H^{0,1}] is trivial in H^{0,2}_d");
    shortcut = true;
  } else {
    std::string why = "H^{0,2}_d has dimension " + std::to_string(h02d);
    if (!wedge_trivial) why += " and [H^{0,1}, H^{0,1}] is nontrivial in it";
    if (!two_step) why += " and the frame brackets are not two-step nilpotent";
    throw Error(ErrorCode::HypothesisFailed, why);
  }
  if (shortcut && !abelian_frame) state.notes.push_back("[[H^0(T), H^0(T)], H^0(T)] = 0, so phi_k = 0 for k >= 3");

  state.directions = harmonic_vector_basis(model, 1);
  const int vars = static_cast<int>(state.directions.size());
  state.phi = VectorSeries(parameter_names(state.directions.size()), order);
  for (int k = 0; k < vars; ++k) state.phi.add(unit_index(vars, k), state.directions[static_cast<std::size_t>(k)]);
  state.records.push_back({1, OrderStatus::Solved, {}});

  // beta with delbar beta = c and del beta = 0.
  const Matrix system = stack(dbar01, del01);
  const std::size_t dim11 = del01.rows();
  for (int k = 2; k <= order; ++k) {
    const VectorSeries rhs = bracket_square(model, state.phi).homogeneous(k);
    if (shortcut && (k >= 3 || abelian_frame)) {
      if (!rhs.is_zero()) throw Error(ErrorCode::NotSolvable, "triple-bracket shortcut fails at order " + std::to_string(k));
      state.records.push_back({k, OrderStatus::Solved, {}});
      continue;
    }
    for (const auto& [idx, r] : rhs.terms()) {
      VectorForm next = model.zero_vector();
      for (int p = 0; p < n; ++p) {
        const Form& c = r.component(static_cast<std::size_t>(p));
        if (c.is_zero()) continue;
        Vector b = model.to_vector(c, {0, 2});
        b.resize(b.size() + dim11);
        try {
          const Vector beta = solve_min_norm(system, b);
          next.component(static_cast<std::size_t>(p)) = model.from_vector(beta, {0, 1}) * Scalar(Rational(1, 2));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoSolution) throw;
          throw Error(ErrorCode::NotSolvable, "no del-closed beta_" + std::to_string(p + 1) + " at order " +
                                                  std::to_string(k) + ", index " + to_string(idx));
        }
      }
      state.phi.add(idx, next);
    }
    state.records.push_back({k, OrderStatus::Solved, {}});
  }
  return state;
}

// ---------------------------------------------------------------------------

ExtensionResult extend_form(const SpectralSequence& ss, const Form& alpha0, const MCState& state, int order) {
  const Model& model = ss.model();
  const auto bideg = alpha0.bidegree();
  if (!bideg) throw Error(ErrorCode::HypothesisFailed, "alpha0 must be a nonzero form of a single bidegree");
  const int p = bideg->p;
  const int q = bideg->q;
  if (!model.delbar(alpha0).is_zero()) throw Error(ErrorCode::HypothesisFailed, "alpha0 is not delbar-closed");
  if (state.solved_through() < order) {
    throw Error(ErrorCode::HypothesisFailed, "state is not solved through order " + std::to_string(order));
  }
  if (!ss.degeneration(p, q).verdict) {
    throw Error(ErrorCode::HypothesisFailed, "the spectral sequence does not degenerate at E_1 in bidegree " +
                                                 to_string(*bideg));
  }
  if (p >= 1 && !ss.filtration_condition(p - 1, q + 1).differentials_vanish) {
    throw Error(ErrorCode::HypothesisFailed, "some d_r^{" + std::to_string(p - 1) + "-i," + std::to_string(q + 1) +
                                                 "+i} with 0 <= i < r is nonzero");
  }

  const int k = p + q;
  const Matrix& d = ss.total_d(k);
  const std::size_t fp = ss.total_offset(k, p);
  const std::size_t fp1 = ss.total_offset(k, p + 1);
  const std::size_t total = ss.total_dim(k);
  const Matrix d_fp = column_block(d, fp, total - fp);
  const Matrix d_fp1 = column_block(d, fp1, total - fp1);
  const std::size_t low_rows = ss.total_offset(k + 1, p);  // holomorphic degree <= p-1

  const VectorSeries phi = truncate(state.phi, order);
  const int vars = phi.vars();
  ExtensionResult out;
  out.alpha = FormSeries(phi.variables(), order);

  auto embed = [&](const Vector& x, std::size_t offset) {
    Vector v(total);
    for (std::size_t c = 0; c < x.size(); ++c) v[offset + c] = x[c];
    return v;
  };

  // Order 0: alpha0 + y with y in F^{p+1} and d(alpha0 + y) = 0.
  {
    const Vector v0 = ss.to_total(alpha0, k);
    Vector rhs = d.apply(v0);
    for (auto& s : rhs) s = -s;
    Vector y;
    try {
      y = solve_min_norm(d_fp1, rhs);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSolution) throw;
      throw Error(ErrorCode::NotSolvable, "alpha0 has no d-closed lift in F^" + std::to_string(p));
    }
    Vector x = embed(y, fp1);
    for (std::size_t c = 0; c < total; ++c) x[c] += v0[c];
    out.alpha.add(MultiIndex(static_cast<std::size_t>(vars), 0), ss.from_total(x, k));
  }

  auto contract_op = [&](const VectorForm& v, const Form& f) { return model.contract(v, f); };
  // (e^{i_phi} - 1) alpha
  auto exp_minus_one = [&](const FormSeries& alpha) {
    FormSeries sum(alpha.variables(), order);
    FormSeries term = alpha;
    for (int j = 1; j <= order; ++j) {
      term = convolve<Form>(phi, term, contract_op) * Scalar(Rational(1, j));
      if (term.is_zero()) break;
      sum += term;
    }
    return sum;
  };

  for (int m = 1; m <= order; ++m) {
    const FormSeries e = exp_minus_one(out.alpha).homogeneous(m);
    for (const auto& [idx, f] : e.terms()) {
      Vector rhs = ss.to_total(model.d(f), k + 1);
      for (std::size_t row = 0; row < low_rows; ++row) {
        if (!rhs[row].is_zero()) {
          throw Error(ErrorCode::NotSolvable, "order " + std::to_string(m) + ", index " + to_string(idx) +
                                                  ": d((e^{i_phi}-1)alpha) has holomorphic degree below " +
                                                  std::to_string(p));
        }
      }
      for (auto& s : rhs) s = -s;
      try {
        const Vector x = solve_min_norm(d_fp, rhs);
        out.alpha.add(idx, ss.from_total(embed(x, fp), k));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NoSolution) throw;
        throw Error(ErrorCode::NotSolvable, "order " + std::to_string(m) + ", index " + to_string(idx) +
                                                ": d((e^{i_phi}-1)alpha) is not in dF^" + std::to_string(p));
      }
    }
  }

  // Verification of both formulations.
  out.d_exp = FormSeries(phi.variables(), order);
  const FormSeries full = out.alpha + exp_minus_one(out.alpha);
  for (const auto& [idx, f] : full.terms()) out.d_exp.add(idx, model.d(f));
  out.twisted = FormSeries(phi.variables(), order);
  for (const auto& [idx, f] : out.alpha.terms()) out.twisted.add(idx, model.d(f));
  out.twisted += convolve<Form>(phi, out.alpha, [&](const VectorForm& v, const Form& f) {
    return model.del(model.contract(v, f)) - model.contract(v, model.del(f));
  });
  if (!out.d_exp.is_zero() || !out.twisted.is_zero()) {
    throw Error(ErrorCode::NotSolvable, "extended form fails the defining equation");
  }
  return out;
}

ExtensionResult extend_form(const Model& model, const Form& alpha0, const MCState& state, int order) {
  return extend_form(SpectralSequence(model), alpha0, state, order);
}

}  // namespace spectradef
