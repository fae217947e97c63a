#include "spectradef/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "spectradef/error.hpp"

namespace spectradef {

namespace {

constexpr int kMaxPerSide = 8;
constexpr int kMaxGenerators = 14;

Form wedge_forms(const Form& f, const Form& g) {
  Form out;
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      if (auto prod = multiply(a, b)) out.add(prod->second, ca * cb * Scalar(prod->first));
    }
  }
  return out;
}

// Formal conjugate: swaps holomorphic and antiholomorphic generators of the
// same index and conjugates coefficients.
Form conjugate(const Form& f) {
  Form out;
  for (const auto& [m, c] : f.terms()) {
    int sign = 1;
    Monomial acc{};
    auto push = [&](Monomial g) {
      auto prod = multiply(acc, g);
      sign *= prod->first;
      acc = prod->second;
    };
    for (int i : m.holo_indices()) push(Monomial::anti(i));
    for (int i : m.anti_indices()) push(Monomial::holo(i));
    out.add(acc, c.conj() * Scalar(sign));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// build

Model build_model(const ModelSpec& spec) {
  Model model;
  model.spec_ = spec;
  const int n = static_cast<int>(spec.holo_generators.size());
  const int m = static_cast<int>(spec.antiholo_generators.size());
  if (n > kMaxPerSide || m > kMaxPerSide || n + m > kMaxGenerators) {
    throw Error(ErrorCode::InvalidSpec, "too many generators (at most 8 per side, 14 in total)");
  }
  model.n_ = n;
  model.m_ = m;

  std::map<std::string, Monomial> by_name;
  for (int a = 0; a < n + m; ++a) {
    const std::string& name = a < n ? spec.holo_generators[a] : spec.antiholo_generators[a - n];
    if (name.empty()) throw Error(ErrorCode::InvalidSpec, "empty generator name");
    if (!by_name.emplace(name, a < n ? Monomial::holo(a) : Monomial::anti(a - n)).second) {
      throw Error(ErrorCode::InvalidSpec, "duplicate generator name '" + name + "'");
    }
    model.names_.push_back(name);
  }

  // Structure equations on generators, indexed like names_.
  std::vector<Form> dgen(static_cast<std::size_t>(n + m));
  for (const auto& [gen, terms] : spec.d_rules) {
    auto it = by_name.find(gen);
    if (it == by_name.end()) throw Error(ErrorCode::InvalidSpec, "rule for undeclared generator '" + gen + "'");
    const Monomial g = it->second;
    const std::size_t slot = g.p() == 1 ? static_cast<std::size_t>(g.holo_indices()[0])
                                        : static_cast<std::size_t>(n + g.anti_indices()[0]);
    for (const auto& term : terms) {
      if (term.monomial.size() != 2) {
        throw Error(ErrorCode::InvalidSpec, "d(" + gen + ") has a term that is not of degree 2");
      }
      dgen[slot].add(model.monomial_from_names(term.monomial), term.coeff);
    }
  }
  for (int a = 0; a < n + m; ++a) {
    const Form& rule = dgen[static_cast<std::size_t>(a)];
    const Bidegree forbidden = a < n ? Bidegree{0, 2} : Bidegree{2, 0};
    if (!rule.component(forbidden).is_zero()) {
      throw Error(ErrorCode::IntegrabilityViolation,
                  "d(" + model.names_[a] + ") has a (" + to_string(forbidden) + ") part");
    }
  }

  // d on every free monomial: d(g ^ rest) = dg ^ rest - g ^ d(rest), with g
  // the lowest generator so that g ^ rest needs no reordering.
  const std::size_t total = std::size_t{1} << (n + m);
  model.del_gen_.assign(total, Form());
  model.delbar_gen_.assign(total, Form());
  for (std::size_t c = 1; c < total; ++c) {
    const int low = std::countr_zero(static_cast<std::uint32_t>(c));
    const std::size_t rest = c & (c - 1);
    const Form g = Form::monomial(model.expand(std::size_t{1} << low));
    const Form r = Form::monomial(model.expand(rest));
    const Form& dg = dgen[static_cast<std::size_t>(low)];
    model.del_gen_[c] = wedge_forms(dg.component(low < n ? Bidegree{2, 0} : Bidegree{1, 1}), r) -
                        wedge_forms(g, model.del_gen_[rest]);
    model.delbar_gen_[c] = wedge_forms(dg.component(low < n ? Bidegree{1, 1} : Bidegree{0, 2}), r) -
                           wedge_forms(g, model.delbar_gen_[rest]);
  }
  for (int a = 0; a < n + m; ++a) {
    const Form g = Form::monomial(model.expand(std::size_t{1} << a));
    const Form dd = model.d(model.d(g));
    const Form dbdb = model.delbar_free(model.delbar_free(g));
    const Form ddb = model.del_free(model.delbar_free(g)) + model.delbar_free(model.del_free(g));
    if (!dd.is_zero() || !dbdb.is_zero() || !ddb.is_zero()) {
      throw Error(ErrorCode::NotClosed, "d^2 does not vanish on " + model.names_[a]);
    }
  }

  // Admissible bases.
  model.position_.assign(total, -1);
  if (spec.admissible_basis) {
    for (const auto& [b, lists] : *spec.admissible_basis) {
      if (!model.in_range(b)) throw Error(ErrorCode::InvalidSpec, "basis bidegree (" + to_string(b) + ") out of range");
      auto& out = model.bases_[b];
      for (const auto& names : lists) {
        const Monomial mono = model.monomial_from_names(names);
        if (mono.bidegree() != b) {
          throw Error(ErrorCode::InvalidSpec,
                      "basis monomial " + model.monomial_label(mono) + " listed under (" + to_string(b) + ")");
        }
        if (std::find(out.begin(), out.end(), mono) != out.end()) {
          throw Error(ErrorCode::InvalidSpec, "basis monomial " + model.monomial_label(mono) + " listed twice");
        }
        out.push_back(mono);
      }
    }
  } else {
    for (std::size_t c = 0; c < total; ++c) {
      const Monomial mono = model.expand(c);
      model.bases_[mono.bidegree()].push_back(mono);
    }
  }
  for (auto& [b, list] : model.bases_) {
    std::sort(list.begin(), list.end(), MonomialOrder{});
    for (std::size_t k = 0; k < list.size(); ++k) model.position_[model.compress(list[k])] = static_cast<int>(k);
  }
  for (const auto& [b, list] : model.bases_) {
    for (Monomial mono : list) {
      const std::size_t c = model.compress(mono);
      if (!model.admissible(model.del_gen_[c]) || !model.admissible(model.delbar_gen_[c])) {
        throw Error(ErrorCode::BasisNotClosed, "d of basis monomial " + model.monomial_label(mono) + " leaves the basis");
      }
    }
  }

  // Operator matrices for source bidegrees p in [-2, n+1], q in [-2, m+1];
  // all other sources and targets are zero-dimensional.
  for (int p = -2; p <= n + 1; ++p) {
    for (int q = -2; q <= m + 1; ++q) {
      const Bidegree b{p, q};
      const auto& src = model.basis(b);
      const Bidegree bd{p + 1, q};
      const Bidegree bb{p, q + 1};
      Matrix del(model.dim(bd), src.size());
      Matrix delbar(model.dim(bb), src.size());
      for (std::size_t j = 0; j < src.size(); ++j) {
        const std::size_t c = model.compress(src[j]);
        for (const auto& [t, coeff] : model.del_gen_[c].terms()) del(*model.index_of(t), j) = coeff;
        for (const auto& [t, coeff] : model.delbar_gen_[c].terms()) delbar(*model.index_of(t), j) = coeff;
      }
      model.del_mats_.emplace(b, std::move(del));
      model.delbar_mats_.emplace(b, std::move(delbar));
    }
  }
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= m; ++q) {
      const Bidegree b{p, q};
      const Matrix dd = model.del_matrix({p + 1, q}) * model.del_matrix(b);
      const Matrix bb = model.delbar_matrix({p, q + 1}) * model.delbar_matrix(b);
      const Matrix mixed_a = model.del_matrix({p, q + 1}) * model.delbar_matrix(b);
      const Matrix mixed_b = model.delbar_matrix({p + 1, q}) * model.del_matrix(b);
      bool anti = true;
      for (std::size_t r = 0; r < mixed_a.rows() && anti; ++r) {
        for (std::size_t k = 0; k < mixed_a.cols(); ++k) {
          if (!(mixed_a(r, k) + mixed_b(r, k)).is_zero()) {
            anti = false;
            break;
          }
        }
      }
      if (!dd.is_zero() || !bb.is_zero() || !anti) {
        throw Error(ErrorCode::NotClosed, "operator identities fail on bidegree (" + to_string(b) + ")");
      }
    }
  }

  // Frame brackets: [theta_a, theta_b] _| phi^p = -(del phi^p)(theta_a, theta_b).
  model.brackets_.assign(static_cast<std::size_t>(n * n * n), Scalar());
  auto at = [&](int a, int b, int p) -> Scalar& {
    return model.brackets_[static_cast<std::size_t>((a * n + b) * n + p)];
  };
  for (int p = 0; p < n; ++p) {
    const Form holo_part = dgen[static_cast<std::size_t>(p)].component({2, 0});
    for (const auto& [mono, coeff] : holo_part.terms()) {
      const auto idx = mono.holo_indices();
      at(idx[0], idx[1], p) = -coeff;
      at(idx[1], idx[0], p) = coeff;
    }
  }
  auto holo_index = [&](const std::string& name) {
    auto it = by_name.find(name);
    if (it == by_name.end() || it->second.p() != 1) {
      throw Error(ErrorCode::InvalidSpec, "bracket override names '" + name + "', not a holomorphic generator");
    }
    return it->second.holo_indices()[0];
  };
  for (const auto& ov : spec.frame_overrides) {
    const int a = holo_index(ov.left);
    const int b = holo_index(ov.right);
    if (a == b) throw Error(ErrorCode::InvalidSpec, "bracket override of a frame vector with itself");
    for (int p = 0; p < n; ++p) {
      at(a, b, p) = Scalar();
      at(b, a, p) = Scalar();
    }
    for (const auto& [coeff, target] : ov.value) {
      const int p = holo_index(target);
      at(a, b, p) += coeff;
      at(b, a, p) -= coeff;
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int s = 0; s < n; ++s) {
          Scalar sum;
          for (int p = 0; p < n; ++p) {
            sum += at(a, b, p) * at(p, c, s) + at(b, c, p) * at(p, a, s) + at(c, a, p) * at(p, b, s);
          }
          if (!sum.is_zero()) {
            throw Error(ErrorCode::JacobiViolation, "Jacobi identity fails for frame vectors " + model.names_[a] + ", " +
                                                        model.names_[b] + ", " + model.names_[c]);
          }
        }
      }
    }
  }

  model.frame_flat_ = true;
  for (int a = 0; a < n; ++a) {
    if (!model.delbar_gen_[model.compress(Monomial::holo(a))].is_zero()) model.frame_flat_ = false;
  }
  model.omega_admissible_ = model.admissible(model.top_holo());

  // Vector-valued bases.
  model.vector_bases_.assign(static_cast<std::size_t>(m + 1), {});
  model.vector_position_.assign((std::size_t{1} << m) * static_cast<std::size_t>(std::max(n, 1)), -1);
  std::vector<std::vector<Monomial>> antis(static_cast<std::size_t>(m + 1));
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits) {
    const Monomial mono = Monomial::from_parts(0, bits);
    antis[static_cast<std::size_t>(mono.q())].push_back(mono);
  }
  for (int q = 0; q <= m; ++q) {
    auto& list = antis[static_cast<std::size_t>(q)];
    std::sort(list.begin(), list.end(), MonomialOrder{});
    auto& out = model.vector_bases_[static_cast<std::size_t>(q)];
    for (int a = 0; a < n; ++a) {
      for (Monomial mono : list) {
        if (!model.vector_admissible(mono, a)) continue;
        model.vector_position_[mono.anti_bits() * static_cast<std::size_t>(n) + static_cast<std::size_t>(a)] =
            static_cast<int>(out.size());
        out.push_back({mono, a});
      }
    }
  }
  if (model.frame_flat_) {
    for (int q = 0; q <= m; ++q) {
      const auto& src = model.vector_bases_[static_cast<std::size_t>(q)];
      const std::size_t rows = q < m ? model.vector_bases_[static_cast<std::size_t>(q + 1)].size() : 0;
      Matrix mat(rows, src.size());
      for (std::size_t j = 0; j < src.size(); ++j) {
        for (const auto& [t, coeff] : model.delbar_gen_[model.compress(src[j].coeff)].terms()) {
          const int pos =
              model.vector_position_[t.anti_bits() * static_cast<std::size_t>(n) + static_cast<std::size_t>(src[j].frame)];
          if (pos < 0) {
            throw Error(ErrorCode::BasisNotClosed, "delbar of a vector-valued basis element leaves the basis");
          }
          mat(static_cast<std::size_t>(pos), j) = coeff;
        }
      }
      model.delbar_vector_mats_.push_back(std::move(mat));
    }
  }

  if (n == m) {
    for (int a = 0; a < n; ++a) {
      const Form expected = conjugate(dgen[static_cast<std::size_t>(a)]);
      if (!(expected == dgen[static_cast<std::size_t>(n + a)])) {
        model.warnings_.push_back("d(" + model.names_[n + a] + ") is not the formal conjugate of d(" +
                                  model.names_[a] + ")");
      }
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// bases and coordinates

const std::vector<Monomial>& Model::basis(Bidegree b) const {
  static const std::vector<Monomial> kEmpty;
  auto it = bases_.find(b);
  return it == bases_.end() ? kEmpty : it->second;
}

bool Model::admissible(Monomial mono) const {
  if (mono.p() > n_ || mono.q() > m_) return false;
  if ((mono.holo_bits() >> n_) != 0 || (mono.anti_bits() >> m_) != 0) return false;
  return position_[compress(mono)] >= 0;
}

bool Model::admissible(const Form& f) const {
  return std::all_of(f.terms().begin(), f.terms().end(), [&](const auto& t) { return admissible(t.first); });
}

std::optional<std::size_t> Model::index_of(Monomial mono) const {
  if (!admissible(mono)) return std::nullopt;
  return static_cast<std::size_t>(position_[compress(mono)]);
}

Vector Model::to_vector(const Form& f, Bidegree b) const {
  Vector v(dim(b));
  for (const auto& [mono, c] : f.terms()) {
    if (mono.bidegree() != b) continue;
    auto idx = index_of(mono);
    if (!idx) throw Error(ErrorCode::ModelClosure, "monomial " + monomial_label(mono) + " is not admissible");
    v[*idx] = c;
  }
  return v;
}

Form Model::from_vector(std::span<const Scalar> v, Bidegree b) const {
  const auto& list = basis(b);
  if (v.size() != list.size()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector has the wrong length");
  Form f;
  for (std::size_t k = 0; k < list.size(); ++k) f.add(list[k], v[k]);
  return f;
}

const Matrix& Model::del_matrix(Bidegree b) const {
  static const Matrix kEmpty;
  auto it = del_mats_.find(b);
  return it == del_mats_.end() ? kEmpty : it->second;
}

const Matrix& Model::delbar_matrix(Bidegree b) const {
  static const Matrix kEmpty;
  auto it = delbar_mats_.find(b);
  return it == delbar_mats_.end() ? kEmpty : it->second;
}

// ---------------------------------------------------------------------------
// names

std::vector<std::string> Model::monomial_names(Monomial mono) const {
  std::vector<std::string> out;
  for (int a : mono.holo_indices()) out.push_back(names_.at(static_cast<std::size_t>(a)));
  for (int a : mono.anti_indices()) out.push_back(names_.at(static_cast<std::size_t>(n_ + a)));
  return out;
}

std::string Model::monomial_label(Monomial mono) const {
  if (mono.bits == 0) return "1";
  std::string out;
  for (const auto& name : monomial_names(mono)) {
    if (!out.empty()) out += "^";
    out += name;
  }
  return out;
}

Monomial Model::monomial_from_names(const std::vector<std::string>& names) const {
  Monomial out{};
  int last = -1;
  for (const auto& name : names) {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw Error(ErrorCode::InvalidSpec, "unknown generator '" + name + "'");
    const int pos = static_cast<int>(it - names_.begin());
    if (pos <= last) throw Error(ErrorCode::InvalidSpec, "monomial not in canonical generator order at '" + name + "'");
    last = pos;
    out.bits |= pos < n_ ? Monomial::holo(pos).bits : Monomial::anti(pos - n_).bits;
  }
  return out;
}

const Scalar& Model::bracket_constant(int a, int b, int p) const {
  return brackets_.at(static_cast<std::size_t>((a * n_ + b) * n_ + p));
}

// ---------------------------------------------------------------------------
// free-algebra operators

Form Model::wedge_free(const Form& f, const Form& g) const { return wedge_forms(f, g); }

Form Model::del_free(const Form& f) const {
  Form out;
  for (const auto& [mono, c] : f.terms()) {
    for (const auto& [t, k] : del_gen_[compress(mono)].terms()) out.add(t, c * k);
  }
  return out;
}

Form Model::delbar_free(const Form& f) const {
  Form out;
  for (const auto& [mono, c] : f.terms()) {
    for (const auto& [t, k] : delbar_gen_[compress(mono)].terms()) out.add(t, c * k);
  }
  return out;
}

Form Model::contract_free(int a, const Form& f) const {
  Form out;
  for (const auto& [mono, c] : f.terms()) {
    if (auto r = contract_monomial(a, mono)) out.add(r->second, r->first == 1 ? c : -c);
  }
  return out;
}

Form Model::contract_free(const VectorForm& phi, const Form& f) const {
  Form out;
  if (phi.frame_size() == 0) return out;
  if (phi.frame_size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("vector form frame size");
  for (int a = 0; a < n_; ++a) {
    const Form& tau = phi.component(static_cast<std::size_t>(a));
    if (tau.is_zero()) continue;
    out += wedge_free(tau, contract_free(a, f));
  }
  return out;
}

Form Model::exp_contract_free(const VectorForm& phi, const Form& f) const {
  Form sum = f;
  Form term = f;
  for (long k = 1;; ++k) {
    term = contract_free(phi, term) * Scalar(Rational(1, k));
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

VectorForm Model::bracket_free(const VectorForm& phi, const VectorForm& psi) const {
  VectorForm out = zero_vector();
  const auto k_opt = phi.degree();
  const auto l_opt = psi.degree();
  if (!k_opt || !l_opt) return out;
  const int sign_kl = ((*k_opt) * (*l_opt)) % 2 == 0 ? 1 : -1;
  for (int a = 0; a < n_; ++a) {
    const Form& alpha = phi.component(static_cast<std::size_t>(a));
    if (alpha.is_zero()) continue;
    const Form d_alpha = del_free(alpha);
    for (int b = 0; b < n_; ++b) {
      const Form& beta = psi.component(static_cast<std::size_t>(b));
      if (beta.is_zero()) continue;
      const Form ab = wedge_free(alpha, beta);
      for (int p = 0; p < n_; ++p) {
        const Scalar& c = bracket_constant(a, b, p);
        if (!c.is_zero()) out.component(static_cast<std::size_t>(p)) += ab * c;
      }
      out.component(static_cast<std::size_t>(b)) += wedge_free(alpha, contract_free(a, del_free(beta)));
      const Form tail = wedge_free(beta, contract_free(b, d_alpha));
      if (sign_kl == 1) {
        out.component(static_cast<std::size_t>(a)) -= tail;
      } else {
        out.component(static_cast<std::size_t>(a)) += tail;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// checked operators

void Model::require(const Form& f, const char* what) const {
  for (const auto& [mono, c] : f.terms()) {
    if (!admissible(mono)) {
      throw Error(ErrorCode::ModelClosure, std::string(what) + ": monomial " + monomial_label(mono) + " is not admissible");
    }
  }
}

void Model::require(const VectorForm& v, const char* what) const {
  if (v.frame_size() != 0 && v.frame_size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("vector form frame size does not match the model");
  }
  v.degree();  // type check
  for (std::size_t a = 0; a < v.frame_size(); ++a) {
    for (const auto& [mono, c] : v.component(a).terms()) {
      if (!vector_admissible(mono, static_cast<int>(a))) {
        throw Error(ErrorCode::ModelClosure, std::string(what) + ": " + monomial_label(mono) + " (x) theta_" +
                                                 std::to_string(a + 1) + " is not admissible");
      }
    }
  }
}

void Model::require_flat(const char* what) const {
  if (!frame_flat_) {
    throw Error(ErrorCode::FrameNotHolomorphic,
                std::string(what) + " needs a holomorphic frame, but delbar of a holomorphic generator is nonzero");
  }
}

Form Model::wedge(const Form& f, const Form& g) const {
  require(f, "wedge");
  require(g, "wedge");
  Form out = wedge_free(f, g);
  require(out, "wedge");
  return out;
}

Form Model::del(const Form& f) const {
  require(f, "del");
  return del_free(f);
}

Form Model::delbar(const Form& f) const {
  require(f, "delbar");
  return delbar_free(f);
}

Form Model::d(const Form& f) const { return del_free(f) + delbar_free(f); }

Form Model::contract(int a, const Form& f) const {
  require(f, "contract");
  Form out = contract_free(a, f);
  require(out, "contract");
  return out;
}

Form Model::contract(const VectorForm& phi, const Form& f) const {
  require(phi, "contract");
  require(f, "contract");
  Form out = contract_free(phi, f);
  require(out, "contract");
  return out;
}

Form Model::exp_contract(const VectorForm& phi, const Form& f) const {
  require(phi, "exp_contract");
  require(f, "exp_contract");
  Form out = exp_contract_free(phi, f);
  require(out, "exp_contract");
  return out;
}

Form Model::lie10(const VectorForm& phi, const Form& f) const {
  require(phi, "lie10");
  require(f, "lie10");
  const int k = phi.degree().value_or(0);
  Form out = contract_free(phi, del_free(f));
  const Form tail = del_free(contract_free(phi, f));
  if (k % 2 == 1) {
    out -= tail;
  } else {
    out += tail;
  }
  require(out, "lie10");
  return out;
}

Form Model::lie01(const VectorForm& phi, const Form& f) const {
  require(phi, "lie01");
  require(f, "lie01");
  const int k = phi.degree().value_or(0);
  Form out = contract_free(phi, delbar_free(f));
  const Form tail = delbar_free(contract_free(phi, f));
  if (k % 2 == 1) {
    out -= tail;
  } else {
    out += tail;
  }
  require(out, "lie01");
  return out;
}

Form Model::delbar_phi(const VectorForm& phi, const Form& f) const {
  require_flat("delbar_phi");
  require(phi, "delbar_phi");
  require(f, "delbar_phi");
  const auto k = phi.degree();
  if (k && *k != 1) throw std::invalid_argument("delbar_phi expects a (0,1)-form with values in T^{1,0}");
  Form out = delbar_free(f) + del_free(contract_free(phi, f)) - contract_free(phi, del_free(f));
  require(out, "delbar_phi");
  return out;
}

VectorForm Model::bracket(const VectorForm& phi, const VectorForm& psi) const {
  require(phi, "bracket");
  require(psi, "bracket");
  VectorForm out = bracket_free(phi, psi);
  require(out, "bracket");
  return out;
}

VectorForm Model::delbar(const VectorForm& phi) const {
  require_flat("delbar");
  require(phi, "delbar");
  VectorForm out = zero_vector();
  for (std::size_t a = 0; a < phi.frame_size(); ++a) out.component(a) = delbar_free(phi.component(a));
  return out;
}

// ---------------------------------------------------------------------------
// vector-valued spaces

const std::vector<VectorMonomial>& Model::vector_basis(int q) const {
  static const std::vector<VectorMonomial> kEmpty;
  if (q < 0 || q > m_) return kEmpty;
  return vector_bases_[static_cast<std::size_t>(q)];
}

bool Model::vector_admissible(Monomial coeff, int frame) const {
  if (coeff.p() != 0 || frame < 0 || frame >= n_) return false;
  if ((coeff.anti_bits() >> m_) != 0) return false;
  if (!has_admissible_basis()) return true;
  // With a top holomorphic form, tau (x) theta_a corresponds to tau ^ (theta_a _| Omega).
  if (omega_admissible_) {
    auto partner = contract_monomial(frame, top_holo());
    return admissible(Monomial{coeff.bits | partner->second.bits});
  }
  return admissible(coeff);
}

bool Model::admissible(const VectorForm& v) const {
  for (std::size_t a = 0; a < v.frame_size(); ++a) {
    for (const auto& [mono, c] : v.component(a).terms()) {
      if (!vector_admissible(mono, static_cast<int>(a))) return false;
    }
  }
  return true;
}

Vector Model::to_vector(const VectorForm& v, int q) const {
  Vector out(vector_basis(q).size());
  for (std::size_t a = 0; a < v.frame_size(); ++a) {
    for (const auto& [mono, c] : v.component(a).terms()) {
      if (mono.bidegree() != Bidegree{0, q}) continue;
      if (!vector_admissible(mono, static_cast<int>(a))) {
        throw Error(ErrorCode::ModelClosure, "vector-valued monomial is not admissible");
      }
      out[static_cast<std::size_t>(vector_position_[mono.anti_bits() * static_cast<std::size_t>(n_) + a])] = c;
    }
  }
  return out;
}

VectorForm Model::from_vector(std::span<const Scalar> v, int q) const {
  const auto& list = vector_basis(q);
  if (v.size() != list.size()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector has the wrong length");
  VectorForm out = zero_vector();
  for (std::size_t k = 0; k < list.size(); ++k) {
    out.component(static_cast<std::size_t>(list[k].frame)).add(list[k].coeff, v[k]);
  }
  return out;
}

const Matrix& Model::delbar_vector_matrix(int q) const {
  require_flat("delbar on vector-valued forms");
  static const Matrix kEmpty;
  if (q < 0 || q > m_) return kEmpty;
  return delbar_vector_mats_[static_cast<std::size_t>(q)];
}

}  // namespace spectradef
