#pragma once

#include <map>
#include <string>
#include <vector>

#include "spectradef/model.hpp"
#include "spectradef/spectral.hpp"

namespace spectradef {

/// Exponents (k_1, ..., k_m) of t_1^{k_1} ... t_m^{k_m}.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& index);
/// "k1,k2,..."
std::string to_string(const MultiIndex& index);
/// Every multi-index in `vars` variables of total degree exactly `degree`,
/// in decreasing lexicographic order (t_1^d first).
std::vector<MultiIndex> multi_indices(int vars, int degree);
MultiIndex unit_index(int vars, int position);

/// Truncated power series in parameters t_1..t_m with Form or VectorForm
/// coefficients. Terms of total degree above the order are dropped.
template <class T>
class Series {
 public:
  Series() = default;
  Series(std::vector<std::string> variables, int order) : variables_(std::move(variables)), order_(order) {}

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  int vars() const noexcept { return static_cast<int>(variables_.size()); }
  int order() const noexcept { return order_; }
  const std::map<MultiIndex, T>& terms() const noexcept { return terms_; }

  /// Null when the coefficient is zero.
  const T* find(const MultiIndex& index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? nullptr : &it->second;
  }

  void add(const MultiIndex& index, const T& value) {
    if (total_degree(index) > order_ || value.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(index, value);
    if (inserted) return;
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
  }

  /// The part of total degree exactly k.
  Series homogeneous(int k) const {
    Series out(variables_, order_);
    for (const auto& [idx, value] : terms_) {
      if (total_degree(idx) == k) out.terms_.emplace(idx, value);
    }
    return out;
  }

  bool is_zero() const noexcept { return terms_.empty(); }

  Series& operator+=(const Series& o) {
    for (const auto& [idx, value] : o.terms_) add(idx, value);
    return *this;
  }
  Series& operator-=(const Series& o) {
    for (const auto& [idx, value] : o.terms_) add(idx, -value);
    return *this;
  }
  Series& operator*=(const Scalar& s) {
    if (s.is_zero()) terms_.clear();
    for (auto& [idx, value] : terms_) value *= s;
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Scalar& s) { return a *= s; }
  friend bool operator==(const Series& a, const Series& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<std::string> variables_;
  int order_ = 0;
  std::map<MultiIndex, T> terms_;
};

/// Truncated Cauchy product: out_{I+J} += op(a_I, b_J).
template <class R, class A, class B, class Op>
Series<R> convolve(const Series<A>& a, const Series<B>& b, Op op) {
  Series<R> out(a.variables(), a.order());
  for (const auto& [ia, va] : a.terms()) {
    const int da = total_degree(ia);
    for (const auto& [ib, vb] : b.terms()) {
      if (da + total_degree(ib) > a.order()) continue;
      MultiIndex sum = ia;
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += ib[k];
      out.add(sum, op(va, vb));
    }
  }
  return out;
}

using VectorSeries = Series<VectorForm>;
using FormSeries = Series<Form>;

enum class OrderStatus { Solved, Obstructed };

/// Class of an order-k obstruction at one multi-index.
struct ObstructionClass {
  MultiIndex index;
  /// sum_{J+K=index} [phi_J, phi_K]; delbar-closed.
  VectorForm representative;
  /// Orthogonal projection to the harmonic (0,2) space.
  VectorForm harmonic;
  /// Coordinates in the harmonic basis of H^{0,2}(T).
  Vector coordinates;
  bool is_zero() const { return harmonic.is_zero(); }
};

struct OrderRecord {
  int order = 1;
  OrderStatus status = OrderStatus::Solved;
  /// Nonzero classes when obstructed.
  std::vector<ObstructionClass> obstructions;
};

/// A truncated solution of delbar phi = 1/2 [phi, phi].
struct MCState {
  std::string method;
  /// phi_1 = sum_nu t_nu eta_nu.
  std::vector<VectorForm> directions;
  VectorSeries phi;
  /// Requested truncation order.
  int order = 1;
  std::vector<OrderRecord> records;
  /// Notes from the construction (hypotheses used, shortcuts taken).
  std::vector<std::string> notes;

  /// Highest k such that orders 1..k are solved.
  int solved_through() const;
  bool solved() const { return solved_through() >= order; }
};

/// Harmonic basis of H^{0,q}(T) for the declared inner product, ordered by
/// the reduced row-echelon basis of ker delbar cap (im delbar)^perp.
std::vector<VectorForm> harmonic_vector_basis(const Model& model, int q);

/// Kuranishi iteration phi_k = 1/2 delbar^* G sum_{j<k} [phi_j, phi_{k-j}],
/// with delbar^* G realised by minimal-norm solving. Stops at the first
/// obstructed order. `direction_subset` selects harmonic directions by index
/// (empty means all). Throws FrameNotHolomorphic.
MCState kuranishi(const Model& model, int order, const std::vector<std::size_t>& direction_subset = {});

/// delbar phi - 1/2 [phi, phi], truncated at the state's order.
VectorSeries mc_residual(const Model& model, const MCState& state);

/// Classes of sum_{j=1}^N [phi_j, phi_{N+1-j}] at every multi-index of degree
/// N+1. Needs the state solved through N; throws HypothesisFailed otherwise.
std::vector<ObstructionClass> obstruction_class(const Model& model, const MCState& state, int n);

/// True iff every order-(N+1) obstruction class lies in ker mu_{p,q}.
/// Throws NoDomainPath.
bool obstruction_in_ker_mu(const Model& model, const MCState& state, int p, int q, int n);

/// Exact Maurer-Cartan solution for models with a holomorphic frame whose
/// holomorphic (0,1)-forms are d-closed. Throws HypothesisFailed, NotSolvable.
MCState parallelisable_mc(const Model& model, int order);

struct ExtensionResult {
  /// alpha(t) with coefficients in F^p A^{p+q}.
  FormSeries alpha;
  /// d(e^{i_phi} alpha(t)) mod t^{N+1}; identically zero on success.
  FormSeries d_exp;
  /// (delbar_phi + del) alpha(t) mod t^{N+1}; identically zero on success.
  FormSeries twisted;
};

/// Extends a delbar-closed (p,q)-form alpha0 to alpha(t) with
/// d(e^{i_phi} alpha(t)) = 0 mod t^{N+1}. Throws HypothesisFailed when the
/// degeneration hypotheses fail or the state is not solved through N, and
/// NotSolvable if a step has no solution.
ExtensionResult extend_form(const SpectralSequence& ss, const Form& alpha0, const MCState& state, int order);
ExtensionResult extend_form(const Model& model, const Form& alpha0, const MCState& state, int order);

}  // namespace spectradef
