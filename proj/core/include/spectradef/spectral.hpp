#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "spectradef/model.hpp"

namespace spectradef {

struct SpectralOptions {
  /// Runtime well-definedness checks (witness and representative perturbation).
  bool verify = false;
  /// Upper bound on worker threads for grid computations.
  unsigned threads = 1;
};

/// One cell E_r^{p,q} of the Frolicher spectral sequence.
struct PageEntry {
  int r = 1;
  int p = 0;
  int q = 0;
  std::size_t dim = 0;
  /// Forms of bidegree (p,q) whose classes form a basis of E_r^{p,q}.
  std::vector<Form> representatives;
  /// For each representative: alpha^{p+1,q-1}, ..., alpha^{p+r-1,q-r+1}.
  std::vector<std::vector<Form>> witnesses;
  /// Matrix of d_r into E_r^{p+r,q-r+1} in the two representative bases.
  Matrix d_matrix;
};

struct DegenerationReport {
  int p = 0;
  int q = 0;
  bool verdict = true;
  /// d_r^{p,q} = 0 for every r.
  bool differentials_vanish = true;
  /// Every delbar-closed (p,q)-form is the leading part of a d-closed element of F^p.
  bool lifts_exist = true;
  /// F^{p+1} cap dF^p = dF^{p+1} in total degree p+q+1.
  bool filtration_identity = true;
  /// (r, rank of d_r^{p,q}) for r = 1 .. stabilization.
  std::vector<std::pair<int, std::size_t>> ranks;
};

struct FiltrationReport {
  int p = 0;
  int q = 0;
  bool verdict = true;
  /// d_r^{p-i,q+i} = 0 for all r >= 1 and 0 <= i <= r-1.
  bool differentials_vanish = true;
  /// F^{p+1} cap dA = dF^{p+1} in total degree p+q+1.
  bool filtration_identity = true;
  /// (r, p', q', rank) for every nonzero differential in the family.
  std::vector<std::tuple<int, int, int, std::size_t>> nonzero;
};

struct PopoviciMaps {
  /// H^{n-1,1}_delbar -> H^{n,1}_BC, [a] -> [del a].
  Matrix a1;
  /// H^{n-2,2}_A -> H^{n-1,2}_BC, [v] -> [del v].
  Matrix a2;
};

struct KodairaPredicates {
  int p = 0;
  /// ker delbar cap im del = im del delbar, per bidegree.
  std::map<Bidegree, bool> del_exact_acyclic;
  bool acyclic = true;
  /// By q: H(F^{p+1}) -> H(F^p) injective in total degree p+q+1.
  std::map<int, bool> injective_to_previous;
  /// By q: H(F^{p+1}) -> H(F^0) injective in total degree p+q+1.
  std::map<int, bool> injective_to_total;
};

/// Lazily computed, memoized spectral data of one model. Safe to share across
/// threads; the model must outlive this object.
class SpectralSequence {
 public:
  explicit SpectralSequence(const Model& model, SpectralOptions options = {});

  const Model& model() const noexcept { return model_; }
  const SpectralOptions& options() const noexcept { return options_; }
  /// Every differential with r >= this index vanishes.
  int stabilization_index() const noexcept { return model_.n() + 1; }

  /// Empty (dim 0) for out-of-range bidegrees. Requires r >= 1.
  std::shared_ptr<const PageEntry> page(int r, int p, int q) const;
  std::size_t dim(int r, int p, int q) const;
  const Matrix& differential(int r, int p, int q) const { return page(r, p, q)->d_matrix; }
  /// Dimension from the classical filtration formula.
  std::size_t oracle_dim(int r, int p, int q) const;
  /// Smallest r with dim E_r^{p,q} = dim E_infinity^{p,q}.
  int stabilization(int p, int q) const;
  /// dim E_r^{p,q} for every in-range (p,q), computed concurrently.
  std::map<Bidegree, std::size_t> table(int r) const;

  DegenerationReport degeneration(int p, int q) const;
  FiltrationReport filtration_condition(int p, int q) const;

  std::size_t de_rham(int k) const;
  Quotient dolbeault(int p, int q) const;
  Quotient bott_chern(int p, int q) const;
  Quotient aeppli(int p, int q) const;
  PopoviciMaps popovici() const;
  KodairaPredicates kodaira_predicates(int p) const;

  // Total-degree spaces A^k = sum over p of A^{p,k-p}, blocks by increasing p.
  std::size_t total_dim(int k) const;
  /// Offset of the (p, k-p) block inside A^k.
  std::size_t total_offset(int k, int p) const;
  /// d: A^k -> A^{k+1}.
  const Matrix& total_d(int k) const;
  /// F^p A^k as a coordinate subspace.
  Subspace filtration(int k, int p) const;
  Vector to_total(const Form& f, int k) const;
  Form from_total(std::span<const Scalar> v, int k) const;

 private:
  struct Cell;
  std::shared_ptr<const Cell> cell(int r, int p, int q) const;
  std::shared_ptr<const Cell> compute_cell(int r, int p, int q) const;
  std::shared_ptr<const PageEntry> compute_page(int r, int p, int q) const;
  void prefetch(const std::vector<std::tuple<int, int, int>>& cells) const;

  const Model& model_;
  SpectralOptions options_;

  mutable std::mutex mutex_;
  mutable std::map<std::tuple<int, int, int>, std::shared_ptr<const Cell>> cells_;
  mutable std::map<std::tuple<int, int, int>, std::shared_ptr<const PageEntry>> pages_;
  mutable std::map<int, std::shared_ptr<const Matrix>> total_d_;
};

// Free-function forms of the main operations; each builds a fresh sequence.
PageEntry page(const Model& model, int r, int p, int q);
std::size_t page_oracle(const Model& model, int r, int p, int q);
Matrix differential(const Model& model, int r, int p, int q);
DegenerationReport degeneration(const Model& model, int p, int q);
FiltrationReport filtration_condition(const Model& model, int p, int q);
std::size_t de_rham(const Model& model, int k);
Quotient bott_chern(const Model& model, int p, int q);
Quotient aeppli(const Model& model, int p, int q);
PopoviciMaps popovici_maps(const Model& model);
KodairaPredicates kodaira_predicates(const Model& model, int p);

}  // namespace spectradef
