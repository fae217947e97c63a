#include "spectradef/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "spectradef/error.hpp"

namespace spectradef {

namespace {

// Dense matrix assembled from rectangular blocks.
class BlockMatrix {
 public:
  BlockMatrix(std::vector<std::size_t> row_dims, std::vector<std::size_t> col_dims)
      : row_off_(offsets(row_dims)), col_off_(offsets(col_dims)), row_dims_(std::move(row_dims)),
        col_dims_(std::move(col_dims)), m_(row_off_.back(), col_off_.back()) {}

  void put(std::size_t rb, std::size_t cb, const Matrix& block) {
    if (row_dims_[rb] == 0 || col_dims_[cb] == 0) return;
    if (block.rows() != row_dims_[rb] || block.cols() != col_dims_[cb]) {
      throw Error(ErrorCode::DimensionMismatch, "block shape");
    }
    for (std::size_t r = 0; r < block.rows(); ++r) {
      for (std::size_t c = 0; c < block.cols(); ++c) m_(row_off_[rb] + r, col_off_[cb] + c) = block(r, c);
    }
  }

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t col_offset(std::size_t cb) const { return col_off_[cb]; }
  std::size_t col_dim(std::size_t cb) const { return col_dims_[cb]; }
  std::size_t row_offset(std::size_t rb) const { return row_off_[rb]; }

  Vector slice(std::span<const Scalar> x, std::size_t cb) const {
    return Vector(x.begin() + static_cast<std::ptrdiff_t>(col_off_[cb]),
                  x.begin() + static_cast<std::ptrdiff_t>(col_off_[cb] + col_dims_[cb]));
  }

 private:
  static std::vector<std::size_t> offsets(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> out{0};
    for (auto d : dims) out.push_back(out.back() + d);
    return out;
  }

  std::vector<std::size_t> row_off_;
  std::vector<std::size_t> col_off_;
  std::vector<std::size_t> row_dims_;
  std::vector<std::size_t> col_dims_;
  Matrix m_;
};

std::size_t rank_of(const Matrix& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : reduce(m).rank; }

}  // namespace

struct SpectralSequence::Cell {
  int r = 1;
  int p = 0;
  int q = 0;
  bool in_range = false;
  Quotient quotient;
  std::vector<Vector> reps;
  /// Per representative, blocks x_1 .. x_{r-1}.
  std::vector<std::vector<Vector>> tails;
  /// Solutions of the homogeneous tail system, used for perturbation checks.
  std::vector<Vector> tail_kernel_last;
};

SpectralSequence::SpectralSequence(const Model& model, SpectralOptions options)
    : model_(model), options_(options) {}

// ---------------------------------------------------------------------------
// cells

std::shared_ptr<const SpectralSequence::Cell> SpectralSequence::cell(int r, int p, int q) const {
  if (r < 1) throw std::invalid_argument("page index r must be at least 1");
  const auto key = std::make_tuple(r, p, q);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cells_.find(key); it != cells_.end()) return it->second;
  }
  auto computed = compute_cell(r, p, q);
  std::lock_guard lock(mutex_);
  return cells_.emplace(key, std::move(computed)).first->second;
}

std::shared_ptr<const SpectralSequence::Cell> SpectralSequence::compute_cell(int r, int p, int q) const {
  auto out = std::make_shared<Cell>();
  out->r = r;
  out->p = p;
  out->q = q;
  out->in_range = model_.in_range({p, q});
  if (!out->in_range) {
    out->quotient = Quotient(Subspace(0), Subspace(0));
    return out;
  }
  const Model& M = model_;
  auto dim = [&](int a, int b) { return M.dim({a, b}); };
  const std::size_t here = dim(p, q);

  // Z~_r: unknowns x_j in A^{p+j,q-j}; equations delbar x_0 = 0 and
  // del x_{i-1} + delbar x_i = 0 in A^{p+i,q-i+1}.
  std::vector<std::size_t> zcols;
  std::vector<std::size_t> zrows;
  for (int j = 0; j < r; ++j) zcols.push_back(dim(p + j, q - j));
  zrows.push_back(dim(p, q + 1));
  for (int i = 1; i < r; ++i) zrows.push_back(dim(p + i, q - i + 1));
  BlockMatrix zsys(zrows, zcols);
  zsys.put(0, 0, M.delbar_matrix({p, q}));
  for (int i = 1; i < r; ++i) {
    zsys.put(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1), M.del_matrix({p + i - 1, q - i + 1}));
    zsys.put(static_cast<std::size_t>(i), static_cast<std::size_t>(i), M.delbar_matrix({p + i, q - i}));
  }
  std::vector<Vector> leading;
  for (const auto& v : kernel(zsys.matrix()).basis_vectors()) leading.push_back(zsys.slice(v, 0));
  const Subspace ztilde = Subspace::span(leading, here);

  // B~_r: delbar y_0 + del y_1 with y_0 in A^{p,q-1}, y_i in A^{p-i,q+i-1},
  // del y_i + delbar y_{i-1} = 0 for 2 <= i <= r-1 and delbar y_{r-1} = 0.
  Subspace btilde(here);
  if (r == 1) {
    btilde = image(M.delbar_matrix({p, q - 1}));
  } else {
    std::vector<std::size_t> bcols{dim(p, q - 1)};
    for (int i = 1; i < r; ++i) bcols.push_back(dim(p - i, q + i - 1));
    std::vector<std::size_t> brows;
    for (int i = 2; i < r; ++i) brows.push_back(dim(p - i + 1, q + i - 1));
    brows.push_back(dim(p - r + 1, q + r - 1));
    BlockMatrix constraints(brows, bcols);
    for (int i = 2; i < r; ++i) {
      const auto row = static_cast<std::size_t>(i - 2);
      constraints.put(row, static_cast<std::size_t>(i), M.del_matrix({p - i, q + i - 1}));
      constraints.put(row, static_cast<std::size_t>(i - 1), M.delbar_matrix({p - i + 1, q + i - 2}));
    }
    constraints.put(brows.size() - 1, static_cast<std::size_t>(r - 1), M.delbar_matrix({p - r + 1, q + r - 2}));
    BlockMatrix output({here}, bcols);
    output.put(0, 0, M.delbar_matrix({p, q - 1}));
    output.put(0, 1, M.del_matrix({p - 1, q}));
    btilde = image_of(output.matrix(), kernel(constraints.matrix()));
  }

  out->quotient = Quotient(ztilde, btilde);
  out->reps = out->quotient.representatives();

  if (r >= 2) {
    // Tail system on x_1 .. x_{r-1} with x_0 = alpha moved to the right side.
    std::vector<std::size_t> tcols(zcols.begin() + 1, zcols.end());
    std::vector<std::size_t> trows(zrows.begin() + 1, zrows.end());
    BlockMatrix tail(trows, tcols);
    tail.put(0, 0, M.delbar_matrix({p + 1, q - 1}));
    for (int i = 2; i < r; ++i) {
      tail.put(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i - 2), M.del_matrix({p + i - 1, q - i + 1}));
      tail.put(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i - 1), M.delbar_matrix({p + i, q - i}));
    }
    const Matrix& first = M.del_matrix({p, q});
    for (const auto& alpha : out->reps) {
      Vector rhs(tail.matrix().rows());
      const Vector da = first.apply(alpha);
      for (std::size_t k = 0; k < da.size(); ++k) rhs[k] = -da[k];
      const Vector x = solve_min_norm(tail.matrix(), rhs);
      std::vector<Vector> blocks;
      for (std::size_t b = 0; b < tcols.size(); ++b) blocks.push_back(tail.slice(x, b));
      out->tails.push_back(std::move(blocks));
    }
    if (options_.verify) {
      for (const auto& v : kernel(tail.matrix()).basis_vectors()) {
        out->tail_kernel_last.push_back(tail.slice(v, tcols.size() - 1));
      }
    }
  }
  return out;
}

std::shared_ptr<const PageEntry> SpectralSequence::page(int r, int p, int q) const {
  const auto key = std::make_tuple(r, p, q);
  {
    std::lock_guard lock(mutex_);
    if (auto it = pages_.find(key); it != pages_.end()) return it->second;
  }
  auto computed = compute_page(r, p, q);
  std::lock_guard lock(mutex_);
  return pages_.emplace(key, std::move(computed)).first->second;
}

std::shared_ptr<const PageEntry> SpectralSequence::compute_page(int r, int p, int q) const {
  const auto c = cell(r, p, q);
  auto entry = std::make_shared<PageEntry>();
  entry->r = r;
  entry->p = p;
  entry->q = q;
  entry->dim = c->reps.size();
  for (std::size_t k = 0; k < c->reps.size(); ++k) {
    entry->representatives.push_back(model_.from_vector(c->reps[k], {p, q}));
    std::vector<Form> w;
    if (r >= 2) {
      for (int i = 1; i < r; ++i) {
        w.push_back(model_.from_vector(c->tails[k][static_cast<std::size_t>(i - 1)], {p + i, q - i}));
      }
    }
    entry->witnesses.push_back(std::move(w));
  }

  const int tp = p + r;
  const int tq = q - r + 1;
  const auto target = cell(r, tp, tq);
  entry->d_matrix = Matrix(target->reps.size(), entry->dim);
  if (target->reps.empty() || entry->dim == 0) return entry;

  const Matrix& del = model_.del_matrix({tp - 1, tq});
  auto class_in_target = [&](const Vector& v) {
    try {
      return target->quotient.class_of(v);
    } catch (const Error& e) {
      throw Error(ErrorCode::EquivalenceViolation,
                  "d_" + std::to_string(r) + " image leaves the target cycle space at (" + to_string(Bidegree{p, q}) +
                      "): " + e.detail());
    }
  };
  for (std::size_t k = 0; k < entry->dim; ++k) {
    const Vector& last = r == 1 ? c->reps[k] : c->tails[k].back();
    const Vector coords = class_in_target(del.apply(last));
    for (std::size_t row = 0; row < coords.size(); ++row) entry->d_matrix(row, k) = coords[row];
  }
  if (options_.verify) {
    std::vector<Vector> perturbations = c->tail_kernel_last;
    if (r == 1) perturbations = c->quotient.denominator().basis_vectors();
    for (const auto& kappa : perturbations) {
      const Vector image = del.apply(kappa);
      class_in_target(image);
      if (!target->quotient.is_trivial_class(image)) {
        throw Error(ErrorCode::EquivalenceViolation,
                    "d_" + std::to_string(r) + " depends on the witness at (" + to_string(Bidegree{p, q}) + ")");
      }
    }
  }
  return entry;
}

std::size_t SpectralSequence::dim(int r, int p, int q) const { return cell(r, p, q)->reps.size(); }

void SpectralSequence::prefetch(const std::vector<std::tuple<int, int, int>>& cells) const {
  const unsigned workers = std::max(1u, std::min<unsigned>(options_.threads, static_cast<unsigned>(cells.size())));
  if (workers <= 1) {
    for (const auto& [r, p, q] : cells) page(r, p, q);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) {
        try {
          const auto& [r, p, q] = cells[i];
          page(r, p, q);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::map<Bidegree, std::size_t> SpectralSequence::table(int r) const {
  std::vector<std::tuple<int, int, int>> cells;
  for (int p = 0; p <= model_.n(); ++p) {
    for (int q = 0; q <= model_.m(); ++q) cells.emplace_back(r, p, q);
  }
  prefetch(cells);
  std::map<Bidegree, std::size_t> out;
  for (const auto& [rr, p, q] : cells) out[{p, q}] = dim(rr, p, q);
  return out;
}

int SpectralSequence::stabilization(int p, int q) const {
  const int top = stabilization_index();
  const std::size_t limit = dim(top, p, q);
  int r = top;
  while (r > 1 && dim(r - 1, p, q) == limit) --r;
  return r;
}

// ---------------------------------------------------------------------------
// total degree

std::size_t SpectralSequence::total_dim(int k) const {
  std::size_t out = 0;
  for (int p = 0; p <= model_.n(); ++p) out += model_.dim({p, k - p});
  return out;
}

std::size_t SpectralSequence::total_offset(int k, int p) const {
  std::size_t out = 0;
  for (int a = 0; a < std::min(p, model_.n() + 1); ++a) out += model_.dim({a, k - a});
  return out;
}

const Matrix& SpectralSequence::total_d(int k) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = total_d_.find(k); it != total_d_.end()) return *it->second;
  }
  auto m = std::make_shared<Matrix>(total_dim(k + 1), total_dim(k));
  for (int p = 0; p <= model_.n(); ++p) {
    const Bidegree b{p, k - p};
    const std::size_t src = total_offset(k, p);
    const Matrix& del = model_.del_matrix(b);
    const Matrix& delbar = model_.delbar_matrix(b);
    const std::size_t del_row = total_offset(k + 1, p + 1);
    const std::size_t bar_row = total_offset(k + 1, p);
    for (std::size_t j = 0; j < model_.dim(b); ++j) {
      for (std::size_t i = 0; i < del.rows(); ++i) (*m)(del_row + i, src + j) = del(i, j);
      for (std::size_t i = 0; i < delbar.rows(); ++i) (*m)(bar_row + i, src + j) = delbar(i, j);
    }
  }
  std::lock_guard lock(mutex_);
  return *total_d_.emplace(k, std::move(m)).first->second;
}

Subspace SpectralSequence::filtration(int k, int p) const {
  const std::size_t n = total_dim(k);
  const std::size_t start = p <= 0 ? 0 : total_offset(k, p);
  std::vector<std::size_t> idx;
  for (std::size_t i = start; i < n; ++i) idx.push_back(i);
  return Subspace::coordinate(n, idx);
}

Vector SpectralSequence::to_total(const Form& f, int k) const {
  Vector out(total_dim(k));
  for (int p = 0; p <= model_.n(); ++p) {
    const Vector block = model_.to_vector(f, {p, k - p});
    std::copy(block.begin(), block.end(), out.begin() + static_cast<std::ptrdiff_t>(total_offset(k, p)));
  }
  return out;
}

Form SpectralSequence::from_total(std::span<const Scalar> v, int k) const {
  Form out;
  for (int p = 0; p <= model_.n(); ++p) {
    const std::size_t off = total_offset(k, p);
    out += model_.from_vector(v.subspan(off, model_.dim({p, k - p})), {p, k - p});
  }
  return out;
}

std::size_t SpectralSequence::oracle_dim(int r, int p, int q) const {
  if (r < 1) throw std::invalid_argument("page index r must be at least 1");
  if (!model_.in_range({p, q})) return 0;
  const int k = p + q;
  const Matrix& d = total_d(k);
  const Matrix& d_prev = total_d(k - 1);
  auto z = [&](int rr, int pp) { return intersect(filtration(k, pp), preimage(d, filtration(k + 1, pp + rr))); };
  auto b = [&](int rr, int pp) { return intersect(filtration(k, pp), image_of(d_prev, filtration(k - 1, pp - rr))); };
  const Subspace top = z(r, p);
  const Subspace bottom = sum(z(r - 1, p + 1), b(r - 1, p));
  return quotient_dim(bottom, top);
}

// ---------------------------------------------------------------------------
// lemmas

DegenerationReport SpectralSequence::degeneration(int p, int q) const {
  DegenerationReport rep;
  rep.p = p;
  rep.q = q;
  if (!model_.in_range({p, q})) return rep;
  for (int r = 1; r <= stabilization_index(); ++r) {
    const std::size_t rk = rank_of(differential(r, p, q));
    rep.ranks.emplace_back(r, rk);
    if (rk != 0) rep.differentials_vanish = false;
  }
  const int k = p + q;
  const Matrix& d = total_d(k);

  const Subspace closed = intersect(kernel(d), filtration(k, p));
  const std::size_t off = total_offset(k, p);
  const std::size_t len = model_.dim({p, q});
  std::vector<Vector> leading;
  for (const auto& v : closed.basis_vectors()) {
    leading.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(off),
                         v.begin() + static_cast<std::ptrdiff_t>(off + len));
  }
  rep.lifts_exist = Subspace::span(leading, len) == kernel(model_.delbar_matrix({p, q}));

  const Subspace lhs = intersect(filtration(k + 1, p + 1), image_of(d, filtration(k, p)));
  const Subspace rhs = image_of(d, filtration(k, p + 1));
  rep.filtration_identity = lhs == rhs;

  if (rep.differentials_vanish != rep.lifts_exist || rep.lifts_exist != rep.filtration_identity) {
    throw Error(ErrorCode::EquivalenceViolation,
                "degeneration conditions disagree at (" + to_string(Bidegree{p, q}) + ")");
  }
  rep.verdict = rep.differentials_vanish;
  return rep;
}

FiltrationReport SpectralSequence::filtration_condition(int p, int q) const {
  FiltrationReport rep;
  rep.p = p;
  rep.q = q;
  for (int r = 1; r <= stabilization_index(); ++r) {
    for (int i = 0; i <= r - 1; ++i) {
      if (!model_.in_range({p - i, q + i})) continue;
      const std::size_t rk = rank_of(differential(r, p - i, q + i));
      if (rk != 0) {
        rep.differentials_vanish = false;
        rep.nonzero.emplace_back(r, p - i, q + i, rk);
      }
    }
  }
  const int k = p + q;
  const Matrix& d = total_d(k);
  const Subspace lhs = intersect(filtration(k + 1, p + 1), image(d));
  const Subspace rhs = image_of(d, filtration(k, p + 1));
  rep.filtration_identity = lhs == rhs;
  if (rep.differentials_vanish != rep.filtration_identity) {
    throw Error(ErrorCode::EquivalenceViolation,
                "filtration conditions disagree at (" + to_string(Bidegree{p, q}) + ")");
  }
  rep.verdict = rep.filtration_identity;
  return rep;
}

// ---------------------------------------------------------------------------
// other cohomologies

std::size_t SpectralSequence::de_rham(int k) const {
  return kernel(total_d(k)).dim() - rank_of(total_d(k - 1));
}

Quotient SpectralSequence::dolbeault(int p, int q) const {
  return Quotient(kernel(model_.delbar_matrix({p, q})), image(model_.delbar_matrix({p, q - 1})));
}

Quotient SpectralSequence::bott_chern(int p, int q) const {
  const Subspace closed = intersect(kernel(model_.del_matrix({p, q})), kernel(model_.delbar_matrix({p, q})));
  const Matrix ddbar = model_.del_matrix({p - 1, q}) * model_.delbar_matrix({p - 1, q - 1});
  return Quotient(closed, image(ddbar));
}

Quotient SpectralSequence::aeppli(int p, int q) const {
  const Matrix ddbar = model_.del_matrix({p, q + 1}) * model_.delbar_matrix({p, q});
  const Subspace exact = sum(image(model_.del_matrix({p - 1, q})), image(model_.delbar_matrix({p, q - 1})));
  return Quotient(kernel(ddbar), exact);
}

PopoviciMaps SpectralSequence::popovici() const {
  const int n = model_.n();
  PopoviciMaps out;
  auto build = [&](const Quotient& source, const Quotient& target, Bidegree from, const char* label) {
    Matrix m(target.dim(), source.dim());
    const Matrix& del = model_.del_matrix(from);
    const auto reps = source.representatives();
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const Vector coords = target.class_of(del.apply(reps[k]));
      for (std::size_t row = 0; row < coords.size(); ++row) m(row, k) = coords[row];
    }
    if (options_.verify) {
      for (const auto& v : source.denominator().basis_vectors()) {
        if (!target.is_trivial_class(del.apply(v))) {
          throw Error(ErrorCode::EquivalenceViolation, std::string(label) + " depends on the representative");
        }
      }
    }
    return m;
  };
  if (model_.in_range({n - 1, 1})) {
    out.a1 = build(dolbeault(n - 1, 1), bott_chern(n, 1), {n - 1, 1}, "A1");
  }
  if (model_.in_range({n - 2, 2})) {
    out.a2 = build(aeppli(n - 2, 2), bott_chern(n - 1, 2), {n - 2, 2}, "A2");
  }
  return out;
}

KodairaPredicates SpectralSequence::kodaira_predicates(int p) const {
  KodairaPredicates out;
  out.p = p;
  for (int a = 0; a <= model_.n(); ++a) {
    for (int b = 0; b <= model_.m(); ++b) {
      const Subspace lhs = intersect(kernel(model_.delbar_matrix({a, b})), image(model_.del_matrix({a - 1, b})));
      const Matrix ddbar = model_.del_matrix({a - 1, b}) * model_.delbar_matrix({a - 1, b - 1});
      const bool ok = lhs == image(ddbar);
      out.del_exact_acyclic[{a, b}] = ok;
      if (!ok) out.acyclic = false;
    }
  }
  for (int q = -p; q <= model_.n() + model_.m() - p; ++q) {
    const int k = p + q;
    const Matrix& d = total_d(k);
    const Subspace target = filtration(k + 1, p + 1);
    const Subspace rhs = image_of(d, filtration(k, p + 1));
    out.injective_to_previous[q] = intersect(target, image_of(d, filtration(k, p))) == rhs;
    out.injective_to_total[q] = intersect(target, image(d)) == rhs;
  }
  return out;
}

// ---------------------------------------------------------------------------
// free functions

PageEntry page(const Model& model, int r, int p, int q) { return *SpectralSequence(model).page(r, p, q); }
std::size_t page_oracle(const Model& model, int r, int p, int q) {
  return SpectralSequence(model).oracle_dim(r, p, q);
}
Matrix differential(const Model& model, int r, int p, int q) {
  return SpectralSequence(model).differential(r, p, q);
}
DegenerationReport degeneration(const Model& model, int p, int q) {
  return SpectralSequence(model).degeneration(p, q);
}
FiltrationReport filtration_condition(const Model& model, int p, int q) {
  return SpectralSequence(model).filtration_condition(p, q);
}
std::size_t de_rham(const Model& model, int k) { return SpectralSequence(model).de_rham(k); }
Quotient bott_chern(const Model& model, int p, int q) { return SpectralSequence(model).bott_chern(p, q); }
Quotient aeppli(const Model& model, int p, int q) { return SpectralSequence(model).aeppli(p, q); }
PopoviciMaps popovici_maps(const Model& model) { return SpectralSequence(model).popovici(); }
KodairaPredicates kodaira_predicates(const Model& model, int p) {
  return SpectralSequence(model).kodaira_predicates(p);
}

}  // namespace spectradef
