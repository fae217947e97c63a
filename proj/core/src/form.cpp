#include "spectradef/form.hpp"

#include <stdexcept>

namespace spectradef {

std::string to_string(Bidegree b) { return std::to_string(b.p) + "," + std::to_string(b.q); }

namespace {

std::vector<int> indices_of(std::uint32_t bits) {
  std::vector<int> out;
  while (bits != 0) {
    out.push_back(std::countr_zero(bits));
    bits &= bits - 1;
  }
  return out;
}

// Lexicographic comparison of the sorted index lists of two equal-size sets.
bool lex_less(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = a ^ b;
  if (diff == 0) return false;
  const std::uint32_t lowest = diff & (~diff + 1);
  return (a & lowest) != 0;
}

}  // namespace

std::vector<int> Monomial::holo_indices() const { return indices_of(holo_bits()); }
std::vector<int> Monomial::anti_indices() const { return indices_of(anti_bits()); }

bool MonomialOrder::operator()(Monomial a, Monomial b) const noexcept {
  if (a.bits == b.bits) return false;
  const Bidegree ba = a.bidegree();
  const Bidegree bb = b.bidegree();
  if (ba != bb) return ba < bb;
  if (a.holo_bits() != b.holo_bits()) return lex_less(a.holo_bits(), b.holo_bits());
  return lex_less(a.anti_bits(), b.anti_bits());
}

std::optional<std::pair<int, Monomial>> multiply(Monomial a, Monomial b) {
  if ((a.bits & b.bits) != 0) return std::nullopt;
  // Each pair (i in a, j in b) with i > j costs one transposition.
  int swaps = 0;
  std::uint32_t rest = b.bits;
  while (rest != 0) {
    const int j = std::countr_zero(rest);
    rest &= rest - 1;
    swaps += std::popcount(j >= 31 ? 0u : (a.bits >> (j + 1)));
  }
  return std::make_pair((swaps % 2 == 0) ? 1 : -1, Monomial{a.bits | b.bits});
}

std::optional<std::pair<int, Monomial>> contract_monomial(int index, Monomial m) {
  if (!m.has_holo(index)) return std::nullopt;
  const std::uint32_t below = m.bits & ((std::uint32_t{1} << index) - 1);
  const int sign = (std::popcount(below) % 2 == 0) ? 1 : -1;
  return std::make_pair(sign, Monomial{m.bits & ~(std::uint32_t{1} << index)});
}

// ---------------------------------------------------------------------------

Form Form::monomial(Monomial m, const Scalar& coeff) {
  Form f;
  f.add(m, coeff);
  return f;
}

Scalar Form::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void Form::add(Monomial m, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

Form Form::component(Bidegree b) const {
  Form out;
  for (const auto& [m, c] : terms_) {
    if (m.bidegree() == b) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

Form Form::holo_degree_at_least(int p) const {
  Form out;
  for (const auto& [m, c] : terms_) {
    if (m.p() >= p) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

Form Form::holo_degree_at_most(int p) const {
  Form out;
  for (const auto& [m, c] : terms_) {
    if (m.p() <= p) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

std::set<Bidegree> Form::bidegrees() const {
  std::set<Bidegree> out;
  for (const auto& [m, c] : terms_) out.insert(m.bidegree());
  return out;
}

std::optional<Bidegree> Form::bidegree() const {
  auto all = bidegrees();
  if (all.size() != 1) return std::nullopt;
  return *all.begin();
}

Form& Form::operator+=(const Form& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

Form& Form::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

// ---------------------------------------------------------------------------

VectorForm VectorForm::decomposable(std::size_t frame_size, Form coeff, int frame_index) {
  VectorForm v(frame_size);
  v.components_.at(static_cast<std::size_t>(frame_index)) = std::move(coeff);
  return v;
}

bool VectorForm::is_zero() const {
  for (const auto& c : components_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::optional<int> VectorForm::degree() const {
  std::optional<int> k;
  for (const auto& c : components_) {
    for (const auto& [m, coeff] : c.terms()) {
      if (m.p() != 0) throw std::invalid_argument("vector-valued form has a coefficient with holomorphic degree");
      if (k && *k != m.q()) throw std::invalid_argument("vector-valued form mixes coefficient degrees");
      k = m.q();
    }
  }
  return k;
}

VectorForm& VectorForm::operator+=(const VectorForm& o) {
  if (components_.empty()) components_.resize(o.frame_size());
  if (o.frame_size() != frame_size()) throw std::invalid_argument("frame size mismatch");
  for (std::size_t a = 0; a < components_.size(); ++a) components_[a] += o.components_[a];
  return *this;
}

VectorForm& VectorForm::operator-=(const VectorForm& o) {
  if (components_.empty()) components_.resize(o.frame_size());
  if (o.frame_size() != frame_size()) throw std::invalid_argument("frame size mismatch");
  for (std::size_t a = 0; a < components_.size(); ++a) components_[a] -= o.components_[a];
  return *this;
}

VectorForm& VectorForm::operator*=(const Scalar& s) {
  for (auto& c : components_) c *= s;
  return *this;
}

bool operator==(const VectorForm& a, const VectorForm& b) {
  const std::size_t n = std::max(a.frame_size(), b.frame_size());
  for (std::size_t k = 0; k < n; ++k) {
    const Form empty;
    const Form& fa = k < a.frame_size() ? a.component(k) : empty;
    const Form& fb = k < b.frame_size() ? b.component(k) : empty;
    if (!(fa == fb)) return false;
  }
  return true;
}

}  // namespace spectradef
