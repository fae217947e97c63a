#include "spectradef/builtins.hpp"

#include <bit>

#include "spectradef/error.hpp"

namespace spectradef {

namespace {

std::vector<std::string> numbered(const std::string& stem, int count) {
  std::vector<std::string> out;
  for (int a = 1; a <= count; ++a) out.push_back(stem + std::to_string(a));
  return out;
}

}  // namespace

ModelSpec iwasawa_spec() {
  ModelSpec s;
  s.name = "iwasawa";
  s.holo_generators = numbered("phi", 3);
  s.antiholo_generators = numbered("phibar", 3);
  s.d_rules["phi3"] = {{Scalar(-1), {"phi1", "phi2"}}};
  s.d_rules["phibar3"] = {{Scalar(-1), {"phibar1", "phibar2"}}};
  return s;
}

ModelSpec nakamura_spec(long k) {
  if (k == 0) throw Error(ErrorCode::InvalidSpec, "nakamura: k must be nonzero");
  const Scalar c(0, Rational(1, 2 * k));  // C = i/(2k)
  const Scalar lambda = c + c.conj() - Scalar(0, 2);

  ModelSpec s;
  s.name = "nakamura-k" + std::to_string(k);
  s.holo_generators = numbered("phi", 3);
  s.antiholo_generators = numbered("phit", 3);
  s.d_rules["phi1"] = {{-lambda, {"phi1", "phi3"}}};
  s.d_rules["phi2"] = {{lambda, {"phi2", "phi3"}}};
  s.d_rules["phit1"] = {{lambda, {"phi3", "phit1"}}};
  s.d_rules["phit2"] = {{-lambda, {"phi3", "phit2"}}};

  // The coefficients of phi1, phi2, phit1, phit2 pick up a sign under the
  // lattice generator in the z3 direction, so an invariant monomial must use
  // an even number of them.
  std::map<Bidegree, std::vector<std::vector<std::string>>> basis;
  for (std::uint32_t holo = 0; holo < 8; ++holo) {
    for (std::uint32_t anti = 0; anti < 8; ++anti) {
      if (std::popcount((holo & 3u) | ((anti & 3u) << 2)) % 2 != 0) continue;
      std::vector<std::string> names;
      for (int a = 0; a < 3; ++a) {
        if ((holo >> a) & 1u) names.push_back(s.holo_generators[static_cast<std::size_t>(a)]);
      }
      for (int a = 0; a < 3; ++a) {
        if ((anti >> a) & 1u) names.push_back(s.antiholo_generators[static_cast<std::size_t>(a)]);
      }
      basis[{std::popcount(holo), std::popcount(anti)}].push_back(std::move(names));
    }
  }
  s.admissible_basis = std::move(basis);
  s.notes["basis_notes"] =
      "Invariant monomials: an even number of factors from {phi1, phi2, phit1, phit2}. "
      "Bidegrees (1,0), (0,1), (1,1), (2,1), (3,1), (2,2), (1,3), (2,3) are checked against "
      "published Dolbeault generators; the remaining bidegrees follow the same parity rule.";
  return s;
}

ModelSpec abelian_spec(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidSpec, "abelian: n must be non-negative");
  ModelSpec s;
  s.name = "abelian-" + std::to_string(n);
  s.holo_generators = numbered("phi", n);
  s.antiholo_generators = numbered("phibar", n);
  return s;
}

Model iwasawa() { return build_model(iwasawa_spec()); }
Model nakamura(long k) { return build_model(nakamura_spec(k)); }
Model abelian(int n) { return build_model(abelian_spec(n)); }

}  // namespace spectradef
