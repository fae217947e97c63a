#include <random>

#include "doctest.h"
#include "support.hpp"
#include "spectradef/builtins.hpp"
#include "spectradef/error.hpp"
#include "spectradef/obstruction.hpp"

using namespace spectradef;

namespace {

Form mono(const Model& m, std::vector<std::string> names) { return Form::monomial(m.monomial_from_names(names)); }

// A frame that is not holomorphic and a canonical bundle that is not trivial.
Model twisted_model() {
  ModelSpec s;
  s.name = "twisted";
  s.holo_generators = {"x"};
  s.antiholo_generators = {"y"};
  s.d_rules["x"] = {{Scalar(1), {"x", "y"}}};
  return build_model(s);
}

// Matrix sending vector-path domain classes to Omega-path domain classes.
Matrix path_change(const Model& m, const ContractionMap& vec, const ContractionMap& omega) {
  const int n = m.n();
  const Quotient h(kernel(m.delbar_matrix({n - 1, 2})), image(m.delbar_matrix({n - 1, 1})));
  Matrix t(omega.domain_classes.size(), vec.domain_classes.size());
  for (std::size_t k = 0; k < vec.domain_classes.size(); ++k) {
    const Form beta = m.contract(vec.domain_classes[k], omega_form(m));
    const Vector c = h.class_of(m.to_vector(beta, {n - 1, 2}));
    for (std::size_t i = 0; i < c.size(); ++i) t(i, k) = c[i];
  }
  return t;
}

}  // namespace

TEST_CASE("omega form") {
  const Model iw = iwasawa();
  const Form omega = omega_form(iw);
  CHECK(omega == mono(iw, {"phi1", "phi2", "phi3"}));
  CHECK(iw.d(omega).is_zero());
  const Model na = nakamura(1);
  CHECK(omega_form(na) == mono(na, {"phi1", "phi2", "phi3"}));
  CHECK(na.delbar(omega_form(na)).is_zero());
  CHECK(abelian(2).d(omega_form(abelian(2))).is_zero());
  CHECK_THROWS_AS(omega_form(twisted_model()), Error);
}

TEST_CASE("omega inverse") {
  const Model iw = iwasawa();
  const Form omega = omega_form(iw);
  CHECK(omega_inverse(iw, Form()).is_zero());
  for (int a = 0; a < 3; ++a) {
    const VectorForm sigma = omega_inverse(iw, iw.contract(a, omega));
    CHECK(sigma == VectorForm::decomposable(3, Form::one(), a));
  }
  std::mt19937 rng(5);
  for (int q = 0; q <= 3; ++q) {
    for (int t = 0; t < 5; ++t) {
      const Form beta = testsupport::random_form(rng, iw, {2, q});
      CHECK(iw.contract(omega_inverse(iw, beta), omega) == beta);
    }
  }
  const Model na = nakamura(1);
  const VectorForm sigma = omega_inverse(na, mono(na, {"phi1", "phi2", "phit1", "phit2"}));
  const VectorForm expected = VectorForm::decomposable(3, mono(na, {"phit1", "phit2"}), 2);
  CHECK((sigma == expected || sigma == -expected));
  CHECK_THROWS_AS(omega_inverse(na, mono(na, {"phi1", "phi2", "phi3"})), Error);
}

TEST_CASE("Nakamura contraction map") {
  const Model na = nakamura(1);
  const ContractionMap m = mu(na, 3, 1, MuDomain::Automatic, true);
  CHECK(m.domain == MuDomain::OmegaRepresented);
  REQUIRE(m.domain_classes.size() == 5);
  REQUIRE(m.source_classes == std::vector<Form>{mono(na, {"phi1", "phi2", "phi3", "phit3"})});
  REQUIRE(m.target_classes == std::vector<Form>{mono(na, {"phi1", "phi2", "phit1", "phit2", "phit3"})});
  CHECK(m.kernel.dim() == 4);
  const Form special = mono(na, {"phi1", "phi2", "phit1", "phit2"});
  for (std::size_t k = 0; k < 5; ++k) {
    const bool in_kernel = m.matrices[k].is_zero();
    CHECK(in_kernel == !(m.omega_images[k] == special));
    CHECK(m.kernel.contains(testsupport::unit_vector(5, k)) == in_kernel);
  }
  CHECK_FALSE(in_ker_mu(na, 3, 1, omega_inverse(na, special)));
  CHECK(in_ker_mu(na, 3, 1, omega_inverse(na, mono(na, {"phi1", "phi3", "phit1", "phit3"}))));
  CHECK(in_ker_mu(na, 3, 1, na.zero_vector()));
}

TEST_CASE("contraction map paths agree") {
  for (const Model& m : {iwasawa(), nakamura(1), abelian(3)}) {
    for (int p = 0; p <= m.n(); ++p) {
      for (int q = 0; q <= m.m(); ++q) {
        const ContractionMap vec = mu(m, p, q, MuDomain::VectorDolbeault, true);
        const ContractionMap omega = mu(m, p, q, MuDomain::OmegaRepresented, true);
        REQUIRE(vec.domain_classes.size() == omega.domain_classes.size());
        const Matrix t = path_change(m, vec, omega);
        CHECK(reduce(t).rank == t.cols());
        CHECK(image_of(t, vec.kernel) == omega.kernel);
      }
    }
    CHECK(mu(m, m.n(), 0).kernel.dim() == 0);
  }
}

TEST_CASE("contraction map availability") {
  const Model tw = twisted_model();
  CHECK_FALSE(mu_available(tw));
  CHECK_THROWS_AS(mu(tw, 1, 0), Error);
  try {
    mu(tw, 1, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoDomainPath);
  }
}

TEST_CASE("refined Kodaira hypotheses") {
  const KodairaReport na = check_refined_kodaira(nakamura(1), 3, 1);
  CHECK(na.all_hold);
  REQUIRE(na.kernel.has_value());
  CHECK(na.kernel->dim() == 4);
  const KodairaReport iw = check_refined_kodaira(iwasawa(), 1, 1);
  CHECK_FALSE(iw.all_hold);
  CHECK_FALSE(iw.hypotheses[0].holds);
  CHECK_FALSE(iw.hypotheses[0].evidence.empty());
  for (int p = 0; p <= 2; ++p) {
    for (int q = 0; q <= 2; ++q) CHECK(check_refined_kodaira(abelian(2), p, q).all_hold);
  }
}

TEST_CASE("Calabi-Yau criterion") {
  CHECK(check_cy(abelian(2)).verdict == CYVerdict::Unobstructed);
  CHECK(check_cy(abelian(3)).verdict == CYVerdict::Unobstructed);
  const CYReport na = check_cy(nakamura(1));
  CHECK(na.verdict == CYVerdict::Inconclusive);
  CHECK_FALSE((na.flags[4].holds && na.flags[5].holds));
  const CYReport iw = check_cy(iwasawa());
  CHECK(iw.verdict == CYVerdict::Inconclusive);
  CHECK_FALSE(iw.flags[5].holds);
  CHECK(check_cy(twisted_model()).verdict == CYVerdict::Inconclusive);
}
