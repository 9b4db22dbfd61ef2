#include <doctest.h>

#include "diffelim/diffsys.hpp"
#include "diffelim/error.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace diffelim;
using oracle::sym;

TEST_CASE("operator arithmetic and application") {
  Polynomial a = sym("a");
  DiffOperator L({{0, a}, {2, Polynomial(3)}});
  CHECK(L.ldeg() == 0);
  CHECK(L.deg() == 2);
  CHECK(L.apply("u") == a * sym("u") + 3 * sym("u", 2));
  CHECK((L - L).is_zero());
  CHECK(DiffOperator().deg() == -1);

  // d(L(u)) = a' u + a u' + 3 u'''
  DiffOperator D = L.derived();
  CHECK(D.apply("u") == derive(L.apply("u")));
  CHECK(D.coeff(1) == a);
  CHECK(L.shifted(1).apply("u") == a * sym("u", 1) + 3 * sym("u", 3));
  CHECK_THROWS_AS(L.shifted(-1), Error);

  Polynomial h = sym("t") * sym("t");
  CHECK(L.apply(h) == a * h + 3 * derive(h, 2));
}

TEST_CASE("derivation of linear polynomials agrees with expansion") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    LinearSystem P = gen::random_system(rng, 3, 4, 0.6, true);
    for (const auto& f : P.polys()) {
      for (int t = 0; t <= 2; ++t) {
        CHECK(derive_lin(f, t).expand(P.param_names()) == derive(f.expand(P.param_names()), t));
      }
      CHECK(derive_lin(f).order() == f.order() + 1);
    }
  }
}

TEST_CASE("system accessors and validation") {
  LinearSystem P = fixture::system("dfres1.sys");
  CHECK(P.size() == 4);
  CHECK(P.param_count() == 3);
  CHECK(P.orders() == std::vector<int>{2, 0, 2, 2});
  CHECK(P.total_order() == 6);
  CHECK(P.poly_names() == std::vector<std::string>{"F1", "F2", "F3", "F4"});
  CHECK(nu(P) == 3);
  CHECK(validate(P).ok());

  // a repeated equation, a homogeneous system and an unused parameter
  DiffOperator id = DiffOperator::term(0, Polynomial(1));
  LinearDiffPoly g(Polynomial(), {{1, id}});
  LinearSystem Q({g, g, LinearDiffPoly(Polynomial(), {})}, 2);
  ValidationReport r = validate(Q);
  CHECK_FALSE(r.ok());
  CHECK(r.positive_order.offenders == std::vector<int>{3});
  CHECK(r.distinct.offenders == std::vector<int>{1, 2});
  CHECK_FALSE(r.nonhomogeneous.pass);
  CHECK(r.all_params.offenders == std::vector<int>{2});
  CHECK(r.nu == 1);

  CHECK_THROWS_AS(LinearSystem({LinearDiffPoly(Polynomial(), {{3, id}})}, 2), Error);
}

TEST_CASE("gamma profile") {
  GammaProfile g = gamma_profile(fixture::system("motivation.sys"));
  CHECK(g.orders == std::vector<int>{2, 3, 2});
  CHECK(g.N == 7);
  CHECK(g.lower == std::vector<int>{0, 1});
  CHECK(g.upper == std::vector<int>{1, 0});
  CHECK(g.gamma == std::vector<int>{1, 1});
  CHECK(g.total == 2);
  CHECK(g.intervals.at({2, 2}) == std::pair{1, 3});
  CHECK(g.intervals.at({1, 1}) == std::pair{0, 1});
  CHECK(g.intervals.count({2, 1}) == 0);

  GammaProfile h = gamma_profile(fixture::system("dfres1.sys"));
  CHECK(h.N == 6);
  CHECK(h.gamma == std::vector<int>{0, 1, 0});
  CHECK(h.total == 1);

  DiffOperator id = DiffOperator::term(0, Polynomial(1));
  LinearSystem Q({LinearDiffPoly(Polynomial(1), {{1, id}}), LinearDiffPoly(Polynomial(2), {{1, id}})}, 2);
  CHECK_THROWS_AS(gamma_profile(Q), Error);
}

TEST_CASE("gamma bounds every operator interval") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    LinearSystem P = gen::random_system(rng, 2 + trial % 3, 4);
    GammaProfile g = gamma_profile(P);
    for (const auto& [ij, iv] : g.intervals) {
      const DiffOperator& L = P.poly(ij.first).op(ij.second);
      CHECK(iv.first <= L.ldeg());
      CHECK(L.deg() <= iv.second);
    }
    for (int j = 0; j < P.param_count(); ++j) CHECK(g.gamma[j] >= 0);
  }
}

TEST_CASE("specialization and shifting") {
  LinearSystem P = fixture::system("generic3.sys");
  Polynomial x = sym("x");
  LinearSystem S = specialize(P, {{"c_1_1_0", Polynomial(2)}, {"c2", x * x}});
  CHECK(S.poly(1).op(1).coeff(0) == Polynomial(2));
  CHECK(S.poly(2).free_term() == x * x);
  CHECK(specialize(sym("c2", 2), {{"c2", x * x}}) == derive(x * x, 2));
  CHECK_THROWS_AS(specialize(P, {{"c2", x}, {"c2", x}}), Error);

  LinearSystem T = shift_params(P, {0, 1});
  CHECK(T.poly(1).op(2).coeff(0) == P.poly(1).op(2).coeff(1));
  CHECK_THROWS_AS(shift_params(P, {1, 0}), Error);
  CHECK_THROWS_AS(shift_params(P, {1}), Error);
}

TEST_CASE("restriction renumbers parameters") {
  LinearSystem P = fixture::system("pattern2.sys");
  CHECK(P.active_params({3, 4}) == std::vector<int>{2});
  LinearSystem Q = P.restrict_to({3, 4});
  CHECK(Q.size() == 2);
  CHECK(Q.param_count() == 1);
  CHECK(Q.param_names() == std::vector<std::string>{"u2"});
  CHECK(Q.poly_names() == std::vector<std::string>{"f3", "f4"});
  CHECK(Q.poly(2).op(1).coeff(1) == Polynomial(2));
}
