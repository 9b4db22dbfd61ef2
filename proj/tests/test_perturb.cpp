#include <doctest.h>

#include "diffelim/error.hpp"
#include "diffelim/perturb.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace diffelim;
using oracle::sym;

namespace {

OreOperator ore(std::vector<int> c) {
  std::vector<Fraction> f;
  for (int x : c) f.emplace_back(x);
  return OreOperator(std::move(f));
}

Polynomial pvar() { return Polynomial(Symbol::constant("p")); }

std::vector<std::string> cs(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("c" + std::to_string(i));
  return v;
}

Perturbation custom_of(const cli::SystemDocument& doc) {
  Perturbation eps;
  for (const auto& eq : doc.equations) {
    LinearDiffPoly e;
    for (const auto& pe : doc.perturbations) {
      if (pe.name == eq.name) e = cli::to_linear(pe.expr, doc.params);
    }
    eps.terms.push_back(e);
  }
  return eps;
}

}  // namespace

TEST_CASE("Ore multiplication and left division") {
  Fraction t(sym("t"));
  OreOperator a = OreOperator::constant(t);
  // d * t = t d + t'
  CHECK(OreOperator::d() * a == OreOperator({Fraction(sym("t", 1)), t}));
  CHECK((a * OreOperator::d()).coeffs().size() == 2);

  std::mt19937_64 rng(1);
  std::vector<Polynomial> vars{sym("t")};
  auto random_op = [&](int deg) {
    std::vector<Fraction> c;
    for (int k = 0; k < deg; ++k) c.emplace_back(oracle::random_poly(rng, vars, 2, 1));
    c.emplace_back(Polynomial(1) + static_cast<int>(rng() % 3));
    return OreOperator(std::move(c));
  };
  Polynomial h = sym("t") * sym("t", 1) + sym("t", 2);
  for (int trial = 0; trial < 40; ++trial) {
    OreOperator A = random_op(static_cast<int>(rng() % 3)), B = random_op(1 + static_cast<int>(rng() % 2));
    LeftDivision q = left_divide(A, B);
    CHECK(q.remainder.degree() < B.degree());
    CHECK(B * q.quotient + q.remainder == A);
    OreOperator C = random_op(1);
    CHECK((A * B) * C == A * (B * C));
    // composition agrees with application
    Fraction Bh = B.apply(h);
    REQUIRE(Bh.den() == Polynomial(1));
    CHECK((A * B).apply(h) == A.apply(Bh.num()));
  }
  CHECK_THROWS_AS(left_divide(ore({1}), OreOperator()), Error);
}

TEST_CASE("greatest common left divisor") {
  OreOperator L = ore({-1, 0, 1});  // d^2 - 1
  OreOperator A = ore({-1, -1}), B = ore({3, 1});
  CHECK(gcld({L * A, L * B}) == L);
  CHECK(gcld({L * A}) == (L * A).monic());
  CHECK(gcld({L, L}) == L);
  CHECK(gcld({ore({2, 0, 2}), OreOperator()}) == ore({1, 0, 1}));
  CHECK(gcld({ore({1, 1}), ore({1, 2})}).degree() == 0);
  CHECK_THROWS_AS(gcld({}), Error);

  // symbolic coefficients: the gcld divides both inputs on the left
  std::mt19937_64 rng(2);
  std::vector<Polynomial> vars{sym("t")};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Fraction> g{Fraction(oracle::random_poly(rng, vars, 2, 2)), Fraction(1)};
    OreOperator G(g);
    OreOperator X = G * ore({static_cast<int>(rng() % 5) - 2, 1}), Y = G * ore({static_cast<int>(rng() % 3) + 3, 0, 1});
    OreOperator d = gcld({X, Y});
    CHECK(d.degree() >= 1);
    CHECK(left_divide(X, d).remainder.is_zero());
    CHECK(left_divide(Y, d).remainder.is_zero());
    CHECK(d.leading() == Fraction(1));
  }
}

TEST_CASE("decomposition into operators") {
  Polynomial A = dfres(fixture::system("dfres1.sys"));
  OperatorDecomposition dec = decompose_linear(A, cs(4));
  CHECK(dec.reassemble() == A);
  int s = dec.ops[0].coeff(3) == Fraction(64) ? 1 : -1;
  CHECK(dec.ops[0] == ore({-64 * s, -64 * s, 64 * s, 64 * s}));
  CHECK(dec.ops[1] == ore({-128 * s, 0, 0, 256 * s, -128 * s}));
  CHECK(dec.ops[2] == ore({192 * s, 64 * s, -192 * s, -320 * s}));
  CHECK(dec.ops[3] == ore({128 * s, 0, 128 * s}));
  CHECK(gcld(dec.ops).degree() == 0);
  CHECK(decompose_linear(sym("c1"), cs(2)).ops[0] == ore({1}));
  CHECK(decompose_linear(sym("c1"), cs(2)).ops[1].is_zero());
  CHECK_THROWS_AS(decompose_linear(sym("c1") * sym("c2"), cs(2)), Error);
  CHECK_THROWS_AS(decompose_linear(sym("c1") + 1, cs(2)), Error);

  std::mt19937_64 rng(3);
  std::vector<Polynomial> basis{sym("c1"), sym("c1", 2), sym("c2", 1), sym("c3")};
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial B;
    for (const auto& b : basis) B += oracle::random_poly(rng, {sym("a"), oracle::constant_sym("k")}, 2, 2) * b;
    CHECK(decompose_linear(B, cs(3)).reassemble() == B);
  }
}

TEST_CASE("perturbation constructors") {
  Perturbation phi = phi_perturbation({0}, {1, 1}, 2);
  REQUIRE(phi.terms.size() == 2);
  CHECK(phi.terms[0].op(1) == DiffOperator::term(1, Polynomial(1)));
  CHECK(phi.terms[1].op(1) == DiffOperator::term(0, Polynomial(1)));
  Perturbation phi3 = phi_perturbation({1, 0}, {1, 2, 2}, 3);
  CHECK(phi3.terms[0].op(2) == DiffOperator::term(1, Polynomial(1)));
  CHECK(phi3.terms[1].op(1) == DiffOperator::term(1, Polynomial(1)));
  CHECK(phi3.terms[1].op(2) == DiffOperator::term(0, Polynomial(1)));
  CHECK(phi3.terms[2].op(1) == DiffOperator::term(0, Polynomial(1)));
  CHECK_THROWS_AS(phi_perturbation({2}, {1, 1}, 2), Error);
  CHECK_THROWS_AS(phi_perturbation({0}, {2, 1}, 2), Error);

  // orders (2,0,2,2) sort to F2, F1, F3, F4; the least matching without F4 is
  // F2 -> u1, F1 -> u2, F3 -> u3
  LinearSystem P = fixture::system("dfres3.sys");
  Perturbation eps = default_perturbation(P);
  CHECK(eps.terms[1].expand(P.param_names()) == sym("u1"));
  CHECK(eps.terms[0].expand(P.param_names()) == sym("u2", 1) + sym("u1"));
  CHECK(eps.terms[2].expand(P.param_names()) == sym("u3", 2) + sym("u2"));
  CHECK(eps.terms[3].expand(P.param_names()) == sym("u3"));
  CHECK_THROWS_AS(default_perturbation(fixture::system("notsupess.sys")), Error);

  // n = 2: (u_{1, o_1 - upper}, u_{1, lower})
  LinearSystem two({LinearDiffPoly(sym("c1"), {{1, DiffOperator({{1, Polynomial(1)}, {2, Polynomial(1)}})}}),
                    LinearDiffPoly(sym("c2"), {{1, DiffOperator({{1, Polynomial(1)}, {3, Polynomial(1)}})}})},
                   1);
  Perturbation e2 = default_perturbation(two);
  CHECK(e2.terms[0].expand({"u1"}) == sym("u1", 2));
  CHECK(e2.terms[1].expand({"u1"}) == sym("u1", 1));
}

TEST_CASE("perturbing a system") {
  LinearSystem P = fixture::system("dfres1.sys");
  Perturbation zero{std::vector<LinearDiffPoly>(4)};
  CHECK(perturb_system(P, zero) == P);
  Perturbation eps = default_perturbation(P);
  LinearSystem Pe = perturb_system(P, eps);
  CHECK(specialize(Pe, {}) == Pe);
  // p -> 0
  std::vector<LinearDiffPoly> back;
  for (const auto& f : Pe.polys()) {
    std::map<int, DiffOperator> ops;
    for (const auto& [j, L] : f.ops()) {
      ops.emplace(j, L.map_coeffs([](const Polynomial& a) {
        return a.substitute([](Symbol s) -> std::optional<Polynomial> {
          if (s.is_constant() && s.name() == "p") return Polynomial();
          return std::nullopt;
        });
      }));
    }
    back.emplace_back(f.free_term(), ops);
  }
  CHECK(LinearSystem(back, 3) == P);
  CHECK(Pe.poly(2).expand(Pe.param_names()) == P.poly(2).expand(P.param_names()) - pvar() * eps.terms[1].expand(P.param_names()));

  LinearSystem clash({LinearDiffPoly(oracle::constant_sym("p"), {{1, DiffOperator::term(0, Polynomial(1))}}),
                      LinearDiffPoly(sym("c2"), {{1, DiffOperator::term(1, Polynomial(1))}})},
                     1);
  CHECK_THROWS_AS(perturb_system(clash, default_perturbation(clash)), Error);
  CHECK_THROWS_AS(perturb_system(P, Perturbation{}), Error);
}

TEST_CASE("lowest coefficient in p") {
  LowestCoefficient a = lowest_p_coefficient(pvar() * pvar() * pvar() * sym("c1"));
  CHECK(a.degree == 3);
  CHECK(a.coefficient == sym("c1"));
  LowestCoefficient b = lowest_p_coefficient(sym("c1") + sym("c2", 1));
  CHECK(b.degree == 0);
  CHECK(b.coefficient == sym("c1") + sym("c2", 1));
  CHECK(lowest_p_coefficient(pvar() * sym("c1") + pvar() * pvar()).coefficient == sym("c1"));
  CHECK_THROWS_AS(lowest_p_coefficient(Polynomial()), Error);
}

TEST_CASE("perturbed determinant of the singular four-equation system") {
  cli::SystemDocument doc = fixture::document("dfres3_eps.sys");
  LinearSystem P = cli::to_system(doc);
  REQUIRE(dfres(P).is_zero());
  Perturbation eps = custom_of(doc);
  CHECK(eps.terms[0].expand(P.param_names()) == sym("u3", 2));
  FormulaMatrix m = perturbed_matrix(P, eps);
  CHECK(m.side() == 18);
  Polynomial det = determinant(m);
  LowestCoefficient low = lowest_p_coefficient(det);
  CHECK(low.degree == 2);
  OperatorDecomposition dec = decompose_linear(low.coefficient, cs(4));
  int s = dec.ops[3].coeff(2) == Fraction(48) ? 1 : -1;
  CHECK(dec.ops[0] == ore({24 * s, 24 * s, -24 * s, -24 * s}));
  CHECK(dec.ops[1] == ore({48 * s, 0, 0, 0, -48 * s}));
  CHECK(dec.ops[2] == ore({-72 * s, -24 * s, 72 * s, 24 * s}));
  CHECK(dec.ops[3] == ore({-48 * s, 0, 48 * s}));
  CHECK(gcld(dec.ops) == ore({-1, 0, 1}));
  Polynomial Ae = -sym("c1", 1) - sym("c1") - 2 * sym("c2", 2) - 2 * sym("c2") + sym("c3", 1) + 3 * sym("c3") +
                  2 * sym("c4");
  Polynomial prim = id_primitive_part(low.coefficient, cs(4));
  CHECK((prim == Ae || prim == -Ae));
  CHECK(display_leading_coefficient(prim) > 0);
  CHECK(verify_membership(prim, P));


  // the default perturbation also gives a nonzero determinant of the same size
  Perturbation d = default_perturbation(P);
  FormulaMatrix md = perturbed_matrix(P, d);
  CHECK(md.side() == 18);
  Polynomial dd = determinant(md);
  CHECK_FALSE(dd.is_zero());
  Polynomial out = id_primitive_part(lowest_p_coefficient(dd).coefficient, cs(4));
  CHECK(verify_membership(out, P));
  CHECK((out == Ae || out == -Ae));
}

TEST_CASE("membership by substitution") {
  LinearSystem P = fixture::system("dfres1.sys");
  CHECK(is_dppe_shaped(P));
  CHECK(free_symbols(P) == cs(4));
  CHECK(verify_membership(dfres(P), P));
  CHECK_FALSE(verify_membership(sym("c1"), P));
  CHECK_FALSE(is_dppe_shaped(fixture::system("lotka_volterra.sys")));
  CHECK_THROWS_AS(verify_membership(sym("c1"), fixture::system("lotka_volterra.sys")), Error);
  CHECK(verify_membership(dfres(fixture::system("generic3.sys")), fixture::system("generic3.sys")));
}

TEST_CASE("extraneous factor of the generic system") {
  LinearSystem P = fixture::system("generic3.sys");
  Polynomial det = dfres(P);
  Polynomial content = coefficient_content(det, cs(3));
  CHECK(content == sym("c_2_1_2"));
  Polynomial R = extract_dres(det, cs(3));
  OperatorDecomposition dec = decompose_linear(R, cs(3));
  CHECK(dec.ops[0].degree() == 2);
  CHECK(dec.ops[1].degree() == 0);
  CHECK(dec.ops[2].degree() == 2);
  CHECK(gcld(dec.ops).degree() == 0);
  CHECK(exact_divide(det, R) * R == det);
  std::vector<int> bounds = order_bounds(P);
  CHECK(bounds == std::vector<int>{2, 1, 2});

  // the perturbed route gives the same polynomial up to a scalar
  Polynomial viaP = id_primitive_part(lowest_p_coefficient(perturbed_determinant(P, default_perturbation(P))).coefficient, cs(3));
  CHECK(viaP == R);
}

TEST_CASE("elimination pipeline") {
  EliminationReport a = eliminate(fixture::system("dfres1.sys"));
  CHECK(a.branch == "direct");
  CHECK(a.side == 18);
  CHECK(a.co_order == 0);
  CHECK(a.output == dfres(fixture::system("dfres1.sys")));
  CHECK(a.membership == std::optional<bool>(true));
  CHECK(a.content_operator.degree() == 0);

  EliminationReport b = eliminate(fixture::system("dfres3.sys"));
  CHECK(b.branch == "perturbed");
  CHECK(b.perturbed_side == 18);
  CHECK(b.co_order >= 1);
  CHECK(b.lowest_degree >= 1);
  CHECK(b.membership == std::optional<bool>(true));
  CHECK(b.content_operator == ore({-1, 0, 1}));

  EliminateOptions off;
  off.mode = PerturbMode::Off;
  CHECK(eliminate(fixture::system("dfres3.sys"), off).branch == "zero");

  cli::SystemDocument doc = fixture::document("dfres3_eps.sys");
  EliminateOptions custom;
  custom.mode = PerturbMode::Custom;
  custom.custom = custom_of(doc);
  EliminationReport c = eliminate(cli::to_system(doc), custom);
  CHECK(c.lowest_degree == 2);
  CHECK(c.output == b.output);

  EliminationReport d = eliminate(fixture::system("pattern2.sys"));
  CHECK(d.members == std::vector<int>{3, 4});
  CHECK(d.side == 3);
  CHECK(d.membership == std::optional<bool>(true));
  Polynomial expected = 2 * sym("c3", 1) - sym("c4");
  CHECK((d.output == expected || d.output == -expected));

  EliminationReport e = eliminate(fixture::system("fin_special.sys"));
  CHECK(e.branch == "perturbed");
  CHECK(e.membership == std::optional<bool>(true));

  EliminationReport lv = eliminate(fixture::system("lotka_volterra.sys"));
  CHECK(lv.branch == "direct");
  CHECK_FALSE(lv.membership.has_value());

  EliminateOptions capped;
  capped.exact_limit = 4;
  EliminationReport g = eliminate(fixture::system("dfres1.sys"), capped);
  CHECK(g.branch == "certified");
  CHECK(g.certificate->verdict == Certificate::NonzeroCertified);
}

TEST_CASE("random super essential systems have a nonzero perturbed determinant") {
  std::mt19937_64 rng(31337);
  int seen = 0;
  for (int trial = 0; seen < 100 && trial < 5000; ++trial) {
    int n = 2 + trial % 3;
    LinearSystem P = gen::random_system(rng, n, n == 4 ? 2 : 3, 0.6);
    if (!is_super_essential(P)) continue;
    if (spec_fres(P).side() > 16) continue;
    ++seen;
    Perturbation eps = default_perturbation(P);
    Polynomial det = perturbed_determinant(P, eps);
    CHECK_FALSE(det.is_zero());
    // p -> 0 recovers the unperturbed formula, which is dfres up to sign
    Polynomial at0 = det.substitute([](Symbol s) -> std::optional<Polynomial> {
      if (s.is_constant() && s.name() == "p") return Polynomial();
      return std::nullopt;
    });
    Polynomial base = perturbed_determinant(P, Perturbation{std::vector<LinearDiffPoly>(n)});
    CHECK(at0 == base);
    Polynomial A = dfres(P);
    CHECK((base == A || base == -A));
    Polynomial out = id_primitive_part(lowest_p_coefficient(det).coefficient, cs(n));
    CHECK(verify_membership(out, P));
    if (!A.is_zero()) CHECK(verify_membership(A, P));
  }
  CHECK(seen == 100);
}
