#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "diffelim/error.hpp"
#include "diffelim/formulas.hpp"
#include "diffelim/structure.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace diffelim;
using oracle::sym;

namespace {

// Every row, read back against its column labels, must be the derivative of
// the expanded equation.
bool rows_reproduce_derivatives(const LinearSystem& P, const FormulaMatrix& m) {
  for (std::size_t r = 0; r < m.side(); ++r) {
    Polynomial row = m.entries(r, m.side() - 1);
    for (std::size_t c = 0; c + 1 < m.side(); ++c) {
      row += m.entries(r, c) * Polynomial(P.param_symbol(m.columns[c].j, m.columns[c].k));
    }
    if (!(row == derive(P.poly(m.rows[r].i).expand(P.param_names()), m.rows[r].k))) return false;
  }
  return true;
}

Polynomial entry(const FormulaMatrix& m, const std::string& row, const std::string& col) {
  std::size_t r = 0, c = 0;
  while (r < m.side() && m.row_name(r) != row) ++r;
  while (c < m.side() && m.column_name(c) != col) ++c;
  REQUIRE(r < m.side());
  REQUIRE(c < m.side());
  return m.entries(r, c);
}

}  // namespace

TEST_CASE("FRES spec and matrix layout") {
  LinearSystem P = fixture::system("motivation.sys");
  FormulaSpec s = spec_fres(P);
  CHECK(s.row_bounds == std::vector<int>{3, 2, 3});
  CHECK(s.side() == 11);
  CHECK(s.columns == std::vector<std::pair<int, int>>{{0, 4}, {1, 5}});

  FormulaMatrix m = assemble(P, s);
  std::vector<std::string> rows, cols;
  for (std::size_t r = 0; r < m.side(); ++r) rows.push_back(m.row_name(r));
  for (std::size_t c = 0; c < m.side(); ++c) cols.push_back(m.column_name(c));
  CHECK(rows == std::vector<std::string>{"f1^(3)", "f1''", "f1'", "f1", "f2''", "f2'", "f2", "f3^(3)", "f3''",
                                         "f3'", "f3"});
  CHECK(cols == std::vector<std::string>{"u2^(5)", "u2^(4)", "u1^(4)", "u2^(3)", "u1^(3)", "u2''", "u1''", "u2'",
                                         "u1'", "u1", "1"});
  CHECK(rows_reproduce_derivatives(P, m));

  CHECK(entry(m, "f1^(3)", "u2^(5)") == sym("a_1_2_2"));
  CHECK(entry(m, "f2", "u2^(3)") == sym("a_2_2_3"));
  CHECK(entry(m, "f3^(3)", "1") == sym("a3", 3));
  CHECK(entry(m, "f2''", "u2^(4)") == sym("a_2_2_2") + 2 * sym("a_2_2_3", 1));
  CHECK(entry(m, "f1'", "u1'") == sym("a_1_1_0") + sym("a_1_1_1", 1));
  CHECK(entry(m, "f3^(3)", "u1^(4)") == sym("a_3_1_1"));
  CHECK(entry(m, "f3^(3)", "u2^(3)") == 3 * sym("a_3_2_1", 1) + 3 * sym("a_3_2_2", 2));
  CHECK(zero_columns(m).empty());
}

TEST_CASE("CRES and CF sizes") {
  LinearSystem P = fixture::system("motivation.sys");
  CHECK(gamma_hat(P) == std::vector<int>{1, 0});
  FormulaSpec cres = spec_cres(P);
  CHECK(cres.row_bounds == std::vector<int>{4, 3, 4});
  CHECK(cres.side() == 14);
  CHECK(cres.columns == std::vector<std::pair<int, int>>{{0, 5}, {0, 6}});
  FormulaMatrix mc = assemble(P, cres);
  auto zeros = zero_columns(mc);
  CHECK(std::find(zeros.begin(), zeros.end(), "u2") != zeros.end());
  CHECK(rows_reproduce_derivatives(P, mc));

  FormulaSpec cf = spec_cf(P);
  CHECK(cf.side() == 17);
  CHECK(cf.column_count() == 16);

  LinearSystem Q = fixture::system("dfres1.sys");
  CHECK(spec_fres(Q).row_bounds == std::vector<int>{3, 5, 3, 3});
  CHECK(spec_fres(Q).side() == 18);
  CHECK(spec_cres(Q).side() == 22);
  CHECK(spec_cf(Q).side() == 22);
  CHECK(spec_cf(Q).columns == std::vector<std::pair<int, int>>{{0, 6}, {0, 6}, {0, 6}});

  // smallest case: f1 of order 1, f2 of order 0
  DiffOperator d1 = DiffOperator::term(1, Polynomial(1)), d0 = DiffOperator::term(0, Polynomial(1));
  LinearSystem tiny({LinearDiffPoly(sym("c1"), {{1, d1}}), LinearDiffPoly(sym("c2"), {{1, d0}})}, 1);
  FormulaSpec t = spec_cf(tiny);
  CHECK(t.row_bounds == std::vector<int>{0, 1});
  CHECK(t.side() == 3);
  CHECK(t.columns == std::vector<std::pair<int, int>>{{0, 1}});
  // the determinant eliminates u: c2' - c1
  CHECK(determinant(assemble(tiny, t)) * determinant(assemble(tiny, t)) ==
        (sym("c2", 1) - sym("c1")) * (sym("c2", 1) - sym("c1")));
}

TEST_CASE("general spec conditions") {
  LinearSystem P = fixture::system("motivation.sys");
  GammaProfile g = gamma_profile(P);
  FormulaSpec s = spec_general(P, std::vector<int>(2, 0), P.orders());
  CHECK(s.row_bounds == spec_cf(P).row_bounds);
  CHECK(s.columns == spec_cf(P).columns);
  CHECK(spec_general(P, gamma_hat(P), P.orders()).columns == spec_cres(P).columns);

  auto code_of = [&](const std::vector<int>& beta, const std::vector<int>& omega) {
    try {
      spec_general(P, beta, omega);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of({0, 1}, {2, 3, 2}) == ErrorCode::BetaOmegaViolated);  // u2 operator in f2 has degree 3
  CHECK(code_of({5, 5}, {2, 3, 2}) == ErrorCode::BetaOmegaViolated);
  CHECK_THROWS_AS(spec_general(P, {0}, {2, 3, 2}), Error);

  // the shifted system with beta = upper gamma values carries the FRES determinant
  LinearSystem Q = shift_params(P, g.lower);
  FormulaSpec sg = spec_general(Q, g.gamma, P.orders());
  CHECK(sg.side() == spec_fres(P).side());
}

TEST_CASE("column missing is a hard failure") {
  LinearSystem P = fixture::system("generic3.sys");
  FormulaSpec s = spec_fres(P);
  s.columns[0].second -= 1;
  s.columns[1].second += 1;
  CHECK_THROWS_AS(assemble(P, s), Error);
  s.columns[1].second += 1;
  CHECK_THROWS_AS(assemble(P, s), Error);  // breaks the row/column count
}

TEST_CASE("spec errors") {
  LinearSystem P = fixture::system("notsupess.sys");
  CHECK_NOTHROW(spec_fres(P));
  LinearSystem bad({LinearDiffPoly(sym("c1"), {{1, DiffOperator::term(0, Polynomial(1))}})}, 1);
  CHECK_THROWS_AS(spec_fres(bad), Error);
  // u1 only in f1 with a high lower bound: not super essential and L_1 = -2
  LinearSystem Q({LinearDiffPoly(sym("c1"), {{1, DiffOperator::term(3, Polynomial(1))}}),
                  LinearDiffPoly(sym("c2"), {{2, DiffOperator::term(0, Polynomial(1))}}),
                  LinearDiffPoly(sym("c3"), {{2, DiffOperator::term(1, Polynomial(1))}})},
                 2);
  try {
    spec_fres(Q);
    FAIL("expected NotDefinable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDefinable);
  }
  CHECK(spec_cres(Q).side() == spec_cres(Q).column_count() + 1);
}

TEST_CASE("zero columns of a system that is not super essential") {
  LinearSystem P = fixture::system("notsupess.sys");
  FormulaMatrix m = assemble(P, spec_fres(P));
  CHECK(m.side() == 14);
  CHECK(zero_columns(m) == std::vector<std::string>{"u1^(4)", "u1^(3)"});
  CHECK(assemble(P.restrict_to({2, 3}), spec_fres(P.restrict_to({2, 3}))).side() == 4);
}

TEST_CASE("determinants of the four-equation system") {
  LinearSystem P = fixture::system("dfres1.sys");
  Polynomial A = dfres(P);
  Polynomial expected = 128 * sym("c4") + 192 * sym("c3") + 64 * sym("c3", 1) - 64 * sym("c1", 1) +
                        128 * sym("c4", 2) - 128 * sym("c2", 4) + 64 * sym("c1", 2) - 320 * sym("c3", 3) +
                        64 * sym("c1", 3) + 256 * sym("c2", 3) - 192 * sym("c3", 2) - 64 * sym("c1") -
                        128 * sym("c2");
  CHECK((A == expected || A == -expected));
  FormulaMatrix m = assemble(P, spec_fres(P));
  CHECK(rank_homogeneous(m) == 17);
  CHECK(co_order(m) == 0);
  CHECK(determinant(m, {DetMethod::Bareiss}) == A);
  CHECK(determinant(m, {DetMethod::Laplace}) == A);

  LinearSystem Z = fixture::system("dfres3.sys");
  CHECK(dfres(Z).is_zero());
  FormulaMatrix mz = assemble(Z, spec_fres(Z));
  CHECK(rank_homogeneous(mz) < 17);
  CHECK(co_order(mz) >= 1);

  // the specialization c1 -> x, others -> 0 commutes with the determinant
  std::vector<std::pair<std::string, Polynomial>> a{
      {"c1", sym("x")}, {"c2", Polynomial()}, {"c3", Polynomial()}, {"c4", Polynomial()}};
  Polynomial B = dfres(specialize(P, a));
  Polynomial x = 64 * sym("x", 2) + 64 * sym("x", 3) - 64 * sym("x", 1) - 64 * sym("x");
  CHECK((B == x || B == -x));
  CHECK(B == specialize(A, a));
}

TEST_CASE("rank criterion against the determinant") {
  for (const char* name : {"motivation.sys", "generic3.sys", "dfres1.sys", "dfres3.sys", "fin_special.sys",
                           "pattern2.sys", "notsupess.sys"}) {
    CAPTURE(name);
    LinearSystem P = fixture::system(name);
    FormulaMatrix m = assemble(P, spec_fres(P));
    CHECK(determinant(m).is_zero() == (rank_homogeneous(m) < m.side() - 1));
  }
}

TEST_CASE("the symbolic generic system") {
  LinearSystem P = fixture::system("generic3.sys");
  FormulaMatrix m = assemble(P, spec_fres(P));
  CHECK(m.side() == 8);
  CHECK(rows_reproduce_derivatives(P, m));
  Matrix<Polynomial> s = symbol_matrix(P, gamma_profile(P).upper, P.orders());
  CHECK(s(0, 0).is_zero());
  CHECK(s(0, 1) == oracle::sym("c_1_2_1"));
  CHECK(s(1, 0) == oracle::sym("c_2_1_2"));
  CHECK(s(2, 1) == oracle::sym("c_3_2_1"));
  CHECK(rank(s) == 2);
  CHECK(order_bounds(P) == std::vector<int>{2, 1, 2});
  CHECK(order_bounds(fixture::system("pattern2.sys")) == std::vector<int>{-1, -1, 1, 0});
  CHECK_THROWS_AS(order_bounds(fixture::system("pattern3.sys")), Error);
}

TEST_CASE("random certification") {
  LinearSystem G = fixture::system("fin_generic.sys");
  FormulaMatrix mg = assemble(G, spec_fres(G));
  CHECK(certify_nonzero(mg.entries).verdict == Certificate::NonzeroCertified);

  LinearSystem S = fixture::system("fin_special.sys");
  FormulaMatrix ms = assemble(S, spec_fres(S));
  CHECK(ms.side() == 10);
  CHECK(zero_columns(ms).empty());
  CertifyResult r = certify_nonzero(ms.entries);
  CHECK(r.verdict == Certificate::ZeroProven);
  CHECK(r.trials_used == 8);
  CHECK(certify_nonzero(ms.entries, {4, 1, 0}).verdict == Certificate::Unknown);

  Matrix<Polynomial> id(3, 3);
  for (int k = 0; k < 3; ++k) id(k, k) = Polynomial(1);
  CHECK(certify_nonzero(id).trials_used == 1);
  CHECK(certify_nonzero(id).verdict == Certificate::NonzeroCertified);
}

TEST_CASE("spec identity on random systems") {
  std::mt19937_64 rng(99);
  int general = 0;
  for (int trial = 0; trial < 150; ++trial) {
    LinearSystem P = gen::random_system(rng, 2 + trial % 3, 4);
    for (FormulaKind kind : {FormulaKind::CF, FormulaKind::CRES, FormulaKind::FRES}) {
      FormulaSpec s;
      try {
        s = make_spec(P, kind);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDefinable);
        continue;
      }
      CHECK(s.side() == s.column_count() + 1);
      if (s.side() <= 12) CHECK(rows_reproduce_derivatives(P, assemble(P, s)));
    }
    std::vector<int> omega = P.orders();
    for (int& w : omega) w += static_cast<int>(rng() % 2);
    std::vector<int> beta(P.param_count());
    for (int j = 1; j <= P.param_count(); ++j) {
      int room = 1 << 20;
      for (int i = 1; i <= P.size(); ++i) {
        if (P.poly(i).has(j)) room = std::min(room, omega[i - 1] - P.poly(i).op(j).deg());
      }
      beta[j - 1] = static_cast<int>(rng() % (room + 1));
    }
    try {
      FormulaSpec s = spec_general(P, beta, omega);
      CHECK(s.side() == s.column_count() + 1);
      ++general;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BetaOmegaViolated);
    }
  }
  CHECK(general >= 100);
}

TEST_CASE("super essential systems have no zero FRES columns") {
  std::mt19937_64 rng(4242);
  int seen = 0;
  for (int trial = 0; seen < 100 && trial < 2000; ++trial) {
    LinearSystem P = gen::random_system(rng, 2 + trial % 3, 4, 0.6);
    if (!is_super_essential(P)) continue;
    ++seen;
    FormulaMatrix m = assemble(P, spec_fres(P));
    CHECK(zero_columns(m).empty());
  }
  CHECK(seen == 100);
}

TEST_CASE("reordering the equations changes the determinant by a sign at most") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    LinearSystem P = gen::random_system(rng, 3, 2, 0.6);
    std::vector<LinearDiffPoly> polys = P.polys();
    std::reverse(polys.begin(), polys.end());
    LinearSystem R(polys, P.param_count());
    if (!is_super_essential(P)) continue;
    Polynomial a = dfres(P), b = dfres(R);
    CHECK((a == b || a == -b));
  }
}

TEST_CASE("deficient symbol matrix forces a zero determinant") {
  // top coefficients lambda_i * s_j at order o_i - g_j give a rank one symbol
  // matrix; lower order terms are random
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> small(-3, 3), nonzero(1, 3), order(1, 2), shift(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3;
    std::vector<int> g{shift(rng), shift(rng)}, s{nonzero(rng), -nonzero(rng)};
    std::vector<LinearDiffPoly> polys;
    for (int i = 1; i <= n; ++i) {
      int o = order(rng) + 1, lambda = nonzero(rng);
      std::map<int, DiffOperator> ops;
      for (int j = 1; j <= n - 1; ++j) {
        std::map<int, Polynomial> c{{o - g[j - 1], Polynomial(lambda * s[j - 1])}};
        for (int k = 0; k < o - g[j - 1]; ++k) c[k] = Polynomial(small(rng));
        ops.emplace(j, DiffOperator(c));
      }
      polys.emplace_back(sym("c" + std::to_string(i)), ops);
    }
    LinearSystem P(polys, n - 1);
    GammaProfile gp = gamma_profile(P);
    Matrix<Polynomial> sigma = symbol_matrix(P, gp.upper, P.orders());
    REQUIRE(rank(sigma) < static_cast<std::size_t>(n - 1));
    CHECK(dfres(P).is_zero());
  }
}
