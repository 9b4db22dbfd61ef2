#include "diffelim/formulas.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "diffelim/error.hpp"
#include "diffelim/structure.hpp"

namespace diffelim {

std::string to_string(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::CF: return "cf";
    case FormulaKind::CRES: return "cres";
    case FormulaKind::FRES: return "fres";
    case FormulaKind::GENERAL: return "general";
  }
  return "?";
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::NonzeroCertified: return "NonzeroCertified";
    case Certificate::ZeroProven: return "ZeroProven";
    case Certificate::Unknown: return "Unknown";
  }
  return "?";
}

int FormulaSpec::side() const {
  int s = 0;
  for (int L : row_bounds) s += L + 1;
  return s;
}

int FormulaSpec::column_count() const {
  int s = 0;
  for (const auto& [lo, hi] : columns) s += std::max(0, hi - lo + 1);
  return s;
}

void check_spec(const FormulaSpec& spec) {
  for (std::size_t i = 0; i < spec.row_bounds.size(); ++i) {
    if (spec.row_bounds[i] < 0) {
      throw Error(ErrorCode::AssumptionViolated, "negative row bound for equation " + std::to_string(i + 1));
    }
  }
  if (spec.side() != spec.column_count() + 1) {
    throw Error(ErrorCode::AssumptionViolated, "formula has " + std::to_string(spec.side()) + " rows but " +
                                                    std::to_string(spec.column_count()) + " parameter columns");
  }
}

namespace {

void require_shape(const LinearSystem& P) {
  if (P.size() < 2 || P.param_count() != P.size() - 1) {
    throw Error(ErrorCode::AssumptionViolated, "formulas need n >= 2 equations in n-1 parameters");
  }
  for (int i = 1; i <= P.size(); ++i) {
    if (P.poly(i).order() < 0) {
      throw Error(ErrorCode::AssumptionViolated, P.poly_names()[i - 1] + " involves no parameter");
    }
  }
  if (nu(P) != P.size() - 1) {
    throw Error(ErrorCode::EmptyColumn, "every parameter must occur in the system");
  }
}

}  // namespace

FormulaSpec spec_fres(const LinearSystem& P) {
  require_shape(P);
  GammaProfile g = gamma_profile(P);
  FormulaSpec spec;
  spec.kind = FormulaKind::FRES;
  for (int i = 0; i < P.size(); ++i) {
    int L = g.N - g.orders[i] - g.total;
    if (L < 0) {
      throw Error(ErrorCode::NotDefinable, "N - o_i - gamma is negative for " + P.poly_names()[i]);
    }
    spec.row_bounds.push_back(L);
  }
  for (int j = 0; j < P.param_count(); ++j) spec.columns.emplace_back(g.lower[j], g.N - g.upper[j] - g.total);
  check_spec(spec);
  return spec;
}

std::vector<int> gamma_hat(const LinearSystem& P) {
  GammaProfile g = gamma_profile(P);
  std::vector<int> hat = g.upper;
  for (int j = 1; j <= P.param_count(); ++j) {
    for (int i = 1; i <= P.size(); ++i) {
      if (!P.poly(i).has(j)) hat[j - 1] = std::min(hat[j - 1], g.orders[i - 1]);
    }
  }
  return hat;
}

FormulaSpec spec_general(const LinearSystem& P, const std::vector<int>& beta, const std::vector<int>& omega) {
  if (static_cast<int>(beta.size()) != P.param_count() || static_cast<int>(omega.size()) != P.size()) {
    throw Error(ErrorCode::InvalidArgument, "beta needs one entry per parameter and omega one per equation");
  }
  if (std::any_of(beta.begin(), beta.end(), [](int b) { return b < 0; }) ||
      std::any_of(omega.begin(), omega.end(), [](int w) { return w < 0; })) {
    throw Error(ErrorCode::InvalidArgument, "beta and omega must be nonnegative");
  }
  int Omega = 0, b = 0;
  for (int w : omega) Omega += w;
  for (int x : beta) b += x;
  FormulaSpec spec;
  spec.kind = FormulaKind::GENERAL;
  for (int i = 1; i <= P.size(); ++i) {
    int L = Omega - omega[i - 1] - b;
    if (L < 0) {
      throw Error(ErrorCode::BetaOmegaViolated,
                  "Omega - omega_i - beta < 0 for " + P.poly_names()[i - 1] + " (condition beta1)");
    }
    for (const auto& [j, op] : P.poly(i).ops()) {
      if (op.deg() > omega[i - 1] - beta[j - 1]) {
        throw Error(ErrorCode::BetaOmegaViolated, "operator of " + P.param_names()[j - 1] + " in " +
                                                      P.poly_names()[i - 1] +
                                                      " exceeds omega_i - beta_j (condition beta2)");
      }
    }
    spec.row_bounds.push_back(L);
  }
  for (int j = 0; j < P.param_count(); ++j) spec.columns.emplace_back(0, Omega - beta[j] - b);
  spec.beta_omega = std::make_pair(beta, omega);
  check_spec(spec);
  return spec;
}

FormulaSpec spec_cres(const LinearSystem& P) {
  require_shape(P);
  std::vector<int> hat = gamma_hat(P);
  std::vector<int> o = P.orders();
  int N = 0, total = 0;
  for (int x : o) N += x;
  for (int x : hat) total += x;
  for (int i = 0; i < P.size(); ++i) {
    if (N - o[i] - total < 0) {
      throw Error(ErrorCode::NotDefinable, "N - o_i - gamma-hat is negative for " + P.poly_names()[i]);
    }
  }
  FormulaSpec spec = spec_general(P, hat, o);
  spec.kind = FormulaKind::CRES;
  return spec;
}

FormulaSpec spec_cf(const LinearSystem& P) {
  require_shape(P);
  FormulaSpec spec = spec_general(P, std::vector<int>(P.param_count(), 0), P.orders());
  spec.kind = FormulaKind::CF;
  spec.beta_omega.reset();
  return spec;
}

FormulaSpec make_spec(const LinearSystem& P, FormulaKind kind) {
  switch (kind) {
    case FormulaKind::CF: return spec_cf(P);
    case FormulaKind::CRES: return spec_cres(P);
    case FormulaKind::FRES: return spec_fres(P);
    case FormulaKind::GENERAL: break;
  }
  throw Error(ErrorCode::InvalidArgument, "the general formula needs explicit beta and omega");
}

Matrix<Polynomial> FormulaMatrix::homogeneous() const {
  Matrix<Polynomial> h(entries.rows(), entries.cols() == 0 ? 0 : entries.cols() - 1);
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c = 0; c < h.cols(); ++c) h(r, c) = entries(r, c);
  }
  return h;
}

std::string FormulaMatrix::column_name(std::size_t c) const {
  if (c >= columns.size()) return "1";
  return Symbol::make(param_names.at(columns[c].j - 1), columns[c].k).to_string();
}

std::string FormulaMatrix::row_name(std::size_t r) const {
  return Symbol::make(poly_names.at(rows.at(r).i - 1), rows.at(r).k).to_string();
}

FormulaMatrix assemble(const LinearSystem& P, const FormulaSpec& spec) {
  check_spec(spec);
  if (static_cast<int>(spec.row_bounds.size()) != P.size() ||
      static_cast<int>(spec.columns.size()) != P.param_count()) {
    throw Error(ErrorCode::InvalidArgument, "formula does not match the system shape");
  }
  FormulaMatrix m;
  m.kind = spec.kind;
  m.param_names = P.param_names();
  m.poly_names = P.poly_names();
  int top = 0;
  for (const auto& [lo, hi] : spec.columns) top = std::max(top, hi);
  for (int k = top; k >= 0; --k) {
    for (int j = P.param_count(); j >= 1; --j) {
      const auto& [lo, hi] = spec.columns[j - 1];
      if (lo <= k && k <= hi) m.columns.push_back({j, k});
    }
  }
  std::map<std::pair<int, int>, std::size_t> where;
  for (std::size_t c = 0; c < m.columns.size(); ++c) where[{m.columns[c].j, m.columns[c].k}] = c;

  const std::size_t side = static_cast<std::size_t>(spec.side());
  m.entries = Matrix<Polynomial>(side, side);
  std::size_t r = 0;
  for (int i = 1; i <= P.size(); ++i) {
    const int L = spec.row_bounds[i - 1];
    std::vector<LinearDiffPoly> derivs{P.poly(i)};
    for (int k = 1; k <= L; ++k) derivs.push_back(derive_lin(derivs.back()));
    for (int k = L; k >= 0; --k, ++r) {
      m.rows.push_back({i, k});
      const LinearDiffPoly& f = derivs[k];
      for (const auto& [j, op] : f.ops()) {
        for (const auto& [q, a] : op.coeffs()) {
          auto it = where.find({j, q});
          if (it == where.end()) {
            throw Error(ErrorCode::ColumnMissing, "row " + m.row_name(r) + " involves " +
                                                      Symbol::make(P.param_names()[j - 1], q).to_string() +
                                                      " which is not a column");
          }
          m.entries(r, it->second) = a;
        }
      }
      m.entries(r, side - 1) = f.free_term();
    }
  }
  return m;
}

std::vector<std::string> zero_columns(const FormulaMatrix& m) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c + 1 < m.entries.cols(); ++c) {
    bool zero = true;
    for (std::size_t r = 0; r < m.entries.rows() && zero; ++r) zero = m.entries(r, c).is_zero();
    if (zero) out.push_back(m.column_name(c));
  }
  return out;
}

Polynomial determinant(const FormulaMatrix& m, const DetOptions& options) { return determinant(m.entries, options); }

Polynomial dfres(const LinearSystem& P, const DetOptions& options) {
  return determinant(assemble(P, spec_fres(P)), options);
}

std::size_t rank_homogeneous(const FormulaMatrix& m) { return rank(m.homogeneous()); }

std::size_t co_order(const FormulaMatrix& m) { return m.side() - 1 - rank_homogeneous(m); }

Matrix<Polynomial> symbol_matrix(const LinearSystem& P, const std::vector<int>& beta, const std::vector<int>& omega) {
  if (static_cast<int>(beta.size()) != P.param_count() || static_cast<int>(omega.size()) != P.size()) {
    throw Error(ErrorCode::InvalidArgument, "beta needs one entry per parameter and omega one per equation");
  }
  Matrix<Polynomial> s(P.size(), P.param_count());
  for (int i = 1; i <= P.size(); ++i) {
    for (int j = 1; j <= P.param_count(); ++j) {
      const DiffOperator& op = P.poly(i).op(j);
      if (op.is_zero()) continue;
      int d = omega[i - 1] - beta[j - 1];
      if (op.deg() > d) {
        throw Error(ErrorCode::BetaOmegaViolated, "operator of " + P.param_names()[j - 1] + " in " +
                                                      P.poly_names()[i - 1] + " exceeds omega_i - beta_j");
      }
      s(i - 1, j - 1) = op.coeff(d);
    }
  }
  return s;
}

std::vector<int> order_bounds(const LinearSystem& P) {
  if (!is_differentially_essential(P)) {
    throw Error(ErrorCode::NotDifferentiallyEssential, "order bounds need a differentially essential system");
  }
  SubsystemCertificate cert = super_essential_subsystem(P);
  LinearSystem Q = P.restrict_to(cert.members);
  GammaProfile g = gamma_profile(Q);
  std::vector<int> bounds(P.size(), -1);
  for (std::size_t a = 0; a < cert.members.size(); ++a) {
    bounds[cert.members[a] - 1] = g.N - g.orders[a] - g.total;
  }
  return bounds;
}

CertifyResult certify_nonzero(const Matrix<Polynomial>& m, const CertifyOptions& options) {
  if (!m.square()) throw Error(ErrorCode::NonSquare, "determinant of a non-square matrix");
  std::vector<SymbolId> ids;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (SymbolId id : m(r, c).symbols()) ids.push_back(id);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  CertifyResult result;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
  // a matrix without symbols needs a single evaluation
  const int trials = ids.empty() ? 1 : options.trials;
  for (int t = 0; t < trials; ++t) {
    std::unordered_map<SymbolId, Rational> value;
    for (SymbolId id : ids) {
      Rational q(num(rng), den(rng));
      q.canonicalize();
      value.emplace(id, q);
    }
    Matrix<Rational> numeric =
        m.map([&](const Polynomial& p) { return p.evaluate([&](Symbol s) { return value.at(s.id()); }); });
    ++result.trials_used;
    if (determinant(numeric) != 0) {
      result.verdict = Certificate::NonzeroCertified;
      return result;
    }
  }
  if (ids.empty()) {
    result.verdict = Certificate::ZeroProven;
  } else if (m.rows() <= options.exact_limit) {
    result.verdict = determinant(m).is_zero() ? Certificate::ZeroProven : Certificate::NonzeroCertified;
  }
  return result;
}

}  // namespace diffelim
