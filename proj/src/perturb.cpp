#include "diffelim/perturb.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "diffelim/error.hpp"

namespace diffelim {

namespace {

LinearDiffPoly unit(int j, int k) {
  return LinearDiffPoly(Polynomial(), {{j, DiffOperator::term(k, Polynomial(1))}});
}

LinearDiffPoly add(const LinearDiffPoly& a, const LinearDiffPoly& b) {
  std::map<int, DiffOperator> ops = a.ops();
  for (const auto& [j, L] : b.ops()) {
    auto [it, fresh] = ops.emplace(j, L);
    if (!fresh) it->second = it->second + L;
  }
  return LinearDiffPoly(a.free_term() + b.free_term(), ops);
}

Symbol p_symbol() { return Symbol::constant(kPerturbationSymbol); }

bool mentions(const Polynomial& f, const std::string& name) {
  for (SymbolId id : f.symbols()) {
    if (Symbol::from_id(id).name() == name) return true;
  }
  return false;
}

}  // namespace

Perturbation default_perturbation(const LinearSystem& P) {
  if (!is_super_essential(P)) throw Error(ErrorCode::NotSuperEssential, "default perturbation needs a super essential system");
  const int n = P.size();
  GammaProfile g = gamma_profile(P);
  // rows relabeled so that orders increase; stable, so ties keep the index order
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return g.orders[a - 1] < g.orders[b - 1]; });
  PatternMatrix X = pattern_matrix(P), Y(n, n - 1);
  for (int t = 1; t <= n; ++t) {
    for (int j = 1; j < n; ++j) Y.set(t, j, X.at(perm[t - 1], j));
  }
  Matching mu = *row_deleted_matching(Y, n);

  Perturbation eps;
  eps.terms.resize(n);
  for (int t = 1; t <= n; ++t) {
    LinearDiffPoly e;
    if (t < n) {
      int j = mu.at(t);
      e = add(e, unit(j, g.orders[perm[t - 1] - 1] - g.upper[j - 1]));
    }
    if (t > 1) {
      int j = mu.at(t - 1);
      e = add(e, unit(j, g.lower[j - 1]));
    }
    eps.terms[perm[t - 1] - 1] = e;
  }
  return eps;
}

Perturbation phi_perturbation(const std::vector<int>& beta, const std::vector<int>& omega, int n) {
  if (n < 2 || static_cast<int>(beta.size()) != n - 1 || static_cast<int>(omega.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "phi needs n >= 2, n-1 betas and n omegas");
  }
  for (int i = 1; i < n; ++i) {
    if (omega[i] < omega[i - 1]) throw Error(ErrorCode::BetaOmegaViolated, "omega must be nondecreasing");
    if (omega[i - 1] - beta[n - i - 1] < 0) {
      throw Error(ErrorCode::BetaOmegaViolated, "omega_i - beta_{n-i} < 0 (condition beta3)");
    }
  }
  Perturbation phi;
  phi.terms.push_back(unit(n - 1, omega[0] - beta[n - 2]));
  for (int i = 2; i < n; ++i) phi.terms.push_back(add(unit(n - i, omega[i - 1] - beta[n - i - 1]), unit(n - i + 1, 0)));
  phi.terms.push_back(unit(1, 0));
  return phi;
}

LinearSystem perturb_system(const LinearSystem& P, const Perturbation& eps) {
  if (static_cast<int>(eps.terms.size()) != P.size()) {
    throw Error(ErrorCode::InvalidArgument, "one perturbation term per equation expected");
  }
  const std::string& name = kPerturbationSymbol;
  for (const auto& u : P.param_names()) {
    if (u == name) throw Error(ErrorCode::SymbolClash, "parameter named " + name + " clashes with the perturbation constant");
  }
  for (const auto& f : P.polys()) {
    bool clash = mentions(f.free_term(), name);
    for (const auto& [j, L] : f.ops()) {
      for (const auto& [k, a] : L.coeffs()) clash = clash || mentions(a, name);
    }
    if (clash) throw Error(ErrorCode::SymbolClash, "symbol " + name + " already occurs in the system");
  }
  Polynomial p(p_symbol());
  std::vector<LinearDiffPoly> polys;
  for (int i = 1; i <= P.size(); ++i) {
    const LinearDiffPoly& e = eps.terms[i - 1];
    if (!e.free_term().is_zero()) throw Error(ErrorCode::InvalidArgument, "perturbation terms must be homogeneous");
    std::map<int, DiffOperator> ops;
    for (const auto& [j, L] : e.ops()) ops.emplace(j, L.scaled(-p));
    polys.push_back(add(P.poly(i), LinearDiffPoly(Polynomial(), ops)));
  }
  return LinearSystem(std::move(polys), P.param_count(), P.param_names(), P.poly_names());
}

FormulaMatrix perturbed_matrix(const LinearSystem& P, const Perturbation& eps) {
  if (!is_super_essential(P)) throw Error(ErrorCode::NotSuperEssential, "perturbed formula needs a super essential system");
  GammaProfile g = gamma_profile(P);
  LinearSystem Q = shift_params(perturb_system(P, eps), g.lower);
  FormulaMatrix m = assemble(Q, spec_general(Q, g.gamma, g.orders));
  // report columns in the original orders
  for (auto& c : m.columns) c.k += g.lower[c.j - 1];
  return m;
}

Polynomial perturbed_determinant(const LinearSystem& P, const Perturbation& eps, const DetOptions& options) {
  return determinant(perturbed_matrix(P, eps), options);
}

LowestCoefficient lowest_p_coefficient(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroInput, "the zero polynomial has no lowest coefficient");
  auto coeffs = f.coefficients_in(p_symbol().id());
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    if (!coeffs[e].is_zero()) return {static_cast<int>(e), coeffs[e]};
  }
  throw Error(ErrorCode::ZeroInput, "the zero polynomial has no lowest coefficient");
}

Polynomial OperatorDecomposition::reassemble() const {
  Fraction sum;
  for (std::size_t i = 0; i < ops.size(); ++i) sum += ops[i].apply(Polynomial(Symbol::make(symbols[i])));
  if (!sum.is_polynomial()) throw Error(ErrorCode::NotDivisible, "decomposition has non-polynomial coefficients");
  return sum.num() * Polynomial(Rational(1) / sum.den().constant_term());
}

OperatorDecomposition decompose_linear(const Polynomial& B, const std::vector<std::string>& symbols) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < symbols.size(); ++i) index.emplace(symbols[i], i);
  std::vector<std::map<int, std::vector<Term>>> parts(symbols.size());
  for (const auto& t : B.terms()) {
    std::optional<std::pair<std::size_t, int>> hit;
    std::vector<Monomial::Factor> rest;
    for (const auto& [id, e] : t.mono.factors()) {
      Symbol s = Symbol::from_id(id);
      auto it = s.is_constant() ? index.end() : index.find(s.name());
      if (it == index.end()) {
        rest.emplace_back(id, e);
        continue;
      }
      if (hit || e > 1) throw Error(ErrorCode::NotLinear, "term " + Polynomial::from_terms({t}).to_string() + " is not linear");
      hit = std::make_pair(it->second, s.order());
    }
    if (!hit) {
      throw Error(ErrorCode::NotLinear, "term " + Polynomial::from_terms({t}).to_string() + " involves none of the symbols");
    }
    parts[hit->first][hit->second].push_back({Monomial::from_factors(std::move(rest)), t.coeff});
  }
  OperatorDecomposition dec;
  dec.symbols = symbols;
  for (auto& by_order : parts) {
    int top = by_order.empty() ? -1 : by_order.rbegin()->first;
    std::vector<Fraction> c(top + 1);
    for (auto& [k, terms] : by_order) c[k] = Fraction(Polynomial::from_terms(std::move(terms)));
    dec.ops.emplace_back(std::move(c));
  }
  return dec;
}

Polynomial coefficient_content(const Polynomial& B, const std::vector<std::string>& symbols) {
  if (B.is_zero()) throw Error(ErrorCode::ZeroInput, "content of the zero polynomial");
  OperatorDecomposition dec = decompose_linear(B, symbols);
  Polynomial g;
  for (const auto& op : dec.ops) {
    for (const auto& c : op.coeffs()) {
      if (!c.is_zero()) g = gcd(g, c.num());
    }
  }
  return g;
}

Polynomial normalize_linear(const Polynomial& B, const std::vector<std::string>& symbols) {
  if (B.is_zero()) return B;
  Polynomial f = exact_divide(B, coefficient_content(B, symbols));
  f = f * Polynomial(Rational(1) / rational_content(f));
  // the highest ranked c: largest derivative order, then the smallest index
  OperatorDecomposition dec = decompose_linear(f, symbols);
  int best_order = -1;
  std::size_t best = 0;
  for (std::size_t i = 0; i < dec.ops.size(); ++i) {
    if (dec.ops[i].degree() > best_order) {
      best_order = dec.ops[i].degree();
      best = i;
    }
  }
  if (display_leading_coefficient(dec.ops[best].leading().num()) < 0) f = -f;
  return f;
}

Polynomial id_primitive_part(const Polynomial& B, const std::vector<std::string>& symbols) {
  if (B.is_zero()) throw Error(ErrorCode::ZeroInput, "ID-primitive part of the zero polynomial");
  OperatorDecomposition dec = decompose_linear(B, symbols);
  OreOperator g = gcld(dec.ops);
  if (g.degree() <= 0) return normalize_linear(B, symbols);
  Fraction sum;
  for (std::size_t i = 0; i < dec.ops.size(); ++i) {
    if (dec.ops[i].is_zero()) continue;
    LeftDivision q = left_divide(dec.ops[i], g);
    if (!q.remainder.is_zero()) throw Error(ErrorCode::NotDivisible, "gcld does not divide an operator");
    sum += q.quotient.apply(Polynomial(Symbol::make(symbols[i])));
  }
  // the denominator is a scalar of the coefficient field
  return normalize_linear(sum.num(), symbols);
}

Polynomial extract_dres(const Polynomial& det, const std::vector<std::string>& symbols) {
  if (det.is_zero()) throw Error(ErrorCode::ZeroInput, "extracting from a zero determinant");
  return id_primitive_part(exact_divide(det, coefficient_content(det, symbols)), symbols);
}

namespace {

std::optional<std::string> lone_symbol(const Polynomial& f) {
  if (f.term_count() != 1 || f.leading_term().coeff != 1) return std::nullopt;
  const auto& fs = f.leading_term().mono.factors();
  if (fs.size() != 1 || fs[0].second != 1) return std::nullopt;
  Symbol s = Symbol::from_id(fs[0].first);
  if (s.is_constant() || s.order() != 0) return std::nullopt;
  return s.name();
}

}  // namespace

bool is_dppe_shaped(const LinearSystem& P) {
  std::set<std::string> names;
  for (const auto& f : P.polys()) {
    auto c = lone_symbol(f.free_term());
    if (!c || !names.insert(*c).second) return false;
  }
  for (const auto& f : P.polys()) {
    for (const auto& [j, L] : f.ops()) {
      for (const auto& [k, a] : L.coeffs()) {
        for (const auto& c : names) {
          if (mentions(a, c)) return false;
        }
      }
    }
  }
  return true;
}

std::vector<std::string> free_symbols(const LinearSystem& P) {
  if (!is_dppe_shaped(P)) {
    throw Error(ErrorCode::NotDPPEShaped, "free terms must be distinct differential symbols absent from the operators");
  }
  std::vector<std::string> names;
  for (const auto& f : P.polys()) names.push_back(*lone_symbol(f.free_term()));
  return names;
}

bool verify_membership(const Polynomial& B, const LinearSystem& P) {
  std::vector<std::string> names = free_symbols(P);
  std::vector<std::pair<std::string, Polynomial>> images;
  for (int i = 1; i <= P.size(); ++i) {
    const LinearDiffPoly& f = P.poly(i);
    images.emplace_back(names[i - 1], f.free_term() - f.expand(P.param_names()));
  }
  return specialize(B, images).is_zero();
}

namespace {

Perturbation restrict_perturbation(const Perturbation& eps, const LinearSystem& P, const std::vector<int>& members) {
  if (static_cast<int>(eps.terms.size()) != P.size()) {
    throw Error(ErrorCode::InvalidArgument, "one perturbation term per equation expected");
  }
  std::vector<int> active = P.active_params(members);
  std::map<int, int> renumber;
  for (std::size_t a = 0; a < active.size(); ++a) renumber[active[a]] = static_cast<int>(a) + 1;
  Perturbation out;
  for (int i : members) {
    std::map<int, DiffOperator> ops;
    for (const auto& [j, L] : eps.terms[i - 1].ops()) {
      auto it = renumber.find(j);
      if (it == renumber.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "perturbation uses " + P.param_names()[j - 1] + " outside the super essential subsystem");
      }
      ops.emplace(it->second, L);
    }
    out.terms.emplace_back(eps.terms[i - 1].free_term(), ops);
  }
  return out;
}

}  // namespace

EliminationReport eliminate(const LinearSystem& P, const EliminateOptions& options) {
  EliminationReport rep;
  rep.validation = validate(P);
  if (!rep.validation.ok()) throw Error(ErrorCode::AssumptionViolated, "system fails the standing assumptions");
  if (options.mode == PerturbMode::Custom && !options.custom) {
    throw Error(ErrorCode::InvalidArgument, "custom perturbation mode without a perturbation");
  }
  rep.members = super_essential_subsystem(P).members;
  LinearSystem Q = P.restrict_to(rep.members);
  rep.gamma = gamma_profile(Q);
  FormulaMatrix m = assemble(Q, spec_fres(Q));
  rep.side = static_cast<int>(m.side());
  const bool dppe = is_dppe_shaped(P);
  std::vector<std::string> cs = dppe ? free_symbols(Q) : std::vector<std::string>{};

  bool zero = true;
  if (m.side() <= options.exact_limit || options.force_exact) {
    rep.determinant = determinant(m, options.det);
    rep.co_order = co_order(m);
    zero = rep.determinant.is_zero();
  } else {
    CertifyOptions c = options.certify;
    c.exact_limit = 0;
    rep.certificate = certify_nonzero(m.entries, c);
    if (rep.certificate->verdict == Certificate::NonzeroCertified) {
      rep.branch = "certified";
      return rep;
    }
  }

  if (!zero) {
    rep.branch = "direct";
    rep.output = rep.determinant;
    if (dppe) rep.content_operator = gcld(decompose_linear(rep.output, cs).ops);
  } else if (options.mode == PerturbMode::Off) {
    rep.branch = "zero";
  } else {
    rep.branch = "perturbed";
    rep.perturbation = options.mode == PerturbMode::Custom ? restrict_perturbation(*options.custom, P, rep.members)
                                                           : default_perturbation(Q);
    FormulaMatrix pm = perturbed_matrix(Q, *rep.perturbation);
    rep.perturbed_side = static_cast<int>(pm.side());
    try {
      rep.recomputed_side = spec_fres(perturb_system(Q, *rep.perturbation)).side();
    } catch (const Error&) {
      rep.recomputed_side.reset();
    }
    rep.perturbed_determinant = determinant(pm, options.det);
    if (rep.perturbed_determinant.is_zero()) {
      throw Error(ErrorCode::AssumptionViolated, "the perturbed determinant vanishes");
    }
    LowestCoefficient low = lowest_p_coefficient(rep.perturbed_determinant);
    rep.lowest_degree = low.degree;
    if (dppe) {
      rep.content_operator = gcld(decompose_linear(low.coefficient, cs).ops);
      rep.output = id_primitive_part(low.coefficient, cs);
    } else {
      rep.output = low.coefficient;
    }
  }
  if (dppe && !rep.output.is_zero()) rep.membership = verify_membership(rep.output, P);
  return rep;
}

}  // namespace diffelim
