#include "diffelim/cli/commands.hpp"

#include <algorithm>
#include <sstream>

#include "diffelim/error.hpp"
#include "diffelim/structure.hpp"

namespace diffelim::cli {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + v[k];
  return out;
}

std::vector<std::string> row_names(const LinearSystem& P, const std::vector<int>& rows) {
  std::vector<std::string> out;
  for (int i : rows) out.push_back(P.poly_names().at(i - 1));
  return out;
}

json system_json(const SystemDocument& doc) {
  json eqs = json::array();
  for (const auto& e : doc.equations) {
    eqs.push_back({{"name", e.name}, {"expr", render_linear(to_linear(e.expr, doc.params), doc.params)}});
  }
  return {{"constants", doc.constants},
          {"differentials", doc.differentials},
          {"parameters", doc.params},
          {"equations", eqs}};
}

json check_json(const AssumptionCheck& c) { return {{"pass", c.pass}, {"offenders", c.offenders}}; }

json gamma_json(const GammaProfile& g) {
  return {{"orders", g.orders}, {"lower", g.lower}, {"upper", g.upper},
          {"gamma", g.gamma},   {"total", g.total}, {"N", g.N}};
}

std::string gamma_text(const GammaProfile& g, const LinearSystem& P) {
  std::ostringstream out;
  auto row = [&](const std::string& label, const std::vector<int>& v) {
    out << label;
    for (int x : v) out << "\t" << x;
    out << "\n";
  };
  out << "param";
  for (const auto& u : P.param_names()) out << "\t" << u;
  out << "\n";
  row("lower", g.lower);
  row("upper", g.upper);
  row("gamma", g.gamma);
  out << "orders:";
  for (int i = 1; i <= P.size(); ++i) out << " " << P.poly_names()[i - 1] << "=" << g.orders[i - 1];
  out << "\ngamma(P) = " << g.total << ", N = " << g.N << "\n";
  return out.str();
}

FormulaSpec build_spec(const LinearSystem& P, const MatrixRequest& r) {
  if (r.kind == FormulaKind::GENERAL) return spec_general(P, r.beta, r.omega);
  if (!r.beta.empty() || !r.omega.empty()) {
    throw Error(ErrorCode::InvalidArgument, "--beta and --omega only apply to the general formula");
  }
  return make_spec(P, r.kind);
}

json formula_json(const FormulaMatrix& m, bool dump) {
  json rows = json::array(), cols = json::array();
  for (std::size_t r = 0; r < m.side(); ++r) rows.push_back(m.row_name(r));
  for (std::size_t c = 0; c < m.side(); ++c) cols.push_back(m.column_name(c));
  json out = {{"kind", to_string(m.kind)},
              {"side", m.side()},
              {"rows", rows},
              {"columns", cols},
              {"zeroColumns", zero_columns(m)}};
  if (dump) {
    json entries = json::array();
    for (std::size_t r = 0; r < m.side(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.side(); ++c) row.push_back(poly_text(m.entries(r, c)));
      entries.push_back(row);
    }
    out["entries"] = entries;
  }
  return out;
}

std::string formula_text(const FormulaMatrix& m, bool dump) {
  std::ostringstream out;
  out << "formula " << to_string(m.kind) << ": " << m.side() << " x " << m.side() << "\n";
  std::vector<std::string> rows, cols;
  for (std::size_t r = 0; r < m.side(); ++r) rows.push_back(m.row_name(r));
  for (std::size_t c = 0; c < m.side(); ++c) cols.push_back(m.column_name(c));
  out << "rows: " << join(rows) << "\n";
  out << "columns: " << join(cols) << "\n";
  auto zero = zero_columns(m);
  out << "zero columns: " << (zero.empty() ? "none" : join(zero)) << "\n";
  if (dump) {
    for (std::size_t r = 0; r < m.side(); ++r) {
      out << rows[r] << ":";
      for (std::size_t c = 0; c < m.side(); ++c) out << "\t" << poly_text(m.entries(r, c));
      out << "\n";
    }
  }
  return out.str();
}

json certificate_json(const CertifyResult& c) {
  return {{"verdict", to_string(c.verdict)}, {"trials", c.trials_used}};
}

json ops_json(const OperatorDecomposition& dec) {
  json out = json::object();
  for (std::size_t i = 0; i < dec.symbols.size(); ++i) out[dec.symbols[i]] = dec.ops[i].to_string();
  return out;
}

}  // namespace

std::string poly_text(const Polynomial& f) { return f.to_string(); }

Report run_check(const SystemDocument& doc) {
  LinearSystem P = to_system(doc);
  ValidationReport v = validate(P);
  Report r;
  json classification = json::object();
  std::ostringstream out;
  out << "equations: " << P.size() << ", parameters: " << P.param_count() << " (" << join(P.param_names()) << ")\n";
  auto line = [&](const std::string& label, const AssumptionCheck& c) {
    out << label << ": " << (c.pass ? "pass" : "fail");
    if (!c.pass) {
      std::vector<std::string> who;
      for (int i : c.offenders) who.push_back(std::to_string(i));
      out << " (" << join(who) << ")";
    }
    out << "\n";
  };
  line("P1 every equation involves a parameter", v.positive_order);
  line("P2 equations pairwise distinct", v.distinct);
  line("P3 some free term is nonzero", v.nonhomogeneous);
  line("P4 every parameter occurs (nu = " + std::to_string(v.nu) + ")", v.all_params);

  const bool shaped = P.param_count() == P.size() - 1;
  if (shaped) {
    PatternMatrix X = pattern_matrix(P);
    bool de = is_differentially_essential(P);
    bool se = is_super_essential(X);
    classification["structuralRank"] = structural_rank(X);
    classification["differentiallyEssential"] = de;
    classification["superEssential"] = se;
    out << "structural rank: " << structural_rank(X) << "\n";
    out << "differentially essential: " << yes_no(de) << "\n";
    out << "super essential: " << yes_no(se);
    if (!se) {
      for (int i = 1; i <= P.size(); ++i) {
        if (!row_deleted_matching(X, i)) {
          classification["failsAt"] = i;
          out << " (no matching without " << P.poly_names()[i - 1] << ")";
          break;
        }
      }
    }
    out << "\n";
    out << "dppe shaped: " << yes_no(is_dppe_shaped(P)) << "\n";
  } else {
    out << "shape: " << P.size() << " equations in " << P.param_count() << " parameters, not classified\n";
  }
  classification["dppeShaped"] = is_dppe_shaped(P);
  r.data = {{"command", "check"},
            {"system", system_json(doc)},
            {"validation",
             {{"positiveOrder", check_json(v.positive_order)},
              {"distinct", check_json(v.distinct)},
              {"nonhomogeneous", check_json(v.nonhomogeneous)},
              {"allParameters", check_json(v.all_params)},
              {"nu", v.nu},
              {"ok", v.ok()}}},
            {"classification", classification}};
  r.text = out.str();
  return r;
}

Report run_gamma(const SystemDocument& doc) {
  LinearSystem P = to_system(doc);
  GammaProfile g = gamma_profile(P);
  return {{{"command", "gamma"}, {"system", system_json(doc)}, {"gamma", gamma_json(g)}}, gamma_text(g, P)};
}

Report run_matrix(const SystemDocument& doc, const MatrixRequest& request) {
  LinearSystem P = to_system(doc);
  FormulaMatrix m = assemble(P, build_spec(P, request));
  return {{{"command", "matrix"}, {"system", system_json(doc)}, {"formula", formula_json(m, request.dump)}},
          formula_text(m, request.dump)};
}

Report run_det(const SystemDocument& doc, const DetRequest& request) {
  LinearSystem P = to_system(doc);
  FormulaMatrix m = assemble(P, build_spec(P, request.matrix));
  Report r{{{"command", "det"}, {"system", system_json(doc)}, {"formula", formula_json(m, request.matrix.dump)}},
           formula_text(m, request.matrix.dump)};
  if (request.mode == DetMode::Exact) {
    Polynomial d = determinant(m);
    r.data["determinant"] = poly_text(d);
    r.text += "determinant: " + poly_text(d) + "\n";
  } else {
    CertifyResult c = certify_nonzero(m.entries, request.certify);
    r.data["certificate"] = certificate_json(c);
    r.text += "certificate: " + to_string(c.verdict) + " after " + std::to_string(c.trials_used) + " trials\n";
  }
  return r;
}

Report run_subsystem(const SystemDocument& doc, bool all) {
  LinearSystem P = to_system(doc);
  SubsystemCertificate cert = super_essential_subsystem(P);
  json kernel = json::array();
  for (const auto& x : cert.kernel_row) kernel.push_back(x.to_string());
  json sub = {{"members", cert.members}, {"names", row_names(P, cert.members)}, {"kernelRow", kernel}};
  std::ostringstream out;
  out << "P* = {" << join(row_names(P, cert.members)) << "}\n";
  std::vector<std::string> k;
  for (const auto& x : cert.kernel_row) k.push_back(x.to_string());
  out << "kernel row: (" << join(k) << ")\n";
  if (all) {
    auto every = enumerate_super_essential(P);
    sub["all"] = every;
    out << "super essential subsystems:";
    if (every.empty()) out << " none";
    for (const auto& S : every) out << " {" << join(row_names(P, S)) << "}";
    out << "\n";
  }
  return {{{"command", "subsystem"}, {"system", system_json(doc)}, {"subsystem", sub}}, out.str()};
}

Report run_eliminate(const SystemDocument& doc, const EliminateOptions& options) {
  LinearSystem P = to_system(doc);
  EliminationReport e = eliminate(P, options);
  std::ostringstream out;
  std::vector<std::string> members = row_names(P, e.members);
  out << "P* = {" << join(members) << "}\n";
  out << "fres side: " << e.side << ", co-order: " << e.co_order << "\n";
  out << "branch: " << e.branch << "\n";

  json elim = {{"branch", e.branch},
               {"output", poly_text(e.output)},
               {"membershipVerified", e.membership ? json(*e.membership) : json(nullptr)},
               {"side", e.side},
               {"coOrder", e.co_order}};
  if (e.certificate) {
    elim["certificate"] = certificate_json(*e.certificate);
    out << "certificate: " << to_string(e.certificate->verdict) << "\n";
  }
  if (e.perturbation) {
    json eps = json::array();
    LinearSystem sub = P.restrict_to(e.members);
    for (const auto& t : e.perturbation->terms) eps.push_back(poly_text(t.expand(sub.param_names())));
    elim["perturbation"] = eps;
    elim["perturbedSide"] = e.perturbed_side;
    elim["lowestDegree"] = e.lowest_degree;
    if (e.recomputed_side) elim["recomputedSide"] = *e.recomputed_side;
    out << "perturbation: " << join(std::vector<std::string>(eps.begin(), eps.end())) << "\n";
    out << "perturbed side: " << e.perturbed_side;
    if (e.recomputed_side && *e.recomputed_side != e.perturbed_side) {
      out << " (fres of the perturbed system: " << *e.recomputed_side << ")";
    }
    out << "\nlowest power of p: " << e.lowest_degree << "\n";
  }
  if (!e.output.is_zero() && is_dppe_shaped(P)) {
    std::vector<std::string> cs = free_symbols(P.restrict_to(e.members));
    OperatorDecomposition dec = decompose_linear(e.output, cs);
    elim["operators"] = ops_json(dec);
    elim["gcld"] = e.content_operator.to_string();
    for (std::size_t i = 0; i < cs.size(); ++i) out << cs[i] << ": " << dec.ops[i].to_string() << "\n";
    out << "gcld: " << e.content_operator.to_string() << "\n";
  }
  out << "output: " << poly_text(e.output) << "\n";
  if (e.membership) out << "membership: " << (*e.membership ? "verified" : "FAILED") << "\n";
  json sub = {{"members", e.members}, {"names", members}};
  return {{{"command", "eliminate"},
           {"system", system_json(doc)},
           {"gamma", gamma_json(e.gamma)},
           {"subsystem", sub},
           {"elimination", elim}},
          out.str()};
}

Report run_verify(const SystemDocument& doc, const Polynomial& B) {
  LinearSystem P = to_system(doc);
  bool ok = verify_membership(B, P);
  return {{{"command", "verify"},
           {"system", system_json(doc)},
           {"verification", {{"polynomial", poly_text(B)}, {"membershipVerified", ok}}}},
          std::string("membership: ") + (ok ? "verified" : "not verified") + "\n"};
}

Perturbation document_perturbation(const SystemDocument& doc) {
  if (doc.perturbations.empty()) throw Error(ErrorCode::InvalidArgument, "no eps statements found");
  Perturbation eps{std::vector<LinearDiffPoly>(doc.equations.size())};
  for (const auto& pe : doc.perturbations) {
    auto it = std::find_if(doc.equations.begin(), doc.equations.end(),
                           [&](const Equation& e) { return e.name == pe.name; });
    if (it == doc.equations.end()) {
      throw Error(ErrorCode::InvalidArgument, "eps statement for unknown equation '" + pe.name + "'");
    }
    eps.terms[it - doc.equations.begin()] = to_linear(pe.expr, doc.params);
  }
  return eps;
}

Perturbation read_perturbation(const SystemDocument& doc, const std::string& text) {
  // a complete system file carries its own declarations and equations
  try {
    SystemDocument other = parse_document(text, {.allow_any_shape = true});
    if (!other.equations.empty()) {
      SystemDocument merged = doc;
      merged.perturbations = other.perturbations;
      return document_perturbation(merged);
    }
  } catch (const Error&) {
  }
  SystemDocument bare = doc;
  bare.perturbations.clear();
  SystemDocument merged = parse_document(render(bare) + "\n" + text, {.allow_any_shape = true});
  return document_perturbation(merged);
}

json error_json(const Error& e) {
  json err = {{"code", std::string(e.name())}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = pe->line();
    err["column"] = pe->column();
  }
  return {{"error", err}};
}

}  // namespace diffelim::cli
