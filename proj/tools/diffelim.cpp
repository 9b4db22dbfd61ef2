// Command-line front end: one subcommand per run, text or JSON on stdout,
// errors as one JSON line on stderr. Exit codes: 0 ok, 1 mathematical failure,
// 2 input error.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "diffelim/cli/commands.hpp"
#include "diffelim/error.hpp"

using namespace diffelim;
using namespace diffelim::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FormulaKind parse_kind(const std::string& s) {
  if (s == "fres") return FormulaKind::FRES;
  if (s == "cres") return FormulaKind::CRES;
  if (s == "cf") return FormulaKind::CF;
  if (s == "general") return FormulaKind::GENERAL;
  throw Error(ErrorCode::InvalidArgument, "unknown formula '" + s + "'");
}

void add_matrix_options(CLI::App* sub, std::string& formula, MatrixRequest& req) {
  sub->add_option("--formula", formula, "fres, cres, cf or general")
      ->check(CLI::IsMember({"fres", "cres", "cf", "general"}));
  sub->add_option("--beta", req.beta, "beta values for the general formula")->delimiter(',');
  sub->add_option("--omega", req.omega, "omega values for the general formula")->delimiter(',');
  sub->add_flag("--dump", req.dump, "print every entry");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential elimination for linear systems by resultant matrices"};
  app.require_subcommand(1);
  std::string format = "text";
  std::string file;
  bool any_shape = false;
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto with_file = [&](CLI::App* sub) {
    sub->add_option("FILE", file, "system file")->required();
    sub->add_flag("--allow-any-shape", any_shape, "accept any number of parameters");
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    return sub;
  };

  auto* check = with_file(app.add_subcommand("check", "validate the system and classify it"));
  auto* gamma = with_file(app.add_subcommand("gamma", "order profile of the parameters"));

  std::string formula = "fres";
  MatrixRequest mreq;
  auto* matrix = with_file(app.add_subcommand("matrix", "build a resultant matrix"));
  add_matrix_options(matrix, formula, mreq);

  std::string mode = "exact";
  DetRequest dreq;
  auto* det = with_file(app.add_subcommand("det", "determinant or a nonzero certificate"));
  add_matrix_options(det, formula, mreq);
  det->add_option("--mode", mode, "exact or random")->check(CLI::IsMember({"exact", "random"}));
  det->add_option("--trials", dreq.certify.trials, "evaluations in random mode")->check(CLI::PositiveNumber);
  det->add_option("--seed", dreq.certify.seed, "seed for random mode");

  bool all = false;
  auto* subsystem = with_file(app.add_subcommand("subsystem", "super essential subsystem"));
  subsystem->add_flag("--all", all, "list every super essential subsystem");

  std::vector<std::string> perturb{"auto"};
  bool force_exact = false;
  std::size_t exact_limit = kExactSideLimit;
  auto* elim = with_file(app.add_subcommand("eliminate", "eliminate the parameters"));
  elim->add_option("--perturb", perturb, "auto, off, or custom [FILE]")->expected(1, 2);
  elim->add_option("--exact-limit", exact_limit, "largest side expanded exactly");
  elim->add_flag("--force-exact", force_exact, "expand the determinant whatever its size");

  std::string poly_file;
  auto* verify = with_file(app.add_subcommand("verify", "check membership of a polynomial"));
  verify->add_option("--poly", poly_file, "file holding one polynomial")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json(Error(ErrorCode::InvalidArgument, e.what())).dump() << "\n";
    return 2;
  }

  try {
    SystemDocument doc = parse_document(slurp(file), {.allow_any_shape = any_shape});
    Report r;
    if (*check) {
      r = run_check(doc);
    } else if (*gamma) {
      r = run_gamma(doc);
    } else if (*matrix) {
      mreq.kind = parse_kind(formula);
      r = run_matrix(doc, mreq);
    } else if (*det) {
      mreq.kind = parse_kind(formula);
      dreq.matrix = mreq;
      dreq.mode = mode == "exact" ? DetMode::Exact : DetMode::Random;
      r = run_det(doc, dreq);
    } else if (*subsystem) {
      r = run_subsystem(doc, all);
    } else if (*elim) {
      EliminateOptions opts;
      opts.exact_limit = exact_limit;
      opts.force_exact = force_exact;
      const std::string& m = perturb.front();
      if (m == "auto") {
        opts.mode = PerturbMode::Auto;
      } else if (m == "off") {
        opts.mode = PerturbMode::Off;
      } else if (m == "custom") {
        opts.mode = PerturbMode::Custom;
        opts.custom = perturb.size() > 1 ? read_perturbation(doc, slurp(perturb[1])) : document_perturbation(doc);
      } else {
        throw Error(ErrorCode::InvalidArgument, "--perturb takes auto, off or custom");
      }
      if (m != "custom" && perturb.size() > 1) throw Error(ErrorCode::InvalidArgument, "only custom takes a file");
      r = run_eliminate(doc, opts);
    } else if (*verify) {
      r = run_verify(doc, parse_expression(slurp(poly_file), doc));
    }
    if (format == "json") {
      std::cout << r.data.dump(2) << "\n";
    } else {
      std::cout << r.text;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  }
}
