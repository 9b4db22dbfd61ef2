#include "diffelim/cli/document.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "diffelim/error.hpp"

namespace diffelim::cli {
namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::Punct, "", line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (std::string(":;,+-*/^()'").find(c) != std::string::npos) {
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

enum class Kind { Constant, Differential, Param };

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::map<std::string, Kind> kinds)
      : toks_(std::move(tokens)), kinds_(std::move(kinds)) {}

  SystemDocument document(const ParseOptions& options) {
    SystemDocument doc;
    int params_line = 1, params_col = 1;
    while (peek().kind != Tok::End) {
      const Token& head = expect_ident();
      if (head.text == "constants" || head.text == "diff" || head.text == "params") {
        Kind kind = head.text == "constants" ? Kind::Constant : head.text == "diff" ? Kind::Differential : Kind::Param;
        if (kind == Kind::Param) params_line = head.line, params_col = head.column;
        expect(":");
        auto& list = kind == Kind::Constant ? doc.constants : kind == Kind::Differential ? doc.differentials : doc.params;
        if (!at(";")) {
          do {
            const Token& name = expect_ident();
            if (!kinds_.emplace(name.text, kind).second) {
              throw ParseError("symbol " + name.text + " declared twice", name.line, name.column);
            }
            list.push_back(name.text);
          } while (accept(","));
        }
        expect(";");
      } else if (head.text == "eq" || head.text == "eps") {
        const Token& name = expect_ident();
        expect(":");
        Polynomial e = expression();
        expect(";");
        auto& target = head.text == "eq" ? doc.equations : doc.perturbations;
        for (const auto& existing : target) {
          if (existing.name == name.text) {
            throw ParseError("duplicate statement for " + name.text, name.line, name.column);
          }
        }
        target.push_back({name.text, std::move(e), head.line, head.column});
      } else {
        throw ParseError("expected constants, diff, params, eq or eps but found '" + head.text + "'", head.line,
                         head.column);
      }
    }
    if (!options.allow_any_shape && doc.params.size() + 1 != doc.equations.size()) {
      throw ParseError("expected " + std::to_string(doc.equations.size()) + " equations in " +
                           std::to_string(doc.params.size()) + " parameters to differ by one "
                           "(pass --allow-any-shape to skip this check)",
                       params_line, params_col);
    }
    return doc;
  }

  Polynomial lone_expression() {
    Polynomial e = expression();
    accept(";");
    if (peek().kind != Tok::End) {
      throw ParseError("unexpected '" + peek().text + "' after the expression", peek().line, peek().column);
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool accept(const char* p) {
    if (!at(p)) return false;
    next();
    return true;
  }
  void expect(const char* p) {
    if (!accept(p)) {
      const Token& t = peek();
      throw ParseError(std::string("expected '") + p + "' but found " + describe(t), t.line, t.column);
    }
  }
  const Token& expect_ident() {
    if (peek().kind != Tok::Ident) {
      throw ParseError("expected a name but found " + describe(peek()), peek().line, peek().column);
    }
    return next();
  }
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
  }

  bool has_param(const Polynomial& p) const {
    for (SymbolId id : p.symbols()) {
      auto it = kinds_.find(Symbol::from_id(id).name());
      if (it != kinds_.end() && it->second == Kind::Param && !Symbol::from_id(id).is_constant()) return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial sum;
    bool negate = false;
    if (accept("-")) {
      negate = true;
    } else {
      accept("+");
    }
    Polynomial t = term();
    sum = negate ? -t : t;
    while (at("+") || at("-")) {
      bool minus = next().text == "-";
      Polynomial u = term();
      if (minus) {
        sum -= u;
      } else {
        sum += u;
      }
    }
    return sum;
  }

  Polynomial term() {
    Polynomial prod = power();
    while (at("*") || at("/")) {
      const Token& op = next();
      if (op.text == "*") {
        Polynomial f = power();
        if (has_param(prod) && has_param(f)) {
          throw ParseError(ErrorCode::NonlinearInParams, "product of parameter derivatives", op.line, op.column);
        }
        prod = prod * f;
      } else {
        const Token& d = peek();
        Polynomial f = power();
        if (!f.is_constant()) throw ParseError("division by a non-numeric expression", d.line, d.column);
        if (f.is_zero()) throw ParseError("division by zero", d.line, d.column);
        prod = prod.scaled(1 / f.constant_term());
      }
    }
    return prod;
  }

  Polynomial power() {
    Polynomial base = primary();
    while (at("^")) {
      const Token& op = next();
      if (peek().kind != Tok::Int) {
        throw ParseError("expected an integer exponent but found " + describe(peek()), peek().line, peek().column);
      }
      unsigned e = static_cast<unsigned>(std::stoul(next().text));
      if (e >= 2 && has_param(base)) {
        throw ParseError(ErrorCode::NonlinearInParams, "power of a parameter derivative", op.line, op.column);
      }
      base = base.pow(e);
    }
    return base;
  }

  Polynomial primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      next();
      return Polynomial(Rational(Integer(t.text)));
    }
    if (accept("(")) {
      Polynomial e = expression();
      expect(")");
      return e;
    }
    if (t.kind == Tok::Ident) {
      next();
      auto it = kinds_.find(t.text);
      if (it == kinds_.end()) {
        throw ParseError(ErrorCode::UndeclaredSymbol, "undeclared symbol " + t.text, t.line, t.column);
      }
      int order = 0;
      while (accept("'")) ++order;
      if (order == 0 && at("^") && toks_[pos_ + 1].kind == Tok::Punct && toks_[pos_ + 1].text == "(") {
        next();
        next();
        if (peek().kind != Tok::Int) {
          throw ParseError("expected a derivative order but found " + describe(peek()), peek().line,
                           peek().column);
        }
        order = std::stoi(next().text);
        expect(")");
      }
      if (it->second == Kind::Constant) {
        if (order > 0) throw ParseError("constant " + t.text + " has no derivatives", t.line, t.column);
        return Polynomial(Symbol::constant(t.text));
      }
      return Polynomial(Symbol::make(t.text, order));
    }
    throw ParseError("expected a number, a symbol or '(' but found " + describe(t), t.line, t.column);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, Kind> kinds_;
};

std::map<std::string, Kind> kinds_of(const SystemDocument& doc) {
  std::map<std::string, Kind> kinds;
  for (const auto& s : doc.constants) kinds[s] = Kind::Constant;
  for (const auto& s : doc.differentials) kinds[s] = Kind::Differential;
  for (const auto& s : doc.params) kinds[s] = Kind::Param;
  return kinds;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

bool operator==(const SystemDocument& a, const SystemDocument& b) {
  auto same = [](const std::vector<Equation>& x, const std::vector<Equation>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].name != y[k].name || !(x[k].expr == y[k].expr)) return false;
    }
    return true;
  };
  return a.constants == b.constants && a.differentials == b.differentials && a.params == b.params &&
         same(a.equations, b.equations) && same(a.perturbations, b.perturbations);
}

SystemDocument parse_document(const std::string& text, const ParseOptions& options) {
  return Parser(tokenize(text), {}).document(options);
}

Polynomial parse_expression(const std::string& text, const SystemDocument& doc) {
  return Parser(tokenize(text), kinds_of(doc)).lone_expression();
}

LinearDiffPoly to_linear(const Polynomial& expr, const std::vector<std::string>& params) {
  std::map<std::string, int> index;
  for (std::size_t j = 0; j < params.size(); ++j) index[params[j]] = static_cast<int>(j) + 1;
  std::vector<Term> free_terms;
  std::map<int, std::map<int, std::vector<Term>>> parts;
  for (const auto& t : expr.terms()) {
    std::optional<std::pair<int, int>> param;  // (j, k)
    std::vector<Monomial::Factor> rest;
    for (const auto& [id, e] : t.mono.factors()) {
      Symbol s = Symbol::from_id(id);
      auto it = s.is_constant() ? index.end() : index.find(s.name());
      if (it == index.end()) {
        rest.emplace_back(id, e);
        continue;
      }
      if (param || e > 1) throw Error(ErrorCode::NonlinearInParams, "expression is not linear in the parameters");
      param = std::make_pair(it->second, s.order());
    }
    if (!param) {
      free_terms.push_back(t);
    } else {
      parts[param->first][param->second].push_back({Monomial::from_factors(std::move(rest)), t.coeff});
    }
  }
  std::map<int, DiffOperator> ops;
  for (auto& [j, by_order] : parts) {
    std::map<int, Polynomial> coeffs;
    for (auto& [k, terms] : by_order) coeffs.emplace(k, Polynomial::from_terms(std::move(terms)));
    ops.emplace(j, DiffOperator(coeffs));
  }
  return LinearDiffPoly(Polynomial::from_terms(std::move(free_terms)), ops);
}

LinearSystem to_system(const SystemDocument& doc) {
  std::vector<LinearDiffPoly> polys;
  std::vector<std::string> names;
  for (const auto& eq : doc.equations) {
    polys.push_back(to_linear(eq.expr, doc.params));
    names.push_back(eq.name);
  }
  return LinearSystem(std::move(polys), static_cast<int>(doc.params.size()), doc.params, std::move(names));
}

std::string render_linear(const LinearDiffPoly& f, const std::vector<std::string>& params) {
  std::string out = f.free_term().is_zero() ? "" : f.free_term().to_string();
  for (const auto& [j, L] : f.ops()) {
    const auto& coeffs = L.coeffs();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      std::string u = Symbol::make(params.at(j - 1), it->first).to_string();
      const Polynomial& a = it->second;
      bool negative = false;
      std::string factor;
      if (a.is_constant()) {
        Rational c = a.constant_term();
        negative = c < 0;
        Rational m = abs(c);
        factor = m == 1 ? "" : m.get_str() + "*";
      } else if (a.term_count() == 1) {
        negative = a.leading_term().coeff < 0;
        factor = (negative ? -a : a).to_string() + "*";
      } else {
        factor = "(" + a.to_string() + ")*";
      }
      if (out.empty()) {
        out = (negative ? "-" : "") + factor + u;
      } else {
        out += (negative ? " - " : " + ") + factor + u;
      }
    }
  }
  return out.empty() ? "0" : out;
}

std::string render(const SystemDocument& doc) {
  std::string out;
  if (!doc.constants.empty()) out += "constants: " + join(doc.constants) + ";\n";
  if (!doc.differentials.empty()) out += "diff: " + join(doc.differentials) + ";\n";
  out += "params: " + join(doc.params) + ";\n";
  for (const auto& eq : doc.equations) {
    out += "eq " + eq.name + ": " + render_linear(to_linear(eq.expr, doc.params), doc.params) + ";\n";
  }
  for (const auto& eps : doc.perturbations) {
    out += "eps " + eps.name + ": " + render_linear(to_linear(eps.expr, doc.params), doc.params) + ";\n";
  }
  return out;
}

SystemDocument from_system(const LinearSystem& P) {
  SystemDocument doc;
  doc.params = P.param_names();
  std::set<std::string> seen(doc.params.begin(), doc.params.end());
  std::vector<SymbolId> ids;
  auto collect = [&](const Polynomial& p) {
    for (SymbolId id : p.symbols()) ids.push_back(id);
  };
  for (int i = 1; i <= P.size(); ++i) {
    const auto& f = P.poly(i);
    collect(f.free_term());
    for (const auto& kv : f.ops()) {
      for (const auto& c : kv.second.coeffs()) collect(c.second);
    }
    doc.equations.push_back({P.poly_names()[i - 1], f.expand(P.param_names()), 0, 0});
  }
  std::vector<Symbol> bases;
  for (SymbolId id : ids) bases.push_back(Symbol::from_id(id).base());
  std::sort(bases.begin(), bases.end(), [](Symbol a, Symbol b) { return canonical_compare(a, b) < 0; });
  for (Symbol s : bases) {
    if (!seen.insert(s.name()).second) continue;
    (s.is_constant() ? doc.constants : doc.differentials).push_back(s.name());
  }
  return doc;
}

}  // namespace diffelim::cli
