#include "diffelim/diffsys.hpp"

#include <algorithm>
#include <set>

#include "diffelim/error.hpp"

namespace diffelim {

// ---------------------------------------------------------- DiffOperator

DiffOperator::DiffOperator(const std::map<int, Polynomial>& coeffs) {
  for (const auto& [k, a] : coeffs) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative order in an operator");
    if (!a.is_zero()) coeffs_.emplace(k, a);
  }
}

DiffOperator DiffOperator::term(int k, const Polynomial& a) { return DiffOperator({{k, a}}); }

Polynomial DiffOperator::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Polynomial() : it->second;
}

std::vector<int> DiffOperator::support() const {
  std::vector<int> s;
  for (const auto& kv : coeffs_) s.push_back(kv.first);
  return s;
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const {
  DiffOperator r = *this;
  for (const auto& [k, a] : o.coeffs_) {
    auto [it, fresh] = r.coeffs_.emplace(k, a);
    if (!fresh) {
      it->second += a;
      if (it->second.is_zero()) r.coeffs_.erase(it);
    }
  }
  return r;
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator r = *this;
  for (auto& kv : r.coeffs_) kv.second = -kv.second;
  return r;
}

DiffOperator DiffOperator::operator-(const DiffOperator& o) const { return *this + (-o); }

DiffOperator DiffOperator::scaled(const Polynomial& a) const {
  return map_coeffs([&](const Polynomial& c) { return a * c; });
}

DiffOperator DiffOperator::derived() const {
  std::map<int, Polynomial> out;
  for (const auto& [k, a] : coeffs_) {
    out[k] += derive(a);
    out[k + 1] += a;
  }
  return DiffOperator(out);
}

DiffOperator DiffOperator::shifted(int s) const {
  std::map<int, Polynomial> out;
  for (const auto& [k, a] : coeffs_) {
    if (k + s < 0) throw Error(ErrorCode::InvalidArgument, "operator shift below order zero");
    out.emplace(k + s, a);
  }
  return DiffOperator(out);
}

Polynomial DiffOperator::apply(const std::string& u) const {
  Polynomial r;
  for (const auto& [k, a] : coeffs_) r += a * Polynomial(Symbol::make(u, k));
  return r;
}

Polynomial DiffOperator::apply(const Polynomial& h) const {
  Polynomial r, dh = h;
  int at = 0;
  for (const auto& [k, a] : coeffs_) {
    for (; at < k; ++at) dh = derive(dh);
    r += a * dh;
  }
  return r;
}

DiffOperator DiffOperator::map_coeffs(const std::function<Polynomial(const Polynomial&)>& f) const {
  std::map<int, Polynomial> out;
  for (const auto& [k, a] : coeffs_) out.emplace(k, f(a));
  return DiffOperator(out);
}

// -------------------------------------------------------- LinearDiffPoly

LinearDiffPoly::LinearDiffPoly(Polynomial free_term, const std::map<int, DiffOperator>& ops)
    : free_(std::move(free_term)) {
  for (const auto& [j, L] : ops) {
    if (j < 1) throw Error(ErrorCode::InvalidArgument, "parameter indices start at 1");
    if (!L.is_zero()) ops_.emplace(j, L);
  }
}

const DiffOperator& LinearDiffPoly::op(int j) const {
  static const DiffOperator zero;
  auto it = ops_.find(j);
  return it == ops_.end() ? zero : it->second;
}

int LinearDiffPoly::order() const noexcept {
  int o = -1;
  for (const auto& kv : ops_) o = std::max(o, kv.second.deg());
  return o;
}

Polynomial LinearDiffPoly::expand(const std::vector<std::string>& params) const {
  Polynomial r = free_;
  for (const auto& [j, L] : ops_) r += L.apply(params.at(j - 1));
  return r;
}

LinearDiffPoly derive_lin(const LinearDiffPoly& f) {
  std::map<int, DiffOperator> ops;
  for (const auto& [j, L] : f.ops()) ops.emplace(j, L.derived());
  return LinearDiffPoly(derive(f.free_term()), ops);
}

LinearDiffPoly derive_lin(const LinearDiffPoly& f, int times) {
  LinearDiffPoly r = f;
  for (int k = 0; k < times; ++k) r = derive_lin(r);
  return r;
}

// ----------------------------------------------------------- LinearSystem

LinearSystem::LinearSystem(std::vector<LinearDiffPoly> polys, int param_count, std::vector<std::string> param_names,
                           std::vector<std::string> poly_names)
    : polys_(std::move(polys)),
      params_(param_count),
      param_names_(std::move(param_names)),
      poly_names_(std::move(poly_names)) {
  if (param_count < 0) throw Error(ErrorCode::InvalidArgument, "negative parameter count");
  for (const auto& f : polys_) {
    if (!f.ops().empty() && f.ops().rbegin()->first > param_count) {
      throw Error(ErrorCode::InvalidArgument, "operator refers to a parameter index beyond the parameter count");
    }
  }
  if (param_names_.empty()) {
    for (int j = 1; j <= param_count; ++j) param_names_.push_back("u" + std::to_string(j));
  }
  if (poly_names_.empty()) {
    for (int i = 1; i <= size(); ++i) poly_names_.push_back("f" + std::to_string(i));
  }
  if (static_cast<int>(param_names_.size()) != param_count || static_cast<int>(poly_names_.size()) != size()) {
    throw Error(ErrorCode::InvalidArgument, "name list lengths do not match the system");
  }
}

std::vector<int> LinearSystem::orders() const {
  std::vector<int> o;
  for (const auto& f : polys_) o.push_back(f.order());
  return o;
}

int LinearSystem::total_order() const {
  int n = 0;
  for (const auto& f : polys_) n += f.order();
  return n;
}

std::vector<int> LinearSystem::active_params(const std::vector<int>& rows) const {
  std::set<int> active;
  for (int i : rows) {
    for (const auto& kv : poly(i).ops()) active.insert(kv.first);
  }
  return {active.begin(), active.end()};
}

LinearSystem LinearSystem::restrict_to(const std::vector<int>& rows) const {
  std::vector<int> active = active_params(rows);
  std::map<int, int> renumber;
  std::vector<std::string> names;
  for (int j : active) {
    renumber[j] = static_cast<int>(renumber.size()) + 1;
    names.push_back(param_names_[j - 1]);
  }
  std::vector<LinearDiffPoly> polys;
  std::vector<std::string> poly_names;
  for (int i : rows) {
    std::map<int, DiffOperator> ops;
    for (const auto& [j, L] : poly(i).ops()) ops.emplace(renumber[j], L);
    polys.emplace_back(poly(i).free_term(), ops);
    poly_names.push_back(poly_names_[i - 1]);
  }
  return LinearSystem(std::move(polys), static_cast<int>(active.size()), std::move(names), std::move(poly_names));
}

int nu(const LinearSystem& P) {
  std::vector<int> all(P.size());
  for (int i = 0; i < P.size(); ++i) all[i] = i + 1;
  return static_cast<int>(P.active_params(all).size());
}

ValidationReport validate(const LinearSystem& P) {
  ValidationReport r;
  const int n = P.size();
  for (int i = 1; i <= n; ++i) {
    if (P.poly(i).order() < 0) r.positive_order.offenders.push_back(i);
  }
  for (int i = 1; i <= n; ++i) {
    for (int k = i + 1; k <= n; ++k) {
      if (P.poly(i) == P.poly(k)) {
        r.distinct.offenders.push_back(i);
        r.distinct.offenders.push_back(k);
      }
    }
  }
  bool any_free = std::any_of(P.polys().begin(), P.polys().end(),
                              [](const LinearDiffPoly& f) { return !f.free_term().is_zero(); });
  r.nonhomogeneous.pass = any_free;
  r.nu = nu(P);
  for (int j = 1; j <= P.param_count(); ++j) {
    bool used = std::any_of(P.polys().begin(), P.polys().end(), [j](const LinearDiffPoly& f) { return f.has(j); });
    if (!used) r.all_params.offenders.push_back(j);
  }
  r.positive_order.pass = r.positive_order.offenders.empty();
  r.distinct.pass = r.distinct.offenders.empty();
  r.all_params.pass = r.nu == n - 1 && P.param_count() == n - 1;
  return r;
}

GammaProfile gamma_profile(const LinearSystem& P) {
  GammaProfile g;
  const int m = P.param_count();
  g.orders = P.orders();
  for (int o : g.orders) g.N += o;
  for (int j = 1; j <= m; ++j) {
    int lower = -1, upper = -1;
    for (int i = 1; i <= P.size(); ++i) {
      const DiffOperator& L = P.poly(i).op(j);
      if (L.is_zero()) continue;
      int lo = L.ldeg(), up = g.orders[i - 1] - L.deg();
      lower = lower < 0 ? lo : std::min(lower, lo);
      upper = upper < 0 ? up : std::min(upper, up);
    }
    if (lower < 0) throw Error(ErrorCode::EmptyColumn, "parameter " + P.param_names()[j - 1] + " does not occur");
    g.lower.push_back(lower);
    g.upper.push_back(upper);
    g.gamma.push_back(lower + upper);
    g.total += lower + upper;
  }
  for (int i = 1; i <= P.size(); ++i) {
    for (const auto& kv : P.poly(i).ops()) {
      int j = kv.first;
      g.intervals[{i, j}] = {g.lower[j - 1], g.orders[i - 1] - g.upper[j - 1]};
    }
  }
  return g;
}

namespace {

std::map<std::string, Polynomial> assignment_map(const std::vector<std::pair<std::string, Polynomial>>& assignment) {
  std::map<std::string, Polynomial> images;
  for (const auto& [name, image] : assignment) {
    if (!images.emplace(name, image).second) {
      throw Error(ErrorCode::InconsistentAssignment, "symbol " + name + " is assigned twice");
    }
  }
  return images;
}

Polynomial apply_images(const Polynomial& f, const std::map<std::string, Polynomial>& images) {
  if (images.empty()) return f;
  return f.substitute([&](Symbol s) -> std::optional<Polynomial> {
    auto it = images.find(s.name());
    if (it == images.end()) return std::nullopt;
    return derive(it->second, static_cast<unsigned>(s.order()));
  });
}

}  // namespace

Polynomial specialize(const Polynomial& f, const std::vector<std::pair<std::string, Polynomial>>& assignment) {
  return apply_images(f, assignment_map(assignment));
}

LinearSystem specialize(const LinearSystem& P, const std::vector<std::pair<std::string, Polynomial>>& assignment) {
  auto images = assignment_map(assignment);
  std::vector<LinearDiffPoly> polys;
  for (const auto& f : P.polys()) {
    std::map<int, DiffOperator> ops;
    for (const auto& [j, L] : f.ops()) {
      ops.emplace(j, L.map_coeffs([&](const Polynomial& a) { return apply_images(a, images); }));
    }
    polys.emplace_back(apply_images(f.free_term(), images), ops);
  }
  return LinearSystem(std::move(polys), P.param_count(), P.param_names(), P.poly_names());
}

LinearSystem shift_params(const LinearSystem& P, const std::vector<int>& s) {
  if (static_cast<int>(s.size()) != P.param_count()) {
    throw Error(ErrorCode::InvalidArgument, "one shift per parameter expected");
  }
  std::vector<LinearDiffPoly> polys;
  for (const auto& f : P.polys()) {
    std::map<int, DiffOperator> ops;
    for (const auto& [j, L] : f.ops()) ops.emplace(j, L.shifted(-s[j - 1]));
    polys.emplace_back(f.free_term(), ops);
  }
  return LinearSystem(std::move(polys), P.param_count(), P.param_names(), P.poly_names());
}

}  // namespace diffelim
