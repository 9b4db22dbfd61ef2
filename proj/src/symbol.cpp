#include "diffelim/symbol.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

#include "diffelim/error.hpp"

namespace diffelim {
namespace {

struct SymbolInfo {
  std::string name;
  int order;
  bool is_constant;
};

class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  SymbolId intern(std::string_view name, int order, bool is_constant) {
    if (order < 0) {
      throw Error(ErrorCode::InvalidArgument, "negative derivative order for " + std::string(name));
    }
    if (is_constant && order != 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "constant symbol " + std::string(name) + " has no derivatives");
    }
    Key key{std::string(name), order, is_constant};
    {
      std::shared_lock lock(mutex_);
      if (auto it = index_.find(key); it != index_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    auto id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back({std::get<0>(key), order, is_constant});
    index_.emplace(std::move(key), id);
    return id;
  }

  const SymbolInfo& info(SymbolId id) const {
    std::shared_lock lock(mutex_);
    return symbols_.at(id);
  }

 private:
  using Key = std::tuple<std::string, int, bool>;

  mutable std::shared_mutex mutex_;
  std::deque<SymbolInfo> symbols_;  // deque: references stay valid on growth
  std::map<Key, SymbolId> index_;
};

}  // namespace

Symbol Symbol::make(std::string_view name, int order, bool is_constant) {
  return Symbol(SymbolTable::instance().intern(name, order, is_constant));
}

const std::string& Symbol::name() const { return SymbolTable::instance().info(id_).name; }

int Symbol::order() const { return SymbolTable::instance().info(id_).order; }

bool Symbol::is_constant() const { return SymbolTable::instance().info(id_).is_constant; }

std::optional<Symbol> Symbol::derivative() const {
  const auto& info = SymbolTable::instance().info(id_);
  if (info.is_constant) return std::nullopt;
  return make(info.name, info.order + 1, false);
}

Symbol Symbol::shifted(int k) const {
  if (k == 0) return *this;
  const auto& info = SymbolTable::instance().info(id_);
  return make(info.name, info.order + k, info.is_constant);
}

std::string Symbol::to_string() const {
  const auto& info = SymbolTable::instance().info(id_);
  switch (info.order) {
    case 0: return info.name;
    case 1: return info.name + "'";
    case 2: return info.name + "''";
    default: return info.name + "^(" + std::to_string(info.order) + ")";
  }
}

std::strong_ordering natural_compare(std::string_view a, std::string_view b) {
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      while (je < b.size() && is_digit(b[je])) ++je;
      // strip leading zeros, then compare by length and digits
      std::size_t is = i, js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      if (ie - is != je - js) return (ie - is) <=> (je - js);
      if (auto c = a.substr(is, ie - is).compare(b.substr(js, je - js)); c != 0) {
        return c <=> 0;
      }
      if (ie - i != je - j) return (ie - i) <=> (je - j);
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] <=> b[j];
      ++i;
      ++j;
    }
  }
  return (a.size() - i) <=> (b.size() - j);
}

std::strong_ordering canonical_compare(Symbol a, Symbol b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = natural_compare(a.name(), b.name()); c != 0) return c;
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  return b.is_constant() <=> a.is_constant();
}

}  // namespace diffelim
