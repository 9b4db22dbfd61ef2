#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace diffelim {

using SymbolId = std::uint32_t;

/// A named indeterminate together with a derivative order, e.g. a^(2).
///
/// Symbols are interned in a process-wide table, so a Symbol is a cheap
/// handle. Constant symbols are annihilated by the derivation and only exist
/// at order 0. The table is append-only and safe for concurrent use.
class Symbol {
 public:
  /// Interns (name, order, is_constant). A constant symbol must have order 0.
  static Symbol make(std::string_view name, int order = 0, bool is_constant = false);
  static Symbol constant(std::string_view name) { return make(name, 0, true); }

  static Symbol from_id(SymbolId id) { return Symbol(id); }

  SymbolId id() const noexcept { return id_; }
  const std::string& name() const;
  int order() const;
  bool is_constant() const;

  /// Next derivative; empty for constant symbols.
  std::optional<Symbol> derivative() const;
  /// The k-th derivative of the same base name (order() + k).
  Symbol shifted(int k) const;
  Symbol base() const { return shifted(-order()); }

  /// Text form: name, name', name'', name^(k).
  std::string to_string() const;

  friend bool operator==(Symbol a, Symbol b) noexcept { return a.id_ == b.id_; }

 private:
  explicit Symbol(SymbolId id) : id_(id) {}
  SymbolId id_;
};

/// Canonical (display) order on symbols: by name with embedded integers
/// compared numerically, then by derivative order, constants first.
std::strong_ordering canonical_compare(Symbol a, Symbol b);

/// Name comparison with embedded decimal runs compared by value
/// ("c2" < "c10").
std::strong_ordering natural_compare(std::string_view a, std::string_view b);

}  // namespace diffelim
