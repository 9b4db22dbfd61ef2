#include "diffelim/rational.hpp"

#include <stdexcept>

namespace diffelim {

Rational parse_rational(const std::string& text) {
  auto digits = [](const std::string& s, std::size_t from) {
    if (from < s.size() && (s[from] == '-' || s[from] == '+')) ++from;
    if (from == s.size()) return false;
    for (std::size_t k = from; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') return false;
    }
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!digits(num, 0) || !digits(den, 0) || (!den.empty() && (den[0] == '-' || den[0] == '+'))) {
    throw std::invalid_argument("malformed rational: " + text);
  }
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + text);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace diffelim
