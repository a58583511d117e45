#include "dynflow/rational.hpp"

#include <cctype>
#include <sstream>

namespace dynflow {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(s)) {
      throw std::invalid_argument("not a rational: '" + s + "'");
    }
    return Rational(BigInt(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
  const BigInt d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rational(BigInt(num), d);
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

BigInt rational_floor(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

BigInt rational_ceil(const Rational& r) {
  const BigInt f = rational_floor(r);
  return f == r ? f : f + 1;
}

}  // namespace dynflow
