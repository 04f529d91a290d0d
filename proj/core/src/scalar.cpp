#include "nonholonomy/scalar.hpp"

#include <cctype>

#include "nonholonomy/errors.hpp"

namespace nonholonomy {

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

std::string to_string(std::span<const Scalar> pt) {
  std::string out = "(";
  for (std::size_t i = 0; i < pt.size(); ++i) {
    if (i) out += ", ";
    out += pt[i].get_str();
  }
  return out + ")";
}

}  // namespace nonholonomy
