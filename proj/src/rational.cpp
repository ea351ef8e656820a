#include "fraisse/rational.hpp"

#include <cctype>

namespace fraisse {

std::string to_string(const Q& x) {
  return numer(x).str() + "/" + denom(x).str();
}

namespace {

Z parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ParseError("empty integer in rational '" + std::string(whole) + "'");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Z(digits);
}

}  // namespace

Q parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Q(parse_integer(text, text));
  Z num = parse_integer(text.substr(0, slash), text);
  Z den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Q(num, den);
}

Z floor(const Q& x) {
  Z n = numer(x);
  Z d = denom(x);
  Z quot = n / d;  // truncates toward zero
  if (n < 0 && quot * d != n) quot -= 1;
  return quot;
}

Z ceil(const Q& x) {
  Z f = floor(x);
  return Q(f) == x ? f : Z(f + 1);
}

std::string to_string(const ExtRational& x) {
  return x.is_infinite() ? std::string("inf") : to_string(x.value());
}

ExtRational parse_ext_rational(std::string_view text) {
  if (text == "inf") return ExtRational::infinity();
  Q v = parse_rational(text);
  if (v < 0) throw ParseError("negative extended rational '" + std::string(text) + "'");
  return ExtRational(v);
}

std::ostream& operator<<(std::ostream& os, const ExtRational& x) { return os << to_string(x); }

}  // namespace fraisse
