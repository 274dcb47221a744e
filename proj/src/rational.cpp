#include "pimat/rational.hpp"

#include <cctype>

namespace pimat {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  std::size_t digits = 0;
  bool slash = false;
  std::size_t after_slash = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      slash ? ++after_slash : ++digits;
    } else if (c == '/' && !slash) {
      slash = true;
    } else {
      throw ParseError("invalid rational literal: '" + std::string(text) + "'");
    }
  }
  if (digits == 0 || (slash && after_slash == 0)) {
    throw ParseError("invalid rational literal: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("invalid rational literal: '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace pimat
