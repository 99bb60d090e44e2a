#include "pil/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace pil {

namespace {

long long parse_ll(const std::string& s) {
  if (s.empty()) throw SchemaError("empty integer in rational literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw SchemaError("sign without digits in rational literal");
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw SchemaError("bad rational literal: '" + s + "'");
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size())
    throw SchemaError("rational literal out of range: '" + s + "'");
  return v;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_ll(s));
  long long num = parse_ll(s.substr(0, slash));
  long long den = parse_ll(s.substr(slash + 1));
  if (den == 0) throw SchemaError("zero denominator: '" + s + "'");
  return Rat(num, den);
}

std::string format_rat(const Rat& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

ExtRat parse_ext(const std::string& s) {
  if (s == "inf") return ExtRat::inf();
  return ExtRat(parse_rat(s));
}

std::string format_ext(const ExtRat& e) {
  return e.infinite ? std::string("inf") : format_rat(e.value);
}

}  // namespace pil
