#include "chucoal/numeric.hpp"

#include "chucoal/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace chucoal {

NumericMode prob_mode(const Prob& p) {
  return std::holds_alternative<Rational>(p) ? NumericMode::rational
                                             : NumericMode::floating;
}

double prob_value(const Prob& p) {
  if (const auto* r = std::get_if<Rational>(&p)) {
    return boost::rational_cast<double>(*r);
  }
  return std::get<double>(p);
}

bool prob_equal(const Prob& a, const Prob& b, double eps) {
  if (a.index() != b.index()) return false;
  if (const auto* ra = std::get_if<Rational>(&a)) {
    return *ra == std::get<Rational>(b);
  }
  return std::fabs(std::get<double>(a) - std::get<double>(b)) <= eps;
}

bool prob_in_unit_open(const Prob& p) {
  if (const auto* r = std::get_if<Rational>(&p)) {
    return *r > Rational(0) && *r <= Rational(1);
  }
  double x = std::get<double>(p);
  return std::isfinite(x) && x > 0.0 && x <= 1.0;
}

std::string prob_repr(const Prob& p) {
  if (const auto* r = std::get_if<Rational>(&p)) return rational_repr(*r);
  return double_repr(std::get<double>(p));
}

std::string rational_repr(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    std::int64_t value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw Error(ErrorCode::parse,
                  "not an integer in rational literal: '" + std::string(s) + "'");
    }
    return value;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text));
  }
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) {
    throw Error(ErrorCode::parse, "zero denominator in rational literal");
  }
  return Rational(num, den);
}

std::string double_repr(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return std::to_string(x);
  return std::string(buf, ptr);
}

}  // namespace chucoal
