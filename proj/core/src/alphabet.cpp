#include "chucoal/alphabet.hpp"

#include "chucoal/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace chucoal {

ValueAlphabet::ValueAlphabet(AlphabetKind kind, std::vector<std::string> symbols)
    : kind_(kind),
      symbols_(std::make_shared<const std::vector<std::string>>(
          std::move(symbols))) {}

ValueAlphabet ValueAlphabet::symbols(std::vector<std::string> elements) {
  if (elements.empty()) {
    throw Error(ErrorCode::invalid_argument,
                "a symbol alphabet needs at least one element");
  }
  std::set<std::string_view> seen(elements.begin(), elements.end());
  if (seen.size() != elements.size()) {
    throw Error(ErrorCode::invalid_argument, "duplicate symbol in alphabet");
  }
  return ValueAlphabet(AlphabetKind::symbols, std::move(elements));
}

ValueAlphabet ValueAlphabet::booleans() { return symbols({"0", "1"}); }

ValueAlphabet ValueAlphabet::rational_unit() {
  return ValueAlphabet(AlphabetKind::rational_unit, {});
}

ValueAlphabet ValueAlphabet::float_unit() {
  return ValueAlphabet(AlphabetKind::float_unit, {});
}

NumericMode ValueAlphabet::numeric_mode() const {
  switch (kind_) {
    case AlphabetKind::rational_unit: return NumericMode::rational;
    case AlphabetKind::float_unit: return NumericMode::floating;
    case AlphabetKind::symbols: break;
  }
  throw Error(ErrorCode::invalid_argument,
              "symbol alphabet has no numeric mode");
}

std::optional<std::int32_t> ValueAlphabet::symbol_index(
    std::string_view name) const {
  auto it = std::find(symbols_->begin(), symbols_->end(), name);
  if (it == symbols_->end()) return std::nullopt;
  return static_cast<std::int32_t>(it - symbols_->begin());
}

bool ValueAlphabet::contains(const Value& v) const {
  switch (kind_) {
    case AlphabetKind::symbols:
      if (const auto* i = std::get_if<std::int32_t>(&v)) {
        return *i >= 0 && static_cast<std::size_t>(*i) < symbols_->size();
      }
      return false;
    case AlphabetKind::rational_unit:
      if (const auto* r = std::get_if<Rational>(&v)) {
        return *r >= Rational(0) && *r <= Rational(1);
      }
      return false;
    case AlphabetKind::float_unit:
      if (const auto* d = std::get_if<double>(&v)) {
        return std::isfinite(*d) && *d >= 0.0 && *d <= 1.0;
      }
      return false;
  }
  return false;
}

bool ValueAlphabet::equal(const Value& a, const Value& b, double eps) const {
  return value_equal(a, b, eps);
}

std::string ValueAlphabet::repr(const Value& v) const {
  if (const auto* i = std::get_if<std::int32_t>(&v)) {
    if (*i >= 0 && static_cast<std::size_t>(*i) < symbols_->size()) {
      return (*symbols_)[static_cast<std::size_t>(*i)];
    }
    return "<symbol#" + std::to_string(*i) + ">";
  }
  if (const auto* r = std::get_if<Rational>(&v)) return rational_repr(*r);
  return double_repr(std::get<double>(v));
}

Value ValueAlphabet::zero() const {
  switch (kind_) {
    case AlphabetKind::rational_unit: return Value(Rational(0));
    case AlphabetKind::float_unit: return Value(0.0);
    case AlphabetKind::symbols: break;
  }
  throw Error(ErrorCode::invalid_argument, "symbol alphabet has no zero value");
}

Value ValueAlphabet::symbol(std::string_view name) const {
  auto idx = symbol_index(name);
  if (!idx) {
    throw Error(ErrorCode::invalid_argument,
                "unknown symbol '" + std::string(name) + "'",
                std::string(name));
  }
  return Value(*idx);
}

bool value_equal(const Value& a, const Value& b, double eps) {
  if (a.index() != b.index()) return false;
  if (const auto* i = std::get_if<std::int32_t>(&a)) {
    return *i == std::get<std::int32_t>(b);
  }
  if (const auto* r = std::get_if<Rational>(&a)) {
    return *r == std::get<Rational>(b);
  }
  return std::fabs(std::get<double>(a) - std::get<double>(b)) <= eps;
}

}  // namespace chucoal
