#pragma once

#include "chucoal/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chucoal {

// An evaluation entry of a Chu space: a symbol (stored as an index into the
// alphabet's symbol table), an exact rational in [0,1], or a float in [0,1].
using Value = std::variant<std::int32_t, Rational, double>;

enum class AlphabetKind { symbols, rational_unit, float_unit };

// The value set K that a Chu space evaluates into. Spaces can only be
// compared or connected by morphisms when their alphabets are equal.
class ValueAlphabet {
public:
  static ValueAlphabet symbols(std::vector<std::string> elements);
  static ValueAlphabet booleans();  // symbols {"0", "1"}
  static ValueAlphabet rational_unit();
  static ValueAlphabet float_unit();

  AlphabetKind kind() const { return kind_; }
  bool numeric() const { return kind_ != AlphabetKind::symbols; }
  NumericMode numeric_mode() const;  // throws for symbol alphabets

  const std::vector<std::string>& symbol_table() const { return *symbols_; }
  std::optional<std::int32_t> symbol_index(std::string_view name) const;

  // Membership: symbol indices in range, numeric values inside [0,1].
  bool contains(const Value& v) const;

  bool equal(const Value& a, const Value& b, double eps = kDefaultEps) const;
  std::string repr(const Value& v) const;

  Value zero() const;  // numeric alphabets only
  Value symbol(std::string_view name) const;

  bool operator==(const ValueAlphabet& other) const {
    return kind_ == other.kind_ &&
           (symbols_ == other.symbols_ || *symbols_ == *other.symbols_);
  }

private:
  ValueAlphabet(AlphabetKind kind, std::vector<std::string> symbols);

  AlphabetKind kind_;
  // Shared: alphabets are copied into every space that carries them.
  std::shared_ptr<const std::vector<std::string>> symbols_;
};

// Mode-agnostic value equality; symbol values compare by index, rationals
// exactly, floats within eps. Different variants never compare equal.
bool value_equal(const Value& a, const Value& b, double eps = kDefaultEps);

}  // namespace chucoal
