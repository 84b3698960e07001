#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace chucoal {

// Exact arithmetic for probabilities and [0,1]-valued evaluations.
using Rational = boost::rational<std::int64_t>;

// The two-mode numeric tower: exact rationals are the reference semantics,
// floats serve the quantum back-end. A value collection never mixes modes.
enum class NumericMode { rational, floating };

inline const char* to_string(NumericMode mode) {
  return mode == NumericMode::rational ? "rational" : "float";
}

// Default absolute tolerance for float equality (eps_eq).
inline constexpr double kDefaultEps = 1e-9;

// Default grid width for float probability quantization inside partition
// refinement signatures (eps_grid).
inline constexpr double kDefaultEpsGrid = 1e-6;

// A probability: exact in rational mode, double in float mode.
using Prob = std::variant<Rational, double>;

NumericMode prob_mode(const Prob& p);
double prob_value(const Prob& p);
bool prob_equal(const Prob& a, const Prob& b, double eps = kDefaultEps);

// True iff p lies in (0,1]; Yes-answers require this.
bool prob_in_unit_open(const Prob& p);

// "p/q" for rationals, shortest round-trippable decimal for floats.
std::string prob_repr(const Prob& p);

std::string rational_repr(const Rational& r);
Rational parse_rational(std::string_view text);  // accepts "p/q" and "p"

// Shortest decimal representation that parses back to the same double.
std::string double_repr(double x);

}  // namespace chucoal
