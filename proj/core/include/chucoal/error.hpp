#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace chucoal {

// Machine-inspectable failure categories. Every operation that can reject its
// input throws Error with one of these codes; the `id` field names the
// offending point/attribute/state/question when there is one.
enum class ErrorCode {
  domain_mismatch,    // a map mentions an id the space does not have
  space_mismatch,     // incompatible Chu spaces (alphabet, composition)
  question_mismatch,  // coalgebras do not share a question sequence
  mode_mismatch,      // exact-rational data mixed with float data
  dimension_mismatch, // vector/subspace/operator dimensions disagree
  carrier_limit,      // powerset or closure size guard tripped
  state_explosion,    // materialize exceeded its state cap
  invalid_argument,   // structural violation (empty alphabet, zero vector, ...)
  numeric,            // no consistent numeric solution within tolerance
  parse,              // document syntax or schema error
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message, std::string id = {})
      : std::runtime_error(message), code_(code), id_(std::move(id)) {}

  ErrorCode code() const { return code_; }

  // Offending id, empty when the error is not about a particular id.
  const std::string& id() const { return id_; }

private:
  ErrorCode code_;
  std::string id_;
};

// Document syntax error with a 1-based source position.
class ParseError : public Error {
public:
  ParseError(const std::string& message, int line, int column)
      : Error(ErrorCode::parse, message), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace chucoal
