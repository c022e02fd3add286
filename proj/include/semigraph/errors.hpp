#pragma once

#include <stdexcept>

namespace semigraph {

// Rejected input: malformed JSON, context mismatches, duplicate set
// elements, unknown vertices, invalid witnesses.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance too large or search budget exhausted.  Distinct from a negative
// mathematical answer, which is an empty optional, never an exception.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semigraph
