#pragma once

#include <stdexcept>

namespace polyct {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable input data (files, headers, tables). Maps to CLI
// exit code 2.
struct ParseError : Error {
  using Error::Error;
};

// Violated numeric precondition or contract (out-of-range energy, zero
// variance, insufficient matches, ...). Maps to CLI exit code 3.
struct ContractError : Error {
  using Error::Error;
};

}  // namespace polyct
