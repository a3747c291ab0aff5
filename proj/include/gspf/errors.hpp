#pragma once

#include <stdexcept>

namespace gspf {

// Error taxonomy mirrors the CLI exit codes: validation -> 2, numerical -> 3, I/O -> 4.

// Caller passed parameters outside an operation's contract.
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input data is inadmissible (malformed file, negative weight, decreasing knots).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: non-convergence, factorization breakdown, exhausted
// construction budgets.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gspf
