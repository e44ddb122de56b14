#ifndef HELION_ERRORS_HPP
#define HELION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace helion {

// Exit-code mapping used by the CLI: validation -> 2, numeric -> 3, io -> 4.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration, violated precondition, malformed input.
struct ValidationError : Error {
    using Error::Error;
};

// Incompatible shapes in a linear-algebra operation.
struct DimensionError : ValidationError {
    using ValidationError::ValidationError;
};

// A computation produced values outside its guaranteed range, or two
// redundant computation paths disagreed.
struct NumericError : Error {
    using Error::Error;
};

// An iterative solver hit its iteration cap before reaching tolerance.
struct ConvergenceError : NumericError {
    using NumericError::NumericError;
};

// File-system or serialization failure; message carries the path.
struct IoError : Error {
    using Error::Error;
};

}  // namespace helion

#endif
