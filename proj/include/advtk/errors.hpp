#ifndef ADVTK_ERRORS_HPP
#define ADVTK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace advtk {

// Tensor shapes or ranks do not conform.
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A precondition on an otherwise well-formed call was violated.
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An index is outside the valid range.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Invalid configuration (model spec, train/attack/synth settings, CLI input).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dataset-level problems: empty/single-class sets, degenerate inputs.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File or directory I/O failures, including malformed on-disk content.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace advtk

#endif  // ADVTK_ERRORS_HPP
