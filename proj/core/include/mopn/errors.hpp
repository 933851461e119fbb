#ifndef MOPN_ERRORS_HPP
#define MOPN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mopn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tensor/layer dimension disagreement.
struct ShapeError : Error {
    using Error::Error;
};

/// Bad user input: invalid instance, weight vector, tour, config value.
struct InvalidArgument : Error {
    using Error::Error;
};

/// Malformed input file (TSPLIB, native instance, checkpoint, config).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace mopn

#endif
