#pragma once

#include <stdexcept>
#include <string>

namespace motionattack {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Incompatible tensor/sequence dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Malformed external input (JSON files, manifests, model files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Invalid argument or configuration value (out-of-range K, zero samples, ...).
class ValueError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: NaN loss, flat gradients, degenerate extents.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Operation not defined for this model/attack combination.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Filesystem failures, always carrying the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace motionattack
