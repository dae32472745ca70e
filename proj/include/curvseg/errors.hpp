#pragma once

#include <stdexcept>
#include <string>

namespace curvseg {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failures of the evolution scheme (collapsed grid, singular solve, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

class InvalidCurve : public Error {
public:
    using Error::Error;
};

class DegenerateEdge : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularPhi : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DominanceViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NumericalBreakdown : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Errors while decoding or encoding image files.
class ImageError : public Error {
public:
    using Error::Error;
};

class MalformedHeader : public ImageError {
public:
    using ImageError::ImageError;
};

class UnsupportedMaxval : public ImageError {
public:
    using ImageError::ImageError;
};

class TruncatedData : public ImageError {
public:
    using ImageError::ImageError;
};

class InvalidShapeParams : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Configuration errors carry the offending field path, e.g. "stop.stationary.window".
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class SchemaError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class RangeError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace curvseg
