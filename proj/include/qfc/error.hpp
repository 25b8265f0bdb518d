#pragma once

#include <stdexcept>
#include <string>

namespace qfc {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated precondition or malformed argument (grid mismatch, bad parameter).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Configuration file could not be parsed or failed schema checks.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A numerical guard tripped: boundary leakage, unreachable calibration target.
class NumericalError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qfc
