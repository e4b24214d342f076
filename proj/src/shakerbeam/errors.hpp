#pragma once

#include <stdexcept>
#include <string>

namespace shakerbeam {

// Every failure raised by the core derives from Error. The C API maps each
// concrete type onto one sb_status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent physical input (non-positive constants, wrong units).
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Argument outside the mathematical domain of a function (e.g. mu <= 0).
class DomainError : public Error {
public:
    using Error::Error;
};

// Argument inside the domain but outside the representable range of a
// particular evaluation route (overflow of unscaled hyperbolics).
class RangeError : public Error {
public:
    using Error::Error;
};

// Numerical settings that cannot work (scan step too coarse, empty window).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

// Operation precondition violated by otherwise valid inputs.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Eigenmode cannot be reconstructed uniquely at the given spectral parameter.
class DegenerateModeError : public Error {
public:
    DegenerateModeError(const std::string& what, double det_m3)
        : Error(what), det_m3_(det_m3) {}

    double det_m3() const noexcept { return det_m3_; }

private:
    double det_m3_;
};

}  // namespace shakerbeam
