#pragma once

#include <stdexcept>
#include <string>

namespace unruhx {

// Base for every error raised by the library. The CLI maps these onto exit
// code 2 (validation) except IoError, which maps to 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class LabelError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class HermiticityError : public Error {
public:
    HermiticityError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// A matrix that should be a state has an eigenvalue below the PSD tolerance
// (or a trace away from one).
class NonphysicalError : public Error {
public:
    NonphysicalError(const std::string& what, double min_eigenvalue)
        : Error(what), min_eigenvalue_(min_eigenvalue) {}
    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace unruhx
