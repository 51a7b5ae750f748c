#pragma once

#include <stdexcept>
#include <string>

namespace ahs {

/// Base error carrying the process exit code used by the CLI.
class Error : public std::runtime_error {
public:
    Error(const std::string& msg, int code) : std::runtime_error(msg), code_(code) {}
    int exit_code() const noexcept { return code_; }

private:
    int code_;
};

/// Bad parameters, shapes or input documents (exit 2).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg, 2) {}
};

/// The trace map has a kernel, so Gamma is not unique (exit 3).
class NonUniquenessError : public Error {
public:
    NonUniquenessError(const std::string& msg, int kernel_dim)
        : Error(msg, 3), kernel_dim_(kernel_dim) {}
    int kernel_dim() const noexcept { return kernel_dim_; }

private:
    int kernel_dim_;
};

/// An identity that should hold did not (exit 4).
class InvariantError : public Error {
public:
    explicit InvariantError(const std::string& msg) : Error(msg, 4) {}
};

}  // namespace ahs
