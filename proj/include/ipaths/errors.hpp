#pragma once

#include <stdexcept>
#include <string>

namespace ipaths {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind { Input = 2, Parameter = 3, Domain = 4, SizeGuard = 5 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

/// Malformed or inconsistent input data (files, graphs, point clouds).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

/// A caller-supplied parameter is out of its valid range.
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(ErrorKind::Parameter, what) {}
};

/// The input is valid but outside the solver's domain (e.g. a cycle given to a DAG solver).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// An exhaustive oracle refused an instance larger than its enumeration guard.
class SizeGuardError : public Error {
public:
    explicit SizeGuardError(const std::string& what) : Error(ErrorKind::SizeGuard, what) {}
};

}  // namespace ipaths
