#pragma once

#include <stdexcept>
#include <string>

namespace margulis {

/// Broad failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
    Domain,             // input outside the operation's domain
    Degenerate,         // numerically borderline; no silent guess is made
    UnsupportedClass,   // isometry class the operation does not handle
    Configuration,      // hypotheses of a geometric criterion are not met
    ConstructionFailed, // a constructive search gave up
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

struct DegenerateError : Error {
    explicit DegenerateError(const std::string& what) : Error(ErrorKind::Degenerate, what) {}
};

struct UnsupportedClassError : Error {
    explicit UnsupportedClassError(const std::string& what) : Error(ErrorKind::UnsupportedClass, what) {}
};

struct ConfigurationError : Error {
    explicit ConfigurationError(const std::string& what) : Error(ErrorKind::Configuration, what) {}
};

struct ConstructionError : Error {
    explicit ConstructionError(const std::string& what) : Error(ErrorKind::ConstructionFailed, what) {}
};

}  // namespace margulis
