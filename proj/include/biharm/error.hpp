#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace biharm {

// Every failure raised by the library derives from Error and carries a kind,
// which the CLI maps onto its exit-code contract.
enum class ErrorKind {
    configuration,  // invalid jet shape, bad chart dimension, bad flags
    usage,          // operation called outside its contract
    singular_value, // division by a (numerically) zero jet
    domain,         // log/sqrt/pow outside their real domain, chart exclusions
    parse,          // lexical or syntax error in the expression DSL
    unbound,        // free identifier without a binding
    degenerate,     // induced metric is degenerate at the queried point
    warp_domain,    // warping function is not positive
    scene_format,   // scene file unreadable or malformed JSON
    scene_invalid,  // scene violates a structural invariant
};

const char* to_string(ErrorKind kind) noexcept;

struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigurationError : public Error {
public:
    explicit ConfigurationError(const std::string& message)
        : Error(ErrorKind::configuration, message) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& message)
        : Error(ErrorKind::usage, message) {}
};

class SingularValueError : public Error {
public:
    SingularValueError(const std::string& message, double value)
        : Error(ErrorKind::singular_value, message), value_(value) {}

    double value() const noexcept { return value_; }

private:
    double value_;
};

/// Raised when an elementary function or chart is evaluated outside its
/// domain. `value()` is the offending argument; `span()` is filled in by the
/// expression evaluator when the failure originates in a DSL node.
class DomainError : public Error {
public:
    DomainError(const std::string& message, double value,
                std::optional<SourceSpan> span = std::nullopt)
        : Error(ErrorKind::domain, message), value_(value), span_(span) {}

    double value() const noexcept { return value_; }
    const std::optional<SourceSpan>& span() const noexcept { return span_; }

private:
    double value_;
    std::optional<SourceSpan> span_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset,
               std::vector<std::string> expected)
        : Error(ErrorKind::parse, message), offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnboundIdentifierError : public Error {
public:
    UnboundIdentifierError(const std::string& name, SourceSpan span)
        : Error(ErrorKind::unbound, "unbound identifier '" + name + "'"),
          name_(name), span_(span) {}

    const std::string& name() const noexcept { return name_; }
    SourceSpan span() const noexcept { return span_; }

private:
    std::string name_;
    SourceSpan span_;
};

class DegenerateImmersionError : public Error {
public:
    DegenerateImmersionError(const std::string& message, double det)
        : Error(ErrorKind::degenerate, message), det_(det) {}

    double det() const noexcept { return det_; }

private:
    double det_;
};

class WarpDomainError : public Error {
public:
    WarpDomainError(const std::string& message, double t, double f)
        : Error(ErrorKind::warp_domain, message), t_(t), f_(f) {}

    double t() const noexcept { return t_; }
    double f() const noexcept { return f_; }

private:
    double t_;
    double f_;
};

class SceneError : public Error {
public:
    SceneError(ErrorKind kind, const std::string& message) : Error(kind, message) {}
};

} // namespace biharm
