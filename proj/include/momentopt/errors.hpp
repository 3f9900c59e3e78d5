#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace momentopt {

enum class ErrorKind {
    BadConfig,
    DomainError,
    FluxExceedsBound,
    Infeasible,
    NoRoot,
    InsufficientOuterRadius,
    MalformedInput,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::FluxExceedsBound: return "FluxExceedsBound";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::InsufficientOuterRadius: return "InsufficientOuterRadius";
    case ErrorKind::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace momentopt
