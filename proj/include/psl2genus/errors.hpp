#pragma once

#include <stdexcept>
#include <string>

namespace psl2genus {

// Error taxonomy; the CLI maps kinds onto exit codes (2 usage/config,
// 3 invariant violation, 4 resource cap).
enum class ErrorKind {
    invalid_prime,
    unsupported_prime,
    unknown_period,
    overflow,
    no_finite_frobenius,
    no_stable_genus,
    resource_cap,
    invariant_violation,
    degenerate_fit,
    config,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_prime: return "invalid-prime";
        case ErrorKind::unsupported_prime: return "unsupported-prime";
        case ErrorKind::unknown_period: return "unknown-period";
        case ErrorKind::overflow: return "overflow";
        case ErrorKind::no_finite_frobenius: return "no-finite-frobenius";
        case ErrorKind::no_stable_genus: return "no-stable-genus";
        case ErrorKind::resource_cap: return "resource-cap";
        case ErrorKind::invariant_violation: return "invariant-violation";
        case ErrorKind::degenerate_fit: return "degenerate-fit";
        case ErrorKind::config: return "config";
    }
    return "unknown";
}

}  // namespace psl2genus
