#pragma once

// Error taxonomy shared by every layer. Each failure carries a machine-checkable
// kind so callers (and tests) can branch on the cause instead of string-matching.

#include <stdexcept>
#include <string>

namespace autoparl {

enum class ErrorKind {
    invalid_parliament,
    dimension,
    domain,
    index,
    structure,
    schema,
    validation,
    parse,
    policy,
    configuration,
    transport,
    protocol,
    pairing,
    unsupported_baseline,
    undefined_improvement,
    backend,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_parliament: return "invalid-parliament";
        case ErrorKind::dimension: return "dimension";
        case ErrorKind::domain: return "domain";
        case ErrorKind::index: return "index";
        case ErrorKind::structure: return "structure";
        case ErrorKind::schema: return "schema";
        case ErrorKind::validation: return "validation";
        case ErrorKind::parse: return "parse";
        case ErrorKind::policy: return "policy";
        case ErrorKind::configuration: return "configuration";
        case ErrorKind::transport: return "transport";
        case ErrorKind::protocol: return "protocol";
        case ErrorKind::pairing: return "pairing";
        case ErrorKind::unsupported_baseline: return "unsupported-baseline";
        case ErrorKind::undefined_improvement: return "undefined-improvement";
        case ErrorKind::backend: return "backend";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + " error: " + message),
          kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace autoparl
