#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace affinelab {

enum class ErrorKind {
    MalformedInput,
    DomainViolation,
    SingularMap,
    NotIntegrable,
    ClusterAmbiguity,
    Inconsistent,
    DegenerateRicci,
    WitnessVerificationFailed,
    InternalConsistency,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace affinelab
