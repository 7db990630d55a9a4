#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mapstab {

/// Machine-readable failure categories. Every refusal raised by the engine
/// carries one of these so the CLI can emit a stable code next to the text.
enum class ErrorCode {
    MixedAlgebra,
    DegreeMismatch,
    InfiniteBasis,
    WindowExceeded,
    NotADifferential,
    NotLocalized,
    InvalidFiniteModel,
    InvalidTarget,
    InvalidSection,
    SignConventionFault,
    ConstructionFault,
    Parse,
    Usage,
    UnsupportedSource,
};

std::string_view error_code_name(ErrorCode code);

class EngineError : public std::runtime_error {
public:
    EngineError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mapstab
