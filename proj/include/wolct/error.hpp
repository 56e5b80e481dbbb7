#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wolct {

enum class Errc {
    DeterminantViolation,
    DegenerateB,
    InvalidShapeParam,
    GridMismatch,
    ShiftOutOfRange,
    AsymmetricGrid,
    ZeroWindow,
    NonAdmissiblePair,
    LatticeViolation,
    NonFiniteSample,
    Io,
    Format,
};

std::string_view to_string(Errc code) noexcept;

/// Library-wide exception; `code()` identifies the failed precondition.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace wolct
