#include "wolct/error.hpp"

namespace wolct {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::DeterminantViolation: return "DeterminantViolation";
        case Errc::DegenerateB: return "DegenerateB";
        case Errc::InvalidShapeParam: return "InvalidShapeParam";
        case Errc::GridMismatch: return "GridMismatch";
        case Errc::ShiftOutOfRange: return "ShiftOutOfRange";
        case Errc::AsymmetricGrid: return "AsymmetricGrid";
        case Errc::ZeroWindow: return "ZeroWindow";
        case Errc::NonAdmissiblePair: return "NonAdmissiblePair";
        case Errc::LatticeViolation: return "LatticeViolation";
        case Errc::NonFiniteSample: return "NonFiniteSample";
        case Errc::Io: return "Io";
        case Errc::Format: return "Format";
    }
    return "Unknown";
}

}  // namespace wolct
