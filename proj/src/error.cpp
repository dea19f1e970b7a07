#include "kokotsakis/error.hpp"

namespace kokotsakis {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::RightAngle: return "RightAngle";
        case ErrorKind::DegenerateQuad: return "DegenerateQuad";
        case ErrorKind::NotOrthodiagonal: return "NotOrthodiagonal";
        case ErrorKind::Unrealizable: return "Unrealizable";
        case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::BetaUndefined: return "BetaUndefined";
        case ErrorKind::NotElliptic: return "NotElliptic";
        case ErrorKind::NoValidPattern: return "NoValidPattern";
        case ErrorKind::NotFlexible: return "NotFlexible";
        case ErrorKind::DegenerateLeading: return "DegenerateLeading";
        case ErrorKind::PoleEncountered: return "PoleEncountered";
        case ErrorKind::NoClosure: return "NoClosure";
        case ErrorKind::ClosureFailure: return "ClosureFailure";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace kokotsakis
