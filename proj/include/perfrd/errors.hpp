#pragma once

#include <stdexcept>
#include <string>

namespace perfrd {

// Error codes cover every failure mode the library reports deliberately.
// Anything not listed here escaping a public function is a bug.
enum class Errc {
    NegativeValue,
    NotPLocal,            // denominator contains a prime other than p
    NotPrime,
    ParseError,
    DimensionMismatch,
    NotSquare,
    SingularMatrix,
    IndexOutOfRange,
    UnknownName,
    CapExceededWithoutClassification,
    NotCrystallographic,
    OrderNotTwo,
    PrimeMismatch,
    UnsupportedPrime,
    NotStrictlyDominant,
    InvalidArgument,
    IoError,
};

struct Error : std::runtime_error {
    Errc code;
    Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NegativeValue: return "NegativeValue";
        case Errc::NotPLocal: return "NotPLocal";
        case Errc::NotPrime: return "NotPrime";
        case Errc::ParseError: return "ParseError";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotSquare: return "NotSquare";
        case Errc::SingularMatrix: return "SingularMatrix";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::UnknownName: return "UnknownName";
        case Errc::CapExceededWithoutClassification: return "CapExceededWithoutClassification";
        case Errc::NotCrystallographic: return "NotCrystallographic";
        case Errc::OrderNotTwo: return "OrderNotTwo";
        case Errc::PrimeMismatch: return "PrimeMismatch";
        case Errc::UnsupportedPrime: return "UnsupportedPrime";
        case Errc::NotStrictlyDominant: return "NotStrictlyDominant";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace perfrd
