#pragma once

#include <stdexcept>
#include <string>

namespace z2f {

enum class ErrorCode {
    DegreeError,
    DimensionError,
    ArithmeticError,
    NoLineBundle,
    ConvergenceError,
    NotClosed,
    DegenerateSamples,
    MonodromyError,
    NotRational,
    CriticalCollision,
    NeedsPerturbation,
    MorseObstruction,
    InputError,
    PruneFailed,
    ParseError,
    IoError,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DegreeError: return "DegreeError";
        case ErrorCode::DimensionError: return "DimensionError";
        case ErrorCode::ArithmeticError: return "ArithmeticError";
        case ErrorCode::NoLineBundle: return "NoLineBundle";
        case ErrorCode::ConvergenceError: return "ConvergenceError";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::DegenerateSamples: return "DegenerateSamples";
        case ErrorCode::MonodromyError: return "MonodromyError";
        case ErrorCode::NotRational: return "NotRational";
        case ErrorCode::CriticalCollision: return "CriticalCollision";
        case ErrorCode::NeedsPerturbation: return "NeedsPerturbation";
        case ErrorCode::MorseObstruction: return "MorseObstruction";
        case ErrorCode::InputError: return "InputError";
        case ErrorCode::PruneFailed: return "PruneFailed";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

// All typed failures thrown by the library. `code` is stable and is what the
// CLI maps to exit codes; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace z2f
