#ifndef CDGA_ERROR_HPP
#define CDGA_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cdga {

enum class ErrorCode {
  UnknownGenerator,
  MixedAlgebras,
  MissingImage,
  InvalidGrading,
  DegreeViolation,
  TriangularityViolation,
  D2Violation,
  NotASubcomplex,
  ObjectMismatch,
  NotChainMap,
  NotPointed,
  NotAnAugmentation,
  TruncationInsufficient,
  NoSolutionInTruncation,
  HomotopyInvalid,
  SourceNotFiniteType,
  NotWeakEquivalence,
  WindowTooSmall,
  StageBudgetExhausted,
  RequiresIntegerGrading,
  GridTooLarge,
  NonPositiveDegree,
  SyntaxError,
  DuplicateName,
  UndeclaredGenerator,
  UnknownName,
  InvalidInput,
  ActionIncreaseViolation,
  LabelLeak,
  NotFreelyGenerated,
  EndpointViolation,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::MixedAlgebras: return "MixedAlgebras";
    case ErrorCode::MissingImage: return "MissingImage";
    case ErrorCode::InvalidGrading: return "InvalidGrading";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::TriangularityViolation: return "TriangularityViolation";
    case ErrorCode::D2Violation: return "D2Violation";
    case ErrorCode::NotASubcomplex: return "NotASubcomplex";
    case ErrorCode::ObjectMismatch: return "ObjectMismatch";
    case ErrorCode::NotChainMap: return "NotChainMap";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::NotAnAugmentation: return "NotAnAugmentation";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::NoSolutionInTruncation: return "NoSolutionInTruncation";
    case ErrorCode::HomotopyInvalid: return "HomotopyInvalid";
    case ErrorCode::SourceNotFiniteType: return "SourceNotFiniteType";
    case ErrorCode::NotWeakEquivalence: return "NotWeakEquivalence";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::StageBudgetExhausted: return "StageBudgetExhausted";
    case ErrorCode::RequiresIntegerGrading: return "RequiresIntegerGrading";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::NonPositiveDegree: return "NonPositiveDegree";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UndeclaredGenerator: return "UndeclaredGenerator";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ActionIncreaseViolation: return "ActionIncreaseViolation";
    case ErrorCode::LabelLeak: return "LabelLeak";
    case ErrorCode::NotFreelyGenerated: return "NotFreelyGenerated";
    case ErrorCode::EndpointViolation: return "EndpointViolation";
  }
  return "Unknown";
}

/// Source position inside an input file; line 0 means "no position".
struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, SourcePos pos = {})
      : std::runtime_error(format(code, message, pos)), code_(code), pos_(pos), detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  SourcePos pos() const noexcept { return pos_; }
  std::size_t line() const noexcept { return pos_.line; }
  std::size_t column() const noexcept { return pos_.column; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(ErrorCode code, const std::string& message, SourcePos pos) {
    std::string out;
    if (pos.line != 0) {
      out += std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": ";
    }
    out += "error[";
    out += error_code_name(code);
    out += "]: ";
    out += message;
    return out;
  }

  ErrorCode code_;
  SourcePos pos_;
  std::string detail_;
};

}  // namespace cdga

#endif  // CDGA_ERROR_HPP
