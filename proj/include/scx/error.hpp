#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scx {

enum class ErrorCode {
  EmptyInput,
  NonPositiveWeight,
  DuplicateSimplex,
  InvalidSimplex,
  DimensionOutOfRange,
  DimensionTooLow,
  EmptyDimension,
  NonUnitInnerWeight,
  ParseError,
  IoError,
  NonSymmetricInput,
  ShapeMismatch,
  InvalidSampleCount,
  DomainError,
  InvalidPartition,
  TooLargeForBruteForce,
  NoValidPartition,
  IsolatedItem,
  KTooLarge,
  NoLabels,
  NotLabelConnected,
  InvalidParams,
  InvalidConfig,
  NumericalFailure,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorCode::InvalidSimplex: return "InvalidSimplex";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::DimensionTooLow: return "DimensionTooLow";
    case ErrorCode::EmptyDimension: return "EmptyDimension";
    case ErrorCode::NonUnitInnerWeight: return "NonUnitInnerWeight";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NonSymmetricInput: return "NonSymmetricInput";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidSampleCount: return "InvalidSampleCount";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::TooLargeForBruteForce: return "TooLargeForBruteForce";
    case ErrorCode::NoValidPartition: return "NoValidPartition";
    case ErrorCode::IsolatedItem: return "IsolatedItem";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::NoLabels: return "NoLabels";
    case ErrorCode::NotLabelConnected: return "NotLabelConnected";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

/// Errors that stem from arithmetic rather than from malformed input.
constexpr bool is_numerical(ErrorCode code) {
  return code == ErrorCode::NonSymmetricInput || code == ErrorCode::DomainError ||
         code == ErrorCode::NumericalFailure;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace scx
