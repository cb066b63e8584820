#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hypmetrics {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  PointOutsideDomain,
  EmptyInput,
  NonpositiveDiameter,
  OrderViolation,
  RangeViolation,
  DegenerateFoci,
  PoleInput,
  PunctureAtOrigin,
  PunctureOutsideBall,
  NoConvergence,
  ClearanceViolation,
  ImageEscape,
  UnboundedDomain,
  BilipschitzCheckFailed,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonpositiveDiameter: return "NonpositiveDiameter";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::DegenerateFoci: return "DegenerateFoci";
    case ErrorCode::PoleInput: return "PoleInput";
    case ErrorCode::PunctureAtOrigin: return "PunctureAtOrigin";
    case ErrorCode::PunctureOutsideBall: return "PunctureOutsideBall";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ClearanceViolation: return "ClearanceViolation";
    case ErrorCode::ImageEscape: return "ImageEscape";
    case ErrorCode::UnboundedDomain: return "UnboundedDomain";
    case ErrorCode::BilipschitzCheckFailed: return "BilipschitzCheckFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Exception type thrown by every hypmetrics operation. The code is stable
/// and is what callers (and the CLI exit-code mapping) should dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> atom_index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        atom_index_(atom_index) {}

  ErrorCode code() const noexcept { return code_; }

  // Set for PoleInput raised while applying a map chain.
  std::optional<std::size_t> atom_index() const noexcept { return atom_index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> atom_index_;
};

}  // namespace hypmetrics
