// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pronp {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  ParseError,
  NotSymmetric,
  NotPositiveDefinite,
  NotLyapunovRegular,
  NotInBicommutant,
  NotStarLinear,
  NotSkew,
  RankMismatch,
  ResidualTooLarge,
  PoleHit,
  SingularPencil,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotLyapunovRegular: return "NotLyapunovRegular";
    case ErrorCode::NotInBicommutant: return "NotInBicommutant";
    case ErrorCode::NotStarLinear: return "NotStarLinear";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::SingularPencil: return "SingularPencil";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pronp
