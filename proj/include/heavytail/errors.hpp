// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace heavytail {

/// Raised when inputs violate a documented precondition: distribution
/// parameters out of range, malformed configs, unparsable data files.
/// The CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a computation cannot proceed on otherwise valid inputs:
/// degenerate samples (all ties), unsupported spec combinations, model
/// violations discovered at run time. The CLI maps this to exit code 2.
class model_error : public std::runtime_error {
 public:
  explicit model_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heavytail
