// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ocat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (bad key, site out of range, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input violates a model assumption (e.g. a negative perturbation).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed (non-convergence, non-finite result).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace ocat
