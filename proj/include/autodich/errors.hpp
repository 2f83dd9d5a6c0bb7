// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace autodich {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed argument: radix/track mismatch, state index out of range, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An operation's mathematical precondition does not hold (n not in X,
/// V_{k,a}(0), case III context passed to the F machinery, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configurable resource cap was hit (determinization state cap,
/// normalization exponent cap, alphabet size).
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace autodich
