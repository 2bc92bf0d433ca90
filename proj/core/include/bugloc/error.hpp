// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace bugloc {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad arguments, empty input
/// where data is required, single-label training data, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Missing or invalid configuration: unreadable profile files, a missing
/// corpus root, dictionary mode without a wordlist.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data could not be processed.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A source file could not be read or decoded. Carries the offending path.
class IngestError : public DataError {
 public:
  IngestError(std::string path, const std::string& reason);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A defect report record lacks a required field or has a malformed header.
class MalformedReportError : public DataError {
 public:
  MalformedReportError(std::string record, const std::string& reason);
  const std::string& record() const noexcept { return record_; }

 private:
  std::string record_;
};

/// The changelog export does not follow the record grammar.
class ChangelogError : public DataError {
 public:
  using DataError::DataError;
};

/// A persisted index or model file is truncated, corrupt, or from another
/// format version.
class LoadError : public DataError {
 public:
  using DataError::DataError;
};

/// Pearson correlation requested on a series with zero variance.
class UndefinedCorrelationError : public DataError {
 public:
  using DataError::DataError;
};

/// Receives non-fatal diagnostics (skipped files, unknown changelog paths).
using WarningSink = std::function<void(const std::string&)>;

/// Writes each warning to stderr prefixed with "warning: ".
WarningSink stderr_warnings();

/// Discards warnings.
WarningSink ignore_warnings();

}  // namespace bugloc
