// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/error.hpp"

#include <iostream>
#include <utility>

namespace bugloc {

IngestError::IngestError(std::string path, const std::string& reason)
    : DataError(path + ": " + reason), path_(std::move(path)) {}

MalformedReportError::MalformedReportError(std::string record, const std::string& reason)
    : DataError("malformed report " + record + ": " + reason), record_(std::move(record)) {}

WarningSink stderr_warnings() {
  return [](const std::string& message) { std::cerr << "warning: " << message << '\n'; };
}

WarningSink ignore_warnings() {
  return [](const std::string&) {};
}

}  // namespace bugloc
