// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bugloc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one `bugloc` invocation. `args[0]` is the program name. Results go
/// to `out`; diagnostics, warnings and timings go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bugloc::cli
