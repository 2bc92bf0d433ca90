// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace bugloc {

/// A calendar date with day resolution. Always valid once constructed.
class Date {
 public:
  /// Throws UsageError on an invalid calendar date.
  Date(int year, unsigned month, unsigned day);
  explicit Date(std::chrono::sys_days days) : days_(days) {}

  /// Parses strict ISO-8601 `YYYY-MM-DD`. Returns nullopt on any deviation.
  static std::optional<Date> parse(std::string_view text);

  std::chrono::sys_days days() const noexcept { return days_; }
  std::chrono::year_month_day ymd() const noexcept { return std::chrono::year_month_day{days_}; }

  /// `YYYY-MM-DD`.
  std::string to_string() const;

  Date plus_days(int n) const { return Date{days_ + std::chrono::days{n}}; }

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_;
};

}  // namespace bugloc
