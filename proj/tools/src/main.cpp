// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include <iostream>
#include <string>
#include <vector>

#include "bugloc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return bugloc::cli::run(args, std::cout, std::cerr);
}
