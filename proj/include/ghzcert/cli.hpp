// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ghzcert {

inline constexpr std::uint64_t kDefaultSeed = 1234567;
inline constexpr const char* kThreadsEnv = "GHZCERT_THREADS";

enum ExitStatus : int {
  kExitOk = 0,
  kExitInfeasible = 1,
  kExitUsage = 2,
};

/// Runs one subcommand. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghzcert
