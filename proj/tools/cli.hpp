// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ocat::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;

/// Runs the `ocat` command line. `args` excludes the program name.
/// Returns 0 when every check passes, 1 on a failed verdict or numeric
/// error, 2 on a usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ocat::cli
