// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_CLI_HPP
#define FORMBOUND_CLI_HPP

namespace formbound::cli
{

/// Parses argv, runs one subcommand and writes its report (to --out, else standard output).
/// Returns 0 on completion, 2 when a verdict certifies failure, 1 on errors.
int run(int argc, const char *const *argv);

}  // namespace formbound::cli

#endif  // FORMBOUND_CLI_HPP
