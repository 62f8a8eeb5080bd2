// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/cli.hpp"

int main(int argc, char **argv)
{
  return formbound::cli::run(argc, argv);
}
