// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(gamowlab::cli::run_cli(std::env::args_os()));
}
