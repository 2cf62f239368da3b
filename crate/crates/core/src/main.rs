// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let code = vsq::cli::run_cli(std::env::args_os(), &mut stdout, &mut stderr);
    std::process::exit(code);
}
