// SPDX-License-Identifier: Apache-2.0

// Sending hand-written commands through a session.

use smtkit::{Session, SolverConfig};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SolverConfig::default_solver();
    if !cfg.is_available() {
        println!("no solver `{}` on PATH, skipping", cfg.command);
        return Ok(());
    }
    let mut s = Session::open(&cfg)?;
    for cmd in [
        "(declare-const n Int)",
        "(assert (= (* n n) 49))",
        "(assert (< n 0))",
        "(check-sat)",
        "(get-value (n))",
        "(echo \"done\")",
    ] {
        println!("{cmd}\n  {}", s.raw_send(cmd)?);
    }
    Ok(())
}
