// SPDX-License-Identifier: Apache-2.0

// n + 1 pigeons never fit into n holes.

use std::time::Instant;

use smtkit::problems::pigeonhole;
use smtkit::{check, SolverConfig};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SolverConfig::default_solver();
    if !cfg.is_available() {
        println!("no solver `{}` on PATH, skipping", cfg.command);
        return Ok(());
    }
    for n in 1..=5 {
        let ts = pigeonhole(n)?;
        let start = Instant::now();
        let status = check(&ts, &cfg)?.status;
        println!("n={n}: {status} ({:.2?})", start.elapsed());
    }
    Ok(())
}
