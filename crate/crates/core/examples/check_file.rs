// SPDX-License-Identifier: Apache-2.0

// Save a script to disk, read it back and check it.

use std::fs::{self, File};

use smtkit::problems::pigeonhole;
use smtkit::reader::parse_script;
use smtkit::{check_file, save_script, EmitOptions, SolverConfig};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("pigeonhole3.smt2");
    save_script(
        &pigeonhole(3)?,
        &EmitOptions::default(),
        File::create(&path)?,
    )?;

    let text = fs::read_to_string(&path)?;
    println!(
        "{} commands in {}",
        parse_script(&text)?.len(),
        path.display()
    );

    let cfg = SolverConfig::default_solver();
    if !cfg.is_available() {
        println!("no solver `{}` on PATH, skipping", cfg.command);
        return Ok(());
    }
    println!("{}", check_file(&path, &cfg)?);
    Ok(())
}
