//! Characters χ ∘ det of GL_2(F_4) inside GL_4(F_2) in cuspidal
//! representations, with the self-duality checks on each row.
//!
//! Run with `cargo run --example twisted_periods`.

use glbc::mult::verify::{twisted_periods, SweepOptions};
use glbc::oracle::certify_green;

fn main() -> glbc::Result<()> {
    let cert = certify_green(None)?;
    let sweep = twisted_periods(&cert, 4, 2, &SweepOptions::default())?;
    println!("{}", sweep.to_csv()?);
    println!("pass = {}", sweep.passed());
    Ok(())
}
