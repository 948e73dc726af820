//! The ψ-projected and non-degenerate parts of cuspidal characters of
//! GL_4(F_2) compared pointwise with characters induced from F_4^×.
//!
//! Run with `cargo run --example whittaker_projection`.

use glbc::mult::verify::{nondegenerate_projection, whittaker_projection, SweepOptions};
use glbc::oracle::certify_green;

fn main() -> glbc::Result<()> {
    let cert = certify_green(None)?;
    let opts = SweepOptions::default();
    for sweep in [whittaker_projection(&cert, 2, 2, &opts)?, nondegenerate_projection(&cert, 2, 2, &opts)?] {
        println!("{}: pass = {}", sweep.verifier, sweep.passed());
        for r in &sweep.rows {
            println!("  {:<20} {}", r.inputs.specs.join(" "), r.computed);
        }
    }
    Ok(())
}
