//! Triple products of representations of PGL_2(F_5) with an invariant
//! vector.
//!
//! Run with `cargo run --example pgl2_triples`.

use glbc::mult::verify::{pgl2_triples, SweepOptions};
use glbc::oracle::certify_green;

fn main() -> glbc::Result<()> {
    let cert = certify_green(None)?;
    let sweep = pgl2_triples(&cert, 5, &SweepOptions::default())?;
    for r in &sweep.rows {
        let note = if r.finding { " (repeated factor)" } else { "" };
        println!("{}: predicted {} computed {}{note}", r.inputs.specs.join(" ⊗ "), r.predicted, r.computed);
    }
    println!("pass = {}", sweep.passed());
    Ok(())
}
