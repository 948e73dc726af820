//! m, m_E and the twisted multiplicity (m + m_E)/2 on small linear and
//! twisted-linear sweeps.
//!
//! Run with `cargo run --example basechange_identity`.

use glbc::mult::verify::{basechange_identity, SweepOptions};
use glbc::oracle::certify_green;

fn main() -> glbc::Result<()> {
    let cert = certify_green(None)?;
    let sweep = basechange_identity(&cert, &[(2, 3), (4, 2)], &SweepOptions::default())?;
    for r in &sweep.rows {
        println!("{:<48} {:<28} {}", r.inputs.specs.join(" "), r.inputs.subgroup, r.computed);
    }
    println!("{} rows, pass = {}", sweep.rows.len(), sweep.passed());
    Ok(())
}
