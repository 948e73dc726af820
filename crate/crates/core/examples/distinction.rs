//! Fixed vectors of GL_n(F_q) in cuspidal representations of GL_n(F_{q²}),
//! and the characters of F_9^× in cuspidal representations of GL_2(F_3).
//!
//! Run with `cargo run --example distinction`.

use glbc::mult::verify::{subfield_distinction, torus_periods, SweepOptions};
use glbc::oracle::certify_green;

fn main() -> glbc::Result<()> {
    let cert = certify_green(None)?;
    let opts = SweepOptions::default();
    let sweep = subfield_distinction(&cert, 3, 2, &opts)?;
    let fixed: Vec<u64> = sweep.rows.iter().filter(|r| r.m == Some(1)).filter_map(|r| r.inputs.theta_orbit_rep).collect();
    println!("GL_3(F_4) cuspidals with a GL_3(F_2)-fixed vector: θ in {fixed:?}");

    let sweep = torus_periods(&cert, 3, &opts)?;
    for r in &sweep.rows {
        println!("{}: {}", r.inputs.specs[0], r.computed);
    }
    Ok(())
}
