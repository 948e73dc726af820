//! Characters of GL_n × GL_n in cuspidal representations of GL_2n(F_q):
//! computed multiplicities against the norm condition.
//!
//! Run with `cargo run --example linear_periods`.

use glbc::mult::verify::{linear_periods, SweepOptions};
use glbc::oracle::certify_green;

fn main() -> glbc::Result<()> {
    let cert = certify_green(None)?;
    for (two_n, q) in [(4, 2), (2, 5)] {
        let sweep = linear_periods(&cert, two_n, q, &SweepOptions::default())?;
        println!("GL_{two_n}(F_{q}): {} cases, pass = {}", sweep.rows.len(), sweep.passed());
        for r in sweep.rows.iter().filter(|r| r.m == Some(1)) {
            println!(
                "  θ = {} with χ = ({}, {}): m = 1, m_E = {}",
                r.inputs.theta_orbit_rep.unwrap_or(0),
                r.inputs.chi1.unwrap_or(0),
                r.inputs.chi2.unwrap_or(0),
                r.m_e.unwrap_or(0)
            );
        }
    }
    Ok(())
}
