//! Brute-force character table of GL_2(F_3), its orthogonality relations,
//! and the rows matched with cuspidal specs.
//!
//! Run with `cargo run --example oracle_tables`.

use glbc::chars::Evaluator;
use glbc::oracle::{certify_green, identify_cuspidal, OracleGroup};

fn main() -> glbc::Result<()> {
    let g = OracleGroup::build(2, 3, None)?;
    let table = &g.table;
    table.check_orthogonality()?;
    let degrees: Vec<i128> = (0..table.rows.len()).map(|r| table.degree(r)).collect::<Result<_, _>>()?;
    println!("{}: order {}, {} classes, degrees {degrees:?}", table.id, table.order, table.classes.len());

    let ev = Evaluator::new(g.tower.clone());
    for (theta, row) in identify_cuspidal(table, &ev)? {
        println!("  cuspidal θ = {theta} is row {row}");
    }

    // the full validation every verifier depends on
    let cert = certify_green(None)?;
    for c in cert.checks() {
        println!("{}: {} cuspidal rows agree on {} classes", c.group, c.cuspidal_rows, c.classes_checked);
    }
    Ok(())
}
