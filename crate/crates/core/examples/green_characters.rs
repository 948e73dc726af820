//! Cuspidal characters of GL_2(F_3) on every class, and their degrees.
//!
//! Run with `cargo run --example green_characters`.

use std::sync::Arc;

use glbc::chars::{regular_thetas, CharSpec, Evaluator};
use glbc::fields::FieldTower;
use glbc::matrices::enumerate_classes;

fn main() -> glbc::Result<()> {
    let ev = Evaluator::new(Arc::new(FieldTower::build(3, &[2])?));
    let classes = enumerate_classes(ev.tower(), 2, 1)?;
    for a in regular_thetas(2, 3) {
        let pi = CharSpec::cuspidal(2, 3, a);
        println!("{pi}  (dim {})", ev.dim_of(&pi)?);
        for c in &classes {
            println!("    {:<22} {}", c.to_class_string(ev.tower()), ev.value(&pi, c)?);
        }
    }
    Ok(())
}
