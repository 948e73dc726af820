//! Conjugacy classes of GL_3(F_2) from characteristic data, checked against
//! the group order.
//!
//! Run with `cargo run --example classes`.

use glbc::fields::FieldTower;
use glbc::matrices::{class_of, class_rep, class_size, enumerate_classes, group_order};

fn main() -> glbc::Result<()> {
    let t = FieldTower::build(2, &[3])?;
    let classes = enumerate_classes(&t, 3, 1)?;
    let mut total = 0u128;
    for c in &classes {
        let size = class_size(c);
        total += size;
        // a representative built from the data lands back in its class
        assert_eq!(&class_of(&t, &class_rep(&t, c)?)?, c);
        println!("{:<28} size {size}", c.to_class_string(&t));
    }
    assert_eq!(total, group_order(3, 2));
    println!("{} classes, {total} elements", classes.len());
    Ok(())
}
