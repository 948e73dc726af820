//! A tower of finite fields over F_2 with compatible generators.
//!
//! Run with `cargo run --example tower`.

use glbc::fields::{FieldTower, MultChar};

fn main() -> glbc::Result<()> {
    let t = FieldTower::build(2, &[4])?;
    println!("tower over F_{} with levels {:?}", t.q(), t.degrees());
    for d in t.degrees() {
        let lv = t.level(d)?;
        println!("  level {d}: {} elements, defining poly {:?}", lv.size_u64(), lv.defining_poly());
    }

    // the norm of the top generator is the generator one level down
    let g4 = t.gen(4)?;
    let g2 = t.gen(2)?;
    assert_eq!(t.norm_to_subfield(g4, 2)?, g2);
    println!("Nm(gen_4) = gen_2 = {:?}", t.coeffs(g2));

    // restricting θ from F_16^× to F_4^× keeps the exponent mod 3
    let theta = MultChar { level: 4, exponent: 7 };
    let r = t.restrict_char(theta, 2)?;
    println!("θ = gen_4^7 restricts to exponent {} on F_4^×", r.exponent);

    let orbits = glbc::chars::regular_thetas(4, 2);
    println!("regular Frobenius orbits on characters of F_16^×: {orbits:?}");
    Ok(())
}
