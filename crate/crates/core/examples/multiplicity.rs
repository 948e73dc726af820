//! Multiplicities of characters of subgroups of GL_4(F_2) in a cuspidal
//! representation, computed element by element and class by class.
//!
//! Run with `cargo run --example multiplicity`.

use glbc::chars::{basechange_spec, CharSpec};
use glbc::mult::{EmbeddedSubgroup, Method, MultEngine};

fn main() -> glbc::Result<()> {
    let eng = MultEngine::build(2, &[4])?;
    let pi = CharSpec::cuspidal(4, 2, 3);

    let levi = EmbeddedSubgroup::LeviNN { n: 2, level: 1 };
    let trivial = [CharSpec::det(2, 2, 0), CharSpec::det(2, 2, 0)];
    let r = eng.multiplicity(&pi, &levi, &trivial, Method::Both)?;
    println!("m({pi}, 1 over {levi}) = {}", r.computed);

    let weil = EmbeddedSubgroup::WeilGLnE { n: 2, small: 1, big: 2 };
    for c in 0..3 {
        let chi = [CharSpec::det(2, 4, c)];
        let r = eng.multiplicity(&pi, &weil, &chi, Method::Both)?;
        println!("m({pi}, {} over {weil}) = {}", chi[0], r.computed);
    }

    // the same question over F_4, and the twisted multiplicity in between
    let pi_e = basechange_spec(&pi)?;
    let levi_e = EmbeddedSubgroup::LeviNN { n: 2, level: 2 };
    let trivial_e = [CharSpec::det(2, 4, 0), CharSpec::det(2, 4, 0)];
    let t = eng.shintani_twisted_multiplicity(&pi, &levi, &trivial, &pi_e, &levi_e, &trivial_e, Method::Auto)?;
    println!("base change {pi_e}: m = {}, m_E = {}, twisted = {}", t.m, t.m_e, t.m_tilde);
    Ok(())
}
