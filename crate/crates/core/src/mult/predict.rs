//! Closed-form predictions, in exponent form.
//!
//! Characters are exponents relative to the tower generators: `a` names
//! `θ` on `F_{q^{2n}}^×`, `c` a character of `F_q^×` (or of `F_{q²}^×` where
//! noted). Restricting `θ` to `F_{q^n}^×` keeps `a mod (q^n - 1)`, and
//! composing `χ` with the norm `F_{q^n}^× → F_q^×` multiplies its exponent by
//! `(q^n - 1)/(q - 1)`. The tests derive each congruence pointwise from
//! character values.

fn pow(q: u64, n: usize) -> u64 {
    q.checked_pow(n as u32).expect("field size overflows u64")
}

/// `(χ_1 χ_2)(Nm x) = θ(x)` on `F_{q^n}^×`: whether `χ_1 × χ_2` (via det)
/// occurs in the cuspidal `π(θ)` of `GL_{2n}(F_q)`.
pub fn linear_period(a: u64, c1: u64, c2: u64, n: usize, q: u64) -> bool {
    let m = pow(q, n) - 1;
    let c = (c1 + c2) % (q - 1);
    a % m == c * (m / (q - 1)) % m
}

/// `θ|_{F_{q^n}^×} = χ|_{F^×} ∘ Nm` for `χ` a character of `F_{q²}^×`:
/// whether `χ ∘ det` of `GL_n(F_{q²})` occurs in `π(θ)`.
pub fn twisted_period(a: u64, c: u64, n: usize, q: u64) -> bool {
    linear_period(a, c % (q - 1), 0, n, q)
}

/// `π^σ ≅ π^∨` for the cuspidal `π(θ)` of `GL_n(F_{q²})`, `a` an exponent at
/// level `2n`: `n` odd and `θ` trivial on `F_{q^n}^×`.
pub fn sigma_dual(a: u64, n: usize, q: u64) -> bool {
    n % 2 == 1 && a.is_multiple_of(pow(q, n) - 1)
}

/// Direct search for an odd `j < 2n` with `-a ≡ a·q^j (mod q^{2n} - 1)`.
pub fn sigma_dual_search(a: u64, n: usize, q: u64) -> bool {
    let m = pow(q, 2 * n) as u128 - 1;
    let neg = (m - a as u128 % m) % m;
    let mut cur = a as u128 % m;
    (0..2 * n).any(|j| {
        let hit = j % 2 == 1 && cur == neg;
        cur = cur * q as u128 % m;
        hit
    })
}

/// Multiplicity of `μ_1 × μ_2` in the principal series `λ_1 × λ_2` of
/// `GL_2(F_q)`: one when `μ_1 μ_2 = λ_1 λ_2`, plus one for each of
/// `(μ_1, μ_2) = (λ_1, λ_2)` and `(μ_1, μ_2) = (λ_2, λ_1)`.
pub fn principal_series_gl2(l1: u64, l2: u64, mu1: u64, mu2: u64, q: u64) -> u64 {
    let r = q - 1;
    let (l1, l2, mu1, mu2) = (l1 % r, l2 % r, mu1 % r, mu2 % r);
    u64::from((mu1 + mu2) % r == (l1 + l2) % r) + u64::from((mu1, mu2) == (l1, l2)) + u64::from((mu1, mu2) == (l2, l1))
}

/// Whether `±c_1 ± c_2 ± c_3 ≡ 0 (mod r)` for some choice of signs.
pub fn signed_sum_vanishes(c: [u64; 3], r: u64) -> bool {
    let r = r as i128;
    [1i128, -1].iter().any(|&s2| {
        [1i128, -1]
            .iter()
            .any(|&s3| (c[0] as i128 + s2 * c[1] as i128 + s3 * c[2] as i128).rem_euclid(r) == 0)
    })
}

/// The two characters of `F_{q²}^×` that do not occur in `π(θ)|_{F_{q²}^×}`
/// for the cuspidal `π(θ)` of `GL_2(F_q)`: `θ` and `θ^q`.
pub fn torus_absent(a: u64, q: u64) -> [u64; 2] {
    let m = q * q - 1;
    let mut out = [a % m, a * q % m];
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{dual_spec, frobenius_spec, iso_test, CharSpec};
    use crate::fields::{FieldTower, MultChar};

    /// `θ(x) = (χ ∘ Nm)(x)` for every `x ∈ F_{q^n}^×`, with `θ` at level `2n`
    /// and `χ` at level `chi_level`, evaluated point by point.
    fn pointwise(t: &FieldTower, a: u64, n: usize, chi: MultChar) -> bool {
        let m = t.conductor();
        let theta = MultChar { level: 2 * n, exponent: a };
        t.level(n).unwrap().units().all(|code| {
            let x = t.elem(n, code);
            let lhs = t.char_eval(theta, x, m).unwrap();
            let nm = t.norm_to_subfield(x, 1).unwrap();
            let rhs = t.char_eval(chi, nm, m).unwrap();
            lhs == rhs
        })
    }

    #[test]
    fn linear_period_matches_pointwise_condition() {
        for (n, q) in [(1usize, 3u64), (1, 4), (1, 5), (2, 2), (2, 3)] {
            let t = FieldTower::build(q, &[2 * n]).unwrap();
            for a in 0..t.unit_order(2 * n) {
                for c1 in 0..q - 1 {
                    for c2 in 0..q - 1 {
                        let chi = MultChar { level: 1, exponent: (c1 + c2) % (q - 1) };
                        assert_eq!(linear_period(a, c1, c2, n, q), pointwise(&t, a, n, chi), "a={a} n={n} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_period_matches_pointwise_condition() {
        for (n, q) in [(2usize, 2u64), (2, 3), (1, 3)] {
            let t = FieldTower::build(q, &[2 * n]).unwrap();
            for a in 0..t.unit_order(2 * n) {
                for c in 0..q * q - 1 {
                    // χ|_{F^×} as a character at level 1
                    let chi = MultChar { level: 2, exponent: c };
                    let restricted = (0..q - 1)
                        .find(|&e| {
                            t.level(1).unwrap().units().all(|code| {
                                let x = t.elem(1, code);
                                t.char_exponent(chi, x).unwrap()
                                    == t.char_exponent(MultChar { level: 1, exponent: e }, x).unwrap()
                                        * (q + 1)
                                        % (q * q - 1)
                            })
                        })
                        .unwrap();
                    let expect = pointwise(&t, a, n, MultChar { level: 1, exponent: restricted });
                    assert_eq!(twisted_period(a, c, n, q), expect, "a={a} c={c} n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn sigma_dual_matches_search_and_specs() {
        for (n, q) in [(1usize, 2u64), (1, 3), (2, 2), (2, 3), (3, 2)] {
            for a in crate::chars::regular_thetas(n, q * q) {
                let pred = sigma_dual(a, n, q);
                assert_eq!(pred, sigma_dual_search(a, n, q), "a={a} n={n} q={q}");
                let pi = CharSpec::cuspidal(n, q * q, a);
                let iso = iso_test(&frobenius_spec(&pi, q).unwrap(), &dual_spec(&pi).unwrap()).unwrap();
                assert_eq!(pred, iso, "a={a} n={n} q={q}");
            }
        }
        // n = 1, q = 3: the condition is `a` even
        for a in crate::chars::regular_thetas(1, 9) {
            assert_eq!(sigma_dual(a, 1, 3), a % 2 == 0);
        }
        for a in crate::chars::regular_thetas(2, 4) {
            assert!(!sigma_dual(a, 2, 2));
        }
    }

    #[test]
    fn gl2_principal_series_counts() {
        // all μ with μ_1 μ_2 = λ_1 λ_2 appear; the two orderings of λ twice
        let q = 5;
        let total: u64 = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).map(|(a, b)| principal_series_gl2(1, 2, a, b, q)).sum();
        assert_eq!(total, 4 + 2);
        assert_eq!(principal_series_gl2(1, 2, 2, 1, q), 2);
        assert_eq!(principal_series_gl2(1, 2, 0, 3, q), 1);
        assert_eq!(principal_series_gl2(1, 2, 0, 0, q), 0);
    }

    #[test]
    fn signs_and_absent_pair() {
        assert!(signed_sum_vanishes([1, 2, 3], 8));
        assert!(!signed_sum_vanishes([1, 1, 1], 8));
        assert!(signed_sum_vanishes([1, 1, 2], 6));
        assert_eq!(torus_absent(1, 3), [1, 3]);
        assert_eq!(torus_absent(5, 3), [5, 7]);
    }
}
