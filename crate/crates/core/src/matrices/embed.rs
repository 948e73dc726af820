//! Embeddings between groups over different levels, Frobenius, and the
//! Shintani norm.

use super::{class_of, ClassData, MatF};
use crate::error::{Error, Result};
use crate::fields::FieldTower;
use crate::poly::{self, FieldOps, Poly};

/// Restriction of scalars from level `big` to level `small`, with the power
/// basis `1, ω, …, ω^{r-1}` for `ω = gen[big]` and `r = big / small`.
#[derive(Clone, Debug)]
pub struct WeilEmbedding {
    pub small: usize,
    pub big: usize,
    pub r: usize,
    /// `coords[x·r + i]` is the `i`-th coordinate of the big-level code `x`.
    coords: Vec<u32>,
}

impl WeilEmbedding {
    pub fn new(t: &FieldTower, small: usize, big: usize) -> Result<Self> {
        if small == 0 || !big.is_multiple_of(small) {
            return Err(Error::LevelMismatch(format!("level {small} does not divide level {big}")));
        }
        let ls = t.level(small)?;
        let lb = t.level(big)?;
        let r = big / small;
        let omega = lb.generator();
        let powers: Vec<u32> = (0..r as u64).map(|i| lb.pow(omega, i)).collect();
        let qs = ls.size_u64();
        let mut coords = vec![0u32; lb.size_u64() as usize * r];
        for idx in 0..qs.pow(r as u32) {
            let mut c = idx;
            let digits: Vec<u32> = (0..r)
                .map(|_| {
                    let d = (c % qs) as u32;
                    c /= qs;
                    d
                })
                .collect();
            let mut x = 0;
            for (&d, &w) in digits.iter().zip(&powers) {
                let e = t.embed_code(d, small, big)?;
                x = lb.add(x, lb.mul(e, w));
            }
            coords[x as usize * r..(x as usize + 1) * r].copy_from_slice(&digits);
        }
        Ok(WeilEmbedding { small, big, r, coords })
    }

    pub fn coordinates(&self, x: u32) -> &[u32] {
        &self.coords[x as usize * self.r..(x as usize + 1) * self.r]
    }

    /// Matrix of multiplication by `x` in the power basis.
    pub fn mult_matrix(&self, t: &FieldTower, x: u32) -> Result<MatF> {
        let lb = t.level(self.big)?;
        let omega = lb.generator();
        let mut cols = Vec::with_capacity(self.r);
        let mut y = x;
        for _ in 0..self.r {
            cols.push(self.coordinates(y).to_vec());
            y = lb.mul(y, omega);
        }
        Ok(MatF::from_fn(self.small, self.r, |i, j| cols[j][i]))
    }

    /// Replaces each entry by its `r × r` multiplication matrix.
    pub fn embed(&self, t: &FieldTower, g: &MatF) -> Result<MatF> {
        if g.level != self.big {
            return Err(Error::LevelMismatch(format!(
                "matrix at level {} but the embedding starts at level {}",
                g.level, self.big
            )));
        }
        let r = self.r;
        let mut out = MatF::zero(self.small, g.n * r);
        for i in 0..g.n {
            for j in 0..g.n {
                let m = self.mult_matrix(t, g.get(i, j))?;
                for a in 0..r {
                    for b in 0..r {
                        out.set(i * r + a, j * r + b, m.get(a, b));
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn levi_embed(g1: &MatF, g2: &MatF) -> Result<MatF> {
    if g1.level != g2.level || g1.n != g2.n {
        return Err(Error::LevelMismatch(format!(
            "blocks of shape ({}, {}) and ({}, {})",
            g1.level, g1.n, g2.level, g2.n
        )));
    }
    Ok(MatF::block_diag(&[g1.clone(), g2.clone()]))
}

/// `[[I, X], [0, I]]`.
pub fn unipotent_embed(x: &MatF) -> MatF {
    let n = x.n;
    MatF::from_fn(x.level, 2 * n, |i, j| match (i < n, j < n) {
        (true, false) => x.get(i, j - n),
        _ => u32::from(i == j),
    })
}

fn check_sub(t: &FieldTower, level: usize, sub: usize) -> Result<u64> {
    if sub == 0 || !level.is_multiple_of(sub) || level == sub {
        return Err(Error::LevelMismatch(format!("level {sub} is not a proper subfield of level {level}")));
    }
    t.level(sub)?;
    t.level(level)?;
    Ok(t.q().pow(sub as u32))
}

/// Entrywise `x ↦ x^{q^sub}`.
pub fn frobenius_map(t: &FieldTower, g: &MatF, sub: usize) -> Result<MatF> {
    let qs = check_sub(t, g.level, sub)?;
    let lv = t.level(g.level)?;
    Ok(g.map_entries(|x| lv.frobenius(x, qs)))
}

/// Coefficientwise `x ↦ x^{q^sub}`.
pub fn poly_frobenius(t: &FieldTower, level: usize, f: &[u32], sub: usize) -> Result<Poly> {
    let qs = check_sub(t, level, sub)?;
    let lv = t.level(level)?;
    Ok(f.iter().map(|&c| lv.frobenius(c, qs)).collect())
}

fn descend_poly(t: &FieldTower, f: &[u32], big: usize, small: usize) -> Result<Poly> {
    f.iter()
        .map(|&c| {
            t.descend_code(c, big, small)?
                .ok_or_else(|| Error::DescentFailure(format!("coefficient {c} is not in level {small}")))
        })
        .collect()
}

/// Class over the quadratic subfield from σ-stable class data over `E`.
pub fn descend_class(t: &FieldTower, c: &ClassData, sub: usize) -> Result<ClassData> {
    if c.level != 2 * sub {
        return Err(Error::LevelMismatch(format!("level {} is not quadratic over {sub}", c.level)));
    }
    let small = t.level(sub)?;
    let mut used = vec![false; c.pairs.len()];
    let mut out = Vec::new();
    for (i, p) in c.pairs.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let fs = poly_frobenius(t, c.level, &p.poly, sub)?;
        if fs == p.poly {
            out.push((descend_poly(t, &p.poly, c.level, sub)?, p.partition.clone()));
            continue;
        }
        let j = c.pairs.iter().position(|q| q.poly == fs).ok_or(Error::NotSigmaStable)?;
        if c.pairs[j].partition != p.partition {
            return Err(Error::PartitionMismatch);
        }
        used[j] = true;
        let big = t.level(c.level)?;
        let prod = poly::mul(big, &p.poly, &fs);
        out.push((descend_poly(t, &prod, c.level, sub)?, p.partition.clone()));
    }
    Ok(ClassData::new(sub, small.size_u64(), out))
}

/// Class data of the same elements viewed over the level `to`.
pub fn basechange_class(t: &FieldTower, c: &ClassData, to: usize) -> Result<ClassData> {
    if !to.is_multiple_of(c.level) {
        return Err(Error::LevelMismatch(format!("level {} does not divide level {to}", c.level)));
    }
    let big = t.level(to)?;
    let mut out = Vec::new();
    for p in &c.pairs {
        let f: Poly = p
            .poly
            .iter()
            .map(|&x| t.embed_code(x, c.level, to))
            .collect::<Result<_>>()?;
        for (g, _) in poly::factor(big, &f) {
            out.push((g, p.partition.clone()));
        }
    }
    Ok(ClassData::new(to, big.size_u64(), out))
}

/// The norm class of `g ∈ GL_n(E)`: the `F`-class of `g·σ(g)`.
pub fn shintani_norm(t: &FieldTower, g: &MatF, sub: usize) -> Result<ClassData> {
    let lv = t.level(g.level)?;
    if !g.is_invertible(lv) {
        return Err(Error::SingularMatrix);
    }
    let h = g.mul(lv, &frobenius_map(t, g, sub)?);
    descend_class(t, &class_of(t, &h)?, sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{enumerate_classes, merge_classes};

    #[test]
    fn weil_example_over_f4() {
        let t = FieldTower::build(2, &[2]).unwrap();
        let w = WeilEmbedding::new(&t, 1, 2).unwrap();
        let omega = t.level(2).unwrap().generator();
        let m = w.mult_matrix(&t, omega).unwrap();
        assert_eq!(m, MatF::from_rows(1, &[vec![0, 1], vec![1, 1]]).unwrap());
        let id = w.embed(&t, &MatF::identity(2, 2)).unwrap();
        assert_eq!(id, MatF::identity(1, 4));
    }

    #[test]
    fn unipotent_and_levi() {
        let z = MatF::zero(1, 2);
        assert_eq!(unipotent_embed(&z), MatF::identity(1, 4));
        let t = FieldTower::build(2, &[1]).unwrap();
        let lv = t.level(1).unwrap();
        let c = MatF::companion(lv, 1, &[1, 1, 1]);
        let l = levi_embed(&c, &c).unwrap();
        assert_eq!(class_of(&t, &l).unwrap().to_class_string(&t), "q2:n4:[x^2+x+1|1,1]");
        let a = class_of(&t, &c).unwrap();
        assert_eq!(merge_classes(&a, &a).unwrap(), class_of(&t, &l).unwrap());
        assert!(levi_embed(&c, &MatF::identity(1, 3)).is_err());
    }

    #[test]
    fn shintani_examples() {
        let t = FieldTower::build(2, &[2]).unwrap();
        let omega = MatF::scalar(2, 1, t.level(2).unwrap().generator());
        let n = shintani_norm(&t, &omega, 1).unwrap();
        assert_eq!(n.to_class_string(&t), "q2:n1:[x+1|1]");
        let t3 = FieldTower::build(3, &[2]).unwrap();
        let g = MatF::scalar(2, 1, t3.level(2).unwrap().generator());
        let n = shintani_norm(&t3, &g, 1).unwrap();
        // gen^4 in F_9 is the element 2 of F_3, so the class is x - 2 = x + 1
        assert_eq!(n.to_class_string(&t3), "q3:n1:[x+1|1]");
        let id = shintani_norm(&t3, &MatF::identity(2, 2), 1).unwrap();
        assert!(id.is_central());
    }

    #[test]
    fn descent_of_conjugate_pair() {
        let t = FieldTower::build(2, &[2]).unwrap();
        let lv = t.level(2).unwrap();
        let w = lv.generator();
        let w2 = lv.mul(w, w);
        let c = ClassData::new(2, 4, vec![(vec![w, 1], vec![1]), (vec![w2, 1], vec![1])]);
        let d = descend_class(&t, &c, 1).unwrap();
        assert_eq!(d.to_class_string(&t), "q2:n2:[x^2+x+1|1]");
        let bad = ClassData::new(2, 4, vec![(vec![w, 1], vec![1])]);
        assert!(matches!(descend_class(&t, &bad, 1), Err(Error::NotSigmaStable)));
        let mism = ClassData::new(2, 4, vec![(vec![w, 1], vec![2]), (vec![w2, 1], vec![1, 1])]);
        assert!(matches!(descend_class(&t, &mism, 1), Err(Error::PartitionMismatch)));
    }

    #[test]
    fn basechange_examples() {
        let t = FieldTower::build(2, &[2, 3]).unwrap();
        let c = ClassData::new(1, 2, vec![(vec![1, 1, 1], vec![1])]);
        let b = basechange_class(&t, &c, 2).unwrap();
        assert_eq!(b.pairs.len(), 2);
        let t6 = FieldTower::build(2, &[6]).unwrap();
        let cubic = ClassData::new(1, 2, vec![(vec![1, 1, 0, 1], vec![1])]);
        assert_eq!(basechange_class(&t6, &cubic, 2).unwrap().pairs.len(), 1);
        assert_eq!(basechange_class(&t6, &cubic, 3).unwrap().pairs.len(), 3);
    }

    #[test]
    fn basechange_descent_roundtrip() {
        for (n, q) in [(1usize, 2u64), (1, 3), (2, 2), (2, 3)] {
            let t = FieldTower::build(q, &[2]).unwrap();
            for c in enumerate_classes(&t, n, 1).unwrap() {
                let e = basechange_class(&t, &c, 2).unwrap();
                assert_eq!(descend_class(&t, &e, 1).unwrap(), c);
            }
        }
    }
}
