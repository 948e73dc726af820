//! Exact linear algebra over tower levels.
//!
//! Matrices hold raw level codes; every operation takes the level's
//! [`FieldOps`] so the same code runs over prime fields and extensions.

mod classes;
mod embed;
mod subspaces;

pub use classes::{
    centralizer_order, class_of, class_rep, class_size, conjugate_partition, enumerate_classes,
    merge_classes, parse_class, partitions, ClassData, ClassPair,
};
pub use embed::{
    basechange_class, descend_class, frobenius_map, levi_embed, poly_frobenius, shintani_norm,
    unipotent_embed, WeilEmbedding,
};
pub use subspaces::{invariant_subspaces, restrict_and_quotient, Subspace};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::FieldTower;
use crate::poly::{self, FieldOps, Poly};

/// Upper bound on the number of elements [`enumerate_group`] will list.
pub const GROUP_ENUM_BOUND: u128 = 200_000;

/// An `n × n` matrix over the level-`level` field, row-major codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatF {
    pub level: usize,
    pub n: usize,
    pub data: Vec<u32>,
}

impl MatF {
    pub fn zero(level: usize, n: usize) -> Self {
        MatF { level, n, data: vec![0; n * n] }
    }

    pub fn identity(level: usize, n: usize) -> Self {
        Self::scalar(level, n, 1)
    }

    pub fn scalar(level: usize, n: usize, c: u32) -> Self {
        let mut m = Self::zero(level, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(level: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::LevelMismatch("matrix rows must form a square".into()));
        }
        Ok(MatF { level, n, data: rows.concat() })
    }

    pub fn from_fn(level: usize, n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        MatF { level, n, data }
    }

    /// Companion matrix of a monic `f`: ones on the subdiagonal and `-f_i` in
    /// the last column.
    pub fn companion<F: FieldOps + ?Sized>(k: &F, level: usize, f: &[u32]) -> Self {
        let m = f.len() - 1;
        let mut c = Self::zero(level, m);
        for i in 1..m {
            c.set(i, i - 1, 1);
        }
        for i in 0..m {
            c.set(i, m - 1, k.neg(f[i]));
        }
        c
    }

    pub fn block_diag(blocks: &[MatF]) -> Self {
        let level = blocks.first().map_or(1, |b| b.level);
        let n = blocks.iter().map(|b| b.n).sum();
        let mut out = Self::zero(level, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n;
        }
        out
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.level, self.n, |i, j| self.get(j, i))
    }

    pub fn map_entries(&self, f: impl Fn(u32) -> u32) -> Self {
        MatF {
            level: self.level,
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    fn check_shape(&self, other: &MatF) {
        assert!(
            self.level == other.level && self.n == other.n,
            "shape mismatch: level {} n {} vs level {} n {}",
            self.level,
            self.n,
            other.level,
            other.n
        );
    }

    pub fn mul<F: FieldOps + ?Sized>(&self, k: &F, other: &MatF) -> MatF {
        self.check_shape(other);
        let n = self.n;
        let mut out = Self::zero(self.level, n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.data[idx] = k.add(out.data[idx], k.mul(a, other.get(l, j)));
                }
            }
        }
        out
    }

    pub fn add<F: FieldOps + ?Sized>(&self, k: &F, other: &MatF) -> MatF {
        self.check_shape(other);
        MatF {
            level: self.level,
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub<F: FieldOps + ?Sized>(&self, k: &F, other: &MatF) -> MatF {
        self.check_shape(other);
        MatF {
            level: self.level,
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| k.sub(a, b)).collect(),
        }
    }

    pub fn scale<F: FieldOps + ?Sized>(&self, k: &F, c: u32) -> MatF {
        self.map_entries(|x| k.mul(x, c))
    }

    /// `g v` for a column vector `v`.
    pub fn apply<F: FieldOps + ?Sized>(&self, k: &F, v: &[u32]) -> Vec<u32> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
            })
            .collect()
    }

    pub fn pow<F: FieldOps + ?Sized>(&self, k: &F, mut e: u64) -> MatF {
        let mut base = self.clone();
        let mut acc = Self::identity(self.level, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            base = base.mul(k, &base);
            e >>= 1;
        }
        acc
    }

    /// `f(g)` by Horner's rule.
    pub fn eval_poly<F: FieldOps + ?Sized>(&self, k: &F, f: &[u32]) -> MatF {
        let mut acc = Self::zero(self.level, self.n);
        for &c in f.iter().rev() {
            acc = acc.mul(k, self);
            for i in 0..self.n {
                let idx = i * self.n + i;
                acc.data[idx] = k.add(acc.data[idx], c);
            }
        }
        acc
    }

    pub fn rank<F: FieldOps + ?Sized>(&self, k: &F) -> usize {
        rref(k, self.rows()).1.len()
    }

    pub fn det<F: FieldOps + ?Sized>(&self, k: &F) -> u32 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = k.neg(det);
            }
            let piv = a[c * n + c];
            det = k.mul(det, piv);
            let inv = k.inv(piv);
            for r in c + 1..n {
                let f = k.mul(a[r * n + c], inv);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = k.sub(a[r * n + j], k.mul(f, a[c * n + j]));
                }
            }
        }
        det
    }

    pub fn is_invertible<F: FieldOps + ?Sized>(&self, k: &F) -> bool {
        self.det(k) != 0
    }

    pub fn inverse<F: FieldOps + ?Sized>(&self, k: &F) -> Result<MatF> {
        let n = self.n;
        let mut aug: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| aug[r][c] != 0).ok_or(Error::SingularMatrix)?;
            aug.swap(p, c);
            let inv = k.inv(aug[c][c]);
            for x in aug[c].iter_mut() {
                *x = k.mul(*x, inv);
            }
            let pivot_row = aug[c].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r == c || row[c] == 0 {
                    continue;
                }
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = k.sub(*x, k.mul(f, y));
                }
            }
        }
        Ok(MatF {
            level: self.level,
            n,
            data: aug.into_iter().flat_map(|r| r[n..].to_vec()).collect(),
        })
    }

    /// `x g x⁻¹`.
    pub fn conjugate_by<F: FieldOps + ?Sized>(&self, k: &F, x: &MatF) -> Result<MatF> {
        Ok(x.mul(k, self).mul(k, &x.inverse(k)?))
    }

    /// Characteristic polynomial `det(xI - g)` via Hessenberg reduction.
    pub fn charpoly<F: FieldOps + ?Sized>(&self, k: &F) -> Poly {
        let n = self.n;
        let mut h: Vec<Vec<u32>> = self.rows();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
                continue;
            };
            if i != j + 1 {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            }
            let inv = k.inv(h[j + 1][j]);
            for r in j + 2..n {
                let u = k.mul(h[r][j], inv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    let t = k.mul(u, h[j + 1][c]);
                    h[r][c] = k.sub(h[r][c], t);
                }
                for row in h.iter_mut() {
                    let t = k.mul(u, row[r]);
                    row[j + 1] = k.add(row[j + 1], t);
                }
            }
        }
        let mut ps: Vec<Poly> = vec![vec![1]];
        for m in 0..n {
            let mut next = poly::mul(k, &[k.neg(h[m][m]), 1], &ps[m]);
            let mut prod = 1u32;
            for i in (0..m).rev() {
                prod = k.mul(prod, h[i + 1][i]);
                let c = k.mul(h[i][m], prod);
                if c != 0 {
                    next = poly::sub(k, &next, &poly::scale(k, &ps[i], c));
                }
            }
            ps.push(next);
        }
        ps.pop().unwrap()
    }
}

/// Reduced row-echelon form of `rows` (zero rows dropped) and its pivot
/// columns.
pub fn rref<F: FieldOps + ?Sized>(k: &F, mut rows: Vec<Vec<u32>>) -> (Vec<Vec<u32>>, Vec<usize>) {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(p, r);
        let inv = k.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = k.sub(*x, k.mul(f, y));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// `|GL_n(F_Q)| = Π_{i<n} (Q^n - Q^i)`.
pub fn group_order(n: usize, size: u64) -> u128 {
    let q = size as u128;
    let qn = q.checked_pow(n as u32).expect("group order overflows u128");
    (0..n).fold(1u128, |acc, i| {
        acc.checked_mul(qn - q.pow(i as u32))
            .expect("group order overflows u128")
    })
}

/// Every element of `GL_n` over the given level, rows chosen in code order
/// subject to linear independence.
pub fn enumerate_group(t: &FieldTower, n: usize, level: usize) -> Result<Vec<MatF>> {
    let lv = t.level(level)?;
    let order = group_order(n, lv.size_u64());
    if order > GROUP_ENUM_BOUND {
        return Err(Error::BoundExceeded(format!(
            "GL_{n} over a field of size {} has {order} elements",
            lv.size_u64()
        )));
    }
    let size = lv.size_u64();
    let vectors: Vec<Vec<u32>> = (0..size.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = (c % size) as u32;
                    c /= size;
                    d
                })
                .rev()
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(order as usize);
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    fn rec<F: FieldOps + ?Sized>(
        k: &F,
        level: usize,
        n: usize,
        vectors: &[Vec<u32>],
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<MatF>,
    ) {
        if rows.len() == n {
            out.push(MatF { level, n, data: rows.concat() });
            return;
        }
        for v in vectors {
            rows.push(v.clone());
            if rref(k, rows.clone()).1.len() == rows.len() {
                rec(k, level, n, vectors, rows, out);
            }
            rows.pop();
        }
    }
    rec(lv, level, n, &vectors, &mut rows, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PrimeField;

    const F2: PrimeField = PrimeField { p: 2 };
    const F3: PrimeField = PrimeField { p: 3 };

    #[test]
    fn inverse_and_det() {
        let g = MatF::from_rows(1, &[vec![1, 1], vec![0, 1]]).unwrap();
        let gi = g.inverse(&F3).unwrap();
        assert_eq!(g.mul(&F3, &gi), MatF::identity(1, 2));
        assert_eq!(g.det(&F3), 1);
        let s = MatF::from_rows(1, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(s.det(&F3), 0);
        assert!(matches!(s.inverse(&F3), Err(Error::SingularMatrix)));
    }

    #[test]
    fn charpoly_of_companion_is_the_polynomial() {
        for f in [vec![1u32, 1, 0, 0, 1], vec![1, 0, 1, 1, 1], vec![1, 1, 1]] {
            let c = MatF::companion(&F2, 1, &f);
            assert_eq!(c.charpoly(&F2), f);
            assert!(c.eval_poly(&F2, &f).data.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn charpoly_matches_cofactor_expansion_3x3() {
        // det(xI - g) for g = [[1,2,0],[0,1,1],[2,0,2]] over F_3, computed by hand:
        // (x-1)^2 (x-2) - 2·1·2 = x^3 - 4x^2 + 5x - 2 - 4 = x^3 + 2x^2 + 2x
        let g = MatF::from_rows(1, &[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 2]]).unwrap();
        assert_eq!(g.charpoly(&F3), vec![0, 2, 2, 1]);
    }

    #[test]
    fn group_orders() {
        assert_eq!(group_order(2, 4), 180);
        assert_eq!(group_order(2, 3), 48);
        assert_eq!(group_order(3, 2), 168);
        assert_eq!(group_order(4, 2), 20160);
    }

    #[test]
    fn enumerates_small_groups() {
        let t = FieldTower::build(3, &[1]).unwrap();
        let g = enumerate_group(&t, 2, 1).unwrap();
        assert_eq!(g.len(), 48);
        let t2 = FieldTower::build(2, &[1]).unwrap();
        assert_eq!(enumerate_group(&t2, 3, 1).unwrap().len(), 168);
        let t9 = FieldTower::build(9, &[1]).unwrap();
        assert!(matches!(enumerate_group(&t9, 3, 1), Err(Error::BoundExceeded(_))));
    }
}
