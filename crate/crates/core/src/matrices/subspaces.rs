//! Invariant subspaces and the induced actions on them.

use serde::{Deserialize, Serialize};

use super::{rref, MatF};
use crate::error::{Error, Result};
use crate::fields::FieldTower;
use crate::poly::{self, FieldOps};

/// A subspace of `F^dim` given by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    pub level: usize,
    pub dim: usize,
    pub basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn from_vectors<F: FieldOps + ?Sized>(k: &F, level: usize, dim: usize, vectors: Vec<Vec<u32>>) -> Self {
        let basis = if vectors.is_empty() { vec![] } else { rref(k, vectors).0 };
        Subspace { level, dim, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("basis rows are nonzero"))
            .collect()
    }

    /// Clears the pivot coordinates of `v`; zero iff `v` lies in the span.
    fn reduce<F: FieldOps + ?Sized>(&self, k: &F, v: &mut [u32], pivots: &[usize]) {
        for (row, &p) in self.basis.iter().zip(pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = k.sub(*x, k.mul(c, y));
                }
            }
        }
    }

    pub fn contains<F: FieldOps + ?Sized>(&self, k: &F, v: &[u32]) -> bool {
        let mut v = v.to_vec();
        self.reduce(k, &mut v, &self.pivots());
        v.iter().all(|&x| x == 0)
    }

    pub fn is_invariant<F: FieldOps + ?Sized>(&self, k: &F, g: &MatF) -> bool {
        let pivots = self.pivots();
        self.basis.iter().all(|w| {
            let mut v = g.apply(k, w);
            self.reduce(k, &mut v, &pivots);
            v.iter().all(|&x| x == 0)
        })
    }
}

/// All RREF `j × m` matrices of rank `j` over a field of size `size`.
fn rref_forms(size: u32, m: usize, j: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(j);
    fn choose(m: usize, j: usize, start: usize, pivots: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if pivots.len() == j {
            f(pivots);
            return;
        }
        for c in start..m {
            pivots.push(c);
            choose(m, j, c + 1, pivots, f);
            pivots.pop();
        }
    }
    choose(m, j, 0, &mut pivots, &mut |piv: &[usize]| {
        // free slots: row i, column c > piv[i] with c not a pivot
        let free: Vec<(usize, usize)> = (0..j)
            .flat_map(|i| ((piv[i] + 1)..m).filter(|c| !piv.contains(c)).map(move |c| (i, c)))
            .collect();
        let total = (size as u64).pow(free.len() as u32);
        for mut idx in 0..total {
            let mut rows = vec![vec![0u32; m]; j];
            for (i, &p) in piv.iter().enumerate() {
                rows[i][p] = 1;
            }
            for &(i, c) in &free {
                rows[i][c] = (idx % size as u64) as u32;
                idx /= size as u64;
            }
            out.push(rows);
        }
    });
    out
}

/// Kernel basis of an `n × n` matrix (as column-vector solutions).
fn kernel<F: FieldOps + ?Sized>(k: &F, a: &MatF) -> Vec<Vec<u32>> {
    let n = a.n;
    let (rows, pivots) = rref(k, a.rows());
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; n];
            v[f] = 1;
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = k.neg(row[f]);
            }
            v
        })
        .collect()
}

/// Every `g`-invariant subspace of dimension `k`, in canonical order.
///
/// The space splits as the direct sum of the generalized eigenspaces
/// `ker f(g)^e` of the primary factors; an invariant subspace is the sum of
/// its intersections with them, so each component is enumerated separately.
pub fn invariant_subspaces(t: &FieldTower, g: &MatF, k: usize) -> Result<Vec<Subspace>> {
    let lv = t.level(g.level)?;
    let n = g.n;
    if k > n {
        return Ok(vec![]);
    }
    let size = lv.size_u64() as u32;
    let cp = g.charpoly(lv);
    let mut components: Vec<Vec<Vec<Subspace>>> = Vec::new();
    for (f, e) in poly::factor(lv, &cp) {
        let mut fe = vec![1];
        for _ in 0..e {
            fe = poly::mul(lv, &fe, &f);
        }
        let basis = kernel(lv, &g.eval_poly(lv, &fe));
        let m = basis.len();
        // g restricted to the component, in the coordinates of `basis`
        let comp = Subspace::from_vectors(lv, g.level, n, basis.clone());
        let piv = comp.pivots();
        let coords = |v: &[u32]| -> Vec<u32> {
            // coordinates with respect to `basis` via the RREF of the span
            let c_rref: Vec<u32> = piv.iter().map(|&p| v[p]).collect();
            // convert RREF coordinates to `basis` coordinates
            let b_rref: Vec<Vec<u32>> = basis.iter().map(|b| piv.iter().map(|&p| b[p]).collect()).collect();
            solve_row_combination(lv, &b_rref, &c_rref)
        };
        let gm = MatF::from_fn(g.level, m, |i, j| coords(&g.apply(lv, &basis[j]))[i]);
        let mut by_dim: Vec<Vec<Subspace>> = vec![Vec::new(); m + 1];
        for j in 0..=m.min(k) {
            for rows in rref_forms(size, m, j) {
                let local = Subspace { level: g.level, dim: m, basis: rows };
                if local.is_invariant(lv, &gm) {
                    let ambient: Vec<Vec<u32>> = local
                        .basis
                        .iter()
                        .map(|r| {
                            (0..n)
                                .map(|c| r.iter().zip(&basis).fold(0, |acc, (&a, b)| lv.add(acc, lv.mul(a, b[c]))))
                                .collect()
                        })
                        .collect();
                    by_dim[j].push(Subspace::from_vectors(lv, g.level, n, ambient));
                }
            }
        }
        components.push(by_dim);
    }
    let mut out: Vec<Subspace> = Vec::new();
    fn combine<F: FieldOps + ?Sized>(
        k: &F,
        comps: &[Vec<Vec<Subspace>>],
        idx: usize,
        remaining: usize,
        acc: &mut Vec<Vec<u32>>,
        level: usize,
        n: usize,
        out: &mut Vec<Subspace>,
    ) {
        if idx == comps.len() {
            if remaining == 0 {
                out.push(Subspace::from_vectors(k, level, n, acc.clone()));
            }
            return;
        }
        for (j, subs) in comps[idx].iter().enumerate().take(remaining + 1) {
            for s in subs {
                let before = acc.len();
                acc.extend(s.basis.iter().cloned());
                combine(k, comps, idx + 1, remaining - j, acc, level, n, out);
                acc.truncate(before);
            }
        }
    }
    combine(lv, &components, 0, k, &mut Vec::new(), g.level, n, &mut out);
    out.sort();
    Ok(out)
}

/// Solves `Σ x_i b_i = c` for the unique `x` (rows `b_i` independent).
fn solve_row_combination<F: FieldOps + ?Sized>(k: &F, b: &[Vec<u32>], c: &[u32]) -> Vec<u32> {
    let m = b.len();
    // transpose system: columns are b_i
    let rows: Vec<Vec<u32>> = (0..c.len())
        .map(|r| {
            let mut row: Vec<u32> = (0..m).map(|i| b[i][r]).collect();
            row.push(c[r]);
            row
        })
        .collect();
    let (red, pivots) = rref(k, rows);
    let mut x = vec![0u32; m];
    for (row, &p) in red.iter().zip(&pivots) {
        if p < m {
            x[p] = row[m];
        }
    }
    x
}

/// Matrices of `g` on `W` (basis: the RREF rows) and on `V/W` (basis: the
/// images of the standard vectors at non-pivot positions).
pub fn restrict_and_quotient(t: &FieldTower, g: &MatF, w: &Subspace) -> Result<(MatF, MatF)> {
    let lv = t.level(g.level)?;
    if !w.is_invariant(lv, g) {
        return Err(Error::NotInvariant);
    }
    let pivots = w.pivots();
    let k = w.rank();
    let restricted = MatF::from_fn(g.level, k, |i, j| g.apply(lv, &w.basis[j])[pivots[i]]);
    let rest: Vec<usize> = (0..g.n).filter(|c| !pivots.contains(c)).collect();
    let qn = rest.len();
    let mut quotient = MatF::zero(g.level, qn);
    for (j, &cj) in rest.iter().enumerate() {
        let mut v = g.column(cj);
        w.reduce(lv, &mut v, &pivots);
        for (i, &ci) in rest.iter().enumerate() {
            quotient.set(i, j, v[ci]);
        }
    }
    Ok((restricted, quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PrimeField;

    fn gaussian_binomial(n: usize, k: usize, q: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow((n - i) as u32) - 1;
            den *= q.pow((i + 1) as u32) - 1;
        }
        num / den
    }

    #[test]
    fn identity_counts_are_gaussian_binomials() {
        for q in [2u64, 3] {
            let t = FieldTower::build(q, &[1]).unwrap();
            let top = if q == 2 { 6 } else { 4 };
            for n in 1..=top {
                for k in 0..=n {
                    let got = invariant_subspaces(&t, &MatF::identity(1, n), k).unwrap().len();
                    assert_eq!(got as u64, gaussian_binomial(n, k, q), "n={n} k={k} q={q}");
                }
            }
        }
    }

    #[test]
    fn irreducible_action_has_no_proper_subspaces() {
        let t = FieldTower::build(2, &[1]).unwrap();
        let c = MatF::companion(&PrimeField { p: 2 }, 1, &[1, 1, 0, 0, 1]);
        assert!(invariant_subspaces(&t, &c, 2).unwrap().is_empty());
        assert_eq!(invariant_subspaces(&t, &c, 4).unwrap().len(), 1);
    }

    #[test]
    fn block_restriction() {
        let t = FieldTower::build(3, &[1]).unwrap();
        let k = PrimeField { p: 3 };
        let a = MatF::from_rows(1, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = MatF::from_rows(1, &[vec![2, 0], vec![1, 1]]).unwrap();
        let g = MatF::block_diag(&[a.clone(), b.clone()]);
        let w = Subspace::from_vectors(&k, 1, 4, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let (r, q) = restrict_and_quotient(&t, &g, &w).unwrap();
        assert_eq!(r, a);
        assert_eq!(q, b);
        let bad = Subspace::from_vectors(&k, 1, 4, vec![vec![0, 1, 0, 0]]);
        assert!(matches!(restrict_and_quotient(&t, &g, &bad), Err(Error::NotInvariant)));
    }
}
