//! Conjugacy classes of `GL_n` as (irreducible polynomial, partition) data.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{group_order, MatF};
use crate::error::{Error, Result};
use crate::fields::{FieldTower, Level};
use crate::poly::{self, canonical_cmp, FieldOps, Poly};

/// One elementary-divisor block: a monic irreducible `f ≠ x` and the sizes of
/// its Jordan blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassPair {
    pub poly: Poly,
    pub partition: Vec<usize>,
}

impl ClassPair {
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }
    pub fn weight(&self) -> usize {
        self.partition.iter().sum()
    }
}

impl Ord for ClassPair {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.poly, &other.poly).then_with(|| self.partition.cmp(&other.partition))
    }
}

impl PartialOrd for ClassPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A conjugacy class of `GL_n` over the level-`level` field of size `size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassData {
    pub level: usize,
    pub size: u64,
    pub n: usize,
    pub pairs: Vec<ClassPair>,
}

impl Ord for ClassData {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level, self.n)
            .cmp(&(other.level, other.n))
            .then_with(|| self.pairs.cmp(&other.pairs))
    }
}

impl PartialOrd for ClassData {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ClassData {
    /// Builds class data, sorting pairs and partitions into canonical form.
    pub fn new(level: usize, size: u64, pairs: Vec<(Poly, Vec<usize>)>) -> Self {
        let mut pairs: Vec<ClassPair> = pairs
            .into_iter()
            .map(|(poly, mut partition)| {
                partition.sort_unstable_by(|a, b| b.cmp(a));
                ClassPair { poly, partition }
            })
            .collect();
        pairs.sort();
        let n = pairs.iter().map(|p| p.degree() * p.weight()).sum();
        ClassData { level, size, n, pairs }
    }

    pub fn identity(level: usize, size: u64, n: usize) -> Self {
        Self::new(level, size, vec![(vec![size_neg_one(size), 1], vec![1; n])])
    }

    /// A class with a single elementary divisor polynomial.
    pub fn is_primary(&self) -> bool {
        self.pairs.len() == 1
    }

    pub fn is_central(&self) -> bool {
        self.is_primary() && self.pairs[0].degree() == 1 && self.pairs[0].partition.iter().all(|&k| k == 1)
    }

    /// Whether every element of the class is semisimple.
    pub fn is_semisimple(&self) -> bool {
        self.pairs.iter().all(|p| p.partition.iter().all(|&k| k == 1))
    }

    /// Whether the characteristic polynomial is squarefree.
    pub fn is_regular_semisimple(&self) -> bool {
        self.pairs.iter().all(|p| p.partition == [1])
    }

    pub fn charpoly<F: FieldOps + ?Sized>(&self, k: &F) -> Poly {
        let mut out = vec![1];
        for p in &self.pairs {
            for _ in 0..p.weight() {
                out = poly::mul(k, &out, &p.poly);
            }
        }
        out
    }

    /// Canonical compact string, e.g. `q2:n4:[x^2+x+1|1,1]`.
    pub fn to_class_string(&self, t: &FieldTower) -> String {
        let mut s = format!("q{}:n{}:", self.size, self.n);
        for p in &self.pairs {
            let parts: Vec<String> = p.partition.iter().map(|k| k.to_string()).collect();
            let _ = write!(s, "[{}|{}]", poly_to_string(t, self.level, &p.poly), parts.join(","));
        }
        s
    }
}

/// `-1` as a code: `p - 1` in the prime subfield.
fn size_neg_one(size: u64) -> u32 {
    let (p, _) = crate::fields::factor_prime_power(size).expect("field size is a prime power");
    (p - 1) as u32
}

fn coeff_to_string(t: &FieldTower, level: usize, c: u32) -> String {
    let lv = t.level(level).expect("level exists");
    if (c as u64) < t.p() {
        return c.to_string();
    }
    match lv.log(c) {
        1 => "z".into(),
        l => format!("z^{l}"),
    }
}

/// Human-readable polynomial, highest degree first. Coefficients are
/// integers in the prime subfield and powers of the level generator `z`
/// otherwise.
pub fn poly_to_string(t: &FieldTower, level: usize, f: &[u32]) -> String {
    let prime_field = t.level(level).map(|lv| lv.size_u64() == t.p()).unwrap_or(true);
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = coeff_to_string(t, level, c);
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        terms.push(match (i, c) {
            (0, _) => coeff,
            (_, 1) => mono,
            _ if prime_field || (c as u64) < t.p() => format!("{coeff}{mono}"),
            _ => format!("{coeff}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn parse_coeff(t: &FieldTower, lv: &Level, s: &str) -> Result<u32> {
    let s = s.trim_end_matches('*');
    if s.is_empty() {
        return Ok(1);
    }
    if let Some(rest) = s.strip_prefix('z') {
        let e: u64 = match rest.strip_prefix('^') {
            Some(e) => e.parse().map_err(|_| Error::Parse(format!("bad exponent in {s}")))?,
            None if rest.is_empty() => 1,
            None => return Err(Error::Parse(format!("bad coefficient {s}"))),
        };
        return Ok(lv.exp(e));
    }
    let c: u64 = s.parse().map_err(|_| Error::Parse(format!("bad coefficient {s}")))?;
    if c >= t.p() {
        return Err(Error::Parse(format!("coefficient {c} is not reduced mod {}", t.p())));
    }
    Ok(c as u32)
}

pub fn parse_poly(t: &FieldTower, level: usize, s: &str) -> Result<Poly> {
    let lv = t.level(level)?;
    let mut f: Poly = Vec::new();
    for term in s.split('+').map(str::trim) {
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {s}")));
        }
        let (coeff, exp) = match term.find('x') {
            None => (parse_coeff(t, lv, term)?, 0),
            Some(pos) => {
                let c = parse_coeff(t, lv, &term[..pos])?;
                let e = match &term[pos + 1..] {
                    "" => 1,
                    rest => rest
                        .strip_prefix('^')
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("bad monomial {term}")))?,
                };
                (c, e)
            }
        };
        if f.len() <= exp {
            f.resize(exp + 1, 0);
        }
        f[exp] = lv.add(f[exp], coeff);
    }
    poly::trim(&mut f);
    Ok(f)
}

/// Parses the canonical class string; the level is the tower level whose
/// size matches the `q` prefix.
pub fn parse_class(t: &FieldTower, s: &str) -> Result<ClassData> {
    let bad = || Error::Parse(format!("malformed class string {s:?}"));
    let mut it = s.trim().splitn(3, ':');
    let size: u64 = it.next().and_then(|x| x.strip_prefix('q')).and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    let n: usize = it.next().and_then(|x| x.strip_prefix('n')).and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    let body = it.next().ok_or_else(bad)?;
    let level = t
        .degrees()
        .into_iter()
        .find(|&d| t.level(d).is_ok_and(|lv| lv.size_u64() == size))
        .ok_or_else(|| Error::Parse(format!("no level of size {size} in the tower")))?;
    let lv = t.level(level)?;
    let mut pairs = Vec::new();
    for chunk in body.split(']').filter(|c| !c.is_empty()) {
        let chunk = chunk.strip_prefix('[').ok_or_else(bad)?;
        let (ps, parts) = chunk.split_once('|').ok_or_else(bad)?;
        let f = parse_poly(t, level, ps)?;
        if f.last() != Some(&1) || f.len() < 2 || f[0] == 0 || !poly::is_irreducible(lv, &f) {
            return Err(Error::Parse(format!("{ps} is not a monic irreducible other than x")));
        }
        let lambda: Vec<usize> = parts
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        if lambda.contains(&0) || lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts} is not a partition")));
        }
        pairs.push((f, lambda));
    }
    let c = ClassData::new(level, size, pairs);
    if c.n != n || c.pairs.windows(2).any(|w| w[0].poly == w[1].poly) {
        return Err(Error::Parse(format!("class data in {s:?} is inconsistent")));
    }
    Ok(c)
}

pub fn conjugate_partition(lambda: &[usize]) -> Vec<usize> {
    let top = lambda.iter().copied().max().unwrap_or(0);
    (1..=top).map(|i| lambda.iter().filter(|&&l| l >= i).count()).collect()
}

/// Partitions of `n`, largest first part first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Rational canonical class of an invertible matrix.
pub fn class_of(t: &FieldTower, g: &MatF) -> Result<ClassData> {
    let lv = t.level(g.level)?;
    if !g.is_invertible(lv) {
        return Err(Error::SingularMatrix);
    }
    let cp = g.charpoly(lv);
    let mut pairs = Vec::new();
    for (f, e) in poly::factor(lv, &cp) {
        let d = f.len() - 1;
        let m = g.eval_poly(lv, &f);
        let mut power = m.clone();
        let mut prev_null = 0;
        let mut jumps = Vec::new();
        loop {
            let null = g.n - power.rank(lv);
            jumps.push((null - prev_null) / d);
            prev_null = null;
            if null == d * e {
                break;
            }
            power = power.mul(lv, &m);
        }
        pairs.push((f, conjugate_partition(&jumps)));
    }
    Ok(ClassData::new(g.level, lv.size_u64(), pairs))
}

/// `a_λ(r) = r^{Σλ'_i² - Σ m_i(m_i+1)/2} Π_i Π_{j≤m_i} (r^j - 1)`, the order
/// of the centralizer of a unipotent-type block over a field of size `r`.
fn a_lambda(lambda: &[usize], r: u128) -> u128 {
    let conj = conjugate_partition(lambda);
    let sq: u32 = conj.iter().map(|&c| (c * c) as u32).sum();
    let mut mult = vec![0u32; lambda.iter().copied().max().unwrap_or(0) + 1];
    for &l in lambda {
        mult[l] += 1;
    }
    let tri: u32 = mult.iter().map(|&m| m * (m + 1) / 2).sum();
    let mut out = r.checked_pow(sq - tri).expect("centralizer order overflows u128");
    for &m in &mult {
        for j in 1..=m {
            out = out.checked_mul(r.pow(j) - 1).expect("centralizer order overflows u128");
        }
    }
    out
}

pub fn centralizer_order(c: &ClassData) -> u128 {
    c.pairs
        .iter()
        .map(|p| a_lambda(&p.partition, (c.size as u128).pow(p.degree() as u32)))
        .product()
}

pub fn class_size(c: &ClassData) -> u128 {
    group_order(c.n, c.size) / centralizer_order(c)
}

/// A representative: the direct sum of companion matrices of `f^k`, one per
/// part `k` of each partition.
pub fn class_rep(t: &FieldTower, c: &ClassData) -> Result<MatF> {
    let lv = t.level(c.level)?;
    let mut blocks = Vec::new();
    for p in &c.pairs {
        for &k in &p.partition {
            let mut fk = vec![1];
            for _ in 0..k {
                fk = poly::mul(lv, &fk, &p.poly);
            }
            blocks.push(MatF::companion(lv, c.level, &fk));
        }
    }
    Ok(MatF::block_diag(&blocks))
}

/// Class of a block-diagonal sum: union of elementary divisors.
pub fn merge_classes(a: &ClassData, b: &ClassData) -> Result<ClassData> {
    if a.level != b.level {
        return Err(Error::LevelMismatch(format!("classes at levels {} and {}", a.level, b.level)));
    }
    let mut pairs: Vec<(Poly, Vec<usize>)> = a.pairs.iter().map(|p| (p.poly.clone(), p.partition.clone())).collect();
    for p in &b.pairs {
        match pairs.iter_mut().find(|(f, _)| *f == p.poly) {
            Some((_, lam)) => lam.extend(&p.partition),
            None => pairs.push((p.poly.clone(), p.partition.clone())),
        }
    }
    Ok(ClassData::new(a.level, a.size, pairs))
}

/// Every conjugacy class of `GL_n` over the level, in canonical order.
pub fn enumerate_classes(t: &FieldTower, n: usize, level: usize) -> Result<Vec<ClassData>> {
    let lv = t.level(level)?;
    let mut irr: Vec<Poly> = Vec::new();
    for d in 1..=n {
        irr.extend(poly::irreducibles_of_degree(lv, d));
    }
    irr.sort_by(|a, b| canonical_cmp(a, b));
    let parts: Vec<Vec<Vec<usize>>> = (0..=n).map(partitions).collect();
    let mut out = Vec::new();
    fn rec(
        irr: &[Poly],
        parts: &[Vec<Vec<usize>>],
        start: usize,
        remaining: usize,
        cur: &mut Vec<(Poly, Vec<usize>)>,
        out: &mut Vec<Vec<(Poly, Vec<usize>)>>,
    ) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for (j, f) in irr.iter().enumerate().skip(start) {
            let d = f.len() - 1;
            if d > remaining {
                break;
            }
            for s in 1..=remaining / d {
                for lam in &parts[s] {
                    cur.push((f.clone(), lam.clone()));
                    rec(irr, parts, j + 1, remaining - d * s, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut raw = Vec::new();
    rec(&irr, &parts, 0, n, &mut Vec::new(), &mut raw);
    out.extend(raw.into_iter().map(|pairs| ClassData::new(level, lv.size_u64(), pairs)));
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::enumerate_group;
    use std::collections::HashMap;

    fn tower(q: u64, d: &[usize]) -> FieldTower {
        FieldTower::build(q, d).unwrap()
    }

    #[test]
    fn class_examples() {
        let t = tower(2, &[1]);
        let id = MatF::identity(1, 2);
        assert_eq!(class_of(&t, &id).unwrap().to_class_string(&t), "q2:n2:[x+1|1,1]");
        let c = MatF::companion(t.level(1).unwrap(), 1, &[1, 1, 1]);
        assert_eq!(class_of(&t, &c).unwrap().to_class_string(&t), "q2:n2:[x^2+x+1|1]");
        let t3 = tower(3, &[1]);
        let u = MatF::from_rows(1, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(class_of(&t3, &u).unwrap().to_class_string(&t3), "q3:n2:[x+2|2]");
        assert!(matches!(class_of(&t3, &MatF::zero(1, 2)), Err(Error::SingularMatrix)));
    }

    #[test]
    fn class_counts() {
        assert_eq!(enumerate_classes(&tower(2, &[1]), 2, 1).unwrap().len(), 3);
        assert_eq!(enumerate_classes(&tower(2, &[1]), 4, 1).unwrap().len(), 14);
        assert_eq!(enumerate_classes(&tower(3, &[1]), 2, 1).unwrap().len(), 8);
    }

    #[test]
    fn centralizers() {
        let t = tower(3, &[1]);
        let c = class_of(&t, &MatF::identity(1, 2)).unwrap();
        assert_eq!(centralizer_order(&c), 48);
        let t2 = tower(2, &[1]);
        let total: u128 = enumerate_classes(&t2, 3, 1).unwrap().iter().map(class_size).sum();
        assert_eq!(total, 168);
    }

    #[test]
    fn class_sizes_match_explicit_orbits() {
        for (q, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
            let t = tower(q, &[1]);
            let mut counts: HashMap<ClassData, u128> = HashMap::new();
            for g in enumerate_group(&t, n, 1).unwrap() {
                *counts.entry(class_of(&t, &g).unwrap()).or_default() += 1;
            }
            let classes = enumerate_classes(&t, n, 1).unwrap();
            assert_eq!(counts.len(), classes.len());
            for c in classes {
                assert_eq!(counts[&c], class_size(&c), "{}", c.to_class_string(&t));
                let rep = class_rep(&t, &c).unwrap();
                assert_eq!(class_of(&t, &rep).unwrap(), c);
            }
        }
    }

    #[test]
    fn string_roundtrip() {
        let t = tower(2, &[2]);
        for c in enumerate_classes(&t, 2, 2).unwrap() {
            let s = c.to_class_string(&t);
            assert_eq!(parse_class(&t, &s).unwrap(), c, "{s}");
        }
        let t3 = tower(3, &[1]);
        let c = parse_class(&t3, "q3:n2:[x+1|1,1]").unwrap();
        assert!(c.is_central());
        assert!(parse_class(&t3, "q3:n2:[x^2+1|1,1]").is_err());
        assert!(parse_class(&t3, "q3:n2:[x^2+2|1]").is_err());
    }

    #[test]
    fn partitions_and_conjugates() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(conjugate_partition(&[3, 1]), vec![2, 1, 1]);
        assert_eq!(conjugate_partition(&[2, 2]), vec![2, 2]);
    }
}
