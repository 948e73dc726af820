//! Dense univariate polynomials over a small finite field.
//!
//! Field elements are `u32` codes; the field itself is supplied through
//! [`FieldOps`]. Polynomials are coefficient vectors, lowest degree first,
//! with no trailing zeros (the zero polynomial is the empty vector).

use std::cmp::Ordering;

/// Arithmetic of a finite field whose elements are encoded as `u32`.
///
/// Code `0` is the additive identity and code `1` the multiplicative one.
pub trait FieldOps {
    /// Number of elements.
    fn size(&self) -> u64;
    /// Characteristic.
    fn characteristic(&self) -> u64;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: u32) -> u32;

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field `F_p` with codes `0..p`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl FieldOps for PrimeField {
    fn size(&self) -> u64 {
        self.p
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p) as u32
    }
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            (self.p - a as u64) as u32
        }
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }
}

pub type Poly = Vec<u32>;

pub fn trim(f: &mut Poly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn add<F: FieldOps + ?Sized>(k: &F, f: &[u32], g: &[u32]) -> Poly {
    let n = f.len().max(g.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            k.add(a, b)
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub<F: FieldOps + ?Sized>(k: &F, f: &[u32], g: &[u32]) -> Poly {
    let n = f.len().max(g.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            k.sub(a, b)
        })
        .collect();
    trim(&mut out);
    out
}

pub fn scale<F: FieldOps + ?Sized>(k: &F, f: &[u32], c: u32) -> Poly {
    let mut out: Poly = f.iter().map(|&a| k.mul(a, c)).collect();
    trim(&mut out);
    out
}

pub fn mul<F: FieldOps + ?Sized>(k: &F, f: &[u32], g: &[u32]) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            if b != 0 {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `g` must be nonzero.
pub fn divrem<F: FieldOps + ?Sized>(k: &F, f: &[u32], g: &[u32]) -> (Poly, Poly) {
    let dg = degree(g).expect("division by the zero polynomial");
    let mut r: Poly = f.to_vec();
    trim(&mut r);
    let Some(df) = degree(&r) else {
        return (Vec::new(), Vec::new());
    };
    if df < dg {
        return (Vec::new(), r);
    }
    let lead_inv = k.inv(g[dg]);
    let mut q = vec![0u32; df - dg + 1];
    for i in (0..=df - dg).rev() {
        let c = r[i + dg];
        if c == 0 {
            continue;
        }
        let t = k.mul(c, lead_inv);
        q[i] = t;
        for (j, &b) in g.iter().enumerate().take(dg + 1) {
            if b != 0 {
                r[i + j] = k.sub(r[i + j], k.mul(t, b));
            }
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub fn rem<F: FieldOps + ?Sized>(k: &F, f: &[u32], g: &[u32]) -> Poly {
    divrem(k, f, g).1
}

pub fn monic<F: FieldOps + ?Sized>(k: &F, f: &[u32]) -> Poly {
    match degree(f) {
        None => Vec::new(),
        Some(d) => scale(k, &f[..=d], k.inv(f[d])),
    }
}

/// Monic greatest common divisor.
pub fn gcd<F: FieldOps + ?Sized>(k: &F, f: &[u32], g: &[u32]) -> Poly {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

pub fn mulmod<F: FieldOps + ?Sized>(k: &F, a: &[u32], b: &[u32], m: &[u32]) -> Poly {
    rem(k, &mul(k, a, b), m)
}

pub fn powmod<F: FieldOps + ?Sized>(k: &F, a: &[u32], mut e: u128, m: &[u32]) -> Poly {
    let mut base = rem(k, a, m);
    let mut acc = rem(k, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(k, &acc, &base, m);
        }
        base = mulmod(k, &base, &base, m);
        e >>= 1;
    }
    acc
}

pub fn derivative<F: FieldOps + ?Sized>(k: &F, f: &[u32]) -> Poly {
    let p = k.characteristic();
    let mut out: Poly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| {
            let m = (i as u64 % p) as u32;
            // i·c as repeated addition of c, m < p
            let mut acc = 0;
            for _ in 0..m {
                acc = k.add(acc, c);
            }
            acc
        })
        .collect();
    trim(&mut out);
    out
}

pub fn eval<F: FieldOps + ?Sized>(k: &F, f: &[u32], x: u32) -> u32 {
    f.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
}

/// Order used everywhere a canonical choice among polynomials is needed:
/// degree first, then coefficient codes compared from the constant term up.
pub fn canonical_cmp(f: &[u32], g: &[u32]) -> Ordering {
    f.len().cmp(&g.len()).then_with(|| f.cmp(g))
}

/// The `index`-th monic polynomial of degree `d` in canonical order: the
/// constant term is the most significant base-`size` digit of `index`.
pub fn monic_from_index(size: u64, d: usize, mut index: u64) -> Poly {
    let mut f = vec![0u32; d + 1];
    for i in (0..d).rev() {
        f[i] = (index % size) as u32;
        index /= size;
    }
    f[d] = 1;
    f
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(Q^i) mod f` for `Q` the field size.
fn frobenius_power_of_x<F: FieldOps + ?Sized>(k: &F, f: &[u32], i: usize) -> Poly {
    let mut h = rem(k, &[0, 1], f);
    for _ in 0..i {
        h = powmod(k, &h, k.size() as u128, f);
    }
    h
}

/// Irreducibility test: `f` of degree `d` is irreducible iff `x^(Q^d) = x`
/// modulo `f` and `gcd(x^(Q^(d/r)) - x, f) = 1` for every prime `r | d`.
pub fn is_irreducible<F: FieldOps + ?Sized>(k: &F, f: &[u32]) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = rem(k, &[0, 1], f);
    if frobenius_power_of_x(k, f, d) != x {
        return false;
    }
    prime_divisors(d as u64).into_iter().all(|r| {
        let h = frobenius_power_of_x(k, f, d / r as usize);
        let g = gcd(k, &sub(k, &h, &[0, 1]), f);
        g.len() == 1
    })
}

/// Least monic irreducible polynomial of degree `d` in the canonical order.
pub fn least_irreducible<F: FieldOps + ?Sized>(k: &F, d: usize) -> Poly {
    let total = k.size().pow(d as u32);
    (0..total)
        .map(|i| monic_from_index(k.size(), d, i))
        .find(|f| is_irreducible(k, f))
        .expect("an irreducible polynomial exists in every degree")
}

/// All monic irreducible polynomials of degree `d`, excluding `x` itself,
/// in canonical order.
pub fn irreducibles_of_degree<F: FieldOps + ?Sized>(k: &F, d: usize) -> Vec<Poly> {
    let total = k.size().pow(d as u32);
    (0..total)
        .map(|i| monic_from_index(k.size(), d, i))
        .filter(|f| f[0] != 0 && is_irreducible(k, f))
        .collect()
}

/// Square-free factorization: pairs `(g, e)` with `f = lead · Π g^e`, each `g`
/// square-free and monic.
pub fn squarefree_factorization<F: FieldOps + ?Sized>(k: &F, f: &[u32]) -> Vec<(Poly, usize)> {
    let f = monic(k, f);
    let mut out = Vec::new();
    sff_rec(k, &f, 1, &mut out);
    out
}

fn sff_rec<F: FieldOps + ?Sized>(k: &F, f: &[u32], mult: usize, out: &mut Vec<(Poly, usize)>) {
    if degree(f).unwrap_or(0) == 0 {
        return;
    }
    let p = k.characteristic() as usize;
    let fp = derivative(k, f);
    let mut c = gcd(k, f, &fp);
    let mut w = divrem(k, f, &c).0;
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(k, &w, &c);
        let fac = divrem(k, &w, &y).0;
        if degree(&fac).unwrap_or(0) > 0 {
            out.push((monic(k, &fac), i * mult));
        }
        w = y;
        c = divrem(k, &c, &w).0;
        i += 1;
    }
    if degree(&c).unwrap_or(0) > 0 {
        // c is a p-th power: take the p-th root coefficientwise
        let root_exp = k.size() / p as u64;
        let root: Poly = c
            .iter()
            .step_by(p)
            .map(|&a| k.pow(a, root_exp))
            .collect();
        sff_rec(k, &root, mult * p, out);
    }
}

/// Distinct-degree factorization of a square-free monic polynomial.
pub fn distinct_degree_factorization<F: FieldOps + ?Sized>(k: &F, f: &[u32]) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = monic(k, f);
    let mut h = rem(k, &[0, 1], &rest);
    let mut i = 0;
    while let Some(dr) = degree(&rest) {
        if dr < 2 * (i + 1) {
            if dr > 0 {
                out.push((rest.clone(), dr));
            }
            break;
        }
        i += 1;
        h = powmod(k, &h, k.size() as u128, &rest);
        let g = gcd(k, &sub(k, &h, &[0, 1]), &rest);
        if degree(&g).unwrap_or(0) > 0 {
            rest = divrem(k, &rest, &g).0;
            h = rem(k, &h, &rest);
            out.push((g, i));
        }
    }
    out
}

/// Equal-degree factorization (Cantor–Zassenhaus) of a product of distinct
/// monic irreducibles of degree `d`. Splitting candidates are enumerated
/// deterministically.
pub fn equal_degree_factorization<F: FieldOps + ?Sized>(k: &F, f: &[u32], d: usize) -> Vec<Poly> {
    let n = degree(f).unwrap_or(0);
    if n == d {
        return vec![monic(k, f)];
    }
    let size = k.size();
    let qd = (size as u128).pow(d as u32);
    let mut counter: u64 = size; // skip constant candidates
    loop {
        let mut a = monic_from_index(size, n, counter);
        a.pop();
        trim(&mut a);
        counter += 1;
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = if size % 2 == 1 {
            let t = powmod(k, &a, (qd - 1) / 2, f);
            sub(k, &t, &[1])
        } else {
            // absolute trace to F_2: sum of a^(2^i), i < log2(Q^d)
            let bits = (qd as f64).log2().round() as usize;
            let mut t = rem(k, &a, f);
            let mut acc = t.clone();
            for _ in 1..bits {
                t = mulmod(k, &t, &t, f);
                acc = add(k, &acc, &t);
            }
            acc
        };
        let g = gcd(k, &b, f);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(k, f, &g).0;
            let mut out = equal_degree_factorization(k, &g, d);
            out.extend(equal_degree_factorization(k, &monic(k, &h), d));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted canonically.
pub fn factor<F: FieldOps + ?Sized>(k: &F, f: &[u32]) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (sf, e) in squarefree_factorization(k, f) {
        for (g, d) in distinct_degree_factorization(k, &sf) {
            for h in equal_degree_factorization(k, &g, d) {
                out.push((h, e));
            }
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: PrimeField = PrimeField { p: 2 };
    const F3: PrimeField = PrimeField { p: 3 };

    #[test]
    fn irreducibility_over_f2() {
        assert!(is_irreducible(&F2, &[1, 1, 1]));
        assert!(!is_irreducible(&F2, &[1, 0, 1]));
        assert!(is_irreducible(&F2, &[1, 1, 0, 0, 1]));
        assert!(is_irreducible(&F2, &[1, 1, 1, 1, 1]));
        assert!(!is_irreducible(&F2, &[1, 0, 0, 0, 1]));
        assert_eq!(irreducibles_of_degree(&F2, 4).len(), 3);
        assert_eq!(irreducibles_of_degree(&F3, 2).len(), 3);
    }

    #[test]
    fn factor_recovers_product() {
        // (x+1)^3 (x^2+x+1)^2 over F_2
        let a = mul(&F2, &[1, 1], &mul(&F2, &[1, 1], &[1, 1]));
        let b = mul(&F2, &[1, 1, 1], &[1, 1, 1]);
        let f = mul(&F2, &a, &b);
        assert_eq!(factor(&F2, &f), vec![(vec![1, 1], 3), (vec![1, 1, 1], 2)]);
    }

    #[test]
    fn factor_splits_linear_factors_over_f3() {
        // x^2 - 1 = (x+1)(x+2)
        assert_eq!(factor(&F3, &[2, 0, 1]), vec![(vec![1, 1], 1), (vec![2, 1], 1)]);
        // x^3 - x = x(x+1)(x+2), x^3 is inseparable cube
        assert_eq!(factor(&F3, &[0, 0, 0, 1]), vec![(vec![0, 1], 3)]);
    }

    #[test]
    fn equal_degree_split_quadratics() {
        // product of the three monic irreducible quadratics over F_3
        let irr = irreducibles_of_degree(&F3, 2);
        let f = irr.iter().fold(vec![1], |acc, g| mul(&F3, &acc, g));
        let got = factor(&F3, &f);
        assert_eq!(got.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), irr);
    }
}
