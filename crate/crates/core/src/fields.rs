//! Finite-field extension towers over `F_q`.
//!
//! A tower is built for a base field size `q = p^e` and a top degree `D`; every
//! level `d | D` is materialized as `F_q[x]/(f_d)` with `f_d` the least monic
//! irreducible of degree `d` in canonical order. Elements are `u32` codes: the
//! base-`q` digits of the residue polynomial, each digit itself the base-`p`
//! code of an `F_q` element. Addition is therefore digitwise mod `p` at every
//! level.
//!
//! The top generator is the least primitive element; every sub-level generator
//! is the norm of the top one, so `gen[d1] = gen[d2]^((q^d2-1)/(q^d1-1))`
//! under the embeddings for all `d1 | d2`. Embeddings, norms, restrictions
//! and inflations are then exponent arithmetic.
//!
//! Multiplicative characters are never tabulated: a [`MultChar`] of level `d`
//! with exponent `a` means `θ(gen[d]^j) = ζ_{q^d-1}^{a j}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cyclo::CycValue;
use crate::error::{Error, Result};
use crate::poly::{self, FieldOps, Poly, PrimeField};

/// Largest field size (`q^D` for the top level) a tower will tabulate.
pub const ELEMENT_BOUND: u64 = 1 << 20;

/// Format version of [`TowerDescriptor`].
pub const DESCRIPTOR_VERSION: u32 = 1;

/// An element of the level-`d` field, `d` the degree over `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElem {
    pub level: usize,
    pub code: u32,
}

/// A multiplicative character of `F_{q^level}^×`, stored as an exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultChar {
    pub level: usize,
    pub exponent: u64,
}

impl MultChar {
    pub fn trivial(level: usize) -> Self {
        MultChar { level, exponent: 0 }
    }
}

pub fn factor_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
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

fn add_digits(mut a: u32, mut b: u32, p: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn neg_digits(mut a: u32, p: u32) -> u32 {
    if p == 2 {
        return a;
    }
    let mut out = 0;
    let mut place = 1;
    while a > 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}

/// `F_q = F_p[y]/(m(y))`, tabulated; used only while building a tower.
struct BaseField {
    p: u64,
    q: u64,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl BaseField {
    fn new(p: u64, e: usize) -> Self {
        let fp = PrimeField { p };
        let q = p.pow(e as u32);
        let modulus = if e == 1 { vec![0, 1] } else { poly::least_irreducible(&fp, e) };
        let to_poly = |c: u64| -> Poly {
            let mut v: Poly = (0..e).map(|i| ((c / p.pow(i as u32)) % p) as u32).collect();
            poly::trim(&mut v);
            v
        };
        let to_code = |f: &Poly| -> u32 {
            f.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64) as u32
        };
        let mut mul = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let prod = if e == 1 {
                    vec![((a * b) % p) as u32]
                } else {
                    poly::mulmod(&fp, &to_poly(a), &to_poly(b), &modulus)
                };
                mul[(a * q + b) as usize] = to_code(&prod);
            }
        }
        let mut inv = vec![0u32; q as usize];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u32;
                }
            }
        }
        BaseField { p, q, mul, inv }
    }
}

impl FieldOps for BaseField {
    fn size(&self) -> u64 {
        self.q
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        add_digits(a, b, self.p as u32)
    }
    fn neg(&self, a: u32) -> u32 {
        neg_digits(a, self.p as u32)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a as u64 * self.q + b as u64) as usize]
    }
    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }
}

/// One level `F_{q^d}` of a tower, with log/antilog tables.
#[derive(Clone, Debug)]
pub struct Level {
    degree: usize,
    p: u32,
    size: u64,
    order: u64,
    poly: Poly,
    /// `exp[j] = gen^j` for `0 <= j < 2·order`.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.degree
    }
    /// Number of elements `q^d`.
    pub fn size_u64(&self) -> u64 {
        self.size
    }
    /// Order of the multiplicative group, `q^d - 1`.
    pub fn order(&self) -> u64 {
        self.order
    }
    /// Defining polynomial over `F_q` (codes, lowest degree first).
    pub fn defining_poly(&self) -> &[u32] {
        &self.poly
    }
    pub fn generator(&self) -> u32 {
        self.exp[1 % self.exp.len().max(1)]
    }
    /// Discrete log of a nonzero code.
    #[inline]
    pub fn log(&self, a: u32) -> u64 {
        debug_assert!(a != 0);
        self.log[a as usize] as u64
    }
    /// `gen^j` for any `j`.
    #[inline]
    pub fn exp(&self, j: u64) -> u32 {
        self.exp[(j % self.order) as usize]
    }
    pub fn is_primitive_root(&self, a: u32) -> bool {
        a != 0 && crate::cyclo::gcd(self.log(a), self.order) == 1
    }
    /// Frobenius `a ↦ a^(q^k)`.
    pub fn frobenius(&self, a: u32, q_power: u64) -> u32 {
        if a == 0 {
            0
        } else {
            self.exp((self.log(a) as u128 * q_power as u128 % self.order as u128) as u64)
        }
    }
    /// All codes of the field in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }
    pub fn units(&self) -> impl Iterator<Item = u32> {
        1..self.size as u32
    }
}

impl FieldOps for Level {
    fn size(&self) -> u64 {
        self.size
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add_table {
            Some(t) => t[a as usize * self.size as usize + b as usize],
            None => add_digits(a, b, self.p),
        }
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }
    #[inline]
    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let l = self.log[a as usize] as u64;
        self.exp(self.order - l)
    }
    fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        self.exp((self.log(a) as u128 * e as u128 % self.order as u128) as u64)
    }
}

/// Versioned, serializable description of a tower's choices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDescriptor {
    pub version: u32,
    pub q: u64,
    pub degrees: Vec<usize>,
    /// `F_q` coefficient codes of each defining polynomial, lowest first.
    pub polynomials: BTreeMap<usize, Vec<u32>>,
    /// `F_q` coefficient codes of each level generator, lowest first.
    pub generators: BTreeMap<usize, Vec<u32>>,
}

impl TowerDescriptor {
    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("descriptor serializes");
        Sha256::digest(&json)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// A compatible chain of finite fields over `F_q`; immutable after building.
#[derive(Clone, Debug)]
pub struct FieldTower {
    q: u64,
    p: u64,
    e: usize,
    top: usize,
    levels: BTreeMap<usize, Level>,
}

impl FieldTower {
    /// Builds the tower for `q` containing every divisor of `lcm(degrees)`.
    pub fn build(q: u64, degrees: &[usize]) -> Result<Self> {
        let (p, e) = factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::Parse("tower degrees must be a nonempty list of positive integers".into()));
        }
        let top = degrees
            .iter()
            .fold(1u64, |acc, &d| crate::cyclo::lcm(acc, d as u64)) as usize;
        let too_big = (q as u128)
            .checked_pow(top as u32)
            .is_none_or(|s| s > ELEMENT_BOUND as u128);
        if too_big {
            return Err(Error::DegreeBoundExceeded {
                q,
                degree: top,
                bound: ELEMENT_BOUND,
            });
        }
        let base = BaseField::new(p, e);
        let top_level = build_top(&base, top);
        let mut levels = BTreeMap::new();
        for d in (1..top).filter(|d| top.is_multiple_of(*d)) {
            levels.insert(d, build_sublevel(&base, &top_level, d));
        }
        levels.insert(top, top_level);
        Ok(FieldTower { q, p, e, top, levels })
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    /// `q = p^e`.
    pub fn e(&self) -> usize {
        self.e
    }
    pub fn top(&self) -> usize {
        self.top
    }
    pub fn degrees(&self) -> Vec<usize> {
        self.levels.keys().copied().collect()
    }
    pub fn has_level(&self, d: usize) -> bool {
        self.levels.contains_key(&d)
    }

    pub fn level(&self, d: usize) -> Result<&Level> {
        self.levels.get(&d).ok_or(Error::LevelTooLarge(d))
    }

    /// `q^d - 1`.
    pub fn unit_order(&self, d: usize) -> u64 {
        self.q.pow(d as u32) - 1
    }

    /// Conductor in which every character value of this tower lives.
    pub fn conductor(&self) -> u64 {
        self.unit_order(self.top)
    }

    pub fn elem(&self, level: usize, code: u32) -> FieldElem {
        FieldElem { level, code }
    }

    pub fn gen(&self, d: usize) -> Result<FieldElem> {
        Ok(FieldElem {
            level: d,
            code: self.level(d)?.generator(),
        })
    }

    pub fn one(&self, d: usize) -> FieldElem {
        FieldElem { level: d, code: 1 }
    }

    /// Builds an element from its `F_q` coefficient codes.
    pub fn from_coeffs(&self, d: usize, coeffs: &[u32]) -> Result<FieldElem> {
        self.level(d)?;
        if coeffs.len() > d || coeffs.iter().any(|&c| c as u64 >= self.q) {
            return Err(Error::Parse(format!("{coeffs:?} is not a residue at level {d}")));
        }
        let code = coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.q + c as u64);
        Ok(FieldElem { level: d, code: code as u32 })
    }

    /// `F_q` coefficient codes of the residue polynomial, lowest first.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        let mut c = x.code as u64;
        (0..x.level)
            .map(|_| {
                let r = (c % self.q) as u32;
                c /= self.q;
                r
            })
            .collect()
    }

    /// Discrete logarithm with respect to `gen[level]`.
    pub fn dlog(&self, x: FieldElem) -> Result<u64> {
        if x.code == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.level(x.level)?.log(x.code))
    }

    fn ratio(&self, small: usize, big: usize) -> u64 {
        self.unit_order(big) / self.unit_order(small)
    }

    fn check_divides(&self, sub: usize, level: usize) -> Result<()> {
        if sub == 0 || !level.is_multiple_of(sub) {
            return Err(Error::NotSubfield { sub, level });
        }
        self.level(sub)?;
        self.level(level)?;
        Ok(())
    }

    /// Code-level embedding from level `from` into level `to`.
    pub fn embed_code(&self, code: u32, from: usize, to: usize) -> Result<u32> {
        self.check_divides(from, to)?;
        if code == 0 {
            return Ok(0);
        }
        let l = self.level(from)?.log(code);
        Ok(self.level(to)?.exp(l * self.ratio(from, to)))
    }

    /// The fixed field embedding `F_{q^d1} → F_{q^d2}`.
    pub fn embed(&self, x: FieldElem, to: usize) -> Result<FieldElem> {
        Ok(FieldElem {
            level: to,
            code: self.embed_code(x.code, x.level, to)?,
        })
    }

    /// If `x` (at level `big`) lies in the subfield of degree `small`, returns
    /// its code there.
    pub fn descend_code(&self, code: u32, big: usize, small: usize) -> Result<Option<u32>> {
        self.check_divides(small, big)?;
        if code == 0 {
            return Ok(Some(0));
        }
        let l = self.level(big)?.log(code);
        let k = self.ratio(small, big);
        (l % k == 0).then(|| self.level(small).map(|lv| lv.exp(l / k))).transpose()
    }

    /// `x ↦ x^((q^D-1)/(q^d-1))`, re-expressed at level `d`.
    pub fn norm_to_subfield(&self, x: FieldElem, d: usize) -> Result<FieldElem> {
        self.check_divides(d, x.level)?;
        let l = self.dlog(x)?;
        Ok(FieldElem {
            level: d,
            code: self.level(d)?.exp(l),
        })
    }

    /// Exponent `e` with `θ(x) = ζ_{q^d-1}^e`, `d = θ.level`. Elements of a
    /// subfield are embedded first.
    pub fn char_exponent(&self, theta: MultChar, x: FieldElem) -> Result<u64> {
        let x = if x.level == theta.level { x } else { self.embed(x, theta.level)? };
        let l = self.dlog(x)?;
        let ord = self.unit_order(theta.level);
        Ok(((theta.exponent as u128 * l as u128) % ord as u128) as u64)
    }

    /// `θ(x)` as an element of `Z[ζ_m]`, `m` a multiple of `q^level - 1`.
    pub fn char_eval(&self, theta: MultChar, x: FieldElem, conductor: u64) -> Result<CycValue> {
        let ord = self.unit_order(theta.level);
        if !conductor.is_multiple_of(ord) {
            return Err(Error::ConductorMismatch(ord, conductor));
        }
        let e = self.char_exponent(theta, x)?;
        Ok(CycValue::root_of_unity(conductor, (e * (conductor / ord)) as i128))
    }

    /// Restriction of `θ` to the subfield of degree `d`.
    pub fn restrict_char(&self, theta: MultChar, d: usize) -> Result<MultChar> {
        self.check_divides(d, theta.level)?;
        Ok(MultChar {
            level: d,
            exponent: theta.exponent % self.unit_order(d),
        })
    }

    /// `χ ∘ Nm` for the norm from level `d` down to `χ.level`.
    pub fn inflate_char_by_norm(&self, chi: MultChar, d: usize) -> Result<MultChar> {
        self.check_divides(chi.level, d)?;
        let ord = self.unit_order(d) as u128;
        Ok(MultChar {
            level: d,
            exponent: (chi.exponent as u128 * self.ratio(chi.level, d) as u128 % ord) as u64,
        })
    }

    pub fn dual_char(&self, theta: MultChar) -> MultChar {
        let ord = self.unit_order(theta.level);
        MultChar {
            level: theta.level,
            exponent: (ord - theta.exponent % ord) % ord,
        }
    }

    pub fn mul_chars(&self, a: MultChar, b: MultChar) -> Result<MultChar> {
        if a.level != b.level {
            return Err(Error::LevelMismatch(format!("characters at levels {} and {}", a.level, b.level)));
        }
        Ok(MultChar {
            level: a.level,
            exponent: (a.exponent + b.exponent) % self.unit_order(a.level),
        })
    }

    /// `θ ↦ θ^(q^k)`.
    pub fn frobenius_twist(&self, theta: MultChar, k: u64) -> MultChar {
        let ord = self.unit_order(theta.level) as u128;
        let mut f = 1u128;
        for _ in 0..k {
            f = f * self.q as u128 % ord;
        }
        MultChar {
            level: theta.level,
            exponent: (theta.exponent as u128 * f % ord) as u64,
        }
    }

    /// Orbit of `θ` under multiplication by `q^step`.
    pub fn orbit(&self, theta: MultChar, step: u64) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        let mut cur = theta;
        while out.insert(cur.exponent) {
            cur = self.frobenius_twist(cur, step);
        }
        out
    }

    /// Whether `θ` at level `N·s` has a Frobenius orbit of exactly `N`
    /// elements under `x ↦ x^(q^s)`.
    pub fn is_regular(&self, theta: MultChar, n_factors: usize, step: usize) -> bool {
        self.orbit(theta, step as u64).len() == n_factors
    }

    /// Least representatives of the regular orbits at level `n_factors·step`.
    pub fn regular_orbit_reps(&self, n_factors: usize, step: usize) -> Vec<MultChar> {
        let level = n_factors * step;
        let ord = self.unit_order(level);
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for a in 0..ord {
            if seen.contains(&a) {
                continue;
            }
            let theta = MultChar { level, exponent: a };
            let orb = self.orbit(theta, step as u64);
            if orb.len() == n_factors {
                reps.push(theta);
            }
            seen.extend(orb);
        }
        reps
    }

    pub fn descriptor(&self) -> TowerDescriptor {
        TowerDescriptor {
            version: DESCRIPTOR_VERSION,
            q: self.q,
            degrees: self.degrees(),
            polynomials: self
                .levels
                .iter()
                .map(|(&d, lv)| (d, lv.poly.clone()))
                .collect(),
            generators: self
                .levels
                .iter()
                .map(|(&d, lv)| (d, self.coeffs(FieldElem { level: d, code: lv.generator() })))
                .collect(),
        }
    }
}

fn poly_to_code(f: &[u32], q: u64) -> u32 {
    f.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64) as u32
}

fn code_to_poly(code: u64, q: u64, d: usize) -> Poly {
    let mut c = code;
    let mut v: Poly = (0..d)
        .map(|_| {
            let r = (c % q) as u32;
            c /= q;
            r
        })
        .collect();
    poly::trim(&mut v);
    v
}

fn finish_level(base: &BaseField, degree: usize, poly: Poly, exp_once: Vec<u32>) -> Level {
    let size = base.q.pow(degree as u32);
    let order = size - 1;
    let mut log = vec![u32::MAX; size as usize];
    for (j, &c) in exp_once.iter().enumerate() {
        log[c as usize] = j as u32;
    }
    let mut exp = exp_once.clone();
    exp.extend_from_slice(&exp_once);
    let p = base.p as u32;
    let neg = (0..size as u32).map(|a| neg_digits(a, p)).collect();
    let add_table = (size <= 256).then(|| {
        let s = size as u32;
        (0..s * s).map(|i| add_digits(i / s, i % s, p)).collect()
    });
    Level {
        degree,
        p,
        size,
        order,
        poly,
        exp,
        log,
        add_table,
        neg,
    }
}

fn build_top(base: &BaseField, d: usize) -> Level {
    let q = base.q;
    let poly_f = if d == 1 { vec![0, 1] } else { poly::least_irreducible(base, d) };
    let size = q.pow(d as u32);
    let order = size - 1;
    let primes = prime_divisors(order);
    let gen = (1..size)
        .map(|c| code_to_poly(c, q, d))
        .find(|g| {
            primes.iter().all(|&r| {
                let h = poly::powmod(base, g, (order / r) as u128, &poly_f);
                h != [1]
            })
        })
        .expect("a primitive element exists");
    let mut exp_once = Vec::with_capacity(order as usize);
    let mut cur: Poly = vec![1];
    for _ in 0..order {
        exp_once.push(poly_to_code(&cur, q));
        cur = poly::mulmod(base, &cur, &gen, &poly_f);
    }
    finish_level(base, d, poly_f, exp_once)
}

fn build_sublevel(base: &BaseField, top: &Level, d: usize) -> Level {
    let q = base.q;
    let size = q.pow(d as u32);
    let order = size - 1;
    let k = top.order / order;
    let poly_f = if d == 1 { vec![0, 1] } else { poly::least_irreducible(base, d) };
    // a root of poly_f inside the top field; constants embed as themselves
    let root = if d == 1 {
        0
    } else {
        (0..order)
            .map(|j| top.exp(j * k))
            .find(|&x| poly::eval(top, &poly_f, x) == 0)
            .expect("defining polynomial splits in the top field")
    };
    let embed = |code: u64| -> u32 {
        let coeffs = code_to_poly(code, q, d);
        if d == 1 {
            return code as u32;
        }
        poly::eval(top, &coeffs, root)
    };
    let mut exp_once = vec![0u32; order as usize];
    for code in 1..size {
        let l = top.log(embed(code));
        debug_assert_eq!(l % k, 0);
        exp_once[(l / k) as usize] = code as u32;
    }
    finish_level(base, d, poly_f, exp_once)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_binary_tower() {
        let t = FieldTower::build(2, &[1, 2, 4]).unwrap();
        assert_eq!(t.degrees(), vec![1, 2, 4]);
        let g = t.gen(4).unwrap();
        assert_eq!(t.dlog(g).unwrap(), 1);
        assert_eq!(t.level(4).unwrap().order(), 15);
        // order of the top generator is exactly 15
        let lv = t.level(4).unwrap();
        assert!((1..15).all(|j| lv.pow(g.code, j) != 1));
        assert_eq!(lv.pow(g.code, 15), 1);
    }

    #[test]
    fn ternary_tower_order() {
        let t = FieldTower::build(3, &[1, 2, 4]).unwrap();
        assert_eq!(t.level(4).unwrap().order(), 80);
    }

    #[test]
    fn rejects_non_prime_power_and_oversize() {
        assert!(matches!(FieldTower::build(6, &[1]), Err(Error::NotPrimePower(6))));
        assert!(matches!(
            FieldTower::build(2, &[21]),
            Err(Error::DegreeBoundExceeded { .. })
        ));
    }

    #[test]
    fn dlog_examples() {
        let t = FieldTower::build(3, &[1]).unwrap();
        assert_eq!(t.dlog(t.one(1)).unwrap(), 0);
        assert_eq!(t.dlog(t.elem(1, 2)).unwrap(), 1);
        assert!(matches!(t.dlog(t.elem(1, 0)), Err(Error::ZeroElement)));
    }

    #[test]
    fn norm_examples() {
        let t = FieldTower::build(2, &[4]).unwrap();
        let g = t.gen(4).unwrap();
        let n = t.norm_to_subfield(g, 2).unwrap();
        // gen^5 viewed in F_4 is gen[2], of order 3
        assert_eq!(n, t.gen(2).unwrap());
        assert_eq!(t.level(2).unwrap().order(), 3);
        assert_eq!(t.norm_to_subfield(t.one(4), 1).unwrap(), t.one(1));
        assert!(matches!(
            t.norm_to_subfield(g, 3),
            Err(Error::NotSubfield { .. })
        ));
    }

    #[test]
    fn quadratic_norm_is_x_to_q_plus_one() {
        for q in [2u64, 3, 4, 5] {
            let t = FieldTower::build(q, &[2]).unwrap();
            let lv = t.level(2).unwrap();
            for x in lv.units() {
                let n = t.norm_to_subfield(t.elem(2, x), 1).unwrap();
                let direct = lv.pow(x, q + 1);
                assert_eq!(t.embed(n, 2).unwrap().code, direct);
            }
        }
    }

    #[test]
    fn char_eval_examples() {
        let t = FieldTower::build(2, &[2]).unwrap();
        let theta = MultChar { level: 2, exponent: 1 };
        let g = t.gen(2).unwrap();
        assert_eq!(t.char_eval(theta, g, 3).unwrap(), CycValue::root_of_unity(3, 1));
        assert_eq!(t.char_eval(theta, t.one(2), 3).unwrap(), CycValue::from_int(3, 1));
        assert!(matches!(
            t.char_eval(theta, g, 4),
            Err(Error::ConductorMismatch(3, 4))
        ));
    }

    #[test]
    fn restriction_examples_by_direct_evaluation() {
        // q=2, D=4, a=3: θ at gen[4]^5 (which generates F_4^×)
        let t = FieldTower::build(2, &[4]).unwrap();
        let theta = MultChar { level: 4, exponent: 3 };
        let x = t.embed(t.gen(2).unwrap(), 4).unwrap();
        assert_eq!(t.char_exponent(theta, x).unwrap(), 0);
        assert_eq!(t.restrict_char(theta, 2).unwrap().exponent, 0);
        // q=3, D=2, a=4 restricted to F_3^×
        let t = FieldTower::build(3, &[2]).unwrap();
        let theta = MultChar { level: 2, exponent: 4 };
        for x in [1u32, 2] {
            let v = t.char_eval(theta, t.elem(1, x), 8).unwrap();
            let r = t.restrict_char(theta, 1).unwrap();
            assert_eq!(v, t.char_eval(r, t.elem(1, x), 8).unwrap());
        }
        assert_eq!(t.restrict_char(theta, 1).unwrap().exponent, 0);
    }

    #[test]
    fn inflation_example_pointwise() {
        let t = FieldTower::build(3, &[2]).unwrap();
        let chi = MultChar { level: 1, exponent: 1 };
        let inf = t.inflate_char_by_norm(chi, 2).unwrap();
        assert_eq!(inf.exponent, 4);
        for x in t.level(2).unwrap().units() {
            let x = t.elem(2, x);
            let lhs = t.char_eval(inf, x, 8).unwrap();
            let rhs = t.char_eval(chi, t.norm_to_subfield(x, 1).unwrap(), 8).unwrap();
            assert_eq!(lhs, rhs);
        }
        let t2 = FieldTower::build(2, &[4]).unwrap();
        let any = t2.inflate_char_by_norm(MultChar::trivial(1), 4).unwrap();
        assert_eq!(any.exponent, 0);
    }

    #[test]
    fn frobenius_orbits() {
        let t = FieldTower::build(2, &[4]).unwrap();
        let theta = MultChar { level: 4, exponent: 3 };
        assert_eq!(t.frobenius_twist(theta, 1).exponent, 6);
        let o1: Vec<u64> = t.orbit(MultChar { level: 4, exponent: 1 }, 1).into_iter().collect();
        assert_eq!(o1, vec![1, 2, 4, 8]);
        let o5: Vec<u64> = t.orbit(MultChar { level: 4, exponent: 5 }, 1).into_iter().collect();
        assert_eq!(o5, vec![5, 10]);
        assert!(t.is_regular(MultChar { level: 4, exponent: 1 }, 4, 1));
        assert!(!t.is_regular(MultChar { level: 4, exponent: 5 }, 4, 1));
        assert!(!t.is_regular(MultChar { level: 4, exponent: 0 }, 4, 1));
        let reps: Vec<u64> = t.regular_orbit_reps(4, 1).iter().map(|c| c.exponent).collect();
        assert_eq!(reps, vec![1, 3, 7]);
    }

    #[test]
    fn descriptor_is_deterministic() {
        let a = FieldTower::build(3, &[1, 2, 4]).unwrap().descriptor();
        let b = FieldTower::build(3, &[4, 2, 1]).unwrap().descriptor();
        assert_eq!(a, b);
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
