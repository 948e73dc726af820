//! Exact arithmetic in the cyclotomic integers `Z[ζ_m]`.
//!
//! A [`CycValue`] is stored as a sparse list of `(exponent, coefficient)`
//! pairs meaning `Σ c_e ζ_m^e`. The list is kept merged and sorted but is not
//! reduced modulo `Φ_m`; reduction happens on demand (equality, integer
//! extraction, serialization). Inner loops accumulate into an
//! [`Accumulator`] and reduce once at the end.
//!
//! Coefficients are `i128` with checked arithmetic: an overflow aborts with a
//! panic rather than producing a wrong value.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest conductor for which `Φ_m` is computed.
pub const CONDUCTOR_BOUND: u64 = 20_000;

fn checked_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

fn checked_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i128>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i128>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `m`-th cyclotomic polynomial, lowest coefficient first.
///
/// Computed by exact division of `x^m - 1` by `Φ_d` for the proper divisors
/// `d` of `m`.
pub fn cyclotomic_poly(m: u64) -> Result<Arc<Vec<i128>>> {
    if m == 0 || m > CONDUCTOR_BOUND {
        return Err(Error::BoundExceeded(format!(
            "conductor {m} outside 1..={CONDUCTOR_BOUND}"
        )));
    }
    if let Some(p) = cache().lock().unwrap().get(&m) {
        return Ok(p.clone());
    }
    let mut num = vec![0i128; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d)?;
            num = exact_div_monic(&num, &phi_d);
        }
    }
    let out = Arc::new(num);
    cache().lock().unwrap().insert(m, out.clone());
    Ok(out)
}

fn exact_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![0i128; dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = r[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &b) in den.iter().enumerate() {
                r[i + j] -= c * b;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// An element of `Z[ζ_m]`.
#[derive(Clone, Debug)]
pub struct CycValue {
    m: u64,
    terms: Vec<(u64, i128)>,
}

impl CycValue {
    pub fn zero(m: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        CycValue { m, terms: Vec::new() }
    }

    pub fn from_int(m: u64, c: i128) -> Self {
        Self::from_terms(m, vec![(0, c)])
    }

    pub fn root_of_unity(m: u64, e: i128) -> Self {
        Self::from_terms(m, vec![(e.rem_euclid(m as i128) as u64, 1)])
    }

    /// Builds a value from arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms(m: u64, terms: impl IntoIterator<Item = (u64, i128)>) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let mut v: Vec<(u64, i128)> = terms.into_iter().map(|(e, c)| (e % m, c)).collect();
        v.sort_unstable_by_key(|t| t.0);
        let mut merged: Vec<(u64, i128)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match merged.last_mut() {
                Some(last) if last.0 == e => last.1 = checked_add(last.1, c),
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|t| t.1 != 0);
        CycValue { m, terms: merged }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// Unreduced `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> &[(u64, i128)] {
        &self.terms
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::ConductorMismatch(self.m, other.m));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_terms(
            self.m,
            self.terms.iter().chain(other.terms.iter()).copied(),
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.m;
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(e1, c1) in &self.terms {
            for &(e2, c2) in &other.terms {
                out.push(((e1 + e2) % m, checked_mul(c1, c2)));
            }
        }
        Ok(Self::from_terms(m, out))
    }

    pub fn neg(&self) -> Self {
        CycValue {
            m: self.m,
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
        }
    }

    /// Complex conjugation, `ζ^e ↦ ζ^{-e}`.
    pub fn conj(&self) -> Self {
        let m = self.m;
        Self::from_terms(m, self.terms.iter().map(|&(e, c)| ((m - e) % m, c)))
    }

    pub fn scale(&self, k: i128) -> Self {
        Self::from_terms(self.m, self.terms.iter().map(|&(e, c)| (e, checked_mul(c, k))))
    }

    /// Multiplication by `ζ_m^e`.
    pub fn mul_root(&self, e: i128) -> Self {
        let m = self.m;
        let s = e.rem_euclid(m as i128) as u64;
        Self::from_terms(m, self.terms.iter().map(|&(x, c)| (x + s, c)))
    }

    /// Re-expresses the value in `Z[ζ_{m'}]` for a multiple `m'` of `m`.
    pub fn lift(&self, m2: u64) -> Result<Self> {
        if !m2.is_multiple_of(self.m) {
            return Err(Error::ConductorMismatch(self.m, m2));
        }
        let k = m2 / self.m;
        Ok(Self::from_terms(m2, self.terms.iter().map(|&(e, c)| (e * k, c))))
    }

    /// Galois action `ζ ↦ ζ^k` for `k` coprime to `m`.
    pub fn galois(&self, k: u64) -> Self {
        let m = self.m;
        Self::from_terms(m, self.terms.iter().map(|&(e, c)| ((e * k) % m, c)))
    }

    /// Canonical representative: the remainder modulo `Φ_m` in the power basis.
    pub fn reduce(&self) -> Result<Self> {
        let phi = cyclotomic_poly(self.m)?;
        let deg = phi.len() - 1;
        let Some(&(top, _)) = self.terms.last() else {
            return Ok(self.clone());
        };
        if (top as usize) < deg {
            return Ok(self.clone());
        }
        let mut dense = vec![0i128; top as usize + 1];
        for &(e, c) in &self.terms {
            dense[e as usize] = c;
        }
        reduce_dense(&mut dense, &phi);
        Ok(Self::from_terms(
            self.m,
            dense
                .iter()
                .take(deg)
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| (e as u64, c)),
        ))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.reduce()?.terms.is_empty())
    }

    /// The rational integer equal to this value, or `NotRational`.
    pub fn as_integer(&self) -> Result<i128> {
        let r = self.reduce()?;
        match r.terms.as_slice() {
            [] => Ok(0),
            [(0, c)] => Ok(*c),
            _ => Err(Error::NotRational(r.to_string())),
        }
    }

    /// Exact division of every coefficient after reduction.
    pub fn divide_exact(&self, k: i128) -> Result<Self> {
        assert!(k != 0, "division by zero");
        let r = self.reduce()?;
        let mut out = Vec::with_capacity(r.terms.len());
        for &(e, c) in &r.terms {
            if c % k != 0 {
                return Err(Error::NotDivisible {
                    value: r.to_string(),
                    divisor: k,
                });
            }
            out.push((e, c / k));
        }
        Ok(Self::from_terms(self.m, out))
    }

    /// Floating-point evaluation at `exp(2πi/m)`; diagnostic only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.m as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), &(e, c)| {
            let t = std::f64::consts::TAU * e as f64 / m;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }

    /// Equality after lifting both sides to a common conductor.
    pub fn eq_lifted(&self, other: &Self) -> Result<bool> {
        let m = lcm(self.m, other.m);
        let a = self.lift(m)?;
        let b = other.lift(m)?;
        a.try_add(&b.neg())?.is_zero()
    }
}

/// Exact integer division for plain integers, with the same error contract.
pub fn divide_exact_int(v: i128, k: i128) -> Result<i128> {
    assert!(k != 0, "division by zero");
    if v % k != 0 {
        return Err(Error::NotDivisible {
            value: v.to_string(),
            divisor: k,
        });
    }
    Ok(v / k)
}

fn reduce_dense(dense: &mut [i128], phi: &[i128]) {
    let deg = phi.len() - 1;
    for i in (deg..dense.len()).rev() {
        let c = dense[i];
        if c == 0 {
            continue;
        }
        let base = i - deg;
        for (j, &b) in phi.iter().enumerate().take(deg) {
            if b != 0 {
                dense[base + j] = checked_add(dense[base + j], -checked_mul(c, b));
            }
        }
        dense[i] = 0;
    }
}

impl PartialEq for CycValue {
    fn eq(&self, other: &Self) -> bool {
        if self.m != other.m {
            return false;
        }
        match (self.reduce(), other.reduce()) {
            (Ok(a), Ok(b)) => a.terms == b.terms,
            _ => self.terms == other.terms,
        }
    }
}

impl Eq for CycValue {}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl std::ops::$tr for &CycValue {
            type Output = CycValue;
            fn $method(self, rhs: &CycValue) -> CycValue {
                self.$call(rhs).expect("mixed conductors")
            }
        }
        impl std::ops::$tr for CycValue {
            type Output = CycValue;
            fn $method(self, rhs: CycValue) -> CycValue {
                (&self).$call(&rhs).expect("mixed conductors")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Sub for &CycValue {
    type Output = CycValue;
    fn sub(self, rhs: &CycValue) -> CycValue {
        self.try_add(&rhs.neg()).expect("mixed conductors")
    }
}

impl std::ops::Neg for CycValue {
    type Output = CycValue;
    fn neg(self) -> CycValue {
        CycValue::neg(&self)
    }
}

impl fmt::Display for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·ζ{}^{e}", self.m)?;
            }
        }
        Ok(())
    }
}

/// Serialized form: `{"m": m, "coeffs": [[e, c], ...]}` of the reduced value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycValueDoc {
    pub m: u64,
    pub coeffs: Vec<(u64, i128)>,
}

impl Serialize for CycValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.reduce().map_err(serde::ser::Error::custom)?;
        CycValueDoc {
            m: r.m,
            coeffs: r.terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = CycValueDoc::deserialize(d)?;
        if doc.m == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        Ok(CycValue::from_terms(doc.m, doc.coeffs))
    }
}

/// Dense accumulator for long sums in a single conductor.
///
/// Partial accumulators combine by [`Accumulator::merge`]; the final value is
/// reduced once.
#[derive(Clone, Debug)]
pub struct Accumulator {
    m: u64,
    dense: Vec<i128>,
}

impl Accumulator {
    pub fn new(m: u64) -> Self {
        Accumulator {
            m,
            dense: vec![0; m as usize],
        }
    }

    /// Adds `weight · ζ^shift · v`.
    pub fn add_scaled(&mut self, v: &CycValue, shift: i128, weight: i128) -> Result<()> {
        if v.m != self.m {
            return Err(Error::ConductorMismatch(v.m, self.m));
        }
        let m = self.m as i128;
        let s = shift.rem_euclid(m) as u64;
        for &(e, c) in &v.terms {
            let idx = ((e + s) % self.m) as usize;
            self.dense[idx] = checked_add(self.dense[idx], checked_mul(c, weight));
        }
        Ok(())
    }

    pub fn merge(mut self, other: Accumulator) -> Result<Self> {
        if other.m != self.m {
            return Err(Error::ConductorMismatch(other.m, self.m));
        }
        for (a, b) in self.dense.iter_mut().zip(other.dense) {
            *a = checked_add(*a, b);
        }
        Ok(self)
    }

    pub fn finish(self) -> Result<CycValue> {
        let v = CycValue::from_terms(
            self.m,
            self.dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(e, c)| (e as u64, c)),
        );
        v.reduce()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(6).unwrap(), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(8).unwrap(), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_poly(1).unwrap(), vec![-1, 1]);
        for m in 1..=100 {
            assert_eq!(cyclotomic_poly(m).unwrap().len() as u64 - 1, euler_phi(m), "m={m}");
        }
        assert!(cyclotomic_poly(CONDUCTOR_BOUND + 1).is_err());
    }

    #[test]
    fn sum_of_primitive_cube_roots_is_minus_one() {
        let v = CycValue::root_of_unity(3, 1) + CycValue::root_of_unity(3, 2);
        assert_eq!(v.as_integer().unwrap(), -1);
    }

    #[test]
    fn root_of_unity_wraps() {
        assert_eq!(CycValue::root_of_unity(7, 7), CycValue::from_int(7, 1));
        let z = CycValue::root_of_unity(5, 1);
        assert_eq!((&z.conj() * &z).as_integer().unwrap(), 1);
    }

    #[test]
    fn as_integer_rejects_irrational() {
        assert_eq!(CycValue::from_int(9, 3).as_integer().unwrap(), 3);
        assert!(matches!(
            CycValue::root_of_unity(5, 1).as_integer(),
            Err(Error::NotRational(_))
        ));
    }

    #[test]
    fn exact_division() {
        assert_eq!(divide_exact_int(6, 3).unwrap(), 2);
        assert!(matches!(divide_exact_int(5, 2), Err(Error::NotDivisible { .. })));
        let v = CycValue::from_terms(3, [(1, 3), (0, 3)]);
        assert_eq!(
            v.divide_exact(3).unwrap(),
            CycValue::from_terms(3, [(1, 1), (0, 1)])
        );
        assert!(CycValue::from_terms(3, [(1, 2)]).divide_exact(3).is_err());
    }

    #[test]
    fn mixed_conductors_are_rejected() {
        let a = CycValue::from_int(3, 1);
        let b = CycValue::from_int(4, 1);
        assert!(matches!(a.try_add(&b), Err(Error::ConductorMismatch(3, 4))));
        assert!(a.eq_lifted(&b).unwrap());
    }

    #[test]
    fn lift_preserves_value() {
        let v = CycValue::root_of_unity(3, 1);
        let w = v.lift(12).unwrap();
        assert_eq!(w, CycValue::root_of_unity(12, 4));
    }

    #[test]
    fn serde_roundtrip_uses_reduced_form() {
        let v = CycValue::root_of_unity(3, 1) + CycValue::root_of_unity(3, 2);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"m":3,"coeffs":[[0,-1]]}"#);
        let back: CycValue = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
