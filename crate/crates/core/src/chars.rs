//! Representation specs and exact character values.
//!
//! A [`CharSpec`] names a representation of `GL_n(F_Q)` symbolically; the
//! [`Evaluator`] turns it into character values in `Z[ζ_M]`. Specs carry the
//! field size `Q` rather than a tower level, so they serialize independently
//! of any tower; the evaluator resolves `Q` to a level of its own tower.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::cyclo::{lcm, CycValue};
use crate::error::{Error, Result};
use crate::fields::FieldTower;
use crate::matrices::{
    class_of, class_rep, invariant_subspaces, restrict_and_quotient, ClassData, MatF,
};
use crate::oracle::CharacterTable;
use crate::poly::{self, FieldOps};

/// A representation of `GL_n(F_q)`, named by its parameters.
///
/// Exponents are relative to the tower generators: `theta` is a character of
/// `F_{q^n}^×`, `chi` one of `F_q^×`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CharSpec {
    /// The cuspidal representation attached to a regular `θ`.
    Cuspidal { n: usize, q: u64, theta: u64 },
    /// `χ ∘ det`.
    Det { n: usize, q: u64, chi: u64 },
    /// A character of `GL_1(F_q) = F_q^×`.
    Gl1 { q: u64, chi: u64 },
    /// Parabolic induction from the block-diagonal Levi `GL_a × GL_b`.
    Induced { left: Box<CharSpec>, right: Box<CharSpec> },
    /// A row of a brute-force character table.
    Oracle { table: String, row: usize, n: usize, q: u64 },
}

impl CharSpec {
    pub fn cuspidal(n: usize, q: u64, theta: u64) -> Self {
        CharSpec::Cuspidal { n, q, theta }
    }

    pub fn det(n: usize, q: u64, chi: u64) -> Self {
        CharSpec::Det { n, q, chi }
    }

    pub fn gl1(q: u64, chi: u64) -> Self {
        CharSpec::Gl1 { q, chi }
    }

    pub fn induced(left: CharSpec, right: CharSpec) -> Self {
        CharSpec::Induced { left: Box::new(left), right: Box::new(right) }
    }

    pub fn n(&self) -> usize {
        match self {
            CharSpec::Cuspidal { n, .. } | CharSpec::Det { n, .. } | CharSpec::Oracle { n, .. } => *n,
            CharSpec::Gl1 { .. } => 1,
            CharSpec::Induced { left, right } => left.n() + right.n(),
        }
    }

    pub fn q(&self) -> u64 {
        match self {
            CharSpec::Cuspidal { q, .. }
            | CharSpec::Det { q, .. }
            | CharSpec::Gl1 { q, .. }
            | CharSpec::Oracle { q, .. } => *q,
            CharSpec::Induced { left, .. } => left.q(),
        }
    }

    /// Canonical one-dimensional specs collapse to [`CharSpec::Gl1`].
    fn normalized(&self) -> CharSpec {
        match self {
            CharSpec::Cuspidal { n: 1, q, theta } => CharSpec::Gl1 { q: *q, chi: *theta },
            CharSpec::Det { n: 1, q, chi } => CharSpec::Gl1 { q: *q, chi: *chi },
            other => other.clone(),
        }
    }

    /// Parses `cuspidal:n:q:theta`, `det:n:q:chi`, `gl1:q:chi`,
    /// `induced:<spec>+<spec>`, `oracle:table:row:n:q`, or a JSON object.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Ok(serde_json::from_str(s)?);
        }
        let bad = || Error::Parse(format!("malformed spec {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        if kind == "induced" {
            let (l, r) = rest.split_once('+').ok_or_else(bad)?;
            return Ok(CharSpec::induced(Self::parse(l)?, Self::parse(r)?));
        }
        let fields: Vec<&str> = rest.split(':').collect();
        let num = |i: usize| -> Result<u64> { fields.get(i).and_then(|x| x.parse().ok()).ok_or_else(bad) };
        let spec = match (kind, fields.len()) {
            ("cuspidal", 3) => CharSpec::cuspidal(num(0)? as usize, num(1)?, num(2)?),
            ("det", 3) => CharSpec::det(num(0)? as usize, num(1)?, num(2)?),
            ("gl1", 2) => CharSpec::gl1(num(0)?, num(1)?),
            ("oracle", 4) => CharSpec::Oracle {
                table: fields[0].to_string(),
                row: num(1)? as usize,
                n: num(2)? as usize,
                q: num(3)?,
            },
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

impl fmt::Display for CharSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharSpec::Cuspidal { n, q, theta } => write!(f, "cuspidal:{n}:{q}:{theta}"),
            CharSpec::Det { n, q, chi } => write!(f, "det:{n}:{q}:{chi}"),
            CharSpec::Gl1 { q, chi } => write!(f, "gl1:{q}:{chi}"),
            CharSpec::Induced { left, right } => write!(f, "induced:{left}+{right}"),
            CharSpec::Oracle { table, row, n, q } => write!(f, "oracle:{table}:{row}:{n}:{q}"),
        }
    }
}

fn pow(q: u64, n: usize) -> u64 {
    q.checked_pow(n as u32).expect("field size overflows u64")
}

/// Orbit of `a` under multiplication by `q` modulo `m`.
fn mult_orbit(a: u64, q: u64, m: u64) -> Vec<u64> {
    let mut out = vec![a % m];
    let mut cur = (a as u128 * q as u128 % m as u128) as u64;
    while cur != out[0] {
        out.push(cur);
        cur = (cur as u128 * q as u128 % m as u128) as u64;
    }
    out
}

/// Whether `θ ∈ Hom(F_{q^n}^×, C^×)` has exactly `n` Frobenius conjugates.
pub fn is_regular_exponent(theta: u64, n: usize, q: u64) -> bool {
    mult_orbit(theta, q, pow(q, n) - 1).len() == n
}

/// Least element of the Frobenius orbit, used as the canonical parameter.
pub fn orbit_rep(theta: u64, n: usize, q: u64) -> u64 {
    *mult_orbit(theta, q, pow(q, n) - 1).iter().min().unwrap()
}

/// Orbit representatives of all regular characters of `F_{q^n}^×`.
pub fn regular_thetas(n: usize, q: u64) -> Vec<u64> {
    let m = pow(q, n) - 1;
    (0..m)
        .filter(|&a| is_regular_exponent(a, n, q) && orbit_rep(a, n, q) == a)
        .collect()
}

/// Contragredient.
pub fn dual_spec(s: &CharSpec) -> Result<CharSpec> {
    Ok(match s {
        CharSpec::Cuspidal { n, q, theta } => {
            let m = pow(*q, *n) - 1;
            CharSpec::cuspidal(*n, *q, (m - theta % m) % m)
        }
        CharSpec::Det { n, q, chi } => CharSpec::det(*n, *q, (q - 1 - chi % (q - 1)) % (q - 1)),
        CharSpec::Gl1 { q, chi } => CharSpec::gl1(*q, (q - 1 - chi % (q - 1)) % (q - 1)),
        CharSpec::Induced { left, right } => CharSpec::induced(dual_spec(left)?, dual_spec(right)?),
        CharSpec::Oracle { .. } => {
            return Err(Error::IncomparableSpecs("oracle rows have no symbolic dual".into()))
        }
    })
}

/// `π ⊗ (χ ∘ det)` for `χ` a character of `F_q^×`, `q` the spec's field.
pub fn twist_spec(s: &CharSpec, chi: u64) -> Result<CharSpec> {
    let q = s.q();
    let chi = chi % (q - 1);
    Ok(match s {
        CharSpec::Cuspidal { n, q, theta } => {
            let m = pow(*q, *n) - 1;
            let inflated = chi as u128 * (m / (q - 1)) as u128;
            CharSpec::cuspidal(*n, *q, ((*theta as u128 + inflated) % m as u128) as u64)
        }
        CharSpec::Det { n, q, chi: c } => CharSpec::det(*n, *q, (c + chi) % (q - 1)),
        CharSpec::Gl1 { q, chi: c } => CharSpec::gl1(*q, (c + chi) % (q - 1)),
        CharSpec::Induced { left, right } => CharSpec::induced(twist_spec(left, chi)?, twist_spec(right, chi)?),
        CharSpec::Oracle { .. } => {
            return Err(Error::IncomparableSpecs("oracle rows cannot be twisted symbolically".into()))
        }
    })
}

/// `π^σ` for `σ: x ↦ x^{q_sub}`, `q_sub` the size of a subfield of `F_q`.
pub fn frobenius_spec(s: &CharSpec, q_sub: u64) -> Result<CharSpec> {
    let q = s.q();
    if crate::fields::factor_prime_power(q_sub).is_none() || !is_power_of(q, q_sub) {
        return Err(Error::LevelMismatch(format!("{q_sub} is not a subfield size of {q}")));
    }
    let mulmod = |a: u64, m: u64| (a as u128 * q_sub as u128 % m as u128) as u64;
    Ok(match s {
        CharSpec::Cuspidal { n, q, theta } => CharSpec::cuspidal(*n, *q, mulmod(*theta, pow(*q, *n) - 1)),
        CharSpec::Det { n, q, chi } => CharSpec::det(*n, *q, mulmod(*chi, q - 1)),
        CharSpec::Gl1 { q, chi } => CharSpec::gl1(*q, mulmod(*chi, q - 1)),
        CharSpec::Induced { left, right } => {
            CharSpec::induced(frobenius_spec(left, q_sub)?, frobenius_spec(right, q_sub)?)
        }
        CharSpec::Oracle { .. } => {
            return Err(Error::IncomparableSpecs("oracle rows have no symbolic Frobenius".into()))
        }
    })
}

fn is_power_of(q: u64, base: u64) -> bool {
    let mut x = base;
    while x < q {
        x *= base;
    }
    x == q
}

/// Isomorphism of irreducible specs of the same shape.
pub fn iso_test(a: &CharSpec, b: &CharSpec) -> Result<bool> {
    let (a, b) = (a.normalized(), b.normalized());
    if a.n() != b.n() || a.q() != b.q() {
        return Err(Error::IncomparableSpecs(format!("{a} and {b} live on different groups")));
    }
    match (&a, &b) {
        (CharSpec::Cuspidal { n, q, theta: t1 }, CharSpec::Cuspidal { theta: t2, .. }) => {
            let m = pow(*q, *n) - 1;
            Ok(mult_orbit(*t1, *q, m).contains(&(t2 % m)))
        }
        (CharSpec::Det { q, chi: c1, .. }, CharSpec::Det { chi: c2, .. })
        | (CharSpec::Gl1 { q, chi: c1 }, CharSpec::Gl1 { chi: c2, .. }) => Ok(c1 % (q - 1) == c2 % (q - 1)),
        (CharSpec::Induced { left: l1, right: r1 }, CharSpec::Induced { left: l2, right: r2 }) => {
            let same = |x: &CharSpec, y: &CharSpec| -> Result<bool> {
                if x.n() != y.n() {
                    Ok(false)
                } else {
                    iso_test(x, y)
                }
            };
            Ok((same(l1, l2)? && same(r1, r2)?) || (same(l1, r2)? && same(r1, l2)?))
        }
        (CharSpec::Oracle { table: t1, row: r1, .. }, CharSpec::Oracle { table: t2, row: r2, .. }) if t1 == t2 => {
            Ok(r1 == r2)
        }
        _ => Err(Error::IncomparableSpecs(format!("{a} and {b} have different shapes"))),
    }
}

/// Base change from `F_q` to its quadratic extension `F_{q²}`.
pub fn basechange_spec(s: &CharSpec) -> Result<CharSpec> {
    let s = s.normalized();
    match s {
        CharSpec::Gl1 { q, chi } => {
            // χ ∘ Nm with Nm(x) = x^{q+1}
            let m = q * q - 1;
            Ok(CharSpec::gl1(q * q, (chi as u128 * (q + 1) as u128 % m as u128) as u64))
        }
        CharSpec::Det { n, q, chi } => Ok(CharSpec::det(n, q * q, chi * (q + 1) % (q * q - 1))),
        CharSpec::Cuspidal { n, q, theta } => {
            if !is_regular_exponent(theta, n, q) {
                return Err(Error::NotRegular { exponent: theta, level: n });
            }
            if n % 2 == 0 {
                let m = pow(q, n) - 1;
                let theta_q = (theta as u128 * q as u128 % m as u128) as u64;
                Ok(CharSpec::induced(
                    CharSpec::cuspidal(n / 2, q * q, theta),
                    CharSpec::cuspidal(n / 2, q * q, theta_q),
                ))
            } else {
                // θ ∘ Nm from F_{q^{2n}} to F_{q^n}
                let big = pow(q, 2 * n) - 1;
                let e = (theta as u128 * (pow(q, n) + 1) as u128 % big as u128) as u64;
                Ok(CharSpec::cuspidal(n, q * q, e))
            }
        }
        other => Err(Error::IncomparableSpecs(format!("no symbolic base change for {other}"))),
    }
}

/// Gaussian binomial `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> i128 {
    if k > n {
        return 0;
    }
    let q = q as i128;
    let mut num = 1i128;
    let mut den = 1i128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Counts of `(class of g|W, class of g|V/W)` over `g`-stable `W` of a
/// fixed dimension.
pub type InductionProfile = Vec<((ClassData, ClassData), u64)>;

fn induction_profile_of(t: &FieldTower, g: &MatF, k: usize) -> Result<InductionProfile> {
    let mut counts: HashMap<(ClassData, ClassData), u64> = HashMap::new();
    for w in invariant_subspaces(t, g, k)? {
        let (a, b) = restrict_and_quotient(t, g, &w)?;
        *counts.entry((class_of(t, &a)?, class_of(t, &b)?)).or_default() += 1;
    }
    let mut out: InductionProfile = counts.into_iter().collect();
    out.sort();
    Ok(out)
}

type Memo<K, V> = RwLock<HashMap<K, V>>;

/// Evaluates specs against one tower; caches are safe to share across
/// threads.
pub struct Evaluator {
    tower: Arc<FieldTower>,
    tables: Memo<String, Arc<CharacterTable>>,
    memo: Memo<(CharSpec, ClassData), CycValue>,
    roots: Memo<(usize, Vec<u32>), Arc<Vec<u64>>>,
    profiles: Memo<(ClassData, usize), Arc<InductionProfile>>,
}

impl Evaluator {
    pub fn new(tower: Arc<FieldTower>) -> Self {
        Evaluator {
            tower,
            tables: RwLock::default(),
            memo: RwLock::default(),
            roots: RwLock::default(),
            profiles: RwLock::default(),
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn tower_arc(&self) -> Arc<FieldTower> {
        self.tower.clone()
    }

    pub fn register_table(&self, table: Arc<CharacterTable>) {
        self.tables.write().unwrap().insert(table.id.clone(), table);
    }

    pub fn table(&self, id: &str) -> Result<Arc<CharacterTable>> {
        self.tables
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("no character table {id} registered")))
    }

    /// The tower level whose field has `q` elements.
    pub fn level_of(&self, q: u64) -> Result<usize> {
        let t = &self.tower;
        let mut size = t.q();
        let mut s = 1;
        while size < q {
            size *= t.q();
            s += 1;
        }
        if size != q || !t.has_level(s) {
            return Err(Error::LevelMismatch(format!("no level of size {q} in a tower over F_{}", t.q())));
        }
        Ok(s)
    }

    /// Conductor in which [`Evaluator::value`] returns values of `spec`.
    pub fn conductor_of(&self, spec: &CharSpec) -> Result<u64> {
        Ok(match spec {
            CharSpec::Oracle { table, .. } => self.table(table)?.conductor,
            CharSpec::Induced { left, right } => lcm(self.conductor_of(left)?, self.conductor_of(right)?),
            _ => self.tower.conductor(),
        })
    }

    fn check_compatible(&self, spec: &CharSpec, c: &ClassData) -> Result<()> {
        if c.size != spec.q() || c.n != spec.n() {
            return Err(Error::LevelMismatch(format!(
                "{spec} evaluated at a class of GL_{} over F_{}",
                c.n, c.size
            )));
        }
        Ok(())
    }

    /// `Θ_spec(c)`.
    pub fn value(&self, spec: &CharSpec, c: &ClassData) -> Result<CycValue> {
        self.check_compatible(spec, c)?;
        let key = (spec.clone(), c.clone());
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(spec, c)?;
        self.memo.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn compute(&self, spec: &CharSpec, c: &ClassData) -> Result<CycValue> {
        match spec {
            CharSpec::Cuspidal { n, q, theta } => self.cuspidal_value(*n, *q, *theta, c),
            CharSpec::Det { q, chi, .. } | CharSpec::Gl1 { q, chi } => self.det_value(*q, *chi, c),
            CharSpec::Induced { left, right } => {
                let m = self.conductor_of(spec)?;
                let profile = self.induction_profile(c, left.n())?;
                let mut acc = CycValue::zero(m);
                for ((a, b), count) in profile.iter() {
                    let va = self.value(left, a)?.lift(m)?;
                    let vb = self.value(right, b)?.lift(m)?;
                    acc = acc + (va * vb).scale(*count as i128);
                }
                acc.reduce()
            }
            CharSpec::Oracle { table, row, .. } => {
                let t = self.table(table)?;
                t.value(*row, c)
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("class missing from table {table}")))
            }
        }
    }

    /// `Θ_spec(g)`; induced specs are evaluated geometrically on `g` itself.
    pub fn value_at(&self, spec: &CharSpec, g: &MatF) -> Result<CycValue> {
        if let CharSpec::Induced { left, right } = spec {
            let m = self.conductor_of(spec)?;
            let mut acc = CycValue::zero(m);
            for ((a, b), count) in induction_profile_of(&self.tower, g, left.n())? {
                let va = self.value(left, &a)?.lift(m)?;
                let vb = self.value(right, &b)?.lift(m)?;
                acc = acc + (va * vb).scale(count as i128);
            }
            return acc.reduce();
        }
        self.value(spec, &class_of(&self.tower, g)?)
    }

    /// Cached induction profile of the class representative of `c`.
    pub fn induction_profile(&self, c: &ClassData, k: usize) -> Result<Arc<InductionProfile>> {
        let key = (c.clone(), k);
        if let Some(p) = self.profiles.read().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let rep = class_rep(&self.tower, c)?;
        let p = Arc::new(induction_profile_of(&self.tower, &rep, k)?);
        self.profiles.write().unwrap().insert(key, p.clone());
        Ok(p)
    }

    /// Discrete logs, at level `big`, of the roots of an irreducible `f`
    /// over `level`, where `f` splits at `big`.
    fn root_logs(&self, level: usize, f: &[u32], big: usize) -> Result<Arc<Vec<u64>>> {
        let key = (level, f.to_vec());
        if let Some(r) = self.roots.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let t = &self.tower;
        let lb = t.level(big)?;
        let embedded: Vec<u32> = f.iter().map(|&c| t.embed_code(c, level, big)).collect::<Result<_>>()?;
        let mut logs: Vec<u64> = poly::factor(lb, &embedded)
            .into_iter()
            .map(|(lin, _)| {
                debug_assert_eq!(lin.len(), 2);
                lb.log(lb.neg(lin[0]))
            })
            .collect();
        logs.sort_unstable();
        let logs = Arc::new(logs);
        self.roots.write().unwrap().insert(key, logs.clone());
        Ok(logs)
    }

    fn cuspidal_value(&self, n: usize, q: u64, theta: u64, c: &ClassData) -> Result<CycValue> {
        let t = &self.tower;
        let m = t.conductor();
        let zero = CycValue::zero(m);
        if !c.is_primary() {
            return Ok(zero);
        }
        let pair = &c.pairs[0];
        let d = pair.degree();
        if !n.is_multiple_of(d) || pair.weight() != n / d {
            return Ok(zero);
        }
        let s = self.level_of(q)?;
        let top_level = s * n;
        let order_n = t.unit_order(top_level);
        let logs = self.root_logs(s, &pair.poly, s * d)?;
        let ratio = order_n / t.unit_order(s * d);
        let scale = m / order_n;
        let mut sum = CycValue::zero(m);
        for &l in logs.iter() {
            let e = (theta as u128 * ((l * ratio) % order_n) as u128 % order_n as u128) as u64;
            sum = sum + CycValue::root_of_unity(m, (e * scale) as i128);
        }
        let qd = (q as i128).pow(d as u32);
        let ell = pair.partition.len();
        let mut factor: i128 = if n % 2 == 1 { 1 } else { -1 };
        for i in 1..ell {
            factor *= 1 - qd.pow(i as u32);
        }
        sum.scale(factor).reduce()
    }

    fn det_value(&self, q: u64, chi: u64, c: &ClassData) -> Result<CycValue> {
        let t = &self.tower;
        let s = self.level_of(q)?;
        let lv = t.level(s)?;
        let mut det = 1u32;
        for p in &c.pairs {
            let mut f0 = p.poly[0];
            if p.degree() % 2 == 1 {
                f0 = lv.neg(f0);
            }
            det = lv.mul(det, lv.pow(f0, p.weight() as u64));
        }
        let m = t.conductor();
        let e = (chi as u128 * lv.log(det) as u128 % (q - 1) as u128) as u64;
        Ok(CycValue::root_of_unity(m, (e * (m / (q - 1))) as i128))
    }

    /// Degree of the representation.
    pub fn dim_of(&self, spec: &CharSpec) -> Result<i128> {
        Ok(match spec {
            CharSpec::Cuspidal { n, q, .. } => (1..*n).map(|i| (*q as i128).pow(i as u32) - 1).product(),
            CharSpec::Det { .. } | CharSpec::Gl1 { .. } => 1,
            CharSpec::Induced { left, right } => {
                gaussian_binomial(spec.n(), left.n(), spec.q()) * self.dim_of(left)? * self.dim_of(right)?
            }
            CharSpec::Oracle { table, row, .. } => self.table(table)?.degree(*row)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{class_size, enumerate_classes, group_order, parse_class};

    fn eval(q: u64, degrees: &[usize]) -> Evaluator {
        Evaluator::new(Arc::new(FieldTower::build(q, degrees).unwrap()))
    }

    fn int(v: CycValue) -> i128 {
        v.as_integer().unwrap()
    }

    #[test]
    fn spec_strings_roundtrip() {
        let specs = [
            CharSpec::cuspidal(4, 2, 1),
            CharSpec::det(2, 3, 1),
            CharSpec::gl1(5, 2),
            CharSpec::induced(CharSpec::cuspidal(2, 2, 1), CharSpec::cuspidal(2, 2, 1)),
        ];
        for s in specs {
            assert_eq!(CharSpec::parse(&s.to_string()).unwrap(), s);
            let json = serde_json::to_string(&s).unwrap();
            assert_eq!(CharSpec::parse(&json).unwrap(), s);
        }
        let j = serde_json::to_string(&CharSpec::cuspidal(4, 2, 1)).unwrap();
        assert_eq!(j, r#"{"kind":"cuspidal","n":4,"q":2,"theta":1}"#);
    }

    #[test]
    fn gl2_cuspidal_table_shape() {
        let e = eval(3, &[2]);
        let spec = CharSpec::cuspidal(2, 3, 1);
        let t = e.tower();
        let id = parse_class(t, "q3:n2:[x+2|1,1]").unwrap();
        assert_eq!(int(e.value(&spec, &id).unwrap()), 2);
        let split = parse_class(t, "q3:n2:[x+1|1][x+2|1]").unwrap();
        assert_eq!(int(e.value(&spec, &split).unwrap()), 0);
        let unip = parse_class(t, "q3:n2:[x+2|2]").unwrap();
        assert_eq!(int(e.value(&spec, &unip).unwrap()), -1);
    }

    #[test]
    fn gl2_f2_cuspidal_is_sign() {
        let e = eval(2, &[2]);
        let spec = CharSpec::cuspidal(2, 2, 1);
        let ell = parse_class(e.tower(), "q2:n2:[x^2+x+1|1]").unwrap();
        assert_eq!(int(e.value(&spec, &ell).unwrap()), 1);
        let tr = parse_class(e.tower(), "q2:n2:[x+1|2]").unwrap();
        assert_eq!(int(e.value(&spec, &tr).unwrap()), -1);
    }

    #[test]
    fn dimensions() {
        let e = eval(2, &[4]);
        assert_eq!(e.dim_of(&CharSpec::cuspidal(4, 2, 1)).unwrap(), 21);
        let ind = CharSpec::induced(CharSpec::cuspidal(2, 2, 1), CharSpec::cuspidal(2, 2, 1));
        assert_eq!(e.dim_of(&ind).unwrap(), 35);
        let id = crate::matrices::ClassData::identity(1, 2, 4);
        assert_eq!(int(e.value(&ind, &id).unwrap()), 35);
        assert_eq!(int(e.value(&CharSpec::cuspidal(4, 2, 1), &id).unwrap()), 21);
        assert_eq!(e.dim_of(&CharSpec::det(3, 2, 0)).unwrap(), 1);
    }

    #[test]
    fn principal_series_values() {
        let e = eval(5, &[1]);
        let t = e.tower();
        let spec = CharSpec::induced(CharSpec::gl1(5, 1), CharSpec::gl1(5, 2));
        let m = t.conductor();
        let lv = t.level(1).unwrap();
        for x in 1..5u32 {
            for y in 1..5u32 {
                let g = MatF::from_rows(1, &[vec![x, 0], vec![0, y]]).unwrap();
                let lx = lv.log(x) as i128;
                let ly = lv.log(y) as i128;
                let z = |e: i128| CycValue::root_of_unity(m, e * (m as i128 / 4));
                let expected = if x == y {
                    z(lx + 2 * ly).scale(6)
                } else {
                    z(lx + 2 * ly) + z(2 * lx + ly)
                };
                assert_eq!(e.value_at(&spec, &g).unwrap(), expected);
            }
        }
    }

    #[test]
    fn cuspidal_self_orthogonality_small() {
        for (q, n) in [(2u64, 2usize), (3, 2), (4, 2), (5, 2), (2, 3)] {
            let e = eval(q, &[n]);
            let t = e.tower();
            let classes = enumerate_classes(t, n, 1).unwrap();
            let order = group_order(n, q) as i128;
            for theta in regular_thetas(n, q) {
                let spec = CharSpec::cuspidal(n, q, theta);
                let mut acc = CycValue::zero(t.conductor());
                for c in &classes {
                    let v = e.value(&spec, c).unwrap();
                    acc = acc + (v.clone() * v.conj()).scale(class_size(c) as i128);
                }
                assert_eq!(int(acc), order, "q={q} n={n} theta={theta}");
            }
        }
    }

    #[test]
    fn spec_operations() {
        assert_eq!(dual_spec(&CharSpec::cuspidal(2, 3, 1)).unwrap(), CharSpec::cuspidal(2, 3, 7));
        assert_eq!(twist_spec(&CharSpec::cuspidal(2, 3, 1), 0).unwrap(), CharSpec::cuspidal(2, 3, 1));
        assert!(iso_test(&CharSpec::cuspidal(2, 3, 1), &CharSpec::cuspidal(2, 3, 3)).unwrap());
        assert!(!iso_test(&CharSpec::cuspidal(4, 2, 1), &CharSpec::cuspidal(4, 2, 5)).unwrap());
        assert!(iso_test(&CharSpec::cuspidal(2, 3, 1), &CharSpec::det(2, 3, 0)).is_err());
        let bc = basechange_spec(&CharSpec::cuspidal(4, 2, 1)).unwrap();
        assert_eq!(
            bc,
            CharSpec::induced(CharSpec::cuspidal(2, 4, 1), CharSpec::cuspidal(2, 4, 2))
        );
        assert!(iso_test(&bc, &frobenius_spec(&bc, 2).unwrap()).unwrap());
        assert_eq!(basechange_spec(&CharSpec::gl1(3, 1)).unwrap(), CharSpec::gl1(9, 4));
        assert!(matches!(
            basechange_spec(&CharSpec::cuspidal(4, 2, 5)),
            Err(Error::NotRegular { .. })
        ));
    }

    #[test]
    fn twist_identity_on_gl2_f3() {
        let e = eval(3, &[2]);
        let t = e.tower();
        for theta in regular_thetas(2, 3) {
            let spec = CharSpec::cuspidal(2, 3, theta);
            let tw = twist_spec(&spec, 1).unwrap();
            let det = CharSpec::det(2, 3, 1);
            for c in enumerate_classes(t, 2, 1).unwrap() {
                let lhs = e.value(&tw, &c).unwrap();
                let rhs = e.value(&spec, &c).unwrap() * e.value(&det, &c).unwrap();
                assert_eq!(lhs, rhs.reduce().unwrap(), "{}", c.to_class_string(t));
                let dual = e.value(&dual_spec(&spec).unwrap(), &c).unwrap();
                assert_eq!(dual, e.value(&spec, &c).unwrap().conj());
            }
        }
    }
}
