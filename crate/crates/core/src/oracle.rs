//! Brute-force ground truth: explicit groups, conjugacy classes by orbit
//! search, and character tables by the Dixon–Schneider method.
//!
//! Nothing here uses the closed-form character formulas; the tables are the
//! reference those formulas are checked against, and passing that check is
//! what issues a [`GreenCertificate`].

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chars::{regular_thetas, CharSpec, Evaluator};
use crate::cyclo::{lcm, CycValue};
use crate::error::{Error, Result};
use crate::fields::FieldTower;
use crate::matrices::{class_of, enumerate_group, group_order, rref, ClassData, MatF};
use crate::poly::{FieldOps, PrimeField};

/// Largest group the oracle will tabulate.
pub const ORACLE_GROUP_BOUND: u128 = 25_000;
/// Largest class count the oracle will tabulate.
pub const ORACLE_CLASS_BOUND: usize = 40;
/// Format version of cached tables and validation records.
pub const TABLE_VERSION: u32 = 1;
/// The groups `GL_n(F_q)`, as `(n, q)`, whose tables certify the cuspidal
/// character formula.
pub const GREEN_GROUPS: [(usize, u64); 6] = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (4, 2)];

/// `GL_n` over one tower level with every element listed.
pub struct DenseGroup {
    pub n: usize,
    pub level: usize,
    pub size: u64,
    elems: Vec<MatF>,
    index: HashMap<u128, u32>,
    inv: Vec<u32>,
}

impl DenseGroup {
    pub fn gl(t: &FieldTower, n: usize, level: usize) -> Result<Self> {
        let size = t.level(level)?.size_u64();
        let order = group_order(n, size);
        if order > ORACLE_GROUP_BOUND {
            return Err(Error::BoundExceeded(format!(
                "GL_{n}(F_{size}) has {order} elements; the oracle stops at {ORACLE_GROUP_BOUND}"
            )));
        }
        let lv = t.level(level)?;
        let elems = enumerate_group(t, n, level)?;
        let index: HashMap<u128, u32> = elems.iter().enumerate().map(|(i, g)| (key(size, g), i as u32)).collect();
        let inv = elems
            .iter()
            .map(|g| index[&key(size, &g.inverse(lv).expect("group elements are invertible"))])
            .collect();
        Ok(DenseGroup { n, level, size, elems, index, inv })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, i: u32) -> &MatF {
        &self.elems[i as usize]
    }

    pub fn elements(&self) -> &[MatF] {
        &self.elems
    }

    pub fn index_of(&self, g: &MatF) -> Option<u32> {
        self.index.get(&key(self.size, g)).copied()
    }

    pub fn inverse(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    pub fn mul<F: FieldOps + ?Sized>(&self, k: &F, a: u32, b: u32) -> u32 {
        let p = self.element(a).mul(k, self.element(b));
        self.index_of(&p).expect("group is closed under products")
    }

    /// Elementary transvections `I + E_ij` and `diag(gen, 1, …, 1)`.
    pub fn generators(&self, t: &FieldTower) -> Result<Vec<u32>> {
        let lv = t.level(self.level)?;
        let mut gens = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let mut g = MatF::identity(self.level, self.n);
                    g.set(i, j, 1);
                    gens.push(g);
                }
            }
        }
        let mut d = MatF::identity(self.level, self.n);
        d.set(0, 0, lv.generator());
        gens.push(d);
        Ok(gens.iter().map(|g| self.index_of(g).expect("generator lies in the group")).collect())
    }

    /// Conjugacy classes as orbits of conjugation by the generators, each
    /// listed from its least element.
    pub fn conjugacy_classes(&self, t: &FieldTower) -> Result<Vec<Vec<u32>>> {
        let lv = t.level(self.level)?;
        let gens = self.generators(t)?;
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    let y = self.mul(lv, self.mul(lv, s, x), self.inverse(s));
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        Ok(classes)
    }
}

fn key(size: u64, g: &MatF) -> u128 {
    g.data.iter().rev().fold(0u128, |acc, &c| acc * size as u128 + c as u128)
}

/// An exact character table of `GL_n(F_q)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    pub version: u32,
    pub id: String,
    pub n: usize,
    pub q: u64,
    pub tower_hash: String,
    pub order: u64,
    pub conductor: u64,
    pub classes: Vec<ClassData>,
    pub class_sizes: Vec<u64>,
    pub rows: Vec<Vec<CycValue>>,
    #[serde(skip)]
    index: HashMap<ClassData, usize>,
}

pub fn table_id(n: usize, q: u64) -> String {
    format!("gl{n}_q{q}")
}

impl CharacterTable {
    fn reindex(&mut self) {
        self.index = self.classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    }

    pub fn class_index(&self, c: &ClassData) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn value(&self, row: usize, c: &ClassData) -> Option<&CycValue> {
        self.class_index(c).and_then(|k| self.rows.get(row).map(|r| &r[k]))
    }

    pub fn degree(&self, row: usize) -> Result<i128> {
        let id = self
            .classes
            .iter()
            .position(|c| *c == ClassData::identity(c.level, c.size, self.n))
            .expect("identity class present");
        self.rows
            .get(row)
            .ok_or_else(|| Error::Parse(format!("row {row} out of range in {}", self.id)))?[id]
            .as_integer()
    }

    pub fn spec(&self, row: usize) -> CharSpec {
        CharSpec::Oracle { table: self.id.clone(), row, n: self.n, q: self.q }
    }

    /// `⟨χ_i, χ_j⟩ · |G|`, exactly.
    fn weighted_inner(&self, i: usize, j: usize) -> Result<CycValue> {
        let mut acc = CycValue::zero(self.conductor);
        for (k, &s) in self.class_sizes.iter().enumerate() {
            acc = acc + (&self.rows[i][k] * &self.rows[j][k].conj()).scale(s as i128);
        }
        acc.reduce()
    }

    /// Row and column orthogonality and the degree identities.
    pub fn check_orthogonality(&self) -> Result<()> {
        let r = self.rows.len();
        if r != self.classes.len() {
            return Err(Error::IdentityViolation(format!("{}: {r} rows for {} classes", self.id, self.classes.len())));
        }
        let g = self.order as i128;
        for i in 0..r {
            for j in i..r {
                let v = self.weighted_inner(i, j)?.as_integer()?;
                if v != if i == j { g } else { 0 } {
                    return Err(Error::IdentityViolation(format!("{}: rows {i},{j} inner product {v}", self.id)));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut acc = CycValue::zero(self.conductor);
                for row in &self.rows {
                    acc = acc + &row[k] * &row[l].conj();
                }
                let v = acc.as_integer()?;
                let want = if k == l { g / self.class_sizes[k] as i128 } else { 0 };
                if v != want {
                    return Err(Error::IdentityViolation(format!("{}: columns {k},{l} give {v}", self.id)));
                }
            }
        }
        let mut sq = 0i128;
        for i in 0..r {
            let d = self.degree(i)?;
            if d <= 0 || g % d != 0 {
                return Err(Error::IdentityViolation(format!("{}: degree {d} does not divide {g}", self.id)));
            }
            sq += d * d;
        }
        if sq != g {
            return Err(Error::IdentityViolation(format!("{}: squared degrees sum to {sq}", self.id)));
        }
        Ok(())
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn primitive_root(p: u64) -> u64 {
    let mut fs = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            fs.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        fs.push(m);
    }
    (2..p).find(|&g| fs.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1)).expect("primitive root exists")
}

/// Kernel of an `rows × cols` matrix over `F_p`, as coefficient vectors.
fn kernel_mod(k: &PrimeField, a: Vec<Vec<u32>>, cols: usize) -> Vec<Vec<u32>> {
    let (red, pivots) = if a.is_empty() { (vec![], vec![]) } else { rref(k, a) };
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u32; cols];
            v[f] = 1;
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = k.neg(row[f]);
            }
            v
        })
        .collect()
}

fn element_order<F: FieldOps + ?Sized>(k: &F, g: &MatF) -> u64 {
    let id = MatF::identity(g.level, g.n);
    let mut x = g.clone();
    let mut o = 1;
    while x != id {
        x = x.mul(k, g);
        o += 1;
    }
    o
}

/// A group with its table and the class of each element.
pub struct OracleGroup {
    pub tower: Arc<FieldTower>,
    pub group: DenseGroup,
    pub table: CharacterTable,
    elem_class: Vec<u16>,
}

impl OracleGroup {
    /// Builds `GL_n(F_q)` over the tower `FieldTower::build(q, [n])`, reusing
    /// a cached table when one matches the tower.
    pub fn build(n: usize, q: u64, cache_dir: Option<&Path>) -> Result<Self> {
        let tower = Arc::new(FieldTower::build(q, &[n])?);
        let group = DenseGroup::gl(&tower, n, 1)?;
        let classes = group.conjugacy_classes(&tower)?;
        let mut labelled: Vec<(ClassData, Vec<u32>)> = classes
            .into_iter()
            .map(|c| Ok((class_of(&tower, group.element(c[0]))?, c)))
            .collect::<Result<_>>()?;
        labelled.sort_by(|a, b| a.0.cmp(&b.0));
        let mut elem_class = vec![0u16; group.order()];
        for (k, (_, members)) in labelled.iter().enumerate() {
            for &x in members {
                elem_class[x as usize] = k as u16;
            }
        }
        let hash = tower.descriptor().hash();
        let cache_path = cache_dir.map(|d| d.join(format!("table_{}.json", table_id(n, q))));
        let cached = cache_path.as_deref().and_then(|p| load_table(p, &hash).ok());
        let table = match cached {
            Some(t) if t.classes.iter().eq(labelled.iter().map(|(c, _)| c)) => t,
            _ => {
                let t = dixon_table(&tower, &group, &labelled, &elem_class, n, q, hash)?;
                if let Some(p) = &cache_path {
                    write_json(p, &t)?;
                }
                t
            }
        };
        Ok(OracleGroup { tower, group, table, elem_class })
    }

    pub fn class_of_element(&self, g: &MatF) -> Option<&ClassData> {
        self.group.index_of(g).map(|i| &self.table.classes[self.elem_class[i as usize] as usize])
    }

    /// `(1/|H|) Σ_h Θ_row(ι(h)) · conj χ(h)` over the listed pairs
    /// `(ι(h), χ(h))`, with classes looked up by brute force.
    pub fn oracle_multiplicity(&self, row: usize, items: &[(MatF, CycValue)]) -> Result<i128> {
        let m = items.iter().fold(self.table.conductor, |m, (_, v)| lcm(m, v.conductor()));
        let mut acc = CycValue::zero(m);
        for (g, chi) in items {
            let i = self
                .group
                .index_of(g)
                .ok_or_else(|| Error::LevelMismatch("element outside the oracle group".into()))?;
            let k = self.elem_class[i as usize] as usize;
            acc = acc + self.table.rows[row][k].lift(m)? * chi.lift(m)?.conj();
        }
        acc.divide_exact(items.len() as i128)?.as_integer()
    }
}

fn load_table(path: &Path, hash: &str) -> Result<CharacterTable> {
    let mut t: CharacterTable = serde_json::from_slice(&std::fs::read(path)?)?;
    if t.version != TABLE_VERSION || t.tower_hash != hash {
        return Err(Error::Parse(format!("stale table cache {}", path.display())));
    }
    t.reindex();
    Ok(t)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, serde_json::to_vec_pretty(value)?)?;
    Ok(())
}

/// Dixon–Schneider: common eigenvectors of the class-multiplication
/// matrices over `F_p`, `p ≡ 1 (mod exp G)`, lifted to `Z[ζ_exp]` through
/// eigenvalue multiplicities read off the power maps.
fn dixon_table(
    t: &FieldTower,
    group: &DenseGroup,
    classes: &[(ClassData, Vec<u32>)],
    elem_class: &[u16],
    n: usize,
    q: u64,
    tower_hash: String,
) -> Result<CharacterTable> {
    let lv = t.level(group.level)?;
    let r = classes.len();
    if r > ORACLE_CLASS_BOUND {
        return Err(Error::BoundExceeded(format!("{r} classes exceed the oracle bound")));
    }
    let g_order = group.order() as u64;
    let reps: Vec<u32> = classes.iter().map(|(_, m)| m[0]).collect();
    let sizes: Vec<u64> = classes.iter().map(|(_, m)| m.len() as u64).collect();
    let orders: Vec<u64> = reps.iter().map(|&x| element_order(lv, group.element(x))).collect();
    let exponent = orders.iter().fold(1, |a, &b| lcm(a, b));
    let kbar: Vec<usize> = reps.iter().map(|&x| elem_class[group.inverse(x) as usize] as usize).collect();
    let id_class = elem_class[group.index_of(&MatF::identity(group.level, n)).unwrap() as usize] as usize;

    // c[j][k][l] = #{x ∈ C_j : x⁻¹ z_l ∈ C_k}
    let mut c = vec![vec![vec![0u64; r]; r]; r];
    for (l, &z) in reps.iter().enumerate() {
        for x in 0..g_order as u32 {
            let j = elem_class[x as usize] as usize;
            let y = group.mul(lv, group.inverse(x), z);
            c[j][elem_class[y as usize] as usize][l] += 1;
        }
    }

    // power maps: class of rep_k^s for 0 ≤ s < o_k
    let power_maps: Vec<Vec<usize>> = reps
        .iter()
        .zip(&orders)
        .map(|(&x, &o)| {
            let g = group.element(x);
            let mut cur = MatF::identity(group.level, n);
            (0..o)
                .map(|_| {
                    let k = elem_class[group.index_of(&cur).unwrap() as usize] as usize;
                    cur = cur.mul(lv, g);
                    k
                })
                .collect()
        })
        .collect();

    let bound = 2 * (g_order as f64).sqrt().ceil() as u64;
    let mut p = exponent + 1;
    loop {
        while !(is_prime(p) && p > bound) {
            p += exponent;
        }
        match dixon_mod_p(p, exponent, &c, &sizes, &kbar, id_class, g_order, &orders, &power_maps) {
            Ok(rows) => {
                let mut table = CharacterTable {
                    version: TABLE_VERSION,
                    id: table_id(n, q),
                    n,
                    q,
                    tower_hash,
                    order: g_order,
                    conductor: exponent,
                    classes: classes.iter().map(|(c, _)| c.clone()).collect(),
                    class_sizes: sizes,
                    rows,
                    index: HashMap::new(),
                };
                table.reindex();
                let mut keyed: Vec<(i128, String, Vec<CycValue>)> = table
                    .rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let label = row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";");
                        Ok((table.degree(i)?, label, row.clone()))
                    })
                    .collect::<Result<_>>()?;
                keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
                table.rows = keyed.into_iter().map(|(_, _, r)| r).collect();
                table.check_orthogonality()?;
                return Ok(table);
            }
            Err(Error::BadPrime(_)) => p += exponent,
            Err(e) => return Err(e),
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn dixon_mod_p(
    p: u64,
    exponent: u64,
    c: &[Vec<Vec<u64>>],
    sizes: &[u64],
    kbar: &[usize],
    id_class: usize,
    g_order: u64,
    orders: &[u64],
    power_maps: &[Vec<usize>],
) -> Result<Vec<Vec<CycValue>>> {
    let r = sizes.len();
    let k = PrimeField { p };
    let modp = |x: u64| (x % p) as u32;
    let mut spaces: Vec<Vec<Vec<u32>>> = vec![(0..r).map(|i| (0..r).map(|j| u32::from(i == j)).collect()).collect()];
    for cj in c {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // images A_j b for each basis vector b, A_j[k][l] = c[j][k][l]
            let images: Vec<Vec<u32>> = basis
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|row| (0..r).fold(0u32, |acc, l| k.add(acc, k.mul(modp(cj[row][l]), b[l]))))
                        .collect()
                })
                .collect();
            let mut found = 0;
            for lambda in 0..p as u32 {
                // Σ x_i (A b_i - λ b_i) = 0, one equation per coordinate
                let system: Vec<Vec<u32>> = (0..r)
                    .map(|row| {
                        basis
                            .iter()
                            .zip(&images)
                            .map(|(b, img)| k.sub(img[row], k.mul(lambda, b[row])))
                            .collect()
                    })
                    .collect();
                let ker = kernel_mod(&k, system, basis.len());
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                next.push(
                    ker.iter()
                        .map(|x| {
                            (0..r)
                                .map(|col| {
                                    x.iter().zip(&basis).fold(0u32, |acc, (&xi, b)| k.add(acc, k.mul(xi, b[col])))
                                })
                                .collect()
                        })
                        .collect(),
                );
                if found == basis.len() {
                    break;
                }
            }
            if found != basis.len() {
                return Err(Error::BadPrime(p));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::BadPrime(p));
    }
    let inv = |x: u64| pow_mod(x % p, p - 2, p);
    let z = pow_mod(primitive_root(p), (p - 1) / exponent, p);
    let max_d = (g_order as f64).sqrt().floor() as u64 + 1;
    let mut rows = Vec::with_capacity(r);
    for s in spaces {
        let v = &s[0];
        let v0 = v[id_class] as u64;
        if v0 == 0 {
            return Err(Error::BadPrime(p));
        }
        let scale = inv(v0);
        let omega: Vec<u64> = v.iter().map(|&x| x as u64 * scale % p).collect();
        let s2 = (0..r).fold(0u64, |acc, kk| (acc + omega[kk] * omega[kbar[kk]] % p * inv(sizes[kk])) % p);
        if s2 == 0 {
            return Err(Error::BadPrime(p));
        }
        let target = g_order % p * inv(s2) % p;
        let d = (1..=max_d).find(|d| d * d % p == target).ok_or(Error::BadPrime(p))?;
        let chi_mod: Vec<u64> = (0..r).map(|kk| d * omega[kk] % p * inv(sizes[kk]) % p).collect();
        let mut row = Vec::with_capacity(r);
        for kk in 0..r {
            let o = orders[kk];
            let w = pow_mod(z, exponent / o, p);
            let mut terms = Vec::new();
            for a in 0..o {
                let mut sum = 0u64;
                for s in 0..o {
                    let e = (o - (a * s) % o) % o;
                    sum = (sum + chi_mod[power_maps[kk][s as usize]] * pow_mod(w, e, p)) % p;
                }
                let m_a = sum * inv(o) % p;
                if m_a > d {
                    return Err(Error::BadPrime(p));
                }
                if m_a > 0 {
                    terms.push((a * (exponent / o), m_a as i128));
                }
            }
            row.push(CycValue::from_terms(exponent, terms).reduce()?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Maps each regular θ-orbit representative to the table row of the
/// matching cuspidal character. The evaluator's tower must be the table's.
pub fn identify_cuspidal(table: &CharacterTable, ev: &Evaluator) -> Result<BTreeMap<u64, usize>> {
    let (n, q) = (table.n, table.q);
    let dim: i128 = (1..n).map(|i| (q as i128).pow(i as u32) - 1).product();
    let elliptic: Vec<usize> = (0..table.classes.len())
        .filter(|&k| {
            let c = &table.classes[k];
            c.is_primary() && c.pairs[0].degree() == n
        })
        .collect();
    let candidates: Vec<usize> = (0..table.rows.len())
        .filter(|&i| table.degree(i).is_ok_and(|d| d == dim))
        .collect();
    let mut out = BTreeMap::new();
    let mut used = vec![false; table.rows.len()];
    for theta in regular_thetas(n, q) {
        let spec = CharSpec::cuspidal(n, q, theta);
        let agree = |i: usize, ks: &[usize]| -> Result<bool> {
            for &k in ks {
                let green = ev.value(&spec, &table.classes[k])?;
                if !green.eq_lifted(&table.rows[i][k])? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let mut matches = Vec::new();
        for &i in &candidates {
            if agree(i, &elliptic)? {
                matches.push(i);
            }
        }
        if matches.len() > 1 {
            let all: Vec<usize> = (0..table.classes.len()).collect();
            let mut narrowed = Vec::new();
            for &i in &matches {
                if agree(i, &all)? {
                    narrowed.push(i);
                }
            }
            matches = narrowed;
        }
        match matches.as_slice() {
            [i] if !used[*i] => {
                used[*i] = true;
                out.insert(theta, *i);
            }
            _ => {
                return Err(Error::IdentificationAmbiguous(format!(
                    "{}: θ = {theta} matches rows {matches:?}",
                    table.id
                )))
            }
        }
    }
    Ok(out)
}

/// Outcome of comparing the closed-form cuspidal values with one table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenCheck {
    pub group: String,
    pub tower_hash: String,
    pub cuspidal_rows: usize,
    pub classes_checked: usize,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

/// Compares every cuspidal value with its identified row on every class.
pub fn validate_green(oracle: &OracleGroup) -> Result<GreenCheck> {
    let table = &oracle.table;
    let ev = Evaluator::new(oracle.tower.clone());
    let mut mismatches = Vec::new();
    let ids = match identify_cuspidal(table, &ev) {
        Ok(ids) => ids,
        Err(e) => {
            mismatches.push(e.to_string());
            BTreeMap::new()
        }
    };
    for (&theta, &row) in &ids {
        let spec = CharSpec::cuspidal(table.n, table.q, theta);
        for (k, c) in table.classes.iter().enumerate() {
            let green = ev.value(&spec, c)?;
            if !green.eq_lifted(&table.rows[row][k])? {
                mismatches.push(format!(
                    "θ={theta} at {}: formula {green}, table {}",
                    c.to_class_string(&oracle.tower),
                    table.rows[row][k]
                ));
            }
        }
    }
    let expected = regular_thetas(table.n, table.q).len();
    Ok(GreenCheck {
        group: table.id.clone(),
        tower_hash: table.tower_hash.clone(),
        cuspidal_rows: ids.len(),
        classes_checked: table.classes.len(),
        pass: mismatches.is_empty() && ids.len() == expected,
        mismatches,
    })
}

/// Proof that the cuspidal character formula matched the oracle on every
/// group in [`GREEN_GROUPS`]. Only this module can create one.
#[derive(Clone, Debug)]
pub struct GreenCertificate {
    checks: Vec<GreenCheck>,
}

impl GreenCertificate {
    pub fn checks(&self) -> &[GreenCheck] {
        &self.checks
    }
}

#[derive(Serialize, Deserialize)]
struct GreenRecord {
    version: u32,
    artifact: String,
    checks: Vec<GreenCheck>,
}

fn green_path(dir: &Path) -> PathBuf {
    dir.join("green_validation.json")
}

/// Runs the oracle comparison on every group in [`GREEN_GROUPS`], writing
/// tables and the validation record to `cache_dir` when given.
pub fn certify_green(cache_dir: Option<&Path>) -> Result<GreenCertificate> {
    let mut checks = Vec::new();
    for (n, q) in GREEN_GROUPS {
        let oracle = OracleGroup::build(n, q, cache_dir)?;
        checks.push(validate_green(&oracle)?);
    }
    if let Some(dir) = cache_dir {
        let record = GreenRecord {
            version: TABLE_VERSION,
            artifact: env!("CARGO_PKG_VERSION").to_string(),
            checks: checks.clone(),
        };
        write_json(&green_path(dir), &record)?;
    }
    match checks.iter().find(|c| !c.pass) {
        Some(bad) => Err(Error::IdentityViolation(format!("{}: {:?}", bad.group, bad.mismatches))),
        None => Ok(GreenCertificate { checks }),
    }
}

/// Reads a validation record, accepting it only if it passed, matches this
/// build, and every group's tower still hashes the same.
pub fn load_green_certificate(cache_dir: &Path) -> Result<GreenCertificate> {
    let bytes = std::fs::read(green_path(cache_dir)).map_err(|_| Error::GreenNotValidated)?;
    let record: GreenRecord = serde_json::from_slice(&bytes).map_err(|_| Error::GreenNotValidated)?;
    if record.version != TABLE_VERSION || record.artifact != env!("CARGO_PKG_VERSION") {
        return Err(Error::GreenNotValidated);
    }
    let mut groups: Vec<String> = record.checks.iter().filter(|c| c.pass).map(|c| c.group.clone()).collect();
    groups.sort();
    let mut want: Vec<String> = GREEN_GROUPS.iter().map(|&(n, q)| table_id(n, q)).collect();
    want.sort();
    if groups != want {
        return Err(Error::GreenNotValidated);
    }
    for (n, q) in GREEN_GROUPS {
        let hash = FieldTower::build(q, &[n])?.descriptor().hash();
        let id = table_id(n, q);
        if !record.checks.iter().any(|c| c.group == id && c.tower_hash == hash) {
            return Err(Error::GreenNotValidated);
        }
    }
    Ok(GreenCertificate { checks: record.checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_table() {
        let o = OracleGroup::build(2, 2, None).unwrap();
        let mut sizes = o.table.class_sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let degrees: Vec<i128> = (0..3).map(|i| o.table.degree(i).unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
    }

    #[test]
    fn gl2_f3_table() {
        let o = OracleGroup::build(2, 3, None).unwrap();
        assert_eq!(o.table.classes.len(), 8);
        let mut degrees: Vec<i128> = (0..8).map(|i| o.table.degree(i).unwrap()).collect();
        degrees.sort();
        assert_eq!(degrees, vec![1, 1, 2, 2, 2, 3, 3, 4]);
        let ids = identify_cuspidal(&o.table, &Evaluator::new(o.tower.clone())).unwrap();
        assert_eq!(ids.len(), 3);
        assert!(validate_green(&o).unwrap().pass);
    }

    #[test]
    fn gl3_f2_table() {
        let o = OracleGroup::build(3, 2, None).unwrap();
        assert_eq!(o.table.classes.len(), 6);
        assert!(validate_green(&o).unwrap().pass);
    }

    #[test]
    fn refuses_large_groups() {
        let t = FieldTower::build(4, &[1]).unwrap();
        assert!(matches!(DenseGroup::gl(&t, 3, 1), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn gl4_f2_table() {
        let o = OracleGroup::build(4, 2, None).unwrap();
        assert_eq!(o.table.classes.len(), 14);
        assert!(validate_green(&o).unwrap().pass);
    }

    #[test]
    fn trivial_multiplicity_is_one() {
        let o = OracleGroup::build(2, 3, None).unwrap();
        let trivial_row = (0..o.table.rows.len())
            .find(|&i| o.table.rows[i].iter().all(|v| v.as_integer().is_ok_and(|x| x == 1)))
            .unwrap();
        let items: Vec<(MatF, CycValue)> = o
            .group
            .elements()
            .iter()
            .filter(|g| g.get(0, 1) == 0 && g.get(1, 0) == 0)
            .map(|g| (g.clone(), CycValue::from_int(1, 1)))
            .collect();
        assert_eq!(o.oracle_multiplicity(trivial_row, &items).unwrap(), 1);
    }
}
