//! Multiplicities `dim Hom_H(π, χ)` of characters of embedded subgroups, and
//! the sweeps that compare them with closed-form predictions.
//!
//! A multiplicity is the average `(1/|H|) Σ_h Θ_π(h) · conj Θ_χ(h)`. It is
//! computed either by iterating the elements of `H` (classifying each image
//! in the ambient group) or by iterating the conjugacy classes of `H` with
//! their sizes. The two paths share no code beyond character evaluation.

pub mod predict;
pub mod report;
pub mod verify;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chars::{CharSpec, Evaluator};
use crate::cyclo::{lcm, Accumulator, CycValue};
use crate::error::{Error, Result};
use crate::fields::FieldTower;
use crate::matrices::{
    basechange_class, class_of, class_rep, class_size, enumerate_classes, enumerate_group, group_order,
    levi_embed, merge_classes, ClassData, MatF, WeilEmbedding,
};

pub use report::{MultReport, ReportInputs, Sweep};

/// Largest subgroup whose elements are iterated one by one.
pub const ELEMENT_BOUND: u128 = 200_000;

/// A subgroup `H` together with its embedding into an ambient `GL_N`.
///
/// Characters of `H` are given as one spec per factor, in the order of
/// [`EmbeddedSubgroup::factors`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EmbeddedSubgroup {
    /// Block-diagonal `GL_n × GL_n` in `GL_{2n}`.
    LeviNN { n: usize, level: usize },
    /// `GL_n` over level `big` inside `GL_{n·big/small}` over level `small`,
    /// by restriction of scalars.
    WeilGLnE { n: usize, small: usize, big: usize },
    /// Diagonal torus of `GL_k`.
    SplitTorus { k: usize, level: usize },
    /// `GL_n` over level `sub` inside `GL_n` over level `level`.
    SubfieldGLn { n: usize, sub: usize, level: usize },
    Whole { n: usize, level: usize },
    /// The trivial subgroup of `GL_n`; no characters.
    Identity { n: usize, level: usize },
    /// `GL_n` modulo its center. Every character involved must be trivial on
    /// the center, so averaging over `GL_n` gives the same result.
    CenterQuotient { n: usize, level: usize },
}

impl fmt::Display for EmbeddedSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use EmbeddedSubgroup::*;
        match self {
            LeviNN { n, level } => write!(f, "levi:{n}:{level}"),
            WeilGLnE { n, small, big } => write!(f, "weil:{n}:{small}:{big}"),
            SplitTorus { k, level } => write!(f, "torus:{k}:{level}"),
            SubfieldGLn { n, sub, level } => write!(f, "subfield:{n}:{sub}:{level}"),
            Whole { n, level } => write!(f, "whole:{n}:{level}"),
            Identity { n, level } => write!(f, "identity:{n}:{level}"),
            CenterQuotient { n, level } => write!(f, "pgl:{n}:{level}"),
        }
    }
}

impl EmbeddedSubgroup {
    /// Parses the [`Display`](fmt::Display) form, e.g. `levi:2:1` or
    /// `weil:2:1:2`.
    pub fn parse(s: &str) -> Result<Self> {
        use EmbeddedSubgroup::*;
        let bad = || Error::Parse(format!("malformed subgroup {s:?}"));
        let mut parts = s.trim().split(':');
        let kind = parts.next().ok_or_else(bad)?;
        let nums: Vec<usize> = parts.map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        Ok(match (kind, nums.as_slice()) {
            ("levi", &[n, level]) => LeviNN { n, level },
            ("weil", &[n, small, big]) => WeilGLnE { n, small, big },
            ("torus", &[k, level]) => SplitTorus { k, level },
            ("subfield", &[n, sub, level]) => SubfieldGLn { n, sub, level },
            ("whole", &[n, level]) => Whole { n, level },
            ("identity", &[n, level]) => Identity { n, level },
            ("pgl", &[n, level]) => CenterQuotient { n, level },
            _ => return Err(bad()),
        })
    }
}

/// One conjugacy class of `H`: its data per factor, its size, and the class
/// of its image in the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTerm {
    pub native: Vec<ClassData>,
    pub size: u128,
    pub ambient: ClassData,
}

impl EmbeddedSubgroup {
    /// `(N, level)` of the ambient `GL_N`.
    pub fn ambient(&self) -> (usize, usize) {
        use EmbeddedSubgroup::*;
        match *self {
            LeviNN { n, level } => (2 * n, level),
            WeilGLnE { n, small, big } => (n * (big / small), small),
            SplitTorus { k, level } => (k, level),
            SubfieldGLn { n, level, .. }
            | Whole { n, level }
            | Identity { n, level }
            | CenterQuotient { n, level } => (n, level),
        }
    }

    /// `(n, level)` of each `GL_n` factor carrying a character.
    pub fn factors(&self) -> Vec<(usize, usize)> {
        use EmbeddedSubgroup::*;
        match *self {
            LeviNN { n, level } => vec![(n, level); 2],
            WeilGLnE { n, big, .. } => vec![(n, big)],
            SplitTorus { k, level } => vec![(1, level); k],
            SubfieldGLn { n, sub, .. } => vec![(n, sub)],
            Whole { n, level } | CenterQuotient { n, level } => vec![(n, level)],
            Identity { .. } => vec![],
        }
    }

    fn validate(&self, t: &FieldTower) -> Result<()> {
        use EmbeddedSubgroup::*;
        let (_, level) = self.ambient();
        t.level(level)?;
        for (_, l) in self.factors() {
            t.level(l)?;
        }
        match *self {
            WeilGLnE { small, big, .. } if small == 0 || big % small != 0 => {
                Err(Error::LevelMismatch(format!("level {small} does not divide level {big}")))
            }
            SubfieldGLn { sub, level, .. } if sub == 0 || level % sub != 0 => {
                Err(Error::LevelMismatch(format!("level {sub} does not divide level {level}")))
            }
            _ => Ok(()),
        }
    }

    /// Number of elements averaged over (for the center quotient, all of
    /// `GL_n`).
    pub fn averaging_order(&self, t: &FieldTower) -> Result<u128> {
        self.validate(t)?;
        let size = |l: usize| t.level(l).map(|x| x.size_u64());
        Ok(self
            .factors()
            .iter()
            .map(|&(n, l)| size(l).map(|s| group_order(n, s)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .product())
    }

    /// `|H|`.
    pub fn order(&self, t: &FieldTower) -> Result<u128> {
        let avg = self.averaging_order(t)?;
        Ok(match *self {
            EmbeddedSubgroup::CenterQuotient { level, .. } => avg / (t.level(level)?.size_u64() as u128 - 1),
            _ => avg,
        })
    }

    fn embed(&self, t: &FieldTower, weil: Option<&WeilEmbedding>, native: &[MatF]) -> Result<MatF> {
        use EmbeddedSubgroup::*;
        match *self {
            LeviNN { .. } => levi_embed(&native[0], &native[1]),
            WeilGLnE { .. } => weil.expect("Weil embedding prepared").embed(t, &native[0]),
            SplitTorus { .. } => Ok(MatF::block_diag(native)),
            SubfieldGLn { sub, level, .. } => {
                let g = &native[0];
                let mut out = MatF::zero(level, g.n);
                for i in 0..g.n {
                    for j in 0..g.n {
                        out.set(i, j, t.embed_code(g.get(i, j), sub, level)?);
                    }
                }
                Ok(out)
            }
            Whole { .. } | CenterQuotient { .. } => Ok(native[0].clone()),
            Identity { n, level } => Ok(MatF::identity(level, n)),
        }
    }

    fn weil(&self, t: &FieldTower) -> Result<Option<WeilEmbedding>> {
        match *self {
            EmbeddedSubgroup::WeilGLnE { small, big, .. } => Ok(Some(WeilEmbedding::new(t, small, big)?)),
            _ => Ok(None),
        }
    }

    /// Every element of `H` as `(ambient image, factor components)`.
    pub fn elements(&self, t: &FieldTower) -> Result<Vec<(MatF, Vec<MatF>)>> {
        let count = self.averaging_order(t)?;
        if count > ELEMENT_BOUND {
            return Err(Error::BoundExceeded(format!(
                "{self} has {count} elements, above the element-iteration bound {ELEMENT_BOUND}"
            )));
        }
        let factor_elems: Vec<Vec<MatF>> = self
            .factors()
            .iter()
            .map(|&(n, l)| enumerate_group(t, n, l))
            .collect::<Result<_>>()?;
        let weil = self.weil(t)?;
        let mut out = Vec::with_capacity(count as usize);
        let mut idx = vec![0usize; factor_elems.len()];
        loop {
            let native: Vec<MatF> = idx.iter().zip(&factor_elems).map(|(&i, f)| f[i].clone()).collect();
            out.push((self.embed(t, weil.as_ref(), &native)?, native));
            // odometer over the factor element lists
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < factor_elems[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
        Ok(out)
    }

    /// Conjugacy classes of `H` with sizes and ambient classes.
    pub fn classes(&self, t: &FieldTower) -> Result<Vec<ClassTerm>> {
        use EmbeddedSubgroup::*;
        self.validate(t)?;
        let (amb_n, amb_level) = self.ambient();
        let amb_size = t.level(amb_level)?.size_u64();
        match *self {
            Identity { .. } => Ok(vec![ClassTerm {
                native: vec![],
                size: 1,
                ambient: ClassData::identity(amb_level, amb_size, amb_n),
            }]),
            LeviNN { n, level } | SplitTorus { k: n, level } => {
                let parts = self.factors().len();
                let block = if matches!(self, LeviNN { .. }) { n } else { 1 };
                let cls = enumerate_classes(t, block, level)?;
                let mut out = Vec::new();
                let mut idx = vec![0usize; parts];
                loop {
                    let native: Vec<ClassData> = idx.iter().map(|&i| cls[i].clone()).collect();
                    let size = native.iter().map(class_size).product();
                    let mut ambient = native[0].clone();
                    for c in &native[1..] {
                        ambient = merge_classes(&ambient, c)?;
                    }
                    out.push(ClassTerm { native, size, ambient });
                    let mut k = 0;
                    while k < parts {
                        idx[k] += 1;
                        if idx[k] < cls.len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == parts {
                        break;
                    }
                }
                Ok(out)
            }
            WeilGLnE { n, big, .. } => {
                let weil = self.weil(t)?;
                enumerate_classes(t, n, big)?
                    .into_iter()
                    .map(|c| {
                        let rep = class_rep(t, &c)?;
                        let ambient = class_of(t, &self.embed(t, weil.as_ref(), &[rep])?)?;
                        Ok(ClassTerm { size: class_size(&c), native: vec![c], ambient })
                    })
                    .collect()
            }
            SubfieldGLn { n, sub, level } => enumerate_classes(t, n, sub)?
                .into_iter()
                .map(|c| {
                    let ambient = basechange_class(t, &c, level)?;
                    Ok(ClassTerm { size: class_size(&c), native: vec![c], ambient })
                })
                .collect(),
            Whole { n, level } | CenterQuotient { n, level } => Ok(enumerate_classes(t, n, level)?
                .into_iter()
                .map(|c| ClassTerm { size: class_size(&c), native: vec![c.clone()], ambient: c })
                .collect()),
        }
    }
}

/// How a multiplicity was (or should be) computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Elementwise,
    Classwise,
    /// Both paths, required to agree.
    Both,
    /// Both when the subgroup is small enough to iterate, else classwise.
    Auto,
}

/// `(ambient class, factor classes) ↦ weight`, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub terms: Vec<(ClassData, Vec<ClassData>, u128)>,
    pub total: u128,
}

/// Result of one inner product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    pub m: u64,
    pub method: Method,
}

/// `m`, `m_E` and the twisted multiplicity `(m + m_E)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShintaniTriple {
    pub m: u64,
    pub m_e: u64,
    pub m_tilde: u64,
}

/// Multiplicity computations over one tower, with cached subgroup profiles.
pub struct MultEngine {
    ev: Arc<Evaluator>,
    profiles: Mutex<HashMap<(EmbeddedSubgroup, bool), Arc<Profile>>>,
}

impl MultEngine {
    pub fn new(ev: Arc<Evaluator>) -> Self {
        MultEngine { ev, profiles: Mutex::default() }
    }

    /// Engine over a fresh tower `FieldTower::build(q, degrees)`.
    pub fn build(q: u64, degrees: &[usize]) -> Result<Self> {
        Ok(Self::new(Arc::new(Evaluator::new(Arc::new(FieldTower::build(q, degrees)?)))))
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.ev
    }

    pub fn tower(&self) -> &FieldTower {
        self.ev.tower()
    }

    /// Profile by element iteration (`elementwise = true`) or by classes.
    pub fn profile(&self, h: &EmbeddedSubgroup, elementwise: bool) -> Result<Arc<Profile>> {
        let key = (h.clone(), elementwise);
        if let Some(p) = self.profiles.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let t = self.tower();
        let mut acc: BTreeMap<(ClassData, Vec<ClassData>), u128> = BTreeMap::new();
        if elementwise {
            let elems = h.elements(t)?;
            let keyed: Vec<(ClassData, Vec<ClassData>)> = elems
                .par_iter()
                .map(|(g, native)| {
                    Ok((class_of(t, g)?, native.iter().map(|x| class_of(t, x)).collect::<Result<_>>()?))
                })
                .collect::<Result<_>>()?;
            for k in keyed {
                *acc.entry(k).or_default() += 1;
            }
        } else {
            for c in h.classes(t)? {
                *acc.entry((c.ambient, c.native)).or_default() += c.size;
            }
        }
        let total = acc.values().sum();
        let p = Arc::new(Profile { terms: acc.into_iter().map(|((a, n), w)| (a, n, w)).collect(), total });
        self.profiles.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    fn check_shapes(&self, pis: &[CharSpec], h: &EmbeddedSubgroup, chis: &[CharSpec]) -> Result<()> {
        let t = self.tower();
        let (n, level) = h.ambient();
        let size = t.level(level)?.size_u64();
        for p in pis {
            if p.n() != n || p.q() != size {
                return Err(Error::LevelMismatch(format!("{p} is not a representation of GL_{n}(F_{size})")));
            }
        }
        let factors = h.factors();
        if factors.len() != chis.len() {
            return Err(Error::LevelMismatch(format!(
                "{h} has {} factors but {} characters were given",
                factors.len(),
                chis.len()
            )));
        }
        for (c, &(fn_, fl)) in chis.iter().zip(&factors) {
            let fs = t.level(fl)?.size_u64();
            if c.n() != fn_ || c.q() != fs {
                return Err(Error::LevelMismatch(format!("{c} is not a representation of GL_{fn_}(F_{fs})")));
            }
        }
        Ok(())
    }

    /// `Σ_terms w · Π Θ_π(ambient) · Π conj Θ_χ(native)` divided by the total
    /// weight.
    fn average(&self, pis: &[CharSpec], chis: &[CharSpec], p: &Profile) -> Result<u64> {
        let ev = &self.ev;
        let m = pis
            .iter()
            .chain(chis)
            .try_fold(1u64, |acc, s| Ok::<_, Error>(lcm(acc, ev.conductor_of(s)?)))?;
        let acc = p
            .terms
            .par_iter()
            .try_fold(
                || Accumulator::new(m),
                |mut acc, (amb, native, w)| {
                    let mut v = CycValue::from_int(m, 1);
                    for s in pis {
                        v = v.try_mul(&ev.value(s, amb)?.lift(m)?)?.reduce()?;
                    }
                    for (s, c) in chis.iter().zip(native) {
                        v = v.try_mul(&ev.value(s, c)?.lift(m)?.conj())?.reduce()?;
                    }
                    acc.add_scaled(&v, 0, *w as i128)?;
                    Ok::<_, Error>(acc)
                },
            )
            .try_reduce(|| Accumulator::new(m), |a, b| a.merge(b))?;
        let total = acc.finish()?.divide_exact(p.total as i128)?.as_integer()?;
        u64::try_from(total).map_err(|_| Error::IdentityViolation(format!("negative multiplicity {total}")))
    }

    /// `dim Hom_H(π_1 ⊗ … ⊗ π_r, χ)` for representations `pis` of the ambient
    /// group and one character spec per factor of `H`.
    pub fn inner_product(
        &self,
        pis: &[CharSpec],
        h: &EmbeddedSubgroup,
        chis: &[CharSpec],
        method: Method,
    ) -> Result<Multiplicity> {
        self.check_shapes(pis, h, chis)?;
        let method = match method {
            Method::Auto if h.averaging_order(self.tower())? <= ELEMENT_BOUND => Method::Both,
            Method::Auto => Method::Classwise,
            other => other,
        };
        let m = match method {
            Method::Elementwise => self.average(pis, chis, &*self.profile(h, true)?)?,
            Method::Classwise => self.average(pis, chis, &*self.profile(h, false)?)?,
            _ => {
                let a = self.average(pis, chis, &*self.profile(h, true)?)?;
                let b = self.average(pis, chis, &*self.profile(h, false)?)?;
                if a != b {
                    return Err(Error::IdentityViolation(format!(
                        "elementwise {a} and classwise {b} disagree for {h}"
                    )));
                }
                a
            }
        };
        Ok(Multiplicity { m, method })
    }

    /// [`MultEngine::inner_product`] packaged as a report.
    pub fn multiplicity(
        &self,
        pi: &CharSpec,
        h: &EmbeddedSubgroup,
        chis: &[CharSpec],
        method: Method,
    ) -> Result<MultReport> {
        let start = Instant::now();
        let r = self.inner_product(std::slice::from_ref(pi), h, chis, method)?;
        let mut specs = vec![pi.to_string()];
        specs.extend(chis.iter().map(|c| c.to_string()));
        let mut rep = MultReport::new(
            "mult",
            ReportInputs {
                q: pi.q(),
                n: pi.n(),
                specs,
                subgroup: h.to_string(),
                tower: self.tower().descriptor().hash(),
                ..ReportInputs::default()
            },
        );
        rep.m = Some(r.m);
        rep.method = Some(r.method);
        rep.computed = r.m.to_string();
        rep.pass = true;
        rep.wall_ms = start.elapsed().as_millis() as u64;
        Ok(rep)
    }

    /// `m = m(π, χ)` over `H(F)`, `m_E = m(π^E, χ^E)` over `H(E)`, and the
    /// twisted multiplicity `(m + m_E)/2`, with the parity and range checks.
    ///
    /// `h` is `H(F)`, `h_e` is `H(E)` inside `G(E)`; `pi_e` and `chis_e` are
    /// the base changes. Through the norm map the σ-twisted half of the
    /// average over `H(E) ⋊ ⟨σ⟩` equals the average over `H(F)`, so the
    /// twisted multiplicity needs no explicit extension of `π^E`.
    #[allow(clippy::too_many_arguments)]
    pub fn shintani_twisted_multiplicity(
        &self,
        pi: &CharSpec,
        h: &EmbeddedSubgroup,
        chis: &[CharSpec],
        pi_e: &CharSpec,
        h_e: &EmbeddedSubgroup,
        chis_e: &[CharSpec],
        method: Method,
    ) -> Result<ShintaniTriple> {
        let m = self.inner_product(std::slice::from_ref(pi), h, chis, method)?.m;
        let m_e = self.inner_product(std::slice::from_ref(pi_e), h_e, chis_e, method)?.m;
        shintani_triple(m, m_e)
    }
}

/// Checks `m ≡ m_E (mod 2)` and `0 ≤ (m + m_E)/2 ≤ m_E`.
pub fn shintani_triple(m: u64, m_e: u64) -> Result<ShintaniTriple> {
    if !(m + m_e).is_multiple_of(2) {
        return Err(Error::ParityViolation { m: m as i128, m_e: m_e as i128 });
    }
    let m_tilde = (m + m_e) / 2;
    if m_tilde > m_e {
        return Err(Error::IdentityViolation(format!("twisted multiplicity {m_tilde} exceeds m_E = {m_e}")));
    }
    Ok(ShintaniTriple { m, m_e, m_tilde })
}

/// Spot check that the embedding of `h` is multiplicative on a few pairs.
pub fn check_homomorphism(t: &FieldTower, h: &EmbeddedSubgroup, samples: usize) -> Result<bool> {
    let elems = h.elements(t)?;
    let (_, level) = h.ambient();
    let lv = t.level(level)?;
    let weil = h.weil(t)?;
    let step = (elems.len() / samples.max(1)).max(1);
    for i in (0..elems.len()).step_by(step) {
        let j = (i * 7 + 3) % elems.len();
        let (a, na) = &elems[i];
        let (b, nb) = &elems[j];
        let native: Vec<MatF> = na
            .iter()
            .zip(nb)
            .zip(h.factors())
            .map(|((x, y), (_, l))| Ok(x.mul(t.level(l)?, y)))
            .collect::<Result<_>>()?;
        if h.embed(t, weil.as_ref(), &native)? != a.mul(lv, b) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_orders_and_class_sizes() {
        let t = FieldTower::build(2, &[4]).unwrap();
        let cases = [
            EmbeddedSubgroup::LeviNN { n: 2, level: 1 },
            EmbeddedSubgroup::WeilGLnE { n: 2, small: 1, big: 2 },
            EmbeddedSubgroup::SplitTorus { k: 3, level: 2 },
            EmbeddedSubgroup::SubfieldGLn { n: 2, sub: 1, level: 2 },
            EmbeddedSubgroup::Whole { n: 3, level: 1 },
            EmbeddedSubgroup::Identity { n: 2, level: 1 },
            EmbeddedSubgroup::CenterQuotient { n: 2, level: 2 },
        ];
        for h in cases {
            let avg = h.averaging_order(&t).unwrap();
            assert_eq!(h.elements(&t).unwrap().len() as u128, avg, "{h}");
            assert_eq!(h.classes(&t).unwrap().iter().map(|c| c.size).sum::<u128>(), avg, "{h}");
            assert!(check_homomorphism(&t, &h, 20).unwrap(), "{h}");
            assert_eq!(EmbeddedSubgroup::parse(&h.to_string()).unwrap(), h);
        }
        assert!(EmbeddedSubgroup::parse("levi:2").is_err());
        assert_eq!(EmbeddedSubgroup::CenterQuotient { n: 2, level: 2 }.order(&t).unwrap(), 60);
    }

    #[test]
    fn cuspidal_self_multiplicity_is_one() {
        let e = MultEngine::build(3, &[2]).unwrap();
        let h = EmbeddedSubgroup::Whole { n: 2, level: 1 };
        let pi = CharSpec::cuspidal(2, 3, 1);
        let r = e.inner_product(std::slice::from_ref(&pi), &h, std::slice::from_ref(&pi), Method::Both).unwrap();
        assert_eq!(r.m, 1);
    }

    #[test]
    fn identity_subgroup_gives_dimension() {
        let e = MultEngine::build(2, &[4]).unwrap();
        let h = EmbeddedSubgroup::Identity { n: 4, level: 1 };
        let pi = CharSpec::cuspidal(4, 2, 1);
        assert_eq!(e.inner_product(&[pi], &h, &[], Method::Both).unwrap().m, 21);
    }

    #[test]
    fn gl2_f3_torus_parity_rule() {
        // m = 1 iff c1 + c2 ≡ a (mod 2)
        let e = MultEngine::build(3, &[2]).unwrap();
        let h = EmbeddedSubgroup::LeviNN { n: 1, level: 1 };
        for a in crate::chars::regular_thetas(2, 3) {
            for c1 in 0..2 {
                for c2 in 0..2 {
                    let chis = [CharSpec::gl1(3, c1), CharSpec::gl1(3, c2)];
                    let m = e.inner_product(&[CharSpec::cuspidal(2, 3, a)], &h, &chis, Method::Both).unwrap().m;
                    assert_eq!(m, u64::from((c1 + c2) % 2 == a % 2), "a={a} c=({c1},{c2})");
                }
            }
        }
    }

    #[test]
    fn gl4_f2_levi_trivial_character() {
        let e = MultEngine::build(2, &[4]).unwrap();
        let h = EmbeddedSubgroup::LeviNN { n: 2, level: 1 };
        let triv = CharSpec::det(2, 2, 0);
        let m = e.inner_product(&[CharSpec::cuspidal(4, 2, 3)], &h, &[triv.clone(), triv], Method::Both).unwrap();
        assert_eq!(m.m, 1);
    }

    #[test]
    fn shintani_checks() {
        assert_eq!(shintani_triple(1, 1).unwrap(), ShintaniTriple { m: 1, m_e: 1, m_tilde: 1 });
        assert!(matches!(shintani_triple(1, 2), Err(Error::ParityViolation { .. })));
        assert!(shintani_triple(0, 0).is_ok());
        let e = MultEngine::build(2, &[2]).unwrap();
        let trip = e
            .shintani_twisted_multiplicity(
                &CharSpec::gl1(2, 0),
                &EmbeddedSubgroup::Whole { n: 1, level: 1 },
                &[CharSpec::gl1(2, 0)],
                &CharSpec::gl1(4, 0),
                &EmbeddedSubgroup::Whole { n: 1, level: 2 },
                &[CharSpec::gl1(4, 0)],
                Method::Both,
            )
            .unwrap();
        assert_eq!(trip, ShintaniTriple { m: 1, m_e: 1, m_tilde: 1 });
    }

    #[test]
    fn shape_errors() {
        let e = MultEngine::build(2, &[2]).unwrap();
        let h = EmbeddedSubgroup::LeviNN { n: 1, level: 1 };
        let r = e.inner_product(&[CharSpec::cuspidal(2, 2, 1)], &h, &[CharSpec::gl1(2, 0)], Method::Both);
        assert!(matches!(r, Err(Error::LevelMismatch(_))));
        let big = EmbeddedSubgroup::Whole { n: 4, level: 2 };
        let t = FieldTower::build(2, &[2]).unwrap();
        assert!(matches!(big.elements(&t), Err(Error::BoundExceeded(_))));
    }
}
