//! Formal Seiberg-Witten invariants and the rules that transform them.
//!
//! Classes are formal integer combinations of named generators. Lattice
//! classes embed through the generators `h`, `e1`, `e2`, ...; classes of
//! manifolds whose second homology is never coordinatized use free symbols
//! such as `K` or `T0`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, HomClass, LatticeError};
use crate::manifold::{FourManifold, PairingSign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwError {
    #[error("cannot parse class {0:?}")]
    Parse(String),
    #[error("basic class {class} pairs to {value} with {torus}, violating adjunction")]
    Adjunction {
        class: FormalClass,
        torus: FormalClass,
        value: i64,
    },
    #[error("no intersection number known for generators {0} and {1}")]
    UnknownPairing(String, String),
    #[error("class {0} appears twice in an SW manifest")]
    DuplicateClass(FormalClass),
    #[error("zero coefficient for class {0} in an SW manifest")]
    ZeroCoefficient(FormalClass),
    #[error("X0 class {0} is assigned more than one partner")]
    AmbiguousCorrespondence(FormalClass),
    #[error("torus class must be nonzero")]
    ZeroTorus,
    #[error("genus is not integral: {0}/2")]
    NonIntegralGenus(i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer overflow")]
    Overflow,
    #[error("lattice: {0}")]
    Lattice(#[from] LatticeError),
}

/// A finite formal sum `sum c_g * g` over named generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalClass(BTreeMap<String, i64>);

impl FormalClass {
    pub fn zero() -> Self {
        FormalClass::default()
    }

    pub fn symbol(name: &str) -> Self {
        FormalClass::zero().plus(name, 1)
    }

    fn plus(mut self, name: &str, c: i64) -> Self {
        let entry = self.0.entry(name.to_string()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.0.remove(name);
        }
        self
    }

    pub fn coeff(&self, name: &str) -> i64 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn neg(&self) -> FormalClass {
        FormalClass(self.0.iter().map(|(k, v)| (k.clone(), -v)).collect())
    }

    pub fn checked_add(&self, other: &FormalClass) -> Option<FormalClass> {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            let e = out.entry(k.clone()).or_insert(0);
            *e = e.checked_add(*v)?;
            if *e == 0 {
                out.remove(k);
            }
        }
        Some(FormalClass(out))
    }

    pub fn checked_scale(&self, n: i64) -> Option<FormalClass> {
        if n == 0 {
            return Some(FormalClass::zero());
        }
        let mut out = BTreeMap::new();
        for (k, v) in &self.0 {
            out.insert(k.clone(), v.checked_mul(n)?);
        }
        Some(FormalClass(out))
    }

    pub fn checked_sub(&self, other: &FormalClass) -> Option<FormalClass> {
        self.checked_add(&other.neg())
    }

    /// The integer `i` with `self = i * t`, if there is one.
    pub fn multiple_of(&self, t: &FormalClass) -> Option<i64> {
        let (g, tc) = t.0.iter().next()?;
        let sc = self.coeff(g);
        if sc % tc != 0 {
            return None;
        }
        let i = sc / tc;
        (t.checked_scale(i)? == *self).then_some(i)
    }
}

impl From<&HomClass> for FormalClass {
    fn from(c: &HomClass) -> Self {
        let mut f = FormalClass::zero().plus("h", c.alpha());
        for (i, b) in c.betas().iter().enumerate() {
            f = f.plus(&format!("e{}", i + 1), -b);
        }
        f
    }
}

impl fmt::Display for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        // h and e_i first in numeric order, then free symbols.
        let mut terms: Vec<_> = self.0.iter().collect();
        terms.sort_by_key(|(name, _)| generator_sort_key(name));
        for (i, (name, c)) in terms.into_iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            match c.unsigned_abs() {
                1 => write!(f, "{sign}{name}")?,
                m => write!(f, "{sign}{m}{name}")?,
            }
        }
        Ok(())
    }
}

fn generator_sort_key(name: &str) -> (u8, u64, String) {
    if name == "h" {
        return (0, 0, String::new());
    }
    if let Some(i) = name.strip_prefix('e').and_then(|r| r.parse::<u64>().ok()) {
        return (1, i, String::new());
    }
    (2, 0, name.to_string())
}

impl FromStr for FormalClass {
    type Err = SwError;

    /// Accepts sums like `K`, `-K`, `k0 + 2*T0`, `3h-e1-e2-e3`, `0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SwError::Parse(s.to_string());
        let word = |c: char| c.is_ascii_alphanumeric() || c == '_';
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens
            .windows(2)
            .any(|w| w[0].ends_with(word) && w[1].starts_with(word))
        {
            return Err(err());
        }
        let compact: String = tokens.concat();
        if compact.is_empty() {
            return Err(err());
        }
        if compact == "0" {
            return Ok(FormalClass::zero());
        }
        let bytes = compact.as_bytes();
        let mut pos = 0;
        let mut out = FormalClass::zero();
        while pos < bytes.len() {
            let mut sign = 1;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(err());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: i64 = if pos > start {
                compact[start..pos].parse().map_err(|_| err())?
            } else {
                1
            };
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
            }
            let start = pos;
            if pos >= bytes.len() || !(bytes[pos].is_ascii_alphabetic() || bytes[pos] == b'_') {
                return Err(err());
            }
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            out = out
                .checked_add(&FormalClass::zero().plus(&compact[start..pos], sign * coeff))
                .ok_or_else(err)?;
        }
        Ok(out)
    }
}

impl Serialize for FormalClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FormalClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Vector(Vec<i64>),
            Symbol(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Vector(v) if !v.is_empty() => Ok(FormalClass::from(&HomClass::new(v))),
            Repr::Vector(_) => Err(serde::de::Error::custom("empty class vector")),
            Repr::Symbol(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwTerm {
    pub class: FormalClass,
    pub coeff: i64,
}

/// A finite formal sum of basic classes with nonzero integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<SwTerm>", into = "Vec<SwTerm>")]
pub struct SwInvariant {
    terms: BTreeMap<FormalClass, i64>,
}

impl TryFrom<Vec<SwTerm>> for SwInvariant {
    type Error = SwError;

    fn try_from(list: Vec<SwTerm>) -> Result<Self, SwError> {
        let mut terms = BTreeMap::new();
        for SwTerm { class, coeff } in list {
            if coeff == 0 {
                return Err(SwError::ZeroCoefficient(class));
            }
            if terms.insert(class.clone(), coeff).is_some() {
                return Err(SwError::DuplicateClass(class));
            }
        }
        Ok(SwInvariant { terms })
    }
}

impl From<SwInvariant> for Vec<SwTerm> {
    fn from(sw: SwInvariant) -> Self {
        sw.terms
            .into_iter()
            .map(|(class, coeff)| SwTerm { class, coeff })
            .collect()
    }
}

impl SwInvariant {
    pub fn zero() -> Self {
        SwInvariant::default()
    }

    /// Builds from pairs, adding coefficients of repeated classes and
    /// dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (FormalClass, i64)>>(iter: I) -> Result<Self, SwError> {
        let mut sw = SwInvariant::zero();
        for (c, v) in iter {
            sw.add_term(c, v)?;
        }
        Ok(sw)
    }

    /// `t - t^{-1}` on the class `k`: `{k: 1, -k: -1}`.
    pub fn t_minus_t_inverse(k: &FormalClass) -> Self {
        SwInvariant::from_terms([(k.clone(), 1), (k.neg(), -1)]).expect("k != -k for nonzero k")
    }

    /// `{k: m, -k: -m}`.
    pub fn symmetric_pair(k: &FormalClass, m: i64) -> Result<Self, SwError> {
        SwInvariant::from_terms([(k.clone(), m), (k.neg(), m.checked_neg().ok_or(SwError::Overflow)?)])
    }

    /// Every coefficient multiplied by `m`.
    pub fn scaled(&self, m: i64) -> Result<SwInvariant, SwError> {
        SwInvariant::from_terms(
            self.terms
                .iter()
                .map(|(c, v)| v.checked_mul(m).map(|v| (c.clone(), v)).ok_or(SwError::Overflow))
                .collect::<Result<Vec<_>, _>>()?,
        )
    }

    fn add_term(&mut self, class: FormalClass, v: i64) -> Result<(), SwError> {
        let e = self.terms.entry(class.clone()).or_insert(0);
        *e = e.checked_add(v).ok_or(SwError::Overflow)?;
        if *e == 0 {
            self.terms.remove(&class);
        }
        Ok(())
    }

    pub fn get(&self, class: &FormalClass) -> i64 {
        self.terms.get(class).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FormalClass, i64)> {
        self.terms.iter().map(|(c, v)| (c, *v))
    }

    /// The same coefficients on negated classes.
    pub fn negate_classes(&self) -> SwInvariant {
        SwInvariant {
            terms: self.terms.iter().map(|(c, v)| (c.neg(), *v)).collect(),
        }
    }

    /// Canonical representative under simultaneous class negation.
    fn canonical(&self) -> SwInvariant {
        let neg = self.negate_classes();
        if neg < *self {
            neg
        } else {
            self.clone()
        }
    }

    /// Groups the support into orbits `{k0 + i*t0}`, each listed in class order.
    fn orbits(&self, t0: &FormalClass) -> Vec<Vec<(&FormalClass, i64)>> {
        let mut orbits: Vec<Vec<(&FormalClass, i64)>> = Vec::new();
        for (c, v) in self.iter() {
            let found = orbits
                .iter_mut()
                .find(|o| c.checked_sub(o[0].0).is_some_and(|d| d.multiple_of(t0).is_some()));
            match found {
                Some(o) => o.push((c, v)),
                None => orbits.push(vec![(c, v)]),
            }
        }
        orbits
    }
}

impl fmt::Display for SwInvariant {
    /// `-2[-K] +2[K]`, or `0` for the empty sum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v:+}[{c}]")?;
        }
        Ok(())
    }
}

/// Intersection numbers between generators; unlisted pairs are unknown.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTable {
    entries: BTreeMap<(String, String), i64>,
}

impl IntersectionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `h.h = 1`, `e_i.e_i = -1`, mixed products 0.
    pub fn diagonal(b_minus: usize) -> Self {
        let names: Vec<String> = std::iter::once("h".to_string())
            .chain((1..=b_minus).map(|i| format!("e{i}")))
            .collect();
        let mut t = Self::new();
        for (i, a) in names.iter().enumerate() {
            for (j, b) in names.iter().enumerate() {
                let v = match (i == j, i) {
                    (true, 0) => 1,
                    (true, _) => -1,
                    _ => 0,
                };
                t = t.with(a, b, v);
            }
        }
        t
    }

    pub fn with(mut self, a: &str, b: &str, value: i64) -> Self {
        self.entries.insert(key(a, b), value);
        self
    }

    fn get(&self, a: &str, b: &str) -> Result<i64, SwError> {
        self.entries
            .get(&key(a, b))
            .copied()
            .ok_or_else(|| SwError::UnknownPairing(a.to_string(), b.to_string()))
    }

    pub fn pairing(&self, u: &FormalClass, v: &FormalClass) -> Result<i64, SwError> {
        let mut acc: i64 = 0;
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                let term = self
                    .get(a, b)?
                    .checked_mul(ca)
                    .and_then(|x| x.checked_mul(cb))
                    .ok_or(SwError::Overflow)?;
                acc = acc.checked_add(term).ok_or(SwError::Overflow)?;
            }
        }
        Ok(acc)
    }
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Identification of second-homology classes across `X`, `X0` and `X_{1/n}`.
///
/// Symbols are shared by default: a class with no explicit entry keeps its
/// name in every manifold. Explicit entries override that per `X0` class.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCorrespondence {
    #[serde(default)]
    entries: Vec<CorrespondenceEntry>,
    /// Intersection numbers in `X0`, used for the adjunction precondition.
    #[serde(default)]
    pub x0_pairing: IntersectionTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceEntry {
    pub x0: FormalClass,
    pub x: FormalClass,
    pub x_1n: FormalClass,
}

impl ClassCorrespondence {
    pub fn shared(x0_pairing: IntersectionTable) -> Self {
        ClassCorrespondence {
            entries: Vec::new(),
            x0_pairing,
        }
    }

    pub fn with_entry(mut self, x0: FormalClass, x: FormalClass, x_1n: FormalClass) -> Result<Self, SwError> {
        if self.entries.iter().any(|e| e.x0 == x0) {
            return Err(SwError::AmbiguousCorrespondence(x0));
        }
        self.entries.push(CorrespondenceEntry { x0, x, x_1n });
        Ok(self)
    }

    fn x_to_x1n(&self, x: &FormalClass) -> FormalClass {
        self.entries
            .iter()
            .find(|e| e.x == *x)
            .map_or_else(|| x.clone(), |e| e.x_1n.clone())
    }

    /// The `X_{1/n}` partner of an orbit `{k0 + i t0}` of `X0` classes.
    fn orbit_target(&self, orbit: &[(&FormalClass, i64)], t0: &FormalClass) -> Result<FormalClass, SwError> {
        let mut hits = self.entries.iter().filter(|e| {
            e.x0.checked_sub(orbit[0].0)
                .is_some_and(|d| d.multiple_of(t0).is_some())
        });
        if let Some(first) = hits.next() {
            if hits.next().is_some() {
                return Err(SwError::AmbiguousCorrespondence(first.x0.clone()));
            }
            return Ok(first.x_1n.clone());
        }
        // Shared naming: the orbit member with no t0 component, else the least member.
        let rep = orbit[0].0;
        let (g, tc) = t0.terms().next().expect("t0 is nonzero");
        let reduced = if rep.coeff(g) % tc == 0 {
            t0.checked_scale(rep.coeff(g) / tc).and_then(|s| rep.checked_sub(&s))
        } else {
            None
        };
        Ok(self.x_to_x1n(&reduced.unwrap_or_else(|| rep.clone())))
    }
}

fn check_orthogonal(sw_x0: &SwInvariant, t0: &FormalClass, corr: &ClassCorrespondence) -> Result<(), SwError> {
    if t0.is_zero() {
        return Err(SwError::ZeroTorus);
    }
    for (k0, _) in sw_x0.iter() {
        let value = corr.x0_pairing.pairing(k0, t0)?;
        if value != 0 {
            return Err(SwError::Adjunction {
                class: k0.clone(),
                torus: t0.clone(),
                value,
            });
        }
    }
    Ok(())
}

/// Gluing formula `SW_{X_{1/n}}(k_{1/n}) = SW_X(k) + n * sum_i SW_{X0}(k0 + i T0)`.
///
/// The `i`-sum runs over the finite support of `sw_x0`; a class present on
/// only one side contributes zero on the other. The result lists exactly
/// the nonzero terms.
pub fn mms_combine(
    sw_x: &SwInvariant,
    sw_x0: &SwInvariant,
    t0: &FormalClass,
    n: i64,
    corr: &ClassCorrespondence,
) -> Result<SwInvariant, SwError> {
    check_orthogonal(sw_x0, t0, corr)?;
    let mut out = SwInvariant::zero();
    for (k, v) in sw_x.iter() {
        out.add_term(corr.x_to_x1n(k), v)?;
    }
    for orbit in sw_x0.orbits(t0) {
        let total = orbit
            .iter()
            .try_fold(0i64, |acc, (_, v)| acc.checked_add(*v))
            .ok_or(SwError::Overflow)?;
        let scaled = total.checked_mul(n).ok_or(SwError::Overflow)?;
        out.add_term(corr.orbit_target(&orbit, t0)?, scaled)?;
    }
    Ok(out)
}

/// Evaluation with each `i`-sum replaced by its single nonzero term.
/// Agrees with [`mms_combine`] whenever [`single_term_reduction`] holds.
pub fn mms_combine_single_term(
    sw_x: &SwInvariant,
    sw_x0: &SwInvariant,
    t0: &FormalClass,
    n: i64,
    corr: &ClassCorrespondence,
) -> Result<SwInvariant, SwError> {
    check_orthogonal(sw_x0, t0, corr)?;
    let mut out = SwInvariant::zero();
    for (k, v) in sw_x.iter() {
        out.add_term(corr.x_to_x1n(k), v)?;
    }
    for orbit in sw_x0.orbits(t0) {
        let [(_, v)] = orbit[..] else {
            return Err(SwError::Precondition(
                "an orbit carries more than one nonzero term".into(),
            ));
        };
        out.add_term(
            corr.orbit_target(&orbit, t0)?,
            v.checked_mul(n).ok_or(SwError::Overflow)?,
        )?;
    }
    Ok(out)
}

/// With a dual torus `T_d . T0 = 1` the `i`-sum has at most one nonzero
/// term. Reports whether that reduction is available for `sw_x0`.
pub fn single_term_reduction(sw_x0: &SwInvariant, t0: &FormalClass, dual_exists: bool) -> bool {
    dual_exists && !t0.is_zero() && sw_x0.orbits(t0).iter().all(|o| o.len() == 1)
}

/// Least `g >= 0` with `2g - 2 >= s^2 + |k.s|`.
pub fn adjunction_min_genus(k: &HomClass, s: &HomClass) -> Result<i64, SwError> {
    let sq = s.square()?;
    if sq < 0 {
        return Err(SwError::Precondition(format!(
            "surface class {s} has negative square {sq}"
        )));
    }
    let ks = lattice::pairing(k, s)?;
    adjunction_bound(sq, ks)
}

/// Adjunction bound from the numbers `s^2` and `k.s`.
pub fn adjunction_bound(square: i64, k_dot_s: i64) -> Result<i64, SwError> {
    let rhs = square
        .checked_add(k_dot_s.checked_abs().ok_or(SwError::Overflow)?)
        .ok_or(SwError::Overflow)?;
    // 2g >= rhs + 2
    let need = rhs.checked_add(2).ok_or(SwError::Overflow)?;
    Ok((need.div_euclid(2) + need.rem_euclid(2)).max(0))
}

/// Genus of a symplectic surface in class `s`: `2g - 2 = s^2 + K.s`.
pub fn symplectic_genus(s: &HomClass, canonical: &HomClass) -> Result<i64, SwError> {
    let total = s
        .square()?
        .checked_add(lattice::pairing(canonical, s)?)
        .ok_or(SwError::Overflow)?;
    genus_from_adjunction_sum(total)
}

/// `g = (s^2 + K.s)/2 + 1`.
pub fn genus_from_adjunction_sum(total: i64) -> Result<i64, SwError> {
    if total % 2 != 0 {
        return Err(SwError::NonIntegralGenus(total));
    }
    Ok(total / 2 + 1)
}

/// Genus of a symplectic representative of `K_X` when `K_X^2 = 9 - k`:
/// `2g - 2 = 2 K^2`, i.e. `g = 10 - k`.
pub fn canonical_genus_for_blowups(k: i64) -> Result<i64, SwError> {
    let k_sq = 9i64.checked_sub(k).ok_or(SwError::Overflow)?;
    genus_from_adjunction_sum(k_sq.checked_mul(2).ok_or(SwError::Overflow)?)
}

/// Taubes: a symplectic manifold with `b+ >= 2` has nonvanishing SW.
pub fn taubes_nonvanishing(m: &FourManifold) -> bool {
    m.symplectic.is_some() && m.b_plus().is_ok_and(|b| b >= 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiLiuVerdict {
    ConsistentWithRational,
    ExoticCertificate,
    Inapplicable,
}

/// Every symplectic structure on `CP2 # k CP2bar` has `K.omega < 0`, so a
/// symplectic manifold homeomorphic to one with `K.omega > 0` is exotic.
///
/// The homeomorphism type is read from the record: closed, simply
/// connected (asserted) and `b+ = 1` with the diagonal lattice.
pub fn li_liu_sign_check(m: &FourManifold) -> LiLiuVerdict {
    let Some(sym) = &m.symplectic else {
        return LiLiuVerdict::Inapplicable;
    };
    let rational_type = m.closed && m.simply_connected && m.lattice.is_some() && m.b_plus().is_ok_and(|b| b == 1);
    if !rational_type {
        return LiLiuVerdict::Inapplicable;
    }
    match sym.k_dot_omega_sign {
        PairingSign::Positive => LiLiuVerdict::ExoticCertificate,
        PairingSign::Negative => LiLiuVerdict::ConsistentWithRational,
        PairingSign::Zero => LiLiuVerdict::Inapplicable,
    }
}

/// Whether the invariants are pairwise different up to simultaneous
/// negation of all classes.
pub fn pairwise_distinct(family: &[SwInvariant]) -> bool {
    let mut seen: Vec<SwInvariant> = family.iter().map(SwInvariant::canonical).collect();
    seen.sort();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// Per-member distinctness: `out[i]` is true when member `i` differs from
/// every other member up to class negation.
pub fn distinct_flags(family: &[SwInvariant]) -> Vec<bool> {
    let canon: Vec<SwInvariant> = family.iter().map(SwInvariant::canonical).collect();
    (0..canon.len())
        .map(|i| canon.iter().enumerate().all(|(j, c)| i == j || *c != canon[i]))
        .collect()
}
