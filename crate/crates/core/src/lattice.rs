//! Exact arithmetic in the odd diagonal lattice `<1> + b<-1>`.
//!
//! Classes are stored as coefficient vectors `[alpha, beta_1, .., beta_b]`
//! and stand for `alpha*h - sum beta_i*e_i`, where `h^2 = 1`, `e_i^2 = -1`
//! and the basis is orthogonal.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default box bound for isotropic-vector searches.
pub const DEFAULT_SEARCH_BOUND: i64 = 20;

/// Largest feasibility table (in bits) a single search level may allocate.
const MAX_TABLE_BITS: u128 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("rank mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("lemma hypothesis violated: b_minus = {0} > 8")]
    Hypothesis(usize),
    #[error("search bound must be at least 1, got {0}")]
    InvalidBound(i64),
    #[error("search box too large for bound {bound} (feasibility table of {bits} bits)")]
    SearchTooLarge { bound: i64, bits: u128 },
}

/// The lattice `<1> + b_minus <-1>` of a simply connected closed 4-manifold
/// with `b+ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionLattice {
    pub b_minus: usize,
}

/// An integer class `alpha*h - sum beta_i*e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomClass {
    coeffs: Vec<i64>,
}

impl HomClass {
    /// Builds a class from `[alpha, beta_1, .., beta_b]`.
    pub fn new(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "a class needs at least the h coefficient");
        HomClass { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        HomClass::new(vec![0; rank])
    }

    /// The generator `h`.
    pub fn h(rank: usize) -> Self {
        let mut c = vec![0; rank];
        c[0] = 1;
        HomClass::new(c)
    }

    /// The generator `e_i` (1-based). Under the storage convention its
    /// `beta_i` is `-1`.
    pub fn e(i: usize, rank: usize) -> Self {
        assert!(i >= 1 && i < rank, "e_{i} is not a generator of a rank {rank} lattice");
        let mut c = vec![0; rank];
        c[i] = -1;
        HomClass::new(c)
    }

    /// `3h - e_1 - .. - e_b`, the anticanonical class of the standard
    /// rational surface.
    pub fn anticanonical(b_minus: usize) -> Self {
        let mut c = vec![1; b_minus + 1];
        c[0] = 3;
        HomClass::new(c)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn alpha(&self) -> i64 {
        self.coeffs[0]
    }

    pub fn betas(&self) -> &[i64] {
        &self.coeffs[1..]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> HomClass {
        HomClass::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn checked_add(&self, other: &HomClass) -> Result<HomClass, LatticeError> {
        same_rank(self, other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(LatticeError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(HomClass { coeffs })
    }

    pub fn checked_scale(&self, n: i64) -> Result<HomClass, LatticeError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(n).ok_or(LatticeError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(HomClass { coeffs })
    }

    /// `alpha^2 - sum beta_i^2`.
    pub fn square(&self) -> Result<i64, LatticeError> {
        pairing(self, self)
    }

    /// Extends the class by one zero `e` coefficient (blow-up inclusion).
    pub fn extended(&self, extra_beta: i64) -> HomClass {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(extra_beta);
        HomClass { coeffs }
    }
}

impl fmt::Display for HomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        let terms = std::iter::once((self.alpha(), "h".to_string())).chain(
            self.betas()
                .iter()
                .enumerate()
                .map(|(i, b)| (-b, format!("e{}", i + 1))),
        );
        for (c, name) in terms.filter(|(c, _)| *c != 0) {
            let sign = if c < 0 {
                "-"
            } else if wrote {
                "+"
            } else {
                ""
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn same_rank(u: &HomClass, v: &HomClass) -> Result<(), LatticeError> {
    if u.rank() != v.rank() {
        return Err(LatticeError::Dimension {
            expected: u.rank(),
            found: v.rank(),
        });
    }
    Ok(())
}

/// The intersection pairing `alpha_u alpha_v - sum beta_u,i beta_v,i`.
pub fn pairing(u: &HomClass, v: &HomClass) -> Result<i64, LatticeError> {
    same_rank(u, v)?;
    let mut acc: i128 = i128::from(u.alpha()) * i128::from(v.alpha());
    for (a, b) in u.betas().iter().zip(v.betas()) {
        acc -= i128::from(*a) * i128::from(*b);
    }
    i64::try_from(acc).map_err(|_| LatticeError::Overflow)
}

/// Nonnegativity of the expected moduli-space dimension:
/// `k^2 >= 3 sign + 2 e`.
pub fn moduli_dimension_bound(k: &HomClass, euler: i64, signature: i64) -> Result<bool, LatticeError> {
    let rhs = signature
        .checked_mul(3)
        .and_then(|s| euler.checked_mul(2).and_then(|e| s.checked_add(e)))
        .ok_or(LatticeError::Overflow)?;
    Ok(k.square()? >= rhs)
}

impl IntersectionLattice {
    pub fn new(b_minus: usize) -> Self {
        IntersectionLattice { b_minus }
    }

    pub fn rank(&self) -> usize {
        1 + self.b_minus
    }

    pub fn signature(&self) -> i64 {
        1 - self.b_minus as i64
    }

    pub fn basis(&self) -> Vec<HomClass> {
        let r = self.rank();
        std::iter::once(HomClass::h(r))
            .chain((1..r).map(|i| HomClass::e(i, r)))
            .collect()
    }

    pub fn check(&self, c: &HomClass) -> Result<(), LatticeError> {
        if c.rank() != self.rank() {
            return Err(LatticeError::Dimension {
                expected: self.rank(),
                found: c.rank(),
            });
        }
        Ok(())
    }

    pub fn pairing(&self, u: &HomClass, v: &HomClass) -> Result<i64, LatticeError> {
        self.check(u)?;
        self.check(v)?;
        pairing(u, v)
    }

    /// Searches the box `[-bound, bound]^rank` for a nonzero `T` with
    /// `T^2 = 0` and `k.T = 0`.
    ///
    /// Witnesses come in `+-T` pairs, so only vectors with positive `h`
    /// coefficient are reported (any nonzero isotropic vector has one). The
    /// first witness is taken in order of increasing max-norm, then
    /// lexicographically. `None` means no witness inside the box, not a
    /// proof of absence.
    pub fn find_isotropic_orthogonal(&self, k: &HomClass, bound: i64) -> Result<Option<HomClass>, LatticeError> {
        self.check(k)?;
        if bound < 1 {
            return Err(LatticeError::InvalidBound(bound));
        }
        let betas = k.betas();
        let alpha = k.alpha();

        // Cheap global existence test on the full box first; most calls stop here.
        let full = SuffixTables::build(betas, bound)?;
        let any = (1..=bound).any(|a| full.feasible(0, a * a, alpha.checked_mul(a)));
        if !any {
            return Ok(None);
        }

        // Every witness in box r has max-norm exactly r once boxes < r are empty.
        for r in 1..=bound {
            let tables = if r == bound {
                full.clone()
            } else {
                SuffixTables::build(betas, r)?
            };
            for a in 1..=r {
                let Some(target) = alpha.checked_mul(a) else { continue };
                if !tables.feasible(0, a * a, Some(target)) {
                    continue;
                }
                let mut coeffs = Vec::with_capacity(self.rank());
                coeffs.push(a);
                let (mut sq, mut lin) = (a * a, target);
                for (j, &beta) in betas.iter().enumerate() {
                    let v = (-r..=r)
                        .find(|&v| {
                            v * v <= sq
                                && tables.feasible(
                                    j + 1,
                                    sq - v * v,
                                    beta.checked_mul(v).and_then(|bv| lin.checked_sub(bv)),
                                )
                        })
                        .expect("feasibility table admits a completion");
                    sq -= v * v;
                    lin -= beta * v;
                    coeffs.push(v);
                }
                debug_assert!(sq == 0 && lin == 0);
                return Ok(Some(HomClass::new(coeffs)));
            }
        }
        unreachable!("full-box table reported a witness that no shell produced")
    }

    /// The analytic form of the no-essential-torus criterion: with
    /// `b_minus <= 8`, an isotropic class orthogonal to `k` is ruled out
    /// exactly when `alpha^2 > sum beta_i^2`.
    pub fn essential_torus_obstruction(&self, k: &HomClass) -> Result<bool, LatticeError> {
        self.check(k)?;
        if self.b_minus > 8 {
            return Err(LatticeError::Hypothesis(self.b_minus));
        }
        Ok(k.square()? > 0)
    }
}

/// `tables[i]` holds every pair `(sum b_j^2, sum beta_j b_j)` reachable by
/// the coordinates `j >= i` of a vector in `[-r, r]^n` with square sum at
/// most `r^2`.
#[derive(Clone)]
struct SuffixTables {
    max_sq: i64,
    levels: Vec<BitTable>,
}

#[derive(Clone)]
struct BitTable {
    offset: i64,
    words: usize,
    bits: Vec<u64>,
}

impl BitTable {
    fn new(max_sq: i64, offset: i64) -> Self {
        let width = (2 * offset + 1) as usize;
        let words = width.div_ceil(64);
        BitTable {
            offset,
            words,
            bits: vec![0; words * (max_sq as usize + 1)],
        }
    }

    fn row(&self, s: i64) -> &[u64] {
        let start = s as usize * self.words;
        &self.bits[start..start + self.words]
    }

    fn get(&self, s: i64, l: i64) -> bool {
        if l < -self.offset || l > self.offset {
            return false;
        }
        let idx = (l + self.offset) as usize;
        self.row(s)[idx / 64] >> (idx % 64) & 1 == 1
    }

    fn set(&mut self, s: i64, l: i64) {
        let idx = (l + self.offset) as usize;
        let start = s as usize * self.words;
        self.bits[start + idx / 64] |= 1 << (idx % 64);
    }

    /// ORs `src` (a row of width `src.len()` words whose bit 0 is `l = -src_offset`)
    /// into row `s`, moved by `delta` and re-based to this table's offset.
    fn or_shifted(&mut self, s: i64, src: &[u64], src_offset: i64, delta: i64) {
        let shift = delta + self.offset - src_offset;
        debug_assert!(shift >= 0);
        let (word_shift, bit_shift) = ((shift / 64) as usize, (shift % 64) as u32);
        let start = s as usize * self.words;
        let dst = &mut self.bits[start..start + self.words];
        for (i, &w) in src.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = i + word_shift;
            if lo < dst.len() {
                dst[lo] |= w << bit_shift;
            }
            if bit_shift != 0 && lo + 1 < dst.len() {
                dst[lo + 1] |= w >> (64 - bit_shift);
            }
        }
    }

    fn row_is_empty(&self, s: i64) -> bool {
        self.row(s).iter().all(|&w| w == 0)
    }
}

impl SuffixTables {
    fn build(betas: &[i64], r: i64) -> Result<Self, LatticeError> {
        let max_sq = r.checked_mul(r).ok_or(LatticeError::Overflow)?;
        let n = betas.len();
        let mut offsets = vec![0i64; n + 1];
        for i in (0..n).rev() {
            let step = betas[i]
                .checked_abs()
                .and_then(|b| b.checked_mul(r))
                .ok_or(LatticeError::Overflow)?;
            offsets[i] = offsets[i + 1].checked_add(step).ok_or(LatticeError::Overflow)?;
        }
        let bits = (max_sq as u128 + 1) * (2 * offsets[0] as u128 + 1);
        if bits > MAX_TABLE_BITS {
            return Err(LatticeError::SearchTooLarge { bound: r, bits });
        }

        let mut levels = vec![BitTable::new(0, 0); n + 1];
        let mut tail = BitTable::new(max_sq, 0);
        tail.set(0, 0);
        levels[n] = tail;
        for i in (0..n).rev() {
            let mut table = BitTable::new(max_sq, offsets[i]);
            let next = &levels[i + 1];
            for s in 0..=max_sq {
                if next.row_is_empty(s) {
                    continue;
                }
                let src = next.row(s).to_vec();
                for v in -r..=r {
                    let s2 = s + v * v;
                    if s2 > max_sq {
                        continue;
                    }
                    table.or_shifted(s2, &src, next.offset, betas[i] * v);
                }
            }
            levels[i] = table;
        }
        Ok(SuffixTables { max_sq, levels })
    }

    /// Whether coordinates `i..` can contribute exactly `(sq, lin)`.
    fn feasible(&self, i: usize, sq: i64, lin: Option<i64>) -> bool {
        match lin {
            Some(l) if (0..=self.max_sq).contains(&sq) => self.levels[i].get(sq, l),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> HomClass {
        HomClass::new(vec![3, 1, 1, 1])
    }

    #[test]
    fn basis_pairings() {
        let r = 4;
        let h = HomClass::h(r);
        let e1 = HomClass::e(1, r);
        assert_eq!(pairing(&h, &h).unwrap(), 1);
        assert_eq!(pairing(&e1, &e1).unwrap(), -1);
        assert_eq!(pairing(&h, &e1).unwrap(), 0);
        assert_eq!(k3().square().unwrap(), 6);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let err = pairing(&HomClass::h(2), &HomClass::h(3)).unwrap_err();
        assert_eq!(err, LatticeError::Dimension { expected: 2, found: 3 });
        let lat = IntersectionLattice::new(3);
        assert!(lat.find_isotropic_orthogonal(&HomClass::h(2), 3).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = HomClass::new(vec![i64::MAX, 0]);
        assert_eq!(big.square(), Err(LatticeError::Overflow));
        assert_eq!(big.checked_add(&big), Err(LatticeError::Overflow));
    }

    #[test]
    fn display_uses_sign_convention() {
        assert_eq!(k3().to_string(), "3h-e1-e2-e3");
        assert_eq!(HomClass::e(2, 3).to_string(), "e2");
        assert_eq!(HomClass::zero(3).to_string(), "0");
        assert_eq!(HomClass::new(vec![-3, -1, -1]).to_string(), "-3h+e1+e2");
    }

    #[test]
    fn dimension_bound_examples() {
        // k^2 = 6
        assert!(moduli_dimension_bound(&k3(), 6, -2).unwrap());
        // k^2 = 0
        let k0 = HomClass::new(vec![1, 1]);
        assert!(!moduli_dimension_bound(&k0, 6, -2).unwrap());
        // k^2 = 8
        let k8 = HomClass::new(vec![3, 1]);
        assert!(moduli_dimension_bound(&k8, 4, 0).unwrap());
    }

    #[test]
    fn no_witness_for_positive_square() {
        let lat = IntersectionLattice::new(3);
        assert_eq!(lat.find_isotropic_orthogonal(&k3(), 10).unwrap(), None);
        assert!(lat.essential_torus_obstruction(&k3()).unwrap());
    }

    #[test]
    fn witness_for_square_zero_canonical_class() {
        let lat = IntersectionLattice::new(9);
        let k = HomClass::anticanonical(9);
        assert_eq!(k.square().unwrap(), 0);
        assert_eq!(
            lat.find_isotropic_orthogonal(&k, DEFAULT_SEARCH_BOUND).unwrap(),
            Some(k.clone())
        );
        assert_eq!(lat.essential_torus_obstruction(&k), Err(LatticeError::Hypothesis(9)));
    }

    #[test]
    fn witness_h_minus_e1() {
        let lat = IntersectionLattice::new(1);
        let k = HomClass::new(vec![1, 1]);
        assert_eq!(lat.find_isotropic_orthogonal(&k, 2).unwrap(), Some(k.clone()));
        assert!(!lat.essential_torus_obstruction(&k).unwrap());
    }

    #[test]
    fn rank_one_lattice_has_no_isotropic_vectors() {
        let lat = IntersectionLattice::new(0);
        assert_eq!(lat.find_isotropic_orthogonal(&HomClass::new(vec![2]), 5).unwrap(), None);
        assert_eq!(lat.find_isotropic_orthogonal(&HomClass::new(vec![0]), 5).unwrap(), None);
    }

    #[test]
    fn bad_bound_rejected() {
        let lat = IntersectionLattice::new(1);
        assert_eq!(
            lat.find_isotropic_orthogonal(&HomClass::new(vec![1, 1]), 0),
            Err(LatticeError::InvalidBound(0))
        );
    }

    #[test]
    fn huge_boxes_are_refused() {
        let lat = IntersectionLattice::new(2);
        let k = HomClass::new(vec![1, 1000, 1000]);
        assert!(matches!(
            lat.find_isotropic_orthogonal(&k, 100_000),
            Err(LatticeError::SearchTooLarge { .. })
        ));
    }

    #[test]
    fn lattice_signature() {
        assert_eq!(IntersectionLattice::new(3).signature(), -2);
        assert_eq!(IntersectionLattice::new(0).basis(), vec![HomClass::h(1)]);
    }
}
