//! Invariant records for smooth 4-manifolds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{HomClass, IntersectionLattice, LatticeError};
use crate::seiberg_witten::SwInvariant;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    #[error("inconsistent record {name}: {reason}")]
    Inconsistent { name: String, reason: String },
    #[error("{0} has boundary; closed-manifold invariants are not defined")]
    NotClosed(String),
    #[error("lattice: {0}")]
    Lattice(#[from] LatticeError),
    #[error("malformed manifest: {0}")]
    Json(String),
}

/// Sign of `K . omega`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairingSign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticData {
    /// `K^2`
    pub canonical_square: i64,
    pub k_dot_omega_sign: PairingSign,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_class: Option<HomClass>,
}

/// Handle counts `h0..h4`. A carved `i`-handle is recorded as an attached
/// `(i-1)`-handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HandleCounts(pub [u32; 5]);

impl HandleCounts {
    pub fn new(h0: u32, h1: u32, h2: u32, h3: u32, h4: u32) -> Self {
        HandleCounts([h0, h1, h2, h3, h4])
    }

    pub fn ball() -> Self {
        HandleCounts::new(1, 0, 0, 0, 0)
    }

    pub fn attach(mut self, index: usize, count: u32) -> Self {
        self.0[index] += count;
        self
    }

    /// Carving an `index`-handle adds an `(index - 1)`-handle.
    pub fn carve(self, index: usize, count: u32) -> Self {
        assert!(index >= 1, "cannot carve a 0-handle");
        self.attach(index - 1, count)
    }

    pub fn get(&self, index: usize) -> u32 {
        self.0[index]
    }
}

/// Alternating sum `h0 - h1 + h2 - h3 + h4`.
pub fn euler_from_handles(h: &HandleCounts) -> i64 {
    h.0.iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { i64::from(c) } else { -i64::from(c) })
        .sum()
}

/// A 2-torus left behind as the core of an earlier surgery, available as
/// the site of a later one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreTorus {
    pub label: String,
    /// Symplectic data of the manifold before the surgery that created this
    /// torus; 0-surgery on the core torus returns to it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restores_symplectic: Option<SymplecticData>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Betti {
    pub b_plus: u32,
    pub b_minus: u32,
    pub b2: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourManifold {
    pub name: String,
    pub euler: i64,
    pub signature: i64,
    pub b1: u32,
    #[serde(default)]
    pub h1_torsion: Vec<u64>,
    pub closed: bool,
    #[serde(default)]
    pub simply_connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<SymplecticData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sw: Option<SwInvariant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<IntersectionLattice>,
    /// User annotation of `b2` for manifolds with boundary.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub handles: Option<HandleCounts>,
    /// Opaque diffeomorphism-type label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth_type: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub core_tori: Vec<CoreTorus>,
}

impl FourManifold {
    /// A bare closed record; everything optional left empty.
    pub fn closed(name: &str, euler: i64, signature: i64, b1: u32) -> Self {
        FourManifold {
            name: name.to_string(),
            euler,
            signature,
            b1,
            h1_torsion: Vec::new(),
            closed: true,
            simply_connected: false,
            symplectic: None,
            sw: None,
            lattice: None,
            b2: None,
            handles: None,
            smooth_type: None,
            core_tori: Vec::new(),
        }
    }

    /// A record with boundary whose Euler characteristic comes from handles.
    pub fn with_boundary(name: &str, handles: HandleCounts) -> Self {
        FourManifold {
            closed: false,
            handles: Some(handles),
            ..FourManifold::closed(name, euler_from_handles(&handles), 0, 0)
        }
    }

    pub fn from_json(s: &str) -> Result<Self, ManifoldError> {
        let m: FourManifold = serde_json::from_str(s).map_err(|e| ManifoldError::Json(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifold records always serialize")
    }

    fn inconsistent(&self, reason: impl Into<String>) -> ManifoldError {
        ManifoldError::Inconsistent {
            name: self.name.clone(),
            reason: reason.into(),
        }
    }

    /// `(b+, b-, b2)` from `b2 = e - 2 + 2 b1`.
    pub fn derive_betti(&self) -> Result<Betti, ManifoldError> {
        if !self.closed {
            return Err(ManifoldError::NotClosed(self.name.clone()));
        }
        let b2 = self.euler - 2 + 2 * i64::from(self.b1);
        if b2 < 0 {
            return Err(self.inconsistent(format!("b2 = e - 2 + 2 b1 = {b2} is negative")));
        }
        if (b2 + self.signature) % 2 != 0 {
            return Err(self.inconsistent(format!("b2 = {b2} and signature {} differ in parity", self.signature)));
        }
        let b_plus = (b2 + self.signature) / 2;
        let b_minus = (b2 - self.signature) / 2;
        if b_plus < 0 || b_minus < 0 {
            return Err(self.inconsistent(format!("|signature| = {} exceeds b2 = {b2}", self.signature.abs())));
        }
        Ok(Betti {
            b_plus: b_plus as u32,
            b_minus: b_minus as u32,
            b2: b2 as u32,
        })
    }

    pub fn b_plus(&self) -> Result<u32, ManifoldError> {
        Ok(self.derive_betti()?.b_plus)
    }

    pub fn validate(&self) -> Result<(), ManifoldError> {
        if self.h1_torsion.iter().any(|&t| t < 2) {
            return Err(self.inconsistent("torsion orders must be at least 2"));
        }
        if self.simply_connected && (self.b1 != 0 || !self.h1_torsion.is_empty()) {
            return Err(self.inconsistent("simply connected but H1 is nonzero"));
        }
        if let Some(h) = &self.handles {
            if euler_from_handles(h) != self.euler {
                return Err(self.inconsistent(format!(
                    "handle counts give e = {}, record says {}",
                    euler_from_handles(h),
                    self.euler
                )));
            }
            if self.b1 > h.get(1) || self.b2.is_some_and(|b2| b2 > h.get(2)) {
                return Err(self.inconsistent("betti annotation exceeds handle counts"));
            }
        }
        if let Some(sym) = &self.symplectic {
            if let Some(k) = &sym.canonical_class {
                if k.square()? != sym.canonical_square {
                    return Err(self.inconsistent("canonical class square disagrees with K^2"));
                }
            }
        }
        if self.closed {
            let betti = self.derive_betti()?;
            if let Some(b2) = self.b2 {
                if b2 != betti.b2 {
                    return Err(self.inconsistent(format!("b2 annotation {b2} != derived {}", betti.b2)));
                }
            }
            if let Some(lat) = &self.lattice {
                if betti.b_plus != 1 || lat.b_minus != betti.b_minus as usize {
                    return Err(self.inconsistent(format!(
                        "lattice <1>+{}<-1> does not match (b+, b-) = ({}, {})",
                        lat.b_minus, betti.b_plus, betti.b_minus
                    )));
                }
                if let Some(k) = self.symplectic.as_ref().and_then(|s| s.canonical_class.as_ref()) {
                    lat.check(k)?;
                }
            } else if self.simply_connected && betti.b_plus == 1 {
                return Err(self.inconsistent("simply connected with b+ = 1 requires an intersection lattice"));
            }
        } else if self.lattice.is_some() {
            return Err(self.inconsistent("lattices are only carried by closed manifolds"));
        }
        Ok(())
    }

    /// Connected sum with a copy of `CP2bar`.
    pub fn blow_up(&self) -> FourManifold {
        let mut out = self.clone();
        out.name = format!("{}#CP2bar", self.name);
        out.euler += 1;
        out.signature -= 1;
        out.b2 = self.b2.map(|b| b + 1);
        out.handles = self.handles.map(|h| h.attach(2, 1));
        out.lattice = self.lattice.map(|l| IntersectionLattice::new(l.b_minus + 1));
        out.symplectic = self.symplectic.as_ref().map(|s| SymplecticData {
            canonical_square: s.canonical_square - 1,
            // K' = K + E and E pairs positively with the blown-up form.
            k_dot_omega_sign: match s.k_dot_omega_sign {
                PairingSign::Negative => PairingSign::Negative,
                PairingSign::Zero | PairingSign::Positive => PairingSign::Positive,
            },
            // In the storage convention E has beta = -1.
            canonical_class: s.canonical_class.as_ref().map(|k| k.extended(-1)),
        });
        out.sw = None;
        out.smooth_type = None;
        out
    }

    pub fn blow_up_times(&self, times: usize) -> FourManifold {
        (0..times).fold(self.clone(), |m, _| m.blow_up())
    }

    /// Attaches the simple-connectivity assertion (and, for `b+ = 1`, the
    /// diagonal lattice the caller vouches for).
    pub fn assert_simply_connected(&self) -> Result<FourManifold, ManifoldError> {
        let mut out = self.clone();
        out.simply_connected = true;
        if out.closed {
            let betti = out.derive_betti()?;
            if betti.b_plus == 1 && out.lattice.is_none() {
                out.lattice = Some(IntersectionLattice::new(betti.b_minus as usize));
            }
        }
        out.validate()?;
        Ok(out)
    }

    /// `(e, sign, b1, H1 torsion, simply_connected)`, the data a
    /// homeomorphism claim is checked against.
    pub fn homotopy_invariants(&self) -> (i64, i64, u32, Vec<u64>, bool) {
        let mut tors = self.h1_torsion.clone();
        tors.sort_unstable();
        (self.euler, self.signature, self.b1, tors, self.simply_connected)
    }

    /// Human-readable `H1`, e.g. `0`, `Z^2`, `Z+Z/3`.
    pub fn h1_string(&self) -> String {
        let mut parts = Vec::new();
        match self.b1 {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.h1_torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

/// Standard records.
pub mod standard {
    use super::*;

    /// `CP2 # k CP2bar` with its Kähler structure and vanishing SW invariant.
    pub fn cp2_blown_up(k: usize) -> FourManifold {
        let k_i = k as i64;
        let mut m = FourManifold::closed(&cp2_name(k), 3 + k_i, 1 - k_i, 0);
        m.simply_connected = true;
        m.lattice = Some(IntersectionLattice::new(k));
        let canonical = HomClass::anticanonical(k).neg();
        m.symplectic = Some(SymplecticData {
            canonical_square: 9 - k_i,
            k_dot_omega_sign: PairingSign::Negative,
            canonical_class: Some(canonical),
        });
        // positive scalar curvature
        m.sw = Some(SwInvariant::zero());
        m.smooth_type = Some(format!("standard {}", cp2_name(k)));
        m
    }

    fn cp2_name(k: usize) -> String {
        match k {
            0 => "CP2".to_string(),
            1 => "CP2#CP2bar".to_string(),
            _ => format!("CP2#{k}CP2bar"),
        }
    }

    pub fn cp2() -> FourManifold {
        cp2_blown_up(0)
    }

    /// `Sym^2(Sigma_g)`: `e = (2 - 2g)^2/2 + (2 - 2g)/2`, `sign = 1 - g`,
    /// `b1 = 2g`. `K.omega > 0` for `g >= 3` (general type).
    pub fn sym2_surface(g: u32) -> FourManifold {
        let chi = 2 - 2 * i64::from(g);
        let euler = (chi * chi + chi) / 2;
        let signature = 1 - i64::from(g);
        let mut m = FourManifold::closed(&format!("Sym2(Sigma_{g})"), euler, signature, 2 * g);
        m.symplectic = Some(SymplecticData {
            canonical_square: 3 * signature + 2 * euler,
            k_dot_omega_sign: if g >= 3 {
                PairingSign::Positive
            } else {
                PairingSign::Negative
            },
            canonical_class: None,
        });
        m
    }

    pub fn t4() -> FourManifold {
        let mut m = FourManifold::closed("T4", 0, 0, 4);
        m.symplectic = Some(SymplecticData {
            canonical_square: 0,
            k_dot_omega_sign: PairingSign::Zero,
            canonical_class: None,
        });
        m
    }

    pub fn t2_x_s2() -> FourManifold {
        FourManifold::closed("T2xS2", 0, 0, 2)
    }

    pub fn b4() -> FourManifold {
        let mut m = FourManifold::with_boundary("B4", HandleCounts::ball());
        m.simply_connected = true;
        m
    }

    /// The manifold `A`: two 2-handles attached to `B4` and two carved out.
    pub fn manifold_a() -> FourManifold {
        let handles = HandleCounts::ball().attach(2, 2).carve(2, 2);
        let mut m = FourManifold::with_boundary("A", handles);
        m.b1 = 2;
        m.b2 = Some(2);
        m
    }

    /// `T0 x T0` with `T0` a once-punctured torus: two 1-handles squared.
    pub fn t0_x_t0() -> FourManifold {
        let mut m = FourManifold::with_boundary("T0xT0", HandleCounts::new(1, 4, 4, 0, 0));
        m.b1 = 4;
        m.b2 = Some(4);
        m
    }
}
