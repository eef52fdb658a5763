//! Pinwheel (cyclic three-fold sum) bookkeeping.
//!
//! Each component has two interface surfaces removed: one glued forward to
//! the next component and one glued backward to the previous. Three pieces
//! close up to a manifold with `T^3` boundary, filled by `T^2 x D^2`, when
//! the two normal Euler numbers at every seam sum to `-1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manifold::{FourManifold, HandleCounts, ManifoldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PinwheelError {
    #[error("the closing criterion is only available for 3 components, got {0}")]
    UnsupportedArity(usize),
    #[error("a pinwheel needs at least 2 components, got {0}")]
    TooFewComponents(usize),
    #[error("components {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("component {0} has no handle counts")]
    MissingHandles(String),
    #[error("seam {seam} has normal Euler numbers summing to {sum}, not -1")]
    NotCloseable { seam: usize, sum: i64 },
    #[error("component index {0} out of range")]
    OutOfRange(usize),
    #[error("malformed manifest: {0}")]
    Json(String),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterfaceSurface {
    pub genus: u32,
    pub euler_number: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinwheelComponent {
    pub name: String,
    pub euler: i64,
    /// The surface glued forward (the negative-section role).
    pub interface_out: InterfaceSurface,
    /// The surface glued backward (the fiber role).
    pub interface_in: InterfaceSurface,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub handles: Option<HandleCounts>,
}

impl PinwheelComponent {
    /// `F1` minus a `-1` section and a fiber: a 4-ball with one 1-handle
    /// and one 2-handle cancelling.
    pub fn ball_in_f1(name: &str) -> Self {
        PinwheelComponent {
            name: name.to_string(),
            euler: 1,
            interface_out: InterfaceSurface {
                genus: 0,
                euler_number: -1,
            },
            interface_in: InterfaceSurface {
                genus: 0,
                euler_number: 0,
            },
            handles: Some(HandleCounts::ball()),
        }
    }

    pub fn blow_up(&self) -> Self {
        PinwheelComponent {
            name: format!("{}#CP2bar", self.name),
            euler: self.euler + 1,
            handles: self.handles.map(|h| h.attach(2, 1)),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDescription")]
pub struct PinwheelDescription {
    components: Vec<PinwheelComponent>,
    /// Euler characteristic of the filling `T^2 x D^2`.
    #[serde(default)]
    closure_piece_euler: i64,
}

#[derive(Deserialize)]
struct RawDescription {
    components: Vec<PinwheelComponent>,
    #[serde(default)]
    closure_piece_euler: i64,
}

impl TryFrom<RawDescription> for PinwheelDescription {
    type Error = PinwheelError;

    fn try_from(raw: RawDescription) -> Result<Self, PinwheelError> {
        PinwheelDescription::new(raw.components).map(|mut d| {
            d.closure_piece_euler = raw.closure_piece_euler;
            d
        })
    }
}

/// Result of gluing the components and filling the boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembly {
    pub euler: i64,
    pub components: Vec<String>,
}

/// What assembly cannot compute; supplied by the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssemblyAnnotations {
    pub name: String,
    pub signature: i64,
    pub b1: u32,
    pub simply_connected: bool,
}

impl Assembly {
    pub fn annotate(&self, ann: &AssemblyAnnotations) -> Result<FourManifold, PinwheelError> {
        let mut m = FourManifold::closed(&ann.name, self.euler, ann.signature, ann.b1);
        if ann.simply_connected {
            m = m.assert_simply_connected()?;
        }
        m.validate()?;
        Ok(m)
    }
}

impl PinwheelDescription {
    pub fn new(components: Vec<PinwheelComponent>) -> Result<Self, PinwheelError> {
        if components.len() < 2 {
            return Err(PinwheelError::TooFewComponents(components.len()));
        }
        Ok(PinwheelDescription {
            components,
            closure_piece_euler: 0,
        })
    }

    pub fn from_json(s: &str) -> Result<Self, PinwheelError> {
        serde_json::from_str(s).map_err(|e| PinwheelError::Json(e.to_string()))
    }

    /// The pinwheel structure of `CP2`: three balls from `F1`.
    pub fn cp2() -> Self {
        let comps = (0..3)
            .map(|i| PinwheelComponent::ball_in_f1(&format!("B{i}")))
            .collect();
        PinwheelDescription::new(comps).expect("three components")
    }

    pub fn components(&self) -> &[PinwheelComponent] {
        &self.components
    }

    pub fn closure_piece_euler(&self) -> i64 {
        self.closure_piece_euler
    }

    /// Normal Euler-number sum at each seam `i -> i+1`.
    pub fn seam_sums(&self) -> Vec<i64> {
        let n = self.components.len();
        (0..n)
            .map(|i| {
                self.components[i].interface_out.euler_number + self.components[(i + 1) % n].interface_in.euler_number
            })
            .collect()
    }

    pub fn closing_condition(&self) -> Result<bool, PinwheelError> {
        if self.components.len() != 3 {
            return Err(PinwheelError::UnsupportedArity(self.components.len()));
        }
        Ok(self.seam_sums().iter().all(|&s| s == -1))
    }

    /// Glues the components and fills the `T^3` boundary. Every gluing
    /// region is a product with a torus or circle, so Euler characteristics add.
    pub fn assemble(&self) -> Result<Assembly, PinwheelError> {
        if !self.closing_condition()? {
            let (seam, sum) = self
                .seam_sums()
                .into_iter()
                .enumerate()
                .find(|(_, s)| *s != -1)
                .expect("some seam fails");
            return Err(PinwheelError::NotCloseable { seam, sum });
        }
        Ok(Assembly {
            euler: self.components.iter().map(|c| c.euler).sum::<i64>() + self.closure_piece_euler,
            components: self.components.iter().map(|c| c.name.clone()).collect(),
        })
    }

    pub fn rotated(&self, by: usize) -> Self {
        let mut out = self.clone();
        out.components.rotate_left(by % self.components.len());
        out
    }

    pub fn map_components(&self, f: impl Fn(&PinwheelComponent) -> PinwheelComponent) -> Self {
        PinwheelDescription {
            components: self.components.iter().map(f).collect(),
            ..self.clone()
        }
    }

    /// Moves a pair of 2-handles from `to` into `from`: `from` gains two
    /// 2-handles and `to` two 1-handles. The seam's interface surfaces
    /// become tori.
    pub fn handle_trade(&self, from: usize, to: usize) -> Result<Self, PinwheelError> {
        let n = self.components.len();
        if from >= n || to >= n {
            return Err(PinwheelError::OutOfRange(from.max(to)));
        }
        if to != (from + 1) % n {
            return Err(PinwheelError::NotAdjacent(from, to));
        }
        let (c, d) = handle_trade(&self.components[from], &self.components[to])?;
        let mut out = self.clone();
        out.components[from] = c;
        out.components[to] = d;
        Ok(out)
    }

    /// One trade across every seam.
    pub fn trade_full_cycle(&self) -> Result<Self, PinwheelError> {
        (0..self.components.len()).try_fold(self.clone(), |p, i| p.handle_trade(i, (i + 1) % p.components.len()))
    }
}

/// The pairwise trade behind [`PinwheelDescription::handle_trade`].
pub fn handle_trade(
    c: &PinwheelComponent,
    d: &PinwheelComponent,
) -> Result<(PinwheelComponent, PinwheelComponent), PinwheelError> {
    let hc = c.handles.ok_or_else(|| PinwheelError::MissingHandles(c.name.clone()))?;
    let hd = d.handles.ok_or_else(|| PinwheelError::MissingHandles(d.name.clone()))?;
    let mut c2 = c.clone();
    let mut d2 = d.clone();
    c2.handles = Some(hc.attach(2, 2));
    c2.euler += 2;
    c2.interface_out.genus = 1;
    // subtracting a 2-handle attaches a 1-handle
    d2.handles = Some(hd.carve(2, 2));
    d2.euler -= 2;
    d2.interface_in.genus = 1;
    Ok((c2, d2))
}
