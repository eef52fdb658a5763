//! The `p/q` torus-surgery rule table and the Bing/Whitehead state machine.
//!
//! A `p/q` surgery reglues `T^2 x D^2` so that the boundary of the meridian
//! disk goes to `q [S^1_b] + p [mu_T]`. Rules:
//!
//! * (a) nullhomologous torus, meridian spanning a `Z` summand, framing curve
//!   nullhomologous in the complement, `|p| = 1`: `H1` unchanged.
//! * (b) as (a) with `|p| != 1`: `H1` gains `Z/|p|` (`p = 0`: a `Z`, and
//!   `b+` grows by one).
//! * (c) primitive torus, essential framing curve, coefficient `+-1`: `b1`
//!   and `b+` drop by one and the core torus is nullhomologous with a
//!   nullhomologous framing curve.
//! * (d) Lagrangian framing with `|p| = 1` keeps the symplectic structure.
//!
//! Euler characteristic and signature never change. Anything else is
//! rejected.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manifold::{standard, CoreTorus, FourManifold, ManifoldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("invalid surgery coefficient {p}/{q}: {reason}")]
    InvalidCoefficient { p: i64, q: i64, reason: &'static str },
    #[error("no rule covers {0}")]
    RuleNotCovered(String),
    #[error("no core torus labelled {0:?} in {1}")]
    UnknownSite(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("configuration {0:?} has no surgery step")]
    State(ConfigurationKind),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusStatus {
    Nullhomologous,
    Primitive,
    EssentialNonprimitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FramingCurveStatus {
    NullhomologousInComplement,
    EssentialInComplement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusSurgerySpec {
    pub torus_status: TorusStatus,
    pub meridian_generates_summand: bool,
    pub framing_curve_status: FramingCurveStatus,
    /// meridian coefficient
    pub p: i64,
    /// framing-curve coefficient
    pub q: i64,
    pub lagrangian_framing: bool,
    /// Label of a recorded core torus this surgery acts on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub site: Option<String>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl TorusSurgerySpec {
    /// `1/q` surgery on a nullhomologous torus along its nullhomologous framing.
    pub fn nullhomologous(p: i64, q: i64) -> Self {
        TorusSurgerySpec {
            torus_status: TorusStatus::Nullhomologous,
            meridian_generates_summand: true,
            framing_curve_status: FramingCurveStatus::NullhomologousInComplement,
            p,
            q,
            lagrangian_framing: false,
            site: None,
        }
    }

    /// `+-1` Luttinger surgery on a Lagrangian torus whose framing curve is
    /// essential in the complement.
    pub fn luttinger(sign: i64) -> Self {
        TorusSurgerySpec {
            torus_status: TorusStatus::Primitive,
            meridian_generates_summand: false,
            framing_curve_status: FramingCurveStatus::EssentialInComplement,
            p: sign.signum(),
            q: 1,
            lagrangian_framing: true,
            site: None,
        }
    }

    pub fn at_site(mut self, label: &str) -> Self {
        self.site = Some(label.to_string());
        self
    }

    pub fn validate(&self) -> Result<(), SurgeryError> {
        let (p, q) = (self.p, self.q);
        if p == 0 && q == 0 {
            return Err(SurgeryError::InvalidCoefficient {
                p,
                q,
                reason: "(p, q) = (0, 0)",
            });
        }
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(SurgeryError::InvalidCoefficient {
                p,
                q,
                reason: "not in lowest terms",
            });
        }
        Ok(())
    }

    fn rule(&self) -> Result<Rule, SurgeryError> {
        use FramingCurveStatus::*;
        use TorusStatus::*;
        let (p, q) = (self.p.unsigned_abs(), self.q.unsigned_abs());
        match (
            self.torus_status,
            self.framing_curve_status,
            self.meridian_generates_summand,
        ) {
            (Nullhomologous, NullhomologousInComplement, true) if p == 1 => Ok(Rule::KeepH1),
            (Nullhomologous, NullhomologousInComplement, true) => Ok(Rule::AddCyclic(p)),
            (Primitive, EssentialInComplement, _) if p == 1 && q == 1 => Ok(Rule::KillGenerator),
            _ => Err(SurgeryError::RuleNotCovered(self.to_string())),
        }
    }
}

impl fmt::Display for TorusSurgerySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} surgery on a {:?} torus (framing {:?}, meridian summand {}, lagrangian {})",
            self.p,
            self.q,
            self.torus_status,
            self.framing_curve_status,
            self.meridian_generates_summand,
            self.lagrangian_framing
        )
    }
}

enum Rule {
    KeepH1,
    AddCyclic(u64),
    KillGenerator,
}

/// Applies one surgery to the invariant record of a closed manifold.
///
/// Simple connectivity, the lattice, SW data and the smooth type are
/// cleared: none of them is determined by the rule table.
pub fn torus_surgery(m: &FourManifold, s: &TorusSurgerySpec) -> Result<FourManifold, SurgeryError> {
    s.validate()?;
    if !m.closed {
        return Err(SurgeryError::RuleNotCovered(format!(
            "{s} on {}, which has boundary",
            m.name
        )));
    }
    let rule = s.rule()?;
    // Rule (c) creates a core torus and `site` names it; the others act on one.
    let site_index = match &s.site {
        Some(label) if !matches!(rule, Rule::KillGenerator) => Some(
            m.core_tori
                .iter()
                .position(|t| &t.label == label)
                .ok_or_else(|| SurgeryError::UnknownSite(label.clone(), m.name.clone()))?,
        ),
        _ => None,
    };

    let mut out = m.clone();
    out.name = format!("{}({}/{})", m.name, s.p, s.q);
    out.simply_connected = false;
    out.lattice = None;
    out.sw = None;
    out.smooth_type = None;
    out.symplectic = if s.lagrangian_framing && s.p.unsigned_abs() == 1 {
        m.symplectic.clone().map(|mut d| {
            d.canonical_class = None;
            d
        })
    } else {
        None
    };

    match rule {
        Rule::KeepH1 => {}
        Rule::AddCyclic(0) => {
            out.b1 += 1;
            if let Some(i) = site_index {
                let core = out.core_tori.remove(i);
                out.symplectic = core.restores_symplectic;
            }
        }
        Rule::AddCyclic(p) => out.h1_torsion.push(p),
        Rule::KillGenerator => {
            if let Some(label) = &s.site {
                if m.core_tori.iter().any(|t| &t.label == label) {
                    return Err(SurgeryError::RuleNotCovered(format!(
                        "{s}: core torus {label} is nullhomologous"
                    )));
                }
            }
            if m.b1 == 0 {
                return Err(SurgeryError::Precondition(format!(
                    "{} has b1 = 0, so no framing curve is essential",
                    m.name
                )));
            }
            // The torus and its dual span a hyperbolic pair, which the surgery removes.
            let betti = m.derive_betti()?;
            if betti.b_plus == 0 || betti.b_minus == 0 {
                return Err(SurgeryError::Precondition(format!(
                    "{} has (b+, b-) = ({}, {}), so no hyperbolic pair to remove",
                    m.name, betti.b_plus, betti.b_minus
                )));
            }
            out.b1 -= 1;
            let label = s
                .site
                .clone()
                .unwrap_or_else(|| format!("core{}", m.core_tori.len() + 1));
            out.core_tori.push(CoreTorus {
                label,
                restores_symplectic: m.symplectic.clone(),
            });
        }
    }
    out.validate()?;
    Ok(out)
}

/// A surgery site on a square-zero torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusSite {
    pub label: String,
    /// The framing curve bounds a 0-framed disk in the complement.
    pub zero_vanishing_cycle: bool,
}

/// `1/n` surgery along a framing curve with a 0-vanishing cycle gives back
/// the same manifold, smooth type included.
pub fn trivializing_surgery(m: &FourManifold, site: &TorusSite, n: i64) -> Result<FourManifold, SurgeryError> {
    if n == 0 {
        return Err(SurgeryError::Precondition("1/n surgery needs n != 0".into()));
    }
    if !site.zero_vanishing_cycle {
        return Err(SurgeryError::Precondition(format!(
            "site {} has no 0-vanishing cycle",
            site.label
        )));
    }
    Ok(m.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigurationKind {
    SingleEssential,
    BingPair,
    WhiteheadDouble,
    LagrangianPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusConfiguration {
    pub kind: ConfigurationKind,
    /// Name of the ambient manifold.
    pub ambient: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BingComponent {
    First,
    Second,
}

/// `+-1` surgery on one torus of a Bing pair turns the other into the
/// Whitehead double.
pub fn bing_surgery_step(c: &TorusConfiguration, _which: BingComponent) -> Result<TorusConfiguration, SurgeryError> {
    match c.kind {
        ConfigurationKind::BingPair => Ok(TorusConfiguration {
            kind: ConfigurationKind::WhiteheadDouble,
            ambient: c.ambient.clone(),
        }),
        other => Err(SurgeryError::State(other)),
    }
}

/// Sites of the standard surgeries on Bing tori and their Lagrangian images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StandardSite {
    #[serde(rename = "A_in_T2xS2")]
    AInT2xS2,
    #[serde(rename = "lagrangian_pair_in_T4")]
    LagrangianPairInT4,
    #[serde(rename = "A_standalone")]
    AStandalone,
    #[serde(rename = "lagrangian_pair_in_T0xT0")]
    LagrangianPairInT0xT0,
}

impl StandardSite {
    pub const ALL: [StandardSite; 4] = [
        StandardSite::AInT2xS2,
        StandardSite::LagrangianPairInT4,
        StandardSite::AStandalone,
        StandardSite::LagrangianPairInT0xT0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StandardSite::AInT2xS2 => "A_in_T2xS2",
            StandardSite::LagrangianPairInT4 => "lagrangian_pair_in_T4",
            StandardSite::AStandalone => "A_standalone",
            StandardSite::LagrangianPairInT0xT0 => "lagrangian_pair_in_T0xT0",
        }
    }

    /// The manifold containing the pair of tori.
    pub fn source(self) -> FourManifold {
        match self {
            StandardSite::AInT2xS2 => standard::t2_x_s2(),
            StandardSite::LagrangianPairInT4 => standard::t4(),
            StandardSite::AStandalone => standard::manifold_a(),
            StandardSite::LagrangianPairInT0xT0 => standard::t0_x_t0(),
        }
    }
}

impl FromStr for StandardSite {
    type Err = SurgeryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StandardSite::ALL
            .into_iter()
            .find(|site| site.name() == s)
            .ok_or_else(|| SurgeryError::RuleNotCovered(format!("unknown standard site {s:?}")))
    }
}

/// Result of the standard surgeries on the pair of tori at `site`.
pub fn standard_surgeries(site: StandardSite) -> FourManifold {
    match site {
        StandardSite::AInT2xS2 => standard::t4(),
        StandardSite::LagrangianPairInT4 => standard::t2_x_s2(),
        StandardSite::AStandalone => standard::t0_x_t0(),
        StandardSite::LagrangianPairInT0xT0 => standard::manifold_a(),
    }
}
