//! Reverse engineering: pick a symplectic model with the target's `e` and
//! `sign`, kill `b1` with Luttinger surgeries, then vary one nullhomologous
//! torus to get a family told apart by SW.
//!
//! Also the scripted `CP2 # 3 CP2bar` construction: pinwheel, six Bing
//! tori, and the reduction to a single torus.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manifold::{standard, FourManifold, ManifoldError, PairingSign, SymplecticData};
use crate::pinwheel::{AssemblyAnnotations, PinwheelComponent, PinwheelDescription, PinwheelError};
use crate::seiberg_witten::{
    self as swmod, ClassCorrespondence, FormalClass, IntersectionTable, LiLiuVerdict, SwError, SwInvariant,
};
use crate::surgery::{
    bing_surgery_step, standard_surgeries, torus_surgery, trivializing_surgery, BingComponent, ConfigurationKind,
    StandardSite, SurgeryError, TorusConfiguration, TorusSite, TorusSurgerySpec,
};

pub const DEFAULT_FAMILY_END: i64 = 10;

/// Attached to `X` when the plan carries a simple-connectivity citation.
pub const ASSERTED_PER_CITATION: &str = "asserted per citation";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("plan rejected: {0}")]
    ModelRejected(String),
    #[error("chain step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: SurgeryError,
    },
    #[error("cannot certify SW(X0) != 0: {0}")]
    CannotCertify(String),
    #[error("assembly: {0}")]
    Assembly(String),
    #[error("reduction schedule step {step}: {reason}")]
    Schedule { step: usize, reason: String },
    #[error("assertion failed at {step}: {detail}")]
    Assertion { step: String, detail: String },
    #[error("malformed plan: {0}")]
    Json(String),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Sw(#[from] SwError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Pinwheel(#[from] PinwheelError),
}

fn assertion(step: &str, detail: impl Into<String>) -> PipelineError {
    PipelineError::Assertion {
        step: step.to_string(),
        detail: detail.into(),
    }
}

fn default_family_range() -> Vec<i64> {
    (1..=DEFAULT_FAMILY_END).collect()
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReverseEngineeringPlan {
    /// `R`
    pub target: FourManifold,
    /// `M`
    pub model: FourManifold,
    pub lagrangian_tori: Vec<TorusSurgerySpec>,
    #[serde(default = "default_family_range")]
    pub family_range: Vec<i64>,
    /// Declared, not computed.
    #[serde(default)]
    pub framing_curves_span_h1: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simply_connected_citation: Option<String>,
    /// `SW_X`; `t - t^{-1}` on `K` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sw_x: Option<SwInvariant>,
    /// The symbolic `SW_{X0}` is taken as `m * SW_X` with this `m`.
    #[serde(default = "one")]
    pub sw_x0_scale: i64,
}

impl ReverseEngineeringPlan {
    pub fn from_json(s: &str) -> Result<Self, PipelineError> {
        let plan: ReverseEngineeringPlan = serde_json::from_str(s).map_err(|e| PipelineError::Json(e.to_string()))?;
        plan.target.validate()?;
        plan.model.validate()?;
        if !plan.target.simply_connected {
            return Err(PipelineError::Json(format!(
                "target {} must be simply connected",
                plan.target.name
            )));
        }
        Ok(plan)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plans always serialize")
    }

    pub fn sw_x(&self) -> SwInvariant {
        self.sw_x
            .clone()
            .unwrap_or_else(|| SwInvariant::t_minus_t_inverse(&FormalClass::symbol("K")))
    }
}

/// The plan with `M = Sym^2(Sigma_3)` and six Lagrangian tori.
pub fn sym2_plan() -> ReverseEngineeringPlan {
    ReverseEngineeringPlan {
        target: standard::cp2_blown_up(3),
        model: standard::sym2_surface(3),
        lagrangian_tori: (1..=6)
            .map(|i| TorusSurgerySpec::luttinger(1).at_site(&format!("L{i}")))
            .collect(),
        family_range: default_family_range(),
        framing_curves_span_h1: true,
        simply_connected_citation: Some("simple connectivity of the surgered manifold is an external result".into()),
        sw_x: None,
        sw_x0_scale: 1,
    }
}

fn model_mismatch(plan: &ReverseEngineeringPlan) -> Option<String> {
    let (m, r) = (&plan.model, &plan.target);
    if (m.euler, m.signature) != (r.euler, r.signature) {
        return Some(format!(
            "(e, sign) of {} is ({}, {}), target has ({}, {})",
            m.name, m.euler, m.signature, r.euler, r.signature
        ));
    }
    if plan.lagrangian_tori.len() != m.b1 as usize {
        return Some(format!(
            "{} tori supplied for b1 = {}",
            plan.lagrangian_tori.len(),
            m.b1
        ));
    }
    if !plan.framing_curves_span_h1 {
        return Some("framing curves are not declared to span H1".into());
    }
    if let Some(i) = plan.lagrangian_tori.iter().position(|s| !s.lagrangian_framing) {
        return Some(format!("torus {} is not given a Lagrangian framing", i + 1));
    }
    None
}

pub fn check_model(plan: &ReverseEngineeringPlan) -> bool {
    model_mismatch(plan).is_none()
}

/// `M = M0, M1, ..., Mn = X`, one Luttinger surgery per step.
pub fn run_chain(plan: &ReverseEngineeringPlan) -> Result<Vec<FourManifold>, PipelineError> {
    if let Some(reason) = model_mismatch(plan) {
        return Err(PipelineError::ModelRejected(reason));
    }
    let n = plan.lagrangian_tori.len();
    let b_plus0 = plan.model.b_plus()?;
    let mut chain = vec![plan.model.clone()];
    for (i, spec) in plan.lagrangian_tori.iter().enumerate() {
        let step = i + 1;
        let mut next = torus_surgery(chain.last().expect("nonempty"), spec)
            .map_err(|source| PipelineError::Step { step, source })?;
        next.name = if step == n { "X".to_string() } else { format!("M{step}") };
        let expect = (plan.model.b1 - step as u32, b_plus0 - step as u32);
        if (next.b1, next.b_plus()?) != expect {
            return Err(assertion(
                &format!("chain step {step}"),
                format!("(b1, b+) = ({}, {}), expected {expect:?}", next.b1, next.b_plus()?),
            ));
        }
        chain.push(next);
    }
    if n == 0 {
        return Ok(chain);
    }
    let mut x = chain.pop().expect("nonempty");
    if x.b1 != 0 || x.b_plus()? != plan.target.b_plus()? || x.symplectic.is_none() {
        return Err(assertion(
            "chain end",
            format!("{} is not a symplectic candidate for {}", x.name, plan.target.name),
        ));
    }
    if plan.simply_connected_citation.is_some() {
        x = x.assert_simply_connected()?;
    }
    chain.push(x);
    Ok(chain)
}

/// Whether two records agree on every invariant the pipeline computes;
/// names, torus labels and smooth-type labels are ignored.
pub fn same_invariants(a: &FourManifold, b: &FourManifold) -> bool {
    a.closed == b.closed
        && a.homotopy_invariants() == b.homotopy_invariants()
        && a.b_plus().ok() == b.b_plus().ok()
        && a.symplectic == b.symplectic
        && a.lattice == b.lattice
        && a.sw == b.sw
        && a.core_tori.len() == b.core_tori.len()
        && a.core_tori
            .iter()
            .zip(&b.core_tori)
            .all(|(s, t)| s.restores_symplectic == t.restores_symplectic)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub n: i64,
    pub manifold: FourManifold,
    pub sw: SwInvariant,
    pub distinct: bool,
}

/// One printable line of a family table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyLine {
    pub n: i64,
    pub e: i64,
    pub sign: i64,
    pub b1: u32,
    #[serde(rename = "H1")]
    pub h1: String,
    #[serde(rename = "SW")]
    pub sw: String,
    #[serde(rename = "distinct?")]
    pub distinct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyTable {
    pub x0: FourManifold,
    pub rows: Vec<FamilyRow>,
    pub all_distinct: bool,
}

const COLUMNS: [&str; 7] = ["n", "e", "sign", "b1", "H1", "SW", "distinct?"];

impl FamilyTable {
    pub fn lines(&self) -> Vec<FamilyLine> {
        self.rows
            .iter()
            .map(|r| FamilyLine {
                n: r.n,
                e: r.manifold.euler,
                sign: r.manifold.signature,
                b1: r.manifold.b1,
                h1: r.manifold.h1_string(),
                sw: r.sw.to_string(),
                distinct: r.distinct,
            })
            .collect()
    }

    fn cells(&self) -> Vec<[String; 7]> {
        self.lines()
            .into_iter()
            .map(|l| {
                [
                    l.n.to_string(),
                    l.e.to_string(),
                    l.sign.to_string(),
                    l.b1.to_string(),
                    l.h1,
                    l.sw,
                    if l.distinct { "yes" } else { "no" }.to_string(),
                ]
            })
            .collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = COLUMNS.join("\t");
        out.push('\n');
        for row in self.cells() {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cells = self.cells();
        let mut width = COLUMNS.map(str::len);
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let fmt_row = |row: &[&str]| {
            let padded: Vec<String> = row.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = fmt_row(&COLUMNS);
        out.push('\n');
        for row in &cells {
            out.push_str(&fmt_row(&row.each_ref().map(String::as_str)));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::json!({ "rows": self.lines(), "all_distinct": self.all_distinct });
        serde_json::to_string_pretty(&v).expect("tables always serialize")
    }
}

/// Pairings in `X0`: the torus `T0` is orthogonal to every generator of
/// `SW_{X0}` and to itself.
fn x0_pairings(sw_x0: &SwInvariant, t0: &str) -> IntersectionTable {
    let mut table = IntersectionTable::new().with(t0, t0, 0);
    for (class, _) in sw_x0.iter() {
        for (g, _) in class.terms() {
            table = table.with(g, t0, 0);
        }
    }
    table
}

/// `X_{1/n}` for every `n` in the plan's range, with SW from the gluing
/// formula against `SW_{X0} = m * SW_X`.
///
/// `X0` is the 0-surgery on the last core torus of `X`, which undoes the
/// final Luttinger surgery.
pub fn build_family(
    plan: &ReverseEngineeringPlan,
    x: &FourManifold,
    sw_x: &SwInvariant,
    m: i64,
) -> Result<FamilyTable, PipelineError> {
    let site = x
        .core_tori
        .last()
        .ok_or_else(|| PipelineError::CannotCertify(format!("{} records no core torus", x.name)))?
        .label
        .clone();
    let mut x0 = torus_surgery(x, &TorusSurgerySpec::nullhomologous(0, 1).at_site(&site))?;
    x0.name = "X0".to_string();
    if !swmod::taubes_nonvanishing(&x0) {
        return Err(PipelineError::CannotCertify(format!(
            "X0 (b+ = {}) is not certified symplectic with b+ >= 2",
            x0.b_plus()?
        )));
    }
    if m == 0 {
        return Err(PipelineError::CannotCertify("the symbolic SW(X0) is zero".into()));
    }
    let sw_x0 = sw_x.scaled(m)?;
    let t0 = FormalClass::symbol("T0");
    let corr = ClassCorrespondence::shared(x0_pairings(&sw_x0, "T0"));

    let mut rows = Vec::with_capacity(plan.family_range.len());
    for &n in &plan.family_range {
        let mut xn = torus_surgery(x, &TorusSurgerySpec::nullhomologous(1, n).at_site(&site))?;
        xn.name = format!("X_1/{n}");
        if plan.simply_connected_citation.is_some() {
            xn = xn.assert_simply_connected()?;
        }
        let (e, s, b1, tors, _) = xn.homotopy_invariants();
        let (ex, sx, b1x, torsx, _) = x.homotopy_invariants();
        if (e, s, b1, &tors) != (ex, sx, b1x, &torsx) {
            return Err(assertion(&xn.name, "homology differs from X"));
        }
        let sw = swmod::mms_combine(sw_x, &sw_x0, &t0, n, &corr)?;
        xn.sw = Some(sw.clone());
        rows.push(FamilyRow {
            n,
            manifold: xn,
            sw,
            distinct: false,
        });
    }
    let sws: Vec<SwInvariant> = rows.iter().map(|r| r.sw.clone()).collect();
    for (row, flag) in rows.iter_mut().zip(swmod::distinct_flags(&sws)) {
        row.distinct = flag;
    }
    Ok(FamilyTable {
        x0,
        rows,
        all_distinct: swmod::pairwise_distinct(&sws),
    })
}

/// One of the six nullhomologous tori `T_(j),i` of the Bing pair in
/// component `C_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfiguredTorus {
    pub label: String,
    pub component: String,
    pub bing_pair: usize,
    /// The Lagrangian torus it becomes in `Q`.
    pub lagrangian_image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SixToriReport {
    /// `CP2 # 3 CP2bar`
    pub r: FourManifold,
    pub cp2_pinwheel_euler: i64,
    pub traded: PinwheelDescription,
    pub r_pinwheel_euler: i64,
    pub q_pinwheel_euler: i64,
    pub q: FourManifold,
    pub plan: ReverseEngineeringPlan,
    pub chain: Vec<FourManifold>,
    pub x: FourManifold,
    pub tori: Vec<ConfiguredTorus>,
    /// `g(-K_R)`
    pub genus_anticanonical_r: i64,
    /// `g(K_X)`
    pub genus_canonical_x: i64,
    pub simply_connected: &'static str,
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(step: &str, got: T, want: T) -> Result<(), PipelineError> {
    if got == want {
        Ok(())
    } else {
        Err(assertion(step, format!("got {got:?}, expected {want:?}")))
    }
}

/// `CP2` as a pinwheel, traded and blown up to `R`; standard surgeries give
/// `Q`; six Luttinger surgeries give `X`.
pub fn six_tori_construction() -> Result<SixToriReport, PipelineError> {
    let assembly_err = |e: PinwheelError| PipelineError::Assembly(e.to_string());

    let cp2 = PinwheelDescription::cp2();
    let cp2_pinwheel_euler = cp2.assemble().map_err(assembly_err)?.euler;
    expect_eq("CP2 pinwheel", cp2_pinwheel_euler, standard::cp2().euler)?;

    let traded = cp2.trade_full_cycle().map_err(assembly_err)?;
    let a = standard::manifold_a();
    for c in traded.components() {
        expect_eq(
            &format!("traded {}", c.name),
            (c.handles, c.euler),
            (a.handles, a.euler),
        )?;
    }

    let blown = PinwheelDescription::new(
        traded
            .components()
            .iter()
            .enumerate()
            .map(|(i, c)| PinwheelComponent {
                name: format!("C{i}"),
                ..c.blow_up()
            })
            .collect(),
    )?;
    let r_assembly = blown.assemble().map_err(assembly_err)?;
    let r = standard::cp2_blown_up(3);
    let assembled = r_assembly.annotate(&AssemblyAnnotations {
        name: r.name.clone(),
        signature: 1 - 3,
        b1: 0,
        simply_connected: true,
    })?;
    expect_eq(
        "R from pinwheel",
        assembled.homotopy_invariants(),
        r.homotopy_invariants(),
    )?;
    expect_eq(
        "R by blow-ups",
        standard::cp2().blow_up_times(3).homotopy_invariants(),
        r.homotopy_invariants(),
    )?;

    let tori: Vec<ConfiguredTorus> = (0..3)
        .flat_map(|i| {
            (1..=2).map(move |j| ConfiguredTorus {
                label: format!("T({j}),{i}"),
                component: format!("C{i}"),
                bing_pair: i,
                lagrangian_image: format!("L({j}),{i}"),
            })
        })
        .collect();

    // Componentwise: A becomes T0 x T0.
    let t0t0 = standard_surgeries(StandardSite::AStandalone);
    let q_pinwheel = blown.map_components(|c| PinwheelComponent {
        name: format!("({})#CP2bar", t0t0.name),
        euler: t0t0.euler + 1,
        handles: t0t0.handles.map(|h| h.attach(2, 1)),
        ..c.clone()
    });
    let q_pinwheel_euler = q_pinwheel.assemble().map_err(assembly_err)?.euler;

    // Each Bing torus gets a 0-surgery, adding a Z to H1.
    let mut q = tori.iter().try_fold(r.clone(), |m, _| {
        torus_surgery(&m, &TorusSurgerySpec::nullhomologous(0, 1))
    })?;
    q.name = "Q".to_string();
    q.core_tori.clear();
    // Symplectic as a three-fold sum; the sign of K.omega is part of that input.
    q.symplectic = Some(SymplecticData {
        canonical_square: 3 * q.signature + 2 * q.euler,
        k_dot_omega_sign: PairingSign::Positive,
        canonical_class: None,
    });
    q.validate()?;
    expect_eq("Q euler", q.euler, q_pinwheel_euler)?;
    expect_eq("Q invariants", (q.euler, q.signature, q.b1, q.b_plus()?), (6, -2, 6, 7))?;

    let plan = ReverseEngineeringPlan {
        target: r.clone(),
        model: q.clone(),
        lagrangian_tori: tori
            .iter()
            .map(|t| TorusSurgerySpec::luttinger(1).at_site(&t.lagrangian_image))
            .collect(),
        family_range: default_family_range(),
        framing_curves_span_h1: true,
        simply_connected_citation: Some("simple connectivity of X is an external result".into()),
        sw_x: None,
        sw_x0_scale: 1,
    };
    let chain = run_chain(&plan)?;
    let x = chain.last().expect("nonempty").clone();
    expect_eq("X invariants", (x.euler, x.signature, x.b1, x.b_plus()?), (6, -2, 0, 1))?;

    let k_r = r
        .symplectic
        .as_ref()
        .and_then(|s| s.canonical_class.clone())
        .ok_or_else(|| assertion("R", "no canonical class"))?;
    let genus_anticanonical_r = swmod::symplectic_genus(&k_r.neg(), &k_r)?;
    let k_x_sq = x.symplectic.as_ref().expect("checked by run_chain").canonical_square;
    let genus_canonical_x = swmod::genus_from_adjunction_sum(2 * k_x_sq)?;
    expect_eq("g(-K_R)", genus_anticanonical_r, 1)?;
    expect_eq("g(K_X)", genus_canonical_x, swmod::canonical_genus_for_blowups(3)?)?;
    expect_eq(
        "genus gain",
        (genus_canonical_x - genus_anticanonical_r) as usize,
        tori.len(),
    )?;
    expect_eq(
        "Li-Liu on X",
        swmod::li_liu_sign_check(&x),
        LiLiuVerdict::ExoticCertificate,
    )?;

    Ok(SixToriReport {
        r,
        cp2_pinwheel_euler,
        traded,
        r_pinwheel_euler: r_assembly.euler,
        q_pinwheel_euler,
        q,
        plan,
        chain,
        x,
        tori,
        genus_anticanonical_r,
        genus_canonical_x,
        simply_connected: ASSERTED_PER_CITATION,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduledSurgery {
    pub torus: String,
    pub zero_vanishing_cycle: bool,
}

/// `B_{T,2}`, then `B_{T,1}`, then one torus of `B_{T,0}`.
pub fn reduction_schedule() -> Vec<ScheduledSurgery> {
    ["T(1),2", "T(2),2", "T(1),1", "T(2),1", "T(1),0"]
        .into_iter()
        .map(|t| ScheduledSurgery {
            torus: t.to_string(),
            zero_vanishing_cycle: true,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub torus: String,
    pub manifold: FourManifold,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionLedger {
    pub steps: Vec<ReductionStep>,
    /// The torus `T` left over; its disks meet the surgered tori, so it
    /// carries no 0-vanishing cycle.
    pub remaining: TorusSite,
    pub remaining_configuration: TorusConfiguration,
    /// Surgery on `T` as recorded by the Luttinger chain.
    pub x: FourManifold,
}

impl ReductionLedger {
    pub fn current(&self) -> &FourManifold {
        &self.steps.last().expect("schedules are nonempty").manifold
    }

    /// A further trivializing surgery, on the remaining torus.
    pub fn attempt_next(&self) -> Result<FourManifold, PipelineError> {
        trivializing_surgery(self.current(), &self.remaining, 1).map_err(|e| PipelineError::Schedule {
            step: self.steps.len() + 1,
            reason: e.to_string(),
        })
    }

    /// The family from surgeries on the remaining torus.
    pub fn family(&self, plan: &ReverseEngineeringPlan, m: i64) -> Result<FamilyTable, PipelineError> {
        build_family(plan, &self.x, &plan.sw_x(), m)
    }
}

pub fn reduce_to_one_torus(report: &SixToriReport) -> Result<ReductionLedger, PipelineError> {
    reduce_with_schedule(report, &reduction_schedule())
}

pub fn reduce_with_schedule(
    report: &SixToriReport,
    schedule: &[ScheduledSurgery],
) -> Result<ReductionLedger, PipelineError> {
    let schedule_err = |step: usize, reason: String| PipelineError::Schedule { step, reason };
    let mut left: Vec<&ConfiguredTorus> = report.tori.iter().collect();
    let mut current = report.r.clone();
    let mut steps = Vec::with_capacity(schedule.len());
    for (i, s) in schedule.iter().enumerate() {
        let pos = left
            .iter()
            .position(|t| t.label == s.torus)
            .ok_or_else(|| schedule_err(i + 1, format!("no unsurgered torus {}", s.torus)))?;
        left.remove(pos);
        let site = TorusSite {
            label: s.torus.clone(),
            zero_vanishing_cycle: s.zero_vanishing_cycle,
        };
        current = trivializing_surgery(&current, &site, 1).map_err(|e| schedule_err(i + 1, e.to_string()))?;
        if current != report.r {
            return Err(assertion(&format!("reduction step {}", i + 1), "record differs from R"));
        }
        steps.push(ReductionStep {
            torus: s.torus.clone(),
            manifold: current.clone(),
        });
    }
    let [last] = left[..] else {
        return Err(schedule_err(
            schedule.len(),
            format!("{} tori remain, expected one", left.len()),
        ));
    };
    if steps.is_empty() {
        return Err(schedule_err(0, "empty schedule".into()));
    }
    let partner_done = report
        .tori
        .iter()
        .any(|t| t.bing_pair == last.bing_pair && t.label != last.label);
    let pair = TorusConfiguration {
        kind: ConfigurationKind::BingPair,
        ambient: last.component.clone(),
    };
    let remaining_configuration = if partner_done {
        bing_surgery_step(&pair, BingComponent::First)?
    } else {
        pair
    };
    Ok(ReductionLedger {
        steps,
        remaining: TorusSite {
            label: last.label.clone(),
            zero_vanishing_cycle: false,
        },
        remaining_configuration,
        x: report.x.clone(),
    })
}

/// Everything `run cp2k3` computes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub construction: SixToriReport,
    pub reduction: ReductionLedger,
    pub family: FamilyTable,
}

pub fn run_cp2k3(family_range: Vec<i64>, m: i64) -> Result<RunReport, PipelineError> {
    let mut construction = six_tori_construction()?;
    construction.plan.family_range = family_range;
    construction.plan.sw_x0_scale = m;
    let reduction = reduce_to_one_torus(&construction)?;
    if reduction.attempt_next().is_ok() {
        return Err(assertion("reduction", "a sixth trivializing surgery was accepted"));
    }
    let plan = &construction.plan;
    let family = build_family(plan, &construction.x, &plan.sw_x(), m)?;
    if reduction.family(plan, m)? != family {
        return Err(assertion("single-torus family", "differs from the chain family"));
    }
    if !family.all_distinct {
        return Err(assertion("family", "SW invariants are not pairwise distinct"));
    }
    Ok(RunReport {
        construction,
        reduction,
        family,
    })
}

impl RunReport {
    pub fn summary(&self) -> String {
        let c = &self.construction;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "pinwheel: e(CP2) = {}, e(R) = {}, e(Q) = {}",
            c.cp2_pinwheel_euler, c.r_pinwheel_euler, c.q_pinwheel_euler
        );
        let q = &c.q;
        let _ = writeln!(
            s,
            "Q: e = {}, sign = {}, b1 = {}, b+ = {}",
            q.euler,
            q.signature,
            q.b1,
            q.b_plus().unwrap_or_default()
        );
        for m in &c.chain {
            let _ = writeln!(
                s,
                "  {}: b1 = {}, b+ = {}",
                m.name,
                m.b1,
                m.b_plus().unwrap_or_default()
            );
        }
        let _ = writeln!(s, "X: simply connected {}", c.simply_connected);
        let _ = writeln!(
            s,
            "genus: g(-K_R) = {}, g(K_X) = {}",
            c.genus_anticanonical_r, c.genus_canonical_x
        );
        for t in &c.tori {
            let _ = writeln!(s, "  torus {} in {} -> {}", t.label, t.component, t.lagrangian_image);
        }
        for (i, st) in self.reduction.steps.iter().enumerate() {
            let _ = writeln!(s, "reduction {}: {} -> {}", i + 1, st.torus, st.manifold.name);
        }
        let _ = writeln!(
            s,
            "remaining torus: {} ({:?})",
            self.reduction.remaining.label, self.reduction.remaining_configuration.kind
        );
        s
    }
}
