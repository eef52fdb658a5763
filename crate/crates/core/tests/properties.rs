use proptest::prelude::*;

use torsurg::lattice::{pairing, IntersectionLattice, LatticeError};
use torsurg::manifold::standard;
use torsurg::pinwheel::{InterfaceSurface, PinwheelComponent, PinwheelDescription};
use torsurg::pipeline::{self, ReverseEngineeringPlan};
use torsurg::seiberg_witten::{self as swmod, ClassCorrespondence, IntersectionTable};
use torsurg::surgery::torus_surgery;
use torsurg::{FormalClass, FourManifold, HomClass, SwInvariant, TorusSurgerySpec};

fn class(rank: usize, lim: i64) -> impl Strategy<Value = HomClass> {
    proptest::collection::vec(-lim..=lim, rank).prop_map(HomClass::new)
}

fn class_triple(max_rank: usize, lim: i64) -> impl Strategy<Value = (HomClass, HomClass, HomClass)> {
    (1..=max_rank).prop_flat_map(move |r| (class(r, lim), class(r, lim), class(r, lim)))
}

/// Every vector of `[-r, r]^n` with positive first coordinate, lexicographic.
fn box_lex(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (1..=r).map(|a| vec![a]).collect();
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-r..=r).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Plain enumeration: shells of growing max-norm, lexicographic inside.
fn naive_witness(k: &HomClass, bound: i64) -> Option<HomClass> {
    let n = k.rank();
    for r in 1..=bound {
        for v in box_lex(n, r) {
            let t = HomClass::new(v);
            if t.square().unwrap() == 0 && pairing(k, &t).unwrap() == 0 {
                return Some(t);
            }
        }
    }
    None
}

fn pinwheel_component() -> impl Strategy<Value = PinwheelComponent> {
    (-3i64..=3, -3i64..=3, -3i64..=3, 0u32..2).prop_map(|(e, out, inn, g)| PinwheelComponent {
        name: "P".into(),
        euler: e,
        interface_out: InterfaceSurface {
            genus: g,
            euler_number: out,
        },
        interface_in: InterfaceSurface {
            genus: g,
            euler_number: inn,
        },
        handles: None,
    })
}

/// Three components whose seams all sum to `-1`.
fn closing_pinwheel() -> impl Strategy<Value = PinwheelDescription> {
    proptest::collection::vec(pinwheel_component(), 3).prop_map(|mut comps| {
        for i in 0..3 {
            let j = (i + 1) % 3;
            comps[j].interface_in.euler_number = -1 - comps[i].interface_out.euler_number;
        }
        PinwheelDescription::new(comps).unwrap()
    })
}

fn sym2_x() -> (ReverseEngineeringPlan, FourManifold) {
    let plan = pipeline::sym2_plan();
    let x = pipeline::run_chain(&plan).unwrap().pop().unwrap();
    (plan, x)
}

proptest! {
    #[test]
    fn pairing_is_symmetric_and_bilinear((u, v, w) in class_triple(6, 50), s in -20i64..=20) {
        prop_assert_eq!(pairing(&u, &v).unwrap(), pairing(&v, &u).unwrap());
        let uv = u.checked_add(&v).unwrap();
        prop_assert_eq!(pairing(&uv, &w).unwrap(), pairing(&u, &w).unwrap() + pairing(&v, &w).unwrap());
        let su = u.checked_scale(s).unwrap();
        prop_assert_eq!(pairing(&su, &w).unwrap(), s * pairing(&u, &w).unwrap());
        prop_assert_eq!(u.square().unwrap(), pairing(&u, &u).unwrap());
    }

    #[test]
    fn search_matches_naive_enumeration(k in (1usize..=4).prop_flat_map(|r| class(r, 4)), bound in 1i64..=3) {
        let lat = IntersectionLattice::new(k.rank() - 1);
        prop_assert_eq!(lat.find_isotropic_orthogonal(&k, bound).unwrap(), naive_witness(&k, bound));
    }

    #[test]
    fn witnesses_are_isotropic_and_orthogonal(k in (1usize..=10).prop_flat_map(|r| class(r, 5))) {
        let lat = IntersectionLattice::new(k.rank() - 1);
        if let Some(t) = lat.find_isotropic_orthogonal(&k, 8).unwrap() {
            prop_assert!(t.alpha() > 0);
            prop_assert_eq!(t.square().unwrap(), 0);
            prop_assert_eq!(pairing(&k, &t).unwrap(), 0);
            prop_assert!(t.coeffs().iter().all(|c| c.abs() <= 8));
        }
    }

    #[test]
    fn positive_square_is_obstructed(
        betas in (0usize..=8).prop_flat_map(|b| proptest::collection::vec(-5i64..=5, b)),
        extra in 0i64..3,
        sign in prop_oneof![Just(1i64), Just(-1i64)],
    ) {
        let norm: i64 = betas.iter().map(|b| b * b).sum();
        let alpha = (0..).find(|a| a * a > norm).unwrap() + extra;
        let mut coeffs = vec![sign * alpha];
        coeffs.extend(betas);
        let k = HomClass::new(coeffs);
        let lat = IntersectionLattice::new(k.rank() - 1);
        prop_assert!(k.square().unwrap() > 0);
        prop_assert_eq!(lat.essential_torus_obstruction(&k), Ok(true));
        prop_assert_eq!(lat.find_isotropic_orthogonal(&k, 10).unwrap(), None);
    }

    #[test]
    fn obstruction_hypothesis_is_enforced(b in 9usize..=12) {
        let k = HomClass::anticanonical(b);
        prop_assert_eq!(IntersectionLattice::new(b).essential_torus_obstruction(&k), Err(LatticeError::Hypothesis(b)));
    }

    #[test]
    fn blow_up_shifts_e_and_sign(k in 0usize..=8, extra in 0usize..=4) {
        let m = standard::cp2_blown_up(k);
        let b = m.blow_up_times(extra);
        prop_assert_eq!((b.euler, b.signature), (m.euler + extra as i64, m.signature - extra as i64));
        prop_assert!(b.validate().is_ok());
        prop_assert_eq!(b.homotopy_invariants(), standard::cp2_blown_up(k + extra).homotopy_invariants());
    }

    #[test]
    fn nullhomologous_surgery_torsion(p in -9i64..=9, q in -9i64..=9) {
        let spec = TorusSurgerySpec::nullhomologous(p, q);
        prop_assume!(spec.validate().is_ok());
        let r = standard::cp2_blown_up(3);
        let out = torus_surgery(&r, &spec).unwrap();
        match p.abs() {
            0 => prop_assert_eq!(out.b1, 1),
            1 => prop_assert_eq!(out.homotopy_invariants().2, 0),
            a => prop_assert_eq!(out.h1_torsion, vec![a as u64]),
        }
        prop_assert_eq!((out.euler, out.signature), (6, -2));
        prop_assert!(!out.simply_connected && out.lattice.is_none() && out.sw.is_none());
    }

    #[test]
    fn luttinger_chain_steps(g in 3u32..=5) {
        let model = standard::sym2_surface(g);
        let n = model.b1 as usize;
        let plan = ReverseEngineeringPlan {
            target: model.clone(),
            model: model.clone(),
            lagrangian_tori: (0..n).map(|_| TorusSurgerySpec::luttinger(-1)).collect(),
            simply_connected_citation: None,
            ..pipeline::sym2_plan()
        };
        // The target is the model itself, so the chain end is rejected; check the steps directly.
        prop_assert!(pipeline::run_chain(&plan).is_err());
        let mut m = model.clone();
        for i in 1..=n {
            m = torus_surgery(&m, &plan.lagrangian_tori[i - 1]).unwrap();
            prop_assert_eq!(m.b1, model.b1 - i as u32);
            prop_assert_eq!(m.b_plus().unwrap(), model.b_plus().unwrap() - i as u32);
            prop_assert_eq!((m.euler, m.signature), (model.euler, model.signature));
        }
    }

    #[test]
    fn family_is_pairwise_distinct(m in (-9i64..=9).prop_filter("nonzero", |m| *m != 0), start in 1i64..=5, len in 0usize..=12) {
        let (mut plan, x) = sym2_x();
        plan.family_range = (start..start + len as i64).collect();
        let t = pipeline::build_family(&plan, &x, &plan.sw_x(), m).unwrap();
        prop_assert_eq!(t.rows.len(), len);
        prop_assert!(t.all_distinct);
        prop_assert!(t.rows.iter().all(|r| r.distinct));
    }

    #[test]
    fn gluing_formula_is_affine_in_n(a in -6i64..=6, m in -6i64..=6, n in -20i64..=20) {
        let k = FormalClass::symbol("K");
        let t0 = FormalClass::symbol("T0");
        let sw_x = SwInvariant::symmetric_pair(&k, a).unwrap();
        prop_assume!(m != 0);
        let sw_x0 = SwInvariant::symmetric_pair(&k, m).unwrap();
        let corr = ClassCorrespondence::shared(IntersectionTable::new().with("K", "T0", 0).with("T0", "T0", 0));
        let f = |n| swmod::mms_combine(&sw_x, &sw_x0, &t0, n, &corr).unwrap();
        let (c0, c1, cn) = (f(0).get(&k), f(1).get(&k), f(n).get(&k));
        prop_assert_eq!(c0, a);
        prop_assert_eq!(cn - c0, n * (c1 - c0));
        prop_assert_eq!(f(n), swmod::mms_combine_single_term(&sw_x, &sw_x0, &t0, n, &corr).unwrap());
    }

    #[test]
    fn formal_classes_round_trip(coeffs in proptest::collection::vec(-30i64..=30, 4), syms in proptest::collection::vec(-3i64..=3, 2)) {
        let mut s = String::new();
        for (i, c) in coeffs.iter().enumerate() {
            let name = if i == 0 { "h".to_string() } else { format!("e{i}") };
            s.push_str(&format!("{c:+}*{name}"));
        }
        s.push_str(&format!("{:+}K{:+}T0", syms[0], syms[1]));
        let parsed: FormalClass = s.parse().unwrap();
        let again: FormalClass = parsed.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &again);
        prop_assert_eq!(parsed.coeff("K"), syms[0]);
        prop_assert_eq!(parsed.coeff("e2"), coeffs[2]);
    }

    #[test]
    fn sw_json_round_trip(terms in proptest::collection::vec((-4i64..=4, -4i64..=4, -9i64..=9), 0..6)) {
        let sw = SwInvariant::from_terms(terms.into_iter().map(|(a, b, v)| {
            let c: FormalClass = format!("{a}*K{b:+}*T0").parse().unwrap_or_else(|_| FormalClass::zero());
            (c, v)
        })).unwrap();
        let json = serde_json::to_string(&sw).unwrap();
        prop_assert_eq!(serde_json::from_str::<SwInvariant>(&json).unwrap(), sw);
    }

    #[test]
    fn assembly_is_rotation_invariant(p in closing_pinwheel(), by in 0usize..6) {
        let a = p.assemble().unwrap();
        prop_assert_eq!(a.euler, p.components().iter().map(|c| c.euler).sum::<i64>());
        prop_assert_eq!(p.rotated(by).assemble().unwrap().euler, a.euler);
    }

    #[test]
    fn handle_trade_conserves_chi(from in 0usize..3, rounds in 1usize..4) {
        let p = PinwheelDescription::cp2();
        let total = |d: &PinwheelDescription| d.components().iter().map(|c| c.euler).sum::<i64>();
        let traded = p.handle_trade(from, (from + 1) % 3).unwrap();
        prop_assert_eq!(total(&traded), total(&p));
        let mut q = p.clone();
        for _ in 0..rounds {
            q = q.trade_full_cycle().unwrap();
        }
        prop_assert!(q.components().iter().zip(p.components()).all(|(a, b)| a.euler == b.euler));
        prop_assert_eq!(q.assemble().unwrap().euler, 3);
    }
}

#[test]
fn reduction_intermediates_equal_r() {
    let report = pipeline::six_tori_construction().unwrap();
    let ledger = pipeline::reduce_to_one_torus(&report).unwrap();
    let r = standard::cp2_blown_up(3);
    assert!(ledger.steps.iter().all(|s| s.manifold == r));
}

#[test]
fn six_tori_and_sym2_agree() {
    let report = pipeline::six_tori_construction().unwrap();
    let (_, x) = sym2_x();
    assert!(pipeline::same_invariants(&report.x, &x));
}
