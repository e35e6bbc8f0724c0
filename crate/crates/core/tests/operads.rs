//! Operads end to end: presentation, truncation, maps and algebras.

use std::ops::ControlFlow;
use std::sync::Arc;

use hdcat::operad::alg::alg_d_category_verify;
use hdcat::operad::mul::one_color_verify;
use hdcat::operad::truncate::{d_operad_violation, truncation_verify, warning_verify};
use hdcat::operad::{check_operad_map, h_d_operad, iso_over_fin, to_colored, ColoredOperad, FinStar, OperadData};
use hdcat::solver::{Solver, DEFAULT_BUDGET};
use hdcat::SMap;

const B: u64 = DEFAULT_BUDGET;

/// One color, one non-identity unary operation `e` with `e ∘ e = e`.
const IDEM: &str = r#"{
  "colors": ["x"],
  "operations": [
    {"inputs": ["x"], "output": "x", "id": "1"},
    {"inputs": ["x"], "output": "x", "id": "e"}
  ],
  "composition": [
    {"outer": "1", "inner": ["1"], "result": "1"},
    {"outer": "1", "inner": ["e"], "result": "e"},
    {"outer": "e", "inner": ["1"], "result": "e"},
    {"outer": "e", "inner": ["e"], "result": "e"}
  ],
  "symmetry": [
    {"op": "1", "perm": [0], "result": "1"},
    {"op": "e", "perm": [0], "result": "e"}
  ]
}"#;

fn standard(arity: usize, cap: usize) -> (Arc<FinStar>, OperadData, OperadData, OperadData) {
    let fin = Arc::new(FinStar::new(arity, cap));
    let comm = OperadData::from_colored("Comm", &ColoredOperad::comm(arity), &fin, B).unwrap();
    let ass = OperadData::from_colored("Ass", &ColoredOperad::ass(arity), &fin, B).unwrap();
    let triv = OperadData::from_colored("Triv", &ColoredOperad::triv(arity), &fin, B).unwrap();
    (fin, comm, ass, triv)
}

/// Every simplicial map `O^⊗ → U^⊗` over `Fin_*`.
fn maps_over_fin(o: &OperadData, u: &OperadData) -> Vec<SMap> {
    let solver = Solver::new(u.total(), B);
    let filter = |s, t| u.proj().eval(t) == o.proj().eval(s);
    let fixed = vec![None; o.total().flat_len()];
    let mut out = Vec::new();
    solver
        .search(o.total(), &fixed, Some(&filter), |im| {
            out.push(SMap::new(o.total().clone(), u.total().clone(), im.to_vec()).unwrap());
            ControlFlow::Continue(())
        })
        .unwrap();
    out
}

#[test]
fn maps_that_break_inert_edges_are_rejected() {
    let fin = Arc::new(FinStar::new(2, 3));
    let idem = OperadData::from_colored("Idem", &ColoredOperad::from_json(IDEM).unwrap(), &fin, B).unwrap();
    assert!(idem.validation().passed(), "{:?}", idem.validation());
    let triv = OperadData::from_colored("Triv", &ColoredOperad::triv(2), &fin, B).unwrap();
    let maps = maps_over_fin(&triv, &idem);
    let verdicts: Vec<bool> = maps
        .iter()
        .map(|f| check_operad_map(f, &triv, &idem, 3, B).unwrap().passed())
        .collect();
    assert_eq!(verdicts.iter().filter(|&&v| v).count(), 1, "only the unit map preserves inerts");
    assert!(verdicts.iter().any(|&v| !v), "some map over Fin_* sends an inert edge to e");
    // Mul(x; x) = {1, e} is discrete with two points
    assert!(d_operad_violation(&idem, 0, B).unwrap().is_some());
    assert!(d_operad_violation(&idem, 1, B).unwrap().is_none());
}

#[test]
fn maps_truncate_along_theta() {
    let (_, comm, _, triv) = standard(2, 3);
    let maps = maps_over_fin(&triv, &comm);
    let f = maps
        .iter()
        .find(|f| check_operad_map(f, &triv, &comm, 3, B).unwrap().passed())
        .expect("the unit Triv → Comm");
    for d in -1..=1 {
        let (ht, hc) = (h_d_operad(&triv, d, B).unwrap(), h_d_operad(&comm, d, B).unwrap());
        let hf = ht.induced(f, &hc).unwrap();
        let r = check_operad_map(&hf, ht.operad(), hc.operad(), 3, B).unwrap();
        assert!(r.passed(), "d={d}: {:?}", r.failures().collect::<Vec<_>>());
        for s in triv.total().all_nondegenerate() {
            assert_eq!(hf.eval(ht.theta().eval(s)), hc.theta().eval(f.eval(s)), "naturality at d={d}");
        }
    }
}

#[test]
fn h0_identifies_objects_of_the_total_category() {
    let (_, comm, _, _) = standard(1, 3);
    let r = warning_verify(&comm, 0, B).unwrap();
    assert_eq!(r.facts["differ"], true, "{r:?}");
    let r = warning_verify(&comm, 1, B).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn h0_of_ass_is_comm_through_arity_three() {
    let (_, comm, ass, _) = standard(3, 2);
    let t = h_d_operad(&ass, 0, B).unwrap();
    assert!(t.operad().validation().passed());
    assert!(iso_over_fin(t.operad(), &comm, B).unwrap().is_some());
    let back = to_colored(t.operad()).unwrap();
    assert_eq!(back.operations.len(), ColoredOperad::comm(3).operations.len());
}

#[test]
fn truncation_fixes_d_operads() {
    let (_, comm, ass, triv) = standard(2, 3);
    for d in 0..=1 {
        for o in [&comm, &triv] {
            let t = h_d_operad(o, d, B).unwrap();
            assert!(iso_over_fin(t.operad(), o, B).unwrap().is_some(), "{} d={d}", o.name());
        }
    }
    let t = h_d_operad(&ass, 1, B).unwrap();
    assert!(iso_over_fin(t.operad(), &ass, B).unwrap().is_some());
}

#[test]
fn two_truncation_revalidates() {
    let (_, comm, ass, _) = standard(2, 4);
    for o in [&comm, &ass] {
        let r = truncation_verify(o, 2, 1_000_000_000).unwrap();
        assert!(r.passed(), "{}: {:?}", o.name(), r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn one_color_mapping_spaces_agree() {
    let (_, comm, ass, triv) = standard(2, 3);
    for o in [&comm, &ass, &triv] {
        for d in 0..=1 {
            let r = one_color_verify(o, d, 3, B).unwrap();
            assert!(r.passed(), "{} d={d}: {:?}", o.name(), r.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn algebras_in_a_one_category() {
    let (_, comm, ass, triv) = standard(2, 3);
    for o in [&triv, &comm] {
        let r = alg_d_category_verify(o, &ass, 1, 3, B).unwrap();
        assert!(r.passed(), "{}: {:?}", o.name(), r.failures().collect::<Vec<_>>());
    }
}
