//! Property tests over randomly generated simplicial sets and categories.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use hdcat::constructions::{
    boundary_complex, horn_complex, iso_check, skeleton, standard_complex, subcomplex, Category, Nerve, Product,
    Pushout, RelCylinder, VertexComplex,
};
use hdcat::io::{category_from_cat, category_to_cat, sset_from_ssx, sset_to_ssx};
use hdcat::solver::lifting::{has_rlp, is_quasicategory_up_to, pi0, QCat};
use hdcat::solver::{enumerate_maps, extend_map, is_homotopic_rel, ExtensionProblem, Mode, DEFAULT_BUDGET};
use hdcat::truncation::universal::{idempotence_verify, theta_iso_verify, tower_verify};
use hdcat::truncation::{alpha_data, alpha_verify, h_d, hom_right};
use hdcat::{SMap, SSet, Simplex};

const B: u64 = DEFAULT_BUDGET;

/// A subcomplex of `Δⁿ` generated by a few vertex sets.
fn arb_complex(max_n: usize) -> impl Strategy<Value = VertexComplex> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::btree_set(0..=n, 1..=n + 1), 1..4)))
        .prop_map(|(n, gens)| VertexComplex::new(n, move |s| gens.iter().any(|g| s.iter().all(|v| g.contains(v)))))
}

/// Small categories: posets, cyclic groups and products of two of them.
fn arb_category() -> impl Strategy<Value = Category> {
    let poset = (1usize..=4).prop_flat_map(|k| {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let len = pairs.len();
        (Just(k), Just(pairs), prop::collection::vec(any::<bool>(), len))
    });
    let poset = poset.prop_map(|(k, pairs, keep)| {
        let names: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
        let less: Vec<(String, String)> = pairs
            .iter()
            .zip(&keep)
            .filter(|(_, &b)| b)
            .map(|(&(i, j), _)| (names[i].clone(), names[j].clone()))
            .collect();
        Category::poset(names, &less).expect("pairs i < j are antisymmetric")
    });
    let group = (1usize..=3).prop_map(|n| {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        Category::group(names, move |a, b| (a + b) % n).expect("cyclic group")
    });
    let single = prop_oneof![poset, group];
    prop_oneof![
        3 => single.clone(),
        1 => (single.clone(), single).prop_filter_map("small products", |(a, b)| {
            (a.morphism_count() * b.morphism_count() <= 12).then(|| a.product(&b))
        }),
    ]
}

/// A random subcomplex of `x`, with its inclusion.
fn sub_of(x: &Arc<SSet>, picks: &[usize]) -> (Arc<SSet>, SMap) {
    let all: Vec<Simplex> = x.all_nondegenerate().collect();
    let gens: Vec<Simplex> = picks.iter().map(|&i| all[i % all.len()]).collect();
    subcomplex(x, &gens)
}

fn nerve(c: Category, cap: usize) -> Nerve {
    Nerve::new(&Arc::new(c), cap)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn face_identities_and_normal_forms(vc in arb_complex(4), picks in prop::collection::vec(any::<usize>(), 0..3)) {
        let x = vc.sset();
        x.validate().unwrap();
        x.check_all_identities(4).unwrap();
        if !picks.is_empty() {
            let (_, incl) = sub_of(x, &picks);
            let q = hdcat::constructions::quotient(&incl).unwrap();
            q.sset().check_all_identities(4).unwrap();
        }
    }

    #[test]
    fn operators_produce_their_normal_form(vc in arb_complex(3), pick in any::<usize>(), extra in 0usize..3, cuts in any::<u32>()) {
        let x = vc.sset();
        let all: Vec<Simplex> = x.all_nondegenerate().collect();
        let s = all[pick % all.len()];
        let k = s.dim();
        let n = k + extra;
        // a monotone surjection [n] → [k] from a choice of k cut points among n
        let positions: Vec<usize> = (0..n).filter(|p| cuts & (1 << p) != 0).take(k).collect();
        prop_assume!(positions.len() == k);
        let mut eta = vec![0];
        for p in 0..n {
            let last = *eta.last().unwrap();
            eta.push(if positions.contains(&p) { last + 1 } else { last });
        }
        let t = x.apply(&eta, s);
        prop_assert_eq!(t.surjection(), eta);
        prop_assert_eq!(t.base(), s);
        prop_assert_eq!(Simplex::from_degeneracies(n, &t.degeneracies(), s.base_id()).unwrap(), t);
    }

    #[test]
    fn products_commute_up_to_isomorphism(a in arb_complex(2), b in arb_complex(2)) {
        let ab = Product::new(a.sset(), b.sset(), 3);
        let ba = Product::new(b.sset(), a.sset(), 3);
        prop_assert!(iso_check(ab.sset(), ba.sset(), 3, B).unwrap().is_some());
    }

    #[test]
    fn pushout_legs_commute(vc in arb_complex(3), picks in prop::collection::vec(any::<usize>(), 1..3)) {
        let b = vc.sset();
        let (a, incl) = sub_of(b, &picks);
        let point = Arc::new(SSet::point());
        for glue in [SMap::to_point(&a, &point), SMap::identity(&a), incl.clone()] {
            let p = Pushout::new(&incl, &glue).unwrap();
            prop_assert_eq!(incl.then(p.leg_b()), glue.then(p.leg_c()));
            p.sset().validate().unwrap();
        }
    }

    #[test]
    fn cylinder_on_two_points_is_a_double(vc in arb_complex(2), picks in prop::collection::vec(any::<usize>(), 1..3)) {
        let b = vc.sset();
        let (_, incl) = sub_of(b, &picks);
        let cyl = RelCylinder::new(&incl, boundary_complex(1).sset()).unwrap();
        let double = Pushout::new(&incl, &incl).unwrap();
        prop_assert!(iso_check(cyl.sset(), double.sset(), 3, B).unwrap().is_some());
    }

    #[test]
    fn skeleta_compose_to_the_smaller(vc in arb_complex(4), d in -1isize..4, e in -1isize..4) {
        let x = vc.sset();
        let (inner, _) = skeleton(x, e);
        let (twice, _) = skeleton(&inner, d);
        let (once, _) = skeleton(x, d.min(e));
        prop_assert_eq!(&*twice, &*once);
        prop_assert_eq!(twice.names(0), once.names(0));
    }

    #[test]
    fn ssx_and_cat_round_trip(vc in arb_complex(4), c in arb_category()) {
        let text = sset_to_ssx(vc.sset());
        let back = sset_from_ssx(&text).unwrap();
        prop_assert_eq!(&back, &**vc.sset());
        prop_assert_eq!(sset_to_ssx(&back), text);
        let text = category_to_cat(&c);
        let back = category_from_cat(&text).unwrap();
        prop_assert_eq!(category_to_cat(&back), text);
        prop_assert_eq!(back, c);
    }

    #[test]
    fn map_enumeration_is_canonical(a in arb_complex(2), b in arb_complex(3)) {
        let first = enumerate_maps(a.sset(), b.sset(), B).unwrap();
        let again = enumerate_maps(a.sset(), b.sset(), B).unwrap();
        prop_assert_eq!(&first, &again);
        let mut sorted: Vec<Vec<Simplex>> = first.iter().map(|f| f.images().to_vec()).collect();
        sorted.sort();
        let listed: Vec<Vec<Simplex>> = first.iter().map(|f| f.images().to_vec()).collect();
        prop_assert_eq!(listed, sorted);
    }

    #[test]
    fn lifting_agrees_with_extension(vc in arb_complex(3), i in 0usize..3) {
        let x = vc.sset();
        let horn = horn_complex(2, i).unwrap();
        let simplex = standard_complex(2);
        let incl = horn.inclusion_into(&simplex).unwrap();
        let point = Arc::new(SSet::point());
        let p = SMap::to_point(x, &point);
        let v = SMap::to_point(simplex.sset(), &point);
        for u in enumerate_maps(horn.sset(), x, B).unwrap() {
            let lifts = has_rlp(&p, &incl, &u, &v, B).unwrap();
            let problem = ExtensionProblem::new(incl.clone(), u.clone()).unwrap();
            let ext = extend_map(&problem, Mode::First).unwrap();
            prop_assert_eq!(lifts, !ext.is_empty());
        }
    }

    #[test]
    fn nerves_have_unique_inner_fillers(c in arb_category()) {
        let n = nerve(c, 4);
        let x = n.sset();
        prop_assert!(is_quasicategory_up_to(x, 3, B).unwrap());
        for (dim, i) in [(2, 1), (3, 1), (3, 2)] {
            let horn = horn_complex(dim, i).unwrap();
            let incl = horn.inclusion_into(&standard_complex(dim)).unwrap();
            for u in enumerate_maps(horn.sset(), x, B).unwrap() {
                let problem = ExtensionProblem::new(incl.clone(), u).unwrap();
                prop_assert_eq!(extend_map(&problem, Mode::All).unwrap().len(), 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn homotopy_rel_boundary_is_an_equivalence(c in arb_category(), picks in prop::collection::vec(any::<usize>(), 3)) {
        let n = nerve(c, 4);
        let q = QCat::nerve(&n);
        let edges = n.sset().simplices(1);
        let d1 = standard_complex(1);
        let incl = boundary_complex(1).inclusion_into(&d1).unwrap();
        let maps: Vec<SMap> = picks
            .iter()
            .map(|&k| SMap::new(d1.sset().clone(), n.sset().clone(), {
                let e = edges[k % edges.len()];
                d1.sset().all_nondegenerate().map(|s| match s.dim() {
                    0 => n.sset().vertex(e, s.base_id()),
                    _ => e,
                }).collect()
            }).unwrap())
            .collect();
        let rel = |f: &SMap, g: &SMap| -> bool {
            f.restrict(&incl) == g.restrict(&incl) && is_homotopic_rel(&incl, f, g, &q, B).unwrap().is_some()
        };
        for f in &maps {
            prop_assert!(rel(f, f));
            for g in &maps {
                prop_assert_eq!(rel(f, g), rel(g, f));
                for h in &maps {
                    if rel(f, g) && rel(g, h) {
                        prop_assert!(rel(f, h));
                    }
                }
            }
        }
    }

    #[test]
    fn theta_is_surjective_and_detects_d_categories(c in arb_category(), d in 0isize..=2) {
        // idempotence and the tower certify h_d C, which needs m ≥ d + 2
        let m = (d as usize + 2).max(3);
        let n = nerve(c, m + 2);
        let q = QCat::nerve(&n);
        let h = h_d(&q, d, m, B).unwrap();
        let hit: BTreeSet<Simplex> = q.sset().nondegenerate(0).map(|v| h.theta(v).unwrap()).collect();
        prop_assert_eq!(hit.len(), h.sset().count(0));
        prop_assert!(theta_iso_verify(&q, d, m, B).unwrap().passed());
        prop_assert!(idempotence_verify(&q, d, m, B).unwrap().passed());
        for e in -1..=d {
            prop_assert!(tower_verify(&q, e, d, m, B).unwrap().passed());
        }
    }

    #[test]
    fn alpha_is_an_isomorphism_and_theta_is_pi0_surjective(c in arb_category(), d in 1isize..=2, x in any::<usize>(), y in any::<usize>()) {
        let n = nerve(c, 5);
        let q = QCat::nerve(&n);
        let k = q.sset().count(0);
        let (vx, vy) = (Simplex::nondegenerate(0, x % k), Simplex::nondegenerate(0, y % k));
        let r = alpha_verify(&q, vx, vy, d, 2, B).unwrap();
        prop_assert!(r.passed(), "{:?}", r);

        let data = alpha_data(&q, vx, vy, d, 2, B).unwrap();
        let left = data.left.sset();
        let components = pi0(left);
        let component_of = |v: Simplex| components.iter().position(|c| c.contains(&v)).unwrap();
        let mut image = BTreeSet::new();
        let mut by_source = std::collections::BTreeMap::new();
        let source_components = pi0(data.mapping.sset());
        for (i, comp) in source_components.iter().enumerate() {
            for &v in comp {
                let b = data.left.from_ambient(data.truncation.theta(data.mapping.ambient_simplex(v)).unwrap()).unwrap();
                image.insert(component_of(b));
                by_source.insert(i, component_of(b));
            }
        }
        prop_assert_eq!(image.len(), components.len());
        // for d ≥ 1 distinct components stay distinct
        let targets: BTreeSet<usize> = by_source.values().copied().collect();
        prop_assert_eq!(targets.len(), source_components.len());
    }

    #[test]
    fn truncation_commutes_with_products_of_mapping_spaces(c in arb_category(), e in arb_category(), k in 0isize..=1) {
        let (n1, n2) = (nerve(c, 5), nerve(e, 5));
        let v = Simplex::nondegenerate(0, 0);
        let (m1, m2) = (hom_right(n1.sset(), v, v, 4).unwrap(), hom_right(n2.sset(), v, v, 4).unwrap());
        let certify = |x: &Arc<SSet>| QCat::certify(x, 3, B).unwrap();
        let prod = Product::new(m1.sset(), m2.sset(), 4);
        let h_prod = h_d(&certify(prod.sset()), k, 2, B).unwrap();
        let (h1, h2) = (h_d(&certify(m1.sset()), k, 2, B).unwrap(), h_d(&certify(m2.sset()), k, 2, B).unwrap());
        let prod_h = Product::new(h1.sset(), h2.sset(), 2);
        prop_assert!(iso_check(h_prod.sset(), prod_h.sset(), 2, B).unwrap().is_some());
    }
}
