//! Horn filling, lifting properties and equivalences.

use std::cell::RefCell;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::constructions::nerve::Nerve;
use crate::constructions::standard::{horn_complex, standard_complex};
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::search::{fixed_from, Solver};
use crate::sset::SSet;

/// How far a quasi-category has been certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bound {
    /// Certified by construction (nerves of categories).
    Exact,
    /// Inner horns checked exhaustively through this dimension.
    UpTo(usize),
}

impl Bound {
    pub fn covers(&self, m: usize) -> bool {
        match self {
            Bound::Exact => true,
            Bound::UpTo(b) => *b >= m,
        }
    }

    pub fn min(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Exact, b) | (b, Bound::Exact) => b,
            (Bound::UpTo(a), Bound::UpTo(b)) => Bound::UpTo(a.min(b)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Bound::Exact => "exact".into(),
            Bound::UpTo(b) => format!("inner horns through dimension {b}"),
        }
    }
}

/// A simplicial set certified to be a quasi-category up to a bound.
#[derive(Clone, Debug)]
pub struct QCat {
    sset: Arc<SSet>,
    bound: Bound,
}

impl QCat {
    /// Checks inner horn filling through dimension `m`.
    pub fn certify(x: &Arc<SSet>, m: usize, budget: u64) -> Result<QCat> {
        match inner_horn_violation(x, m, budget)? {
            None => Ok(QCat {
                sset: x.clone(),
                bound: Bound::UpTo(m),
            }),
            Some(w) => Err(Error::Validation(format!(
                "not a quasi-category: a map Λ^{}_{} has no filler",
                w.n, w.i
            ))),
        }
    }

    pub fn nerve(n: &Nerve) -> QCat {
        QCat {
            sset: n.sset().clone(),
            bound: Bound::Exact,
        }
    }

    /// Trusts the caller (used for objects that are quasi-categories by
    /// construction, such as nerves presented through other means).
    pub fn by_construction(x: &Arc<SSet>) -> QCat {
        QCat {
            sset: x.clone(),
            bound: Bound::Exact,
        }
    }

    pub fn sset(&self) -> &Arc<SSet> {
        &self.sset
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    pub fn require(&self, m: usize, what: &str) -> Result<()> {
        if self.bound.covers(m) {
            Ok(())
        } else {
            let b = match self.bound {
                Bound::UpTo(b) => b,
                Bound::Exact => unreachable!(),
            };
            Err(Error::Uncertified {
                what: format!("{what}: quasi-category property"),
                bound: b,
            })
        }
    }
}

/// A horn map without a filler.
#[derive(Clone, Debug)]
pub struct HornWitness {
    pub n: usize,
    pub i: usize,
    pub horn_map: SMap,
}

fn horn_violation(x: &Arc<SSet>, m: usize, budget: u64, inner_only: bool) -> Result<Option<HornWitness>> {
    let solver = Solver::new(x, budget);
    for n in 2..=m {
        let (lo, hi) = if inner_only { (1, n - 1) } else { (0, n) };
        let delta = standard_complex(n);
        for i in lo..=hi {
            let horn = horn_complex(n, i)?;
            let incl = horn.inclusion_into(&delta)?;
            let witness = first_unliftable(&solver, &incl, None, |_| true)?;
            if let Some(h) = witness {
                return Ok(Some(HornWitness {
                    n,
                    i,
                    horn_map: SMap::new_unchecked(horn.sset().clone(), x.clone(), h),
                }));
            }
        }
    }
    Ok(None)
}

/// The first map `U → X` (with `U ⊆ V` given by `incl`) that does not extend
/// to `V`, among those accepted by `accept`.
fn first_unliftable(
    solver: &Solver,
    incl: &SMap,
    horn_fixed: Option<&[Option<Simplex>]>,
    accept: impl Fn(&[Simplex]) -> bool,
) -> Result<Option<Vec<Simplex>>> {
    let u = incl.source();
    let none = vec![None; u.flat_len()];
    let fixed_u = horn_fixed.unwrap_or(&none);
    let err: RefCell<Option<Error>> = RefCell::new(None);
    let mut witness = None;
    solver.search(u, fixed_u, None, |h| {
        if !accept(h) {
            return ControlFlow::Continue(());
        }
        let partial = SMap::new_unchecked(u.clone(), solver.target().clone(), h.to_vec());
        let fixed = fixed_from(incl, &partial);
        match solver.exists(incl.target(), &fixed, None) {
            Ok(true) => ControlFlow::Continue(()),
            Ok(false) => {
                witness = Some(h.to_vec());
                ControlFlow::Break(())
            }
            Err(e) => {
                *err.borrow_mut() = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(witness)
}

/// First inner horn `Λⁿᵢ → X`, `2 ≤ n ≤ m`, without a filler.
pub fn inner_horn_violation(x: &Arc<SSet>, m: usize, budget: u64) -> Result<Option<HornWitness>> {
    horn_violation(x, m, budget, true)
}

pub fn is_quasicategory_up_to(x: &Arc<SSet>, m: usize, budget: u64) -> Result<bool> {
    Ok(inner_horn_violation(x, m, budget)?.is_none())
}

pub fn is_kan_up_to(x: &Arc<SSet>, m: usize, budget: u64) -> Result<bool> {
    Ok(horn_violation(x, m, budget, false)?.is_none())
}

/// Whether `p: C → D` has the right lifting property for the square
/// `u: U → C`, `v: V → D` over `incl: U ⊆ V`.
pub fn has_rlp(p: &SMap, incl: &SMap, u: &SMap, v: &SMap, budget: u64) -> Result<bool> {
    for s in incl.source().all_nondegenerate() {
        if p.eval(u.image(s)) != v.eval(incl.image(s)) {
            return Err(Error::Argument("lifting square does not commute".into()));
        }
    }
    lift_exists(&Solver::new(p.source(), budget), p, incl, u, v)
}

fn lift_exists(solver: &Solver, p: &SMap, incl: &SMap, u: &SMap, v: &SMap) -> Result<bool> {
    let fixed = fixed_from(incl, u);
    let filter = |s: Simplex, c: Simplex| p.eval(c) == v.eval(s);
    solver.exists(incl.target(), &fixed, Some(&filter))
}

/// A lifting problem for `p` against a horn that has no solution.
#[derive(Clone, Debug)]
pub struct LiftWitness {
    pub n: usize,
    pub i: usize,
    pub upper: Vec<Simplex>,
    pub lower: Vec<Simplex>,
}

/// Checks every lifting problem of `p` against the horns `Λⁿᵢ ⊆ Δⁿ`,
/// `2 ≤ n ≤ m`, with `i` drawn from `horns(n)`, whose upper map satisfies
/// `pin` (a fixed-image table on the horn).
fn fibration_violation(
    p: &SMap,
    m: usize,
    budget: u64,
    horns: impl Fn(usize) -> Vec<usize>,
    pin: impl Fn(&SSet, usize) -> Vec<Option<Simplex>>,
) -> Result<Option<LiftWitness>> {
    let c = p.source();
    let d = p.target();
    let upper_solver = Solver::new(c, budget);
    let lower_solver = Solver::new(d, budget);
    for n in 2..=m {
        let delta = standard_complex(n);
        for i in horns(n) {
            let horn = horn_complex(n, i)?;
            let incl = horn.inclusion_into(&delta)?;
            let fixed_h = pin(horn.sset(), n);
            let mut result: Result<Option<LiftWitness>> = Ok(None);
            upper_solver.search(horn.sset(), &fixed_h, None, |h| {
                let upper = SMap::new_unchecked(horn.sset().clone(), c.clone(), h.to_vec());
                let down = upper.then(p);
                let lowers = match lower_solver.extensions(&incl, &down, super::search::Mode::All) {
                    Ok(l) => l,
                    Err(e) => {
                        result = Err(e);
                        return ControlFlow::Break(());
                    }
                };
                for v in lowers {
                    match lift_exists(&upper_solver, p, &incl, &upper, &v) {
                        Ok(true) => {}
                        Ok(false) => {
                            result = Ok(Some(LiftWitness {
                                n,
                                i,
                                upper: h.to_vec(),
                                lower: v.images().to_vec(),
                            }));
                            return ControlFlow::Break(());
                        }
                        Err(e) => {
                            result = Err(e);
                            return ControlFlow::Break(());
                        }
                    }
                }
                ControlFlow::Continue(())
            })?;
            if let Some(w) = result? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

pub fn inner_fibration_violation(p: &SMap, m: usize, budget: u64) -> Result<Option<LiftWitness>> {
    fibration_violation(p, m, budget, |n| (1..n).collect(), |h, _| vec![None; h.flat_len()])
}

pub fn is_inner_fibration_up_to(p: &SMap, m: usize, budget: u64) -> Result<bool> {
    Ok(inner_fibration_violation(p, m, budget)?.is_none())
}

/// Lifting against `Λⁿ₀ ⊆ Δⁿ`, `2 ≤ n ≤ m`, with the edge `01` sent to `e`.
pub fn cocartesian_violation(p: &SMap, e: Simplex, m: usize, budget: u64) -> Result<Option<LiftWitness>> {
    if e.dim() != 1 {
        return Err(Error::Argument("a coCartesian edge must be 1-dimensional".into()));
    }
    let c = p.source().clone();
    fibration_violation(
        p,
        m,
        budget,
        |_| vec![0],
        |h, _| {
            let mut fixed = vec![None; h.flat_len()];
            let e01 = h.lookup("01").expect("horn contains the edge 01");
            let v0 = h.lookup("0").expect("vertex 0");
            let v1 = h.lookup("1").expect("vertex 1");
            fixed[h.flat_index(e01)] = Some(e);
            fixed[h.flat_index(v0)] = Some(c.face(1, e));
            fixed[h.flat_index(v1)] = Some(c.face(0, e));
            fixed
        },
    )
}

pub fn is_cocartesian_edge(p: &SMap, e: Simplex, m: usize, budget: u64) -> Result<bool> {
    Ok(cocartesian_violation(p, e, m, budget)?.is_none())
}

/// Connected components of the vertex set.
pub fn pi0(x: &SSet) -> Vec<Vec<Simplex>> {
    let n = x.count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for e in x.nondegenerate(1) {
        let a = find(&mut parent, x.face(1, e).base_id());
        let b = find(&mut parent, x.face(0, e).base_id());
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut classes: Vec<Vec<Simplex>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(Simplex::nondegenerate(0, v));
    }
    classes
}

/// Whether an edge `e: x → y` has a two-sided inverse up to homotopy: an
/// edge `g: y → x` and 2-simplices witnessing `g ∘ e ≃ id_x` and
/// `e ∘ g ≃ id_y`.  In a quasi-category this is invertibility in `h₁`.
pub fn edge_is_equivalence(x: &Arc<SSet>, e: Simplex, budget: u64) -> Result<bool> {
    if e.is_degenerate() {
        return Ok(true);
    }
    x.require_known(2, "equivalence test")?;
    let solver = Solver::new(x, budget);
    Ok(inverse_witness(&solver, e).is_some())
}

/// An inverse edge of `e` as in [`edge_is_equivalence`].
pub fn inverse_witness(solver: &Solver, e: Simplex) -> Option<Simplex> {
    let x = solver.target();
    let a = x.face(1, e);
    let b = x.face(0, e);
    let ida = x.degen(0, a);
    let idb = x.degen(0, b);
    solver.with_faces(&[a, b]).into_iter().find(|&g| {
        !solver.with_faces(&[g, ida, e]).is_empty() && !solver.with_faces(&[e, idb, g]).is_empty()
    })
}

/// The set of equivalence edges of `x` (degenerate ones included).
pub fn equivalence_edges(x: &Arc<SSet>, budget: u64) -> Result<std::collections::HashSet<Simplex>> {
    x.require_known(2, "equivalence test")?;
    let solver = Solver::new(x, budget);
    Ok(x.simplices(1)
        .into_iter()
        .filter(|&e| e.is_degenerate() || inverse_witness(&solver, e).is_some())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::nerve::{Category, Functor};
    use crate::constructions::standard::{boundary, horn, standard};
    use crate::solver::search::DEFAULT_BUDGET;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn quasi_categories() {
        let bz = Nerve::new(&Arc::new(Category::bz2()), 4);
        assert!(is_quasicategory_up_to(bz.sset(), 4, B).unwrap());
        assert!(is_kan_up_to(bz.sset(), 3, B).unwrap());
        let h = Arc::new(horn(2, 1).unwrap());
        assert!(!is_quasicategory_up_to(&h, 2, B).unwrap());
        let d2 = Arc::new(standard(2));
        assert!(is_quasicategory_up_to(&d2, 3, B).unwrap());
        assert!(!is_kan_up_to(&d2, 2, B).unwrap());
    }

    #[test]
    fn lifting_squares() {
        let d1 = Arc::new(standard(1));
        let pt = Arc::new(standard(0));
        let p = SMap::to_point(&d1, &pt);
        assert!(is_inner_fibration_up_to(&p, 3, B).unwrap());
        let h = horn_complex(2, 1).unwrap();
        let d2 = standard_complex(2);
        let incl = h.inclusion_into(&d2).unwrap();
        let to_pt = SMap::to_point(d2.sset(), &pt);
        // horns are connected, so every square for ∂Δ¹ → Δ⁰ lands in one
        // component and lifts
        let b1 = Arc::new(boundary(1));
        let q = SMap::to_point(&b1, &pt);
        let solver = Solver::new(&b1, B);
        let horn_maps = solver.maps(h.sset()).unwrap();
        assert_eq!(horn_maps.len(), 2);
        for u in horn_maps {
            assert!(has_rlp(&q, &incl, &u, &to_pt, B).unwrap());
        }
        // the horn itself over a point has no filler
        let id = SMap::identity(h.sset());
        let r = SMap::to_point(h.sset(), &pt);
        assert!(!has_rlp(&r, &incl, &id, &to_pt, B).unwrap());
        // trivial inclusion
        let idd = SMap::identity(d2.sset());
        let f = SMap::identity(d2.sset());
        assert!(has_rlp(&to_pt, &idd, &f, &to_pt, B).unwrap());
    }

    #[test]
    fn cocartesian_edges_of_a_projection() {
        let c = Arc::new(Category::ordinal(1));
        let g = Arc::new(Category::iso_groupoid());
        let d = Arc::new(Category::ordinal(1));
        for (second, expect) in [(&g, true), (&d, false)] {
            let prod = Arc::new(c.product(second));
            let n_prod = Nerve::new(&prod, 4);
            let n_c = Nerve::new(&c, 4);
            let m = second.morphism_count();
            let proj = Functor {
                objects: (0..prod.object_count()).map(|o| o / second.object_count()).collect(),
                morphisms: (0..prod.morphism_count()).map(|f| f / m).collect(),
            };
            proj.check(&prod, &c).unwrap();
            let p = n_prod.induced(&n_c, &proj);
            // (f, g) with f = 0<1 and g the non-identity arrow of the second factor
            let f = c.morphism_index("0<1").unwrap();
            let h = (0..m).find(|&h| !second.is_identity(h)).unwrap();
            let e = n_prod.edge(f * m + h);
            assert_eq!(is_cocartesian_edge(&p, e, 3, B).unwrap(), expect);
        }
    }

    #[test]
    fn components_and_equivalences() {
        assert_eq!(pi0(&boundary(1)).len(), 2);
        let bz = Nerve::new(&Arc::new(Category::bz2()), 3);
        assert_eq!(pi0(bz.sset()).len(), 1);
        let sigma = bz.edge(1);
        assert!(edge_is_equivalence(bz.sset(), sigma, B).unwrap());
        let d1 = Arc::new(standard(1));
        assert!(!edge_is_equivalence(&d1, Simplex::nondegenerate(1, 0), B).unwrap());
    }
}
