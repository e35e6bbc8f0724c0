//! Homotopies relative to a subcomplex and the bracket sets `[A, B, C; X]`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::constructions::cones::RelCylinder;
use crate::constructions::standard::{boundary, standard};
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::lifting::{equivalence_edges, Bound, QCat};
use crate::solver::search::{Mode, Solver};

/// A homotopy rel `A`: a map `B ⋊_A Δ¹ → X`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub map: SMap,
}

/// Everything needed to decide homotopy rel `A` for maps `B → X`.
///
/// Besides extending `f ∪ g` to `B ⋊_A Δ¹`, every vertex of `B` outside `A`
/// must travel along an equivalence of `X`: a homotopy rel `A` is an
/// equivalence in the fibre of `X^B → X^A`, and natural transformations
/// between diagrams in a quasi-category are equivalences exactly when all
/// their components are.
pub struct HomotopyContext {
    incl: SMap,
    cyl: RelCylinder,
    ends: RelCylinder,
    ends_incl: SMap,
    solver: Solver,
    vertical: Vec<usize>,
    equivalences: HashSet<Simplex>,
    /// Edges of `B` outside `A` with both ends in `A`.
    pinned: Vec<Simplex>,
    /// Classes of edges of `X` under the relation spanned by 2-simplices
    /// with a degenerate outer face.
    edge_class: HashMap<Simplex, usize>,
    bound: Bound,
}

impl HomotopyContext {
    pub fn new(incl: &SMap, x: &QCat, budget: u64) -> Result<HomotopyContext> {
        if !incl.is_injective() {
            return Err(Error::Argument("homotopy rel A needs an inclusion A ⊆ B".into()));
        }
        let d1 = Arc::new(standard(1));
        let b1 = Arc::new(boundary(1));
        let cyl = RelCylinder::new(incl, &d1)?;
        let ends = RelCylinder::new(incl, &b1)?;
        let end_map = SMap::new_unchecked(b1.clone(), d1.clone(), b1.all_nondegenerate().collect());
        let ends_incl = ends.induced_by_d(&cyl, &end_map);
        let need = cyl.sset().top_dim().unwrap_or(0) + 1;
        x.require(need.max(2), "homotopy rel A")?;
        let image_a: HashSet<Simplex> = incl.images().iter().copied().collect();
        let edge = Simplex::nondegenerate(1, 0);
        let vertical: Vec<usize> = incl
            .target()
            .nondegenerate(0)
            .filter(|v| !image_a.contains(v))
            .map(|v| cyl.sset().flat_index(cyl.pair(incl.target().degen(0, v), edge)))
            .collect();
        let equivalences = if vertical.is_empty() {
            HashSet::new()
        } else {
            equivalence_edges(x.sset(), budget)?
        };
        let b = incl.target();
        let pinned: Vec<Simplex> = b
            .nondegenerate(1)
            .filter(|&e| !image_a.contains(&e) && b.faces_of(e).iter().all(|v| image_a.contains(v)))
            .collect();
        let edge_class = if pinned.is_empty() {
            HashMap::new()
        } else {
            edge_classes(x.sset())
        };
        Ok(HomotopyContext {
            incl: incl.clone(),
            cyl,
            ends,
            ends_incl,
            solver: Solver::new(x.sset(), budget),
            vertical,
            equivalences,
            pinned,
            edge_class,
            bound: x.bound(),
        })
    }

    pub fn cylinder(&self) -> &RelCylinder {
        &self.cyl
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    pub fn solver(&self) -> &Solver {
        &self.solver
    }

    /// A necessary condition for homotopy rel `A`: the restriction to `A`
    /// and, for each edge of `B` pinned at both ends by `A`, the class of
    /// its image.  A homotopy restricts on such an edge to a square with
    /// degenerate vertical sides, whose two triangles relate the images.
    pub fn invariant(&self, f: &SMap) -> (Vec<Simplex>, Vec<usize>) {
        let restriction = self.incl.images().iter().map(|&s| f.image(s)).collect();
        let classes = self.pinned.iter().map(|&e| self.edge_class[&f.image(e)]).collect();
        (restriction, classes)
    }

    /// `f ∪ g: B ⋊_A ∂Δ¹ → X`.
    pub fn union(&self, f: &SMap, g: &SMap) -> Result<SMap> {
        for a in self.incl.source().all_nondegenerate() {
            let b = self.incl.image(a);
            if f.image(b) != g.image(b) {
                return Err(Error::Argument("maps do not agree on A".into()));
            }
        }
        let x = self.solver.target();
        let images = self
            .ends
            .sset()
            .all_nondegenerate()
            .map(|s| match self.ends.split(s) {
                Err(a) => f.eval(self.incl.eval(a)),
                Ok((b, e)) => {
                    if e.base_id() == 0 {
                        f.eval(b)
                    } else {
                        g.eval(b)
                    }
                }
            })
            .collect();
        Ok(SMap::new_unchecked(self.ends.sset().clone(), x.clone(), images))
    }

    /// A homotopy rel `A` from `f` to `g`, if one exists.
    pub fn homotopy(&self, f: &SMap, g: &SMap) -> Result<Option<Homotopy>> {
        let union = self.union(f, g)?;
        if self.invariant(f) != self.invariant(g) {
            return Ok(None);
        }
        let cyl = self.cyl.sset();
        let mut fixed: Vec<Option<Simplex>> = vec![None; cyl.flat_len()];
        for s in self.ends.sset().all_nondegenerate() {
            fixed[cyl.flat_index(self.ends_incl.image(s))] = Some(union.image(s));
        }
        let vertical: HashSet<usize> = self.vertical.iter().copied().collect();
        let filter = |s: Simplex, c: Simplex| {
            s.dim() != 1 || !vertical.contains(&cyl.flat_index(s)) || self.equivalences.contains(&c)
        };
        let found = self.solver.solutions(cyl, &fixed, Some(&filter), Mode::First)?;
        Ok(found.into_iter().next().map(|im| Homotopy {
            map: SMap::new_unchecked(cyl.clone(), self.solver.target().clone(), im),
        }))
    }
}

fn edge_classes(x: &Arc<crate::sset::SSet>) -> HashMap<Simplex, usize> {
    let edges = x.simplices(1);
    let index: HashMap<Simplex, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    if x.knows(2) {
        for s in x.simplices(2) {
            let f: Vec<Simplex> = (0..3).map(|i| x.face(i, s)).collect();
            let pair = if f[2].is_degenerate() {
                Some((f[0], f[1]))
            } else if f[0].is_degenerate() {
                Some((f[1], f[2]))
            } else {
                None
            };
            if let Some((u, v)) = pair {
                let (a, b) = (root(&mut parent, index[&u]), root(&mut parent, index[&v]));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, root(&mut parent, i)))
        .collect()
}

/// Whether `f, g: B → X` are homotopic rel `A` (with a witness).
pub fn is_homotopic_rel(incl: &SMap, f: &SMap, g: &SMap, x: &QCat, budget: u64) -> Result<Option<Homotopy>> {
    HomotopyContext::new(incl, x, budget)?.homotopy(f, g)
}

/// The set `[A, B, C; X]`: maps `B → X` extending to `C`, modulo homotopy
/// rel `A`.
#[derive(Clone, Debug)]
pub struct HClassSet {
    /// Canonical representatives (lexicographically least member).
    pub classes: Vec<SMap>,
    /// Every extendable map with its class.
    pub members: Vec<(SMap, usize)>,
    /// For each non-representative member, a homotopy from its
    /// representative.
    pub witnesses: Vec<(usize, Homotopy)>,
    pub bound: Bound,
    lookup: HashMap<Vec<Simplex>, usize>,
}

/// Summary of an [`HClassSet`] for reports.
#[derive(Clone, Debug, Serialize)]
pub struct HClassSummary {
    pub classes: usize,
    pub members: usize,
    pub bound: Bound,
}

impl HClassSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The class of a map `B → X`, if it extends to `C`.
    pub fn class_of(&self, f: &SMap) -> Option<usize> {
        self.lookup.get(f.images()).map(|&m| self.members[m].1)
    }

    pub fn class_of_images(&self, images: &[Simplex]) -> Option<usize> {
        self.lookup.get(images).map(|&m| self.members[m].1)
    }

    pub fn summary(&self) -> HClassSummary {
        HClassSummary {
            classes: self.classes.len(),
            members: self.members.len(),
            bound: self.bound,
        }
    }
}

/// Computes `[A, B, C; X]` for inclusions `ab: A → B` and `bc: B → C`.
pub fn homotopy_classes(ab: &SMap, bc: &SMap, x: &QCat, budget: u64) -> Result<HClassSet> {
    let ctx = HomotopyContext::new(ab, x, budget)?;
    homotopy_classes_in(&ctx, bc)
}

/// [`homotopy_classes`] with a prepared context.
pub fn homotopy_classes_in(ctx: &HomotopyContext, bc: &SMap) -> Result<HClassSet> {
    let b = ctx.incl.target().clone();
    let solver = ctx.solver();
    // restrictions of maps `C → X` are exactly the extendable maps `B → X`,
    // and enumerating them is far cheaper than filtering all maps `B → X`
    let c = bc.target();
    let fixed = vec![None; c.flat_len()];
    let mut all = std::collections::BTreeSet::new();
    solver.search(c, &fixed, None, |im| {
        all.insert(bc.images().iter().map(|&s| c.flat_index(s)).map(|i| im[i]).collect::<Vec<_>>());
        std::ops::ControlFlow::Continue(())
    })?;
    let mut members: Vec<(SMap, usize)> = Vec::new();
    let mut classes: Vec<SMap> = Vec::new();
    let mut witnesses = Vec::new();
    let mut by_invariant: HashMap<(Vec<Simplex>, Vec<usize>), Vec<usize>> = HashMap::new();
    let mut lookup = HashMap::new();
    for im in all {
        let f = SMap::new_unchecked(b.clone(), solver.target().clone(), im);
        let group = by_invariant.entry(ctx.invariant(&f)).or_default();
        let mut class = None;
        for &c in group.iter() {
            if let Some(h) = ctx.homotopy(&classes[c], &f)? {
                class = Some(c);
                witnesses.push((members.len(), h));
                break;
            }
        }
        let c = match class {
            Some(c) => c,
            None => {
                classes.push(f.clone());
                group.push(classes.len() - 1);
                classes.len() - 1
            }
        };
        lookup.insert(f.images().to_vec(), members.len());
        members.push((f, c));
    }
    Ok(HClassSet {
        classes,
        members,
        witnesses,
        bound: ctx.bound(),
        lookup,
    })
}

/// The degenerate homotopy `f ≃ f` (projection of the cylinder to `B`).
pub fn constant_homotopy(ctx: &HomotopyContext, f: &SMap) -> SMap {
    let cyl = ctx.cylinder();
    let images = cyl
        .sset()
        .all_nondegenerate()
        .map(|s| match cyl.split(s) {
            Err(a) => f.eval(ctx.incl.eval(a)),
            Ok((b, _)) => f.eval(b),
        })
        .collect();
    SMap::new_unchecked(cyl.sset().clone(), ctx.solver.target().clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::SSet;
    use crate::constructions::nerve::{Category, Nerve};
    use crate::constructions::standard::{boundary_complex, standard_complex, standard_skeleton};
    use crate::solver::search::DEFAULT_BUDGET;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn homotopies_in_bz2() {
        let bz = Nerve::new(&Arc::new(Category::bz2()), 4);
        let x = QCat::nerve(&bz);
        let d1 = standard_complex(1);
        let b1 = boundary_complex(1);
        let incl = b1.inclusion_into(&d1).unwrap();
        let e = SMap::new(d1.sset().clone(), bz.sset().clone(), vec![bz.vertex(0), bz.vertex(0), bz.edge(0)]).unwrap();
        let s = SMap::new(d1.sset().clone(), bz.sset().clone(), vec![bz.vertex(0), bz.vertex(0), bz.edge(1)]).unwrap();
        assert!(is_homotopic_rel(&incl, &e, &e, &x, B).unwrap().is_some());
        assert!(is_homotopic_rel(&incl, &e, &s, &x, B).unwrap().is_none());
        let empty = Arc::new(SSet::empty());
        let none = SMap::new(empty, d1.sset().clone(), vec![]).unwrap();
        // freely, the components (e, σ) give a natural isomorphism e ≅ σ
        assert!(is_homotopic_rel(&none, &e, &s, &x, B).unwrap().is_some());
        let classes = homotopy_classes(&incl, &SMap::identity(d1.sset()), &x, B).unwrap();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn bracket_sets() {
        let d2 = Arc::new(standard(2));
        let x = QCat::certify(&d2, 4, B).unwrap();
        let sk0 = standard_skeleton(1, 0);
        let sk1 = standard_skeleton(1, 1);
        let sk2 = standard_skeleton(1, 2);
        let c = homotopy_classes(
            &sk0.inclusion_into(&sk1).unwrap(),
            &sk1.inclusion_into(&sk2).unwrap(),
            &x,
            B,
        )
        .unwrap();
        assert_eq!(c.len(), 6);
        let pt = standard_complex(0);
        let empty = standard_skeleton(0, -1);
        let c = homotopy_classes(
            &empty.inclusion_into(&pt).unwrap(),
            &SMap::identity(pt.sset()),
            &x,
            B,
        )
        .unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn free_homotopies_need_equivalences() {
        // in Δ¹ the edge 0 → 1 is not invertible, so the two vertex maps
        // Δ⁰ → Δ¹ are not homotopic rel ∅
        let d1 = Arc::new(standard(1));
        let x = QCat::certify(&d1, 4, B).unwrap();
        let pt = standard_complex(0);
        let empty = standard_skeleton(0, -1);
        let c = homotopy_classes(&empty.inclusion_into(&pt).unwrap(), &SMap::identity(pt.sset()), &x, B).unwrap();
        assert_eq!(c.len(), 2);
        let g = Nerve::new(&Arc::new(Category::iso_groupoid()), 4);
        let x = QCat::nerve(&g);
        let c = homotopy_classes(&empty.inclusion_into(&pt).unwrap(), &SMap::identity(pt.sset()), &x, B).unwrap();
        assert_eq!(c.len(), 1);
    }
}
