//! The `d`-homotopy category `h_d C` and the unit `θ_d: C → h_d C`.
//!
//! For `d ≥ 1` the `m`-simplices of `h_d C` are the bracket classes
//! `[sk^{d-1}Δ^m, sk^dΔ^m, sk^{d+1}Δ^m; C]`, with simplicial operators
//! acting by precomposition on representatives.  For `d ≤ 0` the small
//! cases are built directly: a point, the empty set, or the nerve of the
//! poset of isomorphism classes of objects.
//!
//! Every kind answers the same question through [`Truncation::class_of`]:
//! which `n`-simplex of `h_d C` is represented by a map `sk^dΔ^n → C`.

use std::sync::Arc;

use crate::constructions::nerve::{Category, Chain, Nerve};
use crate::constructions::standard::{skeleton, standard_skeleton, VertexComplex};
use crate::degreewise::{self, Degreewise};
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::homotopy::{homotopy_classes_in, HClassSet, HomotopyContext};
use crate::solver::lifting::{Bound, QCat};
use crate::sset::SSet;

/// `h_d C` materialized through `out_dim`, together with `θ_d`.
pub struct Truncation {
    d: isize,
    source: Arc<SSet>,
    bound: Bound,
    out_dim: usize,
    sset: Arc<SSet>,
    kind: Kind,
}

enum Kind {
    Point,
    Empty,
    Poset {
        /// Class of each vertex of `C` (an object of the poset).
        class: Vec<usize>,
        /// Least vertex of each class.
        least: Vec<Simplex>,
        le: Vec<Vec<bool>>,
        nerve: Nerve,
    },
    Bracket {
        levels: Vec<Level>,
        table: Degreewise<usize>,
    },
}

struct Level {
    skel: VertexComplex,
    classes: HClassSet,
}

/// Builds `h_d C` for `d ≥ -2` through dimension `out_dim`.
///
/// For `d ≥ 1`, `C` must be certified through `d + 2` and known through
/// `d + 1`; for `d = 0` it must be certified through 2.
pub fn h_d(c: &QCat, d: isize, out_dim: usize, budget: u64) -> Result<Truncation> {
    let source = c.sset().clone();
    let (kind, sset) = match d {
        _ if d < -2 => return Err(Error::Argument(format!("h_d needs d ≥ -2, got {d}"))),
        -2 => (Kind::Point, Arc::new(SSet::point())),
        -1 if source.is_empty() => (Kind::Empty, Arc::new(SSet::empty())),
        -1 => (Kind::Point, Arc::new(SSet::point())),
        0 => {
            c.require(2, "h_0")?;
            poset_quotient(&source)?
        }
        _ => bracket(c, d as usize, out_dim, budget)?,
    };
    Ok(Truncation {
        d,
        source,
        bound: c.bound(),
        out_dim,
        sset,
        kind,
    })
}

fn poset_quotient(c: &Arc<SSet>) -> Result<(Kind, Arc<SSet>)> {
    let n = c.count(0);
    let mut edge = vec![vec![false; n]; n];
    for (i, row) in edge.iter_mut().enumerate() {
        row[i] = true;
    }
    for e in c.nondegenerate(1) {
        let f = c.faces_of(e);
        edge[f[1].base_id()][f[0].base_id()] = true;
    }
    // inner 2-horn filling makes the edge relation transitive
    let mut class = vec![usize::MAX; n];
    let mut least = Vec::new();
    for v in 0..n {
        if class[v] != usize::MAX {
            continue;
        }
        let k = least.len();
        for w in v..n {
            if edge[v][w] && edge[w][v] {
                class[w] = k;
            }
        }
        least.push(Simplex::nondegenerate(0, v));
    }
    let k = least.len();
    let mut le = vec![vec![false; k]; k];
    for v in 0..n {
        for w in 0..n {
            if edge[v][w] {
                le[class[v]][class[w]] = true;
            }
        }
    }
    let names: Vec<String> = least.iter().map(|&v| c.name(v).to_string()).collect();
    let names = if {
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == names.len()
    } {
        names
    } else {
        (0..k).map(|i| format!("v{i}")).collect()
    };
    let category = Arc::new(Category::from_relation(names, &le));
    let nerve = Nerve::new(&category, k.max(1));
    let sset = nerve.sset().clone();
    Ok((
        Kind::Poset {
            class,
            least,
            le,
            nerve,
        },
        sset,
    ))
}

fn bracket(c: &QCat, d: usize, out_dim: usize, budget: u64) -> Result<(Kind, Arc<SSet>)> {
    let mut levels = Vec::with_capacity(out_dim + 1);
    for m in 0..=out_dim {
        let a = standard_skeleton(m, d as isize - 1);
        let b = standard_skeleton(m, d as isize);
        let cc = standard_skeleton(m, d as isize + 1);
        let ctx = HomotopyContext::new(&a.inclusion_into(&b)?, c, budget)?;
        let classes = homotopy_classes_in(&ctx, &b.inclusion_into(&cc)?)?;
        levels.push(Level { skel: b, classes });
    }
    // face and degeneracy tables on class indices
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut degens: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for n in 1..=out_dim {
        let mut per_class = Vec::with_capacity(levels[n].classes.len());
        for rep in &levels[n].classes.classes {
            let mut row = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let theta: Vec<usize> = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
                let delta = levels[n - 1].skel.induced(&levels[n].skel, &theta)?;
                let images = delta.then(rep).into_images();
                row.push(levels[n - 1].classes.class_of_images(&images).ok_or_else(|| {
                    Error::Validation(format!("face {i} of a degree {n} class does not extend"))
                })?);
            }
            per_class.push(row);
        }
        faces.push(per_class);
        let mut per_class = Vec::with_capacity(levels[n - 1].classes.len());
        for rep in &levels[n - 1].classes.classes {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let theta: Vec<usize> = (0..=n).map(|k| if k <= j { k } else { k - 1 }).collect();
                let sigma = levels[n].skel.induced(&levels[n - 1].skel, &theta)?;
                let images = sigma.then(rep).into_images();
                row.push(levels[n].classes.class_of_images(&images).ok_or_else(|| {
                    Error::Validation(format!("degeneracy {j} of a degree {} class does not extend", n - 1))
                })?);
            }
            per_class.push(row);
        }
        degens.push(per_class);
    }
    let source = c.sset();
    let table = degreewise::build(
        levels.iter().map(|l| (0..l.classes.len()).collect()).collect(),
        |n, i, &k| faces[n][k][i],
        |n, j, &k| degens[n + 1][k][j],
        |n, &k| {
            let rep = &levels[n].classes.classes[k];
            if n == 0 {
                source.name(rep.images()[0]).to_string()
            } else {
                let top: Vec<String> = levels[n]
                    .skel
                    .sset()
                    .nondegenerate(1)
                    .map(|e| source.render(rep.image(e)))
                    .collect();
                format!("[{}]", top.join(","))
            }
        },
        Some(out_dim),
    )?;
    let sset = Arc::new(table.sset.clone());
    Ok((Kind::Bracket { levels, table }, sset))
}

impl Truncation {
    pub fn d(&self) -> isize {
        self.d
    }

    pub fn sset(&self) -> &Arc<SSet> {
        &self.sset
    }

    pub fn source(&self) -> &Arc<SSet> {
        &self.source
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    /// `sk^dΔ^n` (empty for `d < 0`), the domain of representatives.
    pub fn skeleton_complex(&self, n: usize) -> VertexComplex {
        standard_skeleton(n, self.d.clamp(-1, n as isize))
    }

    /// The `n`-simplex of `h_d C` represented by a map `sk^dΔ^n → C`
    /// (given by its images), if that map extends to `sk^{d+1}Δ^n`.
    pub fn class_of(&self, n: usize, images: &[Simplex]) -> Option<Simplex> {
        match &self.kind {
            Kind::Empty => None,
            Kind::Point => Some(crate::sset::precompose_surjection(
                Simplex::nondegenerate(0, 0),
                &vec![0; n + 1],
            )),
            Kind::Poset { class, le, nerve, .. } => {
                let seq: Vec<usize> = images.iter().map(|v| class[v.base_id()]).collect();
                if seq.windows(2).any(|w| !le[w[0]][w[1]]) {
                    return None;
                }
                Some(poset_simplex(nerve, &seq))
            }
            Kind::Bracket { levels, table } => {
                let k = levels.get(n)?.classes.class_of_images(images)?;
                table.simplex(n, &k)
            }
        }
    }

    /// The restriction of `σ: Δ^n → C` to `sk^dΔ^n`.
    pub fn restrict(&self, sigma: Simplex) -> Vec<Simplex> {
        let n = sigma.dim();
        let skel = self.skeleton_complex(n);
        skel.sset()
            .all_nondegenerate()
            .map(|s| self.source.apply(skel.subset(s), sigma))
            .collect()
    }

    /// `θ_d(σ)` for a simplex of `C` of dimension at most `out_dim`.
    pub fn theta(&self, sigma: Simplex) -> Result<Simplex> {
        let n = sigma.dim();
        if n > self.out_dim && matches!(self.kind, Kind::Bracket { .. }) {
            return Err(Error::Truncated {
                what: "h_d".into(),
                needed: n,
                known: self.out_dim,
            });
        }
        self.class_of(n, &self.restrict(sigma))
            .ok_or_else(|| Error::Validation(format!("θ_{} is undefined on a simplex of dimension {n}", self.d)))
    }

    /// `θ_d` on `sk^{out_dim} C` (on `C` itself when nothing is higher).
    pub fn theta_map(&self) -> Result<SMap> {
        let src = if self.source.top_dim().is_none_or(|t| t <= self.out_dim) {
            self.source.clone()
        } else {
            skeleton(&self.source, self.out_dim as isize).0
        };
        let images = src
            .all_nondegenerate()
            .map(|s| self.theta(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(SMap::new_unchecked(src, self.sset.clone(), images))
    }

    /// A representative map `sk^dΔ^n → C` of any simplex of `h_d C`.
    pub fn representative(&self, s: Simplex) -> Vec<Simplex> {
        let n = s.dim();
        let skel = self.skeleton_complex(n);
        match &self.kind {
            Kind::Empty | Kind::Point => Vec::new(),
            Kind::Poset { least, nerve, .. } => {
                let objects = chain_objects(nerve, s);
                skel.sset()
                    .all_nondegenerate()
                    .map(|v| least[objects[skel.subset(v)[0]]])
                    .collect()
            }
            Kind::Bracket { levels, table } => {
                let base = s.base();
                let rep = &levels[base.dim()].classes.classes[*table.key(base)];
                if !s.is_degenerate() {
                    return rep.images().to_vec();
                }
                let collapse = skel
                    .induced(&levels[base.dim()].skel, &s.surjection())
                    .expect("surjections preserve skeleta");
                collapse.then(rep).into_images()
            }
        }
    }

    /// All members of the class of a simplex (bracket kind only), in
    /// canonical order.
    pub fn members(&self, s: Simplex) -> Vec<Vec<Simplex>> {
        match &self.kind {
            Kind::Bracket { levels, .. } => {
                let rep = self.representative(s);
                let classes = &levels[s.dim()].classes;
                let k = classes.class_of_images(&rep).expect("representative");
                classes
                    .members
                    .iter()
                    .filter(|(_, c)| *c == k)
                    .map(|(f, _)| f.images().to_vec())
                    .collect()
            }
            _ => vec![self.representative(s)],
        }
    }

    /// The bracket classes at level `n` (bracket kind only).
    pub fn level(&self, n: usize) -> Option<&HClassSet> {
        match &self.kind {
            Kind::Bracket { levels, .. } => levels.get(n).map(|l| &l.classes),
            _ => None,
        }
    }

    /// `h_d(f): h_d C → h_d C'` for `f: C → C'`, with `target = h_d C'`.
    pub fn induced(&self, f: &SMap, target: &Truncation) -> Result<SMap> {
        if self.d != target.d {
            return Err(Error::Argument("h_d(f) needs both truncations at the same level".into()));
        }
        let images = self
            .sset
            .all_nondegenerate()
            .map(|s| {
                let mapped: Vec<Simplex> = self.representative(s).iter().map(|&x| f.eval(x)).collect();
                target
                    .class_of(s.dim(), &mapped)
                    .ok_or_else(|| Error::Validation("h_d(f) leaves the target".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SMap::new_unchecked(self.sset.clone(), target.sset.clone(), images))
    }
}

/// Objects along a simplex of a poset nerve.
fn chain_objects(nerve: &Nerve, s: Simplex) -> Vec<usize> {
    let chain = nerve.chain(s);
    let cat = nerve.category();
    let mut out = vec![chain.start];
    for &f in &chain.arrows {
        out.push(cat.dst(f));
    }
    out
}

fn poset_simplex(nerve: &Nerve, seq: &[usize]) -> Simplex {
    let cat = nerve.category();
    let arrows = seq
        .windows(2)
        .map(|w| cat.hom(w[0], w[1]).next().expect("relation holds"))
        .collect();
    nerve.simplex(&Chain {
        start: seq[0],
        arrows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::iso::iso_check;
    use crate::constructions::standard::standard;
    use crate::solver::search::DEFAULT_BUDGET;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn low_levels() {
        let empty = QCat::by_construction(&Arc::new(SSet::empty()));
        let d2 = QCat::certify(&Arc::new(standard(2)), 4, B).unwrap();
        assert!(h_d(&empty, -1, 2, B).unwrap().sset().is_empty());
        assert_eq!(h_d(&d2, -1, 2, B).unwrap().sset().counts(), vec![1]);
        assert_eq!(h_d(&empty, -2, 2, B).unwrap().sset().counts(), vec![1]);
        let h0 = h_d(&d2, 0, 2, B).unwrap();
        assert!(h0.theta_map().unwrap().is_isomorphism());
        let bz = Nerve::new(&Arc::new(Category::bz2()), 3);
        let h0 = h_d(&QCat::nerve(&bz), 0, 2, B).unwrap();
        assert_eq!(h0.sset().counts(), vec![1]);
        let g = Nerve::new(&Arc::new(Category::iso_groupoid()), 3);
        assert_eq!(h_d(&QCat::nerve(&g), 0, 2, B).unwrap().sset().counts(), vec![1]);
    }

    #[test]
    fn h1_of_nerves_is_the_nerve() {
        let bz = Nerve::new(&Arc::new(Category::bz2()), 4);
        let h = h_d(&QCat::nerve(&bz), 1, 3, B).unwrap();
        assert_eq!(h.sset().counts(), vec![1, 1, 1, 1]);
        let theta = h.theta_map().unwrap();
        theta.check().unwrap();
        assert!(theta.is_bijective_through(3));
        let d3 = QCat::certify(&Arc::new(standard(3)), 4, B).unwrap();
        let h2 = h_d(&d3, 2, 3, B).unwrap();
        let theta = h2.theta_map().unwrap();
        assert!(theta.is_isomorphism());
        assert!(iso_check(h2.sset(), d3.sset(), 3, B).unwrap().is_some());
    }

    #[test]
    fn theta_zero_is_not_injective_on_bz2() {
        let bz = Nerve::new(&Arc::new(Category::bz2()), 3);
        let h = h_d(&QCat::nerve(&bz), 0, 2, B).unwrap();
        let theta = h.theta_map().unwrap();
        theta.check().unwrap();
        assert!(!theta.is_injective());
    }

    #[test]
    fn functoriality_on_identity() {
        let bz = Nerve::new(&Arc::new(Category::bz2()), 4);
        let q = QCat::nerve(&bz);
        let h = h_d(&q, 1, 2, B).unwrap();
        let id = SMap::identity(bz.sset());
        let hid = h.induced(&id, &h).unwrap();
        assert_eq!(hid.images(), SMap::identity(h.sset()).images());
    }
}
