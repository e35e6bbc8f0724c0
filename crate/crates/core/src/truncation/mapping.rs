//! Right and middle mapping spaces and the comparison `Φ: hom^R → hom^M`.
//!
//! An `n`-simplex of `hom^R_C(X, Y)` is a map `J(Δⁿ) → C` sending the
//! marked points to `(X, Y)`, i.e. an `(n+1)`-simplex of `C` whose front
//! `n`-face is totally degenerate at `X` and whose last vertex is `Y`.  An
//! `n`-simplex of `hom^M_C(X, Y)` is a map `Σ(Δⁿ) → C`, i.e. a map
//! `Δⁿ × Δ¹ → C` sending `Δⁿ × {0}` to `X` and `Δⁿ × {1}` to `Y`.

use std::sync::Arc;

use crate::constructions::product::Product;
use crate::constructions::standard::{standard_complex, VertexComplex};
use crate::degreewise::{self, Degreewise};
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::search::{Mode, Solver};
use crate::sset::{precompose_surjection, SSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MappingKind {
    Right,
    Middle,
}

/// A mapping space materialized through `cap`.
pub struct MappingSpace {
    kind: MappingKind,
    ambient: Arc<SSet>,
    x: Simplex,
    y: Simplex,
    cap: usize,
    sset: Arc<SSet>,
    inner: Inner,
}

enum Inner {
    Right(Degreewise<Simplex>),
    Middle {
        cubes: Vec<VertexComplex>,
        prisms: Vec<Product>,
        table: Degreewise<Vec<Simplex>>,
    },
}

fn degenerate_vertex(v: Simplex, n: usize) -> Simplex {
    precompose_surjection(v, &vec![0; n + 1])
}

/// `hom^R_C(X, Y)` through dimension `cap` (needs `C` through `cap + 1`).
pub fn hom_right(c: &Arc<SSet>, x: Simplex, y: Simplex, cap: usize) -> Result<MappingSpace> {
    hom_right_filtered(c, x, y, cap, &|_| true)
}

/// The sub-complex of `hom^R_C(X, Y)` on simplices accepted by `keep`
/// (which must be closed under faces and degeneracies).
pub fn hom_right_filtered(
    c: &Arc<SSet>,
    x: Simplex,
    y: Simplex,
    cap: usize,
    keep: &dyn Fn(Simplex) -> bool,
) -> Result<MappingSpace> {
    check_vertices(c, x, y)?;
    c.require_known(cap + 1, "right mapping space")?;
    let levels: Vec<Vec<Simplex>> = (0..=cap)
        .map(|n| {
            let front = degenerate_vertex(x, n);
            c.simplices(n + 1)
                .into_iter()
                .filter(|&s| c.vertex(s, n + 1) == y && c.face(n + 1, s) == front && keep(s))
                .collect()
        })
        .collect();
    let table = degreewise::build(
        levels,
        |_, i, &s| c.face(i, s),
        |_, j, &s| c.degen(j, s),
        |_, &s| c.render(s),
        Some(cap),
    )?;
    Ok(MappingSpace {
        kind: MappingKind::Right,
        ambient: c.clone(),
        x,
        y,
        cap,
        sset: Arc::new(table.sset.clone()),
        inner: Inner::Right(table),
    })
}

/// `hom^M_C(X, Y)` through dimension `cap` (needs `C` through `cap + 1`).
pub fn hom_middle(c: &Arc<SSet>, x: Simplex, y: Simplex, cap: usize, budget: u64) -> Result<MappingSpace> {
    check_vertices(c, x, y)?;
    let cubes: Vec<VertexComplex> = (0..=cap).map(standard_complex).collect();
    let d1 = standard_complex(1);
    let prisms: Vec<Product> = cubes
        .iter()
        .map(|q| Product::new(q.sset(), d1.sset(), usize::MAX))
        .collect();
    let solver = Solver::new(c, budget);
    let mut levels = Vec::with_capacity(cap + 1);
    for p in &prisms {
        let fixed: Vec<Option<Simplex>> = p
            .sset()
            .all_nondegenerate()
            .map(|s| {
                let seq = d1.sequence(p.split(s).1);
                if seq.iter().all(|&v| v == 0) {
                    Some(degenerate_vertex(x, s.dim()))
                } else if seq.iter().all(|&v| v == 1) {
                    Some(degenerate_vertex(y, s.dim()))
                } else {
                    None
                }
            })
            .collect();
        levels.push(solver.solutions(p.sset(), &fixed, None, Mode::All)?);
    }
    let id1 = SMap::identity(d1.sset());
    let mut faces: Vec<Vec<SMap>> = vec![Vec::new()];
    let mut degens: Vec<Vec<SMap>> = vec![Vec::new()];
    for n in 1..=cap {
        faces.push(
            (0..=n)
                .map(|i| {
                    let theta: Vec<usize> = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
                    let delta = cubes[n - 1].induced(&cubes[n], &theta).expect("coface");
                    prisms[n - 1].map(&delta, &id1, &prisms[n])
                })
                .collect(),
        );
        degens.push(
            (0..n)
                .map(|j| {
                    let theta: Vec<usize> = (0..=n).map(|k| if k <= j { k } else { k - 1 }).collect();
                    let sigma = cubes[n].induced(&cubes[n - 1], &theta).expect("codegeneracy");
                    prisms[n].map(&sigma, &id1, &prisms[n - 1])
                })
                .collect(),
        );
    }
    let precompose = |along: &SMap, key: &Vec<Simplex>| -> Vec<Simplex> {
        let m = SMap::new_unchecked(along.target().clone(), c.clone(), key.clone());
        along.then(&m).into_images()
    };
    let table = degreewise::build(
        levels,
        |n, i, key| precompose(&faces[n][i], key),
        |n, j, key| precompose(&degens[n + 1][j], key),
        |_, key| {
            let parts: Vec<String> = key.iter().map(|&s| c.render(s)).collect();
            format!("<{}>", parts.join(","))
        },
        Some(cap),
    )?;
    Ok(MappingSpace {
        kind: MappingKind::Middle,
        ambient: c.clone(),
        x,
        y,
        cap,
        sset: Arc::new(table.sset.clone()),
        inner: Inner::Middle { cubes, prisms, table },
    })
}

fn check_vertices(c: &SSet, x: Simplex, y: Simplex) -> Result<()> {
    if x.dim() != 0 || y.dim() != 0 || x.base_id() >= c.count(0) || y.base_id() >= c.count(0) {
        return Err(Error::Argument("mapping space endpoints must be vertices".into()));
    }
    Ok(())
}

impl MappingSpace {
    pub fn kind(&self) -> MappingKind {
        self.kind
    }

    pub fn sset(&self) -> &Arc<SSet> {
        &self.sset
    }

    pub fn ambient(&self) -> &Arc<SSet> {
        &self.ambient
    }

    pub fn endpoints(&self) -> (Simplex, Simplex) {
        (self.x, self.y)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The `(n+1)`-simplex of `C` of an `n`-simplex of a right mapping space.
    pub fn ambient_simplex(&self, s: Simplex) -> Simplex {
        match &self.inner {
            Inner::Right(table) => {
                let base = *table.key(s.base());
                if !s.is_degenerate() {
                    return base;
                }
                let mut eta = s.surjection();
                eta.push(s.base_dim() + 1);
                precompose_surjection(base, &eta)
            }
            Inner::Middle { .. } => panic!("ambient_simplex is defined on right mapping spaces"),
        }
    }

    /// The `n`-simplex of a right mapping space given by an `(n+1)`-simplex
    /// of `C`, if it qualifies.
    pub fn from_ambient(&self, sigma: Simplex) -> Option<Simplex> {
        match &self.inner {
            Inner::Right(table) => table.simplex(sigma.dim().checked_sub(1)?, &sigma),
            Inner::Middle { .. } => None,
        }
    }

    /// The map `Δⁿ × Δ¹ → C` (images of the nondegenerate simplices of the
    /// prism) of an `n`-simplex of a middle mapping space.
    pub fn prism_map(&self, s: Simplex) -> Vec<Simplex> {
        match &self.inner {
            Inner::Middle { cubes, prisms, table } => {
                let base = table.key(s.base()).clone();
                if !s.is_degenerate() {
                    return base;
                }
                let n = s.dim();
                let k = s.base_dim();
                let collapse = cubes[n].induced(&cubes[k], &s.surjection()).expect("surjection");
                let id1 = SMap::identity(prisms[n].right());
                let m = SMap::new_unchecked(prisms[k].sset().clone(), self.ambient.clone(), base);
                prisms[n].map(&collapse, &id1, &prisms[k]).then(&m).into_images()
            }
            Inner::Right(_) => panic!("prism_map is defined on middle mapping spaces"),
        }
    }

    /// The `n`-simplex of a middle mapping space with the given prism map.
    pub fn from_prism_map(&self, n: usize, images: &[Simplex]) -> Option<Simplex> {
        match &self.inner {
            Inner::Middle { table, .. } => table.simplex(n, &images.to_vec()),
            Inner::Right(_) => None,
        }
    }

    /// `Δⁿ × Δ¹` (middle kind only).
    pub fn prism(&self, n: usize) -> &Product {
        match &self.inner {
            Inner::Middle { prisms, .. } => &prisms[n],
            Inner::Right(_) => panic!("prism is defined on middle mapping spaces"),
        }
    }
}

/// `Φ: hom^R_C(X, Y) → hom^M_C(X, Y)`, by precomposition with the collapse
/// `Δⁿ × Δ¹ → Δ^{n+1}`, `(i, 0) ↦ i`, `(i, 1) ↦ n + 1`.
pub fn phi(right: &MappingSpace, middle: &MappingSpace) -> Result<SMap> {
    if right.kind != MappingKind::Right || middle.kind != MappingKind::Middle {
        return Err(Error::Argument("Φ goes from a right to a middle mapping space".into()));
    }
    if right.endpoints() != middle.endpoints() || right.cap > middle.cap {
        return Err(Error::Argument("Φ needs matching endpoints and caps".into()));
    }
    let images = right
        .sset
        .all_nondegenerate()
        .map(|s| {
            let images = phi_images(right, middle, right.ambient_simplex(s));
            middle
                .from_prism_map(s.dim(), &images)
                .ok_or_else(|| Error::Validation("Φ leaves the middle mapping space".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SMap::new_unchecked(right.sset.clone(), middle.sset.clone(), images))
}

/// The prism map `Δⁿ × Δ¹ → C` of `Φ(σ)` for an `(n+1)`-simplex `σ`.
pub fn phi_images(right: &MappingSpace, middle: &MappingSpace, sigma: Simplex) -> Vec<Simplex> {
    let n = sigma.dim() - 1;
    let p = middle.prism(n);
    let cube = standard_complex(n);
    let d1 = standard_complex(1);
    p.sset()
        .all_nondegenerate()
        .map(|s| {
            let (a, b) = p.split(s);
            let seq: Vec<usize> = cube
                .sequence(a)
                .into_iter()
                .zip(d1.sequence(b))
                .map(|(i, t)| if t == 0 { i } else { n + 1 })
                .collect();
            right.ambient.apply(&seq, sigma)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::nerve::{Category, Nerve};
    use crate::constructions::standard::standard;
    use crate::solver::search::DEFAULT_BUDGET;

    fn v(i: usize) -> Simplex {
        Simplex::nondegenerate(0, i)
    }

    #[test]
    fn right_mapping_spaces() {
        let d1 = Arc::new(standard(1));
        let r = hom_right(&d1, v(0), v(1), 2).unwrap();
        assert_eq!(r.sset().counts(), vec![1]);
        let bz = Nerve::new(&Arc::new(Category::bz2()), 4);
        let r = hom_right(bz.sset(), v(0), v(0), 2).unwrap();
        assert_eq!(r.sset().counts(), vec![2]);
        r.sset().check_all_identities(2).unwrap();
    }

    #[test]
    fn phi_is_a_monomorphism() {
        let d1 = Arc::new(standard(1));
        let r = hom_right(&d1, v(0), v(1), 2).unwrap();
        let m = hom_middle(&d1, v(0), v(1), 2, DEFAULT_BUDGET).unwrap();
        let p = phi(&r, &m).unwrap();
        p.check().unwrap();
        assert!(p.is_injective());
        let bz = Nerve::new(&Arc::new(Category::bz2()), 4);
        let r = hom_right(bz.sset(), v(0), v(0), 2).unwrap();
        let m = hom_middle(bz.sset(), v(0), v(0), 2, DEFAULT_BUDGET).unwrap();
        let p = phi(&r, &m).unwrap();
        p.check().unwrap();
        assert!(p.is_injective());
        m.sset().check_all_identities(2).unwrap();
    }
}
