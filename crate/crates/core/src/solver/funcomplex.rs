//! Function complexes `Fun(A, B)`, with `n`-simplices the maps `A × Δⁿ → B`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::constructions::product::Product;
use crate::constructions::standard::standard_complex;
use crate::degreewise::{self, Degreewise};
use crate::error::Result;
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::search::{Mode, Solver};
use crate::sset::SSet;

/// `Fun(A, B)` through a dimension cap.
pub struct FunComplex {
    a: Arc<SSet>,
    b: Arc<SSet>,
    sset: Arc<SSet>,
    products: Vec<Product>,
    table: Degreewise<Vec<Simplex>>,
}

/// Builds `Fun(A, B)` in degrees `0..=cap`.
pub fn fun_complex(a: &Arc<SSet>, b: &Arc<SSet>, cap: usize, budget: u64) -> Result<FunComplex> {
    fun_complex_where(a, b, cap, &FunOptions::default(), budget)
}

/// Restrictions on the simplices of a function complex.
#[derive(Default)]
pub struct FunOptions<'a> {
    /// Only maps over a base: `(A → S, B → S)`.
    pub over: Option<(&'a SMap, &'a SMap)>,
    /// Materialize `A × Δⁿ` only through this dimension.  Sound when `B`
    /// is coskeletal above it (nerves of 1-categories are 2-coskeletal).
    pub product_cap: Option<usize>,
    /// Keep only simplices all of whose vertices (maps `A → B`) pass.
    pub keep_vertex: Option<&'a dyn Fn(&SMap) -> bool>,
}

/// The sub-complex of `Fun(A, B)` cut out by `options`, in degrees
/// `0..=cap`.
pub fn fun_complex_where(
    a: &Arc<SSet>,
    b: &Arc<SSet>,
    cap: usize,
    options: &FunOptions<'_>,
    budget: u64,
) -> Result<FunComplex> {
    let cubes: Vec<_> = (0..=cap).map(standard_complex).collect();
    let product_cap = options.product_cap.unwrap_or(usize::MAX);
    let products: Vec<Product> = cubes
        .iter()
        .map(|c| Product::new(a, c.sset(), product_cap))
        .collect();
    let id_a = SMap::identity(a);
    let mut faces: Vec<Vec<SMap>> = vec![Vec::new()];
    let mut degens: Vec<Vec<SMap>> = vec![Vec::new()];
    for n in 1..=cap {
        faces.push(
            (0..=n)
                .map(|i| {
                    let theta: Vec<usize> = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
                    let delta = cubes[n - 1].induced(&cubes[n], &theta).expect("coface");
                    products[n - 1].map(&id_a, &delta, &products[n])
                })
                .collect(),
        );
        degens.push(
            (0..n)
                .map(|j| {
                    let theta: Vec<usize> = (0..=n).map(|k| if k <= j { k } else { k - 1 }).collect();
                    let sigma = cubes[n].induced(&cubes[n - 1], &theta).expect("codegeneracy");
                    products[n].map(&id_a, &sigma, &products[n - 1])
                })
                .collect(),
        );
    }
    let solver = Solver::new(b, budget);
    let mut levels = Vec::with_capacity(cap + 1);
    let mut verdicts: HashMap<Vec<Simplex>, bool> = HashMap::new();
    for (n, p) in products.iter().enumerate() {
        let src = p.sset();
        let fixed = vec![None; src.flat_len()];
        let filter = options.over.map(|(pa, pb)| {
            move |s: Simplex, t: Simplex| pb.eval(t) == pa.eval(p.split(s).0)
        });
        let filter_ref: Option<crate::solver::search::Filter<'_>> = filter.as_ref().map(|f| f as _);
        let mut level = Vec::new();
        for im in solver.solutions(src, &fixed, filter_ref, Mode::All)? {
            let keep = match options.keep_vertex {
                None => true,
                Some(keep) => (0..=n).all(|i| {
                    let images = vertex_restriction(a, p, &im, i);
                    *verdicts
                        .entry(images.clone())
                        .or_insert_with(|| keep(&SMap::new_unchecked(a.clone(), b.clone(), images)))
                }),
            };
            if keep {
                level.push(im);
            }
        }
        levels.push(level);
    }
    let precompose = |along: &SMap, key: &Vec<Simplex>| -> Vec<Simplex> {
        let m = SMap::new_unchecked(along.target().clone(), b.clone(), key.clone());
        along.then(&m).into_images()
    };
    let table = degreewise::build(
        levels,
        |n, i, key| precompose(&faces[n][i], key),
        |n, j, key| precompose(&degens[n + 1][j], key),
        |_, key| {
            let parts: Vec<&str> = key.iter().map(|&s| b.name(s.base())).collect();
            format!("<{}>", parts.join(","))
        },
        Some(cap),
    )?;
    let sset = Arc::new(table.sset.clone());
    Ok(FunComplex {
        a: a.clone(),
        b: b.clone(),
        sset,
        products,
        table,
    })
}

/// The map `A → B` at vertex `i` of an `n`-simplex given by its images on
/// `A × Δⁿ`.
fn vertex_restriction(a: &SSet, p: &Product, images: &[Simplex], i: usize) -> Vec<Simplex> {
    let m = SMap::new_unchecked(p.sset().clone(), Arc::new(SSet::empty()), images.to_vec());
    a.all_nondegenerate()
        .map(|s| {
            let v = crate::sset::precompose_surjection(Simplex::nondegenerate(0, i), &vec![0; s.dim() + 1]);
            m.eval(p.pair(s, v))
        })
        .collect()
}

impl FunComplex {
    pub fn sset(&self) -> &Arc<SSet> {
        &self.sset
    }

    pub fn source(&self) -> &Arc<SSet> {
        &self.a
    }

    pub fn target(&self) -> &Arc<SSet> {
        &self.b
    }

    /// `A × Δⁿ`.
    pub fn product(&self, n: usize) -> &Product {
        &self.products[n]
    }

    /// The map `A × Δⁿ → B` represented by an `n`-simplex.
    pub fn as_map(&self, s: Simplex) -> SMap {
        let n = s.dim();
        let base = SMap::new_unchecked(
            self.products[s.base_dim()].sset().clone(),
            self.b.clone(),
            self.table.key(s).clone(),
        );
        if !s.is_degenerate() {
            return base;
        }
        let eta = s.surjection();
        let from = standard_complex(n);
        let to = standard_complex(s.base_dim());
        let collapse = from.induced(&to, &eta).expect("surjection");
        self.products[n]
            .map(&SMap::identity(&self.a), &collapse, &self.products[s.base_dim()])
            .then(&base)
    }

    /// The simplex representing a map `A × Δⁿ → B`.
    pub fn simplex_of(&self, f: &SMap) -> Option<Simplex> {
        let n = self.products.iter().position(|p| Arc::ptr_eq(p.sset(), f.source()) || **p.sset() == **f.source())?;
        self.table.simplex(n, &f.images().to_vec())
    }

    /// The vertex for a map `A → B`.
    pub fn vertex_of(&self, f: &SMap) -> Option<Simplex> {
        let p = &self.products[0];
        let key: Vec<Simplex> = p
            .sset()
            .all_nondegenerate()
            .map(|s| f.eval(p.split(s).0))
            .collect();
        self.table.simplex(0, &key)
    }

    /// The map `A → B` at a vertex.
    pub fn vertex_map(&self, v: Simplex) -> SMap {
        let p = &self.products[0];
        let m = self.as_map(v);
        let images = self
            .a
            .all_nondegenerate()
            .map(|s| {
                let x = crate::sset::precompose_surjection(Simplex::nondegenerate(0, 0), &vec![0; s.dim() + 1]);
                m.eval(p.pair(s, x))
            })
            .collect();
        SMap::new_unchecked(self.a.clone(), self.b.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::nerve::{Category, Nerve};
    use crate::constructions::standard::standard;
    use crate::solver::search::DEFAULT_BUDGET;

    #[test]
    fn fun_from_point_is_target() {
        let pt = Arc::new(standard(0));
        let d2 = Arc::new(standard(2));
        let f = fun_complex(&pt, &d2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(f.sset().counts(), vec![3, 3, 1]);
        f.sset().check_identities().unwrap();
    }

    #[test]
    fn fun_of_arrow_into_arrow() {
        // Fun(Δ¹, Δ¹) is the nerve of the chain 00 < 01 < 11 of monotone
        // self-maps of [1], i.e. a copy of Δ²
        let d1 = Arc::new(standard(1));
        let f = fun_complex(&d1, &d1, 3, DEFAULT_BUDGET).unwrap();
        assert!(f.sset().same_shape(&standard(2).with_known_through(Some(3))));
        let v = f.sset().nondegenerate(0).next().unwrap();
        let m = f.vertex_map(v);
        assert_eq!(f.vertex_of(&m), Some(v));
    }

    #[test]
    fn fun_into_groupoid_nerve() {
        let bz = Nerve::new(&Arc::new(Category::bz2()), 3);
        let pt = Arc::new(standard(0));
        let f = fun_complex(&pt, bz.sset(), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(f.sset().counts(), vec![1, 1, 1]);
    }
}
