//! Cartesian products.

use std::collections::HashMap;
use std::sync::Arc;

use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::sset::{masks_with_ones, precompose_surjection, SSet, SSetBuilder};

/// `A × B` through a dimension cap, remembering the pair behind each
/// nondegenerate simplex.
#[derive(Clone, Debug)]
pub struct Product {
    left: Arc<SSet>,
    right: Arc<SSet>,
    sset: Arc<SSet>,
    pairs: Vec<(Simplex, Simplex)>,
    index: HashMap<(Simplex, Simplex), Simplex>,
}

fn strip(s: &SSet, mut x: Simplex, common: u32) -> Simplex {
    for j in (0..x.dim()).rev() {
        if common & (1 << j) != 0 {
            x = s.face(j, x);
        }
    }
    x
}

impl Product {
    /// Nondegenerate simplices of `A × B` are pairs `(η x, μ y)` whose
    /// degeneracy positions are disjoint (the shuffles of `x` and `y`).
    pub fn new(left: &Arc<SSet>, right: &Arc<SSet>, cap: usize) -> Product {
        let mut builder = SSetBuilder::new();
        let mut pairs = Vec::new();
        let mut index: HashMap<(Simplex, Simplex), Simplex> = HashMap::new();
        let top = match (left.top_dim(), right.top_dim()) {
            (Some(p), Some(q)) => Some((p + q).min(cap)),
            _ => None,
        };
        let mut staged: Vec<Vec<(Simplex, Simplex)>> = Vec::new();
        if let Some(top) = top {
            staged.resize(top + 1, Vec::new());
            for p in 0..=left.top_dim().unwrap() {
                for q in 0..=right.top_dim().unwrap() {
                    for n in p.max(q)..=(p + q).min(top) {
                        let masks_a = masks_with_ones(n, (n - p) as u32);
                        let masks_b = masks_with_ones(n, (n - q) as u32);
                        for x in left.nondegenerate(p) {
                            for y in right.nondegenerate(q) {
                                for &ma in &masks_a {
                                    for &mb in &masks_b {
                                        if ma & mb != 0 {
                                            continue;
                                        }
                                        let a = Simplex::from_parts(n, ma, x.base_id());
                                        let b = Simplex::from_parts(n, mb, y.base_id());
                                        staged[n].push((a, b));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            for (n, level) in staged.iter_mut().enumerate() {
                level.sort();
                for &(a, b) in level.iter() {
                    let faces: Vec<Simplex> = if n == 0 {
                        Vec::new()
                    } else {
                        (0..=n)
                            .map(|i| normalize(left, right, &index, left.face(i, a), right.face(i, b)))
                            .collect()
                    };
                    let name = format!("({}|{})", left.render(a), right.render(b));
                    let s = builder.add(n, name, faces);
                    index.insert((a, b), s);
                    pairs.push((a, b));
                }
            }
        }
        let exact = match (left.top_dim(), right.top_dim()) {
            (Some(p), Some(q)) => p + q <= cap,
            _ => true,
        };
        let mut known = if exact { None } else { Some(cap) };
        for k in [left.known_through(), right.known_through()].into_iter().flatten() {
            known = Some(known.map_or(k, |c: usize| c.min(k)));
        }
        Product {
            left: left.clone(),
            right: right.clone(),
            sset: Arc::new(builder.finish(known)),
            pairs,
            index,
        }
    }

    pub fn sset(&self) -> &Arc<SSet> {
        &self.sset
    }

    pub fn left(&self) -> &Arc<SSet> {
        &self.left
    }

    pub fn right(&self) -> &Arc<SSet> {
        &self.right
    }

    /// The simplex of the product with the given components.
    pub fn pair(&self, a: Simplex, b: Simplex) -> Simplex {
        normalize(&self.left, &self.right, &self.index, a, b)
    }

    /// The components of a simplex of the product.
    pub fn split(&self, s: Simplex) -> (Simplex, Simplex) {
        let (a, b) = self.pairs[self.sset.flat_index(s.base())];
        if !s.is_degenerate() {
            return (a, b);
        }
        let eta = s.surjection();
        (precompose_surjection(a, &eta), precompose_surjection(b, &eta))
    }

    pub fn project_left(&self) -> SMap {
        let images = self.pairs.iter().map(|p| p.0).collect();
        SMap::new_unchecked(self.sset.clone(), self.left.clone(), images)
    }

    pub fn project_right(&self) -> SMap {
        let images = self.pairs.iter().map(|p| p.1).collect();
        SMap::new_unchecked(self.sset.clone(), self.right.clone(), images)
    }

    /// `f × g: self → target`.
    pub fn map(&self, f: &SMap, g: &SMap, target: &Product) -> SMap {
        let images = self
            .pairs
            .iter()
            .map(|&(a, b)| target.pair(f.eval(a), g.eval(b)))
            .collect();
        SMap::new_unchecked(self.sset.clone(), target.sset.clone(), images)
    }
}

fn normalize(
    left: &SSet,
    right: &SSet,
    index: &HashMap<(Simplex, Simplex), Simplex>,
    a: Simplex,
    b: Simplex,
) -> Simplex {
    let common = a.mask() & b.mask();
    if common == 0 {
        return *index.get(&(a, b)).expect("pair of simplices within the product cap");
    }
    let za = strip(left, a, common);
    let zb = strip(right, b, common);
    let base = index.get(&(za, zb)).expect("pair of simplices within the product cap");
    Simplex::from_parts(a.dim(), common, base.base_id())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::standard::{boundary, standard};

    #[test]
    fn square_and_prism() {
        let d1 = Arc::new(standard(1));
        let sq = Product::new(&d1, &d1, 2);
        assert_eq!(sq.sset().counts(), vec![4, 5, 2]);
        assert!(sq.sset().is_complete());
        sq.sset().check_all_identities(3).unwrap();
        let d2 = Arc::new(standard(2));
        let prism = Product::new(&d2, &d1, 3);
        assert_eq!(prism.sset().count(3), 3);
        let capped = Product::new(&d2, &d1, 2);
        assert_eq!(capped.sset().known_through(), Some(2));
    }

    #[test]
    fn split_and_pair_agree() {
        let d1 = Arc::new(standard(1));
        let b = Arc::new(boundary(2));
        let p = Product::new(&b, &d1, 4);
        for n in 0..4 {
            for s in p.sset().simplices(n) {
                let (x, y) = p.split(s);
                assert_eq!(p.pair(x, y), s);
            }
        }
        p.project_left().check().unwrap();
        p.project_right().check().unwrap();
    }
}
