//! The `d`-category predicate.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::constructions::standard::{boundary_complex, standard_complex, standard_skeleton};
use crate::error::Result;
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::homotopy::homotopy_classes;
use crate::solver::lifting::QCat;

/// Why a quasi-category fails to be a `d`-category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DCatViolation {
    /// Distinct maps `Δ^d → C` that are homotopic rel `∂Δ^d`.
    Homotopic { dim: usize, first: String, second: String },
    /// Distinct `k`-simplices (`k > d`) with the same boundary.
    SameBoundary { dim: usize, first: String, second: String },
}

/// Checks conditions (1) at dimension `d` and (2) for `d < k ≤ m`.
///
/// Condition (1) needs `C` certified through `d + 2`; condition (2) needs
/// `C` known through `m`.
pub fn d_category_violation(c: &QCat, d: isize, m: usize, budget: u64) -> Result<Option<DCatViolation>> {
    let x = c.sset();
    if d >= 0 {
        let du = d as usize;
        let (a, b) = if du == 0 {
            (standard_skeleton(0, -1), standard_complex(0))
        } else {
            (boundary_complex(du), standard_complex(du))
        };
        let classes = homotopy_classes(&a.inclusion_into(&b)?, &SMap::identity(b.sset()), c, budget)?;
        let top_simplex = b.sset().nondegenerate(du).last().expect("Δ^d has a top simplex");
        let top = |h: &SMap| x.render(h.image(top_simplex));
        let mut first_member: Vec<Option<&SMap>> = vec![None; classes.len()];
        for (f, k) in &classes.members {
            match first_member[*k] {
                None => first_member[*k] = Some(f),
                Some(g) => {
                    return Ok(Some(DCatViolation::Homotopic {
                        dim: du,
                        first: top(g),
                        second: top(f),
                    }));
                }
            }
        }
    }
    let start = (d + 1).max(0) as usize;
    for k in start..=m {
        x.require_known(k, "d-category check")?;
        let mut seen: HashMap<Vec<Simplex>, Simplex> = HashMap::new();
        for s in x.simplices(k) {
            let faces: Vec<Simplex> = if k == 0 {
                Vec::new()
            } else {
                (0..=k).map(|i| x.face(i, s)).collect()
            };
            if let Some(&t) = seen.get(&faces) {
                return Ok(Some(DCatViolation::SameBoundary {
                    dim: k,
                    first: x.render(t),
                    second: x.render(s),
                }));
            }
            seen.insert(faces, s);
        }
    }
    Ok(None)
}

pub fn is_d_category(c: &QCat, d: isize, m: usize, budget: u64) -> Result<bool> {
    Ok(d_category_violation(c, d, m, budget)?.is_none())
}

/// Convenience for callers holding only a simplicial set: certifies the
/// quasi-category property through `max(m, d + 2)` first.
pub fn is_d_category_certifying(x: &Arc<crate::sset::SSet>, d: isize, m: usize, budget: u64) -> Result<bool> {
    let need = m.max((d + 2).max(2) as usize);
    let c = QCat::certify(x, need, budget)?;
    is_d_category(&c, d, m, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::nerve::{Category, Nerve};
    use crate::constructions::standard::standard;
    use crate::solver::search::DEFAULT_BUDGET;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn posets_and_categories() {
        let d2 = QCat::certify(&Arc::new(standard(2)), 4, B).unwrap();
        assert!(is_d_category(&d2, 0, 3, B).unwrap());
        let bz = Nerve::new(&Arc::new(Category::bz2()), 4);
        let q = QCat::nerve(&bz);
        assert!(is_d_category(&q, 1, 4, B).unwrap());
        match d_category_violation(&q, 0, 3, B).unwrap() {
            Some(DCatViolation::SameBoundary { dim, .. }) => assert_eq!(dim, 1),
            other => panic!("unexpected {other:?}"),
        }
        let g = Nerve::new(&Arc::new(Category::iso_groupoid()), 4);
        let q = QCat::nerve(&g);
        assert!(matches!(
            d_category_violation(&q, 0, 3, B).unwrap(),
            Some(DCatViolation::Homotopic { dim: 0, .. })
        ));
        assert!(is_d_category(&q, 1, 4, B).unwrap());
    }

    #[test]
    fn minus_one_categories() {
        let pt = QCat::certify(&Arc::new(standard(0)), 3, B).unwrap();
        assert!(is_d_category(&pt, -1, 3, B).unwrap());
        let d1 = QCat::certify(&Arc::new(standard(1)), 3, B).unwrap();
        assert!(!is_d_category(&d1, -1, 3, B).unwrap());
    }
}
