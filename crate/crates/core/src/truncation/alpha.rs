//! The comparison `α: hom^R_{h_d C}(θX, θY) → h_{d-1} hom^R_C(X, Y)`.
//!
//! For `d ≥ 1`, an `n`-simplex `τ` of the left side is an `(n+1)`-simplex
//! of `h_d C`, i.e. a class of maps `g: sk^dΔ^{n+1} → C`.  Choosing a
//! member whose front face is totally degenerate at `X` and whose last
//! vertex is `Y`, `g` restricted to the simplices through the last vertex
//! is a map `J(sk^{d-1}Δⁿ) → C`, i.e. a map `sk^{d-1}Δⁿ → hom^R_C(X, Y)`,
//! and `α(τ)` is its class in `h_{d-1}`.  The check evaluates this recipe
//! on every admissible member, so independence of the choice is tested
//! rather than assumed.
//!
//! For `d ≤ 0` both sides are empty or a point, and `α` is the unique map.

use crate::constructions::iso::iso_check;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::lifting::QCat;
use crate::sset::precompose_surjection;
use crate::truncation::hd::{h_d, Truncation};
use crate::truncation::mapping::{hom_right, MappingSpace};

/// The objects built for one `α` comparison.
pub struct AlphaData {
    pub truncation: Truncation,
    /// `hom^R_{h_d C}(θX, θY)`.
    pub left: MappingSpace,
    /// `hom^R_C(X, Y)`.
    pub mapping: MappingSpace,
    /// `h_{d-1} hom^R_C(X, Y)`.
    pub right: Truncation,
}

/// Builds both sides of `α` through dimension `m`.
pub fn alpha_data(c: &QCat, x: Simplex, y: Simplex, d: isize, m: usize, budget: u64) -> Result<AlphaData> {
    if d < 0 {
        return Err(Error::Argument(format!("α is compared for d ≥ 0, got {d}")));
    }
    let du = d as usize;
    let truncation = h_d(c, d, m + 1, budget)?;
    let tx = truncation.theta(x)?;
    let ty = truncation.theta(y)?;
    let left = hom_right(truncation.sset(), tx, ty, m)?;
    let mapping = hom_right(c.sset(), x, y, m.max(du + 1))?;
    let k = QCat::certify(mapping.sset(), (du + 1).max(2), budget)?;
    let right = h_d(&k, d - 1, m, budget)?;
    Ok(AlphaData {
        truncation,
        left,
        mapping,
        right,
    })
}

/// Every value of the `α` recipe on `τ`, one per admissible member
/// (`None` where the recipe leaves `h_{d-1}`).
fn alpha_values(data: &AlphaData, tau: Simplex) -> Vec<Option<Simplex>> {
    let h = &data.truncation;
    let (x, y) = data.mapping.endpoints();
    let n = tau.dim();
    let big = data.left.ambient_simplex(tau);
    let hskel = h.skeleton_complex(n + 1);
    let rskel = data.right.skeleton_complex(n);
    let admissible = |g: &[Simplex]| {
        hskel.sset().all_nondegenerate().all(|t| {
            let subset = hskel.subset(t);
            let image = g[hskel.sset().flat_index(t)];
            if subset.contains(&(n + 1)) {
                subset.len() > 1 || image == y
            } else {
                image == precompose_surjection(x, &vec![0; t.dim() + 1])
            }
        })
    };
    h.members(big)
        .iter()
        .filter(|g| admissible(g))
        .map(|g| {
            let images: Option<Vec<Simplex>> = rskel
                .sset()
                .all_nondegenerate()
                .map(|s| {
                    let mut seq = rskel.subset(s).to_vec();
                    seq.push(n + 1);
                    let t = hskel.simplex(&seq)?;
                    data.mapping.from_ambient(g[hskel.sset().flat_index(t)])
                })
                .collect();
            images.and_then(|im| data.right.class_of(n, &im))
        })
        .collect()
}

/// Checks that `α` is a well-defined isomorphism of simplicial sets through
/// dimension `m` and that `α ∘ β = γ`, where `β` is induced by `θ_d` and
/// `γ` is the unit of `h_{d-1}` on the mapping space.
pub fn alpha_verify(c: &QCat, x: Simplex, y: Simplex, d: isize, m: usize, budget: u64) -> Result<Report> {
    let cs = c.sset();
    let mut report = Report::new(
        format!("alpha X={} Y={} d={d} m={m}", cs.name(x), cs.name(y)),
        c.bound().describe(),
    );
    let data = alpha_data(c, x, y, d, m, budget)?;
    let left = data.left.sset();
    let right = data.right.sset();
    report.fact("left_counts", left.counts());
    report.fact("right_counts", right.counts());
    if d == 0 {
        let iso = iso_check(left, right, m, budget)?;
        report.check(
            "both sides agree (empty or a point)",
            iso.is_some() && left.count(0) <= 1,
            None,
        );
        // the target of α is terminal or empty, so the triangle commutes
        // as soon as α exists
        report.check("triangle", iso.is_some(), None);
        return Ok(report);
    }
    let mut well_defined = None;
    let mut images = Vec::new();
    for tau in left.all_nondegenerate() {
        let values = alpha_values(&data, tau);
        match values.first() {
            Some(&Some(v)) if values.iter().all(|&w| w == Some(v)) => images.push(v),
            _ => {
                well_defined.get_or_insert(format!("{} ↦ {values:?}", left.render(tau)));
                images.push(Simplex::nondegenerate(0, 0));
            }
        }
    }
    if !report.check("α well defined", well_defined.is_none(), well_defined) {
        return Ok(report);
    }
    let alpha = SMap::new_unchecked(left.clone(), right.clone(), images);
    let simplicial = alpha.check();
    report.check("α commutes with faces", simplicial.is_ok(), simplicial.err().map(|e| e.to_string()));
    report.check("α bijective", alpha.is_bijective_through(m), None);
    let mut degenerate = None;
    for n in 1..=m {
        for tau in left.simplices(n).into_iter().filter(|t| t.is_degenerate()) {
            let values = alpha_values(&data, tau);
            if values.iter().any(|&v| v != Some(alpha.eval(tau))) {
                degenerate.get_or_insert(left.render(tau));
            }
        }
    }
    report.check("α commutes with degeneracies", degenerate.is_none(), degenerate);
    let mut triangle = None;
    let k = data.mapping.sset();
    for n in 0..=m {
        for sigma in k.simplices(n) {
            let up = data.truncation.theta(data.mapping.ambient_simplex(sigma))?;
            let beta = data.left.from_ambient(up);
            let gamma = data.right.theta(sigma)?;
            if beta.map(|b| alpha.eval(b)) != Some(gamma) {
                triangle.get_or_insert(k.render(sigma));
            }
        }
    }
    report.check("α ∘ β = γ", triangle.is_none(), triangle);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::nerve::{Category, Nerve};
    use crate::solver::search::DEFAULT_BUDGET;
    use std::sync::Arc;

    fn v(i: usize) -> Simplex {
        Simplex::nondegenerate(0, i)
    }

    #[test]
    fn bz2_at_level_one() {
        let bz = Nerve::new(&Arc::new(Category::bz2()), 5);
        let q = QCat::nerve(&bz);
        let data = alpha_data(&q, v(0), v(0), 1, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(data.left.sset().counts(), vec![2]);
        assert_eq!(data.right.sset().counts(), vec![2]);
        let r = alpha_verify(&q, v(0), v(0), 1, 2, DEFAULT_BUDGET).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn bz2_at_level_zero() {
        let bz = Nerve::new(&Arc::new(Category::bz2()), 5);
        let q = QCat::nerve(&bz);
        let data = alpha_data(&q, v(0), v(0), 0, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(data.left.sset().counts(), vec![1]);
        assert_eq!(data.right.sset().counts(), vec![1]);
        assert!(alpha_verify(&q, v(0), v(0), 0, 2, DEFAULT_BUDGET).unwrap().passed());
    }

    #[test]
    fn simplex_at_level_two() {
        let d2 = Nerve::new(&Arc::new(Category::ordinal(2)), 5);
        let q = QCat::nerve(&d2);
        for (a, b) in [(0, 2), (1, 0)] {
            let r = alpha_verify(&q, v(a), v(b), 2, 2, DEFAULT_BUDGET).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
