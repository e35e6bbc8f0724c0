//! Checks of the universal property of `θ_d: C → h_d C` and of the
//! functoriality of `h_d`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::constructions::standard::skeleton;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::funcomplex::{fun_complex, FunComplex};
use crate::solver::lifting::QCat;
use crate::sset::SSet;
use crate::truncation::dcat::d_category_violation;
use crate::truncation::hd::{h_d, Truncation};

/// `θ_d` is an isomorphism through `m` exactly when `C` is a `d`-category
/// (checked through `m`).  Needs `C` certified through `max(m, d + 2)`.
pub fn theta_iso_verify(c: &QCat, d: isize, m: usize, budget: u64) -> Result<Report> {
    let mut report = Report::new(format!("theta_iso d={d} m={m}"), c.bound().describe());
    let h = h_d(c, d, m, budget)?;
    let theta = h.theta_map()?;
    let iso = theta.is_bijective_through(m);
    let violation = if d >= -1 {
        d_category_violation(c, d, m, budget)?
    } else {
        None
    };
    report.fact("theta_iso", iso);
    report.fact("d_category", violation.is_none());
    report.fact("violation", &violation);
    report.check("θ iso ⇔ d-category", iso == violation.is_none(), None);
    Ok(report)
}

fn skeleton_of(x: &Arc<SSet>, d: isize) -> Arc<SSet> {
    if x.top_dim().is_none_or(|t| (t as isize) <= d) {
        x.clone()
    } else {
        skeleton(x, d).0
    }
}

/// `θ_d` as a map `sk^k C → sk^k h_d C` (skeleta keep simplex ids).
fn theta_on_skeleta(h: &Truncation, k: isize) -> Result<SMap> {
    let src = skeleton_of(h.source(), k);
    let tgt = skeleton_of(h.sset(), k);
    let images = src.all_nondegenerate().map(|s| h.theta(s)).collect::<Result<Vec<_>>>()?;
    Ok(SMap::new_unchecked(src, tgt, images))
}

/// Precomposition `Fun(sk h_d C, D) → Fun(sk C, D)` on one simplex.
fn precompose(theta: &SMap, from: &FunComplex, to: &FunComplex, s: Simplex) -> Option<Simplex> {
    let n = s.dim();
    let id = SMap::identity(from.product(n).right());
    let along = to.product(n).map(theta, &id, from.product(n));
    to.simplex_of(&along.then(&from.as_map(s)))
}

/// Checks that precomposition with `θ_d` is a bijection
/// `Fun(h_d C, D) → Fun(C, D)` on vertices and edges.
///
/// A `d`-category is `(d+1)`-coskeletal, so maps into `D` are computed on
/// `(d+1)`-skeleta; `D` itself is checked to be a `d`-category through
/// `d + 2` first.
pub fn universal_property_verify(c: &QCat, target: &QCat, d: isize, budget: u64) -> Result<Report> {
    if d < -1 {
        return Err(Error::Argument(format!("the universal property is checked for d ≥ -1, got {d}")));
    }
    let mut report = Report::new(
        format!("universal_property d={d}"),
        c.bound().min(target.bound()).describe(),
    );
    let k = d + 1;
    let target_ok = d_category_violation(target, d, (d + 2).max(0) as usize, budget)?;
    if !report.check("D is a d-category", target_ok.is_none(), target_ok.map(|v| format!("{v:?}"))) {
        return Ok(report);
    }
    let h = h_d(c, d, k.max(1) as usize, budget)?;
    let theta = theta_on_skeleta(&h, k)?;
    let from = fun_complex(theta.target(), target.sset(), 1, budget)?;
    let to = fun_complex(theta.source(), target.sset(), 1, budget)?;
    for n in 0..=1 {
        let left = from.sset().simplices(n);
        let right = to.sset().simplex_count(n);
        report.fact(format!("maps_from_h_d_dim{n}"), left.len());
        report.fact(format!("maps_from_c_dim{n}"), right);
        let mut seen = HashSet::new();
        let mut witness = None;
        for &s in &left {
            match precompose(&theta, &from, &to, s) {
                Some(t) if seen.insert(t) => {}
                _ => {
                    witness.get_or_insert(from.sset().render(s));
                }
            }
        }
        let bijective = witness.is_none() && seen.len() == right;
        report.check(format!("precomposition bijective in degree {n}"), bijective, witness);
    }
    Ok(report)
}

/// `h_d(h_d C) ≅ h_d C` via `θ_d` of `h_d C`, through dimension `m`.
/// Needs `m ≥ d + 2`, so that `h_d C` can be certified.
pub fn idempotence_verify(c: &QCat, d: isize, m: usize, budget: u64) -> Result<Report> {
    let mut report = Report::new(format!("idempotence d={d} m={m}"), c.bound().describe());
    let h = h_d(c, d, m, budget)?;
    let hq = QCat::certify(h.sset(), m.max(2), budget)?;
    let hh = h_d(&hq, d, m, budget)?;
    let theta = hh.theta_map()?;
    report.fact("counts", h.sset().counts());
    report.check("θ of h_d C is bijective", theta.is_bijective_through(m), None);
    Ok(report)
}

/// For `e ≤ d`, `h_e(θ_d): h_e C → h_e h_d C` is an isomorphism through `m`.
pub fn tower_verify(c: &QCat, e: isize, d: isize, m: usize, budget: u64) -> Result<Report> {
    if e > d {
        return Err(Error::Argument(format!("the tower check needs e ≤ d, got e={e}, d={d}")));
    }
    let mut report = Report::new(format!("tower e={e} d={d} m={m}"), c.bound().describe());
    let h = h_d(c, d, m, budget)?;
    let hq = QCat::certify(h.sset(), m.max(2), budget)?;
    let he = h_d(c, e, m, budget)?;
    let hhe = h_d(&hq, e, m, budget)?;
    let theta = h.theta_map()?;
    let map = he.induced(&theta, &hhe)?;
    let ok = map.check();
    report.check("h_e(θ_d) simplicial", ok.is_ok(), ok.err().map(|e| e.to_string()));
    report.check("h_e(θ_d) bijective", map.is_bijective_through(m), None);
    Ok(report)
}

/// `h_d(f) ∘ θ_d = θ_d ∘ f` on all simplices through `m`, `h_d(f)` is
/// simplicial, and `h_d(id) = id`.
pub fn naturality_verify(f: &SMap, c: &QCat, c2: &QCat, d: isize, m: usize, budget: u64) -> Result<Report> {
    let mut report = Report::new(format!("naturality d={d} m={m}"), c.bound().min(c2.bound()).describe());
    let h = h_d(c, d, m, budget)?;
    let h2 = h_d(c2, d, m, budget)?;
    let hf = h.induced(f, &h2)?;
    let ok = hf.check();
    report.check("h_d(f) simplicial", ok.is_ok(), ok.err().map(|e| e.to_string()));
    let mut witness = None;
    for n in 0..=m {
        for s in c.sset().simplices(n) {
            if hf.eval(h.theta(s)?) != h2.theta(f.eval(s))? {
                witness.get_or_insert(c.sset().render(s));
            }
        }
    }
    report.check("h_d(f) ∘ θ = θ ∘ f", witness.is_none(), witness);
    let id = h.induced(&SMap::identity(c.sset()), &h)?;
    report.check("h_d(id) = id", id == SMap::identity(h.sset()), None);
    Ok(report)
}

/// `h_d(g ∘ f) = h_d(g) ∘ h_d(f)` for `f: C → C'`, `g: C' → C''`.
pub fn composition_verify(
    f: &SMap,
    g: &SMap,
    cs: [&QCat; 3],
    d: isize,
    m: usize,
    budget: u64,
) -> Result<Report> {
    let bound = cs[0].bound().min(cs[1].bound()).min(cs[2].bound());
    let mut report = Report::new(format!("composition d={d} m={m}"), bound.describe());
    let hs = cs
        .iter()
        .map(|c| h_d(c, d, m, budget))
        .collect::<Result<Vec<_>>>()?;
    let hf = hs[0].induced(f, &hs[1])?;
    let hg = hs[1].induced(g, &hs[2])?;
    let hgf = hs[0].induced(&f.then(g), &hs[2])?;
    report.check("h_d(g ∘ f) = h_d(g) ∘ h_d(f)", hf.then(&hg) == hgf, None);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::nerve::{Category, Functor, Nerve};
    use crate::solver::search::DEFAULT_BUDGET;

    const B: u64 = DEFAULT_BUDGET;

    fn nerve(c: Category) -> Nerve {
        Nerve::new(&Arc::new(c), 6)
    }

    #[test]
    fn theta_iso_matches_predicate() {
        let bz = nerve(Category::bz2());
        let q = QCat::nerve(&bz);
        for (d, iso) in [(0, false), (1, true), (2, true)] {
            let r = theta_iso_verify(&q, d, 3, B).unwrap();
            assert!(r.passed());
            assert_eq!(r.facts["theta_iso"], iso);
        }
    }

    #[test]
    fn universal_property_small() {
        let d1 = QCat::nerve(&nerve(Category::ordinal(1)));
        let d2 = QCat::nerve(&nerve(Category::ordinal(2)));
        let r = universal_property_verify(&d1, &d2, 0, B).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.facts["maps_from_c_dim0"], 6);
        let bz = QCat::nerve(&nerve(Category::bz2()));
        let r = universal_property_verify(&bz, &bz, 1, B).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = universal_property_verify(&bz, &d2, 0, B).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.facts["maps_from_c_dim0"], 3);
    }

    #[test]
    fn functor_laws() {
        let bz = nerve(Category::bz2());
        let q = QCat::nerve(&bz);
        for d in 0..=2 {
            assert!(idempotence_verify(&q, d, 4, B).unwrap().passed());
        }
        assert!(tower_verify(&q, 0, 1, 3, B).unwrap().passed());
        let d1 = nerve(Category::ordinal(1));
        let arrow = d1.category();
        let functor = Functor {
            objects: vec![0, 0],
            morphisms: (0..arrow.morphism_count())
                .map(|f| usize::from(!arrow.is_identity(f)))
                .collect(),
        };
        functor.check(arrow, bz.category()).unwrap();
        let f = d1.induced(&bz, &functor);
        let r = naturality_verify(&f, &QCat::nerve(&d1), &q, 1, 3, B).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
