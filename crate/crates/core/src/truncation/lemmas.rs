//! Finite checks of the cylinder isomorphism `Σ(B ⋊_A D) ≅ ΣB ⋊_{ΣA} D`
//! and of the four descriptions of homotopies rel `A` between maps into a
//! right mapping space.

use std::sync::Arc;

use crate::constructions::cones::{Cone, JoinPart, RelCylinder};
use crate::error::Result;
use crate::report::Report;
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::homotopy::HomotopyContext;
use crate::solver::lifting::QCat;
use crate::solver::search::Solver;
use crate::sset::{precompose_surjection, SSet};
use crate::truncation::mapping::{hom_middle, hom_right, phi, MappingSpace};

fn constant(v: Simplex, n: usize) -> Simplex {
    precompose_surjection(v, &vec![0; n + 1])
}

/// The comparison `Σ(B ⋊_A D) → ΣB ⋊_{ΣA} D`, sending the class of
/// `((b, x), t)` to `([b, t], x)` and the class of `(a, t)` to `[a, t]`.
pub fn cylinder_comparison(incl: &SMap, d: &Arc<SSet>) -> Result<SMap> {
    let rel = RelCylinder::new(incl, d)?;
    let source = Cone::sigma_relative(rel.sset());
    let sa = Cone::sigma_relative(incl.source());
    let sb = Cone::sigma_relative(incl.target());
    let target = RelCylinder::new(&sa.induced(&sb, incl), d)?;
    let cyl = source.cylinder();
    let images = cyl
        .sset()
        .all_nondegenerate()
        .map(|p| {
            let (s, t) = cyl.split(p);
            match rel.split(s) {
                Ok((b, x)) => target.pair(sb.covering_map().eval(sb.cylinder().pair(b, t)), x),
                Err(a) => target.leg_a().eval(sa.covering_map().eval(sa.cylinder().pair(a, t))),
            }
        })
        .collect();
    let on_cover = SMap::new_unchecked(cyl.sset().clone(), target.sset().clone(), images);
    let ends = source.pushout().leg_c().source().clone();
    let end_images = ends
        .all_nondegenerate()
        .map(|v| target.leg_a().eval(sa.pushout().leg_c().eval(v)))
        .collect();
    let on_ends = SMap::new_unchecked(ends, target.sset().clone(), end_images);
    Ok(source.pushout().universal(target.sset(), &on_cover, &on_ends))
}

/// Checks that the cylinder comparison is a simplicial bijection through
/// dimension `cap`.
pub fn cylinder_lemma_verify(incl: &SMap, d: &Arc<SSet>, cap: usize) -> Result<Report> {
    let mut report = Report::new("cylinder_lemma", "exact");
    let map = cylinder_comparison(incl, d)?;
    report.fact("source_counts", map.source().counts());
    report.fact("target_counts", map.target().counts());
    let ok = map.check();
    report.check("comparison simplicial", ok.is_ok(), ok.err().map(|e| e.to_string()));
    report.check("comparison bijective", map.is_bijective_through(cap), None);
    Ok(report)
}

/// `f̄: J(B) → C` for `f: B → hom^R_C(X, Y)`.
pub fn j_adjoint(cone: &Cone, right: &MappingSpace, f: &SMap) -> SMap {
    let (x, y) = right.endpoints();
    let images = cone
        .sset()
        .all_nondegenerate()
        .map(|s| match cone.lift(s).map(|l| cone.join().part(l)) {
            None | Some(JoinPart::Base(_)) => constant(x, s.dim()),
            Some(JoinPart::Apex) => constant(y, s.dim()),
            Some(JoinPart::Join(b)) => right.ambient_simplex(f.eval(b)),
        })
        .collect();
    SMap::new_unchecked(cone.sset().clone(), right.ambient().clone(), images)
}

/// `F̄: Σ(B) → C` for `F: B → hom^M_C(X, Y)`: the class of `(b, t)` goes
/// to the value of `F(b): Δⁿ × Δ¹ → C` at `(ιₙ, t)`.
pub fn sigma_adjoint(cone: &Cone, middle: &MappingSpace, big: &SMap) -> SMap {
    let (x, y) = middle.endpoints();
    let (start, _) = cone.marked();
    let images = cone
        .sset()
        .all_nondegenerate()
        .map(|s| match cone.lift(s) {
            None if s == start => x,
            None => y,
            Some(p) => {
                let (b, t) = cone.cylinder().split(p);
                let n = p.dim();
                let prism = middle.prism(n);
                let value = SMap::new_unchecked(
                    prism.sset().clone(),
                    middle.ambient().clone(),
                    middle.prism_map(big.eval(b)),
                );
                value.eval(prism.pair(Simplex::nondegenerate(n, 0), t))
            }
        })
        .collect();
    SMap::new_unchecked(cone.sset().clone(), middle.ambient().clone(), images)
}

/// Reflexivity, symmetry and transitivity of homotopy rel `A` on `maps`
/// (pairs are compared only when they agree on `A`).  Returns the first
/// violation.
pub fn equivalence_violation(ctx: &HomotopyContext, incl: &SMap, maps: &[SMap]) -> Result<Option<String>> {
    let n = maps.len();
    let mut rel = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if maps[i].restrict(incl) == maps[j].restrict(incl) {
                rel[i][j] = Some(ctx.homotopy(&maps[i], &maps[j])?.is_some());
            }
        }
    }
    for i in 0..n {
        if rel[i][i] != Some(true) {
            return Ok(Some(format!("not reflexive at map {i}")));
        }
        for j in 0..n {
            if rel[i][j] != rel[j][i] {
                return Ok(Some(format!("not symmetric on maps {i}, {j}")));
            }
            for k in 0..n {
                if rel[i][j] == Some(true) && rel[j][k] == Some(true) && rel[i][k] != Some(true) {
                    return Ok(Some(format!("not transitive on maps {i}, {j}, {k}")));
                }
            }
        }
    }
    Ok(None)
}

/// For all pairs `f, g: B → hom^R_C(X, Y)`, checks that the four
/// conditions (agreement on, resp. homotopy rel, `A` in `hom^R`, in `hom^M`
/// via `Φ`, of `f̄, ḡ` on `J(A) ⊆ J(B)`, and of `F̄, Ḡ` on `Σ(A) ⊆ Σ(B)`)
/// return the same booleans, and that each relation is an equivalence
/// relation.  `B` must be nonempty.
pub fn homotopy_rel_a_verify(c: &QCat, x: Simplex, y: Simplex, incl: &SMap, budget: u64) -> Result<Report> {
    let cs = c.sset();
    let mut report = Report::new(
        format!("homotopy_rel_a X={} Y={}", cs.name(x), cs.name(y)),
        c.bound().describe(),
    );
    let b = incl.target();
    let cap = b.top_dim().unwrap_or(0) + 2;
    let right = hom_right(cs, x, y, cap)?;
    let middle = hom_middle(cs, x, y, cap, budget)?;
    let phi = phi(&right, &middle)?;
    let kq = QCat::certify(right.sset(), cap, budget)?;
    let mq = QCat::certify(middle.sset(), cap, budget)?;
    let ja = Cone::j_relative(incl.source());
    let jb = Cone::j(b)?;
    let j_incl = ja.induced(&jb, incl);
    let sa = Cone::sigma_relative(incl.source());
    let sb = Cone::sigma(b)?;
    let s_incl = sa.induced(&sb, incl);
    let contexts = [
        HomotopyContext::new(incl, &kq, budget)?,
        HomotopyContext::new(incl, &mq, budget)?,
        HomotopyContext::new(&j_incl, c, budget)?,
        HomotopyContext::new(&s_incl, c, budget)?,
    ];
    let incls = [incl, incl, &j_incl, &s_incl];

    let fs = Solver::new(right.sset(), budget).maps(b)?;
    let mut models: [Vec<SMap>; 4] = Default::default();
    for f in &fs {
        let big = f.then(&phi);
        models[2].push(j_adjoint(&jb, &right, f));
        models[3].push(sigma_adjoint(&sb, &middle, &big));
        models[0].push(f.clone());
        models[1].push(big);
    }
    let simplicial = models[2..]
        .iter()
        .flatten()
        .map(SMap::check)
        .find(|r| r.is_err())
        .map(|r| r.unwrap_err().to_string());
    report.check("adjoint maps simplicial", simplicial.is_none(), simplicial);
    report.fact("maps", fs.len());

    let mut mismatch = None;
    let mut homotopic = 0usize;
    let mut agreeing = 0usize;
    for i in 0..fs.len() {
        for j in 0..fs.len() {
            let agree: Vec<bool> = (0..4)
                .map(|k| models[k][i].restrict(incls[k]) == models[k][j].restrict(incls[k]))
                .collect();
            let mut row = format!("agree {agree:?}");
            let mut same = agree.iter().all(|&a| a == agree[0]);
            if same && agree[0] {
                agreeing += 1;
                let h = (0..4)
                    .map(|k| Ok(contexts[k].homotopy(&models[k][i], &models[k][j])?.is_some()))
                    .collect::<Result<Vec<bool>>>()?;
                same = h.iter().all(|&a| a == h[0]);
                homotopic += usize::from(h[0]);
                row = format!("homotopic {h:?}");
            }
            if !same {
                mismatch.get_or_insert(format!("maps {i}, {j}: {row}"));
            }
        }
    }
    report.fact("agreeing_pairs", agreeing);
    report.fact("homotopic_pairs", homotopic);
    report.check("four conditions agree", mismatch.is_none(), mismatch);
    for (k, name) in ["hom^R", "hom^M", "J", "Σ"].iter().enumerate() {
        let v = equivalence_violation(&contexts[k], incls[k], &models[k])?;
        report.check(format!("equivalence relation ({name})"), v.is_none(), v);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::nerve::{Category, Nerve};
    use crate::constructions::standard::{boundary_complex, horn_complex, standard_complex, standard_skeleton};
    use crate::solver::search::DEFAULT_BUDGET;

    #[test]
    fn cylinder_square() {
        let a = boundary_complex(1);
        let b = standard_complex(1);
        let incl = a.inclusion_into(&b).unwrap();
        for d in [standard_complex(0), boundary_complex(1), standard_complex(1)] {
            let r = cylinder_lemma_verify(&incl, d.sset(), 4).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let h = horn_complex(2, 1).unwrap();
        let incl = h.inclusion_into(&standard_complex(2)).unwrap();
        assert!(cylinder_lemma_verify(&incl, standard_complex(1).sset(), 4).unwrap().passed());
        let e = standard_skeleton(1, -1);
        let incl = e.inclusion_into(&b).unwrap();
        assert!(cylinder_lemma_verify(&incl, standard_complex(1).sset(), 4).unwrap().passed());
    }

    #[test]
    fn four_conditions_on_bz2() {
        let bz = Nerve::new(&Arc::new(Category::bz2()), 6);
        let q = QCat::nerve(&bz);
        let v = Simplex::nondegenerate(0, 0);
        let b = standard_complex(1);
        for a in [boundary_complex(1), standard_skeleton(1, -1)] {
            let r = homotopy_rel_a_verify(&q, v, v, &a.inclusion_into(&b).unwrap(), DEFAULT_BUDGET).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.facts["maps"], 2);
        }
    }
}
