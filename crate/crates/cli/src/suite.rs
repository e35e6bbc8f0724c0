//! The built-in verification suite over a fixed corpus.

use std::sync::Arc;

use anyhow::Result;

use hdcat::constructions::{boundary_complex, horn_complex, standard_complex, standard_skeleton, Category, Nerve};
use hdcat::operad::alg::{alg_d_category_verify, alg_precomposition_verify};
use hdcat::operad::truncate::d_operad_violation;
use hdcat::operad::{h_d_operad, iso_over_fin, ColoredOperad, FinStar, OperadData};
use hdcat::report::Report;
use hdcat::solver::lifting::QCat;
use hdcat::truncation::lemmas::homotopy_rel_a_verify;
use hdcat::truncation::universal::theta_iso_verify;
use hdcat::truncation::{alpha_verify, cylinder_lemma_verify};
use hdcat::Simplex;

use crate::commands::{named_category, operad_suite};
use crate::Params;

/// `A ⊆ B` in {∂Δ¹ ⊆ Δ¹, Λ²₁ ⊆ Δ², ∅ ⊆ Δ¹} against `D` in {Δ⁰, ∂Δ¹, Δ¹}.
pub fn cylinder_cases(cap: usize) -> Result<Vec<Report>> {
    let pairs = [
        ("∂Δ¹ ⊆ Δ¹", boundary_complex(1), standard_complex(1)),
        ("Λ²₁ ⊆ Δ²", horn_complex(2, 1)?, standard_complex(2)),
        ("∅ ⊆ Δ¹", standard_skeleton(1, -1), standard_complex(1)),
    ];
    let ds = [("Δ⁰", standard_complex(0)), ("∂Δ¹", boundary_complex(1)), ("Δ¹", standard_complex(1))];
    let mut reports = Vec::new();
    for (an, a, b) in &pairs {
        let incl = a.inclusion_into(b)?;
        for (dn, d) in &ds {
            let mut r = cylinder_lemma_verify(&incl, d.sset(), cap)?;
            r.subject = format!("cylinder_lemma {an}, D = {dn}");
            reports.push(r);
        }
    }
    Ok(reports)
}

/// The four homotopy-rel-A conditions for maps `Δ¹ → hom^R(X, Y)`, with
/// `A = ∅` and `A = ∂Δ¹`.
pub fn homrel(c: &QCat, x: Simplex, y: Simplex, budget: u64) -> Result<Vec<Report>> {
    let b = standard_complex(1);
    let mut reports = Vec::new();
    for (name, a) in [("∅", standard_skeleton(1, -1)), ("∂Δ¹", boundary_complex(1))] {
        let mut r = homotopy_rel_a_verify(c, x, y, &a.inclusion_into(&b)?, budget)?;
        r.subject = format!("{} A={name}", r.subject);
        reports.push(r);
    }
    Ok(reports)
}

fn nerve(name: &str, cap: usize) -> Result<QCat> {
    let c = named_category(name)?;
    Ok(QCat::nerve(&Nerve::new(&Arc::new(c), cap)))
}

fn tag(mut r: Report, prefix: &str) -> Report {
    r.subject = format!("{prefix}: {}", r.subject);
    r
}

/// Every built-in check at desk scale, in a fixed order.
pub fn run(p: &Params) -> Result<Vec<Report>> {
    let budget = p.budget;
    let mut out = cylinder_cases(4)?;

    let delta2 = QCat::nerve(&Nerve::new(&Arc::new(Category::ordinal(2)), 6));
    let bz2 = nerve("bz2", 6)?;
    let iso = nerve("iso-groupoid", 6)?;
    let square = nerve("square", 6)?;
    let v = |_: &QCat, k: usize| Simplex::nondegenerate(0, k);
    for (name, q, y) in [("Δ²", &delta2, 2), ("N(BZ/2)", &bz2, 0), ("iso groupoid", &iso, 1)] {
        for r in homrel(q, v(q, 0), v(q, y), budget)? {
            out.push(tag(r, name));
        }
    }

    for (name, q) in [("Δ²", &delta2), ("N(BZ/2)", &bz2), ("2×2", &square)] {
        let n = q.sset().count(0);
        for d in 0..=2 {
            for x in 0..n {
                for y in 0..n {
                    out.push(tag(alpha_verify(q, v(q, x), v(q, y), d, 3, budget)?, name));
                }
            }
        }
    }
    for (name, q, d) in [("2×2", &square, 0), ("Δ²", &delta2, 1), ("N(BZ/2)", &bz2, 0), ("N(BZ/2)", &bz2, 1)] {
        out.push(tag(theta_iso_verify(q, d, 3, budget)?, name));
    }

    let fin = Arc::new(FinStar::new(2, 3));
    let comm = OperadData::from_colored("Comm", &ColoredOperad::comm(2), &fin, budget)?;
    let ass = OperadData::from_colored("Ass", &ColoredOperad::ass(2), &fin, budget)?;
    let triv = OperadData::from_colored("Triv", &ColoredOperad::triv(2), &fin, budget)?;
    let mut levels = Report::new("operad levels", comm.bound());
    for (o, d, expected) in [(&comm, 0, true), (&ass, 1, true), (&ass, 0, false), (&triv, 0, true)] {
        let v = d_operad_violation(o, d, budget)?;
        levels.check(format!("{} is a {d}-operad: {expected}", o.name()), v.is_none() == expected, v);
    }
    out.push(levels);
    let mut h0 = Report::new("h_0(Ass) ≅ Comm", ass.bound());
    let t = h_d_operad(&ass, 0, budget)?;
    h0.check("isomorphic over Fin_*", iso_over_fin(t.operad(), &comm, budget)?.is_some(), None);
    out.push(h0);
    for o in [&comm, &ass, &triv] {
        for d in -1..=1 {
            out.extend(operad_suite(o, d, budget)?);
        }
    }
    for o in [&triv, &comm] {
        out.push(alg_d_category_verify(o, &comm, 0, 2, budget)?);
    }
    out.push(alg_precomposition_verify(&ass, &comm, 0, 2, budget)?);
    Ok(out)
}
