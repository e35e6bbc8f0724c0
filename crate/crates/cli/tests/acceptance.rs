//! Acceptance criteria 1 to 10, one line each.  Runs as a plain binary so
//! the verdicts are always printed; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hdcat::constructions::{
    boundary_complex, horn_complex, quotient, standard_complex, standard_skeleton, Category, Cone, Functor, Nerve,
    Product, RelCylinder, VertexComplex,
};
use hdcat::io::{category_from_cat, category_to_cat, sset_from_ssx, sset_to_ssx};
use hdcat::operad::alg::{alg_d_category_verify, alg_precomposition_verify};
use hdcat::operad::mul::one_color_verify;
use hdcat::operad::truncate::{d_operad_violation, truncation_verify};
use hdcat::operad::{
    h_d_operad, iso_over_fin, multi_mapping_space, mul_truncation_verify, ColoredOperad, FinStar, OperadData,
};
use hdcat::report::Report;
use hdcat::solver::lifting::{is_cocartesian_edge, QCat};
use hdcat::solver::{enumerate_maps, DEFAULT_BUDGET};
use hdcat::truncation::lemmas::homotopy_rel_a_verify;
use hdcat::truncation::universal::{
    idempotence_verify, naturality_verify, theta_iso_verify, tower_verify, universal_property_verify,
};
use hdcat::truncation::{alpha_data, alpha_verify, cylinder_lemma_verify, d_category_violation, h_d};
use hdcat::{SSet, Simplex};

const B: u64 = DEFAULT_BUDGET;
/// Dimension cap for the kernel corpus and its products.
const KERNEL_CAP: usize = 4;
/// Wall-clock limit for the kernel laws.
const KERNEL_LIMIT: Duration = Duration::from_secs(60);
/// Dimension through which the cylinder comparison must be bijective.
const CYLINDER_CAP: usize = 4;
/// Dimension through which α is compared.
const ALPHA_DIM: usize = 3;
/// Largest map set on either side of the precomposition check.
const MAX_MAPS: usize = 200;
/// Dimension for coCartesian lifting.
const COCART_M: usize = 3;
/// Wall-clock limit for the full CLI suite.
const SUITE_LIMIT: Duration = Duration::from_secs(600);

type Verdict = hdcat::Result<(bool, String)>;

fn failures(reports: &[Report]) -> Vec<String> {
    reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{}: {}", r.subject, c.name)))
        .collect()
}

fn summary(reports: &[Report]) -> (bool, String) {
    let bad = failures(reports);
    let detail = match bad.first() {
        None => format!("{} reports pass", reports.len()),
        Some(first) => format!("{} of {} checks fail, first: {first}", bad.len(), reports.len()),
    };
    (bad.is_empty(), detail)
}

fn nerve(c: Category, cap: usize) -> QCat {
    QCat::nerve(&Nerve::new(&Arc::new(c), cap))
}

fn square() -> Category {
    Category::ordinal(1).product(&Category::ordinal(1))
}

fn vertex(k: usize) -> Simplex {
    Simplex::nondegenerate(0, k)
}

/// Δⁿ (n ≤ 4), ∂Δⁿ and Λⁿᵢ (1 ≤ n ≤ 4).
fn kernel_corpus() -> hdcat::Result<Vec<(String, VertexComplex)>> {
    let mut out = Vec::new();
    for n in 0..=4 {
        out.push((format!("Δ{n}"), standard_complex(n)));
    }
    for n in 1..=4 {
        out.push((format!("∂Δ{n}"), boundary_complex(n)));
        for i in 0..=n {
            out.push((format!("Λ{n},{i}"), horn_complex(n, i)?));
        }
    }
    Ok(out)
}

fn cylinder_pairs() -> hdcat::Result<Vec<(&'static str, VertexComplex, VertexComplex)>> {
    Ok(vec![
        ("∂Δ¹ ⊆ Δ¹", boundary_complex(1), standard_complex(1)),
        ("Λ²₁ ⊆ Δ²", horn_complex(2, 1)?, standard_complex(2)),
        ("∅ ⊆ Δ¹", standard_skeleton(1, -1), standard_complex(1)),
    ])
}

fn cylinder_ds() -> Vec<(&'static str, VertexComplex)> {
    vec![("Δ⁰", standard_complex(0)), ("∂Δ¹", boundary_complex(1)), ("Δ¹", standard_complex(1))]
}

/// Simplicial identities and normal-form uniqueness on the kernel corpus,
/// all pairwise products, and the quotients, cylinders and cones built
/// from it.
fn kernel_laws() -> Verdict {
    let start = Instant::now();
    let corpus = kernel_corpus()?;
    let mut checked = 0usize;
    let mut check = |x: &SSet| -> hdcat::Result<()> {
        x.validate()?;
        x.check_all_identities(KERNEL_CAP)?;
        checked += 1;
        Ok(())
    };
    for (_, a) in &corpus {
        check(a.sset())?;
        for (_, b) in &corpus {
            check(Product::new(a.sset(), b.sset(), KERNEL_CAP).sset())?;
        }
    }
    for n in 1..=3 {
        let simplex = standard_complex(n);
        check(quotient(&boundary_complex(n).inclusion_into(&simplex)?)?.sset())?;
        for i in 0..=n {
            check(quotient(&horn_complex(n, i)?.inclusion_into(&simplex)?)?.sset())?;
        }
    }
    for (_, a, b) in cylinder_pairs()? {
        let incl = a.inclusion_into(&b)?;
        for (_, d) in cylinder_ds() {
            check(RelCylinder::new(&incl, d.sset())?.sset())?;
        }
        check(Cone::j(b.sset())?.sset())?;
        check(Cone::sigma(b.sset())?.sset())?;
    }
    let elapsed = start.elapsed();
    Ok((
        elapsed < KERNEL_LIMIT,
        format!("{checked} simplicial sets through dim {KERNEL_CAP} in {:.1}s (limit {}s)", elapsed.as_secs_f64(), KERNEL_LIMIT.as_secs()),
    ))
}

fn cylinder_lemma() -> Verdict {
    let mut reports = Vec::new();
    for (_, a, b) in cylinder_pairs()? {
        let incl = a.inclusion_into(&b)?;
        for (_, d) in cylinder_ds() {
            reports.push(cylinder_lemma_verify(&incl, d.sset(), CYLINDER_CAP)?);
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    Ok((passed == 9 && reports.len() == 9, format!("{passed}/{} cases bijective through dim {CYLINDER_CAP}", reports.len())))
}

fn homotopy_rel_a() -> Verdict {
    let b = standard_complex(1);
    let subs = [standard_skeleton(1, -1), boundary_complex(1)];
    let mut reports = Vec::new();
    for c in [Category::ordinal(2), Category::bz2(), Category::iso_groupoid()] {
        let q = nerve(c, 6);
        let k = q.sset().count(0);
        for x in 0..k {
            for y in 0..k {
                for a in &subs {
                    reports.push(homotopy_rel_a_verify(&q, vertex(x), vertex(y), &a.inclusion_into(&b)?, B)?);
                }
            }
        }
    }
    Ok(summary(&reports))
}

fn alpha() -> Verdict {
    let mut reports = Vec::new();
    for c in [Category::ordinal(2), Category::bz2(), square()] {
        let q = nerve(c, 6);
        let k = q.sset().count(0);
        for d in 0..=2 {
            for x in 0..k {
                for y in 0..k {
                    reports.push(alpha_verify(&q, vertex(x), vertex(y), d, ALPHA_DIM, B)?);
                }
            }
        }
    }
    let (mut ok, mut detail) = summary(&reports);
    let bz2 = nerve(Category::bz2(), 6);
    let data = alpha_data(&bz2, vertex(0), vertex(0), 1, ALPHA_DIM, B)?;
    let two_points = |x: &Arc<SSet>| x.counts() == vec![2];
    let sides = two_points(data.left.sset()) && two_points(data.right.sset());
    ok &= sides;
    detail.push_str(&format!("; N(BZ/2), d=1: both sides 2-point discrete: {sides}"));
    Ok((ok, detail))
}

fn universal_property() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    // θ_d is an isomorphism exactly on d-categories
    let poset = [Category::ordinal(1), Category::ordinal(2), square()];
    for (name, c, d, expect) in poset
        .iter()
        .map(|c| ("poset", c.clone(), 0, true))
        .chain([("BZ/2", Category::bz2(), 1, true), ("iso", Category::iso_groupoid(), 1, true), ("Δ²", Category::ordinal(2), 1, true)])
        .chain([("BZ/2", Category::bz2(), 0, false), ("iso", Category::iso_groupoid(), 0, false)])
    {
        let q = nerve(c, 6);
        let r = theta_iso_verify(&q, d, 3, B)?;
        let iso = r.facts["theta_iso"] == true;
        let dcat = d_category_violation(&q, d, 3, B)?.is_none();
        if !r.passed() || iso != expect || dcat != expect {
            ok = false;
            notes.push(format!("{name} d={d}: θ iso {iso}, d-category {dcat}"));
        }
    }
    // precomposition along θ_d on every corpus pair with ≤ MAX_MAPS maps per side
    let cats = [Category::ordinal(1), Category::ordinal(2), square(), Category::bz2(), Category::iso_groupoid()];
    let mut pairs = 0;
    let mut skipped = 0;
    for d in 0..=1 {
        for c in &cats {
            for t in &cats {
                let (qc, qt) = (nerve(c.clone(), 5), nerve(t.clone(), 5));
                if d_category_violation(&qt, d, 3, B)?.is_some() {
                    continue;
                }
                let r = universal_property_verify(&qc, &qt, d, B)?;
                let sizes: Vec<usize> = r
                    .facts
                    .iter()
                    .filter(|(k, _)| k.starts_with("maps_from"))
                    .map(|(_, v)| v.as_u64().unwrap_or(u64::MAX) as usize)
                    .collect();
                if sizes.iter().any(|&s| s > MAX_MAPS) {
                    skipped += 1;
                    continue;
                }
                pairs += 1;
                if !r.passed() {
                    ok = false;
                    notes.push(format!("precomposition fails: {}", r.subject));
                }
            }
        }
    }
    let mut detail = format!("θ iso detection on 8 inputs; precomposition bijective on {pairs} pairs ({skipped} over {MAX_MAPS} maps)");
    if let Some(n) = notes.first() {
        detail.push_str(&format!("; {n}"));
    }
    Ok((ok, detail))
}

fn functor_laws() -> Verdict {
    let m = 4;
    let cats = [Category::ordinal(1), Category::ordinal(2), square(), Category::bz2(), Category::iso_groupoid()];
    let qs: Vec<QCat> = cats.iter().map(|c| nerve(c.clone(), m + 2)).collect();
    let mut reports = Vec::new();
    for q in &qs {
        for d in 0..=2 {
            reports.push(idempotence_verify(q, d, m, B)?);
            for e in -1..=d {
                reports.push(tower_verify(q, e, d, m, B)?);
            }
        }
    }
    let mut squares = 0;
    for (i, q) in qs.iter().enumerate().take(2) {
        for (j, q2) in qs.iter().enumerate() {
            if i == j {
                continue;
            }
            for f in enumerate_maps(q.sset(), q2.sset(), B)? {
                for d in 0..=2 {
                    reports.push(naturality_verify(&f, q, q2, d, 3, B)?);
                    squares += 1;
                }
            }
        }
    }
    let (ok, detail) = summary(&reports);
    Ok((ok, format!("{detail} ({squares} naturality squares)")))
}

/// The projection `N(C × D) → N(C)` and its image under `h_1`.
fn cocartesian() -> Verdict {
    let cap = COCART_M + 1;
    let mut ok = true;
    let mut positives = 0;
    let mut negatives = 0;
    for (c, d) in [
        (Category::ordinal(1), Category::ordinal(1)),
        (Category::bz2(), Category::ordinal(1)),
        (Category::ordinal(1), Category::iso_groupoid()),
    ] {
        let (c, d) = (Arc::new(c), Arc::new(d));
        let cd = Arc::new(c.product(&d));
        let (nc, ncd) = (Nerve::new(&c, cap + 2), Nerve::new(&cd, cap + 2));
        let k = d.morphism_count();
        let functor = Functor {
            objects: (0..cd.object_count()).map(|o| o / d.object_count()).collect(),
            morphisms: (0..cd.morphism_count()).map(|f| f / k).collect(),
        };
        let p = ncd.induced(&nc, &functor);
        let (qcd, qc) = (QCat::nerve(&ncd), QCat::nerve(&nc));
        let (hcd, hc) = (h_d(&qcd, 1, cap, B)?, h_d(&qc, 1, cap, B)?);
        let hp = hcd.induced(&p, &hc)?;
        for e in ncd.sset().nondegenerate(1) {
            // (f, g) is coCartesian over N(C) exactly when g is invertible
            let expected = d.inverse(ncd.morphism(e) % k).is_some();
            let here = is_cocartesian_edge(&p, e, COCART_M, B)?;
            if here != expected {
                ok = false;
            }
            let image = is_cocartesian_edge(&hp, hcd.theta(e)?, COCART_M, B)?;
            if here {
                positives += 1;
                ok &= image;
            } else {
                negatives += 1;
                ok &= !image;
            }
        }
    }
    Ok((ok, format!("{positives} coCartesian edges stay coCartesian under h_1; {negatives} non-coCartesian edges fail")))
}

fn operads(fin: &Arc<FinStar>) -> hdcat::Result<[OperadData; 3]> {
    Ok([
        OperadData::from_colored("Comm", &ColoredOperad::comm(fin.arity_cap()), fin, B)?,
        OperadData::from_colored("Ass", &ColoredOperad::ass(fin.arity_cap()), fin, B)?,
        OperadData::from_colored("Triv", &ColoredOperad::triv(fin.arity_cap()), fin, B)?,
    ])
}

fn operad_suite() -> Verdict {
    let fin = Arc::new(FinStar::new(2, 3));
    let [comm, ass, triv] = operads(&fin)?;
    let mut reports = Vec::new();
    let mut levels = Report::new("operad levels", comm.bound());
    for (o, d, expected) in [(&comm, 0, true), (&ass, 1, true), (&ass, 0, false)] {
        let v = d_operad_violation(o, d, B)?;
        levels.check(format!("{} is a {d}-operad: {expected}", o.name()), v.is_none() == expected, v);
    }
    let x = triv.vertices_over(1)[0];
    let mul = multi_mapping_space(&triv, &[x, x], x, 2)?;
    levels.check("Triv has empty binary Mul", mul.sset().is_empty(), None);
    reports.push(levels);

    let fin3 = Arc::new(FinStar::new(3, 2));
    let [comm3, ass3, _] = operads(&fin3)?;
    let mut h0 = Report::new("h_0(Ass) ≅ Comm, arity cap 3", ass3.bound());
    let t = h_d_operad(&ass3, 0, B)?;
    h0.check("isomorphic over Fin_*", iso_over_fin(t.operad(), &comm3, B)?.is_some(), None);
    reports.push(h0);

    for o in [&comm, &ass, &triv] {
        let colors = o.vertices_over(1);
        for d in -1..=1 {
            reports.push(truncation_verify(o, d, B)?);
            if d >= 0 {
                for &a in &colors {
                    for &b in &colors {
                        for &c in &colors {
                            reports.push(mul_truncation_verify(o, d, &[a, b], c, 3, B)?);
                        }
                    }
                }
                reports.push(one_color_verify(o, d, 3, B)?);
            }
        }
    }
    Ok(summary(&reports))
}

fn algebras() -> Verdict {
    let fin = Arc::new(FinStar::new(2, 3));
    let [comm, ass, triv] = operads(&fin)?;
    let reports = vec![
        alg_d_category_verify(&triv, &comm, 0, 2, B)?,
        alg_d_category_verify(&comm, &comm, 0, 2, B)?,
        alg_precomposition_verify(&ass, &comm, 0, 2, B)?,
    ];
    let ok = reports.iter().all(|r| r.passed() && r.facts.get("target_is_d_operad").is_none_or(|v| v == true));
    Ok((ok, summary(&reports).1))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn determinism() -> Verdict {
    let run = || -> (Duration, std::process::Output) {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_hdcat")).args(["verify", "--suite"]).output().expect("binary runs");
        (start.elapsed(), out)
    };
    let (t1, a) = run();
    let (_, b) = run();
    let identical = a.stdout == b.stdout && !a.stdout.is_empty();
    let suite_ok = a.status.success();
    let mut round_trips = 0;
    let mut broken = Vec::new();
    let entries = std::fs::read_dir(corpus_dir()).map_err(|e| hdcat::Error::Parse(e.to_string()))?;
    let mut files: BTreeSet<PathBuf> = BTreeSet::new();
    for e in entries {
        files.insert(e.map_err(|e| hdcat::Error::Parse(e.to_string()))?.path());
    }
    for p in &files {
        let text = std::fs::read_to_string(p).map_err(|e| hdcat::Error::Parse(e.to_string()))?;
        let again = match p.extension().and_then(|e| e.to_str()) {
            Some("ssx") => sset_to_ssx(&sset_from_ssx(&text)?),
            Some("cat") => category_to_cat(&category_from_cat(&text)?),
            Some("opd") => ColoredOperad::from_json(&text)?.to_json(),
            _ => continue,
        };
        round_trips += 1;
        if again != text {
            broken.push(p.display().to_string());
        }
    }
    let ok = identical && suite_ok && broken.is_empty() && t1 < SUITE_LIMIT;
    Ok((
        ok,
        format!(
            "suite passed: {suite_ok}, byte-identical: {identical}, {:.1}s (limit {}s); {round_trips} corpus files round-trip{}",
            t1.as_secs_f64(),
            SUITE_LIMIT.as_secs(),
            if broken.is_empty() { String::new() } else { format!(", broken: {broken:?}") }
        ),
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("kernel laws", kernel_laws),
        ("cylinder lemma", cylinder_lemma),
        ("homotopy rel A", homotopy_rel_a),
        ("mapping spaces of h_d", alpha),
        ("universal property of h_d", universal_property),
        ("functor laws", functor_laws),
        ("coCartesian edges under h_1", cocartesian),
        ("operad suite", operad_suite),
        ("algebras in d-operads", algebras),
        ("CLI determinism and round trips", determinism),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        all &= ok;
        println!(
            "criterion {:>2} {}: {name}: {detail} [{:.1}s]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
