//! Subcommand handlers.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::Result;
use serde_json::{json, Value};

use hdcat::constructions::{
    boundary, horn, iso_check, quotient, standard, subcomplex, Category, Cone, Functor, Nerve, Product, RelCylinder,
};
use hdcat::io::{category_to_cat, sset_to_ssx};
use hdcat::operad::mul::{multi_mapping_space, mul_truncation_verify, one_color_verify};
use hdcat::operad::truncate::{as_category, d_operad_violation, truncation_verify, warning_verify};
use hdcat::operad::alg::{alg_d_category_verify, alg_precomposition_verify};
use hdcat::operad::{h_d_operad, iso_over_fin, to_colored, ColoredOperad, FinStar, OperadData};
use hdcat::report::Report;
use hdcat::solver::lifting::{inner_fibration_violation, inner_horn_violation, is_cocartesian_edge, QCat};
use hdcat::truncation::{alpha_verify, cylinder_lemma_verify, d_category_violation, h_d, hom_middle, hom_right};
use hdcat::truncation::universal::universal_property_verify;
use hdcat::{SMap, SSet};

use crate::input::{self, input_error, Input};
use crate::{suite, BuildKind, Cli, Command, Format, Params};

/// Default dimension cap for operads over `Fin_*`.
pub const OPERAD_DIM_CAP: usize = 3;

pub fn run(cli: &Cli) -> Result<bool> {
    let p = &cli.params;
    match &cli.command {
        Command::Build { what } => build(p, what),
        Command::Check {
            quasicat,
            d_category,
            inner_fib,
            cocart,
            d_operad,
            edge,
            inputs,
        } => {
            let (name, report) = if *quasicat {
                ("check quasicat", check_quasicat(p, inputs)?)
            } else if let Some(d) = d_category {
                ("check d-category", check_d_category(p, *d, inputs)?)
            } else if *inner_fib {
                ("check inner-fib", check_inner_fib(p, inputs)?)
            } else if *cocart {
                ("check cocart", check_cocart(p, inputs, edge.as_deref())?)
            } else if let Some(d) = d_operad {
                ("check d-operad", check_d_operad(p, *d, inputs)?)
            } else {
                unreachable!("clap requires one kind")
            };
            emit_reports(p, name, inputs, vec![report])
        }
        Command::Truncate { input } => truncate(p, input),
        Command::Homspace {
            right,
            middle,
            mul,
            x,
            y,
            inputs,
            output,
            input,
        } => homspace(p, *right, *middle, *mul, x.as_deref(), y.as_deref(), inputs, output.as_deref(), input),
        Command::Verify {
            alpha,
            iso,
            cylinder_lemma,
            homrel_equivalences,
            universal_property,
            operad_suite,
            alg_d_category,
            suite: full,
            x,
            y,
            sub,
            inputs,
        } => {
            let (name, reports) = if *alpha {
                ("verify alpha", vec![verify_alpha(p, inputs, x.as_deref(), y.as_deref())?])
            } else if let Some(other) = iso {
                ("verify iso", vec![verify_iso(p, inputs, other)?])
            } else if *cylinder_lemma {
                ("verify cylinder-lemma", verify_cylinder(p, inputs, sub)?)
            } else if *homrel_equivalences {
                ("verify homrel-equivalences", verify_homrel(p, inputs, x.as_deref(), y.as_deref())?)
            } else if let Some(target) = universal_property {
                ("verify universal-property", vec![verify_universal(p, inputs, target)?])
            } else if *operad_suite {
                ("verify operad-suite", verify_operad_suite(p, inputs)?)
            } else if let Some(target) = alg_d_category {
                ("verify alg-d-category", verify_alg(p, inputs, target)?)
            } else if *full {
                ("verify suite", suite::run(p)?)
            } else {
                unreachable!("clap requires one kind")
            };
            emit_reports(p, name, inputs, reports)
        }
        Command::Report { inputs } => aggregate(p, inputs),
    }
}

fn write_out(p: &Params, text: &str) -> Result<()> {
    match &p.out {
        Some(path) => std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn parameters(p: &Params) -> Value {
    json!({
        "d": p.d,
        "dim_cap": p.dim_cap,
        "budget": p.budget,
        "arity_cap": p.arity_cap,
    })
}

/// Writes the canonical report envelope; returns whether every check passed.
pub fn emit_reports(p: &Params, command: &str, inputs: &[PathBuf], reports: Vec<Report>) -> Result<bool> {
    let passed = reports.iter().all(Report::passed);
    let envelope = json!({
        "command": command,
        "inputs": inputs.iter().map(|i| i.display().to_string()).collect::<Vec<_>>(),
        "parameters": parameters(p),
        "passed": passed,
        "reports": reports,
    });
    write_out(p, &pretty(&envelope))?;
    Ok(passed)
}

fn fin(p: &Params) -> Arc<FinStar> {
    Arc::new(FinStar::new(p.arity_cap, p.cap(OPERAD_DIM_CAP)))
}

fn one_operad(p: &Params, inputs: &[PathBuf], what: &str) -> Result<OperadData> {
    let path = input::one(inputs, what)?;
    input::operad(&path, &fin(p), p.budget)
}

fn generators(x: &Arc<SSet>, names: &[String]) -> Result<(Arc<SSet>, SMap)> {
    let gens = names.iter().map(|n| input::simplex(x, n)).collect::<Result<Vec<_>>>()?;
    Ok(subcomplex(x, &gens))
}

fn emit_sset(p: &Params, x: &SSet) -> Result<bool> {
    match p.format {
        None | Some(Format::Ssx) => write_out(p, &sset_to_ssx(x))?,
        Some(f) => return Err(input_error(format!("a simplicial set cannot be written as {f:?}"))),
    }
    Ok(true)
}

fn build(p: &Params, what: &BuildKind) -> Result<bool> {
    let x: Arc<SSet> = match what {
        BuildKind::Delta { n } => Arc::new(standard(*n)),
        BuildKind::Boundary { n } => Arc::new(boundary(*n)),
        BuildKind::Horn { n, i } => Arc::new(horn(*n, *i).map_err(|e| input_error(e.to_string()))?),
        BuildKind::Nerve { input } => Nerve::new(&input::category(input)?, p.cap(3)).sset().clone(),
        BuildKind::Product { left, right } => {
            let cap = p.cap(4);
            let (l, r) = (input::sset(left, cap)?, input::sset(right, cap)?);
            Product::new(&l, &r, cap).sset().clone()
        }
        BuildKind::Pushout { input, sub } => {
            let b = input::sset(input, p.cap(3))?;
            let (_, incl) = generators(&b, sub)?;
            quotient(&incl)?.sset().clone()
        }
        BuildKind::Cylinder { input, d, sub } => {
            let b = input::sset(input, p.cap(3))?;
            let dd = input::sset(d, p.cap(3))?;
            let (_, incl) = generators(&b, sub)?;
            RelCylinder::new(&incl, &dd)?.sset().clone()
        }
        BuildKind::J { input } => Cone::j(&input::sset(input, p.cap(3))?)?.sset().clone(),
        BuildKind::Sigma { input } => Cone::sigma(&input::sset(input, p.cap(3))?)?.sset().clone(),
        BuildKind::Category { name } => {
            let c = named_category(name)?;
            return match p.format {
                None | Some(Format::Cat) => {
                    write_out(p, &category_to_cat(&c))?;
                    Ok(true)
                }
                Some(Format::Ssx) => emit_sset(p, Nerve::new(&Arc::new(c), p.cap(3)).sset()),
                Some(Format::Opd) => Err(input_error("a category cannot be written as an operad")),
            };
        }
        BuildKind::Operad { name } => {
            let spec = named_operad(name, p.arity_cap)?;
            return match p.format {
                None | Some(Format::Opd) => {
                    write_out(p, &spec.to_json())?;
                    Ok(true)
                }
                Some(Format::Ssx) => {
                    let o = OperadData::from_colored(name.as_str(), &spec, &fin(p), p.budget)?;
                    emit_sset(p, o.total())
                }
                Some(Format::Cat) => Err(input_error("an operad cannot be written as a category")),
            };
        }
    };
    emit_sset(p, &x)
}

pub fn named_category(name: &str) -> Result<Category> {
    let square = || {
        let e: Vec<String> = ["00", "01", "10", "11"].map(String::from).to_vec();
        let less = [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")].map(|(a, b)| (a.to_string(), b.to_string()));
        Category::poset(e, &less)
    };
    match name {
        "bz2" => Ok(Category::bz2()),
        "iso-groupoid" => Ok(Category::iso_groupoid()),
        "square" => Ok(square()?),
        _ => match name.strip_prefix("ordinal-").and_then(|n| n.parse().ok()) {
            Some(n) => Ok(Category::ordinal(n)),
            None => Err(input_error(format!("unknown category {name:?} (bz2, iso-groupoid, square, ordinal-N)"))),
        },
    }
}

pub fn named_operad(name: &str, arity: usize) -> Result<ColoredOperad> {
    match name {
        "comm" => Ok(ColoredOperad::comm(arity)),
        "ass" => Ok(ColoredOperad::ass(arity)),
        "triv" => Ok(ColoredOperad::triv(arity)),
        _ => Err(input_error(format!("unknown operad {name:?} (comm, ass, triv)"))),
    }
}

fn check_quasicat(p: &Params, inputs: &[PathBuf]) -> Result<Report> {
    let path = input::one(inputs, "check --quasicat")?;
    let m = p.cap(3);
    let x = input::sset(&path, m)?;
    let mut r = Report::new("quasicat", format!("inner horns through dimension {m}"));
    let w = inner_horn_violation(&x, m, p.budget)?;
    let witness = w.map(|w| {
        let images: Vec<String> = w.horn_map.images().iter().map(|&s| x.render(s)).collect();
        format!("Λ^{}_{} ↦ [{}] has no filler", w.n, w.i, images.join(", "))
    });
    r.check("inner horns fill", witness.is_none(), witness);
    Ok(r)
}

/// A quasi-category known through `need`: CAT nerves are exact, SSX files
/// are certified through `need`.
fn qcat_through(p: &Params, path: &Path, need: usize) -> Result<QCat> {
    input::qcat(path, need, need, p.budget)
}

fn check_d_category(p: &Params, d: isize, inputs: &[PathBuf]) -> Result<Report> {
    let path = input::one(inputs, "check --d-category")?;
    let m = p.cap(3);
    let need = m.max((d + 2).max(2) as usize);
    let c = qcat_through(p, &path, need)?;
    let mut r = Report::new(format!("{d}-category"), format!("{}; dims ≤ {m}", c.bound().describe()));
    let v = d_category_violation(&c, d, m, p.budget)?;
    r.fact("violation", &v);
    r.check(format!("is a {d}-category"), v.is_none(), v.map(|v| format!("{v:?}")));
    Ok(r)
}

fn check_inner_fib(p: &Params, inputs: &[PathBuf]) -> Result<Report> {
    let [a, b] = inputs else {
        return Err(input_error("check --inner-fib takes two inputs A and B (projection A × B → A)"));
    };
    let m = p.cap(3);
    let (a, b) = (input::sset(a, m + 1)?, input::sset(b, m + 1)?);
    let prod = Product::new(&a, &b, m + 1);
    let proj = prod.project_left();
    let mut r = Report::new("inner fibration A × B → A", format!("horns through dimension {m}"));
    let w = inner_fibration_violation(&proj, m, p.budget)?;
    r.check("inner fibration", w.is_none(), w.map(|w| format!("Λ^{}_{}: {:?} over {:?}", w.n, w.i, w.upper, w.lower)));
    Ok(r)
}

fn check_cocart(p: &Params, inputs: &[PathBuf], edge: Option<&str>) -> Result<Report> {
    let [c, d] = inputs else {
        return Err(input_error("check --cocart takes two categories C and D (projection N(C × D) → N(C))"));
    };
    let m = p.cap(3);
    let (c, d) = (input::category(c)?, input::category(d)?);
    let cd = Arc::new(c.product(&d));
    let (nc, ncd) = (Nerve::new(&c, m + 1), Nerve::new(&cd, m + 1));
    let k = d.morphism_count();
    let functor = Functor {
        objects: (0..cd.object_count()).map(|o| o / d.object_count()).collect(),
        morphisms: (0..cd.morphism_count()).map(|f| f / k).collect(),
    };
    let proj = ncd.induced(&nc, &functor);
    let x = ncd.sset();
    let edges: Vec<_> = match edge {
        Some(name) => vec![input::simplex(x, name).or_else(|_| input::simplex(x, &format!("[{name}]")))?],
        None => x.nondegenerate(1).collect(),
    };
    let mut r = Report::new("coCartesian edges of N(C × D) → N(C)", format!("m = {m}"));
    let mut yes = Vec::new();
    let mut no = Vec::new();
    for &e in &edges {
        if is_cocartesian_edge(&proj, e, m, p.budget)? {
            yes.push(x.render(e));
        } else {
            no.push(x.render(e));
        }
    }
    r.fact("cocartesian", &yes);
    r.fact("not_cocartesian", &no);
    if let Some(name) = edge {
        r.check(format!("{name} is coCartesian"), no.is_empty(), no.first().cloned());
    }
    Ok(r)
}

fn check_d_operad(p: &Params, d: isize, inputs: &[PathBuf]) -> Result<Report> {
    let o = one_operad(p, inputs, "check --d-operad")?;
    let mut r = Report::new(format!("{} as a {d}-operad", o.name()), o.bound());
    let v = d_operad_violation(&o, d, p.budget)?;
    r.check(format!("is a {d}-operad"), v.is_none(), v);
    Ok(r)
}

fn truncate(p: &Params, path: &Path) -> Result<bool> {
    let d = p.d;
    if let Input::Opd(_) = input::load(path)? {
        let o = input::operad(path, &fin(p), p.budget)?;
        let t = h_d_operad(&o, d, p.budget)?;
        return match p.format {
            None | Some(Format::Opd) => {
                let spec = to_colored(t.operad()).map_err(|e| {
                    input_error(format!("h_{d} cannot be written as OPD ({e}); use --format ssx"))
                })?;
                write_out(p, &spec.to_json())?;
                Ok(true)
            }
            Some(Format::Ssx) => emit_sset(p, t.operad().total()),
            Some(Format::Cat) => Err(input_error("an operad truncation cannot be written as a category")),
        };
    }
    let m = p.cap(3);
    let need = m.max((d + 2).max(2) as usize);
    let c = qcat_through(p, path, need)?;
    let h = h_d(&c, d, m, p.budget)?;
    match p.format {
        None | Some(Format::Ssx) => emit_sset(p, h.sset()),
        Some(Format::Cat) => match as_category(h.sset())? {
            Ok((cat, _)) => {
                write_out(p, &category_to_cat(&cat))?;
                Ok(true)
            }
            Err(reason) => Err(input_error(format!("h_{d} is not a 1-category ({reason}); use --format ssx"))),
        },
        Some(Format::Opd) => Err(input_error("a category truncation cannot be written as an operad")),
    }
}

#[allow(clippy::too_many_arguments)]
fn homspace(
    p: &Params,
    right: bool,
    middle: bool,
    mul: bool,
    x: Option<&str>,
    y: Option<&str>,
    inputs: &[String],
    output: Option<&str>,
    path: &Path,
) -> Result<bool> {
    let cap = p.cap(2);
    if mul {
        let o = input::operad(path, &fin(p), p.budget)?;
        let total = o.total();
        let ins = inputs.iter().map(|c| input::simplex(total, c)).collect::<Result<Vec<_>>>()?;
        let out = input::simplex(total, output.ok_or_else(|| input_error("--mul needs --output"))?)?;
        let m = multi_mapping_space(&o, &ins, out, cap)?;
        return emit_sset(p, m.sset());
    }
    let c = input::sset(path, cap + 2)?;
    let vx = input::vertex_or_first(&c, x)?;
    let vy = input::vertex_or_first(&c, y)?;
    let space = if right {
        hom_right(&c, vx, vy, cap)?
    } else {
        debug_assert!(middle);
        hom_middle(&c, vx, vy, cap, p.budget)?
    };
    emit_sset(p, space.sset())
}

fn verify_alpha(p: &Params, inputs: &[PathBuf], x: Option<&str>, y: Option<&str>) -> Result<Report> {
    let path = input::one(inputs, "verify --alpha")?;
    let m = p.cap(3);
    let need = (m + 1).max((p.d + 2).max(2) as usize);
    let c = qcat_through(p, &path, need)?;
    let vx = input::vertex_or_first(c.sset(), x)?;
    let vy = input::vertex_or_first(c.sset(), y)?;
    Ok(alpha_verify(&c, vx, vy, p.d, m, p.budget)?)
}

fn verify_iso(p: &Params, inputs: &[PathBuf], other: &Path) -> Result<Report> {
    let path = input::one(inputs, "verify --iso")?;
    let mut r;
    match (input::load(&path)?, input::load(other)?) {
        (Input::Opd(_), Input::Opd(_)) => {
            let f = fin(p);
            let a = input::operad(&path, &f, p.budget)?;
            let b = input::operad(other, &f, p.budget)?;
            r = Report::new(format!("{} ≅ {} over Fin_*", a.name(), b.name()), a.bound());
            let iso = iso_over_fin(&a, &b, p.budget)?;
            r.check("isomorphic over Fin_*", iso.is_some(), None);
        }
        (Input::Opd(_), _) | (_, Input::Opd(_)) => {
            return Err(input_error("--iso compares two operads or two simplicial sets/categories"));
        }
        _ => {
            let cap = p.cap(3);
            let a = input::sset(&path, cap)?;
            let b = input::sset(other, cap)?;
            r = Report::new("isomorphism", format!("dims ≤ {cap}"));
            r.fact("counts", json!([a.counts(), b.counts()]));
            let iso = iso_check(&a, &b, cap, p.budget)?;
            r.check("isomorphic", iso.is_some(), None);
        }
    }
    Ok(r)
}

fn verify_cylinder(p: &Params, inputs: &[PathBuf], sub: &[String]) -> Result<Vec<Report>> {
    let cap = p.cap(4);
    match inputs {
        [] => suite::cylinder_cases(cap),
        [b, d] => {
            let b = input::sset(b, cap)?;
            let d = input::sset(d, cap)?;
            let (_, incl) = generators(&b, sub)?;
            Ok(vec![cylinder_lemma_verify(&incl, &d, cap)?])
        }
        _ => Err(input_error("verify --cylinder-lemma takes no inputs (built-in cases) or B and D with --sub")),
    }
}

fn verify_homrel(p: &Params, inputs: &[PathBuf], x: Option<&str>, y: Option<&str>) -> Result<Vec<Report>> {
    let path = input::one(inputs, "verify --homrel-equivalences")?;
    let c = qcat_through(p, &path, p.cap(4))?;
    let vx = input::vertex_or_first(c.sset(), x)?;
    let vy = match y {
        Some(_) => input::vertex_or_first(c.sset(), y)?,
        None => c.sset().nondegenerate(0).last().expect("a first vertex exists"),
    };
    suite::homrel(&c, vx, vy, p.budget)
}

fn verify_universal(p: &Params, inputs: &[PathBuf], target: &Path) -> Result<Report> {
    let path = input::one(inputs, "verify --universal-property")?;
    let need = p.cap(3).max((p.d + 3).max(2) as usize);
    let c = qcat_through(p, &path, need)?;
    let t = qcat_through(p, target, need)?;
    Ok(universal_property_verify(&c, &t, p.d, p.budget)?)
}

/// Validation, re-validation of `h_d`, the degree-wise comparison, and
/// `Mul` under `h_d` on every binary profile.
pub fn operad_suite(o: &OperadData, d: isize, budget: u64) -> Result<Vec<Report>> {
    let mut reports = vec![o.validation().clone(), truncation_verify(o, d, budget)?, warning_verify(o, d, budget)?];
    let colors = o.vertices_over(1);
    if d >= 0 && o.fin().arity_cap() >= 2 {
        for &a in &colors {
            for &b in &colors {
                for &c in &colors {
                    reports.push(mul_truncation_verify(o, d, &[a, b], c, 2, budget)?);
                }
            }
        }
    }
    if colors.len() == 1 {
        reports.push(one_color_verify(o, d, 2, budget)?);
    }
    Ok(reports)
}

fn verify_operad_suite(p: &Params, inputs: &[PathBuf]) -> Result<Vec<Report>> {
    let o = one_operad(p, inputs, "verify --operad-suite")?;
    operad_suite(&o, p.d, p.budget)
}

fn verify_alg(p: &Params, inputs: &[PathBuf], target: &Path) -> Result<Vec<Report>> {
    let f = fin(p);
    let path = input::one(inputs, "verify --alg-d-category")?;
    let o = input::operad(&path, &f, p.budget)?;
    let u = input::operad(target, &f, p.budget)?;
    let cap = p.cap(2);
    Ok(vec![
        alg_d_category_verify(&o, &u, p.d, cap, p.budget)?,
        alg_precomposition_verify(&o, &u, p.d, cap, p.budget)?,
    ])
}

fn aggregate(p: &Params, inputs: &[PathBuf]) -> Result<bool> {
    let mut runs = Vec::new();
    for path in inputs {
        let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| input_error(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))?;
        let passed = v.get("passed").and_then(Value::as_bool).ok_or_else(|| {
            input_error(format!("{}: not a report (no boolean \"passed\")", path.display()))
        })?;
        runs.push(json!({
            "file": path.display().to_string(),
            "command": v.get("command").cloned().unwrap_or(Value::Null),
            "passed": passed,
            "failures": failures(&v),
        }));
    }
    let passed = runs.iter().all(|r| r["passed"] == true);
    write_out(p, &pretty(&json!({ "passed": passed, "runs": runs })))?;
    Ok(passed)
}

fn failures(v: &Value) -> Vec<Value> {
    let mut out = Vec::new();
    for r in v.get("reports").and_then(Value::as_array).into_iter().flatten() {
        for c in r.get("checks").and_then(Value::as_array).into_iter().flatten() {
            if c.get("passed") == Some(&Value::Bool(false)) {
                out.push(json!({ "subject": r["subject"], "check": c }));
            }
        }
    }
    out
}
