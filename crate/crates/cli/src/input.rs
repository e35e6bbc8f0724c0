//! Loading SSX, CAT and OPD inputs.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use hdcat::constructions::{Category, Nerve};
use hdcat::io::{category_from_cat, sset_from_ssx};
use hdcat::operad::{ColoredOperad, FinStar, OperadData};
use hdcat::solver::lifting::QCat;
use hdcat::{Error, SSet, Simplex};

/// An input file, by extension.
pub enum Input {
    Ssx(Arc<SSet>),
    Cat(Arc<Category>),
    Opd(ColoredOperad),
}

/// Failures attributable to the inputs (exit status 3).
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn input_error(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn located(path: &Path, e: Error) -> anyhow::Error {
    input_error(format!("{}: {e}", path.display()))
}

pub fn load(path: &Path) -> anyhow::Result<Input> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    match ext {
        "ssx" => Ok(Input::Ssx(Arc::new(sset_from_ssx(&text).map_err(|e| located(path, e))?))),
        "cat" => Ok(Input::Cat(Arc::new(category_from_cat(&text).map_err(|e| located(path, e))?))),
        "opd" => Ok(Input::Opd(ColoredOperad::from_json(&text).map_err(|e| located(path, e))?)),
        _ => Err(input_error(format!(
            "{}: unknown input format (expected .ssx, .cat or .opd)",
            path.display()
        ))),
    }
}

pub fn one(inputs: &[PathBuf], what: &str) -> anyhow::Result<PathBuf> {
    match inputs {
        [p] => Ok(p.clone()),
        _ => Err(input_error(format!("{what} takes exactly one input file, got {}", inputs.len()))),
    }
}

/// A simplicial set from an SSX file, or the nerve of a CAT file through
/// `cap`.
pub fn sset(path: &Path, cap: usize) -> anyhow::Result<Arc<SSet>> {
    match load(path)? {
        Input::Ssx(x) => Ok(x),
        Input::Cat(c) => Ok(Nerve::new(&c, cap).sset().clone()),
        Input::Opd(_) => Err(input_error(format!("{}: expected a simplicial set or a category", path.display()))),
    }
}

/// A quasi-category: nerves of CAT files are exact, SSX files are certified
/// through `certify`.
pub fn qcat(path: &Path, cap: usize, certify: usize, budget: u64) -> anyhow::Result<QCat> {
    match load(path)? {
        Input::Ssx(x) => Ok(QCat::certify(&x, certify, budget)?),
        Input::Cat(c) => Ok(QCat::nerve(&Nerve::new(&c, cap))),
        Input::Opd(_) => Err(input_error(format!("{}: expected a simplicial set or a category", path.display()))),
    }
}

pub fn category(path: &Path) -> anyhow::Result<Arc<Category>> {
    match load(path)? {
        Input::Cat(c) => Ok(c),
        _ => Err(input_error(format!("{}: expected a category (.cat)", path.display()))),
    }
}

pub fn operad(path: &Path, fin: &Arc<FinStar>, budget: u64) -> anyhow::Result<OperadData> {
    let Input::Opd(spec) = load(path)? else {
        return Err(input_error(format!("{}: expected an operad (.opd)", path.display())));
    };
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("O").to_string();
    OperadData::from_colored(name, &spec, fin, budget).map_err(|e| located(path, e))
}

/// A simplex named `name` (a vertex for colors and endpoints).
pub fn simplex(x: &SSet, name: &str) -> anyhow::Result<Simplex> {
    x.lookup(name)
        .or_else(|| x.lookup(&format!("({name})")))
        .ok_or_else(|| input_error(format!("no simplex named {name:?}")))
}

pub fn vertex_or_first(x: &SSet, name: Option<&str>) -> anyhow::Result<Simplex> {
    match name {
        Some(n) => {
            let v = simplex(x, n)?;
            if v.dim() != 0 {
                return Err(input_error(format!("{n:?} is not a vertex")));
            }
            Ok(v)
        }
        None => x.nondegenerate(0).next().ok_or_else(|| input_error("the input has no vertices")),
    }
}
