//! ∞-operads presented as simplicial sets over the nerve of `Fin_*`, with
//! their inert-lift certificates and validation.
//!
//! Validation runs in strict mode: coCartesian edges, the Segal condition
//! and the decomposition of objects are checked on vertices, edges and
//! 2-simplices as bijections of sets, which is exact for operadic nerves of
//! colored operads (nerves of 1-categories).  Inner fibrancy of the
//! projection is checked by the lifting solver.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::constructions::nerve::{Category, Functor, Nerve};
use crate::error::{Error, Result};
use crate::operad::colored::{operators, ColoredOperad, OperadTables};
use crate::operad::finstar::FinStar;
use crate::report::Report;
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::lifting::inner_fibration_violation;
use crate::sset::SSet;

/// Vertices, edges (degenerate ones included) and composites read off the
/// 2-simplices of a simplicial set over `N(Fin_*)`.
#[derive(Clone, Debug, Default)]
pub struct Arrows {
    vertices: Vec<Simplex>,
    object: HashMap<Simplex, usize>,
    hom: HashMap<(Simplex, Simplex), Vec<Simplex>>,
    out: HashMap<Simplex, Vec<Simplex>>,
    base: HashMap<Simplex, usize>,
    comp: HashMap<(Simplex, Simplex), Vec<Simplex>>,
}

impl Arrows {
    fn new(total: &SSet, proj: &SMap, fin: &FinStar) -> Arrows {
        let mut a = Arrows {
            vertices: total.nondegenerate(0).collect(),
            ..Arrows::default()
        };
        for &v in &a.vertices {
            a.object.insert(v, fin.object_of(proj.eval(v)));
        }
        for e in total.simplices(1) {
            let (x, y) = (total.face(1, e), total.face(0, e));
            a.hom.entry((x, y)).or_default().push(e);
            a.out.entry(x).or_default().push(e);
            a.base.insert(e, fin.morphism_of(proj.eval(e)));
        }
        for s in total.simplices(2) {
            a.comp.entry((total.face(2, s), total.face(0, s))).or_default().push(total.face(1, s));
        }
        for v in a.comp.values_mut() {
            v.sort();
            v.dedup();
        }
        a
    }

    pub fn vertices(&self) -> &[Simplex] {
        &self.vertices
    }

    /// The `n` with the vertex over `⟨n⟩`.
    pub fn object(&self, v: Simplex) -> usize {
        self.object[&v]
    }

    /// Edges `x → y`, in canonical order.
    pub fn hom(&self, x: Simplex, y: Simplex) -> &[Simplex] {
        self.hom.get(&(x, y)).map_or(&[], |v| v.as_slice())
    }

    pub fn out_of(&self, x: Simplex) -> &[Simplex] {
        self.out.get(&x).map_or(&[], |v| v.as_slice())
    }

    /// The morphism of `Fin_*` under an edge.
    pub fn base(&self, e: Simplex) -> usize {
        self.base[&e]
    }

    /// The composites of `a` followed by `b` (third edges of 2-simplices).
    pub fn composites(&self, a: Simplex, b: Simplex) -> &[Simplex] {
        self.comp.get(&(a, b)).map_or(&[], |v| v.as_slice())
    }

    /// The composite when it is unique.
    pub fn compose(&self, a: Simplex, b: Simplex) -> Option<Simplex> {
        match self.composites(a, b) {
            [c] => Some(*c),
            _ => None,
        }
    }
}

/// An ∞-operad `p: O^⊗ → N(Fin_*)` through a dimension cap.
#[derive(Clone)]
pub struct OperadData {
    name: String,
    fin: Arc<FinStar>,
    total: Arc<SSet>,
    proj: SMap,
    strict: bool,
    arrows: Arrows,
    lifts: BTreeMap<(Simplex, usize), Simplex>,
    validation: Report,
}

impl std::fmt::Debug for OperadData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OperadData({}, counts {:?})", self.name, self.total.counts())
    }
}

impl OperadData {
    /// Wraps `proj: total → N(Fin_*)`, computes the inert-lift table and
    /// runs validation; the report is kept, not enforced (see
    /// [`OperadData::validated`]).  `strict` records that the total space is
    /// the operadic nerve of a colored operad.
    pub fn assemble(
        name: impl Into<String>,
        fin: &Arc<FinStar>,
        proj: SMap,
        strict: bool,
        budget: u64,
    ) -> Result<OperadData> {
        if !(Arc::ptr_eq(proj.target(), fin.sset()) || **proj.target() == **fin.sset()) {
            return Err(Error::Argument("the projection must land in the nerve of Fin_*".into()));
        }
        let total = proj.source().clone();
        if total.known_through().is_some_and(|k| k < 2) {
            return Err(Error::Truncated {
                what: "operad total space".into(),
                needed: 2,
                known: total.known_through().unwrap_or(0),
            });
        }
        let arrows = Arrows::new(&total, &proj, fin);
        let mut o = OperadData {
            name: name.into(),
            fin: fin.clone(),
            total,
            proj,
            strict,
            arrows,
            lifts: BTreeMap::new(),
            validation: Report::new("", ""),
        };
        o.lifts = o.lift_table();
        o.validation = o.validate(budget)?;
        Ok(o)
    }

    /// Errors with the first failed check, if any.
    pub fn validated(self) -> Result<OperadData> {
        let failure = self.validation.failures().next().map(|c| {
            format!(
                "operad {}: {} ({})",
                self.name,
                c.name,
                c.witness.clone().unwrap_or_default()
            )
        });
        match failure {
            None => Ok(self),
            Some(msg) => Err(Error::Validation(msg)),
        }
    }

    /// The operadic nerve of a colored operad, with the arity cap and
    /// dimension cap of `fin`.
    pub fn from_colored(name: impl Into<String>, spec: &ColoredOperad, fin: &Arc<FinStar>, budget: u64) -> Result<OperadData> {
        let tables = OperadTables::new(spec, fin.arity_cap())?;
        let ops = operators(&tables, fin)?;
        OperadData::from_category(name, fin, ops.category, &ops.functor, budget)?.validated()
    }

    /// The nerve of a category over `Fin_*`.
    pub fn from_category(
        name: impl Into<String>,
        fin: &Arc<FinStar>,
        category: Category,
        functor: &Functor,
        budget: u64,
    ) -> Result<OperadData> {
        functor.check(&category, fin.category())?;
        let nerve = Nerve::new(&Arc::new(category), fin.cap());
        let proj = nerve.induced(fin.nerve(), functor);
        OperadData::assemble(name, fin, proj, true, budget)
    }

    /// `∅ → N(Fin_*)`.
    pub fn empty(fin: &Arc<FinStar>) -> OperadData {
        let total = Arc::new(SSet::empty());
        let proj = SMap::new_unchecked(total.clone(), fin.sset().clone(), Vec::new());
        OperadData::assemble("∅", fin, proj, true, 0).expect("the empty operad assembles")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn fin(&self) -> &Arc<FinStar> {
        &self.fin
    }

    pub fn total(&self) -> &Arc<SSet> {
        &self.total
    }

    pub fn proj(&self) -> &SMap {
        &self.proj
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn arrows(&self) -> &Arrows {
        &self.arrows
    }

    pub fn validation(&self) -> &Report {
        &self.validation
    }

    /// Chosen coCartesian lifts: `(source vertex, inert morphism) ↦ edge`.
    pub fn lifts(&self) -> &BTreeMap<(Simplex, usize), Simplex> {
        &self.lifts
    }

    pub fn lift(&self, x: Simplex, f: usize) -> Option<Simplex> {
        self.lifts.get(&(x, f)).copied()
    }

    /// The dimension through which the total space is known.
    pub fn cap(&self) -> usize {
        self.total.known_through().unwrap_or(usize::MAX).min(self.fin.cap())
    }

    pub fn bound(&self) -> String {
        let mode = if self.strict {
            "strict"
        } else {
            "validated up to strict checks only"
        };
        format!("arity ≤ {}, dims ≤ {}, {mode}", self.fin.arity_cap(), self.cap())
    }

    /// Vertices over `⟨n⟩`.
    pub fn vertices_over(&self, n: usize) -> Vec<Simplex> {
        self.arrows
            .vertices
            .iter()
            .copied()
            .filter(|&v| self.arrows.object(v) == n)
            .collect()
    }

    /// Edges `x → y` over the morphism `f` of `Fin_*`.
    pub fn edges_over(&self, x: Simplex, y: Simplex, f: usize) -> Vec<Simplex> {
        self.arrows
            .hom(x, y)
            .iter()
            .copied()
            .filter(|&e| self.arrows.base(e) == f)
            .collect()
    }

    /// Strict coCartesian test for `e: x → x'`: for every `z`, the map
    /// `Hom(x', z) → Hom(x, z) ×_{Fin(p x, p z)} Fin(p x', p z)` is a
    /// bijection.
    pub fn is_cocartesian_strict(&self, e: Simplex) -> bool {
        let a = &self.arrows;
        let (x, x2) = (self.total.face(1, e), self.total.face(0, e));
        let fe = a.base(e);
        let fin = &self.fin;
        for &z in &a.vertices {
            let mut image = BTreeSet::new();
            for &w in a.hom(x2, z) {
                match a.compose(e, w) {
                    Some(u) if image.insert((u, a.base(w))) => {}
                    _ => return false,
                }
            }
            let expected: usize = a
                .hom(x, z)
                .iter()
                .map(|&u| {
                    fin.category()
                        .hom(a.object(x2), a.object(z))
                        .filter(|&v| fin.compose(v, fe) == a.base(u))
                        .count()
                })
                .sum();
            if image.len() != expected {
                return false;
            }
        }
        true
    }

    fn lift_table(&self) -> BTreeMap<(Simplex, usize), Simplex> {
        let mut lifts = BTreeMap::new();
        for &x in &self.arrows.vertices {
            let m = self.arrows.object(x);
            for f in self.fin.inert_from(m) {
                let found = self
                    .arrows
                    .out_of(x)
                    .iter()
                    .copied()
                    .find(|&e| self.arrows.base(e) == f && self.is_cocartesian_strict(e));
                if let Some(e) = found {
                    lifts.insert((x, f), e);
                }
            }
        }
        lifts
    }

    /// The targets `X_i` of the chosen lifts of `ρ^i` out of `x`.
    pub fn decomposition(&self, x: Simplex) -> Option<Vec<Simplex>> {
        let n = self.arrows.object(x);
        (1..=n)
            .map(|i| self.lift(x, self.fin.rho(n, i)).map(|e| self.total.face(0, e)))
            .collect()
    }

    /// Vertices over `⟨n⟩` decomposing into `inputs`, in canonical order.
    pub fn tuple_objects(&self, inputs: &[Simplex]) -> Vec<Simplex> {
        self.vertices_over(inputs.len())
            .into_iter()
            .filter(|&x| self.decomposition(x).as_deref() == Some(inputs))
            .collect()
    }

    fn validate(&self, budget: u64) -> Result<Report> {
        let mut r = Report::new(format!("operad {}", self.name), self.bound());
        let fin = &self.fin;
        let a = &self.arrows;
        r.fact("counts", self.total.counts());
        r.fact("arity_cap", fin.arity_cap());
        let over: Vec<usize> = (0..=fin.arity_cap()).map(|n| self.vertices_over(n).len()).collect();
        r.fact("objects_over_arity", &over);

        let ok = self.proj.check();
        r.check("projection simplicial", ok.is_ok(), ok.err().map(|e| e.to_string()));
        let m = self.cap().min(3);
        let inner = inner_fibration_violation(&self.proj, m, budget)?;
        r.check(
            format!("inner fibration through dim {m}"),
            inner.is_none(),
            inner.map(|w| format!("{w:?}")),
        );

        let mut ambiguous = None;
        for ((x, y), fs) in &a.hom {
            let _ = (x, y);
            for &f in fs {
                for &g in a.out_of(self.total.face(0, f)) {
                    if a.composites(f, g).len() != 1 {
                        ambiguous.get_or_insert(format!("{} then {}", self.total.render(f), self.total.render(g)));
                    }
                }
            }
        }
        r.check("composites unique (strict mode)", ambiguous.is_none(), ambiguous);

        let mut missing = None;
        for &x in &a.vertices {
            for f in fin.inert_from(a.object(x)) {
                if self.lift(x, f).is_none() {
                    missing.get_or_insert(format!("{} over {}", self.total.render(x), fin.category().morphism_name(f)));
                }
            }
        }
        r.fact("inert_lifts", self.lifts.len());
        r.check("coCartesian lifts of inerts", missing.is_none(), missing);

        let mut not_closed = None;
        for (&(x, f), &e1) in &self.lifts {
            let x2 = self.total.face(0, e1);
            for g in fin.inert_from(a.object(x2)) {
                let Some(e2) = self.lift(x2, g) else { continue };
                let ok = a.compose(e1, e2).is_some_and(|c| self.is_cocartesian_strict(c));
                if !ok {
                    not_closed.get_or_insert(format!(
                        "{} over {} then {}",
                        self.total.render(x),
                        fin.category().morphism_name(f),
                        fin.category().morphism_name(g)
                    ));
                }
            }
        }
        r.check("inert lifts closed under composition", not_closed.is_none(), not_closed);

        let segal = self.segal_violation();
        r.check("Segal decomposition (strict)", segal.is_none(), segal);

        if self.total.is_empty() {
            r.fact("empty", true);
        } else {
            let mut undecomposed = None;
            let colors = self.vertices_over(1);
            for n in 0..=fin.arity_cap() {
                let mut hit = BTreeSet::new();
                for x in self.vertices_over(n) {
                    if let Some(d) = self.decomposition(x) {
                        hit.insert(d);
                    }
                }
                let wanted = colors.len().pow(n as u32);
                if hit.len() != wanted {
                    undecomposed.get_or_insert(format!("over ⟨{n}⟩: {} of {wanted} tuples realized", hit.len()));
                }
            }
            r.check("objects decompose", undecomposed.is_none(), undecomposed);
        }
        Ok(r)
    }

    /// Edges `x → y` over `f` against tuples of edges `x → y_i` over
    /// `ρ^i ∘ f`, through composition with the lifts `y → y_i`.
    fn segal_violation(&self) -> Option<String> {
        let a = &self.arrows;
        let fin = &self.fin;
        for &y in &a.vertices {
            let n = a.object(y);
            let lifts: Option<Vec<Simplex>> = (1..=n).map(|i| self.lift(y, fin.rho(n, i))).collect();
            let lifts = lifts?;
            for &x in &a.vertices {
                let m = a.object(x);
                for f in fin.category().hom(m, n) {
                    let mut image = BTreeSet::new();
                    for e in self.edges_over(x, y, f) {
                        let t: Option<Vec<Simplex>> = lifts.iter().map(|&l| a.compose(e, l)).collect();
                        match t {
                            Some(t) if image.insert(t.clone()) => {}
                            _ => return Some(format!("{} over {}", self.total.render(e), fin.category().morphism_name(f))),
                        }
                    }
                    let expected: usize = (1..=n)
                        .map(|i| {
                            let yi = self.total.face(0, lifts[i - 1]);
                            self.edges_over(x, yi, fin.compose(fin.rho(n, i), f)).len()
                        })
                        .product();
                    if image.len() != expected {
                        return Some(format!(
                            "{} → {} over {}: {} edges, {} tuples",
                            self.total.render(x),
                            self.total.render(y),
                            fin.category().morphism_name(f),
                            image.len(),
                            expected
                        ));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::search::DEFAULT_BUDGET;

    fn fin(n: usize, cap: usize) -> Arc<FinStar> {
        Arc::new(FinStar::new(n, cap))
    }

    #[test]
    fn standard_operads_validate() {
        let f = fin(2, 3);
        for (name, spec) in [
            ("Comm", ColoredOperad::comm(2)),
            ("Ass", ColoredOperad::ass(2)),
            ("Triv", ColoredOperad::triv(2)),
        ] {
            let o = OperadData::assemble(
                name,
                &f,
                {
                    let t = OperadTables::new(&spec, 2).unwrap();
                    let ops = operators(&t, &f).unwrap();
                    let nerve = Nerve::new(&Arc::new(ops.category), f.cap());
                    nerve.induced(f.nerve(), &ops.functor)
                },
                true,
                DEFAULT_BUDGET,
            )
            .unwrap();
            assert!(o.validation().passed(), "{:?}", o.validation());
        }
    }

    #[test]
    fn comm_is_fin_star() {
        let f = fin(2, 2);
        let comm = OperadData::from_colored("Comm", &ColoredOperad::comm(2), &f, DEFAULT_BUDGET).unwrap();
        assert!(comm.proj().is_isomorphism());
        assert_eq!(comm.proj().images(), SMap::identity(f.sset()).images());
    }

    #[test]
    fn empty_operad() {
        let f = fin(1, 2);
        let e = OperadData::empty(&f);
        assert!(e.validation().passed(), "{:?}", e.validation());
    }

    #[test]
    fn a_non_operad_is_rejected() {
        // the nerve of Fin_* restricted to its active maps: no inert lifts
        let f = fin(2, 2);
        let c = f.category();
        let keep: Vec<usize> = (0..c.morphism_count()).filter(|&g| f.is_active(g)).collect();
        let sub = Category::from_fn(
            c.objects().to_vec(),
            keep.iter().map(|&g| c.morphism_name(g).to_string()).collect(),
            keep.iter().map(|&g| c.src(g)).collect(),
            keep.iter().map(|&g| c.dst(g)).collect(),
            (0..c.object_count()).map(|o| keep.iter().position(|&g| g == c.identity(o)).unwrap()).collect(),
            |g, h| keep.iter().position(|&k| k == c.compose(keep[g], keep[h])).unwrap(),
        )
        .unwrap();
        let functor = Functor {
            objects: (0..c.object_count()).collect(),
            morphisms: keep.clone(),
        };
        let o = OperadData::from_category("active", &f, sub, &functor, DEFAULT_BUDGET).unwrap();
        assert!(!o.validation().passed());
        assert!(o.clone().validated().is_err());
    }
}
