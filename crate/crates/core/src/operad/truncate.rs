//! The `d`-operad predicate, the `d`-homotopy operad `h_d O` with its unit
//! `θ_d`, and checks on maps of operads.
//!
//! For `d ≥ 1`, `h_d O` is `h_d` applied to the total space, projected
//! through `h_d N(Fin_*) ≅ N(Fin_*)`.  For `d = 0` each mapping space is
//! replaced by its image in `Fin_*` and objects isomorphic over an identity
//! are identified.  For `d = -1` it is `Fin_*` itself (or empty).

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::constructions::iso::iso_check;
use crate::constructions::nerve::{Category, Chain, Functor, Nerve};
use crate::error::{Error, Result};
use crate::operad::data::OperadData;
use crate::report::Report;
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::lifting::{is_cocartesian_edge, QCat};
use crate::solver::search::Solver;
use crate::sset::SSet;
use crate::truncation::dcat::d_category_violation;
use crate::truncation::hd::{h_d, Truncation};

/// The total space as a quasi-category: nerves of categories are trusted,
/// anything else is certified through `m`.
pub fn total_qcat(o: &OperadData, m: usize, budget: u64) -> Result<QCat> {
    if o.is_strict() {
        Ok(QCat::by_construction(o.total()))
    } else {
        QCat::certify(o.total(), m.min(o.cap()), budget)
    }
}

/// The spine edge `k → k+1` of a simplex.
fn spine(x: &SSet, s: Simplex, k: usize) -> Simplex {
    x.apply(&[k, k + 1], s)
}

/// A simplicial set read as the nerve of a 1-category through its known
/// dimensions: the category on its vertices and edges, and the comparison
/// map into that nerve.  `Ok(Err(reason))` when it is not one.
pub fn as_category(x: &Arc<SSet>) -> Result<std::result::Result<(Arc<Category>, SMap), String>> {
    x.require_known(2, "1-category check")?;
    let vertices: Vec<Simplex> = x.nondegenerate(0).collect();
    let edges = x.simplices(1);
    let index: HashMap<Simplex, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut comp: HashMap<(usize, usize), BTreeSet<usize>> = HashMap::new();
    for s in x.simplices(2) {
        let key = (index[&x.face(2, s)], index[&x.face(0, s)]);
        comp.entry(key).or_default().insert(index[&x.face(1, s)]);
    }
    let src: Vec<usize> = edges.iter().map(|&e| x.face(1, e).base_id()).collect();
    let dst: Vec<usize> = edges.iter().map(|&e| x.face(0, e).base_id()).collect();
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for f in 0..edges.len() {
        for g in (0..edges.len()).filter(|&g| src[g] == dst[f]) {
            match comp.get(&(f, g)).map(|c| c.iter().copied().collect::<Vec<_>>()).as_deref() {
                Some([h]) => {
                    table.insert((g, f), *h);
                }
                other => {
                    return Ok(Err(format!(
                        "{} then {} has {} composites",
                        x.render(edges[f]),
                        x.render(edges[g]),
                        other.map_or(0, |c| c.len())
                    )))
                }
            }
        }
    }
    let identity = vertices.iter().map(|&v| index[&x.degen(0, v)]).collect();
    let category = Category::from_fn(
        vertices.iter().map(|&v| x.name(v).to_string()).collect(),
        edges.iter().map(|&e| x.render(e)).collect(),
        src,
        dst,
        identity,
        |g, f| table[&(g, f)],
    );
    let category = match category {
        Ok(c) => Arc::new(c),
        Err(e) => return Ok(Err(e.to_string())),
    };
    let cap = x.known_through().unwrap_or_else(|| x.top_dim().unwrap_or(0));
    let nerve = Nerve::new(&category, cap);
    let images = x
        .all_nondegenerate()
        .map(|s| {
            let arrows = (0..s.dim()).map(|k| index[&spine(x, s, k)]).collect();
            nerve.simplex(&Chain {
                start: x.vertex(s, 0).base_id(),
                arrows,
            })
        })
        .collect();
    let comparison = SMap::new_unchecked(x.clone(), nerve.sset().clone(), images);
    if comparison.check().is_err() || !comparison.is_bijective_through(cap) {
        return Ok(Err("simplices are not determined by their spines".into()));
    }
    Ok(Ok((category, comparison)))
}

/// Why `O` is not a `d`-operad, if it is not.
///
/// `d ≥ 1`: the total space is a `d`-category.  `d = 0`: the total space
/// is a 1-category, skeletal over `Fin_*` and faithful over it.  `d = -1`:
/// the total space is empty or the projection is an isomorphism.
pub fn d_operad_violation(o: &OperadData, d: isize, budget: u64) -> Result<Option<String>> {
    if d < -1 {
        return Err(Error::Argument(format!("d-operads need d ≥ -1, got {d}")));
    }
    if let Some(c) = o.validation().failures().next() {
        return Ok(Some(format!("not an ∞-operad: {}", c.name)));
    }
    let x = o.total();
    match d {
        -1 => {
            if x.is_empty() || o.proj().is_bijective_through(o.cap()) {
                Ok(None)
            } else {
                Ok(Some("the projection to N(Fin_*) is not an isomorphism".into()))
            }
        }
        0 => {
            if let Err(reason) = as_category(x)? {
                return Ok(Some(format!("not a 1-category: {reason}")));
            }
            let a = o.arrows();
            let fin = o.fin();
            for &u in a.vertices() {
                for &v in a.vertices() {
                    let mut bases = BTreeSet::new();
                    for &e in a.hom(u, v) {
                        if !bases.insert(a.base(e)) {
                            return Ok(Some(format!(
                                "not faithful: parallel edges {} → {} over {}",
                                x.render(u),
                                x.render(v),
                                fin.category().morphism_name(a.base(e))
                            )));
                        }
                    }
                    if u < v && a.object(u) == a.object(v) {
                        let id = fin.identity(a.object(u));
                        if bases.contains(&id) && a.hom(v, u).iter().any(|&e| a.base(e) == id) {
                            return Ok(Some(format!(
                                "not skeletal: {} ≅ {}",
                                x.render(u),
                                x.render(v)
                            )));
                        }
                    }
                }
            }
            Ok(None)
        }
        _ => {
            let m = o.cap();
            let c = total_qcat(o, m, budget)?;
            Ok(d_category_violation(&c, d, m, budget)?.map(|v| format!("{v:?}")))
        }
    }
}

pub fn is_d_operad(o: &OperadData, d: isize, budget: u64) -> Result<bool> {
    Ok(d_operad_violation(o, d, budget)?.is_none())
}

/// The `d = 0` quotient: classes of objects, the category of image sets,
/// and its nerve.
struct Quotient {
    class: HashMap<Simplex, usize>,
    least: Vec<Simplex>,
    morph: HashMap<(usize, usize, usize), usize>,
    nerve: Nerve,
}

impl Quotient {
    fn morphism(&self, x: Simplex, y: Simplex, f: usize) -> Option<usize> {
        self.morph.get(&(self.class[&x], self.class[&y], f)).copied()
    }
}

enum Kind {
    Minus,
    Zero(Quotient),
    Bracket(Truncation),
}

/// `h_d O` with `θ_d: O^⊗ → (h_d O)^⊗`.
pub struct OperadTruncation {
    d: isize,
    operad: OperadData,
    theta: SMap,
    kind: Kind,
}

impl OperadTruncation {
    pub fn d(&self) -> isize {
        self.d
    }

    pub fn operad(&self) -> &OperadData {
        &self.operad
    }

    pub fn theta(&self) -> &SMap {
        &self.theta
    }

    /// `h_d F: h_d O → h_d U` for a map `F: O → U` over `Fin_*`, with
    /// `target = h_d U`.
    pub fn induced(&self, f: &SMap, target: &OperadTruncation) -> Result<SMap> {
        let src = self.operad.total();
        let tgt = target.operad.total();
        match (&self.kind, &target.kind) {
            (Kind::Minus, Kind::Minus) => {
                if src.is_empty() {
                    return Ok(SMap::new_unchecked(src.clone(), tgt.clone(), Vec::new()));
                }
                if tgt.is_empty() {
                    return Err(Error::Argument("no map from a nonempty operad to ∅".into()));
                }
                Ok(SMap::new_unchecked(src.clone(), tgt.clone(), src.all_nondegenerate().collect()))
            }
            (Kind::Zero(q), Kind::Zero(r)) => {
                let cat = q.nerve.category();
                let mut images = Vec::new();
                for s in src.all_nondegenerate() {
                    let ch = q.nerve.chain(s);
                    let arrows = ch
                        .arrows
                        .iter()
                        .map(|&m| {
                            let x = f.eval(q.least[cat.src(m)]);
                            let y = f.eval(q.least[cat.dst(m)]);
                            let base = self.operad.fin().morphism_of(self.operad.proj().eval(q.nerve.edge(m)));
                            r.morphism(x, y, base)
                                .ok_or_else(|| Error::Validation("h_0 F leaves the image sets".into()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    images.push(r.nerve.simplex(&Chain {
                        start: r.class[&f.eval(q.least[ch.start])],
                        arrows,
                    }));
                }
                Ok(SMap::new_unchecked(src.clone(), tgt.clone(), images))
            }
            (Kind::Bracket(h), Kind::Bracket(k)) => h.induced(f, k),
            _ => Err(Error::Argument("h_d F needs both truncations at the same level".into())),
        }
    }
}

/// `h_d O` for `d ≥ -1`, re-validated, with `θ_d`.
pub fn h_d_operad(o: &OperadData, d: isize, budget: u64) -> Result<OperadTruncation> {
    let fin = o.fin();
    let name = format!("h_{d}({})", o.name());
    match d {
        _ if d < -1 => Err(Error::Argument(format!("h_d of an operad needs d ≥ -1, got {d}"))),
        -1 => {
            if o.total().is_empty() {
                let operad = OperadData::empty(fin);
                let theta = SMap::new_unchecked(o.total().clone(), operad.total().clone(), Vec::new());
                return Ok(OperadTruncation {
                    d,
                    operad,
                    theta,
                    kind: Kind::Minus,
                });
            }
            let operad = OperadData::assemble(name, fin, SMap::identity(fin.sset()), true, budget)?;
            let theta = o.proj().clone();
            Ok(OperadTruncation {
                d,
                operad,
                theta,
                kind: Kind::Minus,
            })
        }
        0 => {
            let (category, functor, class, least) = image_category(o)?;
            let nerve = Nerve::new(&Arc::new(category), fin.cap());
            let proj = nerve.induced(fin.nerve(), &functor);
            let operad = OperadData::assemble(name, fin, proj, true, budget)?;
            let cat = nerve.category().clone();
            let mut morph = HashMap::new();
            for m in 0..cat.morphism_count() {
                morph.insert((cat.src(m), cat.dst(m), functor.morphisms[m]), m);
            }
            let q = Quotient {
                class,
                least,
                morph,
                nerve,
            };
            let x = o.total();
            let a = o.arrows();
            let images = x
                .all_nondegenerate()
                .map(|s| {
                    let arrows = (0..s.dim())
                        .map(|k| {
                            let e = spine(x, s, k);
                            q.morphism(x.face(1, e), x.face(0, e), a.base(e)).expect("edges lie in the image sets")
                        })
                        .collect();
                    q.nerve.simplex(&Chain {
                        start: q.class[&x.vertex(s, 0)],
                        arrows,
                    })
                })
                .collect();
            let theta = SMap::new_unchecked(x.clone(), operad.total().clone(), images);
            Ok(OperadTruncation {
                d,
                operad,
                theta,
                kind: Kind::Zero(q),
            })
        }
        _ => {
            let out = o.cap();
            let c = total_qcat(o, out, budget)?;
            let h = h_d(&c, d, out, budget)?;
            let hf = fin.truncation(d, out, budget)?;
            let back = hf
                .theta_map()?
                .inverse()
                .ok_or_else(|| Error::Validation("θ_d is not invertible on N(Fin_*)".into()))?;
            let proj = h.induced(o.proj(), &hf)?.then(&back);
            let operad = OperadData::assemble(name, fin, proj, false, budget)?;
            let theta = h.theta_map()?;
            Ok(OperadTruncation {
                d,
                operad,
                theta,
                kind: Kind::Bracket(h),
            })
        }
    }
}

/// Objects up to isomorphism over identities, and the category whose
/// hom-sets are the images of mapping spaces in `Fin_*`.
#[allow(clippy::type_complexity)]
fn image_category(o: &OperadData) -> Result<(Category, Functor, HashMap<Simplex, usize>, Vec<Simplex>)> {
    let a = o.arrows();
    let x = o.total();
    let fin = o.fin();
    let image = |u: Simplex, v: Simplex| -> BTreeSet<usize> { a.hom(u, v).iter().map(|&e| a.base(e)).collect() };
    let vertices = a.vertices();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (i, &u) in vertices.iter().enumerate() {
        for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
            if a.object(u) != a.object(v) {
                continue;
            }
            let id = fin.identity(a.object(u));
            if image(u, v).contains(&id) && image(v, u).contains(&id) {
                let (ru, rv) = (root(&mut parent, i), root(&mut parent, j));
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
    }
    let mut class = HashMap::new();
    let mut least = Vec::new();
    let mut slot = HashMap::new();
    for (i, &v) in vertices.iter().enumerate() {
        let r = root(&mut parent, i);
        let k = *slot.entry(r).or_insert_with(|| {
            least.push(vertices[r]);
            least.len() - 1
        });
        class.insert(v, k);
    }
    let k = least.len();
    let mut homs: Vec<Vec<BTreeSet<usize>>> = vec![vec![BTreeSet::new(); k]; k];
    for (c1, row) in homs.iter_mut().enumerate() {
        for (c2, h) in row.iter_mut().enumerate() {
            *h = image(least[c1], least[c2]);
        }
    }
    for &u in vertices {
        for &v in vertices {
            if image(u, v) != homs[class[&u]][class[&v]] {
                return Err(Error::Validation(format!(
                    "h_0: the image of Map({}, {}) in Fin_* depends on the representatives",
                    x.render(u),
                    x.render(v)
                )));
            }
        }
    }
    let mut names = Vec::new();
    let mut src = Vec::new();
    let mut dst = Vec::new();
    let mut base = Vec::new();
    let mut index = HashMap::new();
    let object_names: Vec<String> = least.iter().map(|&v| x.name(v).to_string()).collect();
    for c1 in 0..k {
        for c2 in 0..k {
            for &f in &homs[c1][c2] {
                index.insert((c1, c2, f), names.len());
                names.push(format!(
                    "{}→{}:{}",
                    object_names[c1],
                    object_names[c2],
                    fin.category().morphism_name(f)
                ));
                src.push(c1);
                dst.push(c2);
                base.push(f);
            }
        }
    }
    for m1 in 0..names.len() {
        for m2 in (0..names.len()).filter(|&m2| src[m2] == dst[m1]) {
            let gf = fin.compose(base[m2], base[m1]);
            if !index.contains_key(&(src[m1], dst[m2], gf)) {
                return Err(Error::Validation(format!(
                    "h_0: no induced composite of {} and {}",
                    names[m1], names[m2]
                )));
            }
        }
    }
    let identity = (0..k)
        .map(|c| index[&(c, c, fin.identity(a.object(least[c])))])
        .collect();
    let category = Category::from_fn(object_names, names, src.clone(), dst.clone(), identity, |g, f| {
        index[&(src[f], dst[g], fin.compose(base[g], base[f]))]
    })?;
    let functor = Functor {
        objects: least.iter().map(|&v| a.object(v)).collect(),
        morphisms: base,
    };
    Ok((category, functor, class, least))
}

/// Checks that `F: O^⊗ → U^⊗` is a map of operads: simplicial, over
/// `Fin_*`, and sending each recorded inert lift of `O` to an edge passing
/// [`is_cocartesian_edge`] against `U^⊗ → N(Fin_*)` through dimension `m`.
pub fn check_operad_map(f: &SMap, o: &OperadData, u: &OperadData, m: usize, budget: u64) -> Result<Report> {
    let m = m.min(u.cap());
    let mut r = Report::new(
        format!("operad map {} → {}", o.name(), u.name()),
        format!("{}; coCartesian lifting through dim {m}", u.bound()),
    );
    let shapes = f.source().same_shape(o.total()) && f.target().same_shape(u.total());
    r.check("source and target", shapes, None);
    if !shapes {
        return Ok(r);
    }
    let ok = f.check();
    r.check("simplicial", ok.is_ok(), ok.err().map(|e| e.to_string()));
    let mut off = None;
    for s in o.total().all_nondegenerate() {
        if u.proj().eval(f.eval(s)) != o.proj().eval(s) {
            off.get_or_insert_with(|| o.total().render(s));
        }
    }
    r.check("over Fin_*", off.is_none(), off);
    let mut bad = None;
    let mut strict_agrees = true;
    for (&(x, g), &e) in o.lifts() {
        let image = f.eval(e);
        let cocart = is_cocartesian_edge(u.proj(), image, m, budget)?;
        if u.is_strict() && cocart != u.is_cocartesian_strict(image) {
            strict_agrees = false;
        }
        if !cocart {
            bad.get_or_insert_with(|| {
                format!(
                    "lift of {} at {} goes to {}",
                    o.fin().category().morphism_name(g),
                    o.total().render(x),
                    u.total().render(image)
                )
            });
        }
    }
    r.fact("inert_lifts_checked", o.lifts().len());
    r.fact("strict_test_agrees", strict_agrees);
    r.check("preserves inert edges", bad.is_none(), bad);
    Ok(r)
}

/// An isomorphism `O^⊗ ≅ U^⊗` over `Fin_*`, if one exists.
pub fn iso_over_fin(o: &OperadData, u: &OperadData, budget: u64) -> Result<Option<SMap>> {
    let cap = o.cap().min(u.cap());
    for n in 0..=cap {
        if o.total().simplex_count(n) != u.total().simplex_count(n) {
            return Ok(None);
        }
    }
    let solver = Solver::new(u.total(), budget);
    let filter = |s: Simplex, t: Simplex| u.proj().eval(t) == o.proj().eval(s);
    let fixed = vec![None; o.total().flat_len()];
    let mut found = None;
    solver.search(o.total(), &fixed, Some(&filter), |im| {
        let f = SMap::new_unchecked(o.total().clone(), u.total().clone(), im.to_vec());
        if f.is_bijective_through(cap) {
            found = Some(f);
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Re-validation of `h_d O`: the operad checks, the `d`-operad predicate,
/// and `θ_d` lying over `Fin_*`, surjective on objects and preserving
/// inert edges.
pub fn truncation_verify(o: &OperadData, d: isize, budget: u64) -> Result<Report> {
    let t = h_d_operad(o, d, budget)?;
    let h = t.operad();
    let mut r = Report::new(format!("h_{d}({})", o.name()), h.bound());
    r.fact("counts", h.total().counts());
    r.absorb("validation", h.validation().clone());
    let violation = d_operad_violation(h, d, budget)?;
    r.check(format!("is a {d}-operad"), violation.is_none(), violation);
    let hit: BTreeSet<Simplex> = o.total().nondegenerate(0).map(|v| t.theta().eval(v)).collect();
    r.check(
        "θ surjective on objects",
        hit.len() == h.total().count(0),
        None,
    );
    let m = h.cap().min(3);
    r.absorb("θ", check_operad_map(t.theta(), o, h, m, budget)?);
    Ok(r)
}

/// Compares `(h_d O)^⊗` with `h_d(O^⊗)` computed by the truncation module.
/// They agree for `d ≥ 1`; for `d = 0` the fact `differ` records whether
/// the identification of objects made them differ.
pub fn warning_verify(o: &OperadData, d: isize, budget: u64) -> Result<Report> {
    let t = h_d_operad(o, d, budget)?;
    let out = o.cap();
    let c = total_qcat(o, out, budget)?;
    let direct = h_d(&c, d, out, budget)?;
    let mut r = Report::new(format!("(h_{d}{})^⊗ against h_{d}({}^⊗)", o.name(), o.name()), o.bound());
    let ours = t.operad().total();
    r.fact("operad_counts", ours.counts());
    r.fact("direct_counts", direct.sset().counts());
    let iso = iso_check(ours, direct.sset(), out, budget)?.is_some();
    if d >= 1 {
        r.check("degree-wise isomorphic", iso, None);
    } else {
        r.fact("differ", !iso);
    }
    Ok(r)
}
