//! Finite categories and their nerves.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::sset::{SSet, SSetBuilder};

const NONE: u32 = u32::MAX;

/// A finite category with a dense composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Category {
    objects: Vec<String>,
    names: Vec<String>,
    src: Vec<usize>,
    dst: Vec<usize>,
    identity: Vec<usize>,
    /// `compose[g * len + f] = g ∘ f` when `dst f = src g`.
    compose: Vec<u32>,
}

/// A morphism listed in a category presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl Category {
    /// Builds a category from explicit data.  Compositions with identities
    /// may be omitted; every other composable pair must be listed.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<MorphismSpec>,
        identities: &[(String, String)],
        compose: &[(String, String, String)],
    ) -> Result<Category> {
        let obj_index: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj_index.len() != objects.len() {
            return Err(Error::Validation("duplicate object name".into()));
        }
        let mut names = Vec::new();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        let mut mor_index: HashMap<String, usize> = HashMap::new();
        for m in &morphisms {
            let s = *obj_index
                .get(m.src.as_str())
                .ok_or_else(|| Error::Validation(format!("morphism {} has unknown source {}", m.id, m.src)))?;
            let t = *obj_index
                .get(m.dst.as_str())
                .ok_or_else(|| Error::Validation(format!("morphism {} has unknown target {}", m.id, m.dst)))?;
            if mor_index.insert(m.id.clone(), names.len()).is_some() {
                return Err(Error::Validation(format!("duplicate morphism {}", m.id)));
            }
            names.push(m.id.clone());
            src.push(s);
            dst.push(t);
        }
        let mut identity = vec![usize::MAX; objects.len()];
        for (o, m) in identities {
            let oi = *obj_index
                .get(o.as_str())
                .ok_or_else(|| Error::Validation(format!("identity for unknown object {o}")))?;
            let mi = *mor_index
                .get(m)
                .ok_or_else(|| Error::Validation(format!("identity {m} is not a morphism")))?;
            if src[mi] != oi || dst[mi] != oi {
                return Err(Error::Validation(format!("identity {m} is not an endomorphism of {o}")));
            }
            identity[oi] = mi;
        }
        if let Some(o) = identity.iter().position(|&m| m == usize::MAX) {
            return Err(Error::Validation(format!("object {} has no identity", objects[o])));
        }
        let len = names.len();
        let mut table = vec![NONE; len * len];
        for (g, f, gf) in compose {
            let look = |x: &String| {
                mor_index
                    .get(x)
                    .copied()
                    .ok_or_else(|| Error::Validation(format!("composition mentions unknown morphism {x}")))
            };
            let (g, f, gf) = (look(g)?, look(f)?, look(gf)?);
            if dst[f] != src[g] {
                return Err(Error::Validation(format!(
                    "composite {} ∘ {} of non-composable morphisms",
                    names[g], names[f]
                )));
            }
            if src[gf] != src[f] || dst[gf] != dst[g] {
                return Err(Error::Validation(format!(
                    "composite {} ∘ {} = {} has the wrong endpoints",
                    names[g], names[f], names[gf]
                )));
            }
            let slot = &mut table[g * len + f];
            if *slot != NONE && *slot as usize != gf {
                return Err(Error::Validation(format!("composite {} ∘ {} listed twice", names[g], names[f])));
            }
            *slot = gf as u32;
        }
        Category::from_table(objects, names, src, dst, identity, table)
    }

    /// Builds a category from a composition function, which is only called
    /// on composable pairs.
    pub fn from_fn(
        objects: Vec<String>,
        names: Vec<String>,
        src: Vec<usize>,
        dst: Vec<usize>,
        identity: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Category> {
        let len = names.len();
        let mut table = vec![NONE; len * len];
        for g in 0..len {
            for f in 0..len {
                if dst[f] == src[g] {
                    table[g * len + f] = compose(g, f) as u32;
                }
            }
        }
        Category::from_table(objects, names, src, dst, identity, table)
    }

    fn from_table(
        objects: Vec<String>,
        names: Vec<String>,
        src: Vec<usize>,
        dst: Vec<usize>,
        identity: Vec<usize>,
        mut table: Vec<u32>,
    ) -> Result<Category> {
        let len = names.len();
        for f in 0..len {
            let (a, b) = (src[f], dst[f]);
            for (slot, expect) in [(identity[b] * len + f, f), (f * len + identity[a], f)] {
                if table[slot] == NONE {
                    table[slot] = expect as u32;
                } else if table[slot] as usize != expect {
                    return Err(Error::Validation(format!("identity law fails for {}", names[f])));
                }
            }
        }
        let cat = Category {
            objects,
            names,
            src,
            dst,
            identity,
            compose: table,
        };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        let len = self.names.len();
        for g in 0..len {
            for f in 0..len {
                let composable = self.dst[f] == self.src[g];
                let entry = self.compose[g * len + f];
                if composable && entry == NONE {
                    return Err(Error::Validation(format!(
                        "missing composite {} ∘ {}",
                        self.names[g], self.names[f]
                    )));
                }
                if composable {
                    let gf = entry as usize;
                    if self.src[gf] != self.src[f] || self.dst[gf] != self.dst[g] {
                        return Err(Error::Validation(format!(
                            "composite {} ∘ {} has the wrong endpoints",
                            self.names[g], self.names[f]
                        )));
                    }
                }
            }
        }
        for h in 0..len {
            for g in self.out_of(self.dst.get(h).copied().unwrap_or(0)) {
                if self.src[g] != self.dst[h] {
                    continue;
                }
                for f in self.out_of(self.dst[g]) {
                    let lhs = self.compose(f, self.compose(g, h));
                    let rhs = self.compose(self.compose(f, g), h);
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "associativity fails on ({} ∘ {}) ∘ {}",
                            self.names[f], self.names[g], self.names[h]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The partial order `x ≤ y` generated by the listed pairs.
    pub fn poset(elements: Vec<String>, less: &[(String, String)]) -> Result<Category> {
        let n = elements.len();
        let index: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        if index.len() != n {
            return Err(Error::Validation("duplicate poset element".into()));
        }
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in less {
            let (&i, &j) = index
                .get(a.as_str())
                .zip(index.get(b.as_str()))
                .ok_or_else(|| Error::Validation(format!("relation {a} ≤ {b} mentions an unknown element")))?;
            le[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(Error::Validation(format!(
                        "relation is not antisymmetric on {} and {}",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        Ok(Category::from_relation(elements, &le))
    }

    /// The thin category of a reflexive transitive relation.
    pub(crate) fn from_relation(objects: Vec<String>, le: &[Vec<bool>]) -> Category {
        let n = objects.len();
        let mut names = Vec::new();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        let mut id_of = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    id_of.insert((i, j), names.len());
                    names.push(if i == j {
                        format!("id_{}", objects[i])
                    } else {
                        format!("{}<{}", objects[i], objects[j])
                    });
                    src.push(i);
                    dst.push(j);
                }
            }
        }
        let identity = (0..n).map(|i| id_of[&(i, i)]).collect();
        let (s2, d2) = (src.clone(), dst.clone());
        Category::from_fn(objects, names, src, dst, identity, |g, f| id_of[&(s2[f], d2[g])])
            .expect("a preorder is a category")
    }

    pub fn discrete(objects: Vec<String>) -> Category {
        let n = objects.len();
        let le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Category::from_relation(objects, &le)
    }

    /// `[n] = {0 < 1 < … < n}`.
    pub fn ordinal(n: usize) -> Category {
        let objects = (0..=n).map(|i| i.to_string()).collect();
        let le: Vec<Vec<bool>> = (0..=n).map(|i| (0..=n).map(|j| i <= j).collect()).collect();
        Category::from_relation(objects, &le)
    }

    /// The one-object category of a finite group given by its
    /// multiplication table (element 0 is the unit).
    pub fn group(elements: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Category> {
        let n = elements.len();
        Category::from_fn(vec!["*".into()], elements, vec![0; n], vec![0; n], vec![0], mul)
    }

    /// `BZ/2`.
    pub fn bz2() -> Category {
        Category::group(vec!["e".into(), "σ".into()], |a, b| a ^ b).expect("Z/2 is a group")
    }

    /// The groupoid with two objects and a unique isomorphism between them.
    pub fn iso_groupoid() -> Category {
        let objects = vec!["a".to_string(), "b".to_string()];
        let le = vec![vec![true, true], vec![true, true]];
        Category::from_relation(objects, &le)
    }

    pub fn product(&self, other: &Category) -> Category {
        let m = other.names.len();
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let k = other.objects.len();
        let mut names = Vec::new();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        for f in 0..self.names.len() {
            for g in 0..m {
                names.push(format!("({},{})", self.names[f], other.names[g]));
                src.push(self.src[f] * k + other.src[g]);
                dst.push(self.dst[f] * k + other.dst[g]);
            }
        }
        let identity = (0..self.objects.len())
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .map(|(a, b)| self.identity[a] * m + other.identity[b])
            .collect();
        Category::from_fn(objects, names, src, dst, identity, |x, y| {
            self.compose(x / m, y / m) * m + other.compose(x % m, y % m)
        })
        .expect("product of categories")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.names.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.names[f]
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|n| n == name)
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn dst(&self, f: usize) -> usize {
        self.dst[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src[f]] == f
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        let v = self.compose[g * self.names.len() + f];
        debug_assert_ne!(v, NONE, "composing non-composable morphisms");
        v as usize
    }

    /// Morphisms with the given source.
    pub fn out_of(&self, o: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.names.len()).filter(move |&f| self.src[f] == o)
    }

    pub fn hom(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.names.len()).filter(move |&f| self.src[f] == a && self.dst[f] == b)
    }

    /// The inverse of `f`, if any.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.hom(self.dst[f], self.src[f]).find(|&g| {
            self.compose(g, f) == self.identity[self.src[f]] && self.compose(f, g) == self.identity[self.dst[f]]
        })
    }

    /// The length of the longest chain of composable non-identities, or
    /// `None` when chains are unbounded.
    pub fn longest_chain(&self) -> Option<usize> {
        // chains of non-identities are unbounded iff the graph of
        // non-identity morphisms has a cycle
        let n = self.objects.len();
        let mut adj = vec![Vec::new(); n];
        for f in 0..self.names.len() {
            if !self.is_identity(f) {
                adj[self.src[f]].push(self.dst[f]);
            }
        }
        let mut depth: Vec<Option<usize>> = vec![None; n];
        let mut state = vec![0u8; n];
        fn visit(v: usize, adj: &[Vec<usize>], state: &mut [u8], depth: &mut [Option<usize>]) -> bool {
            if state[v] == 2 {
                return true;
            }
            if state[v] == 1 {
                return false;
            }
            state[v] = 1;
            let mut best = 0;
            for &w in &adj[v] {
                if !visit(w, adj, state, depth) {
                    return false;
                }
                best = best.max(depth[w].unwrap() + 1);
            }
            state[v] = 2;
            depth[v] = Some(best);
            true
        }
        for v in 0..n {
            if !visit(v, &adj, &mut state, &mut depth) {
                return None;
            }
        }
        Some(depth.iter().map(|d| d.unwrap_or(0)).max().unwrap_or(0))
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn check(&self, source: &Category, target: &Category) -> Result<()> {
        for f in 0..source.morphism_count() {
            let g = self.morphisms[f];
            if target.src(g) != self.objects[source.src(f)] || target.dst(g) != self.objects[source.dst(f)] {
                return Err(Error::Validation(format!("functor misplaces {}", source.morphism_name(f))));
            }
        }
        for o in 0..source.object_count() {
            if self.morphisms[source.identity(o)] != target.identity(self.objects[o]) {
                return Err(Error::Validation("functor does not preserve identities".into()));
            }
        }
        for g in 0..source.morphism_count() {
            for f in (0..source.morphism_count()).filter(|&f| source.dst(f) == source.src(g)) {
                let lhs = self.morphisms[source.compose(g, f)];
                let rhs = target.compose(self.morphisms[g], self.morphisms[f]);
                if lhs != rhs {
                    return Err(Error::Validation("functor does not preserve composition".into()));
                }
            }
        }
        Ok(())
    }
}

/// A chain `a₀ → a₁ → … → aₙ` of composable morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub start: usize,
    pub arrows: Vec<usize>,
}

/// The nerve of a finite category through a dimension cap.
#[derive(Clone, Debug)]
pub struct Nerve {
    category: Arc<Category>,
    sset: Arc<SSet>,
    chains: Vec<Vec<Chain>>,
    index: HashMap<Chain, Simplex>,
}

impl Nerve {
    /// Nondegenerate `n`-simplices are chains of `n` composable
    /// non-identity morphisms.  The result is exact (not truncated) when no
    /// such chain is longer than `cap`.
    pub fn new(category: &Arc<Category>, cap: usize) -> Nerve {
        let c = category;
        let mut b = SSetBuilder::new();
        let mut chains: Vec<Vec<Chain>> = Vec::new();
        let mut index: HashMap<Chain, Simplex> = HashMap::new();
        let level0: Vec<Chain> = (0..c.object_count())
            .map(|o| Chain {
                start: o,
                arrows: vec![],
            })
            .collect();
        for ch in &level0 {
            let s = b.add(0, c.object_name(ch.start), vec![]);
            index.insert(ch.clone(), s);
        }
        chains.push(level0);
        let non_id: Vec<usize> = (0..c.morphism_count()).filter(|&f| !c.is_identity(f)).collect();
        let mut n = 1;
        while n <= cap {
            let mut level = Vec::new();
            for prev in &chains[n - 1] {
                let end = chain_end(c, prev);
                for &f in &non_id {
                    if c.src(f) != end {
                        continue;
                    }
                    let mut arrows = prev.arrows.clone();
                    arrows.push(f);
                    level.push(Chain {
                        start: prev.start,
                        arrows,
                    });
                }
            }
            if level.is_empty() {
                break;
            }
            for ch in &level {
                let faces = (0..=n).map(|i| normal_form(c, &index, &face_chain(c, ch, i))).collect();
                let name = ch.arrows.iter().map(|&f| c.morphism_name(f)).collect::<Vec<_>>().join(",");
                let s = b.add(n, format!("[{name}]"), faces);
                index.insert(ch.clone(), s);
            }
            chains.push(level);
            n += 1;
        }
        let exact = n <= cap || c.longest_chain().is_some_and(|l| l <= cap);
        Nerve {
            category: category.clone(),
            sset: Arc::new(b.finish(if exact { None } else { Some(cap) })),
            chains,
            index,
        }
    }

    pub fn category(&self) -> &Arc<Category> {
        &self.category
    }

    pub fn sset(&self) -> &Arc<SSet> {
        &self.sset
    }

    /// The simplex of a chain (identities allowed).
    pub fn simplex(&self, chain: &Chain) -> Simplex {
        normal_form(&self.category, &self.index, chain)
    }

    pub fn vertex(&self, object: usize) -> Simplex {
        Simplex::nondegenerate(0, object)
    }

    /// The edge of a morphism.
    pub fn edge(&self, f: usize) -> Simplex {
        self.simplex(&Chain {
            start: self.category.src(f),
            arrows: vec![f],
        })
    }

    /// The chain of any simplex, identities included.
    pub fn chain(&self, s: Simplex) -> Chain {
        let base = &self.chains[s.base_dim()][s.base_id()];
        if !s.is_degenerate() {
            return base.clone();
        }
        let eta = s.surjection();
        let c = &self.category;
        let mut objects = vec![base.start];
        for &f in &base.arrows {
            objects.push(c.dst(f));
        }
        let arrows = (0..s.dim())
            .map(|k| {
                if eta[k] == eta[k + 1] {
                    c.identity(objects[eta[k]])
                } else {
                    base.arrows[eta[k]]
                }
            })
            .collect();
        Chain {
            start: base.start,
            arrows,
        }
    }

    /// The morphism of an edge.
    pub fn morphism(&self, e: Simplex) -> usize {
        self.chain(e).arrows[0]
    }

    /// The object of a vertex.
    pub fn object(&self, v: Simplex) -> usize {
        v.base_id()
    }

    /// `N(F)` for a functor into the category of `target`.
    pub fn induced(&self, target: &Nerve, functor: &Functor) -> SMap {
        let images = self
            .sset
            .all_nondegenerate()
            .map(|s| {
                let ch = self.chain(s);
                target.simplex(&Chain {
                    start: functor.objects[ch.start],
                    arrows: ch.arrows.iter().map(|&f| functor.morphisms[f]).collect(),
                })
            })
            .collect();
        SMap::new_unchecked(self.sset.clone(), target.sset.clone(), images)
    }
}

fn chain_end(c: &Category, ch: &Chain) -> usize {
    ch.arrows.last().map_or(ch.start, |&f| c.dst(f))
}

fn face_chain(c: &Category, ch: &Chain, i: usize) -> Chain {
    let n = ch.arrows.len();
    let a = &ch.arrows;
    if i == 0 {
        Chain {
            start: c.dst(a[0]),
            arrows: a[1..].to_vec(),
        }
    } else if i == n {
        Chain {
            start: ch.start,
            arrows: a[..n - 1].to_vec(),
        }
    } else {
        let mut arrows = a[..i - 1].to_vec();
        arrows.push(c.compose(a[i], a[i - 1]));
        arrows.extend_from_slice(&a[i + 1..]);
        Chain {
            start: ch.start,
            arrows,
        }
    }
}

fn normal_form(c: &Category, index: &HashMap<Chain, Simplex>, ch: &Chain) -> Simplex {
    let mut mask = 0u32;
    let mut arrows = Vec::new();
    for (k, &f) in ch.arrows.iter().enumerate() {
        if c.is_identity(f) {
            mask |= 1 << k;
        } else {
            arrows.push(f);
        }
    }
    let base = index
        .get(&Chain {
            start: ch.start,
            arrows,
        })
        .expect("chain within the nerve cap");
    Simplex::from_parts(ch.arrows.len(), mask, base.base_id())
}
