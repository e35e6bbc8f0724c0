//! Backtracking search for simplicial maps.
//!
//! Variables are the nondegenerate simplices of the source.  Vertices are
//! placed greedily (most edges towards already placed vertices first) and
//! every other simplex is assigned right after its last vertex, so all its
//! faces are known when it is reached.  Candidates for a simplex are then
//! exactly the target simplices with the prescribed faces, looked up in an
//! index.  Value order is the canonical order of the target.

use std::cell::RefCell;
use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::sset::{precompose_surjection, SSet};

/// Default node limit for a single search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Whether to stop at the first solution or collect all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    First,
    All,
}

/// A target simplicial set with a lazily built face index.
pub struct Solver {
    target: Arc<SSet>,
    budget: u64,
    index: RefCell<Vec<Option<Arc<HashMap<Vec<Simplex>, Vec<Simplex>>>>>>,
    vertices: Vec<Simplex>,
}

/// Extra condition on the image of individual source simplices.
pub type Filter<'a> = &'a dyn Fn(Simplex, Simplex) -> bool;

impl Solver {
    pub fn new(target: &Arc<SSet>, budget: u64) -> Solver {
        Solver {
            target: target.clone(),
            budget,
            index: RefCell::new(Vec::new()),
            vertices: target.nondegenerate(0).collect(),
        }
    }

    pub fn target(&self) -> &Arc<SSet> {
        &self.target
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn index(&self, n: usize) -> Arc<HashMap<Vec<Simplex>, Vec<Simplex>>> {
        let mut idx = self.index.borrow_mut();
        while idx.len() <= n {
            idx.push(None);
        }
        if let Some(m) = &idx[n] {
            return m.clone();
        }
        let mut map: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
        for s in self.target.simplices(n) {
            let key: Vec<Simplex> = (0..=n).map(|i| self.target.face(i, s)).collect();
            map.entry(key).or_default().push(s);
        }
        let map = Arc::new(map);
        idx[n] = Some(map.clone());
        map
    }

    /// The `n`-simplices of the target with the given faces.
    pub fn with_faces(&self, faces: &[Simplex]) -> Vec<Simplex> {
        let n = faces.len() - 1;
        self.index(n).get(faces).cloned().unwrap_or_default()
    }

    /// Runs a search over maps `source → target` that agree with `fixed`
    /// (indexed by the source's flat order) and satisfy `filter`, calling
    /// `visit` on each solution's image table.
    pub fn search(
        &self,
        source: &SSet,
        fixed: &[Option<Simplex>],
        filter: Option<Filter<'_>>,
        mut visit: impl FnMut(&[Simplex]) -> ControlFlow<()>,
    ) -> Result<()> {
        if let Some(top) = source.top_dim() {
            if let Some(k) = self.target.known_through() {
                if top > k {
                    return Err(Error::Truncated {
                        what: "map search target".into(),
                        needed: top,
                        known: k,
                    });
                }
            }
        }
        let order = variable_order(source);
        let mut images = vec![Simplex::nondegenerate(0, 0); source.flat_len()];
        let mut nodes = 0u64;
        let mut state = SearchState {
            solver: self,
            source,
            fixed,
            filter,
            order: &order,
            images: &mut images,
            nodes: &mut nodes,
        };
        match state.descend(&mut visit)? {
            ControlFlow::Continue(()) | ControlFlow::Break(()) => Ok(()),
        }
    }

    /// All maps, or the first one, as image tables.
    pub fn solutions(
        &self,
        source: &SSet,
        fixed: &[Option<Simplex>],
        filter: Option<Filter<'_>>,
        mode: Mode,
    ) -> Result<Vec<Vec<Simplex>>> {
        let mut out = Vec::new();
        self.search(source, fixed, filter, |im| {
            out.push(im.to_vec());
            if mode == Mode::First {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        out.sort();
        Ok(out)
    }

    pub fn exists(&self, source: &SSet, fixed: &[Option<Simplex>], filter: Option<Filter<'_>>) -> Result<bool> {
        Ok(!self.solutions(source, fixed, filter, Mode::First)?.is_empty())
    }

    pub fn count(&self, source: &SSet, fixed: &[Option<Simplex>], filter: Option<Filter<'_>>) -> Result<usize> {
        let mut n = 0;
        self.search(source, fixed, filter, |_| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }

    /// All maps `source → target` in canonical order.
    pub fn maps(&self, source: &Arc<SSet>) -> Result<Vec<SMap>> {
        let fixed = vec![None; source.flat_len()];
        Ok(self
            .solutions(source, &fixed, None, Mode::All)?
            .into_iter()
            .map(|im| SMap::new_unchecked(source.clone(), self.target.clone(), im))
            .collect())
    }

    /// Extensions of `partial: A → X` along `incl: A → B`.
    pub fn extensions(&self, incl: &SMap, partial: &SMap, mode: Mode) -> Result<Vec<SMap>> {
        let b = incl.target();
        let fixed = fixed_from(incl, partial);
        Ok(self
            .solutions(b, &fixed, None, mode)?
            .into_iter()
            .map(|im| SMap::new_unchecked(b.clone(), self.target.clone(), im))
            .collect())
    }
}

/// The fixed-image table on `B` induced by `partial` along `incl: A → B`.
pub fn fixed_from(incl: &SMap, partial: &SMap) -> Vec<Option<Simplex>> {
    let b = incl.target();
    let mut fixed = vec![None; b.flat_len()];
    for s in incl.source().all_nondegenerate() {
        let t = incl.image(s);
        debug_assert!(!t.is_degenerate());
        fixed[b.flat_index(t)] = Some(partial.image(s));
    }
    fixed
}

struct SearchState<'a, 'b> {
    solver: &'a Solver,
    source: &'a SSet,
    fixed: &'a [Option<Simplex>],
    filter: Option<Filter<'b>>,
    order: &'a [Simplex],
    images: &'a mut Vec<Simplex>,
    nodes: &'a mut u64,
}

impl SearchState<'_, '_> {
    /// Candidate images for the simplex at `pos`, given the images placed so far.
    fn candidates(&self, pos: usize) -> Vec<Simplex> {
        let s = self.order[pos];
        let flat = self.source.flat_index(s);
        if s.dim() == 0 {
            return match self.fixed[flat] {
                Some(v) => vec![v],
                None => self.solver.vertices.clone(),
            };
        }
        let key: Vec<Simplex> = self
            .source
            .faces_of(s)
            .iter()
            .map(|&f| {
                let y = self.images[self.source.flat_index(f.base())];
                if f.is_degenerate() {
                    precompose_surjection(y, &f.surjection())
                } else {
                    y
                }
            })
            .collect();
        let found = self.solver.with_faces(&key);
        match self.fixed[flat] {
            Some(v) if found.contains(&v) => vec![v],
            Some(_) => vec![],
            None => found,
        }
    }

    /// Depth-first search with an explicit stack, so deep sources do not
    /// exhaust the thread stack.
    fn descend(&mut self, visit: &mut impl FnMut(&[Simplex]) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        if self.order.is_empty() {
            return Ok(visit(self.images));
        }
        let mut stack: Vec<(Vec<Simplex>, usize)> = vec![(self.candidates(0), 0)];
        while let Some((cands, next)) = stack.last_mut() {
            let Some(&c) = cands.get(*next) else {
                stack.pop();
                continue;
            };
            *next += 1;
            let pos = stack.len() - 1;
            *self.nodes += 1;
            if *self.nodes > self.solver.budget {
                return Err(Error::BudgetExceeded {
                    limit: self.solver.budget,
                });
            }
            let s = self.order[pos];
            if let Some(f) = self.filter {
                if !f(s, c) {
                    continue;
                }
            }
            self.images[self.source.flat_index(s)] = c;
            if pos + 1 == self.order.len() {
                if let ControlFlow::Break(()) = visit(self.images) {
                    return Ok(ControlFlow::Break(()));
                }
            } else {
                let cands = self.candidates(pos + 1);
                stack.push((cands, 0));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Vertices greedily by connectivity to those already placed; each other
/// simplex right after the last of its vertices, lower dimensions first.
fn variable_order(source: &SSet) -> Vec<Simplex> {
    let nv = source.count(0);
    let mut adjacency = vec![Vec::new(); nv];
    for e in source.nondegenerate(1) {
        let a = source.face(1, e).base_id();
        let b = source.face(0, e).base_id();
        if a != b {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    let mut placed = vec![false; nv];
    let mut weight = vec![0usize; nv];
    let mut rank = vec![0usize; nv];
    let mut vorder = Vec::with_capacity(nv);
    for step in 0..nv {
        let next = (0..nv)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed[next] = true;
        rank[next] = step;
        vorder.push(next);
        for &w in &adjacency[next] {
            weight[w] += 1;
        }
    }
    let mut buckets: Vec<Vec<Simplex>> = vec![Vec::new(); nv];
    let top = source.top_dim().unwrap_or(0);
    for n in 1..=top {
        for s in source.nondegenerate(n) {
            let last = source
                .vertices(s)
                .iter()
                .map(|v| rank[v.base_id()])
                .max()
                .expect("simplex has vertices");
            buckets[last].push(s);
        }
    }
    let mut order = Vec::with_capacity(source.flat_len());
    for (step, &v) in vorder.iter().enumerate() {
        order.push(Simplex::nondegenerate(0, v));
        order.extend(buckets[step].iter().copied());
    }
    order
}

/// All simplicial maps `K → X` in canonical order.
pub fn enumerate_maps(k: &Arc<SSet>, x: &Arc<SSet>, budget: u64) -> Result<Vec<SMap>> {
    Solver::new(x, budget).maps(k)
}

/// An extension problem: extend `partial: A → X` along `incl: A ⊆ B`.
#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    pub incl: SMap,
    pub partial: SMap,
    pub budget: u64,
}

impl ExtensionProblem {
    pub fn new(incl: SMap, partial: SMap) -> Result<ExtensionProblem> {
        if !incl.is_injective() {
            return Err(Error::Argument("extension problem needs an inclusion".into()));
        }
        partial.check()?;
        Ok(ExtensionProblem {
            incl,
            partial,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> ExtensionProblem {
        self.budget = budget;
        self
    }
}

pub fn extend_map(problem: &ExtensionProblem, mode: Mode) -> Result<Vec<SMap>> {
    Solver::new(problem.partial.target(), problem.budget).extensions(&problem.incl, &problem.partial, mode)
}
