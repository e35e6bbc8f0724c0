//! The category `Fin_*` of pointed finite sets `⟨n⟩ = {*, 1, …, n}`,
//! truncated at an arity cap, together with its nerve.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::constructions::nerve::{Category, Nerve};
use crate::error::Result;
use crate::simplex::Simplex;
use crate::solver::lifting::QCat;
use crate::sset::SSet;
use crate::truncation::hd::{h_d, Truncation};

/// Inert: every non-basepoint element has exactly one preimage.  Active:
/// only the basepoint goes to the basepoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapClass {
    pub inert: bool,
    pub active: bool,
}

/// `Fin_*` on the objects `⟨0⟩, …, ⟨N⟩`, with its nerve through a
/// dimension cap.  Object `n` is `⟨n⟩`; a morphism `⟨m⟩ → ⟨n⟩` is stored as
/// its table `[0, f(1), …, f(m)]` with `0` the basepoint.
pub struct FinStar {
    arity: usize,
    tables: Vec<Vec<usize>>,
    index: HashMap<(usize, Vec<usize>), usize>,
    nerve: Nerve,
    truncations: Mutex<HashMap<(isize, usize), Arc<Truncation>>>,
}

fn all_tables(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=n).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn table_name(m: usize, n: usize, t: &[usize]) -> String {
    let values: Vec<String> = t[1..]
        .iter()
        .map(|&v| if v == 0 { "*".to_string() } else { v.to_string() })
        .collect();
    format!("⟨{m}⟩→⟨{n}⟩[{}]", values.join(","))
}

impl FinStar {
    /// `Fin_*` with arity cap `arity`, nerve materialized through `cap`.
    pub fn new(arity: usize, cap: usize) -> FinStar {
        let objects: Vec<String> = (0..=arity).map(|n| format!("⟨{n}⟩")).collect();
        let mut tables = Vec::new();
        let mut names = Vec::new();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        let mut index = HashMap::new();
        for m in 0..=arity {
            for n in 0..=arity {
                for t in all_tables(m, n) {
                    index.insert((n, t.clone()), tables.len());
                    names.push(table_name(m, n, &t));
                    src.push(m);
                    dst.push(n);
                    tables.push(t);
                }
            }
        }
        let identity = (0..=arity).map(|n| index[&(n, (0..=n).collect::<Vec<_>>())]).collect();
        let category = Category::from_fn(objects, names, src, dst.clone(), identity, |g, f| {
            let composite: Vec<usize> = tables[f].iter().map(|&v| tables[g][v]).collect();
            index[&(dst[g], composite)]
        })
        .expect("Fin_* is a category");
        let nerve = Nerve::new(&Arc::new(category), cap);
        FinStar {
            arity,
            tables,
            index,
            nerve,
            truncations: Mutex::new(HashMap::new()),
        }
    }

    pub fn arity_cap(&self) -> usize {
        self.arity
    }

    pub fn category(&self) -> &Arc<Category> {
        self.nerve.category()
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn sset(&self) -> &Arc<SSet> {
        self.nerve.sset()
    }

    /// The dimension through which the nerve is materialized.
    pub fn cap(&self) -> usize {
        self.sset().known_through().unwrap_or(usize::MAX)
    }

    /// `h_d N(Fin_*)` through `out_dim`, computed once per `(d, out_dim)`.
    pub fn truncation(&self, d: isize, out_dim: usize, budget: u64) -> Result<Arc<Truncation>> {
        let key = (d, out_dim);
        if let Some(t) = self.truncations.lock().expect("cache lock").get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(h_d(&QCat::nerve(&self.nerve), d, out_dim, budget)?);
        self.truncations.lock().expect("cache lock").insert(key, t.clone());
        Ok(t)
    }

    pub fn morphism_count(&self) -> usize {
        self.tables.len()
    }

    /// The table `[0, f(1), …, f(m)]`.
    pub fn table(&self, f: usize) -> &[usize] {
        &self.tables[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.tables[f].len() - 1
    }

    pub fn dst(&self, f: usize) -> usize {
        self.category().dst(f)
    }

    /// The morphism `⟨table.len() - 1⟩ → ⟨n⟩` with the given table.
    pub fn morphism(&self, n: usize, table: &[usize]) -> Option<usize> {
        self.index.get(&(n, table.to_vec())).copied()
    }

    pub fn identity(&self, n: usize) -> usize {
        self.category().identity(n)
    }

    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.category().compose(g, f)
    }

    pub fn classify(&self, f: usize) -> MapClass {
        let t = &self.tables[f];
        let n = self.dst(f);
        let mut preimages = vec![0usize; n + 1];
        for &v in &t[1..] {
            preimages[v] += 1;
        }
        MapClass {
            inert: preimages[1..].iter().all(|&c| c == 1),
            active: preimages[0] == 0,
        }
    }

    pub fn is_inert(&self, f: usize) -> bool {
        self.classify(f).inert
    }

    pub fn is_active(&self, f: usize) -> bool {
        self.classify(f).active
    }

    /// `ρ^i: ⟨n⟩ → ⟨1⟩`, sending `i` to `1` and everything else to `*`.
    pub fn rho(&self, n: usize, i: usize) -> usize {
        assert!((1..=n).contains(&i), "ρ^{i} is undefined on ⟨{n}⟩");
        let t: Vec<usize> = (0..=n).map(|k| usize::from(k == i)).collect();
        self.index[&(1, t)]
    }

    /// The active map `⟨n⟩ → ⟨1⟩`.
    pub fn active(&self, n: usize) -> usize {
        let t: Vec<usize> = (0..=n).map(|k| usize::from(k > 0)).collect();
        self.index[&(1, t)]
    }

    /// The inert maps out of `⟨m⟩`.
    pub fn inert_from(&self, m: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.tables.len()).filter(move |&f| self.src(f) == m && self.is_inert(f))
    }

    /// The vertex `⟨n⟩` of the nerve.
    pub fn vertex(&self, n: usize) -> Simplex {
        self.nerve.vertex(n)
    }

    /// The edge of a morphism in the nerve.
    pub fn edge(&self, f: usize) -> Simplex {
        self.nerve.edge(f)
    }

    /// The morphism of an edge of the nerve.
    pub fn morphism_of(&self, e: Simplex) -> usize {
        self.nerve.morphism(e)
    }

    /// The object `n` of a vertex `⟨n⟩` of the nerve.
    pub fn object_of(&self, v: Simplex) -> usize {
        self.nerve.object(v)
    }
}
