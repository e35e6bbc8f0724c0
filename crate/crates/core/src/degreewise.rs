//! Simplicial sets given degree-wise, re-extracted into normal form.
//!
//! Many constructions (mapping spaces, functor complexes, bracket sets) are
//! naturally described by listing all `n`-simplices together with the face
//! and degeneracy operators.  [`build`] recovers the nondegenerate
//! presentation: `x` is degenerate at position `j` exactly when
//! `x = s_j d_j x`.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::sset::{SSet, SSetBuilder};

pub struct Degreewise<K> {
    pub sset: SSet,
    /// For each listed level, the normal form of every key.
    pub lookup: Vec<HashMap<K, Simplex>>,
    /// Keys of the nondegenerate simplices, per dimension.
    pub nondegenerate: Vec<Vec<K>>,
}

impl<K: Clone + Eq + Hash> Degreewise<K> {
    pub fn simplex(&self, dim: usize, key: &K) -> Option<Simplex> {
        self.lookup.get(dim)?.get(key).copied()
    }

    pub fn key(&self, s: Simplex) -> &K {
        &self.nondegenerate[s.base_dim()][s.base_id()]
    }
}

/// Builds the nondegenerate presentation of a degree-wise simplicial set.
///
/// `levels[n]` lists every `n`-simplex; `face(n, i, x)` and
/// `degen(n, j, x)` act on an `n`-simplex `x`.  Levels must be closed under
/// the operators (checked).
pub fn build<K, F, D, N>(
    levels: Vec<Vec<K>>,
    face: F,
    degen: D,
    name: N,
    known_through: Option<usize>,
) -> Result<Degreewise<K>>
where
    K: Clone + Eq + Hash,
    F: Fn(usize, usize, &K) -> K,
    D: Fn(usize, usize, &K) -> K,
    N: Fn(usize, &K) -> String,
{
    let mut builder = SSetBuilder::new();
    let mut lookup: Vec<HashMap<K, Simplex>> = Vec::with_capacity(levels.len());
    let mut nondegenerate: Vec<Vec<K>> = Vec::with_capacity(levels.len());

    for (n, level) in levels.iter().enumerate() {
        let mut map = HashMap::with_capacity(level.len());
        let mut nd_keys = Vec::new();
        for x in level {
            if map.contains_key(x) {
                return Err(Error::Validation(format!("duplicate key in degree {n}")));
            }
            let mut mask = 0u32;
            for j in 0..n {
                let y = face(n, j, x);
                if degen(n - 1, j, &y) == *x {
                    mask |= 1 << j;
                }
            }
            let simplex = if mask == 0 {
                let faces = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| {
                            let y = face(n, i, x);
                            lookup[n - 1].get(&y).copied().ok_or_else(|| {
                                Error::Validation(format!("face d_{i} leaves degree {}", n - 1))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?
                };
                let s = builder.add(n, name(n, x), faces);
                nd_keys.push(x.clone());
                s
            } else {
                let mut z = x.clone();
                let mut dim = n;
                for j in (0..n).rev() {
                    if mask & (1 << j) != 0 {
                        z = face(dim, j, &z);
                        dim -= 1;
                    }
                }
                let base = lookup[dim]
                    .get(&z)
                    .copied()
                    .ok_or_else(|| Error::Validation(format!("degeneracy base leaves degree {dim}")))?;
                if base.is_degenerate() {
                    return Err(Error::Validation(format!(
                        "degree-wise data violates normal-form uniqueness in degree {n}"
                    )));
                }
                Simplex::from_parts(n, mask, base.base_id())
            };
            map.insert(x.clone(), simplex);
        }
        if n > 0 {
            for y in &levels[n - 1] {
                for j in 0..n {
                    if !map.contains_key(&degen(n - 1, j, y)) {
                        return Err(Error::Validation(format!("degeneracy s_{j} leaves degree {n}")));
                    }
                }
            }
        }
        lookup.push(map);
        nondegenerate.push(nd_keys);
    }
    Ok(Degreewise {
        sset: builder.finish(known_through),
        lookup,
        nondegenerate,
    })
}
