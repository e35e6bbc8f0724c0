//! Standard simplices, their boundaries and horns, and skeleta.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplex::{mask_of, Simplex};
use crate::smap::SMap;
use crate::sset::{SSet, SSetBuilder};

/// A simplicial subset of `Δⁿ`, with simplices addressed by vertex lists.
#[derive(Clone, Debug)]
pub struct VertexComplex {
    n: usize,
    sset: Arc<SSet>,
    subsets: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, Simplex>,
}

fn subset_name(n: usize, s: &[usize]) -> String {
    if n < 10 {
        s.iter().map(|v| v.to_string()).collect()
    } else {
        s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl VertexComplex {
    /// The simplicial subset of `Δⁿ` spanned by the vertex subsets accepted
    /// by `keep`, which must be closed under taking nonempty subsets.
    pub fn new(n: usize, keep: impl Fn(&[usize]) -> bool) -> VertexComplex {
        let mut builder = SSetBuilder::new();
        let mut subsets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
        let mut index = HashMap::new();
        for k in 0..=n {
            for subset in combinations(n + 1, k + 1) {
                if !keep(&subset) {
                    continue;
                }
                let faces: Vec<Simplex> = if k == 0 {
                    Vec::new()
                } else {
                    (0..=k)
                        .map(|i| {
                            let mut f = subset.clone();
                            f.remove(i);
                            *index.get(&f).expect("subcomplex is closed under faces")
                        })
                        .collect()
                };
                let s = builder.add(k, subset_name(n, &subset), faces);
                index.insert(subset.clone(), s);
                subsets[k].push(subset);
            }
        }
        while subsets.last().is_some_and(Vec::is_empty) {
            subsets.pop();
        }
        VertexComplex {
            n,
            sset: Arc::new(builder.finish(None)),
            subsets,
            index,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn sset(&self) -> &Arc<SSet> {
        &self.sset
    }

    /// The vertex set of a nondegenerate simplex.
    pub fn subset(&self, s: Simplex) -> &[usize] {
        &self.subsets[s.base_dim()][s.base_id()]
    }

    /// The vertex sequence of any simplex.
    pub fn sequence(&self, s: Simplex) -> Vec<usize> {
        let base = self.subset(s.base());
        s.surjection().into_iter().map(|k| base[k]).collect()
    }

    /// The simplex with a given weakly increasing vertex sequence, if it
    /// lies in this subcomplex.
    pub fn simplex(&self, sequence: &[usize]) -> Option<Simplex> {
        let mut distinct = sequence.to_vec();
        distinct.dedup();
        let base = self.index.get(&distinct)?;
        let eta: Vec<usize> = {
            let mut out = Vec::with_capacity(sequence.len());
            let mut k = 0;
            for (pos, v) in sequence.iter().enumerate() {
                if pos > 0 && *v != sequence[pos - 1] {
                    k += 1;
                }
                out.push(k);
            }
            out
        };
        Some(Simplex::from_parts(sequence.len() - 1, mask_of(&eta), base.base_id()))
    }

    /// The map `self → other` induced by a monotone map on vertices.
    pub fn induced(&self, other: &VertexComplex, theta: &[usize]) -> Result<SMap> {
        let images = self
            .sset
            .all_nondegenerate()
            .map(|s| {
                let seq: Vec<usize> = self.subset(s).iter().map(|&v| theta[v]).collect();
                other
                    .simplex(&seq)
                    .ok_or_else(|| Error::Argument(format!("vertex map does not land in the target on {seq:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SMap::new_unchecked(self.sset.clone(), other.sset.clone(), images))
    }

    /// The inclusion of `self` into a larger subcomplex of the same `Δⁿ`.
    pub fn inclusion_into(&self, other: &VertexComplex) -> Result<SMap> {
        let id: Vec<usize> = (0..=self.n).collect();
        self.induced(other, &id)
    }
}

/// All `k`-element subsets of `{0, …, n-1}`, lexicographically.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..n {
            if n - v < k - current.len() {
                break;
            }
            current.push(v);
            rec(v + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

pub fn standard_complex(n: usize) -> VertexComplex {
    VertexComplex::new(n, |_| true)
}

/// `sk^d Δⁿ`; `d = -1` gives the empty simplicial set.
pub fn standard_skeleton(n: usize, d: isize) -> VertexComplex {
    VertexComplex::new(n, |s| (s.len() as isize) <= d + 1)
}

pub fn boundary_complex(n: usize) -> VertexComplex {
    VertexComplex::new(n, |s| s.len() <= n)
}

pub fn horn_complex(n: usize, i: usize) -> Result<VertexComplex> {
    if n == 0 || i > n {
        return Err(Error::Argument(format!("horn Λ^{n}_{i} is undefined")));
    }
    Ok(VertexComplex::new(n, |s| {
        if s.len() == n + 1 {
            return false;
        }
        !(s.len() == n && !s.contains(&i))
    }))
}

/// `Δⁿ`.
pub fn standard(n: usize) -> SSet {
    (*standard_complex(n).sset).clone()
}

/// `∂Δⁿ`.
pub fn boundary(n: usize) -> SSet {
    (*boundary_complex(n).sset).clone()
}

/// `Λⁿᵢ`.
pub fn horn(n: usize, i: usize) -> Result<SSet> {
    Ok((*horn_complex(n, i)?.sset).clone())
}

/// The `d`-skeleton of `K` together with its inclusion.  The skeleton keeps
/// the canonical order of `K`, so nondegenerate simplices keep their ids.
pub fn skeleton(k: &Arc<SSet>, d: isize) -> (Arc<SSet>, SMap) {
    let mut builder = SSetBuilder::new();
    let mut images = Vec::new();
    if d >= 0 {
        let top = d as usize;
        for n in 0..=top.min(k.top_dim().unwrap_or(0)) {
            for s in k.nondegenerate(n) {
                builder.add(n, k.name(s), k.faces_of(s).to_vec());
                images.push(s);
            }
        }
    }
    let known = match k.known_through() {
        Some(c) if d >= 0 && (d as usize) > c => Some(c),
        _ => None,
    };
    let sk = Arc::new(builder.finish(known));
    let incl = SMap::new_unchecked(sk.clone(), k.clone(), images);
    (sk, incl)
}

/// The simplicial subset of `K` generated by `generators`, with its
/// inclusion.  Simplices keep their names.
pub fn subcomplex(k: &Arc<SSet>, generators: &[Simplex]) -> (Arc<SSet>, SMap) {
    let top = k.top_dim().map_or(0, |t| t + 1);
    let mut keep: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); top];
    let mut stack: Vec<Simplex> = generators.iter().map(|s| s.base()).collect();
    while let Some(s) = stack.pop() {
        if keep[s.dim()].insert(s.base_id()) {
            stack.extend(k.faces_of(s).iter().map(|f| f.base()));
        }
    }
    let mut builder = SSetBuilder::new();
    let mut images = Vec::new();
    let mut new_id: HashMap<Simplex, usize> = HashMap::new();
    for (n, ids) in keep.iter().enumerate() {
        for &id in ids {
            let s = Simplex::nondegenerate(n, id);
            let faces = k
                .faces_of(s)
                .iter()
                .map(|f| Simplex::from_parts(f.dim(), f.mask(), new_id[&f.base()]))
                .collect();
            new_id.insert(s, builder.add(n, k.name(s), faces).base_id());
            images.push(s);
        }
    }
    let known = k.known_through().filter(|&c| c + 1 < top);
    let sub = Arc::new(builder.finish(known));
    let incl = SMap::new_unchecked(sub.clone(), k.clone(), images);
    (sub, incl)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_counts() {
        assert_eq!(standard(2).counts(), vec![3, 3, 1]);
        assert_eq!(boundary(2).counts(), vec![3, 3]);
        let h = horn(2, 1).unwrap();
        assert_eq!(h.counts(), vec![3, 2]);
        assert!(h.lookup("01").is_some() && h.lookup("12").is_some() && h.lookup("02").is_none());
        assert!(horn(2, 3).is_err());
        assert!(horn(0, 0).is_err());
        assert_eq!(horn(3, 0).unwrap().counts(), vec![4, 6, 3]);
    }

    #[test]
    fn skeleta() {
        let d3 = Arc::new(standard(3));
        let (sk, incl) = skeleton(&d3, 1);
        assert_eq!(sk.counts(), vec![4, 6]);
        assert!(incl.is_injective());
        let (full, incl) = skeleton(&d3, 3);
        assert_eq!(*full, *d3);
        assert!(incl.is_isomorphism());
        let b = Arc::new(boundary(2));
        assert_eq!(skeleton(&b, 0).0.counts(), vec![3]);
        assert!(skeleton(&b, -1).0.is_empty());
        let (sub, incl) = subcomplex(&d3, &[d3.lookup("012").unwrap(), d3.lookup("3").unwrap()]);
        assert_eq!(sub.counts(), vec![4, 3, 1]);
        incl.check().unwrap();
        assert!(incl.is_injective());
    }

    #[test]
    fn vertex_sequences() {
        let c = standard_complex(3);
        let s = c.simplex(&[0, 0, 2, 3]).unwrap();
        assert_eq!(s.degeneracies(), vec![0]);
        assert_eq!(c.sequence(s), vec![0, 0, 2, 3]);
        assert_eq!(c.sset().render(s), "s0.023");
        for n in 0..4 {
            for s in c.sset().simplices(n) {
                assert_eq!(c.simplex(&c.sequence(s)), Some(s));
            }
        }
    }
}
