//! Isomorphism search between finite simplicial sets.

use std::collections::HashMap;
use std::sync::Arc;

use crate::constructions::standard::skeleton;
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::sset::SSet;

/// A per-simplex invariant preserved by isomorphisms: the degeneracy
/// pattern of each face, and how many nondegenerate simplices of the next
/// dimension have it as a face.
type Signature = (Vec<(u32, usize)>, usize);

fn signatures(x: &SSet, cap: usize) -> Vec<Signature> {
    let mut cofaces = vec![0usize; x.flat_len()];
    for s in x.all_nondegenerate() {
        if s.dim() > cap {
            continue;
        }
        for f in x.faces_of(s) {
            if !f.is_degenerate() {
                cofaces[x.flat_index(*f)] += 1;
            }
        }
    }
    x.all_nondegenerate()
        .map(|s| {
            let faces = x.faces_of(s).iter().map(|f| (f.mask(), f.base_dim())).collect();
            (faces, cofaces[x.flat_index(s)])
        })
        .collect()
}

/// Searches for an isomorphism `sk^cap A → sk^cap B` (the whole of `A → B`
/// when `cap` reaches both top dimensions).  The returned map has source
/// `A` itself when `A` has no simplices above `cap`.
pub fn iso_check(a: &Arc<SSet>, b: &Arc<SSet>, cap: usize, budget: u64) -> Result<Option<SMap>> {
    let top = |x: &SSet| x.top_dim().map_or(0, |t| t.min(cap));
    for n in 0..=cap.min(top(a).max(top(b))) {
        if a.count(n) != b.count(n) {
            return Ok(None);
        }
    }
    let (src, tgt) = if a.top_dim().is_none_or(|t| t <= cap) {
        (a.clone(), b.clone())
    } else {
        (skeleton(a, cap as isize).0, skeleton(b, cap as isize).0)
    };
    let sig_a = signatures(&src, cap);
    let sig_b = signatures(&tgt, cap);
    let mut by_sig: HashMap<(usize, &Signature), Vec<Simplex>> = HashMap::new();
    for t in tgt.all_nondegenerate() {
        by_sig.entry((t.dim(), &sig_b[tgt.flat_index(t)])).or_default().push(t);
    }
    let vars: Vec<Simplex> = src.all_nondegenerate().collect();
    let mut candidates = Vec::with_capacity(vars.len());
    for &s in &vars {
        match by_sig.get(&(s.dim(), &sig_a[src.flat_index(s)])) {
            Some(c) => candidates.push(c.clone()),
            None => return Ok(None),
        }
    }
    let mut images: Vec<Option<Simplex>> = vec![None; vars.len()];
    let mut used = vec![false; tgt.flat_len()];
    let mut nodes = 0u64;
    let found = assign(&src, &tgt, &vars, &candidates, 0, &mut images, &mut used, &mut nodes, budget)?;
    if !found {
        return Ok(None);
    }
    let images = images.into_iter().map(|s| s.expect("assigned")).collect();
    Ok(Some(SMap::new_unchecked(src, tgt, images)))
}

#[allow(clippy::too_many_arguments)]
fn assign(
    src: &SSet,
    tgt: &SSet,
    vars: &[Simplex],
    candidates: &[Vec<Simplex>],
    k: usize,
    images: &mut Vec<Option<Simplex>>,
    used: &mut Vec<bool>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    if k == vars.len() {
        return Ok(true);
    }
    let s = vars[k];
    'next: for &t in &candidates[k] {
        let ti = tgt.flat_index(t);
        if used[ti] {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded { limit: budget });
        }
        for (fs, ft) in src.faces_of(s).iter().zip(tgt.faces_of(t)) {
            let base = images[src.flat_index(fs.base())].expect("faces come first");
            let mapped = Simplex::from_parts(fs.dim(), fs.mask(), base.base_id());
            if mapped != *ft {
                continue 'next;
            }
        }
        images[src.flat_index(s)] = Some(t);
        used[ti] = true;
        if assign(src, tgt, vars, candidates, k + 1, images, used, nodes, budget)? {
            return Ok(true);
        }
        used[ti] = false;
        images[src.flat_index(s)] = None;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cones::Cone;
    use crate::constructions::product::Product;
    use crate::constructions::standard::{boundary, standard};
    use crate::solver::search::DEFAULT_BUDGET;

    #[test]
    fn simple_isomorphisms() {
        let d2 = Arc::new(standard(2));
        let iso = iso_check(&d2, &d2, 3, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(iso.is_isomorphism());
        let d1 = Arc::new(standard(1));
        let b1 = Arc::new(boundary(1));
        assert!(iso_check(&d1, &b1, 2, DEFAULT_BUDGET).unwrap().is_none());
        let pt = Arc::new(standard(0));
        let j = Cone::j(&pt).unwrap();
        let w = iso_check(j.sset(), &d1, 2, DEFAULT_BUDGET).unwrap().unwrap();
        w.check().unwrap();
    }

    #[test]
    fn products_commute() {
        let d1 = Arc::new(standard(1));
        let d2 = Arc::new(standard(2));
        let p = Product::new(&d1, &d2, 4);
        let q = Product::new(&d2, &d1, 4);
        let iso = iso_check(p.sset(), q.sset(), 4, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(iso.is_isomorphism());
        let s = Product::new(&d1, &d1, 3);
        assert!(iso_check(s.sset(), &d2, 3, DEFAULT_BUDGET).unwrap().is_none());
    }
}
