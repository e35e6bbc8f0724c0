//! Algebra complexes `Alg_O(U)`: maps `O^⊗ → U^⊗` over `Fin_*` sending
//! inert edges to inert edges, as a full sub-complex of the relative
//! function complex.
//!
//! Targets must be nerves of 1-categories.  Those are 2-coskeletal, so maps
//! out of `O^⊗ × Δⁿ` are determined by, and freely extend from, the
//! 2-skeleton; only `sk_2(sk_2 O^⊗ × Δⁿ)` is enumerated.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::constructions::standard::skeleton;
use crate::error::{Error, Result};
use crate::operad::data::OperadData;
use crate::operad::truncate::{as_category, h_d_operad, is_d_operad};
use crate::report::Report;
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::solver::funcomplex::{fun_complex_where, FunComplex, FunOptions};
use crate::sset::SSet;
use crate::truncation::dcat::is_d_category_certifying;

/// `Alg_O(U)` through dimension `cap`.
pub struct AlgComplex {
    fun: FunComplex,
    skeleton: Arc<SSet>,
}

impl AlgComplex {
    pub fn sset(&self) -> &Arc<SSet> {
        self.fun.sset()
    }

    pub fn fun(&self) -> &FunComplex {
        &self.fun
    }

    /// `sk_2 O^⊗`, the source of the enumerated maps.
    pub fn skeleton(&self) -> &Arc<SSet> {
        &self.skeleton
    }
}

/// Builds `Alg_O(U)` in degrees `0..=cap`.
pub fn alg_complex(o: &OperadData, u: &OperadData, cap: usize, budget: u64) -> Result<AlgComplex> {
    if !Arc::ptr_eq(o.fin(), u.fin()) && o.fin().sset() != u.fin().sset() {
        return Err(Error::Argument("operads over different truncations of Fin_*".into()));
    }
    if let Err(reason) = as_category(u.total())? {
        return Err(Error::Argument(format!(
            "algebra targets must be nerves of 1-categories ({}: {reason})",
            u.name()
        )));
    }
    let (sk, incl) = skeleton(o.total(), 2);
    let over = incl.then(o.proj());
    // lifts as simplices of the skeleton, which keeps the ids of O^⊗
    let lifts: Vec<Simplex> = o.lifts().values().copied().collect();
    let keep = |f: &SMap| lifts.iter().all(|&e| u.is_cocartesian_strict(f.eval(e)));
    let options = FunOptions {
        over: Some((&over, u.proj())),
        product_cap: Some(2),
        keep_vertex: Some(&keep),
    };
    let fun = fun_complex_where(&sk, u.total(), cap, &options, budget)?;
    Ok(AlgComplex { fun, skeleton: sk })
}

/// Precomposition along `θ_d: O → h_d O` maps `Alg_{h_d O}(U)` bijectively
/// onto `Alg_O(U)` in each degree through `cap`, for `U` a `d`-operad.
pub fn alg_precomposition_verify(o: &OperadData, u: &OperadData, d: isize, cap: usize, budget: u64) -> Result<Report> {
    let t = h_d_operad(o, d, budget)?;
    let h = t.operad();
    let mut r = Report::new(
        format!("precomposition Alg_{{h_{d}{}}}({}) → Alg_{}({})", o.name(), u.name(), o.name(), u.name()),
        format!("{}; dims ≤ {cap}", o.bound()),
    );
    r.check(format!("target is a {d}-operad"), is_d_operad(u, d, budget)?, None);
    let from = alg_complex(h, u, cap, budget)?;
    let to = alg_complex(o, u, cap, budget)?;
    r.fact("source_counts", from.sset().counts());
    r.fact("target_counts", to.sset().counts());
    // θ_d on 2-skeleta (skeleta keep ids)
    let theta = SMap::new_unchecked(
        to.skeleton().clone(),
        from.skeleton().clone(),
        to.skeleton().all_nondegenerate().map(|s| t.theta().eval(s)).collect(),
    );
    let mut images: BTreeMap<Simplex, Simplex> = BTreeMap::new();
    let mut lost = None;
    for s in from.sset().all_nondegenerate() {
        let n = s.dim();
        let f = from.fun().as_map(s);
        let id = SMap::identity(from.fun().product(n).right());
        let pulled = to.fun().product(n).map(&theta, &id, from.fun().product(n)).then(&f);
        match to.fun().simplex_of(&pulled) {
            Some(x) => {
                images.insert(s, x);
            }
            None => {
                lost.get_or_insert_with(|| from.sset().render(s));
            }
        }
    }
    r.check("precomposites are algebras", lost.is_none(), lost);
    let mut bijective = true;
    for n in 0..=cap {
        let hit: std::collections::BTreeSet<Simplex> = images.iter().filter(|(s, _)| s.dim() == n).map(|(_, &x)| x).collect();
        let count = images.keys().filter(|s| s.dim() == n).count();
        bijective &= hit.len() == count && count == to.sset().count(n);
    }
    r.check("bijective on nondegenerate simplices", bijective, None);
    Ok(r)
}

/// `Alg_O(U)` is a `d`-category through `cap` when `U` is a `d`-operad.
pub fn alg_d_category_verify(o: &OperadData, u: &OperadData, d: isize, cap: usize, budget: u64) -> Result<Report> {
    let mut r = Report::new(format!("Alg_{}({}) as a {d}-category", o.name(), u.name()), format!("{}; dims ≤ {cap}", u.bound()));
    let target = is_d_operad(u, d, budget)?;
    r.fact("target_is_d_operad", target);
    let alg = alg_complex(o, u, cap, budget)?;
    r.fact("counts", alg.sset().counts());
    if target {
        let ok = is_d_category_certifying(alg.sset(), d, cap, budget)?;
        r.check(format!("is a {d}-category"), ok, None);
    }
    Ok(r)
}
