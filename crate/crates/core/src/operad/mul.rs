//! Multi-mapping spaces `Mul_O({X₁, …, X_n}; Y)` and their behaviour under
//! `h_d`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::constructions::iso::iso_check;
use crate::error::{Error, Result};
use crate::operad::data::OperadData;
use crate::operad::truncate::{h_d_operad, is_d_operad};
use crate::report::Report;
use crate::simplex::Simplex;
use crate::solver::lifting::{pi0, QCat};
use crate::sset::SSet;
use crate::truncation::hd::h_d;
use crate::truncation::mapping::{hom_right_filtered, MappingSpace};

/// The fibre of `hom^R(X, Y)` over the active map `⟨n⟩ → ⟨1⟩`, for a tuple
/// object `X` decomposing into the inputs.
pub struct MultiMapSpace {
    inputs: Vec<Simplex>,
    output: Simplex,
    tuple: Simplex,
    space: MappingSpace,
}

impl MultiMapSpace {
    pub fn inputs(&self) -> &[Simplex] {
        &self.inputs
    }

    pub fn output(&self) -> Simplex {
        self.output
    }

    /// The chosen object over `⟨n⟩`.
    pub fn tuple(&self) -> Simplex {
        self.tuple
    }

    pub fn space(&self) -> &MappingSpace {
        &self.space
    }

    pub fn sset(&self) -> &Arc<SSet> {
        self.space.sset()
    }
}

/// `Mul_O(inputs; output)` at the lexicographically least tuple object,
/// through dimension `cap` (clipped to what the total space supports).
pub fn multi_mapping_space(o: &OperadData, inputs: &[Simplex], output: Simplex, cap: usize) -> Result<MultiMapSpace> {
    let tuple = *o.tuple_objects(inputs).first().ok_or_else(|| {
        Error::Validation(format!(
            "operad {}: no certified object over ⟨{}⟩ decomposes into the inputs",
            o.name(),
            inputs.len()
        ))
    })?;
    multi_mapping_space_at(o, tuple, output, cap)
}

/// `Mul_O` at a given object `tuple` over `⟨n⟩` and output over `⟨1⟩`.
pub fn multi_mapping_space_at(o: &OperadData, tuple: Simplex, output: Simplex, cap: usize) -> Result<MultiMapSpace> {
    let a = o.arrows();
    if a.object(output) != 1 {
        return Err(Error::Argument("the output of a multi-mapping space lies over ⟨1⟩".into()));
    }
    let inputs = o
        .decomposition(tuple)
        .ok_or_else(|| Error::Validation(format!("operad {}: tuple object has no recorded decomposition", o.name())))?;
    let fin = o.fin();
    let n = a.object(tuple);
    let active = fin.edge(fin.active(n));
    let cap = cap.min(o.cap().saturating_sub(1));
    let keep = |s: Simplex| {
        let k = s.dim();
        let mut theta = vec![0; k];
        theta.push(1);
        o.proj().eval(s) == fin.sset().apply(&theta, active)
    };
    let space = hom_right_filtered(o.total(), tuple, output, cap, &keep)?;
    Ok(MultiMapSpace {
        inputs,
        output,
        tuple,
        space,
    })
}

/// Whether every tuple object gives a fibre isomorphic to the chosen one.
pub fn tuple_independence(o: &OperadData, inputs: &[Simplex], output: Simplex, cap: usize, budget: u64) -> Result<bool> {
    let chosen = multi_mapping_space(o, inputs, output, cap)?;
    for x in o.tuple_objects(inputs) {
        let other = multi_mapping_space_at(o, x, output, cap)?;
        if iso_check(chosen.sset(), other.sset(), chosen.space().cap(), budget)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `h_{d-1}` of a multi-mapping space (a point for `d - 1 = -2`).
fn truncate_space(m: &Arc<SSet>, k: isize, cap: usize, budget: u64) -> Result<crate::truncation::hd::Truncation> {
    let q = if k <= -1 {
        QCat::by_construction(m)
    } else {
        QCat::certify(m, (k as usize + 2).max(2), budget)?
    };
    h_d(&q, k, cap, budget)
}

/// Compares `Mul_{h_d O}(θX₁, …; θY)` with `h_{d-1} Mul_O(X₁, …; Y)`:
/// isomorphic through `m`, with the map induced by `θ_d` factoring through
/// `θ_{d-1}` on vertices as a bijection, and surjective on `π₀`.
pub fn mul_truncation_verify(
    o: &OperadData,
    d: isize,
    inputs: &[Simplex],
    output: Simplex,
    m: usize,
    budget: u64,
) -> Result<Report> {
    let t = h_d_operad(o, d, budget)?;
    let h = t.operad();
    let theta = t.theta();
    let mul = multi_mapping_space(o, inputs, output, m)?;
    let left = multi_mapping_space_at(h, theta.eval(mul.tuple()), theta.eval(output), m)?;
    let cap = mul.space().cap().min(left.space().cap());
    let right = truncate_space(mul.sset(), d - 1, cap, budget)?;
    let mut r = Report::new(
        format!("Mul under h_{d} in {} (arity {})", o.name(), inputs.len()),
        format!("{}; dims ≤ {cap}", o.bound()),
    );
    r.fact("mul_counts", mul.sset().counts());
    r.fact("truncated_mul_counts", left.sset().counts());
    r.fact("h_{d-1}_counts", right.sset().counts());
    let iso = iso_check(left.sset(), right.sset(), cap, budget)?.is_some();
    r.check("Mul(h_d O) ≅ h_{d-1} Mul(O)", iso, None);

    // β: Mul(O) → Mul(h_d O) induced by θ_d
    let mut beta = BTreeMap::new();
    let mut outside = None;
    for s in mul.sset().all_nondegenerate().filter(|s| s.dim() <= cap) {
        match left.space().from_ambient(theta.eval(mul.space().ambient_simplex(s))) {
            Some(b) => {
                beta.insert(s, b);
            }
            None => {
                outside.get_or_insert_with(|| mul.sset().render(s));
            }
        }
    }
    r.check("θ_d maps Mul(O) into Mul(h_d O)", outside.is_none(), outside);

    // α on vertices: γ(v) ↦ β(v) must be well defined and bijective
    let mut alpha: BTreeMap<Simplex, Simplex> = BTreeMap::new();
    let mut clash = None;
    for v in mul.sset().nondegenerate(0) {
        let (Some(&b), Ok(g)) = (beta.get(&v), right.theta(v)) else {
            clash.get_or_insert_with(|| mul.sset().render(v));
            continue;
        };
        if *alpha.entry(g).or_insert(b) != b {
            clash.get_or_insert_with(|| mul.sset().render(v));
        }
    }
    let hit: BTreeSet<Simplex> = alpha.values().copied().collect();
    let bijective = clash.is_none()
        && alpha.len() == right.sset().count(0)
        && hit.len() == alpha.len()
        && hit.len() == left.sset().count(0);
    r.check("vertex comparison well defined and bijective", bijective, clash);

    let components = pi0(left.sset());
    let missed = components.iter().find(|c| !c.iter().any(|v| hit.contains(v)));
    r.check(
        "π₀-surjective",
        missed.is_none(),
        missed.map(|c| left.sset().render(c[0])),
    );
    Ok(r)
}

/// Whether a space is `k`-truncated at the level of its materialized
/// dimensions: `k = -2` a point, `k = -1` empty or a point, `k ≥ 0` the
/// unit `θ_k` bijective through `cap`.
pub fn is_truncated_space(m: &Arc<SSet>, k: isize, cap: usize, budget: u64) -> Result<bool> {
    let point = (0..=cap).all(|j| m.simplex_count(j) == 1);
    Ok(match k {
        _ if k <= -2 => point,
        -1 => m.is_empty() || point,
        _ => truncate_space(m, k, cap, budget)?.theta_map()?.is_bijective_through(cap),
    })
}

/// For a one-color operad, compares `is_d_operad` with `(d-1)`-truncatedness
/// of every `Mul(x, …, x; x)` up to the arity cap.
pub fn one_color_verify(o: &OperadData, d: isize, m: usize, budget: u64) -> Result<Report> {
    let colors = o.vertices_over(1);
    let [x] = colors[..] else {
        return Err(Error::Argument(format!("operad {} does not have exactly one color", o.name())));
    };
    let mut r = Report::new(format!("{} as a one-color {d}-operad", o.name()), o.bound());
    let operad = is_d_operad(o, d, budget)?;
    let mut truncated = Vec::new();
    for n in 0..=o.fin().arity_cap() {
        let mul = multi_mapping_space(o, &vec![x; n], x, m)?;
        truncated.push(is_truncated_space(mul.sset(), d - 1, mul.space().cap(), budget)?);
    }
    r.fact("is_d_operad", operad);
    r.fact("mul_truncated_by_arity", &truncated);
    r.check(
        "d-operad exactly when every Mul(n) is (d-1)-truncated",
        operad == truncated.iter().all(|&t| t),
        None,
    );
    Ok(r)
}
