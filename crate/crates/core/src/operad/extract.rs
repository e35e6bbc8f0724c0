//! Reading a colored operad back off an operad over `Fin_*` whose total
//! space is the nerve of a 1-category.
//!
//! Operations `(c₁, …, c_k) → y` are the edges over the active map
//! `⟨k⟩ → ⟨1⟩` out of the least tuple object for `(c₁, …, c_k)`.
//! Composites and the symmetric action are computed in the total space
//! through the chosen inert lifts.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::operad::colored::{Action, ColoredOperad, Composite, Operation};
use crate::operad::data::OperadData;
use crate::operad::truncate::as_category;
use crate::simplex::Simplex;

fn invalid(o: &OperadData, msg: impl std::fmt::Display) -> Error {
    Error::Validation(format!("operad {}: {msg}", o.name()))
}

/// The OPD tables of `o` within its arity cap.
pub fn to_colored(o: &OperadData) -> Result<ColoredOperad> {
    if let Err(reason) = as_category(o.total())? {
        return Err(invalid(o, format!("the total space is not a 1-category ({reason})")));
    }
    let fin = o.fin();
    let a = o.arrows();
    let x = o.total();
    let target = |e: Simplex| x.face(0, e);
    let colors = o.vertices_over(1);
    let arity = fin.arity_cap();

    let mut tuple: HashMap<Vec<Simplex>, Simplex> = HashMap::new();
    for k in 0..=arity {
        for c in (0..k).map(|_| colors.iter().copied()).multi_cartesian_product() {
            let t = *o
                .tuple_objects(&c)
                .first()
                .ok_or_else(|| invalid(o, format!("no object over ⟨{k}⟩ decomposes into the given colors")))?;
            tuple.insert(c, t);
        }
    }
    if arity == 0 {
        // the empty tuple is still needed for nullary operations
        let t = *o.vertices_over(0).first().ok_or_else(|| invalid(o, "nothing over ⟨0⟩"))?;
        tuple.insert(Vec::new(), t);
    }

    // operations, grouped by profile, in canonical order
    struct Op {
        inputs: Vec<Simplex>,
        edge: Simplex,
    }
    let mut ops: Vec<Op> = Vec::new();
    let mut by_edge: HashMap<Simplex, usize> = HashMap::new();
    let mut profiles: Vec<&Vec<Simplex>> = tuple.keys().collect();
    profiles.sort_by_key(|c| (c.len(), (*c).clone()));
    for c in profiles {
        let t = tuple[c];
        for &y in &colors {
            for e in o.edges_over(t, y, fin.active(c.len())) {
                by_edge.insert(e, ops.len());
                ops.push(Op {
                    inputs: c.clone(),
                    edge: e,
                });
            }
        }
    }
    let id = |e: Simplex| x.render(e);
    let output = |op: &Op| target(op.edge);
    let operations = ops
        .iter()
        .map(|op| Operation {
            inputs: op.inputs.iter().map(|&c| x.name(c).to_string()).collect(),
            output: x.name(output(op)).to_string(),
            id: id(op.edge),
        })
        .collect();
    let lookup = |e: Simplex| by_edge.get(&e).copied().ok_or_else(|| invalid(o, format!("{} is not an operation", id(e))));

    let mut composition = Vec::new();
    for outer in ops.iter().filter(|op| !op.inputs.is_empty()) {
        let k = outer.inputs.len();
        let big_y = tuple[&outer.inputs];
        let choices: Vec<Vec<usize>> = outer
            .inputs
            .iter()
            .map(|&y| (0..ops.len()).filter(|&i| output(&ops[i]) == y).collect())
            .collect();
        for inner in choices.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
            let sizes: Vec<usize> = inner.iter().map(|&i| ops[i].inputs.len()).collect();
            let m: usize = sizes.iter().sum();
            if m > arity {
                continue;
            }
            let concat: Vec<Simplex> = inner.iter().flat_map(|&i| ops[i].inputs.iter().copied()).collect();
            let big_x = tuple[&concat];
            let mut block = vec![0];
            for (j, &s) in sizes.iter().enumerate() {
                block.extend(std::iter::repeat(j + 1).take(s));
            }
            let g = fin.morphism(k, &block).expect("block maps lie in Fin_*");
            // the components X → y_j over ρ^j ∘ g
            let mut offset = 0;
            let mut parts = Vec::with_capacity(k);
            for (j, &i) in inner.iter().enumerate() {
                let table: Vec<usize> = (0..=m)
                    .map(|p| if p > offset && p <= offset + sizes[j] { p - offset } else { 0 })
                    .collect();
                offset += sizes[j];
                let inert = fin.morphism(sizes[j], &table).expect("inert maps lie in Fin_*");
                let l = o.lift(big_x, inert).ok_or_else(|| invalid(o, "missing inert lift"))?;
                if target(l) != tuple[&ops[i].inputs] {
                    return Err(invalid(o, "tuple objects are not unique up to identity"));
                }
                parts.push(a.compose(l, ops[i].edge).ok_or_else(|| invalid(o, "missing composite"))?);
            }
            let e = o
                .edges_over(big_x, big_y, g)
                .into_iter()
                .find(|&e| {
                    (1..=k).all(|j| {
                        o.lift(big_y, fin.rho(k, j))
                            .and_then(|r| a.compose(e, r))
                            .is_some_and(|u| u == parts[j - 1])
                    })
                })
                .ok_or_else(|| invalid(o, "no edge assembles the inner operations"))?;
            let result = a.compose(e, outer.edge).ok_or_else(|| invalid(o, "missing composite"))?;
            composition.push(Composite {
                outer: id(outer.edge),
                inner: inner.iter().map(|&i| id(ops[i].edge)).collect(),
                result: id(ops[lookup(result)?].edge),
            });
        }
    }

    let mut symmetry = Vec::new();
    for op in &ops {
        let k = op.inputs.len();
        for sigma in (0..k).permutations(k) {
            if sigma.iter().enumerate().all(|(i, &v)| i == v) {
                continue;
            }
            let permuted: Vec<Simplex> = sigma.iter().map(|&s| op.inputs[s]).collect();
            let from = tuple[&permuted];
            let table: Vec<usize> = std::iter::once(0).chain(sigma.iter().map(|&s| s + 1)).collect();
            let beta = fin.morphism(k, &table).expect("bijections lie in Fin_*");
            let l = o.lift(from, beta).ok_or_else(|| invalid(o, "missing lift of a bijection"))?;
            if target(l) != tuple[&op.inputs] {
                return Err(invalid(o, "tuple objects are not unique up to identity"));
            }
            let result = a.compose(l, op.edge).ok_or_else(|| invalid(o, "missing composite"))?;
            symmetry.push(Action {
                op: id(op.edge),
                perm: sigma,
                result: id(ops[lookup(result)?].edge),
            });
        }
    }

    Ok(ColoredOperad {
        colors: colors.iter().map(|&c| x.name(c).to_string()).collect(),
        operations,
        composition,
        symmetry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::finstar::FinStar;
    use crate::operad::truncate::{h_d_operad, iso_over_fin};
    use crate::operad::colored::OperadTables;
    use crate::solver::search::DEFAULT_BUDGET;
    use std::sync::Arc;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn extraction_round_trips() {
        let fin = Arc::new(FinStar::new(2, 3));
        for (spec, name, count) in [
            (ColoredOperad::comm(2), "Comm", 3),
            (ColoredOperad::ass(2), "Ass", 4),
            (ColoredOperad::triv(2), "Triv", 1),
        ] {
            let o = OperadData::from_colored(name, &spec, &fin, B).unwrap();
            let back = to_colored(&o).unwrap();
            assert_eq!(back.operations.len(), count, "{name}");
            OperadTables::new(&back, 2).unwrap();
            let again = OperadData::from_colored(name, &back, &fin, B).unwrap();
            assert!(iso_over_fin(&o, &again, B).unwrap().is_some(), "{name}");
            assert_eq!(to_colored(&again).unwrap().to_json(), to_colored(&again).unwrap().to_json());
            assert_eq!(to_colored(&again).unwrap().operations.len(), count);
        }
    }

    #[test]
    fn h0_of_ass_extracts_to_comm() {
        let fin = Arc::new(FinStar::new(2, 3));
        let ass = OperadData::from_colored("Ass", &ColoredOperad::ass(2), &fin, B).unwrap();
        let h = h_d_operad(&ass, 0, B).unwrap();
        let spec = to_colored(h.operad()).unwrap();
        assert_eq!(spec.operations.len(), 3);
        let rebuilt = OperadData::from_colored("h0Ass", &spec, &fin, B).unwrap();
        let comm = OperadData::from_colored("Comm", &ColoredOperad::comm(2), &fin, B).unwrap();
        assert!(iso_over_fin(&rebuilt, &comm, B).unwrap().is_some());
    }
}
