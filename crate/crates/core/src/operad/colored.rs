//! Colored (symmetric) operads given by finite tables, their validation
//! within an arity cap, and their categories of operators over `Fin_*`.
//!
//! Conventions.  An operation `φ` has an ordered list of input colors and
//! one output color.  The right action of a permutation `σ` of the inputs
//! gives `φ·σ` with `(φ·σ).inputs[p] = φ.inputs[σ[p]]`.  The composite
//! `γ(ψ; φ₁, …, φ_k)` plugs `φ_j` into input `j` of `ψ`; its inputs are the
//! concatenated inputs of the `φ_j`.

use std::collections::HashMap;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::constructions::nerve::{Category, Functor};
use crate::error::{Error, Result};
use crate::operad::finstar::FinStar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Operation {
    pub inputs: Vec<String>,
    pub output: String,
    pub id: String,
}

/// `γ(outer; inner…) = result`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Composite {
    pub outer: String,
    pub inner: Vec<String>,
    pub result: String,
}

/// `op · perm = result`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Action {
    pub op: String,
    pub perm: Vec<usize>,
    pub result: String,
}

/// The OPD presentation of a colored operad.  Identity operations are not
/// listed separately: they are the unary operations acting as two-sided
/// units for `γ`, and validation checks that each color has one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoredOperad {
    pub colors: Vec<String>,
    pub operations: Vec<Operation>,
    pub composition: Vec<Composite>,
    pub symmetry: Vec<Action>,
}

impl ColoredOperad {
    pub fn from_json(text: &str) -> Result<ColoredOperad> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("OPD: {e}")))
    }

    /// Pretty-printed JSON with a trailing newline; fields and entries keep
    /// their order, so parsing and printing round-trips.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("operads serialize");
        s.push('\n');
        s
    }

    /// The commutative operad: one color, one operation of each arity.
    pub fn comm(arity: usize) -> ColoredOperad {
        one_color(
            (0..=arity.max(1)).map(|k| (format!("c{k}"), k)).collect(),
            |ops, outer, inner| {
                let total: usize = inner.iter().map(|&j| ops[j].1).sum();
                let _ = outer;
                total
            },
            |_, op, _| op,
            arity,
        )
    }

    /// The associative operad: the operations of arity `k` are the words in
    /// the `k` inputs using each input once (linear orders).
    pub fn ass(arity: usize) -> ColoredOperad {
        let mut words: Vec<Vec<usize>> = Vec::new();
        for k in 0..=arity.max(1) {
            words.extend((0..k).permutations(k));
        }
        let index: HashMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let ops = words
            .iter()
            .map(|w| (format!("a({})", w.iter().join(",")), w.len()))
            .collect();
        let gamma_words = words.clone();
        let gamma_index = index.clone();
        one_color(
            ops,
            move |_, outer, inner| {
                let psi = &gamma_words[outer];
                let mut offsets = Vec::with_capacity(inner.len());
                let mut total = 0;
                for &j in inner {
                    offsets.push(total);
                    total += gamma_words[j].len();
                }
                let offsets = &offsets;
                let word: Vec<usize> = psi
                    .iter()
                    .flat_map(|&slot| gamma_words[inner[slot]].iter().map(move |&u| offsets[slot] + u))
                    .collect();
                gamma_index[&word]
            },
            move |_, op, sigma| {
                let inv = invert(sigma);
                let word: Vec<usize> = words[op].iter().map(|&t| inv[t]).collect();
                index[&word]
            },
            arity,
        )
    }

    /// The trivial operad: one color and only its identity operation.
    pub fn triv(arity: usize) -> ColoredOperad {
        one_color(vec![("1".into(), 1)], |_, _, _| 0, |_, op, _| op, arity)
    }
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// A one-color operad from its operations `(id, arity)`, composition and
/// action, tabulated on all entries within the arity cap.
fn one_color(
    ops: Vec<(String, usize)>,
    gamma: impl Fn(&[(String, usize)], usize, &[usize]) -> usize,
    act: impl Fn(&[(String, usize)], usize, &[usize]) -> usize,
    arity: usize,
) -> ColoredOperad {
    let arity = arity.max(1);
    let color = "x".to_string();
    let operations = ops
        .iter()
        .map(|(id, k)| Operation {
            inputs: vec![color.clone(); *k],
            output: color.clone(),
            id: id.clone(),
        })
        .collect();
    let mut composition = Vec::new();
    let mut symmetry = Vec::new();
    for (outer, (oid, k)) in ops.iter().enumerate() {
        if *k == 0 || *k > arity {
            continue;
        }
        for inner in (0..*k).map(|_| 0..ops.len()).multi_cartesian_product() {
            let total: usize = inner.iter().map(|&j| ops[j].1).sum();
            if total > arity {
                continue;
            }
            let result = gamma(&ops, outer, &inner);
            composition.push(Composite {
                outer: oid.clone(),
                inner: inner.iter().map(|&j| ops[j].0.clone()).collect(),
                result: ops[result].0.clone(),
            });
        }
        for sigma in (0..*k).permutations(*k) {
            if sigma.iter().enumerate().all(|(i, &v)| i == v) {
                continue;
            }
            let result = act(&ops, outer, &sigma);
            symmetry.push(Action {
                op: oid.clone(),
                perm: sigma,
                result: ops[result].0.clone(),
            });
        }
    }
    ColoredOperad {
        colors: vec![color],
        operations,
        composition,
        symmetry,
    }
}

/// The tables of a validated colored operad, restricted to the arity cap.
#[derive(Clone, Debug)]
pub struct OperadTables {
    arity: usize,
    colors: Vec<String>,
    /// `(inputs, output)` by operation index.
    ops: Vec<(Vec<usize>, usize)>,
    op_ids: Vec<String>,
    by_profile: HashMap<(Vec<usize>, usize), Vec<usize>>,
    gamma: HashMap<(usize, Vec<usize>), usize>,
    act: HashMap<(usize, Vec<usize>), usize>,
    identity: Vec<usize>,
}

fn is_identity_perm(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &v)| i == v)
}

impl OperadTables {
    /// Checks well-formedness, completeness of the tables within the arity
    /// cap, units, associativity, the action laws and both equivariance
    /// laws.  Errors name the failing composite.  Unary operations are
    /// always in range, so the effective cap is at least one.
    pub fn new(spec: &ColoredOperad, arity: usize) -> Result<OperadTables> {
        let arity = arity.max(1);
        let bad = |msg: String| Err(Error::Validation(msg));
        let mut color_index = HashMap::new();
        for (i, c) in spec.colors.iter().enumerate() {
            if color_index.insert(c.as_str(), i).is_some() {
                return bad(format!("duplicate color {c}"));
            }
        }
        let color = |c: &str| {
            color_index
                .get(c)
                .copied()
                .ok_or_else(|| Error::Validation(format!("unknown color {c}")))
        };
        let mut op_index: HashMap<&str, usize> = HashMap::new();
        let mut ops = Vec::new();
        let mut op_ids = Vec::new();
        for op in &spec.operations {
            if op_index.insert(op.id.as_str(), ops.len()).is_some() {
                return bad(format!("duplicate operation {}", op.id));
            }
            let inputs = op.inputs.iter().map(|c| color(c)).collect::<Result<Vec<_>>>()?;
            ops.push((inputs, color(&op.output)?));
            op_ids.push(op.id.clone());
        }
        let op = |id: &str| {
            op_index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Validation(format!("unknown operation {id}")))
        };
        let mut by_profile: HashMap<(Vec<usize>, usize), Vec<usize>> = HashMap::new();
        for (i, p) in ops.iter().enumerate() {
            by_profile.entry(p.clone()).or_default().push(i);
        }

        let mut act = HashMap::new();
        for a in &spec.symmetry {
            let o = op(&a.op)?;
            let r = op(&a.result)?;
            let (inputs, output) = &ops[o];
            let mut sorted = a.perm.clone();
            sorted.sort_unstable();
            if sorted != (0..inputs.len()).collect::<Vec<_>>() {
                return bad(format!("{} · {:?}: not a permutation of its inputs", a.op, a.perm));
            }
            let permuted: Vec<usize> = a.perm.iter().map(|&s| inputs[s]).collect();
            if ops[r] != (permuted, *output) {
                return bad(format!("{} · {:?} = {} has the wrong profile", a.op, a.perm, a.result));
            }
            if is_identity_perm(&a.perm) && r != o {
                return bad(format!("{} · id = {} is not {}", a.op, a.result, a.op));
            }
            if act.insert((o, a.perm.clone()), r).is_some_and(|prev| prev != r) {
                return bad(format!("{} · {:?} listed twice", a.op, a.perm));
            }
        }
        let mut gamma = HashMap::new();
        for c in &spec.composition {
            let outer = op(&c.outer)?;
            let inner = c.inner.iter().map(|i| op(i)).collect::<Result<Vec<_>>>()?;
            let r = op(&c.result)?;
            let (ins, out) = &ops[outer];
            let describe = || format!("γ({}; {})", c.outer, c.inner.join(", "));
            if inner.len() != ins.len() || inner.iter().zip(ins).any(|(&j, &col)| ops[j].1 != col) {
                return bad(format!("{}: inner outputs do not match the inputs", describe()));
            }
            let concat: Vec<usize> = inner.iter().flat_map(|&j| ops[j].0.iter().copied()).collect();
            if ops[r] != (concat, *out) {
                return bad(format!("{} = {} has the wrong profile", describe(), c.result));
            }
            if inner.is_empty() && r != outer {
                return bad(format!("{} = {} differs from {}", describe(), c.result, c.outer));
            }
            if gamma.insert((outer, inner), r).is_some_and(|prev| prev != r) {
                return bad(format!("{} listed twice", describe()));
            }
        }

        let mut t = OperadTables {
            arity,
            colors: spec.colors.clone(),
            ops,
            op_ids,
            by_profile,
            gamma,
            act,
            identity: Vec::new(),
        };
        t.check_complete()?;
        t.find_identities()?;
        t.check_laws()?;
        Ok(t)
    }

    pub fn arity_cap(&self) -> usize {
        self.arity
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn op_id(&self, op: usize) -> &str {
        &self.op_ids[op]
    }

    pub fn arity_of(&self, op: usize) -> usize {
        self.ops[op].0.len()
    }

    /// The operations with the given input and output colors.
    pub fn operations(&self, inputs: &[usize], output: usize) -> &[usize] {
        self.by_profile
            .get(&(inputs.to_vec(), output))
            .map_or(&[], |v| v.as_slice())
    }

    pub fn identity(&self, color: usize) -> usize {
        self.identity[color]
    }

    fn within_cap(&self, op: usize) -> bool {
        self.arity_of(op) <= self.arity
    }

    /// `φ · σ`.
    pub fn act(&self, op: usize, sigma: &[usize]) -> usize {
        if is_identity_perm(sigma) {
            op
        } else {
            self.act[&(op, sigma.to_vec())]
        }
    }

    /// `γ(ψ; φ₁, …, φ_k)`.
    pub fn gamma(&self, outer: usize, inner: &[usize]) -> usize {
        if inner.is_empty() {
            outer
        } else {
            self.gamma[&(outer, inner.to_vec())]
        }
    }

    fn describe(&self, outer: usize, inner: &[usize]) -> String {
        let names: Vec<&str> = inner.iter().map(|&j| self.op_id(j)).collect();
        format!("γ({}; {})", self.op_id(outer), names.join(", "))
    }

    /// Tuples `(φ₁, …, φ_k)` composable into the inputs of `outer` with
    /// total arity within the cap.
    fn inner_tuples(&self, outer: usize) -> Vec<Vec<usize>> {
        let ins = &self.ops[outer].0;
        let mut out = vec![(Vec::new(), 0usize)];
        for &col in ins {
            let mut next = Vec::new();
            for (tuple, total) in &out {
                for (j, (ji, jo)) in self.ops.iter().enumerate() {
                    if *jo == col && total + ji.len() <= self.arity {
                        let mut t: Vec<usize> = tuple.clone();
                        t.push(j);
                        next.push((t, total + ji.len()));
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(|(t, _)| t).collect()
    }

    fn outers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ops.len()).filter(|&o| self.within_cap(o))
    }

    fn check_complete(&self) -> Result<()> {
        for o in self.outers() {
            let k = self.arity_of(o);
            for sigma in (0..k).permutations(k) {
                if !is_identity_perm(&sigma) && !self.act.contains_key(&(o, sigma.clone())) {
                    return Err(Error::Validation(format!(
                        "missing symmetry entry {} · {sigma:?}",
                        self.op_id(o)
                    )));
                }
            }
            if k == 0 {
                continue;
            }
            for inner in self.inner_tuples(o) {
                if !self.gamma.contains_key(&(o, inner.clone())) {
                    return Err(Error::Validation(format!("missing composite {}", self.describe(o, &inner))));
                }
            }
        }
        Ok(())
    }

    fn find_identities(&mut self) -> Result<()> {
        for c in 0..self.colors.len() {
            let candidates = self.operations(&[c], c).to_vec();
            let unit = candidates.into_iter().find(|&u| {
                (0..self.ops.len())
                    .filter(|&p| self.ops[p].1 == c && self.within_cap(p))
                    .all(|p| self.gamma(u, &[p]) == p)
            });
            match unit {
                Some(u) => self.identity.push(u),
                None => {
                    return Err(Error::Validation(format!("color {} has no identity operation", self.colors[c])));
                }
            }
        }
        for o in self.outers() {
            let ids: Vec<usize> = self.ops[o].0.iter().map(|&c| self.identity[c]).collect();
            if self.gamma(o, &ids) != o {
                return Err(Error::Validation(format!(
                    "right unit law fails: {} ≠ {}",
                    self.describe(o, &ids),
                    self.op_id(o)
                )));
            }
        }
        Ok(())
    }

    fn check_laws(&self) -> Result<()> {
        let fail = |what: &str, at: String| Err(Error::Validation(format!("{what} fails at {at}")));
        for o in self.outers() {
            let k = self.arity_of(o);
            // action laws: (φσ)τ = φ(σ∘τ)
            for sigma in (0..k).permutations(k) {
                for tau in (0..k).permutations(k) {
                    let st: Vec<usize> = tau.iter().map(|&t| sigma[t]).collect();
                    if self.act(self.act(o, &sigma), &tau) != self.act(o, &st) {
                        return fail("the action law", format!("{} · {sigma:?} · {tau:?}", self.op_id(o)));
                    }
                }
            }
            if k == 0 {
                continue;
            }
            for inner in self.inner_tuples(o) {
                let g = self.gamma(o, &inner);
                let sizes: Vec<usize> = inner.iter().map(|&j| self.arity_of(j)).collect();
                let offsets: Vec<usize> = sizes
                    .iter()
                    .scan(0, |acc, &s| {
                        let o = *acc;
                        *acc += s;
                        Some(o)
                    })
                    .collect();
                let offsets = &offsets;
                // associativity
                for chi in self.inner_tuples(g) {
                    let lhs = self.gamma(g, &chi);
                    let regrouped: Vec<usize> = (0..k)
                        .map(|j| self.gamma(inner[j], &chi[offsets[j]..offsets[j] + sizes[j]]))
                        .collect();
                    if lhs != self.gamma(o, &regrouped) {
                        return fail(
                            "associativity",
                            format!("{} with {}", self.describe(o, &inner), self.describe(g, &chi)),
                        );
                    }
                }
                // γ(ψσ; φ_σ(1), …, φ_σ(k)) = γ(ψ; φ) · (block permutation)
                for sigma in (0..k).permutations(k) {
                    let permuted: Vec<usize> = sigma.iter().map(|&s| inner[s]).collect();
                    let lhs = self.gamma(self.act(o, &sigma), &permuted);
                    let block: Vec<usize> = sigma
                        .iter()
                        .flat_map(|&s| (0..sizes[s]).map(move |q| offsets[s] + q))
                        .collect();
                    if lhs != self.act(g, &block) {
                        return fail("equivariance in the outer operation", format!("{} · {sigma:?}", self.describe(o, &inner)));
                    }
                }
                // γ(ψ; φ₁τ₁, …, φ_kτ_k) = γ(ψ; φ) · (τ₁ ⊕ … ⊕ τ_k)
                for taus in sizes.iter().map(|&s| (0..s).permutations(s)).multi_cartesian_product() {
                    let acted: Vec<usize> = inner.iter().zip(&taus).map(|(&j, t)| self.act(j, t)).collect();
                    let lhs = self.gamma(o, &acted);
                    let sum: Vec<usize> = taus
                        .iter()
                        .enumerate()
                        .flat_map(|(j, t)| t.iter().map(move |&q| offsets[j] + q))
                        .collect();
                    if lhs != self.act(g, &sum) {
                        return fail("equivariance in the inner operations", format!("{} · {taus:?}", self.describe(o, &inner)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The category of operators of a colored operad, truncated at the arity
/// cap, with its functor to `Fin_*`.
pub struct Operators {
    pub category: Category,
    pub functor: Functor,
    /// The color sequence of each object.
    pub objects: Vec<Vec<usize>>,
}

/// Objects are color sequences `(c₁, …, c_m)` over `⟨m⟩`; a morphism
/// `(c_i) → (d_j)` over `f: ⟨m⟩ → ⟨n⟩` is a choice of an operation
/// `(c_i)_{f(i) = j} → d_j` for each `j` (inputs in increasing `i`).
pub fn operators(t: &OperadTables, fin: &FinStar) -> Result<Operators> {
    if fin.arity_cap() > t.arity {
        return Err(Error::Argument(format!(
            "the operad tables are validated through arity {}, Fin_* goes to {}",
            t.arity,
            fin.arity_cap()
        )));
    }
    let n_colors = t.colors.len();
    let mut objects: Vec<Vec<usize>> = Vec::new();
    for m in 0..=fin.arity_cap() {
        if m == 0 {
            objects.push(Vec::new());
        } else {
            objects.extend((0..m).map(|_| 0..n_colors).multi_cartesian_product());
        }
    }
    let object_name = |o: &[usize]| format!("({})", o.iter().map(|&c| t.colors[c].as_str()).join(","));

    struct Mor {
        src: usize,
        dst: usize,
        base: usize,
        ops: Vec<usize>,
    }
    let mut mors: Vec<Mor> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for (xi, x) in objects.iter().enumerate() {
        for (yi, y) in objects.iter().enumerate() {
            for base in fin.category().hom(x.len(), y.len()) {
                let table = fin.table(base);
                let choices: Vec<&[usize]> = (1..=y.len())
                    .map(|j| {
                        let inputs: Vec<usize> = (1..=x.len()).filter(|&i| table[i] == j).map(|i| x[i - 1]).collect();
                        t.operations(&inputs, y[j - 1])
                    })
                    .collect();
                let tuples: Vec<Vec<usize>> = if choices.is_empty() {
                    vec![Vec::new()]
                } else {
                    choices.iter().map(|c| c.iter().copied()).multi_cartesian_product().collect()
                };
                for ops in tuples {
                    index.insert((xi, base, ops.clone()), mors.len());
                    mors.push(Mor {
                        src: xi,
                        dst: yi,
                        base,
                        ops,
                    });
                }
            }
        }
    }
    let names = mors
        .iter()
        .map(|m| {
            let table = fin.table(m.base);
            let mut s = format!("{}→{}:", object_name(&objects[m.src]), object_name(&objects[m.dst]));
            let values = table[1..]
                .iter()
                .map(|&v| if v == 0 { "*".to_string() } else { v.to_string() })
                .join(",");
            let _ = write!(s, "[{values}]{{{}}}", m.ops.iter().map(|&o| t.op_id(o)).join(","));
            s
        })
        .collect();
    let identity: Vec<usize> = objects
        .iter()
        .enumerate()
        .map(|(xi, x)| {
            let ops = x.iter().map(|&c| t.identity(c)).collect();
            index[&(xi, fin.identity(x.len()), ops)]
        })
        .collect();
    let compose = |g: usize, f: usize| -> usize {
        let (mf, mg) = (&mors[f], &mors[g]);
        let base = fin.compose(mg.base, mf.base);
        let (tf, tg, th) = (fin.table(mf.base), fin.table(mg.base), fin.table(base));
        let x = &objects[mf.src];
        let ops = (1..=objects[mg.dst].len())
            .map(|k| {
                let js: Vec<usize> = (1..tg.len()).filter(|&j| tg[j] == k).collect();
                let inner: Vec<usize> = js.iter().map(|&j| mf.ops[j - 1]).collect();
                let composite = t.gamma(mg.ops[k - 1], &inner);
                let concat: Vec<usize> = js
                    .iter()
                    .flat_map(|&j| (1..tf.len()).filter(move |&i| tf[i] == j))
                    .collect();
                let sorted: Vec<usize> = (1..=x.len()).filter(|&i| th[i] == k).collect();
                let sigma: Vec<usize> = sorted
                    .iter()
                    .map(|i| concat.iter().position(|c| c == i).expect("same preimage"))
                    .collect();
                t.act(composite, &sigma)
            })
            .collect();
        index[&(mf.src, base, ops)]
    };
    let category = Category::from_fn(
        objects.iter().map(|o| object_name(o)).collect(),
        names,
        mors.iter().map(|m| m.src).collect(),
        mors.iter().map(|m| m.dst).collect(),
        identity,
        compose,
    )?;
    let functor = Functor {
        objects: objects.iter().map(Vec::len).collect(),
        morphisms: mors.iter().map(|m| m.base).collect(),
    };
    functor.check(&category, fin.category())?;
    Ok(Operators {
        category,
        functor,
        objects,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn standard_operads_validate() {
        for n in 0..=3 {
            OperadTables::new(&ColoredOperad::comm(n), n).unwrap();
            OperadTables::new(&ColoredOperad::ass(n), n).unwrap();
            OperadTables::new(&ColoredOperad::triv(n), n).unwrap();
        }
        let ass = OperadTables::new(&ColoredOperad::ass(3), 3).unwrap();
        for k in 0..=3 {
            assert_eq!(ass.operations(&vec![0; k], 0).len(), factorial(k));
        }
    }

    #[test]
    fn broken_tables_are_rejected() {
        let mut ass = ColoredOperad::ass(2);
        // swap the two results of γ(a(0,1); a(0), a(0,1)) and γ(a(0,1); a(0), a(1,0))
        let pos: Vec<usize> = ass
            .composition
            .iter()
            .enumerate()
            .filter(|(_, c)| c.outer == "a(0,1)" && c.inner.len() == 2 && c.inner[0] == "a()" && c.inner[1].len() == 6)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(pos.len(), 2);
        let r0 = ass.composition[pos[0]].result.clone();
        ass.composition[pos[0]].result = ass.composition[pos[1]].result.clone();
        ass.composition[pos[1]].result = r0;
        let err = OperadTables::new(&ass, 2).unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");

        let mut comm = ColoredOperad::comm(2);
        comm.composition.pop();
        assert!(OperadTables::new(&comm, 2).is_err());
    }

    #[test]
    fn opd_round_trip() {
        let ass = ColoredOperad::ass(2);
        let text = ass.to_json();
        let back = ColoredOperad::from_json(&text).unwrap();
        assert_eq!(back, ass);
        assert_eq!(back.to_json(), text);
        assert!(ColoredOperad::from_json("{\"colors\": 3}").is_err());
    }

    #[test]
    fn operator_counts() {
        let fin = FinStar::new(2, 1);
        let comm = operators(&OperadTables::new(&ColoredOperad::comm(2), 2).unwrap(), &fin).unwrap();
        assert_eq!(comm.category.morphism_count(), fin.morphism_count());
        // Ass: a morphism over f is a linear order on every fiber
        let ass = operators(&OperadTables::new(&ColoredOperad::ass(2), 2).unwrap(), &fin).unwrap();
        let expected: usize = (0..fin.morphism_count())
            .map(|f| {
                let t = fin.table(f);
                (1..=fin.dst(f))
                    .map(|j| factorial(t[1..].iter().filter(|&&v| v == j).count()))
                    .product::<usize>()
            })
            .sum();
        assert_eq!(ass.category.morphism_count(), expected);
        let triv = operators(&OperadTables::new(&ColoredOperad::triv(2), 2).unwrap(), &fin).unwrap();
        let inert = (0..fin.morphism_count()).filter(|&f| fin.is_inert(f)).count();
        assert_eq!(triv.category.morphism_count(), inert);
    }
}
