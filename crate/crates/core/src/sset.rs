//! Finite simplicial sets presented by their nondegenerate simplices.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::simplex::{is_monotone, mask_of, missing_desc, Simplex, MAX_DIM};

/// A finite simplicial set.
///
/// Nondegenerate simplices are stored per dimension in a fixed order, which
/// is the canonical order used for all iteration and output.  Faces of
/// nondegenerate simplices are stored as normal-form [`Simplex`] values;
/// everything about degenerate simplices is derived from the simplicial
/// identities.
///
/// When `known_through` is `Some(c)` only the `c`-skeleton of the intended
/// object is present (for instance the nerve of a category with nontrivial
/// endomorphisms, which has nondegenerate simplices in every dimension).
#[derive(Clone)]
pub struct SSet {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Simplex>>,
    offsets: Vec<usize>,
    known_through: Option<usize>,
    name_index: HashMap<String, Simplex>,
}

impl fmt::Debug for SSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SSet")
            .field("counts", &self.counts())
            .field("known_through", &self.known_through)
            .finish()
    }
}

impl PartialEq for SSet {
    fn eq(&self, other: &SSet) -> bool {
        self.names == other.names && self.faces == other.faces && self.known_through == other.known_through
    }
}

impl Eq for SSet {}

/// Incremental construction of an [`SSet`], dimension by dimension.
#[derive(Default)]
pub struct SSetBuilder {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Simplex>>,
    used: HashSet<String>,
}

impl SSetBuilder {
    pub fn new() -> SSetBuilder {
        SSetBuilder::default()
    }

    /// Adds a nondegenerate simplex. Name clashes are resolved by appending
    /// primes, so the returned simplex is the only reliable handle.
    pub fn add(&mut self, dim: usize, name: impl Into<String>, faces: Vec<Simplex>) -> Simplex {
        assert!(dim <= MAX_DIM, "dimension {dim} too large");
        assert_eq!(faces.len(), if dim == 0 { 0 } else { dim + 1 });
        while self.names.len() <= dim {
            self.names.push(Vec::new());
            self.faces.push(Vec::new());
        }
        let mut name = name.into();
        while self.used.contains(&name) {
            name.push('\'');
        }
        self.used.insert(name.clone());
        let id = self.names[dim].len();
        self.names[dim].push(name);
        self.faces[dim].extend(faces);
        Simplex::nondegenerate(dim, id)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn finish(mut self, known_through: Option<usize>) -> SSet {
        while self.names.last().is_some_and(Vec::is_empty) {
            self.names.pop();
            self.faces.pop();
        }
        SSet::from_tables(self.names, self.faces, known_through)
    }

    pub fn finish_checked(self, known_through: Option<usize>) -> Result<SSet> {
        let s = self.finish(known_through);
        s.validate()?;
        Ok(s)
    }
}

impl SSet {
    fn from_tables(names: Vec<Vec<String>>, faces: Vec<Vec<Simplex>>, known_through: Option<usize>) -> SSet {
        let mut offsets = Vec::with_capacity(names.len() + 1);
        let mut acc = 0;
        let mut name_index = HashMap::new();
        for (dim, level) in names.iter().enumerate() {
            offsets.push(acc);
            acc += level.len();
            for (id, name) in level.iter().enumerate() {
                name_index.insert(name.clone(), Simplex::nondegenerate(dim, id));
            }
        }
        offsets.push(acc);
        SSet {
            names,
            faces,
            offsets,
            known_through,
            name_index,
        }
    }

    /// Equality of face tables, ignoring names.
    pub fn same_shape(&self, other: &SSet) -> bool {
        self.faces == other.faces
            && self.known_through == other.known_through
            && self.names.iter().map(Vec::len).eq(other.names.iter().map(Vec::len))
    }

    pub fn empty() -> SSet {
        SSet::from_tables(Vec::new(), Vec::new(), None)
    }

    pub fn point() -> SSet {
        let mut b = SSetBuilder::new();
        b.add(0, "0", vec![]);
        b.finish(None)
    }

    /// Builds and validates a simplicial set from raw tables.
    pub fn from_parts(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Simplex>>,
        known_through: Option<usize>,
    ) -> Result<SSet> {
        if names.len() != faces.len() {
            return Err(Error::Validation("names and faces tables differ in length".into()));
        }
        let mut seen = HashSet::new();
        for level in &names {
            for name in level {
                if !seen.insert(name) {
                    return Err(Error::Validation(format!("duplicate simplex id {name:?}")));
                }
            }
        }
        let s = SSet::from_tables(names, faces, known_through);
        s.validate()?;
        Ok(s)
    }

    pub fn is_empty(&self) -> bool {
        self.names.iter().all(Vec::is_empty)
    }

    /// Highest dimension with a nondegenerate simplex.
    pub fn top_dim(&self) -> Option<usize> {
        (0..self.names.len()).rev().find(|&d| !self.names[d].is_empty())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    /// Nondegenerate simplex counts, indexed by dimension.
    pub fn counts(&self) -> Vec<usize> {
        match self.top_dim() {
            None => Vec::new(),
            Some(t) => (0..=t).map(|d| self.count(d)).collect(),
        }
    }

    pub fn known_through(&self) -> Option<usize> {
        self.known_through
    }

    pub fn is_complete(&self) -> bool {
        self.known_through.is_none()
    }

    /// Whether simplices of dimension `dim` are fully known.
    pub fn knows(&self, dim: usize) -> bool {
        self.known_through.map_or(true, |k| dim <= k)
    }

    pub(crate) fn require_known(&self, dim: usize, what: &str) -> Result<()> {
        match self.known_through {
            Some(k) if dim > k => Err(Error::Truncated {
                what: what.to_string(),
                needed: dim,
                known: k,
            }),
            _ => Ok(()),
        }
    }

    pub fn with_known_through(mut self, known_through: Option<usize>) -> SSet {
        self.known_through = known_through;
        self
    }

    pub fn nondegenerate(&self, dim: usize) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.count(dim)).map(move |id| Simplex::nondegenerate(dim, id))
    }

    /// All nondegenerate simplices, by dimension then position.
    pub fn all_nondegenerate(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.names.len()).flat_map(move |d| self.nondegenerate(d))
    }

    pub fn name(&self, s: Simplex) -> &str {
        &self.names[s.base_dim()][s.base_id()]
    }

    pub fn names(&self, dim: usize) -> &[String] {
        self.names.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn lookup(&self, name: &str) -> Option<Simplex> {
        self.name_index.get(name).copied()
    }

    /// Human-readable rendering such as `s1.s0.x`.
    pub fn render(&self, s: Simplex) -> String {
        let mut out = String::new();
        for j in s.degeneracies() {
            out.push_str(&format!("s{j}."));
        }
        out.push_str(self.name(s));
        out
    }

    /// Total number of nondegenerate simplices.
    pub fn flat_len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn flat_index(&self, s: Simplex) -> usize {
        debug_assert!(!s.is_degenerate());
        self.offsets[s.dim()] + s.base_id()
    }

    pub fn from_flat(&self, index: usize) -> Simplex {
        let dim = self.offsets.partition_point(|&o| o <= index) - 1;
        Simplex::nondegenerate(dim, index - self.offsets[dim])
    }

    /// The stored faces of a nondegenerate simplex.
    pub fn faces_of(&self, s: Simplex) -> &[Simplex] {
        debug_assert!(!s.is_degenerate());
        let n = s.dim();
        if n == 0 {
            return &[];
        }
        &self.faces[n][s.base_id() * (n + 1)..(s.base_id() + 1) * (n + 1)]
    }

    /// The face `d_i s`.
    pub fn face(&self, i: usize, s: Simplex) -> Simplex {
        let n = s.dim();
        assert!(n >= 1 && i <= n, "face d_{i} undefined in dimension {n}");
        if !s.is_degenerate() {
            return self.faces[n][s.base_id() * (n + 1) + i];
        }
        let eta = s.surjection();
        let hit = eta[i];
        let mut rest: Vec<usize> = eta
            .iter()
            .enumerate()
            .filter_map(|(k, &v)| (k != i).then_some(v))
            .collect();
        if rest.binary_search(&hit).is_ok() {
            return Simplex::from_parts(n - 1, mask_of(&rest), s.base_id());
        }
        for v in rest.iter_mut() {
            if *v > hit {
                *v -= 1;
            }
        }
        let m = s.base_dim();
        let y = self.faces[m][s.base_id() * (m + 1) + hit];
        precompose_surjection(y, &rest)
    }

    /// The degeneracy `s_j s`.
    pub fn degen(&self, j: usize, s: Simplex) -> Simplex {
        degen(j, s)
    }

    /// `s ∘ θ` for a monotone map `θ: [k] → [dim s]` given by its values.
    pub fn apply(&self, theta: &[usize], s: Simplex) -> Simplex {
        debug_assert!(is_monotone(theta, s.dim()));
        let eta = s.surjection();
        let zeta: Vec<usize> = theta.iter().map(|&t| eta[t]).collect();
        let mut image = zeta.clone();
        image.dedup();
        let ranks: Vec<usize> = zeta
            .iter()
            .map(|v| image.binary_search(v).expect("value in image"))
            .collect();
        let mut y = s.base();
        for v in missing_desc(&image, s.base_dim()) {
            y = self.face(v, y);
        }
        precompose_surjection(y, &ranks)
    }

    /// The `k`-th vertex of a simplex.
    pub fn vertex(&self, s: Simplex, k: usize) -> Simplex {
        if s.dim() == 0 {
            return s;
        }
        self.apply(&[k], s)
    }

    pub fn vertices(&self, s: Simplex) -> Vec<Simplex> {
        (0..=s.dim()).map(|k| self.vertex(s, k)).collect()
    }

    /// All `n`-simplices, degenerate ones included, in canonical order.
    pub fn simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..=n.min(self.names.len().saturating_sub(1)) {
            if self.count(k) == 0 {
                continue;
            }
            let need = (n - k) as u32;
            for mask in masks_with_ones(n, need) {
                for id in 0..self.count(k) {
                    out.push(Simplex::from_parts(n, mask, id));
                }
            }
        }
        out.sort();
        out
    }

    /// Number of `n`-simplices, degenerate ones included.
    pub fn simplex_count(&self, n: usize) -> usize {
        (0..=n.min(self.names.len().saturating_sub(1)))
            .map(|k| self.count(k) * binomial(n, n - k))
            .sum()
    }

    /// Checks that the face table is well formed and satisfies
    /// `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn validate(&self) -> Result<()> {
        for (n, level) in self.names.iter().enumerate() {
            if n == 0 {
                continue;
            }
            if self.faces[n].len() != level.len() * (n + 1) {
                return Err(Error::Validation(format!("face table of dimension {n} is not total")));
            }
            for (id, _) in level.iter().enumerate() {
                let s = Simplex::nondegenerate(n, id);
                for (i, f) in self.faces_of(s).iter().enumerate() {
                    if f.dim() != n - 1 {
                        return Err(Error::Validation(format!(
                            "face d_{i} of {} has dimension {} instead of {}",
                            self.name(s),
                            f.dim(),
                            n - 1
                        )));
                    }
                    if f.base_id() >= self.count(f.base_dim()) {
                        return Err(Error::Validation(format!(
                            "face d_{i} of {} refers to a missing simplex",
                            self.name(s)
                        )));
                    }
                    if n >= 2 && f.mask() >> (n - 1) != 0 {
                        return Err(Error::Validation(format!("malformed degeneracy in face of {}", self.name(s))));
                    }
                }
            }
        }
        self.check_identities()
    }

    /// The face identities on every nondegenerate simplex.
    pub fn check_identities(&self) -> Result<()> {
        for n in 2..self.names.len() {
            for s in self.nondegenerate(n) {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(i, self.face(j, s));
                        let rhs = self.face(j - 1, self.face(i, s));
                        if lhs != rhs {
                            return Err(Error::Validation(format!(
                                "d_{i} d_{j} != d_{} d_{i} on {}",
                                j - 1,
                                self.name(s)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The simplicial identities on all simplices through `cap`, degenerate
    /// ones included, plus normal-form uniqueness: every degeneracy of a
    /// normal form is again found among the enumerated normal forms.
    pub fn check_all_identities(&self, cap: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::Validation(msg));
        for n in 0..=cap {
            let level = self.simplices(n);
            let set: HashSet<Simplex> = level.iter().copied().collect();
            if set.len() != level.len() || level.len() != self.simplex_count(n) {
                return fail(format!("normal forms in dimension {n} are not unique"));
            }
            if n < cap {
                let next: HashSet<Simplex> = self.simplices(n + 1).into_iter().collect();
                for &s in &level {
                    for j in 0..=n {
                        let t = self.degen(j, s);
                        if !next.contains(&t) {
                            return fail(format!("s_{j} of {} escapes the normal forms", self.render(s)));
                        }
                        if self.face(j, t) != s || self.face(j + 1, t) != s {
                            return fail(format!("d s_{j} != id on {}", self.render(s)));
                        }
                        for i in 0..=n + 1 {
                            let lhs = self.face(i, t);
                            let expected = if i < j {
                                if n == 0 {
                                    continue;
                                }
                                self.degen(j - 1, self.face(i, s))
                            } else if i > j + 1 {
                                self.degen(j, self.face(i - 1, s))
                            } else {
                                continue;
                            };
                            if lhs != expected {
                                return fail(format!("d_{i} s_{j} identity fails on {}", self.render(s)));
                            }
                        }
                        for i in 0..=j {
                            if self.degen(i, self.degen(j, s)) != self.degen(j + 1, self.degen(i, s)) {
                                return fail(format!("s_{i} s_{j} identity fails on {}", self.render(s)));
                            }
                        }
                    }
                }
            }
            if n >= 2 {
                for &s in &level {
                    for j in 1..=n {
                        for i in 0..j {
                            if self.face(i, self.face(j, s)) != self.face(j - 1, self.face(i, s)) {
                                return fail(format!("d_{i} d_{j} identity fails on {}", self.render(s)));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `y ∘ η` for a monotone surjection `η: [k] → [dim y]`.
pub(crate) fn precompose_surjection(y: Simplex, eta: &[usize]) -> Simplex {
    let mu = y.surjection();
    let comp: Vec<usize> = eta.iter().map(|&v| mu[v]).collect();
    Simplex::from_parts(eta.len() - 1, mask_of(&comp), y.base_id())
}

pub(crate) fn degen(j: usize, s: Simplex) -> Simplex {
    let n = s.dim();
    assert!(j <= n, "degeneracy s_{j} undefined in dimension {n}");
    let eta = s.surjection();
    let values: Vec<usize> = (0..=n + 1).map(|k| eta[if k <= j { k } else { k - 1 }]).collect();
    Simplex::from_parts(n + 1, mask_of(&values), s.base_id())
}

/// Bitmasks over positions `0..n` with exactly `ones` bits set, ascending.
pub(crate) fn masks_with_ones(n: usize, ones: u32) -> Vec<u32> {
    if n == 0 {
        return if ones == 0 { vec![0] } else { vec![] };
    }
    (0u32..(1u32 << n)).filter(|m| m.count_ones() == ones).collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SSet {
        let mut b = SSetBuilder::new();
        let v: Vec<Simplex> = (0..3).map(|i| b.add(0, i.to_string(), vec![])).collect();
        let e01 = b.add(1, "01", vec![v[1], v[0]]);
        let e02 = b.add(1, "02", vec![v[2], v[0]]);
        let e12 = b.add(1, "12", vec![v[2], v[1]]);
        b.add(2, "012", vec![e12, e02, e01]);
        b.finish_checked(None).unwrap()
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let t = triangle();
        let top = t.lookup("012").unwrap();
        let s = t.degen(1, top);
        assert_eq!(t.face(1, s), top);
        assert_eq!(t.face(2, s), top);
        assert_eq!(t.face(0, s), t.degen(0, t.face(0, top)));
        assert_eq!(t.face(3, s), t.degen(1, t.face(2, top)));
    }

    #[test]
    fn vertices_and_apply() {
        let t = triangle();
        let top = t.lookup("012").unwrap();
        let names: Vec<String> = t.vertices(top).into_iter().map(|v| t.render(v)).collect();
        assert_eq!(names, ["0", "1", "2"]);
        let e = t.apply(&[0, 0, 2], top);
        assert_eq!(t.render(e), "s0.02");
    }

    #[test]
    fn all_identities_on_triangle() {
        let t = triangle();
        t.check_all_identities(4).unwrap();
        assert_eq!(t.simplex_count(2), t.simplices(2).len());
        assert_eq!(t.simplices(2).len(), 3 + 3 * 2 + 1);
    }

    #[test]
    fn broken_identity_is_rejected() {
        let mut b = SSetBuilder::new();
        let v: Vec<Simplex> = (0..3).map(|i| b.add(0, i.to_string(), vec![])).collect();
        let e01 = b.add(1, "01", vec![v[1], v[0]]);
        let e02 = b.add(1, "02", vec![v[2], v[0]]);
        let e12 = b.add(1, "12", vec![v[2], v[1]]);
        b.add(2, "bad", vec![e12, e01, e02]);
        assert!(b.finish_checked(None).is_err());
    }

    #[test]
    fn flat_indexing() {
        let t = triangle();
        for (k, s) in t.all_nondegenerate().enumerate() {
            assert_eq!(t.flat_index(s), k);
            assert_eq!(t.from_flat(k), s);
        }
    }
}
