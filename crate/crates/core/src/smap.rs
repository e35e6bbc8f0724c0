//! Simplicial maps between finite simplicial sets.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::sset::{precompose_surjection, SSet};

/// A simplicial map, stored as the images of the nondegenerate source
/// simplices (in the source's flat order).
#[derive(Clone)]
pub struct SMap {
    source: Arc<SSet>,
    target: Arc<SSet>,
    images: Vec<Simplex>,
}

impl fmt::Debug for SMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .source
            .all_nondegenerate()
            .zip(&self.images)
            .map(|(s, &t)| format!("{}->{}", self.source.name(s), self.target.render(t)))
            .collect();
        write!(f, "SMap[{}]", pairs.join(", "))
    }
}

impl PartialEq for SMap {
    fn eq(&self, other: &SMap) -> bool {
        (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
            && self.images == other.images
    }
}

impl SMap {
    /// Builds a map and checks that it commutes with faces.
    pub fn new(source: Arc<SSet>, target: Arc<SSet>, images: Vec<Simplex>) -> Result<SMap> {
        let m = SMap::new_unchecked(source, target, images);
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Arc<SSet>, target: Arc<SSet>, images: Vec<Simplex>) -> SMap {
        debug_assert_eq!(images.len(), source.flat_len());
        SMap { source, target, images }
    }

    pub fn identity(s: &Arc<SSet>) -> SMap {
        let images = s.all_nondegenerate().collect();
        SMap::new_unchecked(s.clone(), s.clone(), images)
    }

    /// The unique map into a one-point simplicial set.
    pub fn to_point(source: &Arc<SSet>, point: &Arc<SSet>) -> SMap {
        let images = source
            .all_nondegenerate()
            .map(|s| crate::sset::precompose_surjection(Simplex::nondegenerate(0, 0), &vec![0; s.dim() + 1]))
            .collect();
        SMap::new_unchecked(source.clone(), point.clone(), images)
    }

    /// The map determined by a function on nondegenerate simplices.
    pub fn from_fn(source: &Arc<SSet>, target: &Arc<SSet>, f: impl FnMut(Simplex) -> Simplex) -> Result<SMap> {
        let images = source.all_nondegenerate().map(f).collect();
        SMap::new(source.clone(), target.clone(), images)
    }

    pub fn source(&self) -> &Arc<SSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SSet> {
        &self.target
    }

    pub fn images(&self) -> &[Simplex] {
        &self.images
    }

    pub fn into_images(self) -> Vec<Simplex> {
        self.images
    }

    /// Image of a nondegenerate simplex.
    pub fn image(&self, s: Simplex) -> Simplex {
        self.images[self.source.flat_index(s)]
    }

    /// Image of an arbitrary simplex; degenerate simplices go through the
    /// degeneracy operators.
    pub fn eval(&self, s: Simplex) -> Simplex {
        let y = self.images[self.source.flat_index(s.base())];
        if !s.is_degenerate() {
            return y;
        }
        precompose_surjection(y, &s.surjection())
    }

    pub fn check(&self) -> Result<()> {
        if self.images.len() != self.source.flat_len() {
            return Err(Error::Validation("map does not cover every source simplex".into()));
        }
        for s in self.source.all_nondegenerate() {
            let t = self.image(s);
            if t.dim() != s.dim() {
                return Err(Error::Validation(format!(
                    "{} is sent to a simplex of the wrong dimension",
                    self.source.name(s)
                )));
            }
            if t.base_id() >= self.target.count(t.base_dim()) {
                return Err(Error::Validation(format!(
                    "{} is sent to a missing simplex",
                    self.source.name(s)
                )));
            }
            for i in 0..=s.dim() {
                if s.dim() == 0 {
                    break;
                }
                if self.eval(self.source.face(i, s)) != self.target.face(i, t) {
                    return Err(Error::Validation(format!(
                        "map does not commute with d_{i} on {}",
                        self.source.name(s)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SMap) -> SMap {
        debug_assert!(Arc::ptr_eq(&self.target, &next.source) || *self.target == *next.source);
        let images = self.images.iter().map(|&s| next.eval(s)).collect();
        SMap::new_unchecked(self.source.clone(), next.target.clone(), images)
    }

    /// Replaces the target by an equal simplicial set (same tables).
    pub fn retarget(&self, target: &Arc<SSet>) -> SMap {
        debug_assert_eq!(*self.target, **target);
        SMap::new_unchecked(self.source.clone(), target.clone(), self.images.clone())
    }

    /// Whether the map is injective on all simplices, i.e. nondegenerate
    /// simplices go to distinct nondegenerate simplices.
    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.images.iter().all(|t| !t.is_degenerate() && seen.insert(*t))
    }

    /// Degree-wise bijectivity on all simplices of dimension `≤ cap`.
    pub fn is_bijective_through(&self, cap: usize) -> bool {
        for n in 0..=cap {
            if self.source.simplex_count(n) != self.target.simplex_count(n) {
                return false;
            }
            let mut seen = HashSet::new();
            for s in self.source.simplices(n) {
                if !seen.insert(self.eval(s)) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether this is an isomorphism on all available dimensions.
    pub fn is_isomorphism(&self) -> bool {
        let top = self.source.top_dim().max(self.target.top_dim());
        match top {
            None => true,
            Some(t) => {
                let t = match (self.source.known_through(), self.target.known_through()) {
                    (Some(a), Some(b)) => t.min(a.min(b)),
                    (Some(a), None) | (None, Some(a)) => t.min(a),
                    (None, None) => t,
                };
                self.is_bijective_through(t)
            }
        }
    }

    /// The inverse of a map that is bijective on nondegenerate simplices.
    pub fn inverse(&self) -> Option<SMap> {
        if !self.is_injective() || self.source.flat_len() != self.target.flat_len() {
            return None;
        }
        let mut images = vec![Simplex::nondegenerate(0, 0); self.target.flat_len()];
        for s in self.source.all_nondegenerate() {
            images[self.target.flat_index(self.image(s))] = s;
        }
        let inv = SMap::new_unchecked(self.target.clone(), self.source.clone(), images);
        inv.check().ok()?;
        Some(inv)
    }

    /// Restriction along an inclusion `incl: A → source`.
    pub fn restrict(&self, incl: &SMap) -> SMap {
        incl.then(self)
    }
}
