//! Pushouts along inclusions.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::sset::{precompose_surjection, SSet, SSetBuilder};

/// Where a nondegenerate simplex of a pushout `B ⊔_A C` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    C(Simplex),
    B(Simplex),
}

/// The pushout of `A ⊆ B` along `g: A → C`.
///
/// Degree-wise the pushout is `C_n ⊔ (B_n \ A_n)`; a nondegenerate simplex of
/// `B` outside `A` stays nondegenerate, although its faces may become
/// degenerate.  The simplices of `C` come first in the canonical order.
#[derive(Clone, Debug)]
pub struct Pushout {
    sset: Arc<SSet>,
    leg_b: SMap,
    leg_c: SMap,
    origin: Vec<Origin>,
}

impl Pushout {
    pub fn new(incl: &SMap, glue: &SMap) -> Result<Pushout> {
        if !incl.is_injective() {
            return Err(Error::Argument("pushout needs an inclusion A ⊆ B".into()));
        }
        if !Arc::ptr_eq(incl.source(), glue.source()) && **incl.source() != **glue.source() {
            return Err(Error::Argument("pushout legs have different sources".into()));
        }
        let a = incl.source();
        let b = incl.target();
        let c = glue.target();
        let in_a: HashMap<Simplex, Simplex> = a.all_nondegenerate().map(|s| (incl.image(s), s)).collect();

        let mut builder = SSetBuilder::new();
        let mut origin = Vec::new();
        let top = b.top_dim().max(c.top_dim());
        // position of B-simplices (outside A) inside the pushout, per dimension
        let mut b_pos: Vec<HashMap<usize, usize>> = Vec::new();
        if let Some(top) = top {
            for n in 0..=top {
                for s in c.nondegenerate(n) {
                    builder.add(n, c.name(s), c.faces_of(s).to_vec());
                    origin.push(Origin::C(s));
                }
                let mut pos = HashMap::new();
                for s in b.nondegenerate(n) {
                    if in_a.contains_key(&s) {
                        continue;
                    }
                    let faces = if n == 0 {
                        Vec::new()
                    } else {
                        b.faces_of(s)
                            .iter()
                            .map(|&f| translate(f, &in_a, glue, &b_pos, c))
                            .collect()
                    };
                    let t = builder.add(n, b.name(s), faces);
                    pos.insert(s.base_id(), t.base_id());
                    origin.push(Origin::B(s));
                }
                b_pos.push(pos);
            }
        }
        let known = match (b.known_through(), c.known_through()) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        };
        let sset = Arc::new(builder.finish(known));
        let leg_c = SMap::new_unchecked(c.clone(), sset.clone(), c.all_nondegenerate().collect());
        let leg_b_images = b
            .all_nondegenerate()
            .map(|s| translate(s, &in_a, glue, &b_pos, c))
            .collect();
        let leg_b = SMap::new_unchecked(b.clone(), sset.clone(), leg_b_images);
        Ok(Pushout {
            sset,
            leg_b,
            leg_c,
            origin,
        })
    }

    pub fn sset(&self) -> &Arc<SSet> {
        &self.sset
    }

    pub fn leg_b(&self) -> &SMap {
        &self.leg_b
    }

    pub fn leg_c(&self) -> &SMap {
        &self.leg_c
    }

    pub fn origin(&self, s: Simplex) -> Origin {
        self.origin[self.sset.flat_index(s.base())]
    }

    /// The simplex of `B` mapping to `s`, when `s` does not come from `C`.
    pub fn lift_b(&self, s: Simplex) -> Option<Simplex> {
        match self.origin(s) {
            Origin::B(b) if s.is_degenerate() => Some(precompose_surjection(b, &s.surjection())),
            Origin::B(b) => Some(b),
            Origin::C(_) => None,
        }
    }

    /// The map out of the pushout determined by maps from the `B` and `C`
    /// corners that agree on `A`.
    pub fn universal(&self, target: &Arc<SSet>, on_b: &SMap, on_c: &SMap) -> SMap {
        let images = self
            .origin
            .iter()
            .map(|o| match *o {
                Origin::C(c) => on_c.eval(c),
                Origin::B(b) => on_b.eval(b),
            })
            .collect();
        SMap::new_unchecked(self.sset.clone(), target.clone(), images)
    }

    /// The map of pushouts induced by compatible maps on the `B` and `C`
    /// corners (compatibility on `A` is the caller's responsibility and is
    /// re-checked by [`SMap::check`] in tests).
    pub fn induced(&self, target: &Pushout, on_b: &SMap, on_c: &SMap) -> SMap {
        let images = self
            .origin
            .iter()
            .map(|o| match *o {
                Origin::C(c) => target.leg_c.eval(on_c.eval(c)),
                Origin::B(b) => target.leg_b.eval(on_b.eval(b)),
            })
            .collect();
        SMap::new_unchecked(self.sset.clone(), target.sset.clone(), images)
    }
}

fn translate(
    f: Simplex,
    in_a: &HashMap<Simplex, Simplex>,
    glue: &SMap,
    b_pos: &[HashMap<usize, usize>],
    c: &SSet,
) -> Simplex {
    let base = f.base();
    if let Some(&a) = in_a.get(&base) {
        let y = glue.image(a);
        return if f.is_degenerate() {
            precompose_surjection(y, &f.surjection())
        } else {
            y
        };
    }
    let _ = c;
    let id = b_pos[base.dim()][&base.base_id()];
    Simplex::from_parts(f.dim(), f.mask(), id)
}

/// The quotient `B / A` (collapsing `A` to a point).
pub fn quotient(incl: &SMap) -> Result<Pushout> {
    let point = Arc::new(SSet::point());
    let glue = SMap::to_point(incl.source(), &point);
    Pushout::new(incl, &glue)
}
