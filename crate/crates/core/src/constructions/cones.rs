//! Joins with a point, the cones `J(K)` and `Σ(K)`, and relative cylinders.

use std::sync::Arc;

use crate::constructions::product::Product;
use crate::constructions::pushout::{Origin, Pushout};
use crate::constructions::standard::{boundary, standard};
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::smap::SMap;
use crate::sset::{SSet, SSetBuilder};

/// `K ⋆ Δ⁰`.
///
/// In dimension `n` the simplices of `K` come first (same ids), followed by
/// the cone point (in dimension 0) or the joins `σ ⋆ c` for `σ ∈ K_{n-1}`.
#[derive(Clone, Debug)]
pub struct JoinPoint {
    base: Arc<SSet>,
    sset: Arc<SSet>,
    incl: SMap,
}

impl JoinPoint {
    pub fn new(k: &Arc<SSet>) -> JoinPoint {
        let mut b = SSetBuilder::new();
        let top = k.top_dim().map_or(0, |t| t + 1);
        let apex = Simplex::nondegenerate(0, k.count(0));
        for n in 0..=top {
            for s in k.nondegenerate(n) {
                b.add(n, k.name(s), k.faces_of(s).to_vec());
            }
            if n == 0 {
                b.add(0, "*", vec![]);
                continue;
            }
            for s in k.nondegenerate(n - 1) {
                let faces = if n == 1 {
                    vec![apex, s]
                } else {
                    let mut f: Vec<Simplex> = k
                        .faces_of(s)
                        .iter()
                        .map(|&x| join_ref(k, x))
                        .collect();
                    f.push(s);
                    f
                };
                b.add(n, format!("{}*", k.name(s)), faces);
            }
        }
        let sset = Arc::new(b.finish(k.known_through().map(|c| c + 1)));
        let incl = SMap::new_unchecked(k.clone(), sset.clone(), k.all_nondegenerate().collect());
        JoinPoint {
            base: k.clone(),
            sset,
            incl,
        }
    }

    pub fn sset(&self) -> &Arc<SSet> {
        &self.sset
    }

    pub fn base(&self) -> &Arc<SSet> {
        &self.base
    }

    pub fn apex(&self) -> Simplex {
        Simplex::nondegenerate(0, self.base.count(0))
    }

    pub fn base_inclusion(&self) -> &SMap {
        &self.incl
    }

    /// `σ ⋆ c` for any simplex `σ` of the base.
    pub fn join(&self, s: Simplex) -> Simplex {
        join_ref(&self.base, s)
    }

    /// The part of the join a simplex comes from.  Simplices repeating the
    /// cone point (other than degenerate apex simplices) are not handled.
    pub fn part(&self, s: Simplex) -> JoinPart {
        let base_count = self.base.count(s.base_dim());
        if s.base_id() < base_count {
            JoinPart::Base(s)
        } else if s.base_dim() == 0 {
            JoinPart::Apex
        } else {
            let id = s.base_id() - base_count;
            debug_assert!(s.mask() & (1 << (s.dim() - 1)) == 0, "cone point repeated");
            JoinPart::Join(Simplex::from_parts(s.dim() - 1, s.mask(), id))
        }
    }

    /// `f ⋆ Δ⁰`.
    pub fn induced(&self, target: &JoinPoint, f: &SMap) -> SMap {
        let k = &self.base;
        let mut images = Vec::with_capacity(self.sset.flat_len());
        let top = self.sset.top_dim().unwrap_or(0);
        for n in 0..=top {
            for s in k.nondegenerate(n) {
                images.push(f.eval(s));
            }
            if n == 0 {
                images.push(target.apex());
            } else {
                for s in k.nondegenerate(n - 1) {
                    images.push(target.join(f.eval(s)));
                }
            }
        }
        SMap::new_unchecked(self.sset.clone(), target.sset.clone(), images)
    }
}

/// Where a simplex of `K ⋆ Δ⁰` lives: in `K`, at the cone point (possibly
/// degenerate), or as `σ ⋆ c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JoinPart {
    Base(Simplex),
    Apex,
    Join(Simplex),
}

fn join_ref(k: &SSet, x: Simplex) -> Simplex {
    let id = k.count(x.base_dim() + 1) + x.base_id();
    Simplex::from_parts(x.dim() + 1, x.mask(), id)
}

/// A quotient cone (`J(K)` or `Σ(K)`) with its two marked vertices.
#[derive(Clone, Debug)]
pub struct Cone {
    kind: ConeKind,
    base: Arc<SSet>,
    /// The uncollapsed object: `K ⋆ Δ⁰` or `K × Δ¹`.
    cover: Cover,
    quotient: Pushout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    J,
    Sigma,
}

#[derive(Clone, Debug)]
enum Cover {
    Join(JoinPoint),
    Cylinder(Product),
}

impl Cone {
    /// `J(K) = K⋆Δ⁰/K`; the empty input is rejected.
    pub fn j(k: &Arc<SSet>) -> Result<Cone> {
        if k.is_empty() {
            return Err(Error::Domain("J(∅) has no marked base vertex".into()));
        }
        Ok(Cone::j_relative(k))
    }

    /// `Σ(K) = K × Δ¹` with `K × {0}` and `K × {1}` collapsed separately;
    /// the empty input is rejected.
    pub fn sigma(k: &Arc<SSet>) -> Result<Cone> {
        if k.is_empty() {
            return Err(Error::Domain("Σ(∅) has no marked base vertex".into()));
        }
        Ok(Cone::sigma_relative(k))
    }

    /// `J(K)` computed by the pushout formula for every `K`.  On `∅` this is
    /// `∂Δ¹`, which is what relative constructions `J(A) ⊆ J(B)` need.
    pub fn j_relative(k: &Arc<SSet>) -> Cone {
        let join = JoinPoint::new(k);
        let point = Arc::new(SSet::point());
        let glue = SMap::to_point(k, &point);
        let quotient = Pushout::new(join.base_inclusion(), &glue).expect("base inclusion is injective");
        Cone {
            kind: ConeKind::J,
            base: k.clone(),
            cover: Cover::Join(join),
            quotient,
        }
    }

    /// `Σ(K)` by the pushout formula for every `K` (`Σ(∅) = ∂Δ¹`).
    pub fn sigma_relative(k: &Arc<SSet>) -> Cone {
        let d1 = Arc::new(standard(1));
        let b1 = Arc::new(boundary(1));
        let cyl = Product::new(k, &d1, usize::MAX);
        let ends = Product::new(k, &b1, usize::MAX);
        let end_incl = SMap::new_unchecked(b1.clone(), d1.clone(), b1.all_nondegenerate().collect());
        let incl = ends.map(&SMap::identity(k), &end_incl, &cyl);
        let quotient = Pushout::new(&incl, &ends.project_right()).expect("end inclusion is injective");
        Cone {
            kind: ConeKind::Sigma,
            base: k.clone(),
            cover: Cover::Cylinder(cyl),
            quotient,
        }
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    pub fn sset(&self) -> &Arc<SSet> {
        self.quotient.sset()
    }

    pub fn base(&self) -> &Arc<SSet> {
        &self.base
    }

    pub fn pushout(&self) -> &Pushout {
        &self.quotient
    }

    /// The marked vertices `(0, 1)`: the collapsed base and the cone point
    /// for `J`, the two collapsed ends for `Σ`.
    pub fn marked(&self) -> (Simplex, Simplex) {
        match self.kind {
            ConeKind::J => (Simplex::nondegenerate(0, 0), self.covering_map().eval(self.join().apex())),
            ConeKind::Sigma => (Simplex::nondegenerate(0, 0), Simplex::nondegenerate(0, 1)),
        }
    }

    /// `∂Δ¹ → cone`.
    pub fn marked_map(&self, b1: &Arc<SSet>) -> SMap {
        let (a, b) = self.marked();
        SMap::new_unchecked(b1.clone(), self.sset().clone(), vec![a, b])
    }

    /// The quotient map from `K ⋆ Δ⁰` (resp. `K × Δ¹`).
    pub fn covering_map(&self) -> &SMap {
        self.quotient.leg_b()
    }

    pub fn cover_sset(&self) -> &Arc<SSet> {
        match &self.cover {
            Cover::Join(j) => j.sset(),
            Cover::Cylinder(p) => p.sset(),
        }
    }

    pub fn join(&self) -> &JoinPoint {
        match &self.cover {
            Cover::Join(j) => j,
            Cover::Cylinder(_) => panic!("Σ-cone has no join cover"),
        }
    }

    pub fn cylinder(&self) -> &Product {
        match &self.cover {
            Cover::Cylinder(p) => p,
            Cover::Join(_) => panic!("J-cone has no cylinder cover"),
        }
    }

    /// A simplex of the cover mapping onto `s` (a chosen lift).
    pub fn lift(&self, s: Simplex) -> Option<Simplex> {
        self.quotient.lift_b(s)
    }

    /// `J(f)` or `Σ(f)` for `f: K → L`, with `target` the cone on `L`.
    pub fn induced(&self, target: &Cone, f: &SMap) -> SMap {
        assert_eq!(self.kind, target.kind);
        let on_b = match (&self.cover, &target.cover) {
            (Cover::Join(a), Cover::Join(b)) => a.induced(b, f),
            (Cover::Cylinder(a), Cover::Cylinder(b)) => {
                let id = SMap::identity(a.right()).retarget(b.right());
                a.map(f, &id, b)
            }
            _ => unreachable!(),
        };
        let c_src = self.quotient.leg_c().source();
        let c_tgt = target.quotient.leg_c().source();
        let on_c = SMap::identity(c_src).retarget(c_tgt);
        self.quotient.induced(&target.quotient, &on_b, &on_c)
    }
}

/// `B ⋊_A D`: the pushout of `A ← A × D → B × D`.
#[derive(Clone, Debug)]
pub struct RelCylinder {
    a: Arc<SSet>,
    b: Arc<SSet>,
    d: Arc<SSet>,
    ad: Product,
    bd: Product,
    pushout: Pushout,
}

impl RelCylinder {
    pub fn new(incl: &SMap, d: &Arc<SSet>) -> Result<RelCylinder> {
        let a = incl.source().clone();
        let b = incl.target().clone();
        let ad = Product::new(&a, d, usize::MAX);
        let bd = Product::new(&b, d, usize::MAX);
        let ad_to_bd = ad.map(incl, &SMap::identity(d), &bd);
        let pushout = Pushout::new(&ad_to_bd, &ad.project_left())?;
        Ok(RelCylinder {
            a,
            b,
            d: d.clone(),
            ad,
            bd,
            pushout,
        })
    }

    pub fn sset(&self) -> &Arc<SSet> {
        self.pushout.sset()
    }

    pub fn pushout(&self) -> &Pushout {
        &self.pushout
    }

    pub fn a(&self) -> &Arc<SSet> {
        &self.a
    }

    pub fn b(&self) -> &Arc<SSet> {
        &self.b
    }

    pub fn d(&self) -> &Arc<SSet> {
        &self.d
    }

    pub fn product_a(&self) -> &Product {
        &self.ad
    }

    pub fn product_b(&self) -> &Product {
        &self.bd
    }

    /// The image of `(b, x)` for simplices `b ∈ B`, `x ∈ D` of equal dimension.
    pub fn pair(&self, b: Simplex, x: Simplex) -> Simplex {
        self.pushout.leg_b().eval(self.bd.pair(b, x))
    }

    /// `(b, x)` for a simplex not coming from `A`, otherwise `Err(a)`.
    pub fn split(&self, s: Simplex) -> std::result::Result<(Simplex, Simplex), Simplex> {
        match self.pushout.origin(s) {
            Origin::C(a) => Err(crate::sset::precompose_surjection(a, &s.surjection())),
            Origin::B(_) => Ok(self.bd.split(self.pushout.lift_b(s).expect("origin B"))),
        }
    }

    /// `A → B ⋊_A D`.
    pub fn leg_a(&self) -> &SMap {
        self.pushout.leg_c()
    }

    /// `B ⋊_A D → B ⋊_A D'` induced by `h: D → D'`.
    pub fn induced_by_d(&self, target: &RelCylinder, h: &SMap) -> SMap {
        let id_b = SMap::identity(&self.b).retarget(&target.b);
        let on_b = self.bd.map(&id_b, h, &target.bd);
        let on_c = SMap::identity(&self.a).retarget(&target.a);
        self.pushout.induced(&target.pushout, &on_b, &on_c)
    }

    /// The end `B → B ⋊_A D` at a vertex `v` of `D`.
    pub fn end(&self, v: Simplex) -> SMap {
        let images = self
            .b
            .all_nondegenerate()
            .map(|s| {
                let x = crate::sset::precompose_surjection(v, &vec![0; s.dim() + 1]);
                self.pair(s, x)
            })
            .collect();
        SMap::new_unchecked(self.b.clone(), self.sset().clone(), images)
    }
}
