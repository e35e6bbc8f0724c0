//! Simplices in Eilenberg–Zilber normal form.
//!
//! Every simplex of a simplicial set can be written uniquely as
//! `s_{j1} … s_{jk} x` with `j1 > … > jk` and `x` nondegenerate.  We store the
//! degeneracy word as a bitmask of the positions `j` where the underlying
//! surjection `[n] → [n-k]` repeats a value (`η(j) = η(j+1)`), which is the
//! same set as `{j1, …, jk}`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest dimension representable by the degeneracy bitmask.
pub const MAX_DIM: usize = 31;

/// A simplex `s_{j1} … s_{jk} x` of some simplicial set.
///
/// `base` indexes the nondegenerate simplex `x` inside its dimension
/// `dim - k` of the owning [`SSet`](crate::SSet).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    dim: u32,
    mask: u32,
    base: u32,
}

impl Simplex {
    pub fn nondegenerate(dim: usize, id: usize) -> Simplex {
        debug_assert!(dim <= MAX_DIM);
        Simplex {
            dim: dim as u32,
            mask: 0,
            base: id as u32,
        }
    }

    pub(crate) fn from_parts(dim: usize, mask: u32, base: usize) -> Simplex {
        debug_assert!(dim <= MAX_DIM);
        debug_assert!(dim == 0 || mask >> dim == 0);
        Simplex {
            dim: dim as u32,
            mask,
            base: base as u32,
        }
    }

    /// Builds a simplex from a strictly decreasing degeneracy word.
    pub fn from_degeneracies(dim: usize, degeneracies: &[usize], base: usize) -> Result<Simplex> {
        if dim > MAX_DIM {
            return Err(Error::Argument(format!("dimension {dim} exceeds {MAX_DIM}")));
        }
        let mut mask = 0u32;
        let mut current = dim;
        for (k, &j) in degeneracies.iter().enumerate() {
            if k > 0 && degeneracies[k - 1] <= j {
                return Err(Error::Argument(format!(
                    "degeneracy word {degeneracies:?} is not strictly decreasing"
                )));
            }
            // s_j applied to a simplex of dimension current-1 needs j < current.
            if j >= current {
                return Err(Error::Argument(format!(
                    "degeneracy s_{j} out of range in dimension {current}"
                )));
            }
            mask |= 1 << j;
            current -= 1;
        }
        Ok(Simplex::from_parts(dim, mask, base))
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Dimension of the nondegenerate simplex this one is a degeneracy of.
    pub fn base_dim(&self) -> usize {
        self.dim as usize - self.mask.count_ones() as usize
    }

    pub fn base_id(&self) -> usize {
        self.base as usize
    }

    /// The nondegenerate simplex underlying this one.
    pub fn base(&self) -> Simplex {
        Simplex::nondegenerate(self.base_dim(), self.base_id())
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn is_degenerate(&self) -> bool {
        self.mask != 0
    }

    /// The degeneracy word `j1 > … > jk`.
    pub fn degeneracies(&self) -> Vec<usize> {
        (0..self.dim as usize).rev().filter(|j| self.mask & (1 << j) != 0).collect()
    }

    /// The surjection `[dim] → [base_dim]` of the normal form.
    pub fn surjection(&self) -> Vec<usize> {
        surjection(self.dim as usize, self.mask)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in self.degeneracies() {
            write!(f, "s{j}.")?;
        }
        write!(f, "[{}:{}]", self.base_dim(), self.base)
    }
}

/// Values `η(0), …, η(n)` of the surjection with repeat positions `mask`.
pub(crate) fn surjection(dim: usize, mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(dim + 1);
    let mut value = 0;
    for k in 0..=dim {
        if k > 0 && mask & (1 << (k - 1)) == 0 {
            value += 1;
        }
        out.push(value);
    }
    out
}

/// Repeat positions of a monotone surjection given by its values.
pub(crate) fn mask_of(eta: &[usize]) -> u32 {
    let mut mask = 0u32;
    for j in 0..eta.len().saturating_sub(1) {
        if eta[j] == eta[j + 1] {
            mask |= 1 << j;
        }
    }
    mask
}

/// Checks that `theta` is a weakly increasing list with entries `≤ bound`.
pub(crate) fn is_monotone(theta: &[usize], bound: usize) -> bool {
    theta.windows(2).all(|w| w[0] <= w[1]) && theta.iter().all(|&v| v <= bound)
}

/// Positions removed by the face map `[k] → [n]` whose image is `image`
/// (sorted, distinct), listed in decreasing order.
pub(crate) fn missing_desc(image: &[usize], n: usize) -> Vec<usize> {
    (0..=n).rev().filter(|v| image.binary_search(v).is_err()).collect()
}
