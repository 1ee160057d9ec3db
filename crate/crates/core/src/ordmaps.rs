//! Monotone maps between finite total orders `[n] = {0, .., n-1}`.
//!
//! Singular heights of a zigzag map are related by a [`Monotone`]; the
//! matching regular heights are given by [`Monotone::wraith_dual`].

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monotone {
    values: Vec<usize>,
    target: usize,
}

impl fmt::Debug for Monotone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:[{}]->[{}]", self.values, self.values.len(), self.target)
    }
}

impl Monotone {
    pub fn new(values: Vec<usize>, target: usize) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v >= target) {
            return Err(Error::Index { index: bad, size: target });
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Argument(format!("{values:?} is not weakly increasing")));
        }
        Ok(Monotone { values, target })
    }

    pub(crate) fn new_unchecked(values: Vec<usize>, target: usize) -> Self {
        debug_assert!(Monotone::new(values.clone(), target).is_ok());
        Monotone { values, target }
    }

    pub fn identity(n: usize) -> Self {
        Monotone { values: (0..n).collect(), target: n }
    }

    /// The injective map `[n] -> [n+1]` whose image omits `i`.
    pub fn face(i: usize, n: usize) -> Result<Self> {
        if i > n {
            return Err(Error::Index { index: i, size: n + 1 });
        }
        let values = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
        Ok(Monotone { values, target: n + 1 })
    }

    /// The injective map `[image.len()] -> [target]` onto a strictly increasing set.
    pub fn from_image(image: Vec<usize>, target: usize) -> Result<Self> {
        if image.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument(format!("{image:?} is not strictly increasing")));
        }
        Monotone::new(image, target)
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, j: usize) -> usize {
        self.values[j]
    }

    /// `self` followed by `g`.
    pub fn compose(&self, g: &Monotone) -> Result<Monotone> {
        if self.target != g.source_size() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {self:?} with {g:?}"
            )));
        }
        Ok(Monotone {
            values: self.values.iter().map(|&v| g.values[v]).collect(),
            target: g.target,
        })
    }

    /// `i ↦ min({ j | f(j) ≥ i } ∪ { n })`, a map `[m+1] -> [n+1]`.
    pub fn wraith_dual(&self) -> Monotone {
        let n = self.values.len();
        let values = (0..=self.target)
            .map(|i| self.values.partition_point(|&v| v < i))
            .collect();
        Monotone { values, target: n + 1 }
    }

    /// The indices mapping to `i`, as a half-open interval. Empty preimages
    /// are positioned at the count of entries below `i`.
    pub fn preimage(&self, i: usize) -> Result<Range<usize>> {
        if i >= self.target {
            return Err(Error::Index { index: i, size: self.target });
        }
        let p = self.values.partition_point(|&v| v < i);
        let q = self.values.partition_point(|&v| v <= i);
        Ok(p..q)
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.values.len() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.target).all(|i| self.values.binary_search(&i).is_ok())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.values.binary_search(&i).is_ok()
    }

    /// For an injective map, the index sent to `i`, if any.
    pub fn inverse_at(&self, i: usize) -> Option<usize> {
        self.values.binary_search(&i).ok()
    }

    /// Target indices outside the image, in increasing order.
    pub fn omitted(&self) -> Vec<usize> {
        (0..self.target).filter(|&i| !self.contains(i)).collect()
    }

    /// Writes an injective map as a sequence of face maps, applied first to last.
    pub fn face_decomposition(&self) -> Result<Vec<Monotone>> {
        if !self.is_injective() {
            return Err(Error::Argument(format!("{self:?} is not injective")));
        }
        let mut faces = Vec::new();
        let mut present: Vec<usize> = self.values.clone();
        for h in self.omitted() {
            faces.push(Monotone::face(position_of(&present, h), present.len())?);
            present.push(h);
            present.sort_unstable();
        }
        Ok(faces)
    }

    /// All monotone maps `[n] -> [m]` in lexicographic order.
    pub fn enumerate(n: usize, m: usize) -> Vec<Monotone> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        enumerate_from(n, m, 0, &mut current, &mut out);
        out
    }
}

fn position_of(present: &[usize], h: usize) -> usize {
    present.partition_point(|&v| v < h)
}

fn enumerate_from(n: usize, m: usize, low: usize, current: &mut Vec<usize>, out: &mut Vec<Monotone>) {
    if current.len() == n {
        out.push(Monotone { values: current.clone(), target: m });
        return;
    }
    for v in low..m {
        current.push(v);
        enumerate_from(n, m, v, current, out);
        current.pop();
    }
}
