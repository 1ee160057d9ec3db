//! Globular diagrams and regularly normalising maps.

use std::collections::HashMap;

use crate::diagram::{Diagram, DiagramMap};
use crate::error::Result;
use crate::normalise::{normalise, NormalisationResult};

/// Regular slices are identities and singular slices are globular, at every level.
pub fn is_globular_map(f: &DiagramMap) -> bool {
    match f {
        DiagramMap::Point { .. } => true,
        DiagramMap::Zigzag(m) => {
            m.regular.iter().all(DiagramMap::is_identity)
                && m.singular.iter().all(is_globular_map)
        }
    }
}

/// A zigzag of globular diagrams and globular maps.
pub fn is_globular_object(d: &Diagram) -> bool {
    match d {
        Diagram::Point(_) => true,
        Diagram::Zigzag(z) => {
            z.regular.iter().chain(&z.singular).all(is_globular_object)
                && z.forward.iter().chain(&z.backward).all(is_globular_map)
        }
    }
}

/// Decides whether maps are regularly normalising, caching the normal form
/// of every slice target it meets.
#[derive(Default)]
pub struct NormalisingCheck {
    cache: HashMap<Diagram, NormalisationResult>,
}

impl NormalisingCheck {
    pub fn new() -> Self {
        Self::default()
    }

    fn normal(&mut self, d: &Diagram) -> Result<&NormalisationResult> {
        if !self.cache.contains_key(d) {
            let r = normalise(d)?;
            self.cache.insert(d.clone(), r);
        }
        Ok(&self.cache[d])
    }

    /// Whether `f: x → y` is the normalising map of `y`.
    pub fn is_normalising(&mut self, f: &DiagramMap, x: &Diagram, y: &Diagram) -> Result<bool> {
        let r = self.normal(y)?;
        Ok(r.normal_form == *x && r.normaliser == *f)
    }

    /// Regular slices are normalising and singular slices are regularly
    /// normalising, recursively.
    pub fn is_regularly_normalising(&mut self, f: &DiagramMap, x: &Diagram, y: &Diagram) -> Result<bool> {
        let (fz, xz, yz) = match (f, x, y) {
            (DiagramMap::Zigzag(fz), Diagram::Zigzag(xz), Diagram::Zigzag(yz)) => (fz, xz, yz),
            _ => return Ok(true),
        };
        let dual = fz.monotone.wraith_dual();
        for (i, slice) in fz.regular.iter().enumerate() {
            if !self.is_normalising(slice, &xz.regular[dual.apply(i)], &yz.regular[i])? {
                return Ok(false);
            }
        }
        for (j, slice) in fz.singular.iter().enumerate() {
            let target = &yz.singular[fz.monotone.apply(j)];
            if !self.is_regularly_normalising(slice, &xz.singular[j], target)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn is_regularly_normalising(f: &DiagramMap, x: &Diagram, y: &Diagram) -> Result<bool> {
    NormalisingCheck::new().is_regularly_normalising(f, x, y)
}
