//! Seeded random diagrams, maps and sinks over a small generator pool.
//!
//! Maps are built from a few constructors: identities, identity-cospan
//! insertion and deletion, slice-wise maps, collapsing a run of 1-cells into
//! a single higher cell, and arbitrary thin maps of words. Everything returned
//! has passed validation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degeneracy::{factor_through, insert_identity_cospans};
use crate::diagram::{validate_diagram, validate_map, Diagram, DiagramMap, Generator, Leg, Sink};
use crate::normalise::is_identity_cospan;
use crate::ordmaps::Monotone;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dimension: usize,
    pub max_length: usize,
    pub max_generators: usize,
    pub max_legs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dimension: 3, max_length: 3, max_generators: 4, max_legs: 2 }
    }
}

pub struct Corpus {
    rng: ChaCha8Rng,
    pool: Vec<Generator>,
    limits: Limits,
}

fn gen(d: &Diagram) -> &Generator {
    d.generator().expect("0-diagram")
}

impl Corpus {
    pub fn new(seed: u64, limits: Limits) -> Self {
        let pool = [("a", 0), ("b", 1), ("c", 1), ("d", 2)]
            .iter()
            .take(limits.max_generators.max(1))
            .map(|&(n, d)| Generator::new(n, d))
            .collect();
        Corpus { rng: ChaCha8Rng::seed_from_u64(seed), pool, limits }
    }

    pub fn pool(&self) -> &[Generator] {
        &self.pool
    }

    fn within_limits(&self, d: &Diagram) -> bool {
        d.dim() <= self.limits.max_dimension
            && d.max_length() <= self.limits.max_length
            && d.generators().len() <= self.limits.max_generators
    }

    fn pick(&mut self, candidates: Vec<Generator>) -> Option<Generator> {
        candidates.choose(&mut self.rng).cloned()
    }

    /// A random valid diagram of dimension `dim`.
    pub fn diagram(&mut self, dim: usize) -> Diagram {
        loop {
            if let Some(d) = self.try_diagram(dim) {
                if self.within_limits(&d) && validate_diagram(&d).is_ok() {
                    return d;
                }
            }
        }
    }

    fn try_diagram(&mut self, dim: usize) -> Option<Diagram> {
        if dim == 0 {
            let g = self.pool.choose(&mut self.rng)?.clone();
            return Some(Diagram::point(g));
        }
        let len = self.rng.gen_range(0..=self.limits.max_length);
        let mut regular = vec![self.diagram(dim - 1)];
        let (mut singular, mut forward, mut backward) = (vec![], vec![], vec![]);
        for _ in 0..len {
            let r = regular.last().expect("nonempty").clone();
            let (s, f) = self.forward(&r)?;
            let (r1, b) = if self.rng.gen_bool(0.4) { (r, f.clone()) } else { self.map_into(&s)? };
            regular.push(r1);
            singular.push(s);
            forward.push(f);
            backward.push(b);
        }
        Diagram::zigzag(regular, singular, forward, backward).ok()
    }

    /// A random map out of `x`, with its target.
    pub fn forward(&mut self, x: &Diagram) -> Option<(Diagram, DiagramMap)> {
        let (y, f) = match x {
            Diagram::Point(g) => {
                let cands = self.pool.iter().filter(|h| g.maps_to(h)).cloned().collect();
                let h = self.pick(cands)?;
                (Diagram::point(h.clone()), DiagramMap::point(g.clone(), h))
            }
            Diagram::Zigzag(z) => match self.rng.gen_range(0..6) {
                0 => (x.clone(), DiagramMap::identity(x)),
                1 => {
                    let len = z.singular.len();
                    let skip = self.rng.gen_range(0..=len);
                    insert_identity_cospans(x, &Monotone::face(skip, len).ok()?).ok()?
                }
                2 | 3 if x.dim() == 1 => self.collapse(x)?,
                4 => {
                    let (y, f) = self.forward(x)?;
                    let (w, g) = self.forward(&y)?;
                    (w, f.compose(&g).ok()?)
                }
                _ => self.slicewise_forward(x)?,
            },
        };
        validate_map(&f, x, &y).ok()?;
        Some((y, f))
    }

    /// A map into `y`, with its source.
    pub fn map_into(&mut self, y: &Diagram) -> Option<(Diagram, DiagramMap)> {
        let (x, f) = match y {
            Diagram::Point(g) => {
                let cands = self.pool.iter().filter(|h| h.maps_to(g)).cloned().collect();
                let h = self.pick(cands)?;
                (Diagram::point(h.clone()), DiagramMap::point(h, g.clone()))
            }
            Diagram::Zigzag(_) => match self.rng.gen_range(0..6) {
                0 => (y.clone(), DiagramMap::identity(y)),
                1 | 2 => self.degeneracy_into(y)?,
                3 | 4 if y.dim() == 1 => self.word_into(y)?,
                5 => {
                    let (a, g) = self.map_into(y)?;
                    let (b, h) = self.map_into(&a)?;
                    (b, h.compose(&g).ok()?)
                }
                _ => self.degeneracy_into(y)?,
            },
        };
        validate_map(&f, &x, y).ok()?;
        Some((x, f))
    }

    /// A degeneracy into `y`: identity-cospan deletion or a slice-wise degeneracy.
    pub fn degeneracy_into(&mut self, y: &Diagram) -> Option<(Diagram, DiagramMap)> {
        let z = y.as_zigzag()?;
        if self.rng.gen_bool(0.5) {
            let ids: Vec<usize> = (0..z.singular.len()).filter(|&h| is_identity_cospan(y, h)).collect();
            if ids.is_empty() {
                return Some((y.clone(), DiagramMap::identity(y)));
            }
            let drop: Vec<usize> = ids.into_iter().filter(|_| self.rng.gen_bool(0.7)).collect();
            let kept: Vec<usize> = (0..z.singular.len()).filter(|h| !drop.contains(h)).collect();
            let a = Diagram::zigzag(
                (0..=z.singular.len())
                    .filter(|&i| i == 0 || !drop.contains(&(i - 1)))
                    .map(|i| z.regular[i].clone())
                    .collect(),
                kept.iter().map(|&h| z.singular[h].clone()).collect(),
                kept.iter().map(|&h| z.forward[h].clone()).collect(),
                kept.iter().map(|&h| z.backward[h].clone()).collect(),
            )
            .ok()?;
            let positions = Monotone::from_image(kept, z.singular.len()).ok()?;
            let (back, d) = insert_identity_cospans(&a, &positions).ok()?;
            return (back == *y).then_some((a, d));
        }
        if z.singular.is_empty() || y.dim() < 2 {
            return None;
        }
        let j = self.rng.gen_range(0..z.singular.len());
        let (a, d) = self.degeneracy_into(&z.singular[j])?;
        let fwd = factor_through(&z.forward[j], &d)?;
        let bwd = factor_through(&z.backward[j], &d)?;
        let mut parts = (*z).clone();
        parts.singular[j] = a;
        parts.forward[j] = fwd;
        parts.backward[j] = bwd;
        let x = Diagram::zigzag(parts.regular, parts.singular, parts.forward, parts.backward).ok()?;
        let f = slicewise(&x, j, d);
        Some((x, f))
    }

    /// Replaces one singular slice of `x` by the target of a map out of it.
    fn slicewise_forward(&mut self, x: &Diagram) -> Option<(Diagram, DiagramMap)> {
        let z = x.as_zigzag()?;
        if z.singular.is_empty() {
            return None;
        }
        let j = self.rng.gen_range(0..z.singular.len());
        let (s, h) = self.forward(&z.singular[j])?;
        let mut parts = (*z).clone();
        parts.singular[j] = s;
        parts.forward[j] = z.forward[j].compose(&h).ok()?;
        parts.backward[j] = z.backward[j].compose(&h).ok()?;
        let y = Diagram::zigzag(parts.regular, parts.singular, parts.forward, parts.backward).ok()?;
        Some((y, slicewise(x, j, h)))
    }

    /// Merges a run of cospans of a 1-diagram (possibly empty) into one cell.
    fn collapse(&mut self, x: &Diagram) -> Option<(Diagram, DiagramMap)> {
        let z = x.zz();
        let len = z.singular.len();
        let j = self.rng.gen_range(0..=len);
        let k = self.rng.gen_range(j..=len.min(j + 2));
        let involved: Vec<&Generator> = z.regular[j..=k]
            .iter()
            .chain(&z.singular[j..k])
            .map(gen)
            .collect();
        let cands = self
            .pool
            .iter()
            .filter(|g| involved.iter().all(|h| h.maps_to(g)))
            .cloned()
            .collect();
        let g = Diagram::point(self.pick(cands)?);
        let regular: Vec<Diagram> =
            z.regular[..=j].iter().chain(&z.regular[k..]).cloned().collect();
        let singular: Vec<Diagram> = z.singular[..j]
            .iter()
            .chain(std::iter::once(&g))
            .chain(&z.singular[k..])
            .cloned()
            .collect();
        let y = thin_word(regular, singular)?;
        let values = (0..len)
            .map(|i| if i < j { i } else if i < k { j } else { i + 1 + j - k })
            .collect();
        let f = thin_map(x, &y, Monotone::new(values, len + 1 + j - k).ok()?)?;
        Some((y, f))
    }

    /// A random word with a thin map into the 1-diagram `y`.
    fn word_into(&mut self, y: &Diagram) -> Option<(Diagram, DiagramMap)> {
        let target = y.zz().singular.len();
        for _ in 0..8 {
            let len = self.rng.gen_range(0..=self.limits.max_length);
            if target == 0 && len > 0 {
                continue;
            }
            let mut values: Vec<usize> = (0..len).map(|_| self.rng.gen_range(0..target)).collect();
            values.sort_unstable();
            let regular = (0..=len).map(|_| Diagram::point(self.pool.choose(&mut self.rng).unwrap().clone())).collect();
            let singular = (0..len).map(|_| Diagram::point(self.pool.choose(&mut self.rng).unwrap().clone())).collect();
            let Some(x) = thin_word(regular, singular) else { continue };
            let Some(f) = thin_map(&x, y, Monotone::new(values, target).ok()?) else { continue };
            if validate_map(&f, &x, y).is_ok() {
                return Some((x, f));
            }
        }
        None
    }

    /// A random valid sink, drawn from several shapes: no legs, a leg out of
    /// a random map, legs into a random target, or the cospan at a singular
    /// height of a diagram one dimension up.
    pub fn sink(&mut self, dim: usize) -> Sink {
        loop {
            if let Some(s) = self.try_sink(dim) {
                if self.within_limits(&s.target)
                    && s.legs.iter().all(|l| self.within_limits(&l.source))
                    && s.legs.len() <= self.limits.max_legs
                    && s.validate().is_ok()
                {
                    return s;
                }
            }
        }
    }

    fn try_sink(&mut self, dim: usize) -> Option<Sink> {
        match self.rng.gen_range(0..4) {
            0 => Some(Sink::empty(self.diagram(dim))),
            1 => {
                let x = self.diagram(dim);
                let (t, f) = self.forward(&x)?;
                let mut legs = vec![Leg { source: x, map: f }];
                if self.limits.max_legs > 1 && self.rng.gen_bool(0.5) {
                    let (y, g) = self.map_into(&t)?;
                    legs.push(Leg { source: y, map: g });
                }
                Some(Sink { target: t, legs })
            }
            2 => {
                let t = self.diagram(dim);
                let n = self.rng.gen_range(1..=self.limits.max_legs.max(1));
                let legs = (0..n)
                    .map(|_| self.map_into(&t).map(|(source, map)| Leg { source, map }))
                    .collect::<Option<Vec<_>>>()?;
                Some(Sink { target: t, legs })
            }
            _ => {
                if dim + 1 > self.limits.max_dimension {
                    return None;
                }
                let d = self.diagram(dim + 1);
                let z = d.zz();
                if z.singular.is_empty() {
                    return None;
                }
                let i = self.rng.gen_range(0..z.singular.len());
                Some(Sink {
                    target: z.singular[i].clone(),
                    legs: vec![
                        Leg { source: z.regular[i].clone(), map: z.forward[i].clone() },
                        Leg { source: z.regular[i + 1].clone(), map: z.backward[i].clone() },
                    ],
                })
            }
        }
    }
}

/// The map `x → y` of equal-length zigzags that is the identity except at
/// singular height `j`, where it is `h`.
fn slicewise(x: &Diagram, j: usize, h: DiagramMap) -> DiagramMap {
    let z = x.zz();
    let mut singular: Vec<DiagramMap> = z.singular.iter().map(DiagramMap::identity).collect();
    singular[j] = h;
    DiagramMap::from_parts(
        Monotone::identity(z.singular.len()),
        z.regular.iter().map(DiagramMap::identity).collect(),
        singular,
    )
}

/// The 1-diagram with the given labels, if the base has the required maps.
fn thin_word(regular: Vec<Diagram>, singular: Vec<Diagram>) -> Option<Diagram> {
    let forward = (0..singular.len())
        .map(|i| arrow(&regular[i], &singular[i]))
        .collect::<Option<Vec<_>>>()?;
    let backward = (0..singular.len())
        .map(|i| arrow(&regular[i + 1], &singular[i]))
        .collect::<Option<Vec<_>>>()?;
    Diagram::zigzag(regular, singular, forward, backward).ok()
}

fn arrow(a: &Diagram, b: &Diagram) -> Option<DiagramMap> {
    let (g, h) = (gen(a), gen(b));
    g.maps_to(h).then(|| DiagramMap::point(g.clone(), h.clone()))
}

/// The map of 1-diagrams with singular monotone `m`, if the base has the
/// required slices.
fn thin_map(x: &Diagram, y: &Diagram, m: Monotone) -> Option<DiagramMap> {
    let (xz, yz) = (x.zz(), y.zz());
    if m.source_size() != xz.singular.len() || m.target_size() != yz.singular.len() {
        return None;
    }
    let dual = m.wraith_dual();
    let regular = (0..yz.regular.len())
        .map(|i| arrow(&xz.regular[dual.apply(i)], &yz.regular[i]))
        .collect::<Option<Vec<_>>>()?;
    let singular = (0..xz.singular.len())
        .map(|j| arrow(&xz.singular[j], &yz.singular[m.apply(j)]))
        .collect::<Option<Vec<_>>>()?;
    DiagramMap::zigzag(m, regular, singular).ok()
}
