//! Brute-force reference implementations: exhaustive enumeration of the
//! degeneracies into a diagram, factorisation by search, and normal forms
//! computed as the least element of the degeneracies every leg factors
//! through. Only the diagram data model and monotone combinatorics are
//! shared with the main algorithm.

use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::rc::Rc;

use crate::diagram::{validate_map, Diagram, DiagramMap, Sink};
use crate::error::{Error, Result};
use crate::normalise::NormalisationResult;
use crate::ordmaps::Monotone;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_dimension: usize,
    pub max_length: usize,
    pub max_generators: usize,
    pub max_nodes: usize,
    /// Largest number of degeneracies enumerated into any one diagram.
    pub max_degeneracies: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_dimension: 3,
            max_length: 3,
            max_generators: 4,
            max_nodes: 2_000_000,
            max_degeneracies: 20_000,
        }
    }
}

/// A degeneracy into a fixed target, with its simple/parallel parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subobject {
    pub source: Diagram,
    pub map: DiagramMap,
    pub parallel_form: Diagram,
    pub parallel: DiagramMap,
    pub simple: DiagramMap,
    pub kept: Monotone,
}

type Enumeration = Rc<Vec<Subobject>>;

pub struct Oracle {
    budget: Budget,
    nodes: Cell<usize>,
    cache: RefCell<HashMap<Diagram, Enumeration>>,
}

impl Oracle {
    pub fn new(budget: Budget) -> Self {
        Oracle {
            budget,
            nodes: Cell::new(0),
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn check_size(&self, d: &Diagram) -> Result<()> {
        let b = &self.budget;
        if d.dim() > b.max_dimension {
            return Err(Error::Budget(format!("dimension {} > {}", d.dim(), b.max_dimension)));
        }
        if d.max_length() > b.max_length {
            return Err(Error::Budget(format!("length {} > {}", d.max_length(), b.max_length)));
        }
        let gens = d.generators().len();
        if gens > b.max_generators {
            return Err(Error::Budget(format!("{gens} generators > {}", b.max_generators)));
        }
        Ok(())
    }

    fn tick(&self) -> Result<()> {
        let n = self.nodes.get() + 1;
        self.nodes.set(n);
        if n > self.budget.max_nodes {
            return Err(Error::Budget(format!("search exceeded {} nodes", self.budget.max_nodes)));
        }
        Ok(())
    }

    fn check_count(&self, n: usize) -> Result<()> {
        if n >= self.budget.max_degeneracies {
            return Err(Error::Budget(format!(
                "more than {} degeneracies into one diagram",
                self.budget.max_degeneracies
            )));
        }
        Ok(())
    }

    pub fn nodes_visited(&self) -> usize {
        self.nodes.get()
    }

    /// Every degeneracy into `t`, each exactly once.
    pub fn degeneracies(&self, t: &Diagram) -> Result<Enumeration> {
        self.check_size(t)?;
        self.enumerate(t)
    }

    fn enumerate(&self, t: &Diagram) -> Result<Enumeration> {
        if let Some(hit) = self.cache.borrow().get(t) {
            return Ok(hit.clone());
        }
        let result = Rc::new(self.enumerate_uncached(t)?);
        self.cache.borrow_mut().insert(t.clone(), result.clone());
        Ok(result)
    }

    fn enumerate_uncached(&self, t: &Diagram) -> Result<Vec<Subobject>> {
        let tz = match t {
            Diagram::Point(_) => {
                let id = DiagramMap::identity(t);
                return Ok(vec![Subobject {
                    source: t.clone(),
                    map: id.clone(),
                    parallel_form: t.clone(),
                    parallel: id.clone(),
                    simple: id,
                    kept: Monotone::identity(0),
                }]);
            }
            Diagram::Zigzag(z) => z,
        };
        let regular = tz
            .regular
            .iter()
            .map(|r| self.enumerate(r))
            .collect::<Result<Vec<_>>>()?;
        let singular = tz
            .singular
            .iter()
            .map(|s| self.enumerate(s))
            .collect::<Result<Vec<_>>>()?;
        let mut parallels = Vec::new();
        let mut state = Partial::default();
        for (i, r0) in regular[0].iter().enumerate() {
            state.regular.push((i, r0.clone()));
            self.extend(t, &regular, &singular, &mut state, &mut parallels)?;
            state.regular.pop();
        }

        let mut out = Vec::new();
        for (p, dp) in parallels {
            let len = p.len();
            let removable: Vec<usize> = (0..len).filter(|&h| identity_cospan_at(&p, h)).collect();
            for mask in 0..(1usize << removable.len()) {
                self.tick()?;
                let removed: Vec<usize> = removable
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask & (1 << b) != 0)
                    .map(|(_, &h)| h)
                    .collect();
                self.check_count(out.len())?;
                let (n, ins, kept) = drop_heights(&p, &removed);
                let map = ins.compose(&dp)?;
                out.push(Subobject {
                    source: n,
                    map,
                    parallel_form: p.clone(),
                    parallel: dp.clone(),
                    simple: ins,
                    kept,
                });
            }
        }
        Ok(out)
    }

    /// Depth-first choice of slice degeneracies, height by height, keeping
    /// only choices whose cospan legs factor.
    fn extend(
        &self,
        t: &Diagram,
        regular: &[Enumeration],
        singular: &[Enumeration],
        state: &mut Partial,
        out: &mut Vec<(Diagram, DiagramMap)>,
    ) -> Result<()> {
        self.tick()?;
        let tz = t.as_zigzag().expect("zigzag");
        let h = state.singular.len();
        if h == tz.singular.len() {
            let p = Diagram::from_parts(
                state.regular.iter().map(|(_, c)| c.source.clone()).collect(),
                state.singular.iter().map(|c| c.source.clone()).collect(),
                state.forward.clone(),
                state.backward.clone(),
            );
            let dp = DiagramMap::from_parts(
                Monotone::identity(h),
                state.regular.iter().map(|(_, c)| c.map.clone()).collect(),
                state.singular.iter().map(|c| c.map.clone()).collect(),
            );
            self.check_count(out.len())?;
            out.push((p, dp));
            return Ok(());
        }
        let (ri, rh) = state.regular[h].clone();
        for (si, sh) in singular[h].iter().enumerate() {
            let Some(fwd) = self.leg_factor(&state.memo, (h, ri, si, true), || {
                let leg = rh.map.compose(&tz.forward[h])?;
                Ok(self.factorisations(&leg, &rh.source, &sh.map, &sh.source)?.pop())
            })?
            else {
                continue;
            };
            for (ni, rn) in regular[h + 1].iter().enumerate() {
                let Some(bwd) = self.leg_factor(&state.memo, (h, ni, si, false), || {
                    let leg = rn.map.compose(&tz.backward[h])?;
                    Ok(self.factorisations(&leg, &rn.source, &sh.map, &sh.source)?.pop())
                })?
                else {
                    continue;
                };
                state.singular.push(sh.clone());
                state.regular.push((ni, rn.clone()));
                state.forward.push(fwd.clone());
                state.backward.push(bwd);
                self.extend(t, regular, singular, state, out)?;
                state.singular.pop();
                state.regular.pop();
                state.forward.pop();
                state.backward.pop();
            }
        }
        Ok(())
    }

    /// The factorisation of a cospan leg through a slice candidate, keyed by
    /// height, regular candidate, singular candidate and leg direction.
    fn leg_factor(
        &self,
        memo: &RefCell<HashMap<LegKey, Option<DiagramMap>>>,
        key: LegKey,
        compute: impl FnOnce() -> Result<Option<DiagramMap>>,
    ) -> Result<Option<DiagramMap>> {
        if let Some(hit) = memo.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let found = compute()?;
        memo.borrow_mut().insert(key, found.clone());
        Ok(found)
    }

    /// All valid maps `u: a → n` with `u ; d = k`, found by searching over
    /// singular monotones and slice candidates. `d` must have an injective
    /// singular monotone at every level.
    pub fn factorisations(
        &self,
        k: &DiagramMap,
        a: &Diagram,
        d: &DiagramMap,
        n: &Diagram,
    ) -> Result<Vec<DiagramMap>> {
        self.factorisations_uncached(k, a, d, n)
    }

    fn factorisations_uncached(
        &self,
        k: &DiagramMap,
        a: &Diagram,
        d: &DiagramMap,
        n: &Diagram,
    ) -> Result<Vec<DiagramMap>> {
        self.tick()?;
        let (kz, dz, az, nz) = match (k, d, a, n) {
            (DiagramMap::Point { .. }, DiagramMap::Point { .. }, Diagram::Point(ga), Diagram::Point(gn)) => {
                if !ga.maps_to(gn) {
                    return Ok(vec![]);
                }
                let u = DiagramMap::point(ga.clone(), gn.clone());
                return Ok(match u.compose(d) {
                    Ok(c) if c == *k => vec![u],
                    _ => vec![],
                });
            }
            (DiagramMap::Zigzag(kz), DiagramMap::Zigzag(dz), Diagram::Zigzag(az), Diagram::Zigzag(nz)) => {
                (kz, dz, az, nz)
            }
            _ => return Err(Error::Argument("factorisation arguments disagree in dimension".into())),
        };
        let d_dual = dz.monotone.wraith_dual();
        let mut found = Vec::new();
        for u_mono in Monotone::enumerate(az.singular.len(), nz.singular.len()) {
            if u_mono.compose(&dz.monotone)? != kz.monotone {
                continue;
            }
            let u_dual = u_mono.wraith_dual();
            let mut singular_options = Vec::with_capacity(az.singular.len());
            for j in 0..az.singular.len() {
                let h = u_mono.apply(j);
                singular_options.push(self.factorisations(
                    &kz.singular[j],
                    &az.singular[j],
                    &dz.singular[h],
                    &nz.singular[h],
                )?);
            }
            let mut regular_options = Vec::with_capacity(nz.regular.len());
            for i2 in 0..nz.regular.len() {
                let over: Vec<usize> =
                    (0..kz.regular.len()).filter(|&i| d_dual.apply(i) == i2).collect();
                let Some((&first, rest)) = over.split_first() else {
                    return Err(Error::Argument("factorisation target is not a degeneracy".into()));
                };
                let source = &az.regular[u_dual.apply(i2)];
                let mut options =
                    self.factorisations(&kz.regular[first], source, &dz.regular[first], &nz.regular[i2])?;
                options.retain(|u| {
                    rest.iter()
                        .all(|&i| u.compose(&dz.regular[i]).is_ok_and(|c| c == kz.regular[i]))
                });
                regular_options.push(options);
            }
            if singular_options.iter().chain(&regular_options).any(Vec::is_empty) {
                continue;
            }
            for singular in product(&singular_options) {
                for regular in product(&regular_options) {
                    self.tick()?;
                    let u = DiagramMap::from_parts(u_mono.clone(), regular, singular.clone());
                    if validate_map(&u, a, n).is_ok() && u.compose(d)? == *k {
                        found.push(u);
                    }
                }
            }
        }
        Ok(found)
    }

    fn below(&self, x: &Subobject, y: &Subobject) -> Result<bool> {
        Ok(!self.factorisations(&x.map, &x.source, &y.map, &y.source)?.is_empty())
    }

    /// The least degeneracy through which every leg of the sink factors.
    pub fn normalise(&self, sink: &Sink) -> Result<NormalisationResult> {
        self.check_size(&sink.target)?;
        for leg in &sink.legs {
            self.check_size(&leg.source)?;
        }
        let all = self.enumerate(&sink.target)?;
        let mut admissible = Vec::new();
        for cand in all.iter() {
            let mut factors = Vec::with_capacity(sink.legs.len());
            for leg in &sink.legs {
                match self.factorisations(&leg.map, &leg.source, &cand.map, &cand.source)?.pop() {
                    Some(u) => factors.push(u),
                    None => break,
                }
            }
            if factors.len() == sink.legs.len() {
                admissible.push((cand, factors));
            }
        }
        let mut best = admissible
            .first()
            .ok_or_else(|| Error::Argument("no degeneracy admits the sink; is it valid?".into()))?;
        for cand in &admissible[1..] {
            if self.below(cand.0, best.0)? {
                best = cand;
            }
        }
        for cand in &admissible {
            if !self.below(best.0, cand.0)? {
                return Err(Error::Argument("admissible degeneracies have no least element".into()));
            }
        }
        let (sub, factorisations) = best;
        Ok(NormalisationResult {
            normal_form: sub.source.clone(),
            normaliser: sub.map.clone(),
            factorisations: factorisations.clone(),
            parallel_form: sub.parallel_form.clone(),
            parallel: sub.parallel.clone(),
            simple: sub.simple.clone(),
            kept: sub.kept.clone(),
        })
    }

    /// The greatest degeneracy into `t` lying below both `f: x → t` and `g: y → t`.
    pub fn meet(
        &self,
        t: &Diagram,
        f: (&Diagram, &DiagramMap),
        g: (&Diagram, &DiagramMap),
    ) -> Result<Subobject> {
        self.check_size(t)?;
        let all = self.enumerate(t)?;
        let as_sub = |(source, map): (&Diagram, &DiagramMap)| Subobject {
            source: source.clone(),
            map: map.clone(),
            parallel_form: source.clone(),
            parallel: map.clone(),
            simple: map.clone(),
            kept: Monotone::identity(0),
        };
        let (fs, gs) = (as_sub(f), as_sub(g));
        let mut lower = Vec::new();
        for cand in all.iter() {
            if self.below(cand, &fs)? && self.below(cand, &gs)? {
                lower.push(cand);
            }
        }
        let mut best = *lower
            .first()
            .ok_or_else(|| Error::Argument("no common lower bound".into()))?;
        for cand in &lower[1..] {
            if self.below(best, cand)? {
                best = cand;
            }
        }
        for cand in &lower {
            if !self.below(cand, best)? {
                return Err(Error::Argument("lower bounds have no greatest element".into()));
            }
        }
        Ok(best.clone())
    }
}

pub fn enumerate_degeneracies(t: &Diagram, budget: Budget) -> Result<Vec<Subobject>> {
    Ok(Oracle::new(budget).degeneracies(t)?.as_ref().clone())
}

pub fn oracle_normalise(sink: &Sink, budget: Budget) -> Result<NormalisationResult> {
    Oracle::new(budget).normalise(sink)
}

type LegKey = (usize, usize, usize, bool);

#[derive(Default)]
struct Partial {
    regular: Vec<(usize, Subobject)>,
    memo: RefCell<HashMap<LegKey, Option<DiagramMap>>>,
    singular: Vec<Subobject>,
    forward: Vec<DiagramMap>,
    backward: Vec<DiagramMap>,
}

fn identity_cospan_at(p: &Diagram, h: usize) -> bool {
    let z = p.as_zigzag().expect("zigzag");
    let s = &z.singular[h];
    z.regular[h] == *s
        && z.regular[h + 1] == *s
        && z.forward[h] == DiagramMap::identity(s)
        && z.backward[h] == DiagramMap::identity(s)
}

/// Deletes the identity cospans at `removed`, returning the smaller diagram,
/// its inclusion into `p`, and the retained heights.
fn drop_heights(p: &Diagram, removed: &[usize]) -> (Diagram, DiagramMap, Monotone) {
    let z = p.as_zigzag().expect("zigzag");
    let kept: Vec<usize> = (0..z.singular.len()).filter(|h| !removed.contains(h)).collect();
    let mut regular = vec![z.regular[0].clone()];
    let mut singular = Vec::new();
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for &h in &kept {
        singular.push(z.singular[h].clone());
        forward.push(z.forward[h].clone());
        backward.push(z.backward[h].clone());
        regular.push(z.regular[h + 1].clone());
    }
    let n = Diagram::from_parts(regular, singular, forward, backward);
    let positions = Monotone::new(kept.clone(), z.singular.len()).expect("kept heights increase");
    let map = DiagramMap::from_parts(
        positions.clone(),
        z.regular.iter().map(DiagramMap::identity).collect(),
        kept.iter().map(|&h| DiagramMap::identity(&z.singular[h])).collect(),
    );
    (n, map, positions)
}

/// The cartesian product of the option lists, produced lazily.
fn product(options: &[Vec<DiagramMap>]) -> impl Iterator<Item = Vec<DiagramMap>> + '_ {
    let mut index = vec![0; options.len()];
    let mut done = options.iter().any(Vec::is_empty);
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let item = index.iter().zip(options).map(|(&i, o)| o[i].clone()).collect();
        done = true;
        for (slot, o) in index.iter_mut().zip(options).rev() {
            *slot += 1;
            if *slot < o.len() {
                done = false;
                break;
            }
            *slot = 0;
        }
        Some(item)
    })
}
