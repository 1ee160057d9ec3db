//! Degeneracy maps: identity-cospan insertion, recognition, the
//! simple/parallel factorisation, factoring through a degeneracy, and
//! pullbacks of pairs of degeneracies.

use crate::diagram::{compose_all, Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::ordmaps::Monotone;

/// Evidence that a map is a degeneracy, recording the simple and parallel
/// parts at every level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegeneracyWitness {
    Identity(Diagram),
    Zigzag(Box<ZigzagWitness>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagWitness {
    /// Heights of the target hit by the map.
    pub positions: Monotone,
    /// Source with identity cospans inserted at the omitted heights.
    pub intermediate: Diagram,
    pub simple: DiagramMap,
    pub parallel: DiagramMap,
    pub regular: Vec<DegeneracyWitness>,
    pub singular: Vec<DegeneracyWitness>,
}

/// Inserts identity cospans into `a` at the heights omitted by `positions`.
pub fn insert_identity_cospans(a: &Diagram, positions: &Monotone) -> Result<(Diagram, DiagramMap)> {
    let z = a
        .as_zigzag()
        .ok_or_else(|| Error::Argument("cannot insert cospans into a 0-diagram".into()))?;
    if !positions.is_injective() {
        return Err(Error::Argument(format!("{positions:?} is not injective")));
    }
    if positions.source_size() != z.singular.len() {
        return Err(Error::DimensionMismatch(format!(
            "{positions:?} does not start at the length {} of the diagram",
            z.singular.len()
        )));
    }
    let m = positions.target_size();
    let dual = positions.wraith_dual();
    let regular: Vec<Diagram> = (0..=m).map(|i| z.regular[dual.apply(i)].clone()).collect();
    let mut singular = Vec::with_capacity(m);
    let mut forward = Vec::with_capacity(m);
    let mut backward = Vec::with_capacity(m);
    for (h, r) in regular.iter().enumerate().take(m) {
        match positions.inverse_at(h) {
            Some(j) => {
                singular.push(z.singular[j].clone());
                forward.push(z.forward[j].clone());
                backward.push(z.backward[j].clone());
            }
            None => {
                let id = DiagramMap::identity(r);
                singular.push(r.clone());
                forward.push(id.clone());
                backward.push(id);
            }
        }
    }
    let map = DiagramMap::from_parts(
        positions.clone(),
        regular.iter().map(DiagramMap::identity).collect(),
        z.singular.iter().map(DiagramMap::identity).collect(),
    );
    Ok((Diagram::from_parts(regular, singular, forward, backward), map))
}

/// Splits `f: x → y` as an insertion `x → x'` followed by a map `x' → y`
/// with identity monotone. Meaningful when the monotone of `f` is injective.
fn split(f: &DiagramMap, x: &Diagram, y: &Diagram) -> Result<(Diagram, DiagramMap, DiagramMap)> {
    let fz = f.zz();
    let yz = y.zz();
    let (x1, simple) = insert_identity_cospans(x, &fz.monotone)?;
    let singular = (0..yz.singular.len())
        .map(|h| match fz.monotone.inverse_at(h) {
            Some(j) => Ok(fz.singular[j].clone()),
            None => fz.regular[h].compose(&yz.forward[h]),
        })
        .collect::<Result<Vec<_>>>()?;
    let parallel = DiagramMap::from_parts(
        Monotone::identity(yz.singular.len()),
        fz.regular.clone(),
        singular,
    );
    Ok((x1, simple, parallel))
}

/// Recognises degeneracies `f: x → y`, returning the witness.
pub fn is_degeneracy(f: &DiagramMap, x: &Diagram, y: &Diagram) -> Option<DegeneracyWitness> {
    match (f, x, y) {
        (DiagramMap::Point { source, target }, Diagram::Point(_), Diagram::Point(_)) => {
            (source == target).then(|| DegeneracyWitness::Identity(x.clone()))
        }
        (DiagramMap::Zigzag(fz), Diagram::Zigzag(xz), Diagram::Zigzag(yz)) => {
            if !fz.monotone.is_injective() {
                return None;
            }
            let dual = fz.monotone.wraith_dual();
            let regular = fz
                .regular
                .iter()
                .enumerate()
                .map(|(i, s)| is_degeneracy(s, &xz.regular[dual.apply(i)], &yz.regular[i]))
                .collect::<Option<Vec<_>>>()?;
            let mut singular = Vec::with_capacity(yz.singular.len());
            for h in 0..yz.singular.len() {
                let w = match fz.monotone.inverse_at(h) {
                    Some(j) => is_degeneracy(&fz.singular[j], &xz.singular[j], &yz.singular[h])?,
                    None => {
                        let c = fz.regular[h].compose(&yz.forward[h]).ok()?;
                        is_degeneracy(&c, &xz.regular[dual.apply(h)], &yz.singular[h])?
                    }
                };
                singular.push(w);
            }
            let (intermediate, simple, parallel) = split(f, x, y).ok()?;
            Some(DegeneracyWitness::Zigzag(Box::new(ZigzagWitness {
                positions: fz.monotone.clone(),
                intermediate,
                simple,
                parallel,
                regular,
                singular,
            })))
        }
        _ => None,
    }
}

/// The simple part `x → x'` and parallel part `x' → y` of a witnessed degeneracy.
pub fn factor_simple_parallel(w: &DegeneracyWitness) -> (Diagram, DiagramMap, DiagramMap) {
    match w {
        DegeneracyWitness::Identity(d) => {
            let id = DiagramMap::identity(d);
            (d.clone(), id.clone(), id)
        }
        DegeneracyWitness::Zigzag(z) => (z.intermediate.clone(), z.simple.clone(), z.parallel.clone()),
    }
}

/// The unique `u` with `u ; d = k`, if it exists, for `d` a monomorphism
/// such as a degeneracy.
pub fn factor_through(k: &DiagramMap, d: &DiagramMap) -> Option<DiagramMap> {
    match (k, d) {
        (
            DiagramMap::Point { source, target },
            DiagramMap::Point { source: middle, target: end },
        ) => (target == end && source.maps_to(middle))
            .then(|| DiagramMap::point(source.clone(), middle.clone())),
        (DiagramMap::Zigzag(kz), DiagramMap::Zigzag(dz)) => {
            if kz.monotone.target_size() != dz.monotone.target_size() {
                return None;
            }
            let values = kz
                .monotone
                .values()
                .iter()
                .map(|&v| dz.monotone.inverse_at(v))
                .collect::<Option<Vec<_>>>()?;
            let monotone = Monotone::new(values, dz.monotone.source_size()).ok()?;
            let singular = kz
                .singular
                .iter()
                .enumerate()
                .map(|(j, ks)| factor_through(ks, &dz.singular[monotone.apply(j)]))
                .collect::<Option<Vec<_>>>()?;
            let d_dual = dz.monotone.wraith_dual();
            let mut regular: Vec<Option<DiagramMap>> = vec![None; dz.monotone.source_size() + 1];
            for (i, (kr, dr)) in kz.regular.iter().zip(&dz.regular).enumerate() {
                let u = factor_through(kr, dr)?;
                let slot = &mut regular[d_dual.apply(i)];
                match slot {
                    Some(existing) if *existing != u => return None,
                    Some(_) => {}
                    None => *slot = Some(u),
                }
            }
            let regular = regular.into_iter().collect::<Option<Vec<_>>>()?;
            Some(DiagramMap::from_parts(monotone, regular, singular))
        }
        _ => None,
    }
}

/// Pullback of two degeneracies `f: x → t` and `g: y → t`, returning the
/// apex and both projections.
pub fn pullback_degeneracies(
    f: &DiagramMap,
    x: &Diagram,
    g: &DiagramMap,
    y: &Diagram,
    t: &Diagram,
) -> Result<(Diagram, DiagramMap, DiagramMap)> {
    if is_degeneracy(f, x, t).is_none() || is_degeneracy(g, y, t).is_none() {
        return Err(Error::Argument(
            "pullback inputs must be degeneracies into a common target".into(),
        ));
    }
    pullback(f, x, g, y, t)
}

fn missing_factor(what: &str) -> Error {
    Error::Argument(format!("pullback {what} does not factor; inputs are not degeneracies"))
}

fn pullback(
    f: &DiagramMap,
    x: &Diagram,
    g: &DiagramMap,
    y: &Diagram,
    t: &Diagram,
) -> Result<(Diagram, DiagramMap, DiagramMap)> {
    let tz = match t {
        Diagram::Point(_) => {
            if x != t || y != t {
                return Err(missing_factor("base case"));
            }
            let id = DiagramMap::identity(t);
            return Ok((t.clone(), id.clone(), id));
        }
        Diagram::Zigzag(z) => z,
    };
    let len = tz.singular.len();
    let (x1, fs, fp) = split(f, x, t)?;
    let (y1, gs, gp) = split(g, y, t)?;
    let (x1z, y1z, fpz, gpz) = (x1.zz(), y1.zz(), fp.zz(), gp.zz());

    // Slice-wise pullback of the parallel parts.
    let mut regular = Vec::with_capacity(len + 1);
    let mut ax_r = Vec::with_capacity(len + 1);
    let mut ay_r = Vec::with_capacity(len + 1);
    for i in 0..=len {
        let (p, a, b) = pullback(
            &fpz.regular[i],
            &x1z.regular[i],
            &gpz.regular[i],
            &y1z.regular[i],
            &tz.regular[i],
        )?;
        regular.push(p);
        ax_r.push(a);
        ay_r.push(b);
    }
    let mut singular = Vec::with_capacity(len);
    let mut ax_s = Vec::with_capacity(len);
    let mut ay_s = Vec::with_capacity(len);
    let mut forward = Vec::with_capacity(len);
    let mut backward = Vec::with_capacity(len);
    for h in 0..len {
        let (p, a, b) = pullback(
            &fpz.singular[h],
            &x1z.singular[h],
            &gpz.singular[h],
            &y1z.singular[h],
            &tz.singular[h],
        )?;
        let into_t = a.compose(&fpz.singular[h])?;
        let fwd = compose_all(&[&ax_r[h], &x1z.forward[h], &fpz.singular[h]])?;
        let bwd = compose_all(&[&ax_r[h + 1], &x1z.backward[h], &fpz.singular[h]])?;
        forward.push(factor_through(&fwd, &into_t).ok_or_else(|| missing_factor("forward leg"))?);
        backward.push(factor_through(&bwd, &into_t).ok_or_else(|| missing_factor("backward leg"))?);
        singular.push(p);
        ax_s.push(a);
        ay_s.push(b);
    }
    let wide = Diagram::from_parts(regular, singular, forward, backward);
    let to_x1 = DiagramMap::from_parts(Monotone::identity(len), ax_r, ax_s);
    let to_y1 = DiagramMap::from_parts(Monotone::identity(len), ay_r, ay_s);

    // Restriction to the heights hit by both maps.
    let fm = f.monotone().expect("positive dimension");
    let gm = g.monotone().expect("positive dimension");
    let kept: Vec<usize> = (0..len).filter(|&h| fm.contains(h) && gm.contains(h)).collect();
    let (apex, restrict) = restrict_to_heights(&wide, &kept)?;
    let p = factor_through(&restrict.compose(&to_x1)?, &fs)
        .ok_or_else(|| missing_factor("first projection"))?;
    let q = factor_through(&restrict.compose(&to_y1)?, &gs)
        .ok_or_else(|| missing_factor("second projection"))?;
    Ok((apex, p, q))
}

/// Keeps the singular heights in `kept` and replaces each run of removed
/// heights by the limit of the zigzag segment it spans.
fn restrict_to_heights(wide: &Diagram, kept: &[usize]) -> Result<(Diagram, DiagramMap)> {
    let wz = wide.zz();
    let len = wz.singular.len();
    let m = kept.len();
    let mut regular = Vec::with_capacity(m + 1);
    let mut projections: Vec<Vec<DiagramMap>> = Vec::with_capacity(m + 1);
    let mut bounds = Vec::with_capacity(m + 1);
    for s in 0..=m {
        let lo = if s == 0 { 0 } else { kept[s - 1] + 1 };
        let hi = if s == m { len } else { kept[s] };
        let (apex, projs) = segment_limit(wide, lo, hi)?;
        regular.push(apex);
        projections.push(projs);
        bounds.push(lo);
    }
    let mut forward = Vec::with_capacity(m);
    let mut backward = Vec::with_capacity(m);
    let mut singular = Vec::with_capacity(m);
    for (j, &h) in kept.iter().enumerate() {
        singular.push(wz.singular[h].clone());
        forward.push(projections[j][h - bounds[j]].compose(&wz.forward[h])?);
        backward.push(projections[j + 1][0].compose(&wz.backward[h])?);
    }
    let slices = (0..=len)
        .map(|i| {
            let s = kept.partition_point(|&k| k < i);
            projections[s][i - bounds[s]].clone()
        })
        .collect();
    let monotone = Monotone::from_image(kept.to_vec(), len)?;
    let map = DiagramMap::from_parts(
        monotone,
        slices,
        singular.iter().map(DiagramMap::identity).collect(),
    );
    Ok((Diagram::from_parts(regular, singular, forward, backward), map))
}

/// Limit of `r_lo → s_lo ← r_lo+1 → … ← r_hi`, with projections to each
/// regular slice in order.
fn segment_limit(wide: &Diagram, lo: usize, hi: usize) -> Result<(Diagram, Vec<DiagramMap>)> {
    let wz = wide.zz();
    let mut apex = wz.regular[lo].clone();
    let mut projs = vec![DiagramMap::identity(&apex)];
    for t in lo..hi {
        let left = projs[t - lo].compose(&wz.forward[t])?;
        let (next, u, v) =
            pullback(&left, &apex, &wz.backward[t], &wz.regular[t + 1], &wz.singular[t])?;
        projs = projs
            .iter()
            .map(|p| u.compose(p))
            .collect::<Result<Vec<_>>>()?;
        projs.push(v);
        apex = next;
    }
    Ok((apex, projs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{validate_diagram, validate_map, Generator};

    fn pt(name: &str, dim: usize) -> Diagram {
        Diagram::point(Generator::new(name, dim))
    }

    fn arrow(a: &Diagram, b: &Diagram) -> DiagramMap {
        DiagramMap::point(a.generator().unwrap().clone(), b.generator().unwrap().clone())
    }

    fn word(base: &Diagram, labels: &[&Diagram]) -> Diagram {
        Diagram::from_parts(
            vec![base.clone(); labels.len() + 1],
            labels.iter().map(|d| (*d).clone()).collect(),
            labels.iter().map(|d| arrow(base, d)).collect(),
            labels.iter().map(|d| arrow(base, d)).collect(),
        )
    }

    #[test]
    fn insertion_of_unit() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let x = word(&a, &[&f]);
        let (y, map) = insert_identity_cospans(&x, &Monotone::face(1, 1).unwrap()).unwrap();
        assert_eq!(y, word(&a, &[&f, &a]));
        validate_map(&map, &x, &y).unwrap();
        assert!(is_degeneracy(&map, &x, &y).is_some());
        let (same, id) = insert_identity_cospans(&x, &Monotone::identity(1)).unwrap();
        assert_eq!(same, x);
        assert_eq!(id, DiagramMap::identity(&x));
        assert!(insert_identity_cospans(&x, &Monotone::new(vec![0], 1).unwrap()).is_ok());
        assert!(insert_identity_cospans(&word(&a, &[&f, &f]), &Monotone::new(vec![0, 0], 1).unwrap()).is_err());
    }

    #[test]
    fn double_insertion_is_composite() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let x = word(&a, &[&f]);
        let (y1, m1) = insert_identity_cospans(&x, &Monotone::face(0, 1).unwrap()).unwrap();
        let (y2, m2) = insert_identity_cospans(&y1, &Monotone::face(2, 2).unwrap()).unwrap();
        let (y, m) = insert_identity_cospans(&x, &Monotone::new(vec![1], 3).unwrap()).unwrap();
        assert_eq!(y, y2);
        assert_eq!(m, m1.compose(&m2).unwrap());
        validate_diagram(&y).unwrap();
    }

    #[test]
    fn raising_dimension_is_not_a_degeneracy() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let x = word(&a, &[&a]);
        let y = word(&a, &[&f]);
        let raise = DiagramMap::from_parts(
            Monotone::identity(1),
            vec![arrow(&a, &a); 2],
            vec![arrow(&a, &f)],
        );
        validate_map(&raise, &x, &y).unwrap();
        assert!(is_degeneracy(&raise, &x, &y).is_none());
    }

    #[test]
    fn factor_recovers_insertion() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let x = word(&a, &[&f]);
        let (y, ins) = insert_identity_cospans(&x, &Monotone::face(1, 1).unwrap()).unwrap();
        let w = is_degeneracy(&ins, &x, &y).unwrap();
        let (mid, s, p) = factor_simple_parallel(&w);
        assert_eq!(mid, y);
        assert_eq!(s, ins);
        assert!(p.is_identity());
        assert_eq!(factor_through(&ins, &ins).unwrap(), DiagramMap::identity(&x));
        assert!(factor_through(&DiagramMap::identity(&y), &ins).is_none());
    }

    #[test]
    fn pullback_of_two_insertions() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let x = word(&a, &[&f]);
        let (t, _) = insert_identity_cospans(&x, &Monotone::new(vec![0], 3).unwrap()).unwrap();
        let (left, i1) = insert_identity_cospans(&word(&a, &[&f, &a]), &Monotone::face(1, 2).unwrap()).unwrap();
        assert_eq!(left, t);
        let xl = word(&a, &[&f, &a]);
        let xr = word(&a, &[&f, &a]);
        let (_, i2) = insert_identity_cospans(&xr, &Monotone::face(2, 2).unwrap()).unwrap();
        let (p, u, v) = pullback_degeneracies(&i1, &xl, &i2, &xr, &t).unwrap();
        assert_eq!(p, x);
        validate_map(&u, &p, &xl).unwrap();
        validate_map(&v, &p, &xr).unwrap();
        assert_eq!(u.compose(&i1).unwrap(), v.compose(&i2).unwrap());
        assert!(is_degeneracy(&u, &p, &xl).is_some());
    }

    #[test]
    fn pullback_along_identity() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let x = word(&a, &[&f]);
        let (t, ins) = insert_identity_cospans(&x, &Monotone::face(0, 1).unwrap()).unwrap();
        let id = DiagramMap::identity(&t);
        let (p, u, v) = pullback_degeneracies(&id, &t, &ins, &x, &t).unwrap();
        assert_eq!(p, x);
        assert_eq!(u, ins);
        assert!(v.is_identity());
        let (p, u, v) = pullback_degeneracies(&ins, &x, &ins, &x, &t).unwrap();
        assert_eq!(p, x);
        assert!(u.is_identity() && v.is_identity());
    }
}
