//! Relative and absolute normalisation.
//!
//! Normalising a sink `(T, f_i: A_i → T)` produces the smallest degeneracy
//! `d: N → T` through which every leg factors, together with the
//! factorisations `g_i: A_i → N`.

use crate::diagram::{Diagram, DiagramMap, Sink};
use crate::error::{Error, Result};
use crate::ordmaps::Monotone;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalisationResult {
    pub normal_form: Diagram,
    /// The degeneracy `N → T`, equal to `simple ; parallel`.
    pub normaliser: DiagramMap,
    /// One map `A_i → N` per sink leg.
    pub factorisations: Vec<DiagramMap>,
    /// The intermediate diagram `P` whose slices are normalised.
    pub parallel_form: Diagram,
    /// The parallel part `P → T`.
    pub parallel: DiagramMap,
    /// The identity-cospan insertion `N → P`.
    pub simple: DiagramMap,
    /// Heights of `P` retained in `N`.
    pub kept: Monotone,
}

/// Normal form of `t` relative to the empty sink.
pub fn normalise(t: &Diagram) -> Result<NormalisationResult> {
    run(t, &[])
}

pub fn normalise_relative(sink: &Sink) -> Result<NormalisationResult> {
    let dim = sink.target.dim();
    for (i, leg) in sink.legs.iter().enumerate() {
        if leg.map.dim() != dim || leg.source.dim() != dim {
            return Err(Error::Argument(format!("leg {i} has the wrong dimension")));
        }
        if let (Some(m), Some(z)) = (leg.map.monotone(), sink.target.as_zigzag()) {
            if m.target_size() != z.singular.len() || m.source_size() != leg.source.len() {
                return Err(Error::Argument(format!("leg {i} does not match its endpoints")));
            }
        }
    }
    let legs: Vec<DiagramMap> = sink.legs.iter().map(|l| l.map.clone()).collect();
    run(&sink.target, &legs)
}

/// Normalises the sink of `legs` into `target`; legs are assumed valid.
pub(crate) fn run(target: &Diagram, legs: &[DiagramMap]) -> Result<NormalisationResult> {
    let tz = match target {
        Diagram::Point(_) => {
            let id = DiagramMap::identity(target);
            return Ok(NormalisationResult {
                normal_form: target.clone(),
                normaliser: id.clone(),
                factorisations: legs.to_vec(),
                parallel_form: target.clone(),
                parallel: id.clone(),
                simple: id,
                kept: Monotone::identity(0),
            });
        }
        Diagram::Zigzag(z) => z,
    };
    let len = tz.singular.len();
    let leg_maps: Vec<_> = legs.iter().map(DiagramMap::zz).collect();

    let regular = (0..=len)
        .map(|h| {
            let sub: Vec<DiagramMap> = leg_maps.iter().map(|f| f.regular[h].clone()).collect();
            run(&tz.regular[h], &sub)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut singular = Vec::with_capacity(len);
    let mut incoming: Vec<Vec<DiagramMap>> = legs
        .iter()
        .map(|f| Vec::with_capacity(f.zz().singular.len()))
        .collect();
    for h in 0..len {
        let mut sub = vec![
            regular[h].normaliser.compose(&tz.forward[h])?,
            regular[h + 1].normaliser.compose(&tz.backward[h])?,
        ];
        let mut owners = Vec::new();
        for (i, f) in leg_maps.iter().enumerate() {
            for t in f.monotone.preimage(h)? {
                sub.push(f.singular[t].clone());
                owners.push(i);
            }
        }
        let res = run(&tz.singular[h], &sub)?;
        for (k, &i) in owners.iter().enumerate() {
            incoming[i].push(res.factorisations[2 + k].clone());
        }
        singular.push(res);
    }

    let p = Diagram::from_parts(
        regular.iter().map(|r| r.normal_form.clone()).collect(),
        singular.iter().map(|s| s.normal_form.clone()).collect(),
        singular.iter().map(|s| s.factorisations[0].clone()).collect(),
        singular.iter().map(|s| s.factorisations[1].clone()).collect(),
    );
    let parallel = DiagramMap::from_parts(
        Monotone::identity(len),
        regular.iter().map(|r| r.normaliser.clone()).collect(),
        singular.iter().map(|s| s.normaliser.clone()).collect(),
    );
    let into_p: Vec<DiagramMap> = leg_maps
        .iter()
        .zip(incoming)
        .enumerate()
        .map(|(i, (f, sing))| {
            DiagramMap::from_parts(
                f.monotone.clone(),
                regular.iter().map(|r| r.factorisations[i].clone()).collect(),
                sing,
            )
        })
        .collect();

    let pz = p.zz();
    let kept: Vec<usize> = (0..len)
        .filter(|&h| {
            let hit = leg_maps.iter().any(|f| f.monotone.contains(h));
            hit || !is_identity_cospan(&p, h)
        })
        .collect();
    let mu = Monotone::from_image(kept.clone(), len)?;
    let lows: Vec<usize> = (0..=kept.len())
        .map(|s| if s == 0 { 0 } else { kept[s - 1] + 1 })
        .collect();
    let normal_form = Diagram::from_parts(
        lows.iter().map(|&i| pz.regular[i].clone()).collect(),
        kept.iter().map(|&h| pz.singular[h].clone()).collect(),
        kept.iter().map(|&h| pz.forward[h].clone()).collect(),
        kept.iter().map(|&h| pz.backward[h].clone()).collect(),
    );
    let simple = DiagramMap::from_parts(
        mu.clone(),
        pz.regular.iter().map(DiagramMap::identity).collect(),
        normal_form.zz().singular.iter().map(DiagramMap::identity).collect(),
    );
    let factorisations = into_p
        .iter()
        .map(|a| {
            let az = a.zz();
            let values = az
                .monotone
                .values()
                .iter()
                .map(|&v| mu.inverse_at(v).expect("legs only hit kept heights"))
                .collect();
            DiagramMap::from_parts(
                Monotone::new_unchecked(values, kept.len()),
                lows.iter().map(|&i| az.regular[i].clone()).collect(),
                az.singular.clone(),
            )
        })
        .collect();
    let normaliser = simple.compose(&parallel)?;
    Ok(NormalisationResult {
        normal_form,
        normaliser,
        factorisations,
        parallel_form: p,
        parallel,
        simple,
        kept: mu,
    })
}

/// Whether the cospan at height `h` is `r = s = r'` with identity legs.
pub fn is_identity_cospan(d: &Diagram, h: usize) -> bool {
    let z = d.zz();
    z.forward[h].is_identity()
        && z.backward[h].is_identity()
        && z.regular[h] == z.singular[h]
        && z.regular[h + 1] == z.singular[h]
}
