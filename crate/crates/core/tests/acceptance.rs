//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zignorm::corpus::{Corpus, Limits};
use zignorm::degeneracy::{
    factor_simple_parallel, factor_through, insert_identity_cospans, is_degeneracy, pullback_degeneracies,
};
use zignorm::diagram::{validate_diagram, validate_map};
use zignorm::fixtures;
use zignorm::globular::{is_globular_map, is_globular_object, NormalisingCheck};
use zignorm::oracle::{oracle_normalise, Budget, Oracle};
use zignorm::typecheck::{extract_piece, singular_content, typecheck};
use zignorm::{normalise, normalise_relative, Error, Leg, Monotone, Sink};

const SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 600;
const REQUIRED_COMPARISONS: usize = 500;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: zignorm::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn fastest<T>(runs: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut out = None;
    for _ in 0..runs {
        let start = Instant::now();
        let v = f();
        best = best.min(start.elapsed());
        out = Some(v);
    }
    (out.expect("at least one run"), best)
}

fn corpus() -> Vec<Sink> {
    let mut c = Corpus::new(SEED, Limits::default());
    (0..CORPUS_SIZE).map(|i| c.sink(1 + i % 3)).collect()
}

fn unit_removal() -> Outcome {
    let (t, expected) = fixtures::unit_word();
    let (r, time) = fastest(20, || normalise(&t));
    let r = ok(r, "normalise")?;
    ensure(r.normal_form == expected, || format!("normal form {:?}", r.normal_form))?;
    let (_, insertion) = ok(insert_identity_cospans(&expected, &Monotone::face(1, 1).unwrap()), "insert")?;
    ensure(r.normaliser == insertion, || "normaliser is not the single insertion".into())?;
    ensure(time < Duration::from_millis(1), || format!("took {time:?}"))?;
    Ok(format!("f·id normalises to f in {time:?}"))
}

fn essential_identity() -> Outcome {
    let e = fixtures::essential_identity();
    let r = ok(normalise_relative(&e.sink()), "relative")?;
    ensure(r.normaliser.is_identity() && r.normal_form == e.m, || "relative normaliser is not the identity".into())?;
    let abs = ok(normalise(&e.m), "absolute")?;
    ensure(abs.normal_form.is_empty(), || format!("absolute normal form has length {}", abs.normal_form.len()))?;
    let o = ok(oracle_normalise(&e.sink(), Budget::default()), "oracle")?;
    ensure(o.normaliser.is_identity(), || "oracle disagrees".into())?;
    Ok("relative normaliser is the identity; absolute normal form has length 0".into())
}

fn walkthrough() -> Outcome {
    let w = fixtures::collapse_walkthrough();
    let r = ok(normalise_relative(&w.sink()), "normalise")?;
    ensure(r.kept.values() == [0, 2], || format!("kept heights {:?}", r.kept))?;
    ensure(r.normal_form.len() == 2, || format!("normal form length {}", r.normal_form.len()))?;
    let composite = ok(r.simple.compose(&r.parallel), "compose")?;
    ensure(composite == r.normaliser, || "normaliser differs from d_P after d_S".into())?;
    let (_, simple) = ok(insert_identity_cospans(&r.normal_form, &r.kept), "insert")?;
    ensure(simple == r.simple, || "simple part is not the identity-cospan insertion".into())?;
    Ok("height 1 omitted, heights 0 and 2 retained, normaliser = d_P ∘ d_S".into())
}

fn oracle_equivalence(sinks: &[Sink]) -> Outcome {
    let start = Instant::now();
    let (mut agree, mut skipped) = (0, 0);
    for (i, s) in sinks.iter().enumerate() {
        let a = ok(normalise_relative(s), &format!("sink {i}"))?;
        match oracle_normalise(s, Budget::default()) {
            Ok(o) => {
                ensure(
                    o.normal_form == a.normal_form
                        && o.normaliser == a.normaliser
                        && o.factorisations == a.factorisations,
                    || format!("sink {i}: oracle and algorithm disagree"),
                )?;
                agree += 1;
            }
            Err(Error::Budget(_)) => skipped += 1,
            Err(e) => return Err(format!("sink {i}: oracle failed: {e}")),
        }
    }
    let time = start.elapsed();
    ensure(agree >= REQUIRED_COMPARISONS, || format!("only {agree} sinks within the oracle budget"))?;
    ensure(time < Duration::from_secs(300), || format!("took {time:?}"))?;
    Ok(format!(
        "{agree}/{agree} compared sinks agree ({skipped} of {} skipped over the oracle budget) in {:.1?}",
        sinks.len(),
        time
    ))
}

fn idempotence(sinks: &[Sink]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut insertions = 0;
    for (i, s) in sinks.iter().enumerate() {
        let r = ok(normalise_relative(s), &format!("sink {i}"))?;
        let again = Sink {
            target: r.normal_form.clone(),
            legs: s
                .legs
                .iter()
                .zip(&r.factorisations)
                .map(|(l, u)| Leg { source: l.source.clone(), map: u.clone() })
                .collect(),
        };
        let r2 = ok(normalise_relative(&again), &format!("sink {i} again"))?;
        ensure(r2.normaliser.is_identity(), || format!("sink {i}: normal form is not relatively normal"))?;
        let abs = ok(normalise(&s.target), "absolute")?;
        let abs2 = ok(normalise(&abs.normal_form), "absolute again")?;
        ensure(abs2.normaliser.is_identity(), || format!("sink {i}: absolute normal form is not normal"))?;

        let len = s.target.len();
        let extra = rng.gen_range(1..=2);
        let mut image: Vec<usize> = (0..len + extra).collect();
        for _ in 0..extra {
            image.remove(rng.gen_range(0..image.len()));
        }
        let mu = Monotone::from_image(image, len + extra).unwrap();
        let (padded, _) = ok(insert_identity_cospans(&s.target, &mu), "insert")?;
        let padded_nf = ok(normalise(&padded), "padded")?.normal_form;
        ensure(padded_nf == abs.normal_form, || format!("sink {i}: insertion changed the normal form"))?;
        insertions += 1;
    }
    Ok(format!("{} sinks idempotent, {insertions} random insertions invariant", sinks.len()))
}

fn degeneracy_laws(sinks: &[Sink]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let budget = Budget { max_degeneracies: 48, ..Budget::default() };
    let (mut targets, mut subobjects, mut triangles, mut pullbacks) = (0, 0, 0, 0);
    for (i, s) in sinks.iter().enumerate() {
        let oracle = Oracle::new(budget);
        let all = match oracle.degeneracies(&s.target) {
            Ok(all) => all,
            Err(Error::Budget(_)) => continue,
            Err(e) => return Err(format!("sink {i}: {e}")),
        };
        targets += 1;
        for d in all.iter() {
            let w = is_degeneracy(&d.map, &d.source, &s.target)
                .ok_or_else(|| format!("sink {i}: enumerated map is not recognised"))?;
            let (_, simple, parallel) = factor_simple_parallel(&w);
            ensure(ok(simple.compose(&parallel), "compose")? == d.map, || format!("sink {i}: factor/recompose"))?;
            subobjects += 1;
        }
        for _ in 0..12.min(all.len() * all.len()) {
            let d = &all[rng.gen_range(0..all.len())];
            let e = &all[rng.gen_range(0..all.len())];
            let found = ok(oracle.factorisations(&d.map, &d.source, &e.map, &e.source), "search")?;
            ensure(found.len() <= 1, || format!("sink {i}: {} factorisations through a degeneracy", found.len()))?;
            if let Some(u) = factor_through(&d.map, &e.map) {
                ensure(found == [u.clone()], || format!("sink {i}: cancellation disagrees with search"))?;
                ensure(ok(u.compose(&e.map), "compose")? == d.map, || format!("sink {i}: triangle does not commute"))?;
                ensure(is_degeneracy(&u, &d.source, &e.source).is_some(), || {
                    format!("sink {i}: triangle factor is not a degeneracy")
                })?;
                triangles += 1;
            } else {
                ensure(found.is_empty(), || format!("sink {i}: factor_through missed a factorisation"))?;
            }
            let (p, pd, pe) = ok(
                pullback_degeneracies(&d.map, &d.source, &e.map, &e.source, &s.target),
                &format!("sink {i}: pullback"),
            )?;
            let via_d = ok(pd.compose(&d.map), "compose")?;
            ensure(via_d == ok(pe.compose(&e.map), "compose")?, || format!("sink {i}: pullback square"))?;
            ensure(
                is_degeneracy(&pd, &p, &d.source).is_some() && is_degeneracy(&pe, &p, &e.source).is_some(),
                || format!("sink {i}: pullback projections are not degeneracies"),
            )?;
            let meet = ok(oracle.meet(&s.target, (&d.source, &d.map), (&e.source, &e.map)), "meet")?;
            ensure(meet.source == p && meet.map == via_d, || format!("sink {i}: pullback differs from the meet"))?;
            pullbacks += 1;
        }
    }
    ensure(targets >= REQUIRED_COMPARISONS / 2, || format!("only {targets} targets enumerated"))?;
    Ok(format!(
        "{subobjects} degeneracies over {targets} targets recomposed; {triangles} triangles, {pullbacks} pullbacks checked"
    ))
}

fn globularity(sinks: &[Sink]) -> Outcome {
    let mut check = NormalisingCheck::new();
    let (mut absolute, mut relative, mut filled) = (0, 0, 0);
    for (i, s) in sinks.iter().enumerate() {
        if !is_globular_object(&s.target) {
            continue;
        }
        let abs = ok(normalise(&s.target), "absolute")?;
        ensure(is_globular_object(&abs.normal_form), || format!("sink {i}: normal form is not globular"))?;
        absolute += 1;
        let mut regular = true;
        for l in &s.legs {
            regular &= ok(check.is_regularly_normalising(&l.map, &l.source, &s.target), "check")?;
        }
        if !regular {
            continue;
        }
        let r = ok(normalise_relative(s), "relative")?;
        ensure(is_globular_object(&r.normal_form), || format!("sink {i}: relative normal form is not globular"))?;
        ensure(r.factorisations.iter().all(is_globular_map), || format!("sink {i}: factorisation is not globular"))?;
        let d_regular = ok(check.is_regularly_normalising(&r.normaliser, &r.normal_form, &s.target), "check")?;
        ensure(d_regular, || format!("sink {i}: normaliser is not regularly normalising"))?;
        for u in &r.factorisations {
            if let Some(z) = u.as_zigzag() {
                ensure(z.regular.iter().all(|m| m.is_identity()), || format!("sink {i}: regular slice not filled"))?;
                filled += 1;
            }
        }
        relative += 1;
    }
    for d in [fixtures::eckmann_hilton().diagram, fixtures::syllepsis().diagram, fixtures::ten_cell_surface()] {
        ensure(is_globular_object(&d), || "fixture is not globular".into())?;
        ensure(is_globular_object(&ok(normalise(&d), "fixture")?.normal_form), || "fixture normal form".into())?;
        absolute += 1;
    }
    ensure(relative > 0 && filled > 0, || "no regularly normalising sinks in the corpus".into())?;
    Ok(format!(
        "{absolute} globular diagrams stay globular; {relative} regularly normalising sinks, {filled} identity fills"
    ))
}

fn eckmann_hilton() -> Outcome {
    let eh = fixtures::eckmann_hilton();
    let (address, x) = singular_content(&eh.diagram)
        .into_iter()
        .find(|(_, g)| &*g.name == "x")
        .ok_or("no x in the content")?;
    let ((verdict, piece), time) = fastest(3, || {
        (typecheck(&eh.diagram, &eh.signature), extract_piece(&eh.diagram, &address))
    });
    let verdict = ok(verdict, "typecheck")?;
    ensure(verdict.is_accept(), || format!("{verdict:?}"))?;
    let piece = ok(piece, "piece")?;
    validate_diagram(&piece).map_err(|e| e.to_string())?;
    let normal = ok(normalise(&piece), "normalise piece")?.normal_form;
    let typing = eh.signature.padded_typing(&x, 3).ok_or("no typing")?;
    ensure(normal == typing, || "x piece does not normalise to the x typing diagram".into())?;
    ensure(time < Duration::from_secs(1), || format!("took {time:?}"))?;
    Ok(format!("accepted in {time:?}; x piece normalises to the typing of x"))
}

fn syllepsis() -> Outcome {
    let s = fixtures::syllepsis();
    let start = Instant::now();
    let verdict = ok(typecheck(&s.diagram, &s.signature), "typecheck")?;
    let time = start.elapsed();
    ensure(verdict.is_accept(), || format!("{verdict:?}"))?;
    ensure(time < Duration::from_secs(600), || format!("took {time:?}"))?;
    Ok(format!("5-diagram accepted in {time:?}"))
}

fn content_counts() -> Outcome {
    let surface = singular_content(&fixtures::ten_cell_surface()).len();
    let eh = singular_content(&fixtures::eckmann_hilton().diagram).len();
    ensure(surface == 10 && eh == 2, || format!("surface {surface}, Eckmann–Hilton {eh}"))?;
    Ok("surface 10, Eckmann–Hilton 2".into())
}

fn check_corpus(sinks: &[Sink]) -> Result<(), String> {
    for (i, s) in sinks.iter().enumerate() {
        s.validate().map_err(|e| format!("sink {i}: {e}"))?;
        for l in &s.legs {
            validate_map(&l.map, &l.source, &s.target).map_err(|e| format!("sink {i}: {e}"))?;
        }
    }
    Ok(())
}

fn run(n: usize, f: impl FnOnce() -> Outcome) -> bool {
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    match result {
        Ok(detail) => {
            println!("criterion {n}: PASS: {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {n}: FAIL: {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let sinks = corpus();
    if let Err(e) = check_corpus(&sinks) {
        println!("corpus: FAIL: {e}");
        return ExitCode::FAILURE;
    }
    let results = [
        run(1, unit_removal),
        run(2, essential_identity),
        run(3, walkthrough),
        run(4, || oracle_equivalence(&sinks)),
        run(5, || idempotence(&sinks)),
        run(6, || degeneracy_laws(&sinks)),
        run(7, || globularity(&sinks)),
        run(8, eckmann_hilton),
        run(9, syllepsis),
        run(10, content_counts),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
