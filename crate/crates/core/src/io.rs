//! JSON encoding of diagrams, maps, sinks, signatures and results.
//!
//! Encodings are canonical: object keys are sorted and there are no floats,
//! so structurally equal values encode to identical text. 0-maps refer to
//! generators by name; names are resolved against the generators occurring
//! in the diagrams of the same document.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::diagram::{validate_diagram, validate_map, Diagram, DiagramMap, Generator, Leg, Sink};
use crate::error::{Error, Result};
use crate::normalise::NormalisationResult;
use crate::ordmaps::Monotone;
use crate::typecheck::{Signature, Verdict};

pub const FORMAT: &str = "zignorm/1";

pub fn diagram_to_json(d: &Diagram) -> Value {
    match d {
        Diagram::Point(g) => json!({
            "dim": 0,
            "generator": { "name": &*g.name, "dimension": g.dimension },
        }),
        Diagram::Zigzag(z) => json!({
            "dim": d.dim(),
            "regular": z.regular.iter().map(diagram_to_json).collect::<Vec<_>>(),
            "singular": z.singular.iter().map(diagram_to_json).collect::<Vec<_>>(),
            "forward": z.forward.iter().map(map_to_json).collect::<Vec<_>>(),
            "backward": z.backward.iter().map(map_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn map_to_json(f: &DiagramMap) -> Value {
    match f {
        DiagramMap::Point { source, target } => json!({
            "dim": 0,
            "source": &*source.name,
            "target": &*target.name,
        }),
        DiagramMap::Zigzag(m) => json!({
            "dim": f.dim(),
            "monotone": m.monotone.values(),
            "regular_slices": m.regular.iter().map(map_to_json).collect::<Vec<_>>(),
            "singular_slices": m.singular.iter().map(map_to_json).collect::<Vec<_>>(),
        }),
    }
}

fn document(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("format".into(), Value::from(FORMAT));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    Value::Object(map)
}

pub fn diagram_document(d: &Diagram) -> Value {
    let mut v = diagram_to_json(d);
    v.as_object_mut()
        .expect("object")
        .insert("format".into(), Value::from(FORMAT));
    v
}

pub fn leg_document(leg: &Leg) -> Value {
    document(vec![("source", diagram_to_json(&leg.source)), ("map", map_to_json(&leg.map))])
}

pub fn sink_document(sink: &Sink) -> Value {
    let legs = sink
        .legs
        .iter()
        .map(|l| json!({ "source": diagram_to_json(&l.source), "map": map_to_json(&l.map) }))
        .collect::<Vec<_>>();
    document(vec![("target", diagram_to_json(&sink.target)), ("legs", Value::Array(legs))])
}

pub fn result_document(r: &NormalisationResult) -> Value {
    document(vec![
        ("normal_form", diagram_to_json(&r.normal_form)),
        ("normaliser", map_to_json(&r.normaliser)),
        ("factorisations", Value::Array(r.factorisations.iter().map(map_to_json).collect())),
    ])
}

pub fn signature_document(sig: &Signature) -> Value {
    let gens = sig
        .iter()
        .map(|(g, d)| {
            json!({ "name": &*g.name, "dimension": g.dimension, "diagram": diagram_to_json(d) })
        })
        .collect::<Vec<_>>();
    document(vec![("generators", Value::Array(gens))])
}

pub fn verdict_document(v: &Verdict) -> Value {
    match v {
        Verdict::Accept => document(vec![("verdict", Value::from("accept"))]),
        Verdict::Reject { address, generator, reason } => document(vec![
            ("verdict", Value::from("reject")),
            ("address", json!(address)),
            ("generator", Value::from(&*generator.name)),
            ("reason", Value::from(reason.as_str())),
        ]),
    }
}

/// Canonical text: pretty-printed, sorted keys, trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn parse_error(path: &str, message: impl Into<String>) -> Error {
    Error::Parse { path: if path.is_empty() { "/".into() } else { path.into() }, message: message.into() }
}

pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_error("", e.to_string()))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| parse_error(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| parse_error(path, format!("missing field \"{key}\"")))
}

fn uint(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_error(path, "expected a non-negative integer"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_error(path, "expected a string"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_error(path, "expected an array"))
}

fn check_format(v: &Value) -> Result<()> {
    let f = string(field(v, "format", "")?, "/format")?;
    if f != FORMAT {
        return Err(parse_error("/format", format!("unsupported format \"{f}\"")));
    }
    Ok(())
}

/// Generators by name, gathered from every diagram in a document.
#[derive(Default, Debug, Clone)]
pub struct GeneratorTable {
    by_name: BTreeMap<String, Generator>,
}

impl GeneratorTable {
    pub fn add(&mut self, g: &Generator, path: &str) -> Result<()> {
        match self.by_name.get(&*g.name) {
            Some(existing) if existing != g => Err(parse_error(
                path,
                format!("generator \"{}\" used with dimensions {} and {}", g.name, existing.dimension, g.dimension),
            )),
            Some(_) => Ok(()),
            None => {
                self.by_name.insert(g.name.to_string(), g.clone());
                Ok(())
            }
        }
    }

    fn resolve(&self, name: &str, path: &str) -> Result<Generator> {
        self.by_name
            .get(name)
            .cloned()
            .ok_or_else(|| parse_error(path, format!("unknown generator \"{name}\"")))
    }
}

fn decode_list<T>(
    v: &Value,
    path: &str,
    mut each: impl FnMut(&Value, &str) -> Result<T>,
) -> Result<Vec<T>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| each(x, &format!("{path}/{i}")))
        .collect()
}

/// Decodes a diagram, registering its generators in `table`.
pub fn diagram_from_json(v: &Value, path: &str, table: &mut GeneratorTable) -> Result<Diagram> {
    let dim = uint(field(v, "dim", path)?, &format!("{path}/dim"))?;
    if dim == 0 {
        let gp = format!("{path}/generator");
        let g = field(v, "generator", path)?;
        let name = string(field(g, "name", &gp)?, &format!("{gp}/name"))?;
        if name.is_empty() {
            return Err(parse_error(&format!("{gp}/name"), "empty generator name"));
        }
        let dimension = uint(field(g, "dimension", &gp)?, &format!("{gp}/dimension"))?;
        let g = Generator::new(name, dimension);
        table.add(&g, &gp)?;
        return Ok(Diagram::point(g));
    }
    let sub = |key: &str, table: &mut GeneratorTable| -> Result<Vec<Diagram>> {
        let p = format!("{path}/{key}");
        let items = decode_list(field(v, key, path)?, &p, |x, xp| diagram_from_json(x, xp, table))?;
        if let Some((i, _)) = items.iter().enumerate().find(|(_, d)| d.dim() + 1 != dim) {
            return Err(parse_error(&format!("{p}/{i}"), format!("expected dimension {}", dim - 1)));
        }
        Ok(items)
    };
    let regular = sub("regular", table)?;
    let singular = sub("singular", table)?;
    let forward = decode_list(field(v, "forward", path)?, &format!("{path}/forward"), |x, xp| {
        map_from_json(x, xp, table)
    })?;
    let backward = decode_list(field(v, "backward", path)?, &format!("{path}/backward"), |x, xp| {
        map_from_json(x, xp, table)
    })?;
    Diagram::zigzag(regular, singular, forward, backward).map_err(|e| parse_error(path, e.to_string()))
}

/// Decodes a map whose 0-level endpoints are named in `table`.
pub fn map_from_json(v: &Value, path: &str, table: &GeneratorTable) -> Result<DiagramMap> {
    let dim = uint(field(v, "dim", path)?, &format!("{path}/dim"))?;
    if dim == 0 {
        let source = table.resolve(string(field(v, "source", path)?, &format!("{path}/source"))?, path)?;
        let target = table.resolve(string(field(v, "target", path)?, &format!("{path}/target"))?, path)?;
        return Ok(DiagramMap::point(source, target));
    }
    let regular = decode_list(field(v, "regular_slices", path)?, &format!("{path}/regular_slices"), |x, xp| {
        map_from_json(x, xp, table)
    })?;
    let singular = decode_list(field(v, "singular_slices", path)?, &format!("{path}/singular_slices"), |x, xp| {
        map_from_json(x, xp, table)
    })?;
    if regular.is_empty() {
        return Err(parse_error(&format!("{path}/regular_slices"), "a map needs at least one regular slice"));
    }
    if regular.iter().chain(&singular).any(|m| m.dim() + 1 != dim) {
        return Err(parse_error(path, format!("slices must have dimension {}", dim - 1)));
    }
    let values = decode_list(field(v, "monotone", path)?, &format!("{path}/monotone"), uint)?;
    let monotone = Monotone::new(values, regular.len() - 1)
        .map_err(|e| parse_error(&format!("{path}/monotone"), e.to_string()))?;
    DiagramMap::zigzag(monotone, regular, singular).map_err(|e| parse_error(path, e.to_string()))
}

fn validated(d: Diagram) -> Result<Diagram> {
    validate_diagram(&d)?;
    Ok(d)
}

pub fn read_diagram(text: &str) -> Result<Diagram> {
    let v = parse_text(text)?;
    check_format(&v)?;
    validated(diagram_from_json(&v, "", &mut GeneratorTable::default())?)
}

/// Reads a leg document into `target`, registering names from both ends.
pub fn read_leg(text: &str, target: &Diagram) -> Result<Leg> {
    let v = parse_text(text)?;
    check_format(&v)?;
    let mut table = GeneratorTable::default();
    for g in target.generators() {
        table.add(&g, "")?;
    }
    let source = validated(diagram_from_json(field(&v, "source", "")?, "/source", &mut table)?)?;
    let map = map_from_json(field(&v, "map", "")?, "/map", &table)?;
    validate_map(&map, &source, target)?;
    Ok(Leg { source, map })
}

pub fn read_sink(text: &str) -> Result<Sink> {
    let v = parse_text(text)?;
    check_format(&v)?;
    let mut table = GeneratorTable::default();
    let target = diagram_from_json(field(&v, "target", "")?, "/target", &mut table)?;
    let legs = decode_list(field(&v, "legs", "")?, "/legs", |x, xp| {
        let source = diagram_from_json(field(x, "source", xp)?, &format!("{xp}/source"), &mut table)?;
        let map = map_from_json(field(x, "map", xp)?, &format!("{xp}/map"), &table)?;
        Ok(Leg { source, map })
    })?;
    let sink = Sink { target, legs };
    sink.validate()?;
    Ok(sink)
}

pub fn read_signature(text: &str) -> Result<Signature> {
    let v = parse_text(text)?;
    check_format(&v)?;
    let mut sig = Signature::new();
    let gens = array(field(&v, "generators", "")?, "/generators")?;
    for (i, entry) in gens.iter().enumerate() {
        let p = format!("/generators/{i}");
        let name = string(field(entry, "name", &p)?, &format!("{p}/name"))?;
        let dimension = uint(field(entry, "dimension", &p)?, &format!("{p}/dimension"))?;
        let diagram = validated(diagram_from_json(
            field(entry, "diagram", &p)?,
            &format!("{p}/diagram"),
            &mut GeneratorTable::default(),
        )?)?;
        sig.insert(Generator::new(name, dimension), diagram)?;
    }
    Ok(sig)
}

pub struct ResultDocument {
    pub normal_form: Diagram,
    pub normaliser: DiagramMap,
    pub factorisations: Vec<DiagramMap>,
}

/// Reads a result document; maps resolve names against the normal form and
/// `context`, the diagrams the result refers to.
pub fn read_result(text: &str, context: &[&Diagram]) -> Result<ResultDocument> {
    let v = parse_text(text)?;
    check_format(&v)?;
    let mut table = GeneratorTable::default();
    for d in context {
        for g in d.generators() {
            table.add(&g, "")?;
        }
    }
    let normal_form = diagram_from_json(field(&v, "normal_form", "")?, "/normal_form", &mut table)?;
    let normaliser = map_from_json(field(&v, "normaliser", "")?, "/normaliser", &table)?;
    let factorisations =
        decode_list(field(&v, "factorisations", "")?, "/factorisations", |x, xp| map_from_json(x, xp, &table))?;
    Ok(ResultDocument { normal_form, normaliser, factorisations })
}
