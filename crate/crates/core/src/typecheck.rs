//! Signatures, singular content, piece extraction and type checking.

use std::collections::BTreeMap;

use crate::diagram::{Diagram, DiagramMap, Generator};
use crate::error::{Error, Result};
use crate::globular::is_globular_object;
use crate::normalise::normalise;
use crate::ordmaps::Monotone;

/// A path of singular heights from the top level down to a generator.
pub type ContentAddress = Vec<usize>;

/// Every generator in singular position, in lexicographic address order.
pub fn singular_content(d: &Diagram) -> Vec<(ContentAddress, Generator)> {
    let mut out = Vec::new();
    collect_content(d, &mut Vec::new(), &mut out);
    out
}

fn collect_content(d: &Diagram, prefix: &mut Vec<usize>, out: &mut Vec<(ContentAddress, Generator)>) {
    match d {
        Diagram::Point(g) => out.push((prefix.clone(), g.clone())),
        Diagram::Zigzag(z) => {
            for (h, s) in z.singular.iter().enumerate() {
                prefix.push(h);
                collect_content(s, prefix, out);
                prefix.pop();
            }
        }
    }
}

/// A convex region of a diagram: singular heights `start..end`, the regular
/// heights between them, and a sub-region of every slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    Point,
    Zig {
        start: usize,
        end: usize,
        regular: Vec<Selection>,
        singular: Vec<Selection>,
    },
}

impl Selection {
    fn bounds(&self) -> (usize, usize) {
        match self {
            Selection::Point => (0, 0),
            Selection::Zig { start, end, .. } => (*start, *end),
        }
    }

    fn regular(&self, i: usize) -> &Selection {
        match self {
            Selection::Zig { regular, .. } => &regular[i],
            Selection::Point => self,
        }
    }

    fn singular(&self, j: usize) -> &Selection {
        match self {
            Selection::Zig { singular, .. } => &singular[j],
            Selection::Point => self,
        }
    }
}

/// The region of `x` sent into `sel` by `f: x → y`.
pub fn preimage(f: &DiagramMap, x: &Diagram, sel: &Selection) -> Result<Selection> {
    let (fz, xz) = match (f, x) {
        (DiagramMap::Point { .. }, Diagram::Point(_)) => return Ok(Selection::Point),
        (DiagramMap::Zigzag(fz), Diagram::Zigzag(xz)) => (fz, xz),
        _ => return Err(Error::DimensionMismatch("preimage of a selection".into())),
    };
    let (a, b) = sel.bounds();
    let mono = &fz.monotone;
    let dual = mono.wraith_dual();
    let (p, q) = (dual.apply(a), dual.apply(b));
    let singular = (p..q)
        .map(|j| preimage(&fz.singular[j], &xz.singular[j], sel.singular(mono.apply(j) - a)))
        .collect::<Result<Vec<_>>>()?;
    let mut regular = Vec::with_capacity(q - p + 1);
    for i in p..=q {
        let through = if i == p {
            Some(a)
        } else if i == q {
            Some(b)
        } else {
            (a + 1..b).find(|&k| dual.apply(k) == i)
        };
        let r = match through {
            Some(k) => preimage(&fz.regular[k], &xz.regular[i], sel.regular(k - a))?,
            None => {
                let via = xz.backward[i - 1].compose(&fz.singular[i - 1])?;
                preimage(&via, &xz.regular[i], sel.singular(mono.apply(i - 1) - a))?
            }
        };
        regular.push(r);
    }
    Ok(Selection::Zig { start: p, end: q, regular, singular })
}

/// The sub-diagram cut out by a selection.
pub fn restrict(d: &Diagram, sel: &Selection) -> Diagram {
    match (d, sel) {
        (Diagram::Point(_), _) | (_, Selection::Point) => d.clone(),
        (Diagram::Zigzag(z), Selection::Zig { start, end, regular, singular }) => {
            let r: Vec<Diagram> =
                regular.iter().enumerate().map(|(i, s)| restrict(&z.regular[start + i], s)).collect();
            let s: Vec<Diagram> =
                singular.iter().enumerate().map(|(j, s)| restrict(&z.singular[start + j], s)).collect();
            let forward = (0..end - start)
                .map(|j| restrict_map(&z.forward[start + j], &regular[j], &singular[j]))
                .collect();
            let backward = (0..end - start)
                .map(|j| restrict_map(&z.backward[start + j], &regular[j + 1], &singular[j]))
                .collect();
            Diagram::from_parts(r, s, forward, backward)
        }
    }
}

/// Restricts `f` to a source region contained in the preimage of `target`.
pub fn restrict_map(f: &DiagramMap, source: &Selection, target: &Selection) -> DiagramMap {
    let fz = match f {
        DiagramMap::Point { .. } => return f.clone(),
        DiagramMap::Zigzag(fz) => fz,
    };
    let (p, q) = source.bounds();
    let (a, b) = target.bounds();
    let mono = &fz.monotone;
    let dual = mono.wraith_dual();
    let values = (p..q).map(|j| mono.apply(j) - a).collect();
    let regular = (0..=b - a)
        .map(|i| {
            let src = dual.apply(a + i) - p;
            restrict_map(&fz.regular[a + i], source.regular(src), target.regular(i))
        })
        .collect();
    let singular = (p..q)
        .map(|j| {
            restrict_map(&fz.singular[j], source.singular(j - p), target.singular(mono.apply(j) - a))
        })
        .collect();
    DiagramMap::from_parts(Monotone::new_unchecked(values, b - a), regular, singular)
}

/// The selection of the piece around the content element at `address`.
pub fn piece_selection(d: &Diagram, address: &[usize]) -> Result<Selection> {
    match (d, address.split_first()) {
        (Diagram::Point(_), None) => Ok(Selection::Point),
        (Diagram::Zigzag(z), Some((&h, rest))) if h < z.singular.len() => {
            let inner = piece_selection(&z.singular[h], rest)
                .map_err(|_| Error::Address(address.to_vec()))?;
            let below = preimage(&z.forward[h], &z.regular[h], &inner)?;
            let above = preimage(&z.backward[h], &z.regular[h + 1], &inner)?;
            Ok(Selection::Zig { start: h, end: h + 1, regular: vec![below, above], singular: vec![inner] })
        }
        _ => Err(Error::Address(address.to_vec())),
    }
}

pub fn extract_piece(d: &Diagram, address: &[usize]) -> Result<Diagram> {
    Ok(restrict(d, &piece_selection(d, address)?))
}

/// Generators with their typing diagrams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    entries: BTreeMap<String, (Generator, Diagram)>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a generator; its typing diagram is normalised on the way in.
    /// Returns whether the given diagram was already normal.
    pub fn insert(&mut self, generator: Generator, typing: Diagram) -> Result<bool> {
        if generator.name.is_empty() {
            return Err(Error::Signature("generator with empty name".into()));
        }
        if typing.dim() != generator.dimension {
            return Err(Error::Signature(format!(
                "typing diagram of {:?} has dimension {}",
                generator,
                typing.dim()
            )));
        }
        if self.entries.contains_key(&*generator.name) {
            return Err(Error::Signature(format!("duplicate generator {}", generator.name)));
        }
        let normal = normalise(&typing)?.normal_form;
        let was_normal = normal == typing;
        self.entries.insert(generator.name.to_string(), (generator, normal));
        Ok(was_normal)
    }

    pub fn remove(&mut self, name: &str) -> Option<(Generator, Diagram)> {
        self.entries.remove(name)
    }

    pub fn get(&self, name: &str) -> Option<&(Generator, Diagram)> {
        self.entries.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Generator, Diagram)> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The typing diagram of `g` raised to dimension `n` by length-0 levels.
    pub fn padded_typing(&self, g: &Generator, n: usize) -> Option<Diagram> {
        let (stored, typing) = self.get(&g.name)?;
        if stored != g || n < g.dimension {
            return None;
        }
        Some((g.dimension..n).fold(typing.clone(), |d, _| d.suspend()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject { address: ContentAddress, generator: Generator, reason: String },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Accepts when every piece normalises to the typing diagram of its generator.
pub fn typecheck(d: &Diagram, sig: &Signature) -> Result<Verdict> {
    if !is_globular_object(d) {
        return Err(Error::NotGlobular);
    }
    let n = d.dim();
    for (address, g) in singular_content(d) {
        let Some(expected) = sig.padded_typing(&g, n) else {
            return Ok(Verdict::Reject {
                address,
                generator: g.clone(),
                reason: format!("generator {} is not in the signature", g.name),
            });
        };
        let piece = extract_piece(d, &address)?;
        let normal = normalise(&piece)?.normal_form;
        if normal != expected {
            return Ok(Verdict::Reject {
                address,
                generator: g.clone(),
                reason: format!("piece does not normalise to the typing diagram of {}", g.name),
            });
        }
    }
    Ok(Verdict::Accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::validate_diagram;

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
    fn content_of_point_and_word() {
        let (a, f, g) = (pt("a", 0), pt("f", 1), pt("g", 1));
        assert_eq!(singular_content(&a), vec![(vec![], Generator::new("a", 0))]);
        let w = word(&a, &[&f, &g]);
        let c = singular_content(&w);
        assert_eq!(c.len(), 2);
        assert_eq!(c[1], (vec![1], Generator::new("g", 1)));
    }

    #[test]
    fn pieces_of_a_word() {
        let (a, f, g) = (pt("a", 0), pt("f", 1), pt("g", 1));
        let w = word(&a, &[&f, &g]);
        let p = extract_piece(&w, &[1]).unwrap();
        validate_diagram(&p).unwrap();
        assert_eq!(p, word(&a, &[&g]));
        assert!(extract_piece(&w, &[2]).is_err());
        assert!(extract_piece(&w, &[0, 0]).is_err());
    }

    #[test]
    fn typing_diagram_is_its_own_piece() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let typing = word(&a, &[&f]);
        assert_eq!(extract_piece(&typing, &[0]).unwrap(), typing);
        let mut sig = Signature::new();
        assert!(sig.insert(Generator::new("a", 0), a.clone()).unwrap());
        assert!(sig.insert(Generator::new("f", 1), typing.clone()).unwrap());
        assert_eq!(typecheck(&typing, &sig).unwrap(), Verdict::Accept);
        assert_eq!(typecheck(&word(&a, &[&f, &f]), &sig).unwrap(), Verdict::Accept);
        sig.remove("f");
        assert!(!typecheck(&typing, &sig).unwrap().is_accept());
    }

    #[test]
    fn signature_rejects_wrong_dimension() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let mut sig = Signature::new();
        assert!(sig.insert(Generator::new("f", 1), a.clone()).is_err());
        assert!(!sig.insert(Generator::new("f", 1), word(&a, &[&f, &a])).unwrap());
    }
}
