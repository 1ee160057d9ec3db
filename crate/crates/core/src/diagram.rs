//! Iterated zigzags over a thin base of generators.
//!
//! A 0-diagram is a [`Generator`]. An n-diagram is a zigzag
//! `r0 → s0 ← r1 → s1 ← … r_k` of (n-1)-diagrams. A [`DiagramMap`] between
//! n-diagrams is a singular monotone together with one slice map per regular
//! height of the target and per singular height of the source. Maps do not
//! record their endpoints; operations that need them take them explicitly.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ordmaps::Monotone;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub name: Arc<str>,
    pub dimension: usize,
}

impl Generator {
    pub fn new(name: &str, dimension: usize) -> Self {
        Generator { name: Arc::from(name), dimension }
    }

    /// Whether the base has a (necessarily unique) map `self → target`.
    pub fn maps_to(&self, target: &Generator) -> bool {
        self == target || self.dimension < target.dimension
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.dimension)
    }
}

#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Clone, Eq, Hash)]
pub enum Diagram {
    Point(Generator),
    Zigzag(Arc<Zigzag>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Zigzag {
    pub regular: Vec<Diagram>,
    pub singular: Vec<Diagram>,
    pub forward: Vec<DiagramMap>,
    pub backward: Vec<DiagramMap>,
}

#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Clone, Eq, Hash)]
pub enum DiagramMap {
    Point { source: Generator, target: Generator },
    Zigzag(Arc<ZigzagMap>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZigzagMap {
    pub monotone: Monotone,
    pub regular: Vec<DiagramMap>,
    pub singular: Vec<DiagramMap>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Diagram::Point(a), Diagram::Point(b)) => a == b,
            (Diagram::Zigzag(a), Diagram::Zigzag(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl PartialEq for DiagramMap {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                DiagramMap::Point { source: a, target: b },
                DiagramMap::Point { source: c, target: d },
            ) => a == c && b == d,
            (DiagramMap::Zigzag(a), DiagramMap::Zigzag(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::Point(g) => write!(f, "{g:?}"),
            Diagram::Zigzag(z) => {
                write!(f, "[")?;
                for (i, r) in z.regular.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | {:?} | ", z.singular[i - 1])?;
                    }
                    write!(f, "{r:?}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for DiagramMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramMap::Point { source, target } => write!(f, "{source:?}->{target:?}"),
            DiagramMap::Zigzag(m) => f
                .debug_struct("Map")
                .field("monotone", &m.monotone.values())
                .field("regular", &m.regular)
                .field("singular", &m.singular)
                .finish(),
        }
    }
}

impl Diagram {
    pub fn point(g: Generator) -> Self {
        Diagram::Point(g)
    }

    /// Builds a zigzag after checking arities and slice dimensions.
    pub fn zigzag(
        regular: Vec<Diagram>,
        singular: Vec<Diagram>,
        forward: Vec<DiagramMap>,
        backward: Vec<DiagramMap>,
    ) -> Result<Self> {
        let k = singular.len();
        if regular.len() != k + 1 || forward.len() != k || backward.len() != k {
            return Err(Error::Argument(format!(
                "zigzag arity: {} regular, {} singular, {} forward, {} backward",
                regular.len(),
                k,
                forward.len(),
                backward.len()
            )));
        }
        let dim = regular[0].dim();
        if regular.iter().chain(&singular).any(|d| d.dim() != dim) {
            return Err(Error::DimensionMismatch("zigzag slices differ in dimension".into()));
        }
        Ok(Diagram::from_parts(regular, singular, forward, backward))
    }

    pub(crate) fn from_parts(
        regular: Vec<Diagram>,
        singular: Vec<Diagram>,
        forward: Vec<DiagramMap>,
        backward: Vec<DiagramMap>,
    ) -> Self {
        debug_assert_eq!(regular.len(), singular.len() + 1);
        debug_assert_eq!(forward.len(), singular.len());
        debug_assert_eq!(backward.len(), singular.len());
        Diagram::Zigzag(Arc::new(Zigzag { regular, singular, forward, backward }))
    }

    /// The length-0 zigzag whose single regular slice is `self`.
    pub fn suspend(self) -> Self {
        Diagram::from_parts(vec![self], vec![], vec![], vec![])
    }

    /// A length-1 zigzag `r0 → s ← r1`.
    pub fn cospan(
        r0: Diagram,
        forward: DiagramMap,
        s: Diagram,
        backward: DiagramMap,
        r1: Diagram,
    ) -> Self {
        Diagram::from_parts(vec![r0, r1], vec![s], vec![forward], vec![backward])
    }

    pub fn dim(&self) -> usize {
        match self {
            Diagram::Point(_) => 0,
            Diagram::Zigzag(z) => 1 + z.regular[0].dim(),
        }
    }

    pub fn as_zigzag(&self) -> Option<&Zigzag> {
        match self {
            Diagram::Point(_) => None,
            Diagram::Zigzag(z) => Some(z),
        }
    }

    pub(crate) fn zz(&self) -> &Zigzag {
        self.as_zigzag().expect("expected a diagram of positive dimension")
    }

    pub fn generator(&self) -> Option<&Generator> {
        match self {
            Diagram::Point(g) => Some(g),
            Diagram::Zigzag(_) => None,
        }
    }

    /// Number of singular heights; 0 for a 0-diagram.
    pub fn len(&self) -> usize {
        self.as_zigzag().map_or(0, |z| z.singular.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest zigzag length occurring at any level.
    pub fn max_length(&self) -> usize {
        match self {
            Diagram::Point(_) => 0,
            Diagram::Zigzag(z) => z
                .regular
                .iter()
                .chain(&z.singular)
                .map(Diagram::max_length)
                .max()
                .unwrap_or(0)
                .max(z.singular.len()),
        }
    }

    /// All generators occurring anywhere in the diagram, deduplicated and sorted.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_generators(&self, out: &mut Vec<Generator>) {
        match self {
            Diagram::Point(g) => out.push(g.clone()),
            Diagram::Zigzag(z) => {
                for d in z.regular.iter().chain(&z.singular) {
                    d.collect_generators(out);
                }
            }
        }
    }

    /// The image under the functor to zigzags over the terminal category:
    /// every generator is replaced by a single point.
    pub fn shape(&self) -> Diagram {
        match self {
            Diagram::Point(_) => Diagram::Point(unit_generator()),
            Diagram::Zigzag(z) => Diagram::from_parts(
                z.regular.iter().map(Diagram::shape).collect(),
                z.singular.iter().map(Diagram::shape).collect(),
                z.forward.iter().map(DiagramMap::shape).collect(),
                z.backward.iter().map(DiagramMap::shape).collect(),
            ),
        }
    }
}

fn unit_generator() -> Generator {
    Generator::new("*", 0)
}

impl DiagramMap {
    pub fn point(source: Generator, target: Generator) -> Self {
        DiagramMap::Point { source, target }
    }

    pub(crate) fn from_parts(
        monotone: Monotone,
        regular: Vec<DiagramMap>,
        singular: Vec<DiagramMap>,
    ) -> Self {
        debug_assert_eq!(regular.len(), monotone.target_size() + 1);
        debug_assert_eq!(singular.len(), monotone.source_size());
        DiagramMap::Zigzag(Arc::new(ZigzagMap { monotone, regular, singular }))
    }

    /// Builds a zigzag map after checking slice arities.
    pub fn zigzag(
        monotone: Monotone,
        regular: Vec<DiagramMap>,
        singular: Vec<DiagramMap>,
    ) -> Result<Self> {
        if regular.len() != monotone.target_size() + 1 || singular.len() != monotone.source_size()
        {
            return Err(Error::Argument(format!(
                "map arity: monotone {:?} with {} regular and {} singular slices",
                monotone,
                regular.len(),
                singular.len()
            )));
        }
        Ok(DiagramMap::from_parts(monotone, regular, singular))
    }

    pub fn dim(&self) -> usize {
        match self {
            DiagramMap::Point { .. } => 0,
            DiagramMap::Zigzag(m) => 1 + m.regular[0].dim(),
        }
    }

    pub fn as_zigzag(&self) -> Option<&ZigzagMap> {
        match self {
            DiagramMap::Point { .. } => None,
            DiagramMap::Zigzag(m) => Some(m),
        }
    }

    pub(crate) fn zz(&self) -> &ZigzagMap {
        self.as_zigzag().expect("expected a map of positive dimension")
    }

    /// The singular monotone; `None` for a 0-map.
    pub fn monotone(&self) -> Option<&Monotone> {
        self.as_zigzag().map(|m| &m.monotone)
    }

    /// Identity on `d`.
    pub fn identity(d: &Diagram) -> DiagramMap {
        match d {
            Diagram::Point(g) => DiagramMap::point(g.clone(), g.clone()),
            Diagram::Zigzag(z) => DiagramMap::from_parts(
                Monotone::identity(z.singular.len()),
                z.regular.iter().map(DiagramMap::identity).collect(),
                z.singular.iter().map(DiagramMap::identity).collect(),
            ),
        }
    }

    /// Whether the map is an identity. In the skeletal base this is the same
    /// as being an isomorphism.
    pub fn is_identity(&self) -> bool {
        match self {
            DiagramMap::Point { source, target } => source == target,
            DiagramMap::Zigzag(m) => {
                m.monotone.is_identity()
                    && m.regular.iter().all(DiagramMap::is_identity)
                    && m.singular.iter().all(DiagramMap::is_identity)
            }
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_identity()
    }

    /// `self` followed by `g`.
    pub fn compose(&self, g: &DiagramMap) -> Result<DiagramMap> {
        match (self, g) {
            (
                DiagramMap::Point { source, target },
                DiagramMap::Point { source: middle, target: end },
            ) => {
                if target != middle {
                    return Err(Error::Composition(format!(
                        "0-map into {target:?} followed by 0-map out of {middle:?}"
                    )));
                }
                Ok(DiagramMap::point(source.clone(), end.clone()))
            }
            (DiagramMap::Zigzag(f), DiagramMap::Zigzag(gz)) => {
                let monotone = f.monotone.compose(&gz.monotone).map_err(|e| {
                    Error::Composition(format!("singular monotones do not compose: {e}"))
                })?;
                if f.regular.len() != gz.monotone.source_size() + 1 {
                    return Err(Error::Composition("regular slice count mismatch".into()));
                }
                let g_dual = gz.monotone.wraith_dual();
                let regular = gz
                    .regular
                    .iter()
                    .enumerate()
                    .map(|(i, gr)| f.regular[g_dual.apply(i)].compose(gr))
                    .collect::<Result<Vec<_>>>()?;
                let singular = f
                    .singular
                    .iter()
                    .enumerate()
                    .map(|(j, fs)| fs.compose(&gz.singular[f.monotone.apply(j)]))
                    .collect::<Result<Vec<_>>>()?;
                Ok(DiagramMap::from_parts(monotone, regular, singular))
            }
            _ => Err(Error::Composition(format!(
                "maps of dimension {} and {}",
                self.dim(),
                g.dim()
            ))),
        }
    }

    pub fn shape(&self) -> DiagramMap {
        match self {
            DiagramMap::Point { .. } => DiagramMap::point(unit_generator(), unit_generator()),
            DiagramMap::Zigzag(m) => DiagramMap::from_parts(
                m.monotone.clone(),
                m.regular.iter().map(DiagramMap::shape).collect(),
                m.singular.iter().map(DiagramMap::shape).collect(),
            ),
        }
    }
}

/// Composes a chain of maps left to right.
pub fn compose_all(maps: &[&DiagramMap]) -> Result<DiagramMap> {
    let (first, rest) = maps
        .split_first()
        .ok_or_else(|| Error::Argument("empty composite".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, g| acc.compose(g))
}

/// A map together with its source; the target is implicit in a [`Sink`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Leg {
    pub source: Diagram,
    pub map: DiagramMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sink {
    pub target: Diagram,
    pub legs: Vec<Leg>,
}

impl Sink {
    pub fn empty(target: Diagram) -> Self {
        Sink { target, legs: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), Report> {
        validate_diagram(&self.target)?;
        for (i, leg) in self.legs.iter().enumerate() {
            validate_diagram(&leg.source).map_err(|r| r.within(Step::Leg(i)))?;
            validate_map(&leg.map, &leg.source, &self.target).map_err(|r| r.within(Step::Leg(i)))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Regular(usize),
    Singular(usize),
    Forward(usize),
    Backward(usize),
    RegularSlice(usize),
    SingularSlice(usize),
    Leg(usize),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Regular(i) => write!(f, "regular[{i}]"),
            Step::Singular(i) => write!(f, "singular[{i}]"),
            Step::Forward(i) => write!(f, "forward[{i}]"),
            Step::Backward(i) => write!(f, "backward[{i}]"),
            Step::RegularSlice(i) => write!(f, "regular_slice[{i}]"),
            Step::SingularSlice(i) => write!(f, "singular_slice[{i}]"),
            Step::Leg(i) => write!(f, "leg[{i}]"),
        }
    }
}

/// Location and description of the first failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub path: Vec<Step>,
    pub message: String,
}

impl Report {
    fn new(message: impl Into<String>) -> Self {
        Report { path: Vec::new(), message: message.into() }
    }

    fn within(mut self, step: Step) -> Self {
        self.path.insert(0, step);
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "/: {}", self.message)
        } else {
            let path: Vec<String> = self.path.iter().map(Step::to_string).collect();
            write!(f, "/{}: {}", path.join("/"), self.message)
        }
    }
}

impl From<Report> for Error {
    fn from(r: Report) -> Self {
        Error::Validation(r)
    }
}

/// Checks every zigzag and map law recursively.
pub fn validate_diagram(d: &Diagram) -> Result<(), Report> {
    let z = match d {
        Diagram::Point(g) => {
            return if g.name.is_empty() {
                Err(Report::new("generator with empty name"))
            } else {
                Ok(())
            };
        }
        Diagram::Zigzag(z) => z,
    };
    let k = z.singular.len();
    if z.regular.len() != k + 1 || z.forward.len() != k || z.backward.len() != k {
        return Err(Report::new("zigzag arity mismatch"));
    }
    let dim = z.regular[0].dim();
    for (i, r) in z.regular.iter().enumerate() {
        if r.dim() != dim {
            return Err(Report::new("slice dimension mismatch").within(Step::Regular(i)));
        }
        validate_diagram(r).map_err(|e| e.within(Step::Regular(i)))?;
    }
    for (j, s) in z.singular.iter().enumerate() {
        if s.dim() != dim {
            return Err(Report::new("slice dimension mismatch").within(Step::Singular(j)));
        }
        validate_diagram(s).map_err(|e| e.within(Step::Singular(j)))?;
        validate_map(&z.forward[j], &z.regular[j], s).map_err(|e| e.within(Step::Forward(j)))?;
        validate_map(&z.backward[j], &z.regular[j + 1], s)
            .map_err(|e| e.within(Step::Backward(j)))?;
    }
    Ok(())
}

fn composite(f: &DiagramMap, g: &DiagramMap) -> Result<DiagramMap, Report> {
    f.compose(g).map_err(|e| Report::new(e.to_string()))
}

/// Checks that `f` is a valid map `x → y`, assuming `x` and `y` are valid.
pub fn validate_map(f: &DiagramMap, x: &Diagram, y: &Diagram) -> Result<(), Report> {
    let (fz, xz, yz) = match (f, x, y) {
        (DiagramMap::Point { source, target }, Diagram::Point(a), Diagram::Point(b)) => {
            if source != a || target != b {
                return Err(Report::new(format!(
                    "0-map {source:?}->{target:?} does not have endpoints {a:?}->{b:?}"
                )));
            }
            if !source.maps_to(target) {
                return Err(Report::new(format!("no 0-map {source:?}->{target:?} in the base")));
            }
            return Ok(());
        }
        (DiagramMap::Zigzag(fz), Diagram::Zigzag(xz), Diagram::Zigzag(yz)) => (fz, xz, yz),
        _ => return Err(Report::new("map and endpoint dimensions disagree")),
    };
    let (lx, ly) = (xz.singular.len(), yz.singular.len());
    let mono = &fz.monotone;
    if mono.source_size() != lx || mono.target_size() != ly {
        return Err(Report::new(format!(
            "monotone {mono:?} does not go from [{lx}] to [{ly}]"
        )));
    }
    if fz.regular.len() != ly + 1 {
        return Err(Report::new("wrong number of regular slices"));
    }
    if fz.singular.len() != lx {
        return Err(Report::new("wrong number of singular slices"));
    }
    let dual = mono.wraith_dual();
    for (i, slice) in fz.regular.iter().enumerate() {
        validate_map(slice, &xz.regular[dual.apply(i)], &yz.regular[i])
            .map_err(|e| e.within(Step::RegularSlice(i)))?;
    }
    for (j, slice) in fz.singular.iter().enumerate() {
        validate_map(slice, &xz.singular[j], &yz.singular[mono.apply(j)])
            .map_err(|e| e.within(Step::SingularSlice(j)))?;
    }
    for i in 0..ly {
        let pre = mono.preimage(i).expect("height in range");
        if pre.is_empty() {
            let left = composite(&fz.regular[i], &yz.forward[i])?;
            let right = composite(&fz.regular[i + 1], &yz.backward[i])?;
            if left != right {
                return Err(Report::new(format!("wedge at height {i} does not commute")));
            }
            continue;
        }
        let (p, q) = (pre.start, pre.end - 1);
        let left = composite(&fz.regular[i], &yz.forward[i])?;
        let right = composite(&xz.forward[p], &fz.singular[p])?;
        if left != right {
            return Err(Report::new(format!("forward square at height {i} does not commute"))
                .within(Step::SingularSlice(p)));
        }
        let left = composite(&fz.regular[i + 1], &yz.backward[i])?;
        let right = composite(&xz.backward[q], &fz.singular[q])?;
        if left != right {
            return Err(Report::new(format!("backward square at height {i} does not commute"))
                .within(Step::SingularSlice(q)));
        }
        for j in p..q {
            let left = composite(&xz.backward[j], &fz.singular[j])?;
            let right = composite(&xz.forward[j + 1], &fz.singular[j + 1])?;
            if left != right {
                return Err(Report::new(format!(
                    "triangle between source heights {j} and {} does not commute",
                    j + 1
                ))
                .within(Step::SingularSlice(j)));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str, dim: usize) -> Generator {
        Generator::new(name, dim)
    }

    fn pt(name: &str, dim: usize) -> Diagram {
        Diagram::point(g(name, dim))
    }

    fn arrow(a: &Diagram, b: &Diagram) -> DiagramMap {
        DiagramMap::point(a.generator().unwrap().clone(), b.generator().unwrap().clone())
    }

    /// The 1-diagram with the given singular labels over a single 0-cell.
    fn word(base: &Diagram, labels: &[&Diagram]) -> Diagram {
        let k = labels.len();
        Diagram::from_parts(
            vec![base.clone(); k + 1],
            labels.iter().map(|d| (*d).clone()).collect(),
            labels.iter().map(|d| arrow(base, d)).collect(),
            labels.iter().map(|d| arrow(base, d)).collect(),
        )
    }

    #[test]
    fn thin_base() {
        assert!(g("a", 0).maps_to(&g("a", 0)));
        assert!(g("a", 0).maps_to(&g("f", 1)));
        assert!(!g("f", 1).maps_to(&g("a", 0)));
        assert!(!g("a", 0).maps_to(&g("b", 0)));
    }

    #[test]
    fn identity_validates_and_is_unit() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let w = word(&a, &[&f, &a]);
        validate_diagram(&w).unwrap();
        let id = DiagramMap::identity(&w);
        validate_map(&id, &w, &w).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.compose(&id).unwrap(), id);
    }

    #[test]
    fn arity_violation_reported_at_top() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let w = word(&a, &[&f]);
        let bad = DiagramMap::Zigzag(Arc::new(ZigzagMap {
            monotone: Monotone::identity(1),
            regular: vec![arrow(&a, &a)],
            singular: vec![arrow(&f, &f)],
        }));
        let report = validate_map(&bad, &w, &w).unwrap_err();
        assert!(report.path.is_empty());
    }

    #[test]
    fn composite_matches_slice_formula() {
        let (a, f, m) = (pt("a", 0), pt("f", 1), pt("m", 2));
        let x = word(&a, &[&f, &f]);
        let y = word(&a, &[&m]);
        let collapse = DiagramMap::from_parts(
            Monotone::new(vec![0, 0], 1).unwrap(),
            vec![arrow(&a, &a), arrow(&a, &a)],
            vec![arrow(&f, &m), arrow(&f, &m)],
        );
        validate_map(&collapse, &x, &y).unwrap();
        let z = word(&a, &[&f]);
        let squash = DiagramMap::from_parts(
            Monotone::new(vec![0], 2).unwrap(),
            vec![arrow(&a, &a); 3],
            vec![arrow(&f, &f)],
        );
        validate_map(&squash, &z, &x).unwrap();
        let c = squash.compose(&collapse).unwrap();
        validate_map(&c, &z, &y).unwrap();
        assert_eq!(c.monotone().unwrap().values(), &[0]);
        assert_eq!(c.zz().singular[0], arrow(&f, &m));
        assert_eq!(c.zz().regular, vec![arrow(&a, &a), arrow(&a, &a)]);
    }

    #[test]
    fn shape_forgets_labels() {
        let (a, f, b) = (pt("a", 0), pt("f", 1), pt("b", 1));
        assert_eq!(word(&a, &[&f]).shape(), word(&a, &[&b]).shape());
        assert_ne!(word(&a, &[&f]), word(&a, &[&b]));
    }

    #[test]
    fn rejects_reversed_base_map() {
        let (a, f) = (pt("a", 0), pt("f", 1));
        let bad = Diagram::from_parts(
            vec![f.clone(), f.clone()],
            vec![a.clone()],
            vec![arrow(&f, &a)],
            vec![arrow(&f, &a)],
        );
        let report = validate_diagram(&bad).unwrap_err();
        assert_eq!(report.path, vec![Step::Forward(0)]);
    }
}
