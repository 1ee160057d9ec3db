//! Hand-built diagrams used by tests, the acceptance suite and the sample
//! files under `fixtures/`.

use crate::diagram::{Diagram, DiagramMap, Generator, Leg, Sink};
use crate::ordmaps::Monotone;
use crate::typecheck::Signature;

pub fn point(name: &str, dim: usize) -> Diagram {
    Diagram::point(Generator::new(name, dim))
}

fn gen(d: &Diagram) -> Generator {
    d.generator().expect("0-diagram").clone()
}

fn mono(values: &[usize], target: usize) -> Monotone {
    Monotone::new(values.to_vec(), target).expect("valid monotone")
}

/// The 1-diagram over the 0-cell `base` with the given singular labels.
pub fn word(base: &Diagram, labels: &[&Diagram]) -> Diagram {
    let arrow = |d: &&Diagram| DiagramMap::point(gen(base), gen(d));
    Diagram::from_parts(
        vec![base.clone(); labels.len() + 1],
        labels.iter().map(|d| (*d).clone()).collect(),
        labels.iter().map(arrow).collect(),
        labels.iter().map(arrow).collect(),
    )
}

/// A map between 1-diagrams; its 0-slices are forced by the thin base.
pub fn word_map(source: &Diagram, target: &Diagram, values: &[usize]) -> DiagramMap {
    let (s, t) = (source.zz(), target.zz());
    let m = mono(values, t.singular.len());
    let dual = m.wraith_dual();
    DiagramMap::from_parts(
        m.clone(),
        (0..t.regular.len())
            .map(|i| DiagramMap::point(gen(&s.regular[dual.apply(i)]), gen(&t.regular[i])))
            .collect(),
        (0..s.singular.len())
            .map(|j| DiagramMap::point(gen(&s.singular[j]), gen(&t.singular[m.apply(j)])))
            .collect(),
    )
}

/// A map with identity regular slices, given its singular slices.
fn globular_map(target: &Diagram, values: &[usize], singular: Vec<DiagramMap>) -> DiagramMap {
    let t = target.zz();
    DiagramMap::from_parts(
        mono(values, t.singular.len()),
        t.regular.iter().map(DiagramMap::identity).collect(),
        singular,
    )
}

/// The zigzag `r → s ← r` whose legs are both `leg`.
fn bubble(r: &Diagram, leg: DiagramMap, s: &Diagram) -> Diagram {
    Diagram::cospan(r.clone(), leg.clone(), s.clone(), leg, r.clone())
}

/// A zigzag whose regular slices all equal `r`, with the given singular
/// slices and legs `r → s` used both forwards and backwards.
fn stack(r: &Diagram, parts: &[(Diagram, DiagramMap)]) -> Diagram {
    Diagram::from_parts(
        vec![r.clone(); parts.len() + 1],
        parts.iter().map(|(s, _)| s.clone()).collect(),
        parts.iter().map(|(_, m)| m.clone()).collect(),
        parts.iter().map(|(_, m)| m.clone()).collect(),
    )
}

/// `f · id`: a 1-cell followed by an identity cospan, and its normal form.
pub fn unit_word() -> (Diagram, Diagram) {
    let (o, f) = (point("pt", 0), point("f", 1));
    (word(&o, &[&f, &o]), word(&o, &[&f]))
}

/// A 2-diagram `M = [X → X ← X]` with an identity cospan, and the sink
/// `{p: B → M, q: T → M}` for which that identity is essential.
pub struct EssentialIdentity {
    pub m: Diagram,
    pub b: Diagram,
    pub p: DiagramMap,
    pub t: Diagram,
    pub q: DiagramMap,
}

impl EssentialIdentity {
    pub fn sink(&self) -> Sink {
        Sink {
            target: self.m.clone(),
            legs: vec![
                Leg { source: self.b.clone(), map: self.p.clone() },
                Leg { source: self.t.clone(), map: self.q.clone() },
            ],
        }
    }
}

pub fn essential_identity() -> EssentialIdentity {
    let (o, e, a) = (point("pt", 0), point("e", 1), point("a", 2));
    let x = word(&o, &[&a]);
    let left = word(&o, &[&a, &e]);
    let right = word(&o, &[&e, &a]);
    let t = Diagram::from_parts(
        vec![x.clone(), x.clone(), x.clone()],
        vec![left.clone(), right.clone()],
        vec![word_map(&x, &left, &[0]), word_map(&x, &right, &[1])],
        vec![word_map(&x, &left, &[0]), word_map(&x, &right, &[1])],
    );
    let id = DiagramMap::identity(&x);
    let m = bubble(&x, id.clone(), &x);
    let q = DiagramMap::from_parts(
        mono(&[0, 0], 1),
        vec![id.clone(), id.clone()],
        vec![word_map(&left, &x, &[0, 0]), word_map(&right, &x, &[0, 0])],
    );
    let b = x.clone().suspend();
    let p = DiagramMap::from_parts(mono(&[], 1), vec![id.clone(), id], vec![]);
    EssentialIdentity { m, b, p, t, q }
}

/// A length-3 2-diagram `T` and a map `f: A → T` that hits heights 0 and 2
/// only; height 1 is a removable identity after normalising, height 2 is not.
pub struct CollapseWalkthrough {
    pub t: Diagram,
    pub a: Diagram,
    pub f: DiagramMap,
}

impl CollapseWalkthrough {
    pub fn sink(&self) -> Sink {
        Sink { target: self.t.clone(), legs: vec![Leg { source: self.a.clone(), map: self.f.clone() }] }
    }
}

pub fn collapse_walkthrough() -> CollapseWalkthrough {
    let (o, a, m) = (point("pt", 0), point("a", 1), point("m", 2));
    let wa = word(&o, &[&a]);
    let wm = word(&o, &[&m]);
    let wa_unit = word(&o, &[&a, &o]);
    let unit_wa = word(&o, &[&o, &a]);
    let to_m = word_map(&wa, &wm, &[0]);
    let ins1 = word_map(&wa, &wa_unit, &[0]);
    let ins0 = word_map(&wa, &unit_wa, &[1]);
    let t = stack(
        &wa,
        &[(wm.clone(), to_m.clone()), (wa_unit, ins1), (unit_wa.clone(), ins0.clone())],
    );
    let id = DiagramMap::identity(&wa);
    let a_diag = stack(&wa, &[(wm.clone(), to_m.clone()), (wa.clone(), id.clone()), (wa.clone(), id)]);
    let f = globular_map(&t, &[0, 0, 2], vec![DiagramMap::identity(&wm), to_m, ins0]);
    CollapseWalkthrough { t, a: a_diag, f }
}

/// A 2-diagram with singular content of size 10 over one generator in
/// each of the dimensions 0, 1, 2.
pub fn ten_cell_surface() -> Diagram {
    let (d0, d1, d2) = (point("d0", 0), point("d1", 1), point("d2", 2));
    let row = |dims: &[usize]| {
        let labels: Vec<&Diagram> = dims.iter().map(|&k| if k == 1 { &d1 } else { &d2 }).collect();
        word(&d0, &labels)
    };
    let rows = [
        row(&[1, 1, 1]),
        row(&[1, 2, 2]),
        row(&[1, 1, 1, 1]),
        row(&[2, 1, 1]),
        row(&[1, 1, 1]),
        row(&[1, 1, 2, 1]),
        row(&[1, 1, 1]),
    ];
    let maps: [&[usize]; 6] = [&[0, 1, 2], &[0, 1, 1, 2], &[0, 0, 1, 2], &[0, 1, 2], &[0, 1, 3], &[0, 1, 3]];
    Diagram::from_parts(
        vec![rows[0].clone(), rows[2].clone(), rows[4].clone(), rows[6].clone()],
        vec![rows[1].clone(), rows[3].clone(), rows[5].clone()],
        vec![
            word_map(&rows[0], &rows[1], maps[0]),
            word_map(&rows[2], &rows[3], maps[2]),
            word_map(&rows[4], &rows[5], maps[4]),
        ],
        vec![
            word_map(&rows[2], &rows[1], maps[1]),
            word_map(&rows[4], &rows[3], maps[3]),
            word_map(&rows[6], &rows[5], maps[5]),
        ],
    )
}

pub struct TypedDiagram {
    pub diagram: Diagram,
    pub signature: Signature,
}

/// The n-cell typing diagram `[∂ → c ← ∂]` for a cell `c` whose boundaries
/// are identities on the 0-cell `o`.
pub fn bubble_typing(o: &Diagram, c: &Diagram) -> Diagram {
    let n = c.generator().expect("generator").dimension;
    let mut inner = word(o, &[c]);
    let mut boundary = word(o, &[]);
    for _ in 1..n {
        let leg = empty_leg(&inner);
        let next_boundary = boundary.clone().suspend();
        inner = bubble(&boundary, leg, &inner);
        boundary = next_boundary;
    }
    inner
}

/// The inclusion of the length-0 boundary into `target`, a diagram whose
/// regular slices are all equal.
fn empty_leg(target: &Diagram) -> DiagramMap {
    let t = target.zz();
    DiagramMap::from_parts(
        Monotone::new(vec![], t.singular.len()).expect("empty map"),
        t.regular.iter().map(DiagramMap::identity).collect(),
        vec![],
    )
}

fn signature_of(o: &Diagram, cells: &[&Diagram]) -> Signature {
    let mut sig = Signature::new();
    sig.insert(gen(o), o.clone()).expect("0-cell");
    for c in cells {
        sig.insert(gen(c), bubble_typing(o, c)).expect("typing diagram");
    }
    sig
}

/// `[ [·]→[·c·]←[·] , … ]`: 2-diagram with the given 2-cells stacked
/// vertically, each in its own height.
fn vertical(o: &Diagram, cells: &[&Diagram]) -> Diagram {
    let unit = word(o, &[]);
    let parts: Vec<(Diagram, DiagramMap)> = cells
        .iter()
        .map(|c| {
            let w = word(o, &[c]);
            (w.clone(), word_map(&unit, &w, &[]))
        })
        .collect();
    stack(&unit, &parts)
}

/// The Eckmann–Hilton 3-diagram `[x;y] → [x y] ← [y;x]` for 2-cells x, y.
pub fn eckmann_hilton() -> TypedDiagram {
    let (o, x, y) = (point("pt", 0), point("x", 2), point("y", 2));
    let unit = word(&o, &[]);
    let xy = vertical(&o, &[&x, &y]);
    let yx = vertical(&o, &[&y, &x]);
    let wide = word(&o, &[&x, &y]);
    let side = bubble(&unit, word_map(&unit, &wide, &[]), &wide);
    let (wx, wy) = (word(&o, &[&x]), word(&o, &[&y]));
    let from_xy = globular_map(&side, &[0, 0], vec![word_map(&wx, &wide, &[0]), word_map(&wy, &wide, &[1])]);
    let from_yx = globular_map(&side, &[0, 0], vec![word_map(&wy, &wide, &[1]), word_map(&wx, &wide, &[0])]);
    let diagram = Diagram::cospan(xy, from_xy, side, from_yx, yx);
    TypedDiagram { diagram, signature: signature_of(&o, &[&x, &y]) }
}

/// The syllepsis 5-diagram for 3-cells x, y: a homotopy between the two
/// braidings of `[x;y]` into `[y;x]` that pass the cells through vertical
/// order `x;y` and `y;x` respectively, via the horizontal level.
pub fn syllepsis() -> TypedDiagram {
    let (o, x, y) = (point("pt", 0), point("x", 3), point("y", 3));
    let unit = word(&o, &[]);
    let unit2 = unit.clone().suspend();
    let (wx, wy) = (word(&o, &[&x]), word(&o, &[&y]));
    let wide = word(&o, &[&x, &y]);

    let sx = bubble_typing(&o, &x).zz().singular[0].clone();
    let sy = bubble_typing(&o, &y).zz().singular[0].clone();
    let cells = |first: &Diagram, second: &Diagram| {
        stack(&unit2, &[(first.clone(), empty_leg(first)), (second.clone(), empty_leg(second))])
    };
    let xy3 = cells(&sx, &sy);
    let yx3 = cells(&sy, &sx);

    let v_xy = vertical(&o, &[&x, &y]);
    let v_yx = vertical(&o, &[&y, &x]);
    let h = bubble(&unit, word_map(&unit, &wide, &[]), &wide);
    let level = |s: &Diagram| bubble(&unit2, empty_leg(s), s);
    let (lv_xy, lh, lv_yx) = (level(&v_xy), level(&h), level(&v_yx));

    let x_v_xy = globular_map(&v_xy, &[0], vec![DiagramMap::identity(&wx)]);
    let y_v_xy = globular_map(&v_xy, &[1], vec![DiagramMap::identity(&wy)]);
    let x_v_yx = globular_map(&v_yx, &[1], vec![DiagramMap::identity(&wx)]);
    let y_v_yx = globular_map(&v_yx, &[0], vec![DiagramMap::identity(&wy)]);
    let x_h = globular_map(&h, &[0], vec![word_map(&wx, &wide, &[0])]);
    let y_h = globular_map(&h, &[0], vec![word_map(&wy, &wide, &[1])]);

    let column = |lv: &Diagram, xs: &DiagramMap, ys: &DiagramMap| {
        let fwd = globular_map(lv, &[0, 0], vec![xs.clone(), ys.clone()]);
        let bwd = globular_map(lv, &[0, 0], vec![ys.clone(), xs.clone()]);
        Diagram::cospan(xy3.clone(), fwd, lv.clone(), bwd, yx3.clone())
    };
    let c1 = column(&lv_xy, &x_v_xy, &y_v_xy);
    let c2 = column(&lh, &x_h, &y_h);
    let c3 = column(&lv_yx, &x_v_yx, &y_v_yx);

    let squash = |first: &Diagram, second: &Diagram, p: usize, q: usize| {
        globular_map(&h, &[0, 0], vec![word_map(first, &wide, &[p]), word_map(second, &wide, &[q])])
    };
    let down = globular_map(&lh, &[0], vec![squash(&wx, &wy, 0, 1)]);
    let up = globular_map(&lh, &[0], vec![squash(&wy, &wx, 1, 0)]);
    let from_c1 = globular_map(&c2, &[0], vec![down]);
    let from_c3 = globular_map(&c2, &[0], vec![up]);
    let diagram = Diagram::cospan(c1, from_c1, c2, from_c3, c3);
    TypedDiagram { diagram, signature: signature_of(&o, &[&x, &y]) }
}
