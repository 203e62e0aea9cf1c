//! Strand tracing, component identification and classical invariants.

use super::{EventKind, FrontDiagram, Word};
use std::fmt;

/// Where a strand segment starts or ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegEnd {
    Cusp(usize),
    /// Boundary slot of an open word (0-based, bottom-up).
    Boundary(usize),
}

#[derive(Clone, Debug)]
pub struct Segment {
    pub start: SegEnd,
    pub end: SegEnd,
}

#[derive(Clone, Copy, Debug)]
pub struct CuspRec {
    pub col: usize,
    pub kind: EventKind,
    pub lower: usize,
    pub upper: usize,
}

/// A crossing between the segment at the lower position before the column
/// and the one directly above it.
#[derive(Clone, Copy, Debug)]
pub struct CrossingRec {
    pub col: usize,
    pub lower: usize,
    pub upper: usize,
}

/// Full strand bookkeeping for an open or closed word.
#[derive(Clone, Debug)]
pub struct Trace {
    pub segments: Vec<Segment>,
    pub cusps: Vec<CuspRec>,
    pub crossings: Vec<CrossingRec>,
    /// Segment ids per position after the last column.
    pub outputs: Vec<usize>,
    /// For each column, the segment ids it touches (one or two).
    pub touched: Vec<[usize; 2]>,
}

impl Trace {
    pub fn of_word(w: &Word) -> Trace {
        let mut segments: Vec<Segment> =
            (0..w.inputs).map(|i| Segment { start: SegEnd::Boundary(i), end: SegEnd::Boundary(usize::MAX) }).collect();
        let mut pos: Vec<usize> = (0..w.inputs).collect();
        let mut cusps = Vec::new();
        let mut crossings = Vec::new();
        let mut touched = Vec::with_capacity(w.events.len());
        for (col, e) in w.events.iter().enumerate() {
            let k = e.level - 1;
            match e.kind {
                EventKind::LeftCusp => {
                    let lo = segments.len();
                    segments.push(Segment { start: SegEnd::Cusp(col), end: SegEnd::Boundary(usize::MAX) });
                    segments.push(Segment { start: SegEnd::Cusp(col), end: SegEnd::Boundary(usize::MAX) });
                    pos.splice(k..k, [lo, lo + 1]);
                    cusps.push(CuspRec { col, kind: e.kind, lower: lo, upper: lo + 1 });
                    touched.push([lo, lo + 1]);
                }
                EventKind::RightCusp => {
                    let (a, b) = (pos[k], pos[k + 1]);
                    segments[a].end = SegEnd::Cusp(col);
                    segments[b].end = SegEnd::Cusp(col);
                    pos.drain(k..k + 2);
                    cusps.push(CuspRec { col, kind: e.kind, lower: a, upper: b });
                    touched.push([a, b]);
                }
                EventKind::Crossing => {
                    crossings.push(CrossingRec { col, lower: pos[k], upper: pos[k + 1] });
                    touched.push([pos[k], pos[k + 1]]);
                    pos.swap(k, k + 1);
                }
            }
        }
        for (slot, &s) in pos.iter().enumerate() {
            segments[s].end = SegEnd::Boundary(slot);
        }
        Trace { segments, cusps, crossings, outputs: pos, touched }
    }
}

/// Assignment of strand segments to components, in canonical order.
#[derive(Clone, Debug)]
pub struct ComponentMap {
    pub trace: Trace,
    seg_comp: Vec<usize>,
    count: usize,
    /// Column of each component's anchor cusp (its first left cusp), if any.
    anchors: Vec<Option<usize>>,
    /// Direction of each segment under the all-"+" orientation: +1 rightward.
    base_dir: Vec<Option<i8>>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let n = self.0[c];
            self.0[c] = r;
            c = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl ComponentMap {
    pub fn of_word(w: &Word) -> ComponentMap {
        let trace = Trace::of_word(w);
        let nseg = trace.segments.len();
        let mut dsu = Dsu((0..nseg).collect());
        for c in &trace.cusps {
            dsu.union(c.lower, c.upper);
        }
        // Canonical order: components containing a left cusp by the column of
        // their first one, then cusp-free pass-through strands by input slot.
        let mut order: Vec<usize> = Vec::new();
        let mut anchors = Vec::new();
        for c in trace.cusps.iter().filter(|c| c.kind == EventKind::LeftCusp) {
            let root = dsu.find(c.lower);
            if !order.contains(&root) {
                order.push(root);
                anchors.push(Some(c.col));
            }
        }
        for s in 0..nseg {
            let root = dsu.find(s);
            if !order.contains(&root) {
                order.push(root);
                anchors.push(None);
            }
        }
        let seg_comp: Vec<usize> = (0..nseg).map(|s| {
            let root = dsu.find(s);
            order.iter().position(|&r| r == root).unwrap()
        }).collect();

        // Directions: at the anchor the lower branch runs leftward.
        let mut base_dir = vec![None; nseg];
        let mut by_seg: Vec<Vec<usize>> = vec![Vec::new(); nseg];
        for (i, c) in trace.cusps.iter().enumerate() {
            by_seg[c.lower].push(i);
            by_seg[c.upper].push(i);
        }
        for anchor in anchors.iter().flatten() {
            let c = trace.cusps.iter().find(|c| c.col == *anchor).unwrap();
            let mut stack = vec![(c.lower, -1i8)];
            while let Some((s, d)) = stack.pop() {
                if base_dir[s].is_some() {
                    continue;
                }
                base_dir[s] = Some(d);
                for &ci in &by_seg[s] {
                    let cu = trace.cusps[ci];
                    let other = if cu.lower == s { cu.upper } else { cu.lower };
                    stack.push((other, -d));
                }
            }
        }
        let count = order.len();
        ComponentMap { trace, seg_comp, count, anchors, base_dir }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn component_of_segment(&self, seg: usize) -> usize {
        self.seg_comp[seg]
    }

    /// Components touched by the event in column `col`.
    pub fn components_at(&self, col: usize) -> [usize; 2] {
        let [a, b] = self.trace.touched[col];
        [self.seg_comp[a], self.seg_comp[b]]
    }

    pub fn anchor(&self, comp: usize) -> Option<usize> {
        self.anchors[comp]
    }

    /// Segment direction (+1 rightward, -1 leftward) under orientation `o`.
    pub fn direction(&self, seg: usize, o: &Orientation) -> Option<i8> {
        self.base_dir[seg].map(|d| d * o.sign(self.seg_comp[seg]).value())
    }

    /// Columns of every event that touches component `c`.
    pub fn columns_of(&self, c: usize) -> Vec<usize> {
        (0..self.trace.touched.len()).filter(|&col| self.components_at(col).contains(&c)).collect()
    }
}

pub fn trace_components(d: &FrontDiagram) -> ComponentMap {
    ComponentMap::of_word(&d.as_word())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn of(v: i64) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation(pub Vec<Sign>);

impl Orientation {
    pub fn all_plus(n: usize) -> Self {
        Orientation(vec![Sign::Plus; n])
    }

    pub fn sign(&self, c: usize) -> Sign {
        // cusp-free open strands have no anchor; treat them as "+"
        self.0.get(c).copied().unwrap_or(Sign::Plus)
    }

    pub fn flipped(&self, c: usize) -> Self {
        let mut o = self.clone();
        o.0[c] = o.0[c].flip();
        o
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassicalInvariants {
    pub tb: i64,
    pub rot: i64,
    pub writhe: i64,
    pub cusps_up: usize,
    pub cusps_down: usize,
    pub cusps_right: usize,
}

/// Crossing sign convention: +1 when both strands run in the same horizontal
/// direction, -1 otherwise. This makes the max-tb right trefoil have writhe 3.
pub fn crossing_sign(map: &ComponentMap, x: &CrossingRec, o: &Orientation) -> i64 {
    let a = map.direction(x.lower, o).unwrap_or(1);
    let b = map.direction(x.upper, o).unwrap_or(1);
    (a * b) as i64
}

pub fn classical_invariants(map: &ComponentMap, c: usize, o: &Orientation) -> ClassicalInvariants {
    let tr = &map.trace;
    let writhe: i64 = tr
        .crossings
        .iter()
        .filter(|x| map.component_of_segment(x.lower) == c && map.component_of_segment(x.upper) == c)
        .map(|x| crossing_sign(map, x, o))
        .sum();
    let (mut up, mut down, mut right) = (0, 0, 0);
    for cu in tr.cusps.iter().filter(|cu| map.component_of_segment(cu.lower) == c) {
        let lower_dir = map.direction(cu.lower, o).unwrap_or(1);
        // traversal from the lower branch to the upper one is an upward cusp
        let is_up = match cu.kind {
            EventKind::LeftCusp => lower_dir < 0,
            _ => lower_dir > 0,
        };
        if is_up {
            up += 1;
        } else {
            down += 1;
        }
        if cu.kind == EventKind::RightCusp {
            right += 1;
        }
    }
    ClassicalInvariants {
        tb: writhe - right as i64,
        rot: (down as i64 - up as i64) / 2,
        writhe,
        cusps_up: up,
        cusps_down: down,
        cusps_right: right,
    }
}

/// Half the signed count of crossings between components `i` and `j`.
pub fn linking_number(map: &ComponentMap, i: usize, j: usize, o: &Orientation) -> i64 {
    let twice: i64 = map
        .trace
        .crossings
        .iter()
        .filter(|x| {
            let (a, b) = (map.component_of_segment(x.lower), map.component_of_segment(x.upper));
            (a == i && b == j) || (a == j && b == i)
        })
        .map(|x| crossing_sign(map, x, o))
        .sum();
    twice / 2
}
