//! Oriented link diagrams in planar-diagram (PD) form.
//!
//! A crossing is a 4-tuple of edge labels listed counterclockwise starting
//! at the incoming under-edge, so the under-strand always runs slot 0 to
//! slot 2. The over-strand runs slot 3 to slot 1 at a positive crossing and
//! slot 1 to slot 3 at a negative one.

mod braid;
mod pd;
mod twist;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub use braid::braid_closure;
pub use pd::parse_pd;

use crate::cube::{self, SmoothingIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    edges: [u32; 4],
    sign: Sign,
}

impl Crossing {
    pub fn edges(&self) -> [u32; 4] {
        self.edges
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Arc pairs joined by the 0-smoothing (the Kauffman A-smoothing).
    pub fn zero_smoothing(&self) -> [(u32, u32); 2] {
        let [a, b, c, d] = self.edges;
        [(a, b), (c, d)]
    }

    /// Arc pairs joined by the 1-smoothing.
    pub fn one_smoothing(&self) -> [(u32, u32); 2] {
        let [a, b, c, d] = self.edges;
        [(a, d), (b, c)]
    }
}

/// Whether the edge at `slot` of a crossing with `sign` points into the crossing.
pub(crate) fn slot_is_incoming(slot: usize, sign: Sign) -> bool {
    match (slot, sign) {
        (0, _) => true,
        (2, _) => false,
        (1, s) => s == Sign::Negative,
        (3, s) => s == Sign::Positive,
        _ => unreachable!("slot out of range"),
    }
}

/// A strand reference inside a twist region: a PD edge, or one of the
/// crossingless components (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeRef {
    Edge(u32),
    Loop(u32),
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeRef::Edge(e) => write!(f, "{e}"),
            EdgeRef::Loop(l) => write!(f, "L{l}"),
        }
    }
}

/// The disk where half-twists are inserted: two strands meeting it once each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwistRegion {
    edge_pair: (EdgeRef, EdgeRef),
    coherent: bool,
}

impl TwistRegion {
    pub fn edge_pair(&self) -> (EdgeRef, EdgeRef) {
        self.edge_pair
    }

    /// Both strands cross the disk in the same direction.
    pub fn coherent(&self) -> bool {
        self.coherent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed PD text at line {line}: {message}")]
    MalformedSyntax { line: usize, message: alloc::string::String },
    #[error("edge label {label} appears {count} times (expected exactly 2)")]
    EdgeDegreeError { label: u32, count: usize },
    #[error("edge {label} has no consistent direction")]
    OrientationInconsistent { label: u32 },
    #[error("the component through crossing {crossing} passes over every crossing; its direction cannot be inferred")]
    AmbiguousOrientation { crossing: usize },
    #[error("crossing data does not describe a planar diagram ({faces} faces, expected {expected})")]
    NonPlanar { faces: usize, expected: usize },
    #[error("empty diagram (no crossings and no loops)")]
    EmptyDiagram,
    #[error("sign list has {got} entries for {expected} crossings")]
    SignCountMismatch { got: usize, expected: usize },
    #[error("marked strand {0} does not exist")]
    UnknownMarkedStrand(EdgeRef),
    #[error("marked strands must be distinct")]
    DegenerateMark,
    #[error("marked edges {0} and {1} do not bound a common face")]
    MarkNotOnCommonFace(EdgeRef, EdgeRef),
    #[error("diagram has no marked twist region")]
    NoMarkedRegion,
    #[error("marked strands cross the twist disk in opposite directions")]
    IncoherentRegion,
    #[error("braid generator {generator} out of range for {strands} strands")]
    IndexOutOfRange { generator: i32, strands: usize },
    #[error("braid must have at least one strand")]
    NoStrands,
}

/// An oriented link diagram with crossing signs, crossingless components and
/// an optional marked twist region.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    edge_count: u32,
    free_loops: u32,
    marked_region: Option<TwistRegion>,
}

/// A dart leaves crossing `.0` through slot `.1`.
pub(crate) type Dart = (usize, usize);

impl LinkDiagram {
    /// Builds a diagram from PD tuples, inferring every crossing sign from
    /// the under-strand directions.
    pub fn from_pd(
        tuples: Vec<[u32; 4]>,
        free_loops: u32,
        mark: Option<(EdgeRef, EdgeRef)>,
    ) -> Result<Self, DiagramError> {
        Self::build(tuples, None, free_loops, mark)
    }

    /// Builds a diagram whose crossing signs are already known (for example
    /// from a braid word); the signs must be consistent with the tuples.
    pub fn from_signed_pd(
        tuples: Vec<[u32; 4]>,
        signs: Vec<Sign>,
        free_loops: u32,
        mark: Option<(EdgeRef, EdgeRef)>,
    ) -> Result<Self, DiagramError> {
        Self::build(tuples, Some(signs), free_loops, mark)
    }

    pub fn unknot() -> Self {
        LinkDiagram { crossings: Vec::new(), edge_count: 0, free_loops: 1, marked_region: None }
    }

    /// `k` disjoint crossingless circles, the first two marked when `k >= 2`.
    pub fn unlink(k: u32) -> Self {
        let marked_region = (k >= 2).then_some(TwistRegion {
            edge_pair: (EdgeRef::Loop(1), EdgeRef::Loop(2)),
            coherent: true,
        });
        LinkDiagram { crossings: Vec::new(), edge_count: 0, free_loops: k, marked_region }
    }

    fn build(
        tuples: Vec<[u32; 4]>,
        signs: Option<Vec<Sign>>,
        free_loops: u32,
        mark: Option<(EdgeRef, EdgeRef)>,
    ) -> Result<Self, DiagramError> {
        if tuples.is_empty() && free_loops == 0 {
            return Err(DiagramError::EmptyDiagram);
        }
        let edge_count = check_edge_degrees(&tuples)?;
        let occ = occurrences(&tuples, edge_count);
        let signs = match signs {
            Some(s) => {
                if s.len() != tuples.len() {
                    return Err(DiagramError::SignCountMismatch { got: s.len(), expected: tuples.len() });
                }
                s
            }
            None => infer_signs(&tuples, &occ)?,
        };
        for (e, [(x, s), (y, t)]) in occ.iter().enumerate() {
            if slot_is_incoming(*s, signs[*x]) == slot_is_incoming(*t, signs[*y]) {
                return Err(DiagramError::OrientationInconsistent { label: e as u32 + 1 });
            }
        }
        let crossings: Vec<Crossing> =
            tuples.into_iter().zip(signs).map(|(edges, sign)| Crossing { edges, sign }).collect();
        let mut d = LinkDiagram { crossings, edge_count, free_loops, marked_region: None };
        d.check_planar()?;
        if let Some((r1, r2)) = mark {
            d.marked_region = Some(d.classify_mark(r1, r2)?);
        }
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> u32 {
        self.edge_count
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn marked_region(&self) -> Option<TwistRegion> {
        self.marked_region
    }

    /// Returns a copy with the given strands marked.
    pub fn with_mark(&self, r1: EdgeRef, r2: EdgeRef) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        d.marked_region = Some(self.classify_mark(r1, r2)?);
        Ok(d)
    }

    pub fn without_mark(&self) -> Self {
        LinkDiagram { marked_region: None, ..self.clone() }
    }

    /// `(n_plus, n_minus, writhe)`.
    pub fn crossing_counts(&self) -> (usize, usize, i64) {
        let n_plus = self.crossings.iter().filter(|x| x.sign == Sign::Positive).count();
        let n_minus = self.crossings.len() - n_plus;
        (n_plus, n_minus, n_plus as i64 - n_minus as i64)
    }

    pub fn writhe(&self) -> i64 {
        self.crossing_counts().2
    }

    /// Circle count of the all-0 (`which == 0`) or all-1 smoothing.
    pub fn global_smoothing_circles(&self, which: u8) -> usize {
        let c = self.crossing_count();
        let bits = if which == 0 || c == 0 { 0 } else { u64::MAX >> (64 - c) };
        let eps = SmoothingIndex::new(bits, c).expect("crossing count within cube range");
        cube::resolve(self, &eps).expect("length matches").circle_count()
    }

    /// Reverses every crossing; n_plus and n_minus swap.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.edges;
                let edges = match x.sign {
                    Sign::Positive => [d, a, b, c],
                    Sign::Negative => [b, c, d, a],
                };
                Crossing { edges, sign: x.sign.flip() }
            })
            .collect();
        LinkDiagram { crossings, ..self.clone() }
    }

    pub fn insert_half_twists(&self, n: usize) -> Result<Self, DiagramError> {
        twist::insert_half_twists(self, n)
    }

    /// Adds an R1 kink of the given sign on `edge`.
    pub fn add_kink(&self, edge: u32, sign: Sign) -> Result<Self, DiagramError> {
        twist::add_kink(self, edge, sign)
    }

    /// Adds an R2 clasp (a positive then a negative crossing) between the
    /// marked strands.
    pub fn add_clasp(&self) -> Result<Self, DiagramError> {
        twist::add_clasp(self)
    }

    /// Both positions of each edge label: `(crossing, slot)`; index is `label - 1`.
    pub(crate) fn occurrences(&self) -> Vec<[(usize, usize); 2]> {
        let tuples: Vec<[u32; 4]> = self.crossings.iter().map(|x| x.edges).collect();
        occurrences(&tuples, self.edge_count)
    }

    /// `(tail, head)` positions of each edge along the orientation.
    pub(crate) fn edge_ends(&self) -> Vec<((usize, usize), (usize, usize))> {
        self.occurrences()
            .into_iter()
            .map(|[p, q]| {
                if slot_is_incoming(p.1, self.crossings[p.0].sign) {
                    (q, p)
                } else {
                    (p, q)
                }
            })
            .collect()
    }

    /// Boundary cycles of the complementary regions. Each face is traversed
    /// with the region on its left; a dart `(x, s)` leaves crossing `x`
    /// along the edge in slot `s`.
    pub(crate) fn faces(&self) -> Vec<Vec<Dart>> {
        let occ = self.occurrences();
        let c = self.crossings.len();
        let partner = |(x, s): Dart| -> Dart {
            let e = self.crossings[x].edges[s] as usize - 1;
            let [p, q] = occ[e];
            if p == (x, s) {
                q
            } else {
                p
            }
        };
        let mut seen = vec![[false; 4]; c];
        let mut faces = Vec::new();
        for x in 0..c {
            for s in 0..4 {
                if seen[x][s] {
                    continue;
                }
                let mut face = Vec::new();
                let mut dart = (x, s);
                while !seen[dart.0][dart.1] {
                    seen[dart.0][dart.1] = true;
                    face.push(dart);
                    let (y, t) = partner(dart);
                    dart = (y, (t + 3) % 4);
                }
                faces.push(face);
            }
        }
        faces
    }

    fn crossing_pieces(&self) -> usize {
        let c = self.crossings.len();
        let mut uf = crate::union_find::UnionFind::new(c);
        for [(x, _), (y, _)] in self.occurrences() {
            uf.union(x as u32, y as u32);
        }
        (0..c as u32).filter(|&x| uf.find(x) == x).count()
    }

    /// Connected pieces of the projection, crossingless circles included.
    pub fn split_pieces(&self) -> usize {
        self.crossing_pieces() + self.free_loops as usize
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let c = self.crossings.len();
        if c == 0 {
            return Ok(());
        }
        let faces = self.faces().len();
        let expected = c + 2 * self.crossing_pieces();
        if faces != expected {
            return Err(DiagramError::NonPlanar { faces, expected });
        }
        Ok(())
    }

    /// Decides whether two strands can carry a twist disk and, if so,
    /// whether they run the same way through it.
    fn classify_mark(&self, r1: EdgeRef, r2: EdgeRef) -> Result<TwistRegion, DiagramError> {
        if r1 == r2 {
            return Err(DiagramError::DegenerateMark);
        }
        for r in [r1, r2] {
            let ok = match r {
                EdgeRef::Edge(e) => e >= 1 && e <= self.edge_count,
                EdgeRef::Loop(l) => l >= 1 && l <= self.free_loops,
            };
            if !ok {
                return Err(DiagramError::UnknownMarkedStrand(r));
            }
        }
        let coherent = match (r1, r2) {
            (EdgeRef::Edge(e1), EdgeRef::Edge(e2)) => match self.twist_face(e1, e2) {
                Some(FaceSide::Coherent { .. }) => true,
                Some(FaceSide::Incoherent) => false,
                None => return Err(DiagramError::MarkNotOnCommonFace(r1, r2)),
            },
            // a crossingless circle can be drawn inside any face, either way round
            _ => true,
        };
        Ok(TwistRegion { edge_pair: (r1, r2), coherent })
    }

    /// Locates the face used for twisting between edges `e1` and `e2`,
    /// preferring the face on the left of `e1`.
    pub(crate) fn twist_face(&self, e1: u32, e2: u32) -> Option<FaceSide> {
        let ends = self.edge_ends();
        let (t1, h1) = ends[e1 as usize - 1];
        let (t2, h2) = ends[e2 as usize - 1];
        let faces = self.faces();
        let face_of = |d: Dart| faces.iter().position(|f| f.contains(&d)).expect("every dart lies on a face");
        // the dart at an edge's tail runs along the edge; at its head, against it
        let left1 = face_of(t1);
        let right1 = face_of(h1);
        let along2 = face_of(t2);
        let against2 = face_of(h2);
        if left1 == against2 {
            Some(FaceSide::Coherent { right: e1, left: e2 })
        } else if right1 == along2 {
            Some(FaceSide::Coherent { right: e2, left: e1 })
        } else if left1 == along2 || right1 == against2 {
            Some(FaceSide::Incoherent)
        } else {
            None
        }
    }

    /// Relabels edges so each component reads consecutively along its
    /// orientation. Components are started at the first unlabelled edge met
    /// when reading the crossings in order, so the result depends only on
    /// the crossing order, not on the incoming labels.
    pub(crate) fn canonical_relabel(&self) -> Self {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let ends = self.edge_ends();
        let n = self.edge_count as usize;
        let mut new_label = vec![0u32; n];
        let mut next = 1u32;
        for x in &self.crossings {
            for l in x.edges {
                let mut e = l as usize - 1;
                while new_label[e] == 0 {
                    new_label[e] = next;
                    next += 1;
                    let (y, s) = ends[e].1;
                    e = self.crossings[y].edges[(s + 2) % 4] as usize - 1;
                }
            }
        }
        let map = |l: u32| new_label[l as usize - 1];
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing { edges: x.edges.map(map), sign: x.sign })
            .collect();
        let remap = |r: EdgeRef| match r {
            EdgeRef::Edge(e) => EdgeRef::Edge(map(e)),
            l => l,
        };
        let marked_region = self.marked_region.map(|m| TwistRegion {
            edge_pair: (remap(m.edge_pair.0), remap(m.edge_pair.1)),
            coherent: m.coherent,
        });
        LinkDiagram { crossings, edge_count: self.edge_count, free_loops: self.free_loops, marked_region }
    }

    /// Number of link components (crossingless ones included).
    pub fn component_count(&self) -> usize {
        let ends = self.edge_ends();
        let n = self.edge_count as usize;
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                let (x, s) = ends[e].1;
                e = self.crossings[x].edges[(s + 2) % 4] as usize - 1;
            }
        }
        count + self.free_loops as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum FaceSide {
    /// `right` has the twist face on its left, `left` on its right.
    Coherent { right: u32, left: u32 },
    Incoherent,
}

fn check_edge_degrees(tuples: &[[u32; 4]]) -> Result<u32, DiagramError> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for t in tuples {
        for &l in t {
            *counts.entry(l).or_default() += 1;
        }
    }
    let max = counts.keys().next_back().copied().unwrap_or(0);
    if let Some(&c) = counts.get(&0) {
        return Err(DiagramError::EdgeDegreeError { label: 0, count: c });
    }
    for label in 1..=max {
        let count = counts.get(&label).copied().unwrap_or(0);
        if count != 2 {
            return Err(DiagramError::EdgeDegreeError { label, count });
        }
    }
    Ok(max)
}

fn occurrences(tuples: &[[u32; 4]], edge_count: u32) -> Vec<[(usize, usize); 2]> {
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(2); edge_count as usize];
    for (x, t) in tuples.iter().enumerate() {
        for (s, &l) in t.iter().enumerate() {
            occ[l as usize - 1].push((x, s));
        }
    }
    occ.into_iter().map(|v| [v[0], v[1]]).collect()
}

/// Propagates over-strand directions from the under-strands.
fn infer_signs(tuples: &[[u32; 4]], occ: &[[(usize, usize); 2]]) -> Result<Vec<Sign>, DiagramError> {
    let c = tuples.len();
    let mut signs: Vec<Option<Sign>> = vec![None; c];
    let mut queue = Vec::new();

    // sign making `slot` (odd) of a crossing incoming or outgoing
    let sign_for = |slot: usize, incoming: bool| -> Sign {
        match (slot, incoming) {
            (1, true) | (3, false) => Sign::Negative,
            _ => Sign::Positive,
        }
    };
    let assign = |signs: &mut Vec<Option<Sign>>, queue: &mut Vec<usize>, x: usize, s: Sign, label: u32| {
        match signs[x] {
            None => {
                signs[x] = Some(s);
                queue.push(x);
                Ok(())
            }
            Some(old) if old == s => Ok(()),
            Some(_) => Err(DiagramError::OrientationInconsistent { label }),
        }
    };

    for (e, &[(x, s), (y, t)]) in occ.iter().enumerate() {
        let label = e as u32 + 1;
        match (s % 2, t % 2) {
            (0, 0) => {
                if s == t {
                    return Err(DiagramError::OrientationInconsistent { label });
                }
            }
            (0, _) => assign(&mut signs, &mut queue, y, sign_for(t, s == 2), label)?,
            (_, 0) => assign(&mut signs, &mut queue, x, sign_for(s, t == 2), label)?,
            _ => {}
        }
    }

    while let Some(x) = queue.pop() {
        let sx = signs[x].expect("queued crossings are signed");
        for s in [1usize, 3] {
            let label = tuples[x][s];
            let [p, q] = occ[label as usize - 1];
            let other = if p == (x, s) { q } else { p };
            if other.0 == x && other.1 % 2 == 1 {
                continue;
            }
            if other.1 % 2 == 1 {
                let incoming_here = slot_is_incoming(s, sx);
                assign(&mut signs, &mut queue, other.0, sign_for(other.1, !incoming_here), label)?;
            }
        }
    }

    signs
        .into_iter()
        .enumerate()
        .map(|(x, s)| s.ok_or(DiagramError::AmbiguousOrientation { crossing: x }))
        .collect()
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pd::to_pd_string(self))
    }
}
