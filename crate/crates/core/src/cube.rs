//! The cube of resolutions: smoothings, their circles, and the merge/split
//! edges between them.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::diagram::LinkDiagram;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("smoothing has length {got}, diagram has {expected} crossings")]
    LengthMismatch { got: usize, expected: usize },
    #[error("smoothing index longer than 64 crossings or with bits beyond its length")]
    InvalidIndex,
    #[error("endpoints are not joined by a cube edge")]
    NotACubeEdge,
    #[error("position {0} is already 1-smoothed")]
    PositionAlreadyOne(usize),
    #[error("cube edge at crossing {0} neither merges nor splits circles (non-planar input)")]
    DegenerateEdge(usize),
}

/// A vertex of the cube: bit `p` is the smoothing of crossing `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmoothingIndex {
    bits: u64,
    len: u32,
}

impl SmoothingIndex {
    pub fn new(bits: u64, len: usize) -> Result<Self, CubeError> {
        if len > 64 || (len < 64 && bits >> len != 0) {
            return Err(CubeError::InvalidIndex);
        }
        Ok(SmoothingIndex { bits, len: len as u32 })
    }

    pub fn zeros(len: usize) -> Result<Self, CubeError> {
        Self::new(0, len)
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self, CubeError> {
        let word = bits.iter().enumerate().fold(0u64, |w, (p, &b)| if b { w | 1 << p } else { w });
        Self::new(word, bits.len())
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// |ε|, the number of 1-smoothings.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn get(&self, p: usize) -> bool {
        self.bits >> p & 1 == 1
    }

    pub fn with_one(&self, p: usize) -> Self {
        SmoothingIndex { bits: self.bits | 1 << p, len: self.len }
    }
}

/// The circles of one smoothing, ordered by their smallest arc label;
/// crossingless components follow the arc circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleDecomposition {
    arc_to_circle: Vec<u32>,
    arc_circles: usize,
    free_loops: u32,
}

impl CircleDecomposition {
    pub fn circle_count(&self) -> usize {
        self.arc_circles + self.free_loops as usize
    }

    /// Circle containing the arc with PD label `label`.
    pub fn circle_of_arc(&self, label: u32) -> usize {
        self.arc_to_circle[label as usize - 1] as usize
    }

    /// Circle index of the `l`-th crossingless component (1-based).
    pub fn free_loop_circle(&self, l: u32) -> usize {
        self.arc_circles + l as usize - 1
    }

    pub fn arc_to_circle(&self) -> &[u32] {
        &self.arc_to_circle
    }
}

/// Reusable circle finder for many smoothings of the same diagram.
pub(crate) struct Resolver {
    pairs: Vec<[[(u32, u32); 2]; 2]>,
    edges: usize,
    free_loops: usize,
    uf: UnionFind,
    root_id: Vec<u16>,
}

impl Resolver {
    pub fn new(d: &LinkDiagram) -> Self {
        let pairs = d
            .crossings()
            .iter()
            .map(|x| {
                let z = x.zero_smoothing().map(|(a, b)| (a - 1, b - 1));
                let o = x.one_smoothing().map(|(a, b)| (a - 1, b - 1));
                [z, o]
            })
            .collect();
        let edges = d.edge_count() as usize;
        Resolver {
            pairs,
            edges,
            free_loops: d.free_loops() as usize,
            uf: UnionFind::new(edges),
            root_id: vec![u16::MAX; edges],
        }
    }

    pub fn edges(&self) -> usize {
        self.edges
    }

    /// Writes the circle of each arc into `out` and returns the total circle
    /// count, crossingless components included.
    pub fn resolve(&mut self, bits: u64, out: &mut [u16]) -> usize {
        self.uf.reset();
        for (p, pr) in self.pairs.iter().enumerate() {
            for &(a, b) in &pr[(bits >> p & 1) as usize] {
                self.uf.union(a, b);
            }
        }
        self.root_id.iter_mut().for_each(|r| *r = u16::MAX);
        let mut next = 0u16;
        for e in 0..self.edges {
            let r = self.uf.find(e as u32) as usize;
            if self.root_id[r] == u16::MAX {
                self.root_id[r] = next;
                next += 1;
            }
            out[e] = self.root_id[r];
        }
        next as usize + self.free_loops
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }
}

pub fn resolve(d: &LinkDiagram, eps: &SmoothingIndex) -> Result<CircleDecomposition, CubeError> {
    if eps.len() != d.crossing_count() {
        return Err(CubeError::LengthMismatch { got: eps.len(), expected: d.crossing_count() });
    }
    let mut r = Resolver::new(d);
    let mut arcs = vec![0u16; r.edges()];
    let total = r.resolve(eps.bits(), &mut arcs);
    Ok(CircleDecomposition {
        arc_to_circle: arcs.into_iter().map(u32::from).collect(),
        arc_circles: total - r.free_loops(),
        free_loops: d.free_loops(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Two circles of the source become `into` in the target.
    Merge { merged: (usize, usize), into: usize },
    /// Circle `split` of the source becomes two target circles.
    Split { split: usize, into: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEdge {
    pub from: SmoothingIndex,
    pub to: SmoothingIndex,
    pub position: usize,
    pub kind: EdgeKind,
    /// l(ε, ε'): number of 1s in front of `position`.
    pub sign_exponent: u32,
    /// Target circle of every source circle; merged circles share their
    /// image, a split circle maps to the first of its two images.
    pub factor_map: Vec<usize>,
}

impl CubeEdge {
    pub fn sign(&self) -> i8 {
        if self.sign_exponent % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn classify_edge(d: &LinkDiagram, from: &SmoothingIndex, to: &SmoothingIndex) -> Result<CubeEdge, CubeError> {
    let c = d.crossing_count();
    if from.len() != c || to.len() != c {
        return Err(CubeError::LengthMismatch { got: from.len().max(to.len()), expected: c });
    }
    let diff = from.bits() ^ to.bits();
    if diff.count_ones() != 1 || diff & to.bits() == 0 {
        return Err(CubeError::NotACubeEdge);
    }
    let position = diff.trailing_zeros() as usize;
    let src = resolve(d, from)?;
    let dst = resolve(d, to)?;
    let [a, b, cc, _] = d.crossings()[position].edges();
    let factor_map = factor_map(&src, &dst);
    let kind = match (src.circle_of_arc(a) == src.circle_of_arc(cc), dst.circle_of_arc(a) == dst.circle_of_arc(b)) {
        (false, _) => EdgeKind::Merge {
            merged: (src.circle_of_arc(a), src.circle_of_arc(cc)),
            into: dst.circle_of_arc(a),
        },
        (true, false) => EdgeKind::Split {
            split: src.circle_of_arc(a),
            into: (dst.circle_of_arc(a), dst.circle_of_arc(b)),
        },
        (true, true) => return Err(CubeError::DegenerateEdge(position)),
    };
    Ok(CubeEdge {
        from: *from,
        to: *to,
        position,
        kind,
        sign_exponent: (from.bits() & ((1u64 << position) - 1)).count_ones(),
        factor_map,
    })
}

fn factor_map(src: &CircleDecomposition, dst: &CircleDecomposition) -> Vec<usize> {
    let mut map = vec![usize::MAX; src.circle_count()];
    for (arc, &c) in src.arc_to_circle.iter().enumerate() {
        if map[c as usize] == usize::MAX {
            map[c as usize] = dst.arc_to_circle[arc] as usize;
        }
    }
    for l in 1..=src.free_loops {
        map[src.free_loop_circle(l)] = dst.free_loop_circle(l);
    }
    map
}

/// (-1)^l where l counts the 1s of `eps` before `position`.
pub fn edge_sign(eps: &SmoothingIndex, position: usize) -> Result<i8, CubeError> {
    if position >= eps.len() {
        return Err(CubeError::LengthMismatch { got: position + 1, expected: eps.len() });
    }
    if eps.get(position) {
        return Err(CubeError::PositionAlreadyOne(position));
    }
    let l = (eps.bits() & ((1u64 << position) - 1)).count_ones();
    Ok(if l % 2 == 0 { 1 } else { -1 })
}

/// Pascal's triangle up to `n`.
pub(crate) struct Binomials {
    rows: Vec<Vec<u64>>,
}

impl Binomials {
    pub fn new(n: usize) -> Self {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut row = vec![1u64; i + 1];
            for k in 1..i {
                row[k] = rows[i - 1][k - 1] + rows[i - 1][k];
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    pub fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.rows[n][k]
        }
    }

    /// Position of `bits` among same-weight words in increasing numeric order.
    pub fn colex_rank(&self, mut bits: u64) -> usize {
        let mut rank = 0u64;
        let mut j = 1;
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            rank += self.get(p, j);
            j += 1;
            bits &= bits - 1;
        }
        rank as usize
    }
}

/// Smoothings of weight `w` on `c` crossings in increasing numeric order.
pub(crate) fn states_of_weight(c: usize, w: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << c;
    let first: u64 = if w == 0 { 0 } else { u64::MAX >> (64 - w) };
    let mut cur: Option<u64> = (w <= c).then_some(first);
    core::iter::from_fn(move || {
        let v = cur?;
        cur = if v == 0 {
            None
        } else {
            // Gosper's hack
            let t = v | (v - 1);
            let next = (t.wrapping_add(1)) | (((!t & t.wrapping_add(1)) - 1) >> (v.trailing_zeros() + 1));
            ((next as u128) < limit && t != u64::MAX).then_some(next)
        };
        Some(v)
    })
}
