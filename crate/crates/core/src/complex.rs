//! The bigraded Khovanov cochain complex.
//!
//! A generator of `C^i` is a smoothing of weight `i` together with a label
//! `1` or `X` on each of its circles; its q-grading is
//! `j = #1 - #X + i`. Generators of one smoothing are ordered
//! lexicographically with `1 < X` and circles in canonical order, and
//! smoothings are ordered numerically, so every `(i, j)` block has a fixed
//! basis and differentials are reproducible matrices with entries `±1`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use thiserror::Error;

use crate::cube::{states_of_weight, Binomials, Resolver};
use crate::diagram::LinkDiagram;
use crate::linalg::SparseRationalMatrix;

/// Crossing limit applied when no other budget is configured.
pub const DEFAULT_BUDGET: usize = 16;

/// Hard ceiling of the engine: smoothings are 64-bit words.
const MAX_CROSSINGS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("diagram has {crossings} crossings, budget is {budget}")]
    BudgetExceeded { crossings: usize, budget: usize },
    #[error("d∘d is nonzero on the block (i, j) = ({i}, {j})")]
    NonZeroSquare { i: i64, j: i64 },
}

/// The Frobenius algebra V = Q{1, X}: `deg 1 = 1`, `deg X = -1`.
pub struct FrobeniusData;

impl FrobeniusData {
    pub const ONE: bool = false;
    pub const X: bool = true;

    pub fn degree(label: bool) -> i64 {
        if label {
            -1
        } else {
            1
        }
    }

    /// m(a ⊗ b), or `None` for m(X ⊗ X) = 0.
    pub fn multiply(a: bool, b: bool) -> Option<bool> {
        match (a, b) {
            (true, true) => None,
            _ => Some(a | b),
        }
    }

    /// Terms of Δ(a): Δ(1) = 1⊗X + X⊗1, Δ(X) = X⊗X.
    pub fn comultiply(a: bool) -> Vec<(bool, bool)> {
        if a {
            vec![(true, true)]
        } else {
            vec![(false, true), (true, false)]
        }
    }
}

/// Counts and fingerprint of the diagram a complex or table came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagramMeta {
    pub n_plus: usize,
    pub n_minus: usize,
    pub crossings: usize,
    pub fingerprint: u64,
}

impl DiagramMeta {
    pub fn of(d: &LinkDiagram) -> Self {
        let (n_plus, n_minus, _) = d.crossing_counts();
        DiagramMeta { n_plus, n_minus, crossings: d.crossing_count(), fingerprint: fingerprint(d) }
    }
}

/// 64-bit FNV-1a of the canonical PD serialization.
pub fn fingerprint(d: &LinkDiagram) -> u64 {
    d.to_pd().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// One differential block in compressed-column form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBlock {
    rows: usize,
    cols: usize,
    col_ptr: Vec<u32>,
    row_idx: Vec<u32>,
    vals: Vec<i8>,
}

impl SparseBlock {
    fn empty(rows: usize) -> Self {
        SparseBlock { rows, cols: 0, col_ptr: vec![0], row_idx: Vec::new(), vals: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn column(&self, c: usize) -> impl Iterator<Item = (u32, i8)> + '_ {
        let (s, e) = (self.col_ptr[c] as usize, self.col_ptr[c + 1] as usize);
        self.row_idx[s..e].iter().copied().zip(self.vals[s..e].iter().copied())
    }

    /// `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (u32, u32, i8)> + '_ {
        (0..self.cols).flat_map(move |c| self.column(c).map(move |(r, v)| (r, c as u32, v)))
    }

    pub fn to_rational(&self) -> SparseRationalMatrix {
        let e: Vec<(usize, usize, i64)> = self.triplets().map(|(r, c, v)| (r as usize, c as usize, v as i64)).collect();
        SparseRationalMatrix::from_integers(self.rows, self.cols, &e).expect("block entries are in range and distinct")
    }

    /// Exact rank over Q.
    pub fn rank(&self) -> usize {
        // eliminate on the transpose: one row per source generator
        crate::linalg::rank_integer(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v as i64)))
    }

    pub fn rank_mod_prime(&self, p: u64) -> usize {
        crate::linalg::rank_mod_prime(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v as i64)), p)
    }

    /// Triplets of the transpose with the source columns in `dropped`
    /// (sorted) left out.
    fn kept_transpose<'a>(&'a self, dropped: &'a [u32]) -> impl Iterator<Item = (u32, u32, i64)> + 'a {
        self.triplets().filter(move |(_, c, _)| dropped.binary_search(c).is_err()).map(|(r, c, v)| (c, r, v as i64))
    }

    /// Rank restricted to the sources outside `dropped`, with the pivot
    /// rows (targets) of the elimination.
    ///
    /// If `dropped` are pivot targets of the incoming differential, the
    /// image of that differential complements the kept sources, and it is
    /// killed by this one, so the restricted rank is the full rank.
    pub fn reduced_rank(&self, dropped: &[u32]) -> Vec<u32> {
        crate::linalg::rank_integer_with_pivots(self.cols, self.rows, self.kept_transpose(dropped))
    }

    pub fn reduced_rank_mod_prime(&self, dropped: &[u32], p: u64) -> usize {
        crate::linalg::rank_mod_prime(self.cols, self.rows, self.kept_transpose(dropped), p)
    }

    /// Whether `next ∘ self` vanishes.
    pub fn composes_to_zero(&self, next: &SparseBlock) -> bool {
        if self.cols == 0 || next.rows == 0 {
            return true;
        }
        let mut acc = vec![0i64; next.rows];
        let mut touched = Vec::new();
        for c in 0..self.cols {
            for (mid, a) in self.column(c) {
                if mid as usize >= next.cols {
                    continue;
                }
                for (r, b) in next.column(mid as usize) {
                    if acc[r as usize] == 0 {
                        touched.push(r);
                    }
                    acc[r as usize] += a as i64 * b as i64;
                }
            }
            for r in touched.drain(..) {
                if acc[r as usize] != 0 {
                    return false;
                }
            }
        }
        true
    }

    #[cfg(test)]
    pub(crate) fn flip_first_entry(&mut self) {
        if let Some(v) = self.vals.first_mut() {
            *v = -*v;
        }
    }
}

/// All smoothings of one weight with their circles and generator offsets.
pub(crate) struct Layer {
    pub i: usize,
    pub states: Vec<u64>,
    /// Circle count of each smoothing, crossingless components included.
    pub ks: Vec<u8>,
    /// Circle of every arc, `edges` entries per smoothing.
    arcs: Vec<u16>,
    /// Offset of the generators of (smoothing, #X) inside their j-block.
    offsets: Vec<u32>,
    stride: usize,
    /// Dimension of each q-graded piece.
    pub dims: BTreeMap<i64, usize>,
}

impl Layer {
    pub fn j_of(&self, k: usize, x: usize) -> i64 {
        k as i64 - 2 * x as i64 + self.i as i64
    }

    /// Number of X labels a smoothing with `k` circles needs to reach `j`.
    pub fn x_for(&self, k: usize, j: i64) -> Option<usize> {
        let twice = k as i64 + self.i as i64 - j;
        (twice >= 0 && twice % 2 == 0 && twice / 2 <= k as i64).then_some((twice / 2) as usize)
    }

    fn offset(&self, state: usize, x: usize) -> u32 {
        self.offsets[state * self.stride + x]
    }

    fn arcs_of(&self, state: usize, edges: usize) -> &[u16] {
        &self.arcs[state * edges..(state + 1) * edges]
    }
}

enum EdgeAction {
    /// Source circles `a`, `b` fuse.
    Merge { a: u8, b: u8 },
    /// Source circle `s` becomes target circles `t1`, `t2`.
    Split { s: u8, t1: u8, t2: u8 },
}

/// One cube edge leaving a smoothing.
struct EdgeData {
    target: u32,
    negative: bool,
    action: EdgeAction,
    /// Target circle of each source circle (a split circle maps to `t1`).
    map: Vec<u8>,
}


/// Maps `f` over `items`, on the rayon pool when the `parallel` feature is on.
/// Results keep the input order.
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Smoothings and differentials of one diagram, generated layer by layer.
pub(crate) struct Cube<'a> {
    d: &'a LinkDiagram,
    c: usize,
    edges: usize,
    free_loops: usize,
    binom: Binomials,
    /// Arcs a, b, c (0-based) of every crossing.
    ports: Vec<[usize; 3]>,
}

/// Generators are words whose bit `k - 1 - t` labels circle `t` with X, so
/// numeric order is the lexicographic basis order.
fn lex_bit(k: usize, circle: usize) -> u64 {
    1 << (k - 1 - circle)
}

impl<'a> Cube<'a> {
    pub fn new(d: &'a LinkDiagram, budget: usize) -> Result<Self, ComplexError> {
        let c = d.crossing_count();
        let limit = budget.min(MAX_CROSSINGS);
        if c > limit {
            return Err(ComplexError::BudgetExceeded { crossings: c, budget: limit });
        }
        let ports = d
            .crossings()
            .iter()
            .map(|x| {
                let [a, b, cc, _] = x.edges();
                [a as usize - 1, b as usize - 1, cc as usize - 1]
            })
            .collect();
        let edges = d.edge_count() as usize;
        Ok(Cube {
            d,
            c,
            edges,
            free_loops: d.free_loops() as usize,
            binom: Binomials::new(c.max(edges + d.free_loops() as usize) + 1),
            ports,
        })
    }

    pub fn crossings(&self) -> usize {
        self.c
    }

    pub fn layer(&self, i: usize) -> Layer {
        let mut resolver = Resolver::new(self.d);
        let states: Vec<u64> = states_of_weight(self.c, i).collect();
        let mut arcs = vec![0u16; states.len() * self.edges];
        let mut ks = Vec::with_capacity(states.len());
        for (n, &s) in states.iter().enumerate() {
            let k = resolver.resolve(s, &mut arcs[n * self.edges..(n + 1) * self.edges]);
            ks.push(k as u8);
        }
        let stride = ks.iter().copied().max().unwrap_or(0) as usize + 1;
        let mut offsets = vec![0u32; states.len() * stride];
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for (n, &k) in ks.iter().enumerate() {
            let k = k as usize;
            for x in 0..=k {
                let j = k as i64 - 2 * x as i64 + i as i64;
                let dim = dims.entry(j).or_insert(0);
                offsets[n * stride + x] = *dim as u32;
                *dim += self.binom.get(k, x) as usize;
            }
        }
        Layer { i, states, ks, arcs, offsets, stride, dims }
    }

    fn edge_data(&self, src: &Layer, dst: &Layer) -> Vec<Vec<EdgeData>> {
        let mut out = Vec::with_capacity(src.states.len());
        for (n, &s) in src.states.iter().enumerate() {
            let sa = src.arcs_of(n, self.edges);
            let (k, sf) = (src.ks[n] as usize, src.ks[n] as usize - self.free_loops);
            let mut row = Vec::new();
            for p in (0..self.c).filter(|p| s >> p & 1 == 0) {
                let ti = self.binom.colex_rank(s | 1 << p);
                debug_assert_eq!(dst.states[ti], s | 1 << p);
                let ta = dst.arcs_of(ti, self.edges);
                let (k2, tf) = (dst.ks[ti] as usize, dst.ks[ti] as usize - self.free_loops);
                let mut map = vec![u8::MAX; k];
                for (arc, &circle) in sa.iter().enumerate() {
                    if map[circle as usize] == u8::MAX {
                        map[circle as usize] = ta[arc] as u8;
                    }
                }
                for l in 0..self.free_loops {
                    map[sf + l] = (tf + l) as u8;
                }
                let [a, b, cc] = self.ports[p];
                let action = if k2 + 1 == k {
                    EdgeAction::Merge { a: sa[a] as u8, b: sa[cc] as u8 }
                } else {
                    debug_assert_eq!(k2, k + 1, "cube edges change the circle count by one");
                    EdgeAction::Split { s: sa[a] as u8, t1: ta[a] as u8, t2: ta[b] as u8 }
                };
                row.push(EdgeData {
                    target: ti as u32,
                    negative: (s & ((1 << p) - 1)).count_ones() % 2 == 1,
                    action,
                    map,
                });
            }
            out.push(row);
        }
        out
    }

    /// The block of `d^i` on q-grading `j`.
    fn block(&self, src: &Layer, dst: &Layer, edges: &[Vec<EdgeData>], j: i64) -> SparseBlock {
        let cols = src.dims.get(&j).copied().unwrap_or(0);
        let rows = dst.dims.get(&j).copied().unwrap_or(0);
        let mut block = SparseBlock::empty(rows);
        block.col_ptr.reserve(cols);
        let mut column: Vec<(u32, i8)> = Vec::new();
        for (n, &k) in src.ks.iter().enumerate() {
            let k = k as usize;
            let Some(x) = src.x_for(k, j) else { continue };
            // target generator bit of each source generator bit, per edge
            let bitmaps: Vec<Vec<u64>> = edges[n]
                .iter()
                .map(|e| {
                    let k2 = dst.ks[e.target as usize] as usize;
                    (0..k).map(|b| lex_bit(k2, e.map[k - 1 - b] as usize)).collect()
                })
                .collect();
            for u in states_of_weight(k, x) {
                column.clear();
                for (e, bitmap) in edges[n].iter().zip(&bitmaps) {
                    let ti = e.target as usize;
                    let k2 = dst.ks[ti] as usize;
                    let val: i8 = if e.negative { -1 } else { 1 };
                    let image = |skip: u64| {
                        let mut w = u & !skip;
                        let mut t = 0u64;
                        while w != 0 {
                            t |= bitmap[w.trailing_zeros() as usize];
                            w &= w - 1;
                        }
                        t
                    };
                    let mut emit = |t: u64| {
                        let x2 = t.count_ones() as usize;
                        let row = dst.offset(ti, x2) as usize + self.binom.colex_rank(t);
                        debug_assert!(row < rows && dst.j_of(k2, x2) == j, "d must preserve j");
                        column.push((row as u32, val));
                    };
                    match e.action {
                        EdgeAction::Merge { a, b } => {
                            let (ba, bb) = (lex_bit(k, a as usize), lex_bit(k, b as usize));
                            if u & ba == 0 || u & bb == 0 {
                                emit(image(0));
                            }
                        }
                        EdgeAction::Split { s, t1, t2 } => {
                            let bs = lex_bit(k, s as usize);
                            let base = image(bs);
                            let (b1, b2) = (lex_bit(k2, t1 as usize), lex_bit(k2, t2 as usize));
                            if u & bs != 0 {
                                emit(base | b1 | b2);
                            } else {
                                emit(base | b1);
                                emit(base | b2);
                            }
                        }
                    }
                }
                column.sort_unstable_by_key(|e| e.0);
                for &(r, v) in &column {
                    block.row_idx.push(r);
                    block.vals.push(v);
                }
                block.col_ptr.push(block.row_idx.len() as u32);
                block.cols += 1;
            }
        }
        debug_assert_eq!(block.cols, cols);
        block
    }

    /// All blocks of `d^i : C^i -> C^{i+1}`, keyed by j.
    pub fn differential(&self, src: &Layer, dst: &Layer) -> BTreeMap<i64, SparseBlock> {
        let edges = self.edge_data(src, dst);
        let js: Vec<i64> = src.dims.keys().copied().collect();
        let blocks = par_map(&js, |&j| self.block(src, dst, &edges, j));
        js.into_iter().zip(blocks).collect()
    }
}

/// The complex with every block materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    meta: DiagramMeta,
    dims: BTreeMap<(i64, i64), usize>,
    blocks: BTreeMap<(i64, i64), SparseBlock>,
}

impl GradedComplex {
    pub fn meta(&self) -> DiagramMeta {
        self.meta
    }

    /// Nonzero dimensions of `C^{i,j}`.
    pub fn dims(&self) -> &BTreeMap<(i64, i64), usize> {
        &self.dims
    }

    pub fn dim(&self, i: i64, j: i64) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `d^i` restricted to q-grading `j`, for every nonzero `C^{i,j}` with
    /// `i < c`.
    pub fn blocks(&self) -> &BTreeMap<(i64, i64), SparseBlock> {
        &self.blocks
    }

    pub fn block(&self, i: i64, j: i64) -> Option<&SparseBlock> {
        self.blocks.get(&(i, j))
    }

    #[cfg(test)]
    pub(crate) fn block_mut(&mut self, i: i64, j: i64) -> Option<&mut SparseBlock> {
        self.blocks.get_mut(&(i, j))
    }

    /// Sparse-triplet dump, one `i j row col num den` line per entry.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for ((i, j), b) in &self.blocks {
            for (r, c, v) in b.triplets() {
                let _ = writeln!(out, "{i} {j} {r} {c} {v} 1");
            }
        }
        out
    }
}

pub fn build_complex(d: &LinkDiagram, budget: usize) -> Result<GradedComplex, ComplexError> {
    let cube = Cube::new(d, budget)?;
    let mut dims = BTreeMap::new();
    let mut blocks = BTreeMap::new();
    let mut layer = cube.layer(0);
    for i in 0..=cube.crossings() {
        dims.extend(layer.dims.iter().map(|(&j, &n)| ((i as i64, j), n)));
        if i == cube.crossings() {
            break;
        }
        let next = cube.layer(i + 1);
        for (j, b) in cube.differential(&layer, &next) {
            blocks.insert((i as i64, j), b);
        }
        layer = next;
    }
    Ok(GradedComplex { meta: DiagramMeta::of(d), dims, blocks })
}

/// Checks `d^{i+1} ∘ d^i = 0` on every block, reporting the first failing
/// `(i, j)`.
pub fn verify_d_squared(c: &GradedComplex) -> Result<(), ComplexError> {
    for (&(i, j), b) in &c.blocks {
        if let Some(next) = c.blocks.get(&(i + 1, j)) {
            if !b.composes_to_zero(next) {
                return Err(ComplexError::NonZeroSquare { i, j });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{resolve, SmoothingIndex};
    use crate::diagram::{braid_closure, Sign};

    fn trefoil() -> LinkDiagram {
        "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".parse().unwrap()
    }

    #[test]
    fn frobenius_tables() {
        use FrobeniusData as F;
        assert_eq!(F::multiply(F::ONE, F::ONE), Some(F::ONE));
        assert_eq!(F::multiply(F::ONE, F::X), Some(F::X));
        assert_eq!(F::multiply(F::X, F::ONE), Some(F::X));
        assert_eq!(F::multiply(F::X, F::X), None);
        assert_eq!(F::comultiply(F::ONE), vec![(F::ONE, F::X), (F::X, F::ONE)]);
        assert_eq!(F::comultiply(F::X), vec![(F::X, F::X)]);
        assert_eq!(F::degree(F::ONE) + F::degree(F::X), 0);
    }

    #[test]
    fn unknot_complex() {
        let c = build_complex(&LinkDiagram::unknot(), DEFAULT_BUDGET).unwrap();
        assert_eq!(c.dims().clone(), BTreeMap::from([((0, -1), 1), ((0, 1), 1)]));
        assert!(c.blocks().is_empty());
    }

    #[test]
    fn kink_complexes() {
        for sign in [Sign::Positive, Sign::Negative] {
            let kinked = LinkDiagram::unknot().add_kink(0, sign);
            assert!(kinked.is_err(), "the unknot has no arc to kink");
        }
        let one_crossing = LinkDiagram::from_pd(vec![[1, 1, 2, 2]], 0, None).unwrap();
        let c = build_complex(&one_crossing, DEFAULT_BUDGET).unwrap();
        // V⊗V -> V{1} or V -> (V⊗V){1}: total dimension 6 either way
        assert_eq!(c.dims().values().sum::<usize>(), 6);
        assert!(verify_d_squared(&c).is_ok());
        assert!(c.blocks().values().all(|b| b.triplets().all(|(_, _, v)| v.abs() == 1)));
    }

    #[test]
    fn dimensions_match_circle_counts() {
        for d in [trefoil(), braid_closure(&[1, -2, 1, -2], 3).unwrap()] {
            let c = build_complex(&d, DEFAULT_BUDGET).unwrap();
            let n = d.crossing_count();
            for i in 0..=n {
                let expected: usize = (0u64..1 << n)
                    .filter(|s| s.count_ones() as usize == i)
                    .map(|s| 1usize << resolve(&d, &SmoothingIndex::new(s, n).unwrap()).unwrap().circle_count())
                    .sum();
                let got: usize = c.dims().iter().filter(|((ii, _), _)| *ii == i as i64).map(|(_, n)| n).sum();
                assert_eq!(got, expected, "layer {i}");
                // parity j ≡ k + i: every smoothing's k has the parity of s0 + |ε|
                let s0 = d.global_smoothing_circles(0) as i64;
                for ((ii, j), _) in c.dims() {
                    assert_eq!((j - ii - s0 - ii).rem_euclid(2), 0);
                }
            }
        }
    }

    #[test]
    fn dropping_incoming_pivots_keeps_ranks() {
        for d in [trefoil(), braid_closure(&[1, -2, 1, -2], 3).unwrap(), braid_closure(&[1, 1, 2, -1, 2, 2], 3).unwrap()] {
            let c = build_complex(&d, DEFAULT_BUDGET).unwrap();
            for (&(i, j), b) in c.blocks() {
                let incoming = c.block(i - 1, j).map(|p| p.reduced_rank(&[])).unwrap_or_default();
                assert_eq!(b.reduced_rank(&incoming).len(), crate::linalg::rank(&b.to_rational()), "({i}, {j})");
            }
        }
    }

    #[test]
    fn trefoil_squares_to_zero_by_matrix_product() {
        let c = build_complex(&trefoil(), DEFAULT_BUDGET).unwrap();
        assert!(verify_d_squared(&c).is_ok());
        for (&(i, j), b) in c.blocks() {
            if let Some(next) = c.block(i + 1, j) {
                let prod = next.to_rational().mul(&b.to_rational()).unwrap();
                assert!(prod.is_zero(), "d^{} d^{} on j={j}", i + 1, i);
            }
        }
    }

    #[test]
    fn flipped_sign_is_detected() {
        let c = build_complex(&trefoil(), DEFAULT_BUDGET).unwrap();
        let detected = c
            .blocks()
            .keys()
            .filter(|&&(i, j)| {
                let mut mutant = c.clone();
                mutant.block_mut(i, j).unwrap().flip_first_entry();
                matches!(verify_d_squared(&mutant), Err(ComplexError::NonZeroSquare { .. }))
            })
            .count();
        assert!(detected > 0);
    }

    #[test]
    fn budget_is_enforced() {
        let t = braid_closure(&[1; 7], 2).unwrap();
        assert_eq!(build_complex(&t, 6).unwrap_err(), ComplexError::BudgetExceeded { crossings: 7, budget: 6 });
    }

    #[test]
    fn dump_lines() {
        let c = build_complex(&trefoil(), DEFAULT_BUDGET).unwrap();
        let dump = c.dump();
        let total: usize = c.blocks().values().map(SparseBlock::nnz).sum();
        assert_eq!(dump.lines().count(), total);
        assert!(dump.lines().all(|l| l.split(' ').count() == 6 && l.ends_with(" 1")));
    }
}
