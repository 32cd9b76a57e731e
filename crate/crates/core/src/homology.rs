//! Rational Khovanov homology from exact block ranks.
//!
//! `dim H^{i,j} = dim C^{i,j} - rank d^i|_j - rank d^{i-1}|_j`. The
//! streaming path keeps only two adjacent layers of the cube alive, checks
//! `d∘d = 0` on the way, and ranks the blocks of a layer in parallel.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

use crate::complex::{par_map, ComplexError, Cube, DiagramMeta, GradedComplex, SparseBlock, DEFAULT_BUDGET};
use crate::diagram::LinkDiagram;
use crate::laurent::{substitute_q, Jones, LaurentError, LaurentPoly, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("complex is not a cochain complex: d∘d ≠ 0 at (i, j) = ({i}, {j})")]
    ComplexNotValid { i: i64, j: i64 },
    #[error("table is already normalized")]
    AlreadyNormalized,
    #[error("table is not normalized")]
    NotNormalized,
    #[error("table is empty")]
    EmptyTable,
    #[error("Euler characteristic is not divisible by q + q^-1: {0}")]
    Laurent(#[from] LaurentError),
    #[error("block (i, j) = ({i}, {j}) has rank {exact} over Q but {modular} modulo {prime}")]
    ModularDisagreement { i: i64, j: i64, exact: usize, modular: usize, prime: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComputeOptions {
    /// Largest crossing count accepted.
    pub budget: usize,
    /// Recheck every rank modulo this prime.
    pub modular_check: Option<u64>,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions { budget: DEFAULT_BUDGET, modular_check: None }
    }
}

/// Nonzero ranks of a bigraded homology, sorted by (i, j).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KhovanovTable {
    ranks: BTreeMap<(i64, i64), u64>,
    meta: DiagramMeta,
    normalized: bool,
}

impl KhovanovTable {
    pub fn new(ranks: BTreeMap<(i64, i64), u64>, meta: DiagramMeta, normalized: bool) -> Self {
        let ranks = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        KhovanovTable { ranks, meta, normalized }
    }

    pub fn ranks(&self) -> &BTreeMap<(i64, i64), u64> {
        &self.ranks
    }

    pub fn rank(&self, i: i64, j: i64) -> u64 {
        self.ranks.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn meta(&self) -> DiagramMeta {
        self.meta
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn total_rank(&self) -> u64 {
        self.ranks.values().sum()
    }

    /// `KH^{i,j} = H^{i+n₋, j-n₊+2n₋}`.
    pub fn normalize(&self) -> Result<KhovanovTable, HomologyError> {
        if self.normalized {
            return Err(HomologyError::AlreadyNormalized);
        }
        let (np, nm) = (self.meta.n_plus as i64, self.meta.n_minus as i64);
        let ranks = self.ranks.iter().map(|(&(i, j), &r)| ((i - nm, j + np - 2 * nm), r)).collect();
        Ok(KhovanovTable { ranks, meta: self.meta, normalized: true })
    }

    /// Inverse of [`normalize`](Self::normalize).
    pub fn unnormalize(&self) -> Result<KhovanovTable, HomologyError> {
        if !self.normalized {
            return Err(HomologyError::NotNormalized);
        }
        let (np, nm) = (self.meta.n_plus as i64, self.meta.n_minus as i64);
        let ranks = self.ranks.iter().map(|(&(i, j), &r)| ((i + nm, j - np + 2 * nm), r)).collect();
        Ok(KhovanovTable { ranks, meta: self.meta, normalized: false })
    }

    /// Largest homological degree with nonzero homology.
    pub fn i_max(&self) -> Result<i64, HomologyError> {
        self.ranks.keys().map(|&(i, _)| i).max().ok_or(HomologyError::EmptyTable)
    }

    /// `Σ (-1)^i q^j rank`.
    pub fn euler_characteristic(&self) -> LaurentPoly<Q> {
        LaurentPoly::from_terms(
            self.ranks.iter().map(|(&(i, j), &r)| (j, if i % 2 == 0 { BigInt::from(r) } else { -BigInt::from(r) })),
        )
    }
}

/// Largest homological degree of a normalized table.
pub fn i_max(t: &KhovanovTable) -> Result<i64, HomologyError> {
    if !t.normalized {
        return Err(HomologyError::NotNormalized);
    }
    t.i_max()
}

pub fn normalize(t: &KhovanovTable) -> Result<KhovanovTable, HomologyError> {
    t.normalize()
}

/// The Jones polynomial as `(q + q⁻¹)⁻¹ Σ (-1)^i q^j rank KH^{i,j}` at
/// `q = -t^{1/2}`.
pub fn jones_from_kh(t: &KhovanovTable) -> Result<Jones, HomologyError> {
    if !t.normalized {
        return Err(HomologyError::NotNormalized);
    }
    let quantum_two = LaurentPoly::<Q>::from_terms([(1, 1), (-1, 1)]);
    let quotient = t.euler_characteristic().exact_divide(&quantum_two)?;
    Ok(substitute_q(&quotient))
}

/// Pivot targets of one block, given those of the incoming block at the
/// same `j`; the rank is their number.
fn block_pivots(b: &SparseBlock, incoming: &[u32], key: (i64, i64), opts: &ComputeOptions) -> Result<Vec<u32>, HomologyError> {
    let pivots = b.reduced_rank(incoming);
    if let Some(prime) = opts.modular_check {
        let modular = b.reduced_rank_mod_prime(incoming, prime);
        if modular != pivots.len() {
            return Err(HomologyError::ModularDisagreement { i: key.0, j: key.1, exact: pivots.len(), modular, prime });
        }
    }
    Ok(pivots)
}

/// Unnormalized homology of a materialized complex.
pub fn homology_table(c: &GradedComplex) -> Result<KhovanovTable, HomologyError> {
    crate::complex::verify_d_squared(c).map_err(|e| match e {
        ComplexError::NonZeroSquare { i, j } => HomologyError::ComplexNotValid { i, j },
        other => HomologyError::Complex(other),
    })?;
    let mut by_j: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for &(i, j) in c.blocks().keys() {
        by_j.entry(j).or_default().push(i);
    }
    let strands: Vec<(i64, Vec<i64>)> = by_j.into_iter().collect();
    let opts = ComputeOptions::default();
    // each q-degree is its own complex; within one, ranks run up in i
    let ranks = par_map(&strands, |(j, is)| {
        let mut out = Vec::new();
        let mut incoming: Vec<u32> = Vec::new();
        let mut prev_i = None;
        for &i in is {
            if prev_i != Some(i - 1) {
                incoming.clear();
            }
            incoming = block_pivots(&c.blocks()[&(i, *j)], &incoming, (i, *j), &opts)?;
            out.push(((i, *j), incoming.len()));
            prev_i = Some(i);
        }
        Ok::<_, HomologyError>(out)
    });
    let mut rank_of = BTreeMap::new();
    for r in ranks {
        rank_of.extend(r?);
    }
    let table = c
        .dims()
        .iter()
        .map(|(&(i, j), &dim)| {
            let out = rank_of.get(&(i, j)).copied().unwrap_or(0);
            let inc = rank_of.get(&(i - 1, j)).copied().unwrap_or(0);
            ((i, j), (dim - out - inc) as u64)
        })
        .collect();
    Ok(KhovanovTable::new(table, c.meta(), false))
}

/// Unnormalized homology computed layer by layer without materializing the
/// whole complex.
pub fn compute_unnormalized(d: &LinkDiagram, opts: &ComputeOptions) -> Result<KhovanovTable, HomologyError> {
    let cube = Cube::new(d, opts.budget)?;
    let c = cube.crossings();
    let mut table = BTreeMap::new();
    let mut layer = cube.layer(0);
    let mut prev_blocks: BTreeMap<i64, SparseBlock> = BTreeMap::new();
    let mut prev_pivots: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for i in 0..=c {
        let (blocks, next) = if i < c {
            let next = cube.layer(i + 1);
            (cube.differential(&layer, &next), Some(next))
        } else {
            (BTreeMap::new(), None)
        };
        for (j, b) in &blocks {
            if let Some(prev) = prev_blocks.get(j) {
                if !prev.composes_to_zero(b) {
                    return Err(HomologyError::ComplexNotValid { i: i as i64 - 1, j: *j });
                }
            }
        }
        let entries: Vec<(&i64, &SparseBlock)> = blocks.iter().collect();
        let none = Vec::new();
        let pivots: Result<Vec<Vec<u32>>, _> = par_map(&entries, |(j, b)| {
            block_pivots(b, prev_pivots.get(*j).unwrap_or(&none), (i as i64, **j), opts)
        })
        .into_iter()
        .collect();
        let pivots: BTreeMap<i64, Vec<u32>> = blocks.keys().copied().zip(pivots?).collect();
        for (&j, &dim) in &layer.dims {
            let out = pivots.get(&j).map_or(0, Vec::len);
            let inc = prev_pivots.get(&j).map_or(0, Vec::len);
            table.insert((i as i64, j), (dim - out - inc) as u64);
        }
        prev_blocks = blocks;
        prev_pivots = pivots;
        match next {
            Some(n) => layer = n,
            None => break,
        }
    }
    Ok(KhovanovTable::new(table, DiagramMeta::of(d), false))
}

/// Normalized rational Khovanov homology of a diagram.
pub fn compute_khovanov(d: &LinkDiagram, opts: &ComputeOptions) -> Result<KhovanovTable, HomologyError> {
    compute_unnormalized(d, opts)?.normalize()
}
