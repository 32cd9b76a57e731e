//! Exact rank of sparse rational matrices.
//!
//! Rows are cleared of denominators and reduced by fraction-free integer
//! elimination with Markowitz pivoting. Elimination first runs on `i64`
//! with checked arithmetic and restarts on big integers if anything
//! overflows, so the result is always exact. A second elimination modulo a
//! 62-bit prime is available as an independent cross-check.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::RngCore;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("inner dimensions differ: {0} vs {1}")]
    ShapeMismatch(usize, usize),
    #[error("rank over Q is {exact} but rank mod {prime} is {modular}")]
    ModularDisagreement { exact: usize, modular: usize, prime: u64 },
}

/// Sparse matrix over Q; zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigRational)>,
}

impl SparseRationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<(usize, usize, BigRational)>) -> Result<Self, LinalgError> {
        let mut entries: Vec<_> = entries.into_iter().filter(|e| !e.2.is_zero()).collect();
        for &(row, col, _) in &entries {
            if row >= rows || col >= cols {
                return Err(LinalgError::IndexOutOfRange { row, col, rows, cols });
            }
        }
        entries.sort_by_key(|e| (e.0, e.1));
        if let Some(w) = entries.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(LinalgError::DuplicateEntry { row: w[0].0, col: w[0].1 });
        }
        Ok(SparseRationalMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| (i, i, BigRational::one())).collect();
        SparseRationalMatrix { rows: n, cols: n, entries }
    }

    pub fn from_integers(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Result<Self, LinalgError> {
        let e = entries.iter().map(|&(r, c, v)| (r, c, BigRational::from_integer(BigInt::from(v)))).collect();
        Self::new(rows, cols, e)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entries sorted by (row, col).
    pub fn entries(&self) -> &[(usize, usize, BigRational)] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|e| (e.0, e.1));
        SparseRationalMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch(self.cols, rhs.rows));
        }
        let mut by_row: Vec<Vec<(usize, &BigRational)>> = vec![Vec::new(); rhs.rows];
        for (r, c, v) in &rhs.entries {
            by_row[*r].push((*c, v));
        }
        let mut acc: alloc::collections::BTreeMap<(usize, usize), BigRational> = Default::default();
        for (r, k, v) in &self.entries {
            for &(c, w) in &by_row[*k] {
                *acc.entry((*r, c)).or_insert_with(BigRational::zero) += v * w;
            }
        }
        let entries = acc.into_iter().map(|((r, c), v)| (r, c, v)).collect();
        Self::new(self.rows, rhs.cols, entries)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rows scaled to integers (row rank is unchanged).
    fn integer_rows(&self) -> Vec<Vec<(u32, BigInt)>> {
        let mut rows: Vec<Vec<(u32, BigRational)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c as u32, v.clone()));
        }
        rows.into_iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
                row.into_iter().map(|(c, v)| (c, (v * BigRational::from_integer(l.clone())).to_integer())).collect()
            })
            .collect()
    }
}

/// Exact rank over Q.
pub fn rank(m: &SparseRationalMatrix) -> usize {
    let rows = m.integer_rows();
    let small: Option<Vec<Vec<(u32, i64)>>> =
        rows.iter().map(|r| r.iter().map(|(c, v)| v.to_i64().map(|v| (*c, v))).collect()).collect();
    if let Some(small) = small {
        if let Some(p) = Eliminator::new(CheckedI64, m.cols, small).run() {
            return p.len();
        }
    }
    Eliminator::new(Big, m.cols, rows).run().expect("big-integer elimination cannot overflow").len()
}

/// Exact rank of an integer matrix given as `(row, col, value)` triplets
/// without repeated positions.
pub fn rank_integer(rows: usize, cols: usize, entries: impl IntoIterator<Item = (u32, u32, i64)>) -> usize {
    rank_integer_with_pivots(rows, cols, entries).len()
}

/// Sorted pivot columns of an exact elimination; their number is the rank,
/// and the row space projects isomorphically onto those coordinates.
pub fn rank_integer_with_pivots(rows: usize, cols: usize, entries: impl IntoIterator<Item = (u32, u32, i64)>) -> Vec<u32> {
    let row_lists = group_rows(rows, entries);
    if let Some(p) = Eliminator::new(CheckedI64, cols, row_lists.clone()).run() {
        return p;
    }
    let big = row_lists
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
        .collect();
    Eliminator::new(Big, cols, big).run().expect("big-integer elimination cannot overflow")
}

/// Rank of the reduction of an integer matrix modulo the prime `p < 2^63`.
pub fn rank_mod_prime(rows: usize, cols: usize, entries: impl IntoIterator<Item = (u32, u32, i64)>, p: u64) -> usize {
    let f = ModP(p);
    let row_lists = group_rows(rows, entries)
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, f.reduce(v))).filter(|e| e.1 != 0).collect())
        .collect();
    Eliminator::new(f, cols, row_lists).run().expect("modular elimination cannot overflow").len()
}

/// Exact rank confirmed against an elimination modulo `prime`.
pub fn rank_verified(
    rows: usize,
    cols: usize,
    entries: &[(u32, u32, i64)],
    prime: u64,
) -> Result<usize, LinalgError> {
    let exact = rank_integer(rows, cols, entries.iter().copied());
    let modular = rank_mod_prime(rows, cols, entries.iter().copied(), prime);
    if exact != modular {
        return Err(LinalgError::ModularDisagreement { exact, modular, prime });
    }
    Ok(exact)
}

fn group_rows(rows: usize, entries: impl IntoIterator<Item = (u32, u32, i64)>) -> Vec<Vec<(u32, i64)>> {
    let mut out: Vec<Vec<(u32, i64)>> = vec![Vec::new(); rows];
    for (r, c, v) in entries {
        if v != 0 {
            out[r as usize].push((c, v));
        }
    }
    for r in out.iter_mut() {
        r.sort_unstable_by_key(|e| e.0);
    }
    out
}

/// Uniformly drawn prime in `[2^61, 2^62)`.
pub fn random_prime_62<R: RngCore + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = (rng.next_u64() >> 2) | (1 << 61) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Coefficient arithmetic for the eliminator; `None` reports overflow.
trait Arith {
    type E: Clone;
    fn is_unit(&self, e: &Self::E) -> bool;
    fn is_zero(&self, e: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Option<Self::E>;
    /// `s * x - f * y`, with `s = 1` when absent.
    fn combine(&self, s: Option<&Self::E>, x: &Self::E, f: &Self::E, y: &Self::E) -> Option<Self::E>;
    fn scale(&self, s: &Self::E, x: &Self::E) -> Option<Self::E>;
    fn neg_mul(&self, f: &Self::E, y: &Self::E) -> Option<Self::E>;
    /// Divides a row by the gcd of its entries where that makes sense.
    fn normalize(&self, row: &mut [(u32, Self::E)]);
}

struct CheckedI64;

impl Arith for CheckedI64 {
    type E = i64;
    fn is_unit(&self, e: &i64) -> bool {
        *e == 1 || *e == -1
    }
    fn is_zero(&self, e: &i64) -> bool {
        *e == 0
    }
    fn mul(&self, a: &i64, b: &i64) -> Option<i64> {
        a.checked_mul(*b)
    }
    fn combine(&self, s: Option<&i64>, x: &i64, f: &i64, y: &i64) -> Option<i64> {
        let sx = match s {
            Some(s) => s.checked_mul(*x)?,
            None => *x,
        };
        sx.checked_sub(f.checked_mul(*y)?)
    }
    fn scale(&self, s: &i64, x: &i64) -> Option<i64> {
        s.checked_mul(*x)
    }
    fn neg_mul(&self, f: &i64, y: &i64) -> Option<i64> {
        f.checked_mul(*y)?.checked_neg()
    }
    fn normalize(&self, row: &mut [(u32, i64)]) {
        let g = row.iter().fold(0i64, |g, (_, v)| g.gcd(v));
        if g > 1 {
            row.iter_mut().for_each(|(_, v)| *v /= g);
        }
    }
}

struct Big;

impl Arith for Big {
    type E = BigInt;
    fn is_unit(&self, e: &BigInt) -> bool {
        e.abs().is_one()
    }
    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(a * b)
    }
    fn combine(&self, s: Option<&BigInt>, x: &BigInt, f: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(match s {
            Some(s) => s * x - f * y,
            None => x - f * y,
        })
    }
    fn scale(&self, s: &BigInt, x: &BigInt) -> Option<BigInt> {
        Some(s * x)
    }
    fn neg_mul(&self, f: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(-(f * y))
    }
    fn normalize(&self, row: &mut [(u32, BigInt)]) {
        let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
        if g > BigInt::one() {
            row.iter_mut().for_each(|(_, v)| *v /= &g);
        }
    }
}

struct ModP(u64);

impl ModP {
    fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }
}

impl Arith for ModP {
    type E = u64;
    fn is_unit(&self, e: &u64) -> bool {
        *e == 1 || *e == self.0 - 1
    }
    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> Option<u64> {
        Some(mul_mod(*a, *b, self.0))
    }
    fn combine(&self, s: Option<&u64>, x: &u64, f: &u64, y: &u64) -> Option<u64> {
        let sx = match s {
            Some(s) => mul_mod(*s, *x, self.0),
            None => *x,
        };
        let fy = mul_mod(*f, *y, self.0);
        Some(if sx >= fy { sx - fy } else { sx + self.0 - fy })
    }
    fn scale(&self, s: &u64, x: &u64) -> Option<u64> {
        Some(mul_mod(*s, *x, self.0))
    }
    fn neg_mul(&self, f: &u64, y: &u64) -> Option<u64> {
        let fy = mul_mod(*f, *y, self.0);
        Some(if fy == 0 { 0 } else { self.0 - fy })
    }
    fn normalize(&self, _row: &mut [(u32, u64)]) {}
}

/// Candidate columns and rows examined per Markowitz search.
const SEARCH_WIDTH: usize = 16;

const NIL: u32 = u32::MAX;

/// Items bucketed by a count in intrusive doubly linked lists; count 0 is
/// never stored.
struct Buckets {
    count: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    head: Vec<u32>,
    /// No nonempty bucket lies below this.
    min: usize,
}

impl Buckets {
    fn new(counts: impl IntoIterator<Item = u32>) -> Self {
        let count: Vec<u32> = counts.into_iter().collect();
        let n = count.len();
        let mut b = Buckets { count: vec![0; n], next: vec![NIL; n], prev: vec![NIL; n], head: Vec::new(), min: 0 };
        for (i, c) in count.into_iter().enumerate().rev() {
            b.set(i as u32, c);
        }
        b
    }

    fn set(&mut self, item: u32, c: u32) {
        let i = item as usize;
        let old = self.count[i] as usize;
        if old == c as usize {
            return;
        }
        if old > 0 {
            let (p, n) = (self.prev[i], self.next[i]);
            if p == NIL {
                self.head[old] = n;
            } else {
                self.next[p as usize] = n;
            }
            if n != NIL {
                self.prev[n as usize] = p;
            }
        }
        self.count[i] = c;
        if c > 0 {
            let c = c as usize;
            if self.head.len() <= c {
                self.head.resize(c + 1, NIL);
            }
            let h = self.head[c];
            self.next[i] = h;
            self.prev[i] = NIL;
            if h != NIL {
                self.prev[h as usize] = item;
            }
            self.head[c] = item;
            self.min = self.min.min(c);
        }
    }

    fn get(&self, item: u32) -> u32 {
        self.count[item as usize]
    }

    /// Up to `k` items from the lowest nonempty bucket.
    fn lowest(&mut self, k: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(k);
        while self.min < self.head.len() && (self.min == 0 || self.head[self.min] == NIL) {
            self.min += 1;
        }
        let Some(&first) = self.head.get(self.min) else { return out };
        let mut it = first;
        while it != NIL && out.len() < k {
            out.push(it);
            it = self.next[it as usize];
        }
        out
    }
}

struct Eliminator<R: Arith> {
    ar: R,
    rows: Vec<Vec<(u32, R::E)>>,
    /// Rows holding each column, possibly with stale or repeated entries.
    col_rows: Vec<Vec<u32>>,
    col_count: Buckets,
    row_len: Buckets,
    /// Column count changes not yet applied to `col_count`.
    pending: Vec<i32>,
    touched: Vec<u32>,
}

impl<R: Arith> Eliminator<R> {
    fn new(ar: R, cols: usize, rows: Vec<Vec<(u32, R::E)>>) -> Self {
        let mut col_rows = vec![Vec::new(); cols];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row {
                col_rows[*c as usize].push(r as u32);
            }
        }
        let col_count = Buckets::new(col_rows.iter().map(|l| l.len() as u32));
        let row_len = Buckets::new(rows.iter().map(|r| r.len() as u32));
        Eliminator { ar, rows, col_rows, col_count, row_len, pending: vec![0; cols], touched: Vec::new() }
    }

    fn row_has(&self, r: u32, c: u32) -> Option<usize> {
        self.rows[r as usize].binary_search_by_key(&c, |e| e.0).ok()
    }

    /// Lowest (row_nnz-1)(col_nnz-1) among the shortest rows and columns;
    /// ties prefer unit pivots, then lower column, then lower row.
    fn choose_pivot(&mut self) -> Option<(u32, u32)> {
        let cols = self.col_count.lowest(SEARCH_WIDTH);
        let rows = self.row_len.lowest(SEARCH_WIDTH);
        let mut best: Option<((u64, bool, u32, u32), (u32, u32))> = None;
        let mut consider = |key: (u64, bool, u32, u32), piv: (u32, u32)| {
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, piv));
            }
        };
        for &c in &cols {
            let cn = self.col_count.get(c) as u64;
            let mut list = core::mem::take(&mut self.col_rows[c as usize]);
            list.sort_unstable();
            list.dedup();
            list.retain(|&r| self.row_has(r, c).is_some());
            for &r in &list {
                let row = &self.rows[r as usize];
                let pos = self.row_has(r, c).expect("retained");
                let cost = (row.len() as u64 - 1) * (cn - 1);
                consider((cost, !self.ar.is_unit(&row[pos].1), c, r), (r, c));
            }
            self.col_rows[c as usize] = list;
        }
        for &r in &rows {
            let row = &self.rows[r as usize];
            for (c, v) in row {
                let cn = self.col_count.get(*c) as u64;
                let cost = (row.len() as u64 - 1) * (cn - 1);
                consider((cost, !self.ar.is_unit(v), *c, r), (r, *c));
            }
        }
        best.map(|(_, p)| p)
    }

    fn bump_col(&mut self, c: u32, delta: i32) {
        let p = &mut self.pending[c as usize];
        if *p == 0 {
            self.touched.push(c);
        }
        *p += delta;
    }

    fn flush_cols(&mut self) {
        for c in core::mem::take(&mut self.touched) {
            let d = core::mem::take(&mut self.pending[c as usize]);
            let n = self.col_count.get(c) as i32 + d;
            self.col_count.set(c, n as u32);
        }
    }

    fn run(mut self) -> Option<Vec<u32>> {
        let mut pivots = Vec::new();
        while let Some((r, c)) = self.choose_pivot() {
            self.eliminate(r, c)?;
            pivots.push(c);
        }
        pivots.sort_unstable();
        Some(pivots)
    }

    fn eliminate(&mut self, r: u32, c: u32) -> Option<()> {
        let prow = core::mem::take(&mut self.rows[r as usize]);
        self.row_len.set(r, 0);
        let ppos = prow.binary_search_by_key(&c, |e| e.0).expect("pivot present");
        let pivot = prow[ppos].1.clone();
        let unit = self.ar.is_unit(&pivot);
        for (col, _) in &prow {
            self.bump_col(*col, -1);
        }
        // a row can reappear in a column list after cancelling out of it
        let mut targets: Vec<u32> = core::mem::take(&mut self.col_rows[c as usize]);
        targets.sort_unstable();
        targets.dedup();
        targets.retain(|&k| k != r && self.row_has(k, c).is_some());
        let mut merged: Vec<(u32, R::E)> = Vec::new();
        for k in targets {
            let row = core::mem::take(&mut self.rows[k as usize]);
            let a = &row[row.binary_search_by_key(&c, |e| e.0).expect("target has pivot column")].1;
            // unit pivot: row - (a * p) * prow, since p^{-1} = p
            let (s, f) = if unit { (None, self.ar.mul(a, &pivot)?) } else { (Some(pivot.clone()), a.clone()) };
            merged.clear();
            merged.reserve(row.len() + prow.len());
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < prow.len() {
                let ci = row.get(i).map_or(u32::MAX, |e| e.0);
                let cj = prow.get(j).map_or(u32::MAX, |e| e.0);
                if ci < cj {
                    let v = match &s {
                        Some(s) => self.ar.scale(s, &row[i].1)?,
                        None => row[i].1.clone(),
                    };
                    merged.push((ci, v));
                    i += 1;
                } else if cj < ci {
                    let v = self.ar.neg_mul(&f, &prow[j].1)?;
                    merged.push((cj, v));
                    self.bump_col(cj, 1);
                    self.col_rows[cj as usize].push(k);
                    j += 1;
                } else {
                    let v = self.ar.combine(s.as_ref(), &row[i].1, &f, &prow[j].1)?;
                    if self.ar.is_zero(&v) {
                        if ci != c {
                            self.bump_col(ci, -1);
                        }
                    } else {
                        debug_assert!(ci != c, "pivot column must cancel");
                        merged.push((ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            if !unit {
                self.ar.normalize(&mut merged);
            }
            self.row_len.set(k, merged.len() as u32);
            // reuse the old row's allocation for the next merge
            self.rows[k as usize] = core::mem::replace(&mut merged, row);
        }
        self.flush_cols();
        self.col_count.set(c, 0);
        Some(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Textbook dense Gauss-Jordan over Q.
    fn dense_rank(m: &SparseRationalMatrix) -> usize {
        let mut a = vec![vec![BigRational::zero(); m.cols()]; m.rows()];
        for (r, c, v) in m.entries() {
            a[*r][*c] = v.clone();
        }
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..m.rows()).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..m.rows() {
                if r != rank && !a[r][col].is_zero() {
                    let f = &a[r][col] / &a[rank][col];
                    for k in col..m.cols() {
                        let t = &f * &a[rank][k];
                        a[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> SparseRationalMatrix {
        let mut e = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(density) {
                    let num: i64 = rng.gen_range(-5..=5);
                    let den: i64 = rng.gen_range(1..=4);
                    e.push((r, c, BigRational::new(num.into(), den.into())));
                }
            }
        }
        SparseRationalMatrix::new(rows, cols, e).unwrap()
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank(&SparseRationalMatrix::zeros(5, 7)), 0);
        assert_eq!(rank(&SparseRationalMatrix::identity(4)), 4);
        assert_eq!(rank(&SparseRationalMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn rejects_bad_entries() {
        let one = BigRational::one();
        assert!(matches!(
            SparseRationalMatrix::new(2, 2, vec![(2, 0, one.clone())]),
            Err(LinalgError::IndexOutOfRange { .. })
        ));
        assert_eq!(
            SparseRationalMatrix::new(2, 2, vec![(1, 1, one.clone()), (1, 1, one)]),
            Err(LinalgError::DuplicateEntry { row: 1, col: 1 })
        );
    }

    #[test]
    fn agrees_with_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = rng.gen_range(1..=9);
            let cols = rng.gen_range(1..=9);
            let density = rng.gen_range(0.1..0.9);
            let m = random_matrix(&mut rng, rows, cols, density);
            let r = rank(&m);
            assert_eq!(r, dense_rank(&m));
            assert_eq!(r, rank(&m.transpose()));
        }
    }

    #[test]
    fn pivot_columns_carry_the_row_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..100 {
            let (rows, cols) = (rng.gen_range(1..=9), rng.gen_range(1..=9));
            let entries: Vec<(u32, u32, i64)> = (0..rows as u32)
                .flat_map(|r| (0..cols as u32).map(move |c| (r, c)))
                .filter_map(|(r, c)| rng.gen_bool(0.4).then(|| (r, c, rng.gen_range(-3..=3))))
                .filter(|e| e.2 != 0)
                .collect();
            let pivots = rank_integer_with_pivots(rows, cols, entries.iter().copied());
            let full: Vec<(usize, usize, i64)> = entries.iter().map(|&(r, c, v)| (r as usize, c as usize, v)).collect();
            let m = SparseRationalMatrix::from_integers(rows, cols, &full).unwrap();
            assert_eq!(pivots.len(), dense_rank(&m));
            // the columns at the pivots alone already have full rank
            let kept: Vec<(usize, usize, i64)> = full
                .iter()
                .filter_map(|&(r, c, v)| pivots.iter().position(|&p| p as usize == c).map(|k| (r, k, v)))
                .collect();
            let minor = SparseRationalMatrix::from_integers(rows, pivots.len(), &kept).unwrap();
            assert_eq!(dense_rank(&minor), pivots.len());
        }
    }

    #[test]
    fn low_rank_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (n, k, m) = (rng.gen_range(2..8), rng.gen_range(1..4), rng.gen_range(2..8));
            let a = random_matrix(&mut rng, n, k, 0.7);
            let b = random_matrix(&mut rng, k, m, 0.7);
            let ab = a.mul(&b).unwrap();
            assert!(rank(&ab) <= rank(&a).min(rank(&b)));
            assert_eq!(rank(&ab), dense_rank(&ab));
        }
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        // Hilbert-like integer matrix whose fraction-free elimination overflows i64
        let n = 14;
        let mut e = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = (1i64 << 40) / (r as i64 + c as i64 + 1) + (r * 7 + c * 13) as i64;
                e.push((r as u32, c as u32, v));
            }
        }
        let triplets: Vec<(usize, usize, i64)> = e.iter().map(|&(r, c, v)| (r as usize, c as usize, v)).collect();
        let m = SparseRationalMatrix::from_integers(n, n, &triplets).unwrap();
        assert_eq!(rank_integer(n, n, e.iter().copied()), dense_rank(&m));
    }

    #[test]
    fn modular_rank_matches_on_small_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_prime_62(&mut rng);
        assert!(is_prime_u64(p) && p >= 1 << 61 && p < 1 << 62);
        for _ in 0..50 {
            let (rows, cols) = (rng.gen_range(1..12), rng.gen_range(1..12));
            let mut e = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(0.4) {
                        e.push((r as u32, c as u32, rng.gen_range(-2i64..=2)));
                    }
                }
            }
            assert_eq!(rank_verified(rows, cols, &e, p).unwrap(), rank_integer(rows, cols, e.iter().copied()));
        }
        // 2 is singular mod 2 but not over Q
        assert_eq!(rank_mod_prime(1, 1, [(0, 0, 2)], 2), 0);
        assert_eq!(
            rank_verified(1, 1, &[(0, 0, 2)], 2),
            Err(LinalgError::ModularDisagreement { exact: 1, modular: 0, prime: 2 })
        );
    }

    #[test]
    fn primality() {
        let primes = [2u64, 3, 5, 61, 1_000_000_007, 2_305_843_009_213_693_951];
        let composites = [1u64, 4, 561, 1_000_000_007 * 3, 3_215_031_751];
        assert!(primes.iter().all(|&p| is_prime_u64(p)));
        assert!(composites.iter().all(|&c| !is_prime_u64(c)));
    }
}
