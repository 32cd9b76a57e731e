//! The fixture suite run by `kh verify`.
//!
//! Every check is deterministic: random inputs come from fixed seeds, and
//! the rendered report never contains timings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use khtwist_core::experiments::{bounds_report, torus_scan, twist_scan, ScanOptions, ScanReport};
use khtwist_core::homology::{compute_unnormalized, jones_from_kh, ComputeOptions};
use khtwist_core::linalg::{rank, SparseRationalMatrix};
use khtwist_core::{braid_closure, build_complex, jones_polynomial, verify_d_squared, LinkDiagram, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::FORMAT_VERSION;

pub const LEFT_TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
/// The left trefoil with the bigon between edges 1 and 4 marked.
pub const MARKED_LEFT_TREFOIL: &str = "mark=1,4\nX(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
pub const RANDOM_SEED: u64 = 0x6b68_7477;

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub max_n: usize,
    pub torus_max: usize,
    pub random_closures: usize,
    pub random_matrices: usize,
    pub scan: ScanOptions,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_n: 12, torus_max: 10, random_closures: 50, random_matrices: 100, scan: ScanOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub gating: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.gating)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = format!("format={FORMAT_VERSION}\nkind=verify\n");
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "fail" };
            let gate = if c.gating { "gating" } else { "info" };
            writeln!(s, "check {} {status} {gate} {}", c.name, c.detail).unwrap();
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let gating_failed = self.checks.iter().filter(|c| !c.passed && c.gating).count();
        writeln!(s, "summary checks={} failed={failed} gating_failed={gating_failed}", self.checks.len()).unwrap();
        s
    }
}

pub fn fixtures() -> Vec<(&'static str, LinkDiagram)> {
    let trefoil: LinkDiagram = LEFT_TREFOIL.parse().unwrap();
    let marked: LinkDiagram = MARKED_LEFT_TREFOIL.parse().unwrap();
    vec![
        ("unknot", LinkDiagram::unknot()),
        ("unlink2", LinkDiagram::unlink(2)),
        ("left_trefoil", trefoil.clone()),
        ("left_trefoil_kinked", trefoil.add_kink(2, Sign::Positive).unwrap()),
        ("left_trefoil_clasped", marked.add_clasp().unwrap()),
        ("right_trefoil", trefoil.mirror()),
        ("hopf", braid_closure(&[1, 1], 2).unwrap()),
        ("t2_5", braid_closure(&[1; 5], 2).unwrap()),
        ("figure_eight", braid_closure(&[1, -2, 1, -2], 3).unwrap()),
        ("mixed_3braid", braid_closure(&[1, 1, 2, -1, 2], 3).unwrap()),
    ]
}

/// Closures of random braids on 2..=4 strands with at most 12 crossings.
pub fn random_closures(count: usize, seed: u64) -> Vec<(Vec<i32>, usize, LinkDiagram)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let strands = rng.gen_range(2..=4usize);
            let len = rng.gen_range(1..=12usize);
            let word: Vec<i32> = (0..len)
                .map(|_| {
                    let g = rng.gen_range(1..strands as i32);
                    if rng.gen_bool(0.5) { g } else { -g }
                })
                .collect();
            let d = braid_closure(&word, strands).unwrap();
            (word, strands, d)
        })
        .collect()
}

/// Textbook Gauss-Jordan over Q on a dense copy.
pub fn dense_rank(m: &SparseRationalMatrix) -> usize {
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

/// Random sparse rational matrices up to 10x10.
pub fn random_matrices(count: usize, seed: u64) -> Vec<SparseRationalMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (rows, cols) = (rng.gen_range(1..=10usize), rng.gen_range(1..=10usize));
            let density = rng.gen_range(0.1..0.9);
            let mut e = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(density) {
                        let num = BigInt::from(rng.gen_range(-6..=6i64));
                        let den = BigInt::from(rng.gen_range(1..=5i64));
                        e.push((r, c, BigRational::new(num, den)));
                    }
                }
            }
            SparseRationalMatrix::new(rows, cols, e).unwrap()
        })
        .collect()
}

fn check(name: &str, gating: bool, failures: &[String], ok_detail: String) -> Check {
    let detail = match failures.first() {
        None => ok_detail,
        Some(first) => format!("{} failure(s), first: {first}", failures.len()),
    };
    Check { name: name.to_string(), passed: failures.is_empty(), gating, detail }
}

fn scan_checks(prefix: &str, r: &ScanReport) -> Vec<Check> {
    let mut out: Vec<Check> = r
        .verdicts
        .iter()
        .map(|v| Check {
            name: format!("{prefix}.{}", v.name),
            passed: v.passed,
            gating: v.gating,
            detail: match v.counterexample {
                Some(n) => format!("{}; first counterexample n={n}", v.detail),
                None => v.detail.clone(),
            },
        })
        .collect();
    let failures: Vec<String> = r.failures.iter().map(|f| format!("n={}: {}", f.n, f.message)).collect();
    out.insert(0, check(&format!("{prefix}.rows"), true, &failures, format!("{} rows computed", r.rows.len())));
    out
}

pub fn run(opts: &SuiteOptions) -> SuiteReport {
    let compute = ComputeOptions { budget: opts.scan.compute.budget, ..ComputeOptions::default() };
    let fixtures = fixtures();
    let randoms = random_closures(opts.random_closures, RANDOM_SEED);
    let mut diagrams: Vec<(String, LinkDiagram)> = fixtures.iter().map(|(n, d)| (n.to_string(), d.clone())).collect();
    for (k, (word, strands, d)) in randoms.iter().enumerate() {
        diagrams.push((format!("random{k}[{strands}:{word:?}]"), d.clone()));
    }
    let mut checks = Vec::new();

    let trefoil: LinkDiagram = LEFT_TREFOIL.parse().unwrap();
    let expected = BTreeMap::from([((0, -1), 1), ((0, -3), 1), ((-2, -5), 1), ((-3, -9), 1)]);
    let got = compute_unnormalized(&trefoil, &compute).and_then(|t| t.normalize());
    let trefoil_bad: Vec<String> = match &got {
        Ok(t) if *t.ranks() == expected => vec![],
        Ok(t) => vec![format!("got {:?}", t.ranks())],
        Err(e) => vec![e.to_string()],
    };
    checks.push(check("trefoil_table", true, &trefoil_bad, "KH(left trefoil) has exactly the four expected entries".into()));

    let mut d2_bad = Vec::new();
    let mut jones_bad = Vec::new();
    let mut span_bad = Vec::new();
    let mut tables = BTreeMap::new();
    for (name, d) in &diagrams {
        match build_complex(d, compute.budget).map_err(|e| e.to_string()).and_then(|c| verify_d_squared(&c).map_err(|e| e.to_string())) {
            Ok(()) => {}
            Err(e) => d2_bad.push(format!("{name}: {e}")),
        }
        let raw = match compute_unnormalized(d, &compute) {
            Ok(raw) => raw,
            Err(e) => {
                jones_bad.push(format!("{name}: {e}"));
                continue;
            }
        };
        let b = bounds_report(d, &raw);
        if !b.passed() {
            span_bad.push(format!("{name}: {b:?}"));
        }
        let via_kh = raw.normalize().map_err(|e| e.to_string()).and_then(|t| {
            let v = jones_from_kh(&t).map_err(|e| e.to_string());
            tables.insert(name.clone(), t);
            v
        });
        match (via_kh, jones_polynomial(d).map_err(|e| e.to_string())) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => jones_bad.push(format!("{name}: {a} vs {b}")),
            (Err(e), _) | (_, Err(e)) => jones_bad.push(format!("{name}: {e}")),
        }
    }
    let n = diagrams.len();
    checks.push(check("d_squared", true, &d2_bad, format!("d∘d = 0 on {n} diagrams")));
    checks.push(check("jones_dual", true, &jones_bad, format!("Euler characteristic equals the bracket on {n} diagrams")));

    let base = &tables["left_trefoil"];
    let invariance_bad: Vec<String> = ["left_trefoil_kinked", "left_trefoil_clasped"]
        .iter()
        .filter(|n| tables.get(**n).map(|t| t.ranks()) != Some(base.ranks()))
        .map(|n| n.to_string())
        .collect();
    checks.push(check("reidemeister_invariance", true, &invariance_bad, "kinked and clasped trefoils match the trefoil".into()));

    let torus = torus_scan(2, opts.torus_max, &opts.scan).expect("two strands");
    let twist = twist_scan(&MARKED_LEFT_TREFOIL.parse().unwrap(), opts.max_n, &opts.scan).expect("coherent mark");
    for (label, r) in [("torus", &torus), ("twist", &twist)] {
        for row in &r.rows {
            if let Some(v) = row.bounds.spanning_violation {
                span_bad.push(format!("{label} n={}: {v:?}", row.n));
            }
        }
    }
    checks.push(check("spanning", true, &span_bad, "spanning and support bounds hold on every computed table".into()));
    checks.extend(scan_checks("torus2", &torus));
    checks.extend(scan_checks("twist", &twist));

    let rank_bad: Vec<String> = random_matrices(opts.random_matrices, RANDOM_SEED)
        .iter()
        .enumerate()
        .filter_map(|(k, m)| {
            let (a, b) = (rank(m), dense_rank(m));
            (a != b).then(|| format!("matrix {k}: {a} vs {b}"))
        })
        .collect();
    checks.push(check("rank_oracle", true, &rank_bad, format!("{} random matrices", opts.random_matrices)));

    SuiteReport { checks }
}
