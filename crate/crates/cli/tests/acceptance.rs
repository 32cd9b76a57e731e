//! One line per acceptance criterion; exits non-zero if any fails.
//!
//! Criteria run one after another so that the timed ones are not competing
//! with each other for cores.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use khtwist::suite::{fixtures, random_closures, MARKED_LEFT_TREFOIL, RANDOM_SEED};
use khtwist_core::experiments::{twist_scan, ScanOptions, ScanReport};
use khtwist_core::homology::{compute_unnormalized, jones_from_kh, ComputeOptions};
use khtwist_core::laurent::Jones;
use khtwist_core::linalg::{rank, SparseRationalMatrix};
use khtwist_core::{braid_closure, build_complex, jones_polynomial, verify_d_squared, KhovanovTable, LinkDiagram};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TREFOIL_LIMIT: Duration = Duration::from_secs(1);
const D_SQUARED_LIMIT: Duration = Duration::from_secs(120);
const TORUS_LIMIT: Duration = Duration::from_secs(60);
const SCAN_LIMIT: Duration = Duration::from_secs(15 * 60);
const SCAN_MAX_N: usize = 12;
/// Latest admissible onset of the unit slope for the trefoil family.
const MAX_ONSET: usize = 8;
const RANDOM_CLOSURES: usize = 50;
const RANDOM_MATRICES: usize = 100;

type Outcome = Result<String, String>;

struct Ctx {
    scan: Option<(ScanReport, Duration)>,
}

impl Ctx {
    /// The marked-trefoil scan, computed once on a single thread.
    fn scan(&mut self) -> &(ScanReport, Duration) {
        self.scan.get_or_insert_with(|| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            let base: LinkDiagram = MARKED_LEFT_TREFOIL.parse().unwrap();
            let start = Instant::now();
            let r = pool.install(|| twist_scan(&base, SCAN_MAX_N, &ScanOptions::default())).unwrap();
            (r, start.elapsed())
        })
    }
}

fn corpus() -> Vec<(String, LinkDiagram)> {
    let mut out: Vec<(String, LinkDiagram)> = fixtures().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
    for (k, (word, strands, d)) in random_closures(RANDOM_CLOSURES, RANDOM_SEED).into_iter().enumerate() {
        out.push((format!("random{k}[{strands}:{word:?}]"), d));
    }
    out
}

fn normalized(d: &LinkDiagram) -> Result<KhovanovTable, String> {
    compute_unnormalized(d, &ComputeOptions::default()).and_then(|t| t.normalize()).map_err(|e| e.to_string())
}

fn trefoil_ground_truth(_: &mut Ctx) -> Outcome {
    let d: LinkDiagram = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".parse().unwrap();
    let start = Instant::now();
    let t = normalized(&d)?;
    let elapsed = start.elapsed();
    let expected = BTreeMap::from([((0, -1), 1), ((0, -3), 1), ((-2, -5), 1), ((-3, -9), 1)]);
    if *t.ranks() != expected {
        return Err(format!("table {:?}", t.ranks()));
    }
    if elapsed >= TREFOIL_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("4 entries match exactly in {elapsed:?}"))
}

fn cochain_validity(_: &mut Ctx) -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    for (name, d) in &corpus {
        if d.crossing_count() > 12 {
            return Err(format!("{name} has {} crossings", d.crossing_count()));
        }
        let c = build_complex(d, 16).map_err(|e| format!("{name}: {e}"))?;
        verify_d_squared(&c).map_err(|e| format!("{name}: {e}"))?;
    }
    let elapsed = start.elapsed();
    if elapsed >= D_SQUARED_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("d∘d = 0 on {} diagrams in {elapsed:?}", corpus.len()))
}

fn dual_oracle_jones(_: &mut Ctx) -> Outcome {
    let corpus = corpus();
    for (name, d) in &corpus {
        let via_kh = jones_from_kh(&normalized(d)?).map_err(|e| e.to_string())?;
        let bracket = jones_polynomial(d).map_err(|e| e.to_string())?;
        if via_kh != bracket {
            return Err(format!("{name}: {via_kh} vs {bracket}"));
        }
    }
    Ok(format!("exact agreement on {} diagrams", corpus.len()))
}

fn invariance_regression(_: &mut Ctx) -> Outcome {
    let fx: BTreeMap<&str, LinkDiagram> = fixtures().into_iter().collect();
    let base = normalized(&fx["left_trefoil"])?;
    for name in ["left_trefoil_kinked", "left_trefoil_clasped"] {
        let d = &fx[name];
        let t = normalized(d)?;
        if t.ranks() != base.ranks() {
            return Err(format!("{name}: {:?}", t.ranks()));
        }
    }
    Ok("R1 kink (4 crossings) and R2 clasp (5 crossings) give the trefoil table".into())
}

fn torus_slope_anchor(_: &mut Ctx) -> Outcome {
    let mut seen = Vec::new();
    for m in 1..=5usize {
        let d = braid_closure(&vec![1; 2 * m], 2).unwrap();
        let start = Instant::now();
        let i_max = normalized(&d)?.i_max().map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if i_max != 2 * m as i64 {
            return Err(format!("i_max(T(2,{})) = {i_max}", 2 * m));
        }
        if elapsed >= TORUS_LIMIT {
            return Err(format!("T(2,{}) took {elapsed:?}", 2 * m));
        }
        seen.push(format!("{i_max}"));
    }
    Ok(format!("i_max(T(2,2m)) for m=1..5: {}", seen.join(",")))
}

fn main_theorem_slope(ctx: &mut Ctx) -> Outcome {
    let (r, elapsed) = ctx.scan();
    let window = SCAN_MAX_N.div_ceil(3);
    let tail: Vec<Option<i64>> = r.rows.iter().rev().take(window).map(|x| x.delta_i_max).collect();
    if r.rows.len() != SCAN_MAX_N + 1 || tail.iter().any(|d| *d != Some(1)) {
        return Err(format!("trailing deltas {tail:?}"));
    }
    let Some(onset) = r.stabilization_n.filter(|&n| n <= MAX_ONSET) else {
        return Err(format!("onset {:?}", r.stabilization_n));
    };
    if *elapsed > SCAN_LIMIT {
        return Err(format!("scan took {elapsed:?}"));
    }
    Ok(format!("delta i_max = 1 on the last {window} rows, onset N = {onset}, single-threaded scan {elapsed:?}"))
}

fn lemma_one(ctx: &mut Ctx) -> Outcome {
    let (r, _) = ctx.scan();
    let three_halves = Rational64::new(3, 2);
    let window = SCAN_MAX_N.div_ceil(3);
    let tail: Vec<Option<Rational64>> = r.rows.iter().rev().take(window).map(|x| x.delta_mdeg).collect();
    if tail.iter().any(|d| *d != Some(three_halves)) {
        return Err(format!("trailing Mdeg deltas {tail:?}"));
    }
    if let Some(x) = r.rows.iter().find(|x| x.delta_mdeg.is_some_and(|d| d > three_halves)) {
        return Err(format!(
            "trailing window is 3/2, but delta Mdeg = {} > 3/2 at n = {} ({} -> {})",
            x.delta_mdeg.unwrap(),
            x.n,
            r.row(x.n - 1).unwrap().jones,
            x.jones
        ));
    }
    Ok(format!("delta Mdeg = 3/2 on the last {window} rows and never above"))
}

/// `s1 - 2κ - c ≤ j - 2i ≤ 2κ - s0`; κ = 1 (the stated form) unless the
/// diagram splits.
fn spanning_violation(d: &LinkDiagram, raw: &KhovanovTable) -> Option<(i64, i64)> {
    let (s0, s1, c) = (d.global_smoothing_circles(0) as i64, d.global_smoothing_circles(1) as i64, d.crossing_count() as i64);
    let kappa = d.split_pieces() as i64;
    raw.ranks().keys().copied().find(|&(i, j)| {
        let band = j - 2 * i;
        band < s1 - 2 * kappa - c || band > 2 * kappa - s0
    })
}

fn spanning_bounds(ctx: &mut Ctx) -> Outcome {
    let mut diagrams = corpus();
    for n in 0..=10 {
        diagrams.push((format!("T(2,{n})"), braid_closure(&vec![1; n], 2).unwrap()));
    }
    let base: LinkDiagram = MARKED_LEFT_TREFOIL.parse().unwrap();
    let (mut stated, mut split) = (0, 0);
    for (name, d) in &diagrams {
        let raw = compute_unnormalized(d, &ComputeOptions::default()).map_err(|e| e.to_string())?;
        if let Some(v) = spanning_violation(d, &raw) {
            return Err(format!("{name}: H^{v:?}"));
        }
        if d.split_pieces() == 1 { stated += 1 } else { split += 1 }
    }
    let (r, _) = ctx.scan();
    for row in &r.rows {
        let d = base.insert_half_twists(row.n).unwrap();
        let raw = row.table.unnormalize().map_err(|e| e.to_string())?;
        if let Some(v) = spanning_violation(&d, &raw) {
            return Err(format!("D_{}: H^{v:?}", row.n));
        }
        if d.split_pieces() == 1 { stated += 1 } else { split += 1 }
    }
    Ok(format!("no violations: {stated} non-split tables under the stated bound, {split} split tables with 2 -> 2*kappa"))
}

fn proof_sandwich(ctx: &mut Ctx) -> Outcome {
    let (r, _) = ctx.scan();
    let base: LinkDiagram = MARKED_LEFT_TREFOIL.parse().unwrap();
    let s0 = Rational64::from_integer(base.global_smoothing_circles(0) as i64);
    for row in &r.rows {
        // k(D_n) = (f(D_n) - 2 + s0(D_0)) / 2 with f = 2 Mdeg + 1 - c+ + 2c-
        let f = row.mdeg * 2 + 1 - row.n_plus as i64 + 2 * row.n_minus as i64;
        let k = (f - 2 + s0) / 2;
        let raw = row.table.unnormalize().map_err(|e| e.to_string())?;
        let top = raw.ranks().keys().map(|&(i, _)| i).max().ok_or("empty table")?;
        if !(k <= Rational64::from_integer(top) && top <= row.crossings as i64) {
            return Err(format!("n = {}: k = {k}, max i = {top}, c = {}", row.n, row.crossings));
        }
    }
    Ok(format!("k(D_n) <= max i <= c(D_n) on all {} rows", r.rows.len()))
}

fn twist_skein(ctx: &mut Ctx) -> Outcome {
    let (r, _) = ctx.scan();
    let t2: Jones = "t^2".parse().unwrap();
    let factor: Jones = "t^(3/2) - t^(1/2)".parse().unwrap();
    for n in 1..=11 {
        let [prev, cur, next] = [n - 1, n, n + 1].map(|m| r.row(m).map(|x| x.jones.clone()).ok_or(format!("row {m} missing")));
        let (prev, cur, next) = (prev?, cur?, next?);
        if next != t2.clone() * &prev + factor.clone() * &cur {
            return Err(format!("n = {n}"));
        }
    }
    Ok("V_{n+1} = t^2 V_{n-1} + (t^{3/2} - t^{1/2}) V_n for n = 1..11".into())
}

/// Row reduction over Q on a dense copy, by a column sweep of its own.
fn naive_rank(rows: usize, cols: usize, entries: &[(usize, usize, BigRational)]) -> usize {
    let mut a = vec![vec![BigRational::zero(); cols]; rows];
    for (r, c, v) in entries {
        a[*r][*c] = v.clone();
    }
    let mut rank = 0;
    for c in 0..cols {
        // largest magnitude pivot, for variety against the engine
        let Some(p) = (rank..rows).filter(|&r| !a[r][c].is_zero()).max_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs())) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in rank + 1..rows {
            let f = &a[r][c] / &pivot;
            for k in c..cols {
                let t = &f * &a[rank][k];
                a[r][k] -= t;
            }
        }
        rank += 1;
    }
    rank
}

fn linalg_oracle(_: &mut Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    for trial in 0..RANDOM_MATRICES {
        let (rows, cols) = (rng.gen_range(1..=10usize), rng.gen_range(1..=10usize));
        // low-rank products now and then, so rank deficiency is exercised
        let entries: Vec<(usize, usize, BigRational)> = if trial % 3 == 0 {
            let k = rng.gen_range(1..=3usize);
            let u: Vec<Vec<i64>> = (0..rows).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let v: Vec<Vec<i64>> = (0..k).map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            (0..rows)
                .flat_map(|r| (0..cols).map(move |c| (r, c)))
                .map(|(r, c)| (r, c, BigRational::from_integer(BigInt::from((0..k).map(|t| u[r][t] * v[t][c]).sum::<i64>()))))
                .filter(|e| !e.2.is_zero())
                .collect()
        } else {
            let density = rng.gen_range(0.1..0.9);
            let mut e = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(density) {
                        let v = BigRational::new(BigInt::from(rng.gen_range(-9..=9i64)), BigInt::from(rng.gen_range(1..=7i64)));
                        if !v.is_zero() {
                            e.push((r, c, v));
                        }
                    }
                }
            }
            e
        };
        let m = SparseRationalMatrix::new(rows, cols, entries.clone()).map_err(|e| e.to_string())?;
        let (got, want) = (rank(&m), naive_rank(rows, cols, &entries));
        if got != want {
            return Err(format!("trial {trial}: {rows}x{cols} rank {got}, oracle {want}"));
        }
    }
    Ok(format!("{RANDOM_MATRICES} random matrices up to 10x10 agree"))
}

fn kh_stdout(args: &[&str]) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_kh")).args(args).output().map_err(|e| e.to_string())?;
    if o.status.code() != Some(0) {
        return Err(format!("kh {} exited {:?}: {}", args.join(" "), o.status.code(), String::from_utf8_lossy(&o.stderr)));
    }
    Ok(o.stdout)
}

fn determinism(_: &mut Ctx) -> Outcome {
    let dir = std::env::temp_dir().join(format!("kh-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let pd = dir.join("marked_trefoil.pd");
    std::fs::write(&pd, MARKED_LEFT_TREFOIL).map_err(|e| e.to_string())?;
    let pd = pd.to_str().unwrap().to_string();
    let max_n = SCAN_MAX_N.to_string();
    let commands: [Vec<&str>; 3] = [
        vec!["verify"],
        vec!["twist-scan", "--pd", &pd, "--max-n", &max_n, "--out", "csv"],
        vec!["torus-scan", "--max-n", "10", "--out", "csv"],
    ];
    for cmd in &commands {
        let run = |threads: &str| {
            let mut args = cmd.clone();
            args.extend(["--threads", threads]);
            kh_stdout(&args)
        };
        let (first, second, single) = (run("4")?, run("4")?, run("1")?);
        if first != second || first != single {
            return Err(format!("kh {} output differs between runs or thread counts", cmd.join(" ")));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok("kh verify, twist-scan csv and torus-scan csv byte-identical over two runs at 4 threads and one at 1".into())
}

fn main() {
    let criteria: [(&str, fn(&mut Ctx) -> Outcome); 12] = [
        ("trefoil ground truth", trefoil_ground_truth),
        ("cochain validity", cochain_validity),
        ("dual-oracle Jones", dual_oracle_jones),
        ("invariance regression", invariance_regression),
        ("torus slope anchor", torus_slope_anchor),
        ("main-theorem slope at desk scale", main_theorem_slope),
        ("Lemma 1 at desk scale", lemma_one),
        ("spanning bounds", spanning_bounds),
        ("proof sandwich", proof_sandwich),
        ("twist skein identity", twist_skein),
        ("linear-algebra oracle", linalg_oracle),
        ("determinism", determinism),
    ];
    let mut ctx = Ctx { scan: None };
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&mut ctx))).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
