//! Versioned report formats.
//!
//! Every output starts with a `format=1` line. Text reports continue with
//! `key=value` header lines and then whitespace-separated sections; CSV
//! reports continue with a CSV header row. README.md documents the
//! schemas.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use khtwist_core::complex::DiagramMeta;
use khtwist_core::experiments::{Family, ScanReport};
use khtwist_core::laurent::Jones;
use khtwist_core::KhovanovTable;
use num_rational::Rational64;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn header(kind: &str) -> String {
    format!("format={FORMAT_VERSION}\nkind={kind}\n")
}

/// Structured text for one Khovanov table.
pub fn table_text(t: &KhovanovTable) -> String {
    let m = t.meta();
    let mut s = header("khovanov");
    writeln!(s, "normalized={}", t.is_normalized()).unwrap();
    writeln!(s, "crossings={}", m.crossings).unwrap();
    writeln!(s, "n_plus={}", m.n_plus).unwrap();
    writeln!(s, "n_minus={}", m.n_minus).unwrap();
    writeln!(s, "fingerprint={:016x}", m.fingerprint).unwrap();
    writeln!(s, "total_rank={}", t.total_rank()).unwrap();
    s.push_str("i j rank\n");
    for (&(i, j), &r) in t.ranks() {
        writeln!(s, "{i} {j} {r}").unwrap();
    }
    s
}

pub fn parse_table(text: &str) -> Result<KhovanovTable, FormatError> {
    let err = |line: usize, message: String| FormatError { line, message };
    let mut keys: BTreeMap<&str, &str> = BTreeMap::new();
    let mut lines = text.lines().enumerate().map(|(n, l)| (n + 1, l.trim()));
    for (n, line) in lines.by_ref() {
        if line == "i j rank" {
            break;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| err(n, format!("expected key=value, got {line:?}")))?;
        keys.insert(k, v);
    }
    let get = |k: &str| keys.get(k).copied().ok_or_else(|| err(0, format!("missing {k}")));
    if get("format")? != FORMAT_VERSION.to_string() {
        return Err(err(1, format!("unsupported format {}", get("format")?)));
    }
    if get("kind")? != "khovanov" {
        return Err(err(2, format!("not a khovanov table: {}", get("kind")?)));
    }
    let num = |k: &str| get(k)?.parse::<usize>().map_err(|e| err(0, format!("{k}: {e}")));
    let meta = DiagramMeta {
        n_plus: num("n_plus")?,
        n_minus: num("n_minus")?,
        crossings: num("crossings")?,
        fingerprint: u64::from_str_radix(get("fingerprint")?, 16).map_err(|e| err(0, format!("fingerprint: {e}")))?,
    };
    let normalized = get("normalized")?.parse::<bool>().map_err(|e| err(0, format!("normalized: {e}")))?;
    let mut ranks = BTreeMap::new();
    for (n, line) in lines.filter(|(_, l)| !l.is_empty()) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let [i, j, r] = f[..] else { return Err(err(n, format!("expected `i j rank`, got {line:?}"))) };
        let bad = |e: std::num::ParseIntError| err(n, e.to_string());
        let (i, j, r) = (i.parse::<i64>().map_err(bad)?, j.parse::<i64>().map_err(bad)?, r.parse::<u64>().map_err(bad)?);
        if ranks.insert((i, j), r).is_some() {
            return Err(err(n, format!("repeated bidegree ({i}, {j})")));
        }
    }
    Ok(KhovanovTable::new(ranks, meta, normalized))
}

pub fn table_csv(t: &KhovanovTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "j", "rank"]).unwrap();
    for (&(i, j), &r) in t.ranks() {
        w.serialize((i, j, r)).unwrap();
    }
    format!("format={FORMAT_VERSION}\n{}", String::from_utf8(w.into_inner().unwrap()).unwrap())
}

pub fn jones_text(bracket: &Jones, from_kh: &Jones) -> String {
    let mut s = header("jones");
    writeln!(s, "bracket={bracket}").unwrap();
    writeln!(s, "khovanov={from_kh}").unwrap();
    writeln!(s, "agree={}", bracket == from_kh).unwrap();
    s
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

/// CSV rows of a scan; absent deltas are empty fields.
pub fn scan_csv(r: &ScanReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "n",
        "crossings",
        "i_max",
        "mdeg_num",
        "mdeg_den",
        "f_num",
        "f_den",
        "k_num",
        "k_den",
        "delta_i_max",
        "delta_mdeg_num",
        "delta_mdeg_den",
    ])
    .unwrap();
    let parts = |q: Rational64| [q.numer().to_string(), q.denom().to_string()];
    for row in &r.rows {
        let [mn, md] = parts(row.mdeg);
        let [fn_, fd] = parts(row.f);
        let [kn, kd] = parts(row.k);
        let [dn, dd] = row.delta_mdeg.map_or([String::new(), String::new()], parts);
        let di = row.delta_i_max.map_or(String::new(), |d| d.to_string());
        w.write_record([
            row.n.to_string(),
            row.crossings.to_string(),
            row.i_max.to_string(),
            mn,
            md,
            fn_,
            fd,
            kn,
            kd,
            di,
            dn,
            dd,
        ])
        .unwrap();
    }
    format!("format={FORMAT_VERSION}\n{}", String::from_utf8(w.into_inner().unwrap()).unwrap())
}

pub fn scan_text(r: &ScanReport) -> String {
    let mut s = match r.family {
        Family::Twist => header("twist-scan"),
        Family::Torus { p } => header("torus-scan") + &format!("p={p}\n"),
    };
    writeln!(s, "n_max={}", r.n_max).unwrap();
    writeln!(s, "base_crossings={}", r.base_crossings).unwrap();
    writeln!(s, "base_s0={}", r.base_s0).unwrap();
    writeln!(s, "base_n_minus={}", r.base_n_minus).unwrap();
    writeln!(s, "window={}", khtwist_core::experiments::trailing_window(r.n_max)).unwrap();
    writeln!(s, "stabilization_n={}", opt(r.stabilization_n)).unwrap();
    writeln!(s, "mdeg_stabilization_n={}", opt(r.mdeg_stabilization_n)).unwrap();
    writeln!(s, "passed={}", r.passed()).unwrap();
    s.push_str("[rows]\nn crossings n_plus n_minus i_max h_max mdeg f k s0 delta_i_max delta_mdeg jones\n");
    for x in &r.rows {
        writeln!(
            s,
            "{} {} {} {} {} {} {} {} {} {} {} {} {}",
            x.n,
            x.crossings,
            x.n_plus,
            x.n_minus,
            x.i_max,
            x.h_max,
            x.mdeg,
            x.f,
            x.k,
            x.s0,
            opt(x.delta_i_max),
            opt(x.delta_mdeg),
            x.jones
        )
        .unwrap();
    }
    s.push_str("[failures]\n");
    for f in &r.failures {
        writeln!(s, "{} {}", f.n, f.message).unwrap();
    }
    s.push_str("[verdicts]\nname status gating counterexample detail\n");
    for v in &r.verdicts {
        writeln!(
            s,
            "{} {} {} {} {}",
            v.name,
            if v.passed { "pass" } else { "fail" },
            if v.gating { "gating" } else { "info" },
            opt(v.counterexample),
            v.detail
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use khtwist_core::experiments::{torus_scan, ScanOptions};
    use khtwist_core::homology::ComputeOptions;
    use khtwist_core::{compute_khovanov, LinkDiagram};

    #[test]
    fn table_round_trip() {
        let d: LinkDiagram = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".parse().unwrap();
        let t = compute_khovanov(&d, &ComputeOptions::default()).unwrap();
        let text = table_text(&t);
        assert!(text.starts_with("format=1\nkind=khovanov\n"));
        assert_eq!(parse_table(&text).unwrap(), t);
        assert_eq!(table_csv(&t).lines().nth(1), Some("i,j,rank"));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(parse_table("format=2\nkind=khovanov\ni j rank\n").is_err());
        let base = "format=1\nkind=khovanov\nnormalized=true\ncrossings=0\nn_plus=0\nn_minus=0\nfingerprint=0\ni j rank\n";
        assert_eq!(parse_table(&format!("{base}0 1 1\n0 -1 1\n")).unwrap().total_rank(), 2);
        assert_eq!(parse_table(&format!("{base}0 1\n")).unwrap_err().line, 9);
        assert_eq!(parse_table(&format!("{base}0 1 1\n0 1 1\n")).unwrap_err().line, 10);
        assert!(parse_table("format=1\nkind=jones\n").is_err());
    }

    #[test]
    fn scan_formats() {
        let r = torus_scan(2, 3, &ScanOptions::default()).unwrap();
        let csv = scan_csv(&r);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "format=1");
        assert_eq!(lines[1].split(',').count(), 12);
        assert_eq!(lines.len(), 2 + 4);
        // row 0 has no predecessor
        assert!(lines[2].ends_with(",,,"));
        let text = scan_text(&r);
        assert!(text.starts_with("format=1\nkind=torus-scan\np=2\n"));
        assert!(text.contains("torus_imax pass gating -"));
    }
}
