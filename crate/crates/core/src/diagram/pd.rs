//! PD text format.
//!
//! ```text
//! # left-handed trefoil, bigon marked
//! mark=1,4
//! X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)
//! ```
//!
//! Optional header lines are `loops=<k>` (crossingless components) and
//! `mark=<r1>,<r2>` where a reference is an edge label or `L<k>` for the
//! k-th crossingless component. `#` starts a comment.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{DiagramError, EdgeRef, LinkDiagram};

pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut tuples = Vec::new();
    let mut loops = None;
    let mut mark = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| DiagramError::MalformedSyntax { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(v) = line.strip_prefix("loops=") {
            if loops.is_some() {
                return Err(err("duplicate loops= header".into()));
            }
            loops = Some(v.trim().parse::<u32>().map_err(|_| err(format!("bad loop count `{v}`")))?);
            continue;
        }
        if let Some(v) = line.strip_prefix("mark=") {
            if mark.is_some() {
                return Err(err("duplicate mark= header".into()));
            }
            let parts: Vec<&str> = v.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(err(format!("mark needs two strands, got `{v}`")));
            }
            let r1 = parse_ref(parts[0]).ok_or_else(|| err(format!("bad strand `{}`", parts[0])))?;
            let r2 = parse_ref(parts[1]).ok_or_else(|| err(format!("bad strand `{}`", parts[1])))?;
            mark = Some((r1, r2));
            continue;
        }
        let mut rest = line;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix("X(")
                .ok_or_else(|| err(format!("expected `X(` at `{rest}`")))?;
            let close = body.find(')').ok_or_else(|| err("unterminated crossing".into()))?;
            let labels: Result<Vec<u32>, _> = body[..close].split(',').map(|s| s.trim().parse::<u32>()).collect();
            let labels = labels.map_err(|_| err(format!("bad labels in `X({})`", &body[..close])))?;
            if labels.len() != 4 {
                return Err(err(format!("crossing needs 4 labels, got {}", labels.len())));
            }
            if labels.contains(&0) {
                return Err(err("edge labels are positive".into()));
            }
            tuples.push([labels[0], labels[1], labels[2], labels[3]]);
            rest = body[close + 1..].trim_start();
        }
    }
    LinkDiagram::from_pd(tuples, loops.unwrap_or(0), mark)
}

fn parse_ref(s: &str) -> Option<EdgeRef> {
    if let Some(l) = s.strip_prefix('L') {
        return l.parse::<u32>().ok().filter(|&k| k > 0).map(EdgeRef::Loop);
    }
    s.parse::<u32>().ok().filter(|&k| k > 0).map(EdgeRef::Edge)
}

pub(super) fn to_pd_string(d: &LinkDiagram) -> String {
    let mut out = String::new();
    if d.free_loops > 0 {
        out.push_str(&format!("loops={}\n", d.free_loops));
    }
    if let Some(m) = d.marked_region {
        out.push_str(&format!("mark={},{}\n", m.edge_pair.0, m.edge_pair.1));
    }
    let body: Vec<String> = d
        .crossings
        .iter()
        .map(|x| {
            let [a, b, c, e] = x.edges;
            format!("X({a},{b},{c},{e})")
        })
        .collect();
    out.push_str(&body.join(" "));
    out.push('\n');
    out
}

impl core::str::FromStr for LinkDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

impl LinkDiagram {
    /// Canonical PD text; `parse_pd` reads it back to an equal diagram.
    pub fn to_pd(&self) -> String {
        to_pd_string(self)
    }
}
