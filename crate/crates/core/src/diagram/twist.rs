//! Local surgery: half-twists between two marked strands, R1 kinks and R2
//! clasps.

use alloc::vec::Vec;

use super::{DiagramError, EdgeRef, FaceSide, LinkDiagram, Sign};

/// Replaces the two strands through the twist disk by a two-strand braid.
///
/// Strands are tracked by position: `right` has the twist face on its left
/// when read along its orientation. A positive letter carries the left
/// strand over to the right, a negative letter the right strand over to the
/// left. Crossingless strands are closed up on their own position.
fn splice(d: &LinkDiagram, right: EdgeRef, left: EdgeRef, word: &[Sign]) -> Result<LinkDiagram, DiagramError> {
    let n = word.len();
    if n == 0 {
        return Ok(d.canonical_relabel());
    }
    let mut tuples: Vec<[u32; 4]> = d.crossings.iter().map(|x| x.edges).collect();
    let mut signs: Vec<Sign> = d.crossings.iter().map(|x| x.sign).collect();
    let ends = d.edge_ends();
    let mut next_label = d.edge_count + 1;
    let mut free_loops = d.free_loops;
    let mut fresh = || {
        let l = next_label;
        next_label += 1;
        l
    };

    let mut segments = |strand: EdgeRef, tuples: &mut Vec<[u32; 4]>, free_loops: &mut u32| -> Vec<u32> {
        let mut segs = Vec::with_capacity(n + 1);
        match strand {
            EdgeRef::Edge(e) => {
                segs.push(e);
                for _ in 0..n {
                    segs.push(fresh());
                }
                let (y, t) = ends[e as usize - 1].1;
                tuples[y][t] = segs[n];
            }
            EdgeRef::Loop(_) => {
                for _ in 0..n {
                    segs.push(fresh());
                }
                segs.push(segs[0]);
                *free_loops -= 1;
            }
        }
        segs
    };
    let rs = segments(right, &mut tuples, &mut free_loops);
    let ls = segments(left, &mut tuples, &mut free_loops);

    for (k, &s) in word.iter().enumerate() {
        let (r_in, r_out, l_in, l_out) = (rs[k], rs[k + 1], ls[k], ls[k + 1]);
        let t = match s {
            Sign::Positive => [r_in, r_out, l_out, l_in],
            Sign::Negative => [l_in, r_in, r_out, l_out],
        };
        tuples.push(t);
        signs.push(s);
    }
    let mark = (EdgeRef::Edge(rs[n]), EdgeRef::Edge(ls[n]));
    let out = LinkDiagram::from_signed_pd(tuples, signs, free_loops, Some(mark))?;
    debug_assert!(out.marked_region.is_some_and(|m| m.coherent));
    Ok(out.canonical_relabel())
}

/// Orders the marked strands as (right, left) for splicing.
fn oriented_region(d: &LinkDiagram) -> Result<(EdgeRef, EdgeRef), DiagramError> {
    let region = d.marked_region.ok_or(DiagramError::NoMarkedRegion)?;
    if !region.coherent {
        return Err(DiagramError::IncoherentRegion);
    }
    let (r1, r2) = region.edge_pair;
    Ok(match (r1, r2) {
        (EdgeRef::Edge(e1), EdgeRef::Edge(e2)) => match d.twist_face(e1, e2) {
            Some(FaceSide::Coherent { right, left }) => (EdgeRef::Edge(right), EdgeRef::Edge(left)),
            _ => return Err(DiagramError::IncoherentRegion),
        },
        (EdgeRef::Loop(_), EdgeRef::Edge(_)) => (r2, r1),
        _ => (r1, r2),
    })
}

pub(super) fn insert_half_twists(d: &LinkDiagram, n: usize) -> Result<LinkDiagram, DiagramError> {
    let (right, left) = oriented_region(d)?;
    let word = alloc::vec![Sign::Positive; n];
    splice(d, right, left, &word)
}

pub(super) fn add_clasp(d: &LinkDiagram) -> Result<LinkDiagram, DiagramError> {
    let (right, left) = oriented_region(d)?;
    splice(d, right, left, &[Sign::Positive, Sign::Negative])
}

pub(super) fn add_kink(d: &LinkDiagram, edge: u32, sign: Sign) -> Result<LinkDiagram, DiagramError> {
    if edge == 0 || edge > d.edge_count {
        return Err(DiagramError::UnknownMarkedStrand(EdgeRef::Edge(edge)));
    }
    let mut tuples: Vec<[u32; 4]> = d.crossings.iter().map(|x| x.edges).collect();
    let mut signs: Vec<Sign> = d.crossings.iter().map(|x| x.sign).collect();
    let (y, t) = d.edge_ends()[edge as usize - 1].1;
    let (lp, out) = (d.edge_count + 1, d.edge_count + 2);
    tuples[y][t] = out;
    tuples.push(match sign {
        Sign::Positive => [lp, lp, out, edge],
        Sign::Negative => [edge, lp, lp, out],
    });
    signs.push(sign);
    let mark = d.marked_region.map(|m| m.edge_pair);
    let kinked = match LinkDiagram::from_signed_pd(tuples.clone(), signs.clone(), d.free_loops, mark) {
        Ok(k) => k,
        Err(DiagramError::MarkNotOnCommonFace(..)) => LinkDiagram::from_signed_pd(tuples, signs, d.free_loops, None)?,
        Err(e) => return Err(e),
    };
    Ok(kinked.canonical_relabel())
}
