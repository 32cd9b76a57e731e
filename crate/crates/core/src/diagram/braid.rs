use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{DiagramError, LinkDiagram, Sign};

/// Closure of a braid word. Generator `k > 0` is the positive crossing
/// sigma_k (left strand over, moving right), `-k` its inverse. Strands that
/// no generator touches become crossingless components.
pub fn braid_closure(word: &[i32], strands: usize) -> Result<LinkDiagram, DiagramError> {
    if strands == 0 {
        return Err(DiagramError::NoStrands);
    }
    for &g in word {
        let k = g.unsigned_abs() as usize;
        if k == 0 || k >= strands {
            return Err(DiagramError::IndexOutOfRange { generator: g, strands });
        }
    }
    let mut seg: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut tuples = Vec::with_capacity(word.len());
    let mut signs = Vec::with_capacity(word.len());
    for &g in word {
        let (l, r) = (g.unsigned_abs() as usize - 1, g.unsigned_abs() as usize);
        let (l_in, r_in) = (seg[l], seg[r]);
        let (l_out, r_out) = (next, next + 1);
        next += 2;
        if g > 0 {
            tuples.push([r_in, r_out, l_out, l_in]);
            signs.push(Sign::Positive);
        } else {
            tuples.push([l_in, r_in, r_out, l_out]);
            signs.push(Sign::Negative);
        }
        seg[l] = l_out;
        seg[r] = r_out;
    }

    let mut close: BTreeMap<u32, u32> = BTreeMap::new();
    let mut free_loops = 0;
    for (p, &top) in seg.iter().enumerate() {
        let bottom = p as u32 + 1;
        if top == bottom {
            free_loops += 1;
        } else {
            close.insert(top, bottom);
        }
    }
    for t in tuples.iter_mut() {
        for l in t.iter_mut() {
            if let Some(&b) = close.get(l) {
                *l = b;
            }
        }
    }
    // compact the labels left behind by untouched strands and closed tops
    let mut used: Vec<u32> = tuples.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let compact: BTreeMap<u32, u32> = used.iter().enumerate().map(|(i, &l)| (l, i as u32 + 1)).collect();
    for t in tuples.iter_mut() {
        for l in t.iter_mut() {
            *l = compact[l];
        }
    }
    Ok(LinkDiagram::from_signed_pd(tuples, signs, free_loops, None)?.canonical_relabel())
}
