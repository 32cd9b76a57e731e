//! Kauffman bracket by memoized skein expansion, and the Jones polynomial
//! derived from it. This path shares nothing with the homology engine
//! beyond the diagram type, so the two serve as oracles for each other.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::diagram::LinkDiagram;
use crate::laurent::{substitute_a, Jones, LaurentError, LaurentPoly, A};
use crate::union_find::UnionFind;

/// Crossing limit for the skein expansion.
pub const BRACKET_BUDGET: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JonesError {
    #[error("diagram has {crossings} crossings, bracket budget is {budget}")]
    BudgetExceeded { crossings: usize, budget: usize },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// `δ = -A⁻² - A²`, the value of a disjoint circle.
pub fn delta() -> LaurentPoly<A> {
    LaurentPoly::from_terms([(-2, -1), (2, -1)])
}

/// Residual crossings, labels renumbered by first appearance.
type Residual = Vec<[u32; 4]>;

struct Expander {
    memo: BTreeMap<Residual, LaurentPoly<A>>,
    delta_pows: Vec<LaurentPoly<A>>,
}

impl Expander {
    fn delta_pow(&mut self, k: usize) -> LaurentPoly<A> {
        while self.delta_pows.len() <= k {
            let next = self.delta_pows.last().map_or_else(LaurentPoly::one, |p| p * &delta());
            self.delta_pows.push(next);
        }
        self.delta_pows[k].clone()
    }

    /// Σ over states of the residual of A^{#0 - #1} δ^{closed circles}.
    fn eval(&mut self, r: &Residual) -> LaurentPoly<A> {
        if r.is_empty() {
            return LaurentPoly::one();
        }
        if let Some(v) = self.memo.get(r) {
            return v.clone();
        }
        let [a, b, c, d] = r[0];
        let mut total = LaurentPoly::zero();
        for (pairs, exp) in [([(a, b), (c, d)], 1), ([(a, d), (b, c)], -1)] {
            let (rest, circles) = smooth_first(r, pairs);
            let term = self.eval(&rest) * self.delta_pow(circles);
            total += term.shift(exp);
        }
        self.memo.insert(r.clone(), total.clone());
        total
    }
}

/// Removes the first crossing by joining its arcs in `pairs`; returns the
/// canonical residual and the number of circles that closed up.
fn smooth_first(r: &Residual, pairs: [(u32, u32); 2]) -> (Residual, usize) {
    let max = r.iter().flatten().copied().max().unwrap_or(0) as usize;
    let mut uf = UnionFind::new(max + 1);
    for (u, v) in pairs {
        uf.union(u, v);
    }
    let rest = &r[1..];
    let mut touched = vec![false; max + 1];
    for &l in rest.iter().flatten() {
        touched[uf.find(l) as usize] = true;
    }
    let mut roots: Vec<u32> = pairs.iter().flat_map(|&(u, v)| [u, v]).map(|l| uf.find(l)).collect();
    roots.sort_unstable();
    roots.dedup();
    let circles = roots.iter().filter(|&&root| !touched[root as usize]).count();

    let mut relabel = vec![0u32; max + 1];
    let mut next = 0;
    let residual = rest
        .iter()
        .map(|x| {
            x.map(|l| {
                let root = uf.find(l) as usize;
                if relabel[root] == 0 {
                    next += 1;
                    relabel[root] = next;
                }
                relabel[root]
            })
        })
        .collect();
    (residual, circles)
}

pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly<A>, JonesError> {
    kauffman_bracket_with_budget(d, BRACKET_BUDGET)
}

/// `⟨D⟩` normalized by `⟨○⟩ = 1`.
pub fn kauffman_bracket_with_budget(d: &LinkDiagram, budget: usize) -> Result<LaurentPoly<A>, JonesError> {
    let crossings = d.crossing_count();
    if crossings > budget {
        return Err(JonesError::BudgetExceeded { crossings, budget });
    }
    let mut ex = Expander { memo: BTreeMap::new(), delta_pows: Vec::new() };
    let residual: Residual = d.crossings().iter().map(|x| x.edges()).collect();
    let states = ex.eval(&residual) * ex.delta_pow(d.free_loops() as usize);
    // every state has at least one circle
    Ok(states.exact_divide(&delta())?)
}

/// `V(t) = (-A)^{-3w} ⟨D⟩` at `A = t^{-1/4}`.
pub fn jones_polynomial(d: &LinkDiagram) -> Result<Jones, JonesError> {
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let framed = kauffman_bracket(d)? * LaurentPoly::monomial(sign, -3 * w);
    Ok(substitute_a(&framed).to_half_units()?)
}

/// `t⁻¹ V₊ - t V₋ = (t^{1/2} - t^{-1/2}) V₀`.
pub fn skein_check(l_plus: &LinkDiagram, l_minus: &LinkDiagram, l_zero: &LinkDiagram) -> Result<bool, JonesError> {
    let (vp, vm, v0) = (jones_polynomial(l_plus)?, jones_polynomial(l_minus)?, jones_polynomial(l_zero)?);
    Ok(skein_holds(&vp, &vm, &v0))
}

pub fn skein_holds(vp: &Jones, vm: &Jones, v0: &Jones) -> bool {
    let lhs = vp.shift(-2) - vm.shift(2);
    let rhs = Jones::from_terms([(1, 1), (-1, -1)]) * v0;
    lhs == rhs
}

/// `V_{n+1} = t² V_{n-1} + (t^{3/2} - t^{1/2}) V_n` for consecutive members
/// of a coherent twist family.
pub fn twist_recursion_holds(prev: &Jones, cur: &Jones, next: &Jones) -> bool {
    *next == prev.shift(4) + Jones::from_terms([(3, 1), (1, -1)]) * cur
}
