//! Integer Laurent polynomials in one variable whose exponents are counted
//! in fixed units (1, 1/2 or 1/4).
//!
//! The variable and its exponent unit are part of the type, so a `q`
//! polynomial can never be added to a `t^{1/2}` one by accident. Exponents
//! are stored pre-scaled: the term `c t^{3/2}` of a [`THalf`] polynomial is
//! stored under key `3`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::marker::PhantomData;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("the zero polynomial has no maximal degree")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("exponent {0} is not a multiple of the exponent unit")]
    UnitMismatch(String),
    #[error("exponent {0}/4 is not a half-integer")]
    QuarterExponentResidue(i64),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

pub trait Variable: Copy + Clone + fmt::Debug + PartialEq + Eq + core::hash::Hash + Default + 'static {
    const NAME: &'static str;
    /// Exponents are multiples of `1 / UNIT`.
    const UNIT: i64;
}

/// The quantum grading variable `q`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Q;
/// The Kauffman bracket variable `A`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct A;
/// `t` with half-integer exponents (Jones polynomials).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct THalf;
/// `t` with quarter-integer exponents (brackets after `A = t^{-1/4}`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TQuarter;

impl Variable for Q {
    const NAME: &'static str = "q";
    const UNIT: i64 = 1;
}
impl Variable for A {
    const NAME: &'static str = "A";
    const UNIT: i64 = 1;
}
impl Variable for THalf {
    const NAME: &'static str = "t";
    const UNIT: i64 = 2;
}
impl Variable for TQuarter {
    const NAME: &'static str = "t";
    const UNIT: i64 = 4;
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<V: Variable> {
    terms: BTreeMap<i64, BigInt>,
    _var: PhantomData<V>,
}

pub type Jones = LaurentPoly<THalf>;

impl<V: Variable> LaurentPoly<V> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new(), _var: PhantomData }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * var^(scaled_exp / UNIT)`.
    pub fn monomial(coeff: impl Into<BigInt>, scaled_exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(scaled_exp, coeff.into());
        p
    }

    /// Builds from `(scaled exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(scaled exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, scaled_exp: i64) -> BigInt {
        self.terms.get(&scaled_exp).cloned().unwrap_or_default()
    }

    pub fn max_scaled_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_scaled_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Maximal exponent with a nonzero coefficient, as an exact rational.
    pub fn mdeg(&self) -> Result<Rational64, LaurentError> {
        self.max_scaled_exp()
            .map(|e| Rational64::new(e, V::UNIT))
            .ok_or(LaurentError::ZeroPolynomial)
    }

    /// Multiplies by `var^(scaled / UNIT)`.
    pub fn shift(&self, scaled: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + scaled, c.clone())).collect(), _var: PhantomData }
    }

    /// `p(var^{-1})`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(), _var: PhantomData }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(), _var: PhantomData }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient `q` with `self == den * q`, or an error when none exists.
    pub fn exact_divide(&self, den: &Self) -> Result<Self, LaurentError> {
        let (den_max, den_min) = match (den.max_scaled_exp(), den.min_scaled_exp()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(LaurentError::DivisionByZero),
        };
        let lead = den.terms[&den_max].clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let q_min = match rem.min_scaled_exp() {
            Some(m) => m - den_min,
            None => return Ok(quot),
        };
        while let Some(top) = rem.max_scaled_exp() {
            let e = top - den_max;
            if e < q_min {
                return Err(LaurentError::InexactDivision);
            }
            let (c, r) = rem.terms[&top].div_rem(&lead);
            if !r.is_zero() {
                return Err(LaurentError::InexactDivision);
            }
            rem -= &den.shift(e).scale(&c);
            quot.add_term(e, c);
        }
        Ok(quot)
    }
}

impl<V: Variable> Default for LaurentPoly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Variable> Zero for LaurentPoly<V> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<V: Variable> One for LaurentPoly<V> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl<V: Variable> AddAssign<&LaurentPoly<V>> for LaurentPoly<V> {
    fn add_assign(&mut self, rhs: &LaurentPoly<V>) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl<V: Variable> SubAssign<&LaurentPoly<V>> for LaurentPoly<V> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<V>) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl<V: Variable> Add for &LaurentPoly<V> {
    type Output = LaurentPoly<V>;
    fn add(self, rhs: Self) -> LaurentPoly<V> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<V: Variable> Add for LaurentPoly<V> {
    type Output = LaurentPoly<V>;
    fn add(mut self, rhs: Self) -> LaurentPoly<V> {
        self += &rhs;
        self
    }
}

impl<V: Variable> Sub for &LaurentPoly<V> {
    type Output = LaurentPoly<V>;
    fn sub(self, rhs: Self) -> LaurentPoly<V> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<V: Variable> Sub for LaurentPoly<V> {
    type Output = LaurentPoly<V>;
    fn sub(mut self, rhs: Self) -> LaurentPoly<V> {
        self -= &rhs;
        self
    }
}

impl<V: Variable> Neg for &LaurentPoly<V> {
    type Output = LaurentPoly<V>;
    fn neg(self) -> LaurentPoly<V> {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(), _var: PhantomData }
    }
}

impl<V: Variable> Neg for LaurentPoly<V> {
    type Output = LaurentPoly<V>;
    fn neg(self) -> LaurentPoly<V> {
        -&self
    }
}

impl<V: Variable> Mul for &LaurentPoly<V> {
    type Output = LaurentPoly<V>;
    fn mul(self, rhs: Self) -> LaurentPoly<V> {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl<V: Variable> Mul for LaurentPoly<V> {
    type Output = LaurentPoly<V>;
    fn mul(self, rhs: Self) -> LaurentPoly<V> {
        &self * &rhs
    }
}

impl<V: Variable> Mul<&LaurentPoly<V>> for LaurentPoly<V> {
    type Output = LaurentPoly<V>;
    fn mul(self, rhs: &LaurentPoly<V>) -> LaurentPoly<V> {
        &self * rhs
    }
}

impl<V: Variable> AddAssign for LaurentPoly<V> {
    fn add_assign(&mut self, rhs: Self) {
        *self += &rhs;
    }
}

impl<V: Variable> core::iter::Sum for LaurentPoly<V> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc + p)
    }
}

/// `A -> t^{-1/4}`.
pub fn substitute_a(p: &LaurentPoly<A>) -> LaurentPoly<TQuarter> {
    LaurentPoly { terms: p.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(), _var: PhantomData }
}

/// `q -> -t^{1/2}`.
pub fn substitute_q(p: &LaurentPoly<Q>) -> LaurentPoly<THalf> {
    LaurentPoly {
        terms: p.terms.iter().map(|(&e, c)| (e, if e.rem_euclid(2) == 1 { -c } else { c.clone() })).collect(),
        _var: PhantomData,
    }
}

impl LaurentPoly<TQuarter> {
    /// Re-expresses in half units; every exponent must be a half-integer.
    pub fn to_half_units(&self) -> Result<LaurentPoly<THalf>, LaurentError> {
        let mut terms = BTreeMap::new();
        for (&e, c) in &self.terms {
            if e % 2 != 0 {
                return Err(LaurentError::QuarterExponentResidue(e));
            }
            terms.insert(e / 2, c.clone());
        }
        Ok(LaurentPoly { terms, _var: PhantomData })
    }
}

fn render_exponent(num: i64, den: i64) -> String {
    let g = num.gcd(&den);
    let (n, d) = (num / g, den / g);
    if d == 1 && n >= 0 {
        format!("^{n}")
    } else if d == 1 {
        format!("^({n})")
    } else {
        format!("^({n}/{d})")
    }
}

/// Descending exponents, e.g. `t^(-1) + t^(-3) - t^(-4)`.
impl<V: Variable> fmt::Display for LaurentPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str(V::NAME)?;
            if e != V::UNIT {
                f.write_str(&render_exponent(e, V::UNIT))?;
            }
        }
        Ok(())
    }
}

impl<V: Variable> fmt::Debug for LaurentPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<V: Variable> core::str::FromStr for LaurentPoly<V> {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, LaurentError> {
        let bad = |m: &str| LaurentError::Parse(format!("{m} in `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        // split into signed terms, ignoring signs inside exponent parentheses
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        for ch in compact.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if !cur.is_empty() {
                        pieces.push((neg, core::mem::take(&mut cur)));
                    } else if !pieces.is_empty() || neg {
                        return Err(bad("dangling sign"));
                    }
                    neg = ch == '-';
                }
                _ => cur.push(ch),
            }
        }
        if cur.is_empty() {
            return Err(bad("trailing sign"));
        }
        pieces.push((neg, cur));

        let mut p = Self::zero();
        for (neg, body) in pieces {
            let (coeff_part, var_part) = match body.find(V::NAME) {
                Some(i) => (&body[..i], Some(&body[i + V::NAME.len()..])),
                None => (body.as_str(), None),
            };
            let coeff_str = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
            let mut coeff: BigInt = if coeff_str.is_empty() {
                if var_part.is_none() {
                    return Err(bad("empty term"));
                }
                BigInt::one()
            } else {
                coeff_str.parse().map_err(|_| bad("bad coefficient"))?
            };
            if neg {
                coeff = -coeff;
            }
            let scaled = match var_part {
                None => 0,
                Some("") => V::UNIT,
                Some(rest) => {
                    let e = rest.strip_prefix('^').ok_or_else(|| bad("expected `^`"))?;
                    let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
                    let (num, den) = match e.split_once('/') {
                        Some((n, d)) => (n.parse::<i64>(), d.parse::<i64>()),
                        None => (e.parse::<i64>(), Ok(1)),
                    };
                    let (num, den) = (num.map_err(|_| bad("bad exponent"))?, den.map_err(|_| bad("bad exponent"))?);
                    if den <= 0 || (num * V::UNIT) % den != 0 {
                        return Err(LaurentError::UnitMismatch(format!("{num}/{den}")));
                    }
                    num * V::UNIT / den
                }
            };
            p.add_term(scaled, coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type PQ = LaurentPoly<Q>;
    type PT = LaurentPoly<THalf>;

    fn q(terms: &[(i64, i64)]) -> PQ {
        PQ::from_terms(terms.iter().copied())
    }

    #[test]
    fn mdeg_examples() {
        assert_eq!(PT::one().mdeg(), Ok(Rational64::from_integer(0)));
        let left_trefoil: PT = PT::from_terms([(-2, 1), (-6, 1), (-8, -1)]);
        assert_eq!(left_trefoil.mdeg(), Ok(Rational64::from_integer(-1)));
        let skein_coeff = PT::from_terms([(3, 1), (1, -1)]);
        assert_eq!(skein_coeff.mdeg(), Ok(Rational64::new(3, 2)));
        assert_eq!(PT::zero().mdeg(), Err(LaurentError::ZeroPolynomial));
    }

    #[test]
    fn exact_divide_examples() {
        let qq = q(&[(1, 1), (-1, 1)]);
        assert_eq!(qq.exact_divide(&qq), Ok(PQ::one()));
        let euler = q(&[(-1, 1), (-3, 1), (-5, 1), (-9, -1)]);
        assert_eq!(euler.exact_divide(&qq), Ok(q(&[(-2, 1), (-6, 1), (-8, -1)])));
        assert_eq!(q(&[(2, 1), (0, 1)]).exact_divide(&qq), Ok(q(&[(1, 1)])));
        assert_eq!(q(&[(2, 1), (0, 2)]).exact_divide(&qq), Err(LaurentError::InexactDivision));
        assert_eq!(qq.exact_divide(&PQ::zero()), Err(LaurentError::DivisionByZero));
        assert_eq!(q(&[(4, 2)]).exact_divide(&q(&[(1, 2)])), Ok(q(&[(3, 1)])));
        assert_eq!(q(&[(4, 3)]).exact_divide(&q(&[(1, 2)])), Err(LaurentError::InexactDivision));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(substitute_a(&LaurentPoly::<A>::one()), LaurentPoly::<TQuarter>::one());
        let m = substitute_a(&LaurentPoly::<A>::monomial(-1, 3));
        assert_eq!(m, LaurentPoly::<TQuarter>::monomial(-1, -3));
        assert_eq!(m.to_string(), "-t^(-3/4)");
        assert_eq!(m.to_half_units(), Err(LaurentError::QuarterExponentResidue(-3)));
        let j = substitute_q(&q(&[(-2, 1), (-6, 1), (-8, -1)]));
        assert_eq!(j.to_string(), "t^(-1) + t^(-3) - t^(-4)");
        assert_eq!(substitute_q(&q(&[(1, 1)])), PT::monomial(-1, 1));
    }

    #[test]
    fn render_and_parse() {
        let p = PT::from_terms([(3, 1), (1, -1), (0, 2), (-2, 5), (2, -3)]);
        let s = p.to_string();
        assert_eq!(s, "t^(3/2) - 3*t - t^(1/2) + 2 + 5*t^(-1)");
        assert_eq!(s.parse::<PT>(), Ok(p));
        assert_eq!("0".parse::<PT>(), Ok(PT::zero()));
        assert_eq!("-t^(-3/4)".parse::<LaurentPoly<TQuarter>>(), Ok(LaurentPoly::monomial(-1, -3)));
        assert!(matches!("t^(1/4)".parse::<PT>(), Err(LaurentError::UnitMismatch(_))));
        assert!("t^".parse::<PT>().is_err());
        assert!("1 +".parse::<PT>().is_err());
        assert_eq!("q^2 - q^(-1)".parse::<PQ>(), Ok(q(&[(2, 1), (-1, -1)])));
    }

    fn arb_poly() -> impl Strategy<Value = PQ> {
        prop::collection::vec((-6i64..6, -4i64..5), 0..6).prop_map(|v| PQ::from_terms(v))
    }

    fn arb_nonzero() -> impl Strategy<Value = PQ> {
        arb_poly().prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn mdeg_is_additive(a in arb_nonzero(), b in arb_nonzero()) {
            prop_assert_eq!((&a * &b).mdeg().unwrap(), a.mdeg().unwrap() + b.mdeg().unwrap());
        }

        #[test]
        fn divide_inverts_multiply(a in arb_poly(), b in arb_nonzero()) {
            prop_assert_eq!((&a * &b).exact_divide(&b), Ok(a));
        }

        #[test]
        fn substitution_is_multiplicative(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(substitute_q(&(&a * &b)), &substitute_q(&a) * &substitute_q(&b));
            let (x, y) = (
                LaurentPoly::<A>::from_terms(a.terms().map(|(e, c)| (e, c.clone()))),
                LaurentPoly::<A>::from_terms(b.terms().map(|(e, c)| (e, c.clone()))),
            );
            prop_assert_eq!(substitute_a(&(&x * &y)), &substitute_a(&x) * &substitute_a(&y));
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<PQ>(), Ok(a));
        }
    }
}
