//! Integer Laurent polynomials in one variable, integer polynomials, exact
//! factorization over the integers, and the Fox–Milnor factorization test.
//!
//! Alexander polynomials are only defined up to units `±tᵏ`, so most
//! comparisons go through [`LaurentPoly::normalize`], which produces an
//! [`IntPoly`] with nonzero constant term and positive leading coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{bigint_json, exact_sqrt, positive_divisors, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("cannot evaluate a Laurent polynomial at zero")]
    ZeroArgument,
    #[error("the zero polynomial has no normal form")]
    ZeroPolynomial,
    #[error("not an Alexander polynomial: value at t = 1 is {0}, expected ±1")]
    InvalidAlexander(BigInt),
}

/// Integer Laurent polynomial, stored as a sparse map exponent → coefficient.
///
/// No stored coefficient is zero, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coefficient: impl Into<BigInt>, exponent: i64) -> Self {
        Self::from_terms([(coefficient.into(), exponent)])
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C, I>(terms: I) -> Self
    where
        C: Into<BigInt>,
        I: IntoIterator<Item = (C, i64)>,
    {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exponent: i64, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exponent - min_exponent`, or `None` for the zero polynomial.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exponent()? - self.min_exponent()?)
    }

    /// Multiplies by `tᵏ`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `t ↦ t⁻¹`.
    pub fn involute(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact value at a nonzero integer.
    pub fn evaluate_int(&self, x: i64) -> Result<Rational, LaurentError> {
        if x == 0 {
            return Err(LaurentError::ZeroArgument);
        }
        Ok(self.evaluate(&Rational::from_integer(BigInt::from(x))))
    }

    /// Exact value at a nonzero rational. Panics on zero when negative
    /// exponents are present.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| Rational::from_integer(c.clone()) * pow_rational(x, *e))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Integer value at `t = 1`.
    pub fn value_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Integer value at `t = -1`.
    pub fn value_at_minus_one(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c.clone() } else { -c })
            .sum()
    }

    /// Splits `p = unit · q` with `q(0) ≠ 0` and `q` having positive leading
    /// coefficient.
    pub fn normalize(&self) -> Result<(IntPoly, Unit), LaurentError> {
        let low = self.min_exponent().ok_or(LaurentError::ZeroPolynomial)?;
        let high = self.max_exponent().expect("nonzero polynomial");
        let sign: i8 = if self.terms[&high].is_negative() { -1 } else { 1 };
        let coeffs = (low..=high)
            .map(|e| {
                let c = self.coefficient(e);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Ok((IntPoly::new(coeffs), Unit { sign, shift: low }))
    }

    /// True when `self = ±tᵏ · other` for some `k`.
    pub fn equals_up_to_unit(&self, other: &LaurentPoly) -> bool {
        match (self.normalize(), other.normalize()) {
            (Ok((a, _)), Ok((b, _))) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Representative of the unit class of `self` whose exponents are
    /// centered on zero (so a symmetric polynomial satisfies
    /// `involute(p) = p`) and whose value at `t = 1` is positive when
    /// nonzero. Returns `None` if the exponent span is odd.
    pub fn centered(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (low, high) = (self.min_exponent()?, self.max_exponent()?);
        if (low + high) % 2 != 0 {
            return None;
        }
        let shifted = self.shift(-(low + high) / 2);
        let at_one = shifted.value_at_one();
        let needs_flip = if at_one.is_zero() {
            shifted.terms[&shifted.min_exponent()?].is_negative()
        } else {
            at_one.is_negative()
        };
        Some(if needs_flip { -shifted } else { shifted })
    }
}

fn pow_rational(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `-t + 3 - t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = *e == 0 || !magnitude.is_one();
            if show_coeff {
                write!(f, "{magnitude}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Term(#[serde(with = "bigint_json")] BigInt, i64);

impl Serialize for LaurentPoly {
    /// Sparse term list `[[coefficient, exponent], ...]`, exponents increasing.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(e, c)| Term(c.clone(), *e))
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        if terms.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(D::Error::custom(
                "polynomial exponents must be strictly increasing",
            ));
        }
        if terms.iter().any(|t| t.0.is_zero()) {
            return Err(D::Error::custom("polynomial terms must be nonzero"));
        }
        Ok(LaurentPoly::from_terms(terms.into_iter().map(|t| (t.0, t.1))))
    }
}

/// The unit `sign · t^shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unit {
    pub sign: i8,
    pub shift: i64,
}

impl Unit {
    pub fn to_laurent(self) -> LaurentPoly {
        LaurentPoly::monomial(self.sign, self.shift)
    }
}

/// Dense integer polynomial, coefficients from the constant term upward.
///
/// The coefficient vector never has trailing zeros; the zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(c.clone())
        })
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        (0..k).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact quotient `self / divisor` over the integers, or `None` if the
    /// division leaves a remainder or a non-integral coefficient.
    pub fn divide_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dl = divisor.leading();
        let dd = divisor.degree();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&dl);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(quot))
    }

    /// Gcd of the coefficients, carrying the sign of the leading coefficient.
    pub fn content(&self) -> BigInt {
        let g = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    /// `t^deg · p(t⁻¹)`: the coefficient list reversed.
    pub fn reciprocal(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Same polynomial with positive leading coefficient.
    pub fn with_positive_leading(&self) -> IntPoly {
        if self.leading().is_negative() {
            IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
        } else {
            self.clone()
        }
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), i as i64)),
        )
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_laurent().fmt(f)
    }
}

/// Irreducible factorization `content · Π factorᵐ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    /// Primitive irreducible factors with positive leading coefficient,
    /// sorted by degree then coefficients, each with its multiplicity.
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.content.clone()), |acc, (f, m)| {
                acc.mul(&f.pow(*m))
            })
    }
}

/// Factors an integer polynomial into irreducibles over the integers.
///
/// Linear factors come from the rational-root test; higher-degree factors
/// from Kronecker's interpolation search, which is exponential in the degree
/// and meant for the small polynomials that arise as Alexander polynomials.
/// The zero polynomial reports content 0 and no factors.
pub fn factor(q: &IntPoly) -> Factorization {
    if q.is_zero() {
        return Factorization {
            content: BigInt::zero(),
            factors: Vec::new(),
        };
    }
    let content = q.content();
    let mut rest = IntPoly::new(q.coeffs.iter().map(|c| c / &content).collect());
    let mut found: BTreeMap<IntPoly, u32> = BTreeMap::new();

    let lead_zeros = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        found.insert(IntPoly::from_i64(&[0, 1]), lead_zeros as u32);
        rest = IntPoly::new(rest.coeffs[lead_zeros..].to_vec());
    }

    while rest.degree() > 0 {
        let g = smallest_factor(&rest).unwrap_or_else(|| rest.clone());
        while let Some(quot) = rest.divide_exact(&g) {
            *found.entry(g.clone()).or_insert(0) += 1;
            rest = quot;
        }
    }
    debug_assert!(rest.is_zero() || rest.coeffs == vec![BigInt::one()]);

    let mut factors: Vec<(IntPoly, u32)> = found.into_iter().collect();
    factors.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.0.cmp(&b.0)));
    Factorization { content, factors }
}

/// A proper factor of minimal degree of the primitive polynomial `p`
/// (which has `p(0) ≠ 0` and positive leading coefficient), or `None` when
/// `p` is irreducible. The returned factor is irreducible.
fn smallest_factor(p: &IntPoly) -> Option<IntPoly> {
    let n = p.degree();
    if n < 2 {
        return None;
    }
    if let Some(g) = linear_factor(p) {
        return Some(g);
    }
    if n == 2 || n == 3 {
        // No rational root: a quadratic or cubic is irreducible.
        return None;
    }
    (2..=n / 2).find_map(|d| kronecker_factor(p, d))
}

fn linear_factor(p: &IntPoly) -> Option<IntPoly> {
    let c0 = p.constant_term();
    let lead = p.leading();
    if c0.is_zero() {
        return Some(IntPoly::from_i64(&[0, 1]));
    }
    for b in positive_divisors(&lead) {
        for a in positive_divisors(&c0) {
            if !a.gcd(&b).is_one() {
                continue;
            }
            for a in [a.clone(), -a] {
                // Candidate root a/b, factor b·t - a.
                let g = IntPoly::new(vec![-a.clone(), b.clone()]);
                if p.eval_rational(&Rational::new(a, b.clone())).is_zero() {
                    return Some(g);
                }
            }
        }
    }
    None
}

/// Kronecker's method: any degree-`d` factor `g` satisfies `g(x) | p(x)` at
/// every integer `x`, so enumerate divisor tuples at `d + 1` sample points,
/// interpolate, and trial-divide.
fn kronecker_factor(p: &IntPoly, d: usize) -> Option<IntPoly> {
    let mut samples: Vec<(BigInt, BigInt, usize)> = (0..(4 * d as i64 + 12))
        .map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 })
        .map(BigInt::from)
        .filter_map(|x| {
            let v = p.eval(&x);
            (!v.is_zero()).then(|| {
                let count = positive_divisors(&v).len();
                (x, v, count)
            })
        })
        .collect();
    samples.sort_by_key(|s| s.2);
    samples.truncate(d + 1);
    if samples.len() < d + 1 {
        return None;
    }

    let xs: Vec<BigInt> = samples.iter().map(|s| s.0.clone()).collect();
    let choices: Vec<Vec<BigInt>> = samples
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let pos = positive_divisors(&s.1);
            if i == 0 {
                // g and -g give the same factor.
                pos
            } else {
                pos.iter().flat_map(|v| [v.clone(), -v]).collect()
            }
        })
        .collect();

    let lead = p.leading();
    let c0 = p.constant_term();
    let mut index = vec![0usize; choices.len()];
    loop {
        let ys: Vec<BigInt> = index.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
        // The top divided difference is the leading coefficient of g.
        if let Some(dd) = divided_differences(&xs, &ys) {
            let top = &dd[d];
            if !top.is_zero() && lead.is_multiple_of(top) {
                let g = newton_to_monomial(&xs, &dd);
                if !g.constant_term().is_zero()
                    && c0.is_multiple_of(&g.constant_term())
                    && p.divide_exact(&g).is_some()
                {
                    return Some(g.with_positive_leading());
                }
            }
        }
        // Odometer increment.
        let mut pos = 0;
        loop {
            if pos == index.len() {
                return None;
            }
            index[pos] += 1;
            if index[pos] < choices[pos].len() {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}

/// Newton interpolation through `(xs[i], ys[i])`; `None` unless every
/// coefficient is an integer.
/// Newton interpolation through integer nodes. An integer polynomial has
/// integer divided differences at integer nodes, so any inexact division
/// means no integer interpolant exists.
pub(crate) fn interpolate_integer(xs: &[BigInt], ys: &[BigInt]) -> Option<IntPoly> {
    let dd = divided_differences(xs, ys)?;
    Some(newton_to_monomial(xs, &dd))
}

fn divided_differences(xs: &[BigInt], ys: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let (q, r) = (&dd[i] - &dd[i - 1]).div_rem(&(&xs[i] - &xs[i - level]));
            if !r.is_zero() {
                return None;
            }
            dd[i] = q;
        }
    }
    Some(dd)
}

// Expand Σ dd[k] Π_{j<k} (t - xs[j]) into monomial coefficients.
fn newton_to_monomial(xs: &[BigInt], dd: &[BigInt]) -> IntPoly {
    let n = dd.len();
    let mut coeffs = vec![BigInt::zero(); n];
    let mut basis = vec![BigInt::one()];
    for k in 0..n {
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += &dd[k] * b;
        }
        let mut next = vec![BigInt::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * &xs[k];
        }
        basis = next;
    }
    IntPoly::new(coeffs)
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic(m: u64) -> IntPoly {
    assert!(m > 0, "cyclotomic index must be positive");
    let mut coeffs = vec![BigInt::zero(); m as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[m as usize] = BigInt::one();
    let mut p = IntPoly::new(coeffs);
    for d in 1..m {
        if m % d == 0 {
            p = p
                .divide_exact(&cyclotomic(d))
                .expect("cyclotomic factors divide tᵐ - 1");
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoxMilnorFailure {
    /// `|Δ(-1)|` is not an odd perfect square.
    Determinant(BigInt),
    /// An irreducible factor cannot be matched with its reciprocal.
    Unpaired { factor: IntPoly, multiplicity: u32 },
    /// The integer content is not a perfect square.
    Content(BigInt),
}

impl fmt::Display for FoxMilnorFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoxMilnorFailure::Determinant(d) => {
                write!(f, "|Δ(-1)| = {d} is not an odd perfect square")
            }
            FoxMilnorFailure::Unpaired {
                factor,
                multiplicity,
            } => write!(
                f,
                "factor {factor} (multiplicity {multiplicity}) has no reciprocal partner"
            ),
            FoxMilnorFailure::Content(c) => write!(f, "content {c} is not a perfect square"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoxMilnor {
    /// `Δ = ±tᵏ · f(t) · f(t⁻¹)` with `f = witness`.
    Passes { witness: IntPoly },
    Fails(FoxMilnorFailure),
}

impl FoxMilnor {
    pub fn passes(&self) -> bool {
        matches!(self, FoxMilnor::Passes { .. })
    }
}

/// Decides whether `p = ±tᵏ f(t) f(t⁻¹)` for an integer polynomial `f`.
pub fn fox_milnor(p: &LaurentPoly) -> Result<FoxMilnor, LaurentError> {
    let at_one = p.value_at_one();
    if !at_one.abs().is_one() {
        return Err(LaurentError::InvalidAlexander(at_one));
    }
    let det = p.value_at_minus_one().abs();
    if det.is_even() || exact_sqrt(&det).is_none() {
        return Ok(FoxMilnor::Fails(FoxMilnorFailure::Determinant(det)));
    }

    let (q, _) = p.normalize()?;
    let fact = factor(&q);
    let Some(root_content) = exact_sqrt(&fact.content.abs()) else {
        return Ok(FoxMilnor::Fails(FoxMilnorFailure::Content(fact.content)));
    };

    let multiplicities: BTreeMap<IntPoly, u32> = fact.factors.iter().cloned().collect();
    let mut witness = IntPoly::constant(root_content);
    for (g, m) in &fact.factors {
        let partner = g.reciprocal().with_positive_leading();
        if partner == *g {
            if m % 2 != 0 {
                return Ok(FoxMilnor::Fails(FoxMilnorFailure::Unpaired {
                    factor: g.clone(),
                    multiplicity: *m,
                }));
            }
            witness = witness.mul(&g.pow(m / 2));
        } else if multiplicities.get(&partner) != Some(m) {
            return Ok(FoxMilnor::Fails(FoxMilnorFailure::Unpaired {
                factor: g.clone(),
                multiplicity: *m,
            }));
        } else if *g < partner {
            witness = witness.mul(&g.pow(*m));
        }
    }

    let f = witness.to_laurent();
    debug_assert!((&f * &f.involute()).equals_up_to_unit(p));
    Ok(FoxMilnor::Passes { witness })
}
