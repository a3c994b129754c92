//! Piecewise-linear functions with exact rational breakpoints, used for
//! Upsilon invariants `Υ_K(s)` on `[0, 2]`, and the Upsilon-derived bounds:
//! slice genus, non-orientable genus, cable envelopes, and the constraints
//! from genus-one non-orientable cobordisms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ceil_rat, floor_rat, int, rat, Exact, JsonRational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlError {
    #[error("s = {s} lies outside the domain [0, {end}]")]
    Domain { s: String, end: String },
    #[error("invalid breakpoints: {0}")]
    Breakpoints(String),
    #[error("cable parameters p = {p}, q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("cable parameter p must be positive, got {0}")]
    NonPositiveP(i64),
    #[error("q must be odd, got {0}")]
    EvenQ(i64),
    #[error("first Betti number must be at least 1")]
    ZeroBetti,
}

/// Piecewise-linear function on `[0, end]` with `f(0) = 0`, given by its
/// breakpoints and interpolated linearly between them.
///
/// Collinear interior breakpoints are removed on construction, so two
/// functions are equal iff their breakpoint lists are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPl", into = "RawPl")]
pub struct PLFunction {
    breakpoints: Vec<(Rational, Rational)>,
}

#[derive(Serialize, Deserialize)]
struct RawPl {
    breakpoints: Vec<(JsonRational, JsonRational)>,
}

impl TryFrom<RawPl> for PLFunction {
    type Error = PlError;
    fn try_from(raw: RawPl) -> Result<Self, PlError> {
        PLFunction::new(raw.breakpoints.into_iter().map(|(s, v)| (s.0, v.0)).collect())
    }
}

impl From<PLFunction> for RawPl {
    fn from(f: PLFunction) -> Self {
        RawPl {
            breakpoints: f
                .breakpoints
                .into_iter()
                .map(|(s, v)| (JsonRational(s), JsonRational(v)))
                .collect(),
        }
    }
}

impl PLFunction {
    pub fn new(breakpoints: Vec<(Rational, Rational)>) -> Result<Self, PlError> {
        let Some((s0, v0)) = breakpoints.first() else {
            return Err(PlError::Breakpoints("no breakpoints".into()));
        };
        if !s0.is_zero() || !v0.is_zero() {
            return Err(PlError::Breakpoints(
                "the first breakpoint must be (0, 0)".into(),
            ));
        }
        if breakpoints.len() < 2 {
            return Err(PlError::Breakpoints("domain must have positive length".into()));
        }
        if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(PlError::Breakpoints(
                "breakpoint positions must be strictly increasing".into(),
            ));
        }
        Ok(PLFunction {
            breakpoints: merge_collinear(breakpoints),
        })
    }

    /// Convenience constructor from `(s_num, s_den, v_num, v_den)` tuples.
    pub fn from_fractions(points: &[(i64, i64, i64, i64)]) -> Result<Self, PlError> {
        Self::new(
            points
                .iter()
                .map(|&(sn, sd, vn, vd)| (rat(sn, sd), rat(vn, vd)))
                .collect(),
        )
    }

    /// Convenience constructor from integer breakpoints.
    pub fn from_ints(points: &[(i64, i64)]) -> Result<Self, PlError> {
        Self::new(points.iter().map(|&(s, v)| (int(s), int(v))).collect())
    }

    /// The zero function on `[0, end]`.
    pub fn zero_on(end: Rational) -> Self {
        PLFunction {
            breakpoints: vec![(Rational::zero(), Rational::zero()), (end, Rational::zero())],
        }
    }

    /// The zero Upsilon function on `[0, 2]`.
    pub fn zero() -> Self {
        Self::zero_on(int(2))
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn domain_end(&self) -> &Rational {
        &self.breakpoints.last().expect("nonempty").0
    }

    /// True for functions on exactly `[0, 2]`, the domain of Upsilon.
    pub fn is_upsilon(&self) -> bool {
        *self.domain_end() == int(2)
    }

    pub fn eval(&self, s: &Rational) -> Result<Rational, PlError> {
        let end = self.domain_end();
        if s.is_negative() || s > end {
            return Err(PlError::Domain {
                s: Exact(s).to_string(),
                end: Exact(end).to_string(),
            });
        }
        let idx = self.breakpoints.partition_point(|(x, _)| x < s);
        let (x1, y1) = &self.breakpoints[idx];
        if x1 == s {
            return Ok(y1.clone());
        }
        let (x0, y0) = &self.breakpoints[idx - 1];
        Ok(y0 + (y1 - y0) * (s - x0) / (x1 - x0))
    }

    /// `s ↦ f(p·s)` on `[0, end/p]`.
    pub fn compose_scale(&self, p: &Rational) -> PLFunction {
        assert!(p.is_positive(), "scale factor must be positive");
        PLFunction {
            breakpoints: self
                .breakpoints
                .iter()
                .map(|(s, v)| (s / p, v.clone()))
                .collect(),
        }
    }

    /// `s ↦ f(s) + slope·s`.
    pub fn add_linear(&self, slope: &Rational) -> PLFunction {
        PLFunction {
            breakpoints: merge_collinear(
                self.breakpoints
                    .iter()
                    .map(|(s, v)| (s.clone(), v + slope * s))
                    .collect(),
            ),
        }
    }
}

fn merge_collinear(points: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
    for p in points {
        if out.len() >= 2 {
            let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
            let slope_ab = (&b.1 - &a.1) / (&b.0 - &a.0);
            let slope_bp = (&p.1 - &b.1) / (&p.0 - &b.0);
            if slope_ab == slope_bp {
                out.pop();
            }
        }
        out.push(p);
    }
    out
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, v)) in self.breakpoints.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({}, {})", Exact(s), Exact(v))?;
        }
        Ok(())
    }
}

/// `υ(K) = Υ_K(1)`.
pub fn upsilon_little(f: &PLFunction) -> Result<Rational, PlError> {
    f.eval(&int(1))
}

/// Slice-genus lower bound `⌈max_{0<s≤1} |Υ(s)|/s⌉` from
/// `|Υ_K(s)| ≤ s·g₄(K)`.
///
/// On each linear piece `|Υ(s)|/s` is monotone, so the maximum is attained
/// at a breakpoint in `(0, 1]` or at `s = 1`.
pub fn g4_lower_bound(f: &PLFunction) -> u64 {
    let one = int(1);
    let mut candidates: Vec<Rational> = f
        .breakpoints()
        .iter()
        .map(|(s, _)| s.clone())
        .filter(|s| s.is_positive() && *s <= one)
        .collect();
    if f.domain_end() >= &one {
        candidates.push(one);
    }
    candidates
        .iter()
        .map(|s| f.eval(s).expect("candidate within domain").abs() / s)
        .max()
        .map(|r| ceil_rat(&r).to_u64().expect("bound fits in u64"))
        .unwrap_or(0)
}

/// Sign convention for the non-orientable bound `|υ ± σ/2| ≤ γ₄`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OssConvention {
    /// `|υ + σ/2|`.
    Plus,
    /// `|υ − σ/2|`, consistent with `σ(T₂,₃) = −2`, `υ(T₂,₃) = −1`.
    #[default]
    Minus,
}

/// Lower bound on `γ₄` from `υ` and `σ`.
pub fn oss_gamma4_lower_bound(upsilon: &Rational, sigma: i64, convention: OssConvention) -> Rational {
    let half_sigma = rat(sigma, 2);
    match convention {
        OssConvention::Plus => (upsilon + half_sigma).abs(),
        OssConvention::Minus => (upsilon - half_sigma).abs(),
    }
}

/// Envelope functions bounding `Υ_{K_{p,q}}` on `[0, 2/p]`:
/// `Υ_K(ps) − (p−1)(q+1)s/2 ≤ Υ_{K_{p,q}}(s) ≤ Υ_K(ps) − (p−1)(q−1)s/2`.
pub fn cable_sandwich(f: &PLFunction, p: i64, q: i64) -> Result<(PLFunction, PLFunction), PlError> {
    if p <= 0 {
        return Err(PlError::NonPositiveP(p));
    }
    if p.gcd(&q) != 1 {
        return Err(PlError::NotCoprime { p, q });
    }
    let scaled = f.compose_scale(&int(p));
    let lower = scaled.add_linear(&rat(-(p - 1) * (q + 1), 2));
    let upper = scaled.add_linear(&rat(-(p - 1) * (q - 1), 2));
    Ok((lower, upper))
}

/// Interval `[−q/2 − 1, −q/2 + 1]` allowed for `υ(K_{2,q})`.
pub fn two_q_interval(q: i64) -> Result<(Rational, Rational), PlError> {
    if q % 2 == 0 {
        return Err(PlError::EvenQ(q));
    }
    let centre = rat(-q, 2);
    Ok((&centre - int(1), centre + int(1)))
}

/// Checks `|υ(K_{2,q}) + q/2| ≤ 1`.
pub fn two_q_corollary_check(upsilon_cable: &Rational, q: i64) -> Result<bool, PlError> {
    let (lo, hi) = two_q_interval(q)?;
    Ok(&lo <= upsilon_cable && upsilon_cable <= &hi)
}

/// Data of a non-orientable cobordism `F` from `K₀` to `K₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismCheck {
    #[serde(with = "crate::exact::rational_json")]
    pub upsilon_start: Rational,
    #[serde(with = "crate::exact::rational_json")]
    pub upsilon_end: Rational,
    pub euler: i64,
    pub betti: u32,
}

impl CobordismCheck {
    pub fn new(
        upsilon_start: Rational,
        upsilon_end: Rational,
        euler: i64,
        betti: u32,
    ) -> Result<Self, PlError> {
        if betti == 0 {
            return Err(PlError::ZeroBetti);
        }
        Ok(CobordismCheck {
            upsilon_start,
            upsilon_end,
            euler,
            betti,
        })
    }
}

/// `|υ(K₀) − υ(K₁) + e(F)/4| ≤ b₁(F)/2`.
pub fn cobordism_inequality(c: &CobordismCheck) -> bool {
    let lhs = (&c.upsilon_start - &c.upsilon_end + rat(c.euler, 4)).abs();
    lhs <= rat(c.betti as i64, 2)
}

/// Integers `e` with `|υ + q/2 + e/4| ≤ 3/2`, as `[lo, hi]`.
pub fn euler_number_range(upsilon_wh: &Rational, q: i64) -> Result<(i64, i64), PlError> {
    if q % 2 == 0 {
        return Err(PlError::EvenQ(q));
    }
    let offset = upsilon_wh + rat(q, 2);
    let four = int(4);
    let lo = ceil_rat(&((rat(-3, 2) - &offset) * &four));
    let hi = floor_rat(&((rat(3, 2) - &offset) * &four));
    let to_i64 = |b: BigInt| b.to_i64().expect("Euler number bound fits in i64");
    Ok((to_i64(lo), to_i64(hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dip() -> PLFunction {
        PLFunction::from_ints(&[(0, 0), (1, -1), (2, 0)]).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(PLFunction::from_ints(&[(0, 1), (2, 0)]).is_err());
        assert!(PLFunction::from_ints(&[(0, 0)]).is_err());
        assert!(PLFunction::from_ints(&[(0, 0), (1, 0), (1, 1)]).is_err());
        let merged = PLFunction::from_ints(&[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(merged.breakpoints().len(), 2);
        let json = serde_json::to_string(&dip()).unwrap();
        assert_eq!(json, r#"{"breakpoints":[[0,0],[1,-1],[2,0]]}"#);
        let back: PLFunction =
            serde_json::from_str(r#"{"breakpoints":[[0,0],[[1,2],[-1,2]],[2,-2]]}"#).unwrap();
        assert_eq!(back, PLFunction::from_ints(&[(0, 0), (2, -2)]).unwrap());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(PLFunction::zero().eval(&int(1)).unwrap(), int(0));
        assert_eq!(dip().eval(&rat(1, 2)).unwrap(), rat(-1, 2));
        assert_eq!(dip().eval(&int(1)).unwrap(), int(-1));
        assert_eq!(dip().eval(&int(2)).unwrap(), int(0));
        assert!(matches!(dip().eval(&rat(5, 2)), Err(PlError::Domain { .. })));
        assert!(matches!(dip().eval(&rat(-1, 3)), Err(PlError::Domain { .. })));
    }

    #[test]
    fn upsilon_little_examples() {
        assert_eq!(upsilon_little(&PLFunction::zero()).unwrap(), int(0));
        assert_eq!(upsilon_little(&dip()).unwrap(), int(-1));
        let bump = PLFunction::from_ints(&[(0, 0), (1, 1), (2, 0)]).unwrap();
        assert_eq!(upsilon_little(&bump).unwrap(), int(1));
    }

    #[test]
    fn g4_lower_bound_examples() {
        assert_eq!(g4_lower_bound(&PLFunction::zero()), 0);
        assert_eq!(g4_lower_bound(&dip()), 1);
        let steep = PLFunction::from_fractions(&[(0, 1, 0, 1), (1, 2, -1, 1), (2, 1, 0, 1)]).unwrap();
        assert_eq!(g4_lower_bound(&steep), 2);
        // |Υ(1)| = 1/2 on a shallow dip still forces g₄ ≥ 1.
        let shallow = PLFunction::from_fractions(&[(0, 1, 0, 1), (1, 1, -1, 2), (2, 1, 0, 1)]).unwrap();
        assert_eq!(g4_lower_bound(&shallow), 1);
    }

    #[test]
    fn oss_examples() {
        assert_eq!(oss_gamma4_lower_bound(&int(0), 0, OssConvention::Minus), int(0));
        assert_eq!(oss_gamma4_lower_bound(&int(-1), -2, OssConvention::Minus), int(0));
        assert_eq!(oss_gamma4_lower_bound(&int(-1), -2, OssConvention::Plus), int(2));
        assert_eq!(oss_gamma4_lower_bound(&int(-1), 0, OssConvention::Minus), int(1));
        assert_eq!(oss_gamma4_lower_bound(&int(-1), 0, OssConvention::Plus), int(1));
    }

    #[test]
    fn cable_sandwich_examples() {
        let (lo, hi) = cable_sandwich(&dip(), 1, 7).unwrap();
        assert_eq!((lo, hi), (dip(), dip()));

        let (lo, hi) = cable_sandwich(&PLFunction::zero(), 2, 1).unwrap();
        assert_eq!(lo, PLFunction::from_ints(&[(0, 0), (1, -1)]).unwrap());
        assert_eq!(hi, PLFunction::zero_on(int(1)));

        let (lo, hi) = cable_sandwich(&PLFunction::zero(), 2, 3).unwrap();
        assert_eq!(lo, PLFunction::from_ints(&[(0, 0), (1, -2)]).unwrap());
        assert_eq!(hi, PLFunction::from_ints(&[(0, 0), (1, -1)]).unwrap());

        assert_eq!(
            cable_sandwich(&dip(), 2, 4),
            Err(PlError::NotCoprime { p: 2, q: 4 })
        );
        assert_eq!(cable_sandwich(&dip(), 0, 1), Err(PlError::NonPositiveP(0)));
    }

    #[test]
    fn two_q_examples() {
        assert!(two_q_corollary_check(&rat(-1, 2), 1).unwrap());
        assert!(!two_q_corollary_check(&int(1), 1).unwrap());
        assert!(two_q_corollary_check(&rat(-1, 2), -1).unwrap());
        assert_eq!(two_q_corollary_check(&int(0), 2), Err(PlError::EvenQ(2)));
        assert_eq!(two_q_interval(1).unwrap(), (rat(-3, 2), rat(1, 2)));
    }

    #[test]
    fn cobordism_examples() {
        let c = |a: Rational, b: Rational, e| CobordismCheck::new(a, b, e, 1).unwrap();
        assert!(cobordism_inequality(&c(int(0), int(0), 0)));
        assert!(cobordism_inequality(&c(int(0), rat(-1, 2), -2)));
        assert!(!cobordism_inequality(&c(int(1), int(0), 0)));
        assert_eq!(
            CobordismCheck::new(int(0), int(0), 0, 0),
            Err(PlError::ZeroBetti)
        );
    }

    #[test]
    fn euler_range_examples() {
        assert_eq!(euler_number_range(&int(0), 1).unwrap(), (-8, 4));
        assert_eq!(euler_number_range(&int(-1), 1).unwrap(), (-4, 8));
        assert_eq!(euler_number_range(&int(1), 1).unwrap(), (-12, 0));
        assert_eq!(euler_number_range(&int(0), 4), Err(PlError::EvenQ(4)));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    fn upsilon_like() -> impl Strategy<Value = PLFunction> {
        // Interior breakpoints at sorted distinct positions in (0, 2).
        prop::collection::btree_set(1i64..48, 0..5)
            .prop_flat_map(|xs| {
                let n = xs.len() + 1;
                (Just(xs), prop::collection::vec(-8i64..=8, n))
            })
            .prop_map(|(xs, vals)| {
                let mut pts = vec![(int(0), int(0))];
                for (x, v) in xs.iter().zip(&vals) {
                    pts.push((rat(*x, 24), rat(*v, 4)));
                }
                pts.push((int(2), rat(*vals.last().unwrap(), 4)));
                PLFunction::new(pts).unwrap()
            })
    }

    fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
        (1i64..=5, -9i64..=9).prop_filter("coprime", |(p, q)| p.gcd(q) == 1)
    }

    proptest! {
        #[test]
        fn sandwich_is_ordered((p, q) in coprime_pair(), f in upsilon_like(), num in 0i64..=48) {
            let (lo, hi) = cable_sandwich(&f, p, q).unwrap();
            prop_assert_eq!(lo.domain_end(), &rat(2, p));
            let s = rat(num, 24) / int(p);
            let (l, h) = (lo.eval(&s).unwrap(), hi.eval(&s).unwrap());
            prop_assert!(l <= h);
            prop_assert_eq!(lo == hi, p == 1);
        }

        #[test]
        fn euler_range_has_width_twelve(u4 in -12i64..=12, q in (-10i64..=10).prop_map(|k| 2 * k + 1)) {
            let (lo, hi) = euler_number_range(&rat(u4, 4), q).unwrap();
            prop_assert_eq!(hi - lo, 12);
        }

        #[test]
        fn cobordism_composes_with_cable_corollary(
            u0 in small_rat(), u1 in small_rat(), e in -20i64..=20,
            q in (-10i64..=10).prop_map(|k| 2 * k + 1),
        ) {
            let c = CobordismCheck::new(u0.clone(), u1.clone(), e, 1).unwrap();
            if cobordism_inequality(&c) && two_q_corollary_check(&u1, q).unwrap() {
                let combined = (&u0 + rat(q, 2) + rat(e, 4)).abs();
                prop_assert!(combined <= rat(3, 2));
                let (lo, hi) = euler_number_range(&u0, q).unwrap();
                prop_assert!(lo <= e && e <= hi);
            }
        }

        #[test]
        fn g4_bound_dominates_every_sample(f in upsilon_like(), num in 1i64..=24) {
            let s = rat(num, 24);
            let ratio = f.eval(&s).unwrap().abs() / &s;
            prop_assert!(ratio <= int(g4_lower_bound(&f) as i64));
        }
    }
}
