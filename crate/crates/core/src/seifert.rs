//! Invariants read off a Seifert matrix: signature, Arf invariant, Alexander
//! polynomial, determinant, Levine–Tristram signatures and the genus bounds
//! that follow from them.
//!
//! Sign convention: the right-handed trefoil has matrix `[[-1, 1], [0, -1]]`
//! and signature `-2`.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rational;
use crate::laurent::{cyclotomic, interpolate_integer, LaurentError, LaurentPoly};
use crate::obstruct::{GenusBounds, Interval};

/// Largest dimension for which the Arf invariant is computed by summing
/// over all `2ⁿ` vectors.
pub const ARF_BRUTE_FORCE_LIMIT: usize = 24;

/// Eigenvalues closer to zero than this are treated as numerically singular.
pub const EIGENVALUE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("declared dimension {declared} does not match {actual} rows")]
    DimensionMismatch { declared: usize, actual: usize },
    #[error("Seifert matrix dimension {0} is odd")]
    OddDimension(usize),
    #[error("V - Vᵀ has determinant {0}, expected ±1")]
    NotUnimodular(BigInt),
    #[error("Arf invariant by enumeration is limited to n ≤ {limit}, got n = {n}")]
    ArfBudgetExceeded { n: usize, limit: usize },
    #[error("Levine–Tristram signature is undefined at ω = 1")]
    TrivialRootOfUnity,
    #[error("angle denominator must be positive")]
    InvalidAngle,
    #[error("Hermitian form has an eigenvalue within {EIGENVALUE_TOLERANCE:e} of zero")]
    NumericallySingular,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Square integer matrix `V` with `V - Vᵀ` unimodular.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl TryFrom<RawMatrix> for SeifertMatrix {
    type Error = SeifertError;

    fn try_from(raw: RawMatrix) -> Result<Self, SeifertError> {
        if raw.n != raw.entries.len() {
            return Err(SeifertError::DimensionMismatch {
                declared: raw.n,
                actual: raw.entries.len(),
            });
        }
        SeifertMatrix::new(raw.entries)
    }
}

impl From<SeifertMatrix> for RawMatrix {
    fn from(m: SeifertMatrix) -> Self {
        RawMatrix {
            n: m.dim(),
            entries: m.entries,
        }
    }
}

impl SeifertMatrix {
    /// Validates squareness, even dimension and unimodularity of `V - Vᵀ`.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, SeifertError> {
        let n = entries.len();
        if let Some((row, r)) = entries.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(SeifertError::NotSquare {
                row,
                len: r.len(),
                n,
            });
        }
        if n % 2 != 0 {
            return Err(SeifertError::OddDimension(n));
        }
        let skew = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(entries[i][j]) - entries[j][i])
                    .collect()
            })
            .collect();
        let det = int_determinant(skew);
        if !det.abs().is_one() {
            return Err(SeifertError::NotUnimodular(det));
        }
        Ok(SeifertMatrix { entries })
    }

    /// The 0×0 matrix of the unknot.
    pub fn empty() -> Self {
        SeifertMatrix {
            entries: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Genus of the Seifert surface this matrix comes from.
    pub fn genus(&self) -> usize {
        self.dim() / 2
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// `Pᵀ V P`, the Seifert matrix in another basis. `P` must be square of
    /// the same dimension; unimodularity of `P` keeps the result valid.
    pub fn change_basis(&self, p: &[Vec<i64>]) -> Result<SeifertMatrix, SeifertError> {
        let n = self.dim();
        let v = &self.entries;
        let mut out = vec![vec![0i64; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = 0i64;
                for k in 0..n {
                    for l in 0..n {
                        acc += p[k][i] * v[k][l] * p[l][j];
                    }
                }
                *cell = acc;
            }
        }
        SeifertMatrix::new(out)
    }

    fn symmetrized(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[i][j] + self.entries[j][i]).collect())
            .collect()
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Fraction-free (Bareiss) determinant.
pub(crate) fn int_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Counts of positive, negative and zero squares of a rational symmetric
/// form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia of a symmetric integer matrix by congruence diagonalization over
/// the rationals. A zero diagonal with a nonzero off-diagonal entry splits
/// off a hyperbolic plane, which contributes one square of each sign.
pub fn inertia(sym: &[Vec<i64>]) -> Inertia {
    let mut a: Vec<Vec<Rational>> = sym
        .iter()
        .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        nullity: 0,
    };
    while !a.is_empty() {
        let k = a.len();
        if let Some(i) = (0..k).find(|&i| !a[i][i].is_zero()) {
            let pivot = a[i][i].clone();
            if pivot.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            let keep: Vec<usize> = (0..k).filter(|&r| r != i).collect();
            a = keep
                .iter()
                .map(|&r| {
                    keep.iter()
                        .map(|&c| &a[r][c] - &a[r][i] * &a[i][c] / &pivot)
                        .collect()
                })
                .collect();
        } else if let Some((i, j)) = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        {
            let x = a[i][j].clone();
            out.positive += 1;
            out.negative += 1;
            let keep: Vec<usize> = (0..k).filter(|&r| r != i && r != j).collect();
            a = keep
                .iter()
                .map(|&r| {
                    keep.iter()
                        .map(|&c| {
                            &a[r][c] - (&a[r][i] * &a[j][c] + &a[r][j] * &a[i][c]) / &x
                        })
                        .collect()
                })
                .collect();
        } else {
            out.nullity += k;
            break;
        }
    }
    out
}

/// Signature of `V + Vᵀ`.
pub fn signature(v: &SeifertMatrix) -> i64 {
    inertia(&v.symmetrized()).signature()
}

/// `det(V - tVᵀ)`, shifted to be symmetric under `t ↦ t⁻¹` and signed so
/// that `Δ(1) = 1`.
pub fn alexander(v: &SeifertMatrix) -> LaurentPoly {
    let n = v.dim();
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = (0..=n as i64)
        .map(|t| {
            let m = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| BigInt::from(v.entry(i, j)) - BigInt::from(t * v.entry(j, i)))
                        .collect()
                })
                .collect();
            int_determinant(m)
        })
        .collect();
    let poly = interpolate_integer(&xs, &ys).expect("determinant of an integer matrix");
    poly.to_laurent()
        .centered()
        .expect("Alexander polynomial of a Seifert matrix has even span")
}

/// `|det(V + Vᵀ)|`, which equals `|Δ(-1)|`.
pub fn determinant(v: &SeifertMatrix) -> BigInt {
    let sym = v
        .symmetrized()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    int_determinant(sym).abs()
}

/// Arf invariant of `q(x) = x V xᵀ mod 2`, from the sign of
/// `Σ_x (-1)^{q(x)}` over all of `(Z/2)ⁿ`.
pub fn arf(v: &SeifertMatrix) -> Result<u8, SeifertError> {
    let n = v.dim();
    if n > ARF_BRUTE_FORCE_LIMIT {
        return Err(SeifertError::ArfBudgetExceeded {
            n,
            limit: ARF_BRUTE_FORCE_LIMIT,
        });
    }
    // Row i of the symmetrized form mod 2 as a bitmask; the diagonal is even.
    let rows: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && (v.entry(i, j) + v.entry(j, i)).rem_euclid(2) == 1)
                .fold(0u32, |m, j| m | (1 << j))
        })
        .collect();
    let diag: Vec<bool> = (0..n).map(|i| v.entry(i, i).rem_euclid(2) == 1).collect();

    // Walk the Gray code; `linear` holds (B x)_i for the current x.
    let mut q = false;
    let mut linear = 0u32;
    let mut sum: i64 = 1;
    for step in 1u64..(1u64 << n) {
        let i = step.trailing_zeros() as usize;
        q ^= diag[i] ^ (linear >> i & 1 == 1);
        linear ^= rows[i];
        sum += if q { -1 } else { 1 };
    }
    debug_assert_eq!(sum.unsigned_abs(), 1u64 << (n / 2));
    Ok(u8::from(sum < 0))
}

/// Arf invariant from the Alexander polynomial: `0` iff `Δ(-1) ≡ ±1 (mod 8)`.
pub fn arf_murasugi(delta: &LaurentPoly) -> Result<u8, SeifertError> {
    let at_one = delta.value_at_one();
    if !at_one.abs().is_one() {
        return Err(LaurentError::InvalidAlexander(at_one).into());
    }
    let r = delta.value_at_minus_one().mod_floor(&BigInt::from(8));
    Ok(u8::from(r != BigInt::from(1) && r != BigInt::from(7)))
}

/// A point `ω = e^{2πi·num/den}` on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Angle {
    pub num: i64,
    pub den: i64,
}

impl Angle {
    pub fn new(num: i64, den: i64) -> Result<Self, SeifertError> {
        if den <= 0 {
            return Err(SeifertError::InvalidAngle);
        }
        let g = num.gcd(&den);
        Ok(Angle {
            num: (num / g).rem_euclid(den / g),
            den: den / g,
        })
    }

    /// Multiplicative order of `ω`.
    pub fn order(&self) -> u64 {
        self.den as u64
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LtSignature {
    Value(i64),
    /// `Δ(ω) = 0`: the Hermitian form is degenerate.
    Singular,
}

/// Signature of `(1 - ω)V + (1 - ω̄)Vᵀ`.
///
/// Singularity is decided exactly (the form is degenerate iff the
/// cyclotomic polynomial of the order of `ω` divides `Δ`). At `ω = -1` the
/// exact signature is returned; elsewhere eigenvalues are counted in double
/// precision after non-singularity is certified.
pub fn levine_tristram(v: &SeifertMatrix, omega: Angle) -> Result<LtSignature, SeifertError> {
    let omega = Angle::new(omega.num, omega.den)?;
    if omega.num == 0 {
        return Err(SeifertError::TrivialRootOfUnity);
    }
    if omega.den == 2 {
        return Ok(LtSignature::Value(signature(v)));
    }
    let (delta, _) = alexander(v).normalize()?;
    if delta.divide_exact(&cyclotomic(omega.order())).is_some() {
        return Ok(LtSignature::Singular);
    }
    let n = v.dim();
    if n == 0 {
        return Ok(LtSignature::Value(0));
    }
    let theta = std::f64::consts::TAU * omega.num as f64 / omega.den as f64;
    let (c, s) = (theta.cos(), theta.sin());
    // H = A + iB with A = (1 - cos θ)(V + Vᵀ), B = sin θ (Vᵀ - V); the real
    // form [[A, -B], [B, A]] has every eigenvalue of H twice.
    let real = DMatrix::from_fn(2 * n, 2 * n, |r, col| {
        let (i, j) = (r % n, col % n);
        let a = (1.0 - c) * (v.entry(i, j) + v.entry(j, i)) as f64;
        let b = s * (v.entry(j, i) - v.entry(i, j)) as f64;
        match (r < n, col < n) {
            (true, true) | (false, false) => a,
            (true, false) => -b,
            (false, true) => b,
        }
    });
    let eigen = real.symmetric_eigenvalues();
    if eigen.iter().any(|e| e.abs() < EIGENVALUE_TOLERANCE) {
        return Err(SeifertError::NumericallySingular);
    }
    let pos = eigen.iter().filter(|e| **e > 0.0).count() as i64;
    let neg = eigen.iter().filter(|e| **e < 0.0).count() as i64;
    Ok(LtSignature::Value((pos - neg) / 2))
}

/// Genus bounds from one Seifert matrix: `|σ|/2 ≤ g₄ ≤ g₃ ≤ n/2` and
/// `γ₄ ≤ 2·(n/2) + 1`.
pub fn genus_bounds_from_matrix(v: &SeifertMatrix) -> GenusBounds {
    let genus = v.genus() as u64;
    let sigma_bound = signature(v).unsigned_abs() / 2;
    GenusBounds {
        g4: Interval::new(sigma_bound, Some(genus)),
        gamma4: Interval::new(1, Some(2 * genus + 1)),
        g3: Some(Interval::new(sigma_bound, Some(genus))),
        gamma3: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SeifertMatrix {
        SeifertMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn trefoil() -> SeifertMatrix {
        m(&[&[-1, 1], &[0, -1]])
    }

    fn fig8() -> SeifertMatrix {
        m(&[&[1, 1], &[0, -1]])
    }

    #[test]
    fn validation() {
        assert!(matches!(
            SeifertMatrix::new(vec![vec![1, 2], vec![3]]),
            Err(SeifertError::NotSquare { .. })
        ));
        assert!(matches!(
            SeifertMatrix::new(vec![vec![1]]),
            Err(SeifertError::OddDimension(1))
        ));
        assert!(matches!(
            SeifertMatrix::new(vec![vec![1, 2], vec![0, 1]]),
            Err(SeifertError::NotUnimodular(_))
        ));
        let parsed: SeifertMatrix =
            serde_json::from_str(r#"{"n": 2, "entries": [[-1,1],[0,-1]]}"#).unwrap();
        assert_eq!(parsed, trefoil());
        assert!(serde_json::from_str::<SeifertMatrix>(r#"{"n": 4, "entries": [[-1,1],[0,-1]]}"#)
            .is_err());
        assert_eq!(
            serde_json::to_string(&trefoil()).unwrap(),
            r#"{"n":2,"entries":[[-1,1],[0,-1]]}"#
        );
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&trefoil()), -2);
        assert_eq!(signature(&fig8()), 0);
        assert_eq!(signature(&SeifertMatrix::empty()), 0);
    }

    #[test]
    fn hyperbolic_split() {
        let inert = inertia(&[vec![0, 3, 1], vec![3, 0, 2], vec![1, 2, 0]]);
        // det = 12 > 0 with zero trace: one positive, two negative.
        assert_eq!(
            inert,
            Inertia {
                positive: 1,
                negative: 2,
                nullity: 0
            }
        );
        let inert = inertia(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(inert.nullity, 2);
    }

    #[test]
    fn alexander_examples() {
        let fig8_delta = LaurentPoly::from_terms([(-1, 1), (3, 0), (-1, -1)]);
        assert_eq!(alexander(&fig8()), fig8_delta);
        assert_eq!(alexander(&SeifertMatrix::empty()), LaurentPoly::one());
        for b in [-3i64, 0, 2, 5] {
            let v = m(&[&[-1, 1], &[0, b]]);
            let expected = LaurentPoly::from_terms([(-b, 1), (2 * b + 1, 0), (-b, -1)]);
            assert_eq!(alexander(&v), expected, "b = {b}");
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&fig8()), BigInt::from(5));
        assert_eq!(determinant(&trefoil()), BigInt::from(3));
        assert_eq!(determinant(&SeifertMatrix::empty()), BigInt::from(1));
    }

    #[test]
    fn arf_examples() {
        assert_eq!(arf(&fig8()).unwrap(), 1);
        assert_eq!(arf(&SeifertMatrix::empty()).unwrap(), 0);
        for b in -6..=6 {
            let v = m(&[&[-1, 1], &[0, b]]);
            assert_eq!(arf(&v).unwrap(), (b.rem_euclid(2)) as u8, "b = {b}");
        }
    }

    #[test]
    fn arf_budget() {
        let n = 26;
        let mut rows = vec![vec![0i64; n]; n];
        for k in 0..n / 2 {
            rows[2 * k][2 * k + 1] = 1;
        }
        let v = SeifertMatrix::new(rows).unwrap();
        assert!(matches!(
            arf(&v),
            Err(SeifertError::ArfBudgetExceeded { n: 26, .. })
        ));
    }

    #[test]
    fn murasugi_examples() {
        let fig8_delta = LaurentPoly::from_terms([(-1, 1), (3, 0), (-1, -1)]);
        assert_eq!(arf_murasugi(&fig8_delta).unwrap(), 1);
        assert_eq!(arf_murasugi(&LaurentPoly::one()).unwrap(), 0);
        let b3 = LaurentPoly::from_terms([(-3, 1), (7, 0), (-3, -1)]);
        assert_eq!(arf_murasugi(&b3).unwrap(), 1);
        assert!(arf_murasugi(&LaurentPoly::from_terms([(3, 0)])).is_err());
    }

    /// Independent oracle: `det H` for the 2×2 Hermitian form evaluated in
    /// complex floating point.
    fn hermitian_det_2x2(v: &SeifertMatrix, angle: Angle) -> f64 {
        let th = std::f64::consts::TAU * angle.num as f64 / angle.den as f64;
        let (c, s) = (th.cos(), th.sin());
        let h = |i: usize, j: usize| {
            let re = (1.0 - c) * (v.entry(i, j) + v.entry(j, i)) as f64;
            let im = s * (v.entry(j, i) - v.entry(i, j)) as f64;
            (re, im)
        };
        let (a, _) = h(0, 0);
        let (d, _) = h(1, 1);
        let (br, bi) = h(0, 1);
        a * d - (br * br + bi * bi)
    }

    #[test]
    fn levine_tristram_examples() {
        for v in [trefoil(), fig8(), SeifertMatrix::empty()] {
            assert_eq!(
                levine_tristram(&v, Angle::new(1, 2).unwrap()).unwrap(),
                LtSignature::Value(signature(&v))
            );
        }
        // Δ(3₁) = t - 1 + t⁻¹ vanishes at primitive sixth roots of unity.
        let sixth = Angle::new(1, 6).unwrap();
        assert!(hermitian_det_2x2(&trefoil(), sixth).abs() < 1e-12);
        assert_eq!(levine_tristram(&trefoil(), sixth).unwrap(), LtSignature::Singular);
        assert_eq!(
            levine_tristram(&trefoil(), Angle::new(5, 6).unwrap()).unwrap(),
            LtSignature::Singular
        );
        // At a primitive cube root the form is negative definite.
        let third = Angle::new(1, 3).unwrap();
        assert!(hermitian_det_2x2(&trefoil(), third) > 0.0);
        assert_eq!(levine_tristram(&trefoil(), third).unwrap(), LtSignature::Value(-2));
        // 4₁ at ω = i: det H = -6 < 0, one eigenvalue of each sign.
        let quarter = Angle::new(1, 4).unwrap();
        assert!((hermitian_det_2x2(&fig8(), quarter) + 6.0).abs() < 1e-9);
        assert_eq!(levine_tristram(&fig8(), quarter).unwrap(), LtSignature::Value(0));
        assert_eq!(
            levine_tristram(&fig8(), Angle::new(0, 5).unwrap()),
            Err(SeifertError::TrivialRootOfUnity)
        );
        assert_eq!(
            levine_tristram(&fig8(), Angle::new(3, 3).unwrap()),
            Err(SeifertError::TrivialRootOfUnity)
        );
    }

    #[test]
    fn genus_bound_examples() {
        let b = genus_bounds_from_matrix(&trefoil());
        assert_eq!(b.g4, Interval::new(1, Some(1)));
        let b = genus_bounds_from_matrix(&SeifertMatrix::empty());
        assert_eq!(b.g4, Interval::new(0, Some(0)));
        assert_eq!(b.gamma4, Interval::new(1, Some(1)));
        let b = genus_bounds_from_matrix(&fig8());
        assert_eq!(b.g4, Interval::new(0, Some(1)));
        assert_eq!(b.gamma4, Interval::new(1, Some(3)));
    }
}
