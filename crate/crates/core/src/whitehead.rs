//! Twisted Whitehead doubles `Wh±_t(K)`: Seifert matrices, classical
//! invariants, the Floer-theoretic case formulas and the γ₄ bounds.
//!
//! Everything is expressed in the effective twist `b = t + λ`, where `λ` is
//! the gluing framing relative to the Seifert framing of the companion.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{int, Rational};
use crate::knotdb::{KnotRecord, Source};
use crate::laurent::LaurentPoly;
use crate::obstruct::{self, BoundFact, GenusBounds, GenusKind, Interval};
use crate::plfunc::PLFunction;
use crate::seifert::SeifertMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WhiteheadError {
    #[error("{0} is in the half-twist regime; σ, Arf and γ₄ are not available")]
    HalfTwist(WhiteheadParams),
    #[error("companion invariant {0} is required but missing")]
    MissingInvariant(&'static str),
    #[error("invalid companion data: {0}")]
    InvalidCompanion(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Clasp {
    Positive,
    Negative,
}

impl Clasp {
    pub fn symbol(self) -> char {
        match self {
            Clasp::Positive => '+',
            Clasp::Negative => '-',
        }
    }
}

impl FromStr for Clasp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+" | "positive" | "pos" => Ok(Clasp::Positive),
            "-" | "negative" | "neg" => Ok(Clasp::Negative),
            _ => Err(format!("clasp must be `+` or `-`, got `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WhiteheadParams {
    pub clasp: Clasp,
    pub twist: i64,
    #[serde(default)]
    pub framing: i64,
    pub companion: String,
}

impl WhiteheadParams {
    pub fn new(clasp: Clasp, twist: i64, framing: i64, companion: impl Into<String>) -> Self {
        WhiteheadParams {
            clasp,
            twist,
            framing,
            companion: companion.into(),
        }
    }

    /// `b = t + λ`.
    pub fn effective_twist(&self) -> i64 {
        self.twist + self.framing
    }

    /// Positive clasp with negative twisting, or negative clasp with
    /// positive twisting.
    pub fn is_half_twist(&self) -> bool {
        let b = self.effective_twist();
        match self.clasp {
            Clasp::Positive => b < 0,
            Clasp::Negative => b > 0,
        }
    }

    pub fn name(&self) -> String {
        let mut s = format!("Wh{}_{}", self.clasp.symbol(), self.twist);
        if self.framing != 0 {
            s.push_str(&format!("[λ={}]", self.framing));
        }
        format!("{s}({})", self.companion)
    }

    fn require_regular(&self) -> Result<(), WhiteheadError> {
        if self.is_half_twist() {
            Err(WhiteheadError::HalfTwist(self.clone()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for WhiteheadParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Concordance data of a companion knot.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompanionInvariants {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<i64>,
    /// Rasmussen's invariant; always even.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upsilon: Option<PLFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g3: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g4: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma4: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma3: Option<Interval>,
}

impl CompanionInvariants {
    pub fn is_empty(&self) -> bool {
        *self == CompanionInvariants::default()
    }

    pub fn validate(&self) -> Result<(), String> {
        if let (Some(t), Some(n)) = (self.tau, self.nu) {
            if n != t && n != t + 1 {
                return Err(format!("ν = {n} must equal τ = {t} or τ + 1"));
            }
        }
        if let Some(e) = self.epsilon {
            if !(-1..=1).contains(&e) {
                return Err(format!("ε = {e} must be -1, 0 or 1"));
            }
        }
        if let Some(s) = self.s {
            if s % 2 != 0 {
                return Err(format!("s = {s} must be even"));
            }
        }
        if let Some(u) = &self.upsilon {
            if !u.is_upsilon() {
                return Err("Υ must be defined on [0, 2]".into());
            }
        }
        for (name, iv, min_lo) in [
            ("g3", self.g3, 0),
            ("g4", self.g4, 0),
            ("gamma4", self.gamma4, 1),
            ("gamma3", self.gamma3, 1),
        ] {
            if let Some(iv) = iv {
                if iv.is_empty() || iv.lo < min_lo {
                    return Err(format!("{name} interval {iv} is invalid"));
                }
            }
        }
        Ok(())
    }
}

/// A value together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tagged<T> {
    pub value: T,
    pub source: Source,
}

impl<T> Tagged<T> {
    fn new(value: T, source: Source) -> Self {
        Tagged { value, source }
    }
}

fn clasp_source(p: &WhiteheadParams) -> Source {
    match p.clasp {
        Clasp::Positive => Source::Paper,
        Clasp::Negative => Source::Derived,
    }
}

pub fn seifert_matrix(p: &WhiteheadParams) -> Result<SeifertMatrix, WhiteheadError> {
    p.require_regular()?;
    Ok(pattern_matrix(p.clasp, p.effective_twist()))
}

/// The genus-one matrix of the clasp pattern with `b` full twists, without
/// the half-twist guard of [`seifert_matrix`].
pub fn pattern_matrix(clasp: Clasp, b: i64) -> SeifertMatrix {
    let corner = match clasp {
        Clasp::Positive => -1,
        Clasp::Negative => 1,
    };
    SeifertMatrix::new(vec![vec![corner, 1], vec![0, b]]).expect("clasp matrices are unimodular")
}

/// `−b·t + (2b+1) − b·t⁻¹` for the positive clasp. The negative clasp is the
/// same expression at `−b`, which is what its Seifert matrix produces.
pub fn alexander_formula(p: &WhiteheadParams) -> LaurentPoly {
    let b = match p.clasp {
        Clasp::Positive => p.effective_twist(),
        Clasp::Negative => -p.effective_twist(),
    };
    closed_form(b)
}

/// `−b·t + (2b+1) − b·t⁻¹`.
pub fn closed_form(b: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(-b, 1), (2 * b + 1, 0), (-b, -1)])
}

pub fn sigma_whitehead(p: &WhiteheadParams) -> Result<i64, WhiteheadError> {
    p.require_regular()?;
    Ok(0)
}

pub fn arf_whitehead(p: &WhiteheadParams) -> Result<u8, WhiteheadError> {
    p.require_regular()?;
    Ok(p.effective_twist().rem_euclid(2) as u8)
}

/// Hedden's formula; the negative clasp goes through the mirror identity
/// `Wh⁻_b(K) = −Wh⁺_{−b}(−K)`.
pub fn tau_whitehead(
    p: &WhiteheadParams,
    c: &CompanionInvariants,
) -> Result<Tagged<i64>, WhiteheadError> {
    let tau = c.tau.ok_or(WhiteheadError::MissingInvariant("tau"))?;
    let b = p.effective_twist();
    let value = match p.clasp {
        Clasp::Positive => i64::from(b < 2 * tau),
        Clasp::Negative => -i64::from(b > 2 * tau),
    };
    Ok(Tagged::new(value, clasp_source(p)))
}

pub fn epsilon_whitehead(
    p: &WhiteheadParams,
    c: &CompanionInvariants,
) -> Result<Tagged<i8>, WhiteheadError> {
    let tau = c.tau.ok_or(WhiteheadError::MissingInvariant("tau"))?;
    let eps = c.epsilon.ok_or(WhiteheadError::MissingInvariant("epsilon"))?;
    let nonzero = !(tau == 0 && eps == 0);
    let value = match p.clasp {
        Clasp::Positive => i8::from(nonzero),
        Clasp::Negative => -i8::from(nonzero),
    };
    Ok(Tagged::new(value, clasp_source(p)))
}

pub fn upsilon_whitehead(
    p: &WhiteheadParams,
    c: &CompanionInvariants,
) -> Result<PLFunction, WhiteheadError> {
    let tau = c.tau.ok_or(WhiteheadError::MissingInvariant("tau"))?;
    let b = p.effective_twist();
    let peak = match p.clasp {
        Clasp::Positive if b < 2 * tau => -1,
        Clasp::Negative if b > 2 * tau => 1,
        _ => return Ok(PLFunction::zero()),
    };
    Ok(PLFunction::new(vec![(int(0), int(0)), (int(1), int(peak)), (int(2), int(0))])
        .expect("valid breakpoints"))
}

/// Whether the twisting agrees with the clasp, so that the odd-twist
/// obstruction applies.
pub fn sign_compatible(p: &WhiteheadParams) -> bool {
    let b = p.effective_twist();
    match p.clasp {
        Clasp::Positive => b > 0,
        Clasp::Negative => b < 0,
    }
}

/// `γ₄ ≤ 2` and `γ₃ ≤ 2` always; `γ₄ = 2` when σ = 0, Arf = 1 and the
/// twisting is sign compatible. Nothing is claimed in the half-twist regime.
pub fn gamma4_whitehead(p: &WhiteheadParams) -> GenusBounds {
    let mut out = GenusBounds::default();
    if p.is_half_twist() {
        return out;
    }
    let arf = arf_whitehead(p).expect("regular regime");
    let obstructed = obstruct::yasuhara(0, arf).expect("σ = 0 is even") && sign_compatible(p);
    let lo = if obstructed { 2 } else { 1 };
    out.gamma4 = Interval::new(lo, Some(2));
    out.gamma3 = Some(Interval::new(lo, Some(2)));
    out
}

/// Odd `q` such that one non-orientable band move at the clasp turns the
/// double into the `(2, q)`-cable of the companion.
pub fn cable_target(p: &WhiteheadParams) -> Tagged<i64> {
    let b = p.effective_twist();
    let q = match p.clasp {
        Clasp::Positive => 2 * b + 1,
        Clasp::Negative => 2 * b - 1,
    };
    Tagged::new(q, Source::Reconstructed)
}

pub const BAND_MOVE_RULE: &str = "Jabuka-Kelly band move";
pub const BAND_MOVE_ANCHOR: &str =
    "γ₄(K) ≤ γ₄(J) + 1 when K and J differ by a non-orientable band move; here J = K_{2,q} bounds a Möbius band";
pub const CROSSCAP_RULE: &str = "Crosscap bound for doubles";
pub const CROSSCAP_ANCHOR: &str =
    "γ₃(Wh±_t(K)) ≤ 2: the checkerboard surface of the clasp and twist region is a punctured Klein bottle";

/// Builds the knot record of `Wh±_t(K)` from the companion's record.
pub fn record(p: &WhiteheadParams, companion: &KnotRecord) -> Result<KnotRecord, WhiteheadError> {
    let c = &companion.invariants;
    c.validate().map_err(WhiteheadError::InvalidCompanion)?;
    let mut r = KnotRecord::new(p.name());

    if c.tau.is_some() {
        r.invariants.tau = Some(tau_whitehead(p, c)?.value);
        r.invariants.upsilon = Some(upsilon_whitehead(p, c)?);
        let src = clasp_source(p);
        r.provenance.insert("invariants.tau".into(), src);
        r.provenance.insert("invariants.upsilon".into(), src);
        if c.epsilon.is_some() {
            r.invariants.epsilon = Some(epsilon_whitehead(p, c)?.value);
            r.provenance.insert("invariants.epsilon".into(), src);
        }
    }

    if p.is_half_twist() {
        r.notes.push(format!(
            "{p}: half-twist regime, σ, Arf and γ₄ conclusions withheld"
        ));
        return Ok(r);
    }

    r.seifert_matrix = Some(seifert_matrix(p)?);
    r.provenance.insert("seifert_matrix".into(), Source::Paper);
    r.sigma = Some(sigma_whitehead(p)?);
    r.provenance.insert("sigma".into(), Source::Paper);
    r.arf = Some(arf_whitehead(p)?);
    r.provenance.insert("arf".into(), Source::Paper);
    r.alexander = Some(alexander_formula(p));
    r.provenance.insert("alexander".into(), clasp_source(p));

    let band = obstruct::band_move_bound(&GenusBounds::default(), 1);
    r.facts.push(BoundFact {
        target: GenusKind::Gamma4,
        lo: None,
        hi: band.gamma4.hi,
        rule: BAND_MOVE_RULE.into(),
        anchor: BAND_MOVE_ANCHOR.into(),
    });
    r.facts.push(BoundFact {
        target: GenusKind::Gamma3,
        lo: None,
        hi: Some(2),
        rule: CROSSCAP_RULE.into(),
        anchor: CROSSCAP_ANCHOR.into(),
    });
    let q = cable_target(p);
    r.notes.push(format!("cable target q = {} ({})", q.value, q.source));
    Ok(r)
}

/// `υ = Υ(1)` of the double, for convenience.
pub fn upsilon_little_whitehead(
    p: &WhiteheadParams,
    c: &CompanionInvariants,
) -> Result<Rational, WhiteheadError> {
    let f = upsilon_whitehead(p, c)?;
    Ok(f.eval(&int(1)).expect("1 lies in the domain"))
}
