//! Aggregation of every available obstruction into genus intervals and
//! sliceness verdicts.
//!
//! Each rule looks at a [`KnotRecord`] and contributes lower/upper bounds on
//! `g₄`, `γ₄`, `g₃`, `γ₃` and verdict flags. Contributions are folded by
//! taking the tightest bound; each interval endpoint remembers the rule that
//! produced it so the report is auditable. Ties are broken by a fixed rule
//! order, which makes the result independent of evaluation order.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ceil_rat, Exact};
use crate::knotdb::{self, KnotDbError, KnotRecord};
use crate::laurent::{fox_milnor, FoxMilnor, LaurentPoly};
use crate::plfunc::{g4_lower_bound, oss_gamma4_lower_bound, upsilon_little, OssConvention};
use crate::seifert::{self, SeifertMatrix, ARF_BRUTE_FORCE_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructError {
    #[error("sigma must be even, got {0}")]
    OddSignature(i64),
    #[error("record `{0}` carries no matrix, polynomial or invariants")]
    EmptyRecord(String),
    #[error(
        "contradictory bounds on {target}: lower bound {lo} from {lo_rule} exceeds upper bound {hi} from {hi_rule}"
    )]
    Inconsistent {
        target: GenusKind,
        lo: u64,
        lo_rule: String,
        hi: u64,
        hi_rule: String,
    },
    #[error(transparent)]
    Record(#[from] KnotDbError),
}

/// Closed integer interval `[lo, hi]`; `hi = None` means unbounded above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Interval {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl Interval {
    pub fn new(lo: u64, hi: Option<u64>) -> Self {
        Interval { lo, hi }
    }

    pub fn exact(v: u64) -> Self {
        Interval::new(v, Some(v))
    }

    pub fn at_least(lo: u64) -> Self {
        Interval::new(lo, None)
    }

    pub fn is_empty(&self) -> bool {
        self.hi.is_some_and(|h| h < self.lo)
    }

    /// True when `self ⊆ other`.
    pub fn within(&self, other: &Interval) -> bool {
        self.lo >= other.lo
            && match (self.hi, other.hi) {
                (_, None) => true,
                (Some(a), Some(b)) => a <= b,
                (None, Some(_)) => false,
            }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{},{}]", self.lo, h),
            None => write!(f, "[{},∞)", self.lo),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenusKind {
    G4,
    Gamma4,
    G3,
    Gamma3,
}

impl fmt::Display for GenusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenusKind::G4 => "g4",
            GenusKind::Gamma4 => "gamma4",
            GenusKind::G3 => "g3",
            GenusKind::Gamma3 => "gamma3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenusBounds {
    pub g4: Interval,
    pub gamma4: Interval,
    #[serde(default)]
    pub g3: Option<Interval>,
    #[serde(default)]
    pub gamma3: Option<Interval>,
}

impl Default for GenusBounds {
    fn default() -> Self {
        GenusBounds {
            g4: Interval::at_least(0),
            gamma4: Interval::at_least(1),
            g3: None,
            gamma3: None,
        }
    }
}

impl GenusBounds {
    pub fn get(&self, kind: GenusKind) -> Option<&Interval> {
        match kind {
            GenusKind::G4 => Some(&self.g4),
            GenusKind::Gamma4 => Some(&self.gamma4),
            GenusKind::G3 => self.g3.as_ref(),
            GenusKind::Gamma3 => self.gamma3.as_ref(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub topologically_slice: Tri,
    pub smoothly_slice: Tri,
    /// Whether the knot bounds a Möbius band (`γ₄ = 1`).
    pub nonorientably_slice: Tri,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AppliedRule {
    pub rule: String,
    pub anchor: String,
    pub contribution: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionReport {
    pub bounds: GenusBounds,
    pub verdict: Verdict,
    pub applied_rules: Vec<AppliedRule>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl ObstructionReport {
    pub fn rule(&self, name: &str) -> Option<&AppliedRule> {
        self.applied_rules.iter().find(|r| r.rule == name)
    }

    /// An obstruction to smooth sliceness was found.
    pub fn obstructed(&self) -> bool {
        self.verdict.smoothly_slice == Tri::No
    }
}

/// `σ + 4·Arf ≡ 4 (mod 8)` implies `γ₄ ≥ 2`.
pub fn yasuhara(sigma: i64, arf: u8) -> Result<bool, ObstructError> {
    if sigma % 2 != 0 {
        return Err(ObstructError::OddSignature(sigma));
    }
    Ok((sigma + 4 * i64::from(arf)).rem_euclid(8) == 4)
}

/// Upper bound on `γ₄(K)` from a non-orientable band move to a knot `J`
/// with `γ₄(J) ≤ source_gamma4_hi`. A slice `J` is passed as `0` and forces
/// `γ₄(K) = 1`.
pub fn band_move_bound(target: &GenusBounds, source_gamma4_hi: u64) -> GenusBounds {
    let cap = source_gamma4_hi + 1;
    let mut out = target.clone();
    out.gamma4.hi = Some(out.gamma4.hi.map_or(cap, |h| h.min(cap)));
    out
}

/// Rule names and the statements they rest on.
pub mod rules {
    pub const BASELINE: (&str, &str) = ("Definition", "g₄(K) ≥ 0 and γ₄(K) ≥ 1 for every knot");
    pub const SEIFERT_SURFACE: (&str, &str) =
        ("Seifert surface", "a 2g×2g Seifert matrix comes from a genus-g surface: g₃(K) ≤ g");
    pub const SIGNATURE: (&str, &str) = ("Signature bound", "|σ(K)|/2 ≤ g₄(K)");
    pub const ARF: (&str, &str) = ("Arf invariant", "if K is slice, then arf(K) = 0");
    pub const MURASUGI: (&str, &str) =
        ("Murasugi Arf", "arf(K) = 0 iff Δ_K(−1) ≡ ±1 (mod 8)");
    pub const FOX_MILNOR: (&str, &str) =
        ("Fox-Milnor", "if K is slice, then Δ_K(t) = f(t)f(t⁻¹) with integer coefficients");
    pub const FREEDMAN: (&str, &str) = ("Freedman", "if Δ_K(t) = 1, then K is topologically slice");
    pub const TAU: (&str, &str) = ("Tau bound", "|τ(K)| ≤ g₄(K)");
    pub const NU: (&str, &str) = ("Nu bound", "ν(K) ≤ g₄(K)");
    pub const RASMUSSEN: (&str, &str) = ("Rasmussen s bound", "|s(K)|/2 ≤ g₄(K)");
    pub const EPSILON: (&str, &str) = ("Epsilon", "if K is slice, then ε(K) = 0");
    pub const UPSILON: (&str, &str) = ("Upsilon bound", "|Υ_K(t)| ≤ t·g₄(K) for 0 ≤ t ≤ 1");
    pub const TABLE: (&str, &str) = ("Tabulated value", "interval stored with the knot record");
    pub const YASUHARA: (&str, &str) = (
        "Yasuhara Prop 5.1",
        "if σ(K) + 4·arf(K) ≡ 4 (mod 8), then γ₄(K) ≥ 2",
    );
    pub const OSS: (&str, &str) = ("OSS non-orientable bound", "|υ(K) − σ(K)/2| ≤ γ₄(K)");
    pub const OSS_PLUS: (&str, &str) =
        ("OSS non-orientable bound (plus convention)", "|υ(K) + σ(K)/2| ≤ γ₄(K)");
    pub const G4_LE_G3: (&str, &str) = ("Pushed-in Seifert surface", "g₄(K) ≤ g₃(K)");
    pub const GAMMA4_LE_2G4: (&str, &str) =
        ("Orientable surface plus crosscap", "γ₄(K) ≤ 2g₄(K) + 1");
    pub const GAMMA4_LE_GAMMA3: (&str, &str) = ("Pushed-in crosscap surface", "γ₄(K) ≤ γ₃(K)");
}

/// A bound on one genus quantity recorded with a knot, with its justification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundFact {
    pub target: GenusKind,
    #[serde(default)]
    pub lo: Option<u64>,
    #[serde(default)]
    pub hi: Option<u64>,
    pub rule: String,
    pub anchor: String,
}

#[derive(Clone, Debug, Default)]
pub struct AggregateOptions {
    pub oss_convention: OssConvention,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flag {
    TopologicallyObstructed,
    TopologicallySlice,
}

#[derive(Clone, Debug)]
struct Firing {
    order: usize,
    rule: String,
    anchor: String,
    contribution: String,
    lower: Vec<(GenusKind, u64)>,
    upper: Vec<(GenusKind, u64)>,
    flags: Vec<Flag>,
}

impl Firing {
    fn new(order: usize, (rule, anchor): (&str, &str), contribution: impl Into<String>) -> Self {
        Firing {
            order,
            rule: rule.to_string(),
            anchor: anchor.to_string(),
            contribution: contribution.into(),
            lower: Vec::new(),
            upper: Vec::new(),
            flags: Vec::new(),
        }
    }

    fn lower(mut self, kind: GenusKind, v: u64) -> Self {
        self.lower.push((kind, v));
        self
    }

    fn upper(mut self, kind: GenusKind, v: u64) -> Self {
        self.upper.push((kind, v));
        self
    }

    fn flag(mut self, f: Flag) -> Self {
        self.flags.push(f);
        self
    }
}

/// Classical data extracted from a record: from the Seifert matrix when
/// present, otherwise from stored values.
struct Classical {
    matrix: Option<SeifertMatrix>,
    sigma: Option<i64>,
    arf: Option<(u8, bool)>,
    delta: Option<LaurentPoly>,
}

impl Classical {
    fn from_record(r: &KnotRecord) -> Classical {
        let matrix = r.seifert_matrix.clone();
        let sigma = matrix.as_ref().map(seifert::signature).or(r.sigma);
        let delta = matrix.as_ref().map(seifert::alexander).or_else(|| r.alexander.clone());
        // (value, came from Δ via Murasugi)
        let arf = match (&matrix, r.arf, &delta) {
            (Some(v), _, _) if v.dim() <= ARF_BRUTE_FORCE_LIMIT => {
                Some((seifert::arf(v).expect("within budget"), false))
            }
            (_, Some(a), _) => Some((a, false)),
            (_, None, Some(d)) => seifert::arf_murasugi(d).ok().map(|a| (a, true)),
            _ => None,
        };
        Classical {
            matrix,
            sigma,
            arf,
            delta,
        }
    }
}

const FACT_ORDER_BASE: usize = 100;
const PROPAGATION_ORDER_BASE: usize = 1000;

/// Aggregates with the default options.
pub fn aggregate(record: &KnotRecord) -> Result<ObstructionReport, ObstructError> {
    aggregate_with(record, &AggregateOptions::default())
}

pub fn aggregate_with(
    record: &KnotRecord,
    options: &AggregateOptions,
) -> Result<ObstructionReport, ObstructError> {
    let mut firings = direct_rules(record, options)?;
    firings.sort_by_key(|f| f.order);
    fold_report(firings, options, record)
}

/// Evaluates rules in the order given by `permutation` (indices into the
/// direct-rule list). The report must not depend on the permutation.
pub fn aggregate_permuted(
    record: &KnotRecord,
    permutation: &[usize],
) -> Result<ObstructionReport, ObstructError> {
    let options = AggregateOptions::default();
    let firings = direct_rules(record, &options)?;
    let permuted: Vec<Firing> = permutation
        .iter()
        .filter_map(|&i| firings.get(i).cloned())
        .collect();
    assert_eq!(permuted.len(), firings.len(), "not a permutation");
    fold_report(permuted, &options, record)
}

/// Number of directly firing rules for `record`, for permutation tests.
pub fn direct_rule_count(record: &KnotRecord) -> Result<usize, ObstructError> {
    Ok(direct_rules(record, &AggregateOptions::default())?.len())
}

fn direct_rules(
    record: &KnotRecord,
    options: &AggregateOptions,
) -> Result<Vec<Firing>, ObstructError> {
    use rules::*;
    use GenusKind::*;

    if record.is_empty() {
        return Err(ObstructError::EmptyRecord(record.name.clone()));
    }
    knotdb::check_consistency(record)?;

    let classical = Classical::from_record(record);
    let inv = &record.invariants;
    let mut out = vec![Firing::new(0, BASELINE, "g4 ≥ 0, gamma4 ≥ 1")
        .lower(G4, 0)
        .lower(Gamma4, 1)];

    if let Some(v) = &classical.matrix {
        let g = v.genus() as u64;
        out.push(
            Firing::new(1, SEIFERT_SURFACE, format!("{0}×{0} matrix: g3 ≤ {1}", v.dim(), g))
                .upper(G3, g),
        );
    }
    if let Some(sigma) = classical.sigma {
        if sigma % 2 != 0 {
            return Err(ObstructError::OddSignature(sigma));
        }
        if sigma != 0 {
            let b = sigma.unsigned_abs() / 2;
            out.push(Firing::new(2, SIGNATURE, format!("σ = {sigma}: g4 ≥ {b}")).lower(G4, b));
        }
    }
    if let Some((arf, via_murasugi)) = classical.arf {
        if arf == 1 {
            let (rule, anchor) = if via_murasugi { MURASUGI } else { ARF };
            out.push(Firing::new(3, (rule, anchor), "arf = 1: not slice, g4 ≥ 1").lower(G4, 1));
        }
    }
    if let Some(delta) = &classical.delta {
        match fox_milnor(delta) {
            Ok(FoxMilnor::Passes { witness }) => out.push(Firing::new(
                4,
                FOX_MILNOR,
                format!("passes, Δ ≐ f(t)f(t⁻¹) with f = {witness}"),
            )),
            Ok(FoxMilnor::Fails(why)) => out.push(
                Firing::new(4, FOX_MILNOR, format!("fails: {why}; not topologically slice"))
                    .lower(G4, 1)
                    .flag(Flag::TopologicallyObstructed),
            ),
            Err(e) => return Err(KnotDbError::Invalid(e.to_string()).into()),
        }
        if delta.equals_up_to_unit(&LaurentPoly::one()) {
            out.push(
                Firing::new(5, FREEDMAN, "Δ = 1: topologically slice")
                    .flag(Flag::TopologicallySlice),
            );
        }
    }
    if let Some(tau) = inv.tau.filter(|t| *t != 0) {
        let b = tau.unsigned_abs();
        out.push(Firing::new(6, TAU, format!("τ = {tau}: g4 ≥ {b}")).lower(G4, b));
    }
    if let Some(nu) = inv.nu.filter(|n| *n > 0) {
        out.push(Firing::new(7, NU, format!("ν = {nu}: g4 ≥ {nu}")).lower(G4, nu as u64));
    }
    if let Some(s) = inv.s.filter(|s| *s != 0) {
        let b = s.unsigned_abs() / 2;
        out.push(Firing::new(8, RASMUSSEN, format!("s = {s}: g4 ≥ {b}")).lower(G4, b));
    }
    if let Some(eps) = inv.epsilon.filter(|e| *e != 0) {
        out.push(Firing::new(9, EPSILON, format!("ε = {eps}: not slice, g4 ≥ 1")).lower(G4, 1));
    }
    if let Some(ups) = &inv.upsilon {
        let b = g4_lower_bound(ups);
        if b > 0 {
            out.push(
                Firing::new(10, UPSILON, format!("max |Υ(s)|/s on (0,1] forces g4 ≥ {b}"))
                    .lower(G4, b),
            );
        }
    }
    for (kind, stored) in [(G4, inv.g4), (Gamma4, inv.gamma4), (Gamma3, inv.gamma3)] {
        if let Some(iv) = stored {
            let mut f = Firing::new(11, TABLE, format!("{kind} ∈ {iv}")).lower(kind, iv.lo);
            if let Some(h) = iv.hi {
                f = f.upper(kind, h);
            }
            out.push(f);
        }
    }
    if let (Some(sigma), Some((arf, _))) = (classical.sigma, classical.arf) {
        if yasuhara(sigma, arf)? {
            out.push(
                Firing::new(
                    12,
                    YASUHARA,
                    format!("σ + 4·arf = {} ≡ 4 (mod 8): gamma4 ≥ 2", sigma + 4 * i64::from(arf)),
                )
                .lower(Gamma4, 2),
            );
        }
    }
    if options.oss_convention == OssConvention::Minus {
        if let Some(f) = oss_firing(record, classical.sigma, OssConvention::Minus) {
            out.push(f);
        }
    }
    for (i, fact) in record.facts.iter().enumerate() {
        let mut f = Firing {
            order: FACT_ORDER_BASE + i,
            rule: fact.rule.clone(),
            anchor: fact.anchor.clone(),
            contribution: String::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            flags: Vec::new(),
        };
        let mut parts = Vec::new();
        if let Some(lo) = fact.lo {
            f.lower.push((fact.target, lo));
            parts.push(format!("{} ≥ {lo}", fact.target));
        }
        if let Some(hi) = fact.hi {
            f.upper.push((fact.target, hi));
            parts.push(format!("{} ≤ {hi}", fact.target));
        }
        f.contribution = parts.join(", ");
        out.push(f);
    }
    Ok(out)
}

fn oss_firing(record: &KnotRecord, sigma: Option<i64>, conv: OssConvention) -> Option<Firing> {
    let ups = record.invariants.upsilon.as_ref()?;
    let sigma = sigma?;
    let upsilon = upsilon_little(ups).ok()?;
    let bound = oss_gamma4_lower_bound(&upsilon, sigma, conv);
    let b = ceil_rat(&bound).to_u64()?;
    if b < 2 {
        return None;
    }
    let rule = match conv {
        OssConvention::Minus => rules::OSS,
        OssConvention::Plus => rules::OSS_PLUS,
    };
    Some(
        Firing::new(
            13,
            rule,
            format!("υ = {}, σ = {sigma}: gamma4 ≥ {b}", Exact(&upsilon)),
        )
        .lower(GenusKind::Gamma4, b),
    )
}

#[derive(Clone, Debug)]
struct Endpoint {
    value: u64,
    order: usize,
    rule: String,
}

#[derive(Clone, Debug, Default)]
struct Tracked {
    lo: Option<Endpoint>,
    hi: Option<Endpoint>,
}

impl Tracked {
    fn offer_lo(&mut self, e: Endpoint) -> bool {
        let better = match &self.lo {
            None => true,
            Some(cur) => e.value > cur.value || (e.value == cur.value && e.order < cur.order),
        };
        if better {
            self.lo = Some(e);
        }
        better
    }

    fn offer_hi(&mut self, e: Endpoint) -> bool {
        let better = match &self.hi {
            None => true,
            Some(cur) => e.value < cur.value || (e.value == cur.value && e.order < cur.order),
        };
        if better {
            self.hi = Some(e);
        }
        better
    }

    fn interval(&self, default_lo: u64) -> Interval {
        Interval::new(
            self.lo.as_ref().map_or(default_lo, |e| e.value),
            self.hi.as_ref().map(|e| e.value),
        )
    }

    fn is_set(&self) -> bool {
        self.lo.is_some() || self.hi.is_some()
    }
}

struct Fold {
    g4: Tracked,
    gamma4: Tracked,
    g3: Tracked,
    gamma3: Tracked,
}

impl Fold {
    fn slot(&mut self, k: GenusKind) -> &mut Tracked {
        match k {
            GenusKind::G4 => &mut self.g4,
            GenusKind::Gamma4 => &mut self.gamma4,
            GenusKind::G3 => &mut self.g3,
            GenusKind::Gamma3 => &mut self.gamma3,
        }
    }

    fn apply(&mut self, f: &Firing) {
        for &(k, v) in &f.lower {
            self.slot(k).offer_lo(Endpoint {
                value: v,
                order: f.order,
                rule: f.rule.clone(),
            });
        }
        for &(k, v) in &f.upper {
            self.slot(k).offer_hi(Endpoint {
                value: v,
                order: f.order,
                rule: f.rule.clone(),
            });
        }
    }

    /// One round of the relations `g₄ ≤ g₃`, `γ₄ ≤ 2g₄ + 1`, `γ₄ ≤ γ₃`.
    fn propagate(&self) -> Vec<Firing> {
        use rules::*;
        use GenusKind::*;
        let mut out = Vec::new();
        let base = PROPAGATION_ORDER_BASE;
        if let Some(h) = &self.g3.hi {
            out.push(
                Firing::new(base, G4_LE_G3, format!("g4 ≤ g3 ≤ {}", h.value)).upper(G4, h.value),
            );
        }
        if let Some(l) = self.g4.lo.as_ref().filter(|_| self.g3.is_set()) {
            out.push(
                Firing::new(base, G4_LE_G3, format!("g3 ≥ g4 ≥ {}", l.value)).lower(G3, l.value),
            );
        }
        if let Some(h) = &self.g4.hi {
            let cap = 2 * h.value + 1;
            out.push(
                Firing::new(base + 1, GAMMA4_LE_2G4, format!("g4 ≤ {}: gamma4 ≤ {cap}", h.value))
                    .upper(Gamma4, cap),
            );
        }
        if let Some(h) = &self.gamma3.hi {
            out.push(
                Firing::new(base + 2, GAMMA4_LE_GAMMA3, format!("gamma4 ≤ gamma3 ≤ {}", h.value))
                    .upper(Gamma4, h.value),
            );
        }
        if let Some(l) = self.gamma4.lo.as_ref().filter(|_| self.gamma3.is_set()) {
            out.push(
                Firing::new(base + 2, GAMMA4_LE_GAMMA3, format!("gamma3 ≥ gamma4 ≥ {}", l.value))
                    .lower(Gamma3, l.value),
            );
        }
        out
    }

    fn check(&self) -> Result<(), ObstructError> {
        for (kind, t) in [
            (GenusKind::G4, &self.g4),
            (GenusKind::Gamma4, &self.gamma4),
            (GenusKind::G3, &self.g3),
            (GenusKind::Gamma3, &self.gamma3),
        ] {
            if let (Some(lo), Some(hi)) = (&t.lo, &t.hi) {
                if lo.value > hi.value {
                    return Err(ObstructError::Inconsistent {
                        target: kind,
                        lo: lo.value,
                        lo_rule: lo.rule.clone(),
                        hi: hi.value,
                        hi_rule: hi.rule.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn bounds(&self) -> GenusBounds {
        GenusBounds {
            g4: self.g4.interval(0),
            gamma4: self.gamma4.interval(1),
            g3: self.g3.is_set().then(|| self.g3.interval(0)),
            gamma3: self.gamma3.is_set().then(|| self.gamma3.interval(1)),
        }
    }

    fn justifying_rules(&self) -> Vec<String> {
        [&self.g4, &self.gamma4, &self.g3, &self.gamma3]
            .iter()
            .flat_map(|t| [t.lo.as_ref(), t.hi.as_ref()])
            .flatten()
            .map(|e| e.rule.clone())
            .collect()
    }
}

fn fold_report(
    direct: Vec<Firing>,
    options: &AggregateOptions,
    record: &KnotRecord,
) -> Result<ObstructionReport, ObstructError> {
    let mut fold = Fold {
        g4: Tracked::default(),
        gamma4: Tracked::default(),
        g3: Tracked::default(),
        gamma3: Tracked::default(),
    };
    let mut applied: Vec<Firing> = Vec::new();
    for f in &direct {
        fold.apply(f);
    }
    applied.extend(direct.iter().cloned());
    saturate(&mut fold, &mut applied);
    fold.check()?;

    let mut warnings = record.notes.clone();
    if options.oss_convention == OssConvention::Plus {
        let sigma = Classical::from_record(record).sigma;
        if let Some(f) = oss_firing(record, sigma, OssConvention::Plus) {
            let bound = f.lower[0].1;
            match &fold.gamma4.hi {
                Some(hi) if hi.value < bound => warnings.push(format!(
                    "plus-convention OSS bound gamma4 ≥ {bound} contradicts gamma4 ≤ {} from {}; bound not applied",
                    hi.value, hi.rule
                )),
                _ => {
                    fold.apply(&f);
                    applied.push(f);
                    saturate(&mut fold, &mut applied);
                    fold.check()?;
                }
            }
        }
    }

    let bounds = fold.bounds();
    let flags: Vec<Flag> = applied.iter().flat_map(|f| f.flags.clone()).collect();
    let smoothly_slice = if bounds.g4.lo >= 1 {
        Tri::No
    } else if bounds.g4.hi == Some(0) {
        Tri::Yes
    } else {
        Tri::Unknown
    };
    let topologically_slice = if flags.contains(&Flag::TopologicallyObstructed) {
        Tri::No
    } else if flags.contains(&Flag::TopologicallySlice) || smoothly_slice == Tri::Yes {
        Tri::Yes
    } else {
        Tri::Unknown
    };
    let nonorientably_slice = if bounds.gamma4.lo >= 2 {
        Tri::No
    } else if bounds.gamma4.hi == Some(1) {
        Tri::Yes
    } else {
        Tri::Unknown
    };

    // Keep informational rules (no bounds) and every rule that justifies a
    // final endpoint; drop propagation steps superseded by stronger bounds.
    let justifying = fold.justifying_rules();
    applied.sort_by(|a, b| a.order.cmp(&b.order).then(a.contribution.cmp(&b.contribution)));
    let applied_rules = applied
        .into_iter()
        .filter(|f| {
            f.order < PROPAGATION_ORDER_BASE || justifying.contains(&f.rule)
        })
        .filter(|f| f.order != 0 || justifying.contains(&f.rule))
        .map(|f| AppliedRule {
            rule: f.rule,
            anchor: f.anchor,
            contribution: f.contribution,
        })
        .fold(Vec::<AppliedRule>::new(), |mut acc, r| {
            if !acc.contains(&r) {
                acc.push(r);
            }
            acc
        });

    Ok(ObstructionReport {
        bounds,
        verdict: Verdict {
            topologically_slice,
            smoothly_slice,
            nonorientably_slice,
        },
        applied_rules,
        warnings,
    })
}

/// Applies the propagation relations until no endpoint changes.
fn saturate(fold: &mut Fold, applied: &mut Vec<Firing>) {
    loop {
        let mut changed = false;
        for f in fold.propagate() {
            let mut improved = false;
            for &(k, v) in &f.lower {
                improved |= fold.slot(k).offer_lo(Endpoint {
                    value: v,
                    order: f.order,
                    rule: f.rule.clone(),
                });
            }
            for &(k, v) in &f.upper {
                improved |= fold.slot(k).offer_hi(Endpoint {
                    value: v,
                    order: f.order,
                    rule: f.rule.clone(),
                });
            }
            if improved {
                applied.push(f);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// `true` when `a` carries at least as much information as `b` on every
/// interval.
pub fn refines(a: &GenusBounds, b: &GenusBounds) -> bool {
    let opt = |x: &Option<Interval>, y: &Option<Interval>| match (x, y) {
        (_, None) => true,
        (Some(x), Some(y)) => x.within(y),
        (None, Some(y)) => y.lo == 0 && y.hi.is_none(),
    };
    a.g4.within(&b.g4) && a.gamma4.within(&b.gamma4) && opt(&a.g3, &b.g3) && opt(&a.gamma3, &b.gamma3)
}
