//! Knot records, the built-in seed table, CSV ingestion and JSON persistence.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::obstruct::{BoundFact, Interval};
use crate::plfunc::PLFunction;
use crate::seifert::{self, SeifertMatrix, ARF_BRUTE_FORCE_LIMIT};
use crate::whitehead::CompanionInvariants;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotDbError {
    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
    #[error("duplicate knot name `{0}`")]
    Duplicate(String),
    #[error("{name}: stored {field} = {stored} disagrees with computed {computed}")]
    Inconsistent {
        name: String,
        field: String,
        stored: String,
        computed: String,
    },
    #[error("invalid record: {0}")]
    Invalid(String),
    #[error("unsupported store format_version {0}")]
    FormatVersion(u32),
    #[error("column `{0}` not found in header")]
    MissingColumn(String),
    #[error("unknown field `{0}` in column mapping")]
    UnknownField(String),
    #[error("row {row}: {source}")]
    Row { row: usize, source: Box<KnotDbError> },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
}

/// Where a stored value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Computed by this library from other fields.
    Computed,
    /// Imported from an external invariant table.
    Table,
    /// A value or formula stated in the published literature.
    Paper,
    /// Obtained from a published statement by a short argument (e.g. mirroring).
    Derived,
    /// A formula reconstructed where the literature gives only instances.
    Reconstructed,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Computed => "computed",
            Source::Table => "table",
            Source::Paper => "paper",
            Source::Derived => "derived",
            Source::Reconstructed => "reconstructed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert_matrix: Option<SeifertMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<LaurentPoly>,
    #[serde(default, skip_serializing_if = "CompanionInvariants::is_empty")]
    pub invariants: CompanionInvariants,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arf: Option<u8>,
    /// Bounds justified by named results rather than by stored invariants.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<BoundFact>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Per-field source tag, keyed by field path.
    #[serde(default)]
    pub provenance: BTreeMap<String, Source>,
}

impl KnotRecord {
    pub fn new(name: impl Into<String>) -> Self {
        KnotRecord {
            name: name.into(),
            seifert_matrix: None,
            alexander: None,
            invariants: CompanionInvariants::default(),
            sigma: None,
            arf: None,
            facts: Vec::new(),
            notes: Vec::new(),
            provenance: BTreeMap::new(),
        }
    }

    /// Record holding only a Seifert matrix, with the classical invariants
    /// filled in.
    pub fn from_matrix(name: impl Into<String>, v: SeifertMatrix) -> Self {
        let mut r = KnotRecord::new(name);
        r.seifert_matrix = Some(v);
        r.provenance.insert("seifert_matrix".into(), Source::Table);
        r.complete();
        r
    }

    /// No matrix, polynomial or invariant of any kind.
    pub fn is_empty(&self) -> bool {
        self.seifert_matrix.is_none()
            && self.alexander.is_none()
            && self.sigma.is_none()
            && self.arf.is_none()
            && self.invariants.is_empty()
            && self.facts.is_empty()
    }

    /// Fills σ, Arf and Δ from the Seifert matrix where absent.
    pub fn complete(&mut self) {
        let Some(v) = &self.seifert_matrix else {
            return;
        };
        if self.sigma.is_none() {
            self.sigma = Some(seifert::signature(v));
            self.provenance.insert("sigma".into(), Source::Computed);
        }
        if self.arf.is_none() && v.dim() <= ARF_BRUTE_FORCE_LIMIT {
            self.arf = Some(seifert::arf(v).expect("within budget"));
            self.provenance.insert("arf".into(), Source::Computed);
        }
        if self.alexander.is_none() {
            self.alexander = Some(seifert::alexander(v));
            self.provenance.insert("alexander".into(), Source::Computed);
        }
    }
}

/// Checks that stored values agree with everything computable from the
/// Seifert matrix, and that the invariants are internally consistent.
pub fn check_consistency(r: &KnotRecord) -> Result<(), KnotDbError> {
    r.invariants
        .validate()
        .map_err(|e| KnotDbError::Invalid(format!("{}: {e}", r.name)))?;
    if let Some(a) = r.arf {
        if a > 1 {
            return Err(KnotDbError::Invalid(format!("{}: arf = {a}", r.name)));
        }
    }
    if let Some(s) = r.sigma {
        if s % 2 != 0 {
            return Err(KnotDbError::Invalid(format!("{}: odd signature {s}", r.name)));
        }
    }
    let clash = |field: &str, stored: String, computed: String| KnotDbError::Inconsistent {
        name: r.name.clone(),
        field: field.into(),
        stored,
        computed,
    };
    if let Some(v) = &r.seifert_matrix {
        if let Some(s) = r.sigma {
            let c = seifert::signature(v);
            if s != c {
                return Err(clash("sigma", s.to_string(), format!("{c} (seifert_matrix)")));
            }
        }
        if let (Some(a), true) = (r.arf, v.dim() <= ARF_BRUTE_FORCE_LIMIT) {
            let c = seifert::arf(v).expect("within budget");
            if a != c {
                return Err(clash("arf", a.to_string(), format!("{c} (seifert_matrix)")));
            }
        }
        if let Some(d) = &r.alexander {
            let c = seifert::alexander(v);
            if !d.equals_up_to_unit(&c) {
                return Err(clash("alexander", d.to_string(), format!("{c} (seifert_matrix)")));
            }
        }
    }
    if let (Some(a), Some(d), None) = (r.arf, &r.alexander, &r.seifert_matrix) {
        if let Ok(c) = seifert::arf_murasugi(d) {
            if a != c {
                return Err(clash("arf", a.to_string(), format!("{c} (alexander)")));
            }
        }
    }
    Ok(())
}

/// Named collection of knot records.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Store {
    records: BTreeMap<String, KnotRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StoreFile {
    format_version: u32,
    records: Vec<KnotRecord>,
}

impl Store {
    pub fn new() -> Self {
        Store::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Adds a new record; the name must not already be present.
    pub fn insert(&mut self, r: KnotRecord) -> Result<(), KnotDbError> {
        check_consistency(&r)?;
        if self.records.contains_key(&r.name) {
            return Err(KnotDbError::Duplicate(r.name));
        }
        self.records.insert(r.name.clone(), r);
        Ok(())
    }

    /// Adds or replaces a record.
    pub fn upsert(&mut self, r: KnotRecord) -> Result<(), KnotDbError> {
        check_consistency(&r)?;
        self.records.insert(r.name.clone(), r);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.records.get(name)
    }

    pub fn lookup(&self, name: &str) -> Result<&KnotRecord, KnotDbError> {
        self.get(name).ok_or_else(|| KnotDbError::UnknownKnot(name.to_string()))
    }

    /// Records in name order.
    pub fn records(&self) -> impl Iterator<Item = &KnotRecord> {
        self.records.values()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }

    pub fn to_json(&self) -> String {
        let file = StoreFile {
            format_version: FORMAT_VERSION,
            records: self.records.values().cloned().collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("store serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, KnotDbError> {
        let file: StoreFile =
            serde_json::from_str(text).map_err(|e| KnotDbError::Format(e.to_string()))?;
        if file.format_version != FORMAT_VERSION {
            return Err(KnotDbError::FormatVersion(file.format_version));
        }
        let mut store = Store::new();
        for r in file.records {
            store.insert(r)?;
        }
        Ok(store)
    }

    pub fn save(&self, path: &Path) -> Result<(), KnotDbError> {
        fs::write(path, self.to_json()).map_err(|e| KnotDbError::Io(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self, KnotDbError> {
        let text = fs::read_to_string(path)
            .map_err(|e| KnotDbError::Io(format!("{}: {e}", path.display())))?;
        Store::from_json(&text)
    }
}

/// Built-in records. Matrices are checked against the stated σ and Arf by
/// [`check_consistency`] on insertion.
pub fn seed_table() -> Store {
    let mut store = Store::new();
    let tab = Source::Table;

    let mut unknot = KnotRecord::from_matrix("unknot", SeifertMatrix::empty());
    unknot.invariants = CompanionInvariants {
        tau: Some(0),
        epsilon: Some(0),
        nu: Some(0),
        s: Some(0),
        upsilon: Some(PLFunction::zero()),
        g3: Some(Interval::exact(0)),
        g4: Some(Interval::exact(0)),
        gamma4: Some(Interval::exact(1)),
        gamma3: Some(Interval::exact(1)),
    };
    tag_invariants(&mut unknot, tab);

    let trefoil_v = SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).expect("valid");
    let mut trefoil = KnotRecord::from_matrix("3_1", trefoil_v);
    trefoil.invariants = CompanionInvariants {
        tau: Some(1),
        epsilon: Some(1),
        nu: Some(1),
        s: Some(2),
        upsilon: Some(PLFunction::from_ints(&[(0, 0), (1, -1), (2, 0)]).expect("valid")),
        g3: Some(Interval::exact(1)),
        g4: Some(Interval::exact(1)),
        gamma4: Some(Interval::exact(1)),
        gamma3: Some(Interval::exact(1)),
    };
    tag_invariants(&mut trefoil, tab);

    let eight_v = SeifertMatrix::new(vec![vec![1, 1], vec![0, -1]]).expect("valid");
    let mut eight = KnotRecord::from_matrix("4_1", eight_v);
    eight.invariants = CompanionInvariants {
        tau: Some(0),
        epsilon: Some(0),
        nu: Some(0),
        s: Some(0),
        upsilon: Some(PLFunction::zero()),
        ..Default::default()
    };
    tag_invariants(&mut eight, tab);

    let mut stevedore = KnotRecord::new("6_1");
    stevedore.alexander = Some(LaurentPoly::from_terms([(2, 1), (-5, 0), (2, -1)]));
    stevedore.sigma = Some(0);
    stevedore.arf = Some(0);
    stevedore.invariants = CompanionInvariants {
        tau: Some(0),
        epsilon: Some(0),
        g4: Some(Interval::exact(0)),
        ..Default::default()
    };
    for f in ["alexander", "sigma", "arf"] {
        stevedore.provenance.insert(f.into(), tab);
    }
    tag_invariants(&mut stevedore, tab);

    for r in [unknot, trefoil, eight, stevedore] {
        store.insert(r).expect("seed records are consistent");
    }
    store
}

fn tag_invariants(r: &mut KnotRecord, src: Source) {
    let inv = &r.invariants;
    let present = [
        ("tau", inv.tau.is_some()),
        ("epsilon", inv.epsilon.is_some()),
        ("nu", inv.nu.is_some()),
        ("s", inv.s.is_some()),
        ("upsilon", inv.upsilon.is_some()),
        ("g3", inv.g3.is_some()),
        ("g4", inv.g4.is_some()),
        ("gamma4", inv.gamma4.is_some()),
        ("gamma3", inv.gamma3.is_some()),
    ];
    for (name, here) in present {
        if here {
            r.provenance.insert(format!("invariants.{name}"), src);
        }
    }
}

/// Record fields that a CSV column can feed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Field {
    Name,
    Seifert,
    Alexander,
    Signature,
    Arf,
    Tau,
    Epsilon,
    Nu,
    S,
    Upsilon,
    G3,
    G4,
    Gamma4,
    Gamma3,
}

impl std::str::FromStr for Field {
    type Err = KnotDbError;

    fn from_str(s: &str) -> Result<Self, KnotDbError> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "name" => Field::Name,
            "seifert" | "seifert_matrix" => Field::Seifert,
            "alexander" => Field::Alexander,
            "signature" | "sigma" => Field::Signature,
            "arf" => Field::Arf,
            "tau" => Field::Tau,
            "epsilon" => Field::Epsilon,
            "nu" => Field::Nu,
            "s" | "rasmussen" => Field::S,
            "upsilon" => Field::Upsilon,
            "g3" => Field::G3,
            "g4" => Field::G4,
            "gamma4" => Field::Gamma4,
            "gamma3" => Field::Gamma3,
            other => return Err(KnotDbError::UnknownField(other.to_string())),
        })
    }
}

/// Explicit map from record fields to CSV header names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColumnMapping {
    pub columns: BTreeMap<Field, String>,
}

impl ColumnMapping {
    pub fn new() -> Self {
        ColumnMapping::default()
    }

    pub fn with(mut self, field: Field, column: impl Into<String>) -> Self {
        self.columns.insert(field, column.into());
        self
    }

    /// Parses `field=column,field=column,...`.
    pub fn parse(spec: &str) -> Result<Self, KnotDbError> {
        let mut m = ColumnMapping::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (f, c) = part
                .split_once('=')
                .ok_or_else(|| KnotDbError::Format(format!("mapping entry `{part}` lacks `=`")))?;
            m.columns.insert(f.parse()?, c.trim().to_string());
        }
        if !m.columns.contains_key(&Field::Name) {
            return Err(KnotDbError::Format("mapping must include `name`".into()));
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    /// 1-based data row, not counting the header.
    pub row: usize,
    pub column: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}, column `{}`: {}", self.row, self.column, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ingested {
    pub records: Vec<KnotRecord>,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn ingest_csv(path: &Path, mapping: &ColumnMapping) -> Result<Ingested, KnotDbError> {
    let file = fs::File::open(path).map_err(|e| KnotDbError::Io(format!("{}: {e}", path.display())))?;
    ingest_reader(file, mapping)
}

pub fn ingest_reader<R: Read>(reader: R, mapping: &ColumnMapping) -> Result<Ingested, KnotDbError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(|e| KnotDbError::Format(e.to_string()))?.clone();
    let mut index = BTreeMap::new();
    for (field, col) in &mapping.columns {
        let i = headers
            .iter()
            .position(|h| h == col)
            .ok_or_else(|| KnotDbError::MissingColumn(col.clone()))?;
        index.insert(*field, i);
    }
    let name_col = *index.get(&Field::Name).ok_or_else(|| KnotDbError::MissingColumn("name".into()))?;

    let mut out = Ingested::default();
    let mut seen = std::collections::BTreeSet::new();
    for (i, row) in rdr.records().enumerate() {
        let row_no = i + 1;
        let row = row.map_err(|e| KnotDbError::Row {
            row: row_no,
            source: Box::new(KnotDbError::Format(e.to_string())),
        })?;
        let name = row.get(name_col).unwrap_or("").to_string();
        if name.is_empty() {
            out.diagnostics.push(Diagnostic {
                row: row_no,
                column: mapping.columns[&Field::Name].clone(),
                message: "empty name, row skipped".into(),
            });
            continue;
        }
        if !seen.insert(name.clone()) {
            return Err(KnotDbError::Row {
                row: row_no,
                source: Box::new(KnotDbError::Duplicate(name)),
            });
        }
        let mut r = KnotRecord::new(name);
        for (&field, &col) in &index {
            let cell = row.get(col).unwrap_or("");
            if field == Field::Name || cell.is_empty() {
                continue;
            }
            if let Err(msg) = apply_cell(&mut r, field, cell) {
                out.diagnostics.push(Diagnostic {
                    row: row_no,
                    column: mapping.columns[&field].clone(),
                    message: format!("`{cell}`: {msg}; field left absent"),
                });
            }
        }
        check_consistency(&r).map_err(|e| KnotDbError::Row {
            row: row_no,
            source: Box::new(e),
        })?;
        r.complete();
        out.records.push(r);
    }
    Ok(out)
}

fn apply_cell(r: &mut KnotRecord, field: Field, cell: &str) -> Result<(), String> {
    let int = |s: &str| s.parse::<i64>().map_err(|_| "not an integer".to_string());
    let key = match field {
        Field::Name => return Ok(()),
        Field::Seifert => {
            let rows: Vec<Vec<i64>> =
                serde_json::from_str(cell).map_err(|e| format!("not a matrix: {e}"))?;
            r.seifert_matrix = Some(SeifertMatrix::new(rows).map_err(|e| e.to_string())?);
            "seifert_matrix".to_string()
        }
        Field::Alexander => {
            r.alexander = Some(parse_polynomial(cell)?);
            "alexander".to_string()
        }
        Field::Signature => {
            r.sigma = Some(int(cell)?);
            "sigma".to_string()
        }
        Field::Arf => {
            match int(cell)? {
                a @ (0 | 1) => r.arf = Some(a as u8),
                a => return Err(format!("arf must be 0 or 1, got {a}")),
            }
            "arf".to_string()
        }
        Field::Tau => {
            r.invariants.tau = Some(int(cell)?);
            "invariants.tau".to_string()
        }
        Field::Epsilon => {
            match int(cell)? {
                e @ -1..=1 => r.invariants.epsilon = Some(e as i8),
                e => return Err(format!("ε must be -1, 0 or 1, got {e}")),
            }
            "invariants.epsilon".to_string()
        }
        Field::Nu => {
            r.invariants.nu = Some(int(cell)?);
            "invariants.nu".to_string()
        }
        Field::S => {
            let s = int(cell)?;
            if s % 2 != 0 {
                return Err("s must be even".into());
            }
            r.invariants.s = Some(s);
            "invariants.s".to_string()
        }
        Field::Upsilon => {
            let f: PLFunction = serde_json::from_str(cell)
                .or_else(|_| serde_json::from_str(&format!("{{\"breakpoints\":{cell}}}")))
                .map_err(|e| format!("not a PL function: {e}"))?;
            if !f.is_upsilon() {
                return Err("Υ must be defined on [0, 2]".into());
            }
            r.invariants.upsilon = Some(f);
            "invariants.upsilon".to_string()
        }
        Field::G3 | Field::G4 | Field::Gamma4 | Field::Gamma3 => {
            let iv = parse_interval(cell)?;
            let (slot, name, min_lo) = match field {
                Field::G3 => (&mut r.invariants.g3, "g3", 0),
                Field::G4 => (&mut r.invariants.g4, "g4", 0),
                Field::Gamma4 => (&mut r.invariants.gamma4, "gamma4", 1),
                _ => (&mut r.invariants.gamma3, "gamma3", 1),
            };
            if iv.lo < min_lo || iv.is_empty() {
                return Err(format!("invalid {name} interval {iv}"));
            }
            *slot = Some(iv);
            format!("invariants.{name}")
        }
    };
    r.provenance.insert(key, Source::Table);
    Ok(())
}

/// `n`, `[lo,hi]` or `[lo,]` (unbounded above).
pub fn parse_interval(s: &str) -> Result<Interval, String> {
    let s = s.trim();
    if let Ok(v) = s.parse::<u64>() {
        return Ok(Interval::exact(v));
    }
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or("expected `n` or `[lo,hi]`")?;
    let (lo, hi) = inner.split_once(',').ok_or("expected `[lo,hi]`")?;
    let lo = lo.trim().parse::<u64>().map_err(|_| "bad lower bound")?;
    let hi = match hi.trim() {
        "" | "inf" | "∞" => None,
        h => Some(h.parse::<u64>().map_err(|_| "bad upper bound")?),
    };
    Ok(Interval::new(lo, hi))
}

/// Parses Laurent polynomial text such as `2t - 5 + 2t^-1`,
/// `2-5*t+2*t^2` or the JSON term list `[[2,-1],[-5,0],[2,1]]`.
pub fn parse_polynomial(s: &str) -> Result<LaurentPoly, String> {
    let s = s.trim();
    if s.starts_with('[') {
        return serde_json::from_str(s).map_err(|e| e.to_string());
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut terms: Vec<(i64, i64)> = Vec::new();
    let bytes = compact.as_bytes();
    let mut start = 0;
    // split before every +/- that is not an exponent sign
    let mut pieces = Vec::new();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'(' {
            pieces.push(&compact[start..i]);
            start = i;
        }
    }
    pieces.push(&compact[start..]);
    for piece in pieces {
        let (sign, body) = match piece.as_bytes()[0] {
            b'+' => (1, &piece[1..]),
            b'-' => (-1, &piece[1..]),
            _ => (1, piece),
        };
        let (coef, exp) = match body.find('t') {
            None => (body.parse::<i64>().map_err(|_| format!("bad term `{piece}`"))?, 0),
            Some(k) => {
                let c = body[..k].trim_end_matches('*');
                let c = if c.is_empty() {
                    1
                } else {
                    c.parse::<i64>().map_err(|_| format!("bad coefficient in `{piece}`"))?
                };
                let rest = &body[k + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    let e = rest.strip_prefix('^').ok_or(format!("bad term `{piece}`"))?;
                    let e = e.trim_start_matches('(').trim_end_matches(')');
                    e.parse::<i64>().map_err(|_| format!("bad exponent in `{piece}`"))?
                };
                (c, e)
            }
        };
        terms.push((sign * coef, exp));
    }
    let p = terms
        .into_iter()
        .fold(LaurentPoly::zero(), |acc, (c, e)| acc + LaurentPoly::monomial(c, e));
    if p.is_zero() {
        return Err("polynomial is zero".into());
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_lookups() {
        let s = seed_table();
        assert_eq!(s.lookup("3_1").unwrap().sigma, Some(-2));
        assert_eq!(s.lookup("4_1").unwrap().arf, Some(1));
        let u = s.lookup("unknot").unwrap();
        assert_eq!(u.invariants.g3, Some(Interval::exact(0)));
        assert_eq!(u.invariants.g4, Some(Interval::exact(0)));
        assert_eq!(u.seifert_matrix.as_ref().unwrap().dim(), 0);
        assert_eq!(s.lookup("4_1").unwrap().invariants.tau, Some(0));
        assert!(matches!(s.lookup("9_46"), Err(KnotDbError::UnknownKnot(_))));
        assert_eq!(
            s.lookup("3_1").unwrap().provenance.get("sigma"),
            Some(&Source::Computed)
        );
    }

    #[test]
    fn consistency_violation_names_fields() {
        let mut r = seed_table().lookup("4_1").unwrap().clone();
        r.sigma = Some(2);
        let err = check_consistency(&r).unwrap_err();
        assert!(matches!(&err, KnotDbError::Inconsistent { field, .. } if field == "sigma"));
        assert!(err.to_string().contains("sigma"));
        assert!(err.to_string().contains("seifert_matrix"));
    }

    #[test]
    fn polynomial_text() {
        let want = LaurentPoly::from_terms([(2, 1), (-5, 0), (2, -1)]);
        assert_eq!(parse_polynomial("2t - 5 + 2t^-1").unwrap(), want);
        assert_eq!(parse_polynomial("2*t^(-1)-5+2*t").unwrap(), want);
        assert!(parse_polynomial("2-5*t+2*t^2").unwrap().equals_up_to_unit(&want));
        assert_eq!(parse_polynomial("[[2,-1],[-5,0],[2,1]]").unwrap(), want);
        assert_eq!(parse_polynomial("-t+3-t^-1").unwrap().to_string(), "-t + 3 - t^-1");
        assert!(parse_polynomial("2x").is_err());
        assert!(parse_polynomial("t - t").is_err());
    }

    #[test]
    fn intervals() {
        assert_eq!(parse_interval("2"), Ok(Interval::exact(2)));
        assert_eq!(parse_interval("[1, 2]"), Ok(Interval::new(1, Some(2))));
        assert_eq!(parse_interval("[1,]"), Ok(Interval::at_least(1)));
        assert!(parse_interval("x").is_err());
    }

    #[test]
    fn mapping_parse() {
        let m = ColumnMapping::parse("name=Name, seifert=V ,signature=sig").unwrap();
        assert_eq!(m.columns[&Field::Seifert], "V");
        assert!(ColumnMapping::parse("seifert=V").is_err());
        assert!(matches!(
            ColumnMapping::parse("name=a,colour=b"),
            Err(KnotDbError::UnknownField(_))
        ));
    }

    #[test]
    fn store_rejects_duplicates() {
        let mut s = Store::new();
        s.insert(KnotRecord::new("k")).unwrap();
        assert!(matches!(s.insert(KnotRecord::new("k")), Err(KnotDbError::Duplicate(_))));
        s.upsert(KnotRecord::new("k")).unwrap();
        assert_eq!(s.len(), 1);
    }
}
