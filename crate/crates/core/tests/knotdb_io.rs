use std::fs;

use slicegate_core::knotdb::{
    ingest_csv, ingest_reader, seed_table, ColumnMapping, KnotDbError, Source, Store,
};
use slicegate_core::obstruct::Interval;

const FIG8_CSV: &str = "name,seifert,signature,arf\n4_1,\"[[1,1],[0,-1]]\",0,1\n";

fn basic_mapping() -> ColumnMapping {
    ColumnMapping::parse("name=name,seifert=seifert,signature=signature,arf=arf").unwrap()
}

#[test]
fn csv_row_matches_seed() {
    let out = ingest_reader(FIG8_CSV.as_bytes(), &basic_mapping()).unwrap();
    assert!(out.diagnostics.is_empty());
    let got = &out.records[0];
    let seed = seed_table().lookup("4_1").unwrap().clone();
    assert_eq!(got.seifert_matrix, seed.seifert_matrix);
    assert_eq!(got.sigma, seed.sigma);
    assert_eq!(got.arf, seed.arf);
    assert_eq!(got.alexander, seed.alexander);
    assert_eq!(got.provenance.get("sigma"), Some(&Source::Table));
    assert_eq!(got.provenance.get("alexander"), Some(&Source::Computed));
}

#[test]
fn csv_mismatch_is_a_consistency_error() {
    let csv = "name,seifert,signature,arf\n4_1,\"[[1,1],[0,-1]]\",2,1\n";
    let err = ingest_reader(csv.as_bytes(), &basic_mapping()).unwrap_err();
    let text = err.to_string();
    assert!(text.contains("row 1"), "{text}");
    assert!(text.contains("sigma") && text.contains("seifert_matrix"), "{text}");
}

#[test]
fn empty_cells_are_silent_and_bad_cells_are_reported() {
    let csv = "name,seifert,signature,arf,tau\nK,,,1,\nL,,x,,3\n";
    let m = ColumnMapping::parse("name=name,seifert=seifert,signature=signature,arf=arf,tau=tau")
        .unwrap();
    let out = ingest_reader(csv.as_bytes(), &m).unwrap();
    assert_eq!(out.records.len(), 2);
    assert_eq!(out.records[0].sigma, None);
    assert_eq!(out.records[0].arf, Some(1));
    assert_eq!(out.diagnostics.len(), 1);
    assert_eq!(out.diagnostics[0].row, 2);
    assert_eq!(out.diagnostics[0].column, "signature");
    assert_eq!(out.records[1].sigma, None);
    assert_eq!(out.records[1].invariants.tau, Some(3));
}

#[test]
fn richer_columns() {
    let csv = "Name,Alex,g4,tau,upsilon\n\
               6_1,2-5*t+2*t^2,0,0,\n\
               T,-t+3-t^-1,\"[1,2]\",1,\"[[0,0],[1,-1],[2,0]]\"\n";
    let m = ColumnMapping::parse("name=Name,alexander=Alex,g4=g4,tau=tau,upsilon=upsilon").unwrap();
    let out = ingest_reader(csv.as_bytes(), &m).unwrap();
    assert!(out.diagnostics.is_empty(), "{:?}", out.diagnostics);
    assert_eq!(out.records[0].invariants.g4, Some(Interval::exact(0)));
    assert_eq!(out.records[1].invariants.g4, Some(Interval::new(1, Some(2))));
    assert!(out.records[1].invariants.upsilon.is_some());
}

#[test]
fn missing_column_and_duplicates() {
    let m = ColumnMapping::parse("name=name,tau=tau").unwrap();
    assert!(matches!(
        ingest_reader("name\nK\n".as_bytes(), &m),
        Err(KnotDbError::MissingColumn(_))
    ));
    let m = ColumnMapping::parse("name=name").unwrap();
    assert!(ingest_reader("name\nK\nK\n".as_bytes(), &m).is_err());
}

#[test]
fn save_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("store.json");
    let store = seed_table();
    store.save(&path).unwrap();
    assert_eq!(Store::load(&path).unwrap(), store);

    let empty = dir.path().join("empty.json");
    Store::new().save(&empty).unwrap();
    assert!(Store::load(&empty).unwrap().is_empty());
}

#[test]
fn duplicate_names_in_file_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.json");
    let rec = r#"{"name":"k","sigma":0}"#;
    fs::write(&path, format!(r#"{{"format_version":1,"records":[{rec},{rec}]}}"#)).unwrap();
    assert!(matches!(Store::load(&path), Err(KnotDbError::Duplicate(_))));
    fs::write(&path, r#"{"format_version":9,"records":[]}"#).unwrap();
    assert!(matches!(Store::load(&path), Err(KnotDbError::FormatVersion(9))));
}

#[test]
fn ingest_save_load_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("table.csv");
    fs::write(&csv, FIG8_CSV.replace("4_1", "fig8")).unwrap();
    let mut store = seed_table();
    for r in ingest_csv(&csv, &basic_mapping()).unwrap().records {
        store.upsert(r).unwrap();
    }
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    store.save(&first).unwrap();
    Store::load(&first).unwrap().save(&second).unwrap();
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn stored_values_agree_with_matrices() {
    use slicegate_core::seifert;
    for r in seed_table().records() {
        if let Some(v) = &r.seifert_matrix {
            assert_eq!(r.sigma, Some(seifert::signature(v)));
            assert_eq!(r.arf, Some(seifert::arf(v).unwrap()));
            assert!(r.alexander.as_ref().unwrap().equals_up_to_unit(&seifert::alexander(v)));
        }
    }
}
