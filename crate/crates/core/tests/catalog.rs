use std::path::PathBuf;

use nilalg::catalog::{export_files, parameter_samples, ENTRIES};
use nilalg::{FieldSpec, Scalar, DEFAULT_SEED};

#[test]
fn committed_catalog_matches_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
    for (rel, body) in export_files().unwrap() {
        let on_disk = std::fs::read_to_string(dir.join(&rel)).unwrap_or_else(|e| panic!("{rel}: {e}"));
        assert_eq!(on_disk, body, "{rel} is stale; rerun `nilalg export`");
    }
}

#[test]
fn six_dimensional_entries_have_distinct_fingerprints() {
    let f = FieldSpec::Rational;
    let mut seen = Vec::new();
    for e in ENTRIES.iter().filter(|e| e.dim == 6) {
        let params: Vec<Option<Scalar>> = match e.param {
            Some(_) => parameter_samples(f).into_iter().map(Some).collect(),
            None => vec![None],
        };
        for p in params {
            let fp = e.build(f, p.as_ref()).unwrap().fingerprint(DEFAULT_SEED);
            seen.push((e.name, p.map(|x| x.literal()), fp));
        }
    }
    for (i, (a, pa, fa)) in seen.iter().enumerate() {
        for (b, pb, fb) in &seen[i + 1..] {
            if a != b {
                assert_ne!(fa, fb, "{a} {pa:?} vs {b} {pb:?}");
            }
        }
    }
}
