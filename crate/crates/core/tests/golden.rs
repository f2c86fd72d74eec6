//! Regression against stored anti-diagonal records for d <= 4. Regenerate
//! with `COVERTQFT_UPDATE_GOLDEN=1 cargo test --test golden`.

use std::path::PathBuf;

use covertqft::partitions::Partition;
use covertqft::theoryu::{InvariantKey, InvariantRecord};
use serde_json::{json, Value};

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/antid_d1-4.json")
}

fn strip(r: &InvariantRecord) -> Value {
    json!({"key": r.key, "s_exponent": r.s_exponent, "sign": r.sign, "q_rational": r.q_rational})
}

fn current() -> Value {
    let mut closed = Vec::new();
    let mut open = Vec::new();
    for d in 1..=4 {
        for g in 0..=2 {
            for k1 in -1..=1 {
                for k2 in -1..=1 {
                    closed.push(strip(&InvariantRecord::closed(d, g, k1, k2, None).unwrap()));
                }
            }
        }
        let row = Partition::row(d);
        let col = Partition::column(d);
        for (inputs, outputs) in [(vec![row.clone()], vec![]), (vec![col.clone()], vec![row.clone()]), (vec![], vec![col, row])] {
            let key = InvariantKey { d, g: 0, k1: -1, k2: 0, inputs, outputs };
            open.push(strip(&InvariantRecord::from_engine(key, None).unwrap()));
        }
    }
    let meta = InvariantRecord::closed(2, 0, 0, 0, None).unwrap().convention_metadata;
    json!({"convention": meta["convention"], "closed": closed, "with_boundary": open})
}

#[test]
fn antid_records_match_golden() {
    let now = current();
    let path = golden_path();
    if std::env::var_os("COVERTQFT_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&now).unwrap() + "\n").unwrap();
    }
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(stored["convention"], now["convention"]);
    for part in ["closed", "with_boundary"] {
        let (a, b) = (stored[part].as_array().unwrap(), now[part].as_array().unwrap());
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert_eq!(x, y);
        }
    }
}

#[test]
fn golden_spot_values() {
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(golden_path()).unwrap()).unwrap();
    let first = &stored["closed"][0];
    // d = 1, g = 0, levels (-1,-1): a single sheet, no s dependence
    assert_eq!(first["key"]["d"], 1);
    assert_eq!(first["s_exponent"], 0);
    assert_eq!(first["q_rational"], "1");
    // d = 2, g = 0, levels (0,-1): the gluing witness 1/(2 s^2)
    let w = &stored["closed"][27 + 3];
    assert_eq!((w["key"]["d"].clone(), w["key"]["k1"].clone(), w["key"]["k2"].clone()), (json!(2), json!(0), json!(-1)));
    assert_eq!((w["s_exponent"].clone(), w["sign"].clone(), w["q_rational"].clone()), (json!(-2), json!("1"), json!("1/2")));
}
