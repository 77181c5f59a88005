use std::collections::BTreeSet;

use parkfn::parking::is_parking_function;
use parkfn::trees::{prufer_decode, prufer_encode, prufer_to_pf_circular, tree_to_pf_bfs};
use serde_json::Value;

fn rows() -> Vec<Value> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/table1.json");
    let text = std::fs::read_to_string(path).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn vec_of(v: &Value, key: &str) -> Vec<usize> {
    v[key].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect()
}

#[test]
fn every_row_reproduces() {
    let rows = rows();
    assert_eq!(rows.len(), 16);
    for row in &rows {
        let code = vec_of(row, "code");
        let tree = prufer_decode(&code, 3).unwrap();
        assert_eq!(tree.parents(), vec_of(row, "parents").as_slice(), "code {code:?}");
        assert_eq!(prufer_encode(&tree), code);
        assert_eq!(prufer_to_pf_circular(&code), vec_of(row, "circular"), "code {code:?}");
        assert_eq!(tree_to_pf_bfs(&tree), vec_of(row, "bfs"), "code {code:?}");
    }
}

#[test]
fn columns_are_bijections_onto_pf3() {
    let rows = rows();
    for key in ["pollak", "circular", "bfs"] {
        let col: BTreeSet<Vec<usize>> = rows.iter().map(|r| vec_of(r, key)).collect();
        assert_eq!(col.len(), 16, "{key}");
        assert!(col.iter().all(|p| is_parking_function(p)), "{key}");
    }
}

#[test]
fn spot_checks() {
    let star = prufer_decode(&[0, 0], 3).unwrap();
    assert_eq!(tree_to_pf_bfs(&star), vec![1, 1, 1]);
    let path = prufer_decode(&[1, 3], 3).unwrap();
    assert_eq!(tree_to_pf_bfs(&path), vec![1, 3, 2]);
    assert_eq!(tree_to_pf_bfs(&prufer_decode(&[2, 3], 3).unwrap()), vec![3, 1, 2]);
}
