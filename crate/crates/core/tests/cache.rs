use truncwitt::truncation::TruncationSet;
use truncwitt::witt::universal::{recompute_polys, universal_polys, Op};

#[test]
fn tables_persist_under_cache_dir() {
    let dir = std::env::temp_dir().join(format!("truncwitt-cache-{}", std::process::id()));
    std::env::set_var("WITT_CACHE_DIR", &dir);
    let set = TruncationSet::interval(6);
    let cached = universal_polys(&set, Op::Product).unwrap();
    for k in 1..=6 {
        let file = dir.join(format!("product-{k}.json"));
        let text = std::fs::read_to_string(&file).unwrap_or_else(|_| panic!("missing {file:?}"));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["point"], k);
    }
    assert_eq!(cached, recompute_polys(&set, Op::Product).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}
