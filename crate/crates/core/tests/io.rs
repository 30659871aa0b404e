use sympshare::io::*;
use sympshare::rs::{build_strong_rs, RsParams};
use sympshare::Error;

#[test]
fn file_roundtrip_preserves_access_structure() {
    let s = build_strong_rs(&RsParams::new(5, 2, 1).unwrap()).unwrap();
    let path = std::env::temp_dir().join(format!("sympshare-io-{}.json", std::process::id()));
    std::fs::write(&path, scheme_to_json(&s)).unwrap();
    let back = scheme_from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(back, s);
    for a in sympshare::IndexSet::all_subsets(5) {
        assert_eq!(back.info_dim(a).unwrap(), s.info_dim(a).unwrap());
    }
}

#[test]
fn rejects_non_isotropic_randomness_code() {
    let text = r#"{"field":{"p":3,"m":1,"modulus":[0,1]},"n":2,"c_s":[],"c_r":[[1,0,0,0],[0,0,1,0]]}"#;
    let e = scheme_from_json(text);
    assert!(matches!(e, Err(Error::NestingViolated(_))), "{e:?}");
}

#[test]
fn rejects_bad_field() {
    let text = r#"{"field":{"p":6,"m":1,"modulus":[0,1]},"n":1,"c_s":[],"c_r":[]}"#;
    assert!(scheme_from_json(text).is_err());
}
