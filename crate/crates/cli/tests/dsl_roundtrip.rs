//! parse(print(doc)) must reproduce every corpus file, and printing is a
//! fixpoint.

use std::fs;
use std::path::PathBuf;

use f1_cli::dsl::{parse, print_document};

fn fixture_dir() -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p
}

#[test]
fn every_fixture_round_trips() {
    let mut seen = 0;
    for entry in fs::read_dir(fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("f1") {
            continue;
        }
        seen += 1;
        let text = fs::read_to_string(&path).unwrap();
        let doc = parse(&text).unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
        let printed = print_document(&doc);
        let reparsed = parse(&printed)
            .unwrap_or_else(|e| panic!("{} (printed): {}", path.display(), e));
        assert_eq!(
            print_document(&reparsed),
            printed,
            "printing is not a fixpoint for {}",
            path.display()
        );
    }
    assert!(seen >= 4, "fixture corpus went missing");
}

#[test]
fn printed_blueprints_preserve_semantics() {
    let text = fs::read_to_string(fixture_dir().join("sl2.f1")).unwrap();
    let doc = parse(&text).unwrap();
    let printed = print_document(&doc);
    let again = parse(&printed).unwrap();
    let b1 = doc.definitions[0].1.as_blueprint().unwrap();
    let b2 = again.definitions[0].1.as_blueprint().unwrap();
    assert_eq!(
        f1_core::blueprint::prime_k_ideals(&b1).unwrap(),
        f1_core::blueprint::prime_k_ideals(&b2).unwrap()
    );
}
