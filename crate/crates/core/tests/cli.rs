use std::io::Write;

use klr::cli::{run, EXIT_CONFIG, EXIT_OK};
use klr::fshuffle::Character;
use klr::qring::{LaurentPoly, RatFn};
use klr::rootdata::Quiver;
use serde_json::Value;

fn klr(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let full: Vec<&str> = std::iter::once("klr").chain(args.iter().copied()).collect();
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn shuffle_output() {
    let (code, out, _) = klr(&["--type", "A2", "shuffle", "1", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "12 : 1\n21 : q\n");
}

#[test]
fn canonical_basis_a2() {
    let (code, out, _) = klr(&["--type", "A2", "--alpha", "1,1", "canonical-basis"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("b  = r[11] + (q)*r[01,10]"), "{out}");
    assert!(out.contains("b* = 12"));
    assert!(out.contains("b* = 21"));
    let (_, tsv, _) = klr(&["--type", "A2", "--alpha", "1,1", "p-matrix", "--format", "tsv"]);
    assert_eq!(tsv, "lambda\\mu\t11\t01,10\n11\t1\t0\n01,10\tq\t1\n");
}

#[test]
fn verify_affine_reports_inner_product() {
    let (code, out, _) = klr(&["--type", "A1~", "--alpha", "1,1", "verify"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("PASS inner-product L(01): (-q^2 + 1)/(q^2 + 1)"), "{out}");
}

#[test]
fn verify_finite_full() {
    let (code, out, _) = klr(&["--type", "A3", "--alpha", "1,1,1", "--verify-level", "full", "verify"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(!out.contains("FAIL"));
    assert!(out.contains("PASS homogeneous-irreducibles: 4 classes"));
}

#[test]
fn quiver_file_and_errors() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"vertices": ["a", "b"], "edges": [["a", "b", 1]]}}"#).unwrap();
    let path = file.path().to_str().unwrap();
    let (code, out, _) = klr(&["--quiver", path, "shuffle", "a", "b"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "ab : 1\nba : q\n");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "{{not json").unwrap();
    let (code, _, err) = klr(&["--quiver", bad.path().to_str().unwrap(), "roots"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("malformed quiver"));

    assert_eq!(klr(&["--type", "A2", "--w0", "1,1,2", "roots"]).0, EXIT_CONFIG);
    assert_eq!(klr(&["--type", "A1~", "--alpha", "1,1", "p-matrix"]).0, EXIT_CONFIG);
    assert_eq!(klr(&["--type", "A2", "canonical-basis"]).0, EXIT_CONFIG);
    assert_eq!(klr(&["--type", "A2", "--alpha", "1,-1", "words"]).0, EXIT_CONFIG);
    assert_eq!(klr(&["--type", "Q9", "roots"]).0, EXIT_CONFIG);
    assert_eq!(klr(&["--type", "A2", "frobnicate"]).0, EXIT_CONFIG);
}

#[test]
fn custom_w0() {
    let (code, out, _) = klr(&["--type", "A2", "--w0", "2,1,2", "roots", "--format", "tsv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "position\troot\tname\n1\t01\tα2\n2\t11\tα1+α2\n3\t10\tα1\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["--type", "D4", "--alpha", "1,2,1,1", "characters", "--format", "json"];
    let first = klr(&args);
    assert_eq!(first.0, EXIT_OK);
    for _ in 0..3 {
        assert_eq!(klr(&args), first);
    }
}

#[test]
fn json_round_trips() {
    let q = Quiver::type_a(3);
    let (_, out, _) = klr(&["--type", "A3", "--alpha", "1,1,1", "characters", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let blocks = v.as_array().unwrap();
    assert_eq!(blocks.len(), 4);
    for b in blocks {
        for key in ["standard", "irreducible"] {
            let ch = Character::from_json(&q, &b[key]).unwrap();
            assert_eq!(ch.to_json(&q), b[key]);
        }
        for p in b["decomposition"].as_object().unwrap().values() {
            let s = p.as_str().unwrap();
            assert_eq!(s.parse::<LaurentPoly>().unwrap().to_string(), s);
        }
    }
    let (_, out, _) = klr(&["--type", "A2", "--alpha", "1,1", "gram", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    for row in v.as_object().unwrap().values() {
        for s in row.as_object().unwrap().values() {
            let s = s.as_str().unwrap();
            assert_eq!(s.parse::<RatFn>().unwrap().to_string(), s);
        }
    }
}

#[test]
fn words_and_help() {
    let (code, out, _) = klr(&["--type", "A2", "--alpha", "2,1", "words"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "112\n121\n211\n");
    let (code, out, _) = klr(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("canonical-basis"));
}
