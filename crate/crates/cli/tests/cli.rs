use std::fs;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;

use concept_cli::format::{
    parse_csv, parse_cxt, parse_json, parse_morphism, write_csv, write_cxt, write_json, write_morphism, Morphism,
};
use concept_cli::{dot::emit_dot, run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use concept_core::{Bond, Classification, ConceptLattice, FunctionalInfomorphism, Relation};
use serde_json::Value;

const K1: &str = "B\n\n2\n2\n\n1\n2\na\nb\nX.\nXX\n";

fn k1() -> Classification {
    Classification::from_labels(&["1", "2"], &["a", "b"], Relation::from_matrix(&[[1, 0], [1, 1]])).unwrap()
}

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn concept(args: &[&str], stdin: &str) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("concept").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn cxt_example_parses_to_k1() {
    assert_eq!(parse_cxt(K1).unwrap(), k1());
}

#[test]
fn cxt_without_name_line_and_with_crlf() {
    assert_eq!(parse_cxt("B\n2\n2\n\n1\n2\na\nb\nX.\nXX\n").unwrap(), k1());
    assert_eq!(parse_cxt(&K1.replace('\n', "\r\n")).unwrap(), k1());
    let named = parse_cxt("B\nsome name\n2\n2\n\n1\n2\na\nb\nX.\nXX\n").unwrap();
    assert_eq!(named, k1());
}

#[test]
fn empty_cxt_is_empty_classification() {
    let k = parse_cxt("B\n\n0\n0\n\n").unwrap();
    assert_eq!((k.num_instances(), k.num_types()), (0, 0));
    assert_eq!(parse_cxt(&write_cxt(&k)).unwrap(), k);
}

#[test]
fn cxt_errors_carry_line_numbers() {
    let bad_char = parse_cxt("B\n\n2\n2\n\n1\n2\na\nb\nX.\nXY\n").unwrap_err();
    assert_eq!(bad_char.line, Some(11));
    assert!(bad_char.message.contains("'Y'"));
    assert_eq!(parse_cxt("A\n").unwrap_err().line, Some(1));
    assert_eq!(parse_cxt("B\n\nx\n2\n").unwrap_err().line, Some(3));
    let short = parse_cxt("B\n\n2\n2\n\n1\n2\na\nb\nX\nXX\n").unwrap_err();
    assert_eq!(short.line, Some(10));
    assert!(parse_cxt("B\n\n2\n2\n\n1\n2\na\n").unwrap_err().line.is_some());
}

#[test]
fn csv_matches_cxt() {
    let csv = ",a,b\n1,1,0\n2,1,1\n";
    assert_eq!(parse_csv(csv).unwrap(), parse_cxt(K1).unwrap());
    assert_eq!(write_csv(&k1()), csv);
    let err = parse_csv(",a,b\n1,1,2\n").unwrap_err();
    assert_eq!(err.line, Some(2));
    assert_eq!(parse_csv(",a\n1,1,0\n").unwrap_err().line, Some(2));
}

#[test]
fn csv_edge_shapes_round_trip() {
    for (n, m) in [(0, 0), (0, 2), (2, 0), (1, 1)] {
        let k = Classification::unlabelled(Relation::full(n, m));
        assert_eq!(parse_csv(&write_csv(&k)).unwrap(), k, "{n}x{m}");
    }
}

#[test]
fn json_schema_and_round_trip() {
    let text = write_json(&k1());
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["incidence", "instances", "types"]);
    assert!(text.find("instances").unwrap() < text.find("types").unwrap());
    assert!(text.find("types").unwrap() < text.find("incidence").unwrap());
    assert_eq!(v["incidence"], serde_json::json!([[1, 0], [1, 1]]));
    assert_eq!(parse_json(&text).unwrap(), k1());
    assert!(parse_json(r#"{"instances":["x"],"types":["a"],"incidence":[[2]]}"#).is_err());
    assert!(parse_json(r#"{"instances":["x"],"types":["a"],"incidence":[]}"#).is_err());
}

#[test]
fn dot_counts() {
    let count = |k: &Classification| {
        let dot = emit_dot(&ConceptLattice::build(k).unwrap());
        (dot.matches(" [label=").count(), dot.matches(" -> ").count())
    };
    assert_eq!(count(&k1()), (2, 1));
    assert_eq!(count(&Classification::unlabelled(Relation::full(1, 1))), (1, 0));
    assert_eq!(count(&Classification::contranominal(3)), (8, 12));
}

#[test]
fn dot_uses_reduced_labelling() {
    let dot = emit_dot(&ConceptLattice::build(&k1()).unwrap());
    assert!(dot.contains("c0 [label=\"a\\n1\"]"));
    assert!(dot.contains("c1 [label=\"b\\n2\"]"));
    assert!(dot.contains("c1 -> c0;"));
}

#[test]
fn lattice_command_reports_two_concepts() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "K1.cxt", K1);
    let o = concept(&["lattice", &path], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["concepts"].as_array().unwrap().len(), 2);
    assert_eq!(v["covers"], serde_json::json!([[1, 0]]));
    let dot = concept(&["lattice", "--dot", &path], "");
    assert!(dot.out.starts_with("digraph"));
}

#[test]
fn stdin_is_accepted_for_contexts() {
    let o = concept(&["lattice", "-"], K1);
    assert_eq!(o.code, EXIT_OK);
    let csv = concept(&["dual", "-", "--format", "csv"], ",a,b\n1,1,0\n2,1,1\n");
    assert_eq!(csv.out, ",1,2\na,1,1\nb,0,1\n");
    let twice = concept(&["sum", "-", "-"], K1);
    assert_eq!(twice.code, EXIT_USAGE);
}

#[test]
fn parse_errors_exit_with_usage_code() {
    let o = concept(&["lattice", "-"], "B\n\n1\n1\n\nx\na\nY\n");
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.err.contains("line 8"), "{}", o.err);
    assert_eq!(concept(&["lattice", "/nonexistent/file.cxt"], "").code, EXIT_USAGE);
    assert_eq!(concept(&["frobnicate"], "").code, EXIT_USAGE);
    assert_eq!(concept(&["check", "bond"], "").code, EXIT_USAGE);
}

#[test]
fn check_identity_bond_passes_and_broken_bond_fails() {
    let dir = tempfile::tempdir().unwrap();
    let k = Arc::new(k1());
    let id = write(dir.path(), "id.json", &write_morphism(&Bond::identity(k.clone()).into()));
    let o = concept(&["check", "bond", &id], "");
    assert_eq!(o.code, EXIT_OK, "{}{}", o.out, o.err);
    assert!(o.out.ends_with(": pass\n"));

    // Row 0 = {b} is not an intent of K1.
    let broken = Bond::unchecked(k.clone(), k.clone(), Relation::from_matrix(&[[0, 1], [1, 1]])).unwrap();
    let bad = write(dir.path(), "bad.json", &write_morphism(&broken.into()));
    let o = concept(&["check", "bond", "--json", &id, &bad], "");
    assert_eq!(o.code, EXIT_CHECK_FAILED);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v[0]["verdict"], "pass");
    assert_eq!(v[1]["verdict"], "fail");
    assert_eq!(v[1]["witness"]["kind"], "bond-row");
    assert_eq!(v[1]["witness"]["target_instance"], "1");

    assert_eq!(concept(&["check", "infomorphism", &id], "").code, EXIT_USAGE);
}

#[test]
fn check_infomorphisms() {
    let dir = tempfile::tempdir().unwrap();
    let k = Arc::new(k1());
    let id = FunctionalInfomorphism::identity(k.clone());
    let good = write(dir.path(), "id.json", &write_morphism(&id.clone().into()));
    assert_eq!(concept(&["check", "infomorphism", &good], "").code, EXIT_OK);
    let rel = write(dir.path(), "rel.json", &write_morphism(&id.to_relational().unwrap().into()));
    assert_eq!(concept(&["check", "relational", &rel], "").code, EXIT_OK);

    // Swapping the types breaks the fundamental property.
    let swapped = r#"{"kind":"infomorphism","source":{"instances":["1","2"],"types":["a","b"],"incidence":[[1,0],[1,1]]},
        "target":{"instances":["1","2"],"types":["a","b"],"incidence":[[1,0],[1,1]]},
        "data":{"instance_map":["1","2"],"type_map":["b","a"]}}"#;
    let bad = write(dir.path(), "bad.json", swapped);
    let o = concept(&["check", "infomorphism", "--json", &bad], "");
    assert_eq!(o.code, EXIT_CHECK_FAILED);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v[0]["witness"]["kind"], "fundamental-property");
    assert_eq!(v[0]["witness"]["target_instance"], "1");
    assert_eq!(v[0]["witness"]["source_type"], "a");
}

#[test]
fn check_bonding_pair() {
    let dir = tempfile::tempdir().unwrap();
    let k = Arc::new(k1());
    let id = Bond::identity(k.clone());
    let pair = concept_core::BondingPair::identity(k.clone());
    let good = write(dir.path(), "pair.json", &write_morphism(&pair.into()));
    assert_eq!(concept(&["check", "bonding-pair", &good], "").code, EXIT_OK);
    let full = Bond::new(k.clone(), k.clone(), Relation::full(2, 2)).unwrap();
    let bad = write(dir.path(), "bad.json", &write_morphism(&Morphism::BondingPair(id, full)));
    let o = concept(&["check", "bonding-pair", "--json", &bad], "");
    assert_eq!(o.code, EXIT_CHECK_FAILED);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v[0]["witness"]["kind"], "pairing-constraint");
}

#[test]
fn compose_bonds_and_infomorphisms() {
    let dir = tempfile::tempdir().unwrap();
    let k = Arc::new(k1());
    let f = Bond::generate(k.clone(), k.clone(), &Relation::from_matrix(&[[0, 0], [1, 0]])).unwrap();
    let id = write(dir.path(), "id.json", &write_morphism(&Bond::identity(k.clone()).into()));
    let fp = write(dir.path(), "f.json", &write_morphism(&f.clone().into()));
    let o = concept(&["compose", "bonds", &id, &fp, &id], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    match parse_morphism(&o.out).unwrap() {
        Morphism::Bond(b) => assert_eq!(b.rel(), f.rel()),
        other => panic!("{other:?}"),
    }

    let eta = FunctionalInfomorphism::instance_infomorphism(k.clone()).unwrap();
    let e = write(dir.path(), "eta.json", &write_morphism(&eta.clone().into()));
    let i = write(dir.path(), "i.json", &write_morphism(&FunctionalInfomorphism::identity(k.clone()).into()));
    let o = concept(&["compose", "infos", &i, &e], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    match parse_morphism(&o.out).unwrap() {
        Morphism::Infomorphism(m) => assert_eq!(m, eta),
        other => panic!("{other:?}"),
    }
    assert_eq!(concept(&["compose", "infos", &e, &i], "").code, EXIT_USAGE);
    assert_eq!(concept(&["compose", "bonds", &id, &e], "").code, EXIT_USAGE);
}

#[test]
fn constructions() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "K1.cxt", K1);
    let get = |args: &[&str]| {
        let o = concept(args, "");
        assert_eq!(o.code, EXIT_OK, "{args:?}: {}", o.err);
        parse_json(&o.out).unwrap()
    };
    let s = get(&["sum", &p, &p]);
    assert_eq!((s.num_instances(), s.num_types()), (4, 4));
    let a = get(&["appose", &p, &p]);
    assert_eq!((a.num_instances(), a.num_types()), (2, 4));
    let b = get(&["subpose", &p, &p]);
    assert_eq!((b.num_instances(), b.num_types()), (4, 2));
    let pr = get(&["product", &p, &p]);
    assert_eq!((pr.num_instances(), pr.num_types()), (4, 4));
    let d = get(&["dual", &p]);
    assert_eq!(d, k1().dual());
    let ps = get(&["powerset", "x", "y,z"]);
    assert_eq!((ps.num_instances(), ps.num_types()), (3, 8));

    let o = concept(&["sum", &p, &p, "--diagram"], "");
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["injections"].as_array().unwrap().len(), 2);
    assert_eq!(v["injections"][0]["kind"], "infomorphism");
    let side = write(dir.path(), "side.json", r#"{"instances":["1","2"],"types":["c"],"incidence":[[0],[1]]}"#);
    let a = get(&["appose", &p, &side]);
    assert_eq!(a.types(), ["0:a", "0:b", "1:c"]);
    let chain = write(dir.path(), "chain.json", &write_json(&Classification::chain(3)));
    assert_eq!(concept(&["appose", &p, &chain], "").code, EXIT_USAGE);
}

#[test]
fn quotient_examples() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "K1.cxt", K1);
    let kept2 = write(dir.path(), "j2.json", r#"{"kept_instances":["2"],"type_relation":[["a","b"]]}"#);
    let o = concept(&["quotient", &p, &kept2], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    let q = parse_json(&o.out).unwrap();
    assert_eq!((q.num_instances(), q.num_types()), (1, 1));
    assert!(q.classifies(0, 0));
    assert_eq!(q.types(), ["[a,b]"]);

    let both = write(dir.path(), "j.json", r#"{"kept_instances":["1","2"],"type_relation":[["a","b"]]}"#);
    let o = concept(&["quotient", &p, &both], "");
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.err.contains(r#"instance "1" separates types "a" and "b""#), "{}", o.err);

    let o = concept(&["quotient", &p, &kept2, "--diagram"], "");
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["projection"]["kind"], "infomorphism");
}

#[test]
fn verify_equivalences_is_deterministic() {
    let args = ["verify-equivalences", "--max-size", "3", "--seed", "7"];
    let first = concept(&args, "");
    assert_eq!(first.code, EXIT_OK, "{}", first.out);
    assert!(first.out.ends_with("checks)\n"));
    assert!(first.out.contains("result: pass"));
    assert_eq!(first.out, concept(&args, "").out);

    let empty = concept(&["verify-equivalences", "--max-size", "0"], "");
    assert_eq!(empty.code, EXIT_OK);
    assert!(empty.out.contains("no coverage"));
}

#[test]
fn verify_equivalences_reports_injected_bug() {
    let o = concept(&["verify-equivalences", "--max-size", "2", "--samples", "4", "--inject-bug", "--json"], "");
    assert_eq!(o.code, EXIT_CHECK_FAILED);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["verdict"], "fail");
    let failures: Vec<&Value> = v["entries"].as_array().unwrap().iter().filter(|e| e["verdict"] == "fail").collect();
    assert!(!failures.is_empty());
    assert!(failures.iter().all(|e| e["witness"].is_string()));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_concept");
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "K1.cxt", K1);
    let ok = Command::new(bin).args(["lattice", &p]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let usage = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&help.stdout).contains("verify-equivalences"));
}
