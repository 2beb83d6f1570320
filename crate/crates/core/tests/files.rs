use std::path::Path;

use omtope::cycles::{distinguished_cycle, find_symmetric_cycle, SymmetricCycle, DEFAULT_BUDGET};
use omtope::instances::{
    generic_arrangement, hypercube_instance, OMInstance, Source, DEFAULT_CAP, DEFAULT_COORD_BOUND,
};
use omtope::{Error, SignVector};

#[test]
fn instance_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (g, inst) = generic_arrangement(3, 5, 11, DEFAULT_COORD_BOUND, DEFAULT_CAP).unwrap();
    let path = dir.path().join("a.json");
    inst.save(&path).unwrap();
    let back = OMInstance::load(&path).unwrap();
    assert_eq!(back, inst);
    assert_eq!(back.source(), &Source::Realizable(g));
    assert_eq!(back.digest(), inst.digest());
}

#[test]
fn malformed_instances_report_lines() {
    let p = Path::new("x.json");
    let dup = "{\n  \"n\": 2,\n  \"source\": \"hypercube\",\n  \"topes\": [\n    \"++\",\n    \"++\"\n  ]\n}\n";
    match OMInstance::from_json(dup, p) {
        Err(Error::Malformed { line, .. }) => assert_eq!(line, 6),
        other => panic!("{other:?}"),
    }
    let bad_char = "{\"n\": 2, \"topes\": [\"+x\"]}";
    assert!(matches!(
        OMInstance::from_json(bad_char, p),
        Err(Error::Malformed { .. })
    ));
    let not_json = "{\"n\": 2,";
    assert!(matches!(
        OMInstance::from_json(not_json, p),
        Err(Error::Malformed { .. })
    ));
}

#[test]
fn missing_source_means_file() {
    let text = "{\"n\": 1, \"topes\": [\"+\", \"-\"]}";
    let inst = OMInstance::from_json(text, Path::new("one.json")).unwrap();
    assert_eq!(inst.source(), &Source::File("one.json".into()));
    // the digest ignores the source
    assert_eq!(inst.digest(), hypercube_instance(1).unwrap().digest());
}

#[test]
fn cycle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cube = hypercube_instance(4).unwrap();
    let c = distinguished_cycle(&cube, &"+--+".parse().unwrap(), &[3, 1, 4, 2]).unwrap();
    let path = dir.path().join("c.json");
    c.save(&path).unwrap();
    assert_eq!(SymmetricCycle::load(&path, &cube).unwrap(), c);

    let (_, arr) = generic_arrangement(3, 6, 1, DEFAULT_COORD_BOUND, DEFAULT_CAP).unwrap();
    let c = find_symmetric_cycle(&arr, &arr.topes()[5], DEFAULT_BUDGET)
        .unwrap()
        .unwrap();
    c.save(&path).unwrap();
    assert_eq!(SymmetricCycle::load(&path, &arr).unwrap(), c);
    assert!(matches!(
        SymmetricCycle::load(&path, &cube),
        Err(Error::Validation(_))
    ));
}

#[test]
fn cycle_file_shape() {
    let cube = hypercube_instance(2).unwrap();
    let c = distinguished_cycle(&cube, &SignVector::all_plus(2).unwrap(), &[1, 2]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&c.to_json().unwrap()).unwrap();
    assert_eq!(v["instance_digest"], cube.digest());
    assert_eq!(v["vertices"], serde_json::json!(["++", "-+", "--", "+-"]));
}
