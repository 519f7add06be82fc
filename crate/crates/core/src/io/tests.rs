use super::*;
use crate::algebra::s3_algebra;

fn round_trip(ws: &Workspace) -> Workspace {
    let text = serde_json::to_string_pretty(&ws.to_file()).unwrap();
    let mut again = Workspace::default();
    let reports = again.add_file(&parse_workspace(&text).unwrap()).unwrap();
    assert!(reports.iter().all(|r| r.pass));
    again
}

#[test]
fn algebra_round_trip() {
    let mut ws = Workspace::default();
    let def = AlgebraDef::from_algebra(&s3_algebra().renamed("G"));
    assert_eq!(def.labels.as_ref().unwrap()[1], s3_algebra().label(1));
    ws.add_file(&WorkspaceFile {
        algebras: vec![def.clone()],
        ..Default::default()
    })
    .unwrap();
    let again = round_trip(&ws);
    assert_eq!(again.algebras["G"], ws.algebras["G"]);
    assert_eq!(AlgebraDef::from_algebra(&again.algebras["G"]), def);
}

#[test]
fn bimodule_and_map_round_trip() {
    let mut ws = Workspace::default();
    let v = library::module("Vstd").unwrap().renamed("V");
    let f = BimoduleMap::identity(&v).scaled(&Scalar::ratio(-1, 2));
    let file = WorkspaceFile {
        bimodules: vec![BimoduleDef::from_bimodule(&v)],
        maps: vec![MapDef::from_map("f", &f)],
        ..Default::default()
    };
    assert!(ws.add_file(&file).unwrap().iter().all(|r| r.pass));
    let again = round_trip(&ws);
    assert_eq!(again.bimodules["V"].left_action(), v.left_action());
    assert_eq!(again.maps["f"].matrix, f.matrix);
    assert_eq!(again.maps["f"].matrix[(0, 0)].to_string(), "-1/2");
}

#[test]
fn schema_shape() {
    let def = AlgebraDef::from_algebra(&library::algebra("QC2").unwrap());
    let v = serde_json::to_value(&def).unwrap();
    assert_eq!(v["field"], "Q");
    assert_eq!(v["structure"][0], serde_json::json!([0, 0, 0, "1"]));
    assert!(v.get("labels").is_some());
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let text = r#"{"name":"bad","field":"Q","dim":1,"unit":["1/0"],"structure":[[0,0,0,"1"]]}"#;
    let file = parse_workspace(text).unwrap();
    let err = Workspace::default().add_file(&file).unwrap_err();
    assert!(matches!(err, Error::Parse(ref m) if m.contains("unit[0]")), "{err}");
}

#[test]
fn non_associative_structure_is_reported() {
    // (e1·e1)·e1 = e2·e1 = 0 but e1·(e1·e1) = e1·e2 = e1
    let text = r#"{"name":"na","field":"Q","dim":3,"unit":["1","0","0"],
        "structure":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[0,2,2,"1"],[2,0,2,"1"],[1,1,2,"1"],[1,2,1,"1"]]}"#;
    let mut ws = Workspace::default();
    let reports = ws.add_file(&parse_workspace(text).unwrap()).unwrap();
    assert!(!reports[0].pass);
    assert!(reports[0].failures().iter().any(|f| f.contains("associativity fails at")));
    assert!(ws.algebras.is_empty());
}

#[test]
fn duplicate_names_are_rejected() {
    let def = AlgebraDef::from_algebra(&library::algebra("QC2").unwrap().renamed("A"));
    let file = WorkspaceFile {
        algebras: vec![def.clone(), def],
        ..Default::default()
    };
    assert!(matches!(Workspace::default().add_file(&file), Err(Error::Parse(_))));
}

#[test]
fn non_intertwining_map_fails_validation() {
    let mut ws = Workspace::default();
    let m = MapDef {
        name: "bad".into(),
        src: "Vstd".into(),
        dst: "Vstd".into(),
        matrix: vec![vec!["1".into(), "0".into()], vec!["0".into(), "2".into()]],
    };
    let reports = ws
        .add_file(&WorkspaceFile {
            maps: vec![m],
            ..Default::default()
        })
        .unwrap();
    assert!(!reports[0].pass);
    assert!(ws.maps.is_empty());
}

#[test]
fn library_fallback_over_finite_field() {
    let ws = Workspace {
        field: parse_field("GF5").unwrap(),
        ..Default::default()
    };
    assert_eq!(ws.algebra("QS3").unwrap().field(), Field::GF(5));
    let v = ws.bimodule("Vstd").unwrap();
    assert!(validate_bimodule(&v).pass);
    assert!(parse_field("GF4").is_err());
    assert_eq!(parse_field("GF(7)").unwrap(), Field::GF(7));
}

#[test]
fn single_object_files() {
    let text = serde_json::to_string(&BimoduleDef::from_bimodule(&library::module("Vsign").unwrap().renamed("S"))).unwrap();
    let file = parse_workspace(&text).unwrap();
    assert_eq!(file.bimodules.len(), 1);
    assert!(parse_workspace("[1]").is_err());
}
