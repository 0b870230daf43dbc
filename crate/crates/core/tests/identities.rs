use su11poly::kernels::{
    check_identity, closed_form, default_grid, grid_check, parse_grid, random_grid, series_side,
    IdentityId, Params, Truncation, REGISTRY,
};
use su11poly::Error;

#[test]
fn every_identity_has_a_registry_entry_and_a_grid() {
    assert_eq!(REGISTRY.len(), IdentityId::ALL.len());
    for id in IdentityId::ALL {
        assert_eq!(id.identity().id, id);
        assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        assert!(!parse_grid(default_grid(id)).unwrap().is_empty(), "{id}");
    }
}

#[test]
fn random_grids_pass_at_registry_tolerances() {
    for id in IdentityId::ALL {
        let points = random_grid(id, 25, 2024);
        let report = grid_check(
            id,
            &points,
            id.identity().default_tol,
            &Truncation::default(),
        );
        let failures: Vec<_> = report.reports.iter().filter(|r| !r.pass).collect();
        assert!(failures.is_empty(), "{id}: {failures:?}");
    }
}

#[test]
fn random_grids_print_as_grid_files() {
    for id in IdentityId::ALL {
        let points = random_grid(id, 10, 3);
        let text: String = points.iter().map(|p| format!("{p}\n")).collect();
        assert_eq!(parse_grid(&text).unwrap(), points, "{id}");
    }
}

#[test]
fn closed_form_and_series_side_make_up_the_report() {
    let params: Params = "a=0.4 b=1.2 c=2 x=0.3 y=0.1 z=0.2 z_im=0.3"
        .parse()
        .unwrap();
    let report = check_identity(IdentityId::Ser2, &params, 1e-8).unwrap();
    let rhs = closed_form(IdentityId::Ser2, &params).unwrap();
    let lhs = series_side(IdentityId::Ser2, &params, &Truncation::default()).unwrap();
    assert_eq!(report.rhs_value(), rhs);
    assert_eq!(report.lhs_value(), lhs.value);
    assert_eq!(report.terms, lhs.terms);
    assert!(report.pass);
}

#[test]
fn schema_errors_are_domain_errors() {
    let bad = [
        "a=0.4 b=1.2 c=2 x=0.3 y=0.1 z=1.2",
        "a=0.4 b=1.2 c=2 x=0.3 y=0.1 z=0.2 w=1",
        "a=0.4 b=1.2 x=0.3",
    ];
    for line in bad {
        let params: Params = line.parse().unwrap();
        let err = check_identity(IdentityId::Ser2, &params, 1e-8).unwrap_err();
        assert!(matches!(err, Error::Domain(_)), "{line}: {err}");
    }
}

#[test]
fn report_json_is_stable() {
    let params: Params = "k=1 x=0 z=0".parse().unwrap();
    let report = check_identity(IdentityId::GfLag, &params, 1e-8).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    let keys: Vec<&str> = json
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(keys.len(), 10);
    assert_eq!(json["lhs"][0], 1.0);
    assert_eq!(json["pass"], true);
}
