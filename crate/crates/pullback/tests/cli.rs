use pullback::cli::run;
use pullback::report::exit;
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cmd(args: &[&str]) -> pullback::report::Report {
    run(std::iter::once("pullback").chain(args.iter().copied()))
}

#[test]
fn analyze_exit_codes() {
    assert_eq!(cmd(&["analyze", &fixture("quartic_lattes.json")]).exit, exit::OK);
    assert_eq!(cmd(&["analyze", &fixture("z2_plus_i.json")]).exit, exit::NEGATIVE);
    assert_eq!(cmd(&["analyze", &fixture("malformed.json")]).exit, exit::PARSE_ERROR);
    assert_eq!(cmd(&["analyze", &fixture("invalid_degree.json")]).exit, exit::SEMANTIC_ERROR);
}

#[test]
fn unknown_flag_is_a_parse_error() {
    assert_eq!(cmd(&["analyze", "--bogus"]).exit, exit::PARSE_ERROR);
}

#[test]
fn blocked_portrait_cites_its_reason() {
    let r = cmd(&["filter-constant", &fixture("z2_plus_i.json")]);
    assert_eq!(r.exit, exit::NEGATIVE);
    assert!(!r.citations.is_empty());
}

#[test]
fn rank_of_quartic_example_is_zero() {
    let r = cmd(&[
        "--field",
        "w: w^2+w+1; c: c^3-2",
        "rank",
        "--map",
        "(-1*z*(z^3+2))/(2*z^3+1)",
        "--a",
        "-c,-c*w,-c*w^2,0",
        "--b",
        "-1,-w,-w^2,0",
    ]);
    assert_eq!(r.exit, exit::OK, "{}", r.to_text());
    assert_eq!(r.results["rank"], Value::from(0));
}

#[test]
fn cauchy_det_value() {
    let r = cmd(&["cauchy-det", "--u", "1,2,3,4,5", "--w", "-1,-2,-3"]);
    assert_eq!(r.exit, exit::OK, "{}", r.to_text());
    let text = r.to_json().to_string();
    assert!(text.contains("agree"), "{text}");
}

#[test]
fn json_and_text_carry_the_same_fields() {
    let r = cmd(&["pushforward", "--map", "z^2", "--qd", "1/((z^2-1)*(z^2-4))"]);
    assert_eq!(r.exit, exit::OK);
    let json = r.to_json();
    let text = r.to_text();
    let Value::Object(results) = &json["results"] else { panic!("results is an object: {json}") };
    for key in results.keys() {
        assert!(text.contains(key.as_str()), "`{key}` missing from text:\n{text}");
    }
    assert_eq!(json["command"], Value::from("pushforward"));
}

#[test]
fn dessin_from_fixture() {
    let r = cmd(&["dessin", &fixture("triple_quartic.json"), "--prop45", "1,2,3,4"]);
    assert_eq!(r.exit, exit::OK, "{}", r.to_text());
}

#[test]
fn bicritical_witness() {
    let r = cmd(&["bicritical", "--d", "3", "--lambda", "1", "--lambda-prime", "2", "--case", "split"]);
    assert_eq!(r.exit, exit::OK, "{}", r.to_text());
    assert_eq!(r.results["curve_reducible"], Value::from(false));
    let degenerate = cmd(&["bicritical", "--d", "2", "--lambda", "0", "--lambda-prime", "0", "--case", "split"]);
    assert_eq!(degenerate.exit, exit::SEMANTIC_ERROR);
}
