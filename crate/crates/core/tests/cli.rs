use std::process::Command;

use qmono::cli::{
    execute, exit_code, ExpansionRecord, SpecRecord, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE,
};
use qmono::frac_eq;
use qmono::json::FractionRecord;
use qmono::report::RunReport;
use qmono::specialization::abq_universe;
use qmono::text::parse_fraction;

fn run(args: &[&str]) -> (i32, String) {
    let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let outcome = execute(&argv, &mut out);
    (exit_code(&outcome), String::from_utf8(out).unwrap())
}

fn spec_json(args: &[&str]) -> (String, SpecRecord) {
    let (code, out) = run(args);
    assert_eq!(code, EXIT_OK, "{args:?}");
    let line = out.lines().last().unwrap().to_string();
    let rec: SpecRecord = serde_json::from_str(&line).unwrap();
    (line, rec)
}

#[test]
fn specialize_e2_prints_the_product_form() {
    let (code, out) = run(&["specialize", "--mu", "1,1", "--form", "theorem1"]);
    assert_eq!(code, EXIT_OK);
    let first = out.lines().next().unwrap();
    assert_eq!(first, "(a - b) * (a * q - b) / ((1 - q) * (1 - q^2))");
    let want = parse_fraction(&abq_universe(), "(a - b)*(a*q - b)/((1 - q)*(1 - q^2))").unwrap();
    assert!(frac_eq(&parse_fraction(&abq_universe(), first).unwrap(), &want).unwrap());
}

#[test]
fn specialize_single_box() {
    let (_, out) = run(&["specialize", "--mu", "1", "--form", "theorem1"]);
    assert_eq!(out.lines().next().unwrap(), "(a - b) / (1 - q)");
}

#[test]
fn specialize_forms_agree() {
    let value = |form: &str| {
        let (_, rec) = spec_json(&[
            "specialize",
            "--mu",
            "3,1,1",
            "--form",
            form,
            "--format",
            "json",
        ]);
        rec.value.to_fraction().unwrap()
    };
    let z = value("theorem1");
    assert!(frac_eq(&z, &value("theorem3")).unwrap());
    assert!(frac_eq(&z, &value("oracle-powersum")).unwrap());
}

#[test]
fn substitution_matches_direct_oracle() {
    let (_, sub) = spec_json(&[
        "specialize",
        "--mu",
        "2,1",
        "--subst",
        "a=1,b=q^4",
        "--format",
        "json",
    ]);
    let (_, direct) = spec_json(&[
        "specialize",
        "--mu",
        "2,1",
        "--form",
        "oracle-direct",
        "--N",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(sub.value.variables, ["q"]);
    let direct = direct
        .value
        .to_fraction()
        .unwrap()
        .embed(&abq_universe())
        .unwrap();
    let sub = sub
        .value
        .to_fraction()
        .unwrap()
        .embed(&abq_universe())
        .unwrap();
    assert!(frac_eq(&sub, &direct).unwrap());
}

#[test]
fn generator_forms() {
    let (_, rec) = spec_json(&[
        "specialize",
        "--form",
        "power",
        "--n",
        "3",
        "--format",
        "json",
    ]);
    let want = parse_fraction(&abq_universe(), "(a^3 - b^3)/(1 - q^3)").unwrap();
    assert!(frac_eq(&rec.value.to_fraction().unwrap(), &want).unwrap());
    assert_eq!(rec.partition, [3]);
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["specialize", "--mu", "2,2,1", "--format", "json"][..],
        &[
            "specialize",
            "--mu",
            "3,1",
            "--subst",
            "a=1,b=t",
            "--format",
            "json",
        ][..],
        &[
            "specialize",
            "--mu",
            "1,1,1",
            "--form",
            "theorem3",
            "--format",
            "json",
        ][..],
    ] {
        let (line, rec) = spec_json(args);
        let again = SpecRecord {
            value: FractionRecord::from_fraction(&rec.value.to_fraction().unwrap()),
            ..rec
        };
        assert_eq!(serde_json::to_string(&again).unwrap(), line);
    }
    for basis in [
        "monomial",
        "power",
        "complete",
        "elementary",
        "deformed-h",
        "deformed-e",
    ] {
        let (code, out) = run(&["expand", "--n", "3", "--basis", basis, "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let line = out.trim_end();
        let rec: ExpansionRecord = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&rec).unwrap(), line);
        for e in &rec.entries {
            let f = e.coefficient.to_fraction().unwrap();
            assert_eq!(FractionRecord::from_fraction(&f), e.coefficient);
        }
    }
}

#[test]
fn expand_shape() {
    let (_, out) = run(&[
        "expand", "--n", "4", "--basis", "monomial", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["basis"], "monomial");
    let mus: Vec<&serde_json::Value> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| &e["mu"])
        .collect();
    assert_eq!(mus.len(), 5);
    assert!(mus.iter().any(|m| **m == serde_json::json!([3, 1])));
}

#[test]
fn verify_reports_each_instance() {
    let (code, out) = run(&["verify", "--identity", "prop6", "--max-weight", "10"]);
    assert_eq!(code, EXIT_OK);
    let report: RunReport = serde_json::from_str(out.trim()).unwrap();
    assert!(report.failures.is_empty());
    // partitions of weight <= 10 with at most 7 parts
    assert_eq!(report.instances_checked, 131);
    assert!(report.instances.iter().all(|i| i.passed));

    let (code, out) = run(&["verify", "--identity", "thm7", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    let report: RunReport = serde_json::from_str(out.trim()).unwrap();
    let names: Vec<&str> = report
        .instances
        .iter()
        .map(|i| i.instance.as_str())
        .collect();
    assert_eq!(names, ["thm7 n=1", "thm7 n=2", "thm7 n=3"]);
}

#[test]
fn caps_give_resource_exit_code() {
    assert_eq!(
        run(&["verify", "--identity", "thm6", "--n", "6"]).0,
        EXIT_RESOURCE
    );
    assert_eq!(
        run(&["verify", "--identity", "thm6", "--n", "3", "--max-n", "2"]).0,
        EXIT_RESOURCE
    );
    assert_eq!(
        run(&["eigencheck", "--n", "2", "--N", "4"]).0,
        EXIT_RESOURCE
    );
    assert_eq!(
        run(&["specialize", "--mu", "1,1,1,1", "--max-length", "3"]).0,
        EXIT_RESOURCE
    );
}

#[test]
fn usage_errors() {
    for args in [
        &["frobnicate"][..],
        &["specialize", "--mu", "2,x"][..],
        &["specialize", "--mu", "2", "--bogus"][..],
        &["specialize", "--mu", "2", "--subst", "z=1"][..],
        &["specialize", "--mu", "2", "--form", "oracle-direct"][..],
        &["verify", "--identity", "thm99"][..],
        &["expand", "--n", "2", "--basis", "schur"][..],
        &[][..],
    ] {
        assert_eq!(run(args).0, EXIT_USAGE, "{args:?}");
    }
}

#[test]
fn pole_is_a_usage_error() {
    assert_eq!(
        run(&["specialize", "--mu", "1", "--subst", "q=1"]).0,
        EXIT_USAGE
    );
}

#[test]
fn eigencheck_passes() {
    let (code, out) = run(&["eigencheck", "--n", "3", "--N", "3"]);
    assert_eq!(code, EXIT_OK);
    let report: RunReport = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(report.command, "eigencheck");
    assert_eq!(report.instances_checked, 1);
}

#[test]
fn positivity_json() {
    let (code, out) = run(&["positivity", "--mu", "2,1"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v[0]["H"], "1 + 2 * q + 2 * t + q * t");
    assert_eq!(v[0]["Hbar"], "2 + 2 * q + 2 * q^2");
    assert_eq!(v[0]["identityHolds"], true);
}

fn binary(args: &[&str], threads: Option<&str>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qmono"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("QMONO_THREADS", t),
        None => cmd.env_remove("QMONO_THREADS"),
    };
    cmd.output().unwrap()
}

#[test]
fn binary_exit_codes_and_threads() {
    let ok = binary(
        &["verify", "--identity", "thm5", "--max-weight", "4"],
        Some("2"),
    );
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let one = binary(
        &["verify", "--identity", "thm5", "--max-weight", "4"],
        Some("1"),
    );
    // identical reports apart from timing
    let strip = |o: &[u8]| {
        let mut r: RunReport = serde_json::from_slice(o).unwrap();
        r.elapsed_seconds = 0.0;
        r
    };
    assert_eq!(strip(&ok.stdout), strip(&one.stdout));
    assert_eq!(
        binary(&["selftest"], Some("zero")).status.code(),
        Some(EXIT_USAGE)
    );
    assert_eq!(binary(&["nope"], None).status.code(), Some(EXIT_USAGE));
    assert_eq!(
        binary(&["verify", "--identity", "prop7", "--n", "9"], None)
            .status
            .code(),
        Some(EXIT_RESOURCE)
    );
}
