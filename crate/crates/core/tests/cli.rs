use std::process::{Command, Output};

use wedderburn::{parse_decomposition, DecompositionReport, GroupParams, Provenance};

/// Runs the binary with whitespace-separated arguments.
fn run(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wedderburn"))
        .args(args.split_whitespace())
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(args: &str) -> DecompositionReport {
    let out = run(args);
    assert!(out.status.success(), "{args}");
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn s_flag_canonicalizes_r() {
    let r = report("decompose --p 3 --n 2 --m 3 --s 1 --format json");
    assert_eq!((r.r, r.canonical_r, r.s, r.k), (4, 4, 1, 1));
    assert_eq!(r.order, 243);
    assert_eq!(r.provenance, Provenance::ClosedForm);
    assert_eq!(
        r.text(),
        "Q + 4*Q(z3) + 3*Q(z9) + 3*Q(z27) + 3*M3(Q(z3)) + 2*M3(Q(z9))"
    );
}

#[test]
fn non_canonical_r_reports_k() {
    // 7 = 1 + 2*3 has order 9 mod 27
    let r = report("decompose --p 3 --n 3 --m 3 --r 7 --format json");
    assert_eq!((r.s, r.k, r.canonical_r), (2, 2, 4));
    let r = report("decompose --p 3 --n 3 --m 3 --r -2 --format json");
    assert_eq!((r.r, r.s), (25, 2));
}

#[test]
fn abelian_mode() {
    let out = run("decompose --p 3 --n 1 --m 1 --abelian");
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "Q + 4*Q(z3)");
    let out = run("decompose --p 3 --n 2 --m 1 --abelian --method both");
    assert_eq!(stdout(&out).trim(), "Q + 4*Q(z3) + 3*Q(z9)");
}

#[test]
fn oracle_method_json() {
    let r = report("decompose --p 3 --n 4 --m 2 --r 10 --method oracle --format json");
    assert_eq!(r.provenance, Provenance::Oracle);
    assert_eq!(
        r.complex_counts,
        [(1, 81), (3, 18), (9, 6)].into_iter().collect()
    );
    assert_eq!(
        r.rational_counts,
        [(1, 1), (2, 4), (6, 12), (18, 3), (54, 1)]
            .into_iter()
            .collect()
    );
}

#[test]
fn counts_tables() {
    let out = run("counts --p 3 --n 4 --m 2 --r 10 --kind complex --format json");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v["complex_counts"],
        serde_json::json!({"1": 81, "3": 18, "9": 6})
    );
    assert!(v.get("rational_counts").is_none());

    let out = run("counts --p 3 --n 2 --m 3 --r 4 --oracle");
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rational irreducibles"));
    assert!(text.contains("oracle"));
    assert!(text.contains("18 (lambda=3)"));
}

#[test]
fn verify_reports() {
    for params in [
        "--n 4 --m 2 --r 10",
        "--n 3 --m 3 --r 4",
        "--n 2 --m 3 --r 4",
    ] {
        let out = run(&format!("verify --p 3 {params}"));
        assert!(out.status.success());
        assert!(stdout(&out).starts_with("VERIFIED"));
    }
    let out = run("verify --p 3 --n 2 --m 2 --s 1 --deep");
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    for suite in [
        "orthogonality",
        "class functions",
        "matrix relations",
        "galois action",
        "character fields",
    ] {
        assert!(text.contains(&format!("{suite}: ok")), "{suite}");
    }
}

#[test]
fn verify_all_sweep() {
    let out = run("verify --p 3 --max-order 2187 --all --threads 2");
    assert!(out.status.success());
    let expected = GroupParams::enumerate(3, 2187).unwrap().len();
    assert!(stdout(&out).ends_with(&format!("{expected}/{expected} parameter sets verified\n")));
}

#[test]
fn corrupted_component_is_caught() {
    let out = run("verify --p 3 --n 4 --m 2 --r 10 --corrupt");
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.starts_with("MISMATCH"));
    assert!(text.contains("closed form 2 vs oracle 1"));
}

#[test]
fn sweep_json_rows_round_trip() {
    let out = run("sweep --p 3 --max-order 729 --format json");
    assert!(out.status.success());
    let params = GroupParams::enumerate(3, 729).unwrap();
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), params.len());
    for (line, g) in lines.iter().zip(&params) {
        let r: DecompositionReport = serde_json::from_str(line).unwrap();
        assert_eq!(r, DecompositionReport::closed_form(g).unwrap());
        assert_eq!(serde_json::to_string(&r).unwrap(), *line);
        assert_eq!(r.decomposition().dimension(), g.order() as u128);
    }
}

#[test]
fn sweep_text_is_parseable_and_order_stable() {
    let one = run("sweep --p 5 --max-order 3125 --threads 1");
    let many = run("sweep --p 5 --max-order 3125 --threads 4");
    assert_eq!(one.stdout, many.stdout);
    for line in stdout(&one).lines().skip(1) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let order: u128 = fields[5].parse().unwrap();
        let text = fields[6..].join(" ");
        assert_eq!(parse_decomposition(&text, 5).unwrap().dimension(), order);
    }
}

#[test]
fn sweep_with_oracle() {
    let out = run("sweep --p 3 --max-order 729 --oracle --format json");
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let r: DecompositionReport = serde_json::from_str(line).unwrap();
        assert_eq!(r.provenance, Provenance::Verified);
    }
}

#[test]
fn exit_codes() {
    let code = |args: &str| run(args).status.code();
    assert_eq!(code("decompose --p 3 --n 4"), Some(1));
    assert_eq!(
        code("decompose --p 3 --n 4 --m 2 --format yaml --s 1"),
        Some(1)
    );
    assert_eq!(code("decompose --p 9 --n 4 --m 2 --s 1"), Some(2));
    assert_eq!(code("decompose --p 3 --n 3 --m 2 --r 1"), Some(2));
    assert_eq!(code("decompose --p 3 --n 10 --m 10 --s 1"), Some(4));
    assert_eq!(code("verify --p 3 --n 6 --m 3 --s 2"), Some(4));
    assert_eq!(code("sweep --p 3 --max-order 100000 --oracle"), Some(4));
    assert_eq!(code("--version"), Some(0));
    assert_eq!(code("--help"), Some(0));
}
