//! End-to-end tests of the command-line binary: flag grammar, exit codes,
//! and the round-trip guarantees between output formats.

use std::process::{Command, Output};

use num_bigint::BigInt;
use num_rational::BigRational;

use charcount::poly::QPolynomial;

fn charcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

// ---------------------------------------------------------------------------
// An independent parser for the factored output format, used to verify the
// round-trip invariant without reusing the library's own factorizer.
// ---------------------------------------------------------------------------

fn parse_rational(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((a, b)) => BigRational::new(
            a.parse::<BigInt>().unwrap_or_else(|_| panic!("bad rational `{s}`")),
            b.parse::<BigInt>().unwrap_or_else(|_| panic!("bad rational `{s}`")),
        ),
        None => BigRational::from_integer(
            s.parse::<BigInt>().unwrap_or_else(|_| panic!("bad rational `{s}`")),
        ),
    }
}

/// Parse one expanded polynomial, e.g. `q^4 + 6*q^3 + 24*q^2 + 6*q + 1`.
fn parse_expanded(s: &str) -> QPolynomial {
    let normalized = s.trim().replace(" - ", " + -");
    let mut acc = QPolynomial::zero();
    for term in normalized.split(" + ") {
        let term = term.trim();
        let (negative, body) = match term.strip_prefix('-') {
            Some(b) => (true, b.trim()),
            None => (false, term),
        };
        let (coeff_str, power) = if let Some((c, p)) = body.split_once("*q") {
            let power = match p.strip_prefix('^') {
                Some(k) => k.parse::<usize>().unwrap_or_else(|_| panic!("bad term `{term}`")),
                None => {
                    assert!(p.is_empty(), "bad term `{term}`");
                    1
                }
            };
            (c, power)
        } else if let Some(p) = body.strip_prefix("q^") {
            ("1", p.parse::<usize>().unwrap_or_else(|_| panic!("bad term `{term}`")))
        } else if body == "q" {
            ("1", 1)
        } else {
            (body, 0)
        };
        let mut coeff = parse_rational(coeff_str);
        if negative {
            coeff = -coeff;
        }
        let monomial = QPolynomial::constant(coeff).shift(power);
        acc = &acc + &monomial;
    }
    acc
}

/// Parse the factored format: ` * `-separated unit, q-power, `PhiN^e`
/// factors, and a parenthesized expanded residual.
fn parse_factored(s: &str) -> QPolynomial {
    let mut acc = QPolynomial::one();
    for part in s.trim().split(" * ") {
        let factor = if let Some(inner) = part.strip_prefix('(').and_then(|p| p.strip_suffix(')')) {
            parse_expanded(inner)
        } else if part == "q" {
            QPolynomial::q_pow(1)
        } else if let Some(k) = part.strip_prefix("q^") {
            QPolynomial::q_pow(k.parse().unwrap_or_else(|_| panic!("bad factor `{part}`")))
        } else if let Some(rest) = part.strip_prefix("Phi") {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (
                    i.parse::<u32>().unwrap_or_else(|_| panic!("bad factor `{part}`")),
                    e.parse::<u32>().unwrap_or_else(|_| panic!("bad factor `{part}`")),
                ),
                None => (rest.parse::<u32>().unwrap_or_else(|_| panic!("bad factor `{part}`")), 1),
            };
            QPolynomial::cyclotomic(idx).pow(exp)
        } else {
            QPolynomial::constant(parse_rational(part))
        };
        acc = &acc * &factor;
    }
    acc
}

// ---------------------------------------------------------------------------
// Count formats and round-trips
// ---------------------------------------------------------------------------

#[test]
fn count_formats_round_trip() {
    let base = ["count", "--group", "SO5", "-g", "0", "-n", "3", "--variant", "mult"];
    let expected = QPolynomial::from_coeffs(&[2, 12, 48, 12, 2]);

    let factored = charcount(&[&base[..], &["--format", "factored"]].concat());
    assert!(factored.status.success());
    assert_eq!(parse_factored(stdout(&factored).trim_end()), expected);

    let json_out = charcount(&[&base[..], &["--format", "json"]].concat());
    assert!(json_out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&json_out)).expect("valid JSON");
    let coeffs: Vec<i64> = v["coefficients"]
        .as_array()
        .expect("coefficient array")
        .iter()
        .map(|c| c.as_str().unwrap().parse::<i64>().unwrap())
        .collect();
    assert_eq!(coeffs, vec![2, 12, 48, 12, 2]);
    assert_eq!(v["group"], "B2");
    assert_eq!(v["dimension"], 4);
    // The embedded factored string re-expands to the same coefficients.
    assert_eq!(parse_factored(v["factored"].as_str().unwrap()), expected);

    let csv_out = charcount(&[&base[..], &["--format", "csv"]].concat());
    assert!(csv_out.status.success());
    let text = stdout(&csv_out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("power,coefficient"));
    let coeffs: Vec<i64> = lines
        .map(|l| l.split_once(',').unwrap().1.parse::<i64>().unwrap())
        .collect();
    assert_eq!(coeffs, vec![2, 12, 48, 12, 2]);
}

#[test]
fn latex_output_mirrors_cyclotomic_display() {
    let out = charcount(&[
        "count", "--group", "GL2", "-g", "1", "-n", "1", "--variant", "add", "--format", "latex",
    ]);
    assert!(out.status.success());
    // q^4 + q^3 = q^3 Phi_2
    assert_eq!(stdout(&out).trim_end(), "q^{3}\\,\\Phi_{2}");
}

#[test]
fn aliases_and_raw_datum_agree() {
    for group in ["SO5", "adjoint:B2", "B2"] {
        let out = charcount(&["count", "--group", group, "-g", "1", "-n", "1", "--format", "csv"]);
        assert!(out.status.success(), "group {group}");
        let text = stdout(&out);
        let last = text.lines().last().unwrap();
        assert_eq!(last, "8,2", "group {group}");
    }

    let dir = std::env::temp_dir().join(format!("charcount-datum-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gl2.json");
    std::fs::write(
        &path,
        r#"{"label":"rawGL2","basis_rank":2,"simple_roots":[[1,-1]],"coroots":[[1,-1]],"center_dim":1}"#,
    )
    .unwrap();
    let spec = format!("datum:{}", path.display());
    let out = charcount(&["count", "--group", &spec, "-g", "0", "-n", "4", "--format", "factored"]);
    assert!(out.status.success());
    assert_eq!(
        parse_factored(stdout(&out).trim_end()),
        QPolynomial::from_coeffs(&[1, 4, 1])
    );
    std::fs::remove_dir_all(&dir).ok();
}

// ---------------------------------------------------------------------------
// Exit codes
// ---------------------------------------------------------------------------

#[test]
fn empty_variety_is_a_domain_error() {
    let out = charcount(&["count", "--group", "GL2", "-g", "0", "-n", "2", "--variant", "mult"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("empty"), "stderr: {}", stderr(&out));
}

#[test]
fn usage_errors_exit_two_and_print_the_grammar() {
    let bad_group = charcount(&["count", "--group", "Q9", "-g", "0", "-n", "3"]);
    assert_eq!(bad_group.status.code(), Some(2));
    assert!(stderr(&bad_group).contains("Group specifiers"));

    let missing_args = charcount(&["count", "--group", "SO5"]);
    assert_eq!(missing_args.status.code(), Some(2));

    let unknown_verb = charcount(&["frobnicate"]);
    assert_eq!(unknown_verb.status.code(), Some(2));

    let half_cell = charcount(&["check", "--group", "SO5", "-g", "1"]);
    assert_eq!(half_cell.status.code(), Some(2));

    let bad_figure = charcount(&["reproduce", "--figure", "2"]);
    assert_eq!(bad_figure.status.code(), Some(2));
    assert!(stderr(&bad_figure).contains("no golden data"));
}

// ---------------------------------------------------------------------------
// Tables, checks, Euler values
// ---------------------------------------------------------------------------

#[test]
fn types_tables_have_the_published_row_counts() {
    for (group, variant, rows) in [
        ("SO5", "mult", 14),
        ("SO5", "add", 10),
        ("G2", "mult", 18),
        ("G2", "add", 12),
    ] {
        let out = charcount(&["types", "--group", group, "--variant", variant]);
        assert!(out.status.success(), "{group} {variant}");
        let data_rows = stdout(&out).lines().filter(|l| l.starts_with('[')).count();
        assert_eq!(data_rows, rows, "{group} {variant}");

        let json_out = charcount(&["types", "--group", group, "--variant", variant, "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&json_out)).expect("valid JSON");
        assert_eq!(v.as_array().unwrap().len(), rows, "{group} {variant} json");
    }
}

#[test]
fn euler_prints_the_closed_form_values() {
    let out = charcount(&["euler", "--group", "SO5", "-g", "0", "-n", "3", "--variant", "add"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim_end(), "27");

    let out = charcount(&["euler", "--group", "G2", "-g", "1", "-n", "1", "--variant", "add", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["euler_characteristic"], "30");
}

#[test]
fn check_single_cell_passes() {
    let out = charcount(&["check", "--group", "GL3", "-g", "0", "-n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1 cells"), "{text}");
    assert!(text.contains("all structural checks passed"), "{text}");
}

#[test]
fn data_validate_accepts_shipped_packs_and_rejects_junk() {
    let pack = concat!(env!("CARGO_MANIFEST_DIR"), "/data/stretch/c3.json");
    let ok = charcount(&["data", "validate", pack]);
    assert!(ok.status.success());
    assert!(stdout(&ok).starts_with("ok: pack C3"));

    let dir = std::env::temp_dir().join(format!("charcount-badpack-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\"cartan_type\": \"B2\"}").unwrap();
    let bad = charcount(&["data", "validate", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

// ---------------------------------------------------------------------------
// Reproduction determinism
// ---------------------------------------------------------------------------

#[test]
fn reproduce_is_deterministic_across_modes_and_runs() {
    let run = |mode: &str| {
        let out = charcount(&["reproduce", "--figure", "5", "--figure", "9", "--mode", mode]);
        assert!(out.status.success(), "mode {mode}");
        stdout(&out)
    };
    let parallel_1 = run("parallel");
    let parallel_2 = run("parallel");
    let sequential = run("sequential");
    assert_eq!(parallel_1, parallel_2);
    assert_eq!(parallel_1, sequential);
    assert!(parallel_1.contains("summary:"));
    assert!(!parallel_1.contains("FAIL"), "{parallel_1}");
}

#[test]
fn reproduce_reports_missing_packs_as_skips() {
    let out = charcount(&["reproduce", "--figure", "13"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("skipped: data pack not installed"), "{text}");
    assert!(text.contains("3 pass, 2 skipped, 0 failed"), "{text}");
}
