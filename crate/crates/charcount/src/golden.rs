//! Embedded reference tables and the reproduction harness.
//!
//! The crate ships transcriptions of the published reference tables that
//! this library is built to reproduce: the classification of isolated
//! full-rank subgroup classes per irreducible type, the per-type weight
//! tables for `SO5` and `G2` in both variants, twenty count polynomials,
//! the rank-3/4 count rows, and Euler-characteristic closed forms.
//! [`reproduce`] recomputes every cell with the engine and emits one
//! outcome per cell, so a single run demonstrates agreement (or pinpoints a
//! cell-level diff).
//!
//! Two transcription notes, surfaced as notes in the report rather than
//! silently patched:
//!
//! * the additive Euler closed form for `GL3` circulates with an exponent
//!   misprint (`2^(n+3)` for `2^(n-3)`, a factor of 64 in one term);
//! * the additive Euler closed form for `G2` circulates with a garbled
//!   first term; the corrected term is
//!   `(6 + 2^(n+1) + 3^(n+1) + 5^n - 3^(n+3) 2^n)/6`.
//!
//! In both cases the printed form contradicts the published count
//! polynomials themselves (their values at `q = 1` disagree), so the
//! harness checks the engine against the corrected form and reports the
//! printed value alongside.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::cartan;
use crate::counting::{count, ExecMode, Variant};
use crate::error::{Error, Result};
use crate::group_data::Registry;
use crate::poly::QPolynomial;
use crate::root_data::RootDatum;
use crate::type_engine::TypeContext;

/// Identifiers of the reference figures with embedded golden data.
pub const FIGURES: &[u32] = &[1, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14];

/// One-line description of each reference figure, for `--help` and reports.
pub fn figure_description(figure: u32) -> &'static str {
    match figure {
        1 => "isolated full-rank subgroup classes per irreducible type",
        3 => "multiplicative Euler characteristics at genus 0 (closed forms)",
        4 => "additive Euler characteristics (closed forms)",
        5 => "SO5 character-type weight table",
        6 => "so5 orbit-type weight table",
        7 => "G2 character-type weight table",
        8 => "g2 orbit-type weight table",
        9 => "multiplicative counts for SO5",
        10 => "additive counts for so5",
        11 => "multiplicative counts for G2",
        12 => "additive counts for g2",
        13 => "multiplicative counts at (0,3) for the rank-3/4 groups",
        14 => "additive counts at (0,3) for the rank-3/4 algebras",
        _ => "(no golden data)",
    }
}

/// Outcome of one recomputed cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellStatus {
    Pass,
    Skipped(String),
    Fail(String),
}

/// Report entry for one golden cell.
#[derive(Debug, Clone)]
pub struct CellReport {
    pub figure: u32,
    pub cell: String,
    pub status: CellStatus,
    /// Extra context shown after a pass, e.g. a documented transcription fix.
    pub note: Option<String>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        !matches!(self.status, CellStatus::Fail(_))
    }

    /// Render as a single report line.
    pub fn line(&self) -> String {
        let status = match &self.status {
            CellStatus::Pass => "pass".to_string(),
            CellStatus::Skipped(why) => format!("skipped: {why}"),
            CellStatus::Fail(diff) => format!("FAIL: {diff}"),
        };
        let note = match &self.note {
            Some(n) => format!("  [{n}]"),
            None => String::new(),
        };
        format!("figure {:>2}  {:<28} {}{}", self.figure, self.cell, status, note)
    }
}

/// Recompute the requested figures against the embedded golden data.
///
/// Unknown figure identifiers are an error; every engine-side problem is
/// reported as a `Fail` or `Skipped` cell instead of aborting the run.  The
/// report is deterministic and independent of the execution mode.
pub fn reproduce(figures: &[u32], registry: &Registry, mode: ExecMode) -> Result<Vec<CellReport>> {
    let mut ctxs = CtxCache::new(registry);
    let mut out = Vec::new();
    for &figure in figures {
        match figure {
            1 => fig1(&mut out),
            3 => fig3(&mut out, &mut ctxs, mode),
            4 => fig4(&mut out, &mut ctxs, mode),
            5 => g_table(&mut out, 5, "SO5", "B2", G_ROWS_SO5, &mut ctxs),
            6 => l_table(&mut out, 6, "so5", "B2", L_ROWS_SO5, &mut ctxs),
            7 => g_table(&mut out, 7, "G2", "G2", G_ROWS_G2, &mut ctxs),
            8 => l_table(&mut out, 8, "g2", "G2", L_ROWS_G2, &mut ctxs),
            9 => count_table(&mut out, 9, "SO5", "B2", Variant::Multiplicative, X_SO5, &mut ctxs, mode),
            10 => count_table(&mut out, 10, "so5", "B2", Variant::Additive, Y_SO5, &mut ctxs, mode),
            11 => count_table(&mut out, 11, "G2", "G2", Variant::Multiplicative, X_G2, &mut ctxs, mode),
            12 => count_table(&mut out, 12, "g2", "G2", Variant::Additive, Y_G2, &mut ctxs, mode),
            13 => rank3_table(&mut out, 13, Variant::Multiplicative, X_RANK3, &mut ctxs, mode),
            14 => rank3_table(&mut out, 14, Variant::Additive, Y_RANK3, &mut ctxs, mode),
            other => {
                return Err(Error::ParseError(format!(
                    "no golden data for figure {other}; known figures: 1, 3-14"
                )))
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Shared machinery
// ---------------------------------------------------------------------------

struct CtxCache<'r> {
    registry: &'r Registry,
    map: BTreeMap<String, TypeContext>,
}

impl<'r> CtxCache<'r> {
    fn new(registry: &'r Registry) -> Self {
        CtxCache { registry, map: BTreeMap::new() }
    }

    /// Context for a group spec: `GL<n>` or an adjoint product like `B2`.
    fn get(&mut self, spec: &str) -> Result<&TypeContext> {
        if !self.map.contains_key(spec) {
            let datum = if let Some(n) = spec.strip_prefix("GL") {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::ParseError(format!("bad group spec `{spec}`")))?;
                RootDatum::gl(n)?
            } else {
                RootDatum::adjoint(&cartan::parse_products(spec)?)?
            };
            let ctx = TypeContext::new(datum, self.registry)?;
            self.map.insert(spec.to_string(), ctx);
        }
        Ok(&self.map[spec])
    }
}

fn cell(out: &mut Vec<CellReport>, figure: u32, name: &str, body: impl FnOnce() -> Result<CellStatus>) {
    let status = body().unwrap_or_else(|e| CellStatus::Fail(e.to_string()));
    out.push(CellReport { figure, cell: name.to_string(), status, note: None });
}

fn phi(k: u32) -> QPolynomial {
    QPolynomial::cyclotomic(k).clone()
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` as an exact rational, `exp` possibly negative.
fn rpow(base: i64, exp: i64) -> BigRational {
    let p = BigInt::from(base).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A product of polynomial factors with exponents affine in the puncture
/// count `n`, as the weight tables print them: e.g.
/// `-2 4^{n-1} q^{4n+3} P2^{n+1} P4` denotes
/// `-2 * 4^(n-1) * q^(4n+3) * Phi_2^(n+1) * Phi_4`.
struct NForm {
    unit: BigRational,
    factors: Vec<(QPolynomial, i64, i64)>,
}

impl NForm {
    fn eval(&self, n: u32) -> QPolynomial {
        let mut out = QPolynomial::constant(self.unit.clone());
        for (base, slope, offset) in &self.factors {
            let e = slope * i64::from(n) + offset;
            assert!(e >= 0, "negative exponent {e} in golden form at n = {n}");
            out = &out * &base.pow(e as u32);
        }
        out
    }
}

/// Parse the compact product notation used by the embedded tables.
fn nform(src: &str) -> NForm {
    let mut unit = BigRational::one();
    let mut factors = Vec::new();
    for tok in src.split_whitespace() {
        let is_unit = !tok.contains('^')
            && !tok.starts_with('(')
            && !tok.starts_with('q')
            && !tok.starts_with('P');
        if is_unit {
            unit *= parse_rational(tok);
            continue;
        }
        let (base_s, exp_s) = match tok.find('^') {
            Some(i) => (&tok[..i], &tok[i + 1..]),
            None => (tok, ""),
        };
        let base = parse_base(base_s);
        let (slope, offset) = parse_exponent(exp_s);
        factors.push((base, slope, offset));
    }
    NForm { unit, factors }
}

fn parse_rational(tok: &str) -> BigRational {
    let (num, den) = match tok.split_once('/') {
        Some((a, b)) => (a, b),
        None => (tok, "1"),
    };
    rat(
        num.parse().unwrap_or_else(|_| panic!("bad unit `{tok}` in golden form")),
        den.parse().unwrap_or_else(|_| panic!("bad unit `{tok}` in golden form")),
    )
}

fn parse_base(s: &str) -> QPolynomial {
    if s == "q" {
        return QPolynomial::q_pow(1);
    }
    if let Some(k) = s.strip_prefix('P') {
        let k: u32 = k.parse().unwrap_or_else(|_| panic!("bad cyclotomic `{s}`"));
        return phi(k);
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        // linear factor `aq+b`
        let (a, b) = inner.split_once('q').unwrap_or_else(|| panic!("bad factor `{s}`"));
        let a: i64 = if a.is_empty() { 1 } else { a.parse().unwrap_or_else(|_| panic!("bad factor `{s}`")) };
        let b: i64 = if b.is_empty() { 0 } else { b.parse().unwrap_or_else(|_| panic!("bad factor `{s}`")) };
        return QPolynomial::from_coeffs(&[b, a]);
    }
    let c: i64 = s.parse().unwrap_or_else(|_| panic!("bad base `{s}`"));
    QPolynomial::from_coeffs(&[c])
}

fn parse_exponent(s: &str) -> (i64, i64) {
    let s = s.trim_start_matches('{').trim_end_matches('}');
    if s.is_empty() {
        return (0, 1);
    }
    match s.find('n') {
        Some(i) => {
            let slope = if s[..i].is_empty() { 1 } else { s[..i].parse().expect("bad exponent slope") };
            let offset = if s[i + 1..].is_empty() { 0 } else { s[i + 1..].parse().expect("bad exponent offset") };
            (slope, offset)
        }
        None => (0, s.parse().expect("bad exponent")),
    }
}

/// Compare two multisets of rendered rows; on mismatch list the unmatched
/// entries from both sides.
fn diff_multisets(engine: Vec<(String, String)>, fixture: Vec<(String, String)>) -> CellStatus {
    let mut left = engine;
    let mut right = fixture;
    left.sort();
    right.sort();
    if left.iter().map(|(k, _)| k).eq(right.iter().map(|(k, _)| k)) {
        return CellStatus::Pass;
    }
    let mut only_left = Vec::new();
    let mut only_right = Vec::new();
    let mut i = 0;
    let mut j = 0;
    while i < left.len() || j < right.len() {
        if j >= right.len() || (i < left.len() && left[i].0 < right[j].0) {
            only_left.push(&left[i]);
            i += 1;
        } else if i >= left.len() || right[j].0 < left[i].0 {
            only_right.push(&right[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    let show = |rows: &[&(String, String)]| {
        rows.iter()
            .take(3)
            .map(|(k, n)| format!("{n}: {k}"))
            .collect::<Vec<_>>()
            .join("; ")
    };
    CellStatus::Fail(format!(
        "computed-only rows [{}] vs table-only rows [{}]",
        show(&only_left),
        show(&only_right)
    ))
}

// ---------------------------------------------------------------------------
// Figure 1: isolated full-rank subgroup classes
// ---------------------------------------------------------------------------

const FIG1_ROWS: &[(&str, &[&str])] = &[
    ("A2", &["A2"]),
    ("A3", &["A3"]),
    ("B3", &["B3", "A3", "A1xA1xA1'"]),
    ("B4", &["B4", "D4", "A3xA1'", "B2xA1xA1"]),
    ("C2", &["B2", "A1xA1"]),
    ("C3", &["C3", "B2xA1"]),
    ("C4", &["C4", "C3xA1", "B2xB2"]),
    ("D4", &["D4", "A1xA1xA1xA1"]),
    ("D5", &["D5", "A3xA1xA1"]),
    ("D6", &["D6", "D4xA1xA1", "A3xA3"]),
    ("G2", &["G2", "A2", "A1xA1'"]),
    ("F4", &["F4", "B4", "C3xA1", "A3xA1'", "A2xA2'"]),
    ("E6", &["E6", "A5xA1", "A2xA2xA2"]),
    ("E7", &["E7", "A7", "D6xA1", "A5xA2", "A3xA3xA1"]),
    ("E8", &["E8", "D8", "A8", "E7xA1", "A7xA1", "E6xA2", "D5xA3", "A5xA2xA1", "A4xA4"]),
];

fn fig1(out: &mut Vec<CellReport>) {
    for (spec, expected) in FIG1_ROWS {
        cell(out, 1, &format!("row {spec}"), || {
            let datum = RootDatum::adjoint(&cartan::parse_products(spec)?)?;
            let mut got: Vec<String> = datum
                .isolated_one_step_classes()?
                .iter()
                .map(|t| t.label())
                .collect();
            got.sort();
            let mut want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
            want.sort();
            if got == want {
                Ok(CellStatus::Pass)
            } else {
                Ok(CellStatus::Fail(format!("computed {got:?}, table lists {want:?}")))
            }
        });
    }
}

// ---------------------------------------------------------------------------
// Figures 3 and 4: Euler-characteristic closed forms
// ---------------------------------------------------------------------------

fn chi_x_genus0(key: &str, n: i64) -> BigRational {
    match key {
        "GL2" => rpow(2, n - 4) * int((n - 1) * (n - 2)),
        "GL3" => rpow(2, n - 5) * rpow(3, n - 3) * int((n - 1) * (n - 2) * (9 * n * n - 27 * n + 16)),
        "GL4" => {
            let quartic = 108 * n.pow(4) - 648 * n.pow(3) + 1350 * n * n - 1129 * n + 324;
            rpow(2, 3 * n - 9) * rpow(3, n - 4) * int((n - 1) * (n - 2) * quartic)
        }
        "SO5" => rpow(2, 3 * n - 8) * int((n - 1) * (n - 2) * (11 * n * n - 33 * n + 19)),
        "G2" => rpow(2, 2 * n - 7) * rpow(3, n - 3) * int((n - 1) * (n - 2) * (207 * n * n - 621 * n + 350)),
        _ => unreachable!("no genus-0 closed form for {key}"),
    }
}

/// Additive closed form exactly as printed in the reference table.
fn chi_y_printed(key: &str, g: i64, n: i64) -> BigRational {
    match key {
        "GL2" => int(1) + rpow(2, n - 2) * int(4 * g + n - 3),
        "GL3" => {
            int(1)
                + int(2) * rpow(3, n - 1) * int(3 * g + n - 3)
                + rpow(3, n - 2)
                    * rpow(2, n + 3)
                    * int(144 * g * g + 72 * g * (n - 3) + 80 - 53 * n + 9 * n * n)
        }
        "SO5" => {
            int(1)
                + rpow(2, n - 2)
                + rpow(2, 2 * n - 3) * int(24 * g + 7 * n - 22)
                + rpow(2, 3 * n - 5) * int(96 * g * g + 48 * g * (n - 3) + 53 - 35 * n + 6 * n * n)
        }
        "G2" => {
            rat(1, 6) * (int(6) - rpow(2, n) + int(19) * rpow(3, n + 1) + rpow(5, n))
                + int(395) * rpow(12, n - 2)
                + int(5 * g) * rpow(6, n)
                + rpow(6, n - 2) * (int(48) - int(65) * rpow(2, n)) * int(n)
                + int(5) * rpow(3, n) * rpow(4, n - 2) * int(16 * g * g + 8 * g * (n - 3) + n * n)
        }
        _ => unreachable!("no additive closed form for {key}"),
    }
}

/// Additive closed form with the documented transcription fixes applied;
/// `None` when the printed form is already consistent.
fn chi_y_corrected(key: &str, g: i64, n: i64) -> Option<BigRational> {
    match key {
        "GL3" => Some(
            int(1)
                + int(2) * rpow(3, n - 1) * int(3 * g + n - 3)
                + rpow(3, n - 2)
                    * rpow(2, n - 3)
                    * int(144 * g * g + 72 * g * (n - 3) + 80 - 53 * n + 9 * n * n),
        ),
        "G2" => Some(
            rat(1, 6)
                * (int(6) + rpow(2, n + 1) + rpow(3, n + 1) + rpow(5, n) - rpow(3, n + 3) * rpow(2, n))
                + int(395) * rpow(12, n - 2)
                + int(5 * g) * rpow(6, n)
                + rpow(6, n - 2) * (int(48) - int(65) * rpow(2, n)) * int(n)
                + int(5) * rpow(3, n) * rpow(4, n - 2) * int(16 * g * g + 8 * g * (n - 3) + n * n),
        ),
        _ => None,
    }
}

fn fig3(out: &mut Vec<CellReport>, ctxs: &mut CtxCache, mode: ExecMode) {
    for (key, spec) in [("GL2", "GL2"), ("GL3", "GL3"), ("GL4", "GL4"), ("SO5", "B2"), ("G2", "G2")] {
        for n in 3..=5u32 {
            cell(out, 3, &format!("{key} (0,{n})"), || {
                let ctx = ctxs.get(spec)?;
                let got = crate::counting::euler_characteristic(ctx, 0, n, Variant::Multiplicative, mode)?;
                let want = chi_x_genus0(key, i64::from(n));
                if BigRational::from_integer(got.clone()) == want {
                    Ok(CellStatus::Pass)
                } else {
                    Ok(CellStatus::Fail(format!("computed {got}, closed form gives {want}")))
                }
            });
        }
    }
}

fn fig4(out: &mut Vec<CellReport>, ctxs: &mut CtxCache, mode: ExecMode) {
    let cells: &[(u32, u32)] = &[(0, 3), (0, 4), (1, 1), (1, 2), (2, 1)];
    for (key, spec) in [("GL2", "GL2"), ("GL3", "GL3"), ("SO5", "B2"), ("G2", "G2")] {
        for &(g, n) in cells {
            let name = format!("{key} ({g},{n})");
            let mut report = CellReport { figure: 4, cell: name, status: CellStatus::Pass, note: None };
            let mut body = || -> Result<(CellStatus, Option<String>)> {
                let ctx = ctxs.get(spec)?;
                let got = crate::counting::euler_characteristic(ctx, g, n, Variant::Additive, mode)?;
                let printed = chi_y_printed(key, i64::from(g), i64::from(n));
                let (want, note) = match chi_y_corrected(key, i64::from(g), i64::from(n)) {
                    Some(corrected) => {
                        let note = format!(
                            "printed closed form is inconsistent with the published count polynomials \
                             (gives {printed}); checked against the corrected transcription"
                        );
                        (corrected, Some(note))
                    }
                    None => (printed, None),
                };
                if BigRational::from_integer(got.clone()) == want {
                    Ok((CellStatus::Pass, note))
                } else {
                    Ok((CellStatus::Fail(format!("computed {got}, closed form gives {want}")), note))
                }
            };
            match body() {
                Ok((status, note)) => {
                    report.status = status;
                    report.note = note;
                }
                Err(e) => report.status = CellStatus::Fail(e.to_string()),
            }
            out.push(report);
        }
    }
}

// ---------------------------------------------------------------------------
// Figures 5 and 7: character-type weight tables
// ---------------------------------------------------------------------------

struct GRowFix {
    name: &'static str,
    mass: &'static str,
    order: &'static str,
    gdeg: &'static str,
    dim: u64,
    weyl: u64,
    size: u64,
    pi0: u64,
    nu: i64,
    /// Scalar part of the S column (the printed value divided by `Phi_1^2`).
    s: &'static str,
}

const G_ROWS_SO5: &[GRowFix] = &[
    GRowFix { name: "[SO5,(2|)]", mass: "q^4 P1^2 P2^2 P4", order: "q^4 P1^2 P2^2 P4", gdeg: "1", dim: 1, weyl: 8, size: 1, pi0: 2, nu: 2, s: "2" },
    GRowFix { name: "[SO5,(01|2)]", mass: "2 q^3 P1^2 P2^2", order: "q^4 P1^2 P2^2 P4", gdeg: "1/2 q P4", dim: 1, weyl: 8, size: 1, pi0: 2, nu: 2, s: "2" },
    GRowFix { name: "[SO5,(12|0)]", mass: "2 q^3 P1^2 P2^2", order: "q^4 P1^2 P2^2 P4", gdeg: "1/2 q P4", dim: 1, weyl: 8, size: 1, pi0: 2, nu: 2, s: "2" },
    GRowFix { name: "[SO5,(02|1)]", mass: "2 q^3 P1^2 P4", order: "q^4 P1^2 P2^2 P4", gdeg: "1/2 q P2^2", dim: 2, weyl: 8, size: 1, pi0: 2, nu: 2, s: "2^{n+1}" },
    GRowFix { name: "[SO5,(012|12)]", mass: "P1^2 P2^2 P4", order: "q^4 P1^2 P2^2 P4", gdeg: "q^4", dim: 1, weyl: 8, size: 1, pi0: 2, nu: 2, s: "2" },
    GRowFix { name: "[A1xA1,2.2]", mass: "q^4 P1^2 P2^2", order: "q^2 P1^2 P2^2", gdeg: "1", dim: 1, weyl: 4, size: 1, pi0: 4, nu: 2, s: "2^{n}" },
    GRowFix { name: "[A1xA1,2.11]", mass: "q^3 P1^2 P2^2", order: "q^2 P1^2 P2^2", gdeg: "q", dim: 1, weyl: 4, size: 1, pi0: 4, nu: 2, s: "2^{n}" },
    GRowFix { name: "[A1xA1,11.2]", mass: "q^3 P1^2 P2^2", order: "q^2 P1^2 P2^2", gdeg: "q", dim: 1, weyl: 4, size: 1, pi0: 4, nu: 2, s: "2^{n}" },
    GRowFix { name: "[A1xA1,11.11]", mass: "q^2 P1^2 P2^2", order: "q^2 P1^2 P2^2", gdeg: "q^2", dim: 1, weyl: 4, size: 1, pi0: 4, nu: 2, s: "2^{n}" },
    GRowFix { name: "[A1,2]", mass: "q^4 P1^2 P2", order: "q P1^2 P2", gdeg: "1", dim: 1, weyl: 2, size: 2, pi0: 2, nu: -4, s: "-2 4^{n}" },
    GRowFix { name: "[A1,11]", mass: "q^3 P1^2 P2", order: "q P1^2 P2", gdeg: "q", dim: 1, weyl: 2, size: 2, pi0: 2, nu: -4, s: "-2 4^{n}" },
    GRowFix { name: "[A1',2]", mass: "q^4 P1^2 P2", order: "q P1^2 P2", gdeg: "1", dim: 1, weyl: 2, size: 2, pi0: 1, nu: -2, s: "-1 4^{n}" },
    GRowFix { name: "[A1',11]", mass: "q^3 P1^2 P2", order: "q P1^2 P2", gdeg: "q", dim: 1, weyl: 2, size: 2, pi0: 1, nu: -2, s: "-1 4^{n}" },
    GRowFix { name: "[T,1]", mass: "q^4 P1^2", order: "P1^2", gdeg: "1", dim: 1, weyl: 1, size: 1, pi0: 1, nu: 8, s: "8^{n}" },
];

const G_ROWS_G2: &[GRowFix] = &[
    GRowFix { name: "[G2,f10]", mass: "q^6 P1^2 P2^2 P3 P6", order: "q^6 P1^2 P2^2 P3 P6", gdeg: "1", dim: 1, weyl: 12, size: 1, pi0: 1, nu: 1, s: "1" },
    GRowFix { name: "[G2,f13']", mass: "3 q^5 P1^2 P2^2", order: "q^6 P1^2 P2^2 P3 P6", gdeg: "1/3 q P3 P6", dim: 1, weyl: 12, size: 1, pi0: 1, nu: 1, s: "1" },
    GRowFix { name: "[G2,f13'']", mass: "3 q^5 P1^2 P2^2", order: "q^6 P1^2 P2^2 P3 P6", gdeg: "1/3 q P3 P6", dim: 1, weyl: 12, size: 1, pi0: 1, nu: 1, s: "1" },
    GRowFix { name: "[G2,f21]", mass: "6 q^5 P1^2 P6", order: "q^6 P1^2 P2^2 P3 P6", gdeg: "1/6 q P2^2 P3", dim: 2, weyl: 12, size: 1, pi0: 1, nu: 1, s: "2^{n}" },
    GRowFix { name: "[G2,f22]", mass: "2 q^5 P1^2 P3", order: "q^6 P1^2 P2^2 P3 P6", gdeg: "1/2 q P2^2 P6", dim: 2, weyl: 12, size: 1, pi0: 1, nu: 1, s: "2^{n}" },
    GRowFix { name: "[G2,f16]", mass: "P1^2 P2^2 P3 P6", order: "q^6 P1^2 P2^2 P3 P6", gdeg: "q^6", dim: 1, weyl: 12, size: 1, pi0: 1, nu: 1, s: "1" },
    GRowFix { name: "[A2,3]", mass: "q^6 P1^2 P2 P3", order: "q^3 P1^2 P2 P3", gdeg: "1", dim: 1, weyl: 6, size: 1, pi0: 3, nu: 2, s: "2^{n}" },
    GRowFix { name: "[A2,21]", mass: "q^5 P1^2 P3", order: "q^3 P1^2 P2 P3", gdeg: "q P2", dim: 2, weyl: 6, size: 1, pi0: 3, nu: 2, s: "4^{n}" },
    GRowFix { name: "[A2,111]", mass: "q^3 P1^2 P2 P3", order: "q^3 P1^2 P2 P3", gdeg: "q^3", dim: 1, weyl: 6, size: 1, pi0: 3, nu: 2, s: "2^{n}" },
    GRowFix { name: "[A1xA1',2.2]", mass: "q^6 P1^2 P2^2", order: "q^2 P1^2 P2^2", gdeg: "1", dim: 1, weyl: 4, size: 3, pi0: 2, nu: 1, s: "3^{n}" },
    GRowFix { name: "[A1xA1',2.11]", mass: "q^5 P1^2 P2^2", order: "q^2 P1^2 P2^2", gdeg: "q", dim: 1, weyl: 4, size: 3, pi0: 2, nu: 1, s: "3^{n}" },
    GRowFix { name: "[A1xA1',11.2]", mass: "q^5 P1^2 P2^2", order: "q^2 P1^2 P2^2", gdeg: "q", dim: 1, weyl: 4, size: 3, pi0: 2, nu: 1, s: "3^{n}" },
    GRowFix { name: "[A1xA1',11.11]", mass: "q^4 P1^2 P2^2", order: "q^2 P1^2 P2^2", gdeg: "q^2", dim: 1, weyl: 4, size: 3, pi0: 2, nu: 1, s: "3^{n}" },
    GRowFix { name: "[A1,2]", mass: "q^6 P1^2 P2", order: "q P1^2 P2", gdeg: "1", dim: 1, weyl: 2, size: 3, pi0: 1, nu: -4, s: "-2 6^{n}" },
    GRowFix { name: "[A1,11]", mass: "q^5 P1^2 P2", order: "q P1^2 P2", gdeg: "q", dim: 1, weyl: 2, size: 3, pi0: 1, nu: -4, s: "-2 6^{n}" },
    GRowFix { name: "[A1',2]", mass: "q^6 P1^2 P2", order: "q P1^2 P2", gdeg: "1", dim: 1, weyl: 2, size: 3, pi0: 1, nu: -2, s: "-1 6^{n}" },
    GRowFix { name: "[A1',11]", mass: "q^5 P1^2 P2", order: "q P1^2 P2", gdeg: "q", dim: 1, weyl: 2, size: 3, pi0: 1, nu: -2, s: "-1 6^{n}" },
    GRowFix { name: "[T,1]", mass: "q^6 P1^2", order: "P1^2", gdeg: "1", dim: 1, weyl: 1, size: 1, pi0: 1, nu: 12, s: "12^{n}" },
];

fn g_table(out: &mut Vec<CellReport>, figure: u32, label: &str, spec: &str, rows: &[GRowFix], ctxs: &mut CtxCache) {
    cell(out, figure, &format!("{label} type count"), || {
        let ctx = ctxs.get(spec)?;
        let got = ctx.g_types()?.len();
        if got == rows.len() {
            Ok(CellStatus::Pass)
        } else {
            Ok(CellStatus::Fail(format!("computed {got} types, table lists {}", rows.len())))
        }
    });
    let p1sq = &phi(1) * &phi(1);
    for n in 1..=3u32 {
        cell(out, figure, &format!("{label} table, n = {n}"), || {
            let ctx = ctxs.get(spec)?;
            let engine = ctx
                .g_types()?
                .iter()
                .map(|rec| {
                    let pi0 = &ctx.endoscopy_classes[rec.class_idx].pi0;
                    let s = &ctx.s_tau(rec, n) * &p1sq;
                    let key = format!(
                        "m={} | L={} | gd={} | dim={} | W={} | cls={} | pi0={} | nu={} | S={}",
                        rec.mass, rec.order_poly, rec.generic_degree, rec.dim_rho,
                        rec.weyl_order, rec.orbit_size, pi0, rec.nu, s
                    );
                    (key, format!("[{},{}]", rec.class_label, rec.rho_label))
                })
                .collect();
            let fixture = rows
                .iter()
                .map(|row| {
                    let s = &nform(row.s).eval(n) * &p1sq;
                    let key = format!(
                        "m={} | L={} | gd={} | dim={} | W={} | cls={} | pi0={} | nu={} | S={}",
                        nform(row.mass).eval(n), nform(row.order).eval(n), nform(row.gdeg).eval(n),
                        row.dim, row.weyl, row.size, row.pi0, row.nu, s
                    );
                    (key, row.name.to_string())
                })
                .collect();
            Ok(diff_multisets(engine, fixture))
        });
    }
}

// ---------------------------------------------------------------------------
// Figures 6 and 8: orbit-type weight tables
// ---------------------------------------------------------------------------

struct LRowFix {
    name: &'static str,
    d: u64,
    order: &'static str,
    size: &'static str,
    green: &'static str,
    weyl: u64,
    cls: u64,
    mu: i64,
    h: &'static str,
}

const L_ROWS_SO5: &[LRowFix] = &[
    LRowFix { name: "[SO5,1^5]", d: 10, order: "q^4 P1^2 P2^2 P4", size: "1", green: "P2^2 P4", weyl: 8, cls: 1, mu: 1, h: "q^{4n} P2^{2n} P4^{n}" },
    LRowFix { name: "[SO5,2^2 1]", d: 6, order: "q^4 P1^2 P2^2 P4", size: "P1 P2 P4", green: "P2^2", weyl: 8, cls: 1, mu: 1, h: "q^{4n} P1 P2^{2n+1} P4" },
    LRowFix { name: "[SO5,3 1^2]", d: 4, order: "q^4 P1^2 P2^2 P4", size: "1/2 q P1 P2^2 P4", green: "(3q+1)", weyl: 8, cls: 1, mu: 1, h: "1/2 q^{4n+1} P1 P2^2 P4 (3q+1)^{n}" },
    LRowFix { name: "[SO5,3 1^2 *]", d: 4, order: "q^4 P1^2 P2^2 P4", size: "1/2 q P1^2 P2 P4", green: "P2", weyl: 8, cls: 1, mu: 1, h: "1/2 q^{4n+1} P1^2 P2^{n+1} P4" },
    LRowFix { name: "[SO5,5]", d: 2, order: "q^4 P1^2 P2^2 P4", size: "q^2 P1^2 P2^2 P4", green: "1", weyl: 8, cls: 1, mu: 1, h: "q^{4n+2} P1^2 P2^2 P4" },
    LRowFix { name: "[A1,1^2]", d: 4, order: "q P1^2 P2", size: "1", green: "P2", weyl: 2, cls: 2, mu: -1, h: "-2 4^{n-1} q^{4n+3} P2^{n+1} P4" },
    LRowFix { name: "[A1,2]", d: 2, order: "q P1^2 P2", size: "P1 P2", green: "1", weyl: 2, cls: 2, mu: -1, h: "-2 4^{n-1} q^{4n+3} P1 P2^2 P4" },
    LRowFix { name: "[A1',1^2]", d: 4, order: "q P1^2 P2", size: "1", green: "P2", weyl: 2, cls: 2, mu: -1, h: "-2 4^{n-1} q^{4n+3} P2^{n+1} P4" },
    LRowFix { name: "[A1',2]", d: 2, order: "q P1^2 P2", size: "P1 P2", green: "1", weyl: 2, cls: 2, mu: -1, h: "-2 4^{n-1} q^{4n+3} P1 P2^2 P4" },
    LRowFix { name: "[T,0]", d: 2, order: "P1^2", size: "1", green: "1", weyl: 1, cls: 1, mu: 3, h: "3 8^{n-1} q^{4n+4} P2^2 P4" },
];

const L_ROWS_G2: &[LRowFix] = &[
    LRowFix { name: "[G2,0]", d: 14, order: "q^6 P1^2 P2^2 P3 P6", size: "1", green: "P2^2 P3 P6", weyl: 12, cls: 1, mu: 1, h: "q^{6n} P2^{2n} P3^{n} P6^{n}" },
    LRowFix { name: "[G2,A1]", d: 8, order: "q^6 P1^2 P2^2 P3 P6", size: "P1 P2 P3 P6", green: "P2 P3", weyl: 12, cls: 1, mu: 1, h: "q^{6n} P1 P2^{n+1} P3^{n+1} P6" },
    LRowFix { name: "[G2,A1~]", d: 6, order: "q^6 P1^2 P2^2 P3 P6", size: "q^2 P1 P2 P3 P6", green: "(2q+1) P2", weyl: 12, cls: 1, mu: 1, h: "q^{6n+2} P1 P2^{n+1} P3 P6 (2q+1)^{n}" },
    LRowFix { name: "[G2,G2(a1) 1^3]", d: 4, order: "q^6 P1^2 P2^2 P3 P6", size: "1/6 q^2 P1^2 P2^2 P3 P6", green: "(4q+1)", weyl: 12, cls: 1, mu: 1, h: "1/6 q^{6n+2} P1^2 P2^2 P3 P6 (4q+1)^{n}" },
    LRowFix { name: "[G2,G2(a1) 21]", d: 4, order: "q^6 P1^2 P2^2 P3 P6", size: "1/2 q^2 P1^2 P2^2 P3 P6", green: "(2q+1)", weyl: 12, cls: 1, mu: 1, h: "1/2 q^{6n+2} P1^2 P2^2 P3 P6 (2q+1)^{n}" },
    LRowFix { name: "[G2,G2(a1) 3]", d: 4, order: "q^6 P1^2 P2^2 P3 P6", size: "1/3 q^2 P1^2 P2^2 P3 P6", green: "P2", weyl: 12, cls: 1, mu: 1, h: "1/3 q^{6n+2} P1^2 P2^{n+2} P3 P6" },
    LRowFix { name: "[G2,G2]", d: 2, order: "q^6 P1^2 P2^2 P3 P6", size: "q^4 P1^2 P2^2 P3 P6", green: "1", weyl: 12, cls: 1, mu: 1, h: "q^{6n+4} P1^2 P2^2 P3 P6" },
    LRowFix { name: "[A1,1^2]", d: 4, order: "q P1^2 P2", size: "1", green: "P2", weyl: 2, cls: 3, mu: -1, h: "-3 6^{n-1} q^{6n+5} P2^{n+1} P3 P6" },
    LRowFix { name: "[A1,2]", d: 2, order: "q P1^2 P2", size: "P1 P2", green: "1", weyl: 2, cls: 3, mu: -1, h: "-3 6^{n-1} q^{6n+5} P1 P2^2 P3 P6" },
    LRowFix { name: "[A1',1^2]", d: 4, order: "q P1^2 P2", size: "1", green: "P2", weyl: 2, cls: 3, mu: -1, h: "-3 6^{n-1} q^{6n+5} P2^{n+1} P3 P6" },
    LRowFix { name: "[A1',2]", d: 2, order: "q P1^2 P2", size: "P1 P2", green: "1", weyl: 2, cls: 3, mu: -1, h: "-3 6^{n-1} q^{6n+5} P1 P2^2 P3 P6" },
    LRowFix { name: "[T,0]", d: 2, order: "P1^2", size: "1", green: "1", weyl: 1, cls: 1, mu: 5, h: "5 12^{n-1} q^{6n+6} P2^2 P3 P6" },
];

fn l_table(out: &mut Vec<CellReport>, figure: u32, label: &str, spec: &str, rows: &[LRowFix], ctxs: &mut CtxCache) {
    cell(out, figure, &format!("{label} type count"), || {
        let ctx = ctxs.get(spec)?;
        let got = ctx.lie_types()?.len();
        if got == rows.len() {
            Ok(CellStatus::Pass)
        } else {
            Ok(CellStatus::Fail(format!("computed {got} types, table lists {}", rows.len())))
        }
    });
    for n in 1..=4u32 {
        cell(out, figure, &format!("{label} table, n = {n}"), || {
            let ctx = ctxs.get(spec)?;
            let engine = ctx
                .lie_types()?
                .iter()
                .map(|rec| {
                    let h = ctx.h_tau(rec, n)?;
                    let key = format!(
                        "d={} | L={} | N={} | Q={} | W={} | cls={} | mu={} | H={}",
                        rec.d_tau, rec.order_poly, rec.orbit_size_poly, rec.green,
                        rec.weyl_order, rec.orbit_size, rec.mu, h
                    );
                    Ok((key, format!("[{},{}]", rec.class_label, rec.orbit_label)))
                })
                .collect::<Result<Vec<_>>>()?;
            let fixture = rows
                .iter()
                .map(|row| {
                    let key = format!(
                        "d={} | L={} | N={} | Q={} | W={} | cls={} | mu={} | H={}",
                        row.d, nform(row.order).eval(n), nform(row.size).eval(n), nform(row.green).eval(n),
                        row.weyl, row.cls, row.mu, nform(row.h).eval(n)
                    );
                    (key, row.name.to_string())
                })
                .collect();
            Ok(diff_multisets(engine, fixture))
        });
    }
}

// ---------------------------------------------------------------------------
// Figures 9-14: count polynomials
// ---------------------------------------------------------------------------

/// One published polynomial, coefficients listed from the top degree down.
/// A row covering only the upper half (down to the middle coefficient) is
/// completed by palindromic reflection.
struct CountRow {
    g: u32,
    n: u32,
    deg: usize,
    desc: &'static [i64],
}

impl CountRow {
    fn polynomial(&self) -> QPolynomial {
        let full = self.desc.len() == self.deg + 1;
        let half = self.desc.len() == self.deg / 2 + 1 && self.deg.is_multiple_of(2);
        assert!(full || half, "golden row length {} does not fit degree {}", self.desc.len(), self.deg);
        let coeff = |degree: usize| -> i64 {
            let j = self.deg - degree;
            if j < self.desc.len() {
                self.desc[j]
            } else {
                // palindromic partner
                self.desc[degree]
            }
        };
        let ascending: Vec<i64> = (0..=self.deg).map(coeff).collect();
        QPolynomial::from_coeffs(&ascending)
    }
}

const X_SO5: &[CountRow] = &[
    CountRow { g: 0, n: 3, deg: 4, desc: &[2, 12, 48, 12, 2] },
    CountRow { g: 0, n: 4, deg: 12, desc: &[2, 16, 68, 208, 530, 1216, 1968] },
    CountRow { g: 1, n: 1, deg: 8, desc: &[2, 4, 6, 16, 16, 16, 6, 4, 2] },
    CountRow { g: 1, n: 2, deg: 16, desc: &[2, 8, 16, 24, 32, 40, 48, 24, 188] },
    CountRow { g: 2, n: 1, deg: 28, desc: &[2, 4, 0, -4, -8, -12, 2, 16, 6, 52, -40, 228, -840, 708, -228] },
];

const Y_SO5: &[CountRow] = &[
    CountRow { g: 0, n: 3, deg: 4, desc: &[1, 6, 20, 0, 0] },
    CountRow { g: 0, n: 4, deg: 12, desc: &[1, 8, 33, 96, 223, 440, 548, 0, 0, 0, 0, 0, 0] },
    CountRow { g: 1, n: 1, deg: 8, desc: &[1, 2, 4, 4, 1, 0, 0, 0, 0] },
    CountRow { g: 1, n: 2, deg: 16, desc: &[1, 4, 9, 16, 25, 36, 36, 16, 1, 0, 0, 0, 0, 0, 0, 0, 0] },
    CountRow { g: 2, n: 1, deg: 28, desc: &[1, 2, 3, 4, 5, 6, 8, 10, 11, 10, 7, 4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0] },
];

const X_G2: &[CountRow] = &[
    CountRow { g: 0, n: 3, deg: 8, desc: &[1, 6, 20, 58, 180, 58, 20, 6, 1] },
    CountRow { g: 0, n: 4, deg: 20, desc: &[1, 8, 34, 104, 259, 560, 1106, 2080, 3890, 7440, 11444] },
    CountRow { g: 1, n: 1, deg: 12, desc: &[1, 2, 2, 4, 9, 26, 8] },
    CountRow { g: 1, n: 2, deg: 24, desc: &[1, 4, 8, 12, 16, 20, 26, 36, 57, 88, 198, -240, 700] },
    CountRow { g: 2, n: 1, deg: 40, desc: &[1, 2, 0, -2, -1, 0, -3, -6, 0, 8, 7, 0, -4, -2, -9, 482, -2885, 10278, -23499, 35928, -40590] },
];

const Y_G2: &[CountRow] = &[
    CountRow { g: 0, n: 3, deg: 8, desc: &[1, 6, 19, 45, 99, 0, 0, 0, 0] },
    CountRow { g: 0, n: 4, deg: 20, desc: &[1, 8, 33, 96, 225, 456, 831, 1392, 2191, 3300, 3498, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0] },
    CountRow { g: 1, n: 1, deg: 12, desc: &[1, 2, 3, 5, 9, 8, 2, 0, 0, 0, 0, 0, 0] },
    CountRow { g: 1, n: 2, deg: 24, desc: &[1, 4, 9, 16, 25, 36, 49, 64, 85, 110, 99, 40, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0] },
    CountRow { g: 2, n: 1, deg: 40, desc: &[1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 13, 15, 18, 20, 21, 18, 12, 6, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0] },
];

#[allow(clippy::too_many_arguments)]
fn count_table(
    out: &mut Vec<CellReport>,
    figure: u32,
    label: &str,
    spec: &str,
    variant: Variant,
    rows: &[CountRow],
    ctxs: &mut CtxCache,
    mode: ExecMode,
) {
    for row in rows {
        cell(out, figure, &format!("{label} ({},{})", row.g, row.n), || {
            let ctx = ctxs.get(spec)?;
            let result = count(ctx, row.g, row.n, variant, mode)?;
            let want = row.polynomial();
            if result.dimension != row.deg {
                return Ok(CellStatus::Fail(format!(
                    "computed dimension {}, table row has degree {}",
                    result.dimension, row.deg
                )));
            }
            if result.polynomial != want {
                return Ok(CellStatus::Fail(format!(
                    "computed {}, table row gives {}",
                    result.polynomial, want
                )));
            }
            let shape_ok = match variant {
                Variant::Multiplicative => result.properties.palindromic,
                Variant::Additive => result.properties.monic,
            };
            if !shape_ok {
                return Ok(CellStatus::Fail("expected shape property fails".to_string()));
            }
            Ok(CellStatus::Pass)
        });
    }
}

/// Rows of the rank-3/4 tables: group spec, pack keys that must be present
/// beyond the always-available type-A tables, and the published row.
struct Rank3Row {
    spec: &'static str,
    needs: &'static [&'static str],
    row: CountRow,
}

const X_RANK3: &[Rank3Row] = &[
    Rank3Row { spec: "B3", needs: &["B3", "B2"], row: CountRow { g: 0, n: 3, deg: 12, desc: &[2, 18, 88, 312, 952, 2478, 4980] } },
    Rank3Row { spec: "C3", needs: &["C3", "B2"], row: CountRow { g: 0, n: 3, deg: 12, desc: &[2, 18, 88, 320, 970, 2506, 5060] } },
    Rank3Row { spec: "D4", needs: &["D4"], row: CountRow { g: 0, n: 3, deg: 16, desc: &[4, 48, 308, 1408, 5140, 16176, 43748, 96256, 152864] } },
    Rank3Row { spec: "F4", needs: &["F4", "B4", "B3", "C3", "B2"], row: CountRow { g: 0, n: 3, deg: 40, desc: &[
        1, 12, 77, 352, 1287, 4004, 11010, 27444, 63155, 136096, 277849, 542780, 1023705,
        1879344, 3384741, 6009812, 10498044, 17873468, 29224321, 44790488, 58508548,
    ] } },
    Rank3Row { spec: "E6", needs: &["E6", "D5", "D4"], row: CountRow { g: 0, n: 3, deg: 60, desc: &[
        3, 54, 510, 3366, 17442, 75579, 284829, 958746, 2938005, 8314473, 21970542,
        54685197, 129125661, 290973411, 628951404, 1310014803, 2640078312, 5167269447,
        9854714367, 18363440685, 33501157887, 59902887102, 104998780206, 180252368460,
        302421156681, 493955088993, 780185905473, 1178431874241, 1671208058577,
        2158923553011, 2408708043594,
    ] } },
];

const Y_RANK3: &[Rank3Row] = &[
    Rank3Row { spec: "B3", needs: &["B3", "B2"], row: CountRow { g: 0, n: 3, deg: 12, desc: &[1, 9, 43, 147, 412, 948, 1535, 0, 0, 0, 0, 0, 0] } },
    Rank3Row { spec: "C3", needs: &["C3", "B2"], row: CountRow { g: 0, n: 3, deg: 12, desc: &[1, 9, 43, 148, 413, 946, 1533, 0, 0, 0, 0, 0, 0] } },
    Rank3Row { spec: "D4", needs: &["D4"], row: CountRow { g: 0, n: 3, deg: 16, desc: &[1, 12, 76, 340, 1206, 3668, 9451, 19080, 24492, 0, 0, 0, 0, 0, 0, 0, 0] } },
    Rank3Row { spec: "F4", needs: &["F4", "B4", "B3", "C3", "B2"], row: CountRow { g: 0, n: 3, deg: 40, desc: &[
        1, 12, 76, 340, 1210, 3652, 9722, 23428, 52049, 108072, 211964, 396184, 711295,
        1235704, 2091762, 3459608, 5550351, 8475196, 11932547, 14602160, 12631801,
        0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    ] } },
    Rank3Row { spec: "E6", needs: &["E6", "D5", "D4"], row: CountRow { g: 0, n: 3, deg: 60, desc: &[
        1, 18, 169, 1104, 5644, 24070, 89110, 294202, 883118, 2445142, 6314277, 15342436,
        35328016, 77552468, 163141890, 330385400, 646787466, 1228563901, 2271409786,
        4097165169, 7220215707, 12432586601, 20893248670, 34175389336, 54155977909,
        82488035626, 119164974059, 159544431246, 189727222032, 183584161672, 112360075923,
        0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    ] } },
];

fn rank3_table(
    out: &mut Vec<CellReport>,
    figure: u32,
    variant: Variant,
    rows: &[Rank3Row],
    ctxs: &mut CtxCache,
    mode: ExecMode,
) {
    for entry in rows {
        let missing: Vec<&str> = entry
            .needs
            .iter()
            .copied()
            .filter(|k| !ctxs.registry.keys().iter().any(|have| have == k))
            .collect();
        let name = format!("{} (0,3)", entry.spec);
        if !missing.is_empty() {
            out.push(CellReport {
                figure,
                cell: name,
                status: CellStatus::Skipped(format!("data pack not installed: {}", missing.join(", "))),
                note: None,
            });
            continue;
        }
        cell(out, figure, &name, || {
            let ctx = ctxs.get(entry.spec)?;
            let result = count(ctx, entry.row.g, entry.row.n, variant, mode)?;
            let want = entry.row.polynomial();
            if result.polynomial == want {
                Ok(CellStatus::Pass)
            } else {
                Ok(CellStatus::Fail(format!(
                    "computed {}, table row gives {}",
                    result.polynomial, want
                )))
            }
        });
    }
}
