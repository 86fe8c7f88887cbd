//! Command-line front end: compute count polynomials, print type tables,
//! evaluate Euler characteristics, run property grids, validate data packs,
//! and re-derive the embedded reference tables.
//!
//! Exit codes: 0 on success, 1 on domain errors (and on failed checks or
//! reproduction mismatches), 2 on usage errors.  Usage errors print the
//! flag and group-specifier grammar; domain errors print the originating
//! library error verbatim on stderr.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Signed;

use charcount::cartan;
use charcount::counting::{self, check_grid, count, CountResult, ExecMode, Variant};
use charcount::error::Result;
use charcount::golden;
use charcount::group_data::{GroupDataPack, Registry};
use charcount::poly::QPolynomial;
use charcount::root_data::RootDatum;
use charcount::type_engine::TypeContext;

const GRAMMAR: &str = "\
Group specifiers (--group):
  GL<n>                        general linear group, e.g. GL2, GL3
  adjoint:<T><r>[x<T><r>...]   adjoint group of a type product, e.g. adjoint:B2, adjoint:A2xA1
  <T><r>[x<T><r>...]           shorthand for adjoint:..., e.g. B2, G2, D4, B3xA1
  SO5 | SO7 | PSp6 | PSO8      aliases for adjoint:B2 | adjoint:B3 | adjoint:C3 | adjoint:D4
  datum:<path>                 raw root datum from a JSON file
                               {label, basis_rank, simple_roots, coroots, pairing, center_dim}

Variants (--variant): mult | add
Formats  (--format):  text | factored | json | latex | csv
Modes    (--mode):    parallel | sequential

Data packs: bundled tables cover B2, G2 and the stretch set B3, C3, D4;
additional packs load from --data-dir or the CHARCOUNT_DATA_DIR directory.";

#[derive(Parser)]
#[command(
    name = "charcount",
    version,
    about = "Exact point counts of generic character varieties of punctured surfaces",
    after_help = GRAMMAR
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Compute one count polynomial |X(F_q)| or |Y(F_q)|.
    Count {
        #[command(flatten)]
        target: Target,
        /// Genus of the surface.
        #[arg(short)]
        g: u32,
        /// Number of punctures.
        #[arg(short)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Print the type table (one row per character or orbit type).
    Types {
        #[command(flatten)]
        target: Target,
        /// Also evaluate the n-dependent weight column at this puncture count.
        #[arg(short)]
        n: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the count polynomial at q = 1.
    Euler {
        #[command(flatten)]
        target: Target,
        /// Genus of the surface.
        #[arg(short)]
        g: u32,
        /// Number of punctures.
        #[arg(short)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Verify structural properties over a (g, n) grid.
    Check {
        #[command(flatten)]
        target: Target,
        /// Restrict to a single genus (requires -n).
        #[arg(short)]
        g: Option<u32>,
        /// Restrict to a single puncture count (requires -g).
        #[arg(short)]
        n: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute embedded reference tables and report per-cell agreement.
    Reproduce {
        /// Figure identifier; repeatable.  Default: all embedded figures.
        #[arg(long = "figure")]
        figures: Vec<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Data-pack maintenance.
    Data {
        #[command(subcommand)]
        action: DataAction,
    },
}

#[derive(Subcommand)]
enum DataAction {
    /// Load a data-pack file and run the full validation suite on it.
    Validate {
        /// Path to a JSON data pack.
        file: PathBuf,
    },
}

#[derive(Args)]
struct Target {
    /// Group specifier; see the grammar below.
    #[arg(long)]
    group: String,
    /// Which variety to count.
    #[arg(long, value_enum, default_value_t = VariantArg::Mult)]
    variant: VariantArg,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Extra directory of data packs (loaded after bundled and env packs).
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Per-type evaluation strategy.
    #[arg(long, value_enum, default_value_t = ModeArg::Parallel)]
    mode: ModeArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// Group-valued (multiplicative) variety X.
    #[value(alias = "multiplicative", alias = "x")]
    Mult,
    /// Lie-algebra-valued (additive) variety Y.
    #[value(alias = "additive", alias = "y")]
    Add,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Mult => Variant::Multiplicative,
            VariantArg::Add => Variant::Additive,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Factored,
    Json,
    Latex,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Parallel,
    Sequential,
}

impl From<ModeArg> for ExecMode {
    fn from(m: ModeArg) -> ExecMode {
        match m {
            ModeArg::Parallel => ExecMode::Parallel,
            ModeArg::Sequential => ExecMode::Sequential,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    }
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}\n\n{GRAMMAR}");
    std::process::exit(2);
}

// ---------------------------------------------------------------------------
// Group-specifier grammar
// ---------------------------------------------------------------------------

enum GroupSpec {
    Gl(usize),
    Adjoint(Vec<(cartan::Family, usize)>),
    Datum(PathBuf),
}

/// Grammar-level parse; `None` means the string does not fit the grammar.
fn parse_group_spec(s: &str) -> Option<GroupSpec> {
    let alias = match s.to_ascii_lowercase().as_str() {
        "so5" => Some("B2"),
        "so7" => Some("B3"),
        "psp6" => Some("C3"),
        "pso8" => Some("D4"),
        _ => None,
    };
    if let Some(product) = alias {
        return Some(GroupSpec::Adjoint(cartan::parse_products(product).ok()?));
    }
    if let Some(path) = s.strip_prefix("datum:") {
        return Some(GroupSpec::Datum(PathBuf::from(path)));
    }
    if let Some(rest) = s.strip_prefix("adjoint:") {
        return Some(GroupSpec::Adjoint(cartan::parse_products(rest).ok()?));
    }
    if s.len() > 2 && (s.starts_with("GL") || s.starts_with("gl")) {
        if let Ok(n) = s[2..].parse::<usize>() {
            return Some(GroupSpec::Gl(n));
        }
    }
    cartan::parse_products(s).ok().map(GroupSpec::Adjoint)
}

fn build_group(spec: &str) -> Result<RootDatum> {
    let Some(parsed) = parse_group_spec(spec) else {
        usage_error(&format!("unrecognized group specifier `{spec}`"));
    };
    match parsed {
        GroupSpec::Gl(n) => RootDatum::gl(n),
        GroupSpec::Adjoint(components) => RootDatum::adjoint(&components),
        GroupSpec::Datum(path) => {
            let text = std::fs::read_to_string(&path)?;
            RootDatum::from_json_str(&text)
        }
    }
}

fn make_registry(data_dir: &Option<PathBuf>) -> Result<Registry> {
    let mut registry = Registry::from_environment()?;
    if let Some(dir) = data_dir {
        registry.load_dir(dir)?;
    }
    Ok(registry)
}

fn make_context(group: &str, common: &Common) -> Result<TypeContext> {
    let datum = build_group(group)?;
    let registry = make_registry(&common.data_dir)?;
    let ctx = TypeContext::new(datum, &registry)?;
    for note in ctx.fusion_notes() {
        eprintln!("note: {note}");
    }
    Ok(ctx)
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

fn rational_str(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Cyclotomic-factored display, falling back to the expanded form when the
/// factorization routine declines the polynomial.
fn factored_str(p: &QPolynomial) -> String {
    p.factor().map(|f| f.to_string()).unwrap_or_else(|_| p.to_string())
}

fn latex_term(c: &BigRational, k: usize, leading: bool) -> String {
    let mag = c.abs();
    let sign = if c < &BigRational::from_integer(0.into()) {
        if leading { "-".to_string() } else { " - ".to_string() }
    } else if leading {
        String::new()
    } else {
        " + ".to_string()
    };
    let coeff = if mag.is_integer() {
        let v = mag.to_integer();
        if v == 1.into() && k > 0 { String::new() } else { v.to_string() }
    } else {
        format!("\\tfrac{{{}}}{{{}}}", mag.numer(), mag.denom())
    };
    let var = match k {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{{{k}}}"),
    };
    format!("{sign}{coeff}{var}")
}

fn latex_expanded(p: &QPolynomial) -> String {
    let coeffs = p.coeffs();
    if coeffs.iter().all(num_traits::Zero::is_zero) {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut leading = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        out.push_str(&latex_term(c, k, leading));
        leading = false;
    }
    out
}

/// LaTeX mirroring the cyclotomic display: unit, power of q, `\Phi_k`
/// factors, and the expanded residual in parentheses.
fn latex_factored(p: &QPolynomial) -> String {
    let Ok(f) = p.factor() else {
        return latex_expanded(p);
    };
    let mut parts: Vec<String> = Vec::new();
    let one = BigRational::from_integer(1.into());
    if f.unit != one || (f.q_power == 0 && f.cyclo.is_empty() && f.residual.is_one()) {
        if f.unit.is_integer() {
            parts.push(f.unit.to_integer().to_string());
        } else {
            parts.push(format!("\\tfrac{{{}}}{{{}}}", f.unit.numer(), f.unit.denom()));
        }
    }
    if f.q_power == 1 {
        parts.push("q".to_string());
    } else if f.q_power > 1 {
        parts.push(format!("q^{{{}}}", f.q_power));
    }
    for (&i, &e) in &f.cyclo {
        if e == 1 {
            parts.push(format!("\\Phi_{{{i}}}"));
        } else {
            parts.push(format!("\\Phi_{{{i}}}^{{{e}}}"));
        }
    }
    if !f.residual.is_one() {
        parts.push(format!("\\left({}\\right)", latex_expanded(&f.residual)));
    }
    parts.join("\\,")
}

fn print_table(header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<w$}", c, w = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let head: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    println!("{}", line(&head));
    println!("{}", "-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
    for row in rows {
        println!("{}", line(row));
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

// ---------------------------------------------------------------------------
// Verb implementations
// ---------------------------------------------------------------------------

fn run(cli: Cli) -> Result<i32> {
    match cli.verb {
        Verb::Count { target, g, n, common } => cmd_count(&target, g, n, &common),
        Verb::Types { target, n, common } => cmd_types(&target, n, &common),
        Verb::Euler { target, g, n, common } => cmd_euler(&target, g, n, &common),
        Verb::Check { target, g, n, common } => cmd_check(&target, g, n, &common),
        Verb::Reproduce { figures, common } => cmd_reproduce(&figures, &common),
        Verb::Data { action } => match action {
            DataAction::Validate { file } => cmd_data_validate(&file),
        },
    }
}

fn cmd_count(target: &Target, g: u32, n: u32, common: &Common) -> Result<i32> {
    let ctx = make_context(&target.group, common)?;
    let result = count(&ctx, g, n, target.variant.into(), common.mode.into())?;
    emit_count(&result, common.format);
    Ok(0)
}

fn emit_count(result: &CountResult, format: Format) {
    let symbol = match result.variant {
        Variant::Multiplicative => "|X(F_q)|",
        Variant::Additive => "|Y(F_q)|",
    };
    match format {
        Format::Text => {
            println!(
                "group {}  genus {}  punctures {}  variant {}",
                result.group, result.g, result.n, result.variant.as_str()
            );
            println!("dimension {}", result.dimension);
            println!("valid for prime powers q = 1 mod {}", result.validity_modulus);
            println!("{symbol} = {}", result.polynomial);
            let p = &result.properties;
            println!(
                "palindromic {}  monic {}  nonnegative {}  value at 1 = {}",
                p.palindromic,
                p.monic,
                p.nonnegative,
                rational_str(&p.value_at_one)
            );
        }
        Format::Factored => println!("{}", factored_str(&result.polynomial)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&result.to_json()).expect("serializable")),
        Format::Latex => println!("{}", latex_factored(&result.polynomial)),
        Format::Csv => {
            println!("power,coefficient");
            for (k, c) in result.polynomial.coeffs().iter().enumerate() {
                println!("{k},{}", rational_str(c));
            }
        }
    }
}

fn cmd_types(target: &Target, n: Option<u32>, common: &Common) -> Result<i32> {
    let ctx = make_context(&target.group, common)?;
    match Variant::from(target.variant) {
        Variant::Multiplicative => {
            let recs = ctx.g_types()?;
            let mut header = vec![
                "type", "mass", "|L^F|", "rho~(1)", "rho(1)", "|W(L)|", "|[L]|", "pi0", "nu",
            ];
            if n.is_some() {
                header.push("S");
            }
            let mut rows = Vec::new();
            let mut json_rows = Vec::new();
            for rec in &recs {
                let pi0 = ctx.endoscopy_classes[rec.class_idx].pi0.to_string();
                let mut row = vec![
                    format!("[{},{}]", rec.class_label, rec.rho_label),
                    factored_str(&rec.mass),
                    factored_str(&rec.order_poly),
                    factored_str(&rec.generic_degree),
                    rec.dim_rho.to_string(),
                    rec.weyl_order.to_string(),
                    rec.orbit_size.to_string(),
                    pi0.clone(),
                    rec.nu.to_string(),
                ];
                if let Some(n) = n {
                    row.push(factored_str(&ctx.s_tau(rec, n)));
                }
                json_rows.push(serde_json::json!({
                    "class": rec.class_label,
                    "character": rec.rho_label,
                    "mass": factored_str(&rec.mass),
                    "group_order": factored_str(&rec.order_poly),
                    "generic_degree": factored_str(&rec.generic_degree),
                    "dim": rec.dim_rho,
                    "weyl_order": rec.weyl_order,
                    "class_size": rec.orbit_size,
                    "pi0": pi0,
                    "nu": rec.nu.to_string(),
                    "weight": n.map(|n| factored_str(&ctx.s_tau(rec, n))),
                }));
                rows.push(row);
            }
            emit_table(&header, &rows, &json_rows, common.format);
        }
        Variant::Additive => {
            let recs = ctx.lie_types()?;
            let mut header = vec![
                "type", "q^d", "|L^F|", "|orbit|", "green", "|W(L)|", "|[L]|", "mu",
            ];
            if n.is_some() {
                header.push("H");
            }
            let mut rows = Vec::new();
            let mut json_rows = Vec::new();
            for rec in &recs {
                let mut row = vec![
                    format!("[{},{}]", rec.class_label, rec.orbit_label),
                    format!("q^{}", rec.d_tau),
                    factored_str(&rec.order_poly),
                    factored_str(&rec.orbit_size_poly),
                    factored_str(&rec.green),
                    rec.weyl_order.to_string(),
                    rec.orbit_size.to_string(),
                    rec.mu.to_string(),
                ];
                if let Some(n) = n {
                    row.push(factored_str(&ctx.h_tau(rec, n)?));
                }
                json_rows.push(serde_json::json!({
                    "class": rec.class_label,
                    "orbit": rec.orbit_label,
                    "centralizer_power": rec.d_tau,
                    "group_order": factored_str(&rec.order_poly),
                    "orbit_size": factored_str(&rec.orbit_size_poly),
                    "green": factored_str(&rec.green),
                    "weyl_order": rec.weyl_order,
                    "class_size": rec.orbit_size,
                    "mu": rec.mu,
                    "weight": match n {
                        Some(n) => Some(factored_str(&ctx.h_tau(rec, n)?)),
                        None => None,
                    },
                }));
                rows.push(row);
            }
            emit_table(&header, &rows, &json_rows, common.format);
        }
    }
    Ok(0)
}

fn emit_table(header: &[&str], rows: &[Vec<String>], json_rows: &[serde_json::Value], format: Format) {
    match format {
        Format::Text | Format::Factored => print_table(header, rows),
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Array(json_rows.to_vec()))
                    .expect("serializable")
            );
        }
        Format::Csv => {
            println!("{}", header.join(","));
            for row in rows {
                println!(
                    "{}",
                    row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",")
                );
            }
        }
        Format::Latex => {
            println!("\\begin{{array}}{{{}}}", "l".repeat(header.len()));
            println!("{} \\\\", header.join(" & "));
            for row in rows {
                println!("{} \\\\", row.join(" & "));
            }
            println!("\\end{{array}}");
        }
    }
}

fn cmd_euler(target: &Target, g: u32, n: u32, common: &Common) -> Result<i32> {
    let ctx = make_context(&target.group, common)?;
    let variant: Variant = target.variant.into();
    let chi = counting::euler_characteristic(&ctx, g, n, variant, common.mode.into())?;
    match common.format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "group": ctx.datum.label,
                "g": g,
                "n": n,
                "variant": variant.as_str(),
                "euler_characteristic": chi.to_string(),
            })
        ),
        _ => println!("{chi}"),
    }
    Ok(0)
}

fn cmd_check(target: &Target, g: Option<u32>, n: Option<u32>, common: &Common) -> Result<i32> {
    let cells: Vec<(u32, u32)> = match (g, n) {
        (Some(g), Some(n)) => vec![(g, n)],
        (None, None) => {
            let mut cells = Vec::new();
            for g in 0..=2u32 {
                for n in 1..=4u32 {
                    if 2 * g + n >= 3 {
                        cells.push((g, n));
                    }
                }
            }
            cells
        }
        _ => usage_error("check needs either both -g and -n or neither"),
    };
    let ctx = make_context(&target.group, common)?;
    let outcomes = check_grid(&ctx, &cells, common.mode.into())?;
    let mut all_ok = true;
    let mut json_rows = Vec::new();
    for o in &outcomes {
        let structural = o.verified();
        all_ok &= structural && o.y_nonnegative;
        match common.format {
            Format::Json => json_rows.push(serde_json::json!({
                "g": o.g,
                "n": o.n,
                "x_palindromic": o.x_palindromic,
                "x_leading_matches_components": o.x_leading_matches_components,
                "x_degree_matches": o.x_degree_matches,
                "x_integral": o.x_integral,
                "y_monic": o.y_monic,
                "y_degree_matches": o.y_degree_matches,
                "y_integral": o.y_integral,
                "y_nonnegative": o.y_nonnegative,
                "euler_x": rational_str(&o.euler_x),
                "euler_y": rational_str(&o.euler_y),
            })),
            _ => {
                let mut failures = Vec::new();
                if !o.x_palindromic {
                    failures.push("X not palindromic");
                }
                if !o.x_leading_matches_components {
                    failures.push("X leading coefficient mismatch");
                }
                if !o.x_degree_matches {
                    failures.push("X degree mismatch");
                }
                if !o.x_integral {
                    failures.push("X has non-integer coefficients");
                }
                if !o.y_monic {
                    failures.push("Y not monic");
                }
                if !o.y_degree_matches {
                    failures.push("Y degree mismatch");
                }
                if !o.y_integral {
                    failures.push("Y has non-integer coefficients");
                }
                if !o.y_nonnegative {
                    failures.push("Y has a negative coefficient");
                }
                let verdict = if failures.is_empty() {
                    "ok".to_string()
                } else {
                    format!("FAIL: {}", failures.join(", "))
                };
                println!(
                    "(g={}, n={})  chi(X) = {:>12}  chi(Y) = {:>12}  {}",
                    o.g,
                    o.n,
                    rational_str(&o.euler_x),
                    rational_str(&o.euler_y),
                    verdict
                );
            }
        }
    }
    match common.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::Value::Array(json_rows)).expect("serializable")
        ),
        _ => {
            println!(
                "summary: {} cells, {}",
                outcomes.len(),
                if all_ok {
                    "all structural checks passed, nonnegativity consistent"
                } else {
                    "FAILURES above"
                }
            );
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_reproduce(figures: &[u32], common: &Common) -> Result<i32> {
    let figures: Vec<u32> = if figures.is_empty() {
        golden::FIGURES.to_vec()
    } else {
        figures.to_vec()
    };
    for &f in &figures {
        if !golden::FIGURES.contains(&f) {
            usage_error(&format!(
                "no golden data for figure {f}; known figures: {:?}",
                golden::FIGURES
            ));
        }
    }
    let registry = make_registry(&common.data_dir)?;
    let reports = golden::reproduce(&figures, &registry, common.mode.into())?;
    let mut pass = 0usize;
    let mut skip = 0usize;
    let mut fail = 0usize;
    for report in &reports {
        println!("{}", report.line());
        match report.status {
            golden::CellStatus::Pass => pass += 1,
            golden::CellStatus::Skipped(_) => skip += 1,
            golden::CellStatus::Fail(_) => fail += 1,
        }
    }
    println!("summary: {pass} pass, {skip} skipped, {fail} failed");
    Ok(if fail == 0 { 0 } else { 1 })
}

fn cmd_data_validate(file: &Path) -> Result<i32> {
    let text = std::fs::read_to_string(file)?;
    let pack = GroupDataPack::from_json_str(&text)?;
    pack.validate()?;
    println!(
        "ok: pack {} ({} character rows, {} orbit rows, {} outer generators)",
        pack.key,
        pack.unipotent.len(),
        pack.nilpotent.len(),
        pack.outer_action.len()
    );
    Ok(0)
}
