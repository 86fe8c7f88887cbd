//! Top-level acceptance suite.  Each numbered criterion prints exactly one
//! pass/fail line; the test fails if any criterion fails.  Every comparison
//! is exact — integer/rational equality with zero tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use charcount::cartan;
use charcount::counting::{check_grid, count, euler_characteristic, ExecMode, Variant};
use charcount::golden::{self, CellStatus};
use charcount::group_data::Registry;
use charcount::poly::QPolynomial;
use charcount::poset::SubsystemPoset;
use charcount::root_data::RootDatum;
use charcount::type_engine::TypeContext;
use charcount::typea;
use charcount::weyl;

const MODE: ExecMode = ExecMode::Parallel;

type Verdict = Result<Option<String>, String>;

fn registry() -> Registry {
    // Environment packs participate so the optional tail of criterion 6 can
    // activate when the user installs the large-rank tables.
    Registry::from_environment().expect("bundled data loads")
}

fn adjoint(spec: &str) -> RootDatum {
    RootDatum::adjoint(&cartan::parse_products(spec).unwrap()).unwrap()
}

fn context(spec: &str, registry: &Registry) -> Result<TypeContext, String> {
    let datum = if let Some(n) = spec.strip_prefix("GL") {
        RootDatum::gl(n.parse().unwrap()).map_err(|e| e.to_string())?
    } else {
        adjoint(spec)
    };
    TypeContext::new(datum, registry).map_err(|e| e.to_string())
}

/// Run the golden harness on the given figures and demand zero failures;
/// returns the notes attached to passing cells.
fn reproduce_clean(figures: &[u32], registry: &Registry) -> Result<Vec<String>, String> {
    let reports = golden::reproduce(figures, registry, MODE).map_err(|e| e.to_string())?;
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.line())
        .collect();
    if !failures.is_empty() {
        return Err(format!("{} cell(s) disagree:\n{}", failures.len(), failures.join("\n")));
    }
    Ok(reports.iter().filter_map(|r| r.note.clone()).collect())
}

fn eval_at(p: &QPolynomial, q: i64) -> BigRational {
    p.eval(&BigRational::from_integer(BigInt::from(q)))
}

// ---------------------------------------------------------------------------

fn criterion_1(registry: &Registry) -> Verdict {
    let reports = golden::reproduce(&[1], registry, MODE).map_err(|e| e.to_string())?;
    if reports.len() != 15 {
        return Err(format!("expected 15 classification rows, saw {}", reports.len()));
    }
    for r in &reports {
        if r.status != CellStatus::Pass {
            return Err(r.line());
        }
    }
    Ok(None)
}

fn criterion_2(registry: &Registry) -> Verdict {
    let so5 = context("B2", registry)?;
    let g2 = context("G2", registry)?;
    let counts = [
        ("SO5 character types", so5.g_types().map_err(|e| e.to_string())?.len(), 14),
        ("so5 orbit types", so5.lie_types().map_err(|e| e.to_string())?.len(), 10),
        ("G2 character types", g2.g_types().map_err(|e| e.to_string())?.len(), 18),
        ("g2 orbit types", g2.lie_types().map_err(|e| e.to_string())?.len(), 12),
    ];
    for (what, got, want) in counts {
        if got != want {
            return Err(format!("{what}: computed {got}, expected {want}"));
        }
    }
    Ok(None)
}

fn criterion_3(registry: &Registry) -> Verdict {
    reproduce_clean(&[5, 7], registry)?;
    Ok(Some("weight column compared after the Phi1^2 normalization".into()))
}

fn criterion_4(registry: &Registry) -> Verdict {
    reproduce_clean(&[6, 8], registry)?;
    Ok(None)
}

fn criterion_5(registry: &Registry) -> Verdict {
    let reports = golden::reproduce(&[9, 10, 11, 12], registry, MODE).map_err(|e| e.to_string())?;
    if reports.len() != 20 {
        return Err(format!("expected 20 polynomial cells, saw {}", reports.len()));
    }
    let failures: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.line()).collect();
    if !failures.is_empty() {
        return Err(failures.join("\n"));
    }
    Ok(None)
}

fn criterion_6(registry: &Registry) -> Verdict {
    let reports = golden::reproduce(&[13, 14], registry, MODE).map_err(|e| e.to_string())?;
    let mut passed = Vec::new();
    let mut skipped = Vec::new();
    for r in &reports {
        match &r.status {
            CellStatus::Pass => passed.push(r.cell.clone()),
            CellStatus::Skipped(_) => skipped.push(r.cell.clone()),
            CellStatus::Fail(_) => return Err(r.line()),
        }
    }
    for required in ["B3 (0,3)", "C3 (0,3)", "D4 (0,3)"] {
        let hits = passed.iter().filter(|c| c.as_str() == required).count();
        if hits != 2 {
            return Err(format!("{required} matched in {hits} of 2 tables"));
        }
    }
    let note = if skipped.is_empty() {
        "including the optional F4/E6 rows (user data pack present)".to_string()
    } else {
        let mut unique: Vec<String> = Vec::new();
        for cell in skipped {
            if !unique.contains(&cell) {
                unique.push(cell);
            }
        }
        format!("optional rows skipped pending a user data pack: {}", unique.join(", "))
    };
    Ok(Some(note))
}

fn criterion_7(registry: &Registry) -> Verdict {
    let notes = reproduce_clean(&[3, 4], registry)?;
    if notes.len() != 10 {
        // The additive closed forms for GL3 and G2 need the documented
        // transcription fixes at every one of the five grid cells each.
        return Err(format!("expected 10 documented-correction notes, saw {}", notes.len()));
    }

    // Vanishing at q = 1 for higher genus, and for GL2 already at genus 1.
    for spec in ["GL2", "GL3", "B2", "G2"] {
        let ctx = context(spec, registry)?;
        for (g, n) in [(2, 1), (2, 2)] {
            let chi = euler_characteristic(&ctx, g, n, Variant::Multiplicative, MODE)
                .map_err(|e| e.to_string())?;
            if !chi.is_zero() {
                return Err(format!("{spec} chi(X) at ({g},{n}) = {chi}, expected 0"));
            }
        }
    }
    let gl2 = context("GL2", registry)?;
    for (g, n) in [(1, 1), (1, 2), (1, 3)] {
        let chi = euler_characteristic(&gl2, g, n, Variant::Multiplicative, MODE)
            .map_err(|e| e.to_string())?;
        if !chi.is_zero() {
            return Err(format!("GL2 chi(X) at ({g},{n}) = {chi}, expected 0"));
        }
    }
    Ok(Some(
        "additive closed forms for GL3 and G2 checked against the documented corrected transcriptions"
            .into(),
    ))
}

fn grid_cells() -> Vec<(u32, u32)> {
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

const GRID_GROUPS: [(&str, i64); 5] = [("GL2", 1), ("GL3", 1), ("GL4", 1), ("B2", 2), ("G2", 1)];

fn criterion_8(registry: &Registry) -> Verdict {
    for (spec, expect_leading) in GRID_GROUPS {
        let ctx = context(spec, registry)?;
        let dim_g = ctx.datum.dimension();
        let dim_z = ctx.datum.center_dim();
        let dim_t = ctx.datum.rank;
        for (g, n) in grid_cells() {
            let expected_deg = (2 * g as i64 - 2 + n as i64) * dim_g as i64 + 2 * dim_z as i64
                - n as i64 * dim_t as i64;
            let x = count(&ctx, g, n, Variant::Multiplicative, MODE).map_err(|e| e.to_string())?;
            let y = count(&ctx, g, n, Variant::Additive, MODE).map_err(|e| e.to_string())?;
            let cell = format!("{spec} ({g},{n})");
            if x.properties.degree as i64 != expected_deg || y.properties.degree as i64 != expected_deg {
                return Err(format!(
                    "{cell}: degrees X {} / Y {}, formula gives {expected_deg}",
                    x.properties.degree, y.properties.degree
                ));
            }
            if !x.properties.palindromic {
                return Err(format!("{cell}: X is not palindromic"));
            }
            if !x.properties.integral || !y.properties.integral {
                return Err(format!("{cell}: non-integer coefficients survived the exact divisions"));
            }
            if x.properties.leading != BigRational::from_integer(BigInt::from(expect_leading)) {
                return Err(format!(
                    "{cell}: X leading coefficient {}, expected {expect_leading}",
                    x.properties.leading
                ));
            }
            if !y.properties.monic {
                return Err(format!("{cell}: Y is not monic"));
            }
        }
    }
    // The component-count claim for the one bundled group whose dual centre
    // has more than two components.
    let d4 = context("D4", registry)?;
    let x = count(&d4, 0, 3, Variant::Multiplicative, MODE).map_err(|e| e.to_string())?;
    if x.properties.leading != BigRational::from_integer(BigInt::from(4)) {
        return Err(format!("D4 (0,3): X leading coefficient {}, expected 4", x.properties.leading));
    }
    Ok(None)
}

fn criterion_9(registry: &Registry) -> Verdict {
    let mut violations = Vec::new();
    for (spec, _) in GRID_GROUPS {
        let ctx = context(spec, registry)?;
        for outcome in check_grid(&ctx, &grid_cells(), MODE).map_err(|e| e.to_string())? {
            if !outcome.y_nonnegative {
                violations.push(format!("{spec} ({},{})", outcome.g, outcome.n));
            }
        }
    }
    if !violations.is_empty() {
        // A genuine counterexample to the positivity conjecture must surface
        // as a hard failure, never be absorbed.
        return Err(format!(
            "negative additive-count coefficient found at: {}",
            violations.join(", ")
        ));
    }
    Ok(Some("all additive counts on the grid are coefficient-nonnegative".into()))
}

fn criterion_10(registry: &Registry) -> Verdict {
    // (a) Green polynomials against brute-force flag enumeration.
    for n in 2..=3usize {
        for lambda in typea::partitions(n) {
            let u = typea::jordan_unipotent(&lambda);
            for p in [2i64, 3] {
                let brute = typea::stable_flag_count(&u, p as u64);
                let poly = eval_at(&typea::green_polynomial(&lambda), p);
                if BigRational::from_integer(BigInt::from(brute)) != poly {
                    return Err(format!(
                        "Green value for {lambda:?} at q = {p}: table {poly}, brute force {brute}"
                    ));
                }
            }
        }
    }

    // (b) Nilpotent-cone mass: the orbit sizes of every pack sum to
    // q^(number of roots).
    for key in registry.keys() {
        let pack = registry
            .component_pack(&pack_component(&key)?)
            .map_err(|e| e.to_string())?;
        let datum = adjoint(&key);
        let mut mass = QPolynomial::zero();
        for orbit in &pack.nilpotent {
            mass += &orbit.size;
        }
        let expected = QPolynomial::q_pow(datum.roots.len());
        if mass != expected {
            return Err(format!("pack {key}: nilpotent masses sum to {mass}, expected {expected}"));
        }
        if key == "B2" && eval_at(&mass, 2) != BigRational::from_integer(BigInt::from(256)) {
            return Err("pack B2: nilpotent mass at q = 2 is not 256".into());
        }
    }

    // (c) Flag identity: sum of dim * generic degree over the characters of
    // a pack equals the q-analogue of the flag-variety point count.
    for key in registry.keys() {
        let pack = registry
            .component_pack(&pack_component(&key)?)
            .map_err(|e| e.to_string())?;
        let datum = adjoint(&key);
        let full = datum.full_subsystem();
        let num_positive = datum.roots.len() / 2;
        let rank = datum.rank;
        let order = weyl::order_polynomial(&datum, &full).map_err(|e| e.to_string())?;
        let denominator = &QPolynomial::q_pow(num_positive)
            * &QPolynomial::q_pow_minus_one(1).pow(rank as u32);
        let expected = order.exact_div(&denominator).map_err(|e| e.to_string())?;
        let mut sum = QPolynomial::zero();
        for row in &pack.unipotent {
            sum += &(&QPolynomial::from_coeffs(&[row.dim as i64]) * &row.generic_degree);
        }
        if sum != expected {
            return Err(format!("pack {key}: flag identity fails: {sum} != {expected}"));
        }
    }

    // (d) Moebius axiom on every constructed subsystem poset.
    for spec in ["GL3", "B2", "G2"] {
        let datum = if spec == "GL3" { RootDatum::gl(3).unwrap() } else { adjoint(spec) };
        for elements in [datum.enumerate_levis(), datum.enumerate_endoscopies()] {
            let poset = SubsystemPoset::new(elements);
            let n = poset.len();
            for a in 0..n {
                for b in 0..n {
                    if !poset.leq_idx(a, b) {
                        continue;
                    }
                    let mut down = 0i64;
                    let mut up = 0i64;
                    for z in 0..n {
                        if poset.leq_idx(a, z) && poset.leq_idx(z, b) {
                            down += poset.moebius_idx(a, z).map_err(|e| e.to_string())?;
                            up += poset.moebius_idx(z, b).map_err(|e| e.to_string())?;
                        }
                    }
                    let expected = i64::from(a == b);
                    if down != expected || up != expected {
                        return Err(format!(
                            "{spec}: Moebius sums over [{a},{b}] are ({down},{up}), expected {expected}"
                        ));
                    }
                }
            }
        }
    }

    // (e) Hand-derived GL2 values.
    let gl2 = context("GL2", registry)?;
    let hand: [(u32, u32, Variant, &[i64]); 4] = [
        (0, 3, Variant::Multiplicative, &[1]),
        (0, 4, Variant::Multiplicative, &[1, 4, 1]),
        (1, 1, Variant::Additive, &[0, 0, 0, 1, 1]),
        (0, 3, Variant::Additive, &[1]),
    ];
    for (g, n, variant, coeffs) in hand {
        let got = count(&gl2, g, n, variant, MODE).map_err(|e| e.to_string())?;
        let want = QPolynomial::from_coeffs(coeffs);
        if got.polynomial != want {
            return Err(format!(
                "GL2 {} at ({g},{n}): computed {}, hand value {want}",
                variant.as_str(),
                got.polynomial
            ));
        }
    }
    Ok(None)
}

fn pack_component(key: &str) -> Result<cartan::ComponentType, String> {
    let comps = cartan::parse_products(key).map_err(|e| e.to_string())?;
    if comps.len() != 1 {
        return Err(format!("pack key {key} is not a single component"));
    }
    Ok(cartan::ComponentType {
        family: comps[0].0,
        rank: comps[0].1,
        length: cartan::LengthClass::Only,
    })
}

// ---------------------------------------------------------------------------

#[test]
fn acceptance() {
    let registry = registry();
    type Criterion = fn(&Registry) -> Verdict;
    let criteria: [(u32, &str, Criterion); 10] = [
        (1, "isolated-class classification table", criterion_1),
        (2, "type counts 14/18/10/12", criterion_2),
        (3, "character-type weight tables", criterion_3),
        (4, "orbit-type weight tables", criterion_4),
        (5, "twenty count polynomials", criterion_5),
        (6, "rank-3/4 count rows", criterion_6),
        (7, "Euler-characteristic closed forms", criterion_7),
        (8, "structural grid: degrees, palindromicity, leading terms", criterion_8),
        (9, "nonnegativity report for additive counts", criterion_9),
        (10, "independent oracles: flags, masses, Moebius, hand values", criterion_10),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        match run(&registry) {
            Ok(note) => {
                let suffix = note.map(|n| format!("  [{n}]")).unwrap_or_default();
                println!("criterion {id:>2}: PASS  {name}{suffix}");
            }
            Err(why) => {
                println!("criterion {id:>2}: FAIL  {name}\n{why}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed acceptance criteria: {failed:?}");
}
