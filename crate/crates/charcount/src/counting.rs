//! Assembly of the exact point-count polynomials.
//!
//! The multiplicative count sums, over character types, powers of the type
//! mass weighted by puncture-dependent class weights; the additive count
//! sums, over orbit types, Green-function factors against the Levi Moebius
//! weights.  Both assemblies stay in exact big-rational arithmetic, end in a
//! single exact division, and report the structural properties of the result
//! (degree, palindromicity, monicity, leading coefficient, nonnegativity,
//! value at one).

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::error::{Error, Result};
use crate::poly::QPolynomial;
use crate::root_data::RootDatum;
use crate::type_engine::TypeContext;

/// How per-type terms are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    /// Evaluate terms on the rayon thread pool.  Falls back to sequential
    /// evaluation when the `parallel` feature is disabled.
    #[default]
    Parallel,
    /// Evaluate terms one after another.
    Sequential,
}

/// Which character variety is being counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Conjugation action on group-valued tuples.
    Multiplicative,
    /// Adjoint action on Lie-algebra-valued tuples.
    Additive,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Multiplicative => "multiplicative",
            Variant::Additive => "additive",
        }
    }
}

/// Structural facts about a counting polynomial.
#[derive(Debug, Clone)]
pub struct StructuralReport {
    pub degree: usize,
    pub palindromic: bool,
    pub monic: bool,
    pub leading: BigRational,
    pub nonnegative: bool,
    pub integral: bool,
    pub value_at_one: BigRational,
}

/// One completed count with its context and property report.
#[derive(Debug, Clone)]
pub struct CountResult {
    pub group: String,
    pub g: u32,
    pub n: u32,
    pub variant: Variant,
    pub polynomial: QPolynomial,
    /// Expected dimension of the variety (equals the degree).
    pub dimension: usize,
    /// Counts hold for prime powers q = 1 mod this value (very good
    /// characteristic, q large enough).
    pub validity_modulus: BigInt,
    pub properties: StructuralReport,
}

fn rational_str(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl CountResult {
    pub fn to_json(&self) -> serde_json::Value {
        let coefficients: Vec<String> = self
            .polynomial
            .coeffs()
            .iter()
            .map(rational_str)
            .collect();
        let factored = self
            .polynomial
            .factor()
            .map(|f| f.to_string())
            .unwrap_or_else(|_| self.polynomial.to_string());
        json!({
            "group": self.group,
            "g": self.g,
            "n": self.n,
            "variant": self.variant.as_str(),
            "dimension": self.dimension,
            "validity_modulus": self.validity_modulus.to_string(),
            "coefficients": coefficients,
            "factored": factored,
            "properties": {
                "palindromic": self.properties.palindromic,
                "monic": self.properties.monic,
                "nonnegative": self.properties.nonnegative,
                "leading": rational_str(&self.properties.leading),
                "value_at_1": rational_str(&self.properties.value_at_one),
            },
        })
    }
}

fn validate_surface(g: u32, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Unsupported(
            "the count requires at least one puncture".into(),
        ));
    }
    if 2 * g + n < 3 {
        return Err(Error::EmptyVariety { g, n });
    }
    Ok(())
}

/// Dimension of the variety: (2g-2+n) dim G + 2 dim Z - n dim T.
pub fn expected_dimension(datum: &RootDatum, g: u32, n: u32) -> usize {
    let euler = 2 * g as i64 + n as i64 - 2;
    let d = euler * datum.dimension() as i64 + 2 * datum.center_dim() as i64
        - n as i64 * datum.rank as i64;
    d.max(0) as usize
}

/// Sum `term(0) + ... + term(count-1)`, in parallel when requested and
/// compiled in.  Polynomial addition is commutative and exact, so the
/// result does not depend on evaluation order.
fn sum_terms<F>(count: usize, mode: ExecMode, term: F) -> QPolynomial
where
    F: Fn(usize) -> QPolynomial + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if mode == ExecMode::Parallel {
            use rayon::prelude::*;
            return (0..count)
                .into_par_iter()
                .map(&term)
                .reduce(QPolynomial::zero, |mut a, b| {
                    a += &b;
                    a
                });
        }
    }
    let _ = mode;
    let mut acc = QPolynomial::zero();
    for i in 0..count {
        acc += &term(i);
    }
    acc
}

fn finish(
    ctx: &TypeContext,
    g: u32,
    n: u32,
    variant: Variant,
    polynomial: QPolynomial,
) -> CountResult {
    let properties = StructuralReport {
        degree: polynomial.degree().unwrap_or(0),
        palindromic: polynomial.is_palindromic(),
        monic: polynomial.is_monic(),
        leading: polynomial.leading(),
        nonnegative: polynomial.has_nonnegative_coeffs(),
        integral: polynomial.has_integer_coeffs(),
        value_at_one: polynomial.value_at_one(),
    };
    CountResult {
        group: ctx.datum.label.clone(),
        g,
        n,
        variant,
        dimension: expected_dimension(&ctx.datum, g, n),
        validity_modulus: ctx.validity_modulus.clone(),
        polynomial,
        properties,
    }
}

/// Number of points of the multiplicative character variety for a genus-g
/// surface with n punctures, as a polynomial in q.
pub fn count_multiplicative(
    ctx: &TypeContext,
    g: u32,
    n: u32,
    mode: ExecMode,
) -> Result<CountResult> {
    validate_surface(g, n)?;
    let types = ctx.g_types()?;
    let exponent = 2 * g + n - 2;
    let weights: Vec<QPolynomial> = types.iter().map(|t| ctx.s_tau(t, n)).collect();
    let sum = sum_terms(types.len(), mode, |i| {
        &types[i].mass.pow(exponent) * &weights[i]
    });
    let numerator = &sum * &ctx.centre_order();
    let polynomial = numerator.exact_div(&ctx.torus_order().pow(n))?;
    Ok(finish(ctx, g, n, Variant::Multiplicative, polynomial))
}

/// Number of points of the additive (Lie-algebra) character variety, as a
/// polynomial in q.
pub fn count_additive(ctx: &TypeContext, g: u32, n: u32, mode: ExecMode) -> Result<CountResult> {
    validate_surface(g, n)?;
    let types = ctx.lie_types()?;
    let factors: Vec<QPolynomial> = types
        .iter()
        .map(|t| ctx.h_tau(t, n))
        .collect::<Result<_>>()?;
    let sum = sum_terms(types.len(), mode, |i| {
        factors[i].shift(g as usize * types[i].d_tau)
    });
    let dim_g = ctx.datum.dimension();
    let numerator = &sum * &ctx.centre_order();
    let polynomial = if g >= 1 {
        numerator
            .shift(dim_g * (g as usize - 1))
            .exact_div(&ctx.order_poly)?
    } else {
        numerator.exact_div(&ctx.order_poly.shift(dim_g))?
    };
    Ok(finish(ctx, g, n, Variant::Additive, polynomial))
}

pub fn count(ctx: &TypeContext, g: u32, n: u32, variant: Variant, mode: ExecMode) -> Result<CountResult> {
    match variant {
        Variant::Multiplicative => count_multiplicative(ctx, g, n, mode),
        Variant::Additive => count_additive(ctx, g, n, mode),
    }
}

/// The counting polynomial evaluated at q = 1.
pub fn euler_characteristic(
    ctx: &TypeContext,
    g: u32,
    n: u32,
    variant: Variant,
    mode: ExecMode,
) -> Result<BigInt> {
    let result = count(ctx, g, n, variant, mode)?;
    let value = result.properties.value_at_one;
    if !value.is_integer() {
        return Err(Error::InvariantViolation(format!(
            "value at one is not an integer: {value}"
        )));
    }
    Ok(value.to_integer())
}

/// Leading coefficient of the multiplicative count next to the component
/// count of the dual centre; the two must agree.
pub fn component_and_leading_check(
    ctx: &TypeContext,
    g: u32,
    n: u32,
    mode: ExecMode,
) -> Result<(BigRational, BigInt)> {
    let result = count_multiplicative(ctx, g, n, mode)?;
    Ok((result.properties.leading, ctx.pi0_full.clone()))
}

/// Property verdicts for one grid cell.  Everything except nonnegativity is
/// a proved structural fact; coefficient nonnegativity of the additive
/// count is a conjecture and is reported, never asserted.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub g: u32,
    pub n: u32,
    pub x_palindromic: bool,
    pub x_leading_matches_components: bool,
    pub x_degree_matches: bool,
    pub x_integral: bool,
    pub y_monic: bool,
    pub y_degree_matches: bool,
    pub y_integral: bool,
    pub y_nonnegative: bool,
    pub euler_x: BigRational,
    pub euler_y: BigRational,
}

impl CheckOutcome {
    /// All facts that are theorems hold.  Nonnegativity is excluded.
    pub fn verified(&self) -> bool {
        self.x_palindromic
            && self.x_leading_matches_components
            && self.x_degree_matches
            && self.x_integral
            && self.y_monic
            && self.y_degree_matches
            && self.y_integral
    }
}

/// Run both counts over a grid of (g, n) cells and collect the property
/// verdicts.
pub fn check_grid(
    ctx: &TypeContext,
    cells: &[(u32, u32)],
    mode: ExecMode,
) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for &(g, n) in cells {
        let x = count_multiplicative(ctx, g, n, mode)?;
        let y = count_additive(ctx, g, n, mode)?;
        out.push(CheckOutcome {
            g,
            n,
            x_palindromic: x.properties.palindromic,
            x_leading_matches_components: x.properties.leading
                == BigRational::from_integer(ctx.pi0_full.clone()),
            x_degree_matches: x.properties.degree == x.dimension,
            x_integral: x.properties.integral,
            y_monic: y.properties.monic,
            y_degree_matches: y.properties.degree == y.dimension,
            y_integral: y.properties.integral,
            y_nonnegative: y.properties.nonnegative,
            euler_x: x.properties.value_at_one,
            euler_y: y.properties.value_at_one,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan;
    use crate::group_data::Registry;
    use num_traits::{One, Zero};

    fn ctx(spec: &str) -> TypeContext {
        let datum = RootDatum::adjoint(&cartan::parse_products(spec).unwrap()).unwrap();
        TypeContext::new(datum, &Registry::bundled().unwrap()).unwrap()
    }

    fn gl(n: usize) -> TypeContext {
        TypeContext::new(RootDatum::gl(n).unwrap(), &Registry::bundled().unwrap()).unwrap()
    }

    fn poly(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(coeffs)
    }

    const SEQ: ExecMode = ExecMode::Sequential;

    #[test]
    fn gl2_counts_by_hand() {
        let ctx = gl(2);
        let x = count_multiplicative(&ctx, 0, 3, SEQ).unwrap();
        assert_eq!(x.polynomial, poly(&[1]));
        assert_eq!(x.dimension, 0);
        let x = count_multiplicative(&ctx, 0, 4, SEQ).unwrap();
        assert_eq!(x.polynomial, poly(&[1, 4, 1]));
        let y = count_additive(&ctx, 1, 1, SEQ).unwrap();
        assert_eq!(y.polynomial, poly(&[0, 0, 0, 1, 1]));
        let y = count_additive(&ctx, 0, 3, SEQ).unwrap();
        assert_eq!(y.polynomial, poly(&[1]));
    }

    #[test]
    fn so5_counts_match_reference_rows() {
        let ctx = ctx("B2");
        let x = count_multiplicative(&ctx, 0, 3, SEQ).unwrap();
        assert_eq!(x.polynomial, poly(&[2, 12, 48, 12, 2]));
        assert!(x.properties.palindromic);
        assert_eq!(x.dimension, 4);
        let y = count_additive(&ctx, 0, 3, SEQ).unwrap();
        assert_eq!(y.polynomial, poly(&[0, 0, 20, 6, 1]));
        assert!(y.properties.monic);
        assert_eq!(y.dimension, 4);
    }

    #[test]
    fn g2_counts_match_reference_rows() {
        let ctx = ctx("G2");
        let x = count_multiplicative(&ctx, 0, 3, SEQ).unwrap();
        assert_eq!(x.polynomial, poly(&[1, 6, 20, 58, 180, 58, 20, 6, 1]));
        let y = count_additive(&ctx, 1, 1, SEQ).unwrap();
        assert_eq!(y.polynomial, poly(&[0, 0, 0, 0, 0, 0, 2, 8, 9, 5, 3, 2, 1]));
    }

    #[test]
    fn stretch_groups_match_reference_rows() {
        let b3 = ctx("B3");
        let x = count_multiplicative(&b3, 0, 3, SEQ).unwrap();
        assert_eq!(
            x.polynomial,
            poly(&[2, 18, 88, 312, 952, 2478, 4980, 2478, 952, 312, 88, 18, 2])
        );
        let y = count_additive(&b3, 0, 3, SEQ).unwrap();
        assert_eq!(
            y.polynomial,
            poly(&[0, 0, 0, 0, 0, 0, 1535, 948, 412, 147, 43, 9, 1])
        );

        let c3 = ctx("C3");
        let x = count_multiplicative(&c3, 0, 3, SEQ).unwrap();
        assert_eq!(
            x.polynomial,
            poly(&[2, 18, 88, 320, 970, 2506, 5060, 2506, 970, 320, 88, 18, 2])
        );
        let y = count_additive(&c3, 0, 3, SEQ).unwrap();
        assert_eq!(
            y.polynomial,
            poly(&[0, 0, 0, 0, 0, 0, 1533, 946, 413, 148, 43, 9, 1])
        );

        let d4 = ctx("D4");
        let x = count_multiplicative(&d4, 0, 3, SEQ).unwrap();
        assert_eq!(
            x.polynomial,
            poly(&[
                4, 48, 308, 1408, 5140, 16176, 43748, 96256, 152864, 96256, 43748, 16176, 5140,
                1408, 308, 48, 4
            ])
        );
        assert_eq!(x.properties.leading, BigRational::from_integer(d4.pi0_full.clone()));
        let y = count_additive(&d4, 0, 3, SEQ).unwrap();
        assert_eq!(
            y.polynomial,
            poly(&[
                0, 0, 0, 0, 0, 0, 0, 0, 24492, 19080, 9451, 3668, 1206, 340, 76, 12, 1
            ])
        );
    }

    #[test]
    fn surface_validation() {
        let ctx = gl(2);
        assert!(matches!(
            count_multiplicative(&ctx, 0, 1, SEQ),
            Err(Error::EmptyVariety { g: 0, n: 1 })
        ));
        assert!(matches!(
            count_multiplicative(&ctx, 0, 2, SEQ),
            Err(Error::EmptyVariety { .. })
        ));
        assert!(matches!(
            count_additive(&ctx, 2, 0, SEQ),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn euler_characteristics() {
        // Higher genus kills the multiplicative Euler characteristic.
        let so5 = ctx("B2");
        assert_eq!(
            euler_characteristic(&so5, 2, 1, Variant::Multiplicative, SEQ).unwrap(),
            BigInt::zero()
        );
        // Genus one with a positive-dimensional centre does too.
        let gl2 = gl(2);
        assert_eq!(
            euler_characteristic(&gl2, 1, 1, Variant::Multiplicative, SEQ).unwrap(),
            BigInt::zero()
        );
        // Additive side: matches the closed form 1 + 2^(n-2)(4g+n-3).
        assert_eq!(
            euler_characteristic(&gl2, 1, 1, Variant::Additive, SEQ).unwrap(),
            BigInt::from(2)
        );
        // Additive so5 at (0,3): 1 + 6 + 20.
        assert_eq!(
            euler_characteristic(&so5, 0, 3, Variant::Additive, SEQ).unwrap(),
            BigInt::from(27)
        );
    }

    #[test]
    fn genus_one_multiplicative_euler_closed_forms() {
        // For these adjoint groups the genus-one multiplicative Euler value
        // grows geometrically in the puncture count, with ratio equal to the
        // torus-class weight (numerically the Weyl-group order).
        let so5 = ctx("B2");
        let g2 = ctx("G2");
        for n in 1..=3u32 {
            assert_eq!(
                euler_characteristic(&so5, 1, n, Variant::Multiplicative, SEQ).unwrap(),
                BigInt::from(72) * BigInt::from(8).pow(n - 1),
                "SO5, n = {n}"
            );
            assert_eq!(
                euler_characteristic(&g2, 1, n, Variant::Multiplicative, SEQ).unwrap(),
                BigInt::from(96) * BigInt::from(12).pow(n - 1),
                "G2, n = {n}"
            );
        }
    }

    #[test]
    fn modes_agree() {
        let so5 = ctx("B2");
        for &(g, n) in &[(0u32, 3u32), (1, 1), (1, 2)] {
            let a = count_multiplicative(&so5, g, n, ExecMode::Parallel).unwrap();
            let b = count_multiplicative(&so5, g, n, ExecMode::Sequential).unwrap();
            assert_eq!(a.polynomial, b.polynomial);
            let a = count_additive(&so5, g, n, ExecMode::Parallel).unwrap();
            let b = count_additive(&so5, g, n, ExecMode::Sequential).unwrap();
            assert_eq!(a.polynomial, b.polynomial);
        }
    }

    #[test]
    fn component_check_and_grid() {
        let so5 = ctx("B2");
        let (leading, pi0) = component_and_leading_check(&so5, 0, 3, SEQ).unwrap();
        assert_eq!(leading, BigRational::from_integer(pi0.clone()));
        assert_eq!(pi0, BigInt::from(2));

        let outcomes = check_grid(&so5, &[(0, 3), (0, 4), (1, 1), (1, 2)], SEQ).unwrap();
        for o in &outcomes {
            assert!(o.verified(), "cell ({}, {})", o.g, o.n);
            assert!(o.y_nonnegative, "cell ({}, {})", o.g, o.n);
        }
    }

    #[test]
    fn json_shape() {
        let res = count_multiplicative(&ctx("B2"), 0, 3, SEQ).unwrap();
        let v = res.to_json();
        assert_eq!(v["group"], "B2");
        assert_eq!(v["variant"], "multiplicative");
        assert_eq!(v["coefficients"][0], "2");
        assert_eq!(v["properties"]["palindromic"], true);
        assert_eq!(v["validity_modulus"], "4");
    }

    #[test]
    fn torus_count_is_a_power_of_phi1() {
        // Rank-one torus: (q-1)^(2g) for every valid surface.
        let t = gl(1);
        for &(g, n) in &[(0u32, 3u32), (1, 1), (1, 2), (2, 1)] {
            let x = count_multiplicative(&t, g, n, SEQ).unwrap();
            assert_eq!(
                x.polynomial,
                QPolynomial::q_pow_minus_one(1).pow(2 * g),
                "({g},{n})"
            );
            let y = count_additive(&t, g, n, SEQ).unwrap();
            assert_eq!(y.polynomial, QPolynomial::q_pow(2 * g as usize));
        }
        let _ = BigRational::one();
    }
}
