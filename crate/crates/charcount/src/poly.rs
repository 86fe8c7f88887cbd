//! Exact univariate polynomials in `q` with rational coefficients.
//!
//! All counting formulas in this crate are assembled from sums, products and
//! exact divisions of such polynomials; no floating point is used anywhere.
//! Coefficients are stored constant-term first with no trailing zeros, so the
//! representation of every polynomial is canonical and `==` is semantic
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Cyclotomic factors `Phi_1 .. Phi_MAX_CYCLOTOMIC_INDEX` are tried when
/// factoring counting polynomials.  The bound comfortably covers every
/// cyclotomic factor of the order polynomial of a reductive group of rank
/// at most eight (the largest degree `d_i` there is 30, for E8).
pub const MAX_CYCLOTOMIC_INDEX: u32 = 30;

/// A polynomial in `q` over the rationals, exact arithmetic throughout.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    /// Coefficients, constant term first; invariant: last entry is nonzero.
    coeffs: Vec<BigRational>,
}

fn br(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::constant(br(1))
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = QPolynomial { coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn from_int(n: i64) -> Self {
        QPolynomial::constant(br(n))
    }

    /// The variable `q` itself.
    pub fn q() -> Self {
        QPolynomial::monomial(br(1), 1)
    }

    /// `c * q^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        QPolynomial { coeffs }
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        QPolynomial::monomial(BigRational::one(), k)
    }

    /// Build from integer coefficients, constant term first.
    pub fn from_coeffs(cs: &[i64]) -> Self {
        let mut p = QPolynomial {
            coeffs: cs.iter().map(|&c| br(c)).collect(),
        };
        p.normalize();
        p
    }

    pub fn from_rational_coeffs(cs: Vec<BigRational>) -> Self {
        let mut p = QPolynomial { coeffs: cs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn value_at_one(&self) -> BigRational {
        self.eval(&br(1))
    }

    /// `true` when the coefficient list reads the same in both directions
    /// (so `q^deg * p(1/q) = p`).
    pub fn is_palindromic(&self) -> bool {
        !self.is_zero()
            && self
                .coeffs
                .iter()
                .zip(self.coeffs.iter().rev())
                .all(|(a, b)| a == b)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Integer coefficient list (constant first), if all coefficients are
    /// integers.
    pub fn to_int_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.has_integer_coeffs() {
            return None;
        }
        Some(self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPolynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QPolynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact division: fails with `NonzeroRemainder` unless `other` divides
    /// `self` exactly in `Q[q]`.
    pub fn exact_div(&self, other: &QPolynomial) -> Result<QPolynomial> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(QPolynomial::zero());
        }
        let dn = self.coeffs.len();
        let dd = other.coeffs.len();
        if dn < dd {
            return Err(Error::NonzeroRemainder(format!("{self}")));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); dn - dd + 1];
        let lead = other.coeffs.last().unwrap();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd - 1] / lead;
            if !c.is_zero() {
                for (j, oc) in other.coeffs.iter().enumerate() {
                    let t = oc * &c;
                    rem[k + j] -= t;
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            let r = QPolynomial::from_rational_coeffs(rem);
            return Err(Error::NonzeroRemainder(format!("{r}")));
        }
        Ok(QPolynomial::from_rational_coeffs(quot))
    }

    pub fn divides(&self, other: &QPolynomial) -> bool {
        other.exact_div(self).is_ok()
    }

    /// `q^n - 1`.
    pub fn q_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[0] = br(-1);
        coeffs[n] = br(1);
        QPolynomial { coeffs }
    }

    /// `1 + q + ... + q^(n-1)`.
    pub fn q_integer(n: usize) -> Self {
        QPolynomial {
            coeffs: vec![br(1); n],
        }
    }

    /// The `n`-th cyclotomic polynomial, computed by exact division of
    /// `q^n - 1` by the lower cyclotomics and cached.
    pub fn cyclotomic(n: u32) -> &'static QPolynomial {
        static TABLE: OnceLock<Vec<QPolynomial>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            let mut phis: Vec<QPolynomial> = Vec::with_capacity(MAX_CYCLOTOMIC_INDEX as usize);
            for m in 1..=MAX_CYCLOTOMIC_INDEX as usize {
                let mut p = QPolynomial::q_pow_minus_one(m);
                for d in 1..m {
                    if m % d == 0 {
                        p = p.exact_div(&phis[d - 1]).expect("cyclotomic recursion");
                    }
                }
                phis.push(p);
            }
            phis
        });
        assert!(
            (1..=MAX_CYCLOTOMIC_INDEX).contains(&n),
            "cyclotomic index out of range: {n}"
        );
        &table[(n - 1) as usize]
    }

    /// Factor into `unit * q^a * prod Phi_i^{e_i} * residual` by trial exact
    /// division with `Phi_1 .. Phi_30`.  The residual is a primitive integer
    /// polynomial with positive leading coefficient (or 1), so the unit
    /// carries the whole rational content.
    pub fn factor(&self) -> Result<FactoredPoly> {
        if self.is_zero() {
            return Err(Error::FactorizationFailed("zero polynomial".into()));
        }
        let q_power = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let mut rest = QPolynomial {
            coeffs: self.coeffs[q_power..].to_vec(),
        };
        let mut cyclo = BTreeMap::new();
        for i in 1..=MAX_CYCLOTOMIC_INDEX {
            let phi = QPolynomial::cyclotomic(i);
            if phi.degree() > rest.degree() {
                continue;
            }
            while let Ok(qt) = rest.exact_div(phi) {
                *cyclo.entry(i).or_insert(0u32) += 1;
                rest = qt;
                if rest.degree() == Some(0) {
                    break;
                }
            }
        }
        // Pull the rational content out of the residual.
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &rest.coeffs {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if rest.leading().is_negative() {
            content = -content;
        }
        let residual = rest.scale(&content.recip());
        Ok(FactoredPoly {
            unit: content,
            q_power,
            cyclo,
            residual,
        })
    }
}

/// `unit * q^q_power * prod_i Phi_i^{cyclo[i]} * residual`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub unit: BigRational,
    pub q_power: usize,
    pub cyclo: BTreeMap<u32, u32>,
    pub residual: QPolynomial,
}

impl FactoredPoly {
    pub fn expand(&self) -> QPolynomial {
        let mut p = QPolynomial::constant(self.unit.clone()).shift(self.q_power);
        for (&i, &e) in &self.cyclo {
            p = &p * &QPolynomial::cyclotomic(i).pow(e);
        }
        &p * &self.residual
    }

    /// `true` when nothing but the unit and the q-power is left over.
    pub fn is_fully_cyclotomic(&self) -> bool {
        self.residual.is_one()
    }
}

impl QPolynomial {
    pub fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.coeffs[0].is_one()
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.unit.is_one() || (self.q_power == 0 && self.cyclo.is_empty() && self.residual.is_one())
        {
            parts.push(rational_str(&self.unit));
        }
        if self.q_power == 1 {
            parts.push("q".into());
        } else if self.q_power > 1 {
            parts.push(format!("q^{}", self.q_power));
        }
        for (&i, &e) in &self.cyclo {
            if e == 1 {
                parts.push(format!("Phi{i}"));
            } else {
                parts.push(format!("Phi{i}^{e}"));
            }
        }
        if !self.residual.is_one() {
            parts.push(format!("({})", self.residual));
        }
        write!(f, "{}", parts.join(" * "))
    }
}

fn rational_str(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", rational_str(&mag))?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl_fn:expr) => {
        impl $trait<&QPolynomial> for &QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: &QPolynomial) -> QPolynomial {
                let f: fn(&QPolynomial, &QPolynomial) -> QPolynomial = $impl_fn;
                f(self, rhs)
            }
        }
        impl $trait<QPolynomial> for QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: QPolynomial) -> QPolynomial {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&QPolynomial> for QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: &QPolynomial) -> QPolynomial {
                $trait::$method(&self, rhs)
            }
        }
    };
}

fn add_impl(a: &QPolynomial, b: &QPolynomial) -> QPolynomial {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        coeffs.push(a.coeff(k) + b.coeff(k));
    }
    QPolynomial::from_rational_coeffs(coeffs)
}

fn sub_impl(a: &QPolynomial, b: &QPolynomial) -> QPolynomial {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        coeffs.push(a.coeff(k) - b.coeff(k));
    }
    QPolynomial::from_rational_coeffs(coeffs)
}

fn mul_impl(a: &QPolynomial, b: &QPolynomial) -> QPolynomial {
    if a.is_zero() || b.is_zero() {
        return QPolynomial::zero();
    }
    let mut coeffs = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ca) in a.coeffs.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.coeffs.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            coeffs[i + j] += ca * cb;
        }
    }
    QPolynomial::from_rational_coeffs(coeffs)
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QPolynomial> for QPolynomial {
    fn sub_assign(&mut self, rhs: &QPolynomial) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QPolynomial> for QPolynomial {
    fn mul_assign(&mut self, rhs: &QPolynomial) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> QPolynomial {
        iter.fold(QPolynomial::zero(), |a, b| a + b)
    }
}

// --- serde: a polynomial is a JSON array of coefficients, constant term
// first; integers appear as numbers (strings once they outgrow i64) and
// non-integers as "num/den" strings.

impl serde::Serialize for QPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            if c.is_integer() {
                let n = c.to_integer();
                if let Ok(small) = i64::try_from(&n) {
                    seq.serialize_element(&small)?;
                } else {
                    seq.serialize_element(&n.to_string())?;
                }
            } else {
                seq.serialize_element(&format!("{}/{}", c.numer(), c.denom()))?;
            }
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for QPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for v in raw {
            let c = parse_rational_value(&v)
                .ok_or_else(|| DeError::custom(format!("bad coefficient: {v}")))?;
            coeffs.push(c);
        }
        Ok(QPolynomial::from_rational_coeffs(coeffs))
    }
}

pub(crate) fn parse_rational_value(v: &serde_json::Value) -> Option<BigRational> {
    match v {
        serde_json::Value::Number(n) => {
            let i = n.as_i64()?;
            Some(br(i))
        }
        serde_json::Value::String(s) => parse_rational_str(s),
        _ => None,
    }
}

pub(crate) fn parse_rational_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}
