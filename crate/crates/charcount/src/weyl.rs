//! Weyl groups of root data and their subsystems: element enumeration,
//! orders, reflection degrees, and finite-field group orders.
//!
//! Orders are available through two independent routes.  The cheap route
//! reads the exponents off the height distribution of the positive roots
//! (the conjugate partition of the height counts).  The enumerative route
//! generates the group as integer matrices and factors the length generating
//! polynomial into q-integers `[d]_q`; the degrees `d` recovered this way are
//! checked against each other and against the root count.  Enumeration is
//! refused when the predicted order exceeds [`MAX_WEYL_ORDER`].

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::QPolynomial;
use crate::root_data::{invert_rational, RootDatum, Subsystem};

/// Refuse to enumerate Weyl groups larger than this.
pub const MAX_WEYL_ORDER: u64 = 2_000_000;

/// A finite reflection group, stored as matrices acting on column vectors of
/// the character lattice.
pub struct WeylGroup {
    pub rank: usize,
    /// Flattened row-major matrices; `elements[0]` is the identity.
    elements: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

fn mat_mul(rank: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; rank * rank];
    for i in 0..rank {
        for k in 0..rank {
            let aik = a[i * rank + k];
            if aik != 0 {
                for j in 0..rank {
                    c[i * rank + j] += aik * b[k * rank + j];
                }
            }
        }
    }
    c
}

impl WeylGroup {
    /// The Weyl group of the full datum.
    pub fn full(datum: &RootDatum) -> Result<WeylGroup> {
        Self::of_subsystem(datum, &datum.full_subsystem())
    }

    /// The reflection subgroup generated by the reflections of a subsystem.
    pub fn of_subsystem(datum: &RootDatum, sub: &Subsystem) -> Result<WeylGroup> {
        let predicted = weyl_order(datum, sub)?;
        let rank = datum.rank;
        let base = datum.sub_base(sub);
        let gens: Vec<Vec<i64>> = base
            .iter()
            .map(|&b| {
                datum
                    .reflection_matrix(b)
                    .into_iter()
                    .flatten()
                    .collect::<Vec<i64>>()
            })
            .collect();
        let id: Vec<i64> = (0..rank)
            .flat_map(|i| (0..rank).map(move |j| i64::from(i == j)))
            .collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut head = 0;
        while head < elements.len() {
            for g in &gens {
                let img = mat_mul(rank, g, &elements[head]);
                if !index.contains_key(&img) {
                    index.insert(img.clone(), elements.len());
                    elements.push(img);
                }
            }
            head += 1;
        }
        if elements.len() as u64 != predicted {
            return Err(Error::InvariantViolation(format!(
                "enumerated {} elements, height route predicts {predicted}",
                elements.len()
            )));
        }
        Ok(WeylGroup { rank, elements, index })
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Apply element `e` to a column vector.
    pub fn apply(&self, e: usize, v: &[i64]) -> Vec<i64> {
        let m = &self.elements[e];
        (0..self.rank)
            .map(|i| (0..self.rank).map(|k| m[i * self.rank + k] * v[k]).sum())
            .collect()
    }

    /// Index of the root to which element `e` sends root `r`.
    pub fn act_root(&self, datum: &RootDatum, e: usize, r: usize) -> usize {
        datum
            .root_index(&self.apply(e, &datum.roots[r]))
            .expect("Weyl image of a root is a root")
    }

    pub fn element_index(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Heights of the positive roots of a subsystem over its own base.
fn sub_heights(datum: &RootDatum, sub: &Subsystem) -> Result<Vec<usize>> {
    let base = datum.sub_base(sub);
    let k = base.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let ct: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| BigRational::from(BigInt::from(datum.cartan_int(base[j], base[i]))))
                .collect()
        })
        .collect();
    let cti = invert_rational(ct)
        .ok_or_else(|| Error::InvalidDatum("singular base pairing matrix".into()))?;
    let mut heights = Vec::new();
    for r in datum.sub_positive(sub) {
        let p: Vec<BigRational> = (0..k)
            .map(|j| BigRational::from(BigInt::from(datum.cartan_int(r, base[j]))))
            .collect();
        let mut h = BigRational::zero();
        for row in &cti {
            for (x, y) in row.iter().zip(&p) {
                h += x * y;
            }
        }
        if !h.is_integer() {
            return Err(Error::InvariantViolation("non-integral height".into()));
        }
        let h = i64::try_from(h.to_integer())
            .map_err(|_| Error::InvariantViolation("height overflow".into()))?;
        if h < 1 {
            return Err(Error::InvariantViolation("non-positive height".into()));
        }
        heights.push(h as usize);
    }
    Ok(heights)
}

/// Exponents of the reflection group of a subsystem, in increasing order,
/// read off as the conjugate partition of the height counts.
pub fn exponents(datum: &RootDatum, sub: &Subsystem) -> Result<Vec<usize>> {
    let heights = sub_heights(datum, sub)?;
    if heights.is_empty() {
        return Ok(Vec::new());
    }
    let max = *heights.iter().max().unwrap();
    let mut counts = vec![0usize; max];
    for h in heights {
        counts[h - 1] += 1;
    }
    for w in counts.windows(2) {
        if w[1] > w[0] {
            return Err(Error::InvariantViolation(
                "height counts are not weakly decreasing".into(),
            ));
        }
    }
    let mut exps = Vec::new();
    for i in 1..=counts[0] {
        exps.push(counts.iter().filter(|&&c| c >= i).count());
    }
    exps.sort_unstable();
    Ok(exps)
}

/// Order of the reflection group of a subsystem, without enumerating it.
pub fn weyl_order(datum: &RootDatum, sub: &Subsystem) -> Result<u64> {
    let mut order: u64 = 1;
    for e in exponents(datum, sub)? {
        order = order
            .checked_mul(e as u64 + 1)
            .ok_or(Error::GroupTooLarge { bound: MAX_WEYL_ORDER })?;
    }
    if order > MAX_WEYL_ORDER {
        return Err(Error::GroupTooLarge { bound: MAX_WEYL_ORDER });
    }
    Ok(order)
}

/// Reflection degrees recovered by factoring the length generating
/// polynomial into q-integers.
pub fn reflection_degrees(datum: &RootDatum, sub: &Subsystem) -> Result<Vec<usize>> {
    let w = WeylGroup::of_subsystem(datum, sub)?;
    let pos = datum.sub_positive(sub);
    let mut counts: Vec<i64> = vec![0; pos.len() + 1];
    for e in 0..w.len() {
        let l = pos
            .iter()
            .filter(|&&r| {
                let img = w.act_root(datum, e, r);
                !datum.positive[img]
            })
            .count();
        counts[l] += 1;
    }
    let length_poly = QPolynomial::from_coeffs(&counts);
    let factored = length_poly.factor()?;
    if !factored.residual.is_one() || factored.q_power != 0 || !factored.unit.is_one() {
        return Err(Error::FactorizationFailed(format!(
            "length polynomial of {} is not a product of q-integers",
            datum.sub_cartan_type(sub).map(|t| t.label()).unwrap_or_default()
        )));
    }
    let mut mult: BTreeMap<u32, u32> = factored.cyclo.clone();
    let rank = datum.sub_base(sub).len();
    let mut degrees = Vec::with_capacity(rank);
    for _ in 0..rank {
        let d = *mult
            .iter()
            .filter(|(_, &m)| m > 0)
            .map(|(e, _)| e)
            .max()
            .ok_or_else(|| {
                Error::FactorizationFailed("too few cyclotomic factors for the rank".into())
            })?;
        for e in 2..=d {
            if d % e == 0 {
                let m = mult.get_mut(&e).filter(|m| **m > 0).ok_or_else(|| {
                    Error::FactorizationFailed(format!("missing cyclotomic factor {e} of {d}"))
                })?;
                *m -= 1;
            }
        }
        degrees.push(d as usize);
    }
    if mult.values().any(|&m| m > 0) {
        return Err(Error::FactorizationFailed(
            "cyclotomic factors left over after degree extraction".into(),
        ));
    }
    degrees.sort_unstable();
    // Cross-checks against the root count and the group order.
    let sum: usize = degrees.iter().map(|d| d - 1).sum();
    if sum != pos.len() {
        return Err(Error::InvariantViolation(
            "degrees inconsistent with positive root count".into(),
        ));
    }
    let product: u64 = degrees.iter().map(|&d| d as u64).product();
    if product != w.order() {
        return Err(Error::InvariantViolation(
            "degrees inconsistent with group order".into(),
        ));
    }
    Ok(degrees)
}

/// Number of rational points of the subgroup attached to a subsystem:
/// `q^N * prod (q^{d_i} - 1) * (q-1)^{corank}` with `N` the positive root
/// count and `corank` the difference between the torus rank and the span.
pub fn order_polynomial(datum: &RootDatum, sub: &Subsystem) -> Result<QPolynomial> {
    let degrees = reflection_degrees(datum, sub)?;
    let mut p = QPolynomial::q_pow(datum.sub_positive(sub).len());
    for d in degrees {
        p = &p * &QPolynomial::q_pow_minus_one(d);
    }
    let corank = datum.rank - datum.sub_span_rank(sub);
    let phi1 = QPolynomial::q_pow_minus_one(1);
    for _ in 0..corank {
        p = &p * &phi1;
    }
    Ok(p)
}
