//! Enumeration of counting types and their combinatorial weights.
//!
//! A *character type* pairs a conjugacy class of endoscopy subgroups with a
//! unipotent principal-series character of that subgroup; an *orbit type*
//! pairs a conjugacy class of Levi subgroups with a nilpotent adjoint orbit
//! of its Lie algebra.  This module enumerates both kinds over a fixed
//! maximal torus, computes the inclusion–exclusion weights attached to the
//! classes (`nu` on the endoscopy poset, `mu_levi` on the Levi poset), and
//! packages every per-type quantity consumed by the point-count assembly:
//! group orders, masses, generic degrees, orbit sizes, and Green
//! polynomials.
//!
//! Types are enumerated *unfused*: every pair (class representative, table
//! label) yields one record, even when an element of the ambient Weyl group
//! stabilises the representative and permutes the labels.  The reference
//! tables this crate reproduces are tabulated the same way.  A heuristic
//! detector reports label pairs that could be identified by such a symmetry
//! so the caller can surface a warning.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cartan::CartanType;
use crate::error::{Error, Result};
use crate::group_data::{GroupDataPack, Registry};
use crate::poly::QPolynomial;
use crate::poset::SubsystemPoset;
use crate::root_data::{RootDatum, Subsystem};
use crate::weyl;

/// A conjugacy class of subsystems (endoscopy or Levi) together with all the
/// per-class data shared by the types supported on it.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    /// Representative subsystem: the minimal member of the class.
    pub rep: Subsystem,
    /// Index of the representative in the ambient poset.
    pub rep_idx: usize,
    /// Number of subsystems in the class.
    pub class_size: u64,
    /// Isomorphism type of the subsystem, with length classes.
    pub cartan: CartanType,
    /// Display label, e.g. `B2`, `A1xA1'`, `T`.
    pub label: String,
    /// Order of the reflection group of the subsystem.
    pub weyl_order: u64,
    /// Order polynomial of the subgroup (with the full ambient torus).
    pub order_poly: QPolynomial,
    /// Number of positive roots of the subsystem.
    pub num_positive: usize,
    /// Dimension of the subgroup: subsystem roots plus ambient torus rank.
    pub group_dim: usize,
    /// Whether the subsystem spans the full semisimple rank.
    pub isolated: bool,
    /// Order of the component group of the centre of the dual subgroup.
    pub pi0: BigInt,
    /// Character/orbit tables, or the missing table key.
    pack: std::result::Result<GroupDataPack, String>,
}

impl SubgroupClass {
    pub fn pack(&self) -> Result<&GroupDataPack> {
        self.pack
            .as_ref()
            .map_err(|key| Error::MissingData(key.clone()))
    }
}

/// One character type: an endoscopy class together with one unipotent
/// principal-series character of the subgroup.
#[derive(Debug, Clone)]
pub struct GTypeRecord {
    /// Index into [`TypeContext::endoscopy_classes`].
    pub class_idx: usize,
    /// Representative subsystem of the class.
    pub levi: Subsystem,
    pub class_label: String,
    /// Label of the character within its table.
    pub rho_label: String,
    /// Dimension of the corresponding reflection-group representation.
    pub dim_rho: u64,
    /// Generic degree: character degree as a polynomial in q.
    pub generic_degree: QPolynomial,
    /// Number of subsystems in the class.
    pub orbit_size: u64,
    /// Inclusion–exclusion weight of the class on the endoscopy poset.
    pub nu: BigInt,
    /// Order of the reflection group of the subsystem.
    pub weyl_order: u64,
    /// Order polynomial of the subgroup.
    pub order_poly: QPolynomial,
    /// Mass: q^(positive-root defect) * order / generic degree.
    pub mass: QPolynomial,
}

/// One orbit type: a Levi class together with one nilpotent orbit of its Lie
/// algebra.
#[derive(Debug, Clone)]
pub struct LieTypeRecord {
    /// Index into [`TypeContext::levi_classes`].
    pub class_idx: usize,
    /// Representative subsystem of the class.
    pub levi: Subsystem,
    pub class_label: String,
    /// Label of the orbit within its table.
    pub orbit_label: String,
    /// Dimension of the orbit.
    pub orbit_dim: usize,
    /// Number of rational points of the orbit, as a polynomial in q.
    pub orbit_size_poly: QPolynomial,
    /// Green polynomial: fixed complete flags of a representative.
    pub green: QPolynomial,
    /// Centraliser dimension: dim of the Levi minus dim of the orbit.
    pub d_tau: usize,
    /// Inclusion–exclusion weight of the class on the Levi poset.
    pub mu: i64,
    /// Number of subsystems in the class.
    pub orbit_size: u64,
    /// Order of the reflection group of the subsystem.
    pub weyl_order: u64,
    /// Order polynomial of the subgroup.
    pub order_poly: QPolynomial,
}

/// Frozen per-group context: both class decompositions with their weights,
/// ready for type enumeration and point-count assembly.
#[derive(Debug, Clone)]
pub struct TypeContext {
    pub datum: RootDatum,
    /// Order of the ambient Weyl group.
    pub weyl_order: u64,
    /// Order polynomial of the ambient group.
    pub order_poly: QPolynomial,
    /// Conjugacy classes of endoscopy subsystems, largest first.
    pub endoscopy_classes: Vec<SubgroupClass>,
    /// Weight `nu` per endoscopy class (aligned with `endoscopy_classes`).
    pub nu: Vec<BigInt>,
    /// Conjugacy classes of Levi subsystems, largest first.
    pub levi_classes: Vec<SubgroupClass>,
    /// Moebius weight to the full system per Levi class.
    pub mu: Vec<i64>,
    /// Component count of the centre of the dual group.
    pub pi0_full: BigInt,
    /// Counts are valid for prime powers q = 1 mod this value.
    pub validity_modulus: BigInt,
}

/// Group the poset elements into conjugacy classes under the ambient Weyl
/// group.  Every class is returned as the sorted list of poset indices.
fn conjugacy_classes(datum: &RootDatum, poset: &SubsystemPoset) -> Result<Vec<Vec<usize>>> {
    let mut class_of = vec![usize::MAX; poset.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..poset.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut ids = Vec::new();
        for member in datum.orbit_of(&poset.elements()[i]) {
            let j = poset.index_of(&member).ok_or_else(|| {
                Error::InvariantViolation(
                    "subsystem family is not closed under the Weyl group".into(),
                )
            })?;
            class_of[j] = classes.len();
            ids.push(j);
        }
        ids.sort_unstable();
        classes.push(ids);
    }
    Ok(classes)
}

fn build_class(
    datum: &RootDatum,
    registry: &Registry,
    poset: &SubsystemPoset,
    members: &[usize],
) -> Result<SubgroupClass> {
    let rep_idx = members[0];
    let rep = poset.elements()[rep_idx].clone();
    let cartan = datum.sub_cartan_type(&rep)?;
    let label = cartan.label();
    let pack = registry
        .pack_for_components(cartan.components())
        .map_err(|e| e.to_string());
    Ok(SubgroupClass {
        rep_idx,
        class_size: members.len() as u64,
        label,
        weyl_order: weyl::weyl_order(datum, &rep)?,
        order_poly: weyl::order_polynomial(datum, &rep)?,
        num_positive: datum.sub_positive(&rep).len(),
        group_dim: rep.len() + datum.rank,
        isolated: datum.is_isolated(&rep),
        pi0: datum.pi0_dual_center(&rep),
        cartan,
        rep,
        pack,
    })
}

/// For each poset element: its dual-centre component count when the element
/// is isolated, `None` otherwise.
fn isolated_weights(datum: &RootDatum, poset: &SubsystemPoset) -> Vec<Option<BigInt>> {
    poset
        .elements()
        .iter()
        .map(|s| datum.is_isolated(s).then(|| datum.pi0_dual_center(s)))
        .collect()
}

/// Weight of one subsystem on the endoscopy poset: the Moebius-weighted sum
/// of dual-centre component counts over all isolated subsystems above it.
fn nu_at(poset: &SubsystemPoset, weights: &[Option<BigInt>], idx: usize) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for (j, w) in weights.iter().enumerate() {
        if let Some(pi0) = w {
            if poset.leq_idx(idx, j) {
                total += pi0 * BigInt::from(poset.moebius_idx(idx, j)?);
            }
        }
    }
    Ok(total)
}

/// Standalone weight computation for a single endoscopy subsystem.  Builds
/// the poset from scratch; prefer [`TypeContext`] when evaluating many.
pub fn nu(datum: &RootDatum, sub: &Subsystem) -> Result<BigInt> {
    let poset = SubsystemPoset::new(datum.enumerate_endoscopies());
    let idx = poset
        .index_of(sub)
        .ok_or_else(|| Error::NotEndoscopy(describe(datum, sub)))?;
    let weights = isolated_weights(datum, &poset);
    nu_at(&poset, &weights, idx)
}

/// Moebius weight of a Levi subsystem against the full system, on the poset
/// of all Levi subsystems containing the torus.
pub fn mu_levi(datum: &RootDatum, sub: &Subsystem) -> Result<i64> {
    let poset = SubsystemPoset::new(datum.enumerate_levis());
    let idx = poset
        .index_of(sub)
        .ok_or_else(|| Error::NotLevi(describe(datum, sub)))?;
    let full_idx = poset
        .index_of(&datum.full_subsystem())
        .ok_or_else(|| Error::InvariantViolation("Levi poset lacks the full system".into()))?;
    poset.moebius_idx(idx, full_idx)
}

fn describe(datum: &RootDatum, sub: &Subsystem) -> String {
    match datum.sub_cartan_type(sub) {
        Ok(t) => format!("{} ({} roots) in {}", t.label(), sub.len(), datum.label),
        Err(_) => format!("{} roots in {}", sub.len(), datum.label),
    }
}

impl TypeContext {
    pub fn new(datum: RootDatum, registry: &Registry) -> Result<Self> {
        let full = datum.full_subsystem();
        let weyl_order = weyl::weyl_order(&datum, &full)?;
        let order_poly = weyl::order_polynomial(&datum, &full)?;
        let pi0_full = datum.pi0_dual_center(&full);

        let endo_poset = SubsystemPoset::new(datum.enumerate_endoscopies());
        let mut endoscopy_classes = conjugacy_classes(&datum, &endo_poset)?
            .iter()
            .map(|members| build_class(&datum, registry, &endo_poset, members))
            .collect::<Result<Vec<_>>>()?;
        endoscopy_classes.sort_by(|a, b| {
            b.num_positive
                .cmp(&a.num_positive)
                .then_with(|| a.label.cmp(&b.label))
                .then_with(|| a.rep.cmp(&b.rep))
        });
        let weights = isolated_weights(&datum, &endo_poset);
        let nu = endoscopy_classes
            .iter()
            .map(|c| nu_at(&endo_poset, &weights, c.rep_idx))
            .collect::<Result<Vec<_>>>()?;
        let validity_modulus = endoscopy_classes
            .iter()
            .filter(|c| c.isolated)
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.pi0));

        let levi_poset = SubsystemPoset::new(datum.enumerate_levis());
        let mut levi_classes = conjugacy_classes(&datum, &levi_poset)?
            .iter()
            .map(|members| build_class(&datum, registry, &levi_poset, members))
            .collect::<Result<Vec<_>>>()?;
        levi_classes.sort_by(|a, b| {
            b.num_positive
                .cmp(&a.num_positive)
                .then_with(|| a.label.cmp(&b.label))
                .then_with(|| a.rep.cmp(&b.rep))
        });
        let full_idx = levi_poset
            .index_of(&full)
            .ok_or_else(|| Error::InvariantViolation("Levi poset lacks the full system".into()))?;
        let mu = levi_classes
            .iter()
            .map(|c| levi_poset.moebius_idx(c.rep_idx, full_idx))
            .collect::<Result<Vec<_>>>()?;

        Ok(TypeContext {
            datum,
            weyl_order,
            order_poly,
            endoscopy_classes,
            nu,
            levi_classes,
            mu,
            pi0_full,
            validity_modulus,
        })
    }

    /// All character types: one record per (endoscopy class, character).
    pub fn g_types(&self) -> Result<Vec<GTypeRecord>> {
        let mut out = Vec::new();
        for (class_idx, class) in self.endoscopy_classes.iter().enumerate() {
            let pack = class.pack()?;
            let dim_sq: u64 = pack.unipotent.iter().map(|u| u.dim * u.dim).sum();
            if dim_sq != class.weyl_order {
                return Err(Error::InvariantViolation(format!(
                    "character table for {} sums dim^2 to {dim_sq}, expected {}",
                    class.label, class.weyl_order
                )));
            }
            let shift = self.datum.num_positive() - class.num_positive;
            for u in &pack.unipotent {
                let mass = class
                    .order_poly
                    .shift(shift)
                    .exact_div(&u.generic_degree)?;
                if !mass.has_integer_coeffs() {
                    return Err(Error::InvariantViolation(format!(
                        "mass of [{}, {}] has fractional coefficients",
                        class.label, u.rho
                    )));
                }
                out.push(GTypeRecord {
                    class_idx,
                    levi: class.rep.clone(),
                    class_label: class.label.clone(),
                    rho_label: u.rho.clone(),
                    dim_rho: u.dim,
                    generic_degree: u.generic_degree.clone(),
                    orbit_size: class.class_size,
                    nu: self.nu[class_idx].clone(),
                    weyl_order: class.weyl_order,
                    order_poly: class.order_poly.clone(),
                    mass,
                });
            }
        }
        Ok(out)
    }

    /// All orbit types: one record per (Levi class, nilpotent orbit).
    pub fn lie_types(&self) -> Result<Vec<LieTypeRecord>> {
        let mut out = Vec::new();
        for (class_idx, class) in self.levi_classes.iter().enumerate() {
            let pack = class.pack()?;
            for o in &pack.nilpotent {
                if class.group_dim < o.orbit_dim + self.datum.rank {
                    return Err(Error::InvariantViolation(format!(
                        "orbit {} of {} has centraliser dimension below the rank",
                        o.label, class.label
                    )));
                }
                out.push(LieTypeRecord {
                    class_idx,
                    levi: class.rep.clone(),
                    class_label: class.label.clone(),
                    orbit_label: o.label.clone(),
                    orbit_dim: o.orbit_dim,
                    orbit_size_poly: o.size.clone(),
                    green: o.green.clone(),
                    d_tau: class.group_dim - o.orbit_dim,
                    mu: self.mu[class_idx],
                    orbit_size: class.class_size,
                    weyl_order: class.weyl_order,
                    order_poly: class.order_poly.clone(),
                });
            }
        }
        Ok(out)
    }

    /// Puncture-count-dependent weight of a character type.  Carries one
    /// factor of the rational centre order; the assembly supplies the rest.
    pub fn s_tau(&self, rec: &GTypeRecord, n: u32) -> QPolynomial {
        debug_assert!(n >= 1);
        let ratio = self.weyl_order / rec.weyl_order;
        let scalar = num_traits::pow(BigInt::from(rec.dim_rho), n as usize)
            * num_traits::pow(BigInt::from(ratio), n as usize - 1)
            * BigInt::from(rec.orbit_size)
            * &rec.nu;
        self.centre_order()
            .scale(&BigRational::from_integer(scalar))
    }

    /// Puncture-count-dependent weight of an orbit type, including the
    /// leading q-power shared by all orbit types.
    pub fn h_tau(&self, rec: &LieTypeRecord, n: u32) -> Result<QPolynomial> {
        debug_assert!(n >= 1);
        let quot = self.order_poly.exact_div(&rec.order_poly)?;
        let ratio = self.weyl_order / rec.weyl_order;
        let scalar = num_traits::pow(BigInt::from(ratio), n as usize - 1)
            * BigInt::from(rec.orbit_size)
            * BigInt::from(rec.mu);
        let shift = n as usize * self.datum.num_positive() + self.datum.center_dim();
        let mut h = &quot * &rec.orbit_size_poly;
        h = &h * &rec.green.pow(n);
        Ok(h.shift(shift).scale(&BigRational::from_integer(scalar)))
    }

    /// Order polynomial of the (connected) centre: (q-1)^(centre dimension).
    pub fn centre_order(&self) -> QPolynomial {
        QPolynomial::q_pow_minus_one(1).pow(self.datum.center_dim() as u32)
    }

    /// Order polynomial of the full maximal torus: (q-1)^rank.
    pub fn torus_order(&self) -> QPolynomial {
        QPolynomial::q_pow_minus_one(1).pow(self.datum.rank as u32)
    }

    /// Heuristic fusion report: label pairs inside one class that a
    /// symmetry of the class could identify.  Enumeration never merges
    /// them; callers may surface these notes as warnings.
    pub fn fusion_notes(&self) -> Vec<String> {
        let mut notes = BTreeSet::new();
        for class in self.endoscopy_classes.iter().chain(&self.levi_classes) {
            let pack = match class.pack.as_ref() {
                Ok(p) => p,
                Err(_) => continue,
            };
            if !pack.outer_action.is_empty() {
                notes.insert(format!(
                    "class {}: table declares outer symmetries; paired labels may fuse",
                    class.label
                ));
            }
            let comps = class.cartan.components();
            let labels: Vec<&str> = pack
                .unipotent
                .iter()
                .map(|u| u.rho.as_str())
                .chain(pack.nilpotent.iter().map(|o| o.label.as_str()))
                .collect();
            for a in 0..comps.len() {
                for b in a + 1..comps.len() {
                    if comps[a] != comps[b] {
                        continue;
                    }
                    for label in &labels {
                        let parts: Vec<&str> = label.split('\u{2297}').collect();
                        if parts.len() != comps.len() {
                            continue;
                        }
                        let mut swapped: Vec<&str> = parts.clone();
                        swapped.swap(a, b);
                        let image = swapped.join("\u{2297}");
                        if image != *label && labels.contains(&image.as_str()) {
                            let (lo, hi) = if *label < image.as_str() {
                                (label.to_string(), image.clone())
                            } else {
                                (image.clone(), label.to_string())
                            };
                            notes.insert(format!(
                                "class {}: labels {lo} and {hi} are swapped by a class symmetry",
                                class.label
                            ));
                        }
                    }
                }
            }
        }
        notes.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan;
    use std::collections::BTreeMap;

    fn registry() -> Registry {
        Registry::bundled().unwrap()
    }

    fn adjoint_ctx(spec: &str) -> TypeContext {
        let datum = RootDatum::adjoint(&cartan::parse_products(spec).unwrap()).unwrap();
        TypeContext::new(datum, &registry()).unwrap()
    }

    fn gl_ctx(n: usize) -> TypeContext {
        TypeContext::new(RootDatum::gl(n).unwrap(), &registry()).unwrap()
    }

    fn class_table(ctx: &TypeContext) -> BTreeMap<String, (u64, u64, BigInt)> {
        ctx.endoscopy_classes
            .iter()
            .zip(&ctx.nu)
            .map(|(c, nu)| (c.label.clone(), (c.class_size, c.weyl_order, nu.clone())))
            .collect()
    }

    #[test]
    fn endoscopy_weights_for_so5() {
        let ctx = adjoint_ctx("B2");
        let table = class_table(&ctx);
        assert_eq!(table.len(), 5);
        assert_eq!(table["B2"], (1, 8, BigInt::from(2)));
        assert_eq!(table["A1'xA1'"], (1, 4, BigInt::from(2)));
        assert_eq!(table["A1'"], (2, 2, BigInt::from(-4)));
        assert_eq!(table["A1"], (2, 2, BigInt::from(-2)));
        assert_eq!(table["T"], (1, 1, BigInt::from(8)));
        assert_eq!(ctx.pi0_full, BigInt::from(2));
        assert_eq!(ctx.validity_modulus, BigInt::from(4));
        let pi0: BTreeMap<&str, &BigInt> = ctx
            .endoscopy_classes
            .iter()
            .filter(|c| c.isolated)
            .map(|c| (c.label.as_str(), &c.pi0))
            .collect();
        assert_eq!(pi0.len(), 2);
        assert_eq!(*pi0["B2"], BigInt::from(2));
        assert_eq!(*pi0["A1'xA1'"], BigInt::from(4));
    }

    #[test]
    fn endoscopy_weights_for_g2() {
        let ctx = adjoint_ctx("G2");
        let table = class_table(&ctx);
        assert_eq!(table.len(), 6);
        assert_eq!(table["G2"], (1, 12, BigInt::from(1)));
        assert_eq!(table["A2'"], (1, 6, BigInt::from(2)));
        assert_eq!(table["A1xA1'"], (3, 4, BigInt::from(1)));
        assert_eq!(table["A1'"], (3, 2, BigInt::from(-4)));
        assert_eq!(table["A1"], (3, 2, BigInt::from(-2)));
        assert_eq!(table["T"], (1, 1, BigInt::from(12)));
        assert_eq!(ctx.pi0_full, BigInt::from(1));
        assert_eq!(ctx.validity_modulus, BigInt::from(6));
    }

    #[test]
    fn levi_moebius_weights() {
        let so5 = adjoint_ctx("B2");
        let mu: BTreeMap<String, i64> = so5
            .levi_classes
            .iter()
            .zip(&so5.mu)
            .map(|(c, m)| (c.label.clone(), *m))
            .collect();
        assert_eq!(
            mu,
            BTreeMap::from([
                ("B2".into(), 1),
                ("A1".into(), -1),
                ("A1'".into(), -1),
                ("T".into(), 3)
            ])
        );

        let g2 = adjoint_ctx("G2");
        let mu: BTreeMap<String, i64> = g2
            .levi_classes
            .iter()
            .zip(&g2.mu)
            .map(|(c, m)| (c.label.clone(), *m))
            .collect();
        assert_eq!(
            mu,
            BTreeMap::from([
                ("G2".into(), 1),
                ("A1".into(), -1),
                ("A1'".into(), -1),
                ("T".into(), 5)
            ])
        );
    }

    #[test]
    fn type_a_endoscopies_are_levis() {
        for n in 2..=4 {
            let datum = RootDatum::gl(n).unwrap();
            let levis: BTreeSet<_> = datum.enumerate_levis().into_iter().collect();
            let endos: BTreeSet<_> = datum.enumerate_endoscopies().into_iter().collect();
            assert_eq!(levis, endos, "GL{n}");
            let ctx = gl_ctx(n);
            assert_eq!(ctx.validity_modulus, BigInt::one());
            for (class, nu) in ctx.endoscopy_classes.iter().zip(&ctx.nu) {
                assert_eq!(class.pi0, BigInt::one());
                let mu = mu_levi(&ctx.datum, &class.rep).unwrap();
                assert_eq!(*nu, BigInt::from(mu), "class {}", class.label);
            }
        }
    }

    #[test]
    fn type_counts_match_the_reference_tables() {
        assert_eq!(adjoint_ctx("B2").g_types().unwrap().len(), 14);
        assert_eq!(adjoint_ctx("G2").g_types().unwrap().len(), 18);
        assert_eq!(adjoint_ctx("B2").lie_types().unwrap().len(), 10);
        assert_eq!(adjoint_ctx("G2").lie_types().unwrap().len(), 12);
        assert_eq!(gl_ctx(2).g_types().unwrap().len(), 3);
        assert_eq!(gl_ctx(3).g_types().unwrap().len(), 6);
        assert_eq!(gl_ctx(4).g_types().unwrap().len(), 15);
        assert_eq!(gl_ctx(2).lie_types().unwrap().len(), 3);
    }

    fn poly(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(coeffs)
    }

    #[test]
    fn mass_spot_values() {
        let ctx = adjoint_ctx("B2");
        let types = ctx.g_types().unwrap();
        let masses: BTreeSet<String> = types.iter().map(|t| t.mass.to_string()).collect();
        // Torus type: q^4 (q-1)^2.
        assert!(masses.contains(&poly(&[0, 0, 0, 0, 1, -2, 1]).to_string()));
        // Trivial character of the full group: the full order polynomial.
        assert!(masses.contains(&ctx.order_poly.to_string()));
        // Steinberg-type character of the full group: order / q^4.
        let steinberg = ctx.order_poly.exact_div(&QPolynomial::q_pow(4)).unwrap();
        assert!(masses.contains(&steinberg.to_string()));
        for t in &types {
            assert!(t.mass.has_integer_coeffs());
        }

        let g2 = adjoint_ctx("G2");
        let masses: BTreeSet<String> =
            g2.g_types().unwrap().iter().map(|t| t.mass.to_string()).collect();
        // 6 q^5 Phi1^2 Phi6 = 6q^5 (q-1)^2 (q^2-q+1).
        let phi1 = QPolynomial::q_pow_minus_one(1);
        let phi6 = poly(&[1, -1, 1]);
        let expect = (&(&phi1 * &phi1) * &phi6)
            .shift(5)
            .scale(&BigRational::from_integer(BigInt::from(6)));
        assert!(masses.contains(&expect.to_string()));
    }

    #[test]
    fn s_and_h_weights() {
        let gl2 = gl_ctx(2);
        let torus_type = gl2
            .g_types()
            .unwrap()
            .into_iter()
            .find(|t| t.class_label == "T")
            .unwrap();
        // dim 1, ratio^2 = 4, nu = -1, centre order q-1.
        assert_eq!(gl2.s_tau(&torus_type, 3), poly(&[4, -4]));

        let so5 = adjoint_ctx("B2");
        let torus_type = so5
            .g_types()
            .unwrap()
            .into_iter()
            .find(|t| t.class_label == "T")
            .unwrap();
        assert_eq!(so5.s_tau(&torus_type, 2), poly(&[64]));

        let zero_orbit = so5
            .lie_types()
            .unwrap()
            .into_iter()
            .find(|t| t.class_label == "T")
            .unwrap();
        // 3 q^8 (q+1)^2 (q^2+1) at one puncture.
        let expect = (&poly(&[1, 2, 1]) * &poly(&[1, 0, 1]))
            .shift(8)
            .scale(&BigRational::from_integer(BigInt::from(3)));
        assert_eq!(so5.h_tau(&zero_orbit, 1).unwrap(), expect);

        let regular = so5
            .lie_types()
            .unwrap()
            .into_iter()
            .find(|t| t.class_label == "B2" && t.d_tau == 2)
            .unwrap();
        // Regular orbit, two punctures: q^10 Phi1^2 Phi2^2 Phi4.
        let expect = (&(&poly(&[1, -2, 1]) * &poly(&[1, 2, 1])) * &poly(&[1, 0, 1])).shift(10);
        assert_eq!(so5.h_tau(&regular, 2).unwrap(), expect);
    }

    #[test]
    fn centraliser_dimensions_for_so5() {
        let ctx = adjoint_ctx("B2");
        let mut ds: Vec<usize> = ctx.lie_types().unwrap().iter().map(|t| t.d_tau).collect();
        ds.sort_unstable();
        assert_eq!(ds, vec![2, 2, 2, 2, 4, 4, 4, 4, 6, 10]);
        for t in ctx.lie_types().unwrap() {
            assert!(t.d_tau >= ctx.datum.rank);
        }
    }

    #[test]
    fn weights_are_constant_on_classes() {
        let ctx = adjoint_ctx("B2");
        for class in &ctx.endoscopy_classes {
            let orbit = ctx.datum.orbit_of(&class.rep);
            let reference = nu(&ctx.datum, &class.rep).unwrap();
            for member in orbit.iter().take(3) {
                assert_eq!(nu(&ctx.datum, member).unwrap(), reference);
            }
        }
        for class in &ctx.levi_classes {
            let orbit = ctx.datum.orbit_of(&class.rep);
            let reference = mu_levi(&ctx.datum, &class.rep).unwrap();
            for member in orbit.iter().take(3) {
                assert_eq!(mu_levi(&ctx.datum, member).unwrap(), reference);
            }
        }
    }

    #[test]
    fn weight_functions_reject_wrong_subsystems() {
        let datum = RootDatum::adjoint(&cartan::parse_products("B2").unwrap()).unwrap();
        // The long-long A1 x A1 is a pseudo-Levi but not an endoscopy
        // subsystem, and not a Levi either.
        let candidates = datum.enumerate_pseudo_levis_iterated();
        let endos: BTreeSet<_> = datum.enumerate_endoscopies().into_iter().collect();
        let strange: Vec<_> = candidates
            .iter()
            .filter(|s| s.len() == 4 && !endos.contains(s))
            .collect();
        assert!(!strange.is_empty());
        for s in strange {
            assert!(matches!(nu(&datum, s), Err(Error::NotEndoscopy(_))));
            assert!(matches!(mu_levi(&datum, s), Err(Error::NotLevi(_))));
        }
    }

    #[test]
    fn fusion_detector_reports_swappable_pairs() {
        // The short A1 x A1 class of B2 has two identical components whose
        // character labels can be swapped by a reflection.
        let notes = adjoint_ctx("B2").fusion_notes();
        assert!(notes.iter().any(|n| n.contains("A1'xA1'")), "{notes:?}");
        // G2 has no class with two identical components.
        assert!(adjoint_ctx("G2").fusion_notes().is_empty());
        // GL4 has a Levi class with two equal factors.
        assert!(!gl_ctx(4).fusion_notes().is_empty());
    }

    #[test]
    fn missing_tables_surface_as_errors() {
        let ctx = adjoint_ctx("F4");
        // Weights and moduli are still available without any tables.
        assert_eq!(ctx.validity_modulus, BigInt::from(12));
        match ctx.g_types() {
            Err(Error::MissingData(_)) => {}
            other => panic!("expected MissingData, got {other:?}"),
        }
    }
}
