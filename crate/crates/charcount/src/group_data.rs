//! Character and orbit data packs for simple groups.
//!
//! Counting formulas consume two finite tables per reductive group: the
//! unipotent characters (dimension of the underlying Weyl group character and
//! generic degree) and the nilpotent adjoint orbits (dimension, number of
//! F_q-points, Green polynomial).  For type A both tables are synthesized
//! from partition combinatorics; for other simple types they are loaded from
//! JSON packs — two are compiled in for the rank-2 groups of type B2 and G2,
//! three more (B3, C3, D4) are compiled in from files produced by the
//! offline generator in `tools/`, and additional packs can be supplied at
//! runtime through the `CHARCOUNT_DATA_DIR` environment variable.
//!
//! Every pack is validated on load against identities that tie the tables to
//! the Weyl group of its Cartan type:
//!
//! * `sum dim^2 = |W|`,
//! * `sum dim * gdeg = P_W(q)` (the Poincare polynomial of W),
//! * every generic degree divides the group order polynomial,
//! * `sum size = q^{2 #positive roots}` (the orbits partition the cone),
//! * `sum size * green = q^{#positive roots} P_W(q)` (pairs of a nilpotent
//!   element and a fixed flag, counted both ways),
//! * the zero orbit has size 1 and green polynomial `P_W(q)`.
//!
//! Packs for product types are formed componentwise: labels are joined with
//! a tensor sign, dimensions/sizes/polynomials multiply, orbit dimensions
//! add.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cartan::{parse_products, ComponentType, Family};
use crate::error::{Error, Result};
use crate::poly::QPolynomial;
use crate::root_data::RootDatum;
use crate::typea;
use crate::weyl;

/// One unipotent character: label, dimension of the Weyl-group character it
/// corresponds to, and its generic degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentDatum {
    pub rho: String,
    pub dim: u64,
    pub generic_degree: QPolynomial,
}

/// One nilpotent adjoint orbit: label, dimension, number of F_q-points, and
/// Green polynomial (number of fixed complete flags).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentDatum {
    pub label: String,
    pub orbit_dim: usize,
    pub size: QPolynomial,
    pub green: QPolynomial,
}

/// A generator of the outer automorphism group with its orbits on labels.
/// Singleton orbits may be omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OuterGenerator {
    pub order: u32,
    pub unipotent_orbits: Vec<Vec<String>>,
    pub nilpotent_orbits: Vec<Vec<String>>,
}

/// Complete data pack for one (possibly composite) Cartan type.
#[derive(Debug, Clone)]
pub struct GroupDataPack {
    pub key: String,
    pub unipotent: Vec<UnipotentDatum>,
    pub nilpotent: Vec<NilpotentDatum>,
    pub outer_action: Vec<OuterGenerator>,
}

#[derive(Serialize, Deserialize)]
struct RawPack {
    cartan_type: String,
    unipotent: Vec<RawUnipotent>,
    nilpotent: Vec<RawNilpotent>,
    #[serde(default)]
    outer_action: Vec<RawOuter>,
}

#[derive(Serialize, Deserialize)]
struct RawUnipotent {
    rho: String,
    dim: u64,
    /// Coefficients, constant first, as rational strings ("1", "-1/2"):
    /// generic degrees are integer-valued at prime powers but can have
    /// fractional coefficients (e.g. q(q^2+1)/2 in type B2).
    generic_degree: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawNilpotent {
    label: String,
    orbit_dim: usize,
    /// Rational-string coefficients: orbits that split off a geometric orbit
    /// with disconnected centralizer have sizes with fractional coefficients.
    size: Vec<String>,
    green: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawOuter {
    order: u32,
    #[serde(default)]
    unipotent_orbits: Vec<Vec<String>>,
    #[serde(default)]
    nilpotent_orbits: Vec<Vec<String>>,
}

impl GroupDataPack {
    /// The trivial pack of a torus: one character, one (zero) orbit.
    pub fn torus() -> Self {
        GroupDataPack {
            key: "T".to_string(),
            unipotent: vec![UnipotentDatum {
                rho: "1".to_string(),
                dim: 1,
                generic_degree: QPolynomial::one(),
            }],
            nilpotent: vec![NilpotentDatum {
                label: "0".to_string(),
                orbit_dim: 0,
                size: QPolynomial::one(),
                green: QPolynomial::one(),
            }],
            outer_action: Vec::new(),
        }
    }

    /// Synthesized pack for a simple component of type `A_rank`, realized as
    /// `gl_{rank+1}` so that orbit sizes match the conjugation action of the
    /// full Levi with its central torus.
    pub fn type_a(rank: usize) -> Result<Self> {
        let n = rank + 1;
        let mut unipotent = Vec::new();
        let mut nilpotent = Vec::new();
        for lambda in typea::partitions(n) {
            let label = typea::partition_label(&lambda);
            unipotent.push(UnipotentDatum {
                rho: label.clone(),
                dim: typea::char_dimension(&lambda),
                generic_degree: typea::generic_degree(&lambda)?,
            });
            nilpotent.push(NilpotentDatum {
                label,
                orbit_dim: typea::orbit_dimension(&lambda),
                size: typea::orbit_size(&lambda)?,
                green: typea::green_polynomial(&lambda),
            });
        }
        Ok(GroupDataPack {
            key: format!("A{rank}"),
            unipotent,
            nilpotent,
            outer_action: Vec::new(),
        })
    }

    fn from_raw(raw: RawPack) -> Result<Self> {
        fn to_poly(coeffs: &[String]) -> Result<QPolynomial> {
            let parsed: Vec<BigRational> = coeffs
                .iter()
                .map(|s| {
                    s.trim()
                        .parse::<BigRational>()
                        .map_err(|e| Error::ParseError(format!("bad coefficient {s:?}: {e}")))
                })
                .collect::<Result<_>>()?;
            Ok(QPolynomial::from_rational_coeffs(parsed))
        }
        let pack = GroupDataPack {
            key: raw.cartan_type,
            unipotent: raw
                .unipotent
                .iter()
                .map(|u| {
                    Ok(UnipotentDatum {
                        rho: u.rho.clone(),
                        dim: u.dim,
                        generic_degree: to_poly(&u.generic_degree)?,
                    })
                })
                .collect::<Result<_>>()?,
            nilpotent: raw
                .nilpotent
                .iter()
                .map(|o| {
                    Ok(NilpotentDatum {
                        label: o.label.clone(),
                        orbit_dim: o.orbit_dim,
                        size: to_poly(&o.size)?,
                        green: to_poly(&o.green)?,
                    })
                })
                .collect::<Result<_>>()?,
            outer_action: raw
                .outer_action
                .iter()
                .map(|g| OuterGenerator {
                    order: g.order,
                    unipotent_orbits: g.unipotent_orbits.clone(),
                    nilpotent_orbits: g.nilpotent_orbits.clone(),
                })
                .collect(),
        };
        pack.validate()?;
        Ok(pack)
    }

    /// Parse and validate a pack from JSON text.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawPack =
            serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
        Self::from_raw(raw)
    }

    /// Componentwise product of packs, in the given order.
    pub fn product(factors: &[&GroupDataPack]) -> GroupDataPack {
        let mut acc = GroupDataPack::torus();
        acc.key = String::new();
        for (i, pack) in factors.iter().enumerate() {
            let mut unipotent = Vec::new();
            for a in &acc.unipotent {
                for b in &pack.unipotent {
                    let rho = if i == 0 {
                        b.rho.clone()
                    } else {
                        format!("{}⊗{}", a.rho, b.rho)
                    };
                    unipotent.push(UnipotentDatum {
                        rho,
                        dim: a.dim * b.dim,
                        generic_degree: &a.generic_degree * &b.generic_degree,
                    });
                }
            }
            let mut nilpotent = Vec::new();
            for a in &acc.nilpotent {
                for b in &pack.nilpotent {
                    let label = if i == 0 {
                        b.label.clone()
                    } else {
                        format!("{}⊗{}", a.label, b.label)
                    };
                    nilpotent.push(NilpotentDatum {
                        label,
                        orbit_dim: a.orbit_dim + b.orbit_dim,
                        size: &a.size * &b.size,
                        green: &a.green * &b.green,
                    });
                }
            }
            acc = GroupDataPack {
                key: if i == 0 {
                    pack.key.clone()
                } else {
                    format!("{}x{}", acc.key, pack.key)
                },
                unipotent,
                nilpotent,
                outer_action: Vec::new(),
            };
        }
        if acc.key.is_empty() {
            acc.key = "T".to_string();
        }
        acc
    }

    /// Validate the tables against the Weyl group of the pack's Cartan type.
    pub fn validate(&self) -> Result<()> {
        let comps = parse_products(&self.key)?;
        for &(family, _) in &comps {
            if family == Family::A {
                return Err(Error::InvalidDatum(format!(
                    "pack {}: type A data is synthesized, not loaded",
                    self.key
                )));
            }
        }
        let datum = RootDatum::adjoint(&comps)?;
        let full = datum.full_subsystem();
        let order = weyl::weyl_order(&datum, &full)?;
        let degrees = {
            let exps = weyl::exponents(&datum, &full)?;
            exps.iter().map(|e| e + 1).collect::<Vec<_>>()
        };
        let num_positive = datum.num_positive();
        let poincare = degrees
            .iter()
            .fold(QPolynomial::one(), |acc, &d| &acc * &QPolynomial::q_integer(d));
        let order_poly = weyl::order_polynomial(&datum, &full)?;
        let fail = |msg: String| Err(Error::InvariantViolation(format!("pack {}: {msg}", self.key)));

        let dim_sq: u64 = self.unipotent.iter().map(|u| u.dim * u.dim).sum();
        if dim_sq != order {
            return fail(format!("sum of dim^2 is {dim_sq}, Weyl order is {order}"));
        }
        let mut flag_sum = QPolynomial::zero();
        for u in &self.unipotent {
            if !u.generic_degree.divides(&order_poly) {
                return fail(format!("generic degree of {} does not divide the group order", u.rho));
            }
            let d = QPolynomial::constant(BigRational::from(BigInt::from(u.dim)));
            flag_sum = &flag_sum + &(&d * &u.generic_degree);
        }
        if flag_sum != poincare {
            return fail("sum of dim * generic degree differs from the Poincare polynomial".into());
        }

        let mut size_sum = QPolynomial::zero();
        let mut springer = QPolynomial::zero();
        let mut zero_orbits = 0;
        for o in &self.nilpotent {
            if !o.green.has_integer_coeffs() {
                return fail(format!("green polynomial of {} is not integral", o.label));
            }
            if !o.green.has_nonnegative_coeffs() {
                return fail(format!("green polynomial of {} has a negative coefficient", o.label));
            }
            if o.size.degree() != Some(o.orbit_dim) {
                return fail(format!("size of {} has degree {:?}, dimension is {}", o.label, o.size.degree(), o.orbit_dim));
            }
            if o.orbit_dim == 0 {
                zero_orbits += 1;
                if !o.size.is_one() {
                    return fail(format!("zero orbit {} has size != 1", o.label));
                }
                if o.green != poincare {
                    return fail(format!("zero orbit {} green polynomial differs from the Poincare polynomial", o.label));
                }
            }
            size_sum = &size_sum + &o.size;
            springer = &springer + &(&o.size * &o.green);
        }
        if zero_orbits != 1 {
            return fail(format!("{zero_orbits} zero orbits"));
        }
        if size_sum != QPolynomial::q_pow(2 * num_positive) {
            return fail("orbit sizes do not sum to the size of the nilpotent cone".into());
        }
        let expected = &QPolynomial::q_pow(num_positive) * &poincare;
        if springer != expected {
            return fail("sum of size * green differs from q^N P_W".into());
        }

        for generator in &self.outer_action {
            if generator.order == 0 {
                return fail("outer generator of order 0".into());
            }
            let unip: Vec<&str> = self.unipotent.iter().map(|u| u.rho.as_str()).collect();
            let nilp: Vec<&str> = self.nilpotent.iter().map(|o| o.label.as_str()).collect();
            for (orbits, labels, what) in [
                (&generator.unipotent_orbits, &unip, "unipotent"),
                (&generator.nilpotent_orbits, &nilp, "nilpotent"),
            ] {
                let mut seen = std::collections::HashSet::new();
                for orbit in orbits.iter() {
                    for label in orbit {
                        if !labels.contains(&label.as_str()) {
                            return fail(format!("outer action references unknown {what} label {label}"));
                        }
                        if !seen.insert(label.clone()) {
                            return fail(format!("outer action lists {what} label {label} twice"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Look up an orbit by label.
    pub fn orbit(&self, label: &str) -> Option<&NilpotentDatum> {
        self.nilpotent.iter().find(|o| o.label == label)
    }

    /// Look up a unipotent character by label.
    pub fn character(&self, rho: &str) -> Option<&UnipotentDatum> {
        self.unipotent.iter().find(|u| u.rho == rho)
    }
}

/// Pack storage: compiled-in packs plus any found in `CHARCOUNT_DATA_DIR`.
#[derive(Debug, Clone)]
pub struct Registry {
    packs: BTreeMap<String, GroupDataPack>,
}

pub const BUNDLED_PACKS: &[(&str, &str)] = &[
    ("B2", include_str!("../data/bundled/b2.json")),
    ("G2", include_str!("../data/bundled/g2.json")),
    ("B3", include_str!("../data/stretch/b3.json")),
    ("C3", include_str!("../data/stretch/c3.json")),
    ("D4", include_str!("../data/stretch/d4.json")),
];

impl Registry {
    /// Registry with only the compiled-in packs.
    pub fn bundled() -> Result<Self> {
        let mut packs = BTreeMap::new();
        for (key, text) in BUNDLED_PACKS {
            let pack = GroupDataPack::from_json_str(text)?;
            if pack.key != *key {
                return Err(Error::InvalidDatum(format!(
                    "bundled pack {} declares type {}",
                    key, pack.key
                )));
            }
            packs.insert(pack.key.clone(), pack);
        }
        Ok(Registry { packs })
    }

    /// Registry with the compiled-in packs plus any `*.json` packs found in
    /// the directory named by `CHARCOUNT_DATA_DIR`, which override on key
    /// collision.
    pub fn from_environment() -> Result<Self> {
        let mut registry = Self::bundled()?;
        if let Ok(dir) = std::env::var("CHARCOUNT_DATA_DIR") {
            registry.load_dir(Path::new(&dir))?;
        }
        Ok(registry)
    }

    /// Load every `*.json` file in `dir` as a pack.
    pub fn load_dir(&mut self, dir: &Path) -> Result<()> {
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let text = std::fs::read_to_string(&path)?;
            let pack = GroupDataPack::from_json_str(&text)?;
            self.packs.insert(pack.key.clone(), pack);
        }
        Ok(())
    }

    /// Keys of all stored (non-synthesized) packs.
    pub fn keys(&self) -> Vec<String> {
        self.packs.keys().cloned().collect()
    }

    /// Pack for one simple component.
    pub fn component_pack(&self, component: &ComponentType) -> Result<GroupDataPack> {
        if component.family == Family::A {
            return GroupDataPack::type_a(component.rank);
        }
        let key = format!("{}{}", component.family, component.rank);
        self.packs
            .get(&key)
            .cloned()
            .ok_or(Error::MissingData(key))
    }

    /// Pack for an ordered list of simple components (a Levi or centralizer
    /// subsystem); the empty list gives the torus pack.
    pub fn pack_for_components(&self, components: &[ComponentType]) -> Result<GroupDataPack> {
        if components.is_empty() {
            return Ok(GroupDataPack::torus());
        }
        if components.len() == 1 {
            return self.component_pack(&components[0]);
        }
        let packs: Vec<GroupDataPack> = components
            .iter()
            .map(|c| self.component_pack(c))
            .collect::<Result<_>>()?;
        let refs: Vec<&GroupDataPack> = packs.iter().collect();
        Ok(GroupDataPack::product(&refs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::LengthClass;

    #[test]
    fn type_a_pack_is_consistent() {
        for rank in 1..=3 {
            let pack = GroupDataPack::type_a(rank).unwrap();
            let n = rank + 1;
            let count = typea::partitions(n).len();
            assert_eq!(pack.unipotent.len(), count);
            assert_eq!(pack.nilpotent.len(), count);
            let dim_sq: u64 = pack.unipotent.iter().map(|u| u.dim * u.dim).sum();
            let factorial: u64 = (1..=n as u64).product();
            assert_eq!(dim_sq, factorial);
        }
    }

    #[test]
    fn torus_pack() {
        let t = GroupDataPack::torus();
        assert_eq!(t.unipotent.len(), 1);
        assert_eq!(t.nilpotent.len(), 1);
        assert!(t.nilpotent[0].size.is_one());
    }

    #[test]
    fn products_multiply_tables() {
        let a1 = GroupDataPack::type_a(1).unwrap();
        let prod = GroupDataPack::product(&[&a1, &a1]);
        assert_eq!(prod.unipotent.len(), 4);
        assert_eq!(prod.nilpotent.len(), 4);
        let labels: Vec<&str> = prod.nilpotent.iter().map(|o| o.label.as_str()).collect();
        assert!(labels.contains(&"2⊗11"));
        assert!(labels.contains(&"11⊗2"));
        let reg = &prod.nilpotent.iter().find(|o| o.label == "2⊗2").unwrap();
        assert_eq!(reg.orbit_dim, 4);
        assert_eq!(reg.size, &QPolynomial::q_pow_minus_one(2) * &QPolynomial::q_pow_minus_one(2));
    }

    #[test]
    fn component_order_is_preserved() {
        let a1 = GroupDataPack::type_a(1).unwrap();
        let a2 = GroupDataPack::type_a(2).unwrap();
        let p12 = GroupDataPack::product(&[&a1, &a2]);
        let p21 = GroupDataPack::product(&[&a2, &a1]);
        assert!(p12.nilpotent.iter().any(|o| o.label == "2⊗111"));
        assert!(p21.nilpotent.iter().any(|o| o.label == "111⊗2"));
        assert_eq!(p12.nilpotent.len(), p21.nilpotent.len());
    }

    #[test]
    fn registry_synthesizes_type_a() {
        let registry = Registry::bundled().unwrap();
        let comp = ComponentType {
            family: Family::A,
            rank: 2,
            length: LengthClass::Only,
        };
        let pack = registry.component_pack(&comp).unwrap();
        assert_eq!(pack.key, "A2");
        assert_eq!(pack.unipotent.len(), 3);
        let torus = registry.pack_for_components(&[]).unwrap();
        assert_eq!(torus.key, "T");
    }

    fn simple(key: &str) -> Vec<ComponentType> {
        parse_products(key)
            .unwrap()
            .into_iter()
            .map(|(family, rank)| ComponentType { family, rank, length: LengthClass::Only })
            .collect()
    }

    #[test]
    fn bundled_packs_load_and_validate() {
        let registry = Registry::bundled().unwrap();
        assert_eq!(registry.keys(), vec!["B2", "B3", "C3", "D4", "G2"]);
        let shapes = [("B2", 5, 5), ("G2", 6, 7), ("B3", 10, 10), ("C3", 10, 10), ("D4", 13, 13)];
        for (key, unip, nilp) in shapes {
            let pack = registry.pack_for_components(&simple(key)).unwrap();
            assert_eq!(pack.unipotent.len(), unip, "{key}");
            assert_eq!(pack.nilpotent.len(), nilp, "{key}");
        }
        // B3 and C3 share their unipotent tables but not their orbit tables.
        let b3 = registry.pack_for_components(&simple("B3")).unwrap();
        let c3 = registry.pack_for_components(&simple("C3")).unwrap();
        assert_eq!(b3.unipotent, c3.unipotent);
        let b3_labels: Vec<_> = b3.nilpotent.iter().map(|o| &o.label).collect();
        let c3_labels: Vec<_> = c3.nilpotent.iter().map(|o| &o.label).collect();
        assert_ne!(b3_labels, c3_labels);
        // The D4 outer generators permute orbits with identical data.
        let d4 = registry.pack_for_components(&simple("D4")).unwrap();
        assert_eq!(d4.outer_action.len(), 2);
        assert_eq!(d4.outer_action[0].order, 2);
        assert_eq!(d4.outer_action[1].order, 3);
        for generator in &d4.outer_action {
            for orbit in &generator.nilpotent_orbits {
                let rows: Vec<_> = orbit.iter().map(|l| d4.orbit(l).unwrap()).collect();
                assert!(rows.windows(2).all(|w| {
                    w[0].size == w[1].size
                        && w[0].green == w[1].green
                        && w[0].orbit_dim == w[1].orbit_dim
                }));
            }
            for orbit in &generator.unipotent_orbits {
                let rows: Vec<_> = orbit.iter().map(|l| d4.character(l).unwrap()).collect();
                assert!(rows.windows(2).all(|w| {
                    w[0].dim == w[1].dim && w[0].generic_degree == w[1].generic_degree
                }));
            }
        }
    }

    #[test]
    fn validation_rejects_corrupt_packs() {
        // A fake A1 pack must be rejected outright.
        let fake = r#"{"cartan_type":"A1","unipotent":[],"nilpotent":[]}"#;
        assert!(GroupDataPack::from_json_str(fake).is_err());
        // A B2 pack with wrong dimensions must fail the Weyl order check.
        let bad = r#"{
            "cartan_type": "B2",
            "unipotent": [{"rho": "x", "dim": 3, "generic_degree": ["1"]}],
            "nilpotent": [{"label": "0", "orbit_dim": 0, "size": ["1"], "green": ["1"]}]
        }"#;
        let err = GroupDataPack::from_json_str(bad).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(_)), "{err:?}");
    }
}
