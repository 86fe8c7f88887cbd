//! Root data of split reductive groups: a character lattice, the roots and
//! coroots inside it, and the subsystem families built from them.
//!
//! A `RootDatum` stores every root as an integer vector in a fixed basis of
//! the character lattice `X`, the matching coroot in the dual basis, and the
//! pairing matrix between the two lattices.  The full root set is generated
//! from the simple pairs by closing under simple reflections.  Public
//! constructors accept only data whose root lattice is a saturated sublattice
//! of `X`; equivalently, the centre of the corresponding group is connected.
//! (Duals of such data may fail this, so the dual is built through a private
//! path.)
//!
//! Subsystems are stored as sorted lists of root indices.  Three families are
//! enumerated:
//!
//! * Levi subsystems: intersections of the root system with rational spans of
//!   root subsets (conjugates of the standard parabolic Levis);
//! * centralizer subsystems: integral spans of subsets of the extended simple
//!   set (simple roots plus lowest roots), closed under the Weyl action —
//!   the root systems of centralizers of semisimple elements;
//! * endoscopy subsystems: images of the centralizer subsystems of the dual
//!   datum, identified through the root/coroot bijection.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::cartan::{self, CartanType, ComponentType, Family, LengthClass};
use crate::error::{Error, Result};
use crate::intmat::{IntMatrix, ZLattice};

/// Hard cap on generated roots; the largest built-in system (E8) has 240.
const MAX_ROOTS: usize = 1000;

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub label: String,
    /// Rank of the character lattice (= dimension of the maximal torus).
    pub rank: usize,
    /// All roots, as integer vectors in the chosen basis of `X`.
    pub roots: Vec<Vec<i64>>,
    /// Coroot of `roots[i]`, in the dual basis.
    pub coroots: Vec<Vec<i64>>,
    /// Indices of the simple roots.
    pub simple: Vec<usize>,
    /// `pairing[a][b]` pairs basis vector `a` of `X` with dual basis vector `b`.
    pairing: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// Index of `-roots[i]`.
    pub neg: Vec<usize>,
    /// Squared length, scaled so the shortest root of each component has 1.
    pub len2: Vec<i64>,
    /// Irreducible component of each root.
    pub component: Vec<usize>,
    pub num_components: usize,
    /// Coefficients of each root over the simple roots.
    pub simple_coeffs: Vec<Vec<i64>>,
    pub positive: Vec<bool>,
}

#[derive(Deserialize)]
struct RawDatum {
    label: Option<String>,
    #[serde(alias = "basis_rank")]
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    #[serde(alias = "coroots")]
    simple_coroots: Vec<Vec<i64>>,
    #[serde(default)]
    pairing: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    center_dim: Option<usize>,
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

impl RootDatum {
    /// General linear group: `X = Z^n`, roots `e_i - e_j`, self-dual pairing.
    pub fn gl(n: usize) -> Result<RootDatum> {
        if n == 0 {
            return Err(Error::InvalidDatum("GL0 has no torus".into()));
        }
        let mut sr = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[i + 1] = -1;
            sr.push(v);
        }
        let scr = sr.clone();
        Self::generate(format!("GL{n}"), n, identity_matrix(n), sr, scr, true)
    }

    /// Adjoint group of a product of irreducible types: `X` is the root
    /// lattice, with the simple roots as basis.
    pub fn adjoint(components: &[(Family, usize)]) -> Result<RootDatum> {
        let total: usize = components.iter().map(|&(_, r)| r).sum();
        let mut sr = Vec::new();
        let mut scr = Vec::new();
        let mut label_parts = Vec::new();
        let mut offset = 0;
        for &(fam, rank) in components {
            let c = cartan::cartan_matrix(fam, rank)?;
            for i in 0..rank {
                let mut root = vec![0i64; total];
                root[offset + i] = 1;
                sr.push(root);
                // In the dual basis the coroot of simple root `j` has the
                // Cartan pairings as coordinates.
                let mut coroot = vec![0i64; total];
                for (k, ck) in c.iter().enumerate() {
                    coroot[offset + k] = ck[i];
                }
                scr.push(coroot);
            }
            label_parts.push(format!("{fam}{rank}"));
            offset += rank;
        }
        Self::generate(
            label_parts.join("x"),
            total,
            identity_matrix(total),
            sr,
            scr,
            true,
        )
    }

    /// Load a datum from its JSON description.
    pub fn from_json_str(s: &str) -> Result<RootDatum> {
        let raw: RawDatum =
            serde_json::from_str(s).map_err(|e| Error::ParseError(format!("datum: {e}")))?;
        let pairing = raw.pairing.unwrap_or_else(|| identity_matrix(raw.rank));
        let label = raw.label.unwrap_or_else(|| "datum".to_string());
        let datum = Self::generate(
            label,
            raw.rank,
            pairing,
            raw.simple_roots,
            raw.simple_coroots,
            true,
        )?;
        if let Some(cd) = raw.center_dim {
            if cd != datum.center_dim() {
                return Err(Error::InvalidDatum(format!(
                    "declared centre dimension {cd}, computed {}",
                    datum.center_dim()
                )));
            }
        }
        Ok(datum)
    }

    /// Swap roots with coroots.  The result may have finite centre (it is not
    /// run through the connected-centre gate), and its roots appear in the
    /// same index order as the coroots of `self`.
    pub fn dual(&self) -> RootDatum {
        let sr: Vec<Vec<i64>> = self.simple.iter().map(|&i| self.coroots[i].clone()).collect();
        let scr: Vec<Vec<i64>> = self.simple.iter().map(|&i| self.roots[i].clone()).collect();
        let pairing = (0..self.rank)
            .map(|a| (0..self.rank).map(|b| self.pairing[b][a]).collect())
            .collect();
        Self::generate(format!("{}^", self.label), self.rank, pairing, sr, scr, false)
            .expect("dual of a valid datum must generate")
    }

    fn generate(
        label: String,
        rank: usize,
        pairing: Vec<Vec<i64>>,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        require_connected_centre: bool,
    ) -> Result<RootDatum> {
        let k = simple_roots.len();
        if simple_coroots.len() != k {
            return Err(Error::InvalidDatum(
                "simple root and coroot counts differ".into(),
            ));
        }
        if pairing.len() != rank || pairing.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidDatum("pairing matrix shape".into()));
        }
        if simple_roots
            .iter()
            .chain(simple_coroots.iter())
            .any(|v| v.len() != rank)
        {
            return Err(Error::InvalidDatum("root vector length".into()));
        }

        let pair = |x: &[i64], y: &[i64]| -> i64 {
            let mut s = 0i64;
            for (a, xa) in x.iter().enumerate() {
                if *xa != 0 {
                    for (b, yb) in y.iter().enumerate() {
                        s += xa * pairing[a][b] * yb;
                    }
                }
            }
            s
        };

        // Cartan pairings among the simples.
        let c: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| pair(&simple_roots[i], &simple_coroots[j])).collect())
            .collect();
        for (i, row) in c.iter().enumerate() {
            if row[i] != 2 {
                return Err(Error::InvalidDatum(format!(
                    "root {i} pairs to {} with its own coroot",
                    row[i]
                )));
            }
        }
        // Paired access c[i][j] / c[j][i]; index form is clearer than iterators.
        #[allow(clippy::needless_range_loop)]
        for i in 0..k {
            for j in 0..k {
                if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                    return Err(Error::InvalidDatum(format!(
                        "incoherent Cartan pairings between simples {i} and {j}"
                    )));
                }
            }
        }
        if IntMatrix::from_rows(&simple_roots).rank() != k {
            return Err(Error::InvalidDatum("dependent simple roots".into()));
        }

        // Components of the simple set.
        let mut comp_of_simple = vec![usize::MAX; k];
        let mut num_components = 0;
        for start in 0..k {
            if comp_of_simple[start] != usize::MAX {
                continue;
            }
            let id = num_components;
            num_components += 1;
            let mut stack = vec![start];
            comp_of_simple[start] = id;
            while let Some(i) = stack.pop() {
                for j in 0..k {
                    if comp_of_simple[j] == usize::MAX && c[i][j] != 0 {
                        comp_of_simple[j] = id;
                        stack.push(j);
                    }
                }
            }
        }

        // Relative squared lengths of the simples, per component.
        let mut len_ratio = vec![None::<BigRational>; k];
        for start in 0..k {
            if len_ratio[start].is_some() {
                continue;
            }
            len_ratio[start] = Some(BigRational::one());
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let li = len_ratio[i].clone().unwrap();
                for j in 0..k {
                    if i == j || c[i][j] == 0 {
                        continue;
                    }
                    // len2(j) = len2(i) * c[j][i] / c[i][j].
                    let lj = &li
                        * BigRational::new(BigInt::from(c[j][i]), BigInt::from(c[i][j]));
                    match &len_ratio[j] {
                        None => {
                            len_ratio[j] = Some(lj);
                            queue.push_back(j);
                        }
                        Some(prev) => {
                            if *prev != lj {
                                return Err(Error::InvalidDatum(
                                    "inconsistent length ratios".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        let mut simple_len2 = vec![0i64; k];
        for comp in 0..num_components {
            let members: Vec<usize> =
                (0..k).filter(|&i| comp_of_simple[i] == comp).collect();
            let min = members
                .iter()
                .map(|&i| len_ratio[i].clone().unwrap())
                .min()
                .unwrap();
            for &i in &members {
                let scaled = len_ratio[i].clone().unwrap() / min.clone();
                if !scaled.is_integer() {
                    return Err(Error::InvalidDatum("non-integral length ratio".into()));
                }
                let v = scaled.to_integer();
                if v < BigInt::one() || v > BigInt::from(3) {
                    return Err(Error::InvalidDatum("length ratio out of range".into()));
                }
                simple_len2[i] = i64::try_from(v).unwrap();
            }
        }

        // Close under simple reflections, carrying coroots, lengths and
        // components along.
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut coroots: Vec<Vec<i64>> = Vec::new();
        let mut len2: Vec<i64> = Vec::new();
        let mut component: Vec<usize> = Vec::new();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut simple = Vec::new();
        for i in 0..k {
            if index.contains_key(&simple_roots[i]) {
                return Err(Error::InvalidDatum("repeated simple root".into()));
            }
            index.insert(simple_roots[i].clone(), i);
            roots.push(simple_roots[i].clone());
            coroots.push(simple_coroots[i].clone());
            len2.push(simple_len2[i]);
            component.push(comp_of_simple[i]);
            simple.push(i);
        }
        let mut head = 0;
        while head < roots.len() {
            for j in 0..k {
                let a = pair(&roots[head], &simple_coroots[j]);
                let b = pair(&simple_roots[j], &coroots[head]);
                let new_root: Vec<i64> = roots[head]
                    .iter()
                    .zip(&simple_roots[j])
                    .map(|(x, s)| x - a * s)
                    .collect();
                let new_coroot: Vec<i64> = coroots[head]
                    .iter()
                    .zip(&simple_coroots[j])
                    .map(|(x, s)| x - b * s)
                    .collect();
                match index.get(&new_root) {
                    Some(&e) => {
                        if coroots[e] != new_coroot {
                            return Err(Error::InvalidDatum(
                                "reflection produced mismatched coroots".into(),
                            ));
                        }
                    }
                    None => {
                        if roots.len() >= MAX_ROOTS {
                            return Err(Error::InvalidDatum(
                                "root closure did not terminate".into(),
                            ));
                        }
                        index.insert(new_root.clone(), roots.len());
                        roots.push(new_root);
                        coroots.push(new_coroot);
                        len2.push(len2[head]);
                        component.push(component[head]);
                    }
                }
            }
            head += 1;
        }

        // Negation map.
        let neg: Vec<usize> = roots
            .iter()
            .map(|r| {
                let m: Vec<i64> = r.iter().map(|x| -x).collect();
                index
                    .get(&m)
                    .copied()
                    .ok_or_else(|| Error::InvalidDatum("root set not symmetric".into()))
            })
            .collect::<Result<_>>()?;

        // Saturation of the root lattice in X.
        if require_connected_centre {
            let inv = IntMatrix::from_rows(&simple_roots).smith_invariants();
            if inv.iter().any(|d| !d.is_zero() && !d.is_one()) {
                return Err(Error::DisconnectedCentre(label));
            }
        }

        // Coefficients over the simple roots, via the transposed Cartan
        // pairing matrix.
        let cti = invert_rational(
            (0..k)
                .map(|i| (0..k).map(|j| BigRational::from(BigInt::from(c[j][i]))).collect())
                .collect(),
        )
        .ok_or_else(|| Error::InvalidDatum("singular Cartan pairing matrix".into()))?;
        let mut simple_coeffs = Vec::with_capacity(roots.len());
        let mut positive = Vec::with_capacity(roots.len());
        for r in &roots {
            let p: Vec<BigRational> = (0..k)
                .map(|j| BigRational::from(BigInt::from(pair(r, &simple_coroots[j]))))
                .collect();
            let mut coeffs = Vec::with_capacity(k);
            for row in &cti {
                let mut s = BigRational::zero();
                for (x, y) in row.iter().zip(&p) {
                    s += x * y;
                }
                if !s.is_integer() {
                    return Err(Error::InvalidDatum(
                        "root outside the simple-root lattice".into(),
                    ));
                }
                coeffs.push(i64::try_from(s.to_integer()).unwrap());
            }
            let pos = coeffs.iter().any(|&x| x > 0);
            let neg_part = coeffs.iter().any(|&x| x < 0);
            if pos == neg_part {
                return Err(Error::InvalidDatum("root with mixed-sign coefficients".into()));
            }
            positive.push(pos);
            simple_coeffs.push(coeffs);
        }

        Ok(RootDatum {
            label,
            rank,
            roots,
            coroots,
            simple,
            pairing,
            index,
            neg,
            len2,
            component,
            num_components,
            simple_coeffs,
            positive,
        })
    }

    pub fn ss_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn center_dim(&self) -> usize {
        self.rank - self.ss_rank()
    }

    /// Dimension of the group: root count plus torus rank.
    pub fn dimension(&self) -> usize {
        self.roots.len() + self.rank
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Pairing of an `X` vector with a dual vector.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0i64;
        for (a, xa) in x.iter().enumerate() {
            if *xa != 0 {
                for (b, yb) in y.iter().enumerate() {
                    s += xa * self.pairing[a][b] * yb;
                }
            }
        }
        s
    }

    /// Pairing of root `i` with coroot `j`.
    pub fn cartan_int(&self, i: usize, j: usize) -> i64 {
        self.pair(&self.roots[i], &self.coroots[j])
    }

    pub fn height(&self, i: usize) -> i64 {
        self.simple_coeffs[i].iter().sum()
    }

    /// Matrix of the reflection in root `i`, acting on column vectors in `X`.
    pub fn reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let alpha = &self.roots[i];
        // Row functional x -> <x, coroot_i>.
        let functional: Vec<i64> = (0..self.rank)
            .map(|a| {
                (0..self.rank)
                    .map(|b| self.pairing[a][b] * self.coroots[i][b])
                    .sum()
            })
            .collect();
        (0..self.rank)
            .map(|a| {
                (0..self.rank)
                    .map(|b| i64::from(a == b) - alpha[a] * functional[b])
                    .collect()
            })
            .collect()
    }

    /// Image of root `j` under the reflection in root `i`.
    pub fn reflect_root(&self, i: usize, j: usize) -> usize {
        let a = self.pair(&self.roots[j], &self.coroots[i]);
        let v: Vec<i64> = self.roots[j]
            .iter()
            .zip(&self.roots[i])
            .map(|(x, s)| x - a * s)
            .collect();
        self.index[&v]
    }

    /// Permutations of the root indices under the simple reflections.
    pub fn simple_reflection_perms(&self) -> Vec<Vec<u32>> {
        self.simple
            .iter()
            .map(|&s| {
                (0..self.roots.len())
                    .map(|j| self.reflect_root(s, j) as u32)
                    .collect()
            })
            .collect()
    }

    /// Index of the highest root of component `comp`.
    pub fn highest_root(&self, comp: usize) -> usize {
        let best = (0..self.roots.len())
            .filter(|&i| self.component[i] == comp && self.positive[i])
            .max_by_key(|&i| self.height(i))
            .expect("component has roots");
        let h = self.height(best);
        let ties = (0..self.roots.len())
            .filter(|&i| {
                self.component[i] == comp && self.positive[i] && self.height(i) == h
            })
            .count();
        assert_eq!(ties, 1, "highest root must be unique");
        best
    }

    /// The simple roots together with the lowest root of each component.
    pub fn extended_simple_set(&self) -> Vec<usize> {
        let mut out = self.simple.clone();
        for comp in 0..self.num_components {
            out.push(self.neg[self.highest_root(comp)]);
        }
        out
    }
}

/// A subsystem: a sorted list of root indices, closed under negation and
/// under its own reflections.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subsystem {
    pub roots: Vec<u32>,
}

impl Subsystem {
    pub fn new(mut roots: Vec<u32>) -> Self {
        roots.sort_unstable();
        roots.dedup();
        Subsystem { roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.roots.binary_search(&i).is_ok()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.roots.iter().map(|&i| i as usize)
    }
}

impl RootDatum {
    pub fn full_subsystem(&self) -> Subsystem {
        Subsystem::new((0..self.roots.len() as u32).collect())
    }

    pub fn empty_subsystem(&self) -> Subsystem {
        Subsystem::new(Vec::new())
    }

    /// Roots lying in the integral span of the given roots.
    pub fn subsystem_generated(&self, gens: &[usize]) -> Subsystem {
        let lat = ZLattice::from_vectors(
            self.rank,
            gens.iter().map(|&g| self.roots[g].clone()),
        );
        Subsystem::new(
            self.roots
                .iter()
                .enumerate()
                .filter(|(_, v)| lat.contains_i64(v))
                .map(|(i, _)| i as u32)
                .collect(),
        )
    }

    /// Roots lying in the rational span of the given roots.
    pub fn levi_generated(&self, gens: &[usize]) -> Subsystem {
        let base: Vec<Vec<i64>> = gens.iter().map(|&g| self.roots[g].clone()).collect();
        let base_rank = IntMatrix::from_rows(&base).rank();
        Subsystem::new(
            self.roots
                .iter()
                .enumerate()
                .filter(|(_, v)| {
                    let mut rows = base.clone();
                    rows.push((*v).clone());
                    IntMatrix::from_rows(&rows).rank() == base_rank
                })
                .map(|(i, _)| i as u32)
                .collect(),
        )
    }

    pub fn sub_positive(&self, sub: &Subsystem) -> Vec<usize> {
        sub.indices().filter(|&i| self.positive[i]).collect()
    }

    /// Indecomposable positive roots of the subsystem.
    pub fn sub_base(&self, sub: &Subsystem) -> Vec<usize> {
        let pos = self.sub_positive(sub);
        pos.iter()
            .copied()
            .filter(|&p| {
                !pos.iter().any(|&p1| {
                    if p1 == p {
                        return false;
                    }
                    let diff: Vec<i64> = self.roots[p]
                        .iter()
                        .zip(&self.roots[p1])
                        .map(|(a, b)| a - b)
                        .collect();
                    match self.index.get(&diff) {
                        Some(&p2) => self.positive[p2] && sub.contains(p2 as u32),
                        None => false,
                    }
                })
            })
            .collect()
    }

    /// Irreducible components of a subsystem: for each, its base and its full
    /// root list.
    pub fn sub_components(&self, sub: &Subsystem) -> Vec<(Vec<usize>, Vec<usize>)> {
        let base = self.sub_base(sub);
        let n = base.len();
        let mut comp = vec![usize::MAX; n];
        let mut groups = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = groups;
            groups += 1;
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if comp[j] == usize::MAX && self.cartan_int(base[i], base[j]) != 0 {
                        comp[j] = id;
                        stack.push(j);
                    }
                }
            }
        }
        let mut out: Vec<(Vec<usize>, Vec<usize>)> = (0..groups)
            .map(|g| {
                (
                    (0..n).filter(|&i| comp[i] == g).map(|i| base[i]).collect(),
                    Vec::new(),
                )
            })
            .collect();
        for r in sub.indices() {
            let g = (0..n)
                .find(|&i| self.cartan_int(r, base[i]) != 0)
                .expect("every subsystem root pairs with some base root");
            out[comp[g]].1.push(r);
        }
        out
    }

    /// Highest root of one irreducible block of a subsystem, given its base
    /// and root list.
    fn sub_highest(&self, base: &[usize], roots: &[usize]) -> usize {
        let mut best = None;
        for &r in roots {
            if !self.positive[r] {
                continue;
            }
            let maximal = base.iter().all(|&b| {
                let sum: Vec<i64> = self.roots[r]
                    .iter()
                    .zip(&self.roots[b])
                    .map(|(x, y)| x + y)
                    .collect();
                match self.index.get(&sum) {
                    Some(&s) => !roots.contains(&s),
                    None => true,
                }
            });
            if maximal {
                assert!(best.is_none(), "two maximal roots in one block");
                best = Some(r);
            }
        }
        best.expect("irreducible block has a highest root")
    }

    /// Base of the subsystem extended by the lowest root of each block.
    pub fn sub_extended_set(&self, sub: &Subsystem) -> Vec<usize> {
        let mut out = Vec::new();
        for (base, roots) in self.sub_components(sub) {
            let theta = self.sub_highest(&base, &roots);
            out.extend(base);
            out.push(self.neg[theta]);
        }
        out
    }

    /// Rank of the span of the subsystem.
    pub fn sub_span_rank(&self, sub: &Subsystem) -> usize {
        let rows: Vec<Vec<i64>> = sub.indices().map(|i| self.roots[i].clone()).collect();
        IntMatrix::from_rows(&rows).rank()
    }

    /// A subsystem is isolated when it spans the full semisimple rank.
    pub fn is_isolated(&self, sub: &Subsystem) -> bool {
        self.sub_span_rank(sub) == self.ss_rank()
    }

    /// Is this subsystem the full intersection of the root system with the
    /// rational span of its members?
    pub fn is_levi(&self, sub: &Subsystem) -> bool {
        let gens: Vec<usize> = sub.indices().collect();
        self.levi_generated(&gens) == *sub
    }

    /// Identify the component types of a subsystem.
    pub fn sub_cartan_type(&self, sub: &Subsystem) -> Result<CartanType> {
        let mut comps = Vec::new();
        for (base, _roots) in self.sub_components(sub) {
            let k = base.len();
            let c: Vec<Vec<i64>> = (0..k)
                .map(|i| (0..k).map(|j| self.cartan_int(base[i], base[j])).collect())
                .collect();
            let (family, rank) = cartan::recognize_shape(&c)?;
            // Length class relative to the ambient component.
            let ambient = self.component[base[0]];
            let ambient_lens: BTreeSet<i64> = (0..self.roots.len())
                .filter(|&i| self.component[i] == ambient)
                .map(|i| self.len2[i])
                .collect();
            let own_lens: BTreeSet<i64> = base.iter().map(|&i| self.len2[i]).collect();
            let length = if ambient_lens.len() == 1 {
                LengthClass::Only
            } else if own_lens.len() > 1 {
                LengthClass::Mixed
            } else if own_lens.iter().next() == ambient_lens.iter().next() {
                LengthClass::Short
            } else {
                LengthClass::Long
            };
            comps.push(ComponentType::new(family, rank, length));
        }
        Ok(CartanType::new(comps))
    }

    /// Orbit of a subsystem under the Weyl group, generated by the simple
    /// reflections acting on root indices.
    pub fn orbit_of(&self, sub: &Subsystem) -> Vec<Subsystem> {
        let perms = self.simple_reflection_perms();
        let mut seen = BTreeSet::from([sub.clone()]);
        let mut queue = vec![sub.clone()];
        while let Some(s) = queue.pop() {
            for p in &perms {
                let image = Subsystem::new(s.roots.iter().map(|&i| p[i as usize]).collect());
                if seen.insert(image.clone()) {
                    queue.push(image);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Smallest member of the orbit, used as the class representative.
    pub fn orbit_rep(&self, sub: &Subsystem) -> Subsystem {
        self.orbit_of(sub).into_iter().next().unwrap()
    }

    fn close_under_weyl(&self, seeds: BTreeSet<Subsystem>) -> Vec<Subsystem> {
        let perms = self.simple_reflection_perms();
        let mut seen = seeds.clone();
        let mut queue: Vec<Subsystem> = seeds.into_iter().collect();
        while let Some(s) = queue.pop() {
            for p in &perms {
                let image = Subsystem::new(s.roots.iter().map(|&i| p[i as usize]).collect());
                if seen.insert(image.clone()) {
                    queue.push(image);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// All Levi subsystems: Weyl translates of the standard ones.
    pub fn enumerate_levis(&self) -> Vec<Subsystem> {
        let k = self.ss_rank();
        let mut seeds = BTreeSet::new();
        for mask in 0u32..(1 << k) {
            let gens: Vec<usize> = (0..k)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| self.simple[i])
                .collect();
            seeds.insert(self.levi_generated(&gens));
        }
        self.close_under_weyl(seeds)
    }

    /// All centralizer subsystems: Weyl translates of integral spans of
    /// subsets of the extended simple set.
    pub fn enumerate_pseudo_levis(&self) -> Vec<Subsystem> {
        let ext = self.extended_simple_set();
        let m = ext.len();
        let mut seeds = BTreeSet::new();
        for mask in 0u32..(1 << m) {
            let gens: Vec<usize> = (0..m)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| ext[i])
                .collect();
            seeds.insert(self.subsystem_generated(&gens));
        }
        self.close_under_weyl(seeds)
    }

    /// Fixed point of repeating the extended-set construction inside each
    /// subsystem already found.  This is a diagnostic variant: it can produce
    /// subsystems that are not centralizers of any semisimple element.
    pub fn enumerate_pseudo_levis_iterated(&self) -> Vec<Subsystem> {
        let mut family: BTreeSet<Subsystem> =
            self.enumerate_pseudo_levis().into_iter().collect();
        let mut queue: Vec<Subsystem> = family.iter().cloned().collect();
        while let Some(psi) = queue.pop() {
            if psi.is_empty() {
                continue;
            }
            let ext = self.sub_extended_set(&psi);
            let m = ext.len();
            for mask in 0u32..(1 << m) {
                let gens: Vec<usize> = (0..m)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| ext[i])
                    .collect();
                let s = self.subsystem_generated(&gens);
                if !family.contains(&s) {
                    for t in self.orbit_of(&s) {
                        if family.insert(t.clone()) {
                            queue.push(t);
                        }
                    }
                }
            }
        }
        family.into_iter().collect()
    }

    /// All endoscopy subsystems: duals of the centralizer subsystems of the
    /// dual datum, transported through the root/coroot bijection.
    pub fn enumerate_endoscopies(&self) -> Vec<Subsystem> {
        let dual = self.dual();
        let back: HashMap<&Vec<i64>, u32> = self
            .coroots
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();
        dual.enumerate_pseudo_levis()
            .into_iter()
            .map(|s| {
                Subsystem::new(
                    s.indices()
                        .map(|i| back[&dual.roots[i]])
                        .collect(),
                )
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Component group order of the centre of the dual-side subgroup attached
    /// to a subsystem: the torsion of the coroot-lattice quotient.
    pub fn pi0_dual_center(&self, sub: &Subsystem) -> BigInt {
        let rows: Vec<Vec<i64>> = sub.indices().map(|i| self.coroots[i].clone()).collect();
        if rows.is_empty() {
            return BigInt::one();
        }
        IntMatrix::from_rows(&rows).torsion_order()
    }

    /// Isomorphism types of the full-rank subsystems obtained by dropping one
    /// node of the extended simple set of each component.  Distinct drops
    /// producing the same labelled type are identified.
    pub fn isolated_one_step_classes(&self) -> Result<Vec<CartanType>> {
        // Per component: its extended nodes (simples plus lowest root).
        let mut comp_nodes: Vec<Vec<usize>> = vec![Vec::new(); self.num_components];
        for &s in &self.simple {
            comp_nodes[self.component[s]].push(s);
        }
        for (comp, nodes) in comp_nodes.iter_mut().enumerate() {
            nodes.push(self.neg[self.highest_root(comp)]);
        }
        let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
        for nodes in &comp_nodes {
            let mut next = Vec::new();
            for drop in 0..nodes.len() {
                let kept: Vec<usize> = nodes
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, &n)| n)
                    .collect();
                for prefix in &choices {
                    let mut c = prefix.clone();
                    c.extend(&kept);
                    next.push(c);
                }
            }
            choices = next;
        }
        let mut out = BTreeSet::new();
        for gens in &choices {
            let sub = self.subsystem_generated(gens);
            out.insert(self.sub_cartan_type(&sub)?);
        }
        Ok(out.into_iter().collect())
    }
}

/// Invert a square rational matrix by Gauss-Jordan elimination.
pub(crate) fn invert_rational(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut().chain(inv[col].iter_mut()) {
            *x /= p.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..n {
                    let t = &m[col][c] * &f;
                    m[r][c] -= t;
                    let t = &inv[col][c] * &f;
                    inv[r][c] -= t;
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{ComponentType as CT, Family::*, LengthClass::*};

    fn adjoint(spec: &str) -> RootDatum {
        RootDatum::adjoint(&cartan::parse_products(spec).unwrap()).unwrap()
    }

    #[test]
    fn gl_basics() {
        let gl3 = RootDatum::gl(3).unwrap();
        assert_eq!(gl3.roots.len(), 6);
        assert_eq!(gl3.num_positive(), 3);
        assert_eq!(gl3.center_dim(), 1);
        assert_eq!(gl3.dimension(), 9);
        assert_eq!(gl3.num_components, 1);
        assert!(gl3.len2.iter().all(|&l| l == 1));
        let gl1 = RootDatum::gl(1).unwrap();
        assert_eq!(gl1.roots.len(), 0);
        assert_eq!(gl1.center_dim(), 1);
    }

    #[test]
    fn b2_basics() {
        let b2 = adjoint("B2");
        assert_eq!(b2.roots.len(), 8);
        assert_eq!(b2.center_dim(), 0);
        assert_eq!(b2.dimension(), 10);
        assert_eq!(b2.len2.iter().filter(|&&l| l == 1).count(), 4);
        assert_eq!(b2.len2.iter().filter(|&&l| l == 2).count(), 4);
        // Highest root is long.
        let theta = b2.highest_root(0);
        assert_eq!(b2.len2[theta], 2);
        assert_eq!(b2.extended_simple_set().len(), 3);
        // Full subsystem recognized with mixed lengths.
        let t = b2.sub_cartan_type(&b2.full_subsystem()).unwrap();
        assert_eq!(t.components(), &[CT::new(B, 2, Mixed)]);
    }

    #[test]
    fn g2_basics() {
        let g2 = adjoint("G2");
        assert_eq!(g2.roots.len(), 12);
        assert_eq!(g2.len2.iter().filter(|&&l| l == 1).count(), 6);
        assert_eq!(g2.len2.iter().filter(|&&l| l == 3).count(), 6);
        assert_eq!(g2.dimension(), 14);
        let theta = g2.highest_root(0);
        assert_eq!(g2.len2[theta], 3);
        assert_eq!(g2.height(theta), 5);
    }

    #[test]
    fn products_and_dual() {
        let prod = adjoint("B2xA1");
        assert_eq!(prod.roots.len(), 10);
        assert_eq!(prod.num_components, 2);
        assert_eq!(prod.extended_simple_set().len(), 5);

        for datum in [adjoint("B2"), adjoint("G2"), RootDatum::gl(3).unwrap()] {
            let dual = datum.dual();
            assert_eq!(dual.roots, datum.coroots, "{}", datum.label);
            assert_eq!(dual.coroots, datum.roots);
            assert_eq!(dual.positive, datum.positive);
        }
        // Duality swaps long and short.
        let b2 = adjoint("B2");
        let dual = b2.dual();
        for i in 0..b2.roots.len() {
            assert_ne!(b2.len2[i] == 1, dual.len2[i] == 1);
        }
    }

    #[test]
    fn raw_datum_gates() {
        // Adjoint SO5 in the weight basis where short roots are unit vectors.
        let so5 = RootDatum::from_json_str(
            r#"{
                "label": "so5",
                "rank": 2,
                "simple_roots": [[1, -1], [0, 1]],
                "simple_coroots": [[1, -1], [0, 2]],
                "center_dim": 0
            }"#,
        )
        .unwrap();
        assert_eq!(so5.roots.len(), 8);
        assert_eq!(
            so5.sub_cartan_type(&so5.full_subsystem()).unwrap().label(),
            "B2"
        );

        // Sp4: the root lattice has index two in X, so the centre of the
        // corresponding group is not connected.
        let sp4 = RootDatum::from_json_str(
            r#"{
                "label": "sp4",
                "rank": 2,
                "simple_roots": [[1, -1], [0, 2]],
                "simple_coroots": [[1, -1], [0, 1]]
            }"#,
        );
        assert!(matches!(sp4, Err(Error::DisconnectedCentre(_))), "{sp4:?}");
    }

    #[test]
    fn levi_family_counts() {
        // Type A Levis are set partitions: counts follow the Bell numbers.
        assert_eq!(RootDatum::gl(3).unwrap().enumerate_levis().len(), 5);
        assert_eq!(RootDatum::gl(4).unwrap().enumerate_levis().len(), 15);
        assert_eq!(adjoint("B2").enumerate_levis().len(), 6);
        assert_eq!(adjoint("G2").enumerate_levis().len(), 8);
    }

    #[test]
    fn centralizer_family_counts() {
        let b2 = adjoint("B2");
        let pl = b2.enumerate_pseudo_levis();
        assert_eq!(pl.len(), 7);
        // The extra non-Levi member is the long A1 x A1.
        let extra: Vec<_> = pl.iter().filter(|s| !b2.is_levi(s)).collect();
        assert_eq!(extra.len(), 1);
        assert_eq!(b2.sub_cartan_type(extra[0]).unwrap().label(), "A1xA1");
        assert!(extra[0].indices().all(|i| b2.len2[i] == 2));

        let g2 = adjoint("G2");
        let pl = g2.enumerate_pseudo_levis();
        assert_eq!(pl.len(), 12);
        let labels: BTreeSet<String> = pl
            .iter()
            .map(|s| g2.sub_cartan_type(s).unwrap().label())
            .collect();
        assert!(labels.contains("A2"), "{labels:?}");
        assert!(labels.contains("A1xA1'"), "{labels:?}");

        // In type A there is nothing beyond the Levis.
        let gl3 = RootDatum::gl(3).unwrap();
        assert_eq!(gl3.enumerate_pseudo_levis(), gl3.enumerate_levis());
    }

    #[test]
    fn endoscopy_families() {
        let b2 = adjoint("B2");
        let endo = b2.enumerate_endoscopies();
        assert_eq!(endo.len(), 7);
        // The B2 endoscopies include the short A1 x A1, not the long one.
        let non_levi: Vec<_> = endo.iter().filter(|s| !b2.is_levi(s)).collect();
        assert_eq!(non_levi.len(), 1);
        assert!(non_levi[0].indices().all(|i| b2.len2[i] == 1));
        assert_eq!(b2.pi0_dual_center(non_levi[0]), BigInt::from(4));
        assert_eq!(b2.pi0_dual_center(&b2.full_subsystem()), BigInt::from(2));

        let g2 = adjoint("G2");
        let endo = g2.enumerate_endoscopies();
        assert_eq!(endo.len(), 12);
        // Short A2 appears on the endoscopy side with component group 3.
        let short_a2: Vec<_> = endo
            .iter()
            .filter(|s| {
                s.len() == 6
                    && g2.sub_cartan_type(s).unwrap().components()
                        == [CT::new(A, 2, Short)]
            })
            .collect();
        assert_eq!(short_a2.len(), 1);
        assert_eq!(g2.pi0_dual_center(short_a2[0]), BigInt::from(3));
        assert_eq!(g2.pi0_dual_center(&g2.full_subsystem()), BigInt::from(1));

        let gl3 = RootDatum::gl(3).unwrap();
        assert_eq!(gl3.enumerate_endoscopies(), gl3.enumerate_levis());
    }

    #[test]
    fn iterated_construction_is_a_superset() {
        for spec in ["A3", "B3", "C2", "D4", "G2"] {
            let d = adjoint(spec);
            let one: BTreeSet<_> = d.enumerate_pseudo_levis().into_iter().collect();
            let iter: BTreeSet<_> =
                d.enumerate_pseudo_levis_iterated().into_iter().collect();
            assert_eq!(one, iter, "{spec}");
        }
        // C3 is the smallest case where iteration overshoots: three mutually
        // orthogonal long roots do not centralize any semisimple element.
        let c3 = adjoint("C3");
        let one: BTreeSet<_> = c3.enumerate_pseudo_levis().into_iter().collect();
        let iter: BTreeSet<_> = c3.enumerate_pseudo_levis_iterated().into_iter().collect();
        assert!(one.is_subset(&iter));
        let extra: Vec<_> = iter.difference(&one).collect();
        assert_eq!(extra.len(), 1);
        let t = c3.sub_cartan_type(extra[0]).unwrap();
        assert_eq!(t.components(), &[CT::new(A, 1, Long); 3]);
    }

    #[test]
    fn one_step_isolated_classes_match_the_known_tables() {
        let case = |spec: &str, expect: Vec<Vec<CT>>| {
            let d = adjoint(spec);
            let got = d.isolated_one_step_classes().unwrap();
            let want: BTreeSet<CartanType> =
                expect.into_iter().map(CartanType::new).collect();
            let got: BTreeSet<CartanType> = got.into_iter().collect();
            assert_eq!(got, want, "{spec}");
        };
        let ct = CT::new;

        case("A2", vec![vec![ct(A, 2, Only)]]);
        case("A3", vec![vec![ct(A, 3, Only)]]);
        case(
            "B3",
            vec![
                vec![ct(B, 3, Mixed)],
                vec![ct(A, 3, Long)],
                vec![ct(A, 1, Long), ct(A, 1, Long), ct(A, 1, Short)],
            ],
        );
        case(
            "B4",
            vec![
                vec![ct(B, 4, Mixed)],
                vec![ct(D, 4, Long)],
                vec![ct(A, 3, Long), ct(A, 1, Short)],
                vec![ct(A, 1, Long), ct(A, 1, Long), ct(B, 2, Mixed)],
            ],
        );
        case(
            "C2",
            vec![
                vec![ct(B, 2, Mixed)],
                vec![ct(A, 1, Long), ct(A, 1, Long)],
            ],
        );
        case(
            "C3",
            vec![
                vec![ct(C, 3, Mixed)],
                vec![ct(A, 1, Long), ct(B, 2, Mixed)],
            ],
        );
        case(
            "C4",
            vec![
                vec![ct(C, 4, Mixed)],
                vec![ct(A, 1, Long), ct(C, 3, Mixed)],
                vec![ct(B, 2, Mixed), ct(B, 2, Mixed)],
            ],
        );
        case(
            "D4",
            vec![
                vec![ct(D, 4, Only)],
                vec![ct(A, 1, Only); 4],
            ],
        );
        case(
            "D5",
            vec![
                vec![ct(D, 5, Only)],
                vec![ct(A, 3, Only), ct(A, 1, Only), ct(A, 1, Only)],
            ],
        );
        case(
            "D6",
            vec![
                vec![ct(D, 6, Only)],
                vec![ct(D, 4, Only), ct(A, 1, Only), ct(A, 1, Only)],
                vec![ct(A, 3, Only), ct(A, 3, Only)],
            ],
        );
        case(
            "G2",
            vec![
                vec![ct(G, 2, Mixed)],
                vec![ct(A, 2, Long)],
                vec![ct(A, 1, Long), ct(A, 1, Short)],
            ],
        );
        case(
            "F4",
            vec![
                vec![ct(F, 4, Mixed)],
                vec![ct(B, 4, Mixed)],
                vec![ct(C, 3, Mixed), ct(A, 1, Long)],
                vec![ct(A, 3, Long), ct(A, 1, Short)],
                vec![ct(A, 2, Long), ct(A, 2, Short)],
            ],
        );
        case(
            "E6",
            vec![
                vec![ct(E, 6, Only)],
                vec![ct(A, 5, Only), ct(A, 1, Only)],
                vec![ct(A, 2, Only); 3],
            ],
        );
        case(
            "E7",
            vec![
                vec![ct(E, 7, Only)],
                vec![ct(A, 7, Only)],
                vec![ct(D, 6, Only), ct(A, 1, Only)],
                vec![ct(A, 5, Only), ct(A, 2, Only)],
                vec![ct(A, 3, Only), ct(A, 3, Only), ct(A, 1, Only)],
            ],
        );
        case(
            "E8",
            vec![
                vec![ct(E, 8, Only)],
                vec![ct(D, 8, Only)],
                vec![ct(A, 8, Only)],
                vec![ct(E, 7, Only), ct(A, 1, Only)],
                vec![ct(A, 7, Only), ct(A, 1, Only)],
                vec![ct(E, 6, Only), ct(A, 2, Only)],
                vec![ct(D, 5, Only), ct(A, 3, Only)],
                vec![ct(A, 5, Only), ct(A, 2, Only), ct(A, 1, Only)],
                vec![ct(A, 4, Only), ct(A, 4, Only)],
            ],
        );
    }

    #[test]
    fn levi_and_isolation_predicates() {
        let b2 = adjoint("B2");
        for s in b2.enumerate_levis() {
            assert!(b2.is_levi(&s));
        }
        // Isolated subsystems among the B2 endoscopies: the full system and
        // the short A1 x A1.
        let isolated: Vec<_> = b2
            .enumerate_endoscopies()
            .into_iter()
            .filter(|s| b2.is_isolated(s))
            .collect();
        assert_eq!(isolated.len(), 2);

        let g2 = adjoint("G2");
        let isolated: Vec<_> = g2
            .enumerate_endoscopies()
            .into_iter()
            .filter(|s| g2.is_isolated(s))
            .collect();
        // G2, short A2, and the three conjugate A1 x A1'.
        assert_eq!(isolated.len(), 5);
    }

    #[test]
    fn orbits_and_representatives() {
        let g2 = adjoint("G2");
        // The mixed A1 x A1' class has three members.
        let endo = g2.enumerate_endoscopies();
        let mixed: Vec<_> = endo
            .iter()
            .filter(|s| s.len() == 4 && g2.sub_cartan_type(s).unwrap().label() == "A1xA1'")
            .collect();
        assert_eq!(mixed.len(), 3);
        let orbit = g2.orbit_of(mixed[0]);
        assert_eq!(orbit.len(), 3);
        let rep = g2.orbit_rep(mixed[1]);
        assert_eq!(rep, g2.orbit_rep(mixed[2]));
    }
}
