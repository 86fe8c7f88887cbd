//! Integer matrices and Smith invariant factors.
//!
//! Used for lattice quotients: the torsion of `Z^n / rowspan(M)` is read off
//! the nonzero, non-unit invariant factors of `M`.  Matrices here are tiny
//! (rank at most eight), so plain elementary row/column reduction over big
//! integers is all that is needed.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
                .collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Smith invariant factors `d_1 | d_2 | ...`, one per row/column of the
    /// diagonal form, zeros included, sorted so that divisibility holds.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let mut m = self.clone();
        let n = m.rows.min(m.cols);
        let mut invariants = Vec::with_capacity(n);
        let mut top = 0usize;
        while top < n {
            // Find a pivot: smallest nonzero entry in the remaining block.
            let mut pivot: Option<(usize, usize)> = None;
            for i in top..m.rows {
                for j in top..m.cols {
                    if !m.get(i, j).is_zero()
                        && pivot
                            .map(|(pi, pj)| m.get(i, j).abs() < m.get(pi, pj).abs())
                            .unwrap_or(true)
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break; // remaining block is zero
            };
            m.swap_rows(top, pi);
            m.swap_cols(top, pj);
            // Clear the pivot row and column; restart if a reduction leaves a
            // smaller nonzero entry (standard Smith loop).
            loop {
                let mut done = true;
                for i in (top + 1)..m.rows {
                    if !m.get(i, top).is_zero() {
                        let f = m.get(i, top) / m.get(top, top);
                        m.row_sub(i, top, &f);
                        if !m.get(i, top).is_zero() {
                            m.swap_rows(top, i);
                            done = false;
                        }
                    }
                }
                for j in (top + 1)..m.cols {
                    if !m.get(top, j).is_zero() {
                        let f = m.get(top, j) / m.get(top, top);
                        m.col_sub(j, top, &f);
                        if !m.get(top, j).is_zero() {
                            m.swap_cols(top, j);
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            // Ensure the pivot divides every remaining entry.
            let mut clean = true;
            'outer: for i in (top + 1)..m.rows {
                for j in (top + 1)..m.cols {
                    if !(m.get(i, j) % m.get(top, top)).is_zero() {
                        let one = BigInt::from(1);
                        m.row_add(top, i, &one);
                        clean = false;
                        break 'outer;
                    }
                }
            }
            if clean {
                invariants.push(m.get(top, top).abs());
                top += 1;
            }
        }
        while invariants.len() < n {
            invariants.push(BigInt::zero());
        }
        invariants
    }

    /// Product of the nonzero invariant factors: the order of the torsion
    /// subgroup of `Z^cols / rowspan`.
    pub fn torsion_order(&self) -> BigInt {
        let mut t = BigInt::from(1);
        for d in self.smith_invariants() {
            if !d.is_zero() {
                t *= d;
            }
        }
        t
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.smith_invariants()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a -= f * row b
    fn row_sub(&mut self, a: usize, b: usize, f: &BigInt) {
        for j in 0..self.cols {
            let t = self.get(b, j) * f;
            self.data[a * self.cols + j] -= t;
        }
    }

    /// row a += f * row b
    fn row_add(&mut self, a: usize, b: usize, f: &BigInt) {
        for j in 0..self.cols {
            let t = self.get(b, j) * f;
            self.data[a * self.cols + j] += t;
        }
    }

    /// col a -= f * col b
    fn col_sub(&mut self, a: usize, b: usize, f: &BigInt) {
        for i in 0..self.rows {
            let t = self.get(i, b) * f;
            self.data[i * self.cols + a] -= t;
        }
    }
}

/// Integer row-echelon basis of a lattice in `Z^n`, kept triangular with
/// respect to pivot columns; supports exact membership tests.
#[derive(Clone, Debug, Default)]
pub struct ZLattice {
    dim: usize,
    /// Rows sorted by pivot column; each row's leading entry is positive.
    rows: Vec<Vec<BigInt>>,
}

impl ZLattice {
    pub fn new(dim: usize) -> Self {
        ZLattice { dim, rows: Vec::new() }
    }

    pub fn from_vectors(dim: usize, vecs: impl IntoIterator<Item = Vec<i64>>) -> Self {
        let mut lat = ZLattice::new(dim);
        for v in vecs {
            lat.insert(v.into_iter().map(BigInt::from).collect());
        }
        lat
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn leading(v: &[BigInt]) -> Option<usize> {
        v.iter().position(|x| !x.is_zero())
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(v.len(), self.dim);
        let mut i = 0;
        while let Some(j) = Self::leading(&v) {
            // Find the row whose pivot column is >= j.
            while i < self.rows.len() && Self::leading(&self.rows[i]).unwrap() < j {
                i += 1;
            }
            match self.rows.get_mut(i) {
                Some(row) if Self::leading(row) == Some(j) => {
                    // Euclidean loop on column j.
                    while !v[j].is_zero() {
                        let q = &v[j] / &row[j];
                        for k in 0..v.len() {
                            let t = &row[k] * &q;
                            v[k] -= t;
                        }
                        if !v[j].is_zero() {
                            std::mem::swap(row, &mut v);
                        }
                    }
                    if row[j].is_negative() {
                        for x in row.iter_mut() {
                            *x = -std::mem::take(x);
                        }
                    }
                }
                _ => {
                    if v[j].is_negative() {
                        for x in v.iter_mut() {
                            *x = -std::mem::take(x);
                        }
                    }
                    self.rows.insert(i, v);
                    return;
                }
            }
        }
    }

    /// Is `v` in the integer span of the inserted vectors?
    pub fn contains_i64(&self, v: &[i64]) -> bool {
        let mut v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for row in &self.rows {
            let j = Self::leading(row).unwrap();
            if !v[j].is_zero() {
                let (q, r) = num_integer::Integer::div_rem(&v[j], &row[j]);
                if !r.is_zero() {
                    return false;
                }
                for k in 0..v.len() {
                    let t = &row[k] * &q;
                    v[k] -= t;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}
