//! Partition combinatorics for general linear groups.
//!
//! Irreducible characters of the symmetric group, unipotent characters of
//! `GL_n(F_q)`, and nilpotent/unipotent conjugacy classes of `gl_n` are all
//! indexed by partitions of `n`.  This module supplies, in exact arithmetic:
//!
//! * character dimensions by the hook length formula,
//! * generic degrees `q^{n(lambda)} [n]_q! / prod_cells [hook]_q`,
//! * Green polynomials (the number of fixed complete flags of a unipotent
//!   element, as a polynomial in `q`), obtained from Kostka polynomials by
//!   `Q(lambda) = sum_mu f^mu q^{n(lambda)} K_{mu lambda}(1/q)`,
//! * centralizer orders and orbit sizes of nilpotent classes.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::kostka::kostka_foulkes;
use crate::poly::QPolynomial;

/// All partitions of `n`, parts weakly decreasing, in reverse lexicographic
/// order starting from `(n)` and ending at `(1^n)`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Conjugate (transposed) partition.
pub fn conjugate(lambda: &[usize]) -> Vec<usize> {
    let Some(&first) = lambda.first() else {
        return Vec::new();
    };
    (1..=first)
        .map(|j| lambda.iter().filter(|&&p| p >= j).count())
        .collect()
}

/// The statistic `n(lambda) = sum (i-1) lambda_i`.
pub fn n_statistic(lambda: &[usize]) -> usize {
    lambda.iter().enumerate().map(|(i, &p)| i * p).sum()
}

/// Compact label for a partition: parts concatenated, comma-separated once a
/// part needs two digits.
pub fn partition_label(lambda: &[usize]) -> String {
    if lambda.is_empty() {
        return "0".to_string();
    }
    let sep = if lambda[0] >= 10 { "," } else { "" };
    lambda
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Hook lengths of all cells, row by row.
fn hook_lengths(lambda: &[usize]) -> Vec<usize> {
    let conj = conjugate(lambda);
    let mut out = Vec::new();
    for (i, &len) in lambda.iter().enumerate() {
        for (j, &col) in conj.iter().take(len).enumerate() {
            out.push(len - j + col - i - 1);
        }
    }
    out
}

/// Dimension of the symmetric group character indexed by `lambda` (number of
/// standard tableaux), by the hook length formula.
pub fn char_dimension(lambda: &[usize]) -> u64 {
    let n: usize = lambda.iter().sum();
    let mut num: u128 = 1;
    for k in 2..=n as u128 {
        num *= k;
    }
    for h in hook_lengths(lambda) {
        debug_assert_eq!(num % h as u128, 0);
        num /= h as u128;
    }
    u64::try_from(num).expect("character dimension fits in u64")
}

/// Generic degree of the unipotent character of `GL_n(F_q)` indexed by
/// `lambda`: the `q`-analogue of the hook length formula.
pub fn generic_degree(lambda: &[usize]) -> Result<QPolynomial> {
    let n: usize = lambda.iter().sum();
    let mut num = QPolynomial::q_pow(n_statistic(lambda));
    for k in 1..=n {
        num = &num * &QPolynomial::q_integer(k);
    }
    let mut den = QPolynomial::one();
    for h in hook_lengths(lambda) {
        den = &den * &QPolynomial::q_integer(h);
    }
    num.exact_div(&den)
}

/// Green polynomial of the unipotent class `lambda` in `GL_n`: the number of
/// complete flags fixed by a unipotent element of Jordan type `lambda`.
pub fn green_polynomial(lambda: &[usize]) -> QPolynomial {
    let n: usize = lambda.iter().sum();
    let nstat = n_statistic(lambda);
    let mut total = QPolynomial::zero();
    for mu in partitions(n) {
        let k = kostka_foulkes(&mu, lambda);
        if k.is_zero() {
            continue;
        }
        let deg = k.degree().unwrap();
        assert!(deg <= nstat, "Kostka degree exceeds n(lambda)");
        // q^{n(lambda)} K(1/q): reverse coefficients into degree n(lambda).
        let mut rev = QPolynomial::zero();
        for (i, c) in k.coeffs().iter().enumerate() {
            rev = &rev + &QPolynomial::monomial(c.clone(), nstat - i);
        }
        let f = QPolynomial::constant(BigRational::from(BigInt::from(char_dimension(&mu))));
        total = &total + &(&f * &rev);
    }
    total
}

/// Order of `GL_n(F_q)` as a polynomial in `q`:
/// `q^{n(n-1)/2} prod_{i=1..n} (q^i - 1)`.
pub fn gl_order(n: usize) -> QPolynomial {
    let mut p = QPolynomial::q_pow(n * (n - 1) / 2);
    for i in 1..=n {
        p = &p * &QPolynomial::q_pow_minus_one(i);
    }
    p
}

/// Order of the centralizer in `GL_n(F_q)` of a nilpotent (or unipotent)
/// element of Jordan type `lambda`:
/// `q^{sum conj_i^2} prod_parts prod_{j=1..mult} (1 - q^{-j})`, cleared of
/// denominators.
pub fn centralizer_order(lambda: &[usize]) -> QPolynomial {
    let conj = conjugate(lambda);
    let sq: usize = conj.iter().map(|&c| c * c).sum();
    let mut mult_sum = 0usize;
    let mut p = QPolynomial::one();
    let mut parts = lambda.to_vec();
    parts.dedup();
    for part in parts {
        let m = lambda.iter().filter(|&&x| x == part).count();
        mult_sum += m * (m + 1) / 2;
        for j in 1..=m {
            p = &p * &QPolynomial::q_pow_minus_one(j);
        }
    }
    assert!(sq >= mult_sum);
    &QPolynomial::q_pow(sq - mult_sum) * &p
}

/// Size of the nilpotent orbit of Jordan type `lambda` in `gl_n(F_q)`.
pub fn orbit_size(lambda: &[usize]) -> Result<QPolynomial> {
    let n: usize = lambda.iter().sum();
    gl_order(n).exact_div(&centralizer_order(lambda))
}

/// Dimension of the nilpotent orbit of Jordan type `lambda` in `gl_n`.
pub fn orbit_dimension(lambda: &[usize]) -> usize {
    let n: usize = lambda.iter().sum();
    let conj = conjugate(lambda);
    n * n - conj.iter().map(|&c| c * c).sum::<usize>()
}

/// Unipotent matrix in Jordan form with block sizes `lambda`: ones on the
/// diagonal and on the superdiagonal inside each block.
pub fn jordan_unipotent(lambda: &[usize]) -> Vec<Vec<u64>> {
    let n: usize = lambda.iter().sum();
    let mut m = vec![vec![0u64; n]; n];
    let mut offset = 0;
    for &block in lambda {
        for i in 0..block {
            m[offset + i][offset + i] = 1;
            if i + 1 < block {
                m[offset + i][offset + i + 1] = 1;
            }
        }
        offset += block;
    }
    m
}

/// Rows of a reduced-echelon basis over `F_p`.
type Basis = Vec<Vec<u64>>;

/// Inserts a vector into a reduced-echelon basis, or `None` if dependent.
type InsertFn<'a> = &'a dyn Fn(&[Vec<u64>], &[u64]) -> Option<Basis>;

/// Brute-force count of complete flags of `F_p^n` stable under the square
/// matrix `u` (entries reduced mod the prime `p`).
///
/// Enumerates every chain of nested stable subspaces directly, without any
/// character theory, so it serves as an independent oracle for
/// [`green_polynomial`].  Exponential in `n` and `p`; intended for tiny
/// cases only.
pub fn stable_flag_count(u: &[Vec<u64>], p: u64) -> u64 {
    let n = u.len();
    assert!(u.iter().all(|row| row.len() == n), "matrix must be square");
    let inv = |a: u64| -> u64 {
        // Fermat inverse; p is a small prime.
        let mut acc = 1u64;
        for _ in 0..p - 2 {
            acc = acc * a % p;
        }
        acc
    };
    // Reduce `v` modulo the span of `rref` (rows in reduced echelon form);
    // returns the residue.
    let reduce = |rref: &[Vec<u64>], mut v: Vec<u64>| -> Vec<u64> {
        for row in rref {
            let pivot = row.iter().position(|&c| c != 0).unwrap();
            let factor = v[pivot] % p;
            if factor != 0 {
                for j in 0..n {
                    v[j] = (v[j] + (p - factor) * row[j]) % p;
                }
            }
        }
        v
    };
    let insert = |rref: &[Vec<u64>], v: &[u64]| -> Option<Basis> {
        let residue = reduce(rref, v.to_vec());
        let pivot = residue.iter().position(|&c| c != 0)?;
        let scale = inv(residue[pivot]);
        let normalized: Vec<u64> = residue.iter().map(|&c| c * scale % p).collect();
        let mut rows = rref.to_vec();
        rows.push(normalized);
        rows.sort_by_key(|row| row.iter().position(|&c| c != 0).unwrap());
        // Clear entries above each pivot to make the form canonical.
        for i in 0..rows.len() {
            let pivot = rows[i].iter().position(|&c| c != 0).unwrap();
            for k in 0..rows.len() {
                if k == i {
                    continue;
                }
                let factor = rows[k][pivot];
                if factor != 0 {
                    // Reads row i while writing row k of the same vec.
                    #[allow(clippy::needless_range_loop)]
                    for j in 0..n {
                        rows[k][j] = (rows[k][j] + (p - factor) * rows[i][j]) % p;
                    }
                }
            }
        }
        Some(rows)
    };
    let apply = |v: &[u64]| -> Vec<u64> {
        (0..n)
            .map(|i| (0..n).map(|j| u[i][j] % p * (v[j] % p)).sum::<u64>() % p)
            .collect()
    };
    let stable = |rref: &[Vec<u64>]| -> bool {
        rref.iter()
            .all(|row| reduce(rref, apply(row)).iter().all(|&c| c == 0))
    };
    // All vectors of F_p^n, for extension candidates.
    let mut vectors = vec![vec![0u64; n]];
    for _ in 0..n {
        vectors = vectors
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.remove(0);
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    fn recurse(
        current: &[Vec<u64>],
        vectors: &[Vec<u64>],
        insert: InsertFn,
        stable: &dyn Fn(&[Vec<u64>]) -> bool,
        n: usize,
    ) -> u64 {
        if current.len() == n {
            return 1;
        }
        let mut extensions = std::collections::BTreeSet::new();
        for v in vectors {
            if let Some(next) = insert(current, v) {
                extensions.insert(next);
            }
        }
        extensions
            .into_iter()
            .filter(|next| stable(next))
            .map(|next| recurse(&next, vectors, insert, stable, n))
            .sum()
    }
    recurse(&[], &vectors, &insert, &stable, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn partition_counts() {
        let expected = [1usize, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(partitions(n).len(), count, "p({n})");
        }
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn conjugation_is_an_involution() {
        for n in 0..=7 {
            for lambda in partitions(n) {
                assert_eq!(conjugate(&conjugate(&lambda)), lambda);
            }
        }
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
        assert_eq!(n_statistic(&[3, 1]), 1);
        assert_eq!(n_statistic(&[1, 1, 1]), 3);
    }

    #[test]
    fn hook_dimensions() {
        assert_eq!(char_dimension(&[2, 2]), 2);
        assert_eq!(char_dimension(&[3, 2]), 5);
        assert_eq!(char_dimension(&[2, 1]), 2);
        for n in 1..=6u64 {
            let total: u64 = partitions(n as usize)
                .iter()
                .map(|l| char_dimension(l).pow(2))
                .sum();
            let factorial: u64 = (1..=n).product();
            assert_eq!(total, factorial, "sum of squares for n = {n}");
        }
    }

    #[test]
    fn generic_degrees_match_closed_forms() {
        assert_eq!(generic_degree(&[4]).unwrap(), QPolynomial::one());
        for n in 1..=5 {
            let ones = vec![1usize; n];
            assert_eq!(
                generic_degree(&ones).unwrap(),
                QPolynomial::q_pow(n * (n - 1) / 2),
                "column partition, n = {n}"
            );
        }
        // (2,1): q (q + 1).
        assert_eq!(
            generic_degree(&[2, 1]).unwrap(),
            QPolynomial::from_coeffs(&[0, 1, 1])
        );
    }

    #[test]
    fn flag_identity_for_generic_degrees() {
        // sum_lambda f^lambda D_lambda(q) = [n]_q! (the Poincare polynomial
        // of the symmetric group).
        for n in 2..=5 {
            let mut sum = QPolynomial::zero();
            for lambda in partitions(n) {
                let f = QPolynomial::constant(num_rational::BigRational::from(
                    num_bigint::BigInt::from(char_dimension(&lambda)),
                ));
                sum = &sum + &(&f * &generic_degree(&lambda).unwrap());
            }
            let mut qfact = QPolynomial::one();
            for k in 1..=n {
                qfact = &qfact * &QPolynomial::q_integer(k);
            }
            assert_eq!(sum, qfact, "n = {n}");
        }
    }

    #[test]
    fn green_polynomials_small() {
        assert_eq!(green_polynomial(&[2]), QPolynomial::one());
        assert_eq!(green_polynomial(&[1, 1]), QPolynomial::from_coeffs(&[1, 1]));
        assert_eq!(green_polynomial(&[3]), QPolynomial::one());
        assert_eq!(green_polynomial(&[2, 1]), QPolynomial::from_coeffs(&[1, 2]));
        assert_eq!(
            green_polynomial(&[1, 1, 1]),
            QPolynomial::from_coeffs(&[1, 2, 2, 1])
        );
        // The zero orbit always counts every flag.
        let full = green_polynomial(&[1, 1, 1, 1]);
        let mut qfact = QPolynomial::one();
        for k in 1..=4 {
            qfact = &qfact * &QPolynomial::q_integer(k);
        }
        assert_eq!(full, qfact);
    }

    #[test]
    fn orbit_sizes_partition_the_nilpotent_cone() {
        for n in 1..=5 {
            let mut sum = QPolynomial::zero();
            for lambda in partitions(n) {
                sum = &sum + &orbit_size(&lambda).unwrap();
            }
            assert_eq!(sum, QPolynomial::q_pow(n * (n - 1)), "n = {n}");
        }
    }

    #[test]
    fn orbit_size_degree_is_orbit_dimension() {
        for n in 1..=6 {
            for lambda in partitions(n) {
                let size = orbit_size(&lambda).unwrap();
                assert_eq!(size.degree(), Some(orbit_dimension(&lambda)), "{lambda:?}");
                assert!(size.has_integer_coeffs(), "{lambda:?}");
            }
        }
    }

    #[test]
    fn springer_identity() {
        // sum_lambda |O_lambda| Q_lambda = q^{#positive roots} P_W(q): both
        // sides count pairs (nilpotent element, fixed flag).
        for n in 2..=4 {
            let mut sum = QPolynomial::zero();
            for lambda in partitions(n) {
                let term = &orbit_size(&lambda).unwrap() * &green_polynomial(&lambda);
                sum = &sum + &term;
            }
            let mut qfact = QPolynomial::one();
            for k in 1..=n {
                qfact = &qfact * &QPolynomial::q_integer(k);
            }
            let expected = &QPolynomial::q_pow(n * (n - 1) / 2) * &qfact;
            assert_eq!(sum, expected, "n = {n}");
        }
    }

    #[test]
    fn green_polynomials_count_fixed_flags() {
        // Brute-force flag enumeration over small fields agrees with the
        // Kostka-derived Green polynomials for every Jordan type.
        let eval = |poly: &QPolynomial, q: u64| -> u64 {
            let v = poly.eval(&num_rational::BigRational::from(num_bigint::BigInt::from(q)));
            assert!(v.is_integer());
            let (_, digits) = v.to_integer().to_u64_digits();
            if digits.is_empty() { 0 } else { digits[0] }
        };
        for n in 1..=3usize {
            for lambda in partitions(n) {
                let u = jordan_unipotent(&lambda);
                for p in [2u64, 3] {
                    assert_eq!(
                        stable_flag_count(&u, p),
                        eval(&green_polynomial(&lambda), p),
                        "lambda = {lambda:?}, p = {p}"
                    );
                }
            }
        }
        // One non-unipotent spot check: a diagonal matrix with distinct
        // eigenvalues fixes exactly the coordinate flags.
        let diag = vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 4]];
        assert_eq!(stable_flag_count(&diag, 5), 6);
        let one = QPolynomial::one();
        assert!(one.leading().is_one());
    }

    #[test]
    fn flag_counts_without_stability_match_flag_variety_order() {
        // The identity stabilizes every flag, so the oracle counts the full
        // flag variety: prod_k (q^k - 1)/(q - 1).
        for (n, p, expected) in [(2usize, 2u64, 3u64), (2, 3, 4), (3, 2, 21), (3, 3, 52)] {
            let id = jordan_unipotent(&vec![1; n]);
            assert_eq!(stable_flag_count(&id, p), expected, "n = {n}, p = {p}");
        }
    }
}
