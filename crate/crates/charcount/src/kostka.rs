//! Kostka polynomials in the charge statistic.
//!
//! `kostka_foulkes(mu, lambda)` sums `q^charge` over semistandard tableaux of
//! shape `mu` and content `lambda`.  The charge of a reading word (rows
//! concatenated bottom to top, each left to right) is computed by repeatedly
//! extracting a standard subword: take the rightmost 1, then for each
//! successive value the nearest occurrence to the left of the previous pick,
//! wrapping around to the rightmost occurrence when none is left of it.  The
//! index of a pick increases by one exactly when it sits to the right of the
//! previous pick; the charge is the total of all indices over all
//! extractions.

use crate::poly::QPolynomial;

/// Charge of a word whose content is a partition (value `v+1` never occurs
/// more often than `v`).
pub fn charge(word: &[usize]) -> usize {
    let mut w: Vec<usize> = word.to_vec();
    let mut total = 0;
    while !w.is_empty() {
        let mut chosen: Vec<usize> = Vec::new();
        let pos = w
            .iter()
            .rposition(|&x| x == 1)
            .expect("nonempty word with partition content contains a 1");
        chosen.push(pos);
        let mut cur = pos;
        let mut ind = 0;
        let mut v = 1;
        while w.contains(&(v + 1)) {
            match w[..cur].iter().rposition(|&x| x == v + 1) {
                Some(i) => {
                    cur = i;
                }
                None => {
                    // Wrap around: rightmost occurrence, to the right of cur.
                    let i = w.iter().rposition(|&x| x == v + 1).unwrap();
                    ind += 1;
                    cur = i;
                }
            }
            chosen.push(cur);
            total += ind;
            v += 1;
        }
        chosen.sort_unstable();
        for &i in chosen.iter().rev() {
            w.remove(i);
        }
    }
    total
}

/// All semistandard tableaux of the given shape and content, returned as row
/// lists of entries (1-based values).
fn semistandard_tableaux(shape: &[usize], content: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut out = Vec::new();
    let mut tableau: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut remaining: Vec<usize> = content.to_vec();
    fn fill(
        cells: &[(usize, usize)],
        k: usize,
        tableau: &mut Vec<Vec<usize>>,
        remaining: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some(&(r, c)) = cells.get(k) else {
            out.push(tableau.clone());
            return;
        };
        let min = {
            let left = if c > 0 { tableau[r][c - 1] } else { 1 };
            let above = if r > 0 { tableau[r - 1][c] + 1 } else { 1 };
            left.max(above)
        };
        for v in min..=remaining.len() {
            if remaining[v - 1] == 0 {
                continue;
            }
            remaining[v - 1] -= 1;
            tableau[r][c] = v;
            fill(cells, k + 1, tableau, remaining, out);
            remaining[v - 1] += 1;
        }
        tableau[r][c] = 0;
    }
    fill(&cells, 0, &mut tableau, &mut remaining, &mut out);
    out
}

/// Reading word: rows bottom to top, each row left to right.
fn reading_word(tableau: &[Vec<usize>]) -> Vec<usize> {
    tableau.iter().rev().flatten().copied().collect()
}

/// The Kostka polynomial `K_{mu lambda}(q)`.
pub fn kostka_foulkes(mu: &[usize], lambda: &[usize]) -> QPolynomial {
    let mut coeffs: Vec<i64> = Vec::new();
    for t in semistandard_tableaux(mu, lambda) {
        let ch = charge(&reading_word(&t));
        if coeffs.len() <= ch {
            coeffs.resize(ch + 1, 0);
        }
        coeffs[ch] += 1;
    }
    QPolynomial::from_coeffs(&coeffs)
}
