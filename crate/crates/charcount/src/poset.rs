//! Containment posets of subsystem families with precomputed Moebius
//! functions.
//!
//! The alternating-sum coefficients in the counting formulas are Moebius
//! values on the poset of *individual* subsystems ordered by inclusion (not
//! on conjugacy classes), so the poset stores every member of a family.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::root_data::Subsystem;

pub struct SubsystemPoset {
    elements: Vec<Subsystem>,
    index: HashMap<Subsystem, usize>,
    leq: Vec<Vec<bool>>,
    mobius: Vec<Vec<i64>>,
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

impl SubsystemPoset {
    pub fn new(mut elements: Vec<Subsystem>) -> Self {
        // Sorting by size gives a linear extension of the containment order.
        elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        elements.dedup();
        let n = elements.len();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut leq = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                leq[a][b] = is_subset(&elements[a].roots, &elements[b].roots);
            }
        }
        let mut mobius = vec![vec![0i64; n]; n];
        for a in 0..n {
            mobius[a][a] = 1;
            for b in a + 1..n {
                if !leq[a][b] {
                    continue;
                }
                let mut sum = 0i64;
                for c in a..b {
                    if leq[a][c] && leq[c][b] {
                        sum += mobius[a][c];
                    }
                }
                mobius[a][b] = -sum;
            }
        }
        SubsystemPoset { elements, index, leq, mobius }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Subsystem] {
        &self.elements
    }

    pub fn index_of(&self, s: &Subsystem) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn moebius_idx(&self, a: usize, b: usize) -> Result<i64> {
        if !self.leq[a][b] {
            return Err(Error::NotComparable);
        }
        Ok(self.mobius[a][b])
    }

    pub fn moebius(&self, a: &Subsystem, b: &Subsystem) -> Result<i64> {
        let (ia, ib) = match (self.index_of(a), self.index_of(b)) {
            (Some(ia), Some(ib)) => (ia, ib),
            _ => return Err(Error::NotComparable),
        };
        self.moebius_idx(ia, ib)
    }
}
