use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Finite downward-closed subset of `Z_{≥0}^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoIdealSet {
    n: usize,
    points: BTreeSet<Vec<i64>>,
}

impl CoIdealSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &BTreeSet<Vec<i64>> {
        &self.points
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.contains(p)
    }
}

/// Downward closure holds iff every unit decrement of a member stays a member.
pub fn is_coideal(points: &[Vec<i64>]) -> bool {
    let set: BTreeSet<&[i64]> = points.iter().map(|p| p.as_slice()).collect();
    points.iter().all(|p| {
        p.iter().all(|&x| x >= 0)
            && (0..p.len()).filter(|&i| p[i] > 0).all(|i| {
                let mut q = p.clone();
                q[i] -= 1;
                set.contains(q.as_slice())
            })
    })
}

pub fn coideal_closure(n: usize, points: &[Vec<i64>]) -> Result<CoIdealSet> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = Vec::new();
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.len() });
        }
        if p.iter().any(|&x| x < 0) {
            return Err(Error::invalid("co-ideal closure needs nonnegative coordinates"));
        }
        stack.push(p.clone());
    }
    while let Some(p) = stack.pop() {
        if !out.insert(p.clone()) {
            continue;
        }
        for i in 0..n {
            if p[i] > 0 {
                let mut q = p.clone();
                q[i] -= 1;
                if !out.contains(&q) {
                    stack.push(q);
                }
            }
        }
    }
    Ok(CoIdealSet { n, points: out })
}
