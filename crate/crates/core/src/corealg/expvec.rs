use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// A length-`n` vector of non-negative integers: an exponent vector or a
/// multidegree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(SmallVec<[u32; 6]>);

impl ExpVec {
    pub fn zeros(n: usize) -> Self {
        ExpVec(SmallVec::from_elem(0, n))
    }

    /// The unit vector `ε_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = 1;
        v
    }

    pub fn from_slice(v: &[u32]) -> Self {
        ExpVec(SmallVec::from_slice(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, v: u32) {
        self.0[i] = v;
    }

    pub fn bump(&mut self, i: usize, by: u32) {
        self.0[i] += by;
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, or `None` when some entry would go negative.
    pub fn checked_sub(&self, other: &ExpVec) -> Option<ExpVec> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(ExpVec)
    }

    pub fn meet(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn join(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    /// Entrywise product, used to pass from formal to ring multidegrees.
    pub fn hadamard(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).collect())
    }

    pub fn permuted(&self, perm: &[usize]) -> ExpVec {
        let mut out = Self::zeros(self.len());
        for (i, &v) in self.0.iter().enumerate() {
            out.0[perm[i]] = v;
        }
        out
    }

    /// All vectors `m` with `0 ≤ m ≤ self`, in lexicographic order.
    pub fn box_points(&self) -> Vec<ExpVec> {
        let mut out = vec![ExpVec::zeros(0)];
        for &u in self.0.iter() {
            let mut next = Vec::with_capacity(out.len() * (u as usize + 1));
            for p in &out {
                for v in 0..=u {
                    let mut q = p.clone();
                    q.0.push(v);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<u32>> for ExpVec {
    fn from(v: Vec<u32>) -> Self {
        ExpVec(SmallVec::from_vec(v))
    }
}

/// All compositions of `total` into `n` parts bounded by `cap`, in
/// descending lexicographic order.
pub fn bounded_compositions(n: usize, total: u32, cap: &ExpVec) -> Vec<ExpVec> {
    fn rec(i: usize, left: u32, cap: &ExpVec, cur: &mut Vec<u32>, out: &mut Vec<ExpVec>) {
        let n = cap.len();
        if i == n {
            if left == 0 {
                out.push(ExpVec::from_slice(cur));
            }
            return;
        }
        let room: u32 = cap.as_slice()[i + 1..].iter().sum();
        let hi = left.min(cap.get(i));
        for v in (0..=hi).rev() {
            if left - v > room {
                break;
            }
            cur.push(v);
            rec(i + 1, left - v, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(ExpVec::zeros(0));
        }
        return out;
    }
    rec(0, total, cap, &mut Vec::with_capacity(n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn componentwise_order() {
        let a = ExpVec::from_slice(&[1, 0, 2]);
        let b = ExpVec::from_slice(&[1, 1, 2]);
        assert!(a.le(&b));
        assert!(!b.le(&a));
        assert_eq!(b.checked_sub(&a), Some(ExpVec::from_slice(&[0, 1, 0])));
        assert_eq!(a.checked_sub(&b), None);
    }

    #[test]
    fn compositions_respect_cap() {
        let cap = ExpVec::from_slice(&[2, 1, 1]);
        let c = bounded_compositions(3, 2, &cap);
        let want: Vec<ExpVec> = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]]
            .iter()
            .map(|v| ExpVec::from_slice(v))
            .collect();
        assert_eq!(c, want);
        assert!(bounded_compositions(2, 5, &ExpVec::from_slice(&[2, 2])).is_empty());
    }

    #[test]
    fn box_enumeration() {
        let pts = ExpVec::from_slice(&[1, 2]).box_points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], ExpVec::from_slice(&[0, 0]));
        assert_eq!(pts[5], ExpVec::from_slice(&[1, 2]));
    }
}
