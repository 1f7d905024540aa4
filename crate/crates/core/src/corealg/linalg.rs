//! Dense exact linear algebra over a [`Field`].

use super::field::Field;

/// Row-reduces `m` in place to reduced echelon form and returns the pivot
/// column of each nonzero row.
pub fn rref<K: Field>(m: &mut [Vec<K>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in m[r][c..].iter_mut() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(pivot_row[c..].iter()) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination (no back substitution).
pub fn rank<K: Field>(mut m: Vec<Vec<K>>, ncols: usize) -> usize {
    let nrows = m.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        let pivot_row = std::mem::take(&mut m[r]);
        for row in m[r + 1..].iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone() * inv.clone();
            for (x, y) in row[c..].iter_mut().zip(pivot_row[c..].iter()) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        m[r] = pivot_row;
        r += 1;
    }
    r
}

/// Basis of the null space of `m` (an `nrows × ncols` matrix). Each basis
/// vector is returned with its free column, where it has entry 1 while all
/// other free columns are 0.
pub fn nullspace<K: Field>(m: &[Vec<K>], ncols: usize) -> Vec<(usize, Vec<K>)> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![K::zero(); ncols];
        v[free] = K::one();
        for (row, &p) in a.iter().zip(pivots.iter()) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        out.push((free, v));
    }
    out
}

/// An incrementally grown echelon basis of a subspace of `K^dim`.
#[derive(Clone, Debug)]
pub struct EchelonSpan<K: Field> {
    dim: usize,
    rows: Vec<(usize, Vec<K>)>,
}

impl<K: Field> EchelonSpan<K> {
    pub fn new(dim: usize) -> Self {
        EchelonSpan { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[K]) -> Vec<K> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row.iter()) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[K]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[K]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(r.iter()) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::field::Rational;
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn rank_and_nullspace_small() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        assert_eq!(rank(m.clone(), 3), 1);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for (_, v) in &ns {
            for row in &m {
                let s = row.iter().zip(v).fold(q(0), |acc, (a, b)| acc + a.clone() * b.clone());
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn span_insertion() {
        let mut s = EchelonSpan::new(3);
        assert!(s.insert(&[q(1), q(1), q(0)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(!s.insert(&[q(1), q(2), q(1)]));
        assert!(s.contains(&[q(1), q(0), q(-1)]));
        assert_eq!(s.rank(), 2);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-2i64..3, 12)) {
            let m: Vec<Vec<Rational>> = entries.chunks(4).map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let r = rank(m.clone(), 4);
            let ns = nullspace(&m, 4);
            prop_assert_eq!(r + ns.len(), 4);
            for (_, v) in &ns {
                for row in &m {
                    let s = row.iter().zip(v).fold(q(0), |acc, (a, b)| acc + a.clone() * b.clone());
                    prop_assert!(s.is_zero());
                }
            }
        }
    }
}
