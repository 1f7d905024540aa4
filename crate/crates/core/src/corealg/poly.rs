use std::collections::BTreeMap;
use std::fmt;

use super::expvec::ExpVec;
use super::field::Field;

/// A sparse polynomial in `x_1, …, x_n`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<K: Field> {
    terms: BTreeMap<ExpVec, K>,
}

impl<K: Field> Default for Poly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> Poly<K> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: K) -> Self {
        Self::monomial(ExpVec::zeros(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, K::one())
    }

    pub fn monomial(exp: ExpVec, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { terms }
    }

    /// `x_i^k` (0-based `i`).
    pub fn var_pow(n: usize, i: usize, k: u32) -> Self {
        let mut e = ExpVec::zeros(n);
        e.set(i, k);
        Self::monomial(e, K::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &ExpVec) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> K {
        self.terms
            .iter()
            .next()
            .filter(|(e, _)| e.total() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(K::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_scalar(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.total() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((m, c))` when the polynomial is a single term `c·x^m`.
    pub fn as_term(&self) -> Option<(&ExpVec, &K)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, exp: ExpVec, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly<K>) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Poly<K>) -> Poly<K> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Poly<K>) -> Poly<K> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly<K> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &K) -> Poly<K> {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * s.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly<K>) -> Poly<K> {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiplies by the monomial `x^m`.
    pub fn shift(&self, m: &ExpVec) -> Poly<K> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.add(m), c.clone())).collect(),
        }
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn retain(&mut self, mut keep: impl FnMut(&ExpVec) -> bool) {
        self.terms.retain(|e, _| keep(e));
    }

    /// Renames variables: `x_i ↦ x_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Poly<K> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.permuted(perm), c.clone())).collect(),
        }
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            if body != "1" || e.total() == 0 {
                parts.push(body);
            }
            for (i, p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => parts.push(format!("x{}", i + 1)),
                    p => parts.push(format!("x{}^{p}", i + 1)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::field::Rational;
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec(((0u32..3, 0u32..3), -5i64..5), 0..5).prop_map(|ts| {
            let mut p = P::zero();
            for ((a, b), c) in ts {
                p.add_term(ExpVec::from_slice(&[a, b]), Rational::from_i64(c));
            }
            p
        })
    }

    #[test]
    fn display_and_cancellation() {
        let mut p = P::var_pow(3, 0, 3);
        p.add_term(ExpVec::unit(3, 1), Rational::new(-1, 2));
        assert_eq!(p.to_string(), "-1/2*x2 + x1^3");
        p.add_term(ExpVec::unit(3, 1), Rational::new(1, 2));
        assert_eq!(p.num_terms(), 1);
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::constant(2, Rational::from_i64(3)).constant_term(), Rational::from_i64(3));
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }
    }
}
