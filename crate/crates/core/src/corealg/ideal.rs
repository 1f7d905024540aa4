use std::fmt;

use serde::{Deserialize, Serialize};

use super::expvec::ExpVec;
use super::field::Field;
use super::poly::Poly;

/// A monomial ideal given by its minimal generators.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<ExpVec>,
}

impl MonomialIdeal {
    /// Builds the ideal and drops every generator divisible by another one.
    pub fn new(n: usize, gens: impl IntoIterator<Item = ExpVec>) -> Self {
        let mut all: Vec<ExpVec> = gens.into_iter().collect();
        all.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| b.cmp(a)));
        all.dedup();
        let mut minimal: Vec<ExpVec> = Vec::new();
        for g in all {
            if !minimal.iter().any(|m| m.le(&g)) {
                minimal.push(g);
            }
        }
        MonomialIdeal { n, gens: minimal }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[ExpVec] {
        &self.gens
    }

    /// True iff some generator divides `x^m`.
    pub fn contains(&self, m: &ExpVec) -> bool {
        self.gens.iter().any(|g| g.le(m))
    }

    /// Normal form in `R/I`: drops every term whose monomial lies in `I`.
    pub fn reduce<K: Field>(&self, p: &Poly<K>) -> Poly<K> {
        let mut out = p.clone();
        out.retain(|e| !self.contains(e));
        out
    }

    /// Componentwise maximum of the generators (the exponent of their lcm).
    pub fn lcm(&self) -> ExpVec {
        self.gens
            .iter()
            .fold(ExpVec::zeros(self.n), |acc, g| acc.join(g))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", monomial_string(g))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `x1^3*x2`-style rendering of a monomial; `1` for the empty product.
pub fn monomial_string(m: &ExpVec) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, p)| *p > 0)
        .map(|(i, p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{p}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}
