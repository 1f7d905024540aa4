//! Labeled free modules over the polynomial ring, their elements, and maps
//! between them given column by column.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::expvec::ExpVec;
use super::field::Field;
use super::ideal::MonomialIdeal;
use super::label::Label;
use super::poly::Poly;

/// A free module with an ordered basis; each basis label carries its ring
/// multidegree.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeModuleSpec {
    labels: Vec<Label>,
    mdegs: Vec<ExpVec>,
    index: HashMap<Label, usize>,
}

impl FreeModuleSpec {
    /// Panics on duplicate labels.
    pub fn new(entries: impl IntoIterator<Item = (Label, ExpVec)>) -> Self {
        let mut labels = Vec::new();
        let mut mdegs = Vec::new();
        let mut index = HashMap::new();
        for (l, m) in entries {
            let prev = index.insert(l.clone(), labels.len());
            assert!(prev.is_none(), "duplicate basis label {l}");
            labels.push(l);
            mdegs.push(m);
        }
        FreeModuleSpec { labels, mdegs, index }
    }

    pub fn empty() -> Self {
        Self::new(std::iter::empty())
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> &Label {
        &self.labels[k]
    }

    pub fn ring_mdeg(&self, k: usize) -> &ExpVec {
        &self.mdegs[k]
    }

    pub fn mdeg_of(&self, l: &Label) -> Option<&ExpVec> {
        self.index.get(l).map(|&k| &self.mdegs[k])
    }

    pub fn position(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.index.contains_key(l)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &ExpVec)> {
        self.labels.iter().zip(self.mdegs.iter())
    }
}

impl fmt::Debug for FreeModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// An element `Σ c_l · l` of a labeled free module, with polynomial
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Element<K: Field> {
    coeffs: BTreeMap<Label, Poly<K>>,
}

impl<K: Field> Default for Element<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> Element<K> {
    pub fn zero() -> Self {
        Element { coeffs: BTreeMap::new() }
    }

    /// The basis vector `l` with coefficient 1 in `n` variables.
    pub fn basis(l: Label, n: usize) -> Self {
        Self::term(l, Poly::one(n))
    }

    pub fn term(l: Label, p: Poly<K>) -> Self {
        let mut e = Self::zero();
        e.add_term(l, &p);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, l: &Label) -> Option<&Poly<K>> {
        self.coeffs.get(l)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Poly<K>)> {
        self.coeffs.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.coeffs.keys()
    }

    pub fn add_term(&mut self, l: Label, p: &Poly<K>) {
        if p.is_zero() {
            return;
        }
        match self.coeffs.entry(l) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(p);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c · l` for a scalar `c` and monomial `x^m`.
    pub fn add_monomial(&mut self, l: Label, m: ExpVec, c: K) {
        self.add_term(l, &Poly::monomial(m, c));
    }

    pub fn add_assign(&mut self, o: &Element<K>) {
        for (l, p) in &o.coeffs {
            self.add_term(l.clone(), p);
        }
    }

    /// `self += s · o` for a polynomial `s`.
    pub fn add_scaled(&mut self, o: &Element<K>, s: &Poly<K>) {
        for (l, p) in &o.coeffs {
            self.add_term(l.clone(), &p.mul(s));
        }
    }

    pub fn add(&self, o: &Element<K>) -> Element<K> {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn sub(&self, o: &Element<K>) -> Element<K> {
        let mut out = self.clone();
        for (l, p) in &o.coeffs {
            out.add_term(l.clone(), &p.neg());
        }
        out
    }

    pub fn neg(&self) -> Element<K> {
        Element {
            coeffs: self.coeffs.iter().map(|(l, p)| (l.clone(), p.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &K) -> Element<K> {
        if s.is_zero() {
            return Self::zero();
        }
        Element {
            coeffs: self.coeffs.iter().map(|(l, p)| (l.clone(), p.scale(s))).collect(),
        }
    }

    pub fn mul_poly(&self, s: &Poly<K>) -> Element<K> {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    /// Reduces every coefficient modulo a monomial ideal.
    pub fn reduce_mod(&self, ideal: &MonomialIdeal) -> Element<K> {
        let mut out = Self::zero();
        for (l, p) in &self.coeffs {
            out.add_term(l.clone(), &ideal.reduce(p));
        }
        out
    }

    /// Relabels through `f`; labels mapped to `None` are dropped.
    pub fn map_labels(&self, mut f: impl FnMut(&Label) -> Option<(Label, K)>) -> Element<K> {
        let mut out = Self::zero();
        for (l, p) in &self.coeffs {
            if let Some((l2, c)) = f(l) {
                out.add_term(l2, &p.scale(&c));
            }
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Poly<K>) -> Poly<K>) -> Element<K> {
        let mut out = Self::zero();
        for (l, p) in &self.coeffs {
            out.add_term(l.clone(), &f(p));
        }
        out
    }
}

impl<K: Field> fmt::Display for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (l, p)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if p.as_scalar().is_some_and(|c| c.is_one()) {
                write!(f, "{l}")?;
            } else {
                write!(f, "({p})*{l}")?;
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An `R`-linear map between labeled free modules, stored by columns.
#[derive(Clone)]
pub struct LinMap<K: Field> {
    source: Arc<FreeModuleSpec>,
    target: Arc<FreeModuleSpec>,
    cols: Vec<Element<K>>,
}

impl<K: Field> LinMap<K> {
    pub fn zero(source: Arc<FreeModuleSpec>, target: Arc<FreeModuleSpec>) -> Self {
        let cols = vec![Element::zero(); source.rank()];
        LinMap { source, target, cols }
    }

    /// Builds the map from its value on each source label. Panics when a
    /// value leaves the target module.
    pub fn from_fn(
        source: Arc<FreeModuleSpec>,
        target: Arc<FreeModuleSpec>,
        mut f: impl FnMut(&Label) -> Element<K>,
    ) -> Self {
        let cols: Vec<Element<K>> = source.labels().iter().map(&mut f).collect();
        let m = LinMap { source, target, cols };
        if let Some((s, t)) = m.stray_label() {
            panic!("column {s} has label {t} outside the target module");
        }
        m
    }

    pub fn identity(spec: Arc<FreeModuleSpec>, n: usize) -> Self {
        let t = spec.clone();
        Self::from_fn(spec, t, |l| Element::basis(l.clone(), n))
    }

    pub fn source(&self) -> &Arc<FreeModuleSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeModuleSpec> {
        &self.target
    }

    pub fn col(&self, k: usize) -> &Element<K> {
        &self.cols[k]
    }

    pub fn col_of(&self, l: &Label) -> Option<&Element<K>> {
        self.source.position(l).map(|k| &self.cols[k])
    }

    pub fn columns(&self) -> impl Iterator<Item = (&Label, &Element<K>)> {
        self.source.labels().iter().zip(self.cols.iter())
    }

    pub fn set_col(&mut self, l: &Label, v: Element<K>) {
        let k = self.source.position(l).expect("label in source");
        self.cols[k] = v;
    }

    /// First (source label, value label) pair whose value label is not in
    /// the target.
    pub fn stray_label(&self) -> Option<(Label, Label)> {
        for (s, c) in self.columns() {
            for t in c.labels() {
                if !self.target.contains(t) {
                    return Some((s.clone(), t.clone()));
                }
            }
        }
        None
    }

    /// Applies the map. Labels outside the source are an error in the caller.
    pub fn apply(&self, x: &Element<K>) -> Element<K> {
        let mut out = Element::zero();
        for (l, p) in x.iter() {
            let k = self
                .source
                .position(l)
                .unwrap_or_else(|| panic!("label {l} not in the source module"));
            out.add_scaled(&self.cols[k], p);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap<K>) -> LinMap<K> {
        LinMap {
            source: other.source.clone(),
            target: self.target.clone(),
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, o: &LinMap<K>) -> LinMap<K> {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &LinMap<K>) -> LinMap<K> {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> LinMap<K> {
        LinMap {
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self.cols.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &K) -> LinMap<K> {
        LinMap {
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self.cols.iter().map(|c| c.scale(s)).collect(),
        }
    }

    fn zip(&self, o: &LinMap<K>, f: impl Fn(&Element<K>, &Element<K>) -> Element<K>) -> LinMap<K> {
        assert!(self.source == o.source, "source modules differ");
        LinMap {
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self.cols.iter().zip(o.cols.iter()).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// First nonzero column, with its value.
    pub fn first_nonzero(&self) -> Option<(Label, Element<K>)> {
        self.columns()
            .find(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l.clone(), c.clone()))
    }

    /// First source label on which the two maps differ, with both values.
    pub fn first_difference(&self, o: &LinMap<K>) -> Option<(Label, Element<K>, Element<K>)> {
        for (l, c) in self.columns() {
            let d = o.col_of(l).cloned().unwrap_or_default();
            if *c != d {
                return Some((l.clone(), c.clone(), d));
            }
        }
        for (l, c) in o.columns() {
            if !self.source.contains(l) && !c.is_zero() {
                return Some((l.clone(), Element::zero(), c.clone()));
            }
        }
        None
    }

    pub fn map_columns(&self, mut f: impl FnMut(&Element<K>) -> Element<K>) -> LinMap<K> {
        LinMap {
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self.cols.iter().map(&mut f).collect(),
        }
    }

    /// Replaces the target module, keeping the columns; panics if a column
    /// leaves the new target.
    pub fn with_target(&self, target: Arc<FreeModuleSpec>) -> LinMap<K> {
        let m = LinMap { source: self.source.clone(), target, cols: self.cols.clone() };
        if let Some((s, t)) = m.stray_label() {
            panic!("column {s} has label {t} outside the new target");
        }
        m
    }

    /// Replaces the source module by a superset, with zero columns on the new
    /// labels.
    pub fn extend_source(&self, source: Arc<FreeModuleSpec>) -> LinMap<K> {
        let cols = source
            .labels()
            .iter()
            .map(|l| self.col_of(l).cloned().unwrap_or_default())
            .collect();
        LinMap { source, target: self.target.clone(), cols }
    }
}

impl<K: Field> fmt::Debug for LinMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (l, c) in self.columns() {
            m.entry(l, c);
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::field::Rational;
    use crate::corealg::label::IndexSet;

    fn spec(k: usize) -> Arc<FreeModuleSpec> {
        Arc::new(FreeModuleSpec::new(
            (0..k).map(|i| (Label::Koszul(IndexSet::from_indices(&[i])), ExpVec::zeros(2))),
        ))
    }

    fn e(i: usize) -> Label {
        Label::Koszul(IndexSet::from_indices(&[i]))
    }

    #[test]
    fn compose_and_apply() {
        let s = spec(2);
        // swap then scale by x1
        let swap = LinMap::<Rational>::from_fn(s.clone(), s.clone(), |l| {
            if *l == e(0) { Element::basis(e(1), 2) } else { Element::basis(e(0), 2) }
        });
        let sq = swap.compose(&swap);
        assert!(sq.first_difference(&LinMap::identity(s.clone(), 2)).is_none());
        let x1 = Poly::var_pow(2, 0, 1);
        let v = Element::term(e(0), x1.clone());
        assert_eq!(swap.apply(&v), Element::term(e(1), x1));
        assert!(swap.sub(&swap).is_zero());
        assert!(swap.add(&swap.neg()).is_zero());
    }

    #[test]
    fn cancellation_drops_labels() {
        let mut v = Element::<Rational>::basis(e(0), 2);
        v.add_assign(&Element::basis(e(0), 2).neg());
        assert!(v.is_zero());
        assert_eq!(v.to_string(), "0");
    }

    #[test]
    #[should_panic(expected = "outside the target")]
    fn stray_columns_are_rejected() {
        let _ = LinMap::<Rational>::from_fn(spec(1), spec(1), |_| Element::basis(e(5), 2));
    }
}
