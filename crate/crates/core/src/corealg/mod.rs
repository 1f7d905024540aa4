//! Exact coefficients, polynomials, monomial ideals, labeled free modules and
//! their maps.

pub mod expvec;
pub mod field;
pub mod ideal;
pub mod label;
pub mod linalg;
pub mod module;
pub mod poly;

use std::collections::BTreeMap;

pub use expvec::{bounded_compositions, ExpVec};
pub use field::{Field, Fp, Rational};
pub use ideal::{monomial_string, MonomialIdeal};
pub use label::{BasisLabel, IndexSet, Label};
pub use module::{Element, FreeModuleSpec, LinMap};
pub use poly::Poly;

/// Errors raised by constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("map is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("non-scalar coefficient: {0}")]
    NonScalar(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// A kernel basis vector together with its free echelon column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVector<K: Field> {
    /// Source label of the free column; the vector has coefficient 1 there
    /// and 0 on every other free column of its fiber.
    pub free: Label,
    pub mdeg: ExpVec,
    pub vector: Element<K>,
}

/// Basis of `ker f`, computed one multidegree fiber at a time. `f` must be
/// homogeneous with scalar coefficients. Vectors come out in the order of
/// their free columns in the source.
pub fn kernel_by_multidegree<K: Field>(f: &LinMap<K>) -> Result<Vec<KernelVector<K>>> {
    let src = f.source();
    let tgt = f.target();
    let mut fibers: BTreeMap<ExpVec, Vec<usize>> = BTreeMap::new();
    for k in 0..src.rank() {
        let m = src.ring_mdeg(k);
        for (t, p) in f.col(k).iter() {
            if tgt.mdeg_of(t) != Some(m) {
                return Err(Error::Inhomogeneous(format!(
                    "column {} has entry {} of another multidegree",
                    src.label(k),
                    t
                )));
            }
            if p.as_scalar().is_none() {
                return Err(Error::NonScalar(format!("column {} entry {}: {}", src.label(k), t, p)));
            }
        }
        fibers.entry(m.clone()).or_default().push(k);
    }
    let mut out: Vec<(usize, KernelVector<K>)> = Vec::new();
    for (m, cols) in fibers {
        let mut rows: BTreeMap<&Label, usize> = BTreeMap::new();
        for &k in &cols {
            for (t, _) in f.col(k).iter() {
                let next = rows.len();
                rows.entry(t).or_insert(next);
            }
        }
        let mut mat = vec![vec![K::zero(); cols.len()]; rows.len()];
        for (j, &k) in cols.iter().enumerate() {
            for (t, p) in f.col(k).iter() {
                mat[rows[t]][j] = p.as_scalar().expect("checked scalar");
            }
        }
        let n = m.len();
        for (free, v) in linalg::nullspace(&mat, cols.len()) {
            let mut vector = Element::zero();
            for (j, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    vector.add_term(src.label(cols[j]).clone(), &Poly::constant(n, c));
                }
            }
            out.push((
                cols[free],
                KernelVector { free: src.label(cols[free]).clone(), mdeg: m.clone(), vector },
            ));
        }
    }
    out.sort_by_key(|(k, _)| *k);
    Ok(out.into_iter().map(|(_, v)| v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn sp(labels: &[(usize, u32)]) -> Arc<FreeModuleSpec> {
        Arc::new(FreeModuleSpec::new(labels.iter().map(|&(i, m)| {
            (Label::Koszul(IndexSet::from_indices(&[i])), ExpVec::from_slice(&[m]))
        })))
    }

    fn e(i: usize) -> Label {
        Label::Koszul(IndexSet::from_indices(&[i]))
    }

    #[test]
    fn kernel_of_sum_map() {
        // (a,b,c) ↦ a+b in one fiber, c alone in another
        let s = sp(&[(0, 1), (1, 1), (2, 2)]);
        let t = sp(&[(5, 1), (6, 2)]);
        let f = LinMap::<Rational>::from_fn(s, t, |l| {
            if *l == e(2) {
                Element::basis(e(6), 1)
            } else {
                Element::basis(e(5), 1)
            }
        });
        let k = kernel_by_multidegree(&f).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].free, e(1));
        assert!(f.apply(&k[0].vector).is_zero());
    }

    #[test]
    fn rejects_non_scalar_and_inhomogeneous() {
        let s = sp(&[(0, 1)]);
        let t = sp(&[(1, 1), (2, 0)]);
        let f = LinMap::<Rational>::from_fn(s.clone(), t.clone(), |_| {
            Element::term(e(1), Poly::var_pow(1, 0, 1))
        });
        assert!(matches!(kernel_by_multidegree(&f), Err(Error::NonScalar(_))));
        let g = LinMap::<Rational>::from_fn(s, t, |_| Element::basis(e(2), 1));
        assert!(matches!(kernel_by_multidegree(&g), Err(Error::Inhomogeneous(_))));
    }
}
