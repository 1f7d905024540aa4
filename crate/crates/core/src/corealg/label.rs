//! Basis labels for the free modules that appear in the constructions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::expvec::ExpVec;

/// A subset of `{0, …, 31}` stored as a bit mask. Indices are 0-based
/// internally and printed 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_indices(idx: &[usize]) -> Self {
        let mut s = IndexSet(0);
        for &i in idx {
            s = s.with(i);
        }
        s
    }

    /// `{0, …, n−1}`.
    pub fn full(n: usize) -> Self {
        IndexSet(((1u64 << n) - 1) as u32)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_bits(b: u32) -> Self {
        IndexSet(b)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn union(self, o: Self) -> Self {
        IndexSet(self.0 | o.0)
    }

    pub fn minus(self, o: Self) -> Self {
        IndexSet(self.0 & !o.0)
    }

    pub fn intersects(self, o: Self) -> bool {
        self.0 & o.0 != 0
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Number of elements strictly smaller than `i`.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 & ((1u32 << i) - 1)).count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn indicator(self, n: usize) -> ExpVec {
        let mut v = ExpVec::zeros(n);
        for i in self.iter() {
            v.set(i, 1);
        }
        v
    }

    /// Image under a permutation of indices together with the sign of the
    /// permutation needed to sort the image (for wedge monomials).
    pub fn permuted(self, perm: &[usize]) -> (IndexSet, i64) {
        let images: Vec<usize> = self.iter().map(|i| perm[i]).collect();
        let mut inversions = 0;
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                if images[a] > images[b] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        (IndexSet::from_indices(&images), sign)
    }

    /// All subsets of `self` of size `k`, in increasing order.
    pub fn subsets_of_size(self, k: usize) -> Vec<IndexSet> {
        let elems = self.to_vec();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(elems: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
            if cur.len() == k {
                out.push(IndexSet::from_indices(cur));
                return;
            }
            for j in start..elems.len() {
                cur.push(elems[j]);
                rec(elems, k, j + 1, cur, out);
                cur.pop();
            }
        }
        rec(&elems, k, 0, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The basis element `f_σ ⊗ f^α` of `⋀^a F ⊗ S_b F`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisLabel {
    pub sigma: IndexSet,
    pub alpha: ExpVec,
}

impl BasisLabel {
    pub fn new(sigma: IndexSet, alpha: ExpVec) -> Self {
        BasisLabel { sigma, alpha }
    }

    /// Exterior degree.
    pub fn a(&self) -> usize {
        self.sigma.len()
    }

    /// Symmetric degree.
    pub fn b(&self) -> usize {
        self.alpha.total() as usize
    }

    /// `ε_{σ_1} + … + ε_{σ_a} + α`.
    pub fn mdeg(&self) -> ExpVec {
        let mut m = self.alpha.clone();
        for i in self.sigma.iter() {
            m.bump(i, 1);
        }
        m
    }

    /// The multidegree in the ring, where `f_i` has degree `e_i ε_i`.
    pub fn ring_mdeg(&self, e: &ExpVec) -> ExpVec {
        self.mdeg().hadamard(e)
    }
}

impl Ord for BasisLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sigma
            .cmp(&other.sigma)
            .then_with(|| other.alpha.cmp(&self.alpha))
    }
}

impl PartialOrd for BasisLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}*m[", self.sigma)?;
        for (i, v) in self.alpha.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A basis label of any free module built by the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// The generator of `R` in homological degree 0.
    Unit,
    /// `f_σ ⊗ f^α`.
    Wedge(BasisLabel),
    /// A generator of `L^a_{b,w}`, keyed by the free echelon coordinate of
    /// its kernel vector.
    Kernel(BasisLabel),
    /// `e_τ` in the Koszul complex on the variables.
    Koszul(IndexSet),
    /// `e_τ ⊗ a` in `K ⊗ A`, with `None` standing for `1 ∈ A_0 = R`.
    Tensor(IndexSet, Option<BasisLabel>),
    /// `e_τ ⊗ v_{σ¹,α¹} ⊗ … ⊗ v_{σᵖ,αᵖ}` in the Golod resolution.
    Word(IndexSet, Vec<BasisLabel>),
}

impl Label {
    pub fn wedge(sigma: IndexSet, alpha: ExpVec) -> Self {
        Label::Wedge(BasisLabel::new(sigma, alpha))
    }

    pub fn as_wedge(&self) -> Option<&BasisLabel> {
        match self {
            Label::Wedge(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_kernel(&self) -> Option<&BasisLabel> {
        match self {
            Label::Kernel(b) => Some(b),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Unit => write!(f, "1"),
            Label::Wedge(b) => write!(f, "{b}"),
            Label::Kernel(b) => write!(f, "L<{b}>"),
            Label::Koszul(t) => write!(f, "e{t}"),
            Label::Tensor(t, None) => write!(f, "e{t}(x)1"),
            Label::Tensor(t, Some(b)) => write!(f, "e{t}(x){b}"),
            Label::Word(t, letters) => {
                write!(f, "e{t}")?;
                for l in letters {
                    write!(f, "|v<{l}>")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
