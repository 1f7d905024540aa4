//! Setup data, Koszul sign conventions, restricted simplex points and hook
//! tableaux.

use serde::{Deserialize, Serialize};

use crate::corealg::field::is_prime;
use crate::corealg::{bounded_compositions, Error, ExpVec, IndexSet, Result};

/// Largest number of generators supported (index sets are bit masks).
pub const MAX_N: usize = 16;

/// Coefficient field of a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldCfg {
    #[default]
    Rationals,
    PrimeField { p: u64 },
}

impl FieldCfg {
    /// Parses `q` or `fp:<p>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldCfg::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidInput(format!("field must be `q` or `fp:<p>`, got `{s}`")))?;
        Ok(FieldCfg::PrimeField { p })
    }
}

impl std::fmt::Display for FieldCfg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldCfg::Rationals => write!(f, "q"),
            FieldCfg::PrimeField { p } => write!(f, "fp:{p}"),
        }
    }
}

/// `R = k[x_1..x_n]`, `ψ(f_i) = x_i^{e_i}`, and the ideal generated by the
/// degree-`d` products `ψ(f)^α` with `α ≤ w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetupConfig {
    pub n: usize,
    pub d: usize,
    pub w: ExpVec,
    pub e: ExpVec,
    pub field: FieldCfg,
}

impl SetupConfig {
    pub fn new(n: usize, d: usize, w: &[u32], e: &[u32], field: FieldCfg) -> Result<Self> {
        let cfg = SetupConfig { n, d, w: ExpVec::from_slice(w), e: ExpVec::from_slice(e), field };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Rational coefficients and `e = (1, …, 1)`.
    pub fn standard(n: usize, d: usize, w: &[u32]) -> Result<Self> {
        Self::new(n, d, w, &vec![1; n], FieldCfg::Rationals)
    }

    /// `w = (d, …, d)`: the ordinary `d`th power of `(x_1^{e_1}, …)`.
    pub fn full_power(n: usize, d: usize) -> Result<Self> {
        Self::standard(n, d, &vec![d as u32; n])
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.n > MAX_N {
            return bad(format!("n must be at most {MAX_N}"));
        }
        if self.d == 0 {
            return bad("d must be at least 1".into());
        }
        if self.w.len() != self.n {
            return bad(format!("w has length {}, expected {}", self.w.len(), self.n));
        }
        if self.e.len() != self.n {
            return bad(format!("e has length {}, expected {}", self.e.len(), self.n));
        }
        if self.e.iter().any(|x| x == 0) {
            return bad("every e_i must be at least 1".into());
        }
        let reach: u64 = self.w.iter().map(|x| u64::from(x).min(self.d as u64)).sum();
        if reach < self.d as u64 {
            return bad(format!("no exponent vector of degree {} fits under w = {}", self.d, self.w));
        }
        if let FieldCfg::PrimeField { p } = self.field {
            if !is_prime(p) {
                return bad(format!("{p} is not prime"));
            }
            if p <= (self.n + self.d) as u64 {
                return bad(format!("characteristic {p} must exceed n + d = {}", self.n + self.d));
            }
        }
        Ok(())
    }

    /// Same data with a different restriction vector.
    pub fn with_w(&self, w: &[u32]) -> Result<Self> {
        Self::new(self.n, self.d, w, self.e.as_slice(), self.field)
    }
}

/// `(−1)^{k−1}` where `r` is the `k`-th smallest element of `σ`.
pub fn sign_in(r: usize, sigma: IndexSet) -> Result<i64> {
    if !sigma.contains(r) {
        return Err(Error::InvalidInput(format!("{} is not in {sigma}", r + 1)));
    }
    Ok(koszul_sign(r, sigma))
}

/// [`sign_in`] without the membership check.
pub(crate) fn koszul_sign(r: usize, sigma: IndexSet) -> i64 {
    if sigma.count_below(r) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Which block comes first in the list that [`sign_shuffle_with`] sorts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ShuffleOrder {
    /// `(τ, σ∖τ)`.
    #[default]
    SubsetFirst,
    /// `(σ∖τ, τ)`.
    ComplementFirst,
}

/// Sign of the permutation sorting `(τ, σ∖τ)` into increasing order.
pub fn sign_shuffle(tau: IndexSet, sigma: IndexSet) -> Result<i64> {
    sign_shuffle_with(ShuffleOrder::default(), tau, sigma)
}

pub fn sign_shuffle_with(order: ShuffleOrder, tau: IndexSet, sigma: IndexSet) -> Result<i64> {
    if !tau.is_subset(sigma) {
        return Err(Error::InvalidInput(format!("{tau} is not a subset of {sigma}")));
    }
    Ok(shuffle_sign(order, tau, sigma))
}

pub(crate) fn shuffle_sign(order: ShuffleOrder, tau: IndexSet, sigma: IndexSet) -> i64 {
    let rest = sigma.minus(tau);
    let (first, second) = match order {
        ShuffleOrder::SubsetFirst => (tau, rest),
        ShuffleOrder::ComplementFirst => (rest, tau),
    };
    let inversions: usize = first.iter().map(|t| second.count_below(t)).sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `α` with `|α| = d` and `α ≤ w`, in decreasing lexicographic order.
pub fn restricted_exponents(cfg: &SetupConfig) -> Vec<ExpVec> {
    bounded_compositions(cfg.n, cfg.d as u32, &cfg.w)
}

/// A semistandard filling of the hook with first row of length `b` and
/// first column of length `a + 1`. Entries are 0-based variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HookTableau {
    pub arm: Vec<usize>,
    pub leg: Vec<usize>,
}

impl HookTableau {
    /// Number of occurrences of each letter.
    pub fn content(&self, n: usize) -> ExpVec {
        let mut c = ExpVec::zeros(n);
        for &i in self.arm.iter().chain(self.leg.iter()) {
            c.bump(i, 1);
        }
        c
    }
}

impl std::fmt::Display for HookTableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<String>();
        write!(f, "[{}|{}]", s(&self.arm), s(&self.leg))
    }
}

/// Hook tableaux of arm length `b ≥ 1` and leg length `a` whose content is
/// bounded by `w`.
pub fn hook_ssyt(a: usize, b: usize, cfg: &SetupConfig) -> Vec<HookTableau> {
    let mut out = Vec::new();
    if b == 0 {
        return out;
    }
    for alpha in bounded_compositions(cfg.n, b as u32, &cfg.w) {
        let first = (0..cfg.n).find(|&i| alpha.get(i) > 0).expect("b ≥ 1");
        let arm: Vec<usize> = (0..cfg.n)
            .flat_map(|i| std::iter::repeat(i).take(alpha.get(i) as usize))
            .collect();
        let room: Vec<usize> = (first + 1..cfg.n).filter(|&i| alpha.get(i) < cfg.w.get(i)).collect();
        for leg in IndexSet::from_indices(&room).subsets_of_size(a) {
            out.push(HookTableau { arm: arm.clone(), leg: leg.to_vec() });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[usize]) -> IndexSet {
        IndexSet::from_indices(&v.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn sign_in_examples() {
        assert_eq!(sign_in(0, s(&[1, 2, 3])).unwrap(), 1);
        assert_eq!(sign_in(1, s(&[1, 2, 3])).unwrap(), -1);
        assert_eq!(sign_in(4, s(&[2, 5, 7])).unwrap(), -1);
        assert!(sign_in(0, s(&[2])).is_err());
    }

    #[test]
    fn sign_shuffle_examples() {
        assert_eq!(sign_shuffle(s(&[1, 2, 3]), s(&[1, 2, 3])).unwrap(), 1);
        assert_eq!(sign_shuffle(s(&[2]), s(&[1, 2, 3])).unwrap(), -1);
        assert_eq!(sign_shuffle(s(&[2, 3]), s(&[1, 2, 3])).unwrap(), 1);
        assert!(sign_shuffle(s(&[4]), s(&[1, 2])).is_err());
        assert_eq!(sign_shuffle_with(ShuffleOrder::ComplementFirst, s(&[2, 3]), s(&[1, 2, 3])).unwrap(), 1);
        assert_eq!(sign_shuffle_with(ShuffleOrder::ComplementFirst, s(&[1]), s(&[1, 2])).unwrap(), -1);
    }

    #[test]
    fn restricted_exponent_examples() {
        let cfg = SetupConfig::standard(3, 2, &[2, 1, 1]).unwrap();
        let want: Vec<ExpVec> = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]]
            .iter()
            .map(|v| ExpVec::from_slice(v))
            .collect();
        assert_eq!(restricted_exponents(&cfg), want);
        let cfg = SetupConfig::standard(3, 3, &[3, 1, 1]).unwrap();
        let want: Vec<ExpVec> = [[3, 0, 0], [2, 1, 0], [2, 0, 1], [1, 1, 1]]
            .iter()
            .map(|v| ExpVec::from_slice(v))
            .collect();
        assert_eq!(restricted_exponents(&cfg), want);
        assert_eq!(restricted_exponents(&SetupConfig::standard(2, 2, &[2, 2]).unwrap()).len(), 3);
    }

    #[test]
    fn hook_examples() {
        let cfg = SetupConfig::standard(3, 3, &[3, 1, 1]).unwrap();
        let t: Vec<String> = hook_ssyt(1, 3, &cfg).iter().map(|t| t.to_string()).collect();
        assert_eq!(t, ["[111|2]", "[111|3]", "[112|3]", "[113|2]"]);
        assert_eq!(hook_ssyt(0, 3, &cfg).len(), restricted_exponents(&cfg).len());
        let cfg = SetupConfig::standard(3, 2, &[1, 1, 1]).unwrap();
        assert_eq!(hook_ssyt(1, 2, &cfg).len(), 2);
        for t in hook_ssyt(1, 3, &SetupConfig::full_power(3, 3).unwrap()) {
            assert!(t.arm.windows(2).all(|p| p[0] <= p[1]));
            assert!(t.leg.first().is_none_or(|&l| l > t.arm[0]));
        }
    }

    #[test]
    fn config_validation() {
        assert!(SetupConfig::standard(0, 1, &[]).is_err());
        assert!(SetupConfig::standard(2, 0, &[1, 1]).is_err());
        assert!(SetupConfig::standard(2, 3, &[1, 1]).is_err());
        assert!(SetupConfig::standard(2, 2, &[1, 1]).is_ok());
        assert!(SetupConfig::standard(2, 2, &[1]).is_err());
        assert!(SetupConfig::new(2, 2, &[2, 2], &[1, 0], FieldCfg::Rationals).is_err());
        assert!(SetupConfig::new(2, 2, &[2, 2], &[1, 1], FieldCfg::PrimeField { p: 3 }).is_err());
        assert!(SetupConfig::new(2, 2, &[2, 2], &[1, 1], FieldCfg::PrimeField { p: 9 }).is_err());
        assert!(SetupConfig::new(2, 2, &[2, 2], &[1, 1], FieldCfg::PrimeField { p: 5 }).is_ok());
        assert_eq!(FieldCfg::parse("fp:7").unwrap(), FieldCfg::PrimeField { p: 7 });
        assert!(FieldCfg::parse("z").is_err());
    }

    proptest! {
        // Moving r from the complement into the subset: the two shuffle
        // signs differ by the position sign of r and a parity of |τ'|.
        #[test]
        fn two_path_sign_identity(sbits in 0u32..64, tbits in 0u32..64, r in 0usize..6) {
            let sigma = IndexSet::from_bits(sbits);
            let tau_p = IndexSet::from_bits(tbits & sbits).without(r);
            prop_assume!(sigma.contains(r));
            let tau = tau_p.with(r);
            let lhs = koszul_sign(r, tau) * shuffle_sign(ShuffleOrder::SubsetFirst, tau, sigma);
            let parity = if tau_p.len() % 2 == 0 { 1 } else { -1 };
            let rhs = parity
                * koszul_sign(r, sigma.minus(tau_p))
                * shuffle_sign(ShuffleOrder::SubsetFirst, tau_p, sigma);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn simplex_counts(n in 1usize..5, d in 1usize..5) {
            let full = SetupConfig::full_power(n, d).unwrap();
            prop_assert_eq!(restricted_exponents(&full).len() as u64, binom((n + d - 1) as u64, d as u64));
            if d <= n {
                let sq = SetupConfig::standard(n, d, &vec![1; n]).unwrap();
                prop_assert_eq!(restricted_exponents(&sq).len() as u64, binom(n as u64, d as u64));
            }
        }
    }
}
