//! The restricted bicomplex, its totalization `X`, the resolution `L`, the
//! Koszul complex on the variables and the restricted power ideal.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::combinat::{koszul_sign, restricted_exponents, SetupConfig};
use crate::corealg::{
    bounded_compositions, kernel_by_multidegree, BasisLabel, Element, Error, ExpVec, Field,
    FreeModuleSpec, IndexSet, KernelVector, Label, LinMap, MonomialIdeal, Poly, Result,
};

/// A bounded complex of labeled free modules, `d_k : C_k → C_{k−1}`.
/// When `ideal` is set the coefficients live in `R/I` and every result of a
/// differential is reduced.
#[derive(Clone, Debug)]
pub struct ComplexData<K: Field> {
    n: usize,
    modules: BTreeMap<i64, Arc<FreeModuleSpec>>,
    diffs: BTreeMap<i64, LinMap<K>>,
    degree_of: HashMap<Label, i64>,
    ideal: Option<MonomialIdeal>,
}

impl<K: Field> ComplexData<K> {
    pub fn new(n: usize, ideal: Option<MonomialIdeal>) -> Self {
        ComplexData {
            n,
            modules: BTreeMap::new(),
            diffs: BTreeMap::new(),
            degree_of: HashMap::new(),
            ideal,
        }
    }

    /// Number of ring variables.
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn ideal(&self) -> Option<&MonomialIdeal> {
        self.ideal.as_ref()
    }

    /// Panics if a label already occurs in another degree.
    pub fn set_module(&mut self, k: i64, spec: Arc<FreeModuleSpec>) {
        for l in spec.labels() {
            let prev = self.degree_of.insert(l.clone(), k);
            assert!(prev.is_none_or(|p| p == k), "label {l} appears in two degrees");
        }
        self.modules.insert(k, spec);
    }

    /// Sets `d_k`; its source and target must be the modules in degrees `k`
    /// and `k − 1`.
    pub fn set_diff(&mut self, k: i64, map: LinMap<K>) {
        assert!(**map.source() == *self.module(k), "d_{k} has the wrong source");
        assert!(**map.target() == *self.module(k - 1), "d_{k} has the wrong target");
        self.diffs.insert(k, map);
    }

    pub fn module(&self, k: i64) -> Arc<FreeModuleSpec> {
        self.modules.get(&k).cloned().unwrap_or_else(|| Arc::new(FreeModuleSpec::empty()))
    }

    pub fn diff(&self, k: i64) -> LinMap<K> {
        self.diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| LinMap::zero(self.module(k), self.module(k - 1)))
    }

    pub fn diff_ref(&self, k: i64) -> Option<&LinMap<K>> {
        self.diffs.get(&k)
    }

    /// Degrees with a nonzero module, increasing.
    pub fn degrees(&self) -> Vec<i64> {
        self.modules.iter().filter(|(_, m)| m.rank() > 0).map(|(k, _)| *k).collect()
    }

    pub fn max_degree(&self) -> i64 {
        self.degrees().last().copied().unwrap_or(0)
    }

    pub fn rank(&self, k: i64) -> usize {
        self.modules.get(&k).map_or(0, |m| m.rank())
    }

    /// Ranks in degrees `0..=max_degree`.
    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.max_degree()).map(|k| self.rank(k)).collect()
    }

    pub fn degree_of(&self, l: &Label) -> Option<i64> {
        self.degree_of.get(l).copied()
    }

    pub fn reduce(&self, x: &Element<K>) -> Element<K> {
        match &self.ideal {
            Some(i) => x.reduce_mod(i),
            None => x.clone(),
        }
    }

    /// The differential applied to a homogeneous or inhomogeneous element.
    pub fn apply_diff(&self, x: &Element<K>) -> Element<K> {
        let mut out = Element::zero();
        for (l, p) in x.iter() {
            let k = self.degree_of(l).unwrap_or_else(|| panic!("label {l} not in the complex"));
            if let Some(d) = self.diffs.get(&k) {
                out.add_scaled(d.col_of(l).expect("label in its module"), p);
            }
        }
        self.reduce(&out)
    }

    /// All modules as one graded module, with the labels in degree order.
    pub fn total_module(&self) -> Arc<FreeModuleSpec> {
        Arc::new(FreeModuleSpec::new(
            self.modules.values().flat_map(|m| m.iter().map(|(l, d)| (l.clone(), d.clone()))),
        ))
    }

    /// The differential as a single map on [`Self::total_module`].
    pub fn total_diff(&self) -> LinMap<K> {
        let t = self.total_module();
        LinMap::from_fn(t.clone(), t, |l| {
            let k = self.degree_of[l];
            self.diffs.get(&k).and_then(|d| d.col_of(l)).cloned().unwrap_or_default()
        })
    }

    /// First `(degree, label, d(d(label)))` with nonzero value.
    pub fn check_d_squared(&self) -> Option<(i64, Label, Element<K>)> {
        for (&k, d) in &self.diffs {
            let Some(d2) = self.diffs.get(&(k - 1)) else { continue };
            for (l, c) in d.columns() {
                let v = self.reduce(&d2.apply(c));
                if !v.is_zero() {
                    return Some((k, l.clone(), v));
                }
            }
        }
        None
    }

    /// Number of `(column, entry)` pairs examined by [`Self::check_d_squared`].
    pub fn basis_size(&self) -> usize {
        self.modules.values().map(|m| m.rank()).sum()
    }

    /// Copy with one basis label deleted from its module and from every
    /// differential.
    pub fn without_label(&self, victim: &Label) -> ComplexData<K> {
        let k = self.degree_of(victim).expect("label of this complex");
        let mut c = ComplexData::new(self.n, self.ideal.clone());
        for (&j, m) in &self.modules {
            let spec = if j == k {
                Arc::new(FreeModuleSpec::new(
                    m.iter().filter(|(l, _)| *l != victim).map(|(l, d)| (l.clone(), d.clone())),
                ))
            } else {
                m.clone()
            };
            c.set_module(j, spec);
        }
        for (&j, d) in &self.diffs {
            let map = LinMap::from_fn(c.module(j), c.module(j - 1), |l| {
                d.col_of(l)
                    .expect("column")
                    .map_labels(|t| (t != victim).then(|| (t.clone(), K::one())))
            });
            c.set_diff(j, map);
        }
        c
    }

    /// First differential entry with a nonzero constant term, in degrees
    /// `≥ from`.
    pub fn check_minimal(&self, from: i64) -> Option<(i64, Label, Label)> {
        for (&k, d) in self.diffs.range(from..) {
            for (l, c) in d.columns() {
                for (t, p) in c.iter() {
                    if !p.constant_term().is_zero() {
                        return Some((k, l.clone(), t.clone()));
                    }
                }
            }
        }
        None
    }
}

/// Modules `(⋀^a ⊗ S_b)_w` for `0 ≤ b ≤ d − 1`, with κ horizontally and
/// `Kos ⊗ 1` vertically.
#[derive(Clone, Debug)]
pub struct BicomplexData<K: Field> {
    pub n: usize,
    pub modules: BTreeMap<(usize, usize), Arc<FreeModuleSpec>>,
    /// κ out of `(a, b)`, absent from the last column.
    pub horiz: BTreeMap<(usize, usize), LinMap<K>>,
    /// `Kos ⊗ 1` out of `(a, b)`.
    pub vert: BTreeMap<(usize, usize), LinMap<K>>,
}

impl<K: Field> BicomplexData<K> {
    /// First failure among `κ² = 0`, `(Kos⊗1)² = 0` and anticommutation.
    pub fn check(&self) -> Option<String> {
        let get = |m: &BTreeMap<(usize, usize), LinMap<K>>, k: (usize, usize)| m.get(&k).cloned();
        for (&(a, b), h) in &self.horiz {
            if a >= 1 {
                if let Some(h2) = get(&self.horiz, (a - 1, b + 1)) {
                    if let Some((l, _)) = h2.compose(h).first_nonzero() {
                        return Some(format!("horizontal square nonzero on {l}"));
                    }
                }
                if let Some(v2) = get(&self.vert, (a - 1, b + 1)) {
                    let v = &self.vert[&(a, b)];
                    let h2 = get(&self.horiz, (a - 1, b));
                    let vh = v2.compose(h);
                    let s = match h2 {
                        Some(h2) => vh.add(&h2.compose(v)),
                        None => vh,
                    };
                    if let Some((l, _)) = s.first_nonzero() {
                        return Some(format!("anticommutation fails on {l}"));
                    }
                }
            }
        }
        for (&(a, b), v) in &self.vert {
            if a >= 1 {
                if let Some(v2) = get(&self.vert, (a - 1, b)) {
                    if let Some((l, _)) = v2.compose(v).first_nonzero() {
                        return Some(format!("vertical square nonzero on {l}"));
                    }
                }
            }
        }
        None
    }
}

/// Labels `f_σ ⊗ f^α` with `|σ| = a`, `|α| = b` and `mdeg ≤ w`, sorted.
pub fn restricted_labels(a: usize, b: usize, cfg: &SetupConfig) -> Vec<BasisLabel> {
    let mut out = Vec::new();
    if a > cfg.n {
        return out;
    }
    for sigma in IndexSet::full(cfg.n).subsets_of_size(a) {
        let Some(cap) = cfg.w.checked_sub(&sigma.indicator(cfg.n)) else { continue };
        for alpha in bounded_compositions(cfg.n, b as u32, &cap) {
            out.push(BasisLabel::new(sigma, alpha));
        }
    }
    out
}

pub fn restricted_module(a: usize, b: usize, cfg: &SetupConfig) -> FreeModuleSpec {
    FreeModuleSpec::new(
        restricted_labels(a, b, cfg)
            .into_iter()
            .map(|l| {
                let m = l.ring_mdeg(&cfg.e);
                (Label::Wedge(l), m)
            }),
    )
}

fn signed<K: Field>(n: usize, s: i64) -> Poly<K> {
    Poly::constant(n, K::from_i64(s))
}

/// κ on a single basis label.
pub fn kappa_label<K: Field>(l: &BasisLabel, n: usize) -> Element<K> {
    let mut out = Element::zero();
    for r in l.sigma.iter() {
        let mut alpha = l.alpha.clone();
        alpha.bump(r, 1);
        out.add_term(Label::wedge(l.sigma.without(r), alpha), &signed(n, koszul_sign(r, l.sigma)));
    }
    out
}

/// `Kos ⊗ 1` on a single basis label.
pub fn kos_label<K: Field>(l: &BasisLabel, cfg: &SetupConfig) -> Element<K> {
    let mut out = Element::zero();
    for r in l.sigma.iter() {
        let c = Poly::var_pow(cfg.n, r, cfg.e.get(r)).scale(&K::from_i64(koszul_sign(r, l.sigma)));
        out.add_term(Label::wedge(l.sigma.without(r), l.alpha.clone()), &c);
    }
    out
}

/// Extends a map on wedge labels linearly; other labels are rejected.
pub fn apply_on_wedges<K: Field>(
    x: &Element<K>,
    mut f: impl FnMut(&BasisLabel) -> Element<K>,
) -> Element<K> {
    let mut out = Element::zero();
    for (l, p) in x.iter() {
        let b = l.as_wedge().unwrap_or_else(|| panic!("expected a wedge label, got {l}"));
        out.add_scaled(&f(b), p);
    }
    out
}

fn module_or_empty(a: isize, b: usize, cfg: &SetupConfig) -> Arc<FreeModuleSpec> {
    if a < 0 {
        Arc::new(FreeModuleSpec::empty())
    } else {
        Arc::new(restricted_module(a as usize, b, cfg))
    }
}

/// `κ : (⋀^a ⊗ S_b)_w → (⋀^{a−1} ⊗ S_{b+1})_w`.
pub fn kappa<K: Field>(a: usize, b: usize, cfg: &SetupConfig) -> LinMap<K> {
    let src = module_or_empty(a as isize, b, cfg);
    let tgt = module_or_empty(a as isize - 1, b + 1, cfg);
    LinMap::from_fn(src, tgt, |l| kappa_label(l.as_wedge().unwrap(), cfg.n))
}

/// `Kos ⊗ 1 : (⋀^a ⊗ S_b)_w → (⋀^{a−1} ⊗ S_b)_w`.
pub fn kos_tensor<K: Field>(a: usize, b: usize, cfg: &SetupConfig) -> LinMap<K> {
    let src = module_or_empty(a as isize, b, cfg);
    let tgt = module_or_empty(a as isize - 1, b, cfg);
    LinMap::from_fn(src, tgt, |l| kos_label(l.as_wedge().unwrap(), cfg))
}

pub fn build_bicomplex<K: Field>(cfg: &SetupConfig) -> BicomplexData<K> {
    let mut modules = BTreeMap::new();
    for a in 0..=cfg.n {
        for b in 0..cfg.d {
            modules.insert((a, b), Arc::new(restricted_module(a, b, cfg)));
        }
    }
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for (&(a, b), m) in &modules {
        if a == 0 {
            continue;
        }
        if b + 1 < cfg.d {
            let t = modules[&(a - 1, b + 1)].clone();
            horiz.insert((a, b), LinMap::from_fn(m.clone(), t, |l| kappa_label(l.as_wedge().unwrap(), cfg.n)));
        }
        let t = modules[&(a - 1, b)].clone();
        vert.insert((a, b), LinMap::from_fn(m.clone(), t, |l| kos_label(l.as_wedge().unwrap(), cfg)));
    }
    BicomplexData { n: cfg.n, modules, horiz, vert }
}

/// Total complex with differential `horiz − vert`; the module `(a, b)` sits
/// in degree `a`.
pub fn totalize<K: Field>(bc: &BicomplexData<K>) -> ComplexData<K> {
    let mut c = ComplexData::new(bc.n, None);
    let mut by_deg: BTreeMap<usize, Vec<(Label, ExpVec)>> = BTreeMap::new();
    for (&(a, _), m) in &bc.modules {
        by_deg
            .entry(a)
            .or_default()
            .extend(m.iter().map(|(l, d)| (l.clone(), d.clone())));
    }
    for (&a, entries) in &by_deg {
        c.set_module(a as i64, Arc::new(FreeModuleSpec::new(entries.iter().cloned())));
    }
    for &a in by_deg.keys() {
        if a == 0 {
            continue;
        }
        let src = c.module(a as i64);
        let tgt = c.module(a as i64 - 1);
        let mut cols: HashMap<Label, Element<K>> = HashMap::new();
        for (&(a2, _), h) in bc.horiz.iter().filter(|((a2, _), _)| *a2 == a) {
            debug_assert_eq!(a2, a);
            for (l, v) in h.columns() {
                cols.entry(l.clone()).or_default().add_assign(v);
            }
        }
        for (_, v) in bc.vert.iter().filter(|((a2, _), _)| *a2 == a) {
            for (l, x) in v.columns() {
                cols.entry(l.clone()).or_default().add_assign(&x.neg());
            }
        }
        let map = LinMap::from_fn(src, tgt, |l| cols.remove(l).unwrap_or_default());
        c.set_diff(a as i64, map);
    }
    c
}

/// The total complex `X_d^w`.
pub fn build_x<K: Field>(cfg: &SetupConfig) -> ComplexData<K> {
    totalize(&build_bicomplex::<K>(cfg))
}

/// The resolution `L^w(ψ, d)` with its kernel bases.
#[derive(Clone, Debug)]
pub struct LComplex<K: Field> {
    pub cfg: SetupConfig,
    pub complex: ComplexData<K>,
    /// Kernel basis of `κ` on `(⋀^a ⊗ S_d)_w` for `a ≥ 1`.
    pub kernels: BTreeMap<usize, Vec<KernelVector<K>>>,
}

impl<K: Field> LComplex<K> {
    /// Exterior degree `a` of a degree `a + 1` label.
    pub fn wedge_degree(l: &Label) -> Option<usize> {
        match l {
            Label::Wedge(b) | Label::Kernel(b) => Some(b.a()),
            _ => None,
        }
    }

    /// The vector in `(⋀^a ⊗ S_d)_w` represented by a label of degree ≥ 1.
    pub fn embed_label(&self, l: &Label) -> Element<K> {
        match l {
            Label::Wedge(_) => Element::basis(l.clone(), self.cfg.n),
            Label::Kernel(b) => self.kernels[&b.a()]
                .iter()
                .find(|v| v.free.as_wedge() == Some(b))
                .map(|v| v.vector.clone())
                .expect("kernel label of this complex"),
            _ => panic!("label {l} has no wedge embedding"),
        }
    }

    /// `Σ c_l · embed(l)` over degree ≥ 1 labels.
    pub fn embed(&self, x: &Element<K>) -> Element<K> {
        let mut out = Element::zero();
        for (l, p) in x.iter() {
            out.add_scaled(&self.embed_label(l), p);
        }
        out
    }

    /// Coordinates in the degree `a + 1` basis of an element of `ker κ` on
    /// `(⋀^a ⊗ S_d)_w`. Fails if `u` is not in the span.
    pub fn coords(&self, a: usize, u: &Element<K>) -> Result<Element<K>> {
        if a == 0 {
            return Ok(u.clone());
        }
        let basis = self
            .kernels
            .get(&a)
            .ok_or_else(|| Error::Internal(format!("no kernel module in exterior degree {a}")))?;
        let mut out = Element::zero();
        let mut rebuilt = Element::zero();
        for v in basis {
            if let Some(c) = u.coeff(&v.free) {
                out.add_term(Label::Kernel(v.free.as_wedge().unwrap().clone()), c);
                rebuilt.add_scaled(&v.vector, c);
            }
        }
        if rebuilt != *u {
            return Err(Error::Internal(format!(
                "element {u} does not lie in the kernel span in exterior degree {a}"
            )));
        }
        Ok(out)
    }
}

/// Builds `L^w(ψ, d)`: `R` in degree 0, `(S_d)_w` in degree 1 and
/// `ker κ ⊆ (⋀^a ⊗ S_d)_w` in degree `a + 1`.
pub fn build_l_complex<K: Field>(cfg: &SetupConfig) -> Result<LComplex<K>> {
    build_l_complex_with(cfg, |_, basis| basis)
}

/// As [`build_l_complex`], with a hook that may edit each kernel basis
/// (used to build corrupted fixtures).
pub fn build_l_complex_with<K: Field>(
    cfg: &SetupConfig,
    mut edit: impl FnMut(usize, Vec<KernelVector<K>>) -> Vec<KernelVector<K>>,
) -> Result<LComplex<K>> {
    cfg.validate()?;
    let n = cfg.n;
    let d = cfg.d;
    let mut c = ComplexData::new(n, None);
    c.set_module(0, Arc::new(FreeModuleSpec::new([(Label::Unit, ExpVec::zeros(n))])));
    c.set_module(1, Arc::new(restricted_module(0, d, cfg)));
    let psi = LinMap::from_fn(c.module(1), c.module(0), |l| {
        let b = l.as_wedge().unwrap();
        Element::term(Label::Unit, Poly::monomial(b.alpha.hadamard(&cfg.e), K::one()))
    });
    c.set_diff(1, psi);
    let mut lc = LComplex { cfg: cfg.clone(), complex: c, kernels: BTreeMap::new() };
    for a in 1..=n {
        let basis = edit(a, kernel_by_multidegree(&kappa::<K>(a, d, cfg))?);
        if basis.is_empty() {
            break;
        }
        let spec = Arc::new(FreeModuleSpec::new(
            basis
                .iter()
                .map(|v| (Label::Kernel(v.free.as_wedge().unwrap().clone()), v.mdeg.clone())),
        ));
        lc.kernels.insert(a, basis.clone());
        lc.complex.set_module(a as i64 + 1, spec.clone());
        let mut cols = Vec::with_capacity(basis.len());
        for v in &basis {
            let u = apply_on_wedges(&v.vector, |b| kos_label(b, cfg));
            cols.push(lc.coords(a - 1, &u)?);
        }
        let mut it = cols.into_iter();
        let map = LinMap::from_fn(spec, lc.complex.module(a as i64), |_| it.next().unwrap());
        lc.complex.set_diff(a as i64 + 1, map);
    }
    Ok(lc)
}

/// The Koszul complex on `x_1, …, x_n`, with `e_τ` in degree `|τ|`.
pub fn koszul_complex<K: Field>(cfg: &SetupConfig) -> ComplexData<K> {
    let n = cfg.n;
    let mut c = ComplexData::new(n, None);
    for k in 0..=n {
        c.set_module(
            k as i64,
            Arc::new(FreeModuleSpec::new(
                IndexSet::full(n)
                    .subsets_of_size(k)
                    .into_iter()
                    .map(|t| (Label::Koszul(t), t.indicator(n))),
            )),
        );
    }
    for k in 1..=n {
        let map = LinMap::from_fn(c.module(k as i64), c.module(k as i64 - 1), |l| {
            let Label::Koszul(t) = l else { unreachable!() };
            koszul_boundary(*t, n)
        });
        c.set_diff(k as i64, map);
    }
    c
}

/// `d(e_τ) = Σ_{t∈τ} ± x_t e_{τ∖t}`.
pub fn koszul_boundary<K: Field>(tau: IndexSet, n: usize) -> Element<K> {
    let mut out = Element::zero();
    for t in tau.iter() {
        let c = Poly::var_pow(n, t, 1).scale(&K::from_i64(koszul_sign(t, tau)));
        out.add_term(Label::Koszul(tau.without(t)), &c);
    }
    out
}

/// `(ψ(f)^α : |α| = d, α ≤ w)`.
pub fn restricted_power_ideal(cfg: &SetupConfig) -> MonomialIdeal {
    MonomialIdeal::new(cfg.n, restricted_exponents(cfg).into_iter().map(|a| a.hadamard(&cfg.e)))
}
