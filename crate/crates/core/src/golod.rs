//! Koszul homology of `R/I` for the restricted power `I`, explicit cycle
//! lifts, the trivial Massey operation, and the Golod resolution of the
//! residue field.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::combinat::{shuffle_sign, ShuffleOrder, SetupConfig};
use crate::complexes::{
    build_l_complex, koszul_boundary, koszul_complex, kos_label, restricted_labels, restricted_power_ideal,
    ComplexData,
};
use crate::corealg::{
    linalg::EchelonSpan, BasisLabel, Element, Error, ExpVec, Field, FreeModuleSpec, IndexSet, Label, LinMap,
    MonomialIdeal, Poly, Result,
};
use crate::dga::wedge_sign;
use crate::oracle::{max_label_mdeg, StrandBox, StrandEngine};
use crate::report::Report;

/// Exponent of `Π_{t∈τ} x_t^{e_t−1}`.
fn z_exp(tau: IndexSet, cfg: &SetupConfig) -> ExpVec {
    let mut v = ExpVec::zeros(cfg.n);
    for t in tau.iter() {
        v.set(t, cfg.e.get(t) - 1);
    }
    v
}

/// `z_τ = Π_{t∈τ} x_t^{e_t−1} e_τ`, the image of `e_τ` under the comparison
/// from the Koszul complex on `x^e` to the one on `x`.
pub fn z<K: Field>(tau: IndexSet, cfg: &SetupConfig) -> Element<K> {
    Element::term(Label::Koszul(tau), Poly::monomial(z_exp(tau, cfg), K::one()))
}

/// `φ^i_j(f_σ) = Σ_{τ⊆σ, |τ|=j} sgn(τ, σ) z_τ ⊗ f_{σ∖τ}`, with labels
/// `Tensor(τ, f_{σ∖τ} ⊗ 1)`.
pub fn phi<K: Field>(j: usize, sigma: IndexSet, cfg: &SetupConfig) -> Result<Element<K>> {
    if j > sigma.len() {
        return Err(Error::InvalidInput(format!("j = {j} exceeds |{sigma}|")));
    }
    let mut out = Element::zero();
    for tau in sigma.subsets_of_size(j) {
        let s = shuffle_sign(ShuffleOrder::SubsetFirst, tau, sigma);
        out.add_term(
            Label::Tensor(tau, Some(BasisLabel::new(sigma.minus(tau), ExpVec::zeros(cfg.n)))),
            &Poly::monomial(z_exp(tau, cfg), K::from_i64(s)),
        );
    }
    Ok(out)
}

fn psi_exp(alpha: &ExpVec, cfg: &SetupConfig) -> ExpVec {
    alpha.hadamard(&cfg.e)
}

/// The cycle `f_σ⊗f^α + Σ_{0<j<i} φ^i_j(f_σ)⊗f^α + ψ(f^α) z_σ` in `K ⊗ A`.
pub fn lift_cycle<K: Field>(sigma: IndexSet, alpha: &ExpVec, cfg: &SetupConfig) -> Result<Element<K>> {
    if alpha.total() as usize + 1 != cfg.d || !sigma.indicator(cfg.n).add(alpha).le(&cfg.w) {
        return Err(Error::InvalidInput(format!(
            "f_{sigma} ⊗ f^{alpha} needs |alpha| = d - 1 and multidegree at most w"
        )));
    }
    let mut out = Element::zero();
    for j in 0..sigma.len() {
        let part = phi::<K>(j, sigma, cfg)?.map_labels(|l| match l {
            Label::Tensor(t, Some(b)) => Some((Label::Tensor(*t, Some(BasisLabel::new(b.sigma, alpha.clone()))), K::one())),
            _ => unreachable!(),
        });
        out.add_assign(&part);
    }
    out.add_term(
        Label::Tensor(sigma, None),
        &Poly::monomial(psi_exp(alpha, cfg).add(&z_exp(sigma, cfg)), K::one()),
    );
    Ok(out)
}

/// Negative control: the lift with its last term negated.
pub fn corrupted_lift<K: Field>(sigma: IndexSet, alpha: &ExpVec, cfg: &SetupConfig) -> Result<Element<K>> {
    let v = lift_cycle::<K>(sigma, alpha, cfg)?;
    Ok(v.map_labels(|l| {
        let s = if matches!(l, Label::Tensor(_, None)) { -1 } else { 1 };
        Some((l.clone(), K::from_i64(s)))
    }))
}

fn tensor_mdeg(tau: IndexSet, a: &Option<BasisLabel>, cfg: &SetupConfig) -> ExpVec {
    let k = tau.indicator(cfg.n);
    match a {
        None => k,
        Some(b) => k.add(&b.ring_mdeg(&cfg.e)),
    }
}

/// `K ⊗ A`, where `A` is `R` in degree 0 and `(⋀^a ⊗ S_{d−1})_w` in degree
/// `a ≥ 1`, with `d_1 = ψ∘κ` and `Kos ⊗ 1` above. The differential is
/// `D(z⊗a) = d_K z ⊗ a − (−1)^{|z|} z ⊗ d_A a`.
pub fn tensor_complex<K: Field>(cfg: &SetupConfig) -> ComplexData<K> {
    let n = cfg.n;
    let mut c = ComplexData::new(n, None);
    let mut by_deg: BTreeMap<i64, Vec<(Label, ExpVec)>> = BTreeMap::new();
    for h in 0..=n {
        for tau in IndexSet::full(n).subsets_of_size(h) {
            by_deg.entry(h as i64).or_default().push((Label::Tensor(tau, None), tensor_mdeg(tau, &None, cfg)));
            for a in 1..=n {
                for b in restricted_labels(a, cfg.d - 1, cfg) {
                    let b = Some(b);
                    let m = tensor_mdeg(tau, &b, cfg);
                    by_deg.entry((h + a) as i64).or_default().push((Label::Tensor(tau, b), m));
                }
            }
        }
    }
    for (k, v) in by_deg {
        c.set_module(k, Arc::new(FreeModuleSpec::new(v)));
    }
    for k in 1..=c.max_degree() {
        let d = LinMap::from_fn(c.module(k), c.module(k - 1), |l| tensor_diff(l, cfg));
        c.set_diff(k, d);
    }
    c
}

fn tensor_diff<K: Field>(l: &Label, cfg: &SetupConfig) -> Element<K> {
    let n = cfg.n;
    let Label::Tensor(tau, a) = l else { panic!("tensor label expected") };
    let mut out = Element::zero();
    for (t, p) in koszul_boundary::<K>(*tau, n).iter() {
        let Label::Koszul(t) = t else { unreachable!() };
        out.add_term(Label::Tensor(*t, a.clone()), p);
    }
    if let Some(b) = a {
        let s = K::from_i64(if tau.len() % 2 == 0 { -1 } else { 1 });
        if b.a() == 1 {
            let r = b.sigma.iter().next().unwrap();
            let mut top = b.alpha.clone();
            top.bump(r, 1);
            out.add_term(Label::Tensor(*tau, None), &Poly::monomial(psi_exp(&top, cfg), s));
        } else {
            for (m, p) in kos_label::<K>(b, cfg).iter() {
                let m = m.as_wedge().unwrap().clone();
                out.add_term(Label::Tensor(*tau, Some(m)), &p.scale(&s));
            }
        }
    }
    out
}

/// A Koszul homology class of `R/I`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyClass<K: Field> {
    pub degree: usize,
    pub rep: Element<K>,
    /// `(σ, α)` when `rep = ψ(f^α) z_σ`; `None` for the unit class.
    pub provenance: Option<BasisLabel>,
}

/// `ψ(f^α) z_σ` reduced mod `I`.
pub fn class_rep<K: Field>(b: &BasisLabel, cfg: &SetupConfig, ideal: &MonomialIdeal) -> Element<K> {
    Element::term(
        Label::Koszul(b.sigma),
        Poly::monomial(psi_exp(&b.alpha, cfg).add(&z_exp(b.sigma, cfg)), K::one()),
    )
    .reduce_mod(ideal)
}

/// The box containing all Koszul homology of `R/I`.
fn koszul_box(cfg: &SetupConfig, ideal: &MonomialIdeal) -> StrandBox {
    StrandBox::new(ideal.lcm().join(&ExpVec::from_slice(&vec![1; cfg.n])))
}

/// `dim H_i((R/I) ⊗ K)` for `i = 0..=n`, by strand homology.
pub fn koszul_homology_dims<K: Field>(cfg: &SetupConfig) -> Result<Vec<usize>> {
    cfg.validate()?;
    let ideal = restricted_power_ideal(cfg);
    let k = koszul_complex::<K>(cfg);
    let mut eng = StrandEngine::new(&k, Some(&ideal))?;
    let mut dims = vec![0; cfg.n + 1];
    for m in koszul_box(cfg, &ideal).points() {
        for (i, h) in eng.homology(&m).into_iter().enumerate() {
            dims[i] += h;
        }
    }
    Ok(dims)
}

/// Positions of the Koszul labels of degree `i` that survive in the strand
/// at `m` over `R/I`.
fn strand_rows(i: usize, m: &ExpVec, n: usize, ideal: &MonomialIdeal) -> Vec<IndexSet> {
    IndexSet::full(n)
        .subsets_of_size(i)
        .into_iter()
        .filter(|t| m.checked_sub(&t.indicator(n)).is_some_and(|r| !ideal.contains(&r)))
        .collect()
}

/// One multidegree of one homological degree: the candidates living there
/// and the admissible choices among them.
struct Slot {
    cands: Vec<BasisLabel>,
    /// Subsets (as candidate indices) of size `dim H` that are independent
    /// modulo boundaries, in lexicographic order.
    choices: Vec<Vec<usize>>,
}

fn slot<K: Field>(
    i: usize,
    m: &ExpVec,
    cands: Vec<BasisLabel>,
    need: usize,
    n: usize,
    ideal: &MonomialIdeal,
) -> Result<Slot> {
    let rows = strand_rows(i, m, n, ideal);
    let pos: BTreeMap<IndexSet, usize> = rows.iter().enumerate().map(|(k, t)| (*t, k)).collect();
    let mut bound = EchelonSpan::<K>::new(rows.len());
    for rho in strand_rows(i + 1, m, n, ideal) {
        let mut v = vec![K::zero(); rows.len()];
        for t in rho.iter() {
            if let Some(&k) = pos.get(&rho.without(t)) {
                v[k] = K::from_i64(crate::combinat::koszul_sign(t, rho));
            }
        }
        bound.insert(&v);
    }
    let unit = |b: &BasisLabel| {
        pos.get(&b.sigma).map(|&k| {
            let mut v = vec![K::zero(); rows.len()];
            v[k] = K::one();
            v
        })
    };
    let cands: Vec<BasisLabel> = cands.into_iter().filter(|b| unit(b).is_some()).collect();
    let mut all = bound.clone();
    for b in &cands {
        all.insert(&unit(b).unwrap());
    }
    if all.rank() - bound.rank() != need {
        return Err(Error::Internal(format!(
            "the classes psi(f^alpha) z_sigma span {} of {need} dimensions of H_{i} at {m}",
            all.rank() - bound.rank()
        )));
    }
    let idx: Vec<usize> = (0..cands.len()).collect();
    let choices = combinations(&idx, need)
        .into_iter()
        .filter(|c| {
            let mut sp = bound.clone();
            c.iter().all(|&j| sp.insert(&unit(&cands[j]).unwrap()))
        })
        .collect();
    Ok(Slot { cands, choices })
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (j, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[j + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Whether `ψ(f^α) z_σ · ψ(f^β) z_τ` is nonzero mod `I`.
fn conflicts(x: &BasisLabel, y: &BasisLabel, cfg: &SetupConfig, ideal: &MonomialIdeal) -> bool {
    if x.sigma.intersects(y.sigma) {
        return false;
    }
    let m = psi_exp(&x.alpha, cfg)
        .add(&z_exp(x.sigma, cfg))
        .add(&psi_exp(&y.alpha, cfg))
        .add(&z_exp(y.sigma, cfg));
    !ideal.contains(&m)
}

/// Node budget of the representative search.
const SEARCH_BUDGET: usize = 1 << 22;

fn search(
    slots: &[Slot],
    at: usize,
    chosen: &mut Vec<BasisLabel>,
    cfg: &SetupConfig,
    ideal: &MonomialIdeal,
    budget: &mut usize,
) -> bool {
    if at == slots.len() {
        return true;
    }
    let s = &slots[at];
    for c in &s.choices {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let picks: Vec<&BasisLabel> = c.iter().map(|&j| &s.cands[j]).collect();
        let clash = picks.iter().enumerate().any(|(a, x)| {
            picks[a + 1..].iter().any(|y| conflicts(x, y, cfg, ideal))
                || chosen.iter().any(|y| conflicts(x, y, cfg, ideal))
        });
        if clash {
            continue;
        }
        let len = chosen.len();
        chosen.extend(picks.into_iter().cloned());
        if search(slots, at + 1, chosen, cfg, ideal, budget) {
            return true;
        }
        chosen.truncate(len);
    }
    false
}

/// A basis of Koszul homology: the unit class and, in each degree `i ≥ 1`,
/// classes `ψ(f^α) z_σ` (`|σ| = i`, `|α| = d − 1`). Within each multidegree
/// the classes are chosen independent modulo boundaries and, across the
/// whole basis, with all pairwise products zero mod `I` whenever such a
/// choice exists; the first such choice in lexicographic order is taken.
/// Fails if the candidates do not span, if the dimensions disagree with the
/// ranks of `L`, or if no product-free choice exists (for `d ≥ 2`).
pub fn koszul_homology<K: Field>(cfg: &SetupConfig) -> Result<Vec<HomologyClass<K>>> {
    let n = cfg.n;
    let ideal = restricted_power_ideal(cfg);
    let dims = koszul_homology_dims::<K>(cfg)?;
    let l = build_l_complex::<K>(cfg)?;
    for (i, &h) in dims.iter().enumerate() {
        let r = l.complex.rank(i as i64);
        if h != r {
            return Err(Error::Internal(format!("dim H_{i} = {h} but L has rank {r} in degree {i}")));
        }
    }
    let mut eng = StrandEngine::new(&koszul_complex::<K>(cfg), Some(&ideal))?;
    let mut slots = Vec::new();
    for i in 1..=n {
        let mut groups: BTreeMap<ExpVec, Vec<BasisLabel>> = BTreeMap::new();
        for b in restricted_labels(i, cfg.d - 1, cfg) {
            groups.entry(b.ring_mdeg(&cfg.e)).or_default().push(b);
        }
        let mut covered = 0;
        for (m, cands) in groups {
            let need = eng.homology(&m).get(i).copied().unwrap_or(0);
            covered += need;
            if need > 0 {
                slots.push(slot::<K>(i, &m, cands, need, n, &ideal)?);
            }
        }
        if covered != dims[i] {
            return Err(Error::Internal(format!(
                "H_{i} has dimension {} but only {covered} lies in multidegrees of the classes psi(f^alpha) z_sigma",
                dims[i]
            )));
        }
    }
    // Most constrained slots first.
    slots.sort_by_key(|s| s.choices.len());
    let mut chosen = Vec::new();
    let product_free = cfg.d < 2 || search(&slots, 0, &mut chosen, cfg, &ideal, &mut SEARCH_BUDGET.clone());
    if !product_free {
        return Err(Error::Internal("no choice of classes psi(f^alpha) z_sigma has vanishing products".into()));
    }
    if cfg.d < 2 {
        chosen = slots.iter().flat_map(|s| s.choices[0].iter().map(|&j| s.cands[j].clone())).collect();
    }
    let mut out = vec![HomologyClass {
        degree: 0,
        rep: Element::basis(Label::Koszul(IndexSet::EMPTY), n),
        provenance: None,
    }];
    chosen.sort_by(|a, b| (a.a(), a).cmp(&(b.a(), b)));
    out.extend(chosen.into_iter().map(|b| HomologyClass {
        degree: b.a(),
        rep: class_rep(&b, cfg, &ideal),
        provenance: Some(b),
    }));
    Ok(out)
}

/// Product in `(R/I) ⊗ K`.
pub fn koszul_mul<K: Field>(u: &Element<K>, v: &Element<K>, ideal: &MonomialIdeal) -> Element<K> {
    let mut out = Element::zero();
    for (l1, p1) in u.iter() {
        let Label::Koszul(s) = l1 else { panic!("Koszul label expected") };
        for (l2, p2) in v.iter() {
            let Label::Koszul(t) = l2 else { panic!("Koszul label expected") };
            let sign = wedge_sign(*s, *t);
            if sign != 0 {
                out.add_term(Label::Koszul(s.union(*t)), &p1.mul(p2).scale(&K::from_i64(sign)));
            }
        }
    }
    out.reduce_mod(ideal)
}

/// The trivial Massey operation on a basis of `H_{≥1}`: `μ(h) = rep`, and
/// `μ ≡ 0` on longer tuples.
#[derive(Clone, Debug)]
pub struct MasseyWitness<K: Field> {
    pub basis: Vec<HomologyClass<K>>,
    pub ideal: MonomialIdeal,
    pub n: usize,
}

impl<K: Field> MasseyWitness<K> {
    pub fn mu(&self, word: &[usize]) -> Element<K> {
        match word {
            [i] => self.basis[*i].rep.clone(),
            _ => Element::zero(),
        }
    }

    /// `d μ(h_1..h_p) − Σ_j \bar{μ(h_1..h_j)} μ(h_{j+1}..h_p)` reduced mod
    /// `I`, where `\bar a = (−1)^{|a|+1} a`.
    pub fn residual(&self, word: &[usize]) -> Element<K> {
        let mut out = Element::zero();
        for (l, p) in self.mu(word).iter() {
            let Label::Koszul(t) = l else { unreachable!() };
            for (l2, q) in koszul_boundary::<K>(*t, self.n).iter() {
                out.add_term(l2.clone(), &p.mul(q));
            }
        }
        for j in 1..word.len() {
            let a = self.mu(&word[..j]);
            let deg: usize = word[..j].iter().map(|&i| self.basis[i].degree + 1).sum::<usize>() - 1;
            let s = K::from_i64(if deg % 2 == 0 { -1 } else { 1 });
            out = out.sub(&koszul_mul(&a.scale(&s), &self.mu(&word[j..]), &self.ideal));
        }
        out.reduce_mod(&self.ideal)
    }
}

/// Checks that every pairwise product of the chosen representatives is
/// identically zero in `(R/I) ⊗ K`, and returns the zero Massey operation.
pub fn check_golod<K: Field>(cfg: &SetupConfig) -> Result<MasseyWitness<K>> {
    if cfg.d < 2 {
        return Err(Error::InvalidConfig("Golodness needs d >= 2".into()));
    }
    let ideal = restricted_power_ideal(cfg);
    let basis: Vec<_> = koszul_homology::<K>(cfg)?.into_iter().filter(|c| c.degree > 0).collect();
    for x in &basis {
        for y in &basis {
            let p = koszul_mul(&x.rep, &y.rep, &ideal);
            if !p.is_zero() {
                return Err(Error::Internal(format!("({}) * ({}) = {p} is nonzero mod I", x.rep, y.rep)));
            }
        }
    }
    Ok(MasseyWitness { basis, ideal, n: cfg.n })
}

/// Coefficients of `(1+t)^n / (1 − Σ_{i≥1} dim H_i t^{i+1})` up to `t^max_deg`.
pub fn poincare_coeffs_from(n: usize, dims: &[usize], max_deg: usize) -> Vec<u64> {
    let mut c = vec![0u64; max_deg + 1];
    for k in 0..=max_deg {
        let mut v = if k <= n { binomial(n, k) } else { 0 };
        for (i, &h) in dims.iter().enumerate().skip(1) {
            if k > i {
                v += h as u64 * c[k - i - 1];
            }
        }
        c[k] = v;
    }
    c
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}

pub fn poincare_coeffs<K: Field>(cfg: &SetupConfig, max_deg: usize) -> Result<Vec<u64>> {
    if cfg.d < 2 {
        return Err(Error::InvalidConfig("the Golod series needs d >= 2".into()));
    }
    Ok(poincare_coeffs_from(cfg.n, &koszul_homology_dims::<K>(cfg)?, max_deg))
}

/// Letters of degree `k` sequences, as indices into `letters`.
fn words(letters: &[(usize, BasisLabel)], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, (deg, _)) in letters.iter().enumerate() {
        if *deg <= k {
            for mut rest in words(letters, k - deg) {
                rest.insert(0, i);
                out.push(rest);
            }
        }
    }
    out
}

/// The Golod resolution of `k` over `R/I`, truncated at `max_deg`: `T_k` is
/// spanned by `e_τ ⊗ v_1 ⊗ … ⊗ v_p` with letters the basis classes of
/// `H_{≥1}`, a letter from `H_i` having degree `i + 1`.
pub fn golod_resolution<K: Field>(cfg: &SetupConfig, max_deg: usize) -> Result<ComplexData<K>> {
    let w = check_golod::<K>(cfg)?;
    if max_deg < 1 {
        return Err(Error::InvalidInput("max_deg must be at least 1".into()));
    }
    let n = cfg.n;
    let letters: Vec<(usize, BasisLabel)> = w
        .basis
        .iter()
        .map(|c| (c.degree + 1, c.provenance.clone().expect("letters come from H_{>=1}")))
        .collect();
    let mut c = ComplexData::new(n, Some(w.ideal.clone()));
    for k in 0..=max_deg {
        let mut entries = Vec::new();
        for h in 0..=n.min(k) {
            for tau in IndexSet::full(n).subsets_of_size(h) {
                for word in words(&letters, k - h) {
                    let bl: Vec<BasisLabel> = word.iter().map(|&i| letters[i].1.clone()).collect();
                    let m = bl.iter().fold(tau.indicator(n), |acc, b| acc.add(&b.ring_mdeg(&cfg.e)));
                    entries.push((Label::Word(tau, bl), m));
                }
            }
        }
        c.set_module(k as i64, Arc::new(FreeModuleSpec::new(entries)));
    }
    let reps: BTreeMap<BasisLabel, Element<K>> = w
        .basis
        .iter()
        .map(|c| (c.provenance.clone().unwrap(), c.rep.clone()))
        .collect();
    for k in 1..=max_deg as i64 {
        let d = LinMap::from_fn(c.module(k), c.module(k - 1), |l| {
            let Label::Word(tau, word) = l else { unreachable!() };
            let mut out = Element::zero();
            for (t, p) in koszul_boundary::<K>(*tau, n).iter() {
                let Label::Koszul(t) = t else { unreachable!() };
                out.add_term(Label::Word(*t, word.clone()), p);
            }
            if let Some((first, rest)) = word.split_first() {
                let s = K::from_i64(if tau.len() % 2 == 0 { 1 } else { -1 });
                let prod = koszul_mul(&Element::basis(Label::Koszul(*tau), n), &reps[first], &w.ideal);
                for (t, p) in prod.iter() {
                    let Label::Koszul(t) = t else { unreachable!() };
                    out.add_term(Label::Word(*t, rest.to_vec()), &p.scale(&s));
                }
            }
            out.reduce_mod(&w.ideal)
        });
        c.set_diff(k, d);
    }
    Ok(c)
}

/// Certifies a truncated Golod resolution: `∂² = 0` mod `I`, minimality,
/// `H_0 = k`, exactness in degrees `1..max_deg−1` on the box, and ranks
/// against the series.
pub fn verify_golod_resolution<K: Field>(
    c: &ComplexData<K>,
    cfg: &SetupConfig,
    bx: Option<StrandBox>,
) -> Result<Report> {
    let top = c.max_degree();
    let mut rep = Report::new(format!("Golod resolution n={} d={} w={} e={} up to degree {top}", cfg.n, cfg.d, cfg.w, cfg.e));
    rep.record("d^2 = 0 mod I", c.basis_size(), c.check_d_squared().map(|(k, l, v)| format!("d_{}(d_{k}({l})) = {v}", k - 1)));
    rep.record(
        "minimality",
        c.basis_size(),
        c.check_minimal(1).map(|(k, l, t)| format!("d_{k}({l}) has a unit on {t}")),
    );
    let bx = bx.unwrap_or_else(|| StrandBox::new(max_label_mdeg(c)));
    let mut eng = StrandEngine::new(c, None)?;
    let mut exact_fail = None;
    let mut h0_fail = None;
    for m in bx.points() {
        let h = eng.homology(&m);
        let want0 = usize::from(m.total() == 0);
        if h0_fail.is_none() && h.first().copied().unwrap_or(0) != want0 {
            h0_fail = Some(format!("dim H_0 at {m} is {}", h[0]));
        }
        if exact_fail.is_none() {
            if let Some(k) = (1..top as usize).find(|&k| h.get(k).copied().unwrap_or(0) != 0) {
                exact_fail = Some(format!("dim H_{k} at {m} is {}", h[k]));
            }
        }
    }
    rep.record("exact in degrees 1..top-1 (box)", bx.len(), exact_fail);
    rep.record("H_0 = k (box)", bx.len(), h0_fail);
    let want = poincare_coeffs::<K>(cfg, top as usize)?;
    let got: Vec<u64> = (0..=top).map(|k| c.rank(k) as u64).collect();
    rep.record(
        "ranks match the Golod series",
        want.len(),
        (want != got).then(|| format!("ranks {got:?}, series {want:?}")),
    );
    rep.note(format!("box upper corner {}", bx.upper));
    Ok(rep)
}

/// Every check of this module for one configuration.
pub fn verify_golod<K: Field>(cfg: &SetupConfig, max_deg: usize) -> Result<Report> {
    let mut rep = Report::new(format!("Golod n={} d={} w={} e={}", cfg.n, cfg.d, cfg.w, cfg.e));
    let t = tensor_complex::<K>(cfg);
    rep.record("tensor complex d^2 = 0", t.basis_size(), t.check_d_squared().map(|(k, l, v)| format!("{k} {l}: {v}")));
    let mut lift_fail = None;
    let mut top_fail = None;
    let mut cases = 0;
    for i in 1..=cfg.n {
        for b in restricted_labels(i, cfg.d - 1, cfg) {
            cases += 1;
            let v = lift_cycle::<K>(b.sigma, &b.alpha, cfg)?;
            let dv = t.apply_diff(&v);
            if lift_fail.is_none() && !dv.is_zero() {
                lift_fail = Some(format!("D(lift of {b}) = {dv}"));
            }
            let top = v.map_labels(|l| match l {
                Label::Tensor(s, None) => Some((Label::Koszul(*s), K::one())),
                _ => None,
            });
            let want = Element::term(
                Label::Koszul(b.sigma),
                Poly::monomial(psi_exp(&b.alpha, cfg).add(&z_exp(b.sigma, cfg)), K::one()),
            );
            if top_fail.is_none() && top != want {
                top_fail = Some(format!("lift of {b} ends in {top}"));
            }
        }
    }
    rep.record("lifts are cycles", cases, lift_fail);
    rep.record("lift ends in psi(f^alpha) z_sigma", cases, top_fail);
    if cfg.d < 2 {
        let dims = koszul_homology_dims::<K>(cfg)?;
        rep.note(format!("d = 1: complete intersection, Koszul homology dims {dims:?}"));
        return Ok(rep);
    }
    let classes = koszul_homology::<K>(cfg);
    rep.record(
        "dim H_i = rank L_i, spanned by psi(f^alpha) z_sigma",
        cfg.n + 1,
        classes.as_ref().err().map(|e| e.to_string()),
    );
    match check_golod::<K>(cfg) {
        Err(e) => rep.record("products of representatives vanish", 0, Some(e.to_string())),
        Ok(w) => {
            let m = w.basis.len();
            rep.record("products of representatives vanish", m * m, None);
            let mut fail = None;
            let mut cases = 0;
            for i in 0..m {
                let mut word = vec![i];
                cases += 1;
                let r = w.residual(&word);
                if fail.is_none() && !r.is_zero() {
                    fail = Some(format!("word {word:?}: {r}"));
                }
                for j in 0..m {
                    word.push(j);
                    cases += 1;
                    let r = w.residual(&word);
                    if fail.is_none() && !r.is_zero() {
                        fail = Some(format!("word {word:?}: {r}"));
                    }
                    word.pop();
                }
            }
            rep.record("Massey equation (words of length 1, 2)", cases, fail);
            let dims: Vec<usize> = (0..=cfg.n).map(|i| w.basis.iter().filter(|c| c.degree == i).count()).collect();
            rep.note(format!("Koszul homology dims (degree >= 1): {:?}", &dims[1..]));
        }
    }
    let res = golod_resolution::<K>(cfg, max_deg)?;
    rep.absorb("", verify_golod_resolution(&res, cfg, None)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::Rational;

    type Q = Rational;

    fn s(v: &[usize]) -> IndexSet {
        IndexSet::from_indices(&v.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    #[test]
    fn phi_examples() {
        let cfg = SetupConfig::full_power(2, 2).unwrap();
        let p: Element<Q> = phi(1, s(&[1, 2]), &cfg).unwrap();
        let lab = |t: &[usize], r: &[usize]| Label::Tensor(s(t), Some(BasisLabel::new(s(r), ExpVec::zeros(2))));
        let mut want = Element::basis(lab(&[1], &[2]), 2);
        want.add_term(lab(&[2], &[1]), &Poly::constant(2, Q::from_i64(-1)));
        assert_eq!(p, want);
        let p: Element<Q> = phi(0, s(&[1, 2]), &cfg).unwrap();
        assert_eq!(p, Element::basis(lab(&[], &[1, 2]), 2));
        let p: Element<Q> = phi(2, s(&[1, 2]), &cfg).unwrap();
        assert_eq!(p, Element::basis(lab(&[1, 2], &[]), 2));
        assert!(phi::<Q>(3, s(&[1, 2]), &cfg).is_err());
    }

    #[test]
    fn lifts_are_cycles_and_corruption_is_caught() {
        for cfg in [
            SetupConfig::full_power(2, 2).unwrap(),
            SetupConfig::standard(3, 3, &[2, 1, 2]).unwrap(),
            SetupConfig::new(2, 3, &[2, 2], &[1, 2], Default::default()).unwrap(),
        ] {
            let t = tensor_complex::<Q>(&cfg);
            assert!(t.check_d_squared().is_none());
            for i in 1..=cfg.n {
                for b in restricted_labels(i, cfg.d - 1, &cfg) {
                    let v = lift_cycle::<Q>(b.sigma, &b.alpha, &cfg).unwrap();
                    assert!(t.apply_diff(&v).is_zero(), "{b}");
                    let bad = corrupted_lift::<Q>(b.sigma, &b.alpha, &cfg).unwrap();
                    assert!(!t.apply_diff(&bad).is_zero(), "{b}");
                }
            }
        }
        let cfg = SetupConfig::full_power(2, 2).unwrap();
        assert!(lift_cycle::<Q>(s(&[1]), &ExpVec::from_slice(&[1, 1]), &cfg).is_err());
    }

    #[test]
    fn homology_of_square_of_maximal_ideal() {
        let cfg = SetupConfig::standard(2, 2, &[2, 2]).unwrap();
        assert_eq!(koszul_homology_dims::<Q>(&cfg).unwrap(), vec![1, 3, 2]);
        let cl = koszul_homology::<Q>(&cfg).unwrap();
        assert_eq!(cl.iter().filter(|c| c.degree == 1).count(), 3);
        assert_eq!(cl.iter().filter(|c| c.degree == 2).count(), 2);
        assert_eq!(poincare_coeffs::<Q>(&cfg, 5).unwrap(), vec![1, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn complete_intersection_dims() {
        let cfg = SetupConfig::standard(3, 1, &[2, 1, 1]).unwrap();
        assert_eq!(koszul_homology_dims::<Q>(&cfg).unwrap(), vec![1, 3, 3, 1]);
        assert!(check_golod::<Q>(&cfg).is_err());
    }

    #[test]
    fn golod_product_example() {
        let cfg = SetupConfig::standard(2, 2, &[2, 2]).unwrap();
        let ideal = restricted_power_ideal(&cfg);
        let a = Element::<Q>::term(Label::Koszul(s(&[1])), Poly::var_pow(2, 0, 1));
        let b = Element::<Q>::term(Label::Koszul(s(&[2])), Poly::var_pow(2, 1, 1));
        assert!(koszul_mul(&a, &b, &ideal).is_zero());
    }

    #[test]
    fn golod_resolution_small() {
        for cfg in [
            SetupConfig::standard(2, 2, &[2, 2]).unwrap(),
            SetupConfig::standard(2, 2, &[1, 1]).unwrap(),
            SetupConfig::new(2, 2, &[2, 2], &[1, 2], Default::default()).unwrap(),
        ] {
            let rep = verify_golod::<Q>(&cfg, 4).unwrap();
            assert!(rep.passed(), "{rep}");
        }
        let c = golod_resolution::<Q>(&SetupConfig::standard(2, 2, &[2, 2]).unwrap(), 3).unwrap();
        assert_eq!(c.ranks(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn first_candidates_can_have_nonzero_products() {
        let cfg = SetupConfig::standard(3, 3, &[2, 2, 2]).unwrap();
        let ideal = restricted_power_ideal(&cfg);
        let b1 = BasisLabel::new(s(&[1]), ExpVec::from_slice(&[0, 0, 2]));
        let b2 = BasisLabel::new(s(&[2]), ExpVec::from_slice(&[0, 0, 2]));
        let p = koszul_mul(&class_rep::<Q>(&b2, &cfg, &ideal), &class_rep::<Q>(&b1, &cfg, &ideal), &ideal);
        let x3 = |k| Poly::<Q>::var_pow(3, 2, k);
        assert_eq!(p, Element::term(Label::Koszul(s(&[1, 2])), x3(4).neg()));
        // It is the boundary of x3^3 e123 mod I.
        let bd = Element::term(Label::Koszul(s(&[1, 2, 3])), x3(3));
        let kc = koszul_complex::<Q>(&cfg);
        assert_eq!(kc.apply_diff(&bd).reduce_mod(&ideal), p.neg());
        let w = check_golod::<Q>(&cfg).unwrap();
        assert_eq!(w.basis.len(), 7 + 9 + 3);
    }
}
