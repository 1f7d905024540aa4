//! The scaled de Rham homotopy, the special deformation retract of `X`
//! (with differential κ) onto the modules of `L`, and the perturbation that
//! turns on `Kos ⊗ 1`.

use std::sync::Arc;

use crate::combinat::SetupConfig;
use crate::complexes::{
    apply_on_wedges, build_l_complex, build_x, kappa_label, kos_label, restricted_labels, restricted_module,
    ComplexData, LComplex,
};
use crate::corealg::{BasisLabel, Element, Error, Field, FreeModuleSpec, Label, LinMap, Poly, Result};
use crate::report::Report;

/// `h(f_σ ⊗ f^α) = (a+b)^{-1} Σ_j α_j (f_j ∧ f_σ) ⊗ f^{α−ε_j}` on one label.
pub fn derham_label<K: Field>(l: &BasisLabel, n: usize) -> Element<K> {
    let mut out = Element::zero();
    let deg = (l.a() + l.b()) as i64;
    if deg == 0 {
        return out;
    }
    let scale = K::from_i64(deg).inv().expect("a + b is invertible");
    for j in 0..n {
        let aj = l.alpha.get(j);
        if aj == 0 || l.sigma.contains(j) {
            continue;
        }
        let sign = if l.sigma.count_below(j) % 2 == 0 { 1 } else { -1 };
        let mut alpha = l.alpha.clone();
        alpha.set(j, aj - 1);
        let c = K::from_i64(sign * i64::from(aj)) * scale.clone();
        out.add_term(Label::wedge(l.sigma.with(j), alpha), &Poly::constant(n, c));
    }
    out
}

pub fn derham<K: Field>(x: &Element<K>, n: usize) -> Element<K> {
    apply_on_wedges(x, |b| derham_label(b, n))
}

/// `h : (⋀^a ⊗ S_b)_w → (⋀^{a+1} ⊗ S_{b−1})_w`.
pub fn derham_h<K: Field>(a: usize, b: usize, cfg: &SetupConfig) -> Result<LinMap<K>> {
    if a + b == 0 {
        return Err(Error::InvalidInput("the homotopy needs a + b >= 1".into()));
    }
    let src = Arc::new(restricted_module(a, b, cfg));
    let tgt = Arc::new(if b == 0 { FreeModuleSpec::empty() } else { restricted_module(a + 1, b - 1, cfg) });
    Ok(LinMap::from_fn(src, tgt, |l| derham_label(l.as_wedge().unwrap(), cfg.n)))
}

/// `h² = 0` and `κh + hκ = 1` on every restricted piece `(a, b) ≠ (0, 0)`.
pub fn verify_homotopy<K: Field>(cfg: &SetupConfig) -> Report {
    let n = cfg.n;
    let mut rep = Report::new(format!("de Rham homotopy n={} d={} w={}", n, cfg.d, cfg.w));
    let kap = |y: &Element<K>| apply_on_wedges(y, |b| kappa_label(b, n));
    let (mut sq, mut id) = (None, None);
    let mut cases = 0;
    for a in 0..=n {
        for b in 0..=cfg.w.total() as usize {
            if a + b == 0 {
                continue;
            }
            for l in restricted_labels(a, b, cfg) {
                cases += 1;
                let x = Element::<K>::basis(Label::Wedge(l.clone()), n);
                let hx = derham(&x, n);
                let hh = derham(&hx, n);
                if sq.is_none() && !hh.is_zero() {
                    sq = Some(format!("h(h({l})) = {hh}"));
                }
                let v = kap(&hx).add(&derham(&kap(&x), n));
                if id.is_none() && v != x {
                    id = Some(format!("(kh + hk)({l}) = {v}"));
                }
            }
        }
    }
    rep.record("h^2 = 0", cases, sq);
    rep.record("kappa h + h kappa = 1", cases, id);
    rep
}

/// Differentials, inclusion, projection and homotopy of a deformation
/// retract, each as one map on the total (all degrees) modules.
#[derive(Clone, Debug)]
pub struct RetractMaps<K: Field> {
    pub df: LinMap<K>,
    pub dg: LinMap<K>,
    pub i: LinMap<K>,
    pub p: LinMap<K>,
    pub h: LinMap<K>,
}

/// The unperturbed retract together with the complexes it connects.
#[derive(Clone, Debug)]
pub struct RetractData<K: Field> {
    pub cfg: SetupConfig,
    /// `X_d^w`; the retract uses only its κ part.
    pub x: ComplexData<K>,
    pub l: LComplex<K>,
    pub maps: RetractMaps<K>,
}

/// Output of the perturbation lemma.
#[derive(Clone, Debug)]
pub struct PerturbedRetract<K: Field> {
    pub i_inf: LinMap<K>,
    pub p_inf: LinMap<K>,
    pub h_inf: LinMap<K>,
    pub df_inf: LinMap<K>,
    pub dg_inf: LinMap<K>,
    /// `Σ_k (δh)^k δ`.
    pub a: LinMap<K>,
    pub delta: LinMap<K>,
    /// Number of nonzero terms in the series for `a`.
    pub iterations: usize,
}

impl<K: Field> PerturbedRetract<K> {
    pub fn maps(&self) -> RetractMaps<K> {
        RetractMaps {
            df: self.df_inf.clone(),
            dg: self.dg_inf.clone(),
            i: self.i_inf.clone(),
            p: self.p_inf.clone(),
            h: self.h_inf.clone(),
        }
    }
}

fn is_corner(b: &BasisLabel) -> bool {
    b.sigma.is_empty() && b.alpha.total() == 0
}

/// Builds the retract of `(X, κ)` onto the modules of `L` with zero
/// differential: `i = −h` on `L^a` and `1 ↦ 1⊗1` on `R`, `p = −κ` on the
/// last column and `1⊗1 ↦ 1` at the corner, homotopy `−h`.
pub fn unperturbed_retract<K: Field>(cfg: &SetupConfig) -> Result<RetractData<K>> {
    let l = build_l_complex::<K>(cfg)?;
    let x = build_x::<K>(cfg);
    let n = cfg.n;
    let d = cfg.d;
    let f = x.total_module();
    let g = l.complex.total_module();
    let df = LinMap::from_fn(f.clone(), f.clone(), |lab| {
        let b = lab.as_wedge().unwrap();
        if b.b() + 1 == d {
            Element::zero()
        } else {
            kappa_label(b, n)
        }
    });
    let dg = LinMap::zero(g.clone(), g.clone());
    let i = LinMap::from_fn(g.clone(), f.clone(), |lab| match lab {
        Label::Unit => Element::basis(corner_label(n), n),
        _ => derham(&l.embed_label(lab), n).neg(),
    });
    let mut err = None;
    let p = LinMap::from_fn(f.clone(), g.clone(), |lab| {
        let b = lab.as_wedge().unwrap();
        if is_corner(b) {
            Element::basis(Label::Unit, n)
        } else if b.b() + 1 == d && b.a() >= 1 {
            let u = kappa_label::<K>(b, n).neg();
            l.coords(b.a() - 1, &u).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Element::zero()
            })
        } else {
            Element::zero()
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let h = LinMap::from_fn(f.clone(), f, |lab| derham_label(lab.as_wedge().unwrap(), n).neg());
    let r = RetractData { cfg: cfg.clone(), x, l, maps: RetractMaps { df, dg, i, p, h } };
    let rep = verify_retract(&r.maps);
    if let Some(c) = rep.failures().next() {
        return Err(Error::Internal(format!(
            "unperturbed retract: {} fails: {}",
            c.name,
            c.counterexample.clone().unwrap_or_default()
        )));
    }
    Ok(r)
}

fn corner_label(n: usize) -> Label {
    Label::wedge(Default::default(), crate::corealg::ExpVec::zeros(n))
}

/// `sign · (Kos ⊗ 1)` on the total module of `X`.
pub fn kos_perturbation<K: Field>(r: &RetractData<K>, sign: i64) -> LinMap<K> {
    let f = r.maps.df.source().clone();
    let s = K::from_i64(sign);
    LinMap::from_fn(f.clone(), f, |lab| kos_label::<K>(lab.as_wedge().unwrap(), &r.cfg).scale(&s))
}

/// The perturbation lemma: `A = Σ_k (δh)^k δ` (a finite sum) and the
/// perturbed maps `i + hAi`, `p + pAh`, `h + hAh`, `d_F + δ`, `d_G + pAi`.
pub fn perturb<K: Field>(r: &RetractData<K>, delta: &LinMap<K>) -> Result<PerturbedRetract<K>> {
    let m = &r.maps;
    let df_inf = m.df.add(delta);
    if let Some((l, v)) = df_inf.compose(&df_inf).first_nonzero() {
        return Err(Error::InvalidInput(format!("(d + delta)^2 is nonzero on {l}: {v}")));
    }
    let bound = r.cfg.n + r.cfg.d;
    let dh = delta.compose(&m.h);
    let mut term = delta.clone();
    let mut a = delta.clone();
    let mut iterations = usize::from(!delta.is_zero());
    loop {
        term = dh.compose(&term);
        if term.is_zero() {
            break;
        }
        iterations += 1;
        if iterations > bound {
            return Err(Error::Internal(format!(
                "perturbation series did not terminate within {bound} steps"
            )));
        }
        a = a.add(&term);
    }
    let ai = a.compose(&m.i);
    let i_inf = m.i.add(&m.h.compose(&ai));
    let p_inf = m.p.add(&m.p.compose(&a).compose(&m.h));
    let h_inf = m.h.add(&m.h.compose(&a).compose(&m.h));
    let dg_inf = m.dg.add(&m.p.compose(&ai));
    Ok(PerturbedRetract { i_inf, p_inf, h_inf, df_inf, dg_inf, a, delta: delta.clone(), iterations })
}

/// The retract and its perturbation by `δ = −(Kos ⊗ 1)`.
pub fn transfer_data<K: Field>(cfg: &SetupConfig) -> Result<(RetractData<K>, PerturbedRetract<K>)> {
    let r = unperturbed_retract::<K>(cfg)?;
    let delta = kos_perturbation(&r, -1);
    let pr = perturb(&r, &delta)?;
    Ok((r, pr))
}

fn diff_msg<K: Field>(d: Option<(Label, Element<K>, Element<K>)>) -> Option<String> {
    d.map(|(l, a, b)| format!("on {l}: {a} vs {b}"))
}

fn zero_msg<K: Field>(m: &LinMap<K>) -> Option<String> {
    m.first_nonzero().map(|(l, v)| format!("on {l}: {v}"))
}

/// Checks the retract identities and that both differentials square to
/// zero and `i`, `p` are chain maps.
pub fn verify_retract<K: Field>(m: &RetractMaps<K>) -> Report {
    let mut rep = Report::new("special deformation retract");
    let nf = m.df.source().rank();
    let ng = m.dg.source().rank();
    let n = m
        .df
        .source()
        .labels()
        .iter()
        .chain(m.dg.source().labels())
        .find_map(|l| m.df.source().mdeg_of(l).or(m.dg.source().mdeg_of(l)))
        .map_or(0, |d| d.len());
    let id_g = LinMap::identity(m.dg.source().clone(), n);
    let id_f = LinMap::identity(m.df.source().clone(), n);
    rep.record("p i = 1", ng, diff_msg(m.p.compose(&m.i).first_difference(&id_g)));
    let lhs = m.i.compose(&m.p).sub(&id_f);
    let rhs = m.df.compose(&m.h).add(&m.h.compose(&m.df));
    rep.record("i p - 1 = d h + h d", nf, diff_msg(lhs.first_difference(&rhs)));
    rep.record("h i = 0", ng, zero_msg(&m.h.compose(&m.i)));
    rep.record("p h = 0", nf, zero_msg(&m.p.compose(&m.h)));
    rep.record("h h = 0", nf, zero_msg(&m.h.compose(&m.h)));
    rep.record("dF^2 = 0", nf, zero_msg(&m.df.compose(&m.df)));
    rep.record("dG^2 = 0", ng, zero_msg(&m.dg.compose(&m.dg)));
    rep.record(
        "i is a chain map",
        ng,
        diff_msg(m.df.compose(&m.i).first_difference(&m.i.compose(&m.dg))),
    );
    rep.record(
        "p is a chain map",
        nf,
        diff_msg(m.dg.compose(&m.p).first_difference(&m.p.compose(&m.df))),
    );
    rep
}

/// `i∞` on a degree ≥ 1 label of `L` from the closed form
/// `−(1 − h(Kos ⊗ 1))^{-1} h`, summed directly on elements.
pub fn closed_form_i_inf<K: Field>(r: &RetractData<K>, lab: &Label) -> Element<K> {
    let n = r.cfg.n;
    let mut term = derham(&r.l.embed_label(lab), n).neg();
    let mut out = term.clone();
    for _ in 0..=(n + r.cfg.d) {
        term = derham(&apply_on_wedges(&term, |b| kos_label(b, &r.cfg)), n);
        if term.is_zero() {
            break;
        }
        out.add_assign(&term);
    }
    out
}

/// Checks the perturbed data against the independently built `L` and the
/// closed form of `i∞`.
pub fn verify_transfer<K: Field>(r: &RetractData<K>, pr: &PerturbedRetract<K>) -> Report {
    let mut rep = verify_retract(&pr.maps());
    rep.title = format!(
        "perturbed retract n={} d={} w={} e={}",
        r.cfg.n, r.cfg.d, r.cfg.w, r.cfg.e
    );
    let dl = r.l.complex.total_diff();
    rep.record("dG_inf = L differential", dl.source().rank(), diff_msg(pr.dg_inf.first_difference(&dl)));
    let g = pr.i_inf.source().clone();
    let mut bad = None;
    for lab in g.labels().iter().filter(|l| **l != Label::Unit) {
        let want = closed_form_i_inf(r, lab);
        let got = pr.i_inf.col_of(lab).unwrap();
        if *got != want {
            bad = Some(format!("on {lab}: {got} vs {want}"));
            break;
        }
    }
    rep.record("i_inf closed form", g.rank(), bad);
    rep
}

/// Negative control: the perturbed data with `dF∞` assembled as `d_F − δ`.
pub fn corrupted_transfer<K: Field>(r: &RetractData<K>, pr: &PerturbedRetract<K>) -> PerturbedRetract<K> {
    let mut bad = pr.clone();
    bad.df_inf = r.maps.df.sub(&pr.delta);
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::{ExpVec, IndexSet, Rational};

    type Q = Rational;

    fn lab(sig: &[usize], alpha: &[u32]) -> BasisLabel {
        BasisLabel::new(
            IndexSet::from_indices(&sig.iter().map(|i| i - 1).collect::<Vec<_>>()),
            ExpVec::from_slice(alpha),
        )
    }

    #[test]
    fn derham_examples() {
        let h: Element<Q> = derham_label(&lab(&[1], &[0, 1]), 2);
        assert_eq!(
            h,
            Element::term(Label::Wedge(lab(&[1, 2], &[0, 0])), Poly::constant(2, Rational::new(-1, 2)))
        );
        assert!(derham_label::<Q>(&lab(&[1, 2], &[0, 0]), 2).is_zero());
        let h: Element<Q> = derham_label(&lab(&[], &[2, 0]), 2);
        assert_eq!(h, Element::basis(Label::Wedge(lab(&[1], &[1, 0])), 2));
    }

    fn small_grid() -> Vec<SetupConfig> {
        let mut v = vec![
            SetupConfig::standard(1, 1, &[1]).unwrap(),
            SetupConfig::full_power(2, 2).unwrap(),
            SetupConfig::standard(2, 2, &[1, 1]).unwrap(),
            SetupConfig::standard(3, 2, &[2, 1, 1]).unwrap(),
            SetupConfig::full_power(3, 1).unwrap(),
            SetupConfig::new(2, 3, &[2, 2], &[1, 2], Default::default()).unwrap(),
        ];
        v.push(SetupConfig::standard(3, 3, &[3, 1, 1]).unwrap());
        v
    }

    #[test]
    fn homotopy_identities() {
        for cfg in small_grid() {
            for a in 0..=cfg.n {
                for b in 0..=cfg.d {
                    if a + b == 0 {
                        continue;
                    }
                    for l in crate::complexes::restricted_labels(a, b, &cfg) {
                        let x = Element::<Q>::basis(Label::Wedge(l), cfg.n);
                        let hx = derham(&x, cfg.n);
                        assert!(derham(&hx, cfg.n).is_zero());
                        let k = |y: &Element<Q>| apply_on_wedges(y, |b| kappa_label(b, cfg.n));
                        assert_eq!(k(&hx).add(&derham(&k(&x), cfg.n)), x);
                    }
                }
            }
        }
    }

    #[test]
    fn retract_and_perturbation() {
        for cfg in small_grid() {
            let (r, pr) = transfer_data::<Q>(&cfg).unwrap();
            assert!(verify_retract(&r.maps).passed());
            let rep = verify_transfer(&r, &pr);
            assert!(rep.passed(), "{cfg:?}\n{rep}");
            assert!(pr.iterations <= cfg.n + cfg.d);
        }
    }

    #[test]
    fn zero_perturbation_is_identity() {
        let cfg = SetupConfig::full_power(2, 2).unwrap();
        let r = unperturbed_retract::<Q>(&cfg).unwrap();
        let z = kos_perturbation(&r, 0);
        let pr = perturb(&r, &z).unwrap();
        assert_eq!(pr.iterations, 0);
        assert!(pr.i_inf.first_difference(&r.maps.i).is_none());
        assert!(pr.p_inf.first_difference(&r.maps.p).is_none());
        assert!(pr.h_inf.first_difference(&r.maps.h).is_none());
        assert!(verify_retract(&pr.maps()).passed());
    }

    #[test]
    fn corrupted_fixture_fails() {
        let cfg = SetupConfig::full_power(2, 2).unwrap();
        let (r, pr) = transfer_data::<Q>(&cfg).unwrap();
        let bad = corrupted_transfer(&r, &pr);
        let rep = verify_retract(&bad.maps());
        assert!(!rep.check("i p - 1 = d h + h d").unwrap().passed);
    }

    #[test]
    fn degree_one_differential_is_psi() {
        let cfg = SetupConfig::new(2, 2, &[2, 2], &[1, 2], Default::default()).unwrap();
        let (_, pr) = transfer_data::<Q>(&cfg).unwrap();
        let v = pr.dg_inf.col_of(&Label::Wedge(lab(&[], &[1, 1]))).unwrap();
        let mut m = ExpVec::zeros(2);
        m.set(0, 1);
        m.set(1, 2);
        assert_eq!(*v, Element::term(Label::Unit, Poly::monomial(m, Rational::from_i64(1))));
    }
}
