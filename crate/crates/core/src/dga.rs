//! Products: the restricted symmetric product, the product on `X`, and the
//! product transferred to `L` along the perturbed retract. Checkers for the
//! DG-algebra axioms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::combinat::SetupConfig;
use crate::complexes::ComplexData;
use crate::corealg::{
    BasisLabel, Element, Error, ExpVec, Field, FreeModuleSpec, IndexSet, Label, Poly, Result,
};
use crate::report::Report;
use crate::transfer::{derham_label, PerturbedRetract, RetractData};

/// `f^α · f^β = ψ(f^{α+β−min(α+β,w)}) f^{min(α+β,w)}`, returned as the
/// clamped exponent and the monomial coefficient. `None` when the clamped
/// degree reaches `cutoff`.
fn sym_parts(alpha: &ExpVec, beta: &ExpVec, cfg: &SetupConfig, cutoff: Option<usize>) -> Option<(ExpVec, ExpVec)> {
    let sum = alpha.add(beta);
    let clamped = sum.meet(&cfg.w);
    if cutoff.is_some_and(|c| clamped.total() as usize >= c) {
        return None;
    }
    let over = sum.checked_sub(&clamped).expect("clamp is below the sum");
    Some((clamped, over.hadamard(&cfg.e)))
}

/// The product of `1⊗f^α` and `1⊗f^β` in `(S_{<d})_w`.
pub fn sym_product<K: Field>(alpha: &ExpVec, beta: &ExpVec, cfg: &SetupConfig) -> Result<Element<K>> {
    if !alpha.le(&cfg.w) || !beta.le(&cfg.w) {
        return Err(Error::InvalidInput(format!("{alpha} or {beta} exceeds w = {}", cfg.w)));
    }
    Ok(match sym_parts(alpha, beta, cfg, Some(cfg.d)) {
        None => Element::zero(),
        Some((c, m)) => Element::term(Label::wedge(IndexSet::EMPTY, c), Poly::monomial(m, K::one())),
    })
}

/// Sign of `f_σ ∧ f_τ = ± f_{σ∪τ}`, or 0 when they meet.
pub fn wedge_sign(sigma: IndexSet, tau: IndexSet) -> i64 {
    if sigma.intersects(tau) {
        return 0;
    }
    let inv: usize = sigma.iter().map(|s| tau.count_below(s)).sum();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The product of basis labels in `⋀ ⊗ S_w`, truncated to symmetric degree
/// below `cutoff` when given.
pub fn restricted_product<K: Field>(
    x: &BasisLabel,
    y: &BasisLabel,
    cfg: &SetupConfig,
    cutoff: Option<usize>,
) -> Element<K> {
    let both = x.sigma.union(y.sigma);
    if both.iter().any(|i| x.alpha.get(i) + y.alpha.get(i) >= cfg.w.get(i)) {
        return Element::zero();
    }
    let s = wedge_sign(x.sigma, y.sigma);
    if s == 0 {
        return Element::zero();
    }
    match sym_parts(&x.alpha, &y.alpha, cfg, cutoff) {
        None => Element::zero(),
        Some((c, m)) => Element::term(Label::wedge(both, c), Poly::monomial(m, K::from_i64(s))),
    }
}

/// The product on `X_d^w`.
pub fn x_product<K: Field>(x: &BasisLabel, y: &BasisLabel, cfg: &SetupConfig) -> Element<K> {
    restricted_product(x, y, cfg, Some(cfg.d))
}

/// Bilinear extension of a product on wedge labels.
pub fn mul_wedges<K: Field>(
    u: &Element<K>,
    v: &Element<K>,
    mut f: impl FnMut(&BasisLabel, &BasisLabel) -> Element<K>,
) -> Element<K> {
    let mut out = Element::zero();
    for (l1, p1) in u.iter() {
        let b1 = l1.as_wedge().expect("wedge label");
        for (l2, p2) in v.iter() {
            let b2 = l2.as_wedge().expect("wedge label");
            let c = f(b1, b2);
            if !c.is_zero() {
                out.add_scaled(&c, &p1.mul(p2));
            }
        }
    }
    out
}

pub fn x_mul<K: Field>(u: &Element<K>, v: &Element<K>, cfg: &SetupConfig) -> Element<K> {
    mul_wedges(u, v, |a, b| x_product(a, b, cfg))
}

/// `p∞(i∞x · i∞y)`.
pub fn transferred_product<K: Field>(
    x: &Element<K>,
    y: &Element<K>,
    cfg: &SetupConfig,
    pr: &PerturbedRetract<K>,
) -> Element<K> {
    let ix = pr.i_inf.apply(x);
    let iy = pr.i_inf.apply(y);
    pr.p_inf.apply(&x_mul(&ix, &iy, cfg))
}

/// Products of all pairs of basis labels of a complex.
#[derive(Clone, Debug)]
pub struct ProductTable<K: Field> {
    pub basis: Arc<FreeModuleSpec>,
    pub unit: Label,
    entries: Vec<Vec<Element<K>>>,
}

impl<K: Field> ProductTable<K> {
    pub fn build(c: &ComplexData<K>, unit: Label, mut f: impl FnMut(&Label, &Label) -> Element<K>) -> Self {
        let basis = c.total_module();
        let entries = basis
            .labels()
            .iter()
            .map(|x| basis.labels().iter().map(|y| f(x, y)).collect())
            .collect();
        ProductTable { basis, unit, entries }
    }

    pub fn entry(&self, x: &Label, y: &Label) -> &Element<K> {
        let i = self.basis.position(x).expect("basis label");
        let j = self.basis.position(y).expect("basis label");
        &self.entries[i][j]
    }

    pub fn set_entry(&mut self, x: &Label, y: &Label, v: Element<K>) {
        let i = self.basis.position(x).expect("basis label");
        let j = self.basis.position(y).expect("basis label");
        self.entries[i][j] = v;
    }

    /// Every nonzero entry as `(x, y, x·y)`.
    pub fn nonzero_entries(&self) -> Vec<(Label, Label, Element<K>)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.push((self.basis.label(i).clone(), self.basis.label(j).clone(), v.clone()));
                }
            }
        }
        out
    }

    pub fn mul(&self, u: &Element<K>, v: &Element<K>) -> Element<K> {
        let mut out = Element::zero();
        for (l1, p1) in u.iter() {
            let i = self.basis.position(l1).expect("basis label");
            for (l2, p2) in v.iter() {
                let j = self.basis.position(l2).expect("basis label");
                let c = &self.entries[i][j];
                if !c.is_zero() {
                    out.add_scaled(c, &p1.mul(p2));
                }
            }
        }
        out
    }
}

/// The product table of `X_d^w`.
pub fn x_table<K: Field>(x: &ComplexData<K>, cfg: &SetupConfig) -> ProductTable<K> {
    let unit = Label::wedge(IndexSet::EMPTY, ExpVec::zeros(cfg.n));
    ProductTable::build(x, unit, |a, b| x_product(a.as_wedge().unwrap(), b.as_wedge().unwrap(), cfg))
}

/// The transferred product table on `L`.
pub fn transferred_table<K: Field>(r: &RetractData<K>, pr: &PerturbedRetract<K>) -> ProductTable<K> {
    let images: HashMap<Label, Element<K>> = pr
        .i_inf
        .columns()
        .map(|(l, v)| (l.clone(), v.clone()))
        .collect();
    ProductTable::build(&r.l.complex, Label::Unit, |a, b| {
        pr.p_inf.apply(&x_mul(&images[a], &images[b], &r.cfg))
    })
}

fn sign_of_degree(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `d(xy) = d(x)y + (−1)^{|x|} x d(y)` over all basis pairs.
pub fn check_leibniz<K: Field>(c: &ComplexData<K>, prod: &ProductTable<K>) -> Report {
    let mut rep = Report::new("Leibniz rule");
    let labels = prod.basis.labels();
    let n = c.nvars();
    let diffs: Vec<Element<K>> = labels.iter().map(|l| c.apply_diff(&Element::basis(l.clone(), n))).collect();
    let mut fail = None;
    let mut cases = 0;
    'outer: for (i, x) in labels.iter().enumerate() {
        let sx = K::from_i64(sign_of_degree(c.degree_of(x).unwrap()));
        for (j, y) in labels.iter().enumerate() {
            cases += 1;
            let lhs = c.apply_diff(&prod.entries[i][j]);
            let mut rhs = prod.mul(&diffs[i], &Element::basis(y.clone(), n));
            rhs.add_assign(&prod.mul(&Element::basis(x.clone(), n), &diffs[j]).scale(&sx));
            let rhs = c.reduce(&rhs);
            if lhs != rhs {
                fail = Some(format!("x = {x}, y = {y}: d(xy) = {lhs}, d(x)y +- x d(y) = {rhs}"));
                break 'outer;
            }
        }
    }
    rep.record("d(xy) = d(x)y + (-1)^|x| x d(y)", cases, fail);
    rep
}

/// Associativity, graded commutativity, odd squares and the unit law.
pub fn check_algebra_laws<K: Field>(c: &ComplexData<K>, prod: &ProductTable<K>) -> Report {
    let mut rep = Report::new("algebra laws");
    let labels = prod.basis.labels();
    let n = c.nvars();
    let deg = |l: &Label| c.degree_of(l).unwrap();
    let mut fail = None;
    let mut cases = 0;
    'assoc: for (i, x) in labels.iter().enumerate() {
        for (j, y) in labels.iter().enumerate() {
            let xy = &prod.entries[i][j];
            for (k, z) in labels.iter().enumerate() {
                cases += 1;
                let left = prod.mul(xy, &Element::basis(z.clone(), n));
                let right = prod.mul(&Element::basis(x.clone(), n), &prod.entries[j][k]);
                if left != right {
                    fail = Some(format!("({x} {y}) {z} = {left} but {x} ({y} {z}) = {right}"));
                    break 'assoc;
                }
            }
        }
    }
    rep.record("associativity", cases, fail);
    let mut fail = None;
    let mut odd_fail = None;
    for (i, x) in labels.iter().enumerate() {
        for (j, y) in labels.iter().enumerate() {
            let s = K::from_i64(sign_of_degree(deg(x) * deg(y)));
            if fail.is_none() && prod.entries[i][j] != prod.entries[j][i].scale(&s) {
                fail = Some(format!("{x} {y} = {} but {y} {x} = {}", prod.entries[i][j], prod.entries[j][i]));
            }
        }
        if odd_fail.is_none() && deg(x) % 2 != 0 && !prod.entries[i][i].is_zero() {
            odd_fail = Some(format!("{x}^2 = {}", prod.entries[i][i]));
        }
    }
    rep.record("graded commutativity", labels.len() * labels.len(), fail);
    rep.record("odd squares vanish", labels.len(), odd_fail);
    let u = Element::basis(prod.unit.clone(), n);
    let mut fail = None;
    for x in labels {
        let v = Element::basis(x.clone(), n);
        let (a, b) = (prod.mul(&u, &v), prod.mul(&v, &u));
        if a != v || b != v {
            fail = Some(format!("1 {x} = {a}, {x} 1 = {b}"));
            break;
        }
    }
    rep.record("unit", labels.len(), fail);
    rep
}

/// `(d∞h∞ + h∞d∞)(i∞x · i∞y) = 0` for all basis pairs of `L`, that is,
/// whether `i∞` is strictly multiplicative. This fails for some `n = 3`
/// configurations even though the transferred product is a DG-algebra, so
/// the report records every failing pair.
pub fn check_side_condition<K: Field>(r: &RetractData<K>, pr: &PerturbedRetract<K>) -> Report {
    let mut rep = Report::new("homotopy side condition");
    let g = pr.i_inf.source().clone();
    let mut first = None;
    let mut bad = 0;
    let mut cases = 0;
    for x in g.labels() {
        for y in g.labels() {
            cases += 1;
            let prod = x_mul(pr.i_inf.col_of(x).unwrap(), pr.i_inf.col_of(y).unwrap(), &r.cfg);
            let v = pr
                .df_inf
                .apply(&pr.h_inf.apply(&prod))
                .add(&pr.h_inf.apply(&pr.df_inf.apply(&prod)));
            if !v.is_zero() {
                bad += 1;
                first.get_or_insert_with(|| format!("x = {x}, y = {y}: {v}"));
            }
        }
    }
    if bad > 0 {
        rep.note(format!("{bad} of {cases} pairs violate the side condition"));
    }
    rep.record("(d h + h d)(i x . i y) = 0", cases, first);
    rep
}

/// Overflow data of a pair: `T = {i : α_i + β_i > w_i}` with
/// `α'_i = w_i − β_i` and `β'_i = w_i − α_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizWitness {
    pub overflow: IndexSet,
    pub alpha_primed: ExpVec,
    pub beta_primed: ExpVec,
}

impl LeibnizWitness {
    pub fn new(alpha: &ExpVec, beta: &ExpVec, w: &ExpVec) -> Self {
        let n = w.len();
        let mut overflow = IndexSet::EMPTY;
        let mut ap = alpha.clone();
        let mut bp = beta.clone();
        for i in 0..n {
            if alpha.get(i) + beta.get(i) > w.get(i) {
                overflow = overflow.with(i);
                ap.set(i, w.get(i) - beta.get(i));
                bp.set(i, w.get(i) - alpha.get(i));
            }
        }
        LeibnizWitness { overflow, alpha_primed: ap, beta_primed: bp }
    }

    /// `α'_i < α_i` and `β'_i < β_i` on the overflow set.
    pub fn is_valid(&self, alpha: &ExpVec, beta: &ExpVec) -> bool {
        self.overflow
            .iter()
            .all(|i| self.alpha_primed.get(i) < alpha.get(i) && self.beta_primed.get(i) < beta.get(i))
    }
}

/// `(1 − |T|) z + Σ_{i∈T} x_i^{e_i(γ_i − γ'_i)} (ρ, γ − (γ_i − γ'_i) ε_i)`.
fn witness_factor<K: Field>(
    z: &BasisLabel,
    primed: &ExpVec,
    t: IndexSet,
    cfg: &SetupConfig,
) -> Element<K> {
    let n = cfg.n;
    let mut out = Element::term(Label::Wedge(z.clone()), Poly::constant(n, K::from_i64(1 - t.len() as i64)));
    for i in t.iter() {
        let drop = z.alpha.get(i) - primed.get(i);
        let mut g = z.alpha.clone();
        g.set(i, primed.get(i));
        out.add_term(
            Label::wedge(z.sigma, g),
            &Poly::var_pow(n, i, drop * cfg.e.get(i)),
        );
    }
    out
}

/// `(r+s+a+b) h(xy)` with `h` taken in degree `r+s+a+b`: differentiates the
/// unclamped exponent `α+β` and keeps `ψ(f^{α+β−min(α+β,w)})` as the
/// coefficient. Zero when `xy = 0`.
pub fn nominal_derham<K: Field>(x: &BasisLabel, y: &BasisLabel, cfg: &SetupConfig) -> Element<K> {
    let n = cfg.n;
    let xy: Element<K> = restricted_product(x, y, cfg, None);
    if xy.is_zero() {
        return xy;
    }
    let sum = x.alpha.add(&y.alpha);
    let over = sum.checked_sub(&sum.meet(&cfg.w)).unwrap();
    let whole = BasisLabel::new(x.sigma.union(y.sigma), sum);
    let deg = K::from_i64((whole.a() + whole.b()) as i64);
    let sign = K::from_i64(wedge_sign(x.sigma, y.sigma));
    derham_label::<K>(&whole, n)
        .scale(&(deg * sign))
        .map_labels(|l| {
            let b = l.as_wedge().unwrap();
            let alpha = b.alpha.checked_sub(&over).expect("overflow sits below each derivative");
            Some((Label::wedge(b.sigma, alpha), K::one()))
        })
        .mul_poly(&Poly::monomial(over.hadamard(&cfg.e), K::one()))
}

/// Verifies, for every pair of basis labels of `⋀ ⊗ S_w` with total
/// symmetric degree below `d` each, the identity
/// `(r+a) h(x)·Y + (−1)^r (s+b) X·h(y) = (r+s+a+b) h(xy)`,
/// where `X`, `Y` are the overflow-corrected factors and the right side is
/// [`nominal_derham`].
pub fn check_generalized_leibniz<K: Field>(cfg: &SetupConfig) -> Report {
    let mut rep = Report::new(format!("generalized Leibniz n={} d={} w={}", cfg.n, cfg.d, cfg.w));
    let mut labels = Vec::new();
    for a in 0..=cfg.n {
        for b in 0..cfg.d {
            labels.extend(crate::complexes::restricted_labels(a, b, cfg));
        }
    }
    let n = cfg.n;
    let prod = |u: &Element<K>, v: &Element<K>| mul_wedges(u, v, |p, q| restricted_product(p, q, cfg, None));
    let mut cases = 0;
    let mut vacuous = 0;
    let mut witness_fail = None;
    let mut fail = None;
    'outer: for x in &labels {
        for y in &labels {
            let xy: Element<K> = restricted_product(x, y, cfg, None);
            if xy.is_zero() {
                vacuous += 1;
                continue;
            }
            cases += 1;
            let wt = LeibnizWitness::new(&x.alpha, &y.alpha, &cfg.w);
            if witness_fail.is_none() && !wt.is_valid(&x.alpha, &y.alpha) {
                witness_fail = Some(format!("x = {x}, y = {y}: {wt:?}"));
            }
            let (r, a, s, b) = (x.a() as i64, x.b() as i64, y.a() as i64, y.b() as i64);
            let hx = derham_label::<K>(x, n).scale(&K::from_i64(r + a));
            let hy = derham_label::<K>(y, n).scale(&K::from_i64(s + b));
            let yf = witness_factor(y, &wt.beta_primed, wt.overflow, cfg);
            let xf = witness_factor(x, &wt.alpha_primed, wt.overflow, cfg);
            let mut lhs = prod(&hx, &yf);
            lhs.add_assign(&prod(&xf, &hy).scale(&K::from_i64(sign_of_degree(r))));
            let rhs = nominal_derham::<K>(x, y, cfg);
            if lhs != rhs {
                fail = Some(format!("x = {x}, y = {y}: {lhs} vs {rhs}"));
                break 'outer;
            }
        }
    }
    rep.record("witness exponents", cases, witness_fail);
    rep.record("witness identity", cases, fail);
    rep.note(format!("{vacuous} pairs with zero product are vacuous"));
    rep
}

/// Applies `x_i ↦ x_{π(i)}`, `f_i ↦ f_{π(i)}` to an element of `X`.
pub fn permute_wedges<K: Field>(u: &Element<K>, perm: &[usize]) -> Element<K> {
    let mut out = Element::zero();
    for (l, p) in u.iter() {
        let b = l.as_wedge().expect("wedge label");
        let (s, sign) = b.sigma.permuted(perm);
        out.add_term(
            Label::wedge(s, b.alpha.permuted(perm)),
            &p.permuted(perm).scale(&K::from_i64(sign)),
        );
    }
    out
}

/// The same permutation on an element of `L`, re-expressed in the kernel
/// bases.
pub fn permute_l<K: Field>(r: &RetractData<K>, u: &Element<K>, perm: &[usize]) -> Result<Element<K>> {
    let mut out = Element::zero();
    for (l, p) in u.iter() {
        let v = match l {
            Label::Unit => Element::basis(Label::Unit, r.cfg.n),
            _ => {
                let a = crate::complexes::LComplex::<K>::wedge_degree(l).unwrap();
                let moved = permute_wedges(&r.l.embed_label(l), perm);
                r.l.coords(a, &moved)?
            }
        };
        out.add_scaled(&v, &p.permuted(perm));
    }
    Ok(out)
}

/// `π(x·y) = π(x)·π(y)` for every adjacent transposition `π` and basis pair.
/// Only meaningful when `w` is constant and `e = (1, …, 1)`.
pub fn check_equivariance<K: Field>(r: &RetractData<K>, prod: &ProductTable<K>) -> Report {
    let mut rep = Report::new("symmetric group equivariance");
    let n = r.cfg.n;
    let labels = prod.basis.labels();
    let mut fail = None;
    let mut cases = 0;
    'outer: for t in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(t, t + 1);
        let moved: Vec<Element<K>> = match labels
            .iter()
            .map(|l| permute_l(r, &Element::basis(l.clone(), n), &perm))
            .collect::<Result<_>>()
        {
            Ok(v) => v,
            Err(e) => {
                fail = Some(e.to_string());
                break;
            }
        };
        for (i, x) in labels.iter().enumerate() {
            for (j, y) in labels.iter().enumerate() {
                cases += 1;
                let lhs = match permute_l(r, &prod.entries[i][j], &perm) {
                    Ok(v) => v,
                    Err(e) => {
                        fail = Some(e.to_string());
                        break 'outer;
                    }
                };
                let rhs = prod.mul(&moved[i], &moved[j]);
                if lhs != rhs {
                    fail = Some(format!("swap {}<->{}, x = {x}, y = {y}: {lhs} vs {rhs}", t + 1, t + 2));
                    break 'outer;
                }
            }
        }
    }
    rep.record("pi(xy) = pi(x) pi(y)", cases, fail);
    rep
}

/// True when the symmetric group acts on the configuration.
pub fn is_symmetric(cfg: &SetupConfig) -> bool {
    cfg.e.iter().all(|x| x == 1) && cfg.w.iter().all(|x| x == cfg.w.get(0))
}

/// Negative control: flips the sign of the first entry whose differential
/// is nonzero.
pub fn corrupt_table<K: Field>(c: &ComplexData<K>, prod: &mut ProductTable<K>) -> Option<(Label, Label)> {
    for (x, y, v) in prod.nonzero_entries() {
        if !c.apply_diff(&v).is_zero() {
            prod.set_entry(&x, &y, v.neg());
            return Some((x, y));
        }
    }
    None
}

/// Runs every product check for one configuration. The side condition is
/// reported as a note.
pub fn verify_dga<K: Field>(r: &RetractData<K>, pr: &PerturbedRetract<K>) -> Report {
    let cfg = &r.cfg;
    let mut rep = Report::new(format!("dga n={} d={} w={} e={}", cfg.n, cfg.d, cfg.w, cfg.e));
    let xt = x_table(&r.x, cfg);
    rep.absorb("X: ", check_leibniz(&r.x, &xt));
    rep.absorb("X: ", check_algebra_laws(&r.x, &xt));
    let lt = transferred_table(r, pr);
    rep.absorb("L: ", check_leibniz(&r.l.complex, &lt));
    rep.absorb("L: ", check_algebra_laws(&r.l.complex, &lt));
    let side = check_side_condition(r, pr);
    rep.note(match side.failures().next() {
        None => "i_inf is strictly multiplicative".to_string(),
        Some(c) => format!(
            "i_inf is not strictly multiplicative ({}); e.g. {}",
            side.notes.join("; "),
            c.counterexample.as_deref().unwrap_or("")
        ),
    });
    if is_symmetric(cfg) {
        rep.absorb("L: ", check_equivariance(r, &lt));
    }
    rep.absorb("", check_generalized_leibniz::<K>(cfg));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::Rational;
    use crate::transfer::transfer_data;

    type Q = Rational;

    fn ev(v: &[u32]) -> ExpVec {
        ExpVec::from_slice(v)
    }

    fn lab(sig: &[usize], alpha: &[u32]) -> BasisLabel {
        BasisLabel::new(
            IndexSet::from_indices(&sig.iter().map(|i| i - 1).collect::<Vec<_>>()),
            ev(alpha),
        )
    }

    #[test]
    fn sym_product_examples() {
        let cfg = SetupConfig::standard(2, 2, &[1, 1]).unwrap();
        let p: Element<Q> = sym_product(&ev(&[1, 0]), &ev(&[1, 0]), &cfg).unwrap();
        assert_eq!(p, Element::term(Label::Wedge(lab(&[], &[1, 0])), Poly::var_pow(2, 0, 1)));
        let cfg = SetupConfig::standard(2, 3, &[2, 1]).unwrap();
        let p: Element<Q> = sym_product(&ev(&[1, 0]), &ev(&[0, 1]), &cfg).unwrap();
        assert_eq!(p, Element::basis(Label::Wedge(lab(&[], &[1, 1])), 2));
        assert!(sym_product::<Q>(&ev(&[1, 1]), &ev(&[1, 0]), &cfg).unwrap().is_zero());
        assert!(sym_product::<Q>(&ev(&[3, 0]), &ev(&[0, 0]), &cfg).is_err());
    }

    #[test]
    fn x_product_examples() {
        let cfg = SetupConfig::standard(2, 2, &[1, 1]).unwrap();
        assert!(x_product::<Q>(&lab(&[1], &[0, 1]), &lab(&[2], &[1, 0]), &cfg).is_zero());
        let cfg = SetupConfig::full_power(2, 3).unwrap();
        let p: Element<Q> = x_product(&lab(&[], &[1, 0]), &lab(&[], &[0, 1]), &cfg);
        assert_eq!(p, Element::basis(Label::Wedge(lab(&[], &[1, 1])), 2));
        let a: Element<Q> = x_product(&lab(&[1], &[0, 0]), &lab(&[2], &[0, 0]), &cfg);
        let b: Element<Q> = x_product(&lab(&[2], &[0, 0]), &lab(&[1], &[0, 0]), &cfg);
        assert_eq!(a, Element::basis(Label::Wedge(lab(&[1, 2], &[0, 0])), 2));
        assert_eq!(b, a.neg());
    }

    #[test]
    fn witness_example() {
        let wt = LeibnizWitness::new(&ev(&[1, 0]), &ev(&[1, 0]), &ev(&[1, 1]));
        assert_eq!(wt.overflow, IndexSet::from_indices(&[0]));
        assert_eq!(wt.alpha_primed, ev(&[0, 0]));
        assert_eq!(wt.beta_primed, ev(&[0, 0]));
        let cfg = SetupConfig::standard(2, 2, &[1, 1]).unwrap();
        let v: Element<Q> = nominal_derham(&lab(&[], &[1, 0]), &lab(&[2], &[1, 0]), &cfg);
        let x1 = Poly::var_pow(2, 0, 1);
        assert_eq!(v, Element::term(Label::Wedge(lab(&[1, 2], &[0, 0])), x1.scale(&Q::from_i64(2))));
        let rep = check_generalized_leibniz::<Q>(&cfg);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn all_product_laws_small() {
        for cfg in [
            SetupConfig::full_power(2, 2).unwrap(),
            SetupConfig::standard(2, 2, &[1, 1]).unwrap(),
            SetupConfig::standard(3, 2, &[2, 1, 1]).unwrap(),
            SetupConfig::new(2, 3, &[2, 2], &[1, 2], Default::default()).unwrap(),
        ] {
            let (r, pr) = transfer_data::<Q>(&cfg).unwrap();
            let rep = verify_dga(&r, &pr);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn corrupted_table_fails_leibniz() {
        let cfg = SetupConfig::full_power(2, 2).unwrap();
        let (r, pr) = transfer_data::<Q>(&cfg).unwrap();
        let mut t = transferred_table(&r, &pr);
        assert!(corrupt_table(&r.l.complex, &mut t).is_some());
        assert!(!check_leibniz(&r.l.complex, &t).passed());
    }

    #[test]
    fn side_condition_counterexample() {
        let cfg = SetupConfig::standard(3, 2, &[1, 1, 1]).unwrap();
        let (r, pr) = transfer_data::<Q>(&cfg).unwrap();
        assert!(!check_side_condition(&r, &pr).passed());
        assert!(verify_dga(&r, &pr).passed());
        let x = Element::basis(Label::Wedge(lab(&[], &[1, 1, 0])), 3);
        let y = Element::basis(Label::Wedge(lab(&[], &[0, 1, 1])), 3);
        let ix = pr.i_inf.apply(&x);
        let iy = pr.i_inf.apply(&y);
        let z = x_mul(&ix, &iy, &cfg);
        let back = pr.i_inf.apply(&transferred_product(&x, &y, &cfg, &pr));
        assert_ne!(z, back);
        let cfg = SetupConfig::standard(2, 3, &[2, 2]).unwrap();
        let (r, pr) = transfer_data::<Q>(&cfg).unwrap();
        assert!(check_side_condition(&r, &pr).passed());
    }
}
