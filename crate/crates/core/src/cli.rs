//! The `rpower` command line: argument parsing, field dispatch, named
//! parameter grids, and text/JSON reports.
//!
//! Exit codes: 0 all checks pass, 1 some check fails, 2 bad input,
//! 3 internal invariant breach.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::combinat::{hook_ssyt, restricted_exponents, FieldCfg, SetupConfig};
use crate::complexes::build_l_complex;
use crate::corealg::{monomial_string, BasisLabel, Element, Error, ExpVec, Field, Fp, IndexSet, Label, Rational, Result};
use crate::dga::{self, corrupt_table, transferred_table, x_product};
use crate::golod;
use crate::oracle::{betti_table, verify_resolution, BettiTable, StrandBox};
use crate::report::Report;
use crate::transfer::{self, corrupted_transfer, transfer_data, verify_homotopy, verify_transfer};

/// Primes with a compiled-in `Fp` instantiation.
pub const SUPPORTED_PRIMES: [u64; 7] = [7, 11, 13, 17, 31, 101, 32003];

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "rpower", version, about = "Resolutions, DG structure and Golod data of restricted powers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CfgArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Comma vector; defaults to (d, …, d).
    #[arg(long)]
    pub w: Option<String>,
    /// Comma vector; defaults to (1, …, 1).
    #[arg(long)]
    pub e: Option<String>,
    /// `q` or `fp:<p>`.
    #[arg(long, default_value = "q")]
    pub field: String,
    /// Upper corner of the strand box, as a comma vector.
    #[arg(long = "box")]
    pub bx: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Restricted exponent vectors and the generators of the ideal.
    Simplex(CfgArgs),
    /// Builds the minimal free resolution.
    Resolve(CfgArgs),
    /// Runs a property suite on one configuration or a named grid.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Named grid: small, resolution, algebra, golod.
        #[arg(long)]
        grid: Option<String>,
        /// Run on a deliberately broken fixture instead.
        #[arg(long, value_enum)]
        fixture: Option<Fixture>,
        /// Top degree of the Golod resolution.
        #[arg(long, default_value_t = 5)]
        max_deg: usize,
        #[command(flatten)]
        cfg: CfgArgs,
    },
    /// Transferred product of two basis elements `f[σ]*m[α]` (or `1`).
    Product {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[command(flatten)]
        cfg: CfgArgs,
    },
    /// Koszul homology, Golodness and the resolution of the residue field.
    Golod {
        #[arg(long, default_value_t = 5)]
        max_deg: usize,
        #[command(flatten)]
        cfg: CfgArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Resolution,
    Retract,
    Dga,
    Golod,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    Corrupt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    pub degree: i64,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    /// `entries[r][c]`, polynomials as text.
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    None,
    Simplex {
        exponents: Vec<ExpVec>,
        generators: Vec<String>,
    },
    Resolution {
        ideal: String,
        ranks: Vec<usize>,
        betti: BettiTable,
        /// Hook tableaux indexing the generators, by homological degree.
        tableaux: Vec<(usize, Vec<String>)>,
        differentials: Vec<Matrix>,
    },
    Product {
        /// `L` or `X`.
        carrier: String,
        x: String,
        y: String,
        terms: Vec<Term>,
    },
    Golod {
        homology_dims: Vec<usize>,
        representatives: Vec<String>,
        products_vanish: bool,
        t_ranks: Vec<usize>,
        poincare: Vec<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub config: Option<SetupConfig>,
    pub reports: Vec<Report>,
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u64)>>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("rpower {} :: {}\n", self.version, self.command);
        if let Some(c) = &self.config {
            let _ = writeln!(s, "config: n={} d={} w={} e={} field={}", c.n, c.d, c.w, c.e, c.field);
        }
        match &self.payload {
            Payload::None => {}
            Payload::Simplex { exponents, generators } => {
                let _ = writeln!(s, "{} exponent vectors", exponents.len());
                for (a, g) in exponents.iter().zip(generators) {
                    let _ = writeln!(s, "  {a}  {g}");
                }
            }
            Payload::Resolution { ideal, ranks, betti, tableaux, differentials } => {
                let _ = writeln!(s, "ideal: {ideal}");
                let _ = writeln!(s, "ranks: {ranks:?}");
                let _ = writeln!(s, "graded Betti numbers (degree, multidegree, count):");
                for (k, m, c) in &betti.graded {
                    let _ = writeln!(s, "  {k} {m} {c}");
                }
                for (k, t) in tableaux {
                    let _ = writeln!(s, "tableaux in degree {k}: {}", t.join(" "));
                }
                for m in differentials {
                    let _ = writeln!(s, "d_{}: {} x {}", m.degree, m.rows.len(), m.cols.len());
                }
            }
            Payload::Product { carrier, x, y, terms } => {
                let _ = writeln!(s, "{x} * {y} in {carrier}:");
                if terms.is_empty() {
                    let _ = writeln!(s, "  0");
                }
                for t in terms {
                    let _ = writeln!(s, "  ({}) {}", t.coefficient, t.label);
                }
            }
            Payload::Golod { homology_dims, representatives, products_vanish, t_ranks, poincare } => {
                let _ = writeln!(s, "Koszul homology dims: {homology_dims:?}");
                let _ = writeln!(s, "representatives: {}", representatives.join(", "));
                let verdict = if *products_vanish { "pass" } else { "fail" };
                let _ = writeln!(s, "products of representatives vanish: {verdict}");
                let _ = writeln!(s, "Golod resolution ranks: {t_ranks:?}");
                let _ = writeln!(s, "Poincare series coefficients: {poincare:?}");
            }
        }
        for r in &self.reports {
            s.push_str(&r.to_string());
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                let _ = writeln!(s, "time {k}: {v} ms");
            }
        }
        let _ = writeln!(s, "{}", if self.passed() { "RESULT: PASS" } else { "RESULT: FAIL" });
        s
    }
}

/// Exit code of an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidConfig(_) | Error::InvalidInput(_) => 2,
        _ => 3,
    }
}

fn parse_vec(s: &str, what: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidInput(format!("bad {what} entry `{t}`"))))
        .collect()
}

impl CfgArgs {
    pub fn config(&self) -> Result<SetupConfig> {
        let n = self.n.ok_or_else(|| Error::InvalidInput("--n is required".into()))?;
        let d = self.d.ok_or_else(|| Error::InvalidInput("--d is required".into()))?;
        let w = match &self.w {
            Some(w) => parse_vec(w, "w")?,
            None => vec![d as u32; n],
        };
        let e = match &self.e {
            Some(e) => parse_vec(e, "e")?,
            None => vec![1; n],
        };
        SetupConfig::new(n, d, &w, &e, FieldCfg::parse(&self.field)?)
    }

    pub fn strand_box(&self, n: usize) -> Result<Option<StrandBox>> {
        let Some(b) = &self.bx else { return Ok(None) };
        let v = parse_vec(b, "box")?;
        if v.len() != n {
            return Err(Error::InvalidInput(format!("--box has length {}, expected {n}", v.len())));
        }
        Ok(Some(StrandBox::new(ExpVec::from_slice(&v))))
    }
}

/// Named configuration grids.
pub fn grid(name: &str) -> Option<Vec<SetupConfig>> {
    let mut out = Vec::new();
    let mut push = |n: usize, d: usize, w: &[u32], e: &[u32]| {
        if let Ok(c) = SetupConfig::new(n, d, w, e, FieldCfg::Rationals) {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    };
    let mixed: &[&[u32]] = &[&[2, 1], &[3, 1], &[3, 1, 1], &[2, 1, 1], &[2, 2, 1], &[3, 2, 1], &[2, 1, 1, 1], &[2, 2, 1, 1], &[3, 1, 1, 1]];
    let (ns, ds, mixed_ok): (std::ops::RangeInclusive<usize>, std::ops::RangeInclusive<usize>, fn(&[u32]) -> bool) =
        match name {
            "small" => (1..=3, 1..=2, |w| w.len() <= 3 && w.iter().sum::<u32>() <= 4),
            "resolution" => (1..=4, 1..=4, |_| true),
            "algebra" => (1..=3, 1..=3, |w| w.len() <= 3),
            "golod" => (1..=3, 2..=3, |w| w.len() <= 3),
            _ => return None,
        };
    for n in ns {
        for d in ds.clone() {
            let ones = vec![1; n];
            push(n, d, &vec![d as u32; n], &ones);
            push(n, d, &ones, &ones);
            for w in mixed.iter().filter(|w| w.len() == n && mixed_ok(w)) {
                push(n, d, w, &ones);
            }
            if n == 2 {
                push(n, d, &[d as u32, d as u32], &[1, 2]);
            }
        }
    }
    Some(out)
}

fn elem_terms<K: Field>(v: &Element<K>) -> Vec<Term> {
    v.iter().map(|(l, p)| Term { label: l.to_string(), coefficient: p.to_string() }).collect()
}

/// Parses `f[i1,...]*m[a1,...,an]` (1-based indices) or `1`.
pub fn parse_basis(s: &str, n: usize) -> Result<Option<BasisLabel>> {
    let bad = || Error::InvalidInput(format!("cannot parse `{s}`; expected f[i,...]*m[a1,...,an] or 1"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "1" {
        return Ok(None);
    }
    let (f, m) = t.split_once('*').ok_or_else(bad)?;
    let inner = |x: &str, p: &str| x.strip_prefix(p).and_then(|x| x.strip_suffix(']')).map(str::to_string);
    let f = inner(f, "f[").ok_or_else(bad)?;
    let m = inner(m, "m[").ok_or_else(bad)?;
    let mut idx = Vec::new();
    if !f.is_empty() {
        for i in f.split(',') {
            let i: usize = i.parse().map_err(|_| bad())?;
            if i == 0 || i > n || idx.contains(&(i - 1)) {
                return Err(bad());
            }
            idx.push(i - 1);
        }
    }
    let alpha = parse_vec(&m, "exponent")?;
    if alpha.len() != n {
        return Err(Error::InvalidInput(format!("`{s}` has {} exponents, expected {n}", alpha.len())));
    }
    Ok(Some(BasisLabel::new(IndexSet::from_indices(&idx), ExpVec::from_slice(&alpha))))
}

macro_rules! dispatch {
    ($cfg:expr, $func:ident ( $($arg:expr),* )) => {
        match $cfg.field {
            FieldCfg::Rationals => $func::<Rational>($($arg),*),
            FieldCfg::PrimeField { p: 7 } => $func::<Fp<7>>($($arg),*),
            FieldCfg::PrimeField { p: 11 } => $func::<Fp<11>>($($arg),*),
            FieldCfg::PrimeField { p: 13 } => $func::<Fp<13>>($($arg),*),
            FieldCfg::PrimeField { p: 17 } => $func::<Fp<17>>($($arg),*),
            FieldCfg::PrimeField { p: 31 } => $func::<Fp<31>>($($arg),*),
            FieldCfg::PrimeField { p: 101 } => $func::<Fp<101>>($($arg),*),
            FieldCfg::PrimeField { p: 32003 } => $func::<Fp<32003>>($($arg),*),
            FieldCfg::PrimeField { p } => Err(Error::InvalidConfig(format!(
                "fp:{p} is not compiled in; use q or one of {SUPPORTED_PRIMES:?}"
            ))),
        }
    };
}

pub fn cmd_simplex(cfg: &SetupConfig) -> Payload {
    let exponents = restricted_exponents(cfg);
    let generators = exponents.iter().map(|a| monomial_string(&a.hadamard(&cfg.e))).collect();
    Payload::Simplex { exponents, generators }
}

fn resolve_with<K: Field>(cfg: &SetupConfig, bx: Option<StrandBox>) -> Result<(Vec<Report>, Payload)> {
    let l = build_l_complex::<K>(cfg)?;
    let c = &l.complex;
    let bx = bx.unwrap_or_else(|| StrandBox::default_for(c, cfg));
    let ranks = c.ranks();
    let mut rep = Report::new("tableau bases");
    let mut tableaux = Vec::new();
    let mut bad = None;
    for k in 1..ranks.len() {
        let t: Vec<String> = hook_ssyt(k - 1, cfg.d, cfg).iter().map(|t| t.to_string()).collect();
        if bad.is_none() && t.len() != ranks[k] {
            bad = Some(format!("{} tableaux but rank {} in degree {k}", t.len(), ranks[k]));
        }
        tableaux.push((k, t));
    }
    rep.record("tableau count = rank", ranks.len().saturating_sub(1), bad);
    let mut differentials = Vec::new();
    for k in 1..=c.max_degree() {
        let d = c.diff(k);
        let rows: Vec<String> = d.target().labels().iter().map(|l| l.to_string()).collect();
        let cols: Vec<String> = d.source().labels().iter().map(|l| l.to_string()).collect();
        let mut entries = vec![vec!["0".to_string(); cols.len()]; rows.len()];
        for (j, (_, col)) in d.columns().enumerate() {
            for (t, p) in col.iter() {
                let r = d.target().position(t).expect("entry in target");
                entries[r][j] = p.to_string();
            }
        }
        differentials.push(Matrix { degree: k, rows, cols, entries });
    }
    let ideal = crate::complexes::restricted_power_ideal(cfg).to_string();
    Ok((vec![verify_resolution(c, cfg, &bx), rep], Payload::Resolution { ideal, ranks, betti: betti_table(c), tableaux, differentials }))
}

fn verify_with<K: Field>(
    suite: Suite,
    cfg: &SetupConfig,
    fixture: Option<Fixture>,
    bx: Option<StrandBox>,
    max_deg: usize,
) -> Result<Vec<Report>> {
    let corrupt = fixture == Some(Fixture::Corrupt);
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Resolution {
        let l = build_l_complex::<K>(cfg)?;
        let b = bx.clone().unwrap_or_else(|| StrandBox::default_for(&l.complex, cfg));
        let c = if corrupt {
            let top = l.complex.max_degree();
            let victim = l.complex.module(top).label(0).clone();
            l.complex.without_label(&victim)
        } else {
            l.complex.clone()
        };
        out.push(verify_resolution(&c, cfg, &b));
    }
    let needs_transfer = all || matches!(suite, Suite::Retract | Suite::Dga);
    let td = if needs_transfer { Some(transfer_data::<K>(cfg)?) } else { None };
    if all || suite == Suite::Retract {
        let (r, pr) = td.as_ref().unwrap();
        out.push(verify_homotopy::<K>(cfg));
        let mut base = transfer::verify_retract(&r.maps);
        base.title = format!("unperturbed retract n={} d={} w={} e={}", cfg.n, cfg.d, cfg.w, cfg.e);
        out.push(base);
        let pr = if corrupt { corrupted_transfer(r, pr) } else { pr.clone() };
        out.push(verify_transfer(r, &pr));
    }
    if all || suite == Suite::Dga {
        let (r, pr) = td.as_ref().unwrap();
        if corrupt {
            let mut t = transferred_table(r, pr);
            let hit = corrupt_table(&r.l.complex, &mut t);
            let mut rep = dga::check_leibniz(&r.l.complex, &t);
            rep.title = "Leibniz rule (sign-flipped product table)".into();
            if let Some((x, y)) = hit {
                rep.note(format!("flipped the sign of {x} * {y}"));
            }
            out.push(rep);
        } else {
            out.push(dga::verify_dga(r, pr));
        }
    }
    if all || suite == Suite::Golod {
        if cfg.d < 2 {
            let mut rep = Report::new(format!("Golod n={} d={} w={}", cfg.n, cfg.d, cfg.w));
            rep.note("skipped: d = 1 is a complete intersection");
            out.push(rep);
        } else if corrupt {
            let t = golod::tensor_complex::<K>(cfg);
            let mut rep = Report::new("cycle lifts (last term negated)");
            let mut fail = None;
            let mut cases = 0;
            for i in 1..=cfg.n {
                for b in crate::complexes::restricted_labels(i, cfg.d - 1, cfg) {
                    cases += 1;
                    let v = golod::corrupted_lift::<K>(b.sigma, &b.alpha, cfg)?;
                    let dv = t.apply_diff(&v);
                    if fail.is_none() && !dv.is_zero() {
                        fail = Some(format!("D(lift of {b}) = {dv}"));
                    }
                }
            }
            rep.record("lifts are cycles", cases, fail);
            out.push(rep);
        } else {
            out.push(golod::verify_golod::<K>(cfg, max_deg)?);
        }
    }
    Ok(out)
}

fn product_with<K: Field>(cfg: &SetupConfig, xs: &str, ys: &str) -> Result<Payload> {
    let n = cfg.n;
    let (x, y) = (parse_basis(xs, n)?, parse_basis(ys, n)?);
    let (r, pr) = transfer_data::<K>(cfg)?;
    let g = pr.i_inf.source().clone();
    let in_l = |b: &Option<BasisLabel>| -> Option<Label> {
        let l = match b {
            None => Label::Unit,
            Some(b) if b.sigma.is_empty() => Label::Wedge(b.clone()),
            Some(b) => Label::Kernel(b.clone()),
        };
        g.contains(&l).then_some(l)
    };
    if let (Some(lx), Some(ly)) = (in_l(&x), in_l(&y)) {
        let v = dga::transferred_product(&Element::basis(lx, n), &Element::basis(ly, n), cfg, &pr);
        return Ok(Payload::Product { carrier: "L".into(), x: xs.into(), y: ys.into(), terms: elem_terms(&v) });
    }
    let f = r.x.total_module();
    let in_x = |b: &Option<BasisLabel>| {
        let b = b.clone().unwrap_or_else(|| BasisLabel::new(IndexSet::EMPTY, ExpVec::zeros(n)));
        f.contains(&Label::Wedge(b.clone())).then_some(b)
    };
    match (in_x(&x), in_x(&y)) {
        (Some(bx), Some(by)) => {
            let v: Element<K> = x_product(&bx, &by, cfg);
            Ok(Payload::Product { carrier: "X".into(), x: xs.into(), y: ys.into(), terms: elem_terms(&v) })
        }
        _ => Err(Error::InvalidInput(format!("{xs} and {ys} are not both basis elements of L or of X"))),
    }
}

fn golod_with<K: Field>(cfg: &SetupConfig, max_deg: usize) -> Result<(Vec<Report>, Payload)> {
    if cfg.d < 2 {
        return Err(Error::InvalidConfig("golod needs d >= 2".into()));
    }
    let dims = golod::koszul_homology_dims::<K>(cfg)?;
    let (representatives, products_vanish) = match golod::check_golod::<K>(cfg) {
        Ok(w) => (w.basis.iter().map(|c| c.rep.to_string()).collect(), true),
        Err(Error::Internal(_)) => (Vec::new(), false),
        Err(e) => return Err(e),
    };
    let rep = golod::verify_golod::<K>(cfg, max_deg)?;
    let t_ranks = if products_vanish { golod::golod_resolution::<K>(cfg, max_deg)?.ranks() } else { Vec::new() };
    let poincare = golod::poincare_coeffs::<K>(cfg, max_deg)?;
    Ok((vec![rep], Payload::Golod { homology_dims: dims, representatives, products_vanish, t_ranks, poincare }))
}

/// Runs a parsed command.
pub fn run(cli: &Cli, echo: String) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport {
        command: echo,
        version: VERSION.to_string(),
        config: None,
        reports: Vec::new(),
        payload: Payload::None,
        timings_ms: None,
    };
    match &cli.command {
        Command::Simplex(a) => {
            let cfg = a.config()?;
            report.payload = cmd_simplex(&cfg);
            report.config = Some(cfg);
        }
        Command::Resolve(a) => {
            let cfg = a.config()?;
            let bx = a.strand_box(cfg.n)?;
            let (reps, payload) = dispatch!(cfg, resolve_with(&cfg, bx))?;
            report.reports = reps;
            report.payload = payload;
            report.config = Some(cfg);
        }
        Command::Verify { suite, grid: g, fixture, max_deg, cfg } => {
            let cfgs = match g {
                Some(name) => grid(name).ok_or_else(|| {
                    Error::InvalidInput(format!("unknown grid `{name}`; known: small, resolution, algebra, golod"))
                })?,
                None => vec![cfg.config()?],
            };
            if g.is_none() {
                report.config = Some(cfgs[0].clone());
            }
            for c in &cfgs {
                let bx = cfg.strand_box(c.n)?;
                let t = Instant::now();
                report.reports.extend(dispatch!(c, verify_with(*suite, c, *fixture, bx.clone(), *max_deg))?);
                if cli.timings {
                    report
                        .timings_ms
                        .get_or_insert_with(Vec::new)
                        .push((format!("n={} d={} w={} e={}", c.n, c.d, c.w, c.e), t.elapsed().as_millis() as u64));
                }
            }
        }
        Command::Product { x, y, cfg } => {
            let c = cfg.config()?;
            report.payload = dispatch!(c, product_with(&c, x, y))?;
            report.config = Some(c);
        }
        Command::Golod { max_deg, cfg } => {
            let c = cfg.config()?;
            let (reps, payload) = dispatch!(c, golod_with(&c, *max_deg))?;
            report.reports = reps;
            report.payload = payload;
            report.config = Some(c);
        }
    }
    if cli.timings {
        report.timings_ms.get_or_insert_with(Vec::new).push(("total".into(), start.elapsed().as_millis() as u64));
    }
    Ok(report)
}

/// Parses arguments, runs, writes the report, and returns the exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let report = match run(&cli, echo) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    if report.passed() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<RunReport> {
        let mut v = vec!["rpower"];
        v.extend_from_slice(args);
        let cli = Cli::try_parse_from(&v).unwrap();
        run(&cli, args.join(" "))
    }

    #[test]
    fn parse_basis_grammar() {
        let b = parse_basis("f[1,3]*m[0,2,1]", 3).unwrap().unwrap();
        assert_eq!(b.sigma, IndexSet::from_indices(&[0, 2]));
        assert_eq!(b.alpha, ExpVec::from_slice(&[0, 2, 1]));
        assert_eq!(parse_basis("f[]*m[1,0]", 2).unwrap().unwrap().sigma, IndexSet::EMPTY);
        assert!(parse_basis("1", 2).unwrap().is_none());
        for bad in ["f[1*m[1,0]", "f[3]*m[1,0]", "f[1,1]*m[0,0]", "f[]*m[1]", "g[]*m[1,0]"] {
            assert!(parse_basis(bad, 2).is_err(), "{bad}");
        }
    }

    #[test]
    fn simplex_counts() {
        for (w, d, k) in [("2,1,1", "2", 4), ("3,1,1", "3", 4)] {
            let r = run_args(&["simplex", "--n", "3", "--d", d, "--w", w]).unwrap();
            let Payload::Simplex { exponents, .. } = r.payload else { panic!() };
            assert_eq!(exponents.len(), k);
        }
        let r = run_args(&["simplex", "--n", "2", "--d", "2", "--w", "2,2"]).unwrap();
        let Payload::Simplex { exponents, generators } = r.payload else { panic!() };
        assert_eq!(exponents.len(), 3);
        assert_eq!(generators, vec!["x1^2", "x1*x2", "x2^2"]);
    }

    #[test]
    fn bad_input_is_exit_two() {
        let e = run_args(&["simplex", "--n", "2", "--d", "3", "--w", "1,1"]).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let e = run_args(&["golod", "--n", "2", "--d", "1"]).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let e = run_args(&["resolve", "--n", "2", "--d", "2", "--field", "fp:19"]).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let e = run_args(&["product", "--n", "2", "--d", "2", "--x", "f[", "--y", "1"]).unwrap_err();
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn product_overflow_on_x() {
        let r = run_args(&["product", "--x", "f[]*m[1,0]", "--y", "f[]*m[1,0]", "--n", "2", "--d", "2", "--w", "1,1"]).unwrap();
        let Payload::Product { carrier, terms, .. } = r.payload else { panic!() };
        assert_eq!(carrier, "X");
        assert_eq!(terms, vec![Term { label: "f[]*m[1,0]".into(), coefficient: "x1".into() }]);
    }

    #[test]
    fn product_unit_on_l() {
        let r = run_args(&["product", "--x", "1", "--y", "f[]*m[1,1]", "--n", "2", "--d", "2", "--w", "2,2"]).unwrap();
        let Payload::Product { carrier, terms, .. } = r.payload else { panic!() };
        assert_eq!(carrier, "L");
        assert_eq!(terms, vec![Term { label: "f[]*m[1,1]".into(), coefficient: "1".into() }]);
    }

    #[test]
    fn json_round_trip() {
        for args in [
            vec!["simplex", "--n", "3", "--d", "2", "--w", "2,1,1"],
            vec!["resolve", "--n", "2", "--d", "2"],
            vec!["golod", "--n", "2", "--d", "2", "--max-deg", "3"],
            vec!["verify", "dga", "--n", "2", "--d", "2", "--w", "1,1"],
            vec!["product", "--x", "f[]*m[2,0]", "--y", "f[]*m[0,2]", "--n", "2", "--d", "2"],
        ] {
            let r = run_args(&args).unwrap();
            assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
        }
    }

    #[test]
    fn prime_fields_agree_with_rationals() {
        let q = run_args(&["resolve", "--n", "3", "--d", "2"]).unwrap();
        let p = run_args(&["resolve", "--n", "3", "--d", "2", "--field", "fp:101"]).unwrap();
        let ranks = |r: &RunReport| match &r.payload {
            Payload::Resolution { ranks, .. } => ranks.clone(),
            _ => panic!(),
        };
        assert_eq!(ranks(&q), vec![1, 6, 8, 3]);
        assert_eq!(ranks(&p), ranks(&q));
        let r = run_args(&["verify", "all", "--n", "2", "--d", "2", "--field", "fp:7"]).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn grids_are_nonempty_and_valid() {
        for name in ["small", "resolution", "algebra", "golod"] {
            let g = grid(name).unwrap();
            assert!(!g.is_empty());
            assert!(g.iter().all(|c| c.validate().is_ok()));
        }
        assert!(grid("huge").is_none());
        assert!(grid("golod").unwrap().iter().all(|c| c.d >= 2));
    }
}
