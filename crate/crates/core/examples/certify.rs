//! Certifies a resolution by strand homology, then shows the certificate
//! catching a complex with one basis vector deleted.

use restricted_powers::combinat::SetupConfig;
use restricted_powers::complexes::build_l_complex;
use restricted_powers::corealg::{Fp, Result};
use restricted_powers::oracle::{verify_resolution, StrandBox};

pub fn run_example() -> Result<(bool, bool)> {
    let cfg = SetupConfig::standard(3, 2, &[2, 1, 1])?;
    let l = build_l_complex::<Fp<32003>>(&cfg)?;
    let bx = StrandBox::default_for(&l.complex, &cfg);
    let good = verify_resolution(&l.complex, &cfg, &bx);
    print!("{good}");

    let top = l.complex.max_degree();
    let victim = l.complex.module(top).label(0).clone();
    let broken = verify_resolution(&l.complex.without_label(&victim), &cfg, &bx);
    print!("{broken}");
    Ok((good.passed(), broken.passed()))
}

pub fn main() -> Result<()> {
    run_example().map(|_| ())
}
