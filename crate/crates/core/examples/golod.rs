//! Koszul homology, a product-free choice of representatives, and the
//! Golod resolution of the residue field.

use restricted_powers::combinat::SetupConfig;
use restricted_powers::corealg::{Rational, Result};
use restricted_powers::golod::{check_golod, golod_resolution, poincare_coeffs, verify_golod};

pub fn run_example() -> Result<Vec<u64>> {
    let cfg = SetupConfig::standard(2, 2, &[2, 2])?;
    let w = check_golod::<Rational>(&cfg)?;
    for c in &w.basis {
        println!("H_{}: {}", c.degree, c.rep);
    }
    let series = poincare_coeffs::<Rational>(&cfg, 5)?;
    println!("Poincare series {series:?}");
    println!("resolution ranks {:?}", golod_resolution::<Rational>(&cfg, 5)?.ranks());
    print!("{}", verify_golod::<Rational>(&cfg, 5)?);
    Ok(series)
}

pub fn main() -> Result<()> {
    run_example().map(|_| ())
}
