//! Builds a resolution and prints its ranks and graded Betti numbers.

use restricted_powers::combinat::SetupConfig;
use restricted_powers::complexes::{build_l_complex, restricted_power_ideal};
use restricted_powers::corealg::{Rational, Result};
use restricted_powers::oracle::betti_table;

pub fn run_example() -> Result<Vec<usize>> {
    let cfg = SetupConfig::standard(3, 2, &[2, 2, 2])?;
    let l = build_l_complex::<Rational>(&cfg)?;
    println!("I = {}", restricted_power_ideal(&cfg));
    println!("ranks {:?}", l.complex.ranks());
    for (k, deg, count) in betti_table(&l.complex).by_total_degree() {
        println!("  beta_{{{k},{deg}}} = {count}");
    }
    Ok(l.complex.ranks())
}

pub fn main() -> Result<()> {
    run_example().map(|_| ())
}
