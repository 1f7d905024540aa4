//! Runs the perturbation lemma on the retract of X onto L and checks the
//! transferred differential against L.

use restricted_powers::combinat::SetupConfig;
use restricted_powers::corealg::{Rational, Result};
use restricted_powers::transfer::{transfer_data, verify_homotopy, verify_retract, verify_transfer};

pub fn run_example() -> Result<bool> {
    let cfg = SetupConfig::standard(2, 3, &[2, 2])?;
    let homotopy = verify_homotopy::<Rational>(&cfg);
    let (r, pr) = transfer_data::<Rational>(&cfg)?;
    let base = verify_retract(&r.maps);
    let perturbed = verify_transfer(&r, &pr);
    println!("perturbation series stopped after {} steps", pr.iterations);
    print!("{homotopy}{base}{perturbed}");
    Ok(homotopy.passed() && base.passed() && perturbed.passed())
}

pub fn main() -> Result<()> {
    run_example().map(|_| ())
}
