//! Restricted exponent vectors, the generators they index, and the hook
//! tableaux counting each term of the resolution.

use restricted_powers::combinat::{hook_ssyt, restricted_exponents, SetupConfig};
use restricted_powers::corealg::{monomial_string, Result};

pub fn run_example() -> Result<Vec<String>> {
    let cfg = SetupConfig::standard(3, 3, &[3, 1, 1])?;
    let gens: Vec<String> = restricted_exponents(&cfg).iter().map(monomial_string).collect();
    println!("generators of the (3,1,1)-restricted cube: {}", gens.join(", "));
    for a in 0..cfg.n {
        let t: Vec<String> = hook_ssyt(a, cfg.d, &cfg).iter().map(|t| t.to_string()).collect();
        println!("  degree {}: {} tableaux {}", a + 1, t.len(), t.join(" "));
    }
    Ok(gens)
}

pub fn main() -> Result<()> {
    run_example().map(|_| ())
}
