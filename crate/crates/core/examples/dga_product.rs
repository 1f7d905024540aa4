//! Products on X and on L, and the full DG law survey for one setup.

use restricted_powers::combinat::SetupConfig;
use restricted_powers::corealg::{BasisLabel, Element, ExpVec, IndexSet, Label, Rational, Result};
use restricted_powers::dga::{transferred_product, verify_dga, x_product};
use restricted_powers::transfer::transfer_data;

pub fn run_example() -> Result<bool> {
    let cfg = SetupConfig::standard(2, 2, &[1, 1])?;
    let m = |a: &[u32]| BasisLabel::new(IndexSet::EMPTY, ExpVec::from_slice(a));
    let sq: Element<Rational> = x_product(&m(&[1, 0]), &m(&[1, 0]), &cfg);
    println!("f1 * f1 in X = {sq}");

    let cfg = SetupConfig::standard(2, 2, &[2, 2])?;
    let (r, pr) = transfer_data::<Rational>(&cfg)?;
    let x = Element::basis(Label::Wedge(m(&[2, 0])), 2);
    let y = Element::basis(Label::Wedge(m(&[0, 2])), 2);
    println!("f1^2 * f2^2 in L = {}", transferred_product(&x, &y, &cfg, &pr));
    let rep = verify_dga(&r, &pr);
    print!("{rep}");
    Ok(rep.passed())
}

pub fn main() -> Result<()> {
    run_example().map(|_| ())
}
