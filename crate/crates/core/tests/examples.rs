#![allow(dead_code)]

#[path = "../examples/simplex.rs"]
mod simplex;
#[path = "../examples/resolve.rs"]
mod resolve;
#[path = "../examples/certify.rs"]
mod certify;
#[path = "../examples/transfer.rs"]
mod transfer;
#[path = "../examples/dga_product.rs"]
mod dga_product;
#[path = "../examples/golod.rs"]
mod golod;

#[test]
fn simplex_example() {
    assert_eq!(simplex::run_example().unwrap(), ["x1^3", "x1^2*x2", "x1^2*x3", "x1*x2*x3"]);
}

#[test]
fn resolve_example() {
    assert_eq!(resolve::run_example().unwrap(), [1, 6, 8, 3]);
}

#[test]
fn certify_example() {
    assert_eq!(certify::run_example().unwrap(), (true, false));
}

#[test]
fn transfer_example() {
    assert!(transfer::run_example().unwrap());
}

#[test]
fn dga_product_example() {
    assert!(dga_product::run_example().unwrap());
}

#[test]
fn golod_example() {
    assert_eq!(golod::run_example().unwrap(), [1, 2, 4, 8, 16, 32]);
}
