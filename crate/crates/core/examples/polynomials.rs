//! One-variable and multivariable Askey-Wilson polynomials, exact and symbolic.

use aw_bispectral::aw::{aw_poly_1d, mv_poly, mv_poly_hat, mv_poly_symbolic};
use aw_bispectral::rational::{int, rat};
use aw_bispectral::{MultiIndex, QBase, QParams, Result};

pub fn run() -> Result<()> {
    let base = QBase::real(rat(1, 2))?;
    let (a, b, c, d) = (rat(1, 2), rat(1, 3), rat(-1, 5), rat(1, 7));
    for n in 0..3 {
        println!("p_{n}(z = 2) = {}", aw_poly_1d(n, &a, &b, &c, &d, &int(2), &base)?);
    }

    let params = QParams::new(2, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(1, 7), rat(3, 2)])?;
    let z = [int(2), int(3)];
    for n in MultiIndex::all_up_to(2, 2) {
        println!("P{n}(z) = {}    P^{n}(z) = {}", mv_poly(&params, &n, &z)?, mv_poly_hat(&params, &n, &z)?);
    }
    let n = MultiIndex(vec![1, 1]);
    let sym = mv_poly_symbolic(&params, &n)?;
    println!("P(1,1) in x: {sym}");
    assert_eq!(sym.total_degree(), Some(2));
    assert_eq!(sym.evaluate(&[rat(5, 4), rat(5, 3)])?, mv_poly(&params, &n, &z)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
