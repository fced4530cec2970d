//! Exact Laurent polynomials, the involutions and the x-basis.

use aw_bispectral::laurent::{LaurentPoly, XPoly};
use aw_bispectral::rational::{int, rat};
use aw_bispectral::Result;

pub fn run() -> Result<()> {
    let d = 2;
    let z1 = LaurentPoly::var(d, 1);
    let z2 = LaurentPoly::var(d, 2);
    let x1 = LaurentPoly::x(d, 1);
    let p = &(&z1 * &z2) + &LaurentPoly::var_pow(d, 1, -1).scale(&rat(2, 3));
    println!("p = {p}");
    println!("I_1 p = {}", p.involution(1)?);
    println!("p(z q^(1,0)) with q = 1/4: {}", p.q_shift(&[1, 0], &rat(1, 4)));

    // x_1^2 x_2 written in z and read back
    let m = &(&x1 * &x1) * &LaurentPoly::x(d, 2);
    assert!(m.is_i_invariant());
    let back = m.to_x_basis()?;
    println!("x-basis form: {back}");
    assert_eq!(back, XPoly::monomial(d, int(1), vec![2, 1]));
    assert_eq!(m.evaluate(&[int(2), int(3)])?, back.evaluate(&[rat(5, 4), rat(5, 3)])?);
    assert!(z2.to_x_basis().is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
