//! The operator L_d: both forms, action on polynomials, triangularity.

use aw_bispectral::aw::mv_poly_symbolic;
use aw_bispectral::qdiff::{build_ld_delta_form, build_ld_shift_form, triangular_constant, triangularity_report};
use aw_bispectral::rational::{int, rat};
use aw_bispectral::{MultiIndex, QParams, Result};

pub fn run() -> Result<()> {
    let params = QParams::new(2, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(1, 7), rat(3, 2)])?;
    let shift = build_ld_shift_form(&params)?;
    let delta = build_ld_delta_form(&params)?;
    println!("support: {:?}", shift.support());
    let z = [rat(3, 7), rat(5, 11)];
    assert_eq!(shift.coefficients_at(&z)?, delta.coefficients_at(&z)?);

    // P_n is an eigenfunction with eigenvalue c_{|n|}
    let n = MultiIndex(vec![1, 1]);
    let p = mv_poly_symbolic(&params, &n)?;
    let lp = shift.apply(&p)?;
    let c = triangular_constant(&params, n.total());
    println!("L P(1,1) = {c} P(1,1)");
    assert_eq!(lp, p.scale(&c));

    for e in triangularity_report(&params, 3)? {
        assert!(e.pass);
    }
    println!("triangular up to degree 3");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
