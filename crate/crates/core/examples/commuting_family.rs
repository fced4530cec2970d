//! The commuting operators L^z_1..L^z_d and their joint eigenfunctions.

use aw_bispectral::aw::mv_poly;
use aw_bispectral::qdiff::{build_lz_family, mu_eigenvalue};
use aw_bispectral::rational::{int, rat};
use aw_bispectral::{MultiIndex, QParams, Result};

pub fn run() -> Result<()> {
    let params = QParams::new(2, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(1, 7), rat(3, 2)])?;
    let fam = build_lz_family(&params)?;
    let z = [rat(3, 7), rat(5, 11)];
    let comm = fam[0].commutator_at_point(&fam[1], &z)?;
    println!("[L1, L2] coefficients at z: {} nonzero", comm.len());
    assert!(comm.is_empty());

    for n in MultiIndex::all_up_to(2, 2) {
        for (j, op) in fam.iter().enumerate() {
            let lhs = op.apply_at_point(|w| mv_poly(&params, &n, w), &z)?;
            let mu = mu_eigenvalue(&params, &n, j + 1)?;
            assert_eq!(lhs, &mu * mv_poly(&params, &n, &z)?);
            println!("n = {n}, j = {}: mu = {mu}", j + 1);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
