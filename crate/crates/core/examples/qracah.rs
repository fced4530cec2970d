//! The finite q-Racah reduction and its exact orthogonality.

use aw_bispectral::aw::{mv_poly, qracah_poly_mv, racah_z};
use aw_bispectral::harness::{qracah_orthogonality_exact, racah_params};
use aw_bispectral::{MultiIndex, RacahPoint, Result};

pub fn run() -> Result<()> {
    let big_n = 3;
    let params = racah_params(2, big_n)?;
    println!("parameters: {params}");
    let n = MultiIndex(vec![1, 1]);
    for y in RacahPoint::chains(2, big_n).iter().take(4) {
        let r = qracah_poly_mv(&params, &n, y)?;
        assert_eq!(r, mv_poly(&params, &n, &racah_z(&params, y))?);
        println!("R(1,1)({:?}) = {r}", y.y);
    }
    let off = qracah_orthogonality_exact(&params, &MultiIndex(vec![1, 0]), &MultiIndex(vec![0, 1]), big_n)?;
    let diag = qracah_orthogonality_exact(&params, &n, &n, big_n)?;
    println!("<R(1,0), R(0,1)> = {}, <R(1,1), R(1,1)> = {}", off.observed, diag.observed);
    assert!(off.pass && diag.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
