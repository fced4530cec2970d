//! The duality between degree and variable.

use aw_bispectral::duality::{dual_map, dual_params, duality_identity_check, DualityPoint};
use aw_bispectral::rational::{int, rat};
use aw_bispectral::{MultiIndex, QParams, Result};

pub fn run() -> Result<()> {
    let params = QParams::new(2, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(1, 7), rat(3, 2)])?;
    let dual = dual_params(&params)?;
    println!("alpha  = {params}\nalpha~ = {dual}");

    let pt = DualityPoint::from_lattice(&params, &MultiIndex(vec![1, 2]), vec![rat(3, 5), rat(7, 2)]);
    assert_eq!(dual_map(&dual_map(&pt)?)?, pt);

    for n in MultiIndex::all_up_to(2, 1) {
        for nt in MultiIndex::all_up_to(2, 1) {
            let r = duality_identity_check(&params, &n, &nt)?;
            println!("n = {n}, n~ = {nt}: {} = {}", r.lhs, r.rhs);
            assert!(r.pass);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
