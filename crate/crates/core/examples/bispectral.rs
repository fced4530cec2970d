//! Lattice operators in n, their eigenvalues, and the boundary of N_0^d.

use aw_bispectral::duality::Bispectral;
use aw_bispectral::rational::{int, rat};
use aw_bispectral::{MultiIndex, QParams, Result};

pub fn run() -> Result<()> {
    let params = QParams::new(2, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(1, 7), rat(3, 2)])?;
    let b = Bispectral::new(&params)?;
    for (j, op) in b.ln().iter().enumerate() {
        println!("L^n_{}: support {:?}", j + 1, op.support());
        for e in op.boundary() {
            assert!(e.divisible);
        }
    }
    let z = [rat(3, 7), rat(5, 11)];
    for n in [vec![0, 0], vec![1, 0], vec![0, 2], vec![2, 1]] {
        let n = MultiIndex(n);
        for j in 1..=2 {
            let r = b.check(&n, &z, j)?;
            println!("n = {n}, j = {j}: kappa side {} = {}, dropped {:?}", r.n_lhs, r.n_rhs, r.dropped);
            assert!(r.pass);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
