//! Numeric orthogonality on the torus against the closed-form norms.

use aw_bispectral::aw::mv_norm;
use aw_bispectral::harness::{orthogonality_check, orthogonality_params, QuadratureGrid, DEFAULT_EPS};
use aw_bispectral::{MultiIndex, Result};

pub fn run() -> Result<()> {
    let params = orthogonality_params(2)?;
    println!("parameters: {params}");
    let grid = QuadratureGrid::new(&params, 64, DEFAULT_EPS)?;
    let h0 = mv_norm(&params, &MultiIndex::zero(2), DEFAULT_EPS)?;
    let one = grid.inner_product(|_| 1.0, |_| 1.0);
    println!("<1,1> = {one:.12e}, H_0 = {h0:.12e}");
    assert!((one - h0).abs() < 1e-8 * h0);
    for (n, m) in [(vec![1, 0], vec![0, 1]), (vec![1, 1], vec![1, 1]), (vec![2, 0], vec![0, 0])] {
        let r = orthogonality_check(&params, &MultiIndex(n), &MultiIndex(m), &grid, DEFAULT_EPS)?;
        println!("{} vs {}: observed {} expected {} pass {}", r.inputs["n"], r.inputs["m"], r.observed, r.expected, r.pass);
        assert!(r.pass);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
