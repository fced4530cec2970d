//! q-shifted factorials, infinite products and the iterated Sears transformation.

use aw_bispectral::qseries::{
    phi43, q_pochhammer, q_pochhammer_inf_f64, reversed_pochhammer, sears_pair, Phi43Spec, QBase,
};
use aw_bispectral::rational::{int, rat};
use aw_bispectral::Result;

pub fn run() -> Result<()> {
    let base = QBase::real(rat(1, 2))?;
    let a = rat(3, 7);
    let p = q_pochhammer(&a, 3, &base);
    println!("(3/7; 1/4)_3 = {p}");
    assert_eq!(p, reversed_pochhammer(&a, 3, &base));

    let inf = q_pochhammer_inf_f64(0.5, 0.5, 1e-16)?;
    println!("(1/2; 1/2)_inf ~ {inf:.15}");

    // a balanced terminating 4phi3 and both sides of the Sears identity
    let k = 3;
    let (aa, b, d, e, f) = (rat(2, 3), rat(-5, 4), rat(7, 2), rat(1, 9), rat(11, 6));
    let c = &d * &e * &f * base.pow(k as i64 - 1) / (&aa * &b);
    let spec = Phi43Spec::terminating(k, [aa.clone(), b.clone(), c.clone()], [d.clone(), e.clone(), f.clone()], &base);
    println!("4phi3 = {}", phi43(&spec, base.q(), &base)?);
    let (lhs, rhs) = sears_pair(k, &aa, &b, &c, &d, &e, &f, &base)?;
    println!("Sears: lhs = {lhs}, rhs = {rhs}");
    assert_eq!(lhs, rhs);
    assert_eq!(q_pochhammer(&int(1), 2, &base), int(0));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
