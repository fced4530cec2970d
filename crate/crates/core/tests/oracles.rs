//! Worked examples for each public operation, checked against independent
//! hand-assembled values.

use aw_bispectral::aw::*;
use aw_bispectral::coeff::CoeffFn;
use aw_bispectral::duality::*;
use aw_bispectral::laurent::{exact_divide, LaurentPoly, XPoly};
use aw_bispectral::qdiff::*;
use aw_bispectral::qseries::*;
use aw_bispectral::rational::{int, rat, Rat};
use aw_bispectral::{Error, MultiIndex, QDiffOperator, QParams};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quarter() -> QBase {
    QBase::real(rat(1, 2)).unwrap()
}

fn one() -> Rat {
    Rat::one()
}

fn p1() -> QParams {
    QParams::new(1, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(3, 2)]).unwrap()
}

fn p2() -> QParams {
    QParams::new(2, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(1, 7), rat(3, 2)]).unwrap()
}

fn p3() -> QParams {
    QParams::new(3, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11), rat(3, 2)]).unwrap()
}

fn random_z(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rat> {
    (0..d).map(|_| aw_bispectral::rational::random_nonzero(rng, 60)).collect()
}

mod qseries_ops {
    use super::*;

    #[test]
    fn pochhammer_small() {
        let b = quarter();
        let a = rat(5, 9);
        assert_eq!(q_pochhammer(&a, 0, &b), one());
        assert_eq!(q_pochhammer(&a, 2, &b), (one() - &a) * (one() - &a * b.q()));
    }

    #[test]
    fn pochhammer_at_two_and_reversal() {
        let b = quarter();
        let v = q_pochhammer(&int(2), 2, &b);
        assert_eq!(v, rat(-1, 2));
        assert_eq!(reversed_pochhammer(&int(2), 2, &b), v);
    }

    #[test]
    fn infinite_products() {
        let b = quarter();
        assert_eq!(q_pochhammer_inf(0.0, 1e-16, &b).unwrap(), 1.0);
        assert_eq!(q_pochhammer_inf(1.0, 1e-16, &b).unwrap(), 0.0);
        let short = q_pochhammer_inf_f64(0.5, 0.5, 1e-16).unwrap();
        let mut long = 1.0;
        let mut t = 0.5f64;
        for _ in 0..530 {
            long *= 1.0 - t;
            t *= 0.5;
        }
        assert!((short - long).abs() <= 1e-14 * long.abs());
    }

    #[test]
    fn phi43_terms() {
        let b = quarter();
        let (a, bb, c, d, e, f) = (rat(2, 3), rat(3, 5), rat(-1, 7), rat(4, 9), rat(5, 11), rat(6, 13));
        let s0 = Phi43Spec::terminating(0, [a.clone(), bb.clone(), c.clone()], [d.clone(), e.clone(), f.clone()], &b);
        assert_eq!(phi43(&s0, &rat(7, 3), &b).unwrap(), one());
        let s1 = Phi43Spec::terminating(1, [a.clone(), bb.clone(), c.clone()], [d.clone(), e.clone(), f.clone()], &b);
        let z = rat(7, 3);
        let expect = one()
            + (one() - b.pow(-1)) * (one() - &a) * (one() - &bb) * (one() - &c) * &z
                / ((one() - &d) * (one() - &e) * (one() - &f) * (one() - b.q()));
        assert_eq!(phi43(&s1, &z, &b).unwrap(), expect);
    }

    #[test]
    fn sears_small_k() {
        let b = quarter();
        let (a, bb, d, e, f) = (rat(2, 3), rat(-3, 5), rat(7, 4), rat(1, 6), rat(9, 2));
        let c0 = &d * &e * &f * b.pow(-1) / (&a * &bb);
        assert_eq!(sears_pair(0, &a, &bb, &c0, &d, &e, &f, &b).unwrap(), (one(), one()));
        let c1 = &d * &e * &f / (&a * &bb);
        let (l, r) = sears_pair(1, &a, &bb, &c1, &d, &e, &f, &b).unwrap();
        assert_eq!(l, r);
        assert!(matches!(
            sears_pair(1, &a, &bb, &(c1 + one()), &d, &e, &f, &b),
            Err(Error::UnbalancedParameters)
        ));
    }

    #[test]
    fn sears_hundred_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        let r = aw_bispectral::harness::sears_check(&mut rng, 100, 6).unwrap();
        assert!(r.iter().all(|r| r.pass));
    }
}

mod laurent_ops {
    use super::*;

    #[test]
    fn arithmetic() {
        let d = 2;
        let p = &LaurentPoly::var(d, 1) + &LaurentPoly::var_pow(d, 2, -3).scale(&rat(2, 5));
        assert_eq!(&p + &LaurentPoly::zero(d), p);
        assert_eq!(&LaurentPoly::var(d, 1) * &LaurentPoly::var_pow(d, 1, -1), LaurentPoly::one(d));
        let x1 = LaurentPoly::x(1, 1);
        let expect = LaurentPoly::from_terms(1, [(vec![2], rat(1, 4)), (vec![0], rat(1, 2)), (vec![-2], rat(1, 4))]);
        assert_eq!(&x1 * &x1, expect);
    }

    #[test]
    fn involutions() {
        let z1 = LaurentPoly::var(2, 1);
        assert_eq!(z1.involution(1).unwrap(), LaurentPoly::var_pow(2, 1, -1));
        let p = &(&z1 * &z1) + &LaurentPoly::var_pow(2, 2, -1).scale(&rat(3, 4));
        assert_eq!(p.involution(1).unwrap().involution(1).unwrap(), p);
        let xz = &LaurentPoly::x(2, 1) * &LaurentPoly::var(2, 2);
        assert_eq!(xz.involution(1).unwrap(), xz);
    }

    #[test]
    fn invariance() {
        assert!((&LaurentPoly::x(2, 1) * &LaurentPoly::x(2, 2)).is_i_invariant());
        assert!(!LaurentPoly::var(1, 1).is_i_invariant());
        assert!((&LaurentPoly::var_pow(1, 1, 2) + &LaurentPoly::var_pow(1, 1, -2)).is_i_invariant());
    }

    #[test]
    fn x_basis() {
        assert_eq!(LaurentPoly::x(1, 1).to_x_basis().unwrap(), XPoly::monomial(1, one(), vec![1]));
        assert_eq!(LaurentPoly::one(1).to_x_basis().unwrap(), XPoly::one(1));
        let sq = LaurentPoly::from_terms(1, [(vec![2], rat(1, 4)), (vec![0], rat(1, 2)), (vec![-2], rat(1, 4))]);
        assert_eq!(sq.to_x_basis().unwrap(), XPoly::monomial(1, one(), vec![2]));
    }

    #[test]
    fn division() {
        let z = LaurentPoly::var(2, 1);
        let num = &(&z * &z) - &LaurentPoly::one(2);
        let den = &z - &LaurentPoly::one(2);
        assert_eq!(exact_divide(&num, &den).unwrap(), &z + &LaurentPoly::one(2));
        let p = &LaurentPoly::var_pow(2, 2, 2).scale(&rat(3, 2)) - &z;
        let d = &LaurentPoly::var(2, 2) + &LaurentPoly::var_pow(2, 1, -1).scale(&rat(1, 3));
        assert_eq!(exact_divide(&(&p * &d), &d).unwrap(), p);
        assert!(exact_divide(&z, &(&LaurentPoly::var(2, 2) - &LaurentPoly::one(2))).is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(LaurentPoly::one(2).evaluate(&[rat(3, 7), int(5)]).unwrap(), one());
        assert_eq!(LaurentPoly::x(1, 1).evaluate(&[int(2)]).unwrap(), rat(5, 4));
        let p = LaurentPoly::from_terms(2, [(vec![1, -2], rat(3, 4)), (vec![0, 1], int(-2)), (vec![-1, 0], rat(1, 9))]);
        let z = [rat(2, 3), rat(-5, 7)];
        let mut expect = Rat::zero();
        for (m, c) in p.terms() {
            let mut t = c.clone();
            for (v, &e) in z.iter().zip(&m.0) {
                t *= aw_bispectral::rational::pow(v, e as i64);
            }
            expect += t;
        }
        assert_eq!(p.evaluate(&z).unwrap(), expect);
    }
}

mod aw_core_ops {
    use super::*;

    #[test]
    fn one_variable_low_degree() {
        let b = quarter();
        let (a, bb, c, d) = (rat(1, 2), rat(1, 3), rat(-1, 5), rat(1, 7));
        let z = rat(5, 3);
        assert_eq!(aw_poly_1d(0, &a, &bb, &c, &d, &z, &b).unwrap(), one());
        let abcd = &a * &bb * &c * &d;
        let pre = (one() - &a * &bb) * (one() - &a * &c) * (one() - &a * &d) / &a;
        let inner = one()
            + b.q() * (one() - b.pow(-1)) * (one() - &abcd) * (one() - &a * &z) * (one() - &a / &z)
                / ((one() - &a * &bb) * (one() - &a * &c) * (one() - &a * &d) * (one() - b.q()));
        assert_eq!(aw_poly_1d(1, &a, &bb, &c, &d, &z, &b).unwrap(), pre * inner);
        for n in 0..=4 {
            assert_eq!(
                aw_poly_1d(n, &a, &bb, &c, &d, &z, &b).unwrap(),
                aw_poly_1d(n, &a, &bb, &c, &d, &z.recip(), &b).unwrap()
            );
        }
    }

    #[test]
    fn norm_trivial_parameters() {
        let b = quarter();
        let h = aw_norm_1d(0, 0.0, 0.0, 0.0, 0.0, &b, 1e-16).unwrap();
        let expect = 1.0 / q_pochhammer_inf_f64(0.25, 0.25, 1e-16).unwrap();
        assert!((h - expect).abs() < 1e-14);
    }

    #[test]
    fn norm_ratio_matches_quadrature() {
        use aw_bispectral::harness::{orthogonality_params, QuadratureGrid, DEFAULT_EPS};
        let p = orthogonality_params(1).unwrap();
        let g = QuadratureGrid::with_defaults(&p).unwrap();
        let p1 = mv_poly_symbolic(&p, &MultiIndex(vec![1])).unwrap().to_f64();
        let q0 = g.inner_product(|_| 1.0, |_| 1.0);
        let q1 = g.inner_product(|x| p1.evaluate(x), |x| p1.evaluate(x));
        let h0 = mv_norm(&p, &MultiIndex(vec![0]), DEFAULT_EPS).unwrap();
        let h1 = mv_norm(&p, &MultiIndex(vec![1]), DEFAULT_EPS).unwrap();
        assert!((q0 - h0).abs() < 1e-8 * h0);
        assert!((q1 / q0 - h1 / h0).abs() < 1e-8 * (h1 / h0));
    }

    #[test]
    fn weight_in_one_variable() {
        let p = aw_bispectral::harness::orthogonality_params(1).unwrap();
        let a: Vec<f64> = p.alphas().iter().map(aw_bispectral::rational::to_f64).collect();
        let params = [a[1], a[1] / (a[0] * a[0]), a[2] * a[3] / a[1], a[2] / (a[1] * a[3])];
        let b = p.base();
        for t in [0.3, 1.1, 2.0, 2.9] {
            let z = Complex64::from_polar(1.0, t);
            let inf = |v: Complex64| q_pochhammer_inf_complex(v, 1e-16, b).unwrap();
            let mut w = inf(z * z) * inf((z * z).inv());
            for c in params {
                w /= inf(z * c) * inf(z.inv() * c);
            }
            let got = mv_weight(&p, &[z], 1e-16).unwrap();
            assert!((got - w.re).abs() < 1e-12 * w.re.abs());
            assert!((got - mv_weight(&p, &[z.conj()], 1e-16).unwrap()).abs() < 1e-14 * got);
        }
    }

    #[test]
    fn weight_positive() {
        let p = aw_bispectral::harness::orthogonality_params(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let z: Vec<Complex64> = (0..2)
                .map(|_| Complex64::from_polar(1.0, rand::Rng::gen_range(&mut rng, 0.0..std::f64::consts::TAU)))
                .collect();
            assert!(mv_weight(&p, &z, 1e-16).unwrap() > 0.0);
        }
    }

    #[test]
    fn multivariable_values() {
        let p = p2();
        assert_eq!(mv_poly(&p, &MultiIndex(vec![0, 0]), &[int(2), int(3)]).unwrap(), one());
        // d = 1 is the one-variable family with c = alpha_2 alpha_3 / alpha_1, d = alpha_2 / (alpha_1 alpha_3)
        let q = p1();
        let (a0, a1, a2, a3) = (q.alpha(0), q.alpha(1), q.alpha(2), q.alpha(3));
        let z = rat(7, 4);
        for n in 0..=3u32 {
            let direct = aw_poly_1d(n as usize, a1, &(a1 / (a0 * a0)), &(a2 * a3 / a1), &(a2 / (a1 * a3)), &z, q.base())
                .unwrap();
            assert_eq!(mv_poly(&q, &MultiIndex(vec![n]), &[z.clone()]).unwrap(), direct);
        }
        // d = 2, n = (1, 1): two factors assembled by hand
        let z = [rat(2, 3), rat(5, 2)];
        let b = p.base();
        let (a0, a1, a2, a3, a4) = (p.alpha(0), p.alpha(1), p.alpha(2), p.alpha(3), p.alpha(4));
        let r1 = a2 / a1;
        let f1 = aw_poly_1d(1, a1, &(a1 / (a0 * a0)), &(&r1 * &z[1]), &(&r1 / &z[1]), &z[0], b).unwrap();
        let a = a2 * b.q();
        let r2 = a3 / a2;
        let f2 = aw_poly_1d(1, &a, &(&a / (a0 * a0)), &(&r2 * a4), &(&r2 / a4), &z[1], b).unwrap();
        assert_eq!(mv_poly(&p, &MultiIndex(vec![1, 1]), &z).unwrap(), f1 * f2);
    }

    #[test]
    fn symbolic_degrees_and_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (p, max) in [(p1(), 4), (p2(), 4), (p3(), 3)] {
            let d = p.d();
            assert_eq!(mv_poly_symbolic(&p, &MultiIndex::zero(d)).unwrap(), XPoly::one(d));
            for n in MultiIndex::all_up_to(d, max) {
                let s = mv_poly_symbolic(&p, &n).unwrap();
                assert_eq!(s.total_degree(), Some(n.total()));
            }
        }
        let p = p2();
        let n = MultiIndex(vec![2, 1]);
        let s = mv_poly_symbolic(&p, &n).unwrap();
        for _ in 0..20 {
            let z = random_z(&mut rng, 2);
            let x: Vec<Rat> = z.iter().map(|v| (v + v.recip()) / int(2)).collect();
            assert_eq!(s.evaluate(&x).unwrap(), mv_poly(&p, &n, &z).unwrap());
        }
    }

    #[test]
    fn norms_positive() {
        let p = aw_bispectral::harness::orthogonality_params(2).unwrap();
        for n in MultiIndex::all_up_to(2, 3) {
            assert!(mv_norm(&p, &n, 1e-16).unwrap() > 0.0);
        }
    }

    #[test]
    fn normalisation() {
        let p = p2();
        let v = rat(17, 3);
        assert_eq!(normalize_phat(&p, &MultiIndex::zero(2), &v).unwrap(), v);
        let n = MultiIndex(vec![1, 2]);
        let f = phat_factor(&p, &n).unwrap();
        for z in [[int(2), int(3)], [rat(1, 5), rat(-4, 3)]] {
            assert_eq!(mv_poly_hat(&p, &n, &z).unwrap(), &f * mv_poly(&p, &n, &z).unwrap());
        }
        // d = 1, n = 1: A / ((A, A/alpha_0^2; q)_1 alpha_1 (alpha_2^2/alpha_1^2; q)_1)
        let q = p1();
        let big_a = q.alpha(2) * q.alpha(3);
        let r = q.alpha(2) / q.alpha(1);
        let expect = &big_a
            / ((one() - &big_a) * (one() - &big_a / (q.alpha(0) * q.alpha(0))) * q.alpha(1) * (one() - &r * &r));
        assert_eq!(phat_factor(&q, &MultiIndex(vec![1])).unwrap(), expect);
    }

    #[test]
    fn racah_one_variable() {
        let b = quarter();
        let (a, bb, c) = (rat(1, 3), rat(2, 5), rat(1, 9));
        let big_n = 3;
        for y in 0..=big_n {
            assert_eq!(qracah_poly_1d(0, &a, &bb, &c, big_n, y, &b).unwrap(), one());
            let root = b.half_pow(big_n) / rat(1, 3);
            let head = (one() - &a * b.q()) * (one() - &bb * &c * b.q()) * (one() - b.pow(-big_n));
            let second = b.q() * (one() - b.pow(-1)) * (one() - &a * &bb * b.pow(2)) * (one() - b.pow(-y))
                * (one() - &c * b.pow(y - big_n))
                / (one() - b.q());
            assert_eq!(qracah_poly_1d(1, &a, &bb, &c, big_n, y, &b).unwrap(), (head + second) * root);
        }
        assert!(matches!(
            qracah_poly_1d(1, &a, &bb, &rat(2, 3), big_n, 0, &b),
            Err(Error::NeedsSquareBase(_))
        ));
    }

    #[test]
    fn racah_matches_substitution() {
        for d in 1..=2 {
            for big_n in 0..=3u32 {
                let p = aw_bispectral::harness::racah_params(d, big_n).unwrap();
                for y in RacahPoint::chains(d, big_n) {
                    assert_eq!(qracah_poly_mv(&p, &MultiIndex::zero(d), &y).unwrap(), one());
                    for n in MultiIndex::all_up_to(d, 2) {
                        let r = qracah_poly_mv(&p, &n, &y).unwrap();
                        assert_eq!(r, mv_poly(&p, &n, &racah_z(&p, &y)).unwrap(), "d={d} N={big_n} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn racah_weight() {
        let p = aw_bispectral::harness::racah_params(2, 0).unwrap();
        let y = RacahPoint::new(vec![0, 0], 0).unwrap();
        let expect = (one() - p.alpha(1) * p.alpha(1)) * (one() - p.alpha(2) * p.alpha(2));
        assert_eq!(qracah_weight(&p, &y).unwrap(), expect);
        for big_n in 0..=4 {
            let p = aw_bispectral::harness::racah_params(2, big_n).unwrap();
            for y in RacahPoint::chains(2, big_n) {
                assert!(qracah_weight(&p, &y).unwrap() > Rat::zero());
            }
        }
    }
}

mod qdiff_ops {
    use super::*;

    #[test]
    fn a_coefficients_in_one_variable() {
        let p = p1();
        let (a0, a1, a2, a3) = (p.alpha(0), p.alpha(1), p.alpha(2), p.alpha(3));
        let q = p.q();
        let a = coeff_a(&p, &[1]).unwrap();
        let am = coeff_a(&p, &[-1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let z = random_z(&mut rng, 1).remove(0);
            let f = |z: &Rat| {
                (one() - a1 * z) * (one() - a1 * z / (a0 * a0)) * (one() - a2 * a3 * z / a1)
                    * (one() - a2 * z / (a1 * a3))
                    / ((one() - z * z) * (one() - q * z * z))
            };
            if z == one() || z == -one() || q * &z * &z == one() || &z * &z == *q {
                continue;
            }
            assert_eq!(a.evaluate(&[z.clone()]).unwrap(), f(&z));
            assert_eq!(am.evaluate(&[z.clone()]).unwrap(), f(&z.recip()));
        }
        assert!(coeff_c(&p, &[1]).unwrap().sub(&a).is_zero());
    }

    #[test]
    fn a_coefficient_degrees() {
        let c = coeff_a(&p2(), &[1, 1]).unwrap();
        let deg = |p: &LaurentPoly| {
            let lo = p.min_exponents();
            p.terms().map(|(m, _)| m.0.iter().zip(&lo).map(|(e, l)| (e - l) as i64).sum::<i64>()).max().unwrap()
        };
        assert_eq!(deg(&c.den()), 8);
        assert!(deg(c.num()) <= 8);
    }

    #[test]
    fn delta_form_one_variable() {
        let p = p1();
        let q = p.q().clone();
        let a = coeff_a(&p, &[1]).unwrap();
        let am = coeff_a(&p, &[-1]).unwrap();
        let e = |s: i32, c: CoeffFn| QDiffOperator::single(1, q.clone(), vec![s], c);
        let expect = e(1, a.clone())
            .sub(&e(0, a.clone()))
            .unwrap()
            .sub(&e(0, am.clone()))
            .unwrap()
            .add(&e(-1, am))
            .unwrap();
        let delta = build_ld_delta_form(&p).unwrap();
        assert!(delta.same_as(&expect));
    }

    #[test]
    fn forms_invariance_and_support() {
        for p in [p1(), p2(), p3()] {
            let d = p.d();
            let delta = build_ld_delta_form(&p).unwrap();
            let shift = build_ld_shift_form(&p).unwrap();
            for k in 1..=d {
                let i = delta.involution(k).unwrap();
                assert!(i.same_as(&delta));
                assert!(i.involution(k).unwrap().same_as(&delta));
            }
            assert!(delta.support().iter().all(|s| s.iter().all(|v| v.abs() <= 1)));
            assert!(shift.support().len() <= 3usize.pow(d as u32));
        }
    }

    #[test]
    fn forms_agree_pointwise() {
        let p = p1();
        let delta = build_ld_delta_form(&p).unwrap();
        let shift = build_ld_shift_form(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut seen = 0;
        while seen < 20 {
            let z = random_z(&mut rng, 1);
            if let (Ok(a), Ok(b)) = (delta.coefficients_at(&z), shift.coefficients_at(&z)) {
                assert_eq!(a, b);
                seen += 1;
            }
        }
        let shift2 = build_ld_shift_form(&p2()).unwrap();
        let c = shift2.coefficients_at(&[rat(3, 7), rat(5, 11)]).unwrap();
        assert_eq!(c.len(), 9);
    }

    #[test]
    fn applications() {
        let q = rat(1, 4);
        let z = LaurentPoly::var(1, 1);
        let delta = QDiffOperator::single(1, q.clone(), vec![1], CoeffFn::one(1))
            .sub(&QDiffOperator::identity(1, q.clone()))
            .unwrap();
        let got = delta.apply_laurent(&LaurentPoly::x(1, 1)).unwrap();
        // (z^2 q - 1)(q - 1) / (2 z q)
        let expect = &(&(&z * &z).scale(&q) - &LaurentPoly::one(1)) * &LaurentPoly::var_pow(1, 1, -1).scale(&((&q - one()) / (int(2) * &q)));
        assert_eq!(got, expect);

        for p in [p1(), p2()] {
            let l = build_ld_shift_form(&p).unwrap();
            assert!(l.apply(&XPoly::one(p.d())).unwrap().is_zero());
        }
        let p = p1();
        let l = build_ld_shift_form(&p).unwrap();
        let x1 = XPoly::monomial(1, one(), vec![1]);
        let c1 = -(one() - p.base().pow(-1)) * (one() - p.alpha(2) * p.alpha(2) / (p.alpha(0) * p.alpha(0)));
        assert_eq!(c1, triangular_constant(&p, 1));
        let rest = &l.apply(&x1).unwrap() - &x1.scale(&c1);
        assert!(rest.total_degree().map_or(true, |g| g == 0));
    }

    #[test]
    fn pointwise_application() {
        let p = p2();
        let q = p.q().clone();
        let id = QDiffOperator::identity(2, q);
        let z = [rat(2, 3), rat(7, 5)];
        let f = |w: &[Rat]| Ok(&w[0] * &w[0] - &w[1]);
        assert_eq!(id.apply_at_point(f, &z).unwrap(), f(&z).unwrap());
        let l = build_ld_shift_form(&p).unwrap();
        let g = |w: &[Rat]| Ok(&w[0] + w[1].recip());
        let lin = l.apply_at_point(|w| Ok(f(w)? * int(3) - g(w)?), &z).unwrap();
        assert_eq!(lin, l.apply_at_point(f, &z).unwrap() * int(3) - l.apply_at_point(g, &z).unwrap());
        let n = MultiIndex(vec![1, 1]);
        let sym = mv_poly_symbolic(&p, &n).unwrap();
        let img = l.apply(&sym).unwrap();
        let x: Vec<Rat> = z.iter().map(|v| (v + v.recip()) / int(2)).collect();
        assert_eq!(img.evaluate(&x).unwrap(), l.apply_at_point(|w| mv_poly(&p, &n, w), &z).unwrap());
    }

    #[test]
    fn composition() {
        let p = p2();
        let l = build_ld_shift_form(&p).unwrap();
        let id = QDiffOperator::identity(2, p.q().clone());
        assert!(l.compose(&id).unwrap().same_as(&l));
        assert!(id.compose(&l).unwrap().same_as(&l));
        let fam = build_lz_family(&p).unwrap();
        assert!(fam[0].commutator_at_point(&fam[0], &[rat(3, 7), rat(5, 11)]).unwrap().is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        let r = aw_bispectral::harness::commutativity_check(&p, &mut rng, 50, 0).unwrap();
        assert!(r.iter().all(|r| r.pass));
    }

    #[test]
    fn operator_involution() {
        let p = p2();
        let q = p.q().clone();
        let g = CoeffFn::from_poly(&LaurentPoly::var(2, 1) + &LaurentPoly::var_pow(2, 2, 2).scale(&rat(1, 3)));
        let op = QDiffOperator::single(2, q.clone(), vec![1, 0], g.clone());
        let expect = QDiffOperator::single(2, q, vec![-1, 0], g.involution(1).unwrap());
        assert!(op.involution(1).unwrap().same_as(&expect));
        assert!(op.involution(1).unwrap().involution(1).unwrap().same_as(&op));
    }

    #[test]
    fn family_structure() {
        for p in [p2(), p3()] {
            let d = p.d();
            let fam = build_lz_family(&p).unwrap();
            assert!(fam[d - 1].same_as(&build_ld_shift_form(&p).unwrap()));
            for (j, op) in fam.iter().enumerate() {
                for s in op.support() {
                    assert!(s[j + 1..].iter().all(|&v| v == 0));
                }
            }
        }
        let p = p2();
        let n = MultiIndex(vec![1, 2]);
        let fam = build_lz_family(&p).unwrap();
        let z = [rat(3, 7), rat(5, 11)];
        let lhs = fam[0].apply_at_point(|w| mv_poly(&p, &n, w), &z).unwrap();
        assert_eq!(lhs, mu_eigenvalue(&p, &n, 1).unwrap() * mv_poly(&p, &n, &z).unwrap());
    }

    #[test]
    fn eigenvalues() {
        let p = p2();
        assert!(mu_eigenvalue(&p, &MultiIndex(vec![0, 3]), 1).unwrap().is_zero());
        for n in MultiIndex::all_up_to(2, 3) {
            assert_eq!(mu_eigenvalue(&p, &n, 2).unwrap(), triangular_constant(&p, n.total()));
        }
        let direct = -(one() - p.base().pow(-1)) * (one() - p.alpha(2) * p.alpha(2) / (p.alpha(0) * p.alpha(0)));
        assert_eq!(mu_eigenvalue(&p, &MultiIndex(vec![1, 1]), 1).unwrap(), direct);
    }

    #[test]
    fn triangularity() {
        let p = p2();
        let r = triangularity_report(&p, 4).unwrap();
        assert!(r.iter().all(|e| e.pass));
        assert_eq!(r[0].remainder_degree, None);
        let bad = triangularity_report_for(&mutated_ld(&p).unwrap(), &p, 4).unwrap();
        assert!(bad.iter().any(|e| !e.pass));
    }
}

mod duality_ops {
    use super::*;

    #[test]
    fn involution_and_identities() {
        let p = p2();
        let pt = DualityPoint::from_lattice(&p, &MultiIndex(vec![2, 1]), vec![rat(3, 5), rat(-7, 2)]);
        assert_eq!(dual_map(&dual_map(&pt).unwrap()).unwrap(), pt);
        let t = dual_params(&p).unwrap();
        assert_eq!(t.alpha(3) * t.alpha(4), p.alpha(3) * p.alpha(4));
        let nt = MultiIndex(vec![2, 1]);
        let z = z_from_dual_index(&p, &nt);
        for j in 1..=2 {
            assert_eq!(p.alpha(j) * &z[j - 1], p.alpha(3) * p.alpha(4) * p.base().pow(nt.partial(3 - j)));
        }
    }

    #[test]
    fn identity_checks() {
        let r = duality_identity_check(&p1(), &MultiIndex(vec![0]), &MultiIndex(vec![0])).unwrap();
        assert_eq!((r.lhs, r.rhs), (one(), one()));
        assert!(duality_identity_check(&p1(), &MultiIndex(vec![1]), &MultiIndex(vec![1])).unwrap().pass);
        for n in MultiIndex::all_up_to(2, 2) {
            for nt in MultiIndex::all_up_to(2, 2) {
                assert!(duality_identity_check(&p2(), &n, &nt).unwrap().pass);
            }
        }
    }

    #[test]
    fn b_map_rules() {
        let p = p2();
        let q = p.q().clone();
        let t = dual_params(&p).unwrap();
        let bm = BMap::new(&p);
        // b(E_k) b(f) = b(f(z q^{e_k})) b(E_k)
        let f = CoeffFn::from_poly(&LaurentPoly::var(2, 1) + &LaurentPoly::var_pow(2, 2, -1).scale(&rat(2, 7)));
        for k in 1..=2 {
            let mut e = vec![0; 2];
            e[k - 1] = 1;
            let ek = bm.operator(&QDiffOperator::single(2, q.clone(), e.clone(), CoeffFn::one(2))).unwrap();
            let bf = bm.operator(&QDiffOperator::single(2, q.clone(), vec![0, 0], f.clone())).unwrap();
            let bfs = bm
                .operator(&QDiffOperator::single(2, q.clone(), vec![0, 0], f.q_shift(&e, &q)))
                .unwrap();
            let lhs = ek.operator().compose(bf.operator()).unwrap();
            let rhs = bfs.operator().compose(ek.operator()).unwrap();
            for n in [[0i64, 0], [2, 1], [1, 3]] {
                let u: Vec<Rat> = n.iter().map(|&v| p.base().pow(v)).collect();
                assert_eq!(lhs.coefficients_at(&u).unwrap(), rhs.coefficients_at(&u).unwrap());
            }
        }
        // b(1 - alpha~_j z_j / (alpha~_{j-1} z_{j-1})) = 1 - q^{-n_{d+2-j}} for j = 2
        let ratio = LaurentPoly::monomial(2, t.alpha(2) / t.alpha(1), vec![-1, 1]);
        let img = bm.coeff(&CoeffFn::from_poly(&LaurentPoly::one(2) - &ratio)).unwrap();
        for n in [[0i64, 0], [1, 2], [3, 1]] {
            let u: Vec<Rat> = n.iter().map(|&v| p.base().pow(v)).collect();
            assert_eq!(img.evaluate(&u).unwrap(), one() - p.base().pow(-n[1]));
        }
        let id = bm.operator(&QDiffOperator::identity(2, q)).unwrap();
        assert_eq!(id.support(), vec![vec![0, 0]]);
    }

    #[test]
    fn lattice_family() {
        let f1 = build_ln_family(&p1()).unwrap();
        let mut s = f1[0].support();
        s.sort();
        assert_eq!(s, vec![vec![-1], vec![0], vec![1]]);
        let f2 = build_ln_family(&p2()).unwrap();
        assert!(f2.iter().all(|op| !op.boundary().is_empty()));
        // commutator of the images on a sampled lattice function
        let g = |m: &[i64]| Ok(rat(m[0] * m[0] + 3, 1 + m[1].abs()) + rat(m[1], 7));
        for n in [[2i64, 2], [3, 1], [2, 3]] {
            let ab = f2[0].apply(|m| f2[1].apply(g, m).map(|r| r.value), &n).unwrap().value;
            let ba = f2[1].apply(|m| f2[0].apply(g, m).map(|r| r.value), &n).unwrap().value;
            assert_eq!(ab, ba, "{n:?}");
        }
    }

    #[test]
    fn kappa() {
        let p = p2();
        let big_a = p.alpha(3) * p.alpha(4);
        for j in 1..=2 {
            let k = 3 - j;
            let mut z = vec![rat(3, 7), rat(5, 11)];
            z[k - 1] = &big_a / p.alpha(k);
            assert!(kappa_eigenvalue(&p, &z, j).unwrap().is_zero());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let z = random_z(&mut rng, 2);
            for j in 1..=2 {
                assert_eq!(kappa_eigenvalue(&p, &z, j).unwrap(), kappa_expanded(&p, &z, j).unwrap());
            }
        }
        // d = 1: kappa is affine in x_1
        let q = p1();
        let k = |z: Rat| kappa_eigenvalue(&q, &[z], 1).unwrap();
        let x = |z: &Rat| (z + z.recip()) / int(2);
        let (z1, z2, z3) = (int(2), int(3), rat(5, 2));
        let slope = (k(z2.clone()) - k(z1.clone())) / (x(&z2) - x(&z1));
        assert_eq!(k(z3.clone()) - k(z1.clone()), slope * (x(&z3) - x(&z1)));
    }

    #[test]
    fn boundary_terms() {
        let p = p2();
        let fam = build_ln_family(&p).unwrap();
        for op in &fam {
            for n in [[0i64, 0], [1, 0], [3, 0], [0, 1], [2, 1], [1, 1]] {
                for (m, c) in op.coefficients_at(&n).unwrap() {
                    if (n[1] == 0 && m[1] <= -1) || (n[1] == 1 && m[1] == -2) {
                        assert!(c.is_zero(), "shift {m:?} at {n:?}");
                    }
                }
            }
        }
        let constant = NDiffOperator::new(QDiffOperator::identity(2, p.q().clone()).scale(&rat(3, 2)));
        let r = apply_n_operator(&constant, |_| Ok(int(4)), &[0, 0]).unwrap();
        assert_eq!(r.value, int(6));
    }

    #[test]
    fn bispectral_points() {
        let p = p1();
        let b = Bispectral::new(&p).unwrap();
        let r = b.check(&MultiIndex(vec![0]), &[rat(3, 7)], 1).unwrap();
        assert!(r.z_lhs.is_zero() && r.pass);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let z = random_z(&mut rng, 1);
        assert!(bispectral_check(&p, &MultiIndex(vec![2]), &z, 1).unwrap().pass);
        let p = p2();
        let b = Bispectral::new(&p).unwrap();
        let mut done = 0;
        while done < 10 {
            let z = random_z(&mut rng, 2);
            let r1 = b.check(&MultiIndex(vec![1, 1]), &z, 1);
            let r2 = b.check(&MultiIndex(vec![1, 1]), &z, 2);
            match (r1, r2) {
                (Ok(a), Ok(c)) => {
                    assert!(a.pass && c.pass);
                    done += 1;
                }
                (Err(Error::Pole { .. }), _) | (_, Err(Error::Pole { .. })) => continue,
                (Err(e), _) | (_, Err(e)) => panic!("{e}"),
            }
        }
    }
}
