//! Individual checks. Each returns one or more reports and never panics on a
//! failed identity; only structural errors propagate.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::quadrature::QuadratureGrid;
use super::{racah_params, rat_json, sample_point, CheckReport};
use crate::aw::{
    mv_norm, mv_poly, mv_poly_hat, mv_poly_symbolic, qracah_poly_mv, qracah_weight, MultiIndex, QParams, RacahPoint,
};
use crate::duality::{build_ln_family, duality_identity_check, kappa_eigenvalue, Bispectral};
use crate::error::{Error, Result};
use crate::laurent::XPoly;
use crate::qdiff::{
    build_ld_delta_form, build_ld_shift_form, build_lz_family, mu_eigenvalue, triangularity_report_for,
    QDiffOperator,
};
use crate::qseries::{sears_pair, QBase};
use crate::rational::{self, rat, Rat};

fn index_json(n: &MultiIndex) -> Value {
    json!(n.0)
}

fn point_value(z: &[Rat], shift: &[i32], q: &Rat) -> Vec<Rat> {
    z.iter()
        .zip(shift)
        .map(|(v, &s)| v * rational::pow(q, s as i64))
        .collect()
}

/// `sum_nu c_nu f(z q^nu)` with coefficients already evaluated.
fn apply_values<F>(coeffs: &BTreeMap<Vec<i32>, Rat>, z: &[Rat], q: &Rat, f: F) -> Result<Rat>
where
    F: Fn(&[Rat]) -> Result<Rat>,
{
    let mut total = Rat::zero();
    for (s, c) in coeffs {
        if !c.is_zero() {
            total += c * f(&point_value(z, s, q))?;
        }
    }
    Ok(total)
}

/// Both sides of the iterated Sears transformation at random balanced
/// parameters, `q = 1/4`.
pub fn sears_check(rng: &mut ChaCha8Rng, trials: usize, max_k: usize) -> Result<Vec<CheckReport>> {
    let base = QBase::real(rat(1, 2))?;
    // digest carrier only; the identity does not involve alpha
    let tag = QParams::with_base(1, base.clone(), vec![Rat::one(); 4])?;
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let k = rng.gen_range(0..=max_k);
        let [a, b, d, e, f] = std::array::from_fn(|_| rational::random_nonzero(rng, 1000));
        let c = &d * &e * &f * base.pow(k as i64 - 1) / (&a * &b);
        match sears_pair(k, &a, &b, &c, &d, &e, &f, &base) {
            Ok((lhs, rhs)) => {
                let inputs = json!({"k": k, "abcdef": rat_json(&[a, b, c, d, e, f])});
                out.push(CheckReport::exact("sears", &tag, inputs, &lhs, &rhs));
            }
            // a lower parameter landed on q^{-j}; draw again
            Err(Error::SeriesPole { .. }) | Err(Error::InvalidArgument(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `L_d(x^n) - c_{|n|} x^n` has no terms of degree `>= |n|`.
pub fn triangularity_check(params: &QParams, max_total: u32) -> Result<Vec<CheckReport>> {
    triangularity_check_for(&build_ld_shift_form(params)?, params, max_total)
}

/// Triangularity for an arbitrary operator, so mutants can be tested.
pub fn triangularity_check_for(op: &QDiffOperator, params: &QParams, max_total: u32) -> Result<Vec<CheckReport>> {
    Ok(triangularity_report_for(op, params, max_total)?
        .into_iter()
        .map(|e| {
            let n = e.monomial.iter().map(|&v| v as i64).sum::<i64>();
            let bad = e.remainder_degree.map_or(0, |g| if g >= n { 1 } else { 0 });
            let inputs = json!({"n": e.monomial, "remainder_degree": e.remainder_degree});
            CheckReport::count("triangularity", params, inputs, bad)
        })
        .collect())
}

/// Shift form and Delta form agree coefficientwise at random points.
pub fn form_equivalence_check(params: &QParams, rng: &mut ChaCha8Rng, points: usize) -> Result<Vec<CheckReport>> {
    let delta = build_ld_delta_form(params)?;
    let shift = build_ld_shift_form(params)?;
    let mut out = Vec::with_capacity(points);
    for _ in 0..points {
        let (z, (a, b)) = sample_point(rng, params.d(), params.q(), |z| {
            Ok((delta.coefficients_at(z)?, shift.coefficients_at(z)?))
        })?;
        let mut keys: Vec<&Vec<i32>> = a.keys().chain(b.keys()).collect();
        keys.sort();
        keys.dedup();
        let zero = Rat::zero();
        let bad = keys
            .iter()
            .filter(|k| a.get(**k).unwrap_or(&zero) != b.get(**k).unwrap_or(&zero))
            .count();
        out.push(CheckReport::count("form-equivalence", params, json!({"z": rat_json(&z)}), bad));
    }
    Ok(out)
}

/// Pairwise commutators of the z-side family: coefficients at random points,
/// and their action on monomials up to `max_total`.
pub fn commutativity_check(
    params: &QParams,
    rng: &mut ChaCha8Rng,
    points: usize,
    max_total: u32,
) -> Result<Vec<CheckReport>> {
    let d = params.d();
    let fam = build_lz_family(params)?;
    let mut out = Vec::new();
    if d < 2 {
        return Ok(out);
    }
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    for _ in 0..points {
        let (z, comms) = sample_point(rng, d, params.q(), |z| {
            pairs
                .iter()
                .map(|&(i, j)| fam[i].commutator_at_point(&fam[j], z))
                .collect::<Result<Vec<_>>>()
        })?;
        for (&(i, j), c) in pairs.iter().zip(&comms) {
            let inputs = json!({"pair": [i + 1, j + 1], "z": rat_json(&z)});
            out.push(CheckReport::count("commutativity", params, inputs, c.len()));
        }
    }
    let prepared: Vec<_> = fam.iter().map(|op| op.prepare()).collect();
    for n in MultiIndex::all_up_to(d, max_total) {
        let xn = XPoly::monomial(d, Rat::one(), n.0.clone());
        let images: Vec<XPoly> = prepared.iter().map(|p| p.apply(&xn)).collect::<Result<_>>()?;
        for &(i, j) in &pairs {
            let ab = prepared[i].apply(&images[j])?;
            let ba = prepared[j].apply(&images[i])?;
            let diff = &ab - &ba;
            let inputs = json!({"pair": [i + 1, j + 1], "monomial": n.0});
            out.push(CheckReport::count("commutativity", params, inputs, diff.len()));
        }
    }
    Ok(out)
}

/// Pointwise exact check of `L^z_j P_n = mu_j P_n` at the given points.
pub fn eigen_check_z(params: &QParams, n: &MultiIndex, points: &[Vec<Rat>], j: usize) -> Result<CheckReport> {
    let fam = build_lz_family(params)?;
    eigen_check_z_with(params, &fam[j - 1], n, points, j, &mu_eigenvalue(params, n, j)?)
}

/// As [`eigen_check_z`], with a given operator and claimed eigenvalue.
pub fn eigen_check_z_with(
    params: &QParams,
    op: &QDiffOperator,
    n: &MultiIndex,
    points: &[Vec<Rat>],
    j: usize,
    mu: &Rat,
) -> Result<CheckReport> {
    let mut bad = 0;
    for z in points {
        let lhs = op.apply_at_point(|w| mv_poly(params, n, w), z)?;
        if lhs != mu * mv_poly(params, n, z)? {
            bad += 1;
        }
    }
    let inputs = json!({"n": index_json(n), "j": j, "points": points.len()});
    Ok(CheckReport::count("eigen-z", params, inputs, bad))
}

/// `L^z_j P_n = mu_j P_n` for all `|n| <= max_total` and every `j`, at
/// `points` random pole-free points shared across `n`.
pub fn eigen_z_check(
    params: &QParams,
    rng: &mut ChaCha8Rng,
    points: usize,
    max_total: u32,
) -> Result<Vec<CheckReport>> {
    let d = params.d();
    let q = params.q().clone();
    let fam = build_lz_family(params)?;
    let mut sampled = Vec::with_capacity(points);
    for _ in 0..points {
        sampled.push(sample_point(rng, d, &q, |z| {
            fam.iter().map(|op| op.coefficients_at(z)).collect::<Result<Vec<_>>>()
        })?);
    }
    let zs: Vec<Value> = sampled.iter().map(|(z, _)| rat_json(z)).collect();
    let mut out = Vec::new();
    for n in MultiIndex::all_up_to(d, max_total) {
        for j in 1..=d {
            let mu = mu_eigenvalue(params, &n, j)?;
            let mut bad = 0;
            for (z, coeffs) in &sampled {
                let lhs = apply_values(&coeffs[j - 1], z, &q, |w| mv_poly(params, &n, w))?;
                if lhs != &mu * mv_poly(params, &n, z)? {
                    bad += 1;
                }
            }
            let inputs = json!({"n": index_json(&n), "j": j, "z": zs});
            out.push(CheckReport::count("eigen-z", params, inputs, bad));
        }
    }
    Ok(out)
}

/// `P̂(n; z; alpha) = P̂(n~; z~; alpha~)` with `z` reconstructed from `n~`.
pub fn duality_check(params: &QParams, max_total: u32) -> Result<Vec<CheckReport>> {
    let d = params.d();
    let mut out = Vec::new();
    for n in MultiIndex::all_up_to(d, max_total) {
        for nt in MultiIndex::all_up_to(d, max_total) {
            let r = duality_identity_check(params, &n, &nt)?;
            let inputs = json!({"n": index_json(&n), "n_dual": index_json(&nt)});
            out.push(CheckReport::exact("duality", params, inputs, &r.lhs, &r.rhs));
        }
    }
    Ok(out)
}

/// `L^n_j P̂ = kappa_j P̂` on the lattice, boundary points included.
pub fn bispectral_n_check(
    params: &QParams,
    rng: &mut ChaCha8Rng,
    points: usize,
    max_total: u32,
) -> Result<Vec<CheckReport>> {
    let d = params.d();
    let bis = Bispectral::new(params)?;
    let mut zs = Vec::with_capacity(points);
    for _ in 0..points {
        let (z, _) = sample_point(rng, d, params.q(), |z| {
            (1..=d).map(|j| kappa_eigenvalue(params, z, j)).collect::<Result<Vec<_>>>()?;
            mv_poly_hat(params, &MultiIndex::zero(d), z)
        })?;
        zs.push(z);
    }
    let mut out = Vec::new();
    for n in MultiIndex::all_up_to(d, max_total) {
        for j in 1..=d {
            for z in &zs {
                let inputs = json!({"n": index_json(&n), "j": j, "z": rat_json(z)});
                match bis.check_n(&n, z, j) {
                    Ok((lhs, rhs, dropped)) => {
                        let mut inputs = inputs;
                        inputs["dropped"] = json!(dropped);
                        out.push(CheckReport::exact("bispectral-n", params, inputs, &lhs, &rhs));
                    }
                    Err(Error::BoundaryViolation { coefficient, .. }) => {
                        let mut r = CheckReport::count("bispectral-n", params, inputs, 1);
                        r.observed = format!("boundary coefficient {coefficient}");
                        r.pass = false;
                        out.push(r);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

/// Every term of `L^n_j` that leaves `N_0^d` from a lattice point with
/// `|n| <= max_total` has a zero coefficient there, and every such coefficient
/// carries the vanishing factor symbolically.
pub fn boundary_check(params: &QParams, max_total: u32) -> Result<Vec<CheckReport>> {
    let d = params.d();
    let fam = build_ln_family(params)?;
    let mut out = Vec::new();
    for (idx, op) in fam.iter().enumerate() {
        let mut bad = 0;
        let mut leaving = 0;
        for n in MultiIndex::all_up_to(d, max_total) {
            let lattice: Vec<i64> = n.0.iter().map(|&v| v as i64).collect();
            for (m, c) in op.coefficients_at(&lattice)? {
                if lattice.iter().zip(&m).any(|(a, b)| a + (*b as i64) < 0) {
                    leaving += 1;
                    if !c.is_zero() {
                        bad += 1;
                    }
                }
            }
        }
        let table: Vec<Value> = op
            .boundary()
            .iter()
            .map(|b| json!({"shift": b.shift, "coordinate": b.coordinate, "divisible": b.divisible}))
            .collect();
        bad += op.boundary().iter().filter(|b| !b.divisible).count();
        let inputs = json!({"j": idx + 1, "max_total": max_total, "leaving_terms": leaving, "table": table});
        out.push(CheckReport::count("boundary", params, inputs, bad));
    }
    Ok(out)
}

/// Cached `P_n` values on a grid.
struct PolyCache<'a> {
    params: &'a QParams,
    grid: &'a QuadratureGrid,
    values: BTreeMap<MultiIndex, Vec<f64>>,
}

impl<'a> PolyCache<'a> {
    fn get(&mut self, n: &MultiIndex) -> Result<&Vec<f64>> {
        if !self.values.contains_key(n) {
            let p = mv_poly_symbolic(self.params, n)?.to_f64();
            self.values.insert(n.clone(), self.grid.values(&p));
        }
        Ok(&self.values[n])
    }
}

/// `<P_n, P_m>` against `delta_{nm} H_n`, tolerance `1e-6 max(H_n, H_0)`.
pub fn orthogonality_check(
    params: &QParams,
    n: &MultiIndex,
    m: &MultiIndex,
    grid: &QuadratureGrid,
    eps: f64,
) -> Result<CheckReport> {
    let mut cache = PolyCache { params, grid, values: BTreeMap::new() };
    orthogonality_cached(&mut cache, n, m, eps)
}

fn orthogonality_cached(cache: &mut PolyCache, n: &MultiIndex, m: &MultiIndex, eps: f64) -> Result<CheckReport> {
    let params = cache.params;
    let hn = mv_norm(params, n, eps)?;
    let h0 = mv_norm(params, &MultiIndex::zero(params.d()), eps)?;
    let grid = cache.grid;
    let f = cache.get(n)?.clone();
    let g = cache.get(m)?;
    let observed = grid.inner_product_values(&f, g)?;
    let expected = if n == m { hn } else { 0.0 };
    let inputs = json!({"n": index_json(n), "m": index_json(m), "grid": cache.grid.m(), "eps": super::fmt_f64(eps)});
    Ok(CheckReport::numeric(
        "orthogonality",
        params,
        inputs,
        observed,
        expected,
        1e-6 * hn.max(h0),
    ))
}

/// All pairs `n <= m` with `|n|, |m| <= max_total`.
pub fn orthogonality_suite(
    params: &QParams,
    grid: &QuadratureGrid,
    max_total: u32,
    eps: f64,
) -> Result<Vec<CheckReport>> {
    let idx = MultiIndex::all_up_to(params.d(), max_total);
    let mut cache = PolyCache { params, grid, values: BTreeMap::new() };
    let mut out = Vec::new();
    for (a, n) in idx.iter().enumerate() {
        for m in &idx[a..] {
            out.push(orthogonality_cached(&mut cache, n, m, eps)?);
        }
    }
    Ok(out)
}

/// `|<L f, g> - <f, L g>| <= 1e-6 (1 + |<f, g>|)` for the full operator `L_d`.
pub fn self_adjointness_check(params: &QParams, f: &XPoly, g: &XPoly, grid: &QuadratureGrid) -> Result<CheckReport> {
    let op = build_ld_shift_form(params)?.prepare();
    self_adjoint_with(params, &op, f, g, grid)
}

fn self_adjoint_with(
    params: &QParams,
    op: &crate::qdiff::PreparedOperator,
    f: &XPoly,
    g: &XPoly,
    grid: &QuadratureGrid,
) -> Result<CheckReport> {
    let lf = op.apply(f)?;
    let lg = op.apply(g)?;
    let v = |p: &XPoly| grid.values(&p.to_f64());
    let (fv, gv) = (v(f), v(g));
    let lhs = grid.inner_product_values(&v(&lf), &gv)?;
    let rhs = grid.inner_product_values(&fv, &v(&lg))?;
    let fg = grid.inner_product_values(&fv, &gv)?;
    let inputs = json!({"f": f.to_json(), "g": g.to_json(), "grid": grid.m()});
    Ok(CheckReport::numeric(
        "self-adjointness",
        params,
        inputs,
        lhs,
        rhs,
        1e-6 * (1.0 + fg.abs()),
    ))
}

/// Random polynomial in `x` of total degree `<= max_total` with small rational
/// coefficients.
pub fn random_xpoly(rng: &mut ChaCha8Rng, d: usize, max_total: u32) -> XPoly {
    XPoly::from_terms(
        d,
        MultiIndex::all_up_to(d, max_total)
            .into_iter()
            .map(|n| (n.0, rational::random_small(rng, 9))),
    )
}

/// `pairs` random degree-`<= 2` pairs.
pub fn self_adjointness_suite(
    params: &QParams,
    grid: &QuadratureGrid,
    rng: &mut ChaCha8Rng,
    pairs: usize,
) -> Result<Vec<CheckReport>> {
    let op = build_ld_shift_form(params)?.prepare();
    let d = params.d();
    (0..pairs)
        .map(|_| {
            let f = random_xpoly(rng, d, 2);
            let g = random_xpoly(rng, d, 2);
            self_adjoint_with(params, &op, &f, &g, grid)
        })
        .collect()
}

/// Exact `sum_y rho(y) R_n(y) R_m(y)` over the monotone chains below `N`.
/// Off the diagonal the sum must vanish; on it, it must not.
pub fn qracah_orthogonality_exact(params: &QParams, n: &MultiIndex, m: &MultiIndex, big_n: u32) -> Result<CheckReport> {
    let mut sum = Rat::zero();
    for y in RacahPoint::chains(params.d(), big_n) {
        let rn = qracah_poly_mv(params, n, &y)?;
        if rn.is_zero() {
            continue;
        }
        let rm = if n == m { rn.clone() } else { qracah_poly_mv(params, m, &y)? };
        sum += qracah_weight(params, &y)? * rn * rm;
    }
    let inputs = json!({"n": index_json(n), "m": index_json(m), "N": big_n});
    Ok(if n == m {
        CheckReport::nonzero("qracah-exact", params, inputs, &sum)
    } else {
        CheckReport::exact("qracah-exact", params, inputs, &sum, &Rat::zero())
    })
}

/// All pairs `n <= m` with `|n|, |m| <= max_total` for every `N <= max_n`.
/// The diagonal is only asserted nonzero when `|n| <= N`; above that the
/// lattice is too small to carry `R_n`.
pub fn qracah_suite(d: usize, max_n: u32, max_total: u32) -> Result<Vec<CheckReport>> {
    let idx = MultiIndex::all_up_to(d, max_total);
    let mut out = Vec::new();
    for big_n in 0..=max_n {
        let params = racah_params(d, big_n)?;
        for (a, n) in idx.iter().enumerate() {
            for m in &idx[a..] {
                if n == m && n.total() > big_n as i64 {
                    continue;
                }
                out.push(qracah_orthogonality_exact(&params, n, m, big_n)?);
            }
        }
    }
    Ok(out)
}
