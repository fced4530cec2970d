//! The duality involution on `(n, z, alpha)`, the map from z-side operators
//! to lattice operators in `n`, and the bispectral checks.
//!
//! Lattice operators are stored as [`QDiffOperator`]s in the variables
//! `u_k = q^{n_k}`: the shift `E_{n_k}` is `u_k -> q u_k`.

use num_traits::{One, Zero};

use crate::aw::{mv_poly_hat, MultiIndex, QParams};
use crate::coeff::CoeffFn;
use crate::error::{Error, Result};
use crate::laurent::{exact_divide, LaurentPoly};
use crate::qdiff::{build_lz_family, mu_eigenvalue, QDiffOperator};
use crate::rational::{self, Rat};

/// A point `(q^n, z, alpha)`; `n` is stored through `q^{n_j}` so that the
/// dual of a lattice point need not be a lattice point.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityPoint {
    pub qn: Vec<Rat>,
    pub z: Vec<Rat>,
    pub params: QParams,
}

impl DualityPoint {
    pub fn from_lattice(params: &QParams, n: &MultiIndex, z: Vec<Rat>) -> Self {
        let qn = n.0.iter().map(|&k| params.base().pow(k as i64)).collect();
        DualityPoint { qn, z, params: params.clone() }
    }

    /// `q^{N_k} = q^{n_1} ... q^{n_k}`.
    fn q_partial(&self, k: usize) -> Rat {
        self.qn[..k].iter().fold(Rat::one(), |acc, v| acc * v)
    }
}

/// `alpha~`: the image of the parameters under the duality.
pub fn dual_params(params: &QParams) -> Result<QParams> {
    let d = params.d();
    let s = params.s();
    let a = params.alphas();
    let big_a = &a[d + 1] * &a[d + 2];
    let mut t = Vec::with_capacity(d + 3);
    t.push(a[0].clone());
    for j in 1..=d + 1 {
        t.push(&a[0] * &big_a * s / &a[d + 2 - j]);
    }
    t.push(&a[1] / (&a[0] * s));
    QParams::with_base(d, params.base().clone(), t)
}

/// The duality map `(n, z, alpha) -> (n~, z~, alpha~)`.
pub fn dual_map(point: &DualityPoint) -> Result<DualityPoint> {
    let p = &point.params;
    let d = p.d();
    if point.qn.len() != d || point.z.len() != d {
        return Err(Error::DimensionMismatch(point.z.len(), d));
    }
    if let Some(i) = point.z.iter().position(|v| v.is_zero()) {
        return Err(Error::ZeroComponent(i + 1));
    }
    let a = p.alphas();
    let mut qn = Vec::with_capacity(d);
    for j in 1..=d {
        let num = &a[d + 1 - j] * p.z_ext(&point.z, d + 1 - j);
        let den = &a[d + 2 - j] * p.z_ext(&point.z, d + 2 - j);
        qn.push(num / den);
    }
    let z = (1..=d)
        .map(|j| &a[d + 2 - j] / &a[0] * point.q_partial(d + 1 - j) / p.s())
        .collect();
    Ok(DualityPoint { qn, z, params: dual_params(p)? })
}

/// The point `z` at which the dual index is `n~`:
/// `z_k = (alpha_{d+1} alpha_{d+2} / alpha_k) q^{N~_{d+1-k}}`.
pub fn z_from_dual_index(params: &QParams, nt: &MultiIndex) -> Vec<Rat> {
    let d = params.d();
    let big_a = params.alpha(d + 1) * params.alpha(d + 2);
    (1..=d)
        .map(|k| &big_a / params.alpha(k) * params.base().pow(nt.partial(d + 1 - k)))
        .collect()
}

/// Outcome of one duality comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub n: MultiIndex,
    pub n_dual: MultiIndex,
    pub lhs: Rat,
    pub rhs: Rat,
    pub pass: bool,
}

/// Compares `P̂(n; z; alpha)` with `P̂(n~; z~; alpha~)` at the `z` determined by `n~`.
pub fn duality_identity_check(params: &QParams, n: &MultiIndex, nt: &MultiIndex) -> Result<DualityReport> {
    let z = z_from_dual_index(params, nt);
    let point = DualityPoint::from_lattice(params, n, z.clone());
    let dual = dual_map(&point)?;
    let expect_qn: Vec<Rat> = nt.0.iter().map(|&k| params.base().pow(k as i64)).collect();
    if dual.qn != expect_qn {
        return Err(Error::InvalidArgument("reconstructed z does not give the requested dual index".into()));
    }
    let lhs = mv_poly_hat(params, n, &z)?;
    let rhs = mv_poly_hat(&dual.params, nt, &dual.z)?;
    Ok(DualityReport {
        n: n.clone(),
        n_dual: nt.clone(),
        pass: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Images `z_j -> (alpha_{d+2-j}/alpha_0) s^{-1} u_1 ... u_{d+1-j}` as
/// single terms in `u`.
pub fn z_images(params: &QParams) -> Vec<LaurentPoly> {
    let d = params.d();
    (1..=d)
        .map(|j| {
            let c = params.alpha(d + 2 - j) / params.alpha(0) / params.s();
            let e = (1..=d).map(|i| if i <= d + 1 - j { 1 } else { 0 }).collect();
            LaurentPoly::monomial(d, c, e)
        })
        .collect()
}

/// `E_{z_j} -> E_{n_{d+1-j}} E_{n_{d+2-j}}^{-1}` on shift vectors.
pub fn map_shift(nu: &[i32]) -> Vec<i32> {
    let d = nu.len();
    let mut m = vec![0; d];
    for j in 1..=d {
        m[d - j] += nu[j - 1];
        if d + 2 - j <= d {
            m[d + 1 - j] -= nu[j - 1];
        }
    }
    m
}

/// A support entry of a lattice operator that can leave `N_0^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryEntry {
    pub shift: Vec<i32>,
    /// Coordinate (1-based) that can become negative.
    pub coordinate: usize,
    /// `prod_{t < depth} (1 - q^t / u_k)`, vanishing exactly where the shift leaves the lattice.
    pub factor: LaurentPoly,
    /// Whether the coefficient numerator is divisible by `factor`.
    pub divisible: bool,
}

/// Difference operator on `N_0^d` with boundary bookkeeping.
#[derive(Debug, Clone)]
pub struct NDiffOperator {
    op: QDiffOperator,
    boundary: Vec<BoundaryEntry>,
}

/// The algebra map `b` restricted to coefficients and shifts. The
/// coefficients of `op` must already be written with the image parameters
/// `b(alpha) = alpha~` (as for operators built from [`dual_params`]).
pub struct BMap {
    images: Vec<LaurentPoly>,
    dim: usize,
}

impl BMap {
    pub fn new(params: &QParams) -> Self {
        BMap { images: z_images(params), dim: params.d() }
    }

    pub fn coeff(&self, c: &CoeffFn) -> Result<CoeffFn> {
        c.substitute_monomials(&self.images)
    }

    pub fn operator(&self, op: &QDiffOperator) -> Result<NDiffOperator> {
        if op.dim() != self.dim {
            return Err(Error::DimensionMismatch(op.dim(), self.dim));
        }
        let mut out = QDiffOperator::zero(self.dim, op.q().clone());
        for (nu, c) in op.terms() {
            out.add_term(map_shift(nu), self.coeff(c)?);
        }
        Ok(NDiffOperator::new(out))
    }
}

/// `b(op)`; see [`BMap`].
pub fn b_map(op: &QDiffOperator, params: &QParams) -> Result<NDiffOperator> {
    BMap::new(params).operator(op)
}

/// Result of applying a lattice operator at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct NApplication {
    pub value: Rat,
    /// Shifts whose target left the lattice; each had a zero coefficient.
    pub dropped: Vec<Vec<i32>>,
}

impl NDiffOperator {
    pub fn new(op: QDiffOperator) -> Self {
        let q = op.q().clone();
        let dim = op.dim();
        let mut boundary = Vec::new();
        for (m, c) in op.terms() {
            for k in 1..=dim {
                let depth = -m[k - 1];
                if depth <= 0 {
                    continue;
                }
                let one = LaurentPoly::one(dim);
                let mut factor = one.clone();
                for t in 0..depth {
                    let term = LaurentPoly::var_pow(dim, k, -1).scale(&rational::pow(&q, t as i64));
                    factor = &factor * &(&one - &term);
                }
                let divisible = exact_divide(c.num(), &factor).is_ok();
                boundary.push(BoundaryEntry { shift: m.clone(), coordinate: k, factor, divisible });
            }
        }
        NDiffOperator { op, boundary }
    }

    pub fn operator(&self) -> &QDiffOperator {
        &self.op
    }

    pub fn boundary(&self) -> &[BoundaryEntry] {
        &self.boundary
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn support(&self) -> Vec<Vec<i32>> {
        self.op.support()
    }

    /// Coefficient values at the lattice point `n`.
    pub fn coefficients_at(&self, n: &[i64]) -> Result<Vec<(Vec<i32>, Rat)>> {
        let u: Vec<Rat> = n.iter().map(|&k| rational::pow(self.op.q(), k)).collect();
        Ok(self.op.coefficients_at(&u)?.into_iter().collect())
    }

    /// `sum_m c_m(q^n) f(n + m)`; terms leaving `N_0^d` must have a zero
    /// coefficient and are then dropped.
    pub fn apply<F>(&self, f: F, n: &[i64]) -> Result<NApplication>
    where
        F: Fn(&[i64]) -> Result<Rat>,
    {
        if n.len() != self.dim() {
            return Err(Error::DimensionMismatch(n.len(), self.dim()));
        }
        if n.iter().any(|&k| k < 0) {
            return Err(Error::InvalidArgument(format!("{n:?} is not a lattice point")));
        }
        let mut value = Rat::zero();
        let mut dropped = Vec::new();
        for (m, c) in self.coefficients_at(n)? {
            let target: Vec<i64> = n.iter().zip(&m).map(|(a, b)| a + *b as i64).collect();
            if target.iter().any(|&k| k < 0) {
                if !c.is_zero() {
                    return Err(Error::BoundaryViolation {
                        shift: m,
                        n: n.to_vec(),
                        coefficient: c.to_string(),
                    });
                }
                dropped.push(m);
                continue;
            }
            if !c.is_zero() {
                value += c * f(&target)?;
            }
        }
        Ok(NApplication { value, dropped })
    }
}

/// `apply_n_operator` in free-function form.
pub fn apply_n_operator<F>(op: &NDiffOperator, f: F, n: &[i64]) -> Result<NApplication>
where
    F: Fn(&[i64]) -> Result<Rat>,
{
    op.apply(f, n)
}

/// `L^n_k = b(L^z_k)`, with `L^z_k` built from the dual parameters.
pub fn build_ln_family(params: &QParams) -> Result<Vec<NDiffOperator>> {
    let bm = BMap::new(params);
    build_lz_family(&dual_params(params)?)?
        .iter()
        .map(|op| bm.operator(op))
        .collect()
}

/// `kappa_j = -(1 - A/(alpha_{d+1-j} z_{d+1-j}))(1 - A z_{d+1-j}/alpha_{d+1-j})`, `A = alpha_{d+1} alpha_{d+2}`.
pub fn kappa_eigenvalue(params: &QParams, z: &[Rat], j: usize) -> Result<Rat> {
    let d = params.d();
    if j == 0 || j > d {
        return Err(Error::IndexOutOfRange { index: j, dim: d });
    }
    let k = d + 1 - j;
    let zk = &z[k - 1];
    if zk.is_zero() {
        return Err(Error::ZeroComponent(k));
    }
    let big_a = params.alpha(d + 1) * params.alpha(d + 2);
    let ak = params.alpha(k);
    Ok(-(Rat::one() - &big_a / (ak * zk)) * (Rat::one() - &big_a * zk / ak))
}

/// The expanded form `-1 - A^2/alpha^2 + 2 A x / alpha` of `kappa_j`.
pub fn kappa_expanded(params: &QParams, z: &[Rat], j: usize) -> Result<Rat> {
    let d = params.d();
    if j == 0 || j > d {
        return Err(Error::IndexOutOfRange { index: j, dim: d });
    }
    let k = d + 1 - j;
    let zk = &z[k - 1];
    if zk.is_zero() {
        return Err(Error::ZeroComponent(k));
    }
    let big_a = params.alpha(d + 1) * params.alpha(d + 2);
    let ak = params.alpha(k);
    let x = (zk + zk.recip()) / rational::int(2);
    Ok(-Rat::one() - &big_a * &big_a / (ak * ak) + rational::int(2) * &big_a / ak * x)
}

/// Both spectral equations at one `(n, z, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BispectralReport {
    pub n: MultiIndex,
    pub j: usize,
    pub z_lhs: Rat,
    pub z_rhs: Rat,
    pub n_lhs: Rat,
    pub n_rhs: Rat,
    pub dropped: Vec<Vec<i32>>,
    pub pass: bool,
}

/// Prebuilt operator families for repeated bispectral checks.
pub struct Bispectral {
    params: QParams,
    lz: Vec<QDiffOperator>,
    ln: Vec<NDiffOperator>,
}

impl Bispectral {
    pub fn new(params: &QParams) -> Result<Self> {
        Ok(Bispectral {
            params: params.clone(),
            lz: build_lz_family(params)?,
            ln: build_ln_family(params)?,
        })
    }

    pub fn lz(&self) -> &[QDiffOperator] {
        &self.lz
    }

    pub fn ln(&self) -> &[NDiffOperator] {
        &self.ln
    }

    /// The z-side equation only.
    pub fn check_z(&self, n: &MultiIndex, z: &[Rat], j: usize) -> Result<(Rat, Rat)> {
        let p = &self.params;
        let lhs = self.lz[j - 1].apply_at_point(|w| mv_poly_hat(p, n, w), z)?;
        let rhs = mu_eigenvalue(p, n, j)? * mv_poly_hat(p, n, z)?;
        Ok((lhs, rhs))
    }

    /// The n-side equation only.
    pub fn check_n(&self, n: &MultiIndex, z: &[Rat], j: usize) -> Result<(Rat, Rat, Vec<Vec<i32>>)> {
        let p = &self.params;
        let f = |m: &[i64]| mv_poly_hat(p, &MultiIndex(m.iter().map(|&v| v as u32).collect()), z);
        let lattice: Vec<i64> = n.0.iter().map(|&v| v as i64).collect();
        let app = self.ln[j - 1].apply(f, &lattice)?;
        let rhs = kappa_eigenvalue(p, z, j)? * mv_poly_hat(p, n, z)?;
        Ok((app.value, rhs, app.dropped))
    }

    pub fn check(&self, n: &MultiIndex, z: &[Rat], j: usize) -> Result<BispectralReport> {
        let (z_lhs, z_rhs) = self.check_z(n, z, j)?;
        let (n_lhs, n_rhs, dropped) = self.check_n(n, z, j)?;
        Ok(BispectralReport {
            n: n.clone(),
            j,
            pass: z_lhs == z_rhs && n_lhs == n_rhs,
            z_lhs,
            z_rhs,
            n_lhs,
            n_rhs,
            dropped,
        })
    }
}

/// One-off bispectral check; builds both families.
pub fn bispectral_check(params: &QParams, n: &MultiIndex, z: &[Rat], j: usize) -> Result<BispectralReport> {
    Bispectral::new(params)?.check(n, z, j)
}
