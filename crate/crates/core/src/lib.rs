//! Multivariable Askey-Wilson polynomials and their bispectral operators.
//!
//! The crate is organised bottom-up:
//!
//! - [`qseries`]: q-shifted factorials, truncated infinite products, the
//!   terminating balanced `4phi3` series and the iterated Sears transformation.
//! - [`laurent`]: exact multivariate Laurent polynomials over the rationals,
//!   the involutions `z_j -> 1/z_j` and the `x_j = (z_j + 1/z_j)/2` basis.
//! - [`aw`]: the one-dimensional and multivariable Askey-Wilson polynomials,
//!   their weights and norms, the normalised polynomials used by the duality,
//!   and the q-Racah specialisation.
//! - [`coeff`] and [`qdiff`]: rational-function coefficients and the algebra of
//!   q-difference operators, including the triangular operator `L_d` in its
//!   two forms and the commuting family `L^z_1, ..., L^z_d`.
//! - [`duality`]: the duality involution, the algebra map onto lattice
//!   operators in `n`, and the bispectral checks.
//! - [`harness`]: torus quadrature, numeric and exact verification checks and
//!   a deterministic suite runner.
//! - [`cli`]: the command-line front end used by the `awb` binary.
//!
//! All identity checks run in exact rational arithmetic. `q` is always given
//! as the square of a rational `s`, so every `q^{1/2}` is exact.
//!
//! ```
//! use aw_bispectral::aw::{mv_poly, QParams};
//! use aw_bispectral::qdiff::{build_lz_family, mu_eigenvalue};
//! use aw_bispectral::rational::{int, rat};
//! use aw_bispectral::MultiIndex;
//!
//! # fn main() -> aw_bispectral::Result<()> {
//! let p = QParams::new(2, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(1, 7), rat(3, 2)])?;
//! let n = MultiIndex(vec![1, 2]);
//! let z = [rat(3, 7), rat(5, 11)];
//! let fam = build_lz_family(&p)?;
//! let lhs = fam[0].apply_at_point(|w| mv_poly(&p, &n, w), &z)?;
//! assert_eq!(lhs, mu_eigenvalue(&p, &n, 1)? * mv_poly(&p, &n, &z)?);
//! # Ok(())
//! # }
//! ```

pub mod aw;
pub mod cli;
pub mod coeff;
pub mod duality;
pub mod error;
pub mod harness;
pub mod laurent;
pub mod qdiff;
pub mod qseries;
pub mod rational;

pub use aw::{MultiIndex, QParams, RacahPoint};
pub use coeff::CoeffFn;
pub use qdiff::QDiffOperator;
pub use duality::{BMap, DualityPoint, NDiffOperator};
pub use error::{Error, Result};
pub use laurent::{LaurentPoly, XPoly};
pub use qseries::QBase;
pub use rational::Rat;
