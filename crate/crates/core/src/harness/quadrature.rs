//! Trapezoid rule on the d-torus.
//!
//! `<f, g> = (2m)^{-d} sum_theta f(x) g(x) w(e^{i theta})` over the uniform
//! grid `theta_j = 2 pi k_j / m`, with `x_j = cos theta_j`. The integrand is
//! smooth and periodic, so the rule converges spectrally in `m`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::aw::{mv_weight, QParams};
use crate::error::{Error, Result};
use crate::laurent::XPolyF64;

/// Points per dimension used when nothing else is requested.
pub fn default_points(d: usize) -> usize {
    match d {
        1 => 256,
        2 => 128,
        _ => 64,
    }
}

/// Default truncation for the infinite products in the weight.
pub const DEFAULT_EPS: f64 = 1e-16;

#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    d: usize,
    m: usize,
    /// `x` coordinates, `d` per node.
    nodes: Vec<f64>,
    /// Weight times `(2m)^{-d}`.
    weights: Vec<f64>,
}

impl QuadratureGrid {
    /// Builds the grid and tabulates the weight; fails if the parameters
    /// violate the positivity constraints.
    pub fn new(params: &QParams, m: usize, eps: f64) -> Result<Self> {
        if m < 8 {
            return Err(Error::InvalidArgument(format!("grid needs at least 8 points per dimension, got {m}")));
        }
        params.check_chain()?;
        let d = params.d();
        let total = m.checked_pow(d as u32).ok_or_else(|| Error::InvalidArgument("grid too large".into()))?;
        let scale = (2.0 * m as f64).powi(-(d as i32));
        let circle: Vec<(f64, Complex64)> = (0..m)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / m as f64;
                (t.cos(), Complex64::from_polar(1.0, t))
            })
            .collect();
        let mut nodes = Vec::with_capacity(total * d);
        let mut weights = Vec::with_capacity(total);
        let mut idx = vec![0usize; d];
        let mut z = vec![Complex64::new(1.0, 0.0); d];
        for _ in 0..total {
            for j in 0..d {
                nodes.push(circle[idx[j]].0);
                z[j] = circle[idx[j]].1;
            }
            weights.push(mv_weight(params, &z, eps)? * scale);
            for j in (0..d).rev() {
                idx[j] += 1;
                if idx[j] < m {
                    break;
                }
                idx[j] = 0;
            }
        }
        Ok(QuadratureGrid { d, m, nodes, weights })
    }

    /// Grid with the default number of points for the dimension.
    pub fn with_defaults(params: &QParams) -> Result<Self> {
        Self::new(params, default_points(params.d()), DEFAULT_EPS)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `x` coordinates of every node.
    pub fn nodes(&self) -> impl Iterator<Item = &[f64]> {
        self.nodes.chunks(self.d)
    }

    /// Values of a polynomial at every node.
    pub fn values(&self, p: &XPolyF64) -> Vec<f64> {
        self.nodes().map(|x| p.evaluate(x)).collect()
    }

    /// Values of an arbitrary function of `x` at every node.
    pub fn values_of<F: Fn(&[f64]) -> f64>(&self, f: F) -> Vec<f64> {
        self.nodes().map(f).collect()
    }

    /// `<f, g>` from tabulated values.
    pub fn inner_product_values(&self, f: &[f64], g: &[f64]) -> Result<f64> {
        if f.len() != self.len() || g.len() != self.len() {
            return Err(Error::DimensionMismatch(f.len().min(g.len()), self.len()));
        }
        Ok(f.iter().zip(g).zip(&self.weights).map(|((a, b), w)| a * b * w).sum())
    }

    /// `<f, g>` for functions of `x`.
    pub fn inner_product<F, G>(&self, f: F, g: G) -> f64
    where
        F: Fn(&[f64]) -> f64,
        G: Fn(&[f64]) -> f64,
    {
        self.nodes()
            .zip(&self.weights)
            .map(|(x, w)| f(x) * g(x) * w)
            .sum()
    }
}

/// `<f, g>` on a freshly built grid.
pub fn inner_product<F, G>(params: &QParams, f: F, g: G, m: usize, eps: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> f64,
{
    Ok(QuadratureGrid::new(params, m, eps)?.inner_product(f, g))
}
