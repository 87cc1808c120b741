//! Star products on finite plane-wave sums, in the symmetric and Duflo
//! orderings, and the Duflo momentum pairing.
//!
//! Both orderings compose plane waves by the BCH group law, so a sum is stored
//! as `(c_k, X_k)` pairs either way; only evaluation differs:
//! symmetric `sum c_k e^{-i<p,X_k>}`, Duflo `sum c_k e^{-i<p,X_k>} / J^{1/2}(X_k)`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once `std` is in the build graph
use num_traits::Float;

use crate::lie::{bch_unreduced, jacobian_sqrt, GroupSpec};
use crate::{AlgebraVector, Error, MomentumVector, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Symmetric,
    Duflo,
}

/// Terms closer than this (coordinate distance) are merged.
pub const MERGE_TOLERANCE: f64 = 1e-12;

/// Below this `J^{1/2}` a Duflo plane wave is treated as singular.
pub const JACOBIAN_TOLERANCE: f64 = 1e-12;

/// A finite complex combination of plane waves `E(X_k, .)`.
#[derive(Debug, Clone)]
pub struct PlaneWaveSum {
    group: GroupSpec,
    scheme: Scheme,
    terms: Vec<(Complex64, AlgebraVector)>,
}

impl PlaneWaveSum {
    pub fn new(group: &GroupSpec, scheme: Scheme) -> Self {
        Self { group: group.clone(), scheme, terms: Vec::new() }
    }

    /// A single plane wave `coeff * E(X, .)`.
    pub fn single(group: &GroupSpec, scheme: Scheme, coeff: Complex64, x: AlgebraVector) -> Result<Self> {
        let mut w = Self::new(group, scheme);
        w.push(coeff, x)?;
        Ok(w)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn terms(&self) -> &[(Complex64, AlgebraVector)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a term, merging it into an existing one at the same point.
    pub fn push(&mut self, coeff: Complex64, x: AlgebraVector) -> Result<()> {
        x.expect_dim(self.group.dim())?;
        if !x.is_finite() {
            return Err(Error::InvalidDimension { expected: self.group.dim(), found: 0 });
        }
        match self.terms.iter_mut().find(|(_, y)| y.distance(&x) <= MERGE_TOLERANCE) {
            Some((c, _)) => *c += coeff,
            None => self.terms.push((coeff, x)),
        }
        Ok(())
    }

    /// Same terms read in another ordering.
    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        Self { scheme, ..self.clone() }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|(c, x)| (c * s, x.clone())).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_compatible(self, other)?;
        let mut out = self.clone();
        for (c, x) in &other.terms {
            out.push(*c, x.clone())?;
        }
        Ok(out)
    }
}

fn check_compatible(a: &PlaneWaveSum, b: &PlaneWaveSum) -> Result<()> {
    if a.scheme != b.scheme || a.group.name() != b.group.name() || a.group.dim() != b.group.dim() {
        Err(Error::OperandMismatch)
    } else {
        Ok(())
    }
}

/// Value of the sum at momentum `p`.
pub fn planewave_eval(w: &PlaneWaveSum, p: &MomentumVector) -> Result<Complex64> {
    p.expect_dim(w.group.dim())?;
    let mut total = Complex64::new(0.0, 0.0);
    for (c, x) in &w.terms {
        let phase = Complex64::from_polar(1.0, -p.pairing(x));
        let weight = match w.scheme {
            Scheme::Symmetric => 1.0,
            Scheme::Duflo => {
                let s = jacobian_sqrt(&w.group, x)?;
                if s.abs() <= JACOBIAN_TOLERANCE {
                    return Err(Error::JacobianZero);
                }
                1.0 / s
            }
        };
        total += c * phase * weight;
    }
    Ok(total)
}

/// `w1 * w2`, the bilinear extension of `E(X) * E(Y) = E(B(X, Y))`.
pub fn star(w1: &PlaneWaveSum, w2: &PlaneWaveSum) -> Result<PlaneWaveSum> {
    check_compatible(w1, w2)?;
    let mut out = PlaneWaveSum::new(&w1.group, w1.scheme);
    for (a, x) in &w1.terms {
        for (b, y) in &w2.terms {
            out.push(a * b, bch_unreduced(&w1.group, x, y)?)?;
        }
    }
    Ok(out)
}

/// Complex conjugate of a sum: `(conj c_k, -X_k)` termwise.
pub fn star_conjugate(w: &PlaneWaveSum) -> PlaneWaveSum {
    PlaneWaveSum {
        terms: w.terms.iter().map(|(c, x)| (c.conj(), -x)).collect(),
        ..w.clone()
    }
}

/// Momentum samples on a rectangular grid of uniformly spaced axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledMomentum {
    axes: Vec<Vec<f64>>,
    /// Row-major, last axis fastest.
    values: Vec<Complex64>,
}

impl SampledMomentum {
    pub fn new(axes: Vec<Vec<f64>>, values: Vec<Complex64>) -> Result<Self> {
        let expected: usize = axes.iter().map(Vec::len).product();
        if axes.is_empty() || axes.iter().any(|a| a.len() < 2) || values.len() != expected {
            return Err(Error::GridMismatch);
        }
        for axis in &axes {
            let h = axis[1] - axis[0];
            let uniform = h > 0.0
                && axis.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(1.0));
            if !uniform {
                return Err(Error::GridMismatch);
            }
        }
        Ok(Self { axes, values })
    }

    /// Samples `f` on the grid spanned by `axes`.
    pub fn from_fn(axes: Vec<Vec<f64>>, f: impl Fn(&MomentumVector) -> Complex64) -> Result<Self> {
        let points = grid_points(&axes);
        let values = points.iter().map(|p| f(p)).collect();
        Self::new(axes, values)
    }

    /// Uniform axis of `n` points on `[-p_max, p_max]`.
    pub fn symmetric_axis(p_max: f64, n: usize) -> Vec<f64> {
        let h = 2.0 * p_max / (n - 1) as f64;
        (0..n).map(|k| -p_max + h * k as f64).collect()
    }

    pub fn axes(&self) -> &[Vec<f64>] {
        &self.axes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn points(&self) -> Vec<MomentumVector> {
        grid_points(&self.axes)
    }

    /// Trapezoid weights (product over axes) in grid order.
    pub fn weights(&self) -> Vec<f64> {
        let per_axis: Vec<Vec<f64>> = self
            .axes
            .iter()
            .map(|a| {
                let h = a[1] - a[0];
                let n = a.len();
                (0..n).map(|k| if k == 0 || k == n - 1 { 0.5 * h } else { h }).collect()
            })
            .collect();
        let mut out: Vec<f64> = alloc::vec![1.0];
        for w in &per_axis {
            out = out.iter().flat_map(|&a| w.iter().map(move |&b| a * b)).collect();
        }
        out
    }
}

fn grid_points(axes: &[Vec<f64>]) -> Vec<MomentumVector> {
    let mut out: Vec<Vec<f64>> = alloc::vec![Vec::new()];
    for axis in axes {
        out = out
            .iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(MomentumVector::from).collect()
}

/// `int d^n p / (2 pi)^n conj(Phi) Psi`: in the Duflo ordering the star
/// product under the integral reduces to the pointwise one.
pub fn pairing_duflo(phi: &SampledMomentum, psi: &SampledMomentum) -> Result<Complex64> {
    if phi.axes != psi.axes {
        return Err(Error::GridMismatch);
    }
    let n = phi.axes.len() as i32;
    let norm = (2.0 * core::f64::consts::PI).powi(n);
    let sum: Complex64 = phi
        .values
        .iter()
        .zip(&psi.values)
        .zip(phi.weights())
        .map(|((a, b), w)| a.conj() * b * w)
        .sum();
    Ok(sum / norm)
}
