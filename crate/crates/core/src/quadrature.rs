//! Deterministic Gaussian quadrature: 1D Gauss-Legendre, periodic trapezoid,
//! spherical and box tensor rules on the algebra, and polar rules on planes.
//!
//! Every integrator reports an error estimate from an order-doubling
//! comparison and returns the finer of the two values.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once `std` is in the build graph
use num_traits::Float;

use crate::lie::{jacobian, GroupSpec};
use crate::{AlgebraVector, Error, Result};

/// Nodes and weights of a 1D rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn integrate<T>(&self, mut f: impl FnMut(f64) -> T) -> T
    where
        T: core::ops::Mul<f64, Output = T> + core::iter::Sum<T>,
    {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| f(x) * w).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `n`-point Gauss-Legendre rule on `[a, b]`, nodes ascending. Exact for
/// polynomials of degree `2n - 1`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Rule {
    assert!(n >= 1, "a quadrature rule needs at least one node");
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
            }
            dp = nf * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() <= 1e-16 {
                break;
            }
        }
        let w = 2.0 * half / ((1.0 - z * z) * dp * dp);
        nodes[i] = mid - half * z;
        nodes[n - 1 - i] = mid + half * z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

/// `n`-point trapezoid rule on the periodic interval `[a, b)`.
pub fn periodic_trapezoid(n: usize, a: f64, b: f64) -> Rule {
    assert!(n >= 1, "a quadrature rule needs at least one node");
    let h = (b - a) / n as f64;
    Rule {
        nodes: (0..n).map(|k| a + h * k as f64).collect(),
        weights: alloc::vec![h; n],
    }
}

/// Orders and cutoffs for the algebra and plane integrators.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub radial_order: usize,
    /// `(n_theta, n_phi)` for spheres; `n_phi` also serves polar plane rules.
    pub angular_orders: (usize, usize),
    /// Per-axis orders for box rules; empty means `radial_order` everywhere.
    pub box_orders: Vec<usize>,
    pub cutoff_radius: f64,
    pub target_rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radial_order: 64,
            angular_orders: (24, 48),
            box_orders: Vec::new(),
            cutoff_radius: 10.0,
            target_rel_tol: 1e-8,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let orders_ok = self.radial_order >= 2
            && self.angular_orders.0 >= 2
            && self.angular_orders.1 >= 2
            && self.box_orders.iter().all(|&o| o >= 2);
        if !orders_ok || !(self.cutoff_radius > 0.0) || !(self.target_rel_tol > 0.0) {
            return Err(Error::InvalidGroup("quadrature orders must be >= 2 and cutoff positive".into()));
        }
        Ok(())
    }

    fn doubled(&self) -> Self {
        Self {
            radial_order: 2 * self.radial_order,
            angular_orders: (2 * self.angular_orders.0, 2 * self.angular_orders.1),
            box_orders: self.box_orders.iter().map(|o| 2 * o).collect(),
            ..self.clone()
        }
    }
}

/// A quadrature value with its order-doubling error estimate and the
/// absolute-value integral used as the relative scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub scale: f64,
}

impl Estimate {
    fn check(self, tol: f64) -> Result<Self> {
        if self.error <= tol * self.scale || self.error <= 1e-300 {
            Ok(self)
        } else {
            let estimate = if self.scale > 0.0 { self.error / self.scale } else { self.error };
            Err(Error::QuadratureUnderResolved { estimate, tolerance: tol })
        }
    }
}

/// Integration domain on the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// The principal branch (SU(2): ball of radius pi; abelian: the box
    /// `(-pi, pi)^r`).
    PrincipalBranch,
    /// Ball (or box, for abelian groups) of radius `cutoff_radius`.
    CutoffBall,
}

/// 1D Gauss-Legendre integral with order doubling.
pub fn integrate_interval(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    order: usize,
    tol: f64,
) -> Result<Estimate> {
    let coarse = gauss_legendre(order, a, b).integrate(f);
    let fine_rule = gauss_legendre(2 * order, a, b);
    let mut scale = 0.0;
    let mut value = Complex64::new(0.0, 0.0);
    for (&x, &w) in fine_rule.nodes.iter().zip(&fine_rule.weights) {
        let fx = f(x);
        value += fx * w;
        scale += fx.norm() * w;
    }
    Estimate { value, error: (value - coarse).norm(), scale }.check(tol)
}

/// Real 1D Gauss-Legendre integral with order doubling.
pub fn integrate_interval_real(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    order: usize,
    tol: f64,
) -> Result<f64> {
    integrate_interval(&|x| Complex64::new(f(x), 0.0), a, b, order, tol).map(|e| e.value.re)
}

/// Integrates `f` (times the Haar Jacobian if requested) over a region of the
/// algebra.
pub fn integrate_algebra(
    f: &dyn Fn(&AlgebraVector) -> Complex64,
    g: &GroupSpec,
    spec: &QuadratureSpec,
    region: Region,
    with_jacobian: bool,
) -> Result<Estimate> {
    spec.validate()?;
    let radius = match (region, g.principal_radius()) {
        (Region::PrincipalBranch, Some(r)) => r,
        (Region::PrincipalBranch, None) | (Region::CutoffBall, _) => spec.cutoff_radius,
    };
    let weight = |x: &AlgebraVector| -> Result<f64> {
        if with_jacobian {
            jacobian(g, x)
        } else {
            Ok(1.0)
        }
    };
    let run = |s: &QuadratureSpec| -> Result<(Complex64, f64)> {
        if g.dim() == 3 && !g.family().is_abelian() {
            spherical_sum(f, &weight, radius, s)
        } else {
            box_sum(f, &weight, g.dim(), radius, s)
        }
    };
    let (coarse, _) = run(spec)?;
    let (value, scale) = run(&spec.doubled())?;
    Estimate { value, error: (value - coarse).norm(), scale }.check(spec.target_rel_tol)
}

type Weight<'a> = dyn Fn(&AlgebraVector) -> Result<f64> + 'a;

fn spherical_sum(
    f: &dyn Fn(&AlgebraVector) -> Complex64,
    weight: &Weight<'_>,
    radius: f64,
    s: &QuadratureSpec,
) -> Result<(Complex64, f64)> {
    let radial = gauss_legendre(s.radial_order, 0.0, radius);
    let polar = gauss_legendre(s.angular_orders.0, -1.0, 1.0);
    let azimuth = periodic_trapezoid(s.angular_orders.1, 0.0, 2.0 * PI);
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (&r, &wr) in radial.nodes.iter().zip(&radial.weights) {
        for (&ct, &wt) in polar.nodes.iter().zip(&polar.weights) {
            let st = (1.0 - ct * ct).max(0.0).sqrt();
            for (&ph, &wp) in azimuth.nodes.iter().zip(&azimuth.weights) {
                let x = AlgebraVector::new(alloc::vec![r * st * ph.cos(), r * st * ph.sin(), r * ct]);
                let w = wr * wt * wp * r * r * weight(&x)?;
                let fx = f(&x);
                value += fx * w;
                scale += fx.norm() * w.abs();
            }
        }
    }
    Ok((value, scale))
}

fn box_sum(
    f: &dyn Fn(&AlgebraVector) -> Complex64,
    weight: &Weight<'_>,
    dim: usize,
    half_width: f64,
    s: &QuadratureSpec,
) -> Result<(Complex64, f64)> {
    let rules: Vec<Rule> = (0..dim)
        .map(|i| {
            let order = s.box_orders.get(i).copied().unwrap_or(s.radial_order);
            gauss_legendre(order, -half_width, half_width)
        })
        .collect();
    let mut idx = alloc::vec![0usize; dim];
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let mut x = AlgebraVector::zeros(dim);
    loop {
        let mut w = 1.0;
        for ((rule, &i), c) in rules.iter().zip(&idx).zip(x.coords_mut()) {
            *c = rule.nodes[i];
            w *= rule.weights[i];
        }
        let w = w * weight(&x)?;
        let fx = f(&x);
        value += fx * w;
        scale += fx.norm() * w.abs();
        let mut axis = 0;
        loop {
            if axis == dim {
                return Ok((value, scale));
            }
            idx[axis] += 1;
            if idx[axis] < rules[axis].len() {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
    }
}

/// Polar quadrature of `f(x, y)` over the disc of radius `cutoff_radius`.
/// Fails when `|f|` on the rim is not small relative to its peak.
pub fn integrate_plane(f: &dyn Fn(f64, f64) -> Complex64, spec: &QuadratureSpec) -> Result<Estimate> {
    spec.validate()?;
    let radius = spec.cutoff_radius;
    let run = |n_r: usize, n_phi: usize| -> (Complex64, f64, f64) {
        let radial = gauss_legendre(n_r, 0.0, radius);
        let angular = periodic_trapezoid(n_phi, 0.0, 2.0 * PI);
        let mut value = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        let mut peak = 0.0f64;
        for (&r, &wr) in radial.nodes.iter().zip(&radial.weights) {
            for (&ph, &wp) in angular.nodes.iter().zip(&angular.weights) {
                let fx = f(r * ph.cos(), r * ph.sin());
                let w = wr * wp * r;
                value += fx * w;
                scale += fx.norm() * w;
                peak = peak.max(fx.norm());
            }
        }
        (value, scale, peak)
    };
    let n_phi = spec.angular_orders.1;
    let (coarse, _, _) = run(spec.radial_order, n_phi);
    let (value, scale, peak) = run(2 * spec.radial_order, 2 * n_phi);
    let rim = (0..n_phi)
        .map(|k| {
            let ph = 2.0 * PI * k as f64 / n_phi as f64;
            f(radius * ph.cos(), radius * ph.sin()).norm()
        })
        .fold(0.0, f64::max);
    if rim > spec.target_rel_tol * peak.max(f64::MIN_POSITIVE) {
        return Err(Error::PlaneCutoffTooSmall { rim });
    }
    Estimate { value, error: (value - coarse).norm(), scale }.check(spec.target_rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupKind};

    #[test]
    fn two_point_rule() {
        let r = gauss_legendre(2, -1.0, 1.0);
        let s = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + s).abs() < 1e-15 && (r.nodes[1] - s).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sine_squared_over_half_period() {
        let r = gauss_legendre(16, 0.0, PI);
        let v: f64 = r.integrate(|x| x.sin().powi(2));
        assert!((v - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn su2_haar_volume() {
        let g = make_group(GroupKind::Su2);
        let spec = QuadratureSpec { radial_order: 24, angular_orders: (4, 4), ..Default::default() };
        let e = integrate_algebra(&|_| Complex64::new(1.0, 0.0), &g, &spec, Region::PrincipalBranch, true)
            .unwrap();
        assert!((e.value.re - 2.0 * PI * PI).abs() < 1e-10);
    }

    #[test]
    fn u1_principal_length_and_odd_integrands() {
        let g = make_group(GroupKind::U1);
        let spec = QuadratureSpec::default();
        let len = integrate_algebra(&|_| Complex64::new(1.0, 0.0), &g, &spec, Region::PrincipalBranch, true)
            .unwrap();
        assert!((len.value.re - 2.0 * PI).abs() < 1e-13);
        let su2 = make_group(GroupKind::Su2);
        let odd = integrate_algebra(
            &|x| Complex64::new(x[0] * (-x.norm()).exp(), 0.0),
            &su2,
            &QuadratureSpec { radial_order: 16, angular_orders: (8, 8), ..Default::default() },
            Region::PrincipalBranch,
            false,
        )
        .unwrap();
        assert!(odd.value.norm() < 1e-14);
    }

    #[test]
    fn gaussian_plane_integral() {
        let spec = QuadratureSpec { radial_order: 32, angular_orders: (4, 8), cutoff_radius: 7.0, ..Default::default() };
        let e = integrate_plane(&|x, y| Complex64::new((-(x * x + y * y)).exp(), 0.0), &spec).unwrap();
        assert!((e.value.re - PI).abs() < 1e-10);
        let short = QuadratureSpec { cutoff_radius: 1.0, ..spec };
        assert!(matches!(
            integrate_plane(&|x, y| Complex64::new((-(x * x + y * y)).exp(), 0.0), &short),
            Err(Error::PlaneCutoffTooSmall { .. })
        ));
    }
}
