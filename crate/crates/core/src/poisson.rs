//! Both sides of the Poisson summation formulas.
//!
//! The left side is the branch-periodic projection
//! `sum_n psi(X + 2 pi n^i a_i(X))` of a function on the algebra. The right
//! side is built from the transform `F[psi]`:
//!
//! * abelian: `(2 pi)^{-r} sum_k e^{i<k, X>} F[psi](k)`;
//! * SU(2): `-(1 / sin^2 |X|) sum_m e^{i m |X|} int_{P_m(X)} d^2p / (2 pi)^3
//!   d^2_{u_X} F[psi](p)`, with `P_m(X)` the plane through `m u_X`
//!   perpendicular to `u_X`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once `std` is in the build graph
use num_traits::Float;

use crate::fourier::{ncft, Domain, PositionFunction};
use crate::lie::{BranchWindow, GroupFamily, GroupSpec};
use crate::quadrature::{gauss_legendre, integrate_plane, QuadratureSpec};
use crate::special::{sinc, sinc_d1_over_x, sinc_d2};
use crate::waves::{auto_window, orthonormal_frame, project_position};
use crate::{AlgebraVector, Error, MomentumVector, Result};

/// `|sin |X||` below which the SU(2) right side is refused.
pub const SINGULAR_TOLERANCE: f64 = 1e-8;
/// Default relative bound on the first omitted shell of the branch sum.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-14;
/// Largest branch window tried when none is given.
pub const WINDOW_CAP: i64 = 64;
/// Largest momentum cutoff tried by the spectral scans.
pub const SPECTRAL_CAP: i64 = 4096;
/// Relative size at which the spectrum counts as decayed.
const SPECTRAL_FLOOR: f64 = 1e-13;
/// Relative Richardson disagreement tolerated by the finite-difference path.
pub const DERIVATIVE_TOLERANCE: f64 = 1e-2;
/// Central-difference step for the directional second derivative.
pub const DERIVATIVE_STEP: f64 = 0.05;
/// Planes whose integrand stays below this fraction of the global peak are
/// dropped by the finite-difference path.
const PLANE_FLOOR: f64 = 1e-5;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// How the SU(2) right side takes `d^2_{u_X} F[psi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    /// Radial closed form for class functions, finite differences otherwise.
    Auto,
    /// Closed radial expression; class functions only.
    Radial,
    /// Central differences with a Richardson check, on 2D plane quadrature.
    FiniteDifference,
}

#[derive(Debug, Clone)]
pub struct PoissonCase {
    pub psi: PositionFunction,
    pub x: AlgebraVector,
    pub window: BranchWindow,
    pub quad: QuadratureSpec,
    pub tail_tolerance: f64,
    pub derivative: DerivativeMode,
    /// Overrides the plane count `|m| <= M` of the SU(2) sum.
    pub m_max: Option<i64>,
}

impl PoissonCase {
    /// A case with the smallest branch window meeting
    /// [`DEFAULT_TAIL_TOLERANCE`].
    pub fn new(psi: PositionFunction, x: AlgebraVector, quad: QuadratureSpec) -> Result<Self> {
        if psi.domain() != Domain::WholeAlgebra {
            return Err(Error::OperandMismatch);
        }
        quad.validate()?;
        let g = psi.group().clone();
        let (window, _) = auto_window(&|y| psi.eval(y), &g, &x, DEFAULT_TAIL_TOLERANCE, WINDOW_CAP)?;
        Ok(Self {
            psi,
            x,
            window,
            quad,
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
            derivative: DerivativeMode::Auto,
            m_max: None,
        })
    }

    pub fn with_window(mut self, window: BranchWindow) -> Self {
        self.window = window;
        self
    }

    pub fn with_derivative(mut self, mode: DerivativeMode) -> Self {
        self.derivative = mode;
        self
    }

    pub fn with_m_max(mut self, m_max: i64) -> Self {
        self.m_max = Some(m_max);
        self
    }

    pub fn group(&self) -> &GroupSpec {
        self.psi.group()
    }

    /// `(N(X), D(X))`: SU(2) `(sin^2 |X|, |X|^2)`, tori `(1, 1)`.
    pub fn split(&self) -> (f64, f64) {
        match self.group().family() {
            GroupFamily::Su2 => {
                let r = self.x.norm();
                (r.sin().powi(2), r * r)
            }
            _ => (1.0, 1.0),
        }
    }

    fn decay_radius(&self) -> f64 {
        self.psi.decay().map(|d| d.radius).unwrap_or(self.quad.cutoff_radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonOutcome {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

/// `sum_{n in window} psi(X + 2 pi n^i a_i(X))`.
pub fn poisson_lhs(case: &PoissonCase) -> Result<Complex64> {
    project_position(&|y| case.psi.eval(y), case.group(), &case.x, &case.window, case.tail_tolerance)
}

/// `F[psi]` at every integer momentum of a box outside which it has decayed.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelianSpectrum {
    pub modes: Vec<(Vec<i64>, Complex64)>,
}

impl AbelianSpectrum {
    /// Scans `|F[psi]|` along each axis until it drops below a relative floor
    /// on two consecutive integers, then fills the box.
    pub fn new(psi: &PositionFunction, quad: &QuadratureSpec) -> Result<Self> {
        let g = psi.group();
        if !g.family().is_abelian() {
            return Err(Error::UnsupportedGroup(g.name().into()));
        }
        let dim = g.dim();
        let transform = |k: &[i64]| {
            let p = MomentumVector::new(k.iter().map(|&v| v as f64).collect::<Vec<_>>());
            ncft(psi, &p, quad)
        };
        let mut ranges = Vec::with_capacity(dim);
        for axis in 0..dim {
            let mut peak = 0.0f64;
            let mut quiet = 0;
            let mut edge = None;
            for k in 0..=SPECTRAL_CAP {
                let mut plus = alloc::vec![0i64; dim];
                plus[axis] = k;
                let mut minus = plus.clone();
                minus[axis] = -k;
                let size = transform(&plus)?.norm() + if k > 0 { transform(&minus)?.norm() } else { 0.0 };
                peak = peak.max(size);
                quiet = if size <= SPECTRAL_FLOOR * peak { quiet + 1 } else { 0 };
                if quiet == 2 {
                    edge = Some(k);
                    break;
                }
            }
            let Some(edge) = edge else {
                let mut k = alloc::vec![0i64; dim];
                k[axis] = SPECTRAL_CAP;
                return Err(Error::SpectralCutoffTooSmall { tail: transform(&k)?.norm() });
            };
            ranges.push(-edge..=edge);
        }
        let modes = BranchWindow::new(ranges)
            .indices()
            .into_iter()
            .map(|k| transform(&k).map(|f| (k, f)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { modes })
    }

    /// `(2 pi)^{-r} sum_k e^{i<k, X>} F[psi](k)`.
    pub fn sum_at(&self, x: &AlgebraVector) -> Complex64 {
        let dim = x.dim();
        let total: Complex64 = self
            .modes
            .iter()
            .map(|(k, f)| {
                let phase: f64 = k.iter().zip(x.coords()).map(|(&k, &x)| k as f64 * x).sum();
                f * Complex64::from_polar(1.0, phase)
            })
            .sum();
        total / (2.0 * PI).powi(dim as i32)
    }
}

/// Abelian right side `(2 pi)^{-r} sum_k e^{i<k, X>} F[psi](k)` over the box
/// of [`AbelianSpectrum`].
pub fn poisson_rhs_u1(case: &PoissonCase) -> Result<Complex64> {
    case.x.expect_dim(case.group().dim())?;
    Ok(AbelianSpectrum::new(&case.psi, &case.quad)?.sum_at(&case.x))
}

/// SU(2) right side.
pub fn poisson_rhs_su2(case: &PoissonCase) -> Result<Complex64> {
    let g = case.group();
    if g.family() != GroupFamily::Su2 {
        return Err(Error::UnsupportedGroup(g.name().into()));
    }
    let r = case.x.norm();
    if r.sin().abs() <= SINGULAR_TOLERANCE {
        return Err(Error::OnSingularSet);
    }
    match case.derivative {
        DerivativeMode::Radial => su2_radial(case),
        DerivativeMode::FiniteDifference => su2_finite_difference(case),
        DerivativeMode::Auto if case.psi.is_class_function() => su2_radial(case),
        DerivativeMode::Auto => su2_finite_difference(case),
    }
}

/// Both sides on U(1), the tori and SU(2).
pub fn poisson_generic(case: &PoissonCase) -> Result<PoissonOutcome> {
    let g = case.group();
    let rhs = match g.family() {
        GroupFamily::U1 | GroupFamily::Torus => poisson_rhs_u1(case)?,
        GroupFamily::Su2 => poisson_rhs_su2(case)?,
        GroupFamily::Generic if g.family().is_abelian() => poisson_rhs_u1(case)?,
        GroupFamily::Generic => return Err(Error::UnsupportedGroup(g.name().into())),
    };
    let lhs = poisson_lhs(case)?;
    Ok(PoissonOutcome { lhs, rhs, residual: (lhs - rhs).norm() })
}

/// Composite Gauss-Legendre rule on `[a, b]` with unit-length panels.
fn panels(a: f64, b: f64, order: usize) -> (Vec<f64>, Vec<f64>) {
    let count = ((b - a).ceil() as usize).max(1);
    let width = (b - a) / count as f64;
    let mut nodes = Vec::with_capacity(count * order);
    let mut weights = Vec::with_capacity(count * order);
    for i in 0..count {
        let lo = a + i as f64 * width;
        let rule = gauss_legendre(order, lo, lo + width);
        nodes.extend_from_slice(&rule.nodes);
        weights.extend_from_slice(&rule.weights);
    }
    (nodes, weights)
}

/// Radial profile `Phi(P) = F[psi](|p| = P)` of a class function, with
/// `Phi'/P` and `Phi''`, from `Phi(P) = 4 pi int sin^2 r psi(r) sinc(P r) dr`.
struct RadialSpectrum {
    nodes: Vec<f64>,
    weights: Vec<Complex64>,
}

impl RadialSpectrum {
    fn new(psi: &PositionFunction, radius: f64, order: usize) -> Self {
        let (nodes, w) = panels(0.0, radius, order);
        let weights = nodes
            .iter()
            .zip(&w)
            .map(|(&r, &w)| psi.eval_radial(r) * (4.0 * PI * w * r.sin().powi(2)))
            .collect();
        Self { nodes, weights }
    }

    fn value(&self, p: f64) -> Complex64 {
        self.nodes.iter().zip(&self.weights).map(|(&r, w)| w * sinc(p * r)).sum()
    }

    /// `(Phi'(P)/P, Phi''(P))`.
    fn derivatives(&self, p: f64) -> (Complex64, Complex64) {
        let mut d1 = ZERO;
        let mut d2 = ZERO;
        for (&r, w) in self.nodes.iter().zip(&self.weights) {
            let wr = w * (r * r);
            d1 += wr * sinc_d1_over_x(p * r);
            d2 += wr * sinc_d2(p * r);
        }
        (d1, d2)
    }
}

/// Plane integrals `I_m = (1/4 pi^2) int_{|m|}^inf P dP [Phi'' m^2/P^2 +
/// (Phi'/P)(1 - m^2/P^2)]` summed against `e^{i m |X|}`.
fn su2_radial_sum(case: &PoissonCase, order: usize) -> Result<(Complex64, f64)> {
    if !case.psi.is_class_function() {
        return Err(Error::NotClassFunction);
    }
    let spectrum = RadialSpectrum::new(&case.psi, case.decay_radius(), order);
    let envelope = |p: f64| {
        let (d1, d2) = spectrum.derivatives(p);
        d1.norm() * p.max(1.0) + d2.norm() + spectrum.value(p).norm()
    };
    let mut peak = 0.0f64;
    let mut quiet = 0;
    let mut edge = None;
    for k in 0..=SPECTRAL_CAP {
        let size = envelope(k as f64);
        peak = peak.max(size);
        quiet = if k >= 2 && size <= SPECTRAL_FLOOR * peak { quiet + 1 } else { 0 };
        if quiet == 2 {
            edge = Some(k as usize);
            break;
        }
    }
    let edge = edge.ok_or(Error::PlaneCutoffTooSmall { rim: envelope(SPECTRAL_CAP as f64) })?;

    // per unit panel [k, k+1]: int P (Phi'/P) dP and int P (Phi'' - Phi'/P)/P^2 dP
    let unit = gauss_legendre(order.min(64), 0.0, 1.0);
    let mut a = Vec::with_capacity(edge);
    let mut b = Vec::with_capacity(edge);
    for k in 0..edge {
        let (mut sa, mut sb) = (ZERO, ZERO);
        for (&t, &w) in unit.nodes.iter().zip(&unit.weights) {
            let p = k as f64 + t;
            let (d1, d2) = spectrum.derivatives(p);
            sa += d1 * (w * p);
            if k > 0 {
                sb += (d2 - d1) * (w / p);
            }
        }
        a.push(sa);
        b.push(sb);
    }
    // tails from panel |m| upwards
    let mut tail_a = alloc::vec![ZERO; edge + 1];
    let mut tail_b = alloc::vec![ZERO; edge + 1];
    for k in (0..edge).rev() {
        tail_a[k] = tail_a[k + 1] + a[k];
        tail_b[k] = tail_b[k + 1] + b[k];
    }
    let m_max = case.m_max.map(|m| m.max(0) as usize).unwrap_or(edge);
    let r = case.x.norm();
    let mut sum = tail_a[0];
    let mut scale = tail_a[0].norm();
    for m in 1..=m_max.min(edge) {
        let mf = m as f64;
        let term = (tail_a[m] + tail_b[m] * (mf * mf)) * (2.0 * (mf * r).cos());
        sum += term;
        scale += term.norm();
    }
    let norm = 4.0 * PI * PI * r.sin().powi(2);
    Ok((-sum / norm, scale / norm))
}

fn su2_radial(case: &PoissonCase) -> Result<Complex64> {
    let order = case.quad.radial_order;
    let (coarse, _) = su2_radial_sum(case, order)?;
    let (fine, scale) = su2_radial_sum(case, 2 * order)?;
    let error = (fine - coarse).norm();
    if error > case.quad.target_rel_tol * scale && error > 1e-300 {
        return Err(Error::QuadratureUnderResolved {
            estimate: error / scale.max(f64::MIN_POSITIVE),
            tolerance: case.quad.target_rel_tol,
        });
    }
    Ok(fine)
}

/// Plane sums with `d^2_{u_X} F` by central differences at steps `h` and
/// `h/2`; the two are combined by Richardson extrapolation.
fn su2_finite_difference(case: &PoissonCase) -> Result<Complex64> {
    let r = case.x.norm();
    let u: Vec<f64> = case.x.coords().iter().map(|c| c / r).collect();
    let [e1, e2, e3] = orthonormal_frame(&u);
    // class functions reuse one radial rule for every momentum
    let radial = case
        .psi
        .is_class_function()
        .then(|| RadialSpectrum::new(&case.psi, case.decay_radius(), case.quad.radial_order.max(32)));
    let transform = |coords: [f64; 3]| match &radial {
        Some(spectrum) => Ok(spectrum.value((coords[0] * coords[0] + coords[1] * coords[1] + coords[2] * coords[2]).sqrt())),
        None => ncft(&case.psi, &MomentumVector::new(coords.to_vec()), &case.quad),
    };
    let point = |along: f64, a: f64, b: f64| -> [f64; 3] {
        core::array::from_fn(|i| along * e3[i] + a * e1[i] + b * e2[i])
    };
    let second = |along: f64, a: f64, b: f64, h: f64| -> Result<Complex64> {
        let mid = transform(point(along, a, b))?;
        let up = transform(point(along + h, a, b))?;
        let down = transform(point(along - h, a, b))?;
        Ok((up - mid * 2.0 + down) / (h * h))
    };

    // spectral extent along u_X and the global scale of the integrand
    let mut peak = 0.0f64;
    let mut quiet = 0;
    let mut far = None;
    for k in 0..=2 * SPECTRAL_CAP {
        let s = k as f64 / 2.0;
        let size = second(s, 0.0, 0.0, DERIVATIVE_STEP)?.norm().max(second(0.0, s, 0.0, DERIVATIVE_STEP)?.norm());
        peak = peak.max(size);
        quiet = if k >= 4 && size <= SPECTRAL_FLOOR * peak { quiet + 1 } else { 0 };
        if quiet == 2 {
            far = Some(s);
            break;
        }
    }
    let far = far.ok_or(Error::PlaneCutoffTooSmall { rim: peak })?;

    let plane_sum = |h: f64| -> Result<Complex64> {
        let m_max = case.m_max.unwrap_or(far.floor() as i64);
        let mut total = ZERO;
        for m in -m_max..=m_max {
            let mf = m as f64;
            if mf.abs() >= far {
                continue;
            }
            let radius = (far * far - mf * mf).sqrt();
            let mut plane_peak = 0.0f64;
            for i in 0..=16 {
                let rho = radius * i as f64 / 16.0;
                plane_peak = plane_peak.max(second(mf, rho, 0.0, h)?.norm());
            }
            if plane_peak < PLANE_FLOOR * peak {
                continue;
            }
            let spec = QuadratureSpec { cutoff_radius: radius, ..case.quad.clone() };
            let f = |a: f64, b: f64| second(mf, a, b, h).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            let plane = integrate_plane(&f, &spec)?.value;
            if !plane.is_finite() {
                return Err(Error::DerivativeUnstable { disagreement: f64::INFINITY });
            }
            total += plane * Complex64::from_polar(1.0, mf * r);
        }
        Ok(-total / (8.0 * PI * PI * PI * r.sin().powi(2)))
    };
    let coarse = plane_sum(DERIVATIVE_STEP)?;
    let fine = plane_sum(DERIVATIVE_STEP / 2.0)?;
    let extrapolated = (fine * 4.0 - coarse) / 3.0;
    let disagreement = (fine - coarse).norm() / extrapolated.norm().max(f64::MIN_POSITIVE);
    if disagreement > DERIVATIVE_TOLERANCE {
        return Err(Error::DerivativeUnstable { disagreement });
    }
    Ok(extrapolated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupKind};
    use alloc::vec;

    fn gaussian_case(kind: GroupKind, sigma: f64, x: Vec<f64>) -> PoissonCase {
        let g = make_group(kind);
        let psi = PositionFunction::gaussian(&g, sigma, Domain::WholeAlgebra).unwrap();
        PoissonCase::new(psi, AlgebraVector::new(x), QuadratureSpec::default()).unwrap()
    }

    #[test]
    fn u1_theta_identity_at_origin() {
        let case = gaussian_case(GroupKind::U1, 1.0, vec![0.0]);
        let lhs = poisson_lhs(&case).unwrap();
        let lattice: f64 = (-6..=6).map(|n: i32| (-2.0 * PI * PI * (n * n) as f64).exp()).sum();
        assert!((lhs.re - lattice).abs() < 1e-15);
        let rhs = poisson_rhs_u1(&case).unwrap();
        let theta: f64 = (-40..=40).map(|k: i32| (-(k * k) as f64 / 2.0).exp()).sum::<f64>() / (2.0 * PI).sqrt();
        assert!((rhs.re - theta).abs() < 1e-12);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn su2_sides_agree() {
        let case = gaussian_case(GroupKind::Su2, 0.6, vec![0.0, 0.0, 1.0]);
        let out = poisson_generic(&case).unwrap();
        assert!(out.residual < 1e-3 * out.lhs.norm(), "{out:?}");
    }

    #[test]
    fn singular_set_is_refused() {
        let case = gaussian_case(GroupKind::Su2, 0.6, vec![0.0, 0.0, 1.0]);
        let mut at_pi = case.clone();
        at_pi.x = AlgebraVector::new(vec![0.0, 0.0, PI - 1e-10]);
        assert_eq!(poisson_rhs_su2(&at_pi), Err(Error::OnSingularSet));
        assert_eq!(case.split().1, 1.0);
    }
}
