//! Noncommutative Fourier transforms, Fourier coefficients, series,
//! pairings, translations and convolutions.
//!
//! Coefficients are in the reduced convention (see [`Normalization`]). For
//! SU(2) class functions the coefficient data are kept in closed shell form:
//! symmetric-ordering coefficients are `c_j / |p|` on `j <= |p| < j + 1`, and
//! Duflo-ordering coefficients are `w_k delta(|p| - k)`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once `std` is in the build graph
use num_traits::Float;

use crate::groups::{character_radial, GroupPoint, SpinLabel};
use crate::lie::{bch, bch_unreduced, jacobian, jacobian_sqrt, GroupFamily, GroupSpec};
use crate::quadrature::{
    gauss_legendre, integrate_algebra, integrate_interval, periodic_trapezoid, Estimate,
    QuadratureSpec, Region,
};
use crate::special::sinc;
use crate::starprod::{pairing_duflo, PlaneWaveSum, SampledMomentum, Scheme};
use crate::waves::{orthonormal_frame, Normalization, SUPPORT_TOLERANCE};
use crate::{AlgebraVector, Error, MomentumVector, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Where a position function lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// A function on the group, read in principal-branch coordinates.
    PrincipalBranch,
    /// A function on the whole algebra with decay at infinity.
    WholeAlgebra,
}

/// `sup |psi|` outside the ball of `radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayBound {
    pub radius: f64,
    pub sup_outside: f64,
}

/// Built-in families with known structure.
#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    Zero,
    /// `exp(-|X|^2 / (2 sigma^2))`.
    Gaussian { sigma: f64 },
    /// SU(2) character `chi_lambda`.
    Character(SpinLabel),
    /// Gaussian bump of the given width at the identity, normalized to unit
    /// Haar integral and read through the principal logarithm.
    Bump { width: f64, normalization: f64 },
    /// `sum_k c_k e^{i <k, X>}` over integer vectors `k` (abelian groups).
    TrigPolynomial(Vec<(Vec<i64>, Complex64)>),
}

/// Values on a uniform rectangular grid, multilinearly interpolated and zero
/// outside. With `radial` set a single axis is read as `|X|`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPosition {
    axes: Vec<Vec<f64>>,
    values: Vec<Complex64>,
    radial: bool,
}

impl SampledPosition {
    pub fn new(axes: Vec<Vec<f64>>, values: Vec<Complex64>, radial: bool) -> Result<Self> {
        let expected: usize = axes.iter().map(Vec::len).product();
        let uniform = axes.iter().all(|a| {
            a.len() >= 2 && {
                let h = a[1] - a[0];
                h > 0.0 && a.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.max(1.0))
            }
        });
        if axes.is_empty() || !uniform || values.len() != expected || (radial && axes.len() != 1) {
            return Err(Error::GridMismatch);
        }
        Ok(Self { axes, values, radial })
    }

    pub fn axes(&self) -> &[Vec<f64>] {
        &self.axes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_radial(&self) -> bool {
        self.radial
    }

    fn eval_coords(&self, coords: &[f64]) -> Complex64 {
        let d = self.axes.len();
        let mut base = 0usize;
        let mut fracs = Vec::with_capacity(d);
        let mut strides = vec![1usize; d];
        for a in (0..d.saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * self.axes[a + 1].len();
        }
        for (a, axis) in self.axes.iter().enumerate() {
            let x = coords[a];
            let (lo, hi) = (axis[0], axis[axis.len() - 1]);
            if !(x >= lo && x <= hi) {
                return ZERO;
            }
            let h = axis[1] - axis[0];
            let cell = (((x - lo) / h).floor() as usize).min(axis.len() - 2);
            fracs.push((x - axis[cell]) / h);
            base += cell * strides[a];
        }
        let mut total = ZERO;
        for corner in 0..(1usize << d) {
            let mut w = 1.0;
            let mut idx = base;
            for a in 0..d {
                if (corner >> a) & 1 == 1 {
                    w *= fracs[a];
                    idx += strides[a];
                } else {
                    w *= 1.0 - fracs[a];
                }
            }
            if w != 0.0 {
                total += self.values[idx] * w;
            }
        }
        total
    }
}

type Closure = Arc<dyn Fn(&AlgebraVector) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum Body {
    Builtin(Builtin),
    Custom(Closure),
    Sampled(SampledPosition),
}

impl fmt::Debug for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Builtin(b) => f.debug_tuple("Builtin").field(b).finish(),
            Body::Custom(_) => f.write_str("Custom(..)"),
            Body::Sampled(s) => f.debug_tuple("Sampled").field(s).finish(),
        }
    }
}

/// A function on the group (principal-branch coordinates) or on the algebra.
#[derive(Debug, Clone)]
pub struct PositionFunction {
    group: GroupSpec,
    body: Body,
    class: bool,
    domain: Domain,
    decay: Option<DecayBound>,
}

/// Radius beyond which `exp(-r^2 / 2 sigma^2)` is below `1e-17`.
fn gaussian_decay(sigma: f64) -> DecayBound {
    let radius = sigma * (2.0 * 17.0 * core::f64::consts::LN_10).sqrt();
    DecayBound { radius, sup_outside: (-radius * radius / (2.0 * sigma * sigma)).exp() }
}

/// Deterministic directions for class-function spot checks.
const PROBE_DIRECTIONS: [[f64; 3]; 5] = [
    [0.0, 0.0, 1.0],
    [0.6, 0.0, 0.8],
    [-0.48, 0.64, 0.6],
    [0.36, -0.48, -0.8],
    [1.0, 0.0, 0.0],
];

impl PositionFunction {
    fn builtin(group: &GroupSpec, b: Builtin, class: bool, domain: Domain) -> Self {
        Self { group: group.clone(), body: Body::Builtin(b), class, domain, decay: None }
    }

    pub fn zero(group: &GroupSpec, domain: Domain) -> Self {
        let mut f = Self::builtin(group, Builtin::Zero, true, domain);
        f.decay = Some(DecayBound { radius: 1.0, sup_outside: 0.0 });
        f
    }

    /// `exp(-|X|^2 / (2 sigma^2))`, radial (a class function).
    pub fn gaussian(group: &GroupSpec, sigma: f64, domain: Domain) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidGroup("gaussian width must be positive".into()));
        }
        let mut f = Self::builtin(group, Builtin::Gaussian { sigma }, true, domain);
        f.decay = Some(gaussian_decay(sigma));
        Ok(f)
    }

    /// SU(2) character `chi_lambda`.
    pub fn character(group: &GroupSpec, lam: SpinLabel) -> Result<Self> {
        if group.family() != GroupFamily::Su2 {
            return Err(Error::UnsupportedGroup(group.name().into()));
        }
        Ok(Self::builtin(group, Builtin::Character(lam), true, Domain::PrincipalBranch))
    }

    /// Gaussian bump at the identity with unit Haar integral.
    pub fn bump(group: &GroupSpec, width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::InvalidGroup("bump width must be positive".into()));
        }
        let profile = |r: f64| (-r * r / (2.0 * width * width)).exp();
        let norm = match group.family() {
            GroupFamily::Su2 => {
                4.0 * PI * integrate_interval(&|r| real(sinc(r).powi(2) * r * r * profile(r)), 0.0, PI, 128, 1e-12)?.value.re
            }
            GroupFamily::U1 | GroupFamily::Torus => {
                let one_d = integrate_interval(&|x| real(profile(x)), -PI, PI, 128, 1e-12)?.value.re;
                one_d.powi(group.dim() as i32)
            }
            GroupFamily::Generic => return Err(Error::UnsupportedGroup(group.name().into())),
        };
        Ok(Self::builtin(
            group,
            Builtin::Bump { width, normalization: 1.0 / norm },
            true,
            Domain::PrincipalBranch,
        ))
    }

    /// `sum_k c_k e^{i <k, X>}` on an abelian group.
    pub fn trig_polynomial(group: &GroupSpec, terms: Vec<(Vec<i64>, Complex64)>) -> Result<Self> {
        if !group.family().is_abelian() {
            return Err(Error::UnsupportedGroup(group.name().into()));
        }
        if terms.iter().any(|(k, _)| k.len() != group.dim()) {
            return Err(Error::InvalidDimension { expected: group.dim(), found: 0 });
        }
        Ok(Self::builtin(group, Builtin::TrigPolynomial(terms), true, Domain::PrincipalBranch))
    }

    /// An arbitrary closure, not assumed to be a class function.
    pub fn custom(
        group: &GroupSpec,
        domain: Domain,
        f: impl Fn(&AlgebraVector) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self { group: group.clone(), body: Body::Custom(Arc::new(f)), class: false, domain, decay: None }
    }

    /// A closure declared radial; the claim is spot-checked along fixed
    /// directions at several radii.
    pub fn custom_class(
        group: &GroupSpec,
        domain: Domain,
        f: impl Fn(&AlgebraVector) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let mut out = Self::custom(group, domain, f);
        out.class = true;
        out.check_class()?;
        Ok(out)
    }

    pub fn sampled(group: &GroupSpec, domain: Domain, grid: SampledPosition, class: bool) -> Result<Self> {
        if !grid.radial && grid.axes.len() != group.dim() {
            return Err(Error::GridMismatch);
        }
        let decay = grid.axes.iter().map(|a| a[0].abs().max(a[a.len() - 1].abs())).fold(0.0, f64::max);
        let mut out = Self { group: group.clone(), body: Body::Sampled(grid), class, domain, decay: None };
        out.decay = Some(DecayBound { radius: decay * (group.dim() as f64).sqrt(), sup_outside: 0.0 });
        if class {
            out.check_class()?;
        }
        Ok(out)
    }

    fn check_class(&self) -> Result<()> {
        if self.group.dim() != 3 {
            return Ok(());
        }
        for &r in &[0.3, 1.1, 2.4] {
            let reference = self.eval(&AlgebraVector::new(vec![0.0, 0.0, r]));
            for d in PROBE_DIRECTIONS {
                let v = self.eval(&AlgebraVector::new(vec![r * d[0], r * d[1], r * d[2]]));
                if (v - reference).norm() > 1e-12 * reference.norm().max(1.0) {
                    return Err(Error::NotClassFunction);
                }
            }
        }
        Ok(())
    }

    pub fn with_decay(mut self, decay: DecayBound) -> Self {
        self.decay = Some(decay);
        self
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn is_class_function(&self) -> bool {
        self.class
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn decay(&self) -> Option<DecayBound> {
        self.decay
    }

    pub fn eval(&self, x: &AlgebraVector) -> Complex64 {
        match &self.body {
            Body::Builtin(b) => match b {
                Builtin::Zero => ZERO,
                Builtin::Gaussian { sigma } => {
                    let r = x.norm();
                    real((-r * r / (2.0 * sigma * sigma)).exp())
                }
                Builtin::Character(lam) => real(character_radial(*lam, x.norm())),
                Builtin::Bump { width, normalization } => {
                    let r = principal_distance(&self.group, x);
                    real(normalization * (-r * r / (2.0 * width * width)).exp())
                }
                Builtin::TrigPolynomial(terms) => terms
                    .iter()
                    .map(|(k, c)| {
                        let phase: f64 = k.iter().zip(x.coords()).map(|(&k, &x)| k as f64 * x).sum();
                        c * Complex64::from_polar(1.0, phase)
                    })
                    .sum(),
            },
            Body::Custom(f) => f(x),
            Body::Sampled(grid) => {
                if grid.radial {
                    grid.eval_coords(&[x.norm()])
                } else {
                    grid.eval_coords(x.coords())
                }
            }
        }
    }

    /// Value at `|X| = r` along the last coordinate axis.
    pub fn eval_radial(&self, r: f64) -> Complex64 {
        match &self.body {
            Body::Builtin(Builtin::Gaussian { sigma }) => real((-r * r / (2.0 * sigma * sigma)).exp()),
            Body::Builtin(Builtin::Character(lam)) => real(character_radial(*lam, r)),
            _ => {
                let mut coords = vec![0.0; self.group.dim()];
                coords[self.group.dim() - 1] = r;
                self.eval(&coords.into())
            }
        }
    }
}

/// Norm of the principal logarithm of `exp(X)`.
fn principal_distance(g: &GroupSpec, x: &AlgebraVector) -> f64 {
    match g.family() {
        GroupFamily::Su2 => {
            let r = x.norm() % (2.0 * PI);
            if r > PI {
                2.0 * PI - r
            } else {
                r
            }
        }
        GroupFamily::U1 | GroupFamily::Torus => x
            .coords()
            .iter()
            .map(|&c| crate::special::wrap_angle(c).powi(2))
            .sum::<f64>()
            .sqrt(),
        GroupFamily::Generic => x.norm(),
    }
}

/// Momentum-space data in the representations the library computes with.
#[derive(Debug, Clone)]
pub enum MomentumRepr {
    /// Finite plane-wave sum (exact star products).
    PlaneWaves(PlaneWaveSum),
    /// Grid samples over a bounded box.
    Sampled(SampledMomentum),
    /// Abelian mode coefficients at integer momenta.
    Lattice(Vec<(Vec<i64>, Complex64)>),
    /// SU(2) class coefficients `c_j / |p|` for `j <= |p| < j + 1`.
    RadialShells(Vec<Complex64>),
    /// SU(2) Duflo class coefficients `w_k delta(|p| - k)`, entry `k - 1`.
    DufloShells(Vec<Complex64>),
}

#[derive(Debug, Clone)]
pub struct MomentumFunction {
    pub repr: MomentumRepr,
    pub normalization: Normalization,
}

impl MomentumFunction {
    pub fn new(repr: MomentumRepr, normalization: Normalization) -> Self {
        Self { repr, normalization }
    }

    /// The closed-form character coefficients: `pi^2 / |p|` on
    /// `2 lambda <= |p| < 2 lambda + 2`.
    pub fn character_shells(lam: SpinLabel) -> Self {
        let k = lam.twice_lambda as usize;
        let mut c = vec![ZERO; k + 2];
        c[k] = real(PI * PI);
        c[k + 1] = real(PI * PI);
        Self::new(MomentumRepr::RadialShells(c), Normalization { zr_exponent: -1, convention: crate::waves::Convention::Reduced })
    }

    /// Point value; shell deltas evaluate to their weights on the shell.
    pub fn eval(&self, p: &MomentumVector) -> Result<Complex64> {
        match &self.repr {
            MomentumRepr::PlaneWaves(w) => crate::starprod::planewave_eval(w, p),
            MomentumRepr::Lattice(modes) => Ok(modes
                .iter()
                .find(|(k, _)| k.iter().zip(p.coords()).all(|(&k, &q)| (k as f64 - q).abs() <= SUPPORT_TOLERANCE))
                .map(|(_, c)| *c)
                .unwrap_or(ZERO)),
            MomentumRepr::RadialShells(c) => {
                let n = p.norm();
                if n == 0.0 {
                    return Err(Error::MomentumAtOrigin);
                }
                Ok(c.get(n.floor() as usize).map(|c| c / n).unwrap_or(ZERO))
            }
            MomentumRepr::DufloShells(w) => {
                let n = p.norm();
                let k = n.round();
                if (n - k).abs() > SUPPORT_TOLERANCE || k < 1.0 {
                    return Ok(ZERO);
                }
                Ok(w.get(k as usize - 1).copied().unwrap_or(ZERO))
            }
            MomentumRepr::Sampled(s) => {
                let pts = s.points();
                pts.iter()
                    .position(|q| q.distance(p) <= 1e-12)
                    .map(|i| s.values()[i])
                    .ok_or(Error::GridMismatch)
            }
        }
    }
}

fn require_tail(psi: &PositionFunction, radius: f64, tol: f64) -> Result<()> {
    let n = psi.group.dim();
    let mut peak = 0.0f64;
    let mut tail = 0.0f64;
    for k in 0..=16 {
        let r = radius * k as f64 / 16.0;
        for d in 0..n {
            for s in [-1.0, 1.0] {
                let mut c = vec![0.0; n];
                c[d] = s * r;
                let v = psi.eval(&c.into()).norm();
                peak = peak.max(v);
                if k == 16 {
                    tail = tail.max(v);
                }
            }
        }
    }
    if tail > tol * peak {
        Err(Error::CutoffTooSmall { tail })
    } else {
        Ok(())
    }
}

/// `F[psi](p) = int_g J(X) d^n X e^{-i<p,X>} psi(X)`, truncated at the decay
/// radius (or the quadrature cutoff).
pub fn ncft(psi: &PositionFunction, p: &MomentumVector, quad: &QuadratureSpec) -> Result<Complex64> {
    ncft_estimate(psi, p, quad).map(|e| e.value)
}

pub fn ncft_estimate(psi: &PositionFunction, p: &MomentumVector, quad: &QuadratureSpec) -> Result<Estimate> {
    let g = &psi.group;
    p.expect_dim(g.dim())?;
    if let Body::Builtin(Builtin::Zero) = psi.body {
        return Ok(Estimate { value: ZERO, error: 0.0, scale: 0.0 });
    }
    // principal-branch functions live on the branch; the rest are truncated
    let (radius, region) = match (psi.domain, g.principal_radius()) {
        (Domain::PrincipalBranch, Some(r)) => (r, Region::PrincipalBranch),
        _ => {
            let radius = psi.decay.map(|d| d.radius).unwrap_or(quad.cutoff_radius);
            require_tail(psi, radius, quad.target_rel_tol)?;
            (radius, Region::CutoffBall)
        }
    };
    // keep the rule ahead of the oscillation of the kernel
    let order = quad.radial_order.max((p.norm() * radius) as usize + 32);
    if g.family() == GroupFamily::Su2 && psi.class {
        let pn = p.norm();
        let f = |r: f64| psi.eval_radial(r) * (4.0 * PI * r.sin().powi(2) * sinc(pn * r));
        return integrate_interval(&f, 0.0, radius, order, quad.target_rel_tol);
    }
    let box_orders = if g.family().is_abelian() {
        p.coords()
            .iter()
            .enumerate()
            .map(|(i, q)| quad.box_orders.get(i).copied().unwrap_or(quad.radial_order).max((q.abs() * radius) as usize + 32))
            .collect()
    } else {
        quad.box_orders.clone()
    };
    let spec = QuadratureSpec { cutoff_radius: radius, radial_order: order, box_orders, ..quad.clone() };
    let f = |x: &AlgebraVector| psi.eval(x) * Complex64::from_polar(1.0, -p.pairing(x));
    integrate_algebra(&f, g, &spec, region, true)
}

fn periodic_box_integral(
    f: &dyn Fn(&[f64]) -> Complex64,
    dim: usize,
    n: usize,
    tol: f64,
) -> Result<Complex64> {
    let run = |n: usize| -> (Complex64, f64) {
        let rule = periodic_trapezoid(n, -PI, PI);
        let mut idx = vec![0usize; dim];
        let mut coords = vec![0.0; dim];
        let mut total = ZERO;
        let mut scale = 0.0;
        let w = rule.weights[0].powi(dim as i32);
        loop {
            for (c, &i) in coords.iter_mut().zip(&idx) {
                *c = rule.nodes[i];
            }
            let v = f(&coords);
            total += v * w;
            scale += v.norm() * w;
            let mut axis = 0;
            loop {
                if axis == dim {
                    return (total, scale);
                }
                idx[axis] += 1;
                if idx[axis] < n {
                    break;
                }
                idx[axis] = 0;
                axis += 1;
            }
        }
    };
    let (coarse, _) = run(n);
    let (fine, scale) = run(2 * n);
    let error = (fine - coarse).norm();
    if error > tol * scale.max(f64::MIN_POSITIVE) && error > 1e-300 {
        return Err(Error::QuadratureUnderResolved { estimate: error / scale.max(f64::MIN_POSITIVE), tolerance: tol });
    }
    Ok(fine)
}

/// Fourier coefficient `F_I[psi](p)` of a function on the group.
pub fn fourier_coeff(psi: &PositionFunction, p: &MomentumVector, quad: &QuadratureSpec) -> Result<Complex64> {
    let g = &psi.group;
    p.expect_dim(g.dim())?;
    match g.family() {
        GroupFamily::U1 | GroupFamily::Torus => {
            if p.coords().iter().any(|&q| (q - q.round()).abs() > SUPPORT_TOLERANCE) {
                return Ok(ZERO);
            }
            let n: Vec<f64> = p.coords().iter().map(|q| q.round()).collect();
            let max_n = n.iter().fold(0.0f64, |m, q| m.max(q.abs())) as usize;
            let nodes = quad.radial_order.max(4 * (max_n + 1));
            let f = |x: &[f64]| {
                let phase: f64 = n.iter().zip(x).map(|(a, b)| a * b).sum();
                psi.eval(&AlgebraVector::new(x.to_vec())) * Complex64::from_polar(1.0, -phase)
            };
            periodic_box_integral(&f, g.dim(), nodes, quad.target_rel_tol)
        }
        GroupFamily::Su2 => su2_coefficient(psi, p, quad),
        GroupFamily::Generic => Err(Error::UnsupportedGroup(g.name().into())),
    }
}

fn su2_coefficient(psi: &PositionFunction, p: &MomentumVector, quad: &QuadratureSpec) -> Result<Complex64> {
    let pn = p.norm();
    if pn == 0.0 {
        return Err(Error::MomentumAtOrigin);
    }
    let u: Vec<f64> = p.coords().iter().map(|c| c / pn).collect();
    let [e1, e2, e3] = orthonormal_frame(&u);
    let j = pn.floor() as i64;
    let run = |n_r: usize, n_phi: usize| -> (Complex64, f64) {
        let radial = gauss_legendre(n_r, 0.0, PI);
        let azimuth = periodic_trapezoid(n_phi, 0.0, 2.0 * PI);
        let mut total = ZERO;
        let mut scale = 0.0;
        for m in -j..=j {
            let ct = (m as f64 / pn).clamp(-1.0, 1.0);
            let st = (1.0 - ct * ct).sqrt();
            for (&r, &wr) in radial.nodes.iter().zip(&radial.weights) {
                let mut inner = ZERO;
                for (&ph, &wp) in azimuth.nodes.iter().zip(&azimuth.weights) {
                    let (a, b) = (r * st * ph.cos(), r * st * ph.sin());
                    let c = r * ct;
                    let x: Vec<f64> = (0..3).map(|k| a * e1[k] + b * e2[k] + c * e3[k]).collect();
                    inner += psi.eval(&x.into()) * wp;
                }
                let w = wr * r.sin().powi(2);
                total += inner * Complex64::from_polar(w, -(m as f64) * r);
                scale += inner.norm() * w;
            }
        }
        (total / pn, scale / pn)
    };
    let (coarse, _) = run(quad.radial_order, quad.angular_orders.1);
    let (fine, scale) = run(2 * quad.radial_order, 2 * quad.angular_orders.1);
    let error = (fine - coarse).norm();
    if error > quad.target_rel_tol * scale && error > 1e-300 {
        return Err(Error::QuadratureUnderResolved { estimate: error / scale, tolerance: quad.target_rel_tol });
    }
    Ok(fine)
}

fn require_class_su2(psi: &PositionFunction) -> Result<()> {
    if psi.group.family() != GroupFamily::Su2 {
        return Err(Error::UnsupportedGroup(psi.group.name().into()));
    }
    if !psi.class {
        return Err(Error::NotClassFunction);
    }
    Ok(())
}

/// `P F_I[psi](P)` on the shell `j <= P < j + 1` of an SU(2) class function:
/// `4 pi int_0^pi sin r cos(r/2) sin((j + 1/2) r) psi(r) dr`.
fn shell_value(psi: &PositionFunction, j: u64, quad: &QuadratureSpec) -> Result<Complex64> {
    let jh = j as f64 + 0.5;
    let f = |r: f64| psi.eval_radial(r) * (4.0 * PI * r.sin() * (r / 2.0).cos() * (jh * r).sin());
    // the integrand oscillates j times; keep the rule ahead of it
    let order = quad.radial_order.max(2 * j as usize + 16);
    integrate_interval(&f, 0.0, PI, order, quad.target_rel_tol).map(|e| e.value)
}

/// Class-function coefficient on SU(2) from its radial profile.
pub fn fourier_coeff_class(psi: &PositionFunction, p_norm: f64, quad: &QuadratureSpec) -> Result<Complex64> {
    require_class_su2(psi)?;
    if !(p_norm > 0.0) {
        return Err(Error::MomentumAtOrigin);
    }
    Ok(shell_value(psi, p_norm.floor() as u64, quad)? / p_norm)
}

/// Symmetric-ordering coefficients of an SU(2) class function on the shells
/// `j = 0..=j_max`.
pub fn class_shells(psi: &PositionFunction, j_max: u64, quad: &QuadratureSpec) -> Result<MomentumFunction> {
    require_class_su2(psi)?;
    let c = (0..=j_max).map(|j| shell_value(psi, j, quad)).collect::<Result<Vec<_>>>()?;
    Ok(MomentumFunction::new(MomentumRepr::RadialShells(c), Normalization::coefficients(&psi.group)))
}

/// Duflo-ordering coefficients `w_k = (4 pi / k) int_0^pi sin r sin(k r) psi(r) dr`
/// of an SU(2) class function, `k = 1..=k_max`.
pub fn duflo_class_shells(psi: &PositionFunction, k_max: u64, quad: &QuadratureSpec) -> Result<MomentumFunction> {
    require_class_su2(psi)?;
    let w = (1..=k_max)
        .map(|k| {
            let kf = k as f64;
            let f = |r: f64| psi.eval_radial(r) * (4.0 * PI / kf * r.sin() * (kf * r).sin());
            let order = quad.radial_order.max(2 * k as usize + 16);
            integrate_interval(&f, 0.0, PI, order, quad.target_rel_tol).map(|e| e.value)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentumFunction::new(MomentumRepr::DufloShells(w), Normalization::coefficients(&psi.group)))
}

/// Abelian coefficients at every integer momentum with `|n_i| <= k_max`.
pub fn lattice_coefficients(psi: &PositionFunction, k_max: i64, quad: &QuadratureSpec) -> Result<MomentumFunction> {
    let g = &psi.group;
    if !g.family().is_abelian() {
        return Err(Error::UnsupportedGroup(g.name().into()));
    }
    let modes = crate::lie::BranchWindow::symmetric(g.dim(), k_max)
        .indices()
        .into_iter()
        .map(|k| {
            let p = MomentumVector::new(k.iter().map(|&v| v as f64).collect::<Vec<_>>());
            fourier_coeff(psi, &p, quad).map(|c| (k, c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentumFunction::new(MomentumRepr::Lattice(modes), Normalization::coefficients(g)))
}

/// `sin(a r) / r`, equal to `a` at the origin.
fn sin_over(a: f64, r: f64) -> f64 {
    a * sinc(a * r)
}

/// Inverse series evaluated at `X` without any star product: the symmetric
/// ordering carries the prefactor `1/J(X)`, the Duflo ordering `1/J^{1/2}(X)`
/// (the Duflo plane wave's own weight).
pub fn inverse_series_nostar(
    phi: &MomentumFunction,
    x: &AlgebraVector,
    scheme: Scheme,
    g: &GroupSpec,
    quad: &QuadratureSpec,
) -> Result<Complex64> {
    x.expect_dim(g.dim())?;
    match &phi.repr {
        MomentumRepr::Lattice(modes) => {
            if !g.family().is_abelian() {
                return Err(Error::OperandMismatch);
            }
            let norm = (2.0 * PI).powi(g.dim() as i32);
            Ok(modes
                .iter()
                .map(|(k, c)| {
                    let phase: f64 = k.iter().zip(x.coords()).map(|(&k, &x)| k as f64 * x).sum();
                    c * Complex64::from_polar(1.0, phase)
                })
                .sum::<Complex64>()
                / norm)
        }
        MomentumRepr::RadialShells(c) => {
            if scheme != Scheme::Symmetric || g.family() != GroupFamily::Su2 {
                return Err(Error::OperandMismatch);
            }
            let r = x.norm();
            let s = sinc(r);
            if s.abs() <= 1e-12 {
                return Err(Error::JacobianZero);
            }
            // int_j^{j+1} P^2 (c_j / P) sinc(P r) dP = 2 c_j sin((2j+1) r/2) sin(r/2) / r^2
            let sum: Complex64 = c
                .iter()
                .enumerate()
                .map(|(j, cj)| cj * (2.0 * sin_over(j as f64 + 0.5, r) * sin_over(0.5, r)))
                .sum();
            Ok(sum / (2.0 * PI * PI * s * s))
        }
        MomentumRepr::DufloShells(w) => {
            if scheme != Scheme::Duflo || g.family() != GroupFamily::Su2 {
                return Err(Error::OperandMismatch);
            }
            let r = x.norm();
            let s = sinc(r);
            if s.abs() <= 1e-12 {
                return Err(Error::JacobianZero);
            }
            let sum: Complex64 = w
                .iter()
                .enumerate()
                .map(|(i, wk)| {
                    let k = (i + 1) as f64;
                    wk * (k * k * sinc(k * r))
                })
                .sum();
            Ok(sum / (2.0 * PI * PI * s))
        }
        MomentumRepr::Sampled(samples) => {
            if samples.axes().len() != g.dim() {
                return Err(Error::GridMismatch);
            }
            let peak = samples.values().iter().fold(0.0f64, |m, v| m.max(v.norm()));
            let tail = samples
                .points()
                .iter()
                .zip(samples.values())
                .filter(|(p, _)| {
                    p.coords().iter().zip(samples.axes()).any(|(&q, a)| q == a[0] || q == a[a.len() - 1])
                })
                .fold(0.0f64, |m, (_, v)| m.max(v.norm()));
            if tail > quad.target_rel_tol * peak {
                return Err(Error::CutoffTooSmall { tail });
            }
            let norm = (2.0 * PI).powi(g.dim() as i32);
            let integral: Complex64 = samples
                .points()
                .iter()
                .zip(samples.values())
                .zip(samples.weights())
                .map(|((p, v), w)| v * Complex64::from_polar(w, p.pairing(x)))
                .sum::<Complex64>()
                / norm;
            let prefactor = match scheme {
                Scheme::Symmetric => jacobian(g, x)?,
                Scheme::Duflo => jacobian_sqrt(g, x)?,
            };
            if prefactor.abs() <= 1e-12 {
                return Err(Error::JacobianZero);
            }
            Ok(integral / prefactor)
        }
        MomentumRepr::PlaneWaves(_) => Err(Error::RepresentationUnsupported),
    }
}

/// `<Phi | Psi>` on the momentum side, reduced convention. Abelian modes pair
/// as `(2 pi)^{-r} sum conj(a_k) b_k`; SU(2) symmetric shells as
/// `pi^{-2} sum conj(c_j) d_j`, the on-support measure fixed by Parseval on
/// the characters; sampled Duflo data pair pointwise.
pub fn momentum_pairing(phi: &MomentumFunction, psi: &MomentumFunction) -> Result<Complex64> {
    match (&phi.repr, &psi.repr) {
        (MomentumRepr::Lattice(a), MomentumRepr::Lattice(b)) => {
            let dim = a.first().or(b.first()).map(|(k, _)| k.len()).unwrap_or(1);
            let mut total = ZERO;
            for (k, x) in a {
                if let Some((_, y)) = b.iter().find(|(l, _)| l == k) {
                    total += x.conj() * y;
                }
            }
            Ok(total / (2.0 * PI).powi(dim as i32))
        }
        (MomentumRepr::RadialShells(a), MomentumRepr::RadialShells(b)) => {
            Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>() / (PI * PI))
        }
        (MomentumRepr::Sampled(a), MomentumRepr::Sampled(b)) => pairing_duflo(a, b),
        _ => Err(Error::RepresentationUnsupported),
    }
}

/// `<phi | psi>_G = int_G dg conj(phi) psi`.
pub fn position_pairing(phi: &PositionFunction, psi: &PositionFunction, quad: &QuadratureSpec) -> Result<Complex64> {
    let g = &phi.group;
    if g.name() != psi.group.name() {
        return Err(Error::OperandMismatch);
    }
    match g.family() {
        GroupFamily::U1 | GroupFamily::Torus => {
            let f = |x: &[f64]| {
                let x = AlgebraVector::new(x.to_vec());
                phi.eval(&x).conj() * psi.eval(&x)
            };
            periodic_box_integral(&f, g.dim(), quad.radial_order, quad.target_rel_tol)
        }
        GroupFamily::Su2 if phi.class && psi.class => {
            let f = |r: f64| phi.eval_radial(r).conj() * psi.eval_radial(r) * (4.0 * PI * r.sin().powi(2));
            integrate_interval(&f, 0.0, PI, quad.radial_order, quad.target_rel_tol).map(|e| e.value)
        }
        _ => {
            let f = |x: &AlgebraVector| phi.eval(x).conj() * psi.eval(x);
            integrate_algebra(&f, g, quad, Region::PrincipalBranch, true).map(|e| e.value)
        }
    }
}

/// `|<phi|psi>_G - <F_I phi | F_I psi>|`.
pub fn parseval_gap(phi: &PositionFunction, psi: &PositionFunction, quad: &QuadratureSpec) -> Result<f64> {
    let lhs = position_pairing(phi, psi, quad)?;
    let g = &phi.group;
    let rhs = match g.family() {
        GroupFamily::U1 | GroupFamily::Torus => {
            let k_max = if g.dim() == 1 { quad.radial_order / 2 } else { quad.radial_order / 4 } as i64;
            momentum_pairing(&lattice_coefficients(phi, k_max, quad)?, &lattice_coefficients(psi, k_max, quad)?)?
        }
        GroupFamily::Su2 => {
            let j_max = (quad.radial_order / 2) as u64;
            momentum_pairing(&class_shells(phi, j_max, quad)?, &class_shells(psi, j_max, quad)?)?
        }
        GroupFamily::Generic => return Err(Error::UnsupportedGroup(g.name().into())),
    };
    Ok((lhs - rhs).norm())
}

/// Left translate: `X -> psi(B(Y, X))` on the algebra, `g -> psi(exp(Y) g)` on
/// the group.
pub fn translate_left(psi: &PositionFunction, y: &AlgebraVector) -> Result<PositionFunction> {
    let g = psi.group.clone();
    y.expect_dim(g.dim())?;
    let inner = psi.clone();
    let shift = y.norm();
    let y = y.clone();
    let domain = psi.domain;
    let f = move |x: &AlgebraVector| {
        let shifted = match domain {
            Domain::WholeAlgebra => bch_unreduced(&inner.group, &y, x),
            Domain::PrincipalBranch => bch(&inner.group, &y, x),
        };
        match shifted {
            Ok(z) => inner.eval(&z),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let mut out = PositionFunction::custom(&g, domain, f);
    out.class = g.family().is_abelian() && psi.class;
    out.decay = psi.decay.map(|d| DecayBound { radius: d.radius + shift, ..d });
    Ok(out)
}

/// `(phi * psi)(g) = int_G dh phi(h^{-1} g) psi(h)` by Haar quadrature.
pub fn convolve_position(
    phi: &PositionFunction,
    psi: &PositionFunction,
    at: &GroupPoint,
    quad: &QuadratureSpec,
) -> Result<Complex64> {
    let g = &phi.group;
    if g.name() != psi.group.name() || at.family() != g.family() {
        return Err(Error::OperandMismatch);
    }
    let x = at.principal_log().clone();
    let f = |y: &AlgebraVector| match bch(g, &-y, &x) {
        Ok(z) => phi.eval(&z) * psi.eval(y),
        // h^{-1} g on the boundary: a null set
        Err(_) => ZERO,
    };
    integrate_algebra(&f, g, quad, Region::PrincipalBranch, true).map(|e| e.value)
}

/// Momentum convolution `(2 pi)^{-r} sum_m a_{n-m} b_m` of abelian mode
/// data; its inverse series is the product of the two inverse series.
pub fn convolve_momentum(phi: &MomentumFunction, psi: &MomentumFunction) -> Result<MomentumFunction> {
    let (MomentumRepr::Lattice(a), MomentumRepr::Lattice(b)) = (&phi.repr, &psi.repr) else {
        return Err(Error::RepresentationUnsupported);
    };
    let mut out: Vec<(Vec<i64>, Complex64)> = Vec::new();
    let dim = a.first().or(b.first()).map(|(k, _)| k.len()).unwrap_or(1);
    let norm = (2.0 * PI).powi(dim as i32);
    for (k, x) in a {
        for (l, y) in b {
            let n: Vec<i64> = k.iter().zip(l).map(|(p, q)| p + q).collect();
            let v = x * y / norm;
            match out.iter_mut().find(|(m, _)| *m == n) {
                Some((_, c)) => *c += v,
                None => out.push((n, v)),
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.cmp(b));
    Ok(MomentumFunction::new(MomentumRepr::Lattice(out), phi.normalization))
}
