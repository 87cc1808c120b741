//! I-invariant plane waves, their supports, and the projection of algebra
//! functions onto branch-periodic ones.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once `std` is in the build graph
use num_traits::Float;

use crate::groups::{exp_map, log_principal};
use crate::lie::{branch_point, jacobian_sqrt, torus_basis_at, BranchWindow, GroupFamily, GroupSpec};
use crate::starprod::Scheme;
use crate::{AlgebraVector, Error, MomentumVector, Result};

/// `<p, a_i(X)>` counts as an integer within this distance.
pub const SUPPORT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Infinite `sqrt|Z|` factors stripped from every number.
    Reduced,
}

/// Records which power of the formal factor `sqrt|Z|` was stripped from a
/// quantity to make it finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Normalization {
    pub zr_exponent: i32,
    pub convention: Convention,
}

impl Normalization {
    /// I-invariant waves are finite as they stand.
    pub const WAVES: Normalization = Normalization { zr_exponent: 0, convention: Convention::Reduced };

    /// Fourier coefficients of functions on `g`: `sqrt|Z|^r` on tori, while
    /// SU(2) coefficients carry `1/sqrt|Z|`.
    pub fn coefficients(g: &GroupSpec) -> Self {
        let zr_exponent = match g.family() {
            GroupFamily::Su2 => -1,
            _ => g.rank() as i32,
        };
        Self { zr_exponent, convention: Convention::Reduced }
    }
}

fn integer_distance(v: f64) -> f64 {
    (v - v.round()).abs()
}

/// The momenta on which `E_I(X, .)` is supported.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSupport {
    basis: Vec<AlgebraVector>,
    x: AlgebraVector,
    /// For rank 1 the plane labels `m`; for tori the lattice points.
    labels: Vec<Vec<i64>>,
}

impl ModeSupport {
    pub fn basis(&self) -> &[AlgebraVector] {
        &self.basis
    }

    pub fn point(&self) -> &AlgebraVector {
        &self.x
    }

    pub fn labels(&self) -> &[Vec<i64>] {
        &self.labels
    }

    pub fn contains(&self, p: &MomentumVector) -> bool {
        self.basis.iter().all(|a| integer_distance(p.pairing(a)) <= SUPPORT_TOLERANCE)
    }
}

/// Labels `m` (rank 1) or lattice points (tori) with `|m| <= p_max`.
pub fn support_planes(g: &GroupSpec, x: &AlgebraVector, p_max: f64) -> Result<ModeSupport> {
    let frame = torus_basis_at(g, x)?;
    let j = p_max.max(0.0).floor() as i64;
    let labels = BranchWindow::symmetric(frame.basis.len(), j).indices();
    Ok(ModeSupport { basis: frame.basis, x: x.clone(), labels })
}

/// `j(p) = floor(|p|)`.
pub fn spin_floor(p: &MomentumVector) -> u64 {
    p.norm().floor() as u64
}

/// `E_I(X, p)` in the reduced convention: `e^{-i<p,X>}` on the support, zero
/// elsewhere. The Duflo ordering multiplies on-support values by
/// `1 / J^{1/2}` at the principal logarithm of `exp(X)` (SU(2): `r / sin r`).
pub fn invariant_wave_reduced(
    g: &GroupSpec,
    x: &AlgebraVector,
    p: &MomentumVector,
    scheme: Scheme,
) -> Result<Complex64> {
    p.expect_dim(g.dim())?;
    let frame = torus_basis_at(g, x)?;
    if frame.basis.iter().any(|a| integer_distance(p.pairing(a)) > SUPPORT_TOLERANCE) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let wave = Complex64::from_polar(1.0, -p.pairing(x));
    match scheme {
        Scheme::Symmetric => Ok(wave),
        Scheme::Duflo => {
            let principal = if g.family().is_abelian() {
                x.clone()
            } else {
                log_principal(g, &exp_map(g, x)?)?
            };
            let s = jacobian_sqrt(g, &principal)?;
            if s.abs() <= crate::starprod::JACOBIAN_TOLERANCE {
                return Err(Error::JacobianZero);
            }
            Ok(wave / s)
        }
    }
}

/// Weights for regularized branch sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Averaging {
    /// Uniform weights `1 / (2N+1)`.
    Cesaro,
    /// Triangular weights `(N + 1 - |n|) / (N + 1)^2`.
    Fejer,
}

/// Regularized branch sum `sum_n w_n e^{-i<p, X + 2 pi n^i a_i(X)>}` over the
/// window `|n^i| <= n_max`, weights product over torus directions.
pub fn branch_average(
    g: &GroupSpec,
    x: &AlgebraVector,
    p: &MomentumVector,
    n_max: i64,
    averaging: Averaging,
) -> Result<Complex64> {
    p.expect_dim(g.dim())?;
    let frame = torus_basis_at(g, x)?;
    let weight = |n: i64| -> f64 {
        match averaging {
            Averaging::Cesaro => 1.0 / (2 * n_max + 1) as f64,
            Averaging::Fejer => {
                let m = (n_max + 1) as f64;
                (m - n.abs() as f64) / (m * m)
            }
        }
    };
    let mut total = Complex64::new(0.0, 0.0);
    for idx in BranchWindow::symmetric(frame.basis.len(), n_max).indices() {
        let w: f64 = idx.iter().map(|&n| weight(n)).product();
        let y = branch_point(x, &frame.basis, &idx);
        total += Complex64::from_polar(w, -p.pairing(&y));
    }
    Ok(total)
}

/// `sum_{n in window} psi0(X + 2 pi n^i a_i(X))`: the branch-periodic
/// projection of an algebra function, evaluated at `X`.
///
/// The sup of `|psi0|` over the shell just outside the window must stay below
/// `tail_tolerance` relative to the result.
pub fn project_position(
    psi0: &dyn Fn(&AlgebraVector) -> Complex64,
    g: &GroupSpec,
    x: &AlgebraVector,
    window: &BranchWindow,
    tail_tolerance: f64,
) -> Result<Complex64> {
    let frame = torus_basis_at(g, x)?;
    if window.ranges().len() != frame.basis.len() {
        return Err(Error::InvalidDimension { expected: frame.basis.len(), found: window.ranges().len() });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for idx in window.indices() {
        sum += psi0(&branch_point(x, &frame.basis, &idx));
    }
    let outer = BranchWindow::new(
        window.ranges().iter().map(|r| (r.start() - 1)..=(r.end() + 1)).collect(),
    );
    let tail = outer
        .boundary_indices()
        .into_iter()
        .map(|idx| psi0(&branch_point(x, &frame.basis, &idx)).norm())
        .fold(0.0, f64::max);
    if tail > tail_tolerance * sum.norm() {
        return Err(Error::WindowTooSmall { tail, tolerance: tail_tolerance });
    }
    Ok(sum)
}

/// Smallest symmetric window whose outer shell of `|psi0|` values is below
/// `tail_tolerance` relative to the sum, capped at `n_cap`.
pub fn auto_window(
    psi0: &dyn Fn(&AlgebraVector) -> Complex64,
    g: &GroupSpec,
    x: &AlgebraVector,
    tail_tolerance: f64,
    n_cap: i64,
) -> Result<(BranchWindow, Complex64)> {
    let rank = torus_basis_at(g, x)?.basis.len();
    let mut last = Err(Error::WindowTooSmall { tail: f64::INFINITY, tolerance: tail_tolerance });
    for n in 0..=n_cap {
        let window = BranchWindow::symmetric(rank, n);
        match project_position(psi0, g, x, &window, tail_tolerance) {
            Ok(v) => return Ok((window, v)),
            Err(e @ Error::WindowTooSmall { .. }) => last = Err(e),
            Err(e) => return Err(e),
        }
    }
    last
}

/// Unit `u` completed to an orthonormal frame `(e1, e2, u)` in three dimensions.
pub(crate) fn orthonormal_frame(u: &[f64]) -> [[f64; 3]; 3] {
    let helper = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let d = helper[0] * u[0] + helper[1] * u[1] + helper[2] * u[2];
    let mut e1 = [helper[0] - d * u[0], helper[1] - d * u[1], helper[2] - d * u[2]];
    let n1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    for c in &mut e1 {
        *c /= n1;
    }
    let e2 = [
        u[1] * e1[2] - u[2] * e1[1],
        u[2] * e1[0] - u[0] * e1[2],
        u[0] * e1[1] - u[1] * e1[0],
    ];
    [e1, e2, [u[0], u[1], u[2]]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupKind};
    use alloc::vec;
    use core::f64::consts::PI;

    #[test]
    fn u1_modes() {
        let g = make_group(GroupKind::U1);
        let th = AlgebraVector::new(vec![0.7]);
        let v = invariant_wave_reduced(&g, &th, &MomentumVector::new(vec![3.0]), Scheme::Symmetric).unwrap();
        assert!((v - Complex64::from_polar(1.0, -2.1)).norm() < 1e-15);
        let off = invariant_wave_reduced(&g, &th, &MomentumVector::new(vec![0.5]), Scheme::Symmetric).unwrap();
        assert_eq!(off, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn su2_on_plane() {
        let g = make_group(GroupKind::Su2);
        let x = AlgebraVector::new(vec![0.0, 0.0, 1.0]);
        let v = invariant_wave_reduced(&g, &x, &MomentumVector::new(vec![0.0, 0.0, 2.0]), Scheme::Symmetric)
            .unwrap();
        assert!((v - Complex64::from_polar(1.0, -2.0)).norm() < 1e-15);
        let d = invariant_wave_reduced(&g, &x, &MomentumVector::new(vec![0.0, 0.0, 2.0]), Scheme::Duflo).unwrap();
        assert!((d - v / 1f64.sin()).norm() < 1e-14);
    }

    #[test]
    fn plane_counts() {
        let g = make_group(GroupKind::Su2);
        let x = AlgebraVector::new(vec![0.2, 0.4, -1.0]);
        assert_eq!(support_planes(&g, &x, 2.2).unwrap().labels().len(), 5);
        assert_eq!(support_planes(&g, &x, 0.5).unwrap().labels(), &[vec![0]]);
        let t = make_group(GroupKind::Torus(2));
        assert_eq!(support_planes(&t, &AlgebraVector::new(vec![0.1, 0.2]), 1.5).unwrap().labels().len(), 9);
        assert_eq!(spin_floor(&MomentumVector::new(vec![0.0, 2.2, 0.0])), 2);
        assert_eq!(spin_floor(&MomentumVector::new(vec![3.0, 0.0, 0.0])), 3);
    }

    #[test]
    fn gaussian_lattice_projection() {
        let g = make_group(GroupKind::U1);
        let gauss = |x: &AlgebraVector| Complex64::new((-x[0] * x[0] / 2.0).exp(), 0.0);
        let x = AlgebraVector::new(vec![0.0]);
        let v = project_position(&gauss, &g, &x, &BranchWindow::symmetric(1, 5), 1e-14).unwrap();
        let oracle: f64 = (-40..=40).map(|n| (-(2.0 * PI * n as f64).powi(2) / 2.0).exp()).sum();
        assert!((v.re - oracle).abs() < 1e-15);
        assert!(matches!(
            project_position(&gauss, &g, &x, &BranchWindow::symmetric(1, 0), 1e-12),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn frame_is_orthonormal() {
        let u = [0.6, 0.0, 0.8];
        let f = orthonormal_frame(&u);
        for a in 0..3 {
            for b in 0..3 {
                let d: f64 = (0..3).map(|k| f[a][k] * f[b][k]).sum();
                assert!((d - if a == b { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }
}
