use std::f64::consts::PI;

use ncfourier_core::fourier::{Domain, PositionFunction};
use ncfourier_core::groups::{make_group, GroupKind};
use ncfourier_core::poisson::{
    poisson_generic, poisson_lhs, poisson_rhs_su2, poisson_rhs_u1, DerivativeMode, PoissonCase,
};
use ncfourier_core::quadrature::QuadratureSpec;
use ncfourier_core::{AlgebraVector, Complex64};

fn case(kind: GroupKind, sigma: f64, x: Vec<f64>, quad: QuadratureSpec) -> PoissonCase {
    let g = make_group(kind);
    let psi = PositionFunction::gaussian(&g, sigma, Domain::WholeAlgebra).unwrap();
    PoissonCase::new(psi, AlgebraVector::new(x), quad).unwrap()
}

/// `sum_n exp(-(r + 2 pi n)^2 / 2 sigma^2)` along the axis of X.
fn radial_lattice(sigma: f64, r: f64) -> f64 {
    (-50..=50)
        .map(|n| {
            let y = r + 2.0 * PI * n as f64;
            (-y * y / (2.0 * sigma * sigma)).exp()
        })
        .sum()
}

#[test]
fn u1_gaussians_match_theta_sums() {
    for &sigma in &[0.5, 1.0, 2.0] {
        for i in 0..20 {
            let x = -PI + 2.0 * PI * (i as f64 + 0.5) / 20.0;
            let c = case(GroupKind::U1, sigma, vec![x], QuadratureSpec::default());
            let out = poisson_generic(&c).unwrap();
            let theta: f64 = (-200..=200)
                .map(|k| {
                    let k = k as f64;
                    sigma * (-sigma * sigma * k * k / 2.0).exp() * (k * x).cos()
                })
                .sum::<f64>()
                / (2.0 * PI).sqrt();
            assert!(out.residual <= 1e-10, "sigma {sigma} x {x}: {out:?}");
            assert!((out.rhs.re - theta).abs() <= 1e-10);
        }
    }
}

#[test]
fn torus_gaussian_factorizes() {
    let x = vec![0.4, -1.9];
    let c = case(GroupKind::Torus(2), 0.8, x.clone(), QuadratureSpec::default());
    let out = poisson_generic(&c).unwrap();
    let axis = |x: f64| -> f64 {
        (-20..=20)
            .map(|n| {
                let y = x + 2.0 * PI * n as f64;
                (-y * y / (2.0 * 0.64)).exp()
            })
            .sum()
    };
    assert!(out.residual <= 1e-10, "{out:?}");
    assert!((out.lhs.re - axis(x[0]) * axis(x[1])).abs() <= 1e-12);
}

#[test]
fn torus_of_rank_one_is_the_circle() {
    let a = case(GroupKind::Torus(1), 1.0, vec![0.7], QuadratureSpec::default());
    let b = case(GroupKind::U1, 1.0, vec![0.7], QuadratureSpec::default());
    assert_eq!(poisson_rhs_u1(&a).unwrap(), poisson_rhs_u1(&b).unwrap());
    assert_eq!(poisson_generic(&a).unwrap().rhs, poisson_rhs_u1(&a).unwrap());
}

#[test]
fn su2_radial_gaussians() {
    for &sigma in &[0.4, 0.6, 0.8] {
        for &r in &[0.3, 0.9, 1.5, 2.2, 2.8] {
            let x = vec![0.6 * r, 0.0, 0.8 * r];
            let c = case(GroupKind::Su2, sigma, x, QuadratureSpec::default());
            let out = poisson_generic(&c).unwrap();
            let oracle = radial_lattice(sigma, r);
            assert!((out.lhs.re - oracle).abs() <= 1e-14 * oracle.max(1.0));
            assert!(out.residual <= 1e-3 * oracle, "sigma {sigma} r {r}: {out:?}");
            assert_eq!(out.rhs, poisson_rhs_su2(&c).unwrap());
        }
    }
}

#[test]
fn su2_single_branch_returns_the_function() {
    let c = case(GroupKind::Su2, 0.4, vec![0.0, 1.0, 0.0], QuadratureSpec::default());
    let rhs = poisson_rhs_su2(&c).unwrap();
    let psi = (-1.0f64 / (2.0 * 0.16)).exp();
    assert!((rhs.re - psi).abs() <= 1e-3 * psi);
    assert!((poisson_lhs(&c).unwrap().re - psi).abs() <= 1e-15);
}

#[test]
fn su2_finite_differences_agree_with_radial_form() {
    let quad = QuadratureSpec { radial_order: 32, angular_orders: (8, 16), target_rel_tol: 1e-6, ..Default::default() };
    let c = case(GroupKind::Su2, 0.6, vec![0.0, 0.0, 1.3], quad);
    let radial = poisson_rhs_su2(&c.clone().with_derivative(DerivativeMode::Radial)).unwrap();
    let fd = poisson_rhs_su2(&c.with_derivative(DerivativeMode::FiniteDifference)).unwrap();
    assert!((radial - fd).norm() <= 1e-4 * radial.norm(), "{radial} {fd}");
}

#[test]
fn su2_rotations_at_fixed_radius() {
    let base = poisson_rhs_su2(&case(GroupKind::Su2, 0.6, vec![0.0, 0.0, 1.7], QuadratureSpec::default())).unwrap();
    let dirs = [[0.6, 0.0, 0.8], [0.0, 1.0, 0.0], [-0.48, 0.64, 0.6], [0.36, -0.48, -0.8], [1.0, 0.0, 0.0]];
    for d in dirs {
        let x = d.iter().map(|c| c * 1.7).collect();
        let v = poisson_rhs_su2(&case(GroupKind::Su2, 0.6, x, QuadratureSpec::default())).unwrap();
        assert!((v - base).norm() <= 1e-6 * base.norm());
    }
}

#[test]
fn su2_plane_truncation_converges() {
    let c = case(GroupKind::Su2, 0.6, vec![0.0, 0.0, 1.0], QuadratureSpec::default());
    let lhs = poisson_lhs(&c).unwrap();
    let full = poisson_rhs_su2(&c).unwrap();
    let residual = (full - lhs).norm();
    let m = 30;
    let a = poisson_rhs_su2(&c.clone().with_m_max(m)).unwrap();
    let b = poisson_rhs_su2(&c.with_m_max(m + 2)).unwrap();
    assert!((a - b).norm() <= 0.1 * residual.max(1e-16), "{a} {b} {residual}");
    let _ = Complex64::new(0.0, 0.0);
}
