use std::f64::consts::PI;

use ncfourier_core::fourier::{
    class_shells, convolve_momentum, convolve_position, duflo_class_shells, fourier_coeff_class,
    inverse_series_nostar, lattice_coefficients, momentum_pairing, ncft, parseval_gap, position_pairing,
    Domain, MomentumFunction, PositionFunction,
};
use ncfourier_core::groups::{character_radial, exp_map, make_group, GroupKind, SpinLabel};
use ncfourier_core::quadrature::QuadratureSpec;
use ncfourier_core::starprod::{planewave_eval, PlaneWaveSum, Scheme};
use ncfourier_core::lie::jacobian_sqrt;
use ncfourier_core::{AlgebraVector, Complex64, MomentumVector};

fn trig(g: &ncfourier_core::lie::GroupSpec, seed: u64, degree: i64) -> PositionFunction {
    // small deterministic generator, enough for fixed coefficient sets
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    let terms = (-degree..=degree).map(|n| (vec![n], Complex64::new(next(), next()))).collect();
    PositionFunction::trig_polynomial(g, terms).unwrap()
}

#[test]
fn character_shell_values() {
    let g = make_group(GroupKind::Su2);
    let quad = QuadratureSpec::default();
    for k in 0..=4u32 {
        let chi = PositionFunction::character(&g, SpinLabel::new(k)).unwrap();
        for i in 0..40 {
            let p = 0.05 + i as f64 * 0.19;
            let v = fourier_coeff_class(&chi, p, &quad).unwrap();
            let inside = p >= k as f64 && p < k as f64 + 2.0;
            let want = if inside { PI * PI / p } else { 0.0 };
            assert!((v.re - want).abs() <= 1e-10 * want.max(1.0), "2lambda {k} p {p}: {v}");
        }
    }
}

#[test]
fn computed_shells_match_closed_form() {
    let g = make_group(GroupKind::Su2);
    let chi = PositionFunction::character(&g, SpinLabel::new(2)).unwrap();
    let shells = class_shells(&chi, 6, &QuadratureSpec::default()).unwrap();
    let closed = MomentumFunction::character_shells(SpinLabel::new(2));
    for j in 0..6 {
        let p = MomentumVector::new(vec![0.0, 0.0, j as f64 + 0.5]);
        assert!((shells.eval(&p).unwrap() - closed.eval(&p).unwrap()).norm() < 1e-10);
    }
}

#[test]
fn both_orderings_rebuild_the_character() {
    let g = make_group(GroupKind::Su2);
    let quad = QuadratureSpec::default();
    let chi = PositionFunction::character(&g, SpinLabel::new(2)).unwrap();
    let sym = MomentumFunction::character_shells(SpinLabel::new(2));
    let duf = duflo_class_shells(&chi, 8, &quad).unwrap();
    for i in 0..20 {
        let r = (i as f64 + 0.5) * PI / 20.0;
        let x = AlgebraVector::new(vec![0.48 * r, -0.6 * r, 0.64 * r]);
        let a = inverse_series_nostar(&sym, &x, Scheme::Symmetric, &g, &quad).unwrap();
        let b = inverse_series_nostar(&duf, &x, Scheme::Duflo, &g, &quad).unwrap();
        let want = character_radial(SpinLabel::new(2), r);
        assert!((a.re - want).abs() <= 1e-12 * want.abs().max(1.0));
        assert!((a - b).norm() <= 1e-10 * want.abs().max(1.0));
    }
}

#[test]
fn duflo_waves_carry_the_half_jacobian() {
    let g = make_group(GroupKind::Su2);
    let x = AlgebraVector::new(vec![0.7, -1.1, 0.4]);
    let sym = PlaneWaveSum::single(&g, Scheme::Symmetric, Complex64::new(0.3, -1.2), x.clone()).unwrap();
    let duf = sym.with_scheme(Scheme::Duflo);
    let p = MomentumVector::new(vec![1.5, 0.2, -2.0]);
    let s = jacobian_sqrt(&g, &x).unwrap();
    assert_eq!(planewave_eval(&duf, &p).unwrap(), planewave_eval(&sym, &p).unwrap() * (1.0 / s));
}

#[test]
fn u1_parseval_on_trig_polynomials() {
    let g = make_group(GroupKind::U1);
    let quad = QuadratureSpec::default();
    for degree in 1..=8 {
        let phi = trig(&g, degree as u64, degree);
        let psi = trig(&g, 100 + degree as u64, degree);
        let gap = parseval_gap(&phi, &psi, &quad).unwrap();
        assert!(gap <= 1e-12, "degree {degree}: {gap}");
    }
}

#[test]
fn character_orthogonality_on_both_sides() {
    let g = make_group(GroupKind::Su2);
    let quad = QuadratureSpec::default();
    for a in [0u32, 2, 4] {
        for b in [0u32, 2, 4] {
            let chi_a = PositionFunction::character(&g, SpinLabel::new(a)).unwrap();
            let chi_b = PositionFunction::character(&g, SpinLabel::new(b)).unwrap();
            let want = if a == b { 2.0 * PI * PI } else { 0.0 };
            let pos = position_pairing(&chi_a, &chi_b, &quad).unwrap();
            let mom = momentum_pairing(&class_shells(&chi_a, 8, &quad).unwrap(), &class_shells(&chi_b, 8, &quad).unwrap())
                .unwrap();
            assert!((pos.re - want).abs() <= 1e-9 * 2.0 * PI * PI, "{a} {b} {pos}");
            assert!((mom.re - want).abs() <= 1e-9 * 2.0 * PI * PI, "{a} {b} {mom}");
        }
    }
}

#[test]
fn u1_convolution_theorems() {
    let g = make_group(GroupKind::U1);
    let quad = QuadratureSpec::default();
    let phi = trig(&g, 7, 3);
    let psi = trig(&g, 8, 4);
    let cphi = lattice_coefficients(&phi, 8, &quad).unwrap();
    let cpsi = lattice_coefficients(&psi, 8, &quad).unwrap();
    // pointwise product <-> momentum convolution
    let conv = convolve_momentum(&cphi, &cpsi).unwrap();
    // position convolution <-> product of coefficients
    let ncfourier_core::fourier::MomentumRepr::Lattice(a) = &cphi.repr else { unreachable!() };
    let ncfourier_core::fourier::MomentumRepr::Lattice(b) = &cpsi.repr else { unreachable!() };
    let product: Vec<_> = a.iter().zip(b).map(|((k, x), (_, y))| (k.clone(), x * y)).collect();
    let product = MomentumFunction::new(ncfourier_core::fourier::MomentumRepr::Lattice(product), cphi.normalization);
    for i in 0..10 {
        let x = AlgebraVector::new(vec![-3.0 + 0.6 * i as f64]);
        let lhs = inverse_series_nostar(&conv, &x, Scheme::Symmetric, &g, &quad).unwrap();
        assert!((lhs - phi.eval(&x) * psi.eval(&x)).norm() <= 1e-10);
        let at = exp_map(&g, &x).unwrap();
        let direct = convolve_position(&phi, &psi, &at, &quad).unwrap();
        let series = inverse_series_nostar(&product, &x, Scheme::Symmetric, &g, &quad).unwrap();
        assert!((direct - series).norm() <= 1e-10, "{direct} {series}");
    }
}

#[test]
fn su2_gaussian_transform_matches_radial_oracle() {
    let g = make_group(GroupKind::Su2);
    let psi = PositionFunction::gaussian(&g, 1.0, Domain::WholeAlgebra).unwrap();
    let quad = QuadratureSpec::default();
    // composite Simpson on 4 pi int_0^12 sin^2 r e^{-r^2/2} sinc(P r) dr
    let oracle = |p: f64| -> f64 {
        let n = 4000;
        let dx = 12.0 / n as f64;
        let f = |r: f64| {
            let s = if p * r == 0.0 { 1.0 } else { (p * r).sin() / (p * r) };
            4.0 * PI * r.sin().powi(2) * (-r * r / 2.0).exp() * s
        };
        let mut total = f(0.0) + f(12.0);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            total += w * f(i as f64 * dx);
        }
        total * dx / 3.0
    };
    for &p in &[0.0, 0.8, 2.0, 3.7] {
        let v = ncft(&psi, &MomentumVector::new(vec![0.0, p, 0.0]), &quad).unwrap();
        assert!((v.re - oracle(p)).abs() < 1e-10, "{p}: {v} {}", oracle(p));
    }
}
