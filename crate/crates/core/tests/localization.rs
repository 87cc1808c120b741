use ncfourier_core::groups::{make_group, GroupKind};
use ncfourier_core::lie::GroupSpec;
use ncfourier_core::starprod::Scheme;
use ncfourier_core::waves::{branch_average, invariant_wave_reduced, support_planes, Averaging};
use ncfourier_core::{AlgebraVector, MomentumVector};

/// 64 fixed momenta whose projection on the torus direction `u` is not an
/// integer (projection fractional part in `[0.1, 0.9]`).
fn off_support(u: &[f64]) -> Vec<MomentumVector> {
    (0..64)
        .map(|i| {
            let t = i as f64;
            let raw = [(0.37 * t).sin() * 3.0, (0.53 * t + 1.0).cos() * 3.0, (0.71 * t + 2.0).sin() * 3.0];
            let along: f64 = raw.iter().zip(u).map(|(a, b)| a * b).sum();
            let target = along.floor() + 0.1 + 0.8 * ((0.29 * t).sin() * 0.5 + 0.5);
            MomentumVector::new(raw.iter().zip(u).map(|(a, b)| a + (target - along) * b).collect::<Vec<_>>())
        })
        .collect()
}

fn rms(g: &GroupSpec, x: &AlgebraVector, ps: &[MomentumVector], n: i64) -> f64 {
    let total: f64 = ps
        .iter()
        .map(|p| branch_average(g, x, p, n, Averaging::Cesaro).unwrap().norm_sqr())
        .sum();
    (total / ps.len() as f64).sqrt()
}

#[test]
fn su2_cesaro_sums_localize() {
    let g = make_group(GroupKind::Su2);
    let x = AlgebraVector::new(vec![0.4, -0.8, 1.1]);
    let u: Vec<f64> = x.coords().iter().map(|c| c / x.norm()).collect();
    let ps = off_support(&u);
    let mut last = rms(&g, &x, &ps, 8);
    for n in [16, 32, 64, 128] {
        let now = rms(&g, &x, &ps, n);
        let ratio = now / last;
        assert!((0.25..=1.0).contains(&ratio), "window {n}: ratio {ratio}");
        last = now;
    }
    let support = support_planes(&g, &x, 4.0).unwrap();
    let on = MomentumVector::new(vec![2.0 * u[0] + 0.3, 2.0 * u[1], 2.0 * u[2]]);
    let on = {
        // project the transverse shift off u so that <p, u> = 2 exactly
        let along: f64 = on.coords().iter().zip(&u).map(|(a, b)| a * b).sum();
        MomentumVector::new(on.coords().iter().zip(&u).map(|(a, b)| a + (2.0 - along) * b).collect::<Vec<_>>())
    };
    assert!(support.contains(&on));
    let want = invariant_wave_reduced(&g, &x, &on, Scheme::Symmetric).unwrap();
    for n in [8, 64] {
        let got = branch_average(&g, &x, &on, n, Averaging::Cesaro).unwrap();
        assert!((got - want).norm() < 1e-12);
    }
}

#[test]
fn u1_cesaro_sums_localize() {
    let g = make_group(GroupKind::U1);
    let x = AlgebraVector::new(vec![0.9]);
    let ps: Vec<MomentumVector> = (0..64).map(|i| MomentumVector::new(vec![-4.0 + i as f64 / 8.0 + 0.05])).collect();
    let mut last = rms(&g, &x, &ps, 8);
    for n in [16, 32, 64] {
        let now = rms(&g, &x, &ps, n);
        assert!((0.25..=1.0).contains(&(now / last)));
        last = now;
    }
    let on = MomentumVector::new(vec![3.0]);
    let want = invariant_wave_reduced(&g, &x, &on, Scheme::Symmetric).unwrap();
    assert!((branch_average(&g, &x, &on, 16, Averaging::Cesaro).unwrap() - want).norm() < 1e-12);
}
