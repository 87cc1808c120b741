use std::fs::File;

use ncfourier::formats::{
    coefficients_from_json, coefficients_to_json, group_from_json, group_to_json, read_sampled_position,
    write_sampled_position,
};
use ncfourier_core::fourier::{Domain, PositionFunction, SampledPosition};
use ncfourier_core::groups::{make_group, GroupKind};
use ncfourier_core::lie::{BchStrategy, JacobianStrategy};
use ncfourier_core::{AlgebraVector, Complex64, MomentumVector};
use proptest::prelude::*;

#[test]
fn group_files_survive_a_disk_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = make_group(GroupKind::Su2)
        .with_bch(BchStrategy::Series { order: 5, tolerance: 1e-3 })
        .unwrap()
        .with_jacobian(JacobianStrategy::Determinant)
        .unwrap();
    let path = dir.path().join("group.json");
    std::fs::write(&path, group_to_json(&g).unwrap()).unwrap();
    let back = group_from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back.definition(), g.definition());
}

#[test]
fn radial_samples_drive_a_class_function() {
    let dir = tempfile::tempdir().unwrap();
    let radii: Vec<f64> = (0..=64).map(|i| i as f64 * std::f64::consts::PI / 64.0).collect();
    let values: Vec<Complex64> = radii.iter().map(|r| Complex64::new((-r * r).exp(), 0.0)).collect();
    let grid = SampledPosition::new(vec![radii], values, true).unwrap();
    let path = dir.path().join("radial.csv");
    write_sampled_position(File::create(&path).unwrap(), &grid).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("r,re,im\n"));
    let back = read_sampled_position(File::open(&path).unwrap()).unwrap();
    assert_eq!(back.values(), grid.values());
    let g = make_group(GroupKind::Su2);
    let f = PositionFunction::sampled(&g, Domain::PrincipalBranch, back, true).unwrap();
    let v = f.eval(&AlgebraVector::new(vec![0.0, 0.5, 0.0]));
    assert!((v.re - (-0.25f64).exp()).abs() < 1e-3);
}

proptest! {
    #[test]
    fn coefficient_tables_round_trip(entries in prop::collection::vec(
        (prop::collection::vec(-1e3f64..1e3, 3), -1e3f64..1e3, -1e3f64..1e3), 0..20)
    ) {
        let entries: Vec<(MomentumVector, Complex64)> = entries
            .into_iter()
            .map(|(p, re, im)| (MomentumVector::new(p), Complex64::new(re, im)))
            .collect();
        let back = coefficients_from_json(&coefficients_to_json(&entries).unwrap()).unwrap();
        prop_assert_eq!(back, entries);
    }

    #[test]
    fn cartesian_grids_round_trip(nx in 2usize..6, ny in 2usize..6, seed in 0u64..1000) {
        let ax: Vec<f64> = (0..nx).map(|i| -1.0 + i as f64 * 0.37).collect();
        let ay: Vec<f64> = (0..ny).map(|i| i as f64 * 0.11 + seed as f64 * 1e-3).collect();
        let values: Vec<Complex64> = (0..nx * ny).map(|k| Complex64::new(k as f64, -(k as f64) / 7.0)).collect();
        let grid = SampledPosition::new(vec![ax, ay], values, false).unwrap();
        let mut buf = Vec::new();
        write_sampled_position(&mut buf, &grid).unwrap();
        let back = read_sampled_position(buf.as_slice()).unwrap();
        prop_assert_eq!(back.axes(), grid.axes());
        prop_assert_eq!(back.values(), grid.values());
    }
}
