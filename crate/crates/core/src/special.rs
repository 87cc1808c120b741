//! Small special functions with their removable singularities handled.

use core::f64::consts::PI;

#[allow(unused_imports)] // inherent once `std` is in the build graph
use num_traits::Float;

const SERIES_SWITCH: f64 = 1.0;

/// `sum_{k>=k0} (-1)^k c(k) x^(2k - shift) / (2k+1)!` for even `shift`, summed
/// until the terms stop contributing.
fn odd_factorial_series(x: f64, k0: u32, shift: i32, c: impl Fn(f64) -> f64) -> f64 {
    let x2 = x * x;
    let mut sum = 0.0;
    for k in k0..40 {
        let kf = k as f64;
        let mut fact = 1.0;
        for j in 1..=(2 * k + 1) {
            fact *= j as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * c(kf) * x2.powi(k as i32 - shift / 2) / fact;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `sin(x)/x`.
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < SERIES_SWITCH {
        odd_factorial_series(x, 0, 0, |_| 1.0)
    } else {
        x.sin() / x
    }
}

/// `sinc'(x)/x`, finite at the origin where it equals `-1/3`.
pub(crate) fn sinc_d1_over_x(x: f64) -> f64 {
    if x.abs() < SERIES_SWITCH {
        odd_factorial_series(x, 1, 2, |k| 2.0 * k)
    } else {
        (x * x.cos() - x.sin()) / (x * x * x)
    }
}

/// `sinc''(x)`.
pub(crate) fn sinc_d2(x: f64) -> f64 {
    if x.abs() < SERIES_SWITCH {
        odd_factorial_series(x, 1, 2, |k| 2.0 * k * (2.0 * k - 1.0))
    } else {
        ((2.0 - x * x) * x.sin() - 2.0 * x * x.cos()) / (x * x * x)
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub(crate) fn wrap_angle(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut y = x % two_pi;
    if y > PI {
        y -= two_pi;
    } else if y <= -PI {
        y += two_pi;
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_and_closed_forms_agree_at_switch() {
        for &x in &[0.999_999, 1.000_001, 0.5, 2.0] {
            let closed = x.sin() / x;
            assert!((sinc(x) - closed).abs() < 1e-15);
            let d1 = (x * x.cos() - x.sin()) / (x * x * x);
            assert!((sinc_d1_over_x(x) - d1).abs() < 1e-14, "{x}");
            let d2 = ((2.0 - x * x) * x.sin() - 2.0 * x * x.cos()) / (x * x * x);
            assert!((sinc_d2(x) - d2).abs() < 1e-14, "{x}");
        }
        assert_eq!(sinc(0.0), 1.0);
        assert!((sinc_d1_over_x(0.0) + 1.0 / 3.0).abs() < 1e-16);
        assert!((sinc_d2(0.0) + 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn wrap_angle_lands_in_half_open_interval() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(1.0 + 2.0 * PI) - 1.0).abs() < 1e-14);
        assert!((wrap_angle(-3.5) - (2.0 * PI - 3.5)).abs() < 1e-14);
    }
}
