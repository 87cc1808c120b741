//! Coordinates on the Lie algebra and its dual.

use alloc::vec::Vec;
use core::ops::{Add, Index, Mul, Neg, Sub};

#[allow(unused_imports)] // inherent once `std` is in the build graph
use num_traits::Float;

use crate::{Error, Result};

/// An element `X = X^i t_i` of the Lie algebra, stored by its basis coordinates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlgebraVector(Vec<f64>);

/// A momentum `p = p_i (t^i)*` in the dual of the Lie algebra.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MomentumVector(Vec<f64>);

macro_rules! coordinate_vector {
    ($ty:ident) => {
        impl $ty {
            pub fn new(coords: impl Into<Vec<f64>>) -> Self {
                Self(coords.into())
            }

            pub fn zeros(dim: usize) -> Self {
                Self(alloc::vec![0.0; dim])
            }

            /// The `i`-th unit vector of a `dim`-dimensional space.
            pub fn unit(dim: usize, i: usize) -> Self {
                let mut v = Self::zeros(dim);
                v.0[i] = 1.0;
                v
            }

            pub fn coords(&self) -> &[f64] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<f64> {
                self.0
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            /// Euclidean norm of the coordinates.
            pub fn norm(&self) -> f64 {
                self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().all(|c| c.is_finite())
            }

            pub fn scale(&self, s: f64) -> Self {
                Self(self.0.iter().map(|c| c * s).collect())
            }

            pub fn dot(&self, other: &Self) -> f64 {
                self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
            }

            pub fn distance(&self, other: &Self) -> f64 {
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            }

            pub(crate) fn expect_dim(&self, dim: usize) -> Result<()> {
                if self.0.len() == dim {
                    Ok(())
                } else {
                    Err(Error::InvalidDimension { expected: dim, found: self.0.len() })
                }
            }
        }

        impl From<Vec<f64>> for $ty {
            fn from(v: Vec<f64>) -> Self {
                Self(v)
            }
        }

        impl Index<usize> for $ty {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }

        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $ty(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $ty(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(self.0.iter().map(|a| -a).collect())
            }
        }

        impl Mul<f64> for &$ty {
            type Output = $ty;
            fn mul(self, s: f64) -> $ty {
                self.scale(s)
            }
        }
    };
}

coordinate_vector!(AlgebraVector);
coordinate_vector!(MomentumVector);

impl AlgebraVector {
    pub(crate) fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    /// Unit direction `u_X`, or `None` at the origin.
    pub fn direction(&self) -> Option<AlgebraVector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }
}

impl MomentumVector {
    /// The duality pairing `<p, X> = p_i X^i`.
    pub fn pairing(&self, x: &AlgebraVector) -> f64 {
        self.0.iter().zip(x.coords()).map(|(p, x)| p * x).sum()
    }
}
