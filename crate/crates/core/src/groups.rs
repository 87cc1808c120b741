//! The concrete catalog: U(1), SU(2) and the r-torus.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once `std` is in the build graph
use num_traits::Float;

use crate::lie::{
    su2_log_from_quaternion, BchStrategy, GroupDefinition, GroupFamily, GroupSpec,
    JacobianStrategy,
};
use crate::linalg::ComplexMatrix;
use crate::special::{sinc, wrap_angle};
use crate::{AlgebraVector, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    U1,
    Su2,
    /// `U(1)^r`, `r >= 1`.
    Torus(usize),
}

/// Builds a catalog group. Panics for `Torus(0)`.
pub fn make_group(kind: GroupKind) -> GroupSpec {
    let def = match kind {
        GroupKind::U1 => abelian_definition("u1".into(), GroupFamily::U1, 1),
        GroupKind::Torus(r) => {
            assert!(r >= 1, "a torus needs at least one circle");
            abelian_definition(format!("torus{r}"), GroupFamily::Torus, r)
        }
        GroupKind::Su2 => {
            let mut c = vec![vec![vec![0.0; 3]; 3]; 3];
            for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                c[i][j][k] = -2.0;
                c[j][i][k] = 2.0;
            }
            GroupDefinition {
                name: "su2".into(),
                family: GroupFamily::Su2,
                dim: 3,
                rank: 1,
                structure_constants: c,
                torus_generators: vec![vec![0.0, 0.0, 1.0]],
                bch: BchStrategy::ClosedForm,
                jacobian: JacobianStrategy::ClosedForm,
                principal_radius: Some(PI),
            }
        }
    };
    GroupSpec::new(def).expect("catalog groups are valid")
}

fn abelian_definition(name: alloc::string::String, family: GroupFamily, r: usize) -> GroupDefinition {
    GroupDefinition {
        name,
        family,
        dim: r,
        rank: r,
        structure_constants: vec![vec![vec![0.0; r]; r]; r],
        torus_generators: (0..r).map(|i| AlgebraVector::unit(r, i).into_coords()).collect(),
        bch: BchStrategy::ClosedForm,
        jacobian: JacobianStrategy::ClosedForm,
        principal_radius: Some(PI),
    }
}

/// Matrix (or phase) form of a group element.
#[derive(Debug, Clone, PartialEq)]
pub enum PointForm {
    /// 2x2 special unitary matrix.
    Su2(ComplexMatrix),
    /// One unit complex number per circle factor.
    Phases(Vec<Complex64>),
}

/// A group element with its principal-branch coordinates cached.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint {
    family: GroupFamily,
    principal_log: AlgebraVector,
    form: PointForm,
    on_boundary: bool,
}

impl GroupPoint {
    pub fn family(&self) -> GroupFamily {
        self.family
    }

    /// Principal-branch coordinates; on the SU(2) boundary this is one of the
    /// (non-unique) radius-pi representatives.
    pub fn principal_log(&self) -> &AlgebraVector {
        &self.principal_log
    }

    pub fn form(&self) -> &PointForm {
        &self.form
    }

    pub fn is_on_boundary(&self) -> bool {
        self.on_boundary
    }

    /// Builds an SU(2) point from a special unitary matrix.
    pub fn from_su2_matrix(m: ComplexMatrix) -> Result<Self> {
        if m.size() != 2 {
            return Err(Error::InvalidDimension { expected: 2, found: m.size() });
        }
        let (s, w) = su2_quaternion(&m);
        let (log, on_boundary) = match su2_log_from_quaternion(s, w) {
            Ok(l) => (l, false),
            Err(_) => (AlgebraVector::new(vec![0.0, 0.0, PI]), true),
        };
        Ok(Self { family: GroupFamily::Su2, principal_log: log, form: PointForm::Su2(m), on_boundary })
    }

    fn from_phases(family: GroupFamily, phases: Vec<Complex64>) -> Self {
        let log: Vec<f64> = phases.iter().map(|z| z.arg()).collect();
        let on_boundary = log.iter().any(|&a| a >= PI);
        Self { family, principal_log: log.into(), form: PointForm::Phases(phases), on_boundary }
    }

    pub fn inverse(&self) -> Self {
        match &self.form {
            PointForm::Su2(m) => {
                let mut p = Self::from_su2_matrix(m.adjoint()).expect("2x2");
                if !p.on_boundary {
                    p.principal_log = -&self.principal_log;
                }
                p
            }
            PointForm::Phases(z) => {
                Self::from_phases(self.family, z.iter().map(|z| z.conj()).collect())
            }
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        match (&self.form, &other.form) {
            (PointForm::Su2(a), PointForm::Su2(b)) => Self::from_su2_matrix(a.matmul(b)),
            (PointForm::Phases(a), PointForm::Phases(b)) if a.len() == b.len() => {
                Ok(Self::from_phases(self.family, a.iter().zip(b).map(|(x, y)| x * y).collect()))
            }
            _ => Err(Error::OperandMismatch),
        }
    }
}

/// `(s, w)` with `m = s I + i w . sigma` (averaging the redundant entries).
fn su2_quaternion(m: &ComplexMatrix) -> (f64, [f64; 3]) {
    let s = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
    let wz = 0.5 * (m[(0, 0)].im - m[(1, 1)].im);
    let wx = 0.5 * (m[(0, 1)].im + m[(1, 0)].im);
    let wy = 0.5 * (m[(0, 1)].re - m[(1, 0)].re);
    (s, [wx, wy, wz])
}

fn su2_matrix(s: f64, w: [f64; 3]) -> ComplexMatrix {
    let c = Complex64::new;
    ComplexMatrix::from_rows(&[
        &[c(s, w[2]), c(w[1], w[0])],
        &[c(-w[1], w[0]), c(s, -w[2])],
    ])
}

/// `exp(X)`.
pub fn exp_map(g: &GroupSpec, x: &AlgebraVector) -> Result<GroupPoint> {
    x.expect_dim(g.dim())?;
    match g.family() {
        GroupFamily::Su2 => {
            let r = x.norm();
            let sr = sinc(r);
            let w: [f64; 3] = core::array::from_fn(|i| sr * x[i]);
            GroupPoint::from_su2_matrix(su2_matrix(r.cos(), w))
        }
        GroupFamily::U1 | GroupFamily::Torus => {
            let mut pt = GroupPoint::from_phases(
                g.family(),
                x.coords().iter().map(|&a| Complex64::from_polar(1.0, a)).collect(),
            );
            // the phase argument loses the exact wrapped coordinate; keep it
            pt.principal_log = x.coords().iter().map(|&a| wrap_angle(a)).collect::<Vec<_>>().into();
            Ok(pt)
        }
        GroupFamily::Generic => Err(Error::UnsupportedGroup(g.name().into())),
    }
}

/// The unique `X` in the principal branch with `exp(X) = pt`.
pub fn log_principal(g: &GroupSpec, pt: &GroupPoint) -> Result<AlgebraVector> {
    if pt.family != g.family() {
        return Err(Error::OperandMismatch);
    }
    if pt.on_boundary && g.family() == GroupFamily::Su2 {
        return Err(Error::BoundaryElement);
    }
    Ok(pt.principal_log.clone())
}

/// Spin label stored as `2 lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinLabel {
    pub twice_lambda: u32,
}

impl SpinLabel {
    pub fn new(twice_lambda: u32) -> Self {
        Self { twice_lambda }
    }

    pub fn lambda(self) -> f64 {
        self.twice_lambda as f64 / 2.0
    }

    pub fn dimension(self) -> usize {
        self.twice_lambda as usize + 1
    }
}

/// `chi_lambda(X) = sin((2 lambda + 1) r) / sin r`, `r = |X|`, summed as the
/// finite cosine series so the limits at `r in pi Z` need no special casing.
pub fn character(lam: SpinLabel, x: &AlgebraVector) -> f64 {
    character_radial(lam, x.norm())
}

pub fn character_radial(lam: SpinLabel, r: f64) -> f64 {
    let k = lam.twice_lambda as i64;
    (0..=k).map(|j| (((k - 2 * j) as f64) * r).cos()).sum()
}

/// Spin-lambda matrices `(J_x, J_y, J_z)` in the basis `m = lambda, ..., -lambda`.
pub fn spin_generators(lam: SpinLabel) -> [ComplexMatrix; 3] {
    let d = lam.dimension();
    let l = lam.lambda();
    let mut jx = ComplexMatrix::zeros(d);
    let mut jy = ComplexMatrix::zeros(d);
    let mut jz = ComplexMatrix::zeros(d);
    for a in 0..d {
        let m = l - a as f64;
        jz[(a, a)] = Complex64::new(m, 0.0);
        if a + 1 < d {
            // <m | J_+ | m-1>
            let mm = m - 1.0;
            let ladder = ((l - mm) * (l + mm + 1.0)).sqrt();
            jx[(a, a + 1)] = Complex64::new(0.5 * ladder, 0.0);
            jx[(a + 1, a)] = Complex64::new(0.5 * ladder, 0.0);
            jy[(a, a + 1)] = Complex64::new(0.0, -0.5 * ladder);
            jy[(a + 1, a)] = Complex64::new(0.0, 0.5 * ladder);
        }
    }
    [jx, jy, jz]
}

/// `rho_lambda(exp(X)) = exp(2 i X . J)`; spin 1/2 reproduces [`exp_map`].
pub fn spin_rep(lam: SpinLabel, x: &AlgebraVector) -> Result<ComplexMatrix> {
    x.expect_dim(3)?;
    let [jx, jy, jz] = spin_generators(lam);
    let gen = jx
        .scale(Complex64::new(0.0, 2.0 * x[0]))
        .add(&jy.scale(Complex64::new(0.0, 2.0 * x[1])))
        .add(&jz.scale(Complex64::new(0.0, 2.0 * x[2])));
    Ok(gen.exp())
}
