//! Lie algebra arithmetic for any algebra given by structure constants.
//!
//! Basis conventions: `X = X^i t_i`, `[t_i, t_j] = c_ij^k t_k`. For su(2) the
//! catalog uses `t_i = i sigma_i`, hence `c_ij^k = -2 eps_ijk` and
//! `exp(X) = cos|X| + i (u_X . sigma) sin|X|`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::RangeInclusive;

#[allow(unused_imports)] // inherent once `std` is in the build graph
use num_traits::Float;

use crate::linalg::RealMatrix;
use crate::special::sinc;
use crate::{AlgebraVector, Error, Result};

/// Which catalog family a group belongs to; selects the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFamily {
    U1,
    Su2,
    Torus,
    /// Only structure constants are known; closed forms are unavailable.
    Generic,
}

impl GroupFamily {
    pub fn is_abelian(self) -> bool {
        matches!(self, GroupFamily::U1 | GroupFamily::Torus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BchStrategy {
    ClosedForm,
    /// Nested-commutator expansion through `order` (total degree in X and Y).
    /// `tolerance` bounds the accepted truncation estimate.
    Series { order: usize, tolerance: f64 },
}

impl BchStrategy {
    pub const DEFAULT_ORDER: usize = 6;
    pub const DEFAULT_TOLERANCE: f64 = 1e-4;

    pub fn series() -> Self {
        BchStrategy::Series { order: Self::DEFAULT_ORDER, tolerance: Self::DEFAULT_TOLERANCE }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobianStrategy {
    ClosedForm,
    Determinant,
}

/// Plain description of a group, as read from or written to a file.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupDefinition {
    pub name: String,
    pub family: GroupFamily,
    pub dim: usize,
    pub rank: usize,
    /// `structure_constants[i][j][k] = c_ij^k`.
    pub structure_constants: Vec<Vec<Vec<f64>>>,
    pub torus_generators: Vec<Vec<f64>>,
    pub bch: BchStrategy,
    pub jacobian: JacobianStrategy,
    /// `None` when exp is injective on the whole algebra.
    pub principal_radius: Option<f64>,
}

const CONSTANT_TOL: f64 = 1e-12;

/// A validated group description with precomputed series data.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    def: GroupDefinition,
    c: Vec<f64>,
    series: Option<BchSeries>,
}

impl GroupSpec {
    pub fn new(def: GroupDefinition) -> Result<Self> {
        let n = def.dim;
        if n == 0 {
            return Err(Error::InvalidGroup("dimension must be positive".into()));
        }
        if def.rank > n {
            return Err(Error::InvalidGroup("rank exceeds dimension".into()));
        }
        if def.torus_generators.len() != def.rank {
            return Err(Error::InvalidGroup("one torus generator per rank direction required".into()));
        }
        if def.torus_generators.iter().any(|a| a.len() != n) {
            return Err(Error::InvalidDimension {
                expected: n,
                found: def.torus_generators.iter().map(Vec::len).find(|&l| l != n).unwrap_or(0),
            });
        }
        let sc = &def.structure_constants;
        if sc.len() != n || sc.iter().any(|m| m.len() != n || m.iter().any(|row| row.len() != n)) {
            return Err(Error::InvalidGroup("structure constants must be dim x dim x dim".into()));
        }
        let mut c = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = sc[i][j][k];
                    if !v.is_finite() {
                        return Err(Error::InvalidGroup("non-finite structure constant".into()));
                    }
                    c[(i * n + j) * n + k] = v;
                }
            }
        }
        check_antisymmetry(&c, n)?;
        check_jacobi(&c, n)?;
        let abelian = c.iter().all(|&v| v == 0.0);
        match def.family {
            GroupFamily::U1 | GroupFamily::Torus if !abelian => {
                return Err(Error::InvalidGroup("abelian family with nonzero brackets".into()))
            }
            GroupFamily::U1 if n != 1 => {
                return Err(Error::InvalidGroup("u(1) is one-dimensional".into()))
            }
            GroupFamily::Su2 if n != 3 || def.rank != 1 => {
                return Err(Error::InvalidGroup("su(2) has dimension 3 and rank 1".into()))
            }
            GroupFamily::Generic
                if def.bch == BchStrategy::ClosedForm || def.jacobian == JacobianStrategy::ClosedForm =>
            {
                return Err(Error::InvalidGroup("closed forms need a catalog family".into()))
            }
            _ => {}
        }
        if let Some(r) = def.principal_radius {
            if !(r > 0.0) {
                return Err(Error::InvalidGroup("principal radius must be positive".into()));
            }
        }
        let series = match def.bch {
            BchStrategy::Series { order, tolerance } => {
                if order == 0 || order > 14 || !(tolerance > 0.0) {
                    return Err(Error::InvalidGroup("series order must lie in 1..=14".into()));
                }
                Some(BchSeries::new(order))
            }
            BchStrategy::ClosedForm => None,
        };
        Ok(Self { def, c, series })
    }

    pub fn definition(&self) -> &GroupDefinition {
        &self.def
    }

    pub fn name(&self) -> &str {
        &self.def.name
    }

    pub fn family(&self) -> GroupFamily {
        self.def.family
    }

    pub fn dim(&self) -> usize {
        self.def.dim
    }

    pub fn rank(&self) -> usize {
        self.def.rank
    }

    pub fn bch_strategy(&self) -> BchStrategy {
        self.def.bch
    }

    pub fn jacobian_strategy(&self) -> JacobianStrategy {
        self.def.jacobian
    }

    pub fn principal_radius(&self) -> Option<f64> {
        self.def.principal_radius
    }

    pub fn torus_generators(&self) -> Vec<AlgebraVector> {
        self.def.torus_generators.iter().cloned().map(AlgebraVector::from).collect()
    }

    /// `c_ij^k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.def.dim;
        self.c[(i * n + j) * n + k]
    }

    /// Same group with a different BCH strategy.
    pub fn with_bch(&self, bch: BchStrategy) -> Result<Self> {
        let mut def = self.def.clone();
        def.bch = bch;
        Self::new(def)
    }

    /// Same group with a different Jacobian strategy.
    pub fn with_jacobian(&self, jacobian: JacobianStrategy) -> Result<Self> {
        let mut def = self.def.clone();
        def.jacobian = jacobian;
        Self::new(def)
    }

    fn is_abelian(&self) -> bool {
        self.c.iter().all(|&v| v == 0.0)
    }
}

fn check_antisymmetry(c: &[f64], n: usize) -> Result<()> {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let a = c[(i * n + j) * n + k];
                let b = c[(j * n + i) * n + k];
                if (a + b).abs() > CONSTANT_TOL {
                    return Err(Error::InvalidGroup("structure constants are not antisymmetric".into()));
                }
            }
        }
    }
    Ok(())
}

fn check_jacobi(c: &[f64], n: usize) -> Result<()> {
    let at = |i: usize, j: usize, k: usize| c[(i * n + j) * n + k];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let s: f64 = (0..n)
                        .map(|m| {
                            at(i, j, m) * at(m, k, l)
                                + at(j, k, m) * at(m, i, l)
                                + at(k, i, m) * at(m, j, l)
                        })
                        .sum();
                    if s.abs() > CONSTANT_TOL {
                        return Err(Error::InvalidGroup("Jacobi identity violated".into()));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `[X, Y]^k = c_ij^k X^i Y^j`.
pub fn bracket(g: &GroupSpec, x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector> {
    let n = g.dim();
    x.expect_dim(n)?;
    y.expect_dim(n)?;
    Ok(bracket_unchecked(g, x.coords(), y.coords()).into())
}

fn bracket_unchecked(g: &GroupSpec, x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = g.dim();
    let mut z = vec![0.0; n];
    for i in 0..n {
        if x[i] == 0.0 {
            continue;
        }
        for j in 0..n {
            let xy = x[i] * y[j];
            if xy == 0.0 {
                continue;
            }
            let row = &g.c[(i * n + j) * n..(i * n + j + 1) * n];
            for (zk, ck) in z.iter_mut().zip(row) {
                *zk += ck * xy;
            }
        }
    }
    z
}

/// The matrix of `ad_X`, `M[k][j] = c_ij^k X^i`.
pub fn ad_matrix(g: &GroupSpec, x: &AlgebraVector) -> Result<RealMatrix> {
    let n = g.dim();
    x.expect_dim(n)?;
    let mut m = RealMatrix::zeros(n);
    for i in 0..n {
        let xi = x[i];
        if xi == 0.0 {
            continue;
        }
        for j in 0..n {
            for k in 0..n {
                m[(k, j)] += g.structure_constant(i, j, k) * xi;
            }
        }
    }
    Ok(m)
}

/// Coefficients of `log(e^X e^Y)` in the free associative algebra on `{X, Y}`,
/// turned into Lie elements with the Dynkin-Specht-Wever projection.
///
/// A word of length `k` with letters as bits (X = 0, Y = 1, first letter most
/// significant) is stored at index `2^k - 1 + bits`.
#[derive(Debug, Clone)]
pub struct BchSeries {
    order: usize,
    /// Per degree, the words with nonzero coefficient and `coef / degree`.
    terms: Vec<Vec<(usize, f64)>>,
}

fn word_index(len: usize, bits: usize) -> usize {
    (1 << len) - 1 + bits
}

fn word_of(index: usize) -> (usize, usize) {
    let mut len = 0;
    while word_index(len + 1, 0) <= index {
        len += 1;
    }
    (len, index - word_index(len, 0))
}

impl BchSeries {
    pub fn new(order: usize) -> Self {
        let size = word_index(order + 1, 0);
        let mut factorial = vec![1.0; order + 1];
        for k in 1..=order {
            factorial[k] = factorial[k - 1] * k as f64;
        }
        // W = e^X e^Y - 1 = sum_{a+b>=1} X^a Y^b / (a! b!)
        let mut w = vec![0.0; size];
        for a in 0..=order {
            for b in 0..=(order - a) {
                if a + b == 0 {
                    continue;
                }
                let bits = (1 << b) - 1;
                w[word_index(a + b, bits)] = 1.0 / (factorial[a] * factorial[b]);
            }
        }
        let mul = |u: &[f64], v: &[f64]| {
            let mut out = vec![0.0; size];
            for (iu, &cu) in u.iter().enumerate() {
                if cu == 0.0 {
                    continue;
                }
                let (lu, bu) = word_of(iu);
                for lv in 1..=(order - lu) {
                    let base = word_index(lv, 0);
                    for bv in 0..(1 << lv) {
                        let cv = v[base + bv];
                        if cv != 0.0 {
                            out[word_index(lu + lv, (bu << lv) | bv)] += cu * cv;
                        }
                    }
                }
            }
            out
        };
        let mut log = vec![0.0; size];
        let mut power = w.clone();
        for m in 1..=order {
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            for (l, p) in log.iter_mut().zip(&power) {
                *l += sign * p / m as f64;
            }
            if m < order {
                power = mul(&power, &w);
            }
        }
        let mut terms = vec![Vec::new(); order + 1];
        for (idx, &coef) in log.iter().enumerate() {
            if coef.abs() > 1e-15 {
                let (len, bits) = word_of(idx);
                terms[len].push((bits, coef / len as f64));
            }
        }
        Self { order, terms }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Homogeneous components `Z_1, ..., Z_order` of the BCH series.
    pub fn components(&self, g: &GroupSpec, x: &[f64], y: &[f64]) -> Vec<Vec<f64>> {
        let n = g.dim();
        // nested[len][bits] = [w_1, [w_2, ... w_len]] for the word (len, bits)
        let mut nested: Vec<Vec<Vec<f64>>> = vec![Vec::new(); self.order + 1];
        nested[1] = vec![x.to_vec(), y.to_vec()];
        for len in 2..=self.order {
            let mut level = Vec::with_capacity(1 << len);
            for bits in 0..(1usize << len) {
                let first = if (bits >> (len - 1)) & 1 == 0 { x } else { y };
                let suffix = bits & ((1 << (len - 1)) - 1);
                level.push(bracket_unchecked(g, first, &nested[len - 1][suffix]));
            }
            nested[len] = level;
        }
        let mut out = vec![vec![0.0; n]; self.order + 1];
        for len in 1..=self.order {
            for &(bits, coef) in &self.terms[len] {
                for (o, v) in out[len].iter_mut().zip(&nested[len][bits]) {
                    *o += coef * v;
                }
            }
        }
        out.remove(0);
        out
    }
}

/// Truncated BCH series through the group's configured order (default 6),
/// without a domain check.
pub fn bch_series(g: &GroupSpec, x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector> {
    let order = match g.bch_strategy() {
        BchStrategy::Series { order, .. } => order,
        BchStrategy::ClosedForm => BchStrategy::DEFAULT_ORDER,
    };
    bch_series_order(g, x, y, order).map(|(z, _)| z)
}

/// Truncated BCH series of a given order together with the norm of its
/// highest-degree component, used as the truncation estimate.
pub fn bch_series_order(
    g: &GroupSpec,
    x: &AlgebraVector,
    y: &AlgebraVector,
    order: usize,
) -> Result<(AlgebraVector, f64)> {
    let n = g.dim();
    x.expect_dim(n)?;
    y.expect_dim(n)?;
    let owned;
    let series = match &g.series {
        Some(s) if s.order == order => s,
        _ => {
            owned = BchSeries::new(order);
            &owned
        }
    };
    let parts = series.components(g, x.coords(), y.coords());
    let mut z = vec![0.0; n];
    for part in &parts {
        for (zi, pi) in z.iter_mut().zip(part) {
            *zi += pi;
        }
    }
    let last = parts.last().map(|p| p.iter().map(|v| v * v).sum::<f64>().sqrt()).unwrap_or(0.0);
    Ok((z.into(), last))
}

/// SU(2) composition through unit quaternions; returns the principal log.
pub fn bch_closed_su2(x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector> {
    x.expect_dim(3)?;
    y.expect_dim(3)?;
    let (a, b) = (x.norm(), y.norm());
    let (sa, sb) = (sinc(a), sinc(b));
    let (ca, cb) = (a.cos(), b.cos());
    let u: [f64; 3] = core::array::from_fn(|i| sa * x[i]);
    let v: [f64; 3] = core::array::from_fn(|i| sb * y[i]);
    let scalar = ca * cb - (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]);
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let w: [f64; 3] = core::array::from_fn(|i| cb * u[i] + ca * v[i] - cross[i]);
    su2_log_from_quaternion(scalar, w)
}

/// Principal log of `s + w . (i sigma)`.
pub(crate) fn su2_log_from_quaternion(s: f64, w: [f64; 3]) -> Result<AlgebraVector> {
    let wn = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    if s < 0.0 && wn <= 1e-12 {
        return Err(Error::BoundaryConjugacy);
    }
    let r = wn.atan2(s);
    let scale = if wn > 0.0 { r / wn } else { 1.0 };
    Ok(w.iter().map(|c| c * scale).collect::<Vec<_>>().into())
}

/// `B(X, Y)` with `exp(B) = exp(X) exp(Y)`, reduced to the principal branch.
pub fn bch(g: &GroupSpec, x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector> {
    let z = bch_unreduced(g, x, y)?;
    Ok(match g.family() {
        GroupFamily::U1 | GroupFamily::Torus => {
            z.coords().iter().map(|&c| crate::special::wrap_angle(c)).collect::<Vec<_>>().into()
        }
        _ => z,
    })
}

/// BCH composition on the algebra itself: abelian sums are not wrapped.
pub fn bch_unreduced(g: &GroupSpec, x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector> {
    let n = g.dim();
    x.expect_dim(n)?;
    y.expect_dim(n)?;
    match g.bch_strategy() {
        BchStrategy::ClosedForm => match g.family() {
            GroupFamily::Su2 => bch_closed_su2(x, y),
            _ => Ok(x + y),
        },
        BchStrategy::Series { order, tolerance } => {
            if g.is_abelian() {
                return Ok(x + y);
            }
            let (z, estimate) = bch_series_order(g, x, y, order)?;
            if estimate > tolerance || !z.is_finite() {
                return Err(Error::SeriesOutOfDomain { estimate, tolerance });
            }
            Ok(z)
        }
    }
}

/// `det((1 - exp(-ad_X)) / ad_X)` by its power series in `ad_X`.
pub fn jacobian_determinant(g: &GroupSpec, x: &AlgebraVector) -> Result<f64> {
    let m = ad_matrix(g, x)?;
    let n = g.dim();
    let minus = m.scale(-1.0);
    let mut sum = RealMatrix::identity(n);
    let mut term = RealMatrix::identity(n);
    for k in 1..400 {
        // (-M)^k / (k+1)!
        term = term.matmul(&minus).scale(1.0 / (k + 1) as f64);
        sum.add_assign(&term);
        if term.max_abs() <= 1e-18 * sum.max_abs() {
            break;
        }
    }
    Ok(sum.determinant())
}

/// Catalog closed form of the Haar Jacobian.
pub fn jacobian_closed(g: &GroupSpec, x: &AlgebraVector) -> Result<f64> {
    x.expect_dim(g.dim())?;
    match g.family() {
        GroupFamily::U1 | GroupFamily::Torus => Ok(1.0),
        GroupFamily::Su2 => {
            let s = sinc(x.norm());
            Ok(s * s)
        }
        GroupFamily::Generic => jacobian_determinant(g, x),
    }
}

/// Haar Jacobian `J(X)` in the group's configured mode.
pub fn jacobian(g: &GroupSpec, x: &AlgebraVector) -> Result<f64> {
    match g.jacobian_strategy() {
        JacobianStrategy::ClosedForm => jacobian_closed(g, x),
        JacobianStrategy::Determinant => jacobian_determinant(g, x),
    }
}

/// `J^{1/2}(X)`. For SU(2) this is the analytic root `sin r / r`, which
/// turns negative on the shells `r in (pi, 2 pi) + 2 pi Z`.
pub fn jacobian_sqrt(g: &GroupSpec, x: &AlgebraVector) -> Result<f64> {
    match g.family() {
        GroupFamily::Su2 => {
            x.expect_dim(3)?;
            Ok(sinc(x.norm()))
        }
        _ => Ok(jacobian(g, x)?.max(0.0).sqrt()),
    }
}

/// Torus basis `a_i(X)` through `X` and the coordinate `kappa` with
/// `X = kappa a_1(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusFrame {
    pub basis: Vec<AlgebraVector>,
    pub kappa: f64,
}

const DEGENERACY_TOL: f64 = 1e-12;

pub fn torus_basis_at(g: &GroupSpec, x: &AlgebraVector) -> Result<TorusFrame> {
    x.expect_dim(g.dim())?;
    match g.family() {
        GroupFamily::U1 | GroupFamily::Torus => Ok(TorusFrame {
            basis: g.torus_generators(),
            kappa: x[0],
        }),
        GroupFamily::Su2 => {
            let r = x.norm();
            if r <= DEGENERACY_TOL || (r / PI - (r / PI).round()).abs() * PI <= DEGENERACY_TOL {
                return Err(Error::DegenerateElement);
            }
            Ok(TorusFrame { basis: vec![x.scale(1.0 / r)], kappa: r })
        }
        GroupFamily::Generic => {
            if g.is_abelian() && g.rank() == g.dim() {
                Ok(TorusFrame { basis: g.torus_generators(), kappa: x[0] })
            } else {
                Err(Error::UnsupportedGroup(g.name().into()))
            }
        }
    }
}

/// Integer ranges of branch indices, one per torus direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchWindow {
    ranges: Vec<RangeInclusive<i64>>,
}

impl BranchWindow {
    pub fn new(ranges: Vec<RangeInclusive<i64>>) -> Self {
        Self { ranges }
    }

    /// `{-n..=n}` in each of `rank` directions.
    pub fn symmetric(rank: usize, n: i64) -> Self {
        Self { ranges: vec![-n..=n; rank] }
    }

    pub fn ranges(&self) -> &[RangeInclusive<i64>] {
        &self.ranges
    }

    /// All index tuples, last direction varying fastest.
    pub fn indices(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = vec![Vec::new()];
        for range in &self.ranges {
            let mut next = Vec::new();
            for prefix in &out {
                for n in range.clone() {
                    let mut v = prefix.clone();
                    v.push(n);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// Index tuples on the outer shell of the window.
    pub fn boundary_indices(&self) -> Vec<Vec<i64>> {
        self.indices()
            .into_iter()
            .filter(|idx| {
                idx.iter()
                    .zip(&self.ranges)
                    .any(|(n, r)| n == r.start() || n == r.end())
            })
            .collect()
    }
}

/// `{X + 2 pi n^i a_i(X) | n in window}`.
pub fn logs_of(g: &GroupSpec, x: &AlgebraVector, window: &BranchWindow) -> Result<Vec<AlgebraVector>> {
    let frame = torus_basis_at(g, x)?;
    if window.ranges().len() != frame.basis.len() {
        return Err(Error::InvalidDimension { expected: frame.basis.len(), found: window.ranges().len() });
    }
    Ok(window
        .indices()
        .into_iter()
        .map(|idx| branch_point(x, &frame.basis, &idx))
        .collect())
}

pub(crate) fn branch_point(x: &AlgebraVector, basis: &[AlgebraVector], idx: &[i64]) -> AlgebraVector {
    let mut y = x.clone();
    for (a, &n) in basis.iter().zip(idx) {
        y = &y + &a.scale(2.0 * PI * n as f64);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupKind};

    fn v(c: &[f64]) -> AlgebraVector {
        AlgebraVector::new(c.to_vec())
    }

    #[test]
    fn su2_brackets_follow_minus_two_epsilon() {
        let g = make_group(GroupKind::Su2);
        let z = bracket(&g, &v(&[1.0, 0.0, 0.0]), &v(&[0.0, 1.0, 0.0])).unwrap();
        assert_eq!(z.coords(), &[0.0, 0.0, -2.0]);
        let zero = bracket(&g, &v(&[1.0, 0.0, 0.0]), &v(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!(zero.norm(), 0.0);
        let m = ad_matrix(&g, &v(&[0.0, 0.0, 1.0])).unwrap();
        assert_eq!(m.mul_vec(&[1.0, 0.0, 0.0]), vec![0.0, -2.0, 0.0]);
    }

    #[test]
    fn bracket_rejects_wrong_dimension() {
        let g = make_group(GroupKind::Su2);
        assert_eq!(
            bracket(&g, &v(&[1.0, 0.0]), &v(&[0.0, 1.0, 0.0])),
            Err(Error::InvalidDimension { expected: 3, found: 2 })
        );
    }

    #[test]
    fn invalid_structure_constants_are_rejected() {
        let mut def = make_group(GroupKind::Su2).definition().clone();
        def.structure_constants[0][1][2] = 1.0;
        assert!(matches!(GroupSpec::new(def), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn series_low_orders_match_textbook_coefficients() {
        let s = BchSeries::new(3);
        // degree 2: (XY - YX)/2 -> coefficients / 2 per word
        let deg2: Vec<_> = s.terms[2].clone();
        assert!(deg2.contains(&(0b01, 0.25)));
        assert!(deg2.contains(&(0b10, -0.25)));
        assert!(s.terms[1].contains(&(0, 1.0)) && s.terms[1].contains(&(1, 1.0)));
    }

    #[test]
    fn closed_bch_matches_first_orders_for_small_inputs() {
        let g = make_group(GroupKind::Su2);
        let x = v(&[1e-3, 2e-3, -1e-3]);
        let y = v(&[-2e-3, 1e-3, 3e-3]);
        let closed = bch_closed_su2(&x, &y).unwrap();
        let series = bch_series(&g, &x, &y).unwrap();
        assert!(closed.distance(&series) < 1e-16);
    }

    #[test]
    fn antipodal_composition_is_rejected() {
        let x = v(&[0.0, 0.0, PI / 2.0]);
        assert_eq!(bch_closed_su2(&x, &x), Err(Error::BoundaryConjugacy));
    }

    #[test]
    fn jacobian_at_quarter_turn() {
        let g = make_group(GroupKind::Su2);
        let x = v(&[0.0, PI / 2.0, 0.0]);
        let expected = 4.0 / (PI * PI);
        assert!((jacobian_determinant(&g, &x).unwrap() - expected).abs() < 1e-14);
        assert!((jacobian(&g, &x).unwrap() - expected).abs() < 1e-15);
        assert_eq!(jacobian(&g, &AlgebraVector::zeros(3)).unwrap(), 1.0);
        assert_eq!(jacobian_determinant(&g, &AlgebraVector::zeros(3)).unwrap(), 1.0);
    }

    #[test]
    fn branch_lattice_along_axis() {
        let g = make_group(GroupKind::Su2);
        let logs = logs_of(&g, &v(&[0.0, 0.0, 1.0]), &BranchWindow::symmetric(1, 1)).unwrap();
        let thirds: Vec<f64> = logs.iter().map(|l| l[2]).collect();
        assert_eq!(thirds, vec![1.0 - 2.0 * PI, 1.0, 1.0 + 2.0 * PI]);
        assert_eq!(torus_basis_at(&g, &AlgebraVector::zeros(3)), Err(Error::DegenerateElement));
        let u1 = make_group(GroupKind::U1);
        let f = torus_basis_at(&u1, &v(&[0.3])).unwrap();
        assert_eq!((f.basis[0].coords(), f.kappa), (&[1.0][..], 0.3));
        let single = logs_of(&u1, &v(&[0.5]), &BranchWindow::symmetric(1, 0)).unwrap();
        assert_eq!(single, vec![v(&[0.5])]);
    }
}
