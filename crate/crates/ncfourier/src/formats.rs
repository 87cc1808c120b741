//! JSON documents for groups, plane-wave sums and coefficient tables, and CSV
//! grids for sampled functions.

use std::io::{Read, Write};

use ncfourier_core::fourier::SampledPosition;
use ncfourier_core::lie::{BchStrategy, GroupDefinition, GroupFamily, GroupSpec, JacobianStrategy};
use ncfourier_core::starprod::{PlaneWaveSum, SampledMomentum, Scheme};
use ncfourier_core::{AlgebraVector, Complex64, MomentumVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] ncfourier_core::Error),
    #[error("malformed document: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexDoc {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<ComplexDoc> for Complex64 {
    fn from(c: ComplexDoc) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BchDoc {
    ClosedForm,
    Series { order: usize, tolerance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobianDoc {
    ClosedForm,
    Determinant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategiesDoc {
    pub bch: BchDoc,
    pub jacobian: JacobianDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub name: String,
    pub dim: usize,
    pub rank: usize,
    pub structure_constants: Vec<Vec<Vec<f64>>>,
    pub torus_generators: Vec<Vec<f64>>,
    pub strategies: StrategiesDoc,
}

/// Catalog family for a group name: `u1`, `su2`, `torus<r>`, anything else
/// generic.
fn family_of(name: &str) -> GroupFamily {
    match name {
        "u1" => GroupFamily::U1,
        "su2" => GroupFamily::Su2,
        n if n.strip_prefix("torus").is_some_and(|r| r.parse::<usize>().is_ok()) => GroupFamily::Torus,
        _ => GroupFamily::Generic,
    }
}

impl From<&GroupSpec> for GroupDoc {
    fn from(g: &GroupSpec) -> Self {
        let def = g.definition();
        Self {
            name: def.name.clone(),
            dim: def.dim,
            rank: def.rank,
            structure_constants: def.structure_constants.clone(),
            torus_generators: def.torus_generators.clone(),
            strategies: StrategiesDoc {
                bch: match def.bch {
                    BchStrategy::ClosedForm => BchDoc::ClosedForm,
                    BchStrategy::Series { order, tolerance } => BchDoc::Series { order, tolerance },
                },
                jacobian: match def.jacobian {
                    JacobianStrategy::ClosedForm => JacobianDoc::ClosedForm,
                    JacobianStrategy::Determinant => JacobianDoc::Determinant,
                },
            },
        }
    }
}

impl GroupDoc {
    pub fn into_group(self) -> Result<GroupSpec, FormatError> {
        let family = family_of(&self.name);
        let def = GroupDefinition {
            family,
            dim: self.dim,
            rank: self.rank,
            structure_constants: self.structure_constants,
            torus_generators: self.torus_generators,
            bch: match self.strategies.bch {
                BchDoc::ClosedForm => BchStrategy::ClosedForm,
                BchDoc::Series { order, tolerance } => BchStrategy::Series { order, tolerance },
            },
            jacobian: match self.strategies.jacobian {
                JacobianDoc::ClosedForm => JacobianStrategy::ClosedForm,
                JacobianDoc::Determinant => JacobianStrategy::Determinant,
            },
            principal_radius: (family != GroupFamily::Generic).then_some(std::f64::consts::PI),
            name: self.name,
        };
        Ok(GroupSpec::new(def)?)
    }
}

pub fn group_to_json(g: &GroupSpec) -> Result<String, FormatError> {
    Ok(serde_json::to_string_pretty(&GroupDoc::from(g))?)
}

pub fn group_from_json(src: &str) -> Result<GroupSpec, FormatError> {
    serde_json::from_str::<GroupDoc>(src)?.into_group()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeDoc {
    Symmetric,
    Duflo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveTermDoc {
    pub re: f64,
    pub im: f64,
    #[serde(rename = "X")]
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveDoc {
    pub scheme: SchemeDoc,
    pub terms: Vec<WaveTermDoc>,
}

pub fn planewaves_to_json(w: &PlaneWaveSum) -> Result<String, FormatError> {
    let doc = PlaneWaveDoc {
        scheme: match w.scheme() {
            Scheme::Symmetric => SchemeDoc::Symmetric,
            Scheme::Duflo => SchemeDoc::Duflo,
        },
        terms: w
            .terms()
            .iter()
            .map(|(c, x)| WaveTermDoc { re: c.re, im: c.im, x: x.coords().to_vec() })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Reads a sum over `group`; terms are merged as they are pushed.
pub fn planewaves_from_json(src: &str, group: &GroupSpec) -> Result<PlaneWaveSum, FormatError> {
    let doc: PlaneWaveDoc = serde_json::from_str(src)?;
    let scheme = match doc.scheme {
        SchemeDoc::Symmetric => Scheme::Symmetric,
        SchemeDoc::Duflo => Scheme::Duflo,
    };
    let mut w = PlaneWaveSum::new(group, scheme);
    for t in doc.terms {
        w.push(Complex64::new(t.re, t.im), AlgebraVector::new(t.x))?;
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientDoc {
    pub p: Vec<f64>,
    pub value: ComplexDoc,
}

pub fn coefficients_to_json(entries: &[(MomentumVector, Complex64)]) -> Result<String, FormatError> {
    let docs: Vec<CoefficientDoc> = entries
        .iter()
        .map(|(p, v)| CoefficientDoc { p: p.coords().to_vec(), value: (*v).into() })
        .collect();
    Ok(serde_json::to_string_pretty(&docs)?)
}

pub fn coefficients_from_json(src: &str) -> Result<Vec<(MomentumVector, Complex64)>, FormatError> {
    let docs: Vec<CoefficientDoc> = serde_json::from_str(src)?;
    Ok(docs.into_iter().map(|d| (MomentumVector::new(d.p), d.value.into())).collect())
}

/// Writes `coords..., re, im` rows in grid order (last axis fastest).
fn write_grid<W: Write>(
    out: W,
    names: &[String],
    points: impl Iterator<Item = Vec<f64>>,
    values: &[Complex64],
) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = names.to_vec();
    header.extend(["re".to_string(), "im".to_string()]);
    w.write_record(&header)?;
    for (coords, v) in points.zip(values) {
        let mut row: Vec<String> = coords.iter().map(|c| format!("{c:?}")).collect();
        row.push(format!("{:?}", v.re));
        row.push(format!("{:?}", v.im));
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| FormatError::Malformed(e.to_string()))?;
    Ok(())
}

/// Reads a grid back: axes are the distinct coordinate values in order of
/// appearance, and the rows must enumerate their full product.
fn read_grid<R: Read>(input: R) -> Result<(Vec<String>, Vec<Vec<f64>>, Vec<Complex64>), FormatError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header.len() < 3 || header[header.len() - 2] != "re" || header[header.len() - 1] != "im" {
        return Err(FormatError::Malformed("header must end with re,im".into()));
    }
    let d = header.len() - 2;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| f.trim().parse::<f64>().map_err(|e| FormatError::Malformed(format!("{f}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != d + 2 {
            return Err(FormatError::Malformed("ragged row".into()));
        }
        rows.push(row);
    }
    let mut axes: Vec<Vec<f64>> = vec![Vec::new(); d];
    for row in &rows {
        for (a, axis) in axes.iter_mut().enumerate() {
            if !axis.contains(&row[a]) {
                axis.push(row[a]);
            }
        }
    }
    let expected: usize = axes.iter().map(Vec::len).product();
    if expected != rows.len() {
        return Err(FormatError::Malformed(format!("{} rows for a {expected}-point grid", rows.len())));
    }
    // row i must sit at its row-major grid position
    let mut strides = vec![1usize; d];
    for a in (0..d.saturating_sub(1)).rev() {
        strides[a] = strides[a + 1] * axes[a + 1].len();
    }
    for (i, row) in rows.iter().enumerate() {
        for a in 0..d {
            if axes[a][(i / strides[a]) % axes[a].len()] != row[a] {
                return Err(FormatError::Malformed(format!("row {i} is out of grid order")));
            }
        }
    }
    let values = rows.iter().map(|row| Complex64::new(row[d], row[d + 1])).collect();
    Ok((header[..d].to_vec(), axes, values))
}

fn momentum_names(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("p{i}")).collect()
}

pub fn write_sampled_momentum<W: Write>(out: W, s: &SampledMomentum) -> Result<(), FormatError> {
    write_grid(out, &momentum_names(s.axes().len()), s.points().into_iter().map(MomentumVector::into_coords), s.values())
}

pub fn read_sampled_momentum<R: Read>(input: R) -> Result<SampledMomentum, FormatError> {
    let (_, axes, values) = read_grid(input)?;
    Ok(SampledMomentum::new(axes, values)?)
}

pub fn write_sampled_position<W: Write>(out: W, s: &SampledPosition) -> Result<(), FormatError> {
    let names: Vec<String> = if s.is_radial() {
        vec!["r".into()]
    } else {
        ["x", "y", "z"].iter().take(s.axes().len()).map(|n| n.to_string()).collect()
    };
    let axes = s.axes();
    let mut idx = vec![0usize; axes.len()];
    let total: usize = axes.iter().map(Vec::len).product();
    let points = (0..total).map(move |_| {
        let p: Vec<f64> = idx.iter().zip(axes).map(|(&i, a)| a[i]).collect();
        for a in (0..idx.len()).rev() {
            idx[a] += 1;
            if idx[a] < axes[a].len() {
                break;
            }
            idx[a] = 0;
        }
        p
    });
    write_grid(out, &names, points, s.values())
}

pub fn read_sampled_position<R: Read>(input: R) -> Result<SampledPosition, FormatError> {
    let (names, axes, values) = read_grid(input)?;
    let radial = names.len() == 1 && names[0] == "r";
    Ok(SampledPosition::new(axes, values, radial)?)
}

/// A plain table: header row then rows of cells.
pub fn write_table<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush().map_err(|e| FormatError::Malformed(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncfourier_core::groups::{make_group, GroupKind};

    #[test]
    fn catalog_groups_round_trip() {
        for kind in [GroupKind::U1, GroupKind::Su2, GroupKind::Torus(3)] {
            let g = make_group(kind);
            let back = group_from_json(&group_to_json(&g).unwrap()).unwrap();
            assert_eq!(back.definition(), g.definition());
        }
    }

    #[test]
    fn broken_structure_constants_are_refused() {
        let g = make_group(GroupKind::Su2);
        let mut doc = GroupDoc::from(&g);
        doc.structure_constants[0][1][2] = 1.0;
        assert!(matches!(doc.into_group(), Err(FormatError::Core(_))));
    }

    #[test]
    fn plane_waves_round_trip() {
        let g = make_group(GroupKind::Su2);
        let mut w = PlaneWaveSum::new(&g, Scheme::Duflo);
        w.push(Complex64::new(1.0, -0.5), AlgebraVector::new(vec![0.1, 0.2, 0.3])).unwrap();
        w.push(Complex64::new(0.25, 2.0), AlgebraVector::new(vec![-1.0, 0.0, 0.5])).unwrap();
        let text = planewaves_to_json(&w).unwrap();
        assert!(text.contains("\"X\""));
        let back = planewaves_from_json(&text, &g).unwrap();
        assert_eq!(back.terms(), w.terms());
        assert_eq!(back.scheme(), Scheme::Duflo);
    }

    #[test]
    fn grid_round_trip_and_order_check() {
        let axes = vec![vec![-1.0, 0.0, 1.0], vec![0.0, 0.5]];
        let s = SampledMomentum::from_fn(axes, |p| Complex64::new(p[0], p[1])).unwrap();
        let mut buf = Vec::new();
        write_sampled_momentum(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("p1,p2,re,im\n"));
        let back = read_sampled_momentum(buf.as_slice()).unwrap();
        assert_eq!(back.values(), s.values());
        assert_eq!(back.axes(), s.axes());
        let shuffled = "p1,p2,re,im\n0,0,0,0\n-1,0,0,0\n-1,0.5,0,0\n0,0.5,0,0\n";
        assert!(read_sampled_momentum(shuffled.as_bytes()).is_err());
    }
}
