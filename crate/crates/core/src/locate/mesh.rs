//! Cartesian sampling meshes and scalar fields on them.

use std::io::{BufRead, Write};

use crate::{Error, Result, Vec3};

const DIM_EPS: f64 = 1e-9;

/// Uniform tensor mesh `lower + h·(i, j, k)` covering a box.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingMesh {
    lower: Vec3,
    upper: Vec3,
    h: f64,
    dims: [usize; 3],
}

impl SamplingMesh {
    /// Node count per axis is `floor((upper − lower)/h) + 1`.
    pub fn new(lower: Vec3, upper: Vec3, h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::invalid(format!(
                "mesh spacing must be positive, got {h}"
            )));
        }
        if !(0..3).all(|d| upper[d] > lower[d] && lower[d].is_finite() && upper[d].is_finite()) {
            return Err(Error::invalid(
                "mesh upper corner must exceed the lower corner on every axis",
            ));
        }
        let mut dims = [0; 3];
        for (d, n) in dims.iter_mut().enumerate() {
            *n = ((upper[d] - lower[d]) / h + DIM_EPS).floor() as usize + 1;
        }
        Ok(SamplingMesh {
            lower,
            upper,
            h,
            dims,
        })
    }

    /// `[-2λ, 2λ]³` with spacing `0.05λ` for unit wavelength.
    pub fn standard() -> Self {
        SamplingMesh::new(Vec3::repeat(-2.0), Vec3::repeat(2.0), 0.05).expect("valid")
    }

    /// Cube of half-width `half_width` around `center`.
    pub fn centered(center: &Vec3, half_width: f64, h: f64) -> Result<Self> {
        let r = Vec3::repeat(half_width);
        SamplingMesh::new(center - r, center + r, h)
    }

    pub fn lower(&self) -> &Vec3 {
        &self.lower
    }

    pub fn upper(&self) -> &Vec3 {
        &self.upper
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates along axis `d`.
    pub fn axis(&self, d: usize) -> Vec<f64> {
        (0..self.dims[d])
            .map(|i| self.lower[d] + self.h * i as f64)
            .collect()
    }

    /// Linear index with x varying fastest.
    pub fn index(&self, ijk: [usize; 3]) -> usize {
        ijk[0] + self.dims[0] * (ijk[1] + self.dims[1] * ijk[2])
    }

    pub fn ijk(&self, index: usize) -> [usize; 3] {
        let nx = self.dims[0];
        let ny = self.dims[1];
        [index % nx, (index / nx) % ny, index / (nx * ny)]
    }

    pub fn point(&self, index: usize) -> Vec3 {
        let [i, j, k] = self.ijk(index);
        Vec3::new(
            self.lower[0] + self.h * i as f64,
            self.lower[1] + self.h * j as f64,
            self.lower[2] + self.h * k as f64,
        )
    }

    /// Node closest to `p`, clamped to the mesh.
    pub fn nearest(&self, p: &Vec3) -> usize {
        let mut ijk = [0; 3];
        for d in 0..3 {
            let t = ((p[d] - self.lower[d]) / self.h).round();
            ijk[d] = t.clamp(0.0, (self.dims[d] - 1) as f64) as usize;
        }
        self.index(ijk)
    }

    /// Linear indices of the (up to 26) neighbours of a node.
    pub fn neighbors(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let [i, j, k] = self.ijk(index);
        let dims = self.dims;
        (-1i64..=1)
            .flat_map(|dk| (-1i64..=1).flat_map(move |dj| (-1i64..=1).map(move |di| [di, dj, dk])))
            .filter(|d| *d != [0, 0, 0])
            .filter_map(move |[di, dj, dk]| {
                let ni = i as i64 + di;
                let nj = j as i64 + dj;
                let nk = k as i64 + dk;
                let inside = ni >= 0
                    && nj >= 0
                    && nk >= 0
                    && (ni as usize) < dims[0]
                    && (nj as usize) < dims[1]
                    && (nk as usize) < dims[2];
                inside.then(|| ni as usize + dims[0] * (nj as usize + dims[1] * nk as usize))
            })
    }

    /// Same node layout (dimensions, origin and spacing agree to `1e-12`).
    pub fn compatible(&self, other: &SamplingMesh) -> bool {
        self.dims == other.dims
            && (self.h - other.h).abs() <= 1e-12 * self.h
            && (self.lower - other.lower).amax() <= 1e-12 * (1.0 + self.lower.amax())
    }
}

/// Scalar values on the nodes of a [`SamplingMesh`].
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorField {
    mesh: SamplingMesh,
    values: Vec<f64>,
    normalized: bool,
}

impl IndicatorField {
    pub fn new(mesh: SamplingMesh, values: Vec<f64>) -> Result<Self> {
        if values.len() != mesh.len() {
            return Err(Error::invalid(format!(
                "{} values for a mesh with {} nodes",
                values.len(),
                mesh.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("indicator values must be finite"));
        }
        Ok(IndicatorField {
            mesh,
            values,
            normalized: false,
        })
    }

    pub fn mesh(&self) -> &SamplingMesh {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// First node attaining the maximum.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        best
    }

    pub fn value_at(&self, p: &Vec3) -> f64 {
        self.values[self.mesh.nearest(p)]
    }

    /// Divides by the maximum so that values lie in `[0, 1]`. A field that is
    /// identically zero is returned unchanged (but flagged normalized).
    pub fn normalized(&self) -> IndicatorField {
        let m = self.max();
        let values = if m > 0.0 {
            self.values.iter().map(|v| (v / m).max(0.0)).collect()
        } else {
            self.values.clone()
        };
        IndicatorField {
            mesh: self.mesh.clone(),
            values,
            normalized: true,
        }
    }

    /// `|I(z) − 1|` at every node.
    pub fn deviation_from_one(&self) -> IndicatorField {
        IndicatorField {
            mesh: self.mesh.clone(),
            values: self.values.iter().map(|v| (v - 1.0).abs()).collect(),
            normalized: false,
        }
    }

    /// Legacy VTK structured-points file with one scalar array.
    pub fn write_vtk<W: Write>(&self, mut out: W, name: &str) -> Result<()> {
        let [nx, ny, nz] = self.mesh.dims;
        let o = self.mesh.lower;
        let h = self.mesh.h;
        writeln!(out, "# vtk DataFile Version 3.0")?;
        writeln!(out, "{name}")?;
        writeln!(out, "ASCII")?;
        writeln!(out, "DATASET STRUCTURED_POINTS")?;
        writeln!(out, "DIMENSIONS {nx} {ny} {nz}")?;
        writeln!(out, "ORIGIN {:e} {:e} {:e}", o[0], o[1], o[2])?;
        writeln!(out, "SPACING {h:e} {h:e} {h:e}")?;
        writeln!(out, "POINT_DATA {}", self.values.len())?;
        writeln!(out, "SCALARS {name} double 1")?;
        writeln!(out, "LOOKUP_TABLE default")?;
        for v in &self.values {
            writeln!(out, "{v:e}")?;
        }
        Ok(())
    }

    /// CSV with header `x,y,z,value`, nodes in x-fastest order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "x,y,z,value")?;
        for (i, v) in self.values.iter().enumerate() {
            let p = self.mesh.point(i);
            writeln!(out, "{:e},{:e},{:e},{v:e}", p[0], p[1], p[2])?;
        }
        Ok(())
    }

    /// Reads a file produced by [`IndicatorField::write_csv`]; the mesh is recovered from
    /// the node coordinates.
    pub fn read_csv<R: BufRead>(input: R) -> Result<IndicatorField> {
        let mut pts = Vec::new();
        let mut vals = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || (i == 0 && t.starts_with('x')) {
                continue;
            }
            let cols = t
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
            if cols.len() != 4 {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected 4 columns, found {}", cols.len()),
                });
            }
            pts.push(Vec3::new(cols[0], cols[1], cols[2]));
            vals.push(cols[3]);
        }
        if pts.len() < 2 {
            return Err(Error::invalid("indicator CSV needs at least two nodes"));
        }
        let lower = pts[0];
        let upper = pts[pts.len() - 1];
        let h = (0..3)
            .map(|d| (pts[1] - pts[0])[d].abs())
            .find(|s| *s > 0.0)
            .ok_or_else(|| Error::invalid("cannot infer mesh spacing"))?;
        let h = if pts[1][0] > pts[0][0] {
            h
        } else {
            return Err(Error::invalid(
                "indicator CSV must list nodes with x varying fastest",
            ));
        };
        let mesh = SamplingMesh::new(lower, upper, h)?;
        if mesh.len() != vals.len() {
            return Err(Error::invalid(format!(
                "CSV has {} rows but the inferred mesh has {} nodes",
                vals.len(),
                mesh.len()
            )));
        }
        for (i, p) in pts.iter().enumerate() {
            if (mesh.point(i) - p).amax() > 1e-6 * h {
                return Err(Error::Parse {
                    line: i + 2,
                    msg: "node is not on the inferred mesh".into(),
                });
            }
        }
        IndicatorField::new(mesh, vals)
    }

    pub(crate) fn from_parts(mesh: SamplingMesh, values: Vec<f64>, normalized: bool) -> Self {
        IndicatorField {
            mesh,
            values,
            normalized,
        }
    }
}

/// Node-wise maximum of several indicator fields on the same mesh.
pub fn composite_indicator(fields: &[IndicatorField]) -> Result<IndicatorField> {
    let first = fields
        .first()
        .ok_or_else(|| Error::invalid("composite of an empty list"))?;
    let mut values = first.values.clone();
    for f in &fields[1..] {
        if !f.mesh.compatible(&first.mesh) {
            return Err(Error::MeshMismatch);
        }
        for (v, &w) in values.iter_mut().zip(&f.values) {
            *v = v.max(w);
        }
    }
    let normalized = fields.iter().all(|f| f.normalized);
    Ok(IndicatorField::from_parts(
        first.mesh.clone(),
        values,
        normalized,
    ))
}
