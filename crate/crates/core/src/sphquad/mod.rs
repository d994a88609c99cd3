//! Lebedev quadrature on the unit sphere and tangential fields sampled on it.
//!
//! Far-field patterns are represented as [`TangentField`]s: one complex 3-vector per
//! quadrature node. The `T²(S²)` inner product `∫ u·v̄ ds` is evaluated by the quadrature,
//! so every indicator in the crate inherits the exactness degree of the grid.

mod tables;

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::sync::Arc;

use num_complex::Complex64;

use crate::{CVec3, Error, Result, Vec3};

/// Lebedev rule size used for measurements unless stated otherwise.
pub const DEFAULT_LEBEDEV_POINTS: usize = 590;

/// Symmetry orbit of the octahedral group, the building block of a Lebedev rule.
/// Weights are normalized to a unit total.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Orbit {
    A1(f64),
    A2(f64),
    A3(f64),
    B { l: f64, m: f64, w: f64 },
    C { p: f64, q: f64, w: f64 },
    D { r: f64, s: f64, t: f64, w: f64 },
}

impl Orbit {
    fn generator(&self) -> ([f64; 3], f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = 1.0 / 3f64.sqrt();
        match *self {
            Orbit::A1(w) => ([1.0, 0.0, 0.0], w),
            Orbit::A2(w) => ([h, h, 0.0], w),
            Orbit::A3(w) => ([c, c, c], w),
            Orbit::B { l, m, w } => ([l, l, m], w),
            Orbit::C { p, q, w } => ([p, q, 0.0], w),
            Orbit::D { r, s, t, w } => ([r, s, t], w),
        }
    }

    /// All distinct images of the generator under coordinate permutations and sign flips.
    fn expand(&self, out: &mut Vec<(Vec3, f64)>) {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let (g, w) = self.generator();
        let start = out.len();
        for perm in PERMS {
            for signs in 0..8u8 {
                let mut v = [0.0; 3];
                for (axis, &src) in perm.iter().enumerate() {
                    let s = if signs & (1 << axis) != 0 { -1.0 } else { 1.0 };
                    v[axis] = s * g[src];
                }
                let v = Vec3::from(v);
                if !out[start..].iter().any(|(u, _)| *u == v) {
                    out.push((v, w));
                }
            }
        }
    }
}

/// Quadrature nodes and weights on the unit sphere.
///
/// Weights sum to `4π`, so `Σ w_k f(θ_k)` approximates `∫_{S²} f ds` directly.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    nodes: Vec<Vec3>,
    weights: Vec<f64>,
    degree: u32,
}

impl SphereGrid {
    /// Rule sizes with embedded tables.
    pub fn supported_sizes() -> Vec<usize> {
        tables::RULES.iter().map(|(n, _, _)| *n).collect()
    }

    /// Builds the Lebedev rule with `n_points` nodes.
    pub fn lebedev(n_points: usize) -> Result<Self> {
        let (_, degree, orbits) = tables::RULES
            .iter()
            .find(|(n, _, _)| *n == n_points)
            .ok_or_else(|| Error::UnsupportedRule {
                requested: n_points,
                supported: Self::supported_sizes(),
            })?;

        let mut pts = Vec::with_capacity(n_points);
        for orbit in orbits.iter() {
            orbit.expand(&mut pts);
        }
        debug_assert_eq!(pts.len(), n_points);

        let four_pi = 4.0 * std::f64::consts::PI;
        let (nodes, weights) = pts
            .into_iter()
            .map(|(v, w)| (v.normalize(), four_pi * w))
            .unzip();
        Ok(SphereGrid {
            nodes,
            weights,
            degree: *degree,
        })
    }

    pub fn nodes(&self) -> &[Vec3] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Highest polynomial degree integrated exactly.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Quadrature of a scalar function.
    pub fn integrate<F: Fn(&Vec3) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, &w)| f(x) * w)
            .sum()
    }
}

/// Shared handle to the Lebedev grid with `n_points` nodes.
pub fn build_lebedev(n_points: usize) -> Result<Arc<SphereGrid>> {
    SphereGrid::lebedev(n_points).map(Arc::new)
}

fn same_grid(a: &Arc<SphereGrid>, b: &Arc<SphereGrid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Complex vector field sampled at the nodes of a [`SphereGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct TangentField {
    grid: Arc<SphereGrid>,
    values: Vec<CVec3>,
}

impl TangentField {
    pub fn new(grid: Arc<SphereGrid>, values: Vec<CVec3>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "field has {} values but the grid has {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(TangentField { grid, values })
    }

    pub fn zeros(grid: Arc<SphereGrid>) -> Self {
        let values = vec![CVec3::zeros(); grid.len()];
        TangentField { grid, values }
    }

    /// Samples `f` at every node.
    pub fn from_fn<F: FnMut(&Vec3) -> CVec3>(grid: Arc<SphereGrid>, mut f: F) -> Self {
        let values = grid.nodes().iter().map(&mut f).collect();
        TangentField { grid, values }
    }

    pub fn grid(&self) -> &Arc<SphereGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[CVec3] {
        &self.values
    }

    pub fn into_values(self) -> Vec<CVec3> {
        self.values
    }

    pub fn same_grid(&self, other: &TangentField) -> bool {
        same_grid(&self.grid, &other.grid)
    }

    pub fn scale(&self, c: Complex64) -> TangentField {
        self.map(|_, v| v * c)
    }

    /// Applies `f(θ_k, v_k)` node by node.
    pub fn map<F: Fn(&Vec3, &CVec3) -> CVec3>(&self, f: F) -> TangentField {
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(&self.values)
            .map(|(x, v)| f(x, v))
            .collect();
        TangentField {
            grid: self.grid.clone(),
            values,
        }
    }

    /// Multiplies the value at node `k` by `factors[k]`.
    pub fn modulate(&self, factors: &[Complex64]) -> Result<TangentField> {
        if factors.len() != self.values.len() {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(factors)
            .map(|(v, &f)| v * f)
            .collect();
        Ok(TangentField {
            grid: self.grid.clone(),
            values,
        })
    }

    pub fn add(&self, other: &TangentField) -> Result<TangentField> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TangentField) -> Result<TangentField> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with<F: Fn(&CVec3, &CVec3) -> CVec3>(
        &self,
        other: &TangentField,
        f: F,
    ) -> Result<TangentField> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(TangentField {
            grid: self.grid.clone(),
            values,
        })
    }

    /// `max_k |v(θ_k)|` with the Euclidean norm of the complex vector.
    pub fn max_magnitude(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest `|θ·v(θ)|` over the nodes.
    pub fn normal_residual(&self) -> f64 {
        self.grid
            .nodes()
            .iter()
            .zip(&self.values)
            .map(|(x, v)| radial(x, v).norm())
            .fold(0.0, f64::max)
    }

    /// Checks `|θ·v| ≤ tol · max|v|` at every node.
    pub fn is_tangential(&self, tol: f64) -> bool {
        self.normal_residual() <= tol * self.max_magnitude()
    }

    pub fn inner(&self, other: &TangentField) -> Result<Complex64> {
        t2_inner(self, other)
    }

    pub fn norm(&self) -> f64 {
        t2_norm(self)
    }

    /// Writes one row per node: `θ_x θ_y θ_z Re(v_x) Im(v_x) Re(v_y) Im(v_y) Re(v_z) Im(v_z)`.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        let mut line = String::with_capacity(256);
        for (x, v) in self.grid.nodes().iter().zip(&self.values) {
            line.clear();
            for c in x.iter() {
                write!(line, "{c:.16e} ").unwrap();
            }
            for (i, c) in v.iter().enumerate() {
                let sep = if i == 2 { "" } else { " " };
                write!(line, "{:.16e} {:.16e}{sep}", c.re, c.im).unwrap();
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    /// Reads a field written by [`TangentField::write_text`] onto a known grid.
    ///
    /// Node coordinates in the file must agree with the grid to `1e-12`.
    pub fn read_text<R: BufRead>(input: R, grid: Arc<SphereGrid>) -> Result<TangentField> {
        let rows = parse_rows(input)?;
        if rows.len() != grid.len() {
            return Err(Error::invalid(format!(
                "file has {} rows but the grid has {} nodes",
                rows.len(),
                grid.len()
            )));
        }
        let mut values = Vec::with_capacity(rows.len());
        for (k, (node, v)) in rows.into_iter().enumerate() {
            if (node - grid.nodes()[k]).amax() > 1e-12 {
                return Err(Error::Parse {
                    line: k + 1,
                    msg: "node does not match the quadrature grid".into(),
                });
            }
            values.push(v);
        }
        TangentField::new(grid, values)
    }

    /// Reads a field and rebuilds the Lebedev grid from the row count.
    pub fn read_text_lebedev<R: BufRead>(input: R) -> Result<TangentField> {
        let rows = parse_rows(input)?;
        let grid = build_lebedev(rows.len())?;
        let mut values = Vec::with_capacity(rows.len());
        for (k, (node, v)) in rows.into_iter().enumerate() {
            if (node - grid.nodes()[k]).amax() > 1e-12 {
                return Err(Error::Parse {
                    line: k + 1,
                    msg: "node does not match the Lebedev grid".into(),
                });
            }
            values.push(v);
        }
        TangentField::new(grid, values)
    }
}

fn radial(x: &Vec3, v: &CVec3) -> Complex64 {
    v[0] * x[0] + v[1] * x[1] + v[2] * x[2]
}

fn parse_rows<R: BufRead>(input: R) -> Result<Vec<(Vec3, CVec3)>> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let nums = trimmed
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
        if nums.len() != 9 {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected 9 columns, found {}", nums.len()),
            });
        }
        let node = Vec3::new(nums[0], nums[1], nums[2]);
        let v = CVec3::new(
            Complex64::new(nums[3], nums[4]),
            Complex64::new(nums[5], nums[6]),
            Complex64::new(nums[7], nums[8]),
        );
        rows.push((node, v));
    }
    Ok(rows)
}

/// `⟨u, v⟩ = Σ_k w_k u(θ_k)·conj(v(θ_k))`.
pub fn t2_inner(u: &TangentField, v: &TangentField) -> Result<Complex64> {
    if !u.same_grid(v) {
        return Err(Error::GridMismatch);
    }
    Ok(u.values
        .iter()
        .zip(&v.values)
        .zip(u.grid.weights())
        .map(|((a, b), &w)| a.dotc(b).conj() * w)
        .sum())
}

/// `sqrt(⟨u, u⟩)`.
pub fn t2_norm(u: &TangentField) -> f64 {
    u.values
        .iter()
        .zip(u.grid.weights())
        .map(|(a, &w)| a.norm_squared() * w)
        .sum::<f64>()
        .sqrt()
}
