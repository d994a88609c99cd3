//! Indicator functions evaluated over a sampling mesh.
//!
//! Both indicators reduce to sums `S(z) = Σ_k g_k e^{iω θ_k·z}` with node weights `g_k`
//! that do not depend on `z`. On a tensor mesh the plane wave factors per axis, so we
//! tabulate `e^{iω θ_k,x x_i}` etc. once and the per-node work is a dot product over the
//! quadrature nodes.

use num_complex::Complex64;
use rayon::prelude::*;

use super::library::ReferenceEntry;
use super::mesh::{IndicatorField, SamplingMesh};
use crate::forward::IncidentWave;
use crate::sphquad::{t2_inner, TangentField};
use crate::vsh::first_order_basis;
use crate::{Error, Result};

/// Phase table for one axis, `K` entries per coordinate, split into re/im.
struct AxisTable {
    re: Vec<f64>,
    im: Vec<f64>,
    k: usize,
}

impl AxisTable {
    fn new(coords: &[f64], dirs: &[f64], omega: f64) -> Self {
        let k = dirs.len();
        let mut re = Vec::with_capacity(coords.len() * k);
        let mut im = Vec::with_capacity(coords.len() * k);
        for &x in coords {
            for &d in dirs {
                let (s, c) = (omega * d * x).sin_cos();
                re.push(c);
                im.push(s);
            }
        }
        AxisTable { re, im, k }
    }

    fn row(&self, i: usize) -> (&[f64], &[f64]) {
        let r = i * self.k..(i + 1) * self.k;
        (&self.re[r.clone()], &self.im[r])
    }
}

/// `Σ (ar + i ai)(br + i bi)` with four independent accumulators per part.
fn cdot(ar: &[f64], ai: &[f64], br: &[f64], bi: &[f64]) -> Complex64 {
    let mut sr = [0.0f64; 4];
    let mut si = [0.0f64; 4];
    let n = ar.len() / 4 * 4;
    for c in (0..n).step_by(4) {
        for l in 0..4 {
            let (a, b, c2, d) = (ar[c + l], ai[c + l], br[c + l], bi[c + l]);
            sr[l] += a * c2 - b * d;
            si[l] += a * d + b * c2;
        }
    }
    let mut re = (sr[0] + sr[1]) + (sr[2] + sr[3]);
    let mut im = (si[0] + si[1]) + (si[2] + si[3]);
    for c in n..ar.len() {
        re += ar[c] * br[c] - ai[c] * bi[c];
        im += ar[c] * bi[c] + ai[c] * br[c];
    }
    Complex64::new(re, im)
}

/// Evaluates `reduce(S_1(z), …, S_J(z))` at every mesh node, where
/// `S_j(z) = Σ_k g[j][k] e^{iω θ_k·z}`.
pub(crate) fn sweep<F>(
    mesh: &SamplingMesh,
    dirs: &[crate::Vec3],
    omega: f64,
    g: &[Vec<Complex64>],
    reduce: F,
) -> Vec<f64>
where
    F: Fn(&[Complex64]) -> f64 + Sync,
{
    let k = dirs.len();
    let tables: Vec<AxisTable> = (0..3)
        .map(|d| {
            let comp: Vec<f64> = dirs.iter().map(|t| t[d]).collect();
            AxisTable::new(&mesh.axis(d), &comp, omega)
        })
        .collect();
    let [nx, ny, nz] = mesh.dims();
    let nj = g.len();

    let planes: Vec<Vec<f64>> = (0..nz)
        .into_par_iter()
        .map(|iz| {
            let mut out = Vec::with_capacity(nx * ny);
            let mut hr = vec![0.0; nj * k];
            let mut hi = vec![0.0; nj * k];
            let mut s = vec![Complex64::new(0.0, 0.0); nj];
            let (zr, zi) = tables[2].row(iz);
            for iy in 0..ny {
                let (yr, yi) = tables[1].row(iy);
                for (j, gj) in g.iter().enumerate() {
                    for q in 0..k {
                        let pr = yr[q] * zr[q] - yi[q] * zi[q];
                        let pi = yr[q] * zi[q] + yi[q] * zr[q];
                        let c = gj[q];
                        hr[j * k + q] = c.re * pr - c.im * pi;
                        hi[j * k + q] = c.re * pi + c.im * pr;
                    }
                }
                for ix in 0..nx {
                    let (xr, xi) = tables[0].row(ix);
                    for (j, sj) in s.iter_mut().enumerate() {
                        let r = j * k..(j + 1) * k;
                        *sj = cdot(&hr[r.clone()], &hi[r], xr, xi);
                    }
                    out.push(reduce(&s));
                }
            }
            out
        })
        .collect();
    planes.concat()
}

/// Pointwise products `w_k A(θ_k)·conj(B(θ_k))`.
fn node_weights(a: &TangentField, b: &TangentField) -> Vec<Complex64> {
    let w = a.grid().weights();
    a.values()
        .iter()
        .zip(b.values())
        .zip(w)
        .map(|((x, y), &wk)| x.dotc(y).conj() * wk)
        .collect()
}

/// Small-scatterer indicator: the squared norm of the first-order content of the data
/// after translation to `z`, relative to the total energy.
pub fn indicator_s(
    field: &TangentField,
    wave: &IncidentWave,
    mesh: &SamplingMesh,
) -> Result<IndicatorField> {
    let norm2 = field.norm().powi(2);
    if !(norm2 > 0.0) {
        return Err(Error::ZeroField("far-field pattern"));
    }
    let basis = first_order_basis(field.grid());
    let g: Vec<Vec<Complex64>> = basis.iter().map(|b| node_weights(field, b)).collect();
    let values = sweep(mesh, field.grid().nodes(), wave.omega(), &g, |s| {
        s.iter().map(|c| c.norm_sqr()).sum::<f64>() / norm2
    });
    IndicatorField::new(mesh.clone(), values)
}

/// Reference-matched indicator `|⟨A, A_ref translated to z⟩| / ‖A_ref‖²`, equal to one
/// at the center of a component that matches the reference exactly.
pub fn indicator_r(
    field: &TangentField,
    reference: &ReferenceEntry,
    wave: &IncidentWave,
    mesh: &SamplingMesh,
) -> Result<IndicatorField> {
    if !field.same_grid(reference.field()) {
        return Err(Error::GridMismatch);
    }
    let norm2 = reference.norm().powi(2);
    if !(norm2 > 0.0) {
        return Err(Error::ZeroField("reference pattern"));
    }
    let g = vec![node_weights(field, reference.field())];
    let values = sweep(mesh, field.grid().nodes(), wave.omega(), &g, |s| {
        s[0].norm() / norm2
    });
    IndicatorField::new(mesh.clone(), values)
}

/// Share of the total energy carried by each component, `Re⟨A, A_j⟩ / ‖A‖²`.
/// Sums to one whenever the total is the sum of the parts.
pub fn k_values(total: &TangentField, parts: &[TangentField]) -> Result<Vec<f64>> {
    let norm2 = total.norm().powi(2);
    if !(norm2 > 0.0) {
        return Err(Error::ZeroField("far-field pattern"));
    }
    parts
        .iter()
        .map(|p| Ok(t2_inner(total, p)?.re / norm2))
        .collect()
}
