//! Mie series for a homogeneous or perfectly conducting sphere centred at the origin.
//!
//! Coefficients follow the Bohren–Huffman form with `e^{-iωt}` time dependence. With the
//! far field defined through `E⁺(x) ~ e^{iω|x|}/|x| · A(x/|x|)`, a sphere illuminated by
//! `p e^{iω x·θ'}` has
//!
//! ```text
//! A(θ) = |p| (i/ω) [cos φ S₂(cos Θ) ê_Θ − sin φ S₁(cos Θ) ê_φ]
//! ```
//!
//! in the frame `ê_z = θ'`, `ê_x = p/|p|`.

use std::sync::Arc;

use num_complex::Complex64;

use super::{IncidentWave, Material};
use crate::sphquad::{SphereGrid, TangentField};
use crate::{CVec3, Error, Result, Vec3};

/// Truncation controls for the series.
#[derive(Debug, Clone, Copy)]
pub struct MieOptions {
    /// Stop once a term's relative contribution `(2n+1)(|a_n|+|b_n|) / Σ` falls below this.
    pub tol: f64,
    /// Hard ceiling on the number of terms.
    pub max_terms: usize,
}

impl Default for MieOptions {
    fn default() -> Self {
        MieOptions {
            tol: 1e-17,
            max_terms: 400,
        }
    }
}

/// Truncated Mie coefficients `a_n, b_n`, `n = 1..=N`.
#[derive(Debug, Clone)]
pub struct MieSeries {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    wavenumber: f64,
}

/// Wiscombe's estimate of the number of significant terms.
pub fn wiscombe_terms(x: f64) -> usize {
    (x + 4.05 * x.cbrt() + 2.0).ceil() as usize
}

/// `ψ_n(x) = x j_n(x)` for `n = 0..=n_max` by normalized downward recurrence.
fn riccati_psi(x: f64, n_max: usize) -> Vec<f64> {
    let start = n_max + 30 + x.ceil() as usize;
    let mut j = vec![0.0; start + 2];
    j[start] = 1.0;
    for n in (1..=start).rev() {
        j[n - 1] = (2.0 * n as f64 + 1.0) / x * j[n] - j[n + 1];
        if j[n - 1].abs() > 1e100 {
            for v in j[n - 1..].iter_mut() {
                *v *= 1e-100;
            }
        }
    }
    // Σ (2n+1) j_n² = 1 fixes the magnitude; the sign comes from j_0 or j_1
    let sum: f64 = j
        .iter()
        .enumerate()
        .map(|(n, v)| (2.0 * n as f64 + 1.0) * v * v)
        .sum();
    let mut scale = 1.0 / sum.sqrt();
    let (j0, j1) = if x < 1e-3 {
        (1.0 - x * x / 6.0, x / 3.0)
    } else {
        (x.sin() / x, x.sin() / (x * x) - x.cos() / x)
    };
    let agree = if j0.abs() >= j1.abs() {
        j0 * j[0]
    } else {
        j1 * j[1]
    };
    if agree < 0.0 {
        scale = -scale;
    }
    j.truncate(n_max + 1);
    j.into_iter().map(|v| v * scale * x).collect()
}

/// `χ_n(x) = -x y_n(x)` for `n = 0..=n_max` by upward recurrence.
fn riccati_chi(x: f64, n_max: usize) -> Vec<f64> {
    let mut chi = Vec::with_capacity(n_max + 1);
    let mut prev = -x.sin();
    let mut cur = x.cos();
    chi.push(cur);
    for n in 1..=n_max {
        let next = (2.0 * n as f64 - 1.0) / x * cur - prev;
        prev = cur;
        cur = next;
        chi.push(cur);
    }
    chi
}

/// Logarithmic derivative `D_n(z) = ψ_n'(z)/ψ_n(z)` for `n = 0..=n_max`.
fn log_derivative(z: Complex64, n_max: usize) -> Vec<Complex64> {
    let start = n_max + 15 + z.norm().ceil() as usize;
    let mut d = vec![Complex64::new(0.0, 0.0); start + 1];
    for n in (1..=start).rev() {
        let q = Complex64::new(n as f64, 0.0) / z;
        d[n - 1] = q - 1.0 / (d[n] + q);
    }
    d.truncate(n_max + 1);
    d
}

impl MieSeries {
    /// Computes the coefficients for a sphere of `radius` at angular frequency `omega`.
    pub fn new(radius: f64, material: &Material, omega: f64, opts: MieOptions) -> Result<Self> {
        if !(radius > 0.0) || !(omega > 0.0) {
            return Err(Error::invalid("Mie series needs radius > 0 and omega > 0"));
        }
        material.validate()?;
        let x = omega * radius;
        let mut n_try = (wiscombe_terms(x) + 15).min(opts.max_terms);
        loop {
            let (a, b, converged_at, last) =
                Self::coefficients(x, material, omega, n_try, opts.tol)?;
            if let Some(n) = converged_at {
                let mut a = a;
                let mut b = b;
                a.truncate(n);
                b.truncate(n);
                return Ok(MieSeries {
                    a,
                    b,
                    wavenumber: omega,
                });
            }
            if n_try >= opts.max_terms {
                return Err(Error::MieNotConverged {
                    terms: n_try,
                    last_increment: last,
                });
            }
            n_try = (2 * n_try).min(opts.max_terms);
        }
    }

    /// Exactly `terms` coefficients, without a convergence test.
    pub fn with_terms(radius: f64, material: &Material, omega: f64, terms: usize) -> Result<Self> {
        if !(radius > 0.0) || !(omega > 0.0) || terms == 0 {
            return Err(Error::invalid(
                "Mie series needs radius > 0, omega > 0 and at least one term",
            ));
        }
        material.validate()?;
        let (a, b, _, _) = Self::coefficients(omega * radius, material, omega, terms, -1.0)?;
        Ok(MieSeries {
            a,
            b,
            wavenumber: omega,
        })
    }

    /// Returns the coefficients up to `n_max`, the term count at which the series
    /// converged (if it did) and the last relative increment.
    #[allow(clippy::type_complexity)]
    fn coefficients(
        x: f64,
        material: &Material,
        omega: f64,
        n_max: usize,
        tol: f64,
    ) -> Result<(Vec<Complex64>, Vec<Complex64>, Option<usize>, f64)> {
        let psi = riccati_psi(x, n_max);
        let chi = riccati_chi(x, n_max);
        let xi: Vec<Complex64> = psi
            .iter()
            .zip(&chi)
            .map(|(&p, &c)| Complex64::new(p, -c))
            .collect();

        let interior = match *material {
            Material::Pec => None,
            Material::Medium { eps, mu, sigma } => {
                let eps_c = Complex64::new(eps, sigma / omega);
                let m = (eps_c * mu).sqrt();
                Some((m, mu, log_derivative(m * x, n_max)))
            }
        };

        let wanted = wiscombe_terms(x);
        let mut a = Vec::with_capacity(n_max);
        let mut b = Vec::with_capacity(n_max);
        let mut total = 0.0;
        let mut last = f64::INFINITY;
        for n in 1..=n_max {
            let nf = n as f64;
            let dpsi = psi[n - 1] - nf / x * psi[n];
            let dxi = xi[n - 1] - xi[n] * (nf / x);
            let (an, bn) = match &interior {
                None => (dpsi / dxi, psi[n] / xi[n]),
                Some((m, mu, d)) => {
                    let m = *m;
                    let dn = d[n];
                    let an = (m * dpsi - dn * psi[n] * *mu) / (m * dxi - dn * xi[n] * *mu);
                    let bn = (dpsi * *mu - m * dn * psi[n]) / (dxi * *mu - m * dn * xi[n]);
                    (an, bn)
                }
            };
            if !(an.re.is_finite() && an.im.is_finite() && bn.re.is_finite() && bn.im.is_finite()) {
                return Err(Error::MieNotConverged {
                    terms: n,
                    last_increment: last,
                });
            }
            let term = (2.0 * nf + 1.0) * (an.norm() + bn.norm());
            a.push(an);
            b.push(bn);
            total += term;
            last = if total > 0.0 { term / total } else { 0.0 };
            if n >= wanted && last <= tol {
                return Ok((a, b, Some(n), last));
            }
        }
        Ok((a, b, None, last))
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn terms(&self) -> usize {
        self.a.len()
    }

    /// Scattering amplitudes `(S₁, S₂)` at `μ = cos Θ`.
    pub fn amplitudes(&self, mu: f64) -> (Complex64, Complex64) {
        let mut s1 = Complex64::new(0.0, 0.0);
        let mut s2 = Complex64::new(0.0, 0.0);
        let mut pi_prev = 0.0;
        let mut pi = 1.0;
        for (i, (an, bn)) in self.a.iter().zip(&self.b).enumerate() {
            let n = (i + 1) as f64;
            let tau = n * mu * pi - (n + 1.0) * pi_prev;
            let f = (2.0 * n + 1.0) / (n * (n + 1.0));
            s1 += (an * pi + bn * tau) * f;
            s2 += (an * tau + bn * pi) * f;
            let next = ((2.0 * n + 1.0) * mu * pi - (n + 1.0) * pi_prev) / n;
            pi_prev = pi;
            pi = next;
        }
        (s1, s2)
    }

    /// Electric far-field pattern in direction `theta`.
    pub fn far_field_at(&self, wave: &IncidentWave, theta: &Vec3) -> CVec3 {
        let amp = wave.p().norm();
        let ez = *wave.direction();
        let ex = wave.p() / amp;
        let ey = ez.cross(&ex);

        let cx = theta.dot(&ex);
        let cy = theta.dot(&ey);
        let cz = theta.dot(&ez).clamp(-1.0, 1.0);
        let sin_t = cx.hypot(cy);
        let phi = if sin_t == 0.0 { 0.0 } else { cy.atan2(cx) };
        let (sp, cp) = phi.sin_cos();

        let e_theta = ex * (cz * cp) + ey * (cz * sp) - ez * sin_t;
        let e_phi = ey * cp - ex * sp;

        let (s1, s2) = self.amplitudes(cz);
        let pre = Complex64::new(0.0, amp / self.wavenumber);
        let c_theta = pre * s2 * cp;
        let c_phi = -pre * s1 * sp;
        CVec3::from_fn(|i, _| c_theta * e_theta[i] + c_phi * e_phi[i])
    }

    pub fn far_field(&self, wave: &IncidentWave, grid: &Arc<SphereGrid>) -> TangentField {
        TangentField::from_fn(grid.clone(), |x| self.far_field_at(wave, x))
    }
}

/// Far-field pattern of a sphere of `radius` centred at the origin.
pub fn mie_farfield(
    radius: f64,
    material: &Material,
    wave: &IncidentWave,
    grid: &Arc<SphereGrid>,
) -> Result<TangentField> {
    let series = MieSeries::new(radius, material, wave.omega(), MieOptions::default())?;
    Ok(series.far_field(wave, grid))
}
