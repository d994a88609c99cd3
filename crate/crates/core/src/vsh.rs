//! Scalar and vector spherical harmonics.
//!
//! Convention: `Y_n^m` is orthonormal on `S²` and carries the Condon–Shortley phase,
//! `Y_n^{-m} = (-1)^m conj(Y_n^m)`. The tangential harmonics are
//!
//! ```text
//! U_n^m = Grad Y_n^m / sqrt(n(n+1)),    V_n^m = θ ∧ U_n^m,
//! ```
//!
//! which together form an orthonormal basis of the tangential `L²` fields. Surface
//! gradients come from closed-form Legendre derivative recurrences; at the poles the
//! analytic limits are used (`P_n^m / sin t` is evaluated as `sin^{m-1} t · Q_n^m`).

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::sphquad::{SphereGrid, TangentField};
use crate::{CVec3, Error, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    U,
    V,
}

/// Index `(family, n, m)` of a vector spherical harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VshIndex {
    family: Family,
    n: u32,
    m: i32,
}

impl VshIndex {
    pub fn new(family: Family, n: u32, m: i32) -> Result<Self> {
        if n == 0 || m.unsigned_abs() > n {
            return Err(Error::InvalidIndex {
                n: n as i64,
                m: m as i64,
            });
        }
        Ok(VshIndex { family, n, m })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Every index with `1 ≤ n ≤ n_max`, both families.
    pub fn all_up_to(n_max: u32) -> Vec<VshIndex> {
        let mut out = Vec::new();
        for family in [Family::U, Family::V] {
            for n in 1..=n_max {
                for m in -(n as i32)..=(n as i32) {
                    out.push(VshIndex { family, n, m });
                }
            }
        }
        out
    }
}

/// Orders `m = -1, 0, 1` of the first-order harmonics, in storage order.
pub const FIRST_ORDER_M: [i32; 3] = [-1, 0, 1];

/// Coefficients of a field in the span of the six first-order vector harmonics,
/// `scale · Σ_m (a_m U_1^m + b_m V_1^m)` with `m = -1, 0, 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipoleCoefficients {
    pub a: [Complex64; 3],
    pub b: [Complex64; 3],
    pub scale: f64,
}

impl DipoleCoefficients {
    pub fn new(a: [Complex64; 3], b: [Complex64; 3], scale: f64) -> Result<Self> {
        let c = DipoleCoefficients { a, b, scale };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self
            .a
            .iter()
            .chain(&self.b)
            .all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite || !self.scale.is_finite() || self.scale <= 0.0 {
            return Err(Error::invalid(
                "dipole coefficients must be finite with a positive scale",
            ));
        }
        Ok(())
    }

    /// `scale² Σ (|a_m|² + |b_m|²)`, the squared norm of the represented field.
    pub fn energy(&self) -> f64 {
        let s: f64 = self.a.iter().chain(&self.b).map(|z| z.norm_sqr()).sum();
        self.scale * self.scale * s
    }
}

/// Fully normalized `P̄_n^m(cos t) / sin^m t` for `m ≥ 0`, Condon–Shortley phase included.
fn legendre_q(n: u32, m: u32, x: f64) -> f64 {
    if m > n {
        return 0.0;
    }
    let mut q_mm = 1.0 / (4.0 * PI).sqrt();
    for k in 1..=m {
        let k = k as f64;
        q_mm *= -((2.0 * k + 1.0) / (2.0 * k)).sqrt();
    }
    if n == m {
        return q_mm;
    }
    let mf = m as f64;
    let mut prev = q_mm;
    let mut cur = (2.0 * mf + 3.0).sqrt() * x * q_mm;
    for l in (m + 2)..=n {
        let l = l as f64;
        let a = ((4.0 * l * l - 1.0) / (l * l - mf * mf)).sqrt();
        let b = (((l - 1.0) * (l - 1.0) - mf * mf) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0)).sqrt();
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized associated Legendre value `P̄_n^m(cos t)` for any `|m| ≤ n + 1`.
fn legendre_p(n: u32, m: i32, x: f64, s: f64) -> f64 {
    let am = m.unsigned_abs();
    if am > n {
        return 0.0;
    }
    let v = legendre_q(n, am, x) * s.powi(am as i32);
    if m < 0 && am % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Polar coordinates of a unit vector: `(cos t, sin t, φ)`, with `φ = 0` at the poles.
fn polar(theta: &Vec3) -> (f64, f64, f64) {
    let s = theta[0].hypot(theta[1]);
    let x = theta[2].clamp(-1.0, 1.0);
    let phi = if s == 0.0 {
        0.0
    } else {
        theta[1].atan2(theta[0])
    };
    (x, s, phi)
}

fn check_nm(n: i64, m: i64) -> Result<()> {
    if n < 0 || m.abs() > n {
        return Err(Error::InvalidIndex { n, m });
    }
    Ok(())
}

/// Orthonormal complex spherical harmonic `Y_n^m(θ)` with Condon–Shortley phase.
pub fn sph_harm(n: i64, m: i64, theta: &Vec3) -> Result<Complex64> {
    check_nm(n, m)?;
    let (x, s, phi) = polar(theta);
    let am = m.unsigned_abs() as u32;
    let p = legendre_q(n as u32, am, x) * s.powi(am as i32);
    let y = Complex64::from_polar(p, am as f64 * phi);
    Ok(if m < 0 {
        let y = y.conj();
        if am % 2 == 1 {
            -y
        } else {
            y
        }
    } else {
        y
    })
}

/// Surface gradient `Grad Y_n^m(θ)` for `m ≥ 0`.
fn grad_y_nonneg(n: u32, m: u32, theta: &Vec3) -> CVec3 {
    let (x, s, phi) = polar(theta);
    let nf = n as f64;
    let mf = m as f64;
    let mi = m as i32;

    let up = ((nf - mf) * (nf + mf + 1.0)).sqrt() * legendre_p(n, mi + 1, x, s);
    let down = if m == 0 {
        -((nf * (nf + 1.0)).sqrt()) * legendre_p(n, 1, x, s)
    } else {
        ((nf + mf) * (nf - mf + 1.0)).sqrt() * legendre_p(n, mi - 1, x, s)
    };
    let dp_dt = 0.5 * (up - down);
    // P̄_n^m / sin t, finite at the poles
    let p_over_s = if m == 0 {
        0.0
    } else {
        legendre_q(n, m, x) * s.powi(mi - 1)
    };

    let (sp, cp) = phi.sin_cos();
    let e_t = Vec3::new(x * cp, x * sp, -s);
    let e_phi = Vec3::new(-sp, cp, 0.0);
    let phase = Complex64::from_polar(1.0, mf * phi);
    let c_t = phase * dp_dt;
    let c_phi = phase * Complex64::new(0.0, mf * p_over_s);
    CVec3::from_fn(|i, _| c_t * e_t[i] + c_phi * e_phi[i])
}

/// Surface gradient `Grad Y_n^m(θ)`.
pub fn grad_sph_harm(n: i64, m: i64, theta: &Vec3) -> Result<CVec3> {
    check_nm(n, m)?;
    let am = m.unsigned_abs() as u32;
    let g = grad_y_nonneg(n as u32, am, theta);
    Ok(if m < 0 {
        let g = g.map(|z| z.conj());
        if am % 2 == 1 {
            -g
        } else {
            g
        }
    } else {
        g
    })
}

/// `θ ∧ v` for a real `θ` and complex `v`.
pub(crate) fn cross_real(theta: &Vec3, v: &CVec3) -> CVec3 {
    CVec3::new(
        v[2] * theta[1] - v[1] * theta[2],
        v[0] * theta[2] - v[2] * theta[0],
        v[1] * theta[0] - v[0] * theta[1],
    )
}

/// Value of one vector spherical harmonic at a single direction.
pub fn vsh_at(idx: VshIndex, theta: &Vec3) -> CVec3 {
    let n = idx.n as i64;
    let g = grad_sph_harm(n, idx.m as i64, theta).expect("index validated on construction");
    let u = g / Complex64::new(((n * (n + 1)) as f64).sqrt(), 0.0);
    match idx.family {
        Family::U => u,
        Family::V => cross_real(theta, &u),
    }
}

/// Samples one vector spherical harmonic on a grid.
pub fn vsh_eval(idx: VshIndex, grid: &Arc<SphereGrid>) -> TangentField {
    TangentField::from_fn(grid.clone(), |x| vsh_at(idx, x))
}

/// The six first-order harmonics in the order `U_1^{-1}, U_1^0, U_1^1, V_1^{-1}, V_1^0, V_1^1`.
pub fn first_order_basis(grid: &Arc<SphereGrid>) -> Vec<TangentField> {
    [Family::U, Family::V]
        .into_iter()
        .flat_map(|f| FIRST_ORDER_M.map(|m| VshIndex { family: f, n: 1, m }))
        .map(|idx| vsh_eval(idx, grid))
        .collect()
}

/// Projects `A` onto the phase-modulated first-order harmonics:
/// `a_m = ⟨A, φ U_1^m⟩`, `b_m = ⟨A, φ V_1^m⟩`, with `φ` given per node.
///
/// Returned coefficients carry `scale = 1`.
pub fn project_first_order(
    field: &TangentField,
    phase: &[Complex64],
) -> Result<DipoleCoefficients> {
    let grid = field.grid();
    if phase.len() != grid.len() {
        return Err(Error::GridMismatch);
    }
    let mut a = [Complex64::new(0.0, 0.0); 3];
    let mut b = [Complex64::new(0.0, 0.0); 3];
    for (((x, v), &w), ph) in grid
        .nodes()
        .iter()
        .zip(field.values())
        .zip(grid.weights())
        .zip(phase)
    {
        let wv = v * (ph.conj() * w);
        for (j, &m) in FIRST_ORDER_M.iter().enumerate() {
            let u = vsh_at(
                VshIndex {
                    family: Family::U,
                    n: 1,
                    m,
                },
                x,
            );
            let vv = cross_real(x, &u);
            a[j] += wv.dotc(&u).conj();
            b[j] += wv.dotc(&vv).conj();
        }
    }
    Ok(DipoleCoefficients { a, b, scale: 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphquad::{build_lebedev, t2_inner};
    use rand::{Rng, SeedableRng};

    fn random_unit(rng: &mut impl Rng) -> Vec3 {
        loop {
            let v = Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let n = v.norm();
            if n > 0.1 && n <= 1.0 {
                return v / n;
            }
        }
    }

    #[test]
    fn low_order_closed_forms() {
        let y00 = sph_harm(0, 0, &Vec3::new(0.3, -0.4, (1.0f64 - 0.25).sqrt())).unwrap();
        assert!((y00.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15 && y00.im == 0.0);

        let y10 = sph_harm(1, 0, &Vec3::z()).unwrap();
        assert!((y10.re - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);

        // Y_1^1 = -sqrt(3/8π) (x + i y)
        let t = Vec3::new(0.36, 0.48, 0.8);
        let y11 = sph_harm(1, 1, &t).unwrap();
        let c = -(3.0 / (8.0 * PI)).sqrt();
        assert!((y11 - Complex64::new(c * 0.36, c * 0.48)).norm() < 1e-15);

        // Y_2^0 = sqrt(5/16π) (3z² - 1)
        let y20 = sph_harm(2, 0, &t).unwrap();
        assert!((y20.re - (5.0 / (16.0 * PI)).sqrt() * (3.0 * 0.64 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn invalid_orders_are_rejected() {
        assert!(matches!(
            sph_harm(2, 3, &Vec3::z()),
            Err(Error::InvalidIndex { .. })
        ));
        assert!(VshIndex::new(Family::U, 0, 0).is_err());
        assert!(VshIndex::new(Family::V, 2, -3).is_err());
    }

    #[test]
    fn negative_order_symmetry() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let t = random_unit(&mut rng);
            for n in 0..8i64 {
                for m in 0..=n {
                    let a = sph_harm(n, m, &t).unwrap().conj();
                    let b = sph_harm(n, -m, &t).unwrap() * if m % 2 == 0 { 1.0 } else { -1.0 };
                    assert!((a - b).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn scalar_harmonics_are_orthonormal_on_590_points() {
        let g = build_lebedev(590).unwrap();
        let n_max = 20i64;
        let mut vals = Vec::new();
        for n in 0..=n_max {
            for m in -n..=n {
                let v: Vec<Complex64> = g
                    .nodes()
                    .iter()
                    .map(|x| sph_harm(n, m, x).unwrap())
                    .collect();
                vals.push((n, m, v));
            }
        }
        for (n1, m1, v1) in &vals {
            for (n2, m2, v2) in &vals {
                let q: Complex64 = v1
                    .iter()
                    .zip(v2)
                    .zip(g.weights())
                    .map(|((a, b), &w)| a * b.conj() * w)
                    .sum();
                let expected = if n1 == n2 && m1 == m2 { 1.0 } else { 0.0 };
                assert!(
                    (q - expected).norm() < 1e-10,
                    "({n1},{m1}) vs ({n2},{m2}): {q}"
                );
            }
        }
    }

    #[test]
    fn first_order_inner_products() {
        let g = build_lebedev(590).unwrap();
        let u10 = vsh_eval(VshIndex::new(Family::U, 1, 0).unwrap(), &g);
        let v10 = vsh_eval(VshIndex::new(Family::V, 1, 0).unwrap(), &g);
        let u11 = vsh_eval(VshIndex::new(Family::U, 1, 1).unwrap(), &g);
        let v20 = vsh_eval(VshIndex::new(Family::V, 2, 0).unwrap(), &g);
        assert!((t2_inner(&u10, &u10).unwrap() - 1.0).norm() < 1e-10);
        assert!(t2_inner(&u10, &v10).unwrap().norm() < 1e-10);
        assert!((u11.norm() - 1.0).abs() < 1e-10);
        assert!(t2_inner(&u11, &v20).unwrap().norm() < 1e-10);
    }

    #[test]
    fn vector_harmonics_are_tangential() {
        let g = build_lebedev(302).unwrap();
        for idx in VshIndex::all_up_to(8) {
            let f = vsh_eval(idx, &g);
            assert!(f.is_tangential(1e-13), "{idx:?}: {}", f.normal_residual());
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let h = 1e-5;
        for _ in 0..40 {
            let t = random_unit(&mut rng);
            let e1 = t.cross(&Vec3::new(0.3, 0.5, 0.8)).normalize();
            let e2 = t.cross(&e1);
            for n in 1..7i64 {
                for m in -n..=n {
                    let g = grad_sph_harm(n, m, &t).unwrap();
                    for e in [e1, e2] {
                        let fwd = sph_harm(n, m, &(t + e * h).normalize()).unwrap();
                        let bwd = sph_harm(n, m, &(t - e * h).normalize()).unwrap();
                        let fd = (fwd - bwd) / (2.0 * h);
                        let an = g[0] * e[0] + g[1] * e[1] + g[2] * e[2];
                        assert!((fd - an).norm() < 1e-6, "n={n} m={m}: {fd} vs {an}");
                    }
                }
            }
        }
    }

    #[test]
    fn pole_values_are_the_continuous_limits() {
        for pole in [Vec3::z(), -Vec3::z()] {
            for idx in VshIndex::all_up_to(5) {
                let at_pole = vsh_at(idx, &pole);
                for phi in [0.0, 1.0, 2.5, 4.0] {
                    let eps = 1e-7;
                    let near =
                        Vec3::new(eps * f64::cos(phi), eps * f64::sin(phi), pole[2]).normalize();
                    let v = vsh_at(idx, &near);
                    assert!((v - at_pole).norm() < 1e-5, "{idx:?} phi={phi}");
                }
            }
        }
    }

    #[test]
    fn projection_recovers_basis_combinations() {
        let g = build_lebedev(110).unwrap();
        let ones = vec![Complex64::new(1.0, 0.0); g.len()];
        let u10 = vsh_eval(VshIndex::new(Family::U, 1, 0).unwrap(), &g);
        let c = project_first_order(&u10, &ones).unwrap();
        let expect_a = [0.0, 1.0, 0.0];
        for ((a, b), e) in c.a.iter().zip(c.b.iter()).zip(expect_a) {
            assert!((a - e).norm() < 1e-12);
            assert!(b.norm() < 1e-12);
        }
        assert_eq!(c.scale, 1.0);

        let v1m1 = vsh_eval(VshIndex::new(Family::V, 1, -1).unwrap(), &g);
        let u11 = vsh_eval(VshIndex::new(Family::U, 1, 1).unwrap(), &g);
        let f = v1m1
            .scale(Complex64::new(2.0, 0.0))
            .add(&u11.scale(Complex64::new(3.0, 0.0)))
            .unwrap();
        let c = project_first_order(&f, &ones).unwrap();
        let ea = [0.0, 0.0, 3.0];
        let eb = [2.0, 0.0, 0.0];
        for j in 0..3 {
            assert!((c.a[j] - ea[j]).norm() < 1e-12);
            assert!((c.b[j] - eb[j]).norm() < 1e-12);
        }
    }

    #[test]
    fn projection_phase_enters_conjugated() {
        let g = build_lebedev(110).unwrap();
        let u = vsh_eval(VshIndex::new(Family::U, 1, 1).unwrap(), &g);
        let phase: Vec<Complex64> = g
            .nodes()
            .iter()
            .map(|x| Complex64::from_polar(1.0, 2.0 * x[0]))
            .collect();
        let modulated = u.modulate(&phase).unwrap();
        let c = project_first_order(&modulated, &phase).unwrap();
        assert!((c.a[2] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn dipole_coefficients_validate() {
        let z = Complex64::new(0.0, 0.0);
        assert!(DipoleCoefficients::new([z; 3], [z; 3], 1.0).is_ok());
        assert!(DipoleCoefficients::new([z; 3], [z; 3], 0.0).is_err());
        assert!(
            DipoleCoefficients::new([Complex64::new(f64::NAN, 0.0), z, z], [z; 3], 1.0).is_err()
        );
    }
}
