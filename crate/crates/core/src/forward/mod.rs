//! Synthetic far-field data for multi-component scenes.
//!
//! A scene is a list of components, each a reference shape translated to its centre.
//! The measured pattern is composed as
//!
//! ```text
//! A(θ; scene) = Σ_j e^{iω(θ'−θ)·z_j} A(θ; shape_j)
//! ```
//!
//! i.e. multiple scattering between components is neglected. Sphere references are
//! solved exactly with the Mie series; small generic shapes are described by their
//! first-order (dipole) coefficients.

mod mie;
mod noise;

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use mie::{mie_farfield, wiscombe_terms, MieOptions, MieSeries};
pub use noise::add_noise;

use crate::sphquad::{SphereGrid, TangentField};
use crate::vsh::{cross_real, vsh_at, DipoleCoefficients, Family, VshIndex, FIRST_ORDER_M};
use crate::{CVec3, Error, Result, Vec3};

const UNIT_TOL: f64 = 1e-12;

/// Time-harmonic plane wave `p e^{iω x·θ'}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWave", into = "RawWave")]
pub struct IncidentWave {
    omega: f64,
    direction: Vec3,
    p: Vec3,
}

#[derive(Serialize, Deserialize)]
struct RawWave {
    omega: f64,
    theta_inc: Vec3,
    p: Vec3,
}

impl TryFrom<RawWave> for IncidentWave {
    type Error = Error;
    fn try_from(raw: RawWave) -> Result<Self> {
        IncidentWave::new(raw.omega, raw.theta_inc, raw.p)
    }
}

impl From<IncidentWave> for RawWave {
    fn from(w: IncidentWave) -> Self {
        RawWave {
            omega: w.omega,
            theta_inc: w.direction,
            p: w.p,
        }
    }
}

impl IncidentWave {
    /// Validates `ω > 0`, `|θ'| = 1` and `p·θ' = 0` (to `1e-12`, then renormalized exactly).
    pub fn new(omega: f64, direction: Vec3, p: Vec3) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::invalid(format!(
                "omega must be positive, got {omega}"
            )));
        }
        let dn = direction.norm();
        if !((dn - 1.0).abs() <= UNIT_TOL) {
            return Err(Error::invalid(format!(
                "incident direction must be a unit vector (|θ'| = {dn})"
            )));
        }
        let direction = direction / dn;
        let pn = p.norm();
        if !(pn > 0.0) || !pn.is_finite() {
            return Err(Error::invalid(
                "polarization must be a nonzero finite vector",
            ));
        }
        let dot = p.dot(&direction);
        if dot.abs() > UNIT_TOL * pn {
            return Err(Error::invalid(format!(
                "polarization must satisfy p·θ' = 0 (got {dot:e})"
            )));
        }
        let p = p - direction * dot;
        Ok(IncidentWave {
            omega,
            direction,
            p,
        })
    }

    /// `ω = 2π` (unit wavelength), `θ' = e₁`, `p = e₃`.
    pub fn standard() -> Self {
        IncidentWave {
            omega: 2.0 * PI,
            direction: Vec3::x(),
            p: Vec3::z(),
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn wavelength(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// Impinging direction `θ'`.
    pub fn direction(&self) -> &Vec3 {
        &self.direction
    }

    pub fn p(&self) -> &Vec3 {
        &self.p
    }

    /// `e^{iω(θ'−θ)·z}` at every node of `grid`.
    pub fn shift_phases(&self, grid: &SphereGrid, z: &Vec3) -> Vec<Complex64> {
        let base = self.direction.dot(z);
        grid.nodes()
            .iter()
            .map(|x| Complex64::from_polar(1.0, self.omega * (base - x.dot(z))))
            .collect()
    }
}

impl Default for IncidentWave {
    fn default() -> Self {
        Self::standard()
    }
}

/// Constitutive description of a component.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Material {
    /// Perfect electric conductor.
    #[default]
    Pec,
    /// Penetrable medium with relative permittivity, permeability and conductivity.
    Medium {
        eps: f64,
        mu: f64,
        #[serde(default)]
        sigma: f64,
    },
}

impl Material {
    pub fn validate(&self) -> Result<()> {
        if let Material::Medium { eps, mu, sigma } = *self {
            if !(eps > 0.0 && mu > 0.0 && sigma >= 0.0)
                || !(eps.is_finite() && mu.is_finite() && sigma.is_finite())
            {
                return Err(Error::invalid(format!(
                    "medium needs eps > 0, mu > 0, sigma >= 0 (got {eps}, {mu}, {sigma})"
                )));
            }
        }
        Ok(())
    }
}

/// Shape of a reference scatterer centred at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Geometry {
    Sphere {
        radius: f64,
    },
    /// Small generic scatterer given by its first-order far-field coefficients.
    Dipole {
        coeffs: DipoleCoefficients,
    },
}

/// A reference shape with its material. The material is ignored for dipoles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeSpec {
    #[serde(rename = "shape")]
    pub geometry: Geometry,
    #[serde(default)]
    pub material: Material,
}

impl ShapeSpec {
    pub fn sphere(radius: f64, material: Material) -> Self {
        ShapeSpec {
            geometry: Geometry::Sphere { radius },
            material,
        }
    }

    pub fn dipole(coeffs: DipoleCoefficients) -> Self {
        ShapeSpec {
            geometry: Geometry::Dipole { coeffs },
            material: Material::Pec,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.geometry {
            Geometry::Sphere { radius } => {
                if !(*radius > 0.0) || !radius.is_finite() {
                    return Err(Error::invalid(format!(
                        "sphere radius must be positive, got {radius}"
                    )));
                }
                self.material.validate()
            }
            Geometry::Dipole { coeffs } => coeffs.validate(),
        }
    }

    /// Diameter of the shape, or `None` when unknown (dipoles).
    pub fn diameter(&self) -> Option<f64> {
        match self.geometry {
            Geometry::Sphere { radius } => Some(2.0 * radius),
            Geometry::Dipole { .. } => None,
        }
    }

    /// Far-field pattern of the shape centred at the origin.
    pub fn far_field(&self, wave: &IncidentWave, grid: &Arc<SphereGrid>) -> Result<TangentField> {
        self.validate()?;
        match &self.geometry {
            Geometry::Sphere { radius } => mie_farfield(*radius, &self.material, wave, grid),
            Geometry::Dipole { coeffs } => Ok(dipole_farfield(coeffs, grid)),
        }
    }
}

/// One scene component: a reference shape translated to `center`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    #[serde(flatten)]
    pub spec: ShapeSpec,
    pub center: Vec3,
}

/// Scatterer scene illuminated by a single plane wave.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    #[serde(default)]
    pub wave: IncidentWave,
    pub components: Vec<Component>,
}

impl Scene {
    pub fn new(wave: IncidentWave, components: Vec<Component>) -> Result<Self> {
        let s = Scene { wave, components };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        for c in &self.components {
            c.spec.validate()?;
            if !c.center.iter().all(|v| v.is_finite()) {
                return Err(Error::invalid("component centre must be finite"));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scene = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Pairwise centre distances `(i, j, |z_i − z_j|)`.
    pub fn pairwise_distances(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.components.len() {
            for j in (i + 1)..self.components.len() {
                out.push((
                    i,
                    j,
                    (self.components[i].center - self.components[j].center).norm(),
                ));
            }
        }
        out
    }

    /// Smallest centre distance, `None` for fewer than two components.
    pub fn min_separation(&self) -> Option<f64> {
        self.pairwise_distances()
            .into_iter()
            .map(|(_, _, d)| d)
            .reduce(f64::min)
    }

    /// Whether every pair of components is at least one wavelength apart. Closer
    /// components are allowed, but composition by superposition is less accurate.
    pub fn is_sparse(&self) -> bool {
        self.min_separation()
            .is_none_or(|d| d >= self.wave.wavelength())
    }

    /// Same scene with every centre moved by `d`.
    pub fn shifted(&self, d: &Vec3) -> Scene {
        let mut s = self.clone();
        for c in &mut s.components {
            c.center += d;
        }
        s
    }
}

/// `scale · Σ_m (a_m U_1^m + b_m V_1^m)` sampled on `grid`.
pub fn dipole_farfield(coeffs: &DipoleCoefficients, grid: &Arc<SphereGrid>) -> TangentField {
    TangentField::from_fn(grid.clone(), |x| {
        let mut v = CVec3::zeros();
        for (j, &m) in FIRST_ORDER_M.iter().enumerate() {
            let u = vsh_at(VshIndex::new(Family::U, 1, m).unwrap(), x);
            v += u * coeffs.a[j] + cross_real(x, &u) * coeffs.b[j];
        }
        v * Complex64::new(coeffs.scale, 0.0)
    })
}

/// Far field of the same scatterer translated by `z`: `e^{iω(θ'−θ)·z} A(θ)`.
pub fn translate_farfield(field: &TangentField, z: &Vec3, wave: &IncidentWave) -> TangentField {
    if *z == Vec3::zeros() {
        return field.clone();
    }
    let phases = wave.shift_phases(field.grid(), z);
    field
        .modulate(&phases)
        .expect("phases built on the field's grid")
}

/// Superposes the translated reference far fields of every component.
pub fn synthesize_scene(scene: &Scene, grid: &Arc<SphereGrid>) -> Result<TangentField> {
    scene.validate()?;
    let mut total = TangentField::zeros(grid.clone());
    for c in &scene.components {
        let reference = c.spec.far_field(&scene.wave, grid)?;
        total = total.add(&translate_farfield(&reference, &c.center, &scene.wave))?;
    }
    Ok(total)
}

/// First-order coefficients of a far field: its projection onto `U_1^m, V_1^m`.
pub fn fit_dipole(field: &TangentField) -> DipoleCoefficients {
    let ones = vec![Complex64::new(1.0, 0.0); field.grid().len()];
    crate::vsh::project_first_order(field, &ones).expect("phase length matches grid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphquad::{build_lebedev, t2_inner, t2_norm};
    use crate::vsh::vsh_eval;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn wave_validation() {
        assert!(IncidentWave::new(2.0 * PI, Vec3::x(), Vec3::z()).is_ok());
        assert!(IncidentWave::new(0.0, Vec3::x(), Vec3::z()).is_err());
        assert!(IncidentWave::new(1.0, Vec3::new(1.0, 1.0, 0.0), Vec3::z()).is_err());
        assert!(IncidentWave::new(1.0, Vec3::x(), Vec3::new(1.0, 0.0, 1.0)).is_err());
        assert!(IncidentWave::new(1.0, Vec3::x(), Vec3::zeros()).is_err());
    }

    #[test]
    fn scene_json_round_trip() {
        let text = r#"{
            "wave": {"omega": 6.283185307179586, "theta_inc": [1, 0, 0], "p": [0, 0, 1]},
            "components": [
                {"shape": {"kind": "sphere", "radius": 0.2}, "material": {"kind": "medium", "eps": 4, "mu": 1, "sigma": 0}, "center": [1.5, 1.5, 0]},
                {"shape": {"kind": "sphere", "radius": 0.2}, "material": {"kind": "pec"}, "center": [-1.5, -1.5, 0]},
                {"shape": {"kind": "dipole", "coeffs": {"a": [[1, 0], [0, 0], [0, 0]], "b": [[0, 0], [0, 1], [0, 0]], "scale": 0.5}}, "center": [0, 0, 1]}
            ]
        }"#;
        let s = Scene::from_json(text).unwrap();
        assert_eq!(s.components.len(), 3);
        assert_eq!(s.components[1].spec.material, Material::Pec);
        assert!(s.is_sparse());
        let back = Scene::from_json(&s.to_json().unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn invalid_scenes_are_rejected() {
        let bad_radius = r#"{"components": [{"shape": {"kind": "sphere", "radius": -1}, "material": {"kind": "pec"}, "center": [0,0,0]}]}"#;
        assert!(Scene::from_json(bad_radius).is_err());
        let bad_eps = r#"{"components": [{"shape": {"kind": "sphere", "radius": 0.1}, "material": {"kind": "medium", "eps": 0, "mu": 1}, "center": [0,0,0]}]}"#;
        assert!(Scene::from_json(bad_eps).is_err());
        let bad_wave =
            r#"{"wave": {"omega": 1, "theta_inc": [1,0,0], "p": [1,0,0]}, "components": []}"#;
        assert!(Scene::from_json(bad_wave).is_err());
    }

    #[test]
    fn close_components_are_flagged() {
        let sphere = ShapeSpec::sphere(0.1, Material::Pec);
        let s = Scene::new(
            IncidentWave::standard(),
            vec![
                Component {
                    spec: sphere.clone(),
                    center: Vec3::new(-0.3, 0.0, 0.0),
                },
                Component {
                    spec: sphere,
                    center: Vec3::new(0.3, 0.0, 0.0),
                },
            ],
        )
        .unwrap();
        assert!((s.min_separation().unwrap() - 0.6).abs() < 1e-15);
        assert!(!s.is_sparse());
    }

    #[test]
    fn dipole_field_reproduces_basis() {
        let g = build_lebedev(110).unwrap();
        let z = c(0.0);
        let coeffs = DipoleCoefficients::new([c(1.0), z, z], [z; 3], 1.0).unwrap();
        let f = dipole_farfield(&coeffs, &g);
        let u = vsh_eval(VshIndex::new(Family::U, 1, -1).unwrap(), &g);
        assert!(t2_norm(&f.sub(&u).unwrap()) < 1e-14);

        let zero = DipoleCoefficients::new([z; 3], [z; 3], 1.0).unwrap();
        assert_eq!(t2_norm(&dipole_farfield(&zero, &g)), 0.0);
    }

    #[test]
    fn dipole_field_has_no_higher_order_content() {
        let g = build_lebedev(302).unwrap();
        let coeffs = DipoleCoefficients::new(
            [Complex64::new(0.2, 1.0), c(-0.7), Complex64::new(0.0, 0.3)],
            [c(0.5), Complex64::new(0.1, -0.4), c(2.0)],
            0.3,
        )
        .unwrap();
        let f = dipole_farfield(&coeffs, &g);
        assert!(f.is_tangential(1e-13));
        for idx in VshIndex::all_up_to(6).into_iter().filter(|i| i.n() >= 2) {
            let h = vsh_eval(idx, &g);
            assert!(t2_inner(&f, &h).unwrap().norm() < 1e-12, "{idx:?}");
        }
        let fit = fit_dipole(&f);
        for j in 0..3 {
            assert!((fit.a[j] - coeffs.a[j] * 0.3).norm() < 1e-12);
            assert!((fit.b[j] - coeffs.b[j] * 0.3).norm() < 1e-12);
        }
        assert!((t2_norm(&f).powi(2) - coeffs.energy()).abs() < 1e-12);
    }

    #[test]
    fn translation_properties() {
        let g = build_lebedev(590).unwrap();
        let wave = IncidentWave::standard();
        let a = mie_farfield(0.2, &Material::Pec, &wave, &g).unwrap();
        assert_eq!(translate_farfield(&a, &Vec3::zeros(), &wave), a);

        let z1 = Vec3::new(0.3, -1.1, 0.7);
        let z2 = Vec3::new(-1.4, 0.25, 1.9);
        let t1 = translate_farfield(&a, &z1, &wave);
        assert!((t2_norm(&t1) - t2_norm(&a)).abs() < 1e-13 * t2_norm(&a));
        let t12 = translate_farfield(&t1, &z2, &wave);
        let direct = translate_farfield(&a, &(z1 + z2), &wave);
        assert!(t2_norm(&t12.sub(&direct).unwrap()) < 1e-12 * t2_norm(&a));
    }

    #[test]
    fn synthesis_of_single_component() {
        let g = build_lebedev(110).unwrap();
        let wave = IncidentWave::standard();
        let spec = ShapeSpec::sphere(
            0.2,
            Material::Medium {
                eps: 4.0,
                mu: 1.0,
                sigma: 0.0,
            },
        );
        let reference = spec.far_field(&wave, &g).unwrap();

        let at_origin = Scene::new(
            wave.clone(),
            vec![Component {
                spec: spec.clone(),
                center: Vec3::zeros(),
            }],
        )
        .unwrap();
        assert_eq!(synthesize_scene(&at_origin, &g).unwrap(), reference);

        let z = Vec3::new(1.0, -0.5, 0.25);
        let moved = at_origin.shifted(&z);
        assert_eq!(
            synthesize_scene(&moved, &g).unwrap(),
            translate_farfield(&reference, &z, &wave)
        );
    }

    #[test]
    fn synthesis_is_linear_in_the_component_list() {
        let g = build_lebedev(110).unwrap();
        let wave = IncidentWave::standard();
        let a = Component {
            spec: ShapeSpec::sphere(0.15, Material::Pec),
            center: Vec3::new(1.0, 0.0, 0.0),
        };
        let b = Component {
            spec: ShapeSpec::sphere(
                0.1,
                Material::Medium {
                    eps: 3.0,
                    mu: 1.0,
                    sigma: 0.5,
                },
            ),
            center: Vec3::new(0.0, -1.0, 1.0),
        };
        let sa = Scene::new(wave.clone(), vec![a.clone()]).unwrap();
        let sb = Scene::new(wave.clone(), vec![b.clone()]).unwrap();
        let sab = Scene::new(wave, vec![a, b]).unwrap();
        let sum = synthesize_scene(&sa, &g)
            .unwrap()
            .add(&synthesize_scene(&sb, &g).unwrap())
            .unwrap();
        assert_eq!(synthesize_scene(&sab, &g).unwrap(), sum);
    }
}
