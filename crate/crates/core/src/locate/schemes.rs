//! The two locating pipelines built on the indicators.

use serde::{Deserialize, Serialize};

use super::indicator::{indicator_r, indicator_s};
use super::library::ReferenceLibrary;
use super::mesh::{IndicatorField, SamplingMesh};
use super::peaks::{find_peaks, local_maxima, Peak, PeakList};
use crate::forward::IncidentWave;
use crate::sphquad::TangentField;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeSOptions {
    pub threshold: f64,
    /// Minimum peak separation; half a wavelength when `None`.
    pub min_sep: Option<f64>,
}

impl Default for SchemeSOptions {
    fn default() -> Self {
        SchemeSOptions {
            threshold: 0.7,
            min_sep: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SchemeSOutput {
    /// Normalized indicator.
    pub indicator: IndicatorField,
    /// Maximum of the raw indicator, used to normalize refined values.
    pub raw_max: f64,
    pub peaks: PeakList,
}

/// Normalized `I_s` followed by thresholded peak extraction.
pub fn scheme_s(
    field: &TangentField,
    wave: &IncidentWave,
    mesh: &SamplingMesh,
    opts: &SchemeSOptions,
) -> Result<SchemeSOutput> {
    let raw = indicator_s(field, wave, mesh)?;
    let raw_max = raw.max();
    let indicator = raw.normalized();
    let min_sep = opts.min_sep.unwrap_or(0.5 * wave.wavelength());
    let peaks = find_peaks(&indicator, opts.threshold, min_sep)?;
    Ok(SchemeSOutput {
        indicator,
        raw_max,
        peaks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeROptions {
    /// A local maximum is a detection when `|I_r − 1|` does not exceed this.
    pub eps_accept: f64,
}

impl Default for SchemeROptions {
    fn default() -> Self {
        SchemeROptions { eps_accept: 0.2 }
    }
}

/// State and outcome of one reference pass.
#[derive(Debug, Clone)]
pub struct SchemeRPass {
    pub reference_id: String,
    /// Raw `I_r` over the whole mesh.
    pub indicator: IndicatorField,
    /// Nodes still searchable when the pass started.
    pub active: Vec<bool>,
    pub detections: Vec<Peak>,
    /// Smallest `|I_r − 1|` among the local maxima of the active region.
    pub best_deviation: Option<f64>,
}

impl SchemeRPass {
    /// `I_r` normalized over the active region and zero elsewhere, for display.
    pub fn display(&self) -> IndicatorField {
        let v = self.indicator.values();
        let m = v
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(x, _)| *x)
            .fold(0.0, f64::max);
        let values = v
            .iter()
            .zip(&self.active)
            .map(|(x, &a)| if a && m > 0.0 { x / m } else { 0.0 })
            .collect();
        IndicatorField::from_parts(self.indicator.mesh().clone(), values, true)
    }
}

#[derive(Debug, Clone)]
pub struct SchemeROutput {
    pub passes: Vec<SchemeRPass>,
    /// All detections in pass order.
    pub peaks: PeakList,
}

/// Sequential matching against an ordered library. Each pass evaluates `I_r` for one
/// reference, accepts local maxima of the active region with `|I_r − 1| ≤ eps_accept`
/// (closest to one first) and removes a ball around each detection from later searches.
pub fn scheme_r(
    field: &TangentField,
    lib: &ReferenceLibrary,
    wave: &IncidentWave,
    mesh: &SamplingMesh,
    opts: &SchemeROptions,
) -> Result<SchemeROutput> {
    if !lib.is_ordered() {
        return Err(Error::invalid(
            "reference library must be ordered by decreasing norm",
        ));
    }
    if !(opts.eps_accept >= 0.0) {
        return Err(Error::invalid(format!(
            "eps_accept must be nonnegative, got {}",
            opts.eps_accept
        )));
    }
    if !(field.norm() > 0.0) {
        return Err(Error::ZeroField("far-field pattern"));
    }
    let mut active = vec![true; mesh.len()];
    let mut passes = Vec::with_capacity(lib.len());
    let mut all = Vec::new();
    for entry in lib.entries() {
        if !active.iter().any(|&a| a) {
            break;
        }
        let indicator = indicator_r(field, entry, wave, mesh)?;
        let v = indicator.values();
        let start = active.clone();
        let maxima = local_maxima(mesh, v, Some(&start));
        let dev = |i: usize| (v[i] - 1.0).abs();
        let best_deviation = maxima.iter().map(|&i| dev(i)).reduce(f64::min);

        let mut cand: Vec<usize> = maxima
            .into_iter()
            .filter(|&i| dev(i) <= opts.eps_accept)
            .collect();
        cand.sort_by(|&a, &b| dev(a).total_cmp(&dev(b)).then(a.cmp(&b)));

        let mut detections = Vec::new();
        for i in cand {
            if !active[i] {
                continue;
            }
            let c = mesh.point(i);
            let r2 = entry.trim_radius().powi(2);
            for (j, a) in active.iter_mut().enumerate() {
                if *a && (mesh.point(j) - c).norm_squared() <= r2 {
                    *a = false;
                }
            }
            detections.push(Peak {
                location: c,
                value: v[i],
                node: i,
                reference_id: Some(entry.id().to_string()),
            });
        }
        all.extend(detections.iter().cloned());
        passes.push(SchemeRPass {
            reference_id: entry.id().to_string(),
            indicator,
            active: start,
            detections,
            best_deviation,
        });
    }
    Ok(SchemeROutput {
        passes,
        peaks: PeakList { peaks: all },
    })
}

/// Re-locates each peak on a fine mesh of spacing `fine_h` spanning one coarse cell in
/// every direction. `eval` returns the raw indicator for a peak on a given mesh; the
/// refined value is the local maximum multiplied by `value_scale`.
pub fn refine_peaks<F>(
    peaks: &PeakList,
    coarse_h: f64,
    fine_h: f64,
    value_scale: f64,
    mut eval: F,
) -> Result<PeakList>
where
    F: FnMut(&Peak, &SamplingMesh) -> Result<IndicatorField>,
{
    if !(fine_h > 0.0 && fine_h <= coarse_h) {
        return Err(Error::invalid(format!(
            "refinement spacing {fine_h} must be positive and at most {coarse_h}"
        )));
    }
    let mut out = Vec::with_capacity(peaks.len());
    for p in peaks.iter() {
        let local = SamplingMesh::centered(&p.location, coarse_h, fine_h)?;
        let f = eval(p, &local)?;
        let i = f.argmax();
        out.push(Peak {
            location: local.point(i),
            value: f.values()[i] * value_scale,
            node: p.node,
            reference_id: p.reference_id.clone(),
        });
    }
    Ok(PeakList { peaks: out })
}

/// Refinement of Scheme S peaks.
pub fn refine_scheme_s(
    field: &TangentField,
    wave: &IncidentWave,
    out: &SchemeSOutput,
    fine_h: f64,
) -> Result<PeakList> {
    let scale = if out.raw_max > 0.0 {
        1.0 / out.raw_max
    } else {
        1.0
    };
    refine_peaks(
        &out.peaks,
        out.indicator.mesh().h(),
        fine_h,
        scale,
        |_, m| indicator_s(field, wave, m),
    )
}

/// Refinement of Scheme R detections against their matched references.
pub fn refine_scheme_r(
    field: &TangentField,
    lib: &ReferenceLibrary,
    wave: &IncidentWave,
    coarse_h: f64,
    out: &SchemeROutput,
    fine_h: f64,
) -> Result<PeakList> {
    refine_peaks(&out.peaks, coarse_h, fine_h, 1.0, |p, m| {
        let id = p.reference_id.as_deref().unwrap_or_default();
        let entry = lib
            .get(id)
            .ok_or_else(|| Error::invalid(format!("unknown reference id {id:?}")))?;
        indicator_r(field, entry, wave, m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{synthesize_scene, Component, Material, Scene, ShapeSpec};
    use crate::locate::library::{order_references, ReferenceEntry};
    use crate::sphquad::build_lebedev;
    use crate::Vec3;

    fn small_mesh() -> SamplingMesh {
        SamplingMesh::new(Vec3::repeat(-1.0), Vec3::repeat(1.0), 0.1).unwrap()
    }

    #[test]
    fn scheme_s_finds_single_ball() {
        let g = build_lebedev(194).unwrap();
        let wave = IncidentWave::standard();
        let c = Vec3::new(0.3, -0.2, 0.4);
        let scene = Scene::new(
            wave.clone(),
            vec![Component {
                spec: ShapeSpec::sphere(0.05, Material::Pec),
                center: c,
            }],
        )
        .unwrap();
        let a = synthesize_scene(&scene, &g).unwrap();
        let out = scheme_s(&a, &wave, &small_mesh(), &SchemeSOptions::default()).unwrap();
        assert_eq!(out.peaks.len(), 1);
        assert!((out.peaks.peaks[0].location - c).norm() < 1e-9);

        let fine = refine_scheme_s(&a, &wave, &out, 0.02).unwrap();
        assert!((fine.peaks[0].location - c).norm() < 1e-9);
        assert!((fine.peaks[0].value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn scheme_r_matches_and_rejects() {
        let g = build_lebedev(194).unwrap();
        let wave = IncidentWave::standard();
        let big = ShapeSpec::sphere(0.3, Material::Pec);
        let c = Vec3::new(-0.4, 0.2, 0.0);
        let scene = Scene::new(
            wave.clone(),
            vec![Component {
                spec: big.clone(),
                center: c,
            }],
        )
        .unwrap();
        let a = synthesize_scene(&scene, &g).unwrap();
        let entries = vec![
            ReferenceEntry::from_shape(
                "large",
                &ShapeSpec::sphere(0.6, Material::Pec),
                &wave,
                &g,
                None,
            )
            .unwrap(),
            ReferenceEntry::from_shape("big", &big, &wave, &g, None).unwrap(),
        ];
        let lib = ReferenceLibrary::new(wave.clone(), entries.into_iter().rev().collect()).unwrap();
        assert!(scheme_r(&a, &lib, &wave, &small_mesh(), &SchemeROptions::default()).is_err());

        let lib = order_references(&lib);
        let out = scheme_r(&a, &lib, &wave, &small_mesh(), &SchemeROptions::default()).unwrap();
        assert_eq!(out.passes.len(), 2);
        assert_eq!(out.peaks.len(), 1);
        let p = &out.peaks.peaks[0];
        assert_eq!(p.reference_id.as_deref(), Some("big"));
        assert!((p.location - c).norm() < 1e-9);
        assert!((p.value - 1.0).abs() < 1e-9);
        assert_eq!(out.passes[0].reference_id, "large");
        assert!(out.passes[0].detections.is_empty());
        assert!(out.passes[0].best_deviation.unwrap() > 0.2);
        assert!(out.passes[1].active.iter().all(|a| *a));
        let d = out.passes[1].display();
        assert!((d.max() - 1.0).abs() < 1e-12);

        let fine = refine_scheme_r(&a, &lib, &wave, 0.1, &out, 0.02).unwrap();
        assert!((fine.peaks[0].location - c).norm() < 1e-9);
    }

    #[test]
    fn refinement_rejects_bad_spacing() {
        let out = PeakList::default();
        assert!(
            refine_peaks(&out, 0.05, 0.1, 1.0, |_, m| IndicatorField::new(
                m.clone(),
                vec![0.0; m.len()]
            ))
            .is_err()
        );
    }
}
