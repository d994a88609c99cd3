//! Reference libraries of far-field patterns for the matched indicator.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::forward::{IncidentWave, ShapeSpec};
use crate::sphquad::{build_lebedev, t2_norm, SphereGrid, TangentField, DEFAULT_LEBEDEV_POINTS};
use crate::{Error, Result};

/// Margin added to a shape diameter when trimming around a detection, in wavelengths.
pub const TRIM_MARGIN: f64 = 0.25;
/// Trim radius for shapes without a known diameter, in wavelengths.
pub const DEFAULT_TRIM: f64 = 0.5;

/// One reference pattern `A_k` of a shape centred at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceEntry {
    id: String,
    field: TangentField,
    norm: f64,
    trim_radius: f64,
    spec: Option<ShapeSpec>,
}

impl ReferenceEntry {
    pub fn new(id: impl Into<String>, field: TangentField, trim_radius: f64) -> Result<Self> {
        let id = id.into();
        if id.is_empty() || id.contains(['\n', ',']) {
            return Err(Error::invalid(format!(
                "reference id {id:?} must be non-empty without commas"
            )));
        }
        if !(trim_radius > 0.0) || !trim_radius.is_finite() {
            return Err(Error::invalid(format!(
                "trim radius must be positive, got {trim_radius}"
            )));
        }
        let norm = t2_norm(&field);
        if !(norm > 0.0) {
            return Err(Error::ZeroField("reference pattern"));
        }
        Ok(ReferenceEntry {
            id,
            field,
            norm,
            trim_radius,
            spec: None,
        })
    }

    /// Computes the pattern of `spec`. Without an explicit trim radius the diameter plus
    /// a quarter wavelength is used.
    pub fn from_shape(
        id: impl Into<String>,
        spec: &ShapeSpec,
        wave: &IncidentWave,
        grid: &Arc<SphereGrid>,
        trim_radius: Option<f64>,
    ) -> Result<Self> {
        let lambda = wave.wavelength();
        let trim = trim_radius.unwrap_or_else(|| match spec.diameter() {
            Some(d) => d + TRIM_MARGIN * lambda,
            None => DEFAULT_TRIM * lambda,
        });
        let mut e = ReferenceEntry::new(id, spec.far_field(wave, grid)?, trim)?;
        e.spec = Some(spec.clone());
        Ok(e)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn field(&self) -> &TangentField {
        &self.field
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn trim_radius(&self) -> f64 {
        self.trim_radius
    }

    pub fn spec(&self) -> Option<&ShapeSpec> {
        self.spec.as_ref()
    }
}

/// Reference patterns computed for one incident wave on one quadrature grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceLibrary {
    wave: IncidentWave,
    entries: Vec<ReferenceEntry>,
}

impl ReferenceLibrary {
    pub fn new(wave: IncidentWave, entries: Vec<ReferenceEntry>) -> Result<Self> {
        if let Some(first) = entries.first() {
            if entries.iter().any(|e| !e.field.same_grid(&first.field)) {
                return Err(Error::GridMismatch);
            }
        }
        for (i, e) in entries.iter().enumerate() {
            if entries[..i].iter().any(|o| o.id == e.id) {
                return Err(Error::invalid(format!("duplicate reference id {:?}", e.id)));
            }
        }
        Ok(ReferenceLibrary { wave, entries })
    }

    pub fn wave(&self) -> &IncidentWave {
        &self.wave
    }

    pub fn entries(&self) -> &[ReferenceEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&ReferenceEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Norms are non-increasing.
    pub fn is_ordered(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].norm >= w[1].norm)
    }

    pub fn grid(&self) -> Option<&Arc<SphereGrid>> {
        self.entries.first().map(|e| e.field.grid())
    }

    /// Writes `library.json` and one pattern file per entry into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut records = Vec::with_capacity(self.entries.len());
        for (i, e) in self.entries.iter().enumerate() {
            let file = format!("ref_{i:03}.txt");
            e.field
                .write_text(BufWriter::new(File::create(dir.join(&file))?))?;
            records.push(EntryRecord {
                id: e.id.clone(),
                norm: e.norm,
                trim_radius: e.trim_radius,
                file,
                spec: e.spec.clone(),
            });
        }
        let manifest = LibraryManifest {
            wave: self.wave.clone(),
            n_lebedev: self.grid().map_or(0, |g| g.len()),
            entries: records,
        };
        fs::write(dir.join(MANIFEST), serde_json::to_string_pretty(&manifest)?)?;
        Ok(())
    }

    /// Loads a library written by [`ReferenceLibrary::save`]; `path` may be the directory
    /// or its `library.json`.
    pub fn load(path: &Path) -> Result<Self> {
        let (dir, json) = if path.is_dir() {
            (path.to_path_buf(), path.join(MANIFEST))
        } else {
            (
                path.parent()
                    .map(Path::to_path_buf)
                    .unwrap_or_else(|| PathBuf::from(".")),
                path.to_path_buf(),
            )
        };
        let manifest: LibraryManifest = serde_json::from_str(&fs::read_to_string(json)?)?;
        let grid = build_lebedev(manifest.n_lebedev)?;
        let mut entries = Vec::with_capacity(manifest.entries.len());
        for r in manifest.entries {
            let f = TangentField::read_text(
                BufReader::new(File::open(dir.join(&r.file))?),
                grid.clone(),
            )?;
            let mut e = ReferenceEntry::new(r.id, f, r.trim_radius)?;
            e.spec = r.spec;
            entries.push(e);
        }
        ReferenceLibrary::new(manifest.wave, entries)
    }
}

const MANIFEST: &str = "library.json";

#[derive(Serialize, Deserialize)]
struct LibraryManifest {
    wave: IncidentWave,
    n_lebedev: usize,
    entries: Vec<EntryRecord>,
}

#[derive(Serialize, Deserialize)]
struct EntryRecord {
    id: String,
    norm: f64,
    trim_radius: f64,
    file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spec: Option<ShapeSpec>,
}

/// Shape-level description of a library, as read by the reference generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LibrarySpec {
    #[serde(default)]
    pub wave: IncidentWave,
    #[serde(default = "default_points")]
    pub lebedev: usize,
    pub references: Vec<ReferenceSpec>,
}

fn default_points() -> usize {
    DEFAULT_LEBEDEV_POINTS
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferenceSpec {
    pub id: String,
    #[serde(flatten)]
    pub spec: ShapeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trim_radius: Option<f64>,
}

impl LibrarySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Computes every pattern; entries keep the listed order.
    pub fn build(&self) -> Result<ReferenceLibrary> {
        let grid = build_lebedev(self.lebedev)?;
        let entries = self
            .references
            .iter()
            .map(|r| {
                ReferenceEntry::from_shape(r.id.clone(), &r.spec, &self.wave, &grid, r.trim_radius)
            })
            .collect::<Result<Vec<_>>>()?;
        ReferenceLibrary::new(self.wave.clone(), entries)
    }
}

/// Sorts entries by decreasing norm. Entries with equal norms keep their relative order.
pub fn order_references(lib: &ReferenceLibrary) -> ReferenceLibrary {
    let mut entries = lib.entries.clone();
    entries.sort_by(|a, b| b.norm.total_cmp(&a.norm));
    ReferenceLibrary {
        wave: lib.wave.clone(),
        entries,
    }
}

/// Relative distance of one pair of entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairDistance {
    pub first: String,
    pub second: String,
    /// `‖A_k − A_l‖ / max(‖A_k‖, ‖A_l‖)`.
    pub distance: f64,
    pub too_close: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistinctnessReport {
    pub tolerance: f64,
    pub pairs: Vec<PairDistance>,
}

impl DistinctnessReport {
    pub fn passes(&self) -> bool {
        self.pairs.iter().all(|p| !p.too_close)
    }

    pub fn violations(&self) -> impl Iterator<Item = &PairDistance> {
        self.pairs.iter().filter(|p| p.too_close)
    }
}

/// Flags pairs of patterns closer than `tol` in relative `L²` distance.
pub fn check_distinctness(lib: &ReferenceLibrary, tol: f64) -> Result<DistinctnessReport> {
    if !(tol >= 0.0) {
        return Err(Error::invalid(format!(
            "tolerance must be nonnegative, got {tol}"
        )));
    }
    let e = &lib.entries;
    let mut pairs = Vec::new();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let scale = e[i].norm.max(e[j].norm);
            let distance = t2_norm(&e[i].field.sub(&e[j].field)?) / scale;
            pairs.push(PairDistance {
                first: e[i].id.clone(),
                second: e[j].id.clone(),
                distance,
                too_close: distance < tol,
            });
        }
    }
    Ok(DistinctnessReport {
        tolerance: tol,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::Material;

    fn lib(radii: &[f64]) -> ReferenceLibrary {
        let wave = IncidentWave::standard();
        let g = build_lebedev(110).unwrap();
        let entries = radii
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                ReferenceEntry::from_shape(
                    format!("s{i}"),
                    &ShapeSpec::sphere(r, Material::Pec),
                    &wave,
                    &g,
                    None,
                )
                .unwrap()
            })
            .collect();
        ReferenceLibrary::new(wave, entries).unwrap()
    }

    #[test]
    fn ordering_is_by_decreasing_norm() {
        let l = lib(&[0.1, 0.3, 0.2]);
        assert!(!l.is_ordered());
        let o = order_references(&l);
        assert!(o.is_ordered());
        let ids: Vec<_> = o.entries().iter().map(|e| e.id()).collect();
        assert_eq!(ids, ["s1", "s2", "s0"]);
    }

    #[test]
    fn ordering_is_stable_for_ties() {
        let wave = IncidentWave::standard();
        let g = build_lebedev(26).unwrap();
        let f = ShapeSpec::sphere(0.1, Material::Pec)
            .far_field(&wave, &g)
            .unwrap();
        let big = ShapeSpec::sphere(0.2, Material::Pec)
            .far_field(&wave, &g)
            .unwrap();
        let entries = vec![
            ReferenceEntry::new("b", f.clone(), 0.5).unwrap(),
            ReferenceEntry::new("a", f.clone(), 0.5).unwrap(),
            ReferenceEntry::new("c", big, 0.5).unwrap(),
            ReferenceEntry::new("d", f, 0.5).unwrap(),
        ];
        let o = order_references(&ReferenceLibrary::new(wave, entries).unwrap());
        let ids: Vec<_> = o.entries().iter().map(|e| e.id()).collect();
        assert_eq!(ids, ["c", "b", "a", "d"]);
    }

    #[test]
    fn trim_radius_defaults_to_diameter_plus_margin() {
        let l = lib(&[0.3]);
        assert!((l.entries()[0].trim_radius() - 0.85).abs() < 1e-12);
    }

    #[test]
    fn distinctness_flags_near_duplicates() {
        let l = lib(&[0.3, 0.3001, 0.1]);
        let r = check_distinctness(&l, 0.05).unwrap();
        assert_eq!(r.pairs.len(), 3);
        let bad: Vec<_> = r.violations().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(
            (bad[0].first.as_str(), bad[0].second.as_str()),
            ("s0", "s1")
        );
        assert!(!r.passes());
        assert!(check_distinctness(&lib(&[0.3, 0.1]), 0.05)
            .unwrap()
            .passes());
    }

    #[test]
    fn duplicate_ids_and_bad_entries_are_rejected() {
        let wave = IncidentWave::standard();
        let g = build_lebedev(26).unwrap();
        let f = ShapeSpec::sphere(0.1, Material::Pec)
            .far_field(&wave, &g)
            .unwrap();
        let dup = vec![
            ReferenceEntry::new("x", f.clone(), 0.5).unwrap(),
            ReferenceEntry::new("x", f.clone(), 0.5).unwrap(),
        ];
        assert!(ReferenceLibrary::new(wave.clone(), dup).is_err());
        assert!(ReferenceEntry::new("", f.clone(), 0.5).is_err());
        assert!(ReferenceEntry::new("y", f, 0.0).is_err());
        assert!(matches!(
            ReferenceEntry::new("z", TangentField::zeros(g), 0.5),
            Err(Error::ZeroField(_))
        ));
    }

    #[test]
    fn save_and_load_round_trip() {
        let l = lib(&[0.2, 0.1]);
        let dir = std::env::temp_dir().join(format!("farloc-lib-{}", std::process::id()));
        l.save(&dir).unwrap();
        let back = ReferenceLibrary::load(&dir).unwrap();
        assert_eq!(back, l);
        let via_json = ReferenceLibrary::load(&dir.join("library.json")).unwrap();
        assert_eq!(via_json, l);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn spec_json_builds_library() {
        let text = r#"{
            "lebedev": 50,
            "references": [
                {"id": "pec", "shape": {"kind": "sphere", "radius": 0.2}},
                {"id": "diel", "shape": {"kind": "sphere", "radius": 0.2},
                 "material": {"kind": "medium", "eps": 4.0, "mu": 1.0}, "trim_radius": 0.7}
            ]
        }"#;
        let l = LibrarySpec::from_json(text).unwrap().build().unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.grid().unwrap().len(), 50);
        assert_eq!(l.get("diel").unwrap().trim_radius(), 0.7);
    }
}
