//! Local maxima of indicator fields.

use std::cmp::Ordering;
use std::io::Write;

use serde::Serialize;

use super::mesh::{IndicatorField, SamplingMesh};
use crate::{Error, Result, Vec3};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Peak {
    pub location: Vec3,
    pub value: f64,
    /// Mesh node index of the peak on the mesh it was found on.
    pub node: usize,
    pub reference_id: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PeakList {
    pub peaks: Vec<Peak>,
}

impl PeakList {
    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Peak> {
        self.peaks.iter()
    }

    /// CSV with header `x,y,z,value,reference_id`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "x,y,z,value,reference_id")?;
        for p in &self.peaks {
            let l = p.location;
            writeln!(
                out,
                "{:.6},{:.6},{:.6},{:.6e},{}",
                l[0],
                l[1],
                l[2],
                p.value,
                p.reference_id.as_deref().unwrap_or("")
            )?;
        }
        Ok(())
    }
}

/// Total order used to break ties between equal values: the smaller index wins.
fn beats(values: &[f64], q: usize, r: usize) -> bool {
    values[q] > values[r] || (values[q] == values[r] && q < r)
}

/// Nodes that beat every active neighbour. Inactive nodes are never maxima.
pub(crate) fn local_maxima(
    mesh: &SamplingMesh,
    values: &[f64],
    active: Option<&[bool]>,
) -> Vec<usize> {
    let is_active = |i: usize| active.is_none_or(|a| a[i]);
    (0..mesh.len())
        .filter(|&q| {
            is_active(q)
                && mesh
                    .neighbors(q)
                    .filter(|&r| is_active(r))
                    .all(|r| beats(values, q, r))
        })
        .collect()
}

/// Orders candidates by decreasing value, then by index.
pub(crate) fn sort_desc(values: &[f64], nodes: &mut [usize]) {
    nodes.sort_by(|&a, &b| match values[b].partial_cmp(&values[a]) {
        Some(Ordering::Equal) | None => a.cmp(&b),
        Some(o) => o,
    });
}

/// Local maxima of a normalized field with value at least `threshold`, thinned so that
/// accepted peaks are at least `min_sep` apart (stronger peaks win).
pub fn find_peaks(field: &IndicatorField, threshold: f64, min_sep: f64) -> Result<PeakList> {
    if !field.is_normalized() {
        return Err(Error::invalid(
            "peak extraction expects a normalized indicator",
        ));
    }
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::invalid(format!(
            "threshold must lie in (0, 1), got {threshold}"
        )));
    }
    let mesh = field.mesh();
    if !(min_sep >= mesh.h() * (1.0 - 1e-9)) {
        return Err(Error::invalid(format!(
            "minimum separation {min_sep} is below the mesh spacing {}",
            mesh.h()
        )));
    }
    let v = field.values();
    let mut cand: Vec<usize> = local_maxima(mesh, v, None)
        .into_iter()
        .filter(|&i| v[i] >= threshold)
        .collect();
    sort_desc(v, &mut cand);

    let mut peaks: Vec<Peak> = Vec::new();
    for i in cand {
        let p = mesh.point(i);
        if peaks.iter().all(|q| (q.location - p).norm() >= min_sep) {
            peaks.push(Peak {
                location: p,
                value: v[i],
                node: i,
                reference_id: None,
            });
        }
    }
    Ok(PeakList { peaks })
}
