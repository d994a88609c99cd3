//! Locating scatterers from a single far-field pattern.

mod indicator;
mod library;
mod mesh;
mod peaks;
mod schemes;

pub use indicator::{indicator_r, indicator_s, k_values};
pub use library::{
    check_distinctness, order_references, DistinctnessReport, LibrarySpec, PairDistance,
    ReferenceEntry, ReferenceLibrary, ReferenceSpec, DEFAULT_TRIM, TRIM_MARGIN,
};
pub use mesh::{composite_indicator, IndicatorField, SamplingMesh};
pub use peaks::{find_peaks, Peak, PeakList};
pub use schemes::{
    refine_peaks, refine_scheme_r, refine_scheme_s, scheme_r, scheme_s, SchemeROptions,
    SchemeROutput, SchemeRPass, SchemeSOptions, SchemeSOutput,
};
