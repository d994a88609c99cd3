//! Command-line front end: scene synthesis, reference libraries and the locating pipelines.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use farloc::forward::{add_noise, synthesize_scene, IncidentWave, Scene};
use farloc::locate::{
    check_distinctness, composite_indicator, order_references, refine_scheme_r, refine_scheme_s,
    scheme_r, scheme_s, IndicatorField, LibrarySpec, PeakList, ReferenceLibrary, SamplingMesh,
    SchemeROptions, SchemeSOptions,
};
use farloc::sphquad::{build_lebedev, TangentField, DEFAULT_LEBEDEV_POINTS};
use farloc::Vec3;

/// Spacing of the optional local refinement pass, in wavelengths.
pub const REFINE_H: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Synthesize,
    LocateS,
    LocateR,
    Refgen,
    CheckLib,
    Composite,
}

#[derive(Debug, Parser)]
#[command(
    name = "farloc",
    version,
    about = "Locate scatterers from a single far-field measurement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Compute the far field of a scene and write it as a pattern file.
    Synthesize(Options),
    /// Small-scatterer locating scheme.
    LocateS(Options),
    /// Reference-matched locating scheme.
    LocateR(Options),
    /// Compute and store reference far fields for a library description.
    Refgen(Options),
    /// Report pairwise distinctness of a stored library.
    CheckLib(Options),
    /// Node-wise maximum of stored indicator CSV files.
    Composite(Options),
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Scene JSON (components and incident wave).
    #[arg(long)]
    pub scene: Option<PathBuf>,
    /// Library description JSON (refgen) or stored library directory.
    #[arg(long)]
    pub library: Option<PathBuf>,
    /// Measured far-field pattern file; replaces synthesis from the scene.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Indicator CSV files to combine.
    #[arg(long, num_args = 1..)]
    pub inputs: Vec<PathBuf>,
    /// Output file (synthesize) or directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Lower mesh corner as `x,y,z`.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, default_values_t = [-2.0, -2.0, -2.0])]
    pub mesh_min: Vec<f64>,
    /// Upper mesh corner as `x,y,z`.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, default_values_t = [2.0, 2.0, 2.0])]
    pub mesh_max: Vec<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub h: f64,
    /// Lebedev rule size (default 590; refgen defaults to the description's value).
    #[arg(long)]
    pub lebedev: Option<usize>,
    /// Relative noise level.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.7)]
    pub threshold: f64,
    /// Minimum peak separation (default half a wavelength).
    #[arg(long)]
    pub min_sep: Option<f64>,
    #[arg(long, default_value_t = 0.2)]
    pub eps_accept: f64,
    /// Distinctness tolerance for library checks.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    /// Re-locate peaks on a local mesh with spacing 0.01.
    #[arg(long)]
    pub refine: bool,
}

/// Fully resolved settings of one run; echoed into the manifest.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub scene_path: Option<PathBuf>,
    pub library_path: Option<PathBuf>,
    pub data_path: Option<PathBuf>,
    pub input_paths: Vec<PathBuf>,
    pub output_path: PathBuf,
    pub mesh_min: [f64; 3],
    pub mesh_max: [f64; 3],
    pub h: f64,
    pub n_lebedev: Option<usize>,
    pub delta: f64,
    pub seed: u64,
    pub threshold: f64,
    pub min_sep: Option<f64>,
    pub eps_accept: f64,
    pub tol: f64,
    pub refine: bool,
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig> {
        let (command, o) = match self.command {
            CliCommand::Synthesize(o) => (Command::Synthesize, o),
            CliCommand::LocateS(o) => (Command::LocateS, o),
            CliCommand::LocateR(o) => (Command::LocateR, o),
            CliCommand::Refgen(o) => (Command::Refgen, o),
            CliCommand::CheckLib(o) => (Command::CheckLib, o),
            CliCommand::Composite(o) => (Command::Composite, o),
        };
        RunConfig::from_options(command, o)
    }
}

impl RunConfig {
    pub fn from_options(command: Command, o: Options) -> Result<Self> {
        let triple = |v: &[f64], flag: &str| -> Result<[f64; 3]> {
            <[f64; 3]>::try_from(v)
                .map_err(|_| anyhow::anyhow!("{flag} takes exactly three comma-separated values"))
        };
        Ok(RunConfig {
            command,
            scene_path: o.scene,
            library_path: o.library,
            data_path: o.data,
            input_paths: o.inputs,
            output_path: o.out,
            mesh_min: triple(&o.mesh_min, "--mesh-min")?,
            mesh_max: triple(&o.mesh_max, "--mesh-max")?,
            h: o.h,
            n_lebedev: o.lebedev,
            delta: o.delta,
            seed: o.seed,
            threshold: o.threshold,
            min_sep: o.min_sep,
            eps_accept: o.eps_accept,
            tol: o.tol,
            refine: o.refine,
        })
    }

    /// Defaults matching the command-line defaults.
    pub fn new(command: Command, output_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            scene_path: None,
            library_path: None,
            data_path: None,
            input_paths: Vec::new(),
            output_path: output_path.into(),
            mesh_min: [-2.0; 3],
            mesh_max: [2.0; 3],
            h: 0.05,
            n_lebedev: None,
            delta: 0.0,
            seed: 0,
            threshold: 0.7,
            min_sep: None,
            eps_accept: 0.2,
            tol: 1e-3,
            refine: false,
        }
    }

    fn validate(&self) -> Result<()> {
        ensure!(
            self.delta >= 0.0 && self.delta.is_finite(),
            "--delta must be nonnegative"
        );
        ensure!(
            self.threshold > 0.0 && self.threshold < 1.0,
            "--threshold must lie in (0, 1)"
        );
        ensure!(self.eps_accept >= 0.0, "--eps-accept must be nonnegative");
        ensure!(self.tol >= 0.0, "--tol must be nonnegative");
        ensure!(self.h > 0.0 && self.h.is_finite(), "--h must be positive");
        if self.refine {
            ensure!(
                self.h >= REFINE_H,
                "--refine needs --h of at least {REFINE_H}"
            );
        }
        let needs = |p: &Option<PathBuf>, flag: &str| -> Result<()> {
            ensure!(p.is_some(), "{flag} is required for this command");
            Ok(())
        };
        match self.command {
            Command::Synthesize => needs(&self.scene_path, "--scene")?,
            Command::LocateS => {
                ensure!(
                    self.scene_path.is_some() || self.data_path.is_some(),
                    "--scene or --data is required for this command"
                )
            }
            Command::LocateR => {
                ensure!(
                    self.scene_path.is_some() || self.data_path.is_some(),
                    "--scene or --data is required for this command"
                );
                needs(&self.library_path, "--library")?;
            }
            Command::Refgen | Command::CheckLib => needs(&self.library_path, "--library")?,
            Command::Composite => ensure!(
                !self.input_paths.is_empty(),
                "--inputs is required for this command"
            ),
        }
        Ok(())
    }

    fn mesh(&self) -> Result<SamplingMesh> {
        Ok(SamplingMesh::new(
            Vec3::from(self.mesh_min),
            Vec3::from(self.mesh_max),
            self.h,
        )?)
    }

    fn lebedev(&self) -> usize {
        self.n_lebedev.unwrap_or(DEFAULT_LEBEDEV_POINTS)
    }
}

/// What a run produced.
#[derive(Debug, Default)]
pub struct Report {
    pub summary: String,
    pub files: Vec<PathBuf>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    core_version: &'static str,
    seed: u64,
    config: &'a RunConfig,
    outputs: &'a [PathBuf],
}

/// Executes one command. Diagnostics that do not stop the run go to stderr.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let mut report = match config.command {
        Command::Synthesize => synthesize(config)?,
        Command::LocateS => locate_s(config)?,
        Command::LocateR => locate_r(config)?,
        Command::Refgen => refgen(config)?,
        Command::CheckLib => check_lib(config)?,
        Command::Composite => composite(config)?,
    };
    let manifest_path = match config.command {
        Command::Synthesize => sibling(&config.output_path, "manifest.json"),
        _ => config.output_path.join("manifest.json"),
    };
    let manifest = Manifest {
        tool: "farloc",
        version: env!("CARGO_PKG_VERSION"),
        core_version: farloc::VERSION,
        seed: config.seed,
        config,
        outputs: &report.files,
    };
    fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)
        .with_context(|| format!("cannot write {}", manifest_path.display()))?;
    report.files.push(manifest_path);
    Ok(report)
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".");
    name.push(suffix);
    path.with_file_name(name)
}

fn read_scene(path: &Path) -> Result<Scene> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read scene {}", path.display()))?;
    Scene::from_json(&text).with_context(|| format!("malformed scene {}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| {
        format!("cannot create {}", path.display())
    })?))
}

fn out_dir(config: &RunConfig) -> Result<&Path> {
    let dir = config.output_path.as_path();
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    Ok(dir)
}

/// Synthesized (and possibly noisy) data for the scene.
fn scene_data(scene: &Scene, config: &RunConfig) -> Result<TangentField> {
    if !scene.is_sparse() {
        eprintln!(
            "warning: components closer than one wavelength (min separation {:.3})",
            scene.min_separation().unwrap_or(0.0)
        );
    }
    let grid = build_lebedev(config.lebedev())?;
    let clean = synthesize_scene(scene, &grid)?;
    Ok(add_noise(&clean, config.delta, config.seed)?)
}

/// Measured data and the wave it was taken with.
fn load_data(config: &RunConfig) -> Result<(TangentField, IncidentWave)> {
    let scene = config.scene_path.as_deref().map(read_scene).transpose()?;
    match &config.data_path {
        Some(path) => {
            let file =
                File::open(path).with_context(|| format!("cannot read data {}", path.display()))?;
            let field = TangentField::read_text_lebedev(BufReader::new(file))
                .with_context(|| format!("malformed far-field file {}", path.display()))?;
            let wave = scene.map(|s| s.wave).unwrap_or_default();
            Ok((field, wave))
        }
        None => {
            let scene = scene.expect("validated");
            Ok((scene_data(&scene, config)?, scene.wave))
        }
    }
}

fn synthesize(config: &RunConfig) -> Result<Report> {
    let scene = read_scene(config.scene_path.as_deref().expect("validated"))?;
    let field = scene_data(&scene, config)?;
    let out = &config.output_path;
    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    let mut w = create(out)?;
    field.write_text(&mut w)?;
    w.flush()?;
    Ok(Report {
        summary: format!(
            "far field of {} component(s) on {} nodes, noise level {}, written to {}\n",
            scene.components.len(),
            field.grid().len(),
            config.delta,
            out.display()
        ),
        files: vec![out.clone()],
    })
}

fn write_field(
    dir: &Path,
    stem: &str,
    field: &IndicatorField,
    files: &mut Vec<PathBuf>,
) -> Result<()> {
    let vtk = dir.join(format!("{stem}.vtk"));
    let mut w = create(&vtk)?;
    field.write_vtk(&mut w, stem)?;
    w.flush()?;
    let csv = dir.join(format!("{stem}.csv"));
    let mut w = create(&csv)?;
    field.write_csv(&mut w)?;
    w.flush()?;
    files.push(vtk);
    files.push(csv);
    Ok(())
}

fn write_peaks(dir: &Path, name: &str, peaks: &PeakList, files: &mut Vec<PathBuf>) -> Result<()> {
    let path = dir.join(name);
    let mut w = create(&path)?;
    peaks.write_csv(&mut w)?;
    w.flush()?;
    files.push(path);
    Ok(())
}

fn describe_peaks(out: &mut String, title: &str, peaks: &PeakList) {
    let _ = writeln!(out, "{title}: {} peak(s)", peaks.len());
    for p in peaks.iter() {
        let l = p.location;
        let _ = write!(
            out,
            "  ({:+.3}, {:+.3}, {:+.3})  value {:.4}",
            l[0], l[1], l[2], p.value
        );
        if let Some(id) = &p.reference_id {
            let _ = write!(out, "  reference {id}");
        }
        out.push('\n');
    }
}

fn finish(dir: &Path, summary: String, mut files: Vec<PathBuf>) -> Result<Report> {
    let path = dir.join("summary.txt");
    fs::write(&path, &summary)?;
    files.push(path);
    Ok(Report { summary, files })
}

fn locate_s(config: &RunConfig) -> Result<Report> {
    let (field, wave) = load_data(config)?;
    let mesh = config.mesh()?;
    let dir = out_dir(config)?;
    let opts = SchemeSOptions {
        threshold: config.threshold,
        min_sep: config.min_sep,
    };
    let out = scheme_s(&field, &wave, &mesh, &opts)?;
    let mut files = Vec::new();
    write_field(dir, "indicator", &out.indicator, &mut files)?;
    write_peaks(dir, "peaks.csv", &out.peaks, &mut files)?;

    let [nx, ny, nz] = mesh.dims();
    let mut summary = format!(
        "small-scatterer scheme on a {nx}x{ny}x{nz} mesh, threshold {}\n",
        config.threshold
    );
    describe_peaks(&mut summary, "peaks", &out.peaks);
    if config.refine {
        let fine = refine_scheme_s(&field, &wave, &out, REFINE_H)?;
        write_peaks(dir, "peaks_refined.csv", &fine, &mut files)?;
        describe_peaks(&mut summary, "refined peaks", &fine);
    }
    finish(dir, summary, files)
}

fn load_library(path: &Path) -> Result<ReferenceLibrary> {
    ReferenceLibrary::load(path).with_context(|| format!("cannot load library {}", path.display()))
}

fn locate_r(config: &RunConfig) -> Result<Report> {
    let (field, wave) = load_data(config)?;
    let lib = load_library(config.library_path.as_deref().expect("validated"))?;
    ensure!(
        lib.wave() == &wave,
        "library was computed for a different incident wave than the data"
    );
    ensure!(
        lib.grid().is_none_or(|g| **g == **field.grid()),
        "library and data use different quadrature grids"
    );
    let distinct = check_distinctness(&lib, config.tol)?;
    for p in distinct.violations() {
        eprintln!(
            "warning: references {} and {} are not distinct (relative distance {:.2e} < {})",
            p.first, p.second, p.distance, config.tol
        );
    }
    let lib = order_references(&lib);
    let mesh = config.mesh()?;
    let dir = out_dir(config)?;
    let out = scheme_r(
        &field,
        &lib,
        &wave,
        &mesh,
        &SchemeROptions {
            eps_accept: config.eps_accept,
        },
    )?;

    let mut files = Vec::new();
    let mut summary = format!(
        "reference-matched scheme, eps_accept {}\n",
        config.eps_accept
    );
    for (k, pass) in out.passes.iter().enumerate() {
        let stem = format!("pass_{}_{}", k + 1, pass.reference_id);
        let vtk = dir.join(format!("{stem}.vtk"));
        let mut w = create(&vtk)?;
        pass.display().write_vtk(&mut w, &stem)?;
        w.flush()?;
        files.push(vtk);
        let csv = dir.join(format!("{stem}.csv"));
        let mut w = create(&csv)?;
        pass.indicator.write_csv(&mut w)?;
        w.flush()?;
        files.push(csv);
        let _ = writeln!(
            summary,
            "pass {} ({}): {} detection(s), best |I_r - 1| = {}",
            k + 1,
            pass.reference_id,
            pass.detections.len(),
            pass.best_deviation
                .map_or("n/a".into(), |d| format!("{d:.4}"))
        );
    }
    if out.passes.len() < lib.len() {
        let _ = writeln!(
            summary,
            "search region exhausted after {} pass(es)",
            out.passes.len()
        );
    }
    write_peaks(dir, "peaks.csv", &out.peaks, &mut files)?;
    describe_peaks(&mut summary, "detections", &out.peaks);
    if config.refine {
        let fine = refine_scheme_r(&field, &lib, &wave, mesh.h(), &out, REFINE_H)?;
        write_peaks(dir, "peaks_refined.csv", &fine, &mut files)?;
        describe_peaks(&mut summary, "refined detections", &fine);
    }
    finish(dir, summary, files)
}

fn refgen(config: &RunConfig) -> Result<Report> {
    let path = config.library_path.as_deref().expect("validated");
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut spec = LibrarySpec::from_json(&text)
        .with_context(|| format!("malformed library description {}", path.display()))?;
    if let Some(n) = config.n_lebedev {
        spec.lebedev = n;
    }
    let lib = spec.build()?;
    let dir = out_dir(config)?;
    lib.save(dir)?;
    let mut summary = format!("{} reference(s) on {} nodes\n", lib.len(), spec.lebedev);
    for e in lib.entries() {
        let _ = writeln!(
            summary,
            "  {}  norm {:.6e}  trim radius {:.3}",
            e.id(),
            e.norm(),
            e.trim_radius()
        );
    }
    let files = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    finish(dir, summary, files)
}

fn check_lib(config: &RunConfig) -> Result<Report> {
    let lib = load_library(config.library_path.as_deref().expect("validated"))?;
    let report = check_distinctness(&lib, config.tol)?;
    let dir = out_dir(config)?;
    let path = dir.join("distinctness.json");
    fs::write(&path, serde_json::to_string_pretty(&report)?)?;
    let mut summary = format!("distinctness at tolerance {}\n", config.tol);
    for p in &report.pairs {
        let _ = writeln!(
            summary,
            "  {} vs {}: {:.4e}{}",
            p.first,
            p.second,
            p.distance,
            if p.too_close { "  TOO CLOSE" } else { "" }
        );
    }
    let _ = writeln!(
        summary,
        "{}",
        if report.passes() {
            "all pairs distinct"
        } else {
            "library fails the distinctness check"
        }
    );
    let out = finish(dir, summary, vec![path])?;
    if !report.passes() {
        print!("{}", out.summary);
        bail!(
            "{} pair(s) of references are closer than {}",
            report.violations().count(),
            config.tol
        );
    }
    Ok(out)
}

fn composite(config: &RunConfig) -> Result<Report> {
    let fields = config
        .input_paths
        .iter()
        .map(|p| {
            let f = File::open(p).with_context(|| format!("cannot read {}", p.display()))?;
            IndicatorField::read_csv(BufReader::new(f))
                .with_context(|| format!("malformed indicator {}", p.display()))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = composite_indicator(&fields)?;
    let dir = out_dir(config)?;
    let mut files = Vec::new();
    write_field(dir, "composite", &c, &mut files)?;
    let p = c.mesh().point(c.argmax());
    let summary = format!(
        "composite of {} field(s); maximum {:.4} at ({:+.3}, {:+.3}, {:+.3})\n",
        fields.len(),
        c.max(),
        p[0],
        p[1],
        p[2]
    );
    finish(dir, summary, files)
}
