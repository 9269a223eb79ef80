use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use defectprint::error::{AppError, Result, Stage};
use defectprint::export::{
    fingerprint_csv, fingerprint_json, parse_fingerprint_json, parse_spectrum_csv, spectral_function_csv, spectrum_csv,
    spectrum_svg, to_canonical_json, write_file,
};
use defectprint::ingest::{parse_candidates, parse_experiment, read_text, read_with};
use defectprint::pipeline::{self, InputPaths};
use defectprint_core::lineshape::{zero_phonon_fraction, PLSpectrum};
use defectprint_core::matching::match_candidates;
use defectprint_core::photophysics::{transition_dipole, DipoleMoment};
use defectprint_core::physcore::ev_to_nm;
use defectprint_core::vibronic::{delta_q, VibronicSummary};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "defectprint",
    version,
    about = "Optical fingerprints of point defects from first-principles inputs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Inputs {
    /// Run configuration (key = value)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Ground-state geometry
    #[arg(long)]
    ground: Option<PathBuf>,
    /// Excited-state geometry
    #[arg(long)]
    excited: Option<PathBuf>,
    /// Ground-state phonon modes
    #[arg(long)]
    phonons: Option<PathBuf>,
    /// Absorption (excitation) dipole record
    #[arg(long)]
    dipole_excitation: Option<PathBuf>,
    /// Emission dipole record
    #[arg(long)]
    dipole_emission: Option<PathBuf>,
}

impl From<&Inputs> for InputPaths {
    fn from(i: &Inputs) -> Self {
        InputPaths {
            config: i.config.clone(),
            ground: i.ground.clone(),
            excited: i.excited.clone(),
            phonons: i.phonons.clone(),
            dipole_excitation: i.dipole_excitation.clone(),
            dipole_emission: i.dipole_emission.clone(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args, Clone, Default)]
struct Output {
    /// Directory for output files; without it the main result goes to stdout
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Output formats (comma separated)
    #[arg(long, value_enum, value_delimiter = ',')]
    format: Vec<Format>,
}

impl Output {
    fn wants(&self, f: Format, default: &[Format]) -> bool {
        if self.format.is_empty() {
            default.contains(&f)
        } else {
            self.format.contains(&f)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and assemble the fingerprint
    Fingerprint {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        output: Output,
    },
    /// ΔQ, Huang–Rhys and Debye–Waller factors and S(ħω)
    Vibronic {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        output: Output,
    },
    /// Photoluminescence spectrum
    Lineshape {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        output: Output,
    },
    /// Transition dipoles, visibility and polarization angles
    Dipole {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Radiative and non-radiative rates and quantum efficiency
    Rates {
        #[command(flatten)]
        inputs: Inputs,
        /// ΔQ in amu^½·Å, instead of reading both geometries
        #[arg(long)]
        delta_q: Option<f64>,
    },
    /// Rank candidate fingerprints against an experimental record
    Match {
        /// Experiment record (JSON)
        #[arg(long)]
        experiment: PathBuf,
        /// Candidate files (fingerprint artifacts or candidate lists)
        #[arg(long, num_args = 1.., required = true)]
        candidates: Vec<PathBuf>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Re-export a fingerprint artifact or a spectrum CSV
    Export {
        /// fingerprint JSON or spectrum CSV
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn warn(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

/// Writes `contents` to `dir/name`, or to stdout without a directory.
fn emit(dir: Option<&Path>, name: &str, contents: &str) -> Result<()> {
    match dir {
        Some(d) => {
            let path = d.join(name);
            write_file(&path, contents)?;
            println!("{}", path.display());
            Ok(())
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn spectrum_meta(s: &PLSpectrum, label: &str) -> Vec<(&'static str, String)> {
    vec![
        ("defect_label", label.to_string()),
        ("zpl_energy_eV", format!("{:?}", s.zpl_energy)),
        ("gamma_damping_per_fs", format!("{:?}", s.gamma)),
        (
            "normalization",
            s.normalization.map_or("none", |n| n.as_str()).to_string(),
        ),
        ("scale_c", format!("{:?}", s.scale_c)),
        (
            "energy_axis",
            "emission energy; phonon sideband below the ZPL".to_string(),
        ),
    ]
}

fn spectrum_points(s: &PLSpectrum) -> Vec<(f64, f64)> {
    let l = s.l.as_deref().unwrap_or(&s.a);
    s.grid
        .values()
        .zip(l)
        .filter(|(e, _)| *e > 0.0)
        .map(|(e, &v)| (ev_to_nm(e).unwrap_or(f64::NAN), v))
        .collect()
}

fn vibronic_value(v: &VibronicSummary) -> Value {
    json!({
        "delta_q": v.delta_q,
        "total_hr": v.total_hr,
        "debye_waller": v.debye_waller,
        "excluded_hr": v.excluded_hr,
        "include_near_zero_modes": v.include_near_zero,
        "modes": v.projections.iter()
            .map(|p| json!({"index": p.mode_index, "energy_mev": p.energy_mev, "q": p.q, "s": p.s, "near_zero": p.near_zero}))
            .collect::<Vec<_>>(),
    })
}

fn dipole_value(d: &DipoleMoment) -> Value {
    json!({
        "mu_debye": d.mu.iter().map(|c| json!([c.re, c.im])).collect::<Vec<_>>(),
        "mu_sq_debye2": d.mu_sq,
        "in_plane_visibility": d.in_plane_visibility,
        "polarization_deg": d.polarization,
    })
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Fingerprint { inputs, output } => {
            let paths: InputPaths = (&inputs).into();
            let parsed = pipeline::load_config(&paths)?;
            warn(&parsed.warnings);
            let run = pipeline::run_fingerprint(&pipeline::load_dataset(&paths)?, &parsed)?;
            warn(&run.warnings[parsed.warnings.len()..]);
            let dir = output.out_dir.as_deref();
            let all = [Format::Json, Format::Csv, Format::Svg];
            let default: &[Format] = if dir.is_some() { &all } else { &[Format::Json] };
            if output.wants(Format::Json, default) {
                emit(dir, "fingerprint.json", &fingerprint_json(&run))?;
            }
            if output.wants(Format::Csv, default) {
                emit(
                    dir,
                    "spectrum.csv",
                    &spectrum_csv(&run.spectrum, &spectrum_meta(&run.spectrum, &run.config.label)),
                )?;
            }
            if output.wants(Format::Svg, default) {
                let title = format!("{} PL", run.config.label);
                emit(
                    dir,
                    "spectrum.svg",
                    &spectrum_svg(&spectrum_points(&run.spectrum), &title),
                )?;
            }
            Ok(())
        }
        Command::Vibronic { inputs, output } => {
            let paths: InputPaths = (&inputs).into();
            let parsed = pipeline::load_config(&paths)?;
            warn(&parsed.warnings);
            let s = pipeline::load_structures(&paths)?;
            let v = pipeline::run_vibronic(&s, &parsed.config)?;
            let dir = output.out_dir.as_deref();
            if output.wants(Format::Json, &[Format::Json]) {
                emit(dir, "vibronic.json", &to_canonical_json(&vibronic_value(&v)))?;
            }
            if output.wants(Format::Csv, if dir.is_some() { &[Format::Csv] } else { &[] }) {
                let meta = [("sigma_phonon_eV", format!("{:?}", parsed.config.sigma_phonon))];
                emit(
                    dir,
                    "spectral_function.csv",
                    &spectral_function_csv(&v.spectral_function, &meta),
                )?;
            }
            Ok(())
        }
        Command::Lineshape { inputs, output } => {
            let paths: InputPaths = (&inputs).into();
            let parsed = pipeline::load_config(&paths)?;
            warn(&parsed.warnings);
            let v = pipeline::run_vibronic(&pipeline::load_structures(&paths)?, &parsed.config)?;
            let s = pipeline::run_lineshape(&v, &parsed.config)?;
            warn(&s.warnings);
            let dir = output.out_dir.as_deref();
            if output.wants(Format::Csv, &[Format::Csv]) {
                emit(
                    dir,
                    "spectrum.csv",
                    &spectrum_csv(&s, &spectrum_meta(&s, &parsed.config.label)),
                )?;
            }
            if output.wants(Format::Svg, if dir.is_some() { &[Format::Svg] } else { &[] }) {
                emit(
                    dir,
                    "spectrum.svg",
                    &spectrum_svg(&spectrum_points(&s), &format!("{} PL", parsed.config.label)),
                )?;
            }
            if output.wants(Format::Json, &[]) {
                let value = json!({
                    "zpl_energy_ev": s.zpl_energy,
                    "zpl_weight": zero_phonon_fraction(&s, pipeline::ZPL_WINDOW),
                    "debye_waller": v.debye_waller,
                    "peak_energy_ev": s.a_spectrum().argmax_energy(),
                    "grid_points": s.grid.len(),
                });
                emit(dir, "lineshape.json", &to_canonical_json(&value))?;
            }
            Ok(())
        }
        Command::Dipole { inputs } => {
            let paths: InputPaths = (&inputs).into();
            let parsed = pipeline::load_config(&paths)?;
            warn(&parsed.warnings);
            let axis = parsed.config.crystal_axis_angle;
            let mut out = Map::new();
            for (name, path) in [
                ("excitation", &inputs.dipole_excitation),
                ("emission", &inputs.dipole_emission),
            ] {
                if let Some(p) = path {
                    let d =
                        transition_dipole(&pipeline::load_dipole(p)?, axis).map_err(AppError::stage(Stage::Dipole))?;
                    out.insert(name.into(), dipole_value(&d));
                }
            }
            if out.is_empty() {
                return Err(AppError::Input(
                    "give --dipole-excitation and/or --dipole-emission".into(),
                ));
            }
            print!("{}", to_canonical_json(&Value::Object(out)));
            Ok(())
        }
        Command::Rates { inputs, delta_q: dq } => {
            let paths: InputPaths = (&inputs).into();
            let parsed = pipeline::load_config(&paths)?;
            warn(&parsed.warnings);
            let cfg = &parsed.config;
            let emission_path = inputs
                .dipole_emission
                .as_deref()
                .ok_or_else(|| AppError::Input("missing required --dipole-emission".into()))?;
            let emission = transition_dipole(&pipeline::load_dipole(emission_path)?, cfg.crystal_axis_angle)
                .map_err(AppError::stage(Stage::Dipole))?;
            let dq = match (dq, &inputs.ground, &inputs.excited) {
                (Some(d), _, _) => d,
                (None, Some(g), Some(e)) => {
                    let g = read_with(g, defectprint::ingest::parse_geometry)?;
                    let e = read_with(e, defectprint::ingest::parse_geometry)?;
                    delta_q(&g, &e).map_err(AppError::stage(Stage::Vibronic))?
                }
                _ if cfg.w_if.is_some() => {
                    return Err(AppError::Input(
                        "the non-radiative rate needs --delta-q or --ground/--excited".into(),
                    ))
                }
                _ => 0.0,
            };
            let (report, nonrad) = pipeline::run_rates(&emission, dq, cfg)?;
            if let Some(n) = &nonrad {
                warn(&n.warnings);
            }
            let value = json!({
                "e0_ev": cfg.zpl_energy,
                "mu_sq_debye2": emission.mu_sq,
                "refractive_index": cfg.refractive_index,
                "purcell_factor": report.purcell_applied,
                "gamma_r": report.gamma_r,
                "tau_r_ns": report.tau_r_ns,
                "gamma_nr": report.gamma_nr,
                "tau_nr_ns": report.tau_nr_ns,
                "eta_pct": report.eta.map(|e| 100.0 * e),
                "total_lifetime_ns": report.total_lifetime_ns(),
            });
            print!("{}", to_canonical_json(&value));
            Ok(())
        }
        Command::Match {
            experiment,
            candidates,
            out_dir,
        } => {
            let exp = read_with(&experiment, parse_experiment)?;
            let mut all = Vec::new();
            for p in &candidates {
                all.extend(read_with(p, parse_candidates)?);
            }
            let ranking =
                match_candidates(&exp.record, &all, &exp.weights).map_err(AppError::stage(Stage::Matching))?;
            let rows: Vec<Value> = ranking
                .iter()
                .map(|m| {
                    let residuals: Map<String, Value> = m
                        .residuals
                        .iter()
                        .map(|(f, r)| (f.name().to_string(), json!(r)))
                        .collect();
                    json!({
                        "rank": m.rank,
                        "candidate_label": m.candidate_label,
                        "transition_order": m.transition_order,
                        "score": m.score,
                        "residuals": residuals,
                    })
                })
                .collect();
            let value = json!({ "experiment": exp.record.label, "ranking": rows });
            emit(out_dir.as_deref(), "match.json", &to_canonical_json(&value))
        }
        Command::Export { input, output } => {
            let dir = output.out_dir.as_deref();
            let text = read_text(&input)?;
            if input.extension().is_some_and(|e| e == "csv") {
                let table = parse_spectrum_csv(&text).map_err(|source| AppError::Parse {
                    file: input.display().to_string(),
                    source,
                })?;
                let label = table
                    .metadata
                    .iter()
                    .find(|(k, _)| k == "defect_label")
                    .map_or("spectrum", |(_, v)| v.as_str());
                if output.wants(Format::Svg, &[Format::Svg]) {
                    let l = if table.l.iter().all(|v| v.is_nan()) {
                        &table.a
                    } else {
                        &table.l
                    };
                    let points: Vec<(f64, f64)> = table.wavelength.iter().copied().zip(l.iter().copied()).collect();
                    emit(dir, "spectrum.svg", &spectrum_svg(&points, &format!("{label} PL")))?;
                }
                if output.wants(Format::Json, &[]) {
                    let meta: Map<String, Value> = table.metadata.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                    let value = json!({
                        "metadata": meta,
                        "energy_eV": table.energy,
                        "wavelength_nm": table.wavelength,
                        "A": table.a,
                        "L": table.l,
                    });
                    emit(dir, "spectrum.json", &to_canonical_json(&value))?;
                }
                if output.wants(Format::Csv, &[]) {
                    return Err(AppError::Input("input is already a spectrum CSV".into()));
                }
                return Ok(());
            }
            let fp = parse_fingerprint_json(&text)?;
            fp.check_consistency().map_err(AppError::stage(Stage::Assembly))?;
            if output.wants(Format::Json, &[Format::Json]) {
                let original: Value = serde_json::from_str(&text).map_err(|e| AppError::Input(e.to_string()))?;
                emit(dir, "fingerprint.json", &to_canonical_json(&original))?;
            }
            if output.wants(Format::Csv, &[]) {
                emit(dir, "fingerprint.csv", &fingerprint_csv(&fp))?;
            }
            if output.wants(Format::Svg, &[]) {
                return Err(AppError::Input("an SVG needs a spectrum CSV as input".into()));
            }
            Ok(())
        }
    }
}
