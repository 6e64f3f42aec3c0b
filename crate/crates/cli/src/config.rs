//! Flat key = value run configuration with include support.
//!
//! Recognized keys:
//!
//! ```text
//! family      = qudit | clusters-spin | gauged-clusters | overlapping-clusters | original
//! d, L, q     = qudit parameters
//! q_tilde, M  = cluster locality and window
//! N           = Majorana count
//! seed        = 64-bit RNG seed
//! samples     = disorder samples to run
//! diagnostics = comma list of dos, spacings, gap_ratio, sff, gatecost
//! output_dir  = output directory (default $SYKLAB_OUTPUT_ROOT or ./out)
//! workers     = worker threads for the sample loop
//! unfold_degree, unfold_trim, unfold_mode (auto|per_sample|ensemble)
//! sff_points, sff_tmin, sff_tmax
//! dos_bins    = auto | <count>
//! max_dim     = override the dense dimension cap
//! include     = another config file (processed in place)
//! ```
//!
//! Lines starting with `#` are comments; later keys override earlier
//! ones, so an include acts as a set of defaults when placed first.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use syklab::models::{ModelFamily, ModelSpec};

use crate::{CliError, CliResult};

/// Environment variable naming the default output root.
pub const OUTPUT_ROOT_ENV: &str = "SYKLAB_OUTPUT_ROOT";

/// Default dense-dimension cap for qudit models (3^10).
pub const QUDIT_DIM_CAP: usize = 59049;
/// Default Majorana-count cap for fermionic models.
pub const FERMION_N_CAP: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diagnostic {
    Dos,
    Spacings,
    GapRatio,
    Sff,
    Gatecost,
}

impl Diagnostic {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s.trim() {
            "dos" => Ok(Diagnostic::Dos),
            "spacings" => Ok(Diagnostic::Spacings),
            "gap_ratio" => Ok(Diagnostic::GapRatio),
            "sff" => Ok(Diagnostic::Sff),
            "gatecost" => Ok(Diagnostic::Gatecost),
            other => Err(CliError::Config(format!("unknown diagnostic '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Diagnostic::Dos => "dos",
            Diagnostic::Spacings => "spacings",
            Diagnostic::GapRatio => "gap_ratio",
            Diagnostic::Sff => "sff",
            Diagnostic::Gatecost => "gatecost",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnfoldMode {
    /// Per-sample when records have ≥ 50 levels, else ensemble staircase.
    Auto,
    PerSample,
    Ensemble,
}

/// A fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: ModelSpec,
    pub n_samples: u64,
    pub diagnostics: Vec<Diagnostic>,
    pub output_dir: PathBuf,
    pub workers: usize,
    pub unfold_degree: usize,
    pub unfold_trim: f64,
    pub unfold_mode: UnfoldMode,
    pub sff_points: usize,
    pub sff_tmin: f64,
    pub sff_tmax: f64,
    pub dos_bins: Option<usize>,
    pub max_dim: Option<usize>,
}

impl RunConfig {
    /// Parse a config file, following includes.
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let mut map = BTreeMap::new();
        read_into(path, &mut map, 0)?;
        Self::from_map(&map)
    }

    /// Parse config text (no base directory: includes are rejected).
    pub fn from_str(text: &str) -> CliResult<Self> {
        let mut map = BTreeMap::new();
        parse_into(text, None, &mut map, 0)?;
        Self::from_map(&map)
    }

    fn from_map(map: &BTreeMap<String, String>) -> CliResult<Self> {
        let get = |key: &str| map.get(key).map(|s| s.as_str());
        let parse_usize = |key: &str| -> CliResult<Option<usize>> {
            get(key)
                .map(|v| {
                    v.parse::<usize>()
                        .map_err(|_| CliError::Config(format!("{key} must be an integer, got '{v}'")))
                })
                .transpose()
        };
        let parse_f64 = |key: &str| -> CliResult<Option<f64>> {
            get(key)
                .map(|v| {
                    v.parse::<f64>()
                        .map_err(|_| CliError::Config(format!("{key} must be a number, got '{v}'")))
                })
                .transpose()
        };

        let family_name = get("family")
            .ok_or_else(|| CliError::Config("missing 'family'".into()))?;
        let need = |key: &str| -> CliResult<usize> {
            parse_usize(key)?.ok_or_else(|| {
                CliError::Config(format!("family '{family_name}' requires '{key}'"))
            })
        };
        let family = match family_name {
            "qudit" => ModelFamily::QuditSyk {
                d: need("d")?,
                sites: need("L")?,
                locality: need("q")?,
            },
            "clusters-spin" => ModelFamily::ClustersSpinSyk { clusters: need("L")? },
            "gauged-clusters" => ModelFamily::GaugedClustersSyk {
                cluster_size: need("M")?,
                clusters: need("L")?,
            },
            "overlapping-clusters" => ModelFamily::OverlappingClustersSyk {
                majoranas: need("N")?,
                window: need("M")?,
                locality: parse_usize("q_tilde")?.unwrap_or(2),
            },
            "original" => ModelFamily::OriginalSyk { majoranas: need("N")? },
            other => return Err(CliError::Config(format!("unknown family '{other}'"))),
        };
        let seed = get("seed")
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| CliError::Config(format!("seed must be a u64, got '{v}'")))
            })
            .transpose()?
            .unwrap_or(0);
        let spec = ModelSpec::new(family, seed);
        spec.validate().map_err(CliError::from)?;

        let n_samples = parse_usize("samples")?.unwrap_or(1) as u64;
        if n_samples < 1 {
            return Err(CliError::Config("samples must be >= 1".into()));
        }

        let diagnostics = match get("diagnostics") {
            Some(list) => {
                let mut ds: Vec<Diagnostic> = list
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(Diagnostic::parse)
                    .collect::<CliResult<_>>()?;
                ds.sort();
                ds.dedup();
                ds
            }
            None => vec![
                Diagnostic::Dos,
                Diagnostic::Spacings,
                Diagnostic::GapRatio,
                Diagnostic::Sff,
            ],
        };

        let output_dir = get("output_dir")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os(OUTPUT_ROOT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));

        let workers = parse_usize("workers")?.unwrap_or(1).max(1);

        let unfold_degree = parse_usize("unfold_degree")?.unwrap_or(7);
        let unfold_trim = parse_f64("unfold_trim")?.unwrap_or(0.02);
        if !(0.0..0.5).contains(&unfold_trim) {
            return Err(CliError::Config(format!(
                "unfold_trim must lie in [0, 0.5), got {unfold_trim}"
            )));
        }
        let unfold_mode = match get("unfold_mode").unwrap_or("auto") {
            "auto" => UnfoldMode::Auto,
            "per_sample" => UnfoldMode::PerSample,
            "ensemble" => UnfoldMode::Ensemble,
            other => {
                return Err(CliError::Config(format!("unknown unfold_mode '{other}'")))
            }
        };

        let sff_points = parse_usize("sff_points")?.unwrap_or(400);
        let sff_tmin = parse_f64("sff_tmin")?.unwrap_or(0.1);
        let sff_tmax = parse_f64("sff_tmax")?.unwrap_or(1e5);
        if !(sff_tmin > 0.0) || sff_tmax <= sff_tmin || sff_points < 2 {
            return Err(CliError::Config(
                "need 0 < sff_tmin < sff_tmax and sff_points >= 2".into(),
            ));
        }

        let dos_bins = match get("dos_bins") {
            None | Some("auto") => None,
            Some(v) => Some(v.parse::<usize>().map_err(|_| {
                CliError::Config(format!("dos_bins must be 'auto' or an integer, got '{v}'"))
            })?),
        };

        let max_dim = parse_usize("max_dim")?;

        let config = Self {
            spec,
            n_samples,
            diagnostics,
            output_dir,
            workers,
            unfold_degree,
            unfold_trim,
            unfold_mode,
            sff_points,
            sff_tmin,
            sff_tmax,
            dos_bins,
            max_dim,
        };
        config.check_capacity()?;
        Ok(config)
    }

    /// Desk-scale caps, overridable via max_dim: qudit dimensions up to
    /// 3^10, fermionic Majorana counts up to 26.
    fn check_capacity(&self) -> CliResult<()> {
        let dim = self.spec.hilbert_dim();
        let cap = match self.max_dim {
            Some(cap) => cap,
            None => match self.spec.family {
                ModelFamily::QuditSyk { .. } => QUDIT_DIM_CAP,
                _ => {
                    let n = self
                        .spec
                        .n_majorana()
                        .unwrap_or_else(|| 2 * self.spec.n_qubits().unwrap_or(0));
                    if n > FERMION_N_CAP {
                        return Err(CliError::Capacity(format!(
                            "N = {n} exceeds the desk-scale cap of {FERMION_N_CAP} \
                             Majoranas (set max_dim to override)"
                        )));
                    }
                    return Ok(());
                }
            },
        };
        if dim > cap {
            return Err(CliError::Capacity(format!(
                "Hilbert dimension {dim} exceeds the cap {cap} (set max_dim to override)"
            )));
        }
        Ok(())
    }

    /// Dense budget actually used for builds.
    pub fn budget(&self) -> syklab::dense::DenseBudget {
        syklab::dense::DenseBudget::new(self.max_dim.unwrap_or(QUDIT_DIM_CAP.max(1 << 14)))
    }

    /// File-name stem encoding the model and seed.
    pub fn stem(&self) -> String {
        format!("{}_seed{}", self.spec.describe(), self.spec.seed)
    }

    /// Archive path inside the output directory.
    pub fn archive_path(&self) -> PathBuf {
        self.output_dir.join(format!("{}.eigs", self.stem()))
    }

    /// Header echo of the model parameters, for the archive. The run
    /// length is deliberately absent: archives can be extended by
    /// re-running with more samples.
    pub fn header_lines(&self) -> Vec<(String, String)> {
        let mut lines = vec![("spec".to_string(), self.spec.describe())];
        let mut push = |k: &str, v: String| lines.push((k.to_string(), v));
        match self.spec.family {
            ModelFamily::QuditSyk { d, sites, locality } => {
                push("family", "qudit".into());
                push("d", d.to_string());
                push("L", sites.to_string());
                push("q", locality.to_string());
            }
            ModelFamily::ClustersSpinSyk { clusters } => {
                push("family", "clusters-spin".into());
                push("L", clusters.to_string());
            }
            ModelFamily::GaugedClustersSyk { cluster_size, clusters } => {
                push("family", "gauged-clusters".into());
                push("M", cluster_size.to_string());
                push("L", clusters.to_string());
            }
            ModelFamily::OverlappingClustersSyk { majoranas, window, locality } => {
                push("family", "overlapping-clusters".into());
                push("N", majoranas.to_string());
                push("M", window.to_string());
                push("q_tilde", locality.to_string());
            }
            ModelFamily::OriginalSyk { majoranas } => {
                push("family", "original".into());
                push("N", majoranas.to_string());
            }
        }
        push("seed", self.spec.seed.to_string());
        lines
    }
}

fn read_into(path: &Path, map: &mut BTreeMap<String, String>, depth: usize) -> CliResult<()> {
    if depth > 8 {
        return Err(CliError::Config(format!(
            "include depth exceeded at {}",
            path.display()
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Config(format!("cannot read config {}: {e}", path.display()))
    })?;
    parse_into(&text, path.parent(), map, depth)
}

fn parse_into(
    text: &str,
    base: Option<&Path>,
    map: &mut BTreeMap<String, String>,
    depth: usize,
) -> CliResult<()> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("line {} is not 'key = value': '{raw}'", lineno + 1))
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key == "include" {
            let base = base.ok_or_else(|| {
                CliError::Config("include is only allowed in file-based configs".into())
            })?;
            read_into(&base.join(&value), map, depth + 1)?;
        } else {
            map.insert(key, value);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_overlapping_config() {
        let cfg = RunConfig::from_str(
            "family = overlapping-clusters\nN = 12\nM = 2\nseed = 7\nsamples = 4\n",
        )
        .unwrap();
        assert_eq!(cfg.n_samples, 4);
        assert_eq!(cfg.spec.seed, 7);
        assert_eq!(cfg.stem(), "overlap_N12_M2_qt2_seed7");
        assert_eq!(cfg.unfold_degree, 7);
        assert!((cfg.unfold_trim - 0.02).abs() < 1e-15);
    }

    #[test]
    fn comments_and_overrides() {
        let cfg = RunConfig::from_str(
            "# a comment\nfamily = qudit\nd = 3\nL = 4\nq = 2\nsamples = 10\nsamples = 20\n",
        )
        .unwrap();
        assert_eq!(cfg.n_samples, 20);
    }

    #[test]
    fn diagnostics_list_parses_and_dedups() {
        let cfg = RunConfig::from_str(
            "family = original\nN = 8\ndiagnostics = sff, dos, sff\n",
        )
        .unwrap();
        assert_eq!(cfg.diagnostics, vec![Diagnostic::Dos, Diagnostic::Sff]);
    }

    #[test]
    fn bad_inputs_are_config_errors() {
        assert!(RunConfig::from_str("family = nope\n").is_err());
        assert!(RunConfig::from_str("family = qudit\nd = 3\nL = 2\nq = 5\n").is_err());
        assert!(RunConfig::from_str("family = original\nN = 8\nsamples = zero\n").is_err());
        assert!(RunConfig::from_str("junk line\n").is_err());
    }

    #[test]
    fn capacity_caps_apply() {
        let err = RunConfig::from_str("family = original\nN = 30\n").unwrap_err();
        assert_eq!(err.exit_code(), 3);
        // Overridable:
        let ok = RunConfig::from_str("family = original\nN = 30\nmax_dim = 40000\n");
        assert!(ok.is_ok());
        // Qudit cap:
        let err = RunConfig::from_str("family = qudit\nd = 3\nL = 11\nq = 2\n").unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn includes_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("base.cfg"), "family = original\nN = 8\nsamples = 5\n")
            .unwrap();
        std::fs::write(
            dir.path().join("run.cfg"),
            "include = base.cfg\nsamples = 9\nseed = 3\n",
        )
        .unwrap();
        let cfg = RunConfig::from_file(&dir.path().join("run.cfg")).unwrap();
        assert_eq!(cfg.n_samples, 9);
        assert_eq!(cfg.spec.seed, 3);
    }
}
