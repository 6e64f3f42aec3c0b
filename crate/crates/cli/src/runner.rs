//! Disorder-ensemble runner: build, project, diagonalize, archive.
//!
//! Samples are processed in batches on a worker pool and appended to the
//! archive in sample order, so the archive bytes are identical for any
//! worker count. Interrupted runs resume at the first missing sample.

use rayon::prelude::*;
use syklab::sectors::{resolved_spectra, SectorSpectrum};

use crate::archive::{read_archive, ArchiveWriter, Header, Record};
use crate::config::RunConfig;
use crate::{CliError, CliResult};

/// Post-policy sector labels for the configured model, fixed a priori.
pub fn expected_sector_labels(config: &RunConfig) -> Vec<String> {
    use syklab::models::ModelFamily;
    match config.spec.family {
        ModelFamily::OverlappingClustersSyk { majoranas, window: 2, locality: 2 } => {
            match majoranas % 8 {
                0 => vec![
                    "parity=+1,ph=+1".into(),
                    "parity=+1,ph=-1".into(),
                    "parity=-1,ph=+1".into(),
                    "parity=-1,ph=-1".into(),
                ],
                2 | 6 => vec!["parity=+1".into()],
                4 => vec!["parity=+1".into(), "parity=-1".into()],
                _ => unreachable!("even N"),
            }
        }
        ModelFamily::OverlappingClustersSyk { .. } => {
            vec!["parity=+1".into(), "parity=-1".into()]
        }
        ModelFamily::GaugedClustersSyk { .. } => vec!["full".into()],
        _ => vec!["full".into()],
    }
}

/// Exact global degeneracy of the full spectrum relative to the archived
/// post-policy records (2 when the policy folded out a two-fold
/// degeneracy, else 1). Feeds the SFF plateau bookkeeping.
pub fn degeneracy_factor(config: &RunConfig) -> usize {
    use syklab::models::ModelFamily;
    match config.spec.family {
        ModelFamily::OverlappingClustersSyk { majoranas, window: 2, locality: 2 } => {
            if majoranas % 8 == 0 {
                1
            } else {
                2
            }
        }
        _ => 1,
    }
}

/// Short name of the sector scheme recorded in the header.
pub fn policy_name(config: &RunConfig) -> &'static str {
    use syklab::models::ModelFamily;
    match config.spec.family {
        ModelFamily::OverlappingClustersSyk { window: 2, locality: 2, .. } => "n-mod-8",
        ModelFamily::OverlappingClustersSyk { .. } => "parity",
        ModelFamily::GaugedClustersSyk { .. } => "gauge-all-plus",
        _ => "full",
    }
}

fn header_for(config: &RunConfig, labels: &[String]) -> Header {
    let mut fields = config.header_lines();
    fields.push(("policy".to_string(), policy_name(config).to_string()));
    fields.push(("sectors".to_string(), labels.join("|")));
    fields.push((
        "degeneracy_factor".to_string(),
        degeneracy_factor(config).to_string(),
    ));
    Header::new(fields)
}

/// Outcome of a run.
#[derive(Debug)]
pub struct RunSummary {
    pub archive_path: std::path::PathBuf,
    pub n_samples: u64,
    pub n_records: usize,
    pub resumed_from: Option<u64>,
}

/// Byte length of the record with `n` eigenvalues.
fn record_len(n: usize) -> u64 {
    (16 + 8 * n + 8) as u64
}

/// Run the configured ensemble into its eigenvalue archive.
///
/// Existing archives with a matching header are resumed at the first
/// missing sample; mismatched headers are an error rather than a silent
/// overwrite.
pub fn run_ensemble(config: &RunConfig) -> CliResult<RunSummary> {
    let labels = expected_sector_labels(config);
    let header = header_for(config, &labels);
    let path = config.archive_path();
    let budget = config.budget();

    let mut start_sample = 0u64;
    let mut resumed_from = None;
    let mut writer = if path.exists() {
        let existing = read_archive(&path)?;
        if existing.header != header {
            return Err(CliError::Archive(format!(
                "archive {} exists with a different configuration; \
                 remove it or change output_dir",
                path.display()
            )));
        }
        // Count leading complete samples (all sectors, in order) and the
        // byte offset where they end; everything past that is redone.
        let header_len = header_text_len(&std::fs::read(&path)?)?;
        let mut keep_bytes = header_len;
        let mut complete = 0u64;
        let mut idx = 0usize;
        let mut pos = header_len;
        while idx + labels.len() <= existing.records.len() {
            let full_set = (0..labels.len()).all(|k| {
                let r = &existing.records[idx + k];
                r.sample_id == complete && r.sector_index == k as u32
            });
            if !full_set {
                break;
            }
            for k in 0..labels.len() {
                pos += record_len(existing.records[idx + k].eigenvalues.len());
            }
            idx += labels.len();
            keep_bytes = pos;
            complete += 1;
        }
        start_sample = complete;
        resumed_from = Some(complete);
        if start_sample >= config.n_samples {
            let w = ArchiveWriter::resume(&path, keep_bytes)?;
            w.finalize()?;
            return Ok(RunSummary {
                archive_path: path,
                n_samples: config.n_samples,
                n_records: (config.n_samples as usize) * labels.len(),
                resumed_from,
            });
        }
        ArchiveWriter::resume(&path, keep_bytes)?
    } else {
        ArchiveWriter::create(&path, &header)?
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CliError::Config(format!("worker pool: {e}")))?;

    let batch = (config.workers * 8).clamp(8, 256) as u64;
    let mut n_records = (start_sample as usize) * labels.len();
    let mut next = start_sample;
    while next < config.n_samples {
        let end = (next + batch).min(config.n_samples);
        let ids: Vec<u64> = (next..end).collect();
        let results: Vec<(u64, Vec<SectorSpectrum>)> = pool.install(|| {
            ids.par_iter()
                .map(|&sample_id| {
                    let h = config.spec.build(sample_id)?;
                    let spectra = resolved_spectra(&h, budget)?;
                    Ok((sample_id, spectra))
                })
                .collect::<Result<_, syklab::Error>>()
        })?;
        for (sample_id, spectra) in results {
            if spectra.len() != labels.len() {
                return Err(CliError::Numerical(format!(
                    "sample {sample_id} produced {} sectors, expected {}",
                    spectra.len(),
                    labels.len()
                )));
            }
            for (sector_index, spectrum) in spectra.iter().enumerate() {
                debug_assert_eq!(spectrum.label(), labels[sector_index]);
                writer.append(&Record {
                    sample_id,
                    sector_index: sector_index as u32,
                    eigenvalues: spectrum.eigenvalues.clone(),
                })?;
                n_records += 1;
            }
        }
        next = end;
    }
    writer.finalize()?;
    Ok(RunSummary {
        archive_path: path,
        n_samples: config.n_samples,
        n_records,
        resumed_from,
    })
}

fn header_text_len(bytes: &[u8]) -> CliResult<u64> {
    let marker = b"end-header\n";
    let limit = bytes.len().min(1 << 20);
    bytes[..limit]
        .windows(marker.len())
        .position(|w| w == marker)
        .map(|p| (p + marker.len()) as u64)
        .ok_or_else(|| CliError::Archive("missing end-header marker".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;

    fn config_in(dir: &std::path::Path, extra: &str) -> RunConfig {
        let text = format!(
            "family = overlapping-clusters\nN = 10\nM = 2\nseed = 5\nsamples = 6\n\
             output_dir = {}\n{extra}",
            dir.display()
        );
        RunConfig::from_str(&text).unwrap()
    }

    #[test]
    fn worker_counts_do_not_change_bytes() {
        let dir1 = tempfile::tempdir().unwrap();
        let dir2 = tempfile::tempdir().unwrap();
        let c1 = config_in(dir1.path(), "workers = 1\n");
        let c8 = config_in(dir2.path(), "workers = 8\n");
        let s1 = run_ensemble(&c1).unwrap();
        let s8 = run_ensemble(&c8).unwrap();
        let b1 = std::fs::read(&s1.archive_path).unwrap();
        let b8 = std::fs::read(&s8.archive_path).unwrap();
        assert_eq!(b1, b8);
    }

    #[test]
    fn resume_produces_identical_archives() {
        let full_dir = tempfile::tempdir().unwrap();
        let split_dir = tempfile::tempdir().unwrap();

        let full = config_in(full_dir.path(), "");
        run_ensemble(&full).unwrap();

        // First a short run, then extend to the full sample count.
        let mut short = config_in(split_dir.path(), "");
        short.n_samples = 2;
        run_ensemble(&short).unwrap();
        let extended = config_in(split_dir.path(), "");
        let summary = run_ensemble(&extended).unwrap();
        assert_eq!(summary.resumed_from, Some(2));

        let a = std::fs::read(full.archive_path()).unwrap();
        let b = std::fs::read(extended.archive_path()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn crash_resume_recovers_partial_tail() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config_in(dir.path(), "");
        run_ensemble(&cfg).unwrap();
        let path = cfg.archive_path();
        let pristine = std::fs::read(&path).unwrap();

        // Chop the file mid-record to simulate a crash.
        let cut = pristine.len() - 37;
        std::fs::write(&path, &pristine[..cut]).unwrap();
        let summary = run_ensemble(&cfg).unwrap();
        assert!(summary.resumed_from.unwrap() < cfg.n_samples);
        let recovered = std::fs::read(&path).unwrap();
        assert_eq!(pristine, recovered);
    }

    #[test]
    fn header_mismatch_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config_in(dir.path(), "");
        run_ensemble(&cfg).unwrap();
        // Same stem comes from (model, seed); fake a clash by renaming a
        // different run's archive onto this one.
        let other_dir = tempfile::tempdir().unwrap();
        let other = config_in(other_dir.path(), "seed = 6\n");
        run_ensemble(&other).unwrap();
        std::fs::copy(other.archive_path(), cfg.archive_path()).unwrap();
        assert!(run_ensemble(&cfg).is_err());
    }
}
