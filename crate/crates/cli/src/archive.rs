//! Self-describing eigenvalue archive: text header, binary records.
//!
//! Layout (version 1):
//!
//! ```text
//! syklab-archive v1\n
//! key = value\n        (spec echo, policy, sector labels)
//! ...
//! end-header\n
//! ```
//!
//! followed by binary records, each
//!
//! ```text
//! u64 sample_id | u32 sector_index | u32 n | n × f64 (LE) | u64 digest
//! ```
//!
//! where the digest is the first 8 bytes of SHA-256 over the record's
//! preceding bytes. Archives are append-only during a run; a truncated
//! or corrupt tail record marks the resume point. A completed run writes
//! a whole-file SHA-256 sidecar next to the archive.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::{CliError, CliResult};

pub const MAGIC: &str = "syklab-archive v1";

/// One sector record of one disorder sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub sample_id: u64,
    pub sector_index: u32,
    pub eigenvalues: Vec<f64>,
}

/// Parsed archive header.
#[derive(Debug, Clone, PartialEq)]
pub struct Header {
    pub fields: BTreeMap<String, String>,
}

impl Header {
    pub fn new(fields: impl IntoIterator<Item = (String, String)>) -> Self {
        Self {
            fields: fields.into_iter().collect(),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.get(key).map(|s| s.as_str())
    }

    fn to_text(&self) -> String {
        let mut out = String::from(MAGIC);
        out.push('\n');
        for (k, v) in &self.fields {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out.push_str("end-header\n");
        out
    }
}

fn record_bytes(record: &Record) -> Vec<u8> {
    let mut buf =
        Vec::with_capacity(8 + 4 + 4 + 8 * record.eigenvalues.len() + 8);
    buf.extend_from_slice(&record.sample_id.to_le_bytes());
    buf.extend_from_slice(&record.sector_index.to_le_bytes());
    buf.extend_from_slice(&(record.eigenvalues.len() as u32).to_le_bytes());
    for e in &record.eigenvalues {
        buf.extend_from_slice(&e.to_le_bytes());
    }
    let digest = Sha256::digest(&buf);
    buf.extend_from_slice(&digest[..8]);
    buf
}

/// Append-only archive writer.
pub struct ArchiveWriter {
    file: BufWriter<File>,
    path: PathBuf,
}

impl ArchiveWriter {
    /// Create a fresh archive with the given header (truncates).
    pub fn create(path: &Path, header: &Header) -> CliResult<Self> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut file = BufWriter::new(File::create(path)?);
        file.write_all(header.to_text().as_bytes())?;
        Ok(Self {
            file,
            path: path.to_path_buf(),
        })
    }

    /// Reopen an existing archive for appending after `keep` valid
    /// records; anything past them (a partial tail) is truncated away.
    pub fn resume(path: &Path, keep_bytes: u64) -> CliResult<Self> {
        let file = OpenOptions::new().write(true).open(path)?;
        file.set_len(keep_bytes)?;
        let mut file = BufWriter::new(file);
        file.seek(SeekFrom::End(0))?;
        Ok(Self {
            file,
            path: path.to_path_buf(),
        })
    }

    pub fn append(&mut self, record: &Record) -> CliResult<()> {
        self.file.write_all(&record_bytes(record))?;
        Ok(())
    }

    /// Flush and write the whole-file checksum sidecar.
    pub fn finalize(mut self) -> CliResult<()> {
        self.file.flush()?;
        drop(self.file);
        let digest = file_sha256(&self.path)?;
        std::fs::write(sidecar_path(&self.path), format!("{digest}\n"))?;
        Ok(())
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".sha256");
    path.with_file_name(name)
}

pub fn file_sha256(path: &Path) -> CliResult<String> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 65536];
    loop {
        let n = reader.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(format!("{:x}", hasher.finalize()))
}

/// Fully parsed archive contents.
#[derive(Debug)]
pub struct ArchiveContents {
    pub header: Header,
    pub records: Vec<Record>,
    /// Byte offset just past the last valid record (the resume point).
    pub valid_bytes: u64,
    /// True when a partial or corrupt tail was dropped.
    pub truncated_tail: bool,
}

/// Read an archive, verifying per-record digests. A corrupt tail is
/// reported rather than failing: resumed runs overwrite it.
pub fn read_archive(path: &Path) -> CliResult<ArchiveContents> {
    let bytes = std::fs::read(path)?;
    let header_end = find_header_end(&bytes)?;
    let header_text = std::str::from_utf8(&bytes[..header_end])
        .map_err(|_| CliError::Archive("header is not UTF-8".into()))?;
    let header = parse_header(header_text)?;

    let mut records = Vec::new();
    let mut pos = header_end;
    let mut truncated_tail = false;
    loop {
        match parse_record(&bytes[pos..]) {
            Some((record, used)) => {
                records.push(record);
                pos += used;
            }
            None => {
                truncated_tail = pos < bytes.len();
                break;
            }
        }
    }
    Ok(ArchiveContents {
        header,
        records,
        valid_bytes: pos as u64,
        truncated_tail,
    })
}

fn find_header_end(bytes: &[u8]) -> CliResult<usize> {
    let marker = b"end-header\n";
    let limit = bytes.len().min(1 << 20);
    let hay = &bytes[..limit];
    hay.windows(marker.len())
        .position(|w| w == marker)
        .map(|p| p + marker.len())
        .ok_or_else(|| CliError::Archive("missing end-header marker".into()))
}

fn parse_header(text: &str) -> CliResult<Header> {
    let mut lines = text.lines();
    let first = lines.next().unwrap_or_default();
    if first != MAGIC {
        return Err(CliError::Archive(format!(
            "unsupported archive version line '{first}'"
        )));
    }
    let mut fields = BTreeMap::new();
    for line in lines {
        if line == "end-header" {
            break;
        }
        if let Some((k, v)) = line.split_once('=') {
            fields.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    Ok(Header { fields })
}

fn parse_record(bytes: &[u8]) -> Option<(Record, usize)> {
    if bytes.len() < 16 {
        return None;
    }
    let sample_id = u64::from_le_bytes(bytes[0..8].try_into().ok()?);
    let sector_index = u32::from_le_bytes(bytes[8..12].try_into().ok()?);
    let n = u32::from_le_bytes(bytes[12..16].try_into().ok()?) as usize;
    let payload_len = 16 + 8 * n;
    let total = payload_len + 8;
    if bytes.len() < total {
        return None;
    }
    let digest = Sha256::digest(&bytes[..payload_len]);
    if digest[..8] != bytes[payload_len..total] {
        return None;
    }
    let mut eigenvalues = Vec::with_capacity(n);
    for k in 0..n {
        let off = 16 + 8 * k;
        eigenvalues.push(f64::from_le_bytes(bytes[off..off + 8].try_into().ok()?));
    }
    Some((
        Record {
            sample_id,
            sector_index,
            eigenvalues,
        },
        total,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header() -> Header {
        Header::new([
            ("spec".to_string(), "test".to_string()),
            ("samples".to_string(), "2".to_string()),
        ])
    }

    fn record(sample: u64, sector: u32) -> Record {
        Record {
            sample_id: sample,
            sector_index: sector,
            eigenvalues: vec![-1.5, 0.25, 3.125],
        }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.eigs");
        let mut w = ArchiveWriter::create(&path, &header()).unwrap();
        w.append(&record(0, 0)).unwrap();
        w.append(&record(0, 1)).unwrap();
        w.append(&record(1, 0)).unwrap();
        w.finalize().unwrap();

        let contents = read_archive(&path).unwrap();
        assert_eq!(contents.header.get("spec"), Some("test"));
        assert_eq!(contents.records.len(), 3);
        assert_eq!(contents.records[2], record(1, 0));
        assert!(!contents.truncated_tail);
        assert!(sidecar_path(&path).exists());
    }

    #[test]
    fn corrupt_tail_is_dropped_at_the_resume_point() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.eigs");
        let mut w = ArchiveWriter::create(&path, &header()).unwrap();
        w.append(&record(0, 0)).unwrap();
        w.finalize().unwrap();
        let valid = read_archive(&path).unwrap().valid_bytes;

        // Append garbage simulating a crash mid-record.
        let mut bytes = std::fs::read(&path).unwrap();
        bytes.extend_from_slice(&[1, 2, 3, 4, 5]);
        std::fs::write(&path, &bytes).unwrap();

        let contents = read_archive(&path).unwrap();
        assert_eq!(contents.records.len(), 1);
        assert!(contents.truncated_tail);
        assert_eq!(contents.valid_bytes, valid);

        // Resuming truncates the garbage and appends cleanly.
        let mut w = ArchiveWriter::resume(&path, contents.valid_bytes).unwrap();
        w.append(&record(1, 0)).unwrap();
        w.finalize().unwrap();
        let reread = read_archive(&path).unwrap();
        assert_eq!(reread.records.len(), 2);
        assert!(!reread.truncated_tail);
    }

    #[test]
    fn flipped_payload_bit_invalidates_the_record() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.eigs");
        let mut w = ArchiveWriter::create(&path, &header()).unwrap();
        w.append(&record(0, 0)).unwrap();
        w.finalize().unwrap();

        let mut bytes = std::fs::read(&path).unwrap();
        let n = bytes.len();
        bytes[n - 20] ^= 0x01; // inside the eigenvalue payload
        std::fs::write(&path, &bytes).unwrap();
        let contents = read_archive(&path).unwrap();
        assert_eq!(contents.records.len(), 0);
        assert!(contents.truncated_tail);
    }
}
