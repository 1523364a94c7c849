//! Append-only JSON-lines catalog of solution records with verification
//! metadata. Writes take an advisory lock so concurrent appends never
//! interleave partial lines.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::os::unix::io::AsRawFd;
use std::path::Path;

use anyhow::{bail, Context};
use cnpair_core::{verify_record, SolutionRecord};
use serde::{Deserialize, Serialize};

pub const CATALOG_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One catalog line: a record plus write-time metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(flatten)]
    pub record: SolutionRecord,
    /// Result of verify_record at write time.
    pub verified: bool,
    /// ISO-8601 creation timestamp.
    pub created: String,
    /// Generator version.
    pub version: String,
}

impl CatalogEntry {
    pub fn new(record: SolutionRecord) -> CatalogEntry {
        let verified = verify_record(&record);
        CatalogEntry {
            record,
            verified,
            created: chrono::Utc::now().to_rfc3339(),
            version: CATALOG_VERSION.to_string(),
        }
    }
}

struct Locked(File);

impl Locked {
    fn acquire(file: File) -> anyhow::Result<Locked> {
        let rc = unsafe { libc::flock(file.as_raw_fd(), libc::LOCK_EX) };
        if rc != 0 {
            bail!("could not lock catalog: {}", std::io::Error::last_os_error());
        }
        Ok(Locked(file))
    }
}

impl Drop for Locked {
    fn drop(&mut self) {
        unsafe { libc::flock(self.0.as_raw_fd(), libc::LOCK_UN) };
    }
}

/// Append entries, creating the file if needed.
pub fn append(path: &Path, entries: &[CatalogEntry]) -> anyhow::Result<()> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening catalog {}", path.display()))?;
    let mut locked = Locked::acquire(file)?;
    let mut buf = String::new();
    for entry in entries {
        buf.push_str(&serde_json::to_string(entry)?);
        buf.push('\n');
    }
    locked.0.write_all(buf.as_bytes())?;
    locked.0.flush()?;
    Ok(())
}

/// Read every entry; a malformed line is a hard error (corrupt catalog).
pub fn read(path: &Path) -> anyhow::Result<Vec<CatalogEntry>> {
    let file = File::open(path).with_context(|| format!("opening catalog {}", path.display()))?;
    let mut entries = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: CatalogEntry = serde_json::from_str(&line)
            .with_context(|| format!("corrupt catalog: line {} unparsable", i + 1))?;
        entries.push(entry);
    }
    Ok(entries)
}

/// CSV export matching the JSON schema column-for-column. Map and list
/// fields are flattened with ';' separators.
pub fn to_csv(entries: &[CatalogEntry]) -> String {
    let mut out = String::from("tag,n,x,z,k,unknowns,triangle1,triangle2,verified,created,version\n");
    for e in entries {
        let r = &e.record;
        let unknowns = r
            .unknowns
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let tri = |t: &[num_bigint::BigInt; 3]| {
            t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.tag,
            r.n,
            cnpair_core::format_rational(&r.x),
            cnpair_core::format_rational(&r.z),
            cnpair_core::format_rational(&r.k),
            unknowns,
            tri(&r.triangle1),
            tri(&r.triangle2),
            e.verified,
            e.created,
            e.version,
        ));
    }
    out
}
