//! On-disk cache of report documents, one file per `(p, n)`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::doc::{OutputDocument, Payload, ReportDoc, SCHEMA_VERSION};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Uses `dir` if given, else the platform cache directory.
    pub fn locate(dir: Option<&Path>) -> Option<Cache> {
        let dir = match dir {
            Some(d) => d.to_path_buf(),
            None => dirs::cache_dir()?.join("verkit"),
        };
        Some(Cache { dir })
    }

    pub fn path(&self, p: u64, n: u32) -> PathBuf {
        self.dir.join(format!("verpn_{p}_{n}_v{SCHEMA_VERSION}.json"))
    }

    /// A cached report computed with the same sampling parameters.
    pub fn load(&self, p: u64, n: u32, samples: usize, seed: u64) -> Option<ReportDoc> {
        let bytes = fs::read(self.path(p, n)).ok()?;
        let doc: OutputDocument = serde_json::from_slice(&bytes).ok()?;
        match doc.payload {
            Payload::Report(r)
                if doc.schema_version == SCHEMA_VERSION
                    && (r.p, r.n) == (p, n)
                    && (r.verification.samples, r.verification.seed) == (samples, seed) =>
            {
                Some(*r)
            }
            _ => None,
        }
    }

    /// Writes through a temporary file in the cache directory and renames
    /// it into place.
    pub fn store(&self, report: &ReportDoc) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let doc = OutputDocument::new(Payload::Report(Box::new(report.clone())));
        let json = serde_json::to_vec(&doc).map_err(io::Error::other)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&json)?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(report.p, report.n)).map_err(|e| e.error)?;
        Ok(())
    }
}
