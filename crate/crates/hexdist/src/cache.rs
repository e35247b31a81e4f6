//! On-disk cache of search reports.
//!
//! Each entry is a single JSON line in its own file, named after the method,
//! `m` and a hash of the smallest-`m` menu. The entry carries a SHA-256 of its
//! payload; an entry whose checksum does not match is reported and never used.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hexdist_core::hexagon::{HexagonKind, HexagonSpec};
use hexdist_core::lattice::{
    loeschian_sequence, DistanceMenu, LatticePoint, MultiplicityArray, PointConfig,
};
use hexdist_core::search::{HexagonOrigin, Method, SearchReport};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct HexagonEntry {
    kind: String,
    k: i64,
    removed: usize,
    overshoot: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Payload {
    schema_version: u32,
    m: usize,
    method: String,
    menu: Vec<u64>,
    points: Vec<[i64; 2]>,
    size: usize,
    multiplicities: Vec<u64>,
    optimal: bool,
    elapsed_ns: u64,
    clique: Vec<[i64; 2]>,
    hexagon: Option<HexagonEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    #[serde(flatten)]
    payload: Payload,
    checksum: String,
}

fn checksum(payload: &Payload) -> Result<String> {
    let text = serde_json::to_string(payload)?;
    Ok(hex::encode(Sha256::digest(text.as_bytes())))
}

fn pairs(points: &[LatticePoint]) -> Vec<[i64; 2]> {
    points.iter().map(|p| [p.a, p.b]).collect()
}

fn unpairs(pairs: &[[i64; 2]]) -> Vec<LatticePoint> {
    pairs
        .iter()
        .map(|&[a, b]| LatticePoint::new(a, b))
        .collect()
}

impl Payload {
    fn from_report(r: &SearchReport) -> Self {
        Payload {
            schema_version: SCHEMA_VERSION,
            m: r.m,
            method: r.method.as_str().to_string(),
            menu: r.menu.to_vec(),
            points: pairs(r.construction.points()),
            size: r.size,
            multiplicities: r.multiplicities.counts.clone(),
            optimal: r.optimal,
            elapsed_ns: u64::try_from(r.elapsed.as_nanos()).unwrap_or(u64::MAX),
            clique: pairs(&r.clique),
            hexagon: r.hexagon.map(|h| HexagonEntry {
                kind: match h.spec.kind {
                    HexagonKind::Regular => "regular",
                    HexagonKind::Equiangular => "equiangular",
                }
                .to_string(),
                k: h.spec.k,
                removed: h.removed,
                overshoot: h.overshoot,
            }),
        }
    }

    fn into_report(self, path: &Path) -> Result<SearchReport> {
        let corrupt = |message: String| Error::CorruptEntry {
            path: path.to_path_buf(),
            message,
        };
        if self.schema_version != SCHEMA_VERSION {
            return Err(corrupt(format!(
                "unsupported schema version {}",
                self.schema_version
            )));
        }
        let method = Method::parse(&self.method)
            .ok_or_else(|| corrupt(format!("unknown method {:?}", self.method)))?;
        let menu =
            DistanceMenu::new(self.menu.iter().copied()).map_err(|e| corrupt(e.to_string()))?;
        let construction = PointConfig::new(unpairs(&self.points));
        if construction.len() != self.size || self.points.len() != self.size {
            return Err(corrupt("size does not match the point list".into()));
        }
        let hexagon = match self.hexagon {
            None => None,
            Some(h) => {
                let spec = match h.kind.as_str() {
                    "regular" => HexagonSpec::regular(h.k),
                    "equiangular" => HexagonSpec::equiangular(h.k),
                    other => return Err(corrupt(format!("unknown hexagon kind {other:?}"))),
                };
                Some(HexagonOrigin {
                    spec,
                    removed: h.removed,
                    overshoot: h.overshoot,
                })
            }
        };
        Ok(SearchReport {
            m: self.m,
            method,
            menu,
            construction,
            size: self.size,
            multiplicities: MultiplicityArray {
                counts: self.multiplicities,
            },
            optimal: self.optimal,
            elapsed: Duration::from_nanos(self.elapsed_ns),
            clique: unpairs(&self.clique),
            hexagon,
        })
    }
}

/// Directory of cached reports, keyed by `(m, method, menu hash)`.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Opens `dir`, creating it if needed.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// File holding the entry for `(m, method)`.
    pub fn entry_path(&self, m: usize, method: Method) -> PathBuf {
        let menu = loeschian_sequence(m).to_vec();
        let text = menu
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let hash = hex::encode(&Sha256::digest(text.as_bytes())[..8]);
        self.dir
            .join(format!("{}-m{m:03}-{hash}.jsonl", method.as_str()))
    }

    /// Writes `report`, replacing any previous entry with the same key. The
    /// file is renamed into place so readers never see a partial write.
    pub fn store(&self, report: &SearchReport) -> Result<PathBuf> {
        let payload = Payload::from_report(report);
        let entry = Entry {
            checksum: checksum(&payload)?,
            payload,
        };
        let mut line = serde_json::to_string(&entry)?;
        line.push('\n');
        let path = self.entry_path(report.m, report.method);
        let mut tmp =
            tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        tmp.write_all(line.as_bytes())
            .map_err(|e| Error::io(tmp.path(), e))?;
        tmp.persist(&path).map_err(|e| Error::io(&path, e.error))?;
        Ok(path)
    }

    /// The cached report for `(m, method)`, or `None` when there is none.
    pub fn load(&self, m: usize, method: Method) -> Result<Option<SearchReport>> {
        let path = self.entry_path(m, method);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::io(&path, e)),
        };
        let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        let entry: Entry = serde_json::from_str(line).map_err(|e| Error::CorruptEntry {
            path: path.clone(),
            message: e.to_string(),
        })?;
        if checksum(&entry.payload)? != entry.checksum {
            return Err(Error::Checksum { path });
        }
        if entry.payload.m != m || entry.payload.method != method.as_str() {
            return Err(Error::CorruptEntry {
                path,
                message: "entry key does not match its file".into(),
            });
        }
        entry.payload.into_report(&path).map(Some)
    }
}
