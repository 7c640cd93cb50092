//! Append-only JSON-lines store of realizability verdicts.
//!
//! One record per line. On load the last record for a key wins; records that
//! fail to parse, or whose certificate does not verify against the key, are
//! dropped and reported as warnings.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use hurwitz_core::{verify, BranchTriplet, Budget, CertificateFile, Verdict, VerdictKind};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetRecord {
    pub max_nodes: u64,
    pub max_millis: u64,
}

impl From<&Budget> for BudgetRecord {
    fn from(b: &Budget) -> Self {
        Self {
            max_nodes: b.max_nodes,
            max_millis: b.max_time.as_millis() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    pub verdict: VerdictKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateFile>,
    pub budget: BudgetRecord,
    pub timestamp: u64,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<BranchTriplet, Verdict>,
    warnings: Vec<String>,
}

impl Cache {
    /// Loads `path`; a missing file is an empty cache.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut cache = Self {
            path: path.to_path_buf(),
            entries: HashMap::new(),
            warnings: Vec::new(),
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match decode(&line) {
                Ok((t, v)) => {
                    cache.entries.insert(t, v);
                }
                Err(why) => cache.warnings.push(format!(
                    "{}:{}: dropped cache record: {why}",
                    path.display(),
                    lineno + 1
                )),
            }
        }
        Ok(cache)
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, t: &BranchTriplet) -> Option<&Verdict> {
        self.entries.get(t)
    }

    /// Records a decided verdict. Undecided verdicts depend on the budget and
    /// are not stored.
    pub fn record(
        &mut self,
        t: &BranchTriplet,
        verdict: &Verdict,
        budget: &Budget,
    ) -> io::Result<()> {
        if matches!(verdict, Verdict::Undecided) {
            return Ok(());
        }
        let record = CacheRecord {
            key: t.to_string(),
            verdict: VerdictKind::of(verdict),
            certificate: verdict.certificate().map(|c| c.to_file(t)),
            budget: budget.into(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let mut line = serde_json::to_string(&record).map_err(io::Error::other)?;
        line.push('\n');
        // single write of a whole line in append mode
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        file.write_all(line.as_bytes())?;
        self.entries.insert(t.clone(), verdict.clone());
        Ok(())
    }
}

fn decode(line: &str) -> Result<(BranchTriplet, Verdict), String> {
    let record: CacheRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let t: BranchTriplet = record.key.parse().map_err(|e| format!("key: {e}"))?;
    let verdict = match (record.verdict, record.certificate) {
        (VerdictKind::Realizable, Some(file)) => {
            let (cert, _) = file.decode().map_err(|e| e.to_string())?;
            if !verify(&cert, &t) {
                return Err(format!("certificate does not verify against {t}"));
            }
            Verdict::Realizable(cert)
        }
        (VerdictKind::Realizable, None) => {
            return Err("realizable record without certificate".into())
        }
        (VerdictKind::NotRealizable, None) => Verdict::NotRealizable,
        (VerdictKind::NotRealizable, Some(_)) => {
            return Err("not_realizable record carries a certificate".into())
        }
        (VerdictKind::Undecided, _) => return Err("undecided records are not cached".into()),
    };
    Ok((t, verdict))
}
