//! The `hurwitz` command-line tool as library functions.
//!
//! Each command returns a [`Report`] holding what would be written to stdout
//! and stderr together with the process exit code, so commands can be tested
//! without spawning a process.

pub mod cache;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hurwitz_core::{
    c_simp_closed, c_simp_search, c_top_closed, c_top_search, check, cov_complexity, decide,
    decide_all, fast_path, BranchTriplet, Budget, CertificateFile, ComplexityValue, FastPath,
    GenusResult, MonodromyCertificate, SearchWitness, SweepConfig, SweepError, Verdict,
    VerdictKind,
};
use serde::Serialize;

use crate::cache::Cache;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

/// Degree above which searches get slow enough to deserve a warning.
pub const DEGREE_WARNING: usize = 9;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Report {
    fn new() -> Self {
        Self::default()
    }

    fn out(&mut self, line: impl AsRef<str>) {
        self.stdout.push_str(line.as_ref());
        self.stdout.push('\n');
    }

    fn err(&mut self, line: impl AsRef<str>) {
        self.stderr.push_str(line.as_ref());
        self.stderr.push('\n');
    }

    fn json(&mut self, value: &impl Serialize) {
        self.out(serde_json::to_string(value).expect("report serializes"));
    }

    fn fail(code: i32, message: impl AsRef<str>) -> Self {
        let mut r = Self::new();
        r.err(format!("error: {}", message.as_ref()));
        r.code = code;
        r
    }
}

fn parse_triplet(text: &str) -> Result<BranchTriplet, Report> {
    text.parse().map_err(|e| {
        Report::fail(
            EXIT_MALFORMED,
            format!("cannot parse triplet {text:?}: {e}"),
        )
    })
}

fn warn_degree(report: &mut Report, degree: usize) {
    if degree > DEGREE_WARNING {
        report.err(format!(
            "warning: degree {degree} exceeds {DEGREE_WARNING}; searches may exhaust their budget"
        ));
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct CompatJson {
    triplet: String,
    m: usize,
    compatible: bool,
    genus: Option<u32>,
    hyperbolic: bool,
    simple: bool,
}

pub fn compat(text: &str, json: bool) -> Report {
    let t = match parse_triplet(text) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let mut report = Report::new();
    warn_degree(&mut report, t.degree());
    let genus = t.compatible_genus().genus();
    if json {
        report.json(&CompatJson {
            triplet: t.to_string(),
            m: t.total_length(),
            compatible: genus.is_some(),
            genus,
            hyperbolic: t.is_hyperbolic(),
            simple: t.is_simple(),
        });
    } else if let Some(g) = genus {
        report.out(format!(
            "m={} genus={g} hyperbolic={} simple={}",
            t.total_length(),
            yes_no(t.is_hyperbolic()),
            yes_no(t.is_simple())
        ));
    } else {
        report.out("incompatible");
    }
    report.code = if genus.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    report
}

/// How a realizability verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attribution {
    Eks,
    Baranski,
    Search,
}

impl Attribution {
    fn label(self) -> &'static str {
        match self {
            Attribution::Eks => "EKS",
            Attribution::Baranski => "Baranski",
            Attribution::Search => "search",
        }
    }
}

/// A verdict as reported by the tool: the search result, upgraded to
/// realizable when a sufficient condition holds but the search ran out of
/// budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub kind: VerdictKind,
    pub certificate: Option<MonodromyCertificate>,
    pub attribution: Option<Attribution>,
}

impl Outcome {
    pub fn resolve(t: &BranchTriplet, verdict: &Verdict) -> Self {
        let fast = fast_path(t).map(|f| match f {
            FastPath::Eks => Attribution::Eks,
            FastPath::Baranski => Attribution::Baranski,
        });
        match verdict {
            Verdict::Realizable(c) => Self {
                kind: VerdictKind::Realizable,
                certificate: Some(c.clone()),
                attribution: Some(fast.unwrap_or(Attribution::Search)),
            },
            Verdict::NotRealizable => {
                debug_assert!(fast.is_none(), "sufficient condition contradicted on {t}");
                Self {
                    kind: VerdictKind::NotRealizable,
                    certificate: None,
                    attribution: Some(Attribution::Search),
                }
            }
            Verdict::Undecided => Self {
                kind: if fast.is_some() {
                    VerdictKind::Realizable
                } else {
                    VerdictKind::Undecided
                },
                certificate: None,
                attribution: fast,
            },
        }
    }

    fn exit_code(&self) -> i32 {
        match self.kind {
            VerdictKind::Realizable => EXIT_OK,
            VerdictKind::NotRealizable => EXIT_NEGATIVE,
            VerdictKind::Undecided => EXIT_UNDECIDED,
        }
    }
}

#[derive(Serialize)]
struct StatsJson {
    nodes: u64,
    cached: bool,
}

#[derive(Serialize)]
struct RealizeJson {
    triplet: String,
    verdict: VerdictKind,
    attribution: Option<Attribution>,
    certificate: Option<CertificateFile>,
    stats: StatsJson,
}

#[derive(Debug, Clone)]
pub struct RealizeOptions {
    pub budget: Budget,
    /// Also print the certificate in the file format read by `verify`.
    pub certificate: bool,
    /// Cache file, or `None` to neither read nor update a cache.
    pub cache: Option<PathBuf>,
    pub json: bool,
}

pub fn realize(text: &str, options: &RealizeOptions) -> Report {
    let t = match parse_triplet(text) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let mut report = Report::new();
    warn_degree(&mut report, t.degree());

    let mut cache = match &options.cache {
        Some(path) => match Cache::open(path) {
            Ok(c) => {
                for w in c.warnings() {
                    report.err(format!("warning: {w}"));
                }
                Some(c)
            }
            Err(e) => {
                report.err(format!("warning: cache {} unreadable: {e}", path.display()));
                None
            }
        },
        None => None,
    };

    let (verdict, nodes, cached) = match cache.as_ref().and_then(|c| c.lookup(&t)) {
        Some(v) => (v.clone(), 0, true),
        None => {
            let d = decide(&t, &options.budget);
            if let Some(c) = cache.as_mut() {
                if let Err(e) = c.record(&t, &d.verdict, &options.budget) {
                    report.err(format!("warning: cache not updated: {e}"));
                }
            }
            (d.verdict, d.stats.nodes, false)
        }
    };
    let outcome = Outcome::resolve(&t, &verdict);
    let file = outcome.certificate.as_ref().map(|c| c.to_file(&t));

    if options.json {
        report.json(&RealizeJson {
            triplet: t.to_string(),
            verdict: outcome.kind,
            attribution: outcome.attribution,
            certificate: file,
            stats: StatsJson { nodes, cached },
        });
    } else {
        let how = outcome
            .attribution
            .map(|a| format!(" ({})", a.label()))
            .unwrap_or_default();
        report.out(format!("{t}: {}{how}", outcome.kind));
        match &outcome.certificate {
            Some(c) => report.out(format!("certificate: {c}")),
            None if outcome.kind == VerdictKind::Realizable => {
                report.out("certificate: none (search budget exhausted)")
            }
            None => {}
        }
        report.out(format!(
            "nodes: {nodes}{}",
            if cached { " (cached)" } else { "" }
        ));
        if options.certificate {
            if let Some(f) = &file {
                report.json(f);
            }
        }
    }
    report.code = outcome.exit_code();
    report
}

#[derive(Serialize)]
struct VerifyJson {
    valid: bool,
    violation: Option<String>,
    triplet: String,
    genus: Option<u32>,
    complexity: Option<ComplexityValue>,
}

pub fn verify_file(path: &Path, json: bool) -> Report {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Report::fail(EXIT_MALFORMED, format!("{}: {e}", path.display())),
    };
    verify_text(&text, json)
}

pub fn verify_text(text: &str, json: bool) -> Report {
    let (cert, t) = match MonodromyCertificate::from_json(text) {
        Ok(x) => x,
        Err(e) => return Report::fail(EXIT_MALFORMED, format!("malformed certificate: {e}")),
    };
    let mut report = Report::new();
    warn_degree(&mut report, cert.degree());
    let result = check(&cert, &t);
    let genus = t.compatible_genus().genus();
    if json {
        report.json(&VerifyJson {
            valid: result.is_ok(),
            violation: result.err().map(|v| v.to_string()),
            triplet: t.to_string(),
            genus: result.ok().and(genus),
            complexity: result.ok().map(|_| cov_complexity(&t)),
        });
    } else {
        match result {
            Ok(()) => report.out(format!(
                "valid, genus={}, complexity={}",
                genus.expect("verified triplets are compatible"),
                cov_complexity(&t)
            )),
            Err(v) => report.out(format!("invalid: {v}")),
        }
    }
    report.code = if result.is_ok() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableMode {
    Top,
    Simp,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Top,
    Simp,
}

impl Invariant {
    fn label(self) -> &'static str {
        match self {
            Invariant::Top => "C_top",
            Invariant::Simp => "C_simp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RowStatus {
    Agree,
    Disagree,
    Undecided,
}

#[derive(Serialize)]
struct WitnessJson {
    certificate: CertificateFile,
    domain: String,
    swept: usize,
    nodes: u64,
}

#[derive(Serialize)]
struct RowJson {
    genus: u32,
    invariant: Invariant,
    closed_form: ComplexityValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<ComplexityValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<RowStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub genus_max: u32,
    pub mode: TableMode,
    pub verify_search: bool,
    pub budget: Budget,
    pub max_degree: usize,
    pub json: bool,
}

fn table_row(invariant: Invariant, genus: u32, options: &TableOptions) -> RowJson {
    let closed = match invariant {
        Invariant::Top => c_top_closed(genus),
        Invariant::Simp => c_simp_closed(genus),
    };
    let mut row = RowJson {
        genus,
        invariant,
        closed_form: closed,
        search: None,
        witness: None,
        status: None,
        note: None,
    };
    if !options.verify_search {
        return row;
    }
    let config = SweepConfig {
        budget: options.budget,
        max_degree: options.max_degree,
        // the flag is the explicit genus override
        max_genus: options.genus_max,
        ..SweepConfig::default()
    };
    let found: Result<SearchWitness, SweepError> = match invariant {
        Invariant::Top => c_top_search(genus, &config),
        Invariant::Simp => c_simp_search(genus, &config),
    };
    match found {
        Ok(w) => {
            row.status = Some(if w.value == closed {
                RowStatus::Agree
            } else {
                RowStatus::Disagree
            });
            row.search = Some(w.value);
            row.witness = Some(WitnessJson {
                certificate: w.certificate.to_file(&w.triplet),
                nodes: w.exhaustiveness.nodes(),
                swept: w.exhaustiveness.swept.len(),
                domain: w.exhaustiveness.domain,
            });
        }
        Err(e) => {
            row.status = Some(RowStatus::Undecided);
            row.note = Some(e.to_string());
        }
    }
    row
}

pub fn table(options: &TableOptions) -> Report {
    let mut report = Report::new();
    warn_degree(&mut report, options.max_degree);
    let invariants: &[Invariant] = match options.mode {
        TableMode::Top => &[Invariant::Top],
        TableMode::Simp => &[Invariant::Simp],
        TableMode::Both => &[Invariant::Top, Invariant::Simp],
    };
    let mut rows = Vec::new();
    for g in 0..=options.genus_max {
        for &inv in invariants {
            rows.push(table_row(inv, g, options));
        }
    }

    if options.json {
        #[derive(Serialize)]
        struct TableJson<'a> {
            rows: &'a [RowJson],
        }
        report.json(&TableJson { rows: &rows });
    } else {
        for row in &rows {
            let mut line = format!(
                "g={} {}={}",
                row.genus,
                row.invariant.label(),
                row.closed_form
            );
            if let Some(s) = row.search {
                write!(line, " search={s}").unwrap();
            }
            if let Some(w) = &row.witness {
                write!(line, " witness={}", w.certificate.triplet).unwrap();
            }
            if let Some(status) = row.status {
                let word = match status {
                    RowStatus::Agree => "AGREE",
                    RowStatus::Disagree => "DISAGREE",
                    RowStatus::Undecided => "UNDECIDED",
                };
                write!(line, " {word}").unwrap();
            }
            report.out(line);
            if let Some(note) = &row.note {
                report.err(format!("g={} {}: {note}", row.genus, row.invariant.label()));
            }
        }
    }

    let statuses: Vec<RowStatus> = rows.iter().filter_map(|r| r.status).collect();
    report.code = if statuses.contains(&RowStatus::Disagree) {
        EXIT_NEGATIVE
    } else if statuses.contains(&RowStatus::Undecided) {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    };
    report
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub degrees: (usize, usize),
    pub branch_points: (usize, usize),
    pub budget: Budget,
}

#[derive(Serialize)]
struct SweepLine {
    triplet: String,
    genus: u32,
    verdict: VerdictKind,
    attribution: Option<Attribution>,
    certificate: Option<CertificateFile>,
    nodes: u64,
}

/// Decides every compatible triplet in the given degree and branch-point
/// ranges, one JSON line each.
pub fn sweep(options: &SweepOptions) -> Report {
    let mut report = Report::new();
    let (d_lo, d_hi) = options.degrees;
    let (n_lo, n_hi) = options.branch_points;
    if d_lo < 2 || d_lo > d_hi || n_lo < 1 || n_lo > n_hi {
        return Report::fail(
            EXIT_MALFORMED,
            format!("empty sweep range d={d_lo}..={d_hi} n={n_lo}..={n_hi} (need 2 <= d, 1 <= n)"),
        );
    }
    warn_degree(&mut report, d_hi);
    let triplets: Vec<BranchTriplet> = (d_lo..=d_hi)
        .flat_map(|d| (n_lo..=n_hi).map(move |n| (d, n)))
        .flat_map(|(d, n)| BranchTriplet::enumerate(d, n))
        .filter(|t| matches!(t.compatible_genus(), GenusResult::Compatible(_)))
        .collect();
    let decisions = decide_all(&triplets, &options.budget);
    let mut undecided = false;
    for (t, d) in triplets.iter().zip(decisions) {
        let outcome = Outcome::resolve(t, &d.verdict);
        undecided |= outcome.kind == VerdictKind::Undecided;
        report.json(&SweepLine {
            triplet: t.to_string(),
            genus: t
                .compatible_genus()
                .genus()
                .expect("filtered to compatible"),
            verdict: outcome.kind,
            attribution: outcome.attribution,
            certificate: outcome.certificate.as_ref().map(|c| c.to_file(t)),
            nodes: d.stats.nodes,
        });
    }
    report.code = if undecided { EXIT_UNDECIDED } else { EXIT_OK };
    report
}
