//! Command dispatch and report rendering behind the `lsacheck` binary.
//!
//! Exit codes: 0 when every requested check holds, 1 when at least one fails
//! (the report is still complete), 2 on input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebroid::Chart;
use crate::arith::RatFunc;
use crate::certificate::Certificate;
use crate::checks::{self, HierarchyBase};
use crate::document::{self, InputDocument, Tensor, Variance};
use crate::error::{Error, Result};
use crate::tensors::{dual_algebroid, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Axioms,
    Kv,
    Compatible,
    Nijenhuis,
    Kvn,
    Kvb,
    Hn,
    Hn2,
    Complementary,
    Hessian,
    Hierarchy,
    Dual,
    Invert,
    DeriveN,
}

impl Command {
    pub const ALL: [Command; 14] = [
        Command::Axioms,
        Command::Kv,
        Command::Compatible,
        Command::Nijenhuis,
        Command::Kvn,
        Command::Kvb,
        Command::Hn,
        Command::Hn2,
        Command::Complementary,
        Command::Hessian,
        Command::Hierarchy,
        Command::Dual,
        Command::Invert,
        Command::DeriveN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Axioms => "axioms",
            Command::Kv => "kv",
            Command::Compatible => "compatible",
            Command::Nijenhuis => "nijenhuis",
            Command::Kvn => "kvn",
            Command::Kvb => "kvb",
            Command::Hn => "hn",
            Command::Hn2 => "hn2",
            Command::Complementary => "complementary",
            Command::Hessian => "hessian",
            Command::Hierarchy => "hierarchy",
            Command::Dual => "dual",
            Command::Invert => "invert",
            Command::DeriveN => "derive-n",
        }
    }

    /// Names of the tensor arguments the command expects.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Command::Axioms => &[],
            Command::Kv | Command::Dual => &["H"],
            Command::Compatible => &["H1", "H2"],
            Command::Nijenhuis => &["N"],
            Command::Kvn => &["H", "N"],
            Command::Kvb | Command::Complementary => &["H", "B"],
            Command::Hn | Command::Hn2 => &["B", "N"],
            Command::Hessian => &["B"],
            Command::Hierarchy => &["H|B", "N"],
            Command::Invert => &["T"],
            Command::DeriveN => &["H1", "H"],
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCommand(s.to_string()))
    }
}

/// One verdict of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub holds: bool,
    pub residuals: Vec<ResidualReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub check: String,
    pub index: Vec<usize>,
    pub expression: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedReport {
    pub name: String,
    pub rows: Vec<Vec<String>>,
}

/// Everything one invocation produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub document: String,
    pub arguments: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    pub checks: Vec<CheckReport>,
    pub derived: Vec<DerivedReport>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn exit_code(&self) -> i32 {
        if self.holds() {
            0
        } else {
            1
        }
    }

    /// Single JSON document; byte-identical for identical input.
    pub fn render_machine(&self) -> String {
        #[derive(Serialize)]
        struct Machine<'a> {
            verdict: &'static str,
            #[serde(flatten)]
            report: &'a Report,
        }
        let m = Machine {
            verdict: if self.holds() { "holds" } else { "fails" },
            report: self,
        };
        let mut s = serde_json::to_string_pretty(&m).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_human(&self, verbose: bool) -> String {
        let mut out = String::new();
        let mut echo = vec![self.command.as_str(), self.document.as_str()];
        echo.extend(self.arguments.iter().map(String::as_str));
        let depth = self.depth.map(|d| format!("--depth {d}"));
        echo.extend(depth.as_deref());
        let _ = writeln!(out, "lsacheck {}", echo.join(" "));
        for c in &self.checks {
            let _ = writeln!(out, "  {}: {}", c.name, if c.holds { "holds" } else { "fails" });
            if let Some(note) = &c.note {
                let _ = writeln!(out, "    note: {note}");
            }
            for r in &c.residuals {
                let idx: Vec<String> = r.index.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "    {}[{}] = {}", r.check, idx.join(","), r.expression);
            }
        }
        for d in &self.derived {
            let _ = writeln!(out, "  derived {}:", d.name);
            for row in &d.rows {
                let _ = writeln!(out, "    [{}]", row.join(", "));
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(out, "verdict: {}", if self.holds() { "holds" } else { "fails" });
        if verbose {
            if let Some(t) = self.elapsed {
                let _ = writeln!(out, "elapsed: {:.3} ms", t.as_secs_f64() * 1e3);
            }
        }
        out
    }
}

/// Resolves a document argument: an existing path, or the name of a shipped fixture.
pub fn resolve_document(name: &str) -> PathBuf {
    let direct = Path::new(name);
    if direct.exists() {
        return direct.to_path_buf();
    }
    let fixture = fixtures_dir().join(format!("{name}.toml"));
    if !name.contains('/') && fixture.exists() {
        return fixture;
    }
    direct.to_path_buf()
}

/// Directory holding the shipped structure documents.
pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

struct Builder<'a> {
    chart: &'a Chart,
    checks: Vec<CheckReport>,
    derived: Vec<DerivedReport>,
    notes: Vec<String>,
}

impl Builder<'_> {
    fn certificate(&mut self, name: &str, cert: &Certificate) {
        let residuals = cert
            .residuals()
            .iter()
            .map(|r| ResidualReport {
                check: r.label.clone(),
                index: r.index.clone(),
                expression: self.chart.print(&r.value),
            })
            .collect();
        self.checks.push(CheckReport {
            name: name.to_string(),
            holds: cert.holds(),
            residuals,
            note: None,
        });
        for (n, m) in cert.derived() {
            self.matrix(n, m);
        }
    }

    fn failed(&mut self, name: &str, note: String) {
        self.checks.push(CheckReport {
            name: name.to_string(),
            holds: false,
            residuals: Vec::new(),
            note: Some(note),
        });
    }

    /// Records a checker outcome, turning unmet preconditions into a failed verdict.
    fn outcome(&mut self, name: &str, result: Result<Certificate>) -> Result<()> {
        match result {
            Ok(cert) => self.certificate(name, &cert),
            Err(e @ (Error::PreconditionFailed(_) | Error::SymmetryViolation(_))) => {
                self.failed(name, e.to_string())
            }
            Err(e) => return Err(e),
        }
        Ok(())
    }

    fn matrix(&mut self, name: &str, m: &Matrix) {
        self.rows(name, m.rows());
    }

    fn rows(&mut self, name: &str, rows: &[Vec<RatFunc>]) {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| self.chart.print(e)).collect())
            .collect();
        self.derived.push(DerivedReport {
            name: name.to_string(),
            rows,
        });
    }
}

const DOMAIN_NOTE: &str =
    "nondegeneracy is generic: results hold where the printed denominators do not vanish";

/// Runs `command` on a loaded document.
pub fn run(command: Command, doc: &InputDocument, arguments: &[String], depth: u32) -> Result<Report> {
    let expected = command.parameters();
    if arguments.len() != expected.len() {
        return Err(Error::Usage(format!(
            "`{}` expects {} tensor argument(s): {}",
            command.name(),
            expected.len(),
            expected.join(" ")
        )));
    }
    let start = Instant::now();
    let a = &doc.algebroid;
    let arg = |i: usize| arguments[i].as_str();
    let mut b = Builder {
        chart: doc.chart(),
        checks: Vec::new(),
        derived: Vec::new(),
        notes: Vec::new(),
    };
    match command {
        Command::Axioms => b.certificate("axioms", &a.check_axioms()),
        Command::Kv => b.outcome("kv", checks::check_koszul_vinberg(a, doc.contravariant(arg(0))?))?,
        Command::Compatible => {
            let (h1, h2) = (doc.contravariant(arg(0))?, doc.contravariant(arg(1))?);
            b.outcome("compatible", checks::check_compatible(a, h1, h2))?
        }
        Command::Nijenhuis => b.outcome("nijenhuis", checks::check_nijenhuis(a, doc.endomorphism(arg(0))?))?,
        Command::Kvn => {
            let (h, n) = (doc.contravariant(arg(0))?, doc.endomorphism(arg(1))?);
            b.outcome("kvn", checks::check_kvn(a, h, n))?
        }
        Command::Kvb => {
            let (h, bb) = (doc.contravariant(arg(0))?, doc.covariant(arg(1))?);
            b.outcome("kvb", checks::check_kvb(a, h, bb))?
        }
        Command::Hn => {
            let (bb, n) = (doc.covariant(arg(0))?, doc.endomorphism(arg(1))?);
            b.outcome("hn", checks::check_hn(a, bb, n))?
        }
        Command::Hn2 => {
            let (bb, n) = (doc.covariant(arg(0))?, doc.endomorphism(arg(1))?);
            b.outcome("hn2", checks::check_hn_via_squares(a, bb, n))?
        }
        Command::Complementary => {
            let (h, bb) = (doc.contravariant(arg(0))?, doc.covariant(arg(1))?);
            b.outcome("complementary", checks::check_complementary(a, h, bb))?
        }
        Command::Hessian => b.outcome("hessian", checks::check_pseudo_hessian(a, doc.covariant(arg(0))?))?,
        Command::Hierarchy => {
            let base = match doc.tensor(arg(0))? {
                Tensor::Contravariant(h) => HierarchyBase::Contravariant(h.clone()),
                Tensor::Covariant(bb) => HierarchyBase::Covariant(bb.clone()),
                Tensor::Endomorphism(_) => {
                    return Err(Error::VarianceMismatch {
                        name: arg(0).to_string(),
                        expected: "contravariant or covariant".into(),
                        found: Variance::Endomorphism.to_string(),
                    })
                }
            };
            let n = doc.endomorphism(arg(1))?;
            match checks::hierarchy(a, &base, n, depth) {
                Ok(hier) => {
                    let member = if matches!(base, HierarchyBase::Contravariant(_)) { "kv" } else { "hessian" };
                    for (k, cert) in hier.member_certificates.iter().enumerate() {
                        b.certificate(&format!("member[{k}].{member}"), cert);
                    }
                    for k in 0..hier.members.len() {
                        for l in k..hier.members.len() {
                            b.certificate(&format!("pair[{k},{l}]"), &hier.pairwise[k][l]);
                        }
                    }
                    for (k, m) in hier.members.iter().enumerate() {
                        b.matrix(&format!("{}_N^{k}", arg(0)), m);
                    }
                }
                Err(e @ (Error::PreconditionFailed(_) | Error::SymmetryViolation(_))) => {
                    b.failed("hierarchy", e.to_string())
                }
                Err(e) => return Err(e),
            }
        }
        Command::Dual => {
            let h = doc.contravariant(arg(0))?;
            let kv = checks::check_koszul_vinberg(a, h)?;
            b.certificate("kv", &kv);
            let dual = dual_algebroid(a, h)?;
            b.certificate("dual.axioms", &dual.check_axioms());
            for (i, plane) in dual.gamma_table().iter().enumerate() {
                b.rows(&format!("gamma[{i}]"), plane);
            }
            b.rows("anchor", dual.anchor_matrix());
        }
        Command::Invert => {
            let t = doc.tensor(arg(0))?;
            let det = t.matrix().determinant();
            if det.is_zero() {
                b.failed("invert", "determinant vanishes identically".into());
            } else {
                let inv = t.matrix().inverse()?;
                b.certificate("invert", &Certificate::new());
                b.matrix(&format!("{}^-1", arg(0)), &inv);
                b.notes.push(format!("determinant: {}", b.chart.print(&det)));
                b.notes.push(DOMAIN_NOTE.into());
            }
        }
        Command::DeriveN => {
            let (h1, h) = (doc.contravariant(arg(0))?, doc.contravariant(arg(1))?);
            match checks::derive_nijenhuis(h1, h) {
                Ok(n) => {
                    b.matrix("N", n.matrix());
                    b.outcome("nijenhuis", checks::check_nijenhuis(a, &n))?;
                    b.notes.push(DOMAIN_NOTE.into());
                }
                Err(Error::Degenerate) => b.failed("derive-n", format!("{} is degenerate", arg(1))),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Report {
        command: command.name().to_string(),
        document: String::new(),
        arguments: arguments.to_vec(),
        depth: (command == Command::Hierarchy).then_some(depth),
        checks: b.checks,
        derived: b.derived,
        notes: b.notes,
        elapsed: Some(start.elapsed()),
    })
}

/// Options of one command-line invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub command: String,
    pub document: String,
    pub tensors: Vec<String>,
    pub depth: u32,
    pub machine: bool,
    pub verbose: bool,
}

/// Output text for stdout and stderr plus the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Loads, runs and renders; input errors become exit code 2.
pub fn execute(inv: &Invocation) -> Outcome {
    let result = Command::from_str(&inv.command).and_then(|cmd| {
        let doc = document::load(resolve_document(&inv.document))?;
        let mut report = run(cmd, &doc, &inv.tensors, inv.depth)?;
        report.document = inv.document.clone();
        Ok(report)
    });
    match result {
        Ok(report) => Outcome {
            stdout: if inv.machine {
                report.render_machine()
            } else {
                report.render_human(inv.verbose)
            },
            stderr: String::new(),
            code: report.exit_code(),
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 2,
        },
    }
}
