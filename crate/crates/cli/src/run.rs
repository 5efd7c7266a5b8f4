//! Command dispatch, the corpus runner and report emission.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use syzlab_core::homalg::{ext_dim, ext_module, free_resolution, FreeResolution};
use syzlab_core::stable::{dual, invariants, syzygy, transpose};
use syzlab_core::verifier::{self, Options, Status, TheoremReport};
use syzlab_core::{Error, ModulePresentation, PolyMatrix, Polynomial, Ring, RingDescriptor};

use crate::error::{CliError, Result};
use crate::session::{parse_session_with, Command, Expr, Session, VerifyArg};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub bound: usize,
    pub char_override: Option<u64>,
    pub cache_dir: Option<PathBuf>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            bound: 6,
            char_override: None,
            cache_dir: None,
        }
    }
}

/// Output of one command: a human-readable block plus any verifier reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub heading: String,
    pub body: String,
    pub reports: Vec<TheoremReport>,
}

/// All fragments of a run, in command order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub fragments: Vec<Fragment>,
}

impl Outcome {
    pub fn reports(&self) -> impl Iterator<Item = &TheoremReport> {
        self.fragments.iter().flat_map(|f| f.reports.iter())
    }

    pub fn failed(&self) -> bool {
        self.reports().any(TheoremReport::failed)
    }

    /// The table written to standard output.
    pub fn human(&self) -> String {
        let mut out = String::new();
        for f in &self.fragments {
            let _ = writeln!(out, "== {}", f.heading);
            out.push_str(&f.body);
            if !f.body.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }

    /// One tab-separated record per check.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        for r in self.reports() {
            for rec in r.records() {
                out.push_str(&rec);
                out.push('\n');
            }
        }
        out
    }

    pub fn write_report(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.machine()).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    fn extend(&mut self, other: Outcome) {
        self.fragments.extend(other.fragments);
    }
}

/// Runs a session file, or every `*.syz` file of a directory.
pub fn run_path(path: &Path, opts: &RunOptions) -> Result<Outcome> {
    if path.is_dir() {
        run_corpus(path, opts)
    } else {
        run_file(path, opts)
    }
}

pub fn run_file(path: &Path, opts: &RunOptions) -> Result<Outcome> {
    run_file_at_depth(path, opts, 0)
}

fn run_file_at_depth(path: &Path, opts: &RunOptions, depth: usize) -> Result<Outcome> {
    let wrap = |e: CliError| CliError::Session {
        path: path.to_path_buf(),
        source: Box::new(e),
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let session = parse_session_with(&text, opts.char_override).map_err(wrap)?;
    let label = path
        .file_stem()
        .map_or("session".into(), |s| s.to_string_lossy().into_owned());
    let base = path.parent().unwrap_or(Path::new("."));
    run_session_at_depth(&session, &label, base, opts, depth).map_err(wrap)
}

/// Runs every command of a parsed session. `label` names the ring in
/// reports; `base` resolves relative corpus directories.
pub fn run_session(session: &Session, label: &str, base: &Path, opts: &RunOptions) -> Result<Outcome> {
    run_session_at_depth(session, label, base, opts, 0)
}

fn run_session_at_depth(
    session: &Session,
    label: &str,
    base: &Path,
    opts: &RunOptions,
    depth: usize,
) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut ctx = match &session.ring {
        Some(desc) => {
            let ring = Ring::new(desc.clone(), label)?.with_cache_dir(opts.cache_dir.clone());
            Some(Context {
                desc: desc.clone(),
                ring,
                env: HashMap::new(),
            })
        }
        None => None,
    };
    if let Some(ctx) = ctx.as_mut() {
        for (name, e) in &session.bindings {
            let m = ctx.eval(e)?.with_label(name.clone());
            ctx.env.insert(name.clone(), m);
        }
    }
    for cmd in &session.commands {
        let heading = format!("{label}: {}", cmd.display(session.ring.as_ref()));
        match cmd {
            Command::Corpus(dir) => {
                if depth > 0 {
                    return Err(CliError::NestedCorpus(dir.clone()));
                }
                out.extend(run_corpus_at_depth(&base.join(dir), opts, depth + 1)?);
            }
            _ => {
                let ctx = ctx.as_ref().ok_or(CliError::NoRing)?;
                out.fragments.push(ctx.run(cmd, heading, opts)?);
            }
        }
    }
    Ok(out)
}

pub fn run_corpus(dir: &Path, opts: &RunOptions) -> Result<Outcome> {
    run_corpus_at_depth(dir, opts, 1)
}

fn run_corpus_at_depth(dir: &Path, opts: &RunOptions, depth: usize) -> Result<Outcome> {
    let io = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()).map_err(io))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| p.extension().is_some_and(|x| x == "syz"))
        .collect();
    files.sort();
    let runs: Vec<Result<Outcome>> = files.par_iter().map(|f| run_file_at_depth(f, opts, depth)).collect();
    let mut out = Outcome::default();
    for run in runs {
        out.extend(run?);
    }
    let summary = corpus_summary(&out, files.len());
    out.fragments.push(Fragment {
        heading: format!("corpus {}", dir.display()),
        body: summary,
        reports: Vec::new(),
    });
    Ok(out)
}

/// Pass counts per theorem across a corpus.
fn corpus_summary(out: &Outcome, sessions: usize) -> String {
    let mut counts: BTreeMap<&str, [usize; 4]> = BTreeMap::new();
    for r in out.reports() {
        let slot = match r.status {
            Status::Pass => 0,
            Status::BoundedPass => 1,
            Status::Fail => 2,
            Status::NotApplicable(_) => 3,
        };
        counts.entry(r.theorem_id.as_str()).or_default()[slot] += 1;
    }
    let mut s = format!(
        "{sessions} sessions\n{:<12} {:>5} {:>8} {:>5} {:>5}\n",
        "theorem", "pass", "bounded", "fail", "n/a"
    );
    for (id, c) in counts {
        let _ = writeln!(s, "{id:<12} {:>5} {:>8} {:>5} {:>5}", c[0], c[1], c[2], c[3]);
    }
    s
}

struct Context {
    desc: RingDescriptor,
    ring: Ring,
    env: HashMap<String, ModulePresentation>,
}

fn matrix(rows: &[Vec<Polynomial>]) -> Result<PolyMatrix> {
    Ok(PolyMatrix::from_rows(rows.to_vec())?)
}

impl Context {
    fn eval(&self, e: &Expr) -> Result<ModulePresentation> {
        let ring = &self.ring;
        let m = match e {
            Expr::Name(n) => return Ok(self.env[n].clone()),
            Expr::ResidueField => ModulePresentation::residue_field(ring),
            Expr::Free(n) => ModulePresentation::free(*n),
            Expr::Cok(rows) => ModulePresentation::cokernel(&matrix(rows)?, ring)?,
            Expr::Ideal(gens) => ModulePresentation::ideal(gens, ring)?,
            Expr::Syz(e, n) => syzygy(&self.eval(e)?, *n, ring)?,
            Expr::Tr(e) => transpose(&self.eval(e)?, ring)?,
            Expr::Dual(e) => dual(&self.eval(e)?, ring)?,
            Expr::Dsum(a, b) => self.eval(a)?.direct_sum(&self.eval(b)?),
            Expr::Subq(g, r) => ModulePresentation::subquotient(&matrix(g)?, &matrix(r)?, ring)?,
            Expr::Ext(a, b, i) => ext_module(&self.eval(a)?, &self.eval(b)?, *i, ring)?,
        };
        Ok(m.with_label(e.display(Some(&self.desc)).to_string()))
    }

    fn run(&self, cmd: &Command, heading: String, opts: &RunOptions) -> Result<Fragment> {
        let ring = &self.ring;
        let mut reports = Vec::new();
        let body = match cmd {
            Command::Invariants(e) => invariants(&self.eval(e)?, opts.bound, ring)?.to_string(),
            Command::Resolve(e, n) => {
                let res = free_resolution(&self.eval(e)?, *n, ring)?;
                betti_table(&res.truncate((*n).min(res.length())))
            }
            Command::ExtTable(a, b, n) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                let dims = (0..=*n)
                    .map(|i| Ok(ext_dim(&a, &b, i, ring)?.to_string()))
                    .collect::<Result<Vec<_>>>()?;
                let idx: Vec<String> = (0..=*n).map(|i| i.to_string()).collect();
                aligned(&[("i", idx), ("dim Ext^i", dims)])
            }
            Command::Verify { theorem, args } => {
                let report = self.verify(theorem, args, opts)?;
                let body = report.to_string();
                reports.push(report);
                body
            }
            Command::Corpus(_) => unreachable!("corpus runs outside a ring context"),
        };
        Ok(Fragment { heading, body, reports })
    }

    fn verify(&self, theorem: &str, args: &[(String, VerifyArg)], opts: &RunOptions) -> Result<TheoremReport> {
        let ring = &self.ring;
        let int = |key: &str, default: usize| {
            args.iter()
                .find_map(|(k, v)| match v {
                    VerifyArg::Int(n) if k == key => Some(*n),
                    _ => None,
                })
                .unwrap_or(default)
        };
        let module = |key: &str| -> Result<ModulePresentation> {
            match args.iter().find(|(k, _)| k == key) {
                Some((_, VerifyArg::Module(e))) => self.eval(e),
                _ => Ok(ModulePresentation::free(1).with_label("R")),
            }
        };
        let mut o = Options::with_bound(int("bound", opts.bound));
        if int("shift", 0) > 0 {
            o = o.corrupted();
        }
        let result = match theorem {
            "thm_2_3" => verifier::verify_thm_2_3(&module("M")?, int("n", 1), ring, o),
            "cor_2_5" => verifier::verify_cor_2_5(ring, o),
            "cor_2_7" => verifier::verify_cor_2_7(&module("M")?, int("n", 1), ring, o),
            "lemma_3_1" => verifier::verify_lemma_3_1(&module("M")?, &module("N")?, int("n", 1), ring, o),
            "lemma_3_2" => verifier::verify_lemma_3_2(int("j", 1), &module("M")?, ring, o),
            "thm_3_6" => verifier::verify_thm_3_6(&module("M")?, ring, o),
            "remark_3_7" => verifier::verify_remark_3_7(&module("M")?, ring, o),
            "cor_3_8" => verifier::verify_cor_3_8(ring, o),
            "cor_3_9" => verifier::verify_cor_3_9(ring, o),
            "example" => {
                let p = int("p", self.desc.field.characteristic() as usize);
                verifier::reproduce_example(p as u64, o)
            }
            other => unreachable!("parser admits only known theorems, got {other}"),
        };
        match result {
            Err(e @ (Error::DepthZero | Error::DepthNonzero(_))) => {
                let mut rep = TheoremReport::new(theorem, ring.label());
                for (k, v) in args {
                    match v {
                        VerifyArg::Int(n) => rep.param(k, n),
                        VerifyArg::Module(e) => rep.param(k, e.display(Some(&self.desc))),
                    };
                }
                Ok(rep.not_applicable(e.to_string()))
            }
            other => Ok(other?),
        }
    }
}

/// Rows of labelled values with right-aligned columns.
fn aligned(rows: &[(&str, Vec<String>)]) -> String {
    let ncols = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
    let head = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| {
            rows.iter()
                .filter_map(|r| r.1.get(j))
                .map(String::len)
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut s = String::new();
    for (label, vals) in rows {
        let _ = write!(s, "{label:<head$}");
        for (v, w) in vals.iter().zip(&widths) {
            let _ = write!(s, " {v:>w$}");
        }
        s.push('\n');
    }
    s
}

/// Graded Betti table: column i, row j counts generators of F_i in degree i + j.
fn betti_table(res: &FreeResolution) -> String {
    let n = res.betti.len();
    let shifts: Vec<i32> = res
        .degrees
        .iter()
        .enumerate()
        .flat_map(|(i, ds)| ds.iter().map(move |d| d - i as i32))
        .collect();
    let idx: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let total: Vec<String> = res.betti.iter().map(usize::to_string).collect();
    let mut rows = vec![(String::new(), idx), ("total:".to_string(), total)];
    if let (Some(&lo), Some(&hi)) = (shifts.iter().min(), shifts.iter().max()) {
        for j in lo..=hi {
            let vals = (0..n)
                .map(|i| {
                    let c = res.degrees[i].iter().filter(|&&d| d - i as i32 == j).count();
                    if c == 0 {
                        ".".to_string()
                    } else {
                        c.to_string()
                    }
                })
                .collect();
            rows.push((format!("{j}:"), vals));
        }
    }
    let borrowed: Vec<(&str, Vec<String>)> = rows.iter().map(|(l, v)| (l.as_str(), v.clone())).collect();
    aligned(&borrowed)
}
