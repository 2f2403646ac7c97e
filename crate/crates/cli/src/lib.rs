//! Command-line front end for `cfckit`.
//!
//! [`run`] parses arguments, dispatches one verb and returns the exit code:
//! 0 on success (junk outcomes included), 1 on I/O or parse errors, 2 when
//! `check-laws` finds a failing law.

mod fnspec;

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use cfckit::{
    cfc, cfc_n, check_laws, elemental_subalgebra, quasispectrum_intrinsic, quasispectrum_via_unitization, sample,
    spectrum, uni_mul, uni_norm, uni_norm_map, uni_star, CfcOutcome, ComplexMatrix, LawReport, ScalarRing,
    SpectrumResult, StarSubalgebra, Tolerances, UnitizationElement,
};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use fnspec::parse_function;

#[derive(Debug, Parser)]
#[command(name = "cfckit", version, about = "Continuous functional calculus on complex matrices")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Apply a function to a matrix with the unital calculus.
    Apply(Common),
    /// Apply a function vanishing at 0 with the non-unital calculus.
    ApplyN(Common),
    /// Spectrum over the chosen ring.
    Spectrum(Common),
    /// Quasispectrum inside a subalgebra (default: the one generated by the matrix).
    Quasispectrum(Common),
    /// Run the law suite on a matrix, or on random matrices when none is given.
    CheckLaws(Common),
    /// Norms and spectrum of the matrix embedded in the unitization.
    UnitizeInfo(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Matrix JSON file (`-` for stdin).
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// JSON array of matrices generating a star-subalgebra.
    #[arg(long)]
    basis: Option<PathBuf>,
    /// Function spec, e.g. '{"builtin":"sqrt"}'.
    #[arg(long = "fn")]
    function: Option<String>,
    #[arg(long, default_value = "complex")]
    ring: ScalarRing,
    #[arg(long, env = "CFCKIT_TOL", default_value_t = cfckit::tolerance::DEFAULT_TOL)]
    tol: f64,
    /// Absolute eigenvalue clustering radius (default scales with the norm).
    #[arg(long)]
    cluster_tol: Option<f64>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn tolerances(&self) -> Tolerances {
        let t = Tolerances::new(self.tol);
        match self.cluster_tol {
            Some(c) => t.with_cluster_tol(c),
            None => t,
        }
    }

    fn matrix(&self) -> Result<ComplexMatrix> {
        let path = self.matrix.as_deref().context("--matrix is required")?;
        read_matrix(path)
    }

    fn function(&self) -> Result<cfckit::ScalarFunction> {
        let text = self.function.as_deref().context("--fn is required")?;
        parse_function(text, self.ring)
    }

    fn subalgebra(&self, a: &ComplexMatrix, unital: bool) -> Result<Option<StarSubalgebra>> {
        let Some(path) = &self.basis else {
            return Ok(None);
        };
        let text = read_text(path)?;
        let gens: Vec<ComplexMatrix> =
            serde_json::from_str(&text).with_context(|| format!("basis: cannot parse {}", path.display()))?;
        let b = StarSubalgebra::generated_by(&gens, a.n(), unital, self.tol).context("basis")?;
        Ok(Some(b))
    }

    fn emit(&self, value: &Value) -> Result<()> {
        let text = serde_json::to_string_pretty(value)? + "\n";
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("out: cannot write {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("matrix: cannot parse {}", path.display()))
}

fn outcome_json(o: &CfcOutcome) -> Value {
    json!({
        "junk": o.junk,
        "reason": o.reason.map(|r| r.as_str()),
        "matrix": o.value,
    })
}

fn spectrum_json(s: &SpectrumResult) -> Value {
    let points: Vec<[f64; 2]> = s.points.iter().map(|p| [p.re, p.im]).collect();
    json!({
        "ring": s.ring,
        "points": points,
        "multiplicities": s.multiplicities,
    })
}

/// Parse `argv` (including the program name) and run one command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.verb) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn dispatch(verb: Verb) -> Result<i32> {
    match verb {
        Verb::Apply(c) => {
            let (a, f) = (c.matrix()?, c.function()?);
            c.emit(&outcome_json(&cfc(&f, &a, c.ring, c.tolerances())))?;
        }
        Verb::ApplyN(c) => {
            let (a, f) = (c.matrix()?, c.function()?);
            let b = c.subalgebra(&a, false)?;
            let out = cfc_n(&f, &a, b.as_ref(), c.ring, c.tolerances())?;
            c.emit(&outcome_json(&out))?;
        }
        Verb::Spectrum(c) => {
            let a = c.matrix()?;
            c.emit(&spectrum_json(&spectrum(&a, c.ring, c.tolerances())?))?;
        }
        Verb::Quasispectrum(c) => {
            let a = c.matrix()?;
            let b = match c.subalgebra(&a, false)? {
                Some(b) => b,
                None => elemental_subalgebra(&a, false, c.tol)?,
            };
            let intrinsic = quasispectrum_intrinsic(&b, &a, c.ring, c.tolerances())?;
            let via_unitization = quasispectrum_via_unitization(&a, c.ring, c.tolerances())?;
            let mut out = spectrum_json(&intrinsic);
            out["subalgebra_dim"] = json!(b.dim());
            out["unitization_hausdorff"] = json!(intrinsic.hausdorff(&via_unitization.points));
            c.emit(&out)?;
        }
        Verb::CheckLaws(c) => return check_laws_verb(&c),
        Verb::UnitizeInfo(c) => {
            let a = c.matrix()?;
            let x = UnitizationElement::embed(a.clone());
            let norm = uni_norm(&x);
            let sx = uni_mul(&uni_star(&x), &x)?;
            let block = quasispectrum_via_unitization(&a, ScalarRing::Complex, c.tolerances()).ok();
            c.emit(&json!({
                "n": a.n(),
                "norm": norm,
                "norm_map": uni_norm_map(&x),
                "cstar_residual": (uni_norm(&sx) - norm * norm).abs(),
                "quasispectrum": block.as_ref().map(spectrum_json),
            }))?;
        }
    }
    Ok(0)
}

fn check_laws_verb(c: &Common) -> Result<i32> {
    let given = c.matrix.as_ref().map(|_| c.matrix()).transpose()?;
    let fixed_f = c.function.as_ref().map(|_| c.function()).transpose()?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut reports = Vec::with_capacity(c.trials);
    let mut trials = Vec::with_capacity(c.trials);
    for _ in 0..c.trials.max(1) {
        let a = match &given {
            Some(a) => a.clone(),
            None => {
                let n = rng.random_range(1..=8);
                sample::random_for_ring(&mut rng, n, c.ring, 1.0)
            }
        };
        let f = match &fixed_f {
            Some(f) => f.clone(),
            None => sample::random_function(&mut rng, c.ring),
        };
        let g = sample::random_function(&mut rng, c.ring);
        let report = check_laws(&a, &f, &g, c.ring, c.tolerances());
        trials.push(json!({
            "n": a.n(),
            "f": f.name(),
            "g": g.name(),
            "passed": report.passed(),
        }));
        reports.push(report);
    }
    let merged = LawReport::aggregate(&reports);
    let passed = merged.passed();
    c.emit(&json!({
        "ring": c.ring,
        "trials": trials.len(),
        "seed": c.seed,
        "passed": passed,
        "laws": merged.entries,
        "runs": trials,
    }))?;
    let table = merged.table();
    if c.out.is_some() {
        print!("{table}");
    } else {
        eprint!("{table}");
    }
    Ok(if passed { 0 } else { 2 })
}
