//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::cobar::{self, CoalgebraPresentation};
use crate::dgal::{self, DgalError, TableRow};
use crate::exactlin::FieldSpec;
use crate::freepn::{self, GeneratorSet};
use crate::golden;
use crate::oracle;
use crate::spaces::{self, Family, SpacePresentation};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

impl From<DgalError> for CliError {
    fn from(e: DgalError) -> Self {
        match e {
            DgalError::DSquaredNonzero { .. } | DgalError::OutsideBasis(..) => CliError::Compute(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<cobar::CobarError> for CliError {
    fn from(e: cobar::CobarError) -> Self {
        match e {
            cobar::CobarError::DSquaredNonzero(_) => CliError::Compute(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "loophom", version, about = "Exact homology of iterated loop spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the basis of the first page by degree.
    E1 {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 8)]
        max_dim: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Homology of the loop space (the second page) with representatives.
    Homology {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 1)]
        from: u32,
        #[arg(long, default_value_t = 8)]
        to: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Homology of the cobar construction (single loop space).
    Cobar {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 1)]
        from: u32,
        #[arg(long, default_value_t = 8)]
        to: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the m = 1 computations: second page, word counts and cobar.
    Compare {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 10)]
        to: u32,
        /// Zero one generator differential (negative control).
        #[arg(long, hide = true)]
        corrupt: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the shipped reference tables and the structural suites.
    Selftest {
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    #[arg(long, default_value = "rp")]
    pub family: String,
    /// Truncation n of RP^inf/RP^n or CP^inf/CP^n.
    #[arg(long, default_value_t = 2)]
    pub trunc: u32,
    #[arg(long, default_value_t = 1)]
    pub loops: u32,
    /// Coefficient characteristic (0 for the rationals).
    #[arg(long = "char", default_value_t = 2)]
    pub characteristic: u64,
    /// Sphere dimension for `--family sphere`.
    #[arg(long)]
    pub dim: Option<u32>,
    /// Presentation file for `--family file`.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SpaceArgs {
    pub fn field(&self) -> Result<FieldSpec, CliError> {
        FieldSpec::new(self.characteristic).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Builds the presentation, materialized through degree `top`.
    pub fn presentation(&self, top: u32) -> Result<SpacePresentation, CliError> {
        let f = self.field()?;
        let family = Family::parse(&self.family).ok_or_else(|| {
            CliError::Config(format!("unknown family {:?} (expected rp, cp, sphere or file)", self.family))
        })?;
        let cfg = |e: spaces::SpaceError| CliError::Config(e.to_string());
        let sp = match family {
            Family::Rp => spaces::rp_quotient(self.trunc, f, top).map_err(cfg)?,
            Family::Cp => spaces::cp_quotient(self.trunc, f, top).map_err(cfg)?,
            Family::Sphere => {
                let d = self.dim.ok_or_else(|| CliError::Config("--family sphere needs --dim".into()))?;
                spaces::sphere(d, f).map_err(cfg)?
            }
            Family::File => {
                let path = self
                    .presentation
                    .as_ref()
                    .ok_or_else(|| CliError::Config("--family file needs --presentation".into()))?;
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                let sp = spaces::load(&text).map_err(cfg)?;
                spaces::validate(&sp, sp.max_degree).map_err(cfg)?;
                if sp.field != f {
                    return Err(CliError::Config(format!(
                        "presentation is over characteristic {}, but --char {} was given",
                        sp.field.characteristic(),
                        self.characteristic
                    )));
                }
                sp
            }
        };
        Ok(sp)
    }
}

#[derive(Serialize)]
struct DegreeOut<'a> {
    degree: usize,
    dim: usize,
    rank: usize,
    generators: &'a [String],
}

#[derive(Serialize)]
struct HomologyOut<'a> {
    space: &'a str,
    trunc: u32,
    loops: u32,
    characteristic: u64,
    degrees: Vec<DegreeOut<'a>>,
}

#[derive(Serialize)]
struct BasisDegree {
    degree: usize,
    dim: usize,
    basis: Vec<String>,
}

#[derive(Serialize)]
struct E1Out<'a> {
    space: &'a str,
    trunc: u32,
    loops: u32,
    characteristic: u64,
    degrees: Vec<BasisDegree>,
}

#[derive(Serialize)]
struct CompareOut<'a> {
    space: &'a str,
    trunc: u32,
    characteristic: u64,
    to: u32,
    e2: Vec<usize>,
    words: Vec<usize>,
    cobar: Vec<usize>,
    agree: bool,
    first_disagreement: Option<usize>,
}

#[derive(Serialize)]
struct SelftestOut {
    checks: Vec<Check>,
    passed: bool,
}

#[derive(Serialize, Clone)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn homology_output(sp: &SpacePresentation, loops: u32, rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Json => json(&HomologyOut {
            space: &sp.name,
            trunc: sp.trunc,
            loops,
            characteristic: sp.field.characteristic(),
            degrees: rows
                .iter()
                .map(|r| DegreeOut { degree: r.degree, dim: r.dim, rank: r.rank, generators: &r.generators })
                .collect(),
        }),
        Format::Table => {
            let mut s = format!("# H_*(Omega^{loops} {}; {})\n", sp.name, field_name(sp.field));
            for r in rows {
                let _ = writeln!(s, "H_{}\tdim={}\trank={}\t{}", r.degree, r.dim, r.rank, r.generators.join("; "));
            }
            s
        }
    }
}

fn field_name(f: FieldSpec) -> String {
    if f.is_rational() {
        "Q".into()
    } else {
        format!("Z/{}", f.characteristic())
    }
}

fn cmd_e1(space: &SpaceArgs, max_dim: u32, format: Format) -> Result<String, CliError> {
    let sp = space.presentation(max_dim + space.loops + 1)?;
    let page = dgal::E1Page::new(&sp, space.loops, max_dim)?;
    let g: &GeneratorSet = page.alg.gens();
    let basis = freepn::pn_basis(g, max_dim);
    let degrees: Vec<BasisDegree> = (1..=max_dim as usize)
        .map(|d| {
            let b: Vec<String> = basis.get(d).iter().map(|m| page.alg.render_monomial(m)).collect();
            BasisDegree { degree: d, dim: b.len(), basis: b }
        })
        .collect();
    Ok(match format {
        Format::Json => json(&E1Out {
            space: &sp.name,
            trunc: sp.trunc,
            loops: space.loops,
            characteristic: sp.field.characteristic(),
            degrees,
        }),
        Format::Table => {
            let mut s = format!("# E^1 for Omega^{} {}; {}\n", space.loops, sp.name, field_name(sp.field));
            for d in degrees {
                let _ = writeln!(s, "E1_{}\tdim={}\t{}", d.degree, d.dim, d.basis.join("; "));
            }
            s
        }
    })
}

fn check_range(from: u32, to: u32) -> Result<(), CliError> {
    if from > to {
        return Err(CliError::Config(format!("empty degree range {from}..{to}")));
    }
    Ok(())
}

fn cmd_homology(space: &SpaceArgs, from: u32, to: u32, format: Format) -> Result<String, CliError> {
    check_range(from, to)?;
    let sp = space.presentation(to + space.loops + 2)?;
    let rows = dgal::e2_homology(&sp, space.loops, from, to)?;
    Ok(homology_output(&sp, space.loops, &rows, format))
}

fn cmd_cobar(space: &SpaceArgs, from: u32, to: u32, format: Format) -> Result<String, CliError> {
    check_range(from, to)?;
    let sp = space.presentation(to + 3)?;
    let c = CoalgebraPresentation::from_space(&sp.restricted(to + 2))?;
    let w = cobar::cobar_window(&c, to + 1)?;
    let rows = dgal::window_table(&w, from as usize, to as usize)?;
    Ok(homology_output(&sp, 1, &rows, format))
}

fn cmd_compare(space: &SpaceArgs, to: u32, corrupt: bool, format: Format) -> Result<(String, bool), CliError> {
    let sp = space.presentation(to + 3)?;
    let r = dgal::compare_m1(&sp, to, corrupt)?;
    let vals = |m: &std::collections::BTreeMap<usize, usize>| m.values().copied().collect::<Vec<_>>();
    let text = match format {
        Format::Json => json(&CompareOut {
            space: &sp.name,
            trunc: sp.trunc,
            characteristic: sp.field.characteristic(),
            to,
            e2: vals(&r.e2),
            words: vals(&r.words),
            cobar: vals(&r.cobar),
            agree: r.agree(),
            first_disagreement: r.first_disagreement,
        }),
        Format::Table => {
            let mut s = format!("# Omega {}; {} degrees 1..{to}\n", sp.name, field_name(sp.field));
            let _ = writeln!(s, "e2\t{:?}\nwords\t{:?}\ncobar\t{:?}", vals(&r.e2), vals(&r.words), vals(&r.cobar));
            match r.first_disagreement {
                None => s.push_str("AGREE\n"),
                Some(k) => {
                    let _ = writeln!(s, "DISAGREE at degree {k}");
                }
            }
            s
        }
    };
    Ok((text, r.agree()))
}

fn selftest_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for (name, t) in golden::corpus() {
        let check = match golden::check(name, &t) {
            Ok(r) => {
                let bad: Vec<&str> =
                    r.labels.iter().filter(|l| !(l.cycle && l.independent)).map(|l| l.label.as_str()).collect();
                let extra: Vec<String> =
                    r.mismatches().iter().map(|(d, e, c)| format!("H_{d}: {e} listed, {c} computed")).collect();
                let detail = match (bad.is_empty(), extra.is_empty()) {
                    (true, true) => "all labels are independent non-bounding cycles; dimensions match".to_string(),
                    (true, false) => format!(
                        "all labels are independent non-bounding cycles; table incomplete ({})",
                        extra.join(", ")
                    ),
                    (false, _) => format!("labels failing: {}", bad.join(", ")),
                };
                Check {
                    name: format!("golden {name}"),
                    passed: bad.is_empty() && r.computed.len() == r.expected.len(),
                    detail,
                }
            }
            Err(e) => Check { name: format!("golden {name}"), passed: false, detail: e.to_string() },
        };
        checks.push(check);
    }
    // d^2 = 0 over every shipped configuration (assembly fails otherwise)
    let z = |p| FieldSpec::new(p).expect("prime");
    let configs: Vec<(&str, Result<SpacePresentation, spaces::SpaceError>, u32, u32)> = vec![
        ("rp n=2 m=2", spaces::rp_quotient(2, z(2), 16), 2, 9),
        ("rp n=3 m=3", spaces::rp_quotient(3, z(2), 16), 3, 8),
        ("rp n=4 m=4", spaces::rp_quotient(4, z(2), 16), 4, 8),
        ("cp n=2 m=4 Z/2", spaces::cp_quotient(2, z(2), 24), 4, 14),
        ("cp n=2 m=4 Z/3", spaces::cp_quotient(2, z(3), 24), 4, 12),
        ("cp n=2 m=2 Q", spaces::cp_quotient(2, z(0), 24), 2, 12),
    ];
    for (name, sp, m, hi) in configs {
        let r = sp.map_err(DgalError::from).and_then(|sp| dgal::assemble_for(&sp, m, hi).map(|_| ()));
        checks.push(Check {
            name: format!("d^2 = 0 {name}"),
            passed: r.is_ok(),
            detail: r.err().map(|e| e.to_string()).unwrap_or_else(|| format!("through degree {}", hi + 1)),
        });
    }
    // basis counts against the brute-force oracle
    let mut failures = Vec::new();
    let mut total = 0;
    for p in [2u64, 3, 0] {
        for degs in [vec![1u32], vec![1, 2], vec![2, 3]] {
            for n in 1..=2 {
                total += 1;
                let f = z(p);
                let g = GeneratorSet::new(
                    degs.iter().enumerate().map(|(i, d)| (format!("x_{}", i + 1), *d)).collect(),
                    f,
                    n,
                )
                .expect("valid generators");
                let b = freepn::pn_basis(&g, 8);
                let fast: Vec<usize> = (0..=8).map(|d| b.dim(d)).collect();
                if fast != oracle::pn_dimensions(&degs, n, f, 8) {
                    failures.push(format!("p={p} degs={degs:?} n={n}"));
                }
            }
        }
    }
    checks.push(Check {
        name: "basis counts vs oracle".into(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() { format!("{total} configurations, degrees <= 8") } else { failures.join("; ") },
    });
    checks
}

fn cmd_selftest(format: Format) -> Result<(String, bool), CliError> {
    let checks = selftest_checks();
    let passed = checks.iter().all(|c| c.passed);
    let text = match format {
        Format::Json => json(&SelftestOut { checks, passed }),
        Format::Table => {
            let mut s = String::new();
            for c in &checks {
                let _ = writeln!(s, "{}\t{}\t{}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let _ = writeln!(s, "{}", if passed { "selftest passed" } else { "selftest FAILED" });
            s
        }
    };
    Ok((text, passed))
}

/// Runs a parsed command, returning the rendered output and the exit code.
pub fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let (text, code, out) = match &cli.command {
        Command::E1 { space, max_dim, out } => (cmd_e1(space, *max_dim, out.format)?, 0, out),
        Command::Homology { space, from, to, out } => (cmd_homology(space, *from, *to, out.format)?, 0, out),
        Command::Cobar { space, from, to, out } => (cmd_cobar(space, *from, *to, out.format)?, 0, out),
        Command::Compare { space, to, corrupt, out } => {
            let (text, agree) = cmd_compare(space, *to, *corrupt, out.format)?;
            (text, if agree { 0 } else { 1 }, out)
        }
        Command::Selftest { out } => {
            let (text, ok) = cmd_selftest(out.format)?;
            (text, if ok { 0 } else { 1 }, out)
        }
    };
    if let Some(path) = &out.out {
        std::fs::write(path, &text)?;
        return Ok((String::new(), code));
    }
    Ok((text, code))
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(e) => {
            eprintln!("loophom: {e}");
            e.exit_code()
        }
    }
}
