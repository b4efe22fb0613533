use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use orthokit_core::beran::{self, FreeOml2};
use orthokit_core::check::{eval, Checker};
use orthokit_core::lattice::{parse_lattice_file, stock, LatticeSpec, STOCK_NAMES};
use orthokit_core::laws;
use orthokit_core::logic::{parse_script, verify_derivation, Wff};
use orthokit_core::search::{self, Mode, SearchTask};
use orthokit_core::{CheckReport, FiniteOrthoLattice, QuasiEquation, Term, Valuation};

#[derive(Parser)]
#[command(name = "orthokit", version, about = "Equational checks on finite ortholattices")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Worker threads for valuation scans and enumeration (1 = sequential).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Maximum number of valuations a single check may examine.
    #[arg(long, env = "ORTHOKIT_BUDGET", global = true, hide_env_values = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    Failing,
    Satisfying,
}

#[derive(Subcommand)]
enum Command {
    /// Value of a term under an assignment, e.g. `eval --lattice O6 "a|b" a=x b=y`.
    Eval {
        #[arg(long, short)]
        lattice: String,
        term: String,
        /// Assignments `var=label`.
        assign: Vec<String>,
    },
    /// Check an equation (a bare term `t` means `t = 1`) in each lattice.
    Check {
        #[arg(long, short, required = true)]
        lattice: Vec<String>,
        /// Inline equation, catalogue law name or file.
        target: String,
    },
    /// Check a quasi-equation `h1 , h2 => c` in each lattice.
    Quasi {
        #[arg(long, short, required = true)]
        lattice: Vec<String>,
        target: String,
    },
    /// OL / WOML / OML / WDL / DL membership.
    Classify {
        #[arg(long, short, required = true)]
        lattice: Vec<String>,
    },
    /// Class of a two-variable term in the free orthomodular lattice.
    Canon {
        term: String,
        /// Compare with a second term instead.
        #[arg(long)]
        equal: Option<String>,
    },
    /// The products `(a ->i b) & (b ->j a)` as identities.
    Table1,
    /// `a ==i b = (a ->i b) & (b ->0 a)` for i = 0..5.
    Eq8 {
        /// Defaults to every stock lattice.
        #[arg(long, short)]
        lattice: Vec<String>,
    },
    /// Verify a derivation script.
    Derive { script: PathBuf },
    /// Do two formulas agree under every valuation sending the premises to 1?
    Congruence {
        #[arg(long, short)]
        lattice: String,
        left: String,
        right: String,
        #[arg(long = "premise", short)]
        premises: Vec<String>,
    },
    /// Enumerate small ortholattices looking for (counter)models.
    Search {
        /// Inline (quasi-)equation, catalogue law name or file.
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value_t = SearchMode::Failing)]
        mode: SearchMode,
        #[arg(long = "max-n", default_value_t = search::DEFAULT_MAX_ELEMENTS)]
        max_n: usize,
        #[arg(long)]
        limit: Option<usize>,
        /// Write each result as `<name>.lat` into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print stock lattices in the lattice file format (or DOT).
    Atlas {
        /// Only these lattices.
        names: Vec<String>,
    },
}

/// Exit status of a completed command.
enum Status {
    Ok,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Status> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("configuring worker threads")?;
    }
    let mut checker = Checker::default();
    if let Some(b) = cli.budget {
        checker.budget = b;
    }
    if cli.jobs == Some(1) {
        checker = checker.sequential();
    }
    let fmt = cli.format;
    match &cli.command {
        Command::Eval {
            lattice,
            term,
            assign,
        } => {
            let l = single_lattice(lattice)?;
            let t = parse_term(term)?;
            let mut v = Valuation::new();
            for a in assign {
                let (var, label) = a
                    .split_once('=')
                    .ok_or_else(|| anyhow!("assignment `{a}` is not of the form var=label"))?;
                let e = l
                    .find(label.trim())
                    .ok_or_else(|| anyhow!("{} has no element `{label}`", l.name()))?;
                v.insert(var.trim(), e);
            }
            let e = eval(&l, &v, &t)?;
            match fmt {
                Format::Machine => println!("VALUE {} LATTICE {}", l.label(e), l.name()),
                _ => println!("{}", l.label(e)),
            }
            Ok(Status::Ok)
        }
        Command::Check { lattice, target } => {
            let q = resolve_target(target)?;
            if !q.hypotheses.is_empty() {
                bail!("`{target}` has hypotheses; use the quasi subcommand");
            }
            run_checks(&checker, lattice, &q, fmt)
        }
        Command::Quasi { lattice, target } => {
            run_checks(&checker, lattice, &resolve_target(target)?, fmt)
        }
        Command::Classify { lattice } => {
            for l in lattices(lattice)? {
                let flags = checker.classify(&l)?;
                match fmt {
                    Format::Machine => {
                        let cells: Vec<String> = flags
                            .entries()
                            .iter()
                            .map(|(name, f)| format!("{name}={}", if f.holds { "yes" } else { "no" }))
                            .collect();
                        println!("CLASSES LATTICE {} {}", l.name(), cells.join(" "));
                    }
                    _ => {
                        println!("{}", l.name());
                        print!("{flags}");
                    }
                }
            }
            Ok(Status::Ok)
        }
        Command::Canon { term, equal } => {
            let free = FreeOml2::get();
            let t = parse_term(term)?;
            if let Some(other) = equal {
                let same = free.equal_oml(&t, &parse_term(other)?)?;
                println!("{}", if same { "equal" } else { "different" });
                return Ok(if same { Status::Ok } else { Status::Negative });
            }
            let c = free.canon(&t)?;
            let label = c.label.as_deref().unwrap_or("-");
            match fmt {
                Format::Machine => println!("CLASS {} ELEMENT {} LABEL {label}", c.id, c.element),
                _ => println!("class {} = {label} (element {} of F2)", c.id, c.element),
            }
            Ok(Status::Ok)
        }
        Command::Table1 => {
            let t = beran::table1();
            match fmt {
                Format::Machine => {
                    for (i, row) in t.identity.iter().enumerate() {
                        let cells: Vec<String> = row
                            .iter()
                            .zip(&t.entries[i])
                            .map(|(k, c)| k.map_or(format!("#{}", c.id), |k| format!("≡{k}")))
                            .collect();
                        println!("ROW {i} {}", cells.join(" "));
                    }
                }
                _ => print!("{t}"),
            }
            Ok(Status::Ok)
        }
        Command::Eq8 { lattice } => {
            let ls = if lattice.is_empty() {
                STOCK_NAMES.iter().map(|n| stock(n)).collect::<Result<Vec<_>, _>>()?
            } else {
                lattices(lattice)?
            };
            let mut all = true;
            for l in &ls {
                let reports = beran::eq8_pattern(l)?;
                let marks: Vec<String> = reports
                    .iter()
                    .enumerate()
                    .map(|(i, r)| format!("{i}={}", if r.holds() { "holds" } else { "fails" }))
                    .collect();
                all &= reports.iter().all(CheckReport::holds);
                match fmt {
                    Format::Machine => println!("EQ8 LATTICE {} {}", l.name(), marks.join(" ")),
                    _ => {
                        println!("{:<6} {}", l.name(), marks.join(" "));
                        for (i, r) in reports.iter().enumerate().filter(|(_, r)| r.fails()) {
                            println!("       i={i}: {r}");
                        }
                    }
                }
            }
            Ok(if all { Status::Ok } else { Status::Negative })
        }
        Command::Derive { script } => {
            let text = read(script)?;
            let d = parse_script(&text).map_err(|e| anyhow!("{}: {e}", script.display()))?;
            match verify_derivation(&d) {
                Ok(conclusion) => {
                    match fmt {
                        Format::Machine => println!("ACCEPTED {conclusion}"),
                        _ => println!(
                            "accepted: {} lines in {}, conclusion {conclusion}",
                            d.lines.len(),
                            d.system
                        ),
                    }
                    Ok(Status::Ok)
                }
                Err(r) => {
                    match fmt {
                        Format::Machine => println!("REJECTED LINE {} {}", r.line, r.reason),
                        _ => println!("rejected: {r}"),
                    }
                    Ok(Status::Negative)
                }
            }
        }
        Command::Congruence {
            lattice,
            left,
            right,
            premises,
        } => {
            let l = single_lattice(lattice)?;
            let premises = premises
                .iter()
                .map(|p| parse_formula(p))
                .collect::<Result<Vec<_>>>()?;
            let r = checker.congruence(&l, &parse_formula(left)?, &parse_formula(right)?, &premises)?;
            report(&r, fmt);
            Ok(if r.holds() { Status::Ok } else { Status::Negative })
        }
        Command::Search {
            target,
            mode,
            max_n,
            limit,
            out,
        } => {
            let task = SearchTask {
                target: resolve_target(target)?,
                mode: match mode {
                    SearchMode::Failing => Mode::Failing,
                    SearchMode::Satisfying => Mode::Satisfying,
                },
                max_elements: *max_n,
                limit: *limit,
            };
            let results = search::hunt_with(&checker, &task)?;
            if let Some(dir) = out {
                fs::create_dir_all(dir)
                    .with_context(|| format!("creating {}", dir.display()))?;
            }
            for (l, r) in &results {
                if let Some(dir) = out {
                    let path = dir.join(format!("{}.lat", l.name()));
                    fs::write(&path, LatticeSpec::from_lattice(l).to_string())
                        .with_context(|| format!("writing {}", path.display()))?;
                }
                match fmt {
                    Format::Dot => print!("{}", l.to_dot()),
                    Format::Machine => println!("{}", r.machine_line()),
                    Format::Human => {
                        println!("{r}");
                        if out.is_none() {
                            println!("{}", LatticeSpec::from_lattice(l));
                        }
                    }
                }
            }
            if fmt == Format::Human {
                println!("{} result(s)", results.len());
            }
            Ok(if results.is_empty() {
                Status::Negative
            } else {
                Status::Ok
            })
        }
        Command::Atlas { names } => {
            let names: Vec<&str> = if names.is_empty() {
                STOCK_NAMES.to_vec()
            } else {
                names.iter().map(String::as_str).collect()
            };
            for n in names {
                let l = stock(n)?;
                match fmt {
                    Format::Dot => print!("{}", l.to_dot()),
                    _ => println!("{}", LatticeSpec::from_lattice(&l)),
                }
            }
            Ok(Status::Ok)
        }
    }
}

fn run_checks(checker: &Checker, selectors: &[String], q: &QuasiEquation, fmt: Format) -> Result<Status> {
    let mut all = true;
    for l in lattices(selectors)? {
        let r = checker.check_quasi(&l, q)?;
        report(&r, fmt);
        all &= r.holds();
    }
    Ok(if all { Status::Ok } else { Status::Negative })
}

fn report(r: &CheckReport, fmt: Format) {
    match fmt {
        Format::Machine => println!("{}", r.machine_line()),
        _ => println!("{r}"),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A stock name, or a lattice file (possibly holding several lattices).
fn lattices(selectors: &[String]) -> Result<Vec<FiniteOrthoLattice>> {
    let mut out = Vec::new();
    for s in selectors {
        if let Ok(l) = stock(s) {
            out.push(l);
            continue;
        }
        let path = Path::new(s);
        if !path.is_file() {
            bail!("`{s}` is neither a stock lattice ({}) nor a file", STOCK_NAMES.join(", "));
        }
        let specs = parse_lattice_file(&read(path)?)
            .with_context(|| format!("in {}", path.display()))?;
        if specs.is_empty() {
            bail!("{} holds no lattice", path.display());
        }
        for spec in specs {
            out.push(
                spec.build()
                    .with_context(|| format!("lattice {} in {}", spec.name, path.display()))?,
            );
        }
    }
    Ok(out)
}

fn single_lattice(selector: &str) -> Result<FiniteOrthoLattice> {
    let mut ls = lattices(&[selector.to_string()])?;
    if ls.len() != 1 {
        bail!("`{selector}` holds {} lattices; expected one", ls.len());
    }
    Ok(ls.remove(0))
}

fn parse_term(s: &str) -> Result<Term> {
    Term::parse(s).map_err(|e| anyhow!("`{s}`: {e}"))
}

/// Formula syntax (`~A | B`) first, term syntax (`a' | b`) otherwise.
fn parse_formula(s: &str) -> Result<Term> {
    match Wff::parse(s) {
        Ok(w) => Ok(w.to_term()),
        Err(_) => parse_term(s),
    }
}

/// An existing file, then a catalogue law name, then inline text.
fn resolve_target(s: &str) -> Result<QuasiEquation> {
    let path = Path::new(s);
    if path.is_file() {
        let text = read(path)?;
        let body: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        return QuasiEquation::parse(&body.join(" "))
            .map_err(|e| anyhow!("{}: {e}", path.display()));
    }
    if let Some(law) = laws::by_name(s) {
        return Ok(law.statement);
    }
    QuasiEquation::parse(s).map_err(|e| anyhow!("`{s}`: {e}"))
}
