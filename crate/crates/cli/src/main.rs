use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use torsurg::lattice::{IntersectionLattice, LatticeError, DEFAULT_SEARCH_BOUND};
use torsurg::pinwheel::PinwheelDescription;
use torsurg::pipeline::{self, FamilyTable, ReverseEngineeringPlan, DEFAULT_FAMILY_END};
use torsurg::seiberg_witten::canonical_genus_for_blowups;
use torsurg::surgery::torus_surgery;
use torsurg::{FourManifold, HomClass, TorusSurgerySpec};

#[derive(Parser)]
#[command(
    name = "torsurg",
    version,
    about = "Invariant bookkeeping for torus surgery on 4-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scripted construction and print the family table.
    Run {
        target: Target,
        /// Inclusive range `a..b` of n for the 1/n surgeries.
        #[arg(long, default_value_t = format!("1..{DEFAULT_FAMILY_END}"))]
        family: String,
        /// Scale of the symbolic SW(X0).
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        m: i64,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Compare the analytic torus obstruction with a lattice search.
    Obstruct {
        #[arg(long = "bminus")]
        b_minus: usize,
        /// Coefficients `alpha,beta_1,...` of `alpha h - sum beta_i e_i`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        k: Vec<i64>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: i64,
    },
    /// Apply a list of surgery specs to a manifold record.
    Surgery {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        recipe: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run a plan manifest through the Luttinger chain and the family.
    Family {
        #[arg(long)]
        manifest: PathBuf,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Check and assemble a pinwheel manifest.
    Pinwheel {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Genus of the canonical class after k blow-ups.
    Genus {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Cp2k3,
}

#[derive(clap::Args)]
struct FormatArgs {
    #[arg(long, conflicts_with = "tsv")]
    json: bool,
    #[arg(long)]
    tsv: bool,
    /// Also write the table to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl FormatArgs {
    fn render(&self, table: &FamilyTable) -> String {
        if self.json {
            table.to_json() + "\n"
        } else if self.tsv {
            table.to_tsv()
        } else {
            table.to_text()
        }
    }

    fn emit(&self, table: &FamilyTable) -> Result<()> {
        let text = self.render(table);
        print!("{text}");
        if let Some(path) = &self.out {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

fn parse_range(s: &str) -> Result<Vec<i64>> {
    let (a, b) = s
        .split_once("..")
        .with_context(|| format!("range {s:?} is not of the form a..b"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
    let b: i64 = b.trim().parse().with_context(|| format!("bad range end in {s:?}"))?;
    Ok((a..=b).collect())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_run(family: &str, m: i64, format: &FormatArgs) -> Result<ExitCode> {
    let range = parse_range(family)?;
    let report = pipeline::run_cp2k3(range, m)?;
    if !format.json && !format.tsv {
        print!("{}", report.summary());
    }
    format.emit(&report.family)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_obstruct(b_minus: usize, k: Vec<i64>, bound: i64) -> Result<ExitCode> {
    let lattice = IntersectionLattice::new(b_minus);
    let k = HomClass::new(k);
    lattice.check(&k)?;
    let analytic = match lattice.essential_torus_obstruction(&k) {
        Ok(v) => Some(v),
        Err(LatticeError::Hypothesis(b)) => {
            println!("out of hypothesis: b_minus = {b} > 8, the analytic criterion does not apply");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let witness = lattice.find_isotropic_orthogonal(&k, bound)?;
    match analytic {
        Some(true) => println!("analytic: obstructed (k^2 = {} > 0)", k.square()?),
        Some(false) => println!("analytic: no obstruction (k^2 = {} <= 0)", k.square()?),
        None => {}
    }
    match &witness {
        Some(t) => println!("search (bound {bound}): witness {t}"),
        None => println!("search (bound {bound}): no witness"),
    }
    match (analytic, &witness) {
        (Some(true), None) => println!("obstructed; no witness"),
        (Some(true), Some(_)) => {
            println!("disagreement: the analytic criterion is contradicted by the witness");
            return Ok(ExitCode::from(2));
        }
        (_, Some(t)) => println!("not obstructed; witness {t}"),
        (_, None) => println!("no witness within bound {bound}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn print_record(m: &FourManifold) -> Result<()> {
    println!(
        "{}: e = {}, sign = {}, b1 = {}, b+ = {}, H1 = {}, symplectic = {}",
        m.name,
        m.euler,
        m.signature,
        m.b1,
        m.b_plus()?,
        m.h1_string(),
        m.symplectic.is_some()
    );
    Ok(())
}

fn cmd_surgery(manifest: &Path, recipe: &Path, json: bool) -> Result<ExitCode> {
    let m = FourManifold::from_json(&read(manifest)?)?;
    let specs: Vec<TorusSurgerySpec> =
        serde_json::from_str(&read(recipe)?).with_context(|| format!("parsing {}", recipe.display()))?;
    let mut current = m;
    if !json {
        print_record(&current)?;
    }
    for (i, s) in specs.iter().enumerate() {
        current = torus_surgery(&current, s).with_context(|| format!("recipe step {}", i + 1))?;
        if !json {
            print_record(&current)?;
        }
    }
    if json {
        println!("{}", current.to_json());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_family(manifest: &Path, format: &FormatArgs) -> Result<ExitCode> {
    let plan = ReverseEngineeringPlan::from_json(&read(manifest)?)?;
    let chain = pipeline::run_chain(&plan)?;
    let x = chain.last().expect("chains are nonempty");
    let table = pipeline::build_family(&plan, x, &plan.sw_x(), plan.sw_x0_scale)?;
    format.emit(&table)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_pinwheel(manifest: &Path) -> Result<ExitCode> {
    let p = PinwheelDescription::from_json(&read(manifest)?)?;
    let sums: Vec<String> = p.seam_sums().iter().map(i64::to_string).collect();
    println!("seam sums: {}", sums.join(", "));
    let closes = p.closing_condition()?;
    println!("closes: {closes}");
    if !closes {
        return Ok(ExitCode::FAILURE);
    }
    println!("e = {}", p.assemble()?.euler);
    Ok(ExitCode::SUCCESS)
}

fn cmd_genus(k: i64) -> Result<ExitCode> {
    if !(2..=7).contains(&k) {
        eprintln!("warning: k = {k} is outside 2..7, where the construction is known to apply");
    }
    let g = canonical_genus_for_blowups(k)?;
    println!("K^2 = 9 - k = {}", 9 - k);
    println!("2g - 2 = K^2 + K.K = {}", 2 * (9 - k));
    println!("g = {g}");
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if std::env::var_os("WORKBENCH_SEED").is_some_and(|v| !v.is_empty()) {
        bail!("WORKBENCH_SEED is set, but nothing here is random; unset it");
    }
    match cli.command {
        Command::Run {
            target: Target::Cp2k3,
            family,
            m,
            format,
        } => cmd_run(&family, m, &format),
        Command::Obstruct { b_minus, k, bound } => cmd_obstruct(b_minus, k, bound),
        Command::Surgery { manifest, recipe, json } => cmd_surgery(&manifest, &recipe, json),
        Command::Family { manifest, format } => cmd_family(&manifest, &format),
        Command::Pinwheel { manifest } => cmd_pinwheel(&manifest),
        Command::Genus { k } => cmd_genus(k),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
