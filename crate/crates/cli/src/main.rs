//! `expf`: tables, identity checks and normal ordering from the command line.
//!
//! Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage or input
//! error, 3 a size cap or blowup guard refused the request.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use expformula::bfile::{compare, read_bfile};
use expformula::cache::CoefficientCache;
use expformula::egf::EgfSeries;
use expformula::families::{BurnsideParams, EndofunctionFamily, GraphFamily, PartitionFamily};
use expformula::hw::{
    self, gen_stirling, normal_order_with, parse_operator, power_normal, verify_one_annihilation, HwError,
    RewriteStrategy, DEFAULT_WORD_LIMIT,
};
use expformula::sfd::{
    self, check_direct_sum_axioms, check_levi, check_relabeling, check_unique_factorization, CheckReport, SfdError,
    LEVI_CAP,
};
use expformula::statistics::{
    check_equivariance, check_multiplicativity, check_product_rule, egf_of, verify_exponential_formula,
    verify_stirling_class, Scope, Statistic,
};
use expformula::Error;
use num_bigint::BigInt;
use serde_json::json;

/// Environment variable naming the default cache directory.
const CACHE_ENV: &str = "EXPF_CACHE_DIR";
const CACHE_FILE: &str = "coefficients.jsonl";
/// Largest power accepted by `normal` and `stirling`.
const MAX_POWER: u32 = 40;

#[derive(Parser, Debug)]
#[command(name = "expf", version, about = "Exact exponential-formula and normal-ordering computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Coefficient cache file; defaults to $EXPF_CACHE_DIR/coefficients.jsonl when set.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Ignore the cache and recompute everything.
    #[arg(long, global = true, conflicts_with = "cache")]
    no_cache: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Graphs,
    Partitions,
    Endofunctions,
    Burnside,
    /// Axiom-checker fixture that breaks disjointness.
    OverlappingUnion,
    /// Axiom-checker fixture without unique factorization.
    CrossedPairs,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Burnside exponent `a` in `f^a = f^b`.
    #[arg(long, default_value_t = 1)]
    a: u32,
    /// Burnside exponent `b` in `f^a = f^b`.
    #[arg(long, default_value_t = 2)]
    b: u32,
}

#[derive(Args, Debug, Clone)]
struct StatArgs {
    /// Comma-separated `feature=variable` pairs, or a bare rational such as `1`.
    #[arg(long, default_value = "1")]
    stat: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the coefficients c(X_[1..n]) for n = 0..order.
    Egf {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        stat: StatArgs,
        /// Sum over connected structures only.
        #[arg(long)]
        atoms: bool,
        #[arg(long)]
        order: usize,
    },
    /// Run an identity or axiom check and report PASS or FAIL.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Normal-order an operator, optionally raised to a power.
    Normal {
        operator: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, value_enum, default_value_t = Method::ClosedForm)]
        method: Method,
    },
    /// Generalized Stirling triangle of a homogeneous operator.
    Stirling {
        operator: String,
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Compare a generated integer sequence with an OEIS b-file.
    CompareBfile {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        stat: StatArgs,
        #[arg(long)]
        atoms: bool,
        #[arg(long)]
        order: usize,
        #[arg(long, value_name = "PATH")]
        bfile: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// EGF(all) = c(unit) - 1 + exp(EGF(atoms)).
    Expformula {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        stat: StatArgs,
        #[arg(long)]
        order: usize,
    },
    /// Direct-sum axioms, Levi's property, unique factorization, relabeling.
    Axioms {
        #[command(flatten)]
        family: FamilyArgs,
        /// Largest support size; Levi's property stops at the Levi cap.
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Equivariance, multiplicativity and the product rule of a statistic.
    Statistic {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        stat: StatArgs,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Partitions weighted by y^blocks against exp(y(e^x - 1)).
    StirlingClass {
        #[arg(long, default_value_t = 7)]
        order: usize,
    },
    /// g(x) exp(y A(x)) factorization for one-annihilation operators.
    OneAnnihilation {
        operator: String,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Reorder with the closed-form product of normal monomials.
    ClosedForm,
    /// Rewrite the leftmost `a ad` first.
    Leftmost,
    /// Rewrite the rightmost `a ad` first.
    Rightmost,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<HwError> for Failure {
    fn from(e: HwError) -> Self {
        Failure::Lib(e.into())
    }
}

impl From<SfdError> for Failure {
    fn from(e: SfdError) -> Self {
        Failure::Lib(e.into())
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Sfd(SfdError::CapExceeded { .. }))
            | Failure::Lib(Error::Hw(HwError::Blowup { .. })) => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Egf { family, stat, atoms, order } => cmd_egf(cli, family, stat, *atoms, *order),
        Command::Verify { check } => cmd_verify(cli, check),
        Command::Normal { operator, power, method } => cmd_normal(cli, operator, *power, *method),
        Command::Stirling { operator, n } => cmd_stirling(cli, operator, *n),
        Command::CompareBfile { family, stat, atoms, order, bfile } => {
            cmd_compare_bfile(cli, family, stat, *atoms, *order, bfile)
        }
    }
}

/// Binds `$fam` to the selected concrete family and evaluates `$body`.
macro_rules! with_featured_family {
    ($args:expr, $fam:ident => $body:expr) => {
        match $args.family {
            FamilyName::Graphs => {
                let $fam = GraphFamily::default();
                $body
            }
            FamilyName::Partitions => {
                let $fam = PartitionFamily::default();
                $body
            }
            FamilyName::Endofunctions => {
                let $fam = EndofunctionFamily::all();
                $body
            }
            FamilyName::Burnside => {
                let p = BurnsideParams::new($args.a, $args.b).map_err(Error::from)?;
                let $fam = EndofunctionFamily::burnside(p);
                $body
            }
            FamilyName::OverlappingUnion | FamilyName::CrossedPairs => {
                return Err(Failure::Usage("fixture families only support `verify axioms`".into()))
            }
        }
    };
}

fn open_cache(cli: &Cli) -> Result<Option<CoefficientCache>, Failure> {
    if cli.no_cache {
        return Ok(None);
    }
    let path = match (&cli.cache, std::env::var_os(CACHE_ENV)) {
        (Some(p), _) => p.clone(),
        (None, Some(dir)) if !dir.is_empty() => PathBuf::from(dir).join(CACHE_FILE),
        _ => return Ok(None),
    };
    let cache = CoefficientCache::open(path).map_err(Error::from)?;
    for w in cache.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(Some(cache))
}

fn series_for(
    cli: &Cli,
    family: &FamilyArgs,
    stat: &StatArgs,
    atoms: bool,
    order: usize,
) -> Result<(String, String, EgfSeries), Failure> {
    let statistic: Statistic = stat.stat.parse()?;
    let mut cache = open_cache(cli)?;
    let (tag, series) = with_featured_family!(family, fam => {
        use expformula::sfd::StructureFamily;
        (fam.tag(), egf_of(&fam, &statistic, atoms, order, cache.as_mut())?)
    });
    if let Some(c) = cache.as_mut() {
        c.save().map_err(Error::from)?;
    }
    Ok((tag, statistic.to_string(), series))
}

fn cmd_egf(cli: &Cli, family: &FamilyArgs, stat: &StatArgs, atoms: bool, order: usize) -> Outcome {
    let (tag, statistic, series) = series_for(cli, family, stat, atoms, order)?;
    match cli.format {
        Format::Plain => {
            let coeffs = series.coeffs();
            if coeffs.iter().all(|c| c.as_constant().is_some()) {
                let cells: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                println!("{}", cells.join(" "));
            } else {
                for (n, c) in coeffs.iter().enumerate() {
                    println!("{n}: {c}");
                }
            }
        }
        Format::Json => {
            let v = json!({ "family": tag, "statistic": statistic, "atoms": atoms, "series": series });
            println!("{v}");
        }
        Format::Csv => {
            println!("n,value");
            for (n, c) in series.coeffs().iter().enumerate() {
                println!("{n},{}", csv_cell(&c.to_string()));
            }
        }
    }
    Ok(0)
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', ' ']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn axiom_reports<F: sfd::StructureFamily>(fam: &F, max: usize) -> Result<Vec<CheckReport>, Failure> {
    Ok(vec![
        check_direct_sum_axioms(fam, max)?,
        check_levi(fam, max.min(LEVI_CAP))?,
        check_unique_factorization(fam, max)?,
        check_relabeling(fam, max)?,
    ])
}

fn cmd_verify(cli: &Cli, check: &VerifyCommand) -> Outcome {
    let reports = match check {
        VerifyCommand::Expformula { family, stat, order } => {
            let statistic: Statistic = stat.stat.parse()?;
            with_featured_family!(family, fam => vec![verify_exponential_formula(&fam, &statistic, *order)?])
        }
        VerifyCommand::Axioms { family, max } => match family.family {
            FamilyName::OverlappingUnion => axiom_reports(&sfd::fixtures::OverlappingUnion, *max)?,
            FamilyName::CrossedPairs => axiom_reports(&sfd::fixtures::CrossedPairs, *max)?,
            _ => with_featured_family!(family, fam => axiom_reports(&fam, *max)?),
        },
        VerifyCommand::Statistic { family, stat, max } => {
            let statistic: Statistic = stat.stat.parse()?;
            with_featured_family!(family, fam => vec![
                check_equivariance(&fam, &statistic, *max, Scope::All)?,
                check_multiplicativity(&fam, &statistic, *max)?,
                check_product_rule(&fam, &statistic, *max)?,
            ])
        }
        VerifyCommand::StirlingClass { order } => vec![verify_stirling_class(*order)?],
        VerifyCommand::OneAnnihilation { operator, order } => {
            let omega = parse_operator(operator)?;
            vec![verify_one_annihilation(&omega, *order, DEFAULT_WORD_LIMIT)?]
        }
    };
    let all_pass = reports.iter().all(CheckReport::passed);
    match cli.format {
        Format::Plain => {
            for r in &reports {
                println!("{r}");
            }
        }
        Format::Json => {
            let v = json!({ "status": if all_pass { "PASS" } else { "FAIL" }, "reports": reports });
            println!("{v}");
        }
        Format::Csv => {
            println!("check,status,instances,witness");
            for r in &reports {
                let w = r.witness.as_deref().unwrap_or("");
                println!("{},{},{},{}", csv_cell(&r.axiom), r.status, r.instances_checked, csv_cell(w));
            }
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn cap_power(n: u32) -> Result<(), Failure> {
    if n > MAX_POWER {
        return Err(SfdError::CapExceeded { requested: n as usize, cap: MAX_POWER as usize }.into());
    }
    Ok(())
}

fn cmd_normal(cli: &Cli, operator: &str, power: u32, method: Method) -> Outcome {
    cap_power(power)?;
    let omega = parse_operator(operator)?;
    let normal = match method {
        Method::ClosedForm => power_normal(&omega, power, DEFAULT_WORD_LIMIT)?,
        Method::Leftmost => normal_order_with(&omega.pow(power, DEFAULT_WORD_LIMIT)?, RewriteStrategy::Leftmost),
        Method::Rightmost => normal_order_with(&omega.pow(power, DEFAULT_WORD_LIMIT)?, RewriteStrategy::Rightmost),
    };
    match cli.format {
        Format::Plain => println!("{normal}"),
        Format::Json => {
            let terms: Vec<_> =
                normal.terms().rev().map(|(&(i, j), c)| json!({ "i": i, "j": j, "coeff": c.to_string() })).collect();
            println!(
                "{}",
                json!({ "input": operator, "power": power, "normal_form": normal.to_string(), "terms": terms })
            );
        }
        Format::Csv => {
            println!("i,j,coeff");
            for (&(i, j), c) in normal.terms().rev() {
                println!("{i},{j},{c}");
            }
        }
    }
    Ok(0)
}

fn cmd_stirling(cli: &Cli, operator: &str, n: usize) -> Outcome {
    cap_power(u32::try_from(n).unwrap_or(u32::MAX))?;
    let omega = parse_operator(operator)?;
    let table: hw::StirlingTable = gen_stirling(&omega, n, DEFAULT_WORD_LIMIT)?;
    match cli.format {
        Format::Plain => print!("{}", table.to_triangle()),
        Format::Json => println!("{}", serde_json::to_string(&table).expect("serializable table")),
        Format::Csv => print!("{}", table.to_csv()),
    }
    Ok(0)
}

fn cmd_compare_bfile(
    cli: &Cli,
    family: &FamilyArgs,
    stat: &StatArgs,
    atoms: bool,
    order: usize,
    bfile: &Path,
) -> Outcome {
    let reference = read_bfile(bfile).map_err(Error::from)?;
    let (tag, statistic, series) = series_for(cli, family, stat, atoms, order)?;
    let values: Vec<BigInt> = series
        .as_integers()
        .ok_or_else(|| Failure::Usage(format!("statistic `{statistic}` does not give an integer sequence")))?;
    let result = compare(&values, 0, &reference);
    match cli.format {
        Format::Plain => println!("{result}"),
        Format::Json => {
            println!("{}", json!({ "family": tag, "statistic": statistic, "atoms": atoms, "comparison": result }))
        }
        Format::Csv => {
            println!("status,index");
            match &result {
                expformula::bfile::Comparison::Mismatch { index, .. } => println!("MISMATCH,{index}"),
                other => println!("{},", if other.is_match() { "MATCH" } else { "NO_OVERLAP" }),
            }
        }
    }
    Ok(if result.is_match() { 0 } else { 1 })
}
