//! `salem`: command-line front end for the certificate pipelines.
//!
//! Every command prints pretty JSON on stdout. Failures print a diagnostic
//! on stderr and exit with 2 for bad input or unmet preconditions, 3 when a
//! bounded search runs out.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use salem_core::exact::serde_impls::set_decimal_digits;
use salem_core::realize::PositivizeConfig;
use salem_core::thurston::salem_from_2x2;
use salem_core::{
    analyze, build_surface, classify_salem, classify_word, field_pipeline, pf_data, pf_of_product, salem_certificate,
    veech_check, CertificateConfig, Error, IntPolynomial, RatMatrix, Result, RoutingPlan, SkewPowerCertificate,
    TotallyRealField, TwistWeights, UnitSystem, Word,
};

#[derive(Parser, Debug)]
#[command(
    name = "salem",
    version,
    about = "Exact pipelines from Salem numbers and totally real fields to pseudo-Anosov stretch factors"
)]
struct Cli {
    #[command(flatten)]
    config: PipelineConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct PipelineConfig {
    /// Least entry of the positive power; 2 makes the genus formula apply.
    #[arg(long, global = true, default_value_t = 1)]
    entry_floor: i64,
    /// Entry bound for the symmetric realization search.
    #[arg(long, global = true, default_value_t = 6)]
    search_bound: i64,
    /// Cap on every power search.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_power: u64,
    /// Width of printed decimals, e.g. 1e-12 for 12 digits.
    #[arg(long, global = true, default_value_t = 1e-12)]
    precision: f64,
}

impl PipelineConfig {
    fn certificate(&self) -> Result<CertificateConfig> {
        if self.entry_floor < 1 || self.search_bound < 1 || self.max_power < 1 {
            return Err(Error::precondition(
                "entry floor, search bound and max power must be positive",
            ));
        }
        if !(self.precision > 0.0 && self.precision < 1.0) {
            return Err(Error::precondition("precision must lie in (0, 1)"));
        }
        Ok(CertificateConfig {
            entry_floor: self.entry_floor,
            search_bound: self.search_bound,
            e_max: 2,
            max_power: self.max_power,
            positivize: PositivizeConfig::default(),
        })
    }

    fn digits(&self) -> usize {
        (-self.precision.log10()).ceil().max(1.0) as usize
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify an integer polynomial as Salem, quadratic reciprocal unit or neither.
    Classify { polynomial: String },
    /// Build and check the skew-power certificate for a Salem polynomial.
    Certify {
        #[arg(required_unless_present = "verify")]
        polynomial: Option<String>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-check a saved certificate without rerunning any search.
        #[arg(long, conflicts_with = "polynomial")]
        verify: Option<PathBuf>,
    },
    /// Glue the surface for a positive integer intersection matrix.
    Surface {
        #[arg(long)]
        matrix: String,
        /// JSON routing plan; the canonical routing when absent.
        #[arg(long)]
        routing: Option<PathBuf>,
    },
    /// Thurston's construction on a pair of multicurves.
    Thurston {
        #[arg(long)]
        matrix: String,
        /// The matrix is the product MQNQᵀ itself.
        #[arg(long)]
        pf_product: bool,
        /// Twist weights on the C curves, one per column.
        #[arg(long, value_delimiter = ',')]
        n_weights: Option<Vec<i64>>,
        /// Twist weights on the D curves, one per row.
        #[arg(long, value_delimiter = ',')]
        m_weights: Option<Vec<i64>>,
        #[arg(long, default_value = "CD")]
        word: String,
    },
    /// From a totally real field to a pseudo-Anosov map with that trace field.
    PipelineField {
        polynomial: String,
        /// A unit as a polynomial in the generator `a`; repeat for each.
        #[arg(long = "unit")]
        units: Vec<String>,
    },
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::invariant(format!("serialization: {e}")))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::precondition(format!("cannot read {}: {e}", path.display())))
}

fn polynomial(s: &str) -> Result<IntPolynomial> {
    s.parse()
}

fn run(cli: &Cli) -> Result<String> {
    let config = cli.config.certificate()?;
    set_decimal_digits(cli.config.digits());
    match &cli.command {
        Command::Classify { polynomial: p } => pretty(&classify_salem(&polynomial(p)?)?),
        Command::Certify { verify: Some(path), .. } => {
            let cert = SkewPowerCertificate::from_json(&read(path)?)?;
            let report = cert.verify();
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|(name, ok)| json!({ "check": name, "passed": ok }))
                .collect();
            if let Some(name) = report.first_failure() {
                eprintln!("{}", pretty(&json!({ "passed": false, "checks": checks }))?);
                return Err(Error::precondition(format!("certificate check {name} failed")));
            }
            pretty(&json!({ "passed": true, "checks": checks }))
        }
        Command::Certify { polynomial: p, out, .. } => {
            let p = p.as_deref().expect("clap requires a polynomial");
            let cert = salem_certificate(&polynomial(p)?, &config)?;
            let text = cert.to_json();
            match out {
                Some(path) => {
                    fs::write(path, format!("{text}\n"))
                        .map_err(|e| Error::precondition(format!("cannot write {}: {e}", path.display())))?;
                    pretty(&json!({ "written": path.display().to_string(), "k": cert.k }))
                }
                None => Ok(text),
            }
        }
        Command::Surface { matrix, routing } => {
            let q = RatMatrix::parse_json(matrix)?;
            let plan = match routing {
                Some(path) => Some(
                    serde_json::from_str::<RoutingPlan>(&read(path)?)
                        .map_err(|e| Error::parse(format!("routing plan: {e}")))?,
                ),
                None => None,
            };
            let s = build_surface(&q, plan.as_ref())?;
            let report = analyze(&s)?;
            pretty(&json!({ "surface": s, "report": report }))
        }
        Command::Thurston {
            matrix,
            pf_product,
            n_weights,
            m_weights,
            word,
        } => {
            let q = RatMatrix::parse_json(matrix)?;
            let word: Word = word.parse()?;
            let pf = if *pf_product {
                if n_weights.is_some() || m_weights.is_some() {
                    return Err(Error::precondition(
                        "weights are already folded into a --pf-product matrix",
                    ));
                }
                pf_of_product(&q)?
            } else {
                let n = n_weights.clone().unwrap_or_else(|| vec![1; q.cols()]);
                let m = m_weights.clone().unwrap_or_else(|| vec![1; q.rows()]);
                pf_data(&q, &TwistWeights::new(n, m)?)?
            };
            let report = classify_word(&word, &pf.nu)?;
            let veech = report.stretch.as_ref().map(veech_check).transpose()?;
            // a 2×2 product also has a direct Salem reading
            let salem = if *pf_product && q.rows() == 2 && q.cols() == 2 {
                salem_from_2x2(&q).ok()
            } else {
                None
            };
            pretty(&json!({ "pf": pf, "report": report, "veech": veech, "salem": salem }))
        }
        Command::PipelineField { polynomial: p, units } => {
            let k = TotallyRealField::new(polynomial(p)?)?;
            let units = if units.is_empty() {
                None
            } else {
                Some(UnitSystem::parse(&k, units)?)
            };
            pretty(&field_pipeline(&k, units, &config)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("salem: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
