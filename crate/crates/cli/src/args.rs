use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hhx", version, about = "Higher-order Hochschild cohomology of pointed simplicial sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the simplicial identities of a space.
    Validate(ValidateArgs),
    /// Compute action slots and the classes of slots forced to agree.
    Actions(ActionsArgs),
    /// Check the cosimplicial identities and compute HH^0..HH^N.
    Cohomology(CohomologyArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SpaceSource {
    /// Space document (JSON).
    #[arg(long, value_name = "PATH")]
    pub space: Option<PathBuf>,
    /// Built-in space: circle, sphereN, torus, pinched-torus.
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub source: SpaceSource,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ActionsArgs {
    #[command(flatten)]
    pub source: SpaceSource,
    /// Also rescan every simplex up to this dimension and compare.
    #[arg(long, value_name = "CAP")]
    pub paranoid: Option<usize>,
    /// Write a module skeleton keyed by the computed class ids (needs --algebra).
    #[arg(long, value_name = "PATH", requires = "algebra")]
    pub emit_template: Option<PathBuf>,
    /// Algebra document, used to size the template.
    #[arg(long, value_name = "PATH")]
    pub algebra: Option<PathBuf>,
    /// Key the template by slot instead of by class.
    #[arg(long)]
    pub override_slots: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub source: SpaceSource,
    /// Algebra document (JSON).
    #[arg(long, value_name = "PATH")]
    pub algebra: PathBuf,
    /// Module document (JSON), keyed by class id.
    #[arg(long, value_name = "PATH", required_unless_present = "emit_template")]
    pub module: Option<PathBuf>,
    /// Highest cohomological degree N.
    #[arg(short = 'N', long = "max-degree", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_degree: u64,
    /// Also run the full-scan closure up to this dimension and require agreement.
    #[arg(long, value_name = "CAP")]
    pub paranoid: Option<usize>,
    /// Test mode: key module actions by slot name and ignore the classes.
    #[arg(long)]
    pub override_slots: bool,
    /// Largest hom-space dimension to build.
    #[arg(long, default_value_t = hhx::cochain::DEFAULT_BUDGET)]
    pub budget: usize,
    /// Read the algebra and module over this field instead: Q or Fp (e.g. F5).
    #[arg(long, value_parser = parse_field)]
    pub field: Option<hhx::exactlinalg::Field>,
    /// Write a module skeleton for the computed keys to PATH and stop.
    #[arg(long, value_name = "PATH")]
    pub emit_template: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

pub fn parse_field(text: &str) -> Result<hhx::exactlinalg::Field, String> {
    use hhx::exactlinalg::Field;
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rationals);
    }
    let digits = t.strip_prefix("F_").or_else(|| t.strip_prefix("Fp")).or_else(|| t.strip_prefix('F')).unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| format!("expected Q or Fp, got {text:?}"))?;
    Field::prime(p).map_err(|e| e.to_string())
}
