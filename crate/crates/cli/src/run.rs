use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use hhx::actions::{enumerate_slots, paranoid_closure, sweep_closure, ActionError, ActionPartition, ActionReport};
use hhx::cochain::{CochainError, CochainReport, CochainSetup, IdentityOutcome};
use hhx::coeffalg::{
    expected_keys, parse_algebra, parse_module, Algebra, CoeffError, CoefficientAssignment, Keying, MultiModule,
};
use hhx::simplicial::{parse_space, SimplicialSpace, SpaceDocument, SpaceError, ValidationReport};

use crate::args::{ActionsArgs, CohomologyArgs, Format, SpaceSource, ValidateArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Space(#[from] SpaceError),
    #[error("{0}")]
    Action(#[from] ActionError),
    #[error("{0}")]
    Coeff(#[from] CoeffError),
    #[error("{0}")]
    Cochain(#[from] CochainError),
    #[error("{0}")]
    Usage(String),
    #[error("full scan up to dimension {0} disagrees with the generator closure")]
    ParanoidMismatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => EXIT_PARSE,
            CliError::Space(SpaceError::IdentityViolation(_)) => EXIT_INVALID,
            CliError::Space(_) => EXIT_PARSE,
            CliError::Action(_) | CliError::ParanoidMismatch(_) => EXIT_INVALID,
            CliError::Coeff(e) if e.is_parse_error() => EXIT_PARSE,
            CliError::Coeff(_) => EXIT_INVALID,
            CliError::Cochain(CochainError::Budget { .. }) => EXIT_BUDGET,
            CliError::Cochain(_) => EXIT_INVALID,
        }
    }
}

/// What a command prints on stdout, and its exit status.
pub struct Outcome {
    pub stdout: String,
    pub status: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Loads without checking the simplicial identities.
fn load_unchecked(source: &SpaceSource) -> Result<SimplicialSpace, CliError> {
    match (&source.space, &source.builtin) {
        (Some(path), _) => Ok(SpaceDocument::from_json(&read(path)?)?.resolve()?),
        (None, Some(name)) => Ok(SimplicialSpace::builtin(name)?),
        (None, None) => Err(CliError::Usage("one of --space or --builtin is required".into())),
    }
}

fn load(source: &SpaceSource) -> Result<SimplicialSpace, CliError> {
    match &source.space {
        Some(path) => Ok(parse_space(&read(path)?)?),
        None => load_unchecked(source),
    }
}

#[derive(Serialize)]
struct ValidateOutput<'a> {
    space: &'a str,
    passed: bool,
    #[serde(flatten)]
    report: &'a ValidationReport,
}

pub fn validate(args: &ValidateArgs) -> Result<Outcome, CliError> {
    let space = load_unchecked(&args.source)?;
    let report = space.validate();
    let stdout = match args.format {
        Format::Json => json(&ValidateOutput { space: space.name(), passed: report.passed(), report: &report }),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "space {}: {} generators, top dimension {}",
                space.name(),
                space.generators().len(),
                space.max_dim()
            );
            if report.passed() {
                out.push_str("simplicial identities: pass\n");
            } else {
                let _ = writeln!(out, "simplicial identities: {} violation(s)", report.violations.len());
                for v in &report.violations {
                    let _ = writeln!(out, "  {v}");
                }
            }
            out
        }
    };
    Ok(Outcome { stdout, status: if report.passed() { EXIT_OK } else { EXIT_INVALID } })
}

#[derive(Serialize)]
struct ParanoidCheck {
    cap: usize,
    agrees: bool,
}

#[derive(Serialize)]
struct ActionsOutput {
    space: String,
    #[serde(flatten)]
    report: ActionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    paranoid: Option<ParanoidCheck>,
}

fn paranoid_check(
    space: &SimplicialSpace,
    fast: &ActionPartition,
    cap: Option<usize>,
) -> Result<Option<ParanoidCheck>, CliError> {
    cap.map(|cap| {
        let full = paranoid_closure(space, cap)?;
        Ok(ParanoidCheck { cap, agrees: &full == fast })
    })
    .transpose()
}

fn actions_text(space: &SimplicialSpace, partition: &ActionPartition, paranoid: &Option<ParanoidCheck>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "space: {}", space.name());
    let slots = enumerate_slots(space);
    let _ = writeln!(out, "slots ({}):", slots.len());
    for slot in &slots {
        let _ = writeln!(out, "  {:<12} {}", slot.name(space), slot.describe(space));
    }
    let _ = writeln!(out, "classes ({}): {}", partition.class_count(), partition.coefficient_kind());
    for (class, members) in partition.classes().iter().zip(partition.class_members()) {
        let _ = writeln!(out, "  {}: {}", class.id, members.join(", "));
    }
    if let Some(p) = paranoid {
        let verdict = if p.agrees { "agrees" } else { "DISAGREES" };
        let _ = writeln!(out, "full scan up to dimension {}: {verdict}", p.cap);
    }
    out
}

fn template(alg: &Algebra, partition: &ActionPartition, keying: Keying) -> String {
    json(&MultiModule::template(alg, alg.dim(), &expected_keys(partition, keying)))
}

fn keying(override_slots: bool) -> Keying {
    if override_slots {
        Keying::BySlot
    } else {
        Keying::ByClass
    }
}

pub fn actions(args: &ActionsArgs) -> Result<Outcome, CliError> {
    let space = load(&args.source)?;
    let partition = sweep_closure(&space)?;
    let paranoid = paranoid_check(&space, &partition, args.paranoid)?;
    if let (Some(path), Some(alg_path)) = (&args.emit_template, &args.algebra) {
        let alg = parse_algebra(&read(alg_path)?, None)?;
        write(path, &template(&alg, &partition, keying(args.override_slots)))?;
    }
    let agrees = paranoid.as_ref().is_none_or(|p| p.agrees);
    let stdout = match args.format {
        Format::Json => json(&ActionsOutput { space: space.name().to_string(), report: partition.report(), paranoid }),
        Format::Text => actions_text(&space, &partition, &paranoid),
    };
    Ok(Outcome { stdout, status: if agrees { EXIT_OK } else { EXIT_INVALID } })
}

fn cohomology_text(report: &CochainReport, alg: &Algebra, module: &MultiModule) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "space: {}", report.space);
    let _ = writeln!(out, "algebra: dimension {} over {}, basis {}", alg.dim(), alg.field(), alg.basis().join(" "));
    let keys: Vec<&str> = module.keys().collect();
    let _ = writeln!(out, "module: dimension {}, actions {}", module.dim(), keys.join(", "));
    let _ = writeln!(out, "t:        {:?}", report.t);
    let _ = writeln!(out, "hom dims: {:?}", report.hom_dims);
    match &report.identities {
        IdentityOutcome::Pass(_) => out.push_str("cosimplicial identities: pass\n"),
        IdentityOutcome::Failures(fs) => {
            let _ = writeln!(out, "cosimplicial identities: {} failure(s)", fs.len());
            for f in fs {
                let name = serde_json::to_value(f.relation).expect("relation serializes");
                let name = name.as_str().unwrap_or("?");
                let _ = match (f.i, f.j) {
                    (Some(i), Some(j)) => writeln!(out, "  {name} in degree {} (i={i}, j={j})", f.degree),
                    _ => writeln!(out, "  {name} in degree {}", f.degree),
                };
            }
        }
    }
    if let Some(hh) = &report.hh_dims {
        for (n, d) in hh.iter().enumerate() {
            let _ = writeln!(out, "HH^{n} = {d}");
        }
    }
    out
}

pub fn cohomology(args: &CohomologyArgs) -> Result<Outcome, CliError> {
    let space = load(&args.source)?;
    let partition = sweep_closure(&space)?;
    if let Some(check) = paranoid_check(&space, &partition, args.paranoid)? {
        if !check.agrees {
            return Err(CliError::ParanoidMismatch(check.cap));
        }
    }
    let keying = keying(args.override_slots);
    let alg = parse_algebra(&read(&args.algebra)?, args.field)?;
    if let Some(path) = &args.emit_template {
        write(path, &template(&alg, &partition, keying))?;
        return Ok(Outcome { stdout: String::new(), status: EXIT_OK });
    }
    let module_path = args.module.as_ref().ok_or_else(|| CliError::Usage("--module is required".into()))?;
    let module = parse_module(&read(module_path)?, &alg, &expected_keys(&partition, keying))?;
    let assignment = CoefficientAssignment::new(partition, module.clone(), keying)?;
    let max_degree = args.max_degree as usize;
    let setup = CochainSetup::with_budget(space, alg.clone(), assignment, max_degree, args.budget)?;
    let report = setup.report()?;
    let status = if report.hh_dims.is_some() { EXIT_OK } else { EXIT_INVALID };
    let stdout = match args.format {
        Format::Json => json(&report),
        Format::Text => cohomology_text(&report, &alg, &module),
    };
    Ok(Outcome { stdout, status })
}
