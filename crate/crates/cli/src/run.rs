use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use sharpcert::certify::{
    certificate_search, run_case, verify_certificate_enumerated, Case, CaseOptions, CertifyError, SearchBounds,
};
use sharpcert::designs::{symmetric_design_refutation, Design, DesignError};
use sharpcert::geometry::Action;
use sharpcert::gf::Field;
use sharpcert::linsys::{
    build_full_system, build_h_system, random_restriction_probe, restrict_to_fpf, solve, ExactSystem, LinsysError,
    ProbeConfig, Ring,
};
use sharpcert::perm::{
    enumerate, induced_action, read_group_file, GroupEnumeration, GroupSpec, PermError, DEFAULT_ENUMERATION_CAP,
};
use sharpcert::search::{find_sharp_set, verify_sharp_set};

use crate::args::{ActionArg, Cli, Command, GroupArgs, LinsysArgs, RingArg, VerifyCase};
use crate::selftest;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Linsys(#[from] LinsysError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("search returned a set that fails verification")]
    WitnessRejected,
    #[error("selftest failed: {0}")]
    SelftestFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::MissingData(_) | CliError::Certify(CertifyError::MissingData(_)) => 3,
            _ => 1,
        }
    }
}

/// A finished run: the JSON report and whether it should still count as a failure.
pub struct Outcome {
    pub report: Value,
    pub failure: Option<CliError>,
}

fn envelope(command: &str, seed: u64, report: impl Serialize) -> Value {
    json!({ "command": command, "seed": seed, "report": report })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let seed = cli.seed;
    let done = |report| Ok(Outcome { report, failure: None });
    match &cli.command {
        Command::Verify { case } => done(envelope("verify", seed, verify(cli, case)?)),
        Command::DesignCheck { v, k, lambda } => {
            let trace = symmetric_design_refutation(*v, *k, *lambda).map_err(|e| match e {
                DesignError::Params { .. } => CliError::Usage(e.to_string()),
                other => other.into(),
            })?;
            done(envelope("design_check", seed, trace))
        }
        Command::SearchSharp { group, budget } => {
            let g = load_group(&cli.data_dir, &group.group)?;
            let outcome = find_sharp_set(&g, group.t, *budget)?;
            let verified = match outcome.found() {
                Some(set) => Some(verify_sharp_set(&g, &set.elements, set.t)?),
                None => None,
            };
            let members = outcome.found().map(|set| {
                set.elements
                    .iter()
                    .map(|&i| g.elements()[i].images().to_vec())
                    .collect::<Vec<_>>()
            });
            let report = json!({
                "group": g.name(),
                "degree": g.degree(),
                "order": g.order(),
                "t": group.t,
                "outcome": outcome,
                "members": members,
                "verified": verified,
            });
            let failure = (verified == Some(false)).then_some(CliError::WitnessRejected);
            Ok(Outcome {
                report: envelope("search_sharp", seed, report),
                failure,
            })
        }
        Command::SearchCertificate {
            group,
            p,
            max_size,
            budget,
        } => {
            let g = acting_group(&cli.data_dir, group)?;
            let bounds = SearchBounds {
                max_size: max_size.unwrap_or(usize::MAX),
                budget: *budget,
                seed,
            };
            let report = match certificate_search(&g, *p, &bounds)? {
                Some(cert) => {
                    let mut r = verify_certificate_enumerated(&g, &cert)?;
                    r.notes.push(format!("B = {:?}", cert.b.iter().collect::<Vec<_>>()));
                    r.notes.push(format!("C = {:?}", cert.c.iter().collect::<Vec<_>>()));
                    json!({ "group": g.name(), "found": true, "verification": r })
                }
                None => json!({ "group": g.name(), "found": false, "verification": null }),
            };
            done(envelope("search_certificate", seed, report))
        }
        Command::Linsys(args) => done(envelope("linsys", seed, linsys(cli, args)?)),
        Command::Selftest => {
            let report = selftest::run(seed);
            let failed: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.label.clone())
                .collect();
            Ok(Outcome {
                report: envelope("selftest", seed, &report),
                failure: (!failed.is_empty()).then(|| CliError::SelftestFailed(failed.join(", "))),
            })
        }
    }
}

fn verify(cli: &Cli, case: &VerifyCase) -> Result<sharpcert::certify::VerificationReport, CliError> {
    let mut opts = CaseOptions {
        seed: cli.seed,
        ..Default::default()
    };
    let needs_w23 = matches!(case, VerifyCase::M22 { .. } | VerifyCase::Mclaughlin | VerifyCase::M23);
    if needs_w23 {
        let path = cli.data_dir.join("designs").join("w23.dsn");
        if path.exists() {
            let text = read(&path)?;
            opts.w23 = Some(Design::from_file("w23", &text)?);
        }
        let m22 = cli.data_dir.join("groups").join("m22.grp");
        if m22.exists() {
            opts.m22_generators = Some(read_spec(&m22)?);
        }
    }
    let case = match *case {
        VerifyCase::Sp {
            n,
            m,
            q,
            modulus,
            action,
            enumerate,
        } => {
            let m = match (m, q) {
                (_, Some(q)) => Field::of_order(q).map_err(|e| CliError::Usage(e.to_string()))?.degree(),
                (m, None) => m.unwrap_or(1),
            };
            if let Some(modulus) = modulus {
                Field::with_modulus(m, modulus).map_err(|e| CliError::Usage(e.to_string()))?;
            }
            opts.enumerate_group = enumerate;
            opts.field_modulus = modulus;
            let action = match action {
                ActionArg::Projective => Action::Projective,
                ActionArg::Vector => Action::Vector,
            };
            Case::Sp { n, m, action }
        }
        VerifyCase::M22 { enumerate } => {
            if enumerate && opts.m22_generators.is_none() {
                return Err(CliError::MissingData(format!(
                    "{} is required for --enumerate",
                    cli.data_dir.join("groups").join("m22.grp").display()
                )));
            }
            opts.enumerate_group = enumerate;
            Case::M22
        }
        VerifyCase::Mclaughlin => Case::McLaughlin,
        VerifyCase::Alt { n } => Case::Alt { n },
        VerifyCase::M23 => Case::M23,
    };
    Ok(run_case(&case, &opts)?)
}

#[derive(Serialize)]
struct LinsysReport {
    group: String,
    degree: usize,
    order: usize,
    subgroup: Option<SubgroupInfo>,
    ring: Ring,
    equations: usize,
    variables: usize,
    fpf: bool,
    pin_identity: bool,
    probe: Option<ProbeInfo>,
    outcome: sharpcert::linsys::SolveOutcome,
    elapsed_ms: u64,
}

#[derive(Serialize)]
struct SubgroupInfo {
    name: String,
    order: usize,
}

#[derive(Serialize)]
struct ProbeInfo {
    keep: usize,
    trials: usize,
    seed: u64,
}

fn linsys(cli: &Cli, args: &LinsysArgs) -> Result<LinsysReport, CliError> {
    let start = std::time::Instant::now();
    let g = acting_group(&cli.data_dir, &args.group)?;
    let h = match &args.subgroup {
        Some(name) => {
            let spec = resolve_spec(&cli.data_dir, name)?;
            let base = enumerate(&spec, DEFAULT_ENUMERATION_CAP)?;
            Some(if args.group.t == 1 {
                base
            } else {
                induced_action(&base, args.group.t)?.1
            })
        }
        None => None,
    };
    let mut system = match &h {
        Some(h) => build_h_system(&g, h)?,
        None => build_full_system(&g),
    };
    if args.fpf {
        system = restrict_to_fpf(&system, g.elements(), args.pin_identity);
    }
    let ring = match args.ring {
        RingArg::Fp => Ring::Fp(
            args.p
                .ok_or_else(|| CliError::Usage("--ring f_p requires --p".into()))?,
        ),
        RingArg::Q => Ring::Rational,
        RingArg::Z => Ring::Integer,
        RingArg::Znn => Ring::NonNegInteger,
    };
    if args.p.is_some() && args.ring != RingArg::Fp {
        return Err(CliError::Usage("--p only applies to --ring f_p".into()));
    }
    let system: ExactSystem = system.with_ring(ring);
    if let Some(path) = &args.export {
        fs::write(path, system.export()).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let (outcome, probe) = match args.probe {
        Some(probe) => {
            if !matches!(args.ring, RingArg::Z | RingArg::Znn) {
                return Err(CliError::Usage("--probe needs --ring z or znn".into()));
            }
            let config = ProbeConfig {
                keep: probe.keep,
                trials: probe.trials,
                seed: probe.seed.unwrap_or(cli.seed),
                nonneg: args.ring == RingArg::Znn,
            };
            let out = random_restriction_probe(&system, config)?;
            (
                out,
                Some(ProbeInfo {
                    keep: config.keep,
                    trials: config.trials,
                    seed: config.seed,
                }),
            )
        }
        None => (solve(&system, args.budget)?, None),
    };
    Ok(LinsysReport {
        group: g.name().to_string(),
        degree: g.degree(),
        order: g.order(),
        subgroup: h.as_ref().map(|h| SubgroupInfo {
            name: h.name().to_string(),
            order: h.order(),
        }),
        ring,
        equations: system.equation_count(),
        variables: system.variable_count(),
        fpf: args.fpf,
        pin_identity: args.pin_identity,
        probe,
        outcome,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::MissingData(path.display().to_string()),
        _ => CliError::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })
}

fn read_spec(path: &Path) -> Result<GroupSpec, CliError> {
    match read_group_file(path) {
        Ok(parsed) => Ok(parsed?),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(CliError::MissingData(path.display().to_string())),
        Err(source) => Err(CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
    }
}

/// A literal path, or a file name (with or without `.grp`) under `<data-dir>/groups`.
fn resolve_spec(data_dir: &Path, name: &str) -> Result<GroupSpec, CliError> {
    let direct = PathBuf::from(name);
    if direct.is_file() {
        return read_spec(&direct);
    }
    let groups = data_dir.join("groups");
    for candidate in [groups.join(name), groups.join(format!("{name}.grp"))] {
        if candidate.is_file() {
            return read_spec(&candidate);
        }
    }
    Err(CliError::MissingData(format!(
        "group `{name}` (not a file, nor under {})",
        groups.display()
    )))
}

fn load_group(data_dir: &Path, name: &str) -> Result<GroupEnumeration, CliError> {
    let spec = resolve_spec(data_dir, name)?;
    let g = enumerate(&spec, DEFAULT_ENUMERATION_CAP)?;
    g.check_declared_order(&spec)?;
    Ok(g)
}

fn acting_group(data_dir: &Path, args: &GroupArgs) -> Result<GroupEnumeration, CliError> {
    let g = load_group(data_dir, &args.group)?;
    if args.t == 1 {
        return Ok(g);
    }
    Ok(induced_action(&g, args.t)?.1)
}
