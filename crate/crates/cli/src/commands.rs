use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;

use circlequot::blockcore::{build_block, verify_block, Level, ModularBlock};
use circlequot::error::Error;
use circlequot::modblocks::{build_modified_network, degenerate, Weighting};
use circlequot::modtiling::{FareyEdge, Pattern, PatternSpec};
use circlequot::netbuild::{audit_network, dump_network, export_cloud, Format, Projection, FORMAT_VERSION};

use crate::Command;

/// Largest block size accepted by `verify-block` and `dump-block`.
pub const MAX_K: usize = 12;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: String) -> CliError {
        CliError { code: 2, message }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::Input(_) | Error::Dimension(_) | Error::Domain(_) | Error::OutOfRange(_) => 2,
            Error::Incomplete(_) | Error::Depth(_) => 3,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type Res<T> = Result<T, CliError>;

pub struct Outcome {
    pub text: String,
    pub status: u8,
    pub out: Option<PathBuf>,
    pub notes: Vec<String>,
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_pattern(path: &Path) -> Res<Pattern> {
    let spec: PatternSpec = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::input(format!("{}: pattern file: {e}", path.display())))?;
    Ok(Pattern::from_spec(&spec)?)
}

fn load_weighting(path: Option<&Path>, p: &Pattern) -> Res<Weighting> {
    match path {
        Some(w) => Ok(Weighting::from_json(&read(w)?, p)?),
        None => Ok(Weighting::Unit),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn check_k(k: usize) -> Res<()> {
    if !(2..=MAX_K).contains(&k) {
        return Err(CliError::input(format!("k must lie in 2..={MAX_K}, got {k}")));
    }
    Ok(())
}

fn rebase(dir: &Path, p: &mut PathBuf) {
    if p.is_relative() {
        *p = dir.join(&*p);
    }
}

fn rebase_opt(dir: &Path, p: &mut Option<PathBuf>) {
    if let Some(p) = p {
        rebase(dir, p);
    }
}

#[derive(Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyBlockArgs {
    /// Block size; n = 2k − 1.
    #[arg(long, required_unless_present = "block")]
    pub k: Option<usize>,
    /// `full` or `structural`; defaults to full for k ≤ 5.
    #[arg(long)]
    pub level: Option<Level>,
    /// Verify a block read from a file (serde form, see `dump-block --raw`).
    #[arg(long)]
    pub block: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildArgs {
    /// Pattern file: `{"seeds": ["LR", …]}`.
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub depth: usize,
    /// Weighting file; omitted means f ≡ 1.
    #[arg(long)]
    pub weighting: Option<PathBuf>,
    /// Export the vertex cloud as csv, ply or json instead of a summary.
    #[arg(long)]
    pub export: Option<Format>,
    /// hadamard, first3 or lift; defaults to hadamard for k = 2.
    #[arg(long)]
    pub projection: Option<Projection>,
    /// Run the network audits; exit 1 if one fails.
    #[arg(long)]
    #[serde(default)]
    pub audit: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegenerateArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    /// Pattern whose seeds are seeds of `pattern`; `{"seeds": []}` is the empty pattern.
    #[arg(long)]
    pub sub_pattern: PathBuf,
    #[arg(long, default_value_t = 6)]
    #[serde(default = "six")]
    pub steps: usize,
    #[arg(long, default_value_t = 2)]
    #[serde(default = "two")]
    pub depth: usize,
    /// Weighting of the sub-pattern; omitted means f ≡ 1.
    #[arg(long)]
    pub weighting: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn six() -> usize {
    6
}

fn two() -> usize {
    2
}

#[derive(Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaEArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    /// Edge address, e.g. `1/0,0/1`.
    #[arg(long)]
    pub edge: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DumpBlockArgs {
    #[arg(long)]
    pub k: usize,
    /// Write the serde form that `verify-block --block` reads.
    #[arg(long)]
    #[serde(default)]
    pub raw: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DumpNetworkArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub depth: usize,
    #[arg(long)]
    pub weighting: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn dispatch(cmd: Command) -> Res<Outcome> {
    match cmd {
        Command::VerifyBlock(a) => verify(a),
        Command::Build(a) => build(a),
        Command::Degenerate(a) => degen(a),
        Command::GammaE(a) => gamma_e(a),
        Command::DumpBlock(a) => dump_block(a),
        Command::DumpNetwork(a) => dump_net(a),
        Command::Run { config } => run(&config),
    }
}

/// Reads a config file and runs its command. Relative paths are taken from
/// the config file's directory.
fn run(config: &Path) -> Res<Outcome> {
    let mut cmd: Command = serde_json::from_str(&read(config)?)
        .map_err(|e| CliError::input(format!("{}: config: {e}", config.display())))?;
    let dir = config.parent().unwrap_or(Path::new("."));
    match &mut cmd {
        Command::VerifyBlock(a) => {
            rebase_opt(dir, &mut a.block);
            rebase_opt(dir, &mut a.out);
        }
        Command::Build(a) => {
            rebase(dir, &mut a.pattern);
            rebase_opt(dir, &mut a.weighting);
            rebase_opt(dir, &mut a.out);
        }
        Command::Degenerate(a) => {
            rebase(dir, &mut a.pattern);
            rebase(dir, &mut a.sub_pattern);
            rebase_opt(dir, &mut a.weighting);
            rebase_opt(dir, &mut a.out);
        }
        Command::GammaE(a) => {
            rebase(dir, &mut a.pattern);
            rebase_opt(dir, &mut a.out);
        }
        Command::DumpBlock(a) => rebase_opt(dir, &mut a.out),
        Command::DumpNetwork(a) => {
            rebase(dir, &mut a.pattern);
            rebase_opt(dir, &mut a.weighting);
            rebase_opt(dir, &mut a.out);
        }
        Command::Run { .. } => unreachable!("not deserializable"),
    }
    dispatch(cmd)
}

fn verify(a: VerifyBlockArgs) -> Res<Outcome> {
    let block = match (&a.block, a.k) {
        (Some(path), _) => ModularBlock::from_json(&read(path)?)?,
        (None, Some(k)) => {
            check_k(k)?;
            build_block(k)?
        }
        (None, None) => return Err(CliError::input("give --k or --block".into())),
    };
    let level = a.level.unwrap_or_else(|| Level::default_for(block.k()));
    let report = verify_block(&block, level)?;
    let notes = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("failed: {} ({})", c.name, c.detail))
        .collect();
    Ok(Outcome {
        text: to_json(&report),
        status: if report.passed { 0 } else { 1 },
        out: a.out,
        notes,
    })
}

fn build(a: BuildArgs) -> Res<Outcome> {
    let p = load_pattern(&a.pattern)?;
    let f = load_weighting(a.weighting.as_deref(), &p)?;
    let net = build_modified_network(&p, &f, a.depth)?;
    let checks = if a.audit { audit_network(&net)? } else { Vec::new() };
    let failed: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| format!("failed: {} ({})", c.name, c.detail)).collect();
    let status = if failed.is_empty() { 0 } else { 1 };
    let cloud = net.limit_cloud();
    let text = match a.export {
        Some(fmt) => {
            let proj = a.projection.unwrap_or_else(|| Projection::default_for(2 * net.k()));
            export_cloud(&cloud, fmt, proj)?
        }
        None => to_json(&json!({
            "format_version": FORMAT_VERSION,
            "pattern": p.spec(),
            "depth": a.depth,
            "k": net.k(),
            "weighted": net.weighted,
            "blocks": net.blocks.len(),
            "edges": net.edges.len(),
            "cloud_points": cloud.len(),
            "diameter2_profile": net.diameter_profile()?.iter().map(circlequot::exactnum::rational::to_string).collect::<Vec<_>>(),
            "checks": checks,
        })),
    };
    Ok(Outcome {
        text,
        status,
        out: a.out,
        notes: failed,
    })
}

fn degen(a: DegenerateArgs) -> Res<Outcome> {
    let p = load_pattern(&a.pattern)?;
    let sub = load_pattern(&a.sub_pattern)?;
    let f = load_weighting(a.weighting.as_deref(), &sub)?;
    let report = degenerate(&p, &sub, &f, a.steps, a.depth)?;
    let mut notes = Vec::new();
    if !report.nonincreasing {
        notes.push("distances are not monotone along the sequence".to_string());
    }
    Ok(Outcome {
        text: to_json(&json!({ "format_version": FORMAT_VERSION, "report": report })),
        status: if report.nonincreasing { 0 } else { 3 },
        out: a.out,
        notes,
    })
}

fn gamma_e(a: GammaEArgs) -> Res<Outcome> {
    let p = load_pattern(&a.pattern)?;
    let e = FareyEdge::parse(&a.edge)?;
    let list = p.orbit_enumerate(&e)?;
    let objs = p.gamma_e(&e)?;
    let text = to_json(&json!({
        "format_version": FORMAT_VERSION,
        "edge": e.to_string(),
        "k": p.k()?,
        "gamma_e": objs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "certificate": list.certificate,
    }));
    Ok(Outcome {
        text,
        status: 0,
        out: a.out,
        notes: Vec::new(),
    })
}

fn dump_block(a: DumpBlockArgs) -> Res<Outcome> {
    check_k(a.k)?;
    let b = build_block(a.k)?;
    let text = if a.raw { to_json(&b) } else { to_json(&b.dump()) };
    Ok(Outcome {
        text,
        status: 0,
        out: a.out,
        notes: Vec::new(),
    })
}

fn dump_net(a: DumpNetworkArgs) -> Res<Outcome> {
    let p = load_pattern(&a.pattern)?;
    let f = load_weighting(a.weighting.as_deref(), &p)?;
    let net = build_modified_network(&p, &f, a.depth)?;
    Ok(Outcome {
        text: dump_network(&net)?,
        status: 0,
        out: a.out,
        notes: Vec::new(),
    })
}
