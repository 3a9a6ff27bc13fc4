//! Command-line flags and their validation into a [`RunConfig`].

use std::fmt;
use std::sync::Arc;

use acdual_core::{
    build_root_system, enumerate_weyl, make_character, CharacterPoint, DiagramInvolution,
    RootFamily, Subset, WeylGroup, DEFAULT_MAX_CHARACTERS, DEFAULT_MAX_GROUP_ORDER,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_TYPES: [&str; 6] = ["A1", "A2", "A3", "B2", "B3", "G2"];
pub const DEFAULT_MODULI: [u32; 5] = [1, 2, 3, 4, 6];

/// Failure of a command, carrying the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags or values that violate an operation's preconditions (exit 2).
    Usage(String),
    /// A computation produced an inconsistent result (exit 1).
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Failure(msg) => write!(f, "failure: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<acdual_core::Error> for CliError {
    fn from(e: acdual_core::Error) -> Self {
        match e {
            acdual_core::Error::Internal(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    /// Simple classes E
    E,
    /// Standard classes Delta, mapped to costandard classes
    Delta,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Coxeter,
    Matrices,
    Characters,
    Mackey,
    ClosedForms,
    Involution,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Coxeter,
        Suite::Matrices,
        Suite::Characters,
        Suite::Mackey,
        Suite::ClosedForms,
        Suite::Involution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coxeter => "coxeter",
            Suite::Matrices => "matrices",
            Suite::Characters => "characters",
            Suite::Mackey => "mackey",
            Suite::ClosedForms => "closed-forms",
            Suite::Involution => "involution",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "acdual",
    version,
    about = "Alvis-Curtis duality on the Grothendieck group of the principal category"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, Cartan matrix, root and group counts, longest length and diagram involution
    Rootsys(CommonArgs),
    /// Duality images of every basis class of a configuration
    Duality(CommonArgs),
    /// Mackey decomposition of R_J applied to Delta(theta)_K
    Mackey(CommonArgs),
    /// Run verification suites over a matrix of types and moduli
    Verify(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Root system type such as A2, B3, G2
    #[arg(long = "type", value_name = "TYPE")]
    pub type_string: Option<String>,
    #[arg(long)]
    pub modulus: Option<i64>,
    /// Residues of theta on the simple coroots, comma separated
    #[arg(long, value_name = "R1,R2,..", allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Indices of J, comma separated; "all" for I, "none" for the empty set
    #[arg(long = "J", value_name = "INDICES")]
    pub j: Option<String>,
    /// Indices of K, comma separated; "all" for I, "none" for the empty set
    #[arg(long = "K", value_name = "INDICES")]
    pub k: Option<String>,
    #[arg(long, value_enum, default_value = "e")]
    pub basis: BasisChoice,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Random elements per configuration in the involution suite
    #[arg(long, default_value_t = 100)]
    pub sample: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "ACDUAL_MAX_GROUP_ORDER", default_value_t = DEFAULT_MAX_GROUP_ORDER)]
    pub max_group_order: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_CHARACTERS)]
    pub max_characters: usize,
    /// Replacement images of the diagram involution, for exercising failure paths
    #[arg(long, hide = true, value_name = "IMAGES")]
    pub sigma_override: Option<String>,
}

/// A subset flag before it is checked against a rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetSpec {
    All,
    Indices(Vec<usize>),
}

impl SubsetSpec {
    pub fn resolve(&self, rank: usize, name: &str) -> CliResult<Subset> {
        match self {
            SubsetSpec::All => Ok(Subset::full(rank)),
            SubsetSpec::Indices(v) => {
                if let Some(bad) = v.iter().find(|&&i| i == 0 || i > rank) {
                    return Err(CliError::Usage(format!(
                        "--{name} index {bad} is outside 1..={rank}"
                    )));
                }
                Ok(Subset::from_indices(v.iter().copied()))
            }
        }
    }
}

/// Validated configuration shared by all commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub families: Vec<RootFamily>,
    pub moduli: Vec<u32>,
    pub theta: Option<Vec<i64>>,
    pub j: Option<SubsetSpec>,
    pub k: Option<SubsetSpec>,
    pub basis: BasisChoice,
    pub format: Format,
    pub suite: Suite,
    pub sample: usize,
    pub seed: u64,
    pub max_group_order: usize,
    pub max_characters: usize,
    pub sigma_override: Option<Vec<usize>>,
}

fn parse_list<T: std::str::FromStr>(raw: &str, flag: &str) -> CliResult<Vec<T>> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--{flag}: cannot parse {s:?}")))
        })
        .collect()
}

fn parse_subset(raw: &str, flag: &str) -> CliResult<SubsetSpec> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "all" => Ok(SubsetSpec::All),
        "none" | "empty" => Ok(SubsetSpec::Indices(Vec::new())),
        _ => parse_list(raw, flag).map(SubsetSpec::Indices),
    }
}

impl RunConfig {
    /// Validates flags. With `matrix` set, missing `--type`/`--modulus` select the default
    /// verification matrix; otherwise `--type` is required and the modulus defaults to 1.
    pub fn from_args(args: &CommonArgs, matrix: bool) -> CliResult<Self> {
        let families = match &args.type_string {
            Some(s) => vec![s.parse::<RootFamily>()?],
            None if matrix => DEFAULT_TYPES.iter().map(|s| s.parse().unwrap()).collect(),
            None => return Err(CliError::Usage("--type is required".into())),
        };
        let theta = args
            .theta
            .as_deref()
            .map(|raw| parse_list::<i64>(raw, "theta"))
            .transpose()?;
        let moduli = match args.modulus {
            Some(m) if m <= 0 || m > u32::MAX as i64 => {
                return Err(CliError::Usage(format!(
                    "--modulus must be a positive 32-bit integer, got {m}"
                )))
            }
            Some(m) => vec![m as u32],
            None if theta.as_ref().is_some_and(|t| t.iter().any(|&v| v != 0)) => {
                return Err(CliError::Usage(
                    "--theta with nonzero residues requires --modulus".into(),
                ))
            }
            None if matrix => DEFAULT_MODULI.to_vec(),
            None => vec![1],
        };
        if let Some(t) = &theta {
            if families.len() != 1 {
                return Err(CliError::Usage("--theta requires --type".into()));
            }
            let rank = families[0].rank();
            if t.len() != rank {
                return Err(CliError::Usage(format!(
                    "--theta has {} residues but {} has rank {rank}",
                    t.len(),
                    families[0]
                )));
            }
        }
        let j = args
            .j
            .as_deref()
            .map(|r| parse_subset(r, "J"))
            .transpose()?;
        let k = args
            .k
            .as_deref()
            .map(|r| parse_subset(r, "K"))
            .transpose()?;
        for (spec, name) in [(&j, "J"), (&k, "K")] {
            if let Some(spec) = spec {
                for f in &families {
                    spec.resolve(f.rank(), name)?;
                }
            }
        }
        let sigma_override = args
            .sigma_override
            .as_deref()
            .map(|raw| parse_list::<usize>(raw, "sigma-override"))
            .transpose()?;
        if let Some(images) = &sigma_override {
            for f in &families {
                if images.len() != f.rank() || images.iter().any(|&i| i == 0 || i > f.rank()) {
                    return Err(CliError::Usage(format!(
                        "--sigma-override must list {} indices in 1..={}",
                        f.rank(),
                        f.rank()
                    )));
                }
            }
        }
        if args.max_group_order == 0 || args.max_characters == 0 {
            return Err(CliError::Usage("caps must be positive".into()));
        }
        Ok(RunConfig {
            families,
            moduli,
            theta,
            j,
            k,
            basis: args.basis,
            format: args.format,
            suite: args.suite,
            sample: args.sample,
            seed: args.seed,
            max_group_order: args.max_group_order,
            max_characters: args.max_characters,
            sigma_override,
        })
    }

    pub fn family(&self) -> RootFamily {
        self.families[0]
    }

    pub fn modulus(&self) -> u32 {
        self.moduli[0]
    }

    pub fn suites(&self) -> Vec<Suite> {
        match self.suite {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }

    pub fn group(&self, family: RootFamily) -> CliResult<WeylGroup> {
        let rs = Arc::new(build_root_system(family));
        Ok(enumerate_weyl(rs, self.max_group_order)?)
    }

    /// The `--theta` character, or the trivial one.
    pub fn character(&self, group: &WeylGroup, modulus: u32) -> CliResult<CharacterPoint> {
        match &self.theta {
            Some(values) => Ok(make_character(group.root_system(), modulus as i64, values)?),
            None => Ok(CharacterPoint::trivial(
                group.root_system().family(),
                modulus,
            )),
        }
    }

    pub fn sigma(&self, group: &WeylGroup) -> CliResult<DiagramInvolution> {
        match &self.sigma_override {
            Some(images) => Ok(DiagramInvolution::from_images(images.clone())?),
            None => Ok(group.diagram_involution()),
        }
    }
}
