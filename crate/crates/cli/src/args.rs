use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "tcp",
    version,
    about = "Effective homology of twisted cartesian products"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homology of the total space through --max-dim.
    Homology(TcpArgs),
    /// Checks the twisting-operator axioms.
    CheckTwist(TcpArgs),
    /// Checks the reduction identities of the twisted Eilenberg–Zilber
    /// reduction and the factor reductions.
    CheckReduction(TcpArgs),
    /// Checks a vector field on --base and condition (*).
    VfCheckStar(TcpArgs),
    /// Carries homology representatives of the effective complex back to the
    /// chains of the total space.
    Transport(TransportArgs),
}

#[derive(clap::Args, Debug, Clone)]
pub struct TcpArgs {
    /// Fiber: a builtin (kz1, kzm0(m), circle2, sphere(n), ...) or a space
    /// file. Defaults to the group acting on itself.
    #[arg(long)]
    pub fiber: Option<String>,
    /// Base: a builtin or a space file.
    #[arg(long)]
    pub base: Option<String>,
    /// Structure group: kz1, kzm0(m) or a group file.
    #[arg(long)]
    pub group: Option<String>,
    /// right, trivial, flip or an action file.
    #[arg(long)]
    pub action: Option<String>,
    /// Twist file, or `trivial`.
    #[arg(long)]
    pub twist: Option<String>,
    /// klein, torus, hopf or double-cover.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Vector field on the base: `eml` or a field file.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = 6)]
    pub max_dim: usize,
    #[arg(long, default_value = "auto")]
    pub method: String,
    #[arg(long, default_value_t = 64)]
    pub guard: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(clap::Args, Debug, Clone)]
pub struct TransportArgs {
    #[command(flatten)]
    pub tcp: TcpArgs,
    /// Homology degree whose representatives are transported.
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}
