//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pfg_core::subset::DEFAULT_MAX_ORDER;
use pfg_core::theorems::TheoremId;

#[derive(Parser, Debug)]
#[command(
    name = "pfg",
    version,
    about = "Picture fuzzy subgroups over finite groups, in exact arithmetic",
    long_about = "Loads finite groups and picture fuzzy sets, evaluates the subgroup and normal \
                  subgroup predicates, builds cuts, cosets, products, images and preimages, and \
                  runs exhaustive theorem checks over sampled instances.\n\n\
                  Exit status: 0 when the predicate holds or every check passed, 1 when it \
                  fails, 2 on usage or input errors."
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest group order accepted by subgroup enumeration
    #[arg(
        long,
        global = true,
        env = "PFG_MAX_ORDER",
        default_value_t = DEFAULT_MAX_ORDER,
        value_name = "N"
    )]
    pub max_order: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test whether a picture fuzzy set is a PFSG or a PFNSG
    Check(CheckArgs),
    /// Print the members of an (r, s, t)-cut
    Cut(CutArgs),
    /// Build the left or right coset of a picture fuzzy set by an element
    Coset(CosetArgs),
    /// Build the Cartesian product of two picture fuzzy sets
    Product(ProductArgs),
    /// Push a picture fuzzy set forward along a map, or pull it back
    Image(ImageArgs),
    /// Run theorem checks over randomized and hand-picked instances
    Verify(VerifyArgs),
    /// Sample a PFSG or PFNSG layered over a random subgroup chain
    Sample(SampleArgs),
    /// Describe a group, or write its table to a file
    Group(GroupArgs),
}

#[derive(Args, Debug)]
pub struct PfsInput {
    /// Picture fuzzy set file
    #[arg(long, value_name = "PATH")]
    pub pfs: PathBuf,

    /// Require the set to live on this group (registry name or group file)
    #[arg(long, value_name = "GROUP")]
    pub group: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Pfsg,
    Pfnsg,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: PfsInput,

    /// Which predicate to evaluate
    #[arg(long, value_enum, default_value_t = Kind::Pfsg)]
    pub mode: Kind,
}

#[derive(Args, Debug)]
pub struct CutArgs {
    #[command(flatten)]
    pub input: PfsInput,

    /// Lower bound on σ, as p/q
    #[arg(long, value_name = "P/Q")]
    pub r: String,

    /// Lower bound on τ, as p/q
    #[arg(long, value_name = "P/Q")]
    pub s: String,

    /// Upper bound on η, as p/q
    #[arg(long, value_name = "P/Q")]
    pub t: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Args, Debug)]
pub struct CosetArgs {
    #[command(flatten)]
    pub input: PfsInput,

    /// Translating element, by index
    #[arg(long, value_name = "INDEX")]
    pub element: usize,

    #[arg(long, value_enum, default_value_t = Side::Left)]
    pub side: Side,

    /// Write the coset here instead of printing it
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    /// The two factor files, in order
    #[arg(long, value_name = "PATH", num_args = 1, required = true)]
    pub pfs: Vec<PathBuf>,

    /// Write the product here instead of printing it
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ImageArgs {
    /// Set to map: on the source for images, on the target with --preimage
    #[arg(long, value_name = "PATH")]
    pub pfs: PathBuf,

    /// The map: `identity`, `mod` (Zm to Zn), `const:K`, `proj1`, `proj2`
    /// (source a product with the target as that factor), or a
    /// comma-separated list of images such as `0,1,0,1`
    #[arg(long, value_name = "MAP")]
    pub map: String,

    /// Source group; defaults to the carrier of --pfs for images
    #[arg(long, value_name = "GROUP")]
    pub source: Option<String>,

    /// Target group; defaults to the carrier of --pfs for preimages
    #[arg(long, value_name = "GROUP")]
    pub target: Option<String>,

    /// Pull back along the map instead of pushing forward
    #[arg(long)]
    pub preimage: bool,

    /// Write the result here instead of printing it
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Result to check, by tag; repeatable
    #[arg(long, value_name = "TAG", conflicts_with = "all")]
    pub theorem: Vec<TheoremId>,

    /// Check every result (the default when no --theorem is given)
    #[arg(long)]
    pub all: bool,

    /// Groups to draw instances from, comma-separated [default: registry
    /// groups of order at most 12]
    #[arg(long, value_name = "GROUP,...", value_delimiter = ',')]
    pub groups: Vec<String>,

    /// Random instances per result
    #[arg(long, default_value_t = 200)]
    pub trials: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Read statements literally: include the empty cut, and take the
    /// second identity-dominance clause with its subscripts as written
    #[arg(long)]
    pub strict: bool,

    /// Also write the reports here, one JSON object per line
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Registry name or group file
    #[arg(long, value_name = "GROUP")]
    pub group: String,

    #[arg(long, value_enum, default_value_t = Kind::Pfsg)]
    pub kind: Kind,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of layers [default: the longest chain available]
    #[arg(long, value_name = "N")]
    pub chain_length: Option<usize>,

    /// Write the sample here instead of printing it
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    /// Registry name or group file
    #[arg(long, value_name = "GROUP")]
    pub group: String,

    /// Write the group table here
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
