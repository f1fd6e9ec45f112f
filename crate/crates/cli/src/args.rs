use clap::{Args, Parser, Subcommand};
use unibranch::euclid::ContactType;

/// Resolution data, contact tropical curves and invariants of unibranch
/// plane curve points.
///
/// Curves are given as "<polynomial>:<projective degree>", e.g. "y^2-x^3:3";
/// contact types as "m,n" with n > m >= 1.
#[derive(Debug, Parser)]
#[command(name = "unibranch", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format: json, dot or text.
    #[arg(long, global = true, default_value = "text")]
    pub format: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplicity, tangent line, contact type and invariants of a curve.
    Analyze(CurveArg),
    /// Resolution chain of a curve, or of y^m - x^n for a pair.
    Resolve(CurveOrPair),
    /// Contact tropical curve of a pair.
    Tropical(PairArg),
    /// Dual graph of the resolution divisor of a pair.
    Dualgraph(PairArg),
    /// Whether two pairs are equivalent.
    Equiv(TwoPairs),
    /// δ-invariant bound of a pair.
    Delta(PairArg),
    /// Codimension bound for curves of a given degree with an (m,n)-point.
    Codim(CodimArgs),
    /// Hypertangency and mirror analysis of two curves.
    Mirror(TwoCurves),
    /// Summation identities of a pair; with two pairs also the key identity.
    Identities(OneOrTwoPairs),
    /// Checks every grid property for all pairs with n <= max-n.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct CurveArg {
    #[arg(long)]
    pub curve: String,
}

#[derive(Debug, Args)]
pub struct CurveOrPair {
    #[arg(long, conflicts_with = "pair", required_unless_present = "pair")]
    pub curve: Option<String>,
    #[arg(long, value_parser = parse_pair)]
    pub pair: Option<ContactType>,
}

#[derive(Debug, Args)]
pub struct PairArg {
    #[arg(long, value_parser = parse_pair)]
    pub pair: ContactType,
}

#[derive(Debug, Args)]
pub struct TwoPairs {
    #[arg(long, value_parser = parse_pair, num_args = 1, required = true)]
    pub pair: Vec<ContactType>,
}

#[derive(Debug, Args)]
pub struct OneOrTwoPairs {
    #[arg(long, value_parser = parse_pair, num_args = 1, required = true)]
    pub pair: Vec<ContactType>,
}

#[derive(Debug, Args)]
pub struct CodimArgs {
    #[arg(long, value_parser = parse_pair)]
    pub pair: ContactType,
    #[arg(long)]
    pub degree: u64,
}

#[derive(Debug, Args)]
pub struct TwoCurves {
    #[arg(long, num_args = 1, required = true)]
    pub curve: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub max_n: u64,
}

fn parse_pair(s: &str) -> Result<ContactType, String> {
    let (m, n) = s
        .split_once(',')
        .ok_or_else(|| format!("'{s}' is not of the form m,n"))?;
    let num = |v: &str| {
        v.trim()
            .parse::<u64>()
            .map_err(|_| format!("'{}' is not a non-negative integer", v.trim()))
    };
    ContactType::new(num(m)?, num(n)?).map_err(|e| e.to_string())
}
