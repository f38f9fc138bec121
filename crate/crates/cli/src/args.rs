use clap::{Args, Parser, Subcommand, ValueEnum};

use hss_core::rational::{self, Rational};
use hss_core::rootsys::OrbitPoint;
use hss_core::spaces::Family;

#[derive(Debug, Parser)]
#[command(name = "hss", version, about = "Isotropy orbits of compact Hermitian symmetric spaces")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Catalog entries: restricted root data, dimension and polar.
    Spaces(SpacesArgs),
    /// Classify the isotropy orbit through exp(H)o.
    Classify(ClassifyArgs),
    /// Real rank and contact status along the segments C_i(t).
    Contact(ContactArgs),
    /// The Sasaki parameter t(d) and the curvature constant k there.
    Sasaki(SasakiArgs),
    /// Ricci data of the polar and the Sasaki-Einstein metric parameter.
    Einstein(EinsteinArgs),
    /// Run the numerical matrix-model checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SpacesArgs {
    /// `list` is accepted for readability and is the default action.
    #[arg(value_parser = ["list"])]
    pub action: Option<String>,

    /// Show a single space instead of the catalog listing.
    #[arg(long, value_parser = parse_selector)]
    pub space: Option<Family>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, value_parser = parse_selector)]
    pub space: Family,

    /// Coordinates of H in units of pi, e.g. 1/4,1/4,0.
    #[arg(long = "H", value_parser = parse_point)]
    pub h: OrbitPoint,

    #[arg(long, value_parser = parse_rational, default_value = "1")]
    pub d: Rational,
}

#[derive(Debug, Args)]
pub struct ContactArgs {
    #[arg(long, value_parser = parse_selector)]
    pub space: Family,

    /// A single point; without it every segment C_i(t) is reported.
    #[arg(long = "H", value_parser = parse_point)]
    pub h: Option<OrbitPoint>,

    /// Segment parameter used when --H is absent.
    #[arg(long, value_parser = parse_rational, default_value = "1/2")]
    pub t: Rational,
}

#[derive(Debug, Args)]
pub struct SasakiArgs {
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    pub d: Rational,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct EinsteinTarget {
    /// The Sasaki-Einstein table over all families.
    #[arg(long)]
    pub table: bool,

    #[arg(long, value_parser = parse_selector)]
    pub space: Option<Family>,
}

#[derive(Debug, Args)]
pub struct EinsteinArgs {
    #[command(flatten)]
    pub target: EinsteinTarget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelFamily {
    /// su(n): the Grassmannian G_k(C^n).
    Su,
    /// so(n): the oriented Grassmannian of 2-planes in R^n.
    So,
    /// so(2n): SO(2n)/U(n).
    Sou,
    /// sp(n): Sp(n)/U(n).
    Sp,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Every classical model in the standard suite.
    #[arg(long, conflicts_with_all = ["family", "space"])]
    pub all: bool,

    #[arg(long, value_enum, requires = "n", conflicts_with = "space")]
    pub family: Option<ModelFamily>,

    #[arg(long)]
    pub n: Option<u32>,

    /// Subspace dimension for --family su; defaults to n/2.
    #[arg(long)]
    pub k: Option<u32>,

    #[arg(long, value_parser = parse_selector)]
    pub space: Option<Family>,

    #[arg(long, value_parser = parse_rational, default_value = "1")]
    pub d: Rational,
}

impl VerifyArgs {
    pub fn families(&self) -> Result<Vec<Family>, String> {
        if self.all {
            return Ok(hss_core::oracle::classical_suite());
        }
        if let Some(f) = self.space {
            return Ok(vec![f]);
        }
        let (Some(fam), Some(n)) = (self.family, self.n) else {
            return Err("verify needs --all, --space, or --family with --n".into());
        };
        if self.k.is_some() && fam != ModelFamily::Su {
            return Err("--k applies only to --family su".into());
        }
        Ok(vec![match fam {
            ModelFamily::Su => Family::Grassmannian { k: self.k.unwrap_or(n / 2), n },
            ModelFamily::So => Family::OrientedGrassmannian { n },
            ModelFamily::Sou => Family::SoQuotient { n },
            ModelFamily::Sp => Family::SpQuotient { n },
        }])
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

pub fn parse_point(s: &str) -> Result<OrbitPoint, String> {
    let coords = s.split(',').map(|c| parse_rational(c.trim())).collect::<Result<Vec<_>, _>>()?;
    OrbitPoint::new(coords).map_err(|e| e.to_string())
}

fn parse_count(s: &str) -> Result<u32, String> {
    s.trim().parse().map_err(|_| format!("expected a positive integer, got {s:?}"))
}

/// `grass:k,n`, `orgrass:n`, `so:n`, `sp:n`, `eiii`, `evii`, `cp:n`.
pub fn parse_selector(s: &str) -> Result<Family, String> {
    let lower = s.trim().to_ascii_lowercase();
    let (head, rest) = match lower.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (lower.as_str(), None),
    };
    let one = |r: Option<&str>| r.ok_or_else(|| format!("selector {s:?} needs a parameter")).and_then(parse_count);
    let family = match head {
        "eiii" if rest.is_none() => Family::EIII,
        "evii" if rest.is_none() => Family::EVII,
        "orgrass" => Family::OrientedGrassmannian { n: one(rest)? },
        "so" => Family::SoQuotient { n: one(rest)? },
        "sp" => Family::SpQuotient { n: one(rest)? },
        // CP^n is G_1(C^{n+1}).
        "cp" => Family::complex_projective(one(rest)? + 1),
        "grass" => {
            let r = rest.ok_or_else(|| format!("selector {s:?} needs k,n"))?;
            let (k, n) = r.split_once(',').ok_or_else(|| format!("selector {s:?} needs k,n"))?;
            Family::Grassmannian { k: parse_count(k)?, n: parse_count(n)? }
        }
        _ => return Err(format!("unknown space selector {s:?}")),
    };
    hss_core::spaces::catalog(family).map_err(|e| e.to_string())?;
    Ok(family)
}

/// Inverse of [`parse_selector`].
pub fn selector(f: Family) -> String {
    match f {
        Family::Grassmannian { k: 1, n } => format!("cp:{}", n - 1),
        Family::Grassmannian { k, n } => format!("grass:{k},{n}"),
        Family::OrientedGrassmannian { n } => format!("orgrass:{n}"),
        Family::SoQuotient { n } => format!("so:{n}"),
        Family::SpQuotient { n } => format!("sp:{n}"),
        Family::EIII => "eiii".into(),
        Family::EVII => "evii".into(),
    }
}
