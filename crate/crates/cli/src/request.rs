//! Command-line grammar and its conversion into a validated [`CommandRequest`].
//!
//! Clap only captures strings. Every rational, class and input file is parsed
//! here, so malformed input fails with `ParseError` before any computation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use stabwall_core::p3::ChernP3;
use stabwall_core::rational::{parse_rational, Rational};
use stabwall_core::{ChernSurface, Error, HnInput, Result, SurfaceData, Wall};

use crate::svg::Viewport;

/// Environment variable overriding the `ch₂` denominator bound of wall search.
pub const MAX_DENOM_VAR: &str = "STABWALL_MAX_DENOM";

#[derive(Debug, Parser)]
#[command(name = "stabwall", version, about = "Exact tilt-stability walls, HN polygons and nef divisors")]
pub struct Cli {
    /// Surface preset (p2, k3_deg4) or a .toml/.json file with surface data.
    #[arg(long, global = true, default_value = "p2", allow_hyphen_values = true)]
    pub surface: String,
    /// Print the full JSON report instead of a plain summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: RawCommand,
}

#[derive(Debug, Subcommand)]
pub enum RawCommand {
    /// Numerical wall between two classes, optionally comparing slopes at a point.
    Wall {
        #[arg(long, allow_hyphen_values = true)]
        chern: String,
        #[arg(long, allow_hyphen_values = true)]
        against: String,
        #[arg(long, allow_hyphen_values = true, requires = "beta")]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "alpha")]
        beta: Option<String>,
    },
    /// Every wall crossing a vertical probe line.
    Walls {
        #[command(flatten)]
        search: SearchArgs,
        /// Also write an SVG picture of the walls.
        #[arg(long)]
        svg_out: Option<PathBuf>,
    },
    /// Largest wall of the ideal sheaf of n points.
    LargestWall {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Harder-Narasimhan polygon.
    Hn {
        /// Splitting degrees of a bundle on P1.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "model", required_unless_present = "model")]
        p1_degrees: Option<String>,
        /// JSON file with a subobject model and its charge.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Nef divisor on the Hilbert scheme of n points.
    NefHilb {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Computations on projective three-space.
    P3 {
        #[command(subcommand)]
        command: P3Command,
    },
    /// SVG picture of walls, from a class or from a JSON list of walls.
    Plot {
        #[command(flatten)]
        search: OptionalSearchArgs,
        /// JSON file holding a list of walls.
        #[arg(long, conflicts_with = "chern", required_unless_present = "chern")]
        walls: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        beta_min: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta_max: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha_max: Option<String>,
        #[arg(long)]
        svg_out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub chern: String,
    /// Probe line; defaults to the integer just left of the vertical wall.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long)]
    pub max_rank: Option<i64>,
}

#[derive(Debug, Args)]
pub struct OptionalSearchArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub chern: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long)]
    pub max_rank: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum P3Command {
    /// Decide whether (d, g) is excluded for integral non-degenerate curves.
    Castelnuovo {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
    },
    /// Evaluate the quadratic form Q at (alpha, beta).
    Q {
        #[arg(long, allow_hyphen_values = true)]
        chern: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
}

/// Wall search parameters after parsing.
#[derive(Debug, Clone, PartialEq)]
pub struct Search {
    pub v: ChernSurface,
    pub beta: Option<Rational>,
    pub max_rank: Option<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum HnSource {
    P1Degrees(Vec<i64>),
    Model(HnInput),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlotSource {
    Search(Box<Search>),
    Walls(Vec<Wall>),
}

/// Viewport bounds given on the command line; missing ones are fitted.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ViewportSpec {
    pub beta_min: Option<Rational>,
    pub beta_max: Option<Rational>,
    pub alpha_max: Option<Rational>,
}

impl ViewportSpec {
    pub fn complete(&self) -> Option<Viewport> {
        Some(Viewport {
            beta_min: self.beta_min.clone()?,
            beta_max: self.beta_max.clone()?,
            alpha_max: self.alpha_max.clone()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Wall {
        v: ChernSurface,
        w: ChernSurface,
        /// `(α, β)` at which to compare slopes.
        point: Option<(Rational, Rational)>,
    },
    Walls {
        search: Search,
        svg_out: Option<PathBuf>,
    },
    LargestWall {
        n: i64,
    },
    Hn(HnSource),
    NefHilb {
        n: i64,
    },
    P3Castelnuovo {
        d: i64,
        g: i64,
    },
    P3Q {
        v: ChernP3,
        alpha: Rational,
        beta: Rational,
    },
    Plot {
        source: PlotSource,
        viewport: ViewportSpec,
        svg_out: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Wall { .. } => "wall",
            Command::Walls { .. } => "walls",
            Command::LargestWall { .. } => "largest-wall",
            Command::Hn(_) => "hn",
            Command::NefHilb { .. } => "nef-hilb",
            Command::P3Castelnuovo { .. } => "p3-castelnuovo",
            Command::P3Q { .. } => "p3-q",
            Command::Plot { .. } => "plot",
        }
    }
}

/// A fully parsed request; executing it touches no files.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandRequest {
    pub surface: SurfaceData,
    /// Name of the preset or path the surface came from.
    pub surface_label: String,
    pub command: Command,
    /// `ch₂ ∈ ℤ/N` grid for wall search; `None` walks the integral lattice.
    pub max_denom: Option<i64>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

/// Preset name, or a `.toml` / `.json` file.
pub fn resolve_surface(spec: &str) -> Result<SurfaceData> {
    let lower = spec.to_ascii_lowercase();
    if lower.ends_with(".toml") {
        SurfaceData::from_toml_str(&read(Path::new(spec))?)
    } else if lower.ends_with(".json") {
        SurfaceData::from_json_str(&read(Path::new(spec))?)
    } else {
        SurfaceData::preset(spec)
    }
}

/// Positive integer from the environment variable, if set.
pub fn parse_max_denom(raw: Option<&str>) -> Result<Option<i64>> {
    let Some(raw) = raw else { return Ok(None) };
    match raw.trim().parse::<i64>() {
        Ok(n) if n >= 1 => Ok(Some(n)),
        _ => Err(Error::Parse(format!(
            "{MAX_DENOM_VAR} must be a positive integer, got {raw:?}"
        ))),
    }
}

/// Comma-separated integers, e.g. `"2,0,-1"`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("malformed integer {:?}", t.trim())))
        })
        .collect()
}

/// JSON array of walls in the serialized form produced by the library.
pub fn parse_walls_json(s: &str) -> Result<Vec<Wall>> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("wall list: {e}")))
}

fn opt_rational(s: &Option<String>) -> Result<Option<Rational>> {
    s.as_deref().map(parse_rational).transpose()
}

fn search(chern: &str, beta: &Option<String>, max_rank: Option<i64>) -> Result<Search> {
    Ok(Search {
        v: ChernSurface::parse(chern)?,
        beta: opt_rational(beta)?,
        max_rank,
    })
}

impl CommandRequest {
    /// Parses every value of `cli`, reading the files it names.
    pub fn from_cli(cli: &Cli, env: &BTreeMap<String, String>) -> Result<Self> {
        let max_denom = parse_max_denom(env.get(MAX_DENOM_VAR).map(String::as_str))?;
        let command = match &cli.command {
            RawCommand::Wall {
                chern,
                against,
                alpha,
                beta,
            } => Command::Wall {
                v: ChernSurface::parse(chern)?,
                w: ChernSurface::parse(against)?,
                point: match (opt_rational(alpha)?, opt_rational(beta)?) {
                    (Some(a), Some(b)) => Some((a, b)),
                    (None, None) => None,
                    _ => return Err(Error::Parse("--alpha and --beta go together".into())),
                },
            },
            RawCommand::Walls { search: s, svg_out } => Command::Walls {
                search: search(&s.chern, &s.beta, s.max_rank)?,
                svg_out: svg_out.clone(),
            },
            RawCommand::LargestWall { n } => Command::LargestWall { n: *n },
            RawCommand::Hn { p1_degrees, model } => match (p1_degrees, model) {
                (Some(d), _) => Command::Hn(HnSource::P1Degrees(parse_int_list(d)?)),
                (None, Some(path)) => Command::Hn(HnSource::Model(HnInput::from_json_str(&read(path)?)?)),
                (None, None) => return Err(Error::Parse("hn needs --p1-degrees or --model".into())),
            },
            RawCommand::NefHilb { n } => Command::NefHilb { n: *n },
            RawCommand::P3 { command } => match command {
                P3Command::Castelnuovo { d, g } => Command::P3Castelnuovo { d: *d, g: *g },
                P3Command::Q { chern, alpha, beta } => Command::P3Q {
                    v: ChernP3::parse(chern)?,
                    alpha: parse_rational(alpha)?,
                    beta: parse_rational(beta)?,
                },
            },
            RawCommand::Plot {
                search: s,
                walls,
                beta_min,
                beta_max,
                alpha_max,
                svg_out,
            } => {
                let source = match (&s.chern, walls) {
                    (Some(c), _) => PlotSource::Search(Box::new(search(c, &s.beta, s.max_rank)?)),
                    (None, Some(path)) => PlotSource::Walls(parse_walls_json(&read(path)?)?),
                    (None, None) => return Err(Error::Parse("plot needs --chern or --walls".into())),
                };
                Command::Plot {
                    source,
                    viewport: ViewportSpec {
                        beta_min: opt_rational(beta_min)?,
                        beta_max: opt_rational(beta_max)?,
                        alpha_max: opt_rational(alpha_max)?,
                    },
                    svg_out: svg_out.clone(),
                }
            }
        };
        Ok(CommandRequest {
            surface: resolve_surface(&cli.surface)?,
            surface_label: cli.surface.clone(),
            command,
            max_denom,
        })
    }

    /// Parses raw arguments (program name first) without touching stdout.
    pub fn from_args<I, T>(args: I, env: &BTreeMap<String, String>) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_cli(&cli, env)
    }
}
