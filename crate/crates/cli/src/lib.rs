//! Orchestration for the `stabwall` binary: request parsing, dispatch to the
//! library, JSON reports and SVG output.
//!
//! Every rational in a report is a `"p/q"` string, never a float, so reports
//! can be compared byte for byte.

pub mod request;
pub mod svg;

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use stabwall_core::hilbert::{divisor_from_wall_center_on, is_extremal, nef_divisor_hilb};
use stabwall_core::hn::{hn_p1, hn_polygon, subobject_classes_p1};
use stabwall_core::lattice::delta_bar;
use stabwall_core::p3::{castelnuovo_excluded, delta_p3, q_circle, q_form};
use stabwall_core::rational::{ceil_i64, floor_i64, fmt_rational, int, to_f64, Rational};
use stabwall_core::tilt::{compare_tilt_slopes, numerical_wall, tilt_slope};
use stabwall_core::walls::{default_probe, enumerate_walls_with, largest_wall_ideal_sheaf, WallSearch};
use stabwall_core::{Error, SurfaceData, Wall, WallCandidate};

pub use request::{Command, CommandRequest};
pub use svg::{render_svg, Viewport};

use request::{HnSource, PlotSource, Search, ViewportSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// Outcome of one request.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// `0` ok, `1` computational error, `2` usage error.
    #[serde(skip)]
    pub exit_code: i32,
    /// SVG document produced by `walls --svg-out` or `plot`.
    #[serde(skip)]
    pub svg: Option<String>,
}

impl Report {
    fn ok(payload: Value, diagnostics: Vec<String>, svg: Option<String>) -> Self {
        Report {
            status: Status::Ok,
            payload,
            diagnostics,
            exit_code: 0,
            svg,
        }
    }

    pub fn from_error(e: &Error) -> Self {
        Report {
            status: Status::Error,
            payload: json!({ "error": { "code": e.code(), "message": e.to_string() } }),
            diagnostics: Vec::new(),
            exit_code: if e.is_usage() { 2 } else { 1 },
            svg: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// `key: value` lines for the top-level payload fields.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Value::Object(map) = &self.payload {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{k}: {shown}");
            }
        }
        out
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn r(x: &Rational) -> Value {
    Value::String(fmt_rational(x))
}

fn ordering_name(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    }
}

struct Enumerated {
    probe: Rational,
    walls: Vec<WallCandidate>,
    diagnostics: Vec<String>,
}

fn run_search(search: &Search, s: &SurfaceData, max_denom: Option<i64>) -> Result<Enumerated, Error> {
    let mut diagnostics = Vec::new();
    let probe = match &search.beta {
        Some(b) => b.clone(),
        None => {
            let b = default_probe(&search.v, s)?;
            diagnostics.push(format!("probe defaulted to beta = {}", fmt_rational(&b)));
            b
        }
    };
    let opts = WallSearch {
        max_rank: search.max_rank,
        denom_bound: max_denom,
    };
    diagnostics.push(match max_denom {
        Some(n) => format!("ch2 grid: multiples of 1/{n}"),
        None => "ch2 grid: integral lattice".to_string(),
    });
    let walls = enumerate_walls_with(&search.v, s, &probe, &opts)?;
    diagnostics.push(format!("{} walls cross beta = {}", walls.len(), fmt_rational(&probe)));
    Ok(Enumerated {
        probe,
        walls,
        diagnostics,
    })
}

fn candidates_json(walls: &[WallCandidate], probe: &Rational) -> Value {
    Value::Array(
        walls
            .iter()
            .map(|c| {
                json!({
                    "wall": to_value(&c.wall),
                    "destabilizer": to_value(&c.destabilizer),
                    "quotient": to_value(&c.quotient),
                    "t_at_probe": c.wall.height_at(probe).map(|t| r(&t)),
                })
            })
            .collect(),
    )
}

/// Smallest integer `k ≥ 0` with `k² ≥ x`.
fn ceil_sqrt(x: &Rational) -> i64 {
    let mut k = to_f64(x).max(0.0).sqrt().ceil() as i64;
    while k > 0 && int((k - 1) * (k - 1)) >= *x {
        k -= 1;
    }
    while int(k * k) < *x {
        k += 1;
    }
    k
}

/// Integer-aligned window around every circle and vertical wall.
fn fit_viewport(walls: &[Wall], spec: &ViewportSpec) -> Viewport {
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    let mut top = 1;
    let mut extend = |a: i64, b: i64| {
        lo = Some(lo.map_or(a, |x| x.min(a)));
        hi = Some(hi.map_or(b, |x| x.max(b)));
    };
    for w in walls {
        match w {
            Wall::Circle { center, radius_sq } => {
                let k = ceil_sqrt(radius_sq);
                extend(floor_i64(center) - k, ceil_i64(center) + k);
                top = top.max(k);
            }
            Wall::Vertical { beta } => extend(floor_i64(beta) - 1, ceil_i64(beta) + 1),
            Wall::Empty | Wall::Everywhere => {}
        }
    }
    let (lo, hi) = (lo.unwrap_or(-1), hi.unwrap_or(1));
    Viewport {
        beta_min: spec.beta_min.clone().unwrap_or_else(|| int(lo)),
        beta_max: spec.beta_max.clone().unwrap_or_else(|| int(hi)),
        alpha_max: spec.alpha_max.clone().unwrap_or_else(|| int(top)),
    }
}

fn viewport_json(vp: &Viewport) -> Value {
    json!({
        "beta_min": r(&vp.beta_min),
        "beta_max": r(&vp.beta_max),
        "alpha_max": r(&vp.alpha_max),
    })
}

fn dispatch(req: &CommandRequest) -> Result<Report, Error> {
    let s = &req.surface;
    let surface = json!({ "source": req.surface_label, "data": to_value(s) });
    Ok(match &req.command {
        Command::Wall { v, w, point } => {
            let wall = numerical_wall(v, w, s);
            let mut payload = json!({
                "surface": surface,
                "v": to_value(v),
                "w": to_value(w),
                "wall": to_value(&wall),
            });
            if let Some((alpha, beta)) = point {
                if !alpha.is_positive() {
                    return Err(Error::NonpositiveT);
                }
                let t = alpha * alpha;
                payload["point"] = json!({
                    "alpha": r(alpha),
                    "beta": r(beta),
                    "t": r(&t),
                    "nu_v": to_value(&tilt_slope(v, &t, beta, s)?),
                    "nu_w": to_value(&tilt_slope(w, &t, beta, s)?),
                    "comparison": ordering_name(compare_tilt_slopes(v, w, &t, beta, s)?),
                    "on_wall": wall.contains_point(&t, beta),
                });
            }
            Report::ok(payload, Vec::new(), None)
        }
        Command::Walls { search, svg_out } => {
            let found = run_search(search, s, req.max_denom)?;
            let mut diagnostics = found.diagnostics;
            let svg = match svg_out {
                Some(path) => {
                    let walls: Vec<Wall> = found.walls.iter().map(|c| c.wall.clone()).collect();
                    let vp = fit_viewport(&walls, &ViewportSpec::default());
                    diagnostics.push(format!("svg written to {}", path.display()));
                    Some(render_svg(&walls, &vp)?)
                }
                None => None,
            };
            let payload = json!({
                "surface": surface,
                "v": to_value(&search.v),
                "probe": r(&found.probe),
                "delta_bar": r(&delta_bar(&search.v, s)),
                "walls": candidates_json(&found.walls, &found.probe),
            });
            Report::ok(payload, diagnostics, svg)
        }
        Command::LargestWall { n } => {
            let c = largest_wall_ideal_sheaf(*n, s)?;
            let payload = json!({
                "surface": surface,
                "n": n,
                "center": c.wall.center().map(r),
                "radius_sq": c.wall.radius_sq().map(r),
                "wall": to_value(&c.wall),
                "destabilizer": to_value(&c.destabilizer),
                "quotient": to_value(&c.quotient),
            });
            Report::ok(payload, Vec::new(), None)
        }
        Command::Hn(HnSource::P1Degrees(ds)) => {
            let split = hn_p1(ds)?;
            let polygon = hn_polygon(&subobject_classes_p1(ds)?, &stabwall_core::hn::ChargeSpec::curve())?;
            let payload = json!({
                "degrees": ds,
                "factors": split.iter().map(|(a, m)| json!([a, m])).collect::<Vec<_>>(),
                "polygon": to_value(&polygon),
            });
            Report::ok(payload, Vec::new(), None)
        }
        Command::Hn(HnSource::Model(input)) => {
            let res = input.solve()?;
            let slopes: Vec<Value> = res
                .factors
                .iter()
                .map(|f| f.slope().map_or(Value::String("+inf".into()), |x| r(&x)))
                .collect();
            let payload = json!({
                "target": input.model.target,
                "factors": to_value(&res.factors),
                "slopes": slopes,
                "vertices": res.vertices,
                "mass": res.mass.iter().map(r).collect::<Vec<_>>(),
            });
            Report::ok(payload, Vec::new(), None)
        }
        Command::NefHilb { n } => {
            let divisor = nef_divisor_hilb(s, *n)?;
            let (extremal, genus) = is_extremal(s, *n)?;
            let mut diagnostics = Vec::new();
            let from_wall = if *n > s.a * s.a * s.h_squared {
                let c = largest_wall_ideal_sheaf(*n, s)?;
                let center = c.wall.center().expect("largest wall is a circle").clone();
                Some((center.clone(), divisor_from_wall_center_on(&center, s)))
            } else {
                diagnostics.push("no largest wall at n = a^2 H^2".to_string());
                None
            };
            let payload = json!({
                "surface": surface,
                "n": n,
                "divisor": to_value(&divisor),
                "extremal": extremal,
                "genus": genus,
                "wall_center": from_wall.as_ref().map(|(c, _)| r(c)),
                "divisor_from_wall": from_wall.as_ref().map(|(_, d)| to_value(d)),
            });
            Report::ok(payload, diagnostics, None)
        }
        Command::P3Castelnuovo { d, g } => {
            let verdict = castelnuovo_excluded(*d, *g)?;
            let bound = int(d * d) / int(4) - int(*d) + int(1);
            let mut payload = to_value(&verdict);
            payload["genus_bound"] = r(&bound);
            Report::ok(payload, Vec::new(), None)
        }
        Command::P3Q { v, alpha, beta } => {
            if !alpha.is_positive() {
                return Err(Error::NonpositiveT);
            }
            let t = alpha * alpha;
            let value = q_form(v, &t, beta);
            let sign = if value.is_zero() {
                "zero"
            } else if value.is_positive() {
                "positive"
            } else {
                "negative"
            };
            let payload = json!({
                "v": to_value(v),
                "alpha": r(alpha),
                "beta": r(beta),
                "t": r(&t),
                "q": r(&value),
                "sign": sign,
                "delta": r(&delta_p3(v)),
                "q_circle": to_value(&q_circle(v)),
            });
            Report::ok(payload, Vec::new(), None)
        }
        Command::Plot {
            source,
            viewport,
            svg_out,
        } => {
            let (walls, mut diagnostics) = match source {
                PlotSource::Search(search) => {
                    let found = run_search(search, s, req.max_denom)?;
                    let walls = found.walls.iter().map(|c| c.wall.clone()).collect();
                    (walls, found.diagnostics)
                }
                PlotSource::Walls(ws) => (ws.clone(), Vec::new()),
            };
            let vp = viewport.complete().unwrap_or_else(|| fit_viewport(&walls, viewport));
            let doc = render_svg(&walls, &vp)?;
            if let Some(path) = svg_out {
                diagnostics.push(format!("svg written to {}", path.display()));
            }
            let payload = json!({
                "viewport": viewport_json(&vp),
                "walls": to_value(&walls),
                "paths": walls.iter().filter(|w| matches!(w, Wall::Circle { .. } | Wall::Vertical { .. })).count(),
            });
            Report::ok(payload, diagnostics, Some(doc))
        }
    })
}

/// Runs a parsed request. Identical requests give identical reports.
pub fn execute(req: &CommandRequest) -> Report {
    dispatch(req).unwrap_or_else(|e| Report::from_error(&e))
}

/// Captured process output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn svg_target(cmd: &Command) -> Option<&std::path::Path> {
    match cmd {
        Command::Walls { svg_out, .. } | Command::Plot { svg_out, .. } => svg_out.as_deref(),
        _ => None,
    }
}

/// Full command-line behaviour: parse, execute, write any SVG, format output.
pub fn run_cli<I, T>(args: I, env: &BTreeMap<String, String>) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let json_mode = args.iter().skip(1).any(|a| a == "--json");
    let cli = match <request::Cli as clap::Parser>::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CliOutput {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                };
            }
            let report = Report::from_error(&Error::Parse(e.kind().to_string()));
            return CliOutput {
                stdout: if json_mode { report.to_json() } else { String::new() },
                stderr: text,
                code: 2,
            };
        }
    };
    let mut report = match CommandRequest::from_cli(&cli, env) {
        Ok(req) => {
            let mut report = execute(&req);
            if let (Some(path), Some(doc)) = (svg_target(&req.command), &report.svg) {
                if let Err(e) = std::fs::write(path, doc) {
                    report = Report {
                        status: Status::Error,
                        payload: json!({ "error": {
                            "code": "IoError",
                            "message": format!("cannot write {}: {e}", path.display()),
                        }}),
                        diagnostics: report.diagnostics,
                        exit_code: 1,
                        svg: None,
                    };
                }
            } else if let (Command::Plot { .. }, Some(doc)) = (&req.command, &report.svg) {
                if !cli.json {
                    return CliOutput {
                        stdout: doc.clone(),
                        stderr: notes(&report.diagnostics),
                        code: 0,
                    };
                }
                report.payload["svg"] = Value::String(doc.clone());
            }
            report
        }
        Err(e) => Report::from_error(&e),
    };
    report.svg = None;
    if cli.json {
        return CliOutput {
            stdout: report.to_json(),
            stderr: String::new(),
            code: report.exit_code,
        };
    }
    match report.status {
        Status::Ok => CliOutput {
            stdout: report.to_text(),
            stderr: notes(&report.diagnostics),
            code: 0,
        },
        Status::Error => {
            let err = &report.payload["error"];
            CliOutput {
                stdout: String::new(),
                stderr: format!(
                    "{}error [{}]: {}\n",
                    notes(&report.diagnostics),
                    err["code"].as_str().unwrap_or_default(),
                    err["message"].as_str().unwrap_or_default()
                ),
                code: report.exit_code,
            }
        }
    }
}

fn notes(diagnostics: &[String]) -> String {
    diagnostics.iter().map(|d| format!("note: {d}\n")).collect()
}
