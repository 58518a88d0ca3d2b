//! Static SVG pictures of walls in the `(β, α)` half-plane.
//!
//! User space is the viewport itself: `x = β − β_min`, `y = α_max − α`, so
//! the β-axis is the bottom edge. A circle wall `(β − s)² + α² = ρ²` is the
//! upper semicircle of radius `ρ`. Exact values become decimals only here,
//! rounded to 12 significant digits.

use std::fmt::Write;

use num_traits::Signed;
use stabwall_core::rational::{fmt_rational, to_f64, Rational};
use stabwall_core::{Error, Result, Wall};

/// Visible window `β_min ≤ β ≤ β_max`, `0 ≤ α ≤ α_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Viewport {
    pub beta_min: Rational,
    pub beta_max: Rational,
    pub alpha_max: Rational,
}

impl Viewport {
    pub fn validate(&self) -> Result<()> {
        if self.beta_min >= self.beta_max || !self.alpha_max.is_positive() {
            return Err(Error::EmptyViewport);
        }
        Ok(())
    }
}

/// Rendered width in pixels; the height follows the viewport aspect ratio.
const WIDTH_PX: f64 = 800.0;

/// Decimal with 12 significant digits and no trailing zeros; `-0` prints as `0`.
pub fn fmt_num(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().expect("float round-trips");
    if rounded == 0.0 {
        "0".to_string()
    } else {
        format!("{rounded}")
    }
}

/// Standalone SVG document. Empty walls draw nothing; an everywhere wall
/// shades the whole viewport. Output depends only on the arguments.
pub fn render_svg(walls: &[Wall], viewport: &Viewport) -> Result<String> {
    viewport.validate()?;
    let w = to_f64(&(&viewport.beta_max - &viewport.beta_min));
    let h = to_f64(&viewport.alpha_max);
    let x_of = |beta: &Rational| fmt_num(to_f64(&(beta - &viewport.beta_min)));
    let (wf, hf) = (fmt_num(w), fmt_num(h));

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {wf} {hf}\">",
        fmt_num(WIDTH_PX),
        fmt_num(WIDTH_PX * h / w),
    );
    let _ = writeln!(
        out,
        "  <desc>beta from {} to {}, alpha up to {}</desc>",
        fmt_rational(&viewport.beta_min),
        fmt_rational(&viewport.beta_max),
        fmt_rational(&viewport.alpha_max),
    );

    for wall in walls {
        if matches!(wall, Wall::Everywhere) {
            let _ = writeln!(
                out,
                "  <rect class=\"wall everywhere\" x=\"0\" y=\"0\" width=\"{wf}\" height=\"{hf}\" fill=\"#4477aa\" fill-opacity=\"0.2\"><title>slopes agree at every point</title></rect>"
            );
        }
    }

    // β-axis along the bottom edge; α-axis at β = 0, clamped into view
    let zero = Rational::from_integer(0.into());
    let axis_beta = zero
        .clone()
        .max(viewport.beta_min.clone())
        .min(viewport.beta_max.clone());
    let ax = x_of(&axis_beta);
    let axis_style = "stroke=\"#000000\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"";
    let _ = writeln!(
        out,
        "  <line class=\"axis beta\" x1=\"0\" y1=\"{hf}\" x2=\"{wf}\" y2=\"{hf}\" {axis_style}/>"
    );
    let _ = writeln!(
        out,
        "  <line class=\"axis alpha\" x1=\"{ax}\" y1=\"{hf}\" x2=\"{ax}\" y2=\"0\" {axis_style}/>"
    );

    let wall_style =
        "fill=\"none\" stroke=\"#cc3311\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"";
    for wall in walls {
        match wall {
            Wall::Circle { center, radius_sq } => {
                let rho = to_f64(radius_sq).sqrt();
                let c = to_f64(&(center - &viewport.beta_min));
                let _ = writeln!(
                    out,
                    "  <path class=\"wall circle\" d=\"M {} {hf} A {r} {r} 0 0 1 {} {hf}\" {wall_style}><title>center {}, radius^2 {}</title></path>",
                    fmt_num(c - rho),
                    fmt_num(c + rho),
                    fmt_rational(center),
                    fmt_rational(radius_sq),
                    r = fmt_num(rho),
                );
            }
            Wall::Vertical { beta } => {
                let x = x_of(beta);
                let _ = writeln!(
                    out,
                    "  <path class=\"wall vertical\" d=\"M {x} {hf} L {x} 0\" {wall_style}><title>beta = {}</title></path>",
                    fmt_rational(beta),
                );
            }
            Wall::Empty | Wall::Everywhere => {}
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
