//! Nef divisors on Hilbert schemes of points from wall data.
//!
//! Divisors are written in the basis `(K_X^[n], H^[n], E)` of `NS(X^[n])`
//! for a surface with irregularity zero and Picard rank one.

use std::ops::Add;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{genus_in_linear_system, ChernSurface, SurfaceData};
use crate::rational::{self, half, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorHilb {
    #[serde(with = "rational::serde_str")]
    pub coef_k: Rational,
    #[serde(with = "rational::serde_str")]
    pub coef_h: Rational,
    #[serde(with = "rational::serde_str")]
    pub coef_e: Rational,
    /// `coef_h + coef_k·(H·K)/H²`, the `H^[n]` coefficient after substituting
    /// `K_X = ((H·K)/H²)·H`. `None` when no surface was supplied.
    #[serde(with = "rational::serde_str_opt")]
    pub combined_h: Option<Rational>,
}

impl DivisorHilb {
    pub fn new(coef_k: Rational, coef_h: Rational, coef_e: Rational, s: &SurfaceData) -> Self {
        let combined_h = &coef_h + &coef_k * Rational::new(s.h_dot_k.into(), s.h_squared.into());
        DivisorHilb {
            coef_k,
            coef_h,
            coef_e,
            combined_h: Some(combined_h),
        }
    }
}

impl Add for &DivisorHilb {
    type Output = DivisorHilb;
    fn add(self, o: &DivisorHilb) -> DivisorHilb {
        DivisorHilb {
            coef_k: &self.coef_k + &o.coef_k,
            coef_h: &self.coef_h + &o.coef_h,
            coef_e: &self.coef_e + &o.coef_e,
            combined_h: match (&self.combined_h, &o.combined_h) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }
}

/// Image of `w = (r, c, x)` under the Donaldson morphism: `r·E/2 − c·H^[n]`.
pub fn donaldson_image(w: &ChernSurface, s: &SurfaceData) -> DivisorHilb {
    DivisorHilb::new(Rational::zero(), -&w.c, &w.r * half(), s)
}

/// Normalized representative `K/2 − s_W·H − E/2` of the ray attached to a
/// semicircular wall with center `s_W`, with `combined_h` unset.
pub fn divisor_from_wall_center(s_w: &Rational) -> DivisorHilb {
    DivisorHilb {
        coef_k: half(),
        coef_h: -s_w,
        coef_e: -half(),
        combined_h: None,
    }
}

/// [`divisor_from_wall_center`] with `combined_h` evaluated on `s`.
pub fn divisor_from_wall_center_on(s_w: &Rational, s: &SurfaceData) -> DivisorHilb {
    DivisorHilb::new(half(), -s_w, -half(), s)
}

fn check_hypothesis(s: &SurfaceData, n: i64) -> Result<()> {
    let bound = s.a * s.a * s.h_squared;
    if n < 1 || n < bound {
        return Err(Error::HypothesisViolated(format!(
            "need n >= a^2 H^2 = {bound}, got n = {n}"
        )));
    }
    Ok(())
}

/// `K/2 + (a/2 + n/(aH²))·H − E/2`, nef for `n ≥ a²H²`.
pub fn nef_divisor_hilb(s: &SurfaceData, n: i64) -> Result<DivisorHilb> {
    s.validate()?;
    check_hypothesis(s, n)?;
    let a = int(s.a);
    let coef_h = &a * half() + Rational::new(n.into(), (s.a * s.h_squared).into());
    Ok(DivisorHilb::new(half(), coef_h, -half(), s))
}

/// Returns `(n ≥ g + 1, g)` with `g` the arithmetic genus of curves in `|aH|`.
pub fn is_extremal(s: &SurfaceData, n: i64) -> Result<(bool, i64)> {
    s.validate()?;
    check_hypothesis(s, n)?;
    let g = genus_in_linear_system(s)?;
    Ok((n > g, g))
}
