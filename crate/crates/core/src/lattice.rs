//! Chern characters on a surface with Picard group generated by an ample `H`.
//!
//! A class is recorded as `(r, c, d)` with `ch = (r, c·H, d)`, where `d` is the
//! degree of `ch₂`. Twisting by `B = βH` and the Bogomolov-type discriminants
//! are closed-form in these coordinates.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, fmt_rational, int, Rational};

/// Numerical invariants of the ambient surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceData {
    /// `H²`
    pub h_squared: i64,
    /// `H·K_X`
    pub h_dot_k: i64,
    /// `χ(O_X)`
    pub chi_o: i64,
    /// Smallest `a` such that `aH` is effective.
    pub a: i64,
    /// Constant `C_ω` of the support-property discriminant.
    #[serde(default = "Rational::zero", with = "rational::serde_str")]
    pub c_bogomolov: Rational,
}

impl SurfaceData {
    pub fn new(h_squared: i64, h_dot_k: i64, chi_o: i64, a: i64) -> Result<Self> {
        let s = SurfaceData {
            h_squared,
            h_dot_k,
            chi_o,
            a,
            c_bogomolov: Rational::zero(),
        };
        s.validate()?;
        Ok(s)
    }

    /// The projective plane: `H² = 1`, `K = −3H`.
    pub fn p2() -> Self {
        SurfaceData::new(1, -3, 1, 1).expect("preset is valid")
    }

    /// A quartic K3 surface: `H² = 4`, `K = 0`, `χ(O) = 2`.
    pub fn k3_deg4() -> Self {
        SurfaceData::new(4, 0, 2, 1).expect("preset is valid")
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "p2" => Ok(Self::p2()),
            "k3_deg4" => Ok(Self::k3_deg4()),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    pub fn presets() -> [(&'static str, SurfaceData); 2] {
        [("p2", Self::p2()), ("k3_deg4", Self::k3_deg4())]
    }

    pub fn validate(&self) -> Result<()> {
        if self.h_squared < 1 {
            return Err(Error::InvalidSurface(format!(
                "h_squared = {} must be >= 1",
                self.h_squared
            )));
        }
        if self.a < 1 {
            return Err(Error::InvalidSurface(format!("a = {} must be >= 1", self.a)));
        }
        if self.c_bogomolov.is_negative() {
            return Err(Error::InvalidSurface("c_bogomolov must be >= 0".into()));
        }
        Ok(())
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let data: SurfaceData = toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        data.validate()?;
        Ok(data)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let data: SurfaceData =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        data.validate()?;
        Ok(data)
    }

    pub(crate) fn h(&self) -> Rational {
        int(self.h_squared)
    }
}

/// Chern character `(r, cH, d)` of an object on a Picard-rank-one surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernSurface {
    pub r: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl ChernSurface {
    pub fn new(r: Rational, c: Rational, d: Rational) -> Self {
        ChernSurface { r, c, d }
    }

    pub fn zero() -> Self {
        ChernSurface::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// `ch(O(kH)) = (1, k, k²H²/2)`.
    pub fn line_bundle(k: i64, s: &SurfaceData) -> Self {
        ChernSurface::new(int(1), int(k), int(k * k) * s.h() / int(2))
    }

    /// `ch(I_Z) = (1, 0, −n)` for a length-`n` subscheme.
    pub fn ideal_sheaf(n: i64) -> Self {
        ChernSurface::new(int(1), int(0), int(-n))
    }

    pub fn from_slice(xs: &[Rational]) -> Result<Self> {
        match xs {
            [r, c, d] => Ok(ChernSurface::new(r.clone(), c.clone(), d.clone())),
            _ => Err(Error::Parse(format!(
                "surface Chern character needs 3 entries, got {}",
                xs.len()
            ))),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::from_slice(&rational::parse_rational_list(s)?)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl std::fmt::Display for ChernSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            fmt_rational(&self.r),
            fmt_rational(&self.c),
            fmt_rational(&self.d)
        )
    }
}

impl Serialize for ChernSurface {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_str_vec::serialize(
            &[self.r.clone(), self.c.clone(), self.d.clone()],
            s,
        )
    }
}

impl<'de> Deserialize<'de> for ChernSurface {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let xs = rational::serde_str_vec::deserialize(d)?;
        ChernSurface::from_slice(&xs).map_err(serde::de::Error::custom)
    }
}

impl Add for &ChernSurface {
    type Output = ChernSurface;
    fn add(self, o: &ChernSurface) -> ChernSurface {
        ChernSurface::new(&self.r + &o.r, &self.c + &o.c, &self.d + &o.d)
    }
}

impl Sub for &ChernSurface {
    type Output = ChernSurface;
    fn sub(self, o: &ChernSurface) -> ChernSurface {
        ChernSurface::new(&self.r - &o.r, &self.c - &o.c, &self.d - &o.d)
    }
}

impl Neg for &ChernSurface {
    type Output = ChernSurface;
    fn neg(self) -> ChernSurface {
        ChernSurface::new(-&self.r, -&self.c, -&self.d)
    }
}

impl Mul<&ChernSurface> for &Rational {
    type Output = ChernSurface;
    fn mul(self, v: &ChernSurface) -> ChernSurface {
        ChernSurface::new(self * &v.r, self * &v.c, self * &v.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscriminantReport {
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta_bar: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta_c: Rational,
}

/// `ch · e^{−βH}`.
pub fn twist_surface(v: &ChernSurface, beta: &Rational, s: &SurfaceData) -> ChernSurface {
    let h = s.h();
    let c = &v.c - beta * &v.r;
    let d = &v.d - beta * &h * &v.c + beta * beta * &h * &v.r / int(2);
    ChernSurface::new(v.r.clone(), c, d)
}

/// `Δ = H²c² − 2rd`, which is twist invariant.
pub fn delta(v: &ChernSurface, s: &SurfaceData) -> Rational {
    &v.c * &v.c * s.h() - int(2) * &v.r * &v.d
}

/// `Δ̄_H = (H·ch₁)² − 2H²·ch₀·ch₂ = H²·Δ`.
pub fn delta_bar(v: &ChernSurface, s: &SurfaceData) -> Rational {
    s.h() * delta(v, s)
}

/// Discriminants at `ω = √t·H`, `B = βH`.
///
/// `Δ^C = Δ + C_ω(ω·ch₁^B)²` with `(ω·ch₁^B)² = t·(H²·c^β)²`.
pub fn discriminants(
    v: &ChernSurface,
    s: &SurfaceData,
    t: &Rational,
    beta: &Rational,
) -> DiscriminantReport {
    let dl = delta(v, s);
    let h_ch1 = s.h() * (&v.c - beta * &v.r);
    let delta_c = &dl + &s.c_bogomolov * t * &h_ch1 * &h_ch1;
    DiscriminantReport {
        delta_bar: s.h() * &dl,
        delta: dl,
        delta_c,
    }
}

/// `χ(v) = ∫ v·td_X = d − (c/2)·H·K_X + r·χ(O_X)`.
pub fn euler_surface(v: &ChernSurface, s: &SurfaceData) -> Rational {
    &v.d - &v.c * int(s.h_dot_k) / int(2) + &v.r * int(s.chi_o)
}

/// Arithmetic genus of curves in `|aH|`: `g = 1 + (a/2)·H·K + a²H²/2`.
pub fn genus_in_linear_system(s: &SurfaceData) -> Result<i64> {
    let two_g = 2 + s.a * s.h_dot_k + s.a * s.a * s.h_squared;
    if two_g % 2 != 0 {
        return Err(Error::NonIntegralGenus(format!("{two_g}/2")));
    }
    Ok(two_g / 2)
}
