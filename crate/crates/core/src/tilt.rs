//! Tilt slopes and numerical walls in the `(β, t)` half-plane, `t = α²`.
//!
//! With `ω = αH` and `B = βH` the tilt slope of `v = (r, c, d)` is
//!
//! ```text
//! ν(v) = (d^β − (t·H²/2)·r) / (H²·c^β)
//! ```
//!
//! where the positive factor `α` of the denominator is dropped; at a fixed
//! point this rescales every slope by the same positive number, so all
//! comparisons are unchanged. Working in `t` instead of `α` keeps each wall a
//! polynomial locus over the rationals:
//!
//! ```text
//! ν(v) = ν(w)  ⇔  R − Q·β + (H²·P/2)(t + β²) = 0
//! P = c_v r_w − c_w r_v,  Q = d_v r_w − d_w r_v,  R = d_v c_w − d_w c_v
//! ```

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{twist_surface, ChernSurface, SurfaceData};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SlopeValue {
    Finite(Rational),
    PositiveInfinity,
}

impl Serialize for SlopeValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SlopeValue::Finite(x) => s.serialize_str(&rational::fmt_rational(x)),
            SlopeValue::PositiveInfinity => s.serialize_str("+inf"),
        }
    }
}

/// Numerical wall between two classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "WallRepr")]
pub enum Wall {
    /// `(β − center)² + t = radius_sq`, with `radius_sq > 0`.
    Circle {
        #[serde(with = "rational::serde_str")]
        center: Rational,
        #[serde(with = "rational::serde_str")]
        radius_sq: Rational,
    },
    Vertical {
        #[serde(with = "rational::serde_str")]
        beta: Rational,
    },
    Empty,
    Everywhere,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum WallRepr {
    Circle {
        #[serde(with = "rational::serde_str")]
        center: Rational,
        #[serde(with = "rational::serde_str")]
        radius_sq: Rational,
    },
    Vertical {
        #[serde(with = "rational::serde_str")]
        beta: Rational,
    },
    Empty,
    Everywhere,
}

impl TryFrom<WallRepr> for Wall {
    type Error = Error;

    fn try_from(w: WallRepr) -> Result<Wall> {
        Ok(match w {
            WallRepr::Circle { center, radius_sq } => {
                if !radius_sq.is_positive() {
                    return Err(Error::Parse("circle wall needs radius_sq > 0".into()));
                }
                Wall::Circle { center, radius_sq }
            }
            WallRepr::Vertical { beta } => Wall::Vertical { beta },
            WallRepr::Empty => Wall::Empty,
            WallRepr::Everywhere => Wall::Everywhere,
        })
    }
}

impl Wall {
    pub fn circle(center: Rational, radius_sq: Rational) -> Wall {
        assert!(radius_sq.is_positive(), "circle wall needs positive radius");
        Wall::Circle { center, radius_sq }
    }

    pub fn center(&self) -> Option<&Rational> {
        match self {
            Wall::Circle { center, .. } => Some(center),
            _ => None,
        }
    }

    pub fn radius_sq(&self) -> Option<&Rational> {
        match self {
            Wall::Circle { radius_sq, .. } => Some(radius_sq),
            _ => None,
        }
    }

    /// Height `t` of the circle above `β`, if the vertical line meets it.
    /// May be zero or negative; callers decide which sign counts.
    pub fn height_at(&self, beta: &Rational) -> Option<Rational> {
        match self {
            Wall::Circle { center, radius_sq } => {
                let dx = beta - center;
                Some(radius_sq - &dx * &dx)
            }
            _ => None,
        }
    }

    /// Whether `(t, β)` lies on the wall, `t > 0` required.
    pub fn contains_point(&self, t: &Rational, beta: &Rational) -> bool {
        if !t.is_positive() {
            return false;
        }
        match self {
            Wall::Circle { .. } => self.height_at(beta).as_ref() == Some(t),
            Wall::Vertical { beta: b } => b == beta,
            Wall::Empty => false,
            Wall::Everywhere => true,
        }
    }

    /// Whether the wall meets the vertical line `β = beta` at some `t > 0`.
    pub fn crosses(&self, beta: &Rational) -> bool {
        match self {
            Wall::Circle { .. } => self.height_at(beta).is_some_and(|t| t.is_positive()),
            Wall::Vertical { beta: b } => b == beta,
            Wall::Empty => false,
            Wall::Everywhere => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WallRelation {
    Equal,
    Nested,
    Disjoint,
    Intersecting,
    Degenerate,
}

fn check_t(t: &Rational) -> Result<()> {
    if t.is_positive() {
        Ok(())
    } else {
        Err(Error::NonpositiveT)
    }
}

/// Numerator and (projective) denominator of ν, i.e. `(−Re Z, Im Z / α)`.
pub(crate) fn slope_parts(
    v: &ChernSurface,
    t: &Rational,
    beta: &Rational,
    s: &SurfaceData,
) -> (Rational, Rational) {
    let h = s.h();
    let tw = twist_surface(v, beta, s);
    let num = &tw.d - t * &h * &tw.r / int(2);
    (num, h * tw.c)
}

/// `Z = −ch₂^β + (t·H²/2)·ch₀ + i·H²·ch₁^β`, again without the factor `α`
/// on the imaginary part.
pub fn central_charge(
    v: &ChernSurface,
    t: &Rational,
    beta: &Rational,
    s: &SurfaceData,
) -> (Rational, Rational) {
    let (num, den) = slope_parts(v, t, beta, s);
    (-num, den)
}

pub fn tilt_slope(
    v: &ChernSurface,
    t: &Rational,
    beta: &Rational,
    s: &SurfaceData,
) -> Result<SlopeValue> {
    check_t(t)?;
    let (num, den) = slope_parts(v, t, beta, s);
    Ok(if den.is_zero() {
        SlopeValue::PositiveInfinity
    } else {
        SlopeValue::Finite(num / den)
    })
}

pub fn compare_tilt_slopes(
    v: &ChernSurface,
    w: &ChernSurface,
    t: &Rational,
    beta: &Rational,
    s: &SurfaceData,
) -> Result<Ordering> {
    check_t(t)?;
    let (nv, dv) = slope_parts(v, t, beta, s);
    let (nw, dw) = slope_parts(w, t, beta, s);
    Ok(match (dv.is_zero(), dw.is_zero()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            // nv/dv − nw/dw has the sign of (nv·dw − nw·dv)·dv·dw
            let cross = (&nv * &dw - &nw * &dv) * (&dv * &dw);
            cross.cmp(&Rational::zero())
        }
    })
}

/// Wall coefficients `(P, Q, R)` for the pair.
pub(crate) fn wall_coefficients(
    v: &ChernSurface,
    w: &ChernSurface,
) -> (Rational, Rational, Rational) {
    let p = &v.c * &w.r - &w.c * &v.r;
    let q = &v.d * &w.r - &w.d * &v.r;
    let r = &v.d * &w.c - &w.d * &v.c;
    (p, q, r)
}

pub(crate) fn wall_with_h(v: &ChernSurface, w: &ChernSurface, h: &Rational) -> Wall {
    let (p, q, r) = wall_coefficients(v, w);
    if !p.is_zero() {
        let hp = h * &p;
        let center = &q / &hp;
        let radius_sq = &center * &center - int(2) * &r / &hp;
        if radius_sq.is_positive() {
            Wall::Circle { center, radius_sq }
        } else {
            Wall::Empty
        }
    } else if !q.is_zero() {
        Wall::Vertical { beta: r / q }
    } else if r.is_zero() {
        Wall::Everywhere
    } else {
        Wall::Empty
    }
}

/// Locus where `ν(v) = ν(w)`.
pub fn numerical_wall(v: &ChernSurface, w: &ChernSurface, s: &SurfaceData) -> Wall {
    wall_with_h(v, w, &s.h())
}

/// The unique vertical wall `β = c/r` of a class of nonzero rank.
pub fn vertical_wall(v: &ChernSurface) -> Result<Rational> {
    if v.r.is_zero() {
        return Err(Error::RankZero);
    }
    Ok(&v.c / &v.r)
}

/// Relative position of two walls in the open upper half-plane.
///
/// For circles with center distance `δ` and radii `ρ₁, ρ₂`, set
/// `K = ρ₁² + ρ₂² − δ²`. Then `δ < |ρ₁ − ρ₂|` iff `K > 0 ∧ K² > 4ρ₁²ρ₂²`,
/// `δ > ρ₁ + ρ₂` iff `K < 0 ∧ K² > 4ρ₁²ρ₂²`, and the arcs cross iff
/// `K² < 4ρ₁²ρ₂²`. Tangency happens on the β-axis and is classified with
/// the nearby open case.
pub fn wall_relation(w1: &Wall, w2: &Wall) -> WallRelation {
    match (w1, w2) {
        (
            Wall::Circle {
                center: s1,
                radius_sq: r1,
            },
            Wall::Circle {
                center: s2,
                radius_sq: r2,
            },
        ) => {
            if s1 == s2 && r1 == r2 {
                return WallRelation::Equal;
            }
            let ds = s1 - s2;
            let k = r1 + r2 - &ds * &ds;
            let lhs = &k * &k;
            let rhs = int(4) * r1 * r2;
            match lhs.cmp(&rhs) {
                Ordering::Less => WallRelation::Intersecting,
                _ if k.is_positive() => WallRelation::Nested,
                _ => WallRelation::Disjoint,
            }
        }
        _ if w1 == w2 => WallRelation::Equal,
        _ => WallRelation::Degenerate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ch(r: i64, c: i64, d: Rational) -> ChernSurface {
        ChernSurface::new(int(r), int(c), d)
    }

    #[test]
    fn slope_examples() {
        let p2 = SurfaceData::p2();
        let o = ch(1, 0, int(0));
        assert_eq!(
            tilt_slope(&o, &int(1), &int(-1), &p2).unwrap(),
            SlopeValue::Finite(int(0))
        );
        for t in [q(1, 3), int(1), int(7)] {
            assert_eq!(
                tilt_slope(&ch(1, 0, int(-5)), &t, &int(0), &p2).unwrap(),
                SlopeValue::PositiveInfinity
            );
        }
        let o_minus = ch(1, -1, q(1, 2));
        assert_eq!(
            tilt_slope(&o_minus, &q(1, 4), &q(-1, 2), &p2).unwrap(),
            SlopeValue::Finite(int(0))
        );
        assert_eq!(
            tilt_slope(&o, &int(0), &int(0), &p2),
            Err(Error::NonpositiveT)
        );
    }

    #[test]
    fn comparison_matches_division() {
        let p2 = SurfaceData::p2();
        let o = ch(1, 0, int(0));
        let o_minus = ch(1, -1, q(1, 2));
        assert_eq!(
            compare_tilt_slopes(&o, &o_minus, &q(1, 4), &q(-1, 2), &p2).unwrap(),
            Ordering::Equal
        );
        let v = ch(1, 0, int(-4));
        let ord = compare_tilt_slopes(&v, &o_minus, &int(1), &int(-2), &p2).unwrap();
        let a = tilt_slope(&v, &int(1), &int(-2), &p2).unwrap();
        let b = tilt_slope(&o_minus, &int(1), &int(-2), &p2).unwrap();
        assert_eq!(ord, a.cmp(&b));
        // ν(v) = (−4 − 0 + 2 − 1/2)/2 = −5/4,  ν(O(−1)) = (1/2 − 2 + 2 − 1/2)/1 = 0
        assert_eq!(a, SlopeValue::Finite(q(-5, 4)));
        assert_eq!(ord, Ordering::Less);
    }

    #[test]
    fn wall_examples() {
        let p2 = SurfaceData::p2();
        let v = ch(1, 0, int(-4));
        assert_eq!(
            numerical_wall(&v, &ch(1, -1, q(1, 2)), &p2),
            Wall::circle(q(-9, 2), q(49, 4))
        );
        assert_eq!(
            numerical_wall(&ch(1, 0, int(0)), &ch(1, -1, q(1, 2)), &p2),
            Wall::circle(q(-1, 2), q(1, 4))
        );
        assert_eq!(
            numerical_wall(&v, &ch(2, 0, int(-8)), &p2),
            Wall::Everywhere
        );
        assert_eq!(
            numerical_wall(&v, &ch(0, 0, int(1)), &p2),
            Wall::Vertical { beta: int(0) }
        );
        // P = Q = 0, R ≠ 0: two torsion classes with different slopes
        assert_eq!(
            numerical_wall(&ch(0, 1, int(0)), &ch(0, 1, int(1)), &p2),
            Wall::Empty
        );
    }

    #[test]
    fn vertical_wall_examples() {
        assert_eq!(vertical_wall(&ch(1, 0, int(-4))), Ok(int(0)));
        assert_eq!(vertical_wall(&ch(2, 3, int(1))), Ok(q(3, 2)));
        assert_eq!(vertical_wall(&ch(0, 1, int(1))), Err(Error::RankZero));
    }

    #[test]
    fn relation_examples() {
        let big = Wall::circle(q(-9, 2), q(49, 4));
        let small = Wall::circle(int(-3), int(1));
        assert_eq!(wall_relation(&big, &small), WallRelation::Nested);
        assert_eq!(wall_relation(&small, &big), WallRelation::Nested);
        assert_eq!(wall_relation(&big, &big.clone()), WallRelation::Equal);
        assert_eq!(
            wall_relation(&Wall::circle(int(0), int(1)), &Wall::circle(int(3), int(1))),
            WallRelation::Disjoint
        );
        assert_eq!(
            wall_relation(&Wall::circle(int(0), int(1)), &Wall::circle(int(1), int(1))),
            WallRelation::Intersecting
        );
        assert_eq!(
            wall_relation(&big, &Wall::Vertical { beta: int(0) }),
            WallRelation::Degenerate
        );
        assert_eq!(
            wall_relation(&Wall::Empty, &Wall::Empty),
            WallRelation::Equal
        );
    }

    #[test]
    fn wall_json_shape() {
        let w = Wall::circle(q(-9, 2), q(49, 4));
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"kind":"circle","center":"-9/2","radius_sq":"49/4"}"#
        );
        let back: Wall = serde_json::from_str(r#"{"kind":"vertical","beta":"3/2"}"#).unwrap();
        assert_eq!(back, Wall::Vertical { beta: q(3, 2) });
        assert_eq!(serde_json::to_string(&Wall::Empty).unwrap(), r#"{"kind":"empty"}"#);
    }
}
