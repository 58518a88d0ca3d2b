//! Tilt stability on P³ (`H³ = 1`): the Chern ring to degree 3, the
//! quadratic form `Q_{α,β}`, the second-tilt charge, `β̄` in a real
//! quadratic field, and the Castelnuovo exclusion pipeline.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{ChernSurface, SurfaceData};
use crate::rational::{self, fmt_rational, int, q, Rational};
use crate::tilt::{self, SlopeValue, Wall};
use crate::walls::higher_rank_radius_bound;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChernP3 {
    #[serde(with = "rational::serde_str")]
    pub ch0: Rational,
    #[serde(with = "rational::serde_str")]
    pub ch1: Rational,
    #[serde(with = "rational::serde_str")]
    pub ch2: Rational,
    #[serde(with = "rational::serde_str")]
    pub ch3: Rational,
}

impl ChernP3 {
    pub fn new(ch0: Rational, ch1: Rational, ch2: Rational, ch3: Rational) -> Self {
        ChernP3 { ch0, ch1, ch2, ch3 }
    }

    pub fn unit() -> Self {
        ChernP3::new(int(1), int(0), int(0), int(0))
    }

    /// `ch(O(k)) = e^{kH}`.
    pub fn line_bundle(k: i64) -> Self {
        let k = int(k);
        let k2 = &k * &k;
        ChernP3::new(int(1), k.clone(), &k2 / int(2), k2 * k / int(6))
    }

    pub fn from_slice(xs: &[Rational]) -> Result<Self> {
        match xs {
            [a, b, c, d] => Ok(ChernP3::new(a.clone(), b.clone(), c.clone(), d.clone())),
            _ => Err(Error::Parse(format!(
                "P3 Chern character needs 4 entries, got {}",
                xs.len()
            ))),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::from_slice(&rational::parse_rational_list(s)?)
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.ch0, &self.ch1, &self.ch2, &self.ch3]
    }

    /// `(ch₀, ch₁, ch₂)`, the part seen by the tilt slope.
    pub fn truncate(&self) -> ChernSurface {
        ChernSurface::new(self.ch0.clone(), self.ch1.clone(), self.ch2.clone())
    }
}

impl fmt::Display for ChernP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.components().map(fmt_rational);
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

impl Add for &ChernP3 {
    type Output = ChernP3;
    fn add(self, o: &ChernP3) -> ChernP3 {
        ChernP3::new(
            &self.ch0 + &o.ch0,
            &self.ch1 + &o.ch1,
            &self.ch2 + &o.ch2,
            &self.ch3 + &o.ch3,
        )
    }
}

impl Sub for &ChernP3 {
    type Output = ChernP3;
    fn sub(self, o: &ChernP3) -> ChernP3 {
        ChernP3::new(
            &self.ch0 - &o.ch0,
            &self.ch1 - &o.ch1,
            &self.ch2 - &o.ch2,
            &self.ch3 - &o.ch3,
        )
    }
}

/// `p + q·√D` with `D ≥ 0`. Values with `q = 0` or `D = 0` are rational and
/// combine with any other `D`; two irrational operands must share `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticNumber {
    pub p: Rational,
    pub q: Rational,
    pub d: BigInt,
}

impl QuadraticNumber {
    pub fn new(p: Rational, q: Rational, d: BigInt) -> Self {
        assert!(!d.is_negative(), "radicand must be nonnegative");
        if d.is_zero() || q.is_zero() {
            QuadraticNumber::rational(p)
        } else {
            QuadraticNumber { p, q, d }
        }
    }

    pub fn rational(p: Rational) -> Self {
        QuadraticNumber {
            p,
            q: Rational::zero(),
            d: BigInt::zero(),
        }
    }

    /// `√x` for a rational `x ≥ 0`, as `√(ab)/b` with `x = a/b` in lowest terms.
    pub fn sqrt_of(x: &Rational) -> Self {
        assert!(!x.is_negative(), "square root of a negative rational");
        let d = x.numer() * x.denom();
        QuadraticNumber::new(
            Rational::zero(),
            Rational::new(BigInt::one(), x.denom().clone()),
            d,
        )
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero() || self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.p.clone())
        } else {
            rational::is_perfect_square(&self.d)
                .map(|r| &self.p + &self.q * Rational::from_integer(r))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    /// Exact sign, by comparing `p²` with `q²D` when the signs of `p` and `q`
    /// disagree.
    pub fn signum(&self) -> Ordering {
        let zero = Rational::zero();
        let sp = self.p.cmp(&zero);
        if self.is_rational() {
            return sp;
        }
        let sq = self.q.cmp(&zero);
        if sp == Ordering::Equal || sp == sq {
            return sq;
        }
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * Rational::from_integer(self.d.clone());
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuadraticNumber::new(&self.p * k, &self.q * k, self.d.clone())
    }

    fn common_d(&self, o: &Self) -> BigInt {
        match (self.is_rational(), o.is_rational()) {
            (true, _) => o.d.clone(),
            (false, true) => self.d.clone(),
            (false, false) => {
                assert_eq!(self.d, o.d, "arithmetic across different radicands");
                self.d.clone()
            }
        }
    }

    pub fn cmp_value(&self, o: &Self) -> Ordering {
        (self - o).signum()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rational(&self.p));
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        let coef = fmt_rational(&self.q.abs());
        if self.p.is_zero() {
            let lead = if sign == '-' { "-" } else { "" };
            write!(f, "{lead}{coef}*sqrt({})", self.d)
        } else {
            write!(f, "{} {sign} {coef}*sqrt({})", fmt_rational(&self.p), self.d)
        }
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadraticNumber", 4)?;
        st.serialize_field("p", &fmt_rational(&self.p))?;
        st.serialize_field("q", &fmt_rational(&self.q))?;
        st.serialize_field("d", &self.d.to_string())?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, o: &QuadraticNumber) -> QuadraticNumber {
        let d = self.common_d(o);
        QuadraticNumber::new(&self.p + &o.p, &self.q + &o.q, d)
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, o: &QuadraticNumber) -> QuadraticNumber {
        let d = self.common_d(o);
        QuadraticNumber::new(&self.p - &o.p, &self.q - &o.q, d)
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, o: &QuadraticNumber) -> QuadraticNumber {
        let d = self.common_d(o);
        let dq = Rational::from_integer(d.clone());
        QuadraticNumber::new(
            &self.p * &o.p + &self.q * &o.q * dq,
            &self.p * &o.q + &self.q * &o.p,
            d,
        )
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::new(-&self.p, -&self.q, self.d.clone())
    }
}

/// Commutative ring with scalar multiplication by rationals.
pub trait ChernScalar: Clone {
    fn from_rational(x: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, k: &Rational) -> Self;
}

impl ChernScalar for Rational {
    fn from_rational(x: &Rational) -> Self {
        x.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
}

impl ChernScalar for QuadraticNumber {
    fn from_rational(x: &Rational) -> Self {
        QuadraticNumber::rational(x.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, k: &Rational) -> Self {
        QuadraticNumber::scale(self, k)
    }
}

/// `ch · e^{−βH}` over any scalar ring containing β.
pub fn twist_p3_in<T: ChernScalar>(v: &ChernP3, beta: &T) -> [T; 4] {
    let [c0, c1, c2, c3] = v.components().map(T::from_rational);
    let b2 = beta.mul(beta);
    let b3 = b2.mul(beta);
    [
        c0.clone(),
        c1.sub(&beta.mul(&c0)),
        c2.sub(&beta.mul(&c1)).add(&b2.mul(&c0).scale(&q(1, 2))),
        c3.sub(&beta.mul(&c2))
            .add(&b2.mul(&c1).scale(&q(1, 2)))
            .sub(&b3.mul(&c0).scale(&q(1, 6))),
    ]
}

pub fn twist_p3(v: &ChernP3, beta: &Rational) -> ChernP3 {
    let [a, b, c, d] = twist_p3_in(v, beta);
    ChernP3::new(a, b, c, d)
}

pub fn twist_p3_quadratic(v: &ChernP3, beta: &QuadraticNumber) -> [QuadraticNumber; 4] {
    twist_p3_in(v, beta)
}

/// Product in `ℚ[H]/(H⁴)`.
pub fn product_p3(v: &ChernP3, w: &ChernP3) -> ChernP3 {
    let a = v.components();
    let b = w.components();
    let coef = |i: usize| (0..=i).fold(Rational::zero(), |acc, j| acc + a[j] * b[i - j]);
    ChernP3::new(coef(0), coef(1), coef(2), coef(3))
}

/// Hirzebruch–Riemann–Roch on P³: `ch₃ + 2ch₂ + (11/6)ch₁ + ch₀`.
pub fn chi_p3(v: &ChernP3) -> Rational {
    &v.ch3 + int(2) * &v.ch2 + q(11, 6) * &v.ch1 + &v.ch0
}

/// `Δ = ch₁² − 2ch₀ch₂`.
pub fn delta_p3(v: &ChernP3) -> Rational {
    &v.ch1 * &v.ch1 - int(2) * &v.ch0 * &v.ch2
}

/// `Q = tΔ + 4(ch₂^β)² − 6ch₁^β·ch₃^β`.
pub fn q_form(v: &ChernP3, t: &Rational, beta: &Rational) -> Rational {
    let tw = twist_p3(v, beta);
    t * delta_p3(v) + int(4) * &tw.ch2 * &tw.ch2 - int(6) * &tw.ch1 * &tw.ch3
}

/// Zero locus of `Q`, equal to the numerical wall between `(ch₀, ch₁, ch₂)`
/// and `(ch₁, 2ch₂, 3ch₃)`. For `Δ > 0` the region `Q < 0` is the open disc
/// bounded by a returned circle.
pub fn q_circle(v: &ChernP3) -> Wall {
    let w = ChernSurface::new(v.ch1.clone(), int(2) * &v.ch2, int(3) * &v.ch3);
    tilt::wall_with_h(&v.truncate(), &w, &int(1))
}

fn unit_polarization() -> SurfaceData {
    SurfaceData::p2()
}

pub fn nu3(v: &ChernP3, t: &Rational, beta: &Rational) -> Result<SlopeValue> {
    tilt::tilt_slope(&v.truncate(), t, beta, &unit_polarization())
}

pub fn tilt_wall_p3(v: &ChernP3, w: &ChernP3) -> Wall {
    tilt::wall_with_h(&v.truncate(), &w.truncate(), &int(1))
}

/// `Z = −ch₃^β + (s + 1/6)·t·ch₁^β + i(ch₂^β − (t/2)·ch₀)` as `(Re, Im)`.
pub fn second_tilt_charge(
    v: &ChernP3,
    t: &Rational,
    beta: &Rational,
    s: &Rational,
) -> Result<(Rational, Rational)> {
    if !t.is_positive() {
        return Err(Error::NonpositiveT);
    }
    if !s.is_positive() {
        return Err(Error::NonpositiveS);
    }
    let tw = twist_p3(v, beta);
    let re = -&tw.ch3 + (s + q(1, 6)) * t * &tw.ch1;
    let im = &tw.ch2 - t / int(2) * &tw.ch0;
    Ok((re, im))
}

/// The smaller root of `ch₂^β = 0`: `(ch₁ − √Δ)/ch₀`, or `ch₂/ch₁` in rank 0.
pub fn beta_bar(v: &ChernP3) -> Result<QuadraticNumber> {
    if v.ch0.is_zero() {
        if v.ch1.is_zero() {
            return Err(Error::UndefinedBetaBar(format!(
                "{v} has ch0 = ch1 = 0"
            )));
        }
        return Ok(QuadraticNumber::rational(&v.ch2 / &v.ch1));
    }
    let delta = delta_p3(v);
    if delta.is_negative() {
        return Err(Error::UndefinedBetaBar(format!(
            "{v} has negative discriminant {}",
            fmt_rational(&delta)
        )));
    }
    let root = QuadraticNumber::sqrt_of(&delta);
    let p = QuadraticNumber::rational(v.ch1.clone());
    Ok((&p - &root).scale(&(Rational::one() / &v.ch0)))
}

/// `ch₃^{β̄}`; the `ch₂^{β̄}` component is verified to vanish.
pub fn ch3_at_beta_bar(v: &ChernP3) -> Result<QuadraticNumber> {
    let bb = beta_bar(v)?;
    let [_, _, c2, c3] = twist_p3_quadratic(v, &bb);
    assert!(c2.is_zero(), "ch2 does not vanish at beta-bar of {v}");
    Ok(c3)
}

/// `ch₃ ≤ ch₂²/4 + 1/3` for classes `(0, 2, ch₂, ch₃)`. The difference
/// `ch₃ − ch₂²/4` is invariant under twisting such classes.
pub fn rank_zero_e_bound(v: &ChernP3) -> Result<bool> {
    if !v.ch0.is_zero() || v.ch1 != int(2) {
        return Err(Error::WrongShape(format!(
            "expected (0, 2, d, e), got {v}"
        )));
    }
    Ok(v.ch3 <= &v.ch2 * &v.ch2 / int(4) + q(1, 3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Containment {
    Inside,
    NotInside,
    WallEmpty,
}

/// Whether the closed disc under `W(v, w)` lies in the open disc `Q(v) < 0`.
pub fn wall_inside_q_negative(v: &ChernP3, w: &ChernP3) -> Result<Containment> {
    let delta = delta_p3(v);
    if !delta.is_positive() {
        return Err(Error::DegenerateDelta(format!(
            "{v} has discriminant {} <= 0",
            fmt_rational(&delta)
        )));
    }
    let wall = tilt_wall_p3(v, w);
    Ok(match wall {
        Wall::Empty => Containment::WallEmpty,
        Wall::Circle { .. } => {
            if circle_inside(&wall, &q_circle(v)) {
                Containment::Inside
            } else {
                Containment::NotInside
            }
        }
        Wall::Vertical { .. } | Wall::Everywhere => Containment::NotInside,
    })
}

/// Closed disc `w` inside open disc `c`: `ρ_c > ρ_w` and `δ < ρ_c − ρ_w`,
/// i.e. `K = ρ_w² + ρ_c² − δ² > 0` and `K² > 4ρ_w²ρ_c²`.
fn circle_inside(w: &Wall, c: &Wall) -> bool {
    let (
        Wall::Circle {
            center: sw,
            radius_sq: rw,
        },
        Wall::Circle {
            center: sc,
            radius_sq: rc,
        },
    ) = (w, c)
    else {
        return false;
    };
    let ds = sw - sc;
    let k = rw + rc - &ds * &ds;
    rc > rw && k.is_positive() && &k * &k > int(4) * rw * rc
}

/// `ch(I_C) = (1, 0, −d, 2d + g − 1)` for a curve of degree `d`, genus `g`.
pub fn ch_ideal_curve(d: i64, g: i64) -> ChernP3 {
    ChernP3::new(int(1), int(0), int(-d), int(2 * d + g - 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Destabilizer {
    /// Every subobject of rank at least `min_rank`.
    HigherRank { min_rank: i64 },
    /// `O(−a) → I_C`.
    LineBundle { a: i64 },
    /// `O(−a) → I_C` for every `a ≥ from`.
    LineBundlesFrom { from: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// No part of the wall lies where the destabilizer is in the heart.
    WallEmpty,
    WallInsideQNegative,
    QuotientEBoundViolated,
    /// Assumed away: the curve does not lie in a plane.
    NonDegeneracy,
    NotExcluded,
}

impl Reason {
    pub fn excludes(self) -> bool {
        self != Reason::NotExcluded
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub destabilizer: Destabilizer,
    pub reason: Reason,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CastelnuovoVerdict {
    pub d: i64,
    pub g: i64,
    pub chern: ChernP3,
    pub excluded: bool,
    pub witnesses: Vec<Witness>,
}

/// Decides whether tilt stability of `I_C` rules out an integral
/// non-degenerate curve of degree `d` and genus `g`.
pub fn castelnuovo_excluded(d: i64, g: i64) -> Result<CastelnuovoVerdict> {
    if d < 3 {
        return Err(Error::InvalidDegree(d));
    }
    let v = ch_ideal_curve(d, g);
    let q_wall = q_circle(&v);
    let q_radius = q_wall.radius_sq().cloned();
    let mut witnesses = Vec::new();

    // Rank ≥ 2: all walls of v lie in one nested family, so a radius below
    // the Q circle's forces the wall inside it. The bound decreases in rank.
    let bound = higher_rank_radius_bound(&v.truncate(), 2, &unit_polarization())?;
    let inside = q_radius.as_ref().is_some_and(|rq| &bound < rq);
    witnesses.push(Witness {
        destabilizer: Destabilizer::HigherRank { min_rank: 2 },
        reason: if inside {
            Reason::WallInsideQNegative
        } else {
            Reason::NotExcluded
        },
        detail: match &q_radius {
            Some(rq) => format!(
                "radius_sq <= {} against Q radius_sq {}",
                fmt_rational(&bound),
                fmt_rational(rq)
            ),
            None => format!("radius_sq <= {}; Q < 0 is empty", fmt_rational(&bound)),
        },
    });

    witnesses.push(Witness {
        destabilizer: Destabilizer::LineBundle { a: 1 },
        reason: Reason::NonDegeneracy,
        detail: "O(-1) -> I_C means C lies in a plane".into(),
    });

    let mut a = 2;
    loop {
        let line = ChernP3::line_bundle(-a);
        if !destabilizes_somewhere(&v, &line, a) {
            // The wall spans β ∈ [min(−a, −2d/a), max(−a, −2d/a)] and O(−a)
            // is in the heart only for β < −a; this stays so for larger a.
            let destabilizer = if a == 2 {
                Destabilizer::LineBundle { a }
            } else {
                Destabilizer::LineBundlesFrom { from: a }
            };
            witnesses.push(Witness {
                destabilizer,
                reason: Reason::WallEmpty,
                detail: format!("a^2 >= 2d for a = {a}"),
            });
            if a >= 3 {
                break;
            }
            a += 1;
            continue;
        }
        let containment = wall_inside_q_negative(&v, &line)?;
        let (reason, detail) = if containment == Containment::Inside {
            (Reason::WallInsideQNegative, "wall inside Q < 0".to_string())
        } else if a == 2 {
            let quotient = &v - &line;
            if rank_zero_e_bound(&quotient)? {
                (
                    Reason::NotExcluded,
                    format!("quotient {quotient} satisfies the rank-zero bound"),
                )
            } else {
                (
                    Reason::QuotientEBoundViolated,
                    format!("quotient {quotient} has ch3 > ch2^2/4 + 1/3"),
                )
            }
        } else {
            (Reason::NotExcluded, "wall meets Q >= 0".to_string())
        };
        witnesses.push(Witness {
            destabilizer: Destabilizer::LineBundle { a },
            reason,
            detail,
        });
        a += 1;
    }

    let excluded = witnesses.iter().all(|w| w.reason.excludes());
    Ok(CastelnuovoVerdict {
        d,
        g,
        chern: v,
        excluded,
        witnesses,
    })
}

/// Whether `W(v, O(−a))` has points with `β < −a`, where `O(−a)` lies in
/// the heart. Its left endpoint is `center − ρ`.
fn destabilizes_somewhere(v: &ChernP3, line: &ChernP3, a: i64) -> bool {
    let Wall::Circle { center, radius_sq } = tilt_wall_p3(v, line) else {
        return false;
    };
    let gap = &center + int(a);
    !gap.is_positive() || &gap * &gap < radius_sq
}
