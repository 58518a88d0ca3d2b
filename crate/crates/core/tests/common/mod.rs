//! Independent oracles shared by the integration and acceptance suites.
//!
//! Nothing here calls the enumeration or wall code under test; walls are
//! recovered from first principles by solving the slope equality directly.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use stabwall_core::lattice::{ChernSurface, SurfaceData};
use stabwall_core::rational::{int, Rational};

/// `ch₂` grid for the oracle search box.
#[derive(Clone, Copy)]
pub enum Grid {
    /// `d ∈ H²c²/2 + ℤ`.
    Lattice,
    /// `d ∈ ℤ/N`.
    Denominator(i64),
}

fn disc(r: &Rational, c: &Rational, d: &Rational, h: &Rational) -> Rational {
    h * c * c - int(2) * r * d
}

/// Heights `t₀ > 0` at which some `F` in the box has `ν(F) = ν(v)` on the
/// line `β = β₀`, with `F` and `v − F` in the heart and both of
/// nonnegative discriminant. Walls of `v` are nested, so each wall meets
/// the probe line at exactly one height.
pub fn oracle_heights(
    v: &ChernSurface,
    s: &SurfaceData,
    beta0: &Rational,
    rmax: i64,
    dmax: i64,
    grid: Grid,
) -> BTreeSet<Rational> {
    let h = int(s.h_squared);
    let b = beta0;
    // twisted (r, H·c^β, ch₂^β)
    let tw = |r: &Rational, c: &Rational, d: &Rational| {
        let cb = c - b * r;
        let db = d - b * &h * c + b * b * &h * r / int(2);
        (&h * cb, db)
    };
    // orient v so that it lies in the heart at β₀
    let sign = if tw(&v.r, &v.c, &v.d).0.is_negative() { -1 } else { 1 };
    let vr = &v.r * int(sign);
    let vc = &v.c * int(sign);
    let vd = &v.d * int(sign);
    let (hcv, dv) = tw(&vr, &vc, &vd);
    let mut out = BTreeSet::new();
    let cmax = 40;
    for r in -rmax..=rmax {
        let rq = int(r);
        for c in -cmax..=cmax {
            let cq = int(c);
            let (hcf, _) = tw(&rq, &cq, &int(0));
            if !hcf.is_positive() || hcf >= hcv {
                continue;
            }
            let ds: Vec<Rational> = match grid {
                Grid::Lattice => {
                    let base = &h * &cq * &cq / int(2);
                    let frac = &base - base.floor();
                    (-dmax..=dmax).map(|m| &frac + int(m)).collect()
                }
                Grid::Denominator(n) => (-dmax * n..=dmax * n)
                    .map(|k| Rational::new(k.into(), n.into()))
                    .collect(),
            };
            for d in ds {
                let gr = &vr - &rq;
                let gc = &vc - &cq;
                let gd = &vd - &d;
                if disc(&rq, &cq, &d, &h).is_negative() || disc(&gr, &gc, &gd, &h).is_negative()
                {
                    continue;
                }
                let (_, df) = tw(&rq, &cq, &d);
                // (df − t·H²r/2)·hcv = (dv − t·H²vr/2)·hcf, linear in t
                let coef = &h * (&vr * &hcf - &rq * &hcv) / int(2);
                let rhs = &dv * &hcf - &df * &hcv;
                if coef.is_zero() {
                    continue;
                }
                let t0 = rhs / coef;
                if t0.is_positive() {
                    out.insert(t0);
                }
            }
        }
    }
    out
}

/// Dense univariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn constant(c: Rational) -> Self {
        Poly(vec![c]).trim()
    }

    pub fn x() -> Self {
        Poly(vec![int(0), int(1)])
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = int(0);
        Poly((0..n)
            .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
            .collect())
        .trim()
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly(self.0.iter().map(|c| c * k).collect()).trim()
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly(vec![]);
        }
        let mut out = vec![int(0); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trim()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(int(0), |acc, c| acc * x + c)
    }
}

/// `Q_{t,β}(v)` as `(coefficient of t, constant term)`, each a polynomial in
/// β, built from the exponential twist term by term.
pub fn q_polynomials(ch: [Rational; 4]) -> (Poly, Poly) {
    let [c0, c1, c2, c3] = ch.map(Poly::constant);
    let b = Poly::x();
    let b2 = b.mul(&b);
    let b3 = b2.mul(&b);
    let neg = |p: &Poly| p.scale(&int(-1));
    let half = Rational::new(1.into(), 2.into());
    let sixth = Rational::new(1.into(), 6.into());
    let t1 = c1.add(&neg(&b.mul(&c0)));
    let t2 = c2.add(&neg(&b.mul(&c1))).add(&b2.mul(&c0).scale(&half));
    let t3 = c3
        .add(&neg(&b.mul(&c2)))
        .add(&b2.mul(&c1).scale(&half))
        .add(&neg(&b3.mul(&c0).scale(&sixth)));
    let delta = c1.mul(&c1).add(&neg(&c0.mul(&c2).scale(&int(2))));
    let constant = t2.mul(&t2).scale(&int(4)).add(&neg(&t1.mul(&t3).scale(&int(6))));
    (delta, constant)
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
