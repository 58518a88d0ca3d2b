//! Finite enumeration of numerical walls for a class along a vertical probe
//! line, and the largest wall for ideal sheaves of points.
//!
//! A wall crossing `β = β₀` comes from `0 → F → E → G → 0` in the tilted
//! heart at `β₀`. Writing `(R, C, D)` and `(r, c, d)` for the twisted and
//! `H²`-scaled characters of `E` and `F`, the heart forces `0 < c < C`, and
//! Bogomolov on `F` and `G` together with the convex-cone property bounds
//! `(c² − Δ̄)/2 ≤ r·d ≤ c²/2`. Ranks are cut off by the higher-rank radius
//! bound against the smallest wall that can still reach the probe line.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{delta, delta_bar, twist_surface, ChernSurface, SurfaceData};
use crate::rational::{ceil_i64, floor_i64, int, Rational};
use crate::tilt::{compare_tilt_slopes, numerical_wall, vertical_wall, Wall};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallCandidate {
    pub wall: Wall,
    pub destabilizer: ChernSurface,
    pub quotient: ChernSurface,
}

impl WallCandidate {
    pub fn radius_sq(&self) -> &Rational {
        self.wall
            .radius_sq()
            .expect("candidates are always circle walls")
    }
}

/// Search knobs for [`enumerate_walls_with`].
#[derive(Debug, Clone, Default)]
pub struct WallSearch {
    /// Largest rank allowed for `F` and for `G`. Derived from the radius
    /// bound when absent.
    pub max_rank: Option<i64>,
    /// Grid for `ch₂` of the pieces. `None` walks the integral lattice
    /// `ch₂ ∈ c²H²/2 + ℤ`; `Some(N)` walks every formal value in `ℤ/N`.
    pub denom_bound: Option<i64>,
}

/// `ρ² ≤ Δ̄_H(v) / (4·H²·r_F·(H²·r_F − H²·r_v))` for walls with a rank
/// `r_F` subobject, `r_F > max(r_v, 0)`.
pub fn higher_rank_radius_bound(v: &ChernSurface, r_f: i64, s: &SurfaceData) -> Result<Rational> {
    let rv = &v.r;
    let floor = if rv.is_positive() { rv.clone() } else { Rational::zero() };
    if int(r_f) <= floor {
        return Err(Error::InvalidRank {
            rank: r_f,
            floor: floor_i64(&floor),
        });
    }
    let dl = delta(v, s);
    if dl.is_negative() {
        return Err(Error::NegativeDiscriminant(crate::rational::fmt_rational(&dl)));
    }
    let h = s.h();
    let rf = int(r_f);
    Ok(delta_bar(v, s) / (int(4) * &h * &rf * (&h * &rf - &h * rv)))
}

/// The integer just left of the vertical wall (or of the common center of
/// the walls when `v` has rank zero).
pub fn default_probe(v: &ChernSurface, s: &SurfaceData) -> Result<Rational> {
    let anchor = if v.r.is_zero() {
        if v.c.is_zero() {
            return Err(Error::RankZero);
        }
        &v.d / (s.h() * &v.c)
    } else {
        vertical_wall(v)?
    };
    let fl = anchor.floor();
    Ok(if fl == anchor { fl - int(1) } else { fl })
}

/// Every circle wall for `v` that meets `β = probe` at some `t > 0`.
pub fn enumerate_walls(
    v: &ChernSurface,
    s: &SurfaceData,
    probe: &Rational,
    max_rank: Option<i64>,
) -> Result<Vec<WallCandidate>> {
    let search = WallSearch {
        max_rank,
        denom_bound: None,
    };
    enumerate_walls_with(v, s, probe, &search)
}

/// Squared radius of the smallest wall of `u` reaching `(β₀, 0)`; walls that
/// cross the probe line at `t > 0` are strictly larger.
fn min_crossing_radius_sq(u: &ChernSurface, s: &SurfaceData, probe: &Rational) -> Rational {
    let h = s.h();
    if u.r.is_zero() {
        // rank zero: every wall is centered at d/(H²c)
        let center = &u.d / (&h * &u.c);
        let dx = probe - center;
        return &dx * &dx;
    }
    let mu = &u.c / &u.r;
    let shift = delta_bar(u, s) / (&h * &h * &u.r * &u.r);
    let center = (&mu + probe) / int(2) + shift / (int(2) * (probe - &mu));
    let dx = center - probe;
    &dx * &dx
}

/// Interval of `ch₂^β` allowed by Bogomolov and the cone bound for a piece of
/// rank `r` and twisted degree `c` (both unscaled).
fn twisted_d_range(
    r: &Rational,
    c: &Rational,
    dbar: &Rational,
    h: &Rational,
) -> Option<(Rational, Rational)> {
    if r.is_zero() {
        return None;
    }
    let hc = h * c;
    let two_hr = int(2) * h * r;
    let a = (&hc * &hc - dbar) / &two_hr;
    let b = &hc * &hc / &two_hr;
    Some(if a <= b { (a, b) } else { (b, a) })
}

fn intersect(
    a: Option<(Rational, Rational)>,
    b: Option<(Rational, Rational)>,
) -> Option<(Rational, Rational)> {
    match (a, b) {
        (Some((l1, h1)), Some((l2, h2))) => Some((l1.max(l2), h1.min(h2))),
        (x, None) | (None, x) => x,
    }
}

pub fn enumerate_walls_with(
    v: &ChernSurface,
    s: &SurfaceData,
    probe: &Rational,
    search: &WallSearch,
) -> Result<Vec<WallCandidate>> {
    let dl = delta(v, s);
    if dl.is_negative() {
        return Err(Error::NegativeDiscriminant(crate::rational::fmt_rational(&dl)));
    }
    if !v.r.is_zero() && vertical_wall(v)? == *probe {
        return Err(Error::ProbeOnVerticalWall(crate::rational::fmt_rational(probe)));
    }
    let h = s.h();
    let tv = twist_surface(v, probe, s);
    if tv.c.is_zero() {
        // rank zero and ch₁ = 0: Z is real on every subobject, no walls
        return Ok(Vec::new());
    }
    // Work with whichever of v, v[1] lies in the heart at the probe.
    let flip = tv.c.is_negative();
    let u = if flip { -v } else { v.clone() };
    let tu = twist_surface(&u, probe, s);
    let dbar = delta_bar(&u, s);

    let rank_floor = floor_i64(&u.r).max(0);
    let max_rank = match search.max_rank {
        Some(m) => m,
        None => {
            let rho_min = min_crossing_radius_sq(&u, s, probe);
            if rho_min.is_zero() {
                // β₀ passes through the limit point of the nested walls
                return Err(Error::DegenerateProbe(format!(
                    "every wall of {v} near beta = {} crosses it; pass a rank cap",
                    crate::rational::fmt_rational(probe)
                )));
            }
            let mut m = rank_floor;
            while higher_rank_radius_bound(&u, m + 1, s)? > rho_min {
                m += 1;
            }
            m.max(2)
        }
    };
    let grid = match search.denom_bound {
        Some(n) if n >= 1 => Ch2Grid::Denominator(n),
        Some(n) => {
            return Err(Error::HypothesisViolated(format!(
                "denominator bound must be positive, got {n}"
            )))
        }
        None => Ch2Grid::Lattice,
    };
    let ur = floor_i64(&u.r);
    let ranks: Vec<i64> = (ur - max_rank..=max_rank).collect();

    let found: Vec<(ChernSurface, Wall)> = ranks
        .par_iter()
        .flat_map_iter(|&rf| scan_rank(&u, &tu, rf, probe, &h, &dbar, grid, s))
        .collect();

    // One representative per wall: the piece that destabilizes inside it,
    // lexicographically smallest among ties.
    let mut by_wall: BTreeMap<(Rational, Rational), ChernSurface> = BTreeMap::new();
    for (f, wall) in found {
        let Wall::Circle { center, radius_sq } = &wall else {
            continue;
        };
        if !is_destabilizing_side(&u, &f, &wall, probe, s) {
            continue;
        }
        let key = (center.clone(), radius_sq.clone());
        by_wall
            .entry(key)
            .and_modify(|cur| {
                if f < *cur {
                    *cur = f.clone();
                }
            })
            .or_insert(f);
    }

    let mut out: Vec<WallCandidate> = by_wall
        .into_iter()
        .map(|((center, radius_sq), f)| {
            let g = &u - &f;
            let (destabilizer, quotient) = if flip { (-&f, -&g) } else { (f, g) };
            WallCandidate {
                wall: Wall::Circle { center, radius_sq },
                destabilizer,
                quotient,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        b.radius_sq()
            .cmp(a.radius_sq())
            .then_with(|| a.destabilizer.cmp(&b.destabilizer))
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
enum Ch2Grid {
    Lattice,
    Denominator(i64),
}

#[allow(clippy::too_many_arguments)]
fn scan_rank(
    u: &ChernSurface,
    tu: &ChernSurface,
    rf: i64,
    probe: &Rational,
    h: &Rational,
    dbar: &Rational,
    grid: Ch2Grid,
    s: &SurfaceData,
) -> Vec<(ChernSurface, Wall)> {
    let mut hits = Vec::new();
    let r = int(rf);
    let rg = &u.r - &r;
    if r.is_zero() && rg.is_zero() {
        return hits;
    }
    // 0 < c − β₀r < C^β₀  with c an integer
    let lo = probe * &r;
    let hi = &lo + &tu.c;
    let (c_lo, c_hi) = (floor_i64(&lo) + 1, ceil_i64(&hi) - 1);
    for c in c_lo..=c_hi {
        let cf = int(c);
        let cb = &cf - probe * &r;
        let cg = &tu.c - &cb;
        let from_f = twisted_d_range(&r, &cb, dbar, h);
        // d_G^β ranges mapped to d_F^β = D − d_G^β
        let from_g = twisted_d_range(&rg, &cg, dbar, h).map(|(a, b)| (&tu.d - b, &tu.d - a));
        let Some((dlo, dhi)) = intersect(from_f, from_g) else {
            continue;
        };
        // On the probe line ν(F) = ν(u) is linear in t:
        //   t·H²(R·c_F − r·C)/2 = D·c_F − d_F·C   (c's twisted, times H²)
        // so t > 0 cuts out a half-line of d_F^β beyond D·c_F/C.
        let slope_coef = &tu.r * &cb - &r * &tu.c;
        if slope_coef.is_zero() {
            continue;
        }
        let cut = &tu.d * &cb / &tu.c;
        let (dlo, dhi) = if slope_coef.is_positive() {
            (dlo, dhi.min(cut))
        } else {
            (dlo.max(cut), dhi)
        };
        if dlo > dhi {
            continue;
        }
        // untwist: d = d^β + β₀H²c − β₀²H²r/2
        let shift = probe * h * &cf - probe * probe * h * &r / int(2);
        let (d_lo, d_hi) = (&dlo + &shift, &dhi + &shift);
        let ds: Vec<Rational> = match grid {
            Ch2Grid::Lattice => {
                let base = h * &cf * &cf / int(2);
                (ceil_i64(&(&d_lo - &base))..=floor_i64(&(&d_hi - &base)))
                    .map(|m| &base + int(m))
                    .collect()
            }
            Ch2Grid::Denominator(n) => {
                let nq = int(n);
                (ceil_i64(&(&d_lo * &nq))..=floor_i64(&(&d_hi * &nq)))
                    .map(|k| Rational::new(k.into(), n.into()))
                    .collect()
            }
        };
        for d in ds {
            let f = ChernSurface::new(r.clone(), cf.clone(), d);
            let g = u - &f;
            if delta(&f, s).is_negative() || delta(&g, s).is_negative() {
                continue;
            }
            let wall = numerical_wall(u, &f, s);
            if matches!(wall, Wall::Circle { .. }) && wall.crosses(probe) {
                hits.push((f, wall));
            }
        }
    }
    hits
}

/// `F` has larger slope than `u` just inside the wall on the probe line.
fn is_destabilizing_side(
    u: &ChernSurface,
    f: &ChernSurface,
    wall: &Wall,
    probe: &Rational,
    s: &SurfaceData,
) -> bool {
    let height = wall.height_at(probe).expect("circle");
    let t = height / int(2);
    compare_tilt_slopes(f, u, &t, probe, s) == Ok(std::cmp::Ordering::Greater)
}

/// The wall `ν(O(−aH)) = ν(1, 0, −n)`, the largest wall for ideal sheaves of
/// `n > a²H²` points.
pub fn largest_wall_ideal_sheaf(n: i64, s: &SurfaceData) -> Result<WallCandidate> {
    let a = s.a;
    if n <= a * a * s.h_squared {
        return Err(Error::HypothesisViolated(format!(
            "need n > a^2 H^2 = {}, got n = {n}",
            a * a * s.h_squared
        )));
    }
    let v = ChernSurface::ideal_sheaf(n);
    let f = ChernSurface::line_bundle(-a, s);
    let wall = numerical_wall(&v, &f, s);
    let Wall::Circle { center, .. } = &wall else {
        return Err(Error::HypothesisViolated(format!(
            "wall for n = {n} is not a semicircle"
        )));
    };
    // With a > 1 the numerical walls of O(−kH), k < a, are larger but carry
    // no morphism into I_Z, so dominance is only a numerical claim for a = 1.
    if a == 1 {
        let probe = center.clone();
        let cands = enumerate_walls(&v, s, &probe, None)?;
        let top = cands.first();
        let dominant = top.is_some_and(|c| c.wall == wall)
            && cands[1..].iter().all(|c| c.radius_sq() < wall.radius_sq().unwrap());
        if !dominant {
            return Err(Error::DominanceFailed(format!(
                "enumeration at beta = {} found a wall at least as large",
                crate::rational::fmt_rational(&probe)
            )));
        }
    }
    let quotient = &v - &f;
    Ok(WallCandidate {
        wall,
        destabilizer: f,
        quotient,
    })
}
