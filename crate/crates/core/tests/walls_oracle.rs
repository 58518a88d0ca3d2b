mod common;

use std::collections::BTreeSet;

use common::{oracle_heights, Grid};
use num_traits::Signed;
use stabwall_core::lattice::{delta_bar, ChernSurface, SurfaceData};
use stabwall_core::rational::{int, q, Rational};
use stabwall_core::tilt::{compare_tilt_slopes, Wall};
use stabwall_core::walls::{
    enumerate_walls, enumerate_walls_with, largest_wall_ideal_sheaf, WallCandidate, WallSearch,
};

fn ch(r: i64, c: i64, d: Rational) -> ChernSurface {
    ChernSurface::new(int(r), int(c), d)
}

fn heights(cands: &[WallCandidate], probe: &Rational) -> BTreeSet<Rational> {
    cands
        .iter()
        .map(|c| c.wall.height_at(probe).expect("circle"))
        .collect()
}

fn cases() -> Vec<(ChernSurface, SurfaceData, Vec<Rational>)> {
    let p2 = SurfaceData::p2();
    let k3 = SurfaceData::k3_deg4();
    let mut out = Vec::new();
    for n in 2..=6 {
        // β = −2 is the accumulation point of the walls of (1, 0, −2)
        let probes = [int(-1), int(-2), q(-5, 2), int(-3)]
            .into_iter()
            .filter(|b| n != 2 || *b != int(-2))
            .collect();
        out.push((ch(1, 0, int(-n)), p2.clone(), probes));
    }
    out.push((ch(2, 1, int(-1)), p2.clone(), vec![int(-1), q(-3, 2), int(-2)]));
    out.push((ch(0, 2, int(-1)), p2.clone(), vec![int(-2), q(-1, 4), int(1)]));
    out.push((ch(1, 0, int(-5)), k3.clone(), vec![int(-1), q(-3, 2)]));
    out.push((ch(2, 1, int(-1)), k3, vec![int(-1), q(1, 3)]));
    out
}

#[test]
fn lattice_enumeration_matches_oracle() {
    for (v, s, probes) in cases() {
        for probe in probes {
            let got = enumerate_walls(&v, &s, &probe, None).unwrap();
            let want = oracle_heights(&v, &s, &probe, 10, 120, Grid::Lattice);
            assert_eq!(heights(&got, &probe), want, "{v} at beta = {probe}");
        }
    }
}

#[test]
fn half_integer_grid_matches_oracle() {
    let search = WallSearch {
        max_rank: None,
        denom_bound: Some(2),
    };
    for (v, s, probes) in cases().into_iter().filter(|c| c.1.h_squared == 1) {
        for probe in probes {
            let got = enumerate_walls_with(&v, &s, &probe, &search).unwrap();
            let want = oracle_heights(&v, &s, &probe, 10, 80, Grid::Denominator(2));
            assert_eq!(heights(&got, &probe), want, "{v} at beta = {probe}");
        }
    }
}

#[test]
fn hilb4_ladder_inside_all_three_walls() {
    let p2 = SurfaceData::p2();
    let v = ch(1, 0, int(-4));
    let got = enumerate_walls(&v, &p2, &int(-3), None).unwrap();
    let top: Vec<_> = got
        .iter()
        .take(3)
        .map(|c| (c.wall.clone(), c.destabilizer.clone()))
        .collect();
    assert_eq!(
        top,
        vec![
            (Wall::circle(q(-9, 2), q(49, 4)), ch(1, -1, q(1, 2))),
            (Wall::circle(q(-7, 2), q(17, 4)), ch(1, -1, q(-1, 2))),
            (Wall::circle(int(-3), int(1)), ch(1, -2, int(2))),
        ]
    );
}

#[test]
fn candidates_satisfy_module_invariants() {
    for (v, s, probes) in cases() {
        for probe in probes {
            for c in enumerate_walls(&v, &s, &probe, None).unwrap() {
                assert_eq!(&c.destabilizer + &c.quotient, v);
                assert!(c.radius_sq().is_positive());
                assert!(c.wall.crosses(&probe));
                let (df, dg) = (delta_bar(&c.destabilizer, &s), delta_bar(&c.quotient, &s));
                assert!(!df.is_negative() && !dg.is_negative());
                assert!(df + dg <= delta_bar(&v, &s), "cone additivity for {v}");
                // slopes agree at the top point of the wall
                let (center, rho2) = (c.wall.center().unwrap(), c.wall.radius_sq().unwrap());
                assert_eq!(
                    compare_tilt_slopes(&c.destabilizer, &v, rho2, center, &s),
                    Ok(std::cmp::Ordering::Equal)
                );
            }
        }
    }
}

#[test]
fn higher_rank_walls_respect_radius_bound() {
    let p2 = SurfaceData::p2();
    let v = ch(1, 0, int(-4));
    for c in enumerate_walls(&v, &p2, &int(-3), None).unwrap() {
        let r = c.destabilizer.r.clone().max(c.quotient.r.clone());
        if r >= int(2) {
            assert!(c.radius_sq() <= &int(1), "{:?}", c);
        }
    }
}

#[test]
fn largest_wall_dominates_enumeration() {
    let p2 = SurfaceData::p2();
    for n in 2..=12 {
        let largest = largest_wall_ideal_sheaf(n, &p2).unwrap();
        let probe = largest.wall.center().unwrap().clone();
        let cands = enumerate_walls(&ChernSurface::ideal_sheaf(n), &p2, &probe, None).unwrap();
        assert_eq!(cands[0].wall, largest.wall, "n = {n}");
        assert!(cands[1..].iter().all(|c| c.radius_sq() < largest.radius_sq()));
    }
}

#[test]
fn accumulation_point_needs_rank_cap() {
    let p2 = SurfaceData::p2();
    for (v, probe) in [(ch(1, 0, int(-2)), int(-2)), (ch(0, 2, int(-1)), q(-1, 2))] {
        assert!(matches!(
            enumerate_walls(&v, &p2, &probe, None),
            Err(stabwall_core::Error::DegenerateProbe(_))
        ));
        assert!(enumerate_walls(&v, &p2, &probe, Some(3)).is_ok());
    }
}

#[test]
fn output_is_deterministic() {
    let p2 = SurfaceData::p2();
    let v = ch(1, 0, int(-6));
    let first = enumerate_walls(&v, &p2, &int(-3), None).unwrap();
    for _ in 0..5 {
        assert_eq!(enumerate_walls(&v, &p2, &int(-3), None).unwrap(), first);
    }
}
