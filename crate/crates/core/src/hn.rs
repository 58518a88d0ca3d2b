//! Harder–Narasimhan filtrations as extremal vertices of the charge polygon.
//!
//! Given the finite set of subobject classes of `E` and a linear charge `Z`,
//! the HN filtration is read off the left boundary of the convex hull of
//! `{Z(F)}` between `0` and `Z(E)`. Slopes are `−Re Z / Im Z`, with
//! `Im Z = 0` read as `+∞`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

/// `Z(x) = (realPart·x, imagPart·x)` on `ℤ^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChargeSpec {
    pub dimension: usize,
    #[serde(with = "rational::serde_str_vec")]
    pub real_part: Vec<Rational>,
    #[serde(with = "rational::serde_str_vec")]
    pub imag_part: Vec<Rational>,
}

impl ChargeSpec {
    pub fn new(real_part: Vec<Rational>, imag_part: Vec<Rational>) -> Result<Self> {
        let spec = ChargeSpec {
            dimension: real_part.len(),
            real_part,
            imag_part,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `Z(r, d) = −d + i·r`, the classical slope charge on curves.
    pub fn curve() -> Self {
        ChargeSpec::new(vec![int(0), int(-1)], vec![int(1), int(0)]).expect("valid")
    }

    fn validate(&self) -> Result<()> {
        if self.dimension == 0
            || self.real_part.len() != self.dimension
            || self.imag_part.len() != self.dimension
        {
            return Err(Error::InvalidModel(format!(
                "charge of dimension {} has {} real and {} imaginary coefficients",
                self.dimension,
                self.real_part.len(),
                self.imag_part.len()
            )));
        }
        Ok(())
    }

    pub fn eval(&self, x: &[i64]) -> (Rational, Rational) {
        let dot = |coef: &[Rational]| {
            coef.iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (a, &b)| acc + a * int(b))
        };
        (dot(&self.real_part), dot(&self.imag_part))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubobjectModel {
    pub target: Vec<i64>,
    pub sub_classes: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnFactor {
    pub class: Vec<i64>,
    /// Slope as the projective pair `(−Re Z, Im Z)`.
    #[serde(with = "rational::serde_str")]
    pub slope_numerator: Rational,
    #[serde(with = "rational::serde_str")]
    pub slope_denominator: Rational,
}

impl HnFactor {
    pub fn slope(&self) -> Option<Rational> {
        (!self.slope_denominator.is_zero())
            .then(|| &self.slope_numerator / &self.slope_denominator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnResult {
    pub vertices: Vec<Vec<i64>>,
    pub factors: Vec<HnFactor>,
    /// `|Z|²` of each factor, in factor order.
    #[serde(with = "rational::serde_str_vec")]
    pub mass: Vec<Rational>,
}

/// `a/b > c/d` on projective slopes with nonnegative denominators.
fn slope_gt(a: &(Rational, Rational), b: &(Rational, Rational)) -> bool {
    match (a.1.is_zero(), b.1.is_zero()) {
        (true, true) => false,
        (true, false) => true,
        (false, true) => false,
        (false, false) => &a.0 * &b.1 > &b.0 * &a.1,
    }
}

fn cross(o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

pub fn hn_polygon(model: &SubobjectModel, z: &ChargeSpec) -> Result<HnResult> {
    z.validate()?;
    let k = z.dimension;
    if model.target.is_empty() && model.sub_classes.is_empty() {
        return Err(Error::EmptyModel);
    }
    if model.target.len() != k {
        return Err(Error::InvalidModel(format!(
            "target has dimension {}, charge has {k}",
            model.target.len()
        )));
    }
    let zero = vec![0i64; k];
    let zt = z.eval(&model.target);
    if zt.0.is_zero() && zt.1.is_zero() {
        return Err(Error::ZeroCharge);
    }
    if zt.1.is_negative() || (zt.1.is_zero() && !zt.0.is_negative()) {
        return Err(Error::InvalidModel(
            "Z(target) must lie in the upper half-plane or on the negative real axis".into(),
        ));
    }

    // Charge point -> lexicographically smallest class realizing it.
    let mut points: BTreeMap<(Rational, Rational), Vec<i64>> = BTreeMap::new();
    let all = model
        .sub_classes
        .iter()
        .chain([&zero, &model.target]);
    for x in all {
        if x.len() != k {
            return Err(Error::InvalidModel(format!(
                "subobject class {x:?} has wrong dimension"
            )));
        }
        let zx = z.eval(x);
        if zx.1.is_negative() || zx.1 > zt.1 {
            return Err(Error::InvalidModel(format!(
                "Im Z({x:?}) outside [0, Im Z(target)]"
            )));
        }
        // bottom row: Z(F) must not be a positive real; top row: Z(E/F) must not be
        if (zx.1.is_zero() && zx.0.is_positive()) || (zx.1 == zt.1 && zx.0 < zt.0) {
            return Err(Error::InvalidModel(format!(
                "class {x:?} gives a subobject or quotient with positive real charge"
            )));
        }
        points
            .entry(zx)
            .and_modify(|cur| {
                if x < cur {
                    *cur = x.clone();
                }
            })
            .or_insert_with(|| x.clone());
    }
    if !model.sub_classes.contains(&zero) || !model.sub_classes.contains(&model.target) {
        return Err(Error::InvalidModel(
            "sub_classes must contain 0 and the target".into(),
        ));
    }

    let origin = (Rational::zero(), Rational::zero());
    // Leftmost point of the bottom row gives the +∞ factor, if any.
    let bottom_left = points
        .keys()
        .filter(|p| p.1.is_zero())
        .min_by(|a, b| a.0.cmp(&b.0))
        .cloned()
        .expect("origin is present");
    let mut upper: Vec<(Rational, Rational)> = points
        .keys()
        .filter(|p| p.1.is_positive() && (p.1 < zt.1 || p.0 == zt.0))
        .cloned()
        .collect();
    upper.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));

    let mut chain = vec![origin.clone()];
    if bottom_left != origin {
        chain.push(bottom_left);
    }
    let pinned = chain.len();
    for p in upper {
        while chain.len() > pinned
            && cross(&chain[chain.len() - 2], &chain[chain.len() - 1], &p) >= Rational::zero()
        {
            chain.pop();
        }
        chain.push(p);
    }
    debug_assert_eq!(chain.last(), Some(&zt));

    let vertices: Vec<Vec<i64>> = chain.iter().map(|p| points[p].clone()).collect();
    let mut factors = Vec::with_capacity(vertices.len() - 1);
    let mut mass = Vec::with_capacity(vertices.len() - 1);
    for w in chain.windows(2) {
        let (re, im) = (&w[1].0 - &w[0].0, &w[1].1 - &w[0].1);
        let from = &points[&w[0]];
        let to = &points[&w[1]];
        let class: Vec<i64> = to.iter().zip(from).map(|(a, b)| a - b).collect();
        mass.push(&re * &re + &im * &im);
        factors.push(HnFactor {
            class,
            slope_numerator: -re,
            slope_denominator: im,
        });
    }
    debug_assert!(factors.windows(2).all(|f| slope_gt(
        &(f[0].slope_numerator.clone(), f[0].slope_denominator.clone()),
        &(f[1].slope_numerator.clone(), f[1].slope_denominator.clone())
    )));
    Ok(HnResult {
        vertices,
        factors,
        mass,
    })
}

/// A subobject model together with its charge, as accepted from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HnInput {
    pub model: SubobjectModel,
    pub charge: ChargeSpec,
}

impl HnInput {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let input: HnInput =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("HN model: {e}")))?;
        input.charge.validate()?;
        Ok(input)
    }

    pub fn solve(&self) -> Result<HnResult> {
        hn_polygon(&self.model, &self.charge)
    }
}

/// Grothendieck splitting on P¹: group `O(a₁) ⊕ … ⊕ O(aₙ)` into
/// `(degree, multiplicity)` pairs with strictly decreasing degree.
pub fn hn_p1(degrees: &[i64]) -> Result<Vec<(i64, u64)>> {
    if degrees.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut counts: BTreeMap<std::cmp::Reverse<i64>, u64> = BTreeMap::new();
    for &a in degrees {
        *counts.entry(std::cmp::Reverse(a)).or_default() += 1;
    }
    Ok(counts.into_iter().map(|(a, m)| (a.0, m)).collect())
}

/// Maximal subsheaf degree for each rank of `⊕ O(aᵢ)`, in `(rank, degree)`
/// coordinates. Lower degrees of the same rank only move `Z` to the right and
/// never contribute hull vertices.
pub fn subobject_classes_p1(degrees: &[i64]) -> Result<SubobjectModel> {
    if degrees.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut subs = vec![vec![0, 0]];
    let mut acc = 0i64;
    for (i, a) in sorted.iter().enumerate() {
        acc += a;
        subs.push(vec![i as i64 + 1, acc]);
    }
    let target = subs.last().cloned().expect("nonempty");
    Ok(SubobjectModel {
        target,
        sub_classes: subs,
    })
}

/// Total order on slopes used by tests and the CLI.
pub fn compare_slopes(a: &HnFactor, b: &HnFactor) -> Ordering {
    let pa = (a.slope_numerator.clone(), a.slope_denominator.clone());
    let pb = (b.slope_numerator.clone(), b.slope_denominator.clone());
    if slope_gt(&pa, &pb) {
        Ordering::Greater
    } else if slope_gt(&pb, &pa) {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(target: &[i64], subs: &[&[i64]]) -> SubobjectModel {
        SubobjectModel {
            target: target.to_vec(),
            sub_classes: subs.iter().map(|s| s.to_vec()).collect(),
        }
    }

    fn classes(r: &HnResult) -> Vec<Vec<i64>> {
        r.factors.iter().map(|f| f.class.clone()).collect()
    }

    #[test]
    fn three_factor_polygon() {
        let m = model(&[3, 1], &[&[0, 0], &[1, 2], &[2, 2], &[3, 1]]);
        let r = hn_polygon(&m, &ChargeSpec::curve()).unwrap();
        assert_eq!(classes(&r), vec![vec![1, 2], vec![1, 0], vec![1, -1]]);
        let slopes: Vec<_> = r.factors.iter().map(|f| f.slope().unwrap()).collect();
        assert_eq!(slopes, vec![int(2), int(0), int(-1)]);
        assert_eq!(r.vertices.first(), Some(&vec![0, 0]));
        assert_eq!(r.vertices.last(), Some(&vec![3, 1]));
    }

    #[test]
    fn two_factor_polygon() {
        let m = model(&[2, 0], &[&[0, 0], &[1, 1], &[2, 0]]);
        let r = hn_polygon(&m, &ChargeSpec::curve()).unwrap();
        assert_eq!(classes(&r), vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn semistable_when_subobjects_lie_right() {
        let m = model(&[2, 1], &[&[0, 0], &[1, 0], &[1, -3], &[2, 1]]);
        let r = hn_polygon(&m, &ChargeSpec::curve()).unwrap();
        assert_eq!(classes(&r), vec![vec![2, 1]]);
    }

    #[test]
    fn collinear_vertices_merge() {
        // O(1)⊕O(1)⊕O(0): the point (2,2) is on the segment 0→(2,2) extended
        let m = subobject_classes_p1(&[1, 1, 0]).unwrap();
        let r = hn_polygon(&m, &ChargeSpec::curve()).unwrap();
        assert_eq!(classes(&r), vec![vec![2, 2], vec![1, 0]]);
    }

    #[test]
    fn infinite_slope_factor_first() {
        // Z(r, d) = −d + i r with a torsion subobject of degree 2
        let m = model(&[1, 3], &[&[0, 0], &[0, 2], &[1, 3]]);
        let r = hn_polygon(&m, &ChargeSpec::curve()).unwrap();
        assert_eq!(classes(&r), vec![vec![0, 2], vec![1, 1]]);
        assert!(r.factors[0].slope().is_none());
        assert_eq!(r.mass, vec![int(4), int(2)]);
    }

    #[test]
    fn model_errors() {
        let z = ChargeSpec::curve();
        assert_eq!(
            hn_polygon(&model(&[], &[]), &z),
            Err(Error::EmptyModel)
        );
        assert_eq!(
            hn_polygon(&model(&[0, 0], &[&[0, 0]]), &z),
            Err(Error::ZeroCharge)
        );
        assert!(matches!(
            hn_polygon(&model(&[1, 0], &[&[0, 0], &[2, 0], &[1, 0]]), &z),
            Err(Error::InvalidModel(_))
        ));
        assert!(matches!(
            hn_polygon(&model(&[1, 0], &[&[1, 0]]), &z),
            Err(Error::InvalidModel(_))
        ));
    }

    #[test]
    fn json_input_round_trip() {
        let text = r#"{"model":{"target":[3,1],"sub_classes":[[0,0],[1,2],[2,2],[3,1]]},
            "charge":{"dimension":2,"real_part":["0","-1"],"imag_part":[1,0]}}"#;
        let input = HnInput::from_json_str(text).unwrap();
        assert_eq!(input.charge, ChargeSpec::curve());
        assert_eq!(input.solve().unwrap().factors.len(), 3);
        let back = serde_json::to_string(&input).unwrap();
        assert_eq!(HnInput::from_json_str(&back).unwrap(), input);
        assert!(HnInput::from_json_str("{}").is_err());
        let bad_dim = r#"{"model":{"target":[1],"sub_classes":[[0],[1]]},
            "charge":{"dimension":2,"real_part":["0"],"imag_part":["1"]}}"#;
        assert!(matches!(
            HnInput::from_json_str(bad_dim),
            Err(Error::InvalidModel(_))
        ));
    }

    #[test]
    fn p1_grouping() {
        assert_eq!(hn_p1(&[2, 0, -1]).unwrap(), vec![(2, 1), (0, 1), (-1, 1)]);
        assert_eq!(hn_p1(&[3, 3]).unwrap(), vec![(3, 2)]);
        assert_eq!(hn_p1(&[0, 0, 5, 5, 5]).unwrap(), vec![(5, 3), (0, 2)]);
        assert_eq!(hn_p1(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn p1_subobject_models() {
        let m = subobject_classes_p1(&[2, 0, -1]).unwrap();
        for c in [[1, 2], [2, 2], [3, 1]] {
            assert!(m.sub_classes.contains(&c.to_vec()));
        }
        assert_eq!(
            subobject_classes_p1(&[7]).unwrap().sub_classes,
            vec![vec![0, 0], vec![1, 7]]
        );
        assert_eq!(
            subobject_classes_p1(&[1, 1]).unwrap().sub_classes,
            vec![vec![0, 0], vec![1, 1], vec![2, 2]]
        );
        assert_eq!(subobject_classes_p1(&[]), Err(Error::EmptyInput));
    }
}
