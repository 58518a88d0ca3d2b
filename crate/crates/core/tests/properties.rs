mod common;

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use stabwall_core::hilbert::donaldson_image;
use stabwall_core::hn::{hn_p1, hn_polygon, subobject_classes_p1, ChargeSpec, HnResult};
use stabwall_core::lattice::{
    delta, delta_bar, euler_surface, twist_surface, ChernSurface, SurfaceData,
};
use stabwall_core::p3::{
    beta_bar, product_p3, twist_p3, twist_p3_quadratic, ChernP3,
};
use stabwall_core::rational::{int, Rational};
use stabwall_core::tilt::{central_charge, compare_tilt_slopes, numerical_wall, wall_relation, Wall, WallRelation};

fn surface() -> impl Strategy<Value = SurfaceData> {
    prop_oneof![Just(SurfaceData::p2()), Just(SurfaceData::k3_deg4())]
}

fn rational(range: std::ops::RangeInclusive<i64>, den: i64) -> impl Strategy<Value = Rational> {
    (range, 1..=den).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn class() -> impl Strategy<Value = ChernSurface> {
    (-3i64..=3, -5i64..=5, -20i64..=20)
        .prop_map(|(r, c, d2)| ChernSurface::new(int(r), int(c), Rational::new(d2.into(), 2.into())))
}

fn class_p3() -> impl Strategy<Value = ChernP3> {
    (-3i64..=3, -5i64..=5, -20i64..=20, -30i64..=30).prop_map(|(a, b, c, d)| {
        ChernP3::new(
            int(a),
            int(b),
            Rational::new(c.into(), 2.into()),
            Rational::new(d.into(), 6.into()),
        )
    })
}

fn factor_charges(r: &HnResult, z: &ChargeSpec) -> Vec<(Rational, Rational)> {
    r.factors.iter().map(|f| z.eval(&f.class)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn wall_identity(v in class(), w in class(), s in surface()) {
        prop_assume!(!delta_bar(&v, &s).is_negative());
        if let Wall::Circle { center, radius_sq } = numerical_wall(&v, &w, &s) {
            let h = int(s.h_squared);
            let hr = &h * &v.r;
            let lhs = &hr * &hr * radius_sq + delta_bar(&v, &s);
            let rhs = &hr * center - &h * &v.c;
            prop_assert_eq!(lhs, &rhs * &rhs);
        }
    }

    #[test]
    fn walls_never_intersect(v in class(), w1 in class(), w2 in class(), s in surface()) {
        prop_assume!(!delta_bar(&v, &s).is_negative());
        let a = numerical_wall(&v, &w1, &s);
        let b = numerical_wall(&v, &w2, &s);
        prop_assert_ne!(wall_relation(&a, &b), WallRelation::Intersecting);
    }

    #[test]
    fn top_point_on_re_z_hyperbola(v in class(), w in class(), s in surface()) {
        prop_assume!(!v.r.is_zero() && !delta_bar(&v, &s).is_negative());
        if let Wall::Circle { center, radius_sq } = numerical_wall(&v, &w, &s) {
            let (re, _) = central_charge(&v, &radius_sq, &center, &s);
            prop_assert!(re.is_zero());
        }
    }

    #[test]
    fn slopes_agree_on_wall(v in class(), w in class(), s in surface(), x in rational(-9..=9, 10)) {
        // Z vanishes somewhere in t > 0 only for negative discriminant
        prop_assume!(!delta_bar(&v, &s).is_negative() && !delta_bar(&w, &s).is_negative());
        if let Wall::Circle { center, radius_sq } = numerical_wall(&v, &w, &s) {
            let t = &radius_sq - &x * &x;
            prop_assume!(t.is_positive());
            let beta = &center + &x;
            prop_assert_eq!(compare_tilt_slopes(&v, &w, &t, &beta, &s), Ok(Ordering::Equal));
        }
    }

    #[test]
    fn twist_group_law(v in class(), a in rational(-6..=6, 3), b in rational(-6..=6, 3), s in surface()) {
        let two = twist_surface(&twist_surface(&v, &a, &s), &b, &s);
        prop_assert_eq!(two, twist_surface(&v, &(&a + &b), &s));
        prop_assert_eq!(delta(&twist_surface(&v, &a, &s), &s), delta(&v, &s));
    }

    #[test]
    fn euler_and_donaldson_are_additive(v in class(), w in class(), s in surface()) {
        let sum = &v + &w;
        prop_assert_eq!(euler_surface(&sum, &s), euler_surface(&v, &s) + euler_surface(&w, &s));
        prop_assert_eq!(
            donaldson_image(&sum, &s),
            &donaldson_image(&v, &s) + &donaldson_image(&w, &s)
        );
    }

    #[test]
    fn hn_polygon_matches_p1_splitting(ds in prop::collection::vec(-10i64..=10, 1..=8)) {
        let z = ChargeSpec::curve();
        let res = hn_polygon(&subobject_classes_p1(&ds).unwrap(), &z).unwrap();
        let want: Vec<Vec<i64>> = hn_p1(&ds)
            .unwrap()
            .into_iter()
            .map(|(a, m)| vec![m as i64, m as i64 * a])
            .collect();
        let got: Vec<Vec<i64>> = res.factors.iter().map(|f| f.class.clone()).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn hn_invariants(
        subs in prop::collection::vec((0i64..=4, -6i64..=6), 0..10),
        target in (1i64..=4, -6i64..=6),
        rot in 0usize..16,
    ) {
        let z = ChargeSpec::curve();
        let target = vec![target.0, target.1];
        let mut classes: Vec<Vec<i64>> = subs
            .into_iter()
            .filter(|(r, _)| *r <= target[0])
            .map(|(r, d)| vec![r, d])
            // Z(F) and Z(E/F) must avoid the positive real axis
            .filter(|x| (x[0] > 0 || x[1] > 0 || x[1] == 0 && x[0] == 0)
                && (x[0] < target[0] || x[1] < target[1] || x == &target))
            .collect();
        classes.push(vec![0, 0]);
        classes.push(target.clone());
        let model = stabwall_core::hn::SubobjectModel { target: target.clone(), sub_classes: classes.clone() };
        let res = hn_polygon(&model, &z).unwrap();

        // vertices telescope to the factors and sum to the target
        let mut acc = vec![0, 0];
        for (f, v) in res.factors.iter().zip(res.vertices.iter().skip(1)) {
            acc = vec![acc[0] + f.class[0], acc[1] + f.class[1]];
            prop_assert_eq!(&acc, v);
        }
        prop_assert_eq!(&acc, &target);

        // strictly decreasing slopes
        for w in res.factors.windows(2) {
            prop_assert_eq!(stabwall_core::hn::compare_slopes(&w[0], &w[1]), Ordering::Greater);
        }

        // |Z(F₁)| + |Z(rest)| > |Z(E)| whenever there are two or more factors
        let zs = factor_charges(&res, &z);
        if zs.len() >= 2 {
            let z1 = &zs[0];
            let rest = zs[1..].iter().fold((int(0), int(0)), |a, b| (a.0 + &b.0, a.1 + &b.1));
            let cross = &z1.0 * &rest.1 - &z1.1 * &rest.0;
            prop_assert!(!cross.is_zero());
        } else {
            prop_assert_eq!(&res.mass[0], &{
                let zt = z.eval(&target);
                &zt.0 * &zt.0 + &zt.1 * &zt.1
            });
        }

        // reordering the input never changes the result
        let mut permuted = classes;
        permuted.reverse();
        let n = permuted.len();
        permuted.rotate_left(rot % n);
        let model2 = stabwall_core::hn::SubobjectModel { target, sub_classes: permuted };
        prop_assert_eq!(hn_polygon(&model2, &z).unwrap(), res);
    }

    #[test]
    fn p3_twist_is_multiplication(v in class_p3(), b in rational(-6..=6, 3)) {
        let e = twist_p3(&ChernP3::unit(), &b);
        prop_assert_eq!(twist_p3(&v, &b), product_p3(&v, &e));
        let back = twist_p3(&twist_p3(&v, &b), &(-&b));
        prop_assert_eq!(back, v);
    }

    #[test]
    fn beta_bar_kills_ch2(v in class_p3()) {
        if let Ok(bb) = beta_bar(&v) {
            let tw = twist_p3_quadratic(&v, &bb);
            prop_assert!(tw[2].is_zero(), "{} at {}", v, bb);
        }
    }
}

#[test]
fn p3_chi_matches_binomials() {
    for k in 0..=5 {
        let chi = stabwall_core::p3::chi_p3(&ChernP3::line_bundle(k));
        assert_eq!(chi, int(common::binomial(k + 3, 3)));
    }
}

#[test]
fn q_form_saturated_by_line_bundles() {
    for k in -5..=5 {
        let v = ChernP3::line_bundle(k);
        let (dt, c0) = common::q_polynomials(v.components().map(|x| x.clone()));
        assert!(dt.is_zero() && c0.is_zero(), "k = {k}");
    }
}

#[test]
fn q_form_matches_symbolic_expansion() {
    let v = ChernP3::new(int(2), int(-1), Rational::new((-7).into(), 2.into()), int(3));
    let (dt, c0) = common::q_polynomials(v.components().map(|x| x.clone()));
    for ti in 0..4 {
        for bi in -4..=4 {
            let t = int(ti);
            let b = Rational::new(bi.into(), 3.into());
            let expect = &t * dt.eval(&b) + c0.eval(&b);
            assert_eq!(stabwall_core::p3::q_form(&v, &t, &b), expect);
        }
    }
}
