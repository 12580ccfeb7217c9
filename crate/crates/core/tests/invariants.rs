use scattering::analysis::{euler_series, gw_coefficients, slope_one_conjecture_series, Framing};
use scattering::permissible::{
    classify, classify_all, discrete_series, permissibility_oracle, witness_k_bound,
};
use scattering::series::{int, ratio};
use scattering::{Classification, ScatteringDiagram, UniSeries};

#[test]
fn log_coefficients_of_slope_one_walls() {
    let d = ScatteringDiagram::kronecker(2, 2, 12).unwrap();
    let c = gw_coefficients(&d.wall_function(1, 1).unwrap(), 1, 1).unwrap();
    assert_eq!((c.get(1), c.get(2)), (Some(&int(4)), Some(&int(1))));

    let d = ScatteringDiagram::kronecker(2, 3, 10).unwrap();
    let c = gw_coefficients(&d.wall_function(1, 1).unwrap(), 1, 1).unwrap();
    assert_eq!(c.get(1), Some(&int(6)));
    assert_eq!(c.get(2), Some(&ratio(9, 2)));
    assert_eq!(c.get(3), Some(&ratio(20, 3)));

    let d = ScatteringDiagram::kronecker(1, 1, 10).unwrap();
    let c = gw_coefficients(&d.wall_function(1, 1).unwrap(), 1, 1).unwrap();
    assert_eq!(c.max_k(), 5);
    for (k, v) in c.iter() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        assert_eq!(*v, ratio(sign, i64::from(k * k)));
    }
}

#[test]
fn framed_kronecker_euler_characteristics() {
    let d = ScatteringDiagram::kronecker(2, 2, 12).unwrap();
    let b = euler_series(&d, 1, 1, Framing::Back).unwrap();
    for k in 1..=5u32 {
        assert_eq!(b.chi(k), Some(&int(i64::from(k) + 1)));
    }
    let b12 = euler_series(&d, 1, 2, Framing::Back).unwrap();
    let f12 = euler_series(&d, 1, 2, Framing::Front).unwrap();
    assert_eq!(b12.series(), &UniSeries::from_ints(&[1, 1], 4));
    assert_eq!(f12.series(), &UniSeries::from_ints(&[1, 2, 1], 4));

    let d = ScatteringDiagram::kronecker(1, 1, 8).unwrap();
    for framing in [Framing::Back, Framing::Front] {
        let s = euler_series(&d, 1, 1, framing).unwrap();
        assert_eq!(s.series(), &UniSeries::from_ints(&[1, 1], 4));
    }
}

#[test]
fn extracted_euler_characteristics_are_integral_and_invert() {
    for m in 1..=3u32 {
        let d = ScatteringDiagram::kronecker(m, m, 12).unwrap();
        for w in d.walls() {
            let (a, b) = (w.direction().a(), w.direction().b());
            for framing in [Framing::Back, Framing::Front] {
                let s = euler_series(&d, a, b, framing).unwrap();
                assert!(s.all_integral(), "m={m} ({a},{b}) {framing:?}");
                assert_eq!(&s.wall_function().unwrap(), w.function());
            }
        }
    }
}

#[test]
fn slope_one_walls_match_the_closed_form() {
    for (l1, l2, n) in [
        (1, 1, 10),
        (2, 2, 12),
        (3, 3, 12),
        (2, 3, 12),
        (1, 3, 10),
        (2, 4, 12),
    ] {
        let d = ScatteringDiagram::kronecker(l1, l2, n).unwrap();
        let f = d.wall_function(1, 1).unwrap();
        assert_eq!(
            f,
            slope_one_conjecture_series(l1, l2, f.order()).unwrap(),
            "({l1},{l2})"
        );
    }
}

type Table = ((u32, u32), &'static [(i64, i64)]);

fn permissible_set(l1: u32, l2: u32, bound: u32) -> Vec<(i64, i64)> {
    let mut v: Vec<(i64, i64)> = classify_all(l1, l2, bound)
        .unwrap()
        .into_iter()
        .filter(|(_, c)| c.is_permissible())
        .map(|(d, _)| (d.a(), d.b()))
        .collect();
    v.sort();
    v
}

#[test]
fn finite_permissible_sets() {
    let cases: [Table; 5] = [
        ((1, 1), &[(1, 1)]),
        ((1, 2), &[(1, 1), (1, 2)]),
        ((2, 1), &[(1, 1), (2, 1)]),
        ((1, 3), &[(1, 1), (1, 2), (1, 3), (2, 3)]),
        ((3, 1), &[(1, 1), (2, 1), (3, 1), (3, 2)]),
    ];
    for ((l1, l2), expected) in cases {
        assert_eq!(
            permissible_set(l1, l2, 20),
            expected.to_vec(),
            "({l1},{l2})"
        );
    }
}

#[test]
fn two_two_permissible_set_is_the_staircase() {
    let mut expected = vec![(1, 1)];
    for k in 1..10 {
        expected.push((k, k + 1));
        expected.push((k + 1, k));
    }
    expected.sort();
    assert_eq!(permissible_set(2, 2, 20), expected);
}

#[test]
fn discrete_series_accumulate_at_the_cone() {
    let (a, b) = discrete_series(3, 3, 60).unwrap();
    let pairs =
        |v: Vec<scattering::Direction>| v.iter().map(|d| (d.a(), d.b())).collect::<Vec<_>>();
    assert_eq!(pairs(a), vec![(1, 3), (8, 3), (8, 21)]);
    assert_eq!(pairs(b), vec![(3, 1), (3, 8), (21, 8)]);
    let (a, b) = discrete_series(2, 3, 40).unwrap();
    assert_eq!(pairs(a), vec![(1, 3), (5, 3), (5, 12), (19, 12)]);
    assert_eq!(pairs(b), vec![(2, 1), (2, 5), (8, 5), (8, 19)]);
    for &(x, y) in &[
        (1, 3),
        (2, 5),
        (5, 12),
        (8, 19),
        (2, 1),
        (5, 3),
        (8, 5),
        (19, 12),
    ] {
        assert!(classify(2, 3, x, y).unwrap().is_discrete());
    }
    assert_eq!(classify(3, 3, 21, 8).unwrap(), Classification::DiscreteB);
    assert_eq!(classify(3, 3, 2, 3).unwrap(), Classification::ConeInterior);
}

#[test]
fn cone_boundary_only_for_rational_roots() {
    for (l1, l2) in [(2, 2), (3, 3), (2, 3), (1, 4), (4, 1), (1, 5), (2, 4)] {
        for (d, c) in classify_all(l1, l2, 20).unwrap() {
            if c == Classification::ConeBoundary {
                let expected = match (l1, l2) {
                    (2, 2) => (1, 1),
                    (1, 4) => (1, 2),
                    (4, 1) => (2, 1),
                    _ => panic!("boundary direction {d} for ({l1},{l2})"),
                };
                assert_eq!((d.a(), d.b()), expected);
            }
        }
    }
}

#[test]
fn oracle_agrees_with_classification() {
    for (l1, l2) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3), (1, 4)] {
        for (d, c) in classify_all(l1, l2, 20).unwrap() {
            let k = witness_k_bound(l1, l2, d.a(), d.b()).unwrap();
            let witness = match k {
                Some(k) => permissibility_oracle(l1, l2, d.a(), d.b(), k).unwrap(),
                None => None,
            };
            assert_eq!(witness.is_some(), c.is_permissible(), "({l1},{l2}) {d}");
            if let Some(w) = witness {
                assert!(w.genus_margin(d.a() as u64, d.b() as u64) >= 0);
                assert_eq!(w.pa.len(), l1 as usize);
                assert_eq!(w.pb.len(), l2 as usize);
            }
        }
    }
}

#[test]
fn nontrivial_walls_lie_in_permissible_directions() {
    for (l1, l2) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3), (1, 4)] {
        let n = 12;
        let d = ScatteringDiagram::kronecker(l1, l2, n).unwrap();
        for w in d.walls() {
            let c = classify(l1, l2, w.direction().a(), w.direction().b()).unwrap();
            assert!(c.is_permissible(), "({l1},{l2}) {}", w.direction());
        }
        if l1 == l2 {
            for (dir, c) in classify_all(l1, l2, n).unwrap() {
                if c.is_permissible() {
                    assert!(!d.wall_function(dir.a(), dir.b()).unwrap().is_one());
                }
            }
        }
    }
}

#[test]
fn discrete_walls_are_binomial_powers() {
    for (l1, l2) in [(2, 2), (2, 3), (3, 3), (1, 4)] {
        let n = 14;
        let d = ScatteringDiagram::kronecker(l1, l2, n).unwrap();
        let (a_star, b_star) = discrete_series(l1, l2, n).unwrap();
        for (dirs, l) in [(a_star, l1), (b_star, l2)] {
            for dir in dirs {
                let f = d.wall_function(dir.a(), dir.b()).unwrap();
                let expected = UniSeries::from_ints(&[1, 1], f.order())
                    .pow_i64(i64::from(l))
                    .unwrap();
                assert_eq!(f, expected, "({l1},{l2}) {dir}");
            }
        }
    }
}
