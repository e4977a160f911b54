use g6census::binfield::small_field;
use g6census::strata::bielliptic::curve::{BaseCurve, Pt};
use g6census::strata::bielliptic::mass::{
    birch_moment, dn_series, integrated_inverse_series, mass_closed_form, mass_integral, trace_moment, Q,
};

#[test]
fn closed_form_matches_sweep() {
    for q in [3i64, 5, 7] {
        for g in 6..=11 {
            assert_eq!(mass_integral(g, q).unwrap(), mass_closed_form(g, q).unwrap(), "g={g} q={q}");
        }
    }
}

#[test]
fn trace_moments() {
    for q in [3i64, 5, 7] {
        for k in 0..=8 {
            let expected = birch_moment(q, k).unwrap();
            assert_eq!(trace_moment(q, k).unwrap(), Q::from_integer(expected), "q={q} k={k}");
        }
    }
}

#[test]
fn integrated_series_truncation() {
    for q in [3i64, 5, 7] {
        let s = integrated_inverse_series(q, 10).unwrap();
        let expected = [q as i128, 0, -1, 0, -1, 0, -1, 0, -1, 0];
        assert_eq!(s, expected.map(Q::from_integer).to_vec());
    }
}

#[test]
fn closed_form_denominator_divides() {
    for q in [3i64, 5, 7] {
        for g in 6..=11 {
            assert!(mass_closed_form(g, q).unwrap().is_integer());
        }
    }
}

/// d_2 on y^2 + y = x^3 by listing closed points of degree at most two.
#[test]
fn squarefree_divisors_of_degree_two() {
    let b = BaseCurve::new(2);
    let ctx1 = small_field(1);
    let n1 = b.e.points(ctx1).len() as i128;
    let deg2 = b.closed.iter().filter(|c| c.deg == 2).count() as i128;
    assert!(b.closed.iter().any(|c| c.rep == Pt::O));
    let d = dn_series(3 - n1 as i64, 2, 2);
    assert_eq!(d[2], n1 * (n1 - 1) / 2 + deg2);
    assert_eq!(d[1], n1);
}
