mod common;

use common::{fast_census, naive_census, naive_smooth};
use g6census::groupact::{pgl2, psi_action};
use g6census::polyform::BinPoly;
use g6census::strata::hyperelliptic::{is_smooth, w_space};
use num_rational::Ratio;

#[test]
fn genus_two_and_three_match_naive_orbits() {
    for (g, expected_mass) in [(2, 8), (3, 32)] {
        let naive = naive_census(g);
        let fast = fast_census(g);
        assert_eq!(naive.1, Ratio::from_integer(expected_mass));
        assert_eq!(naive, fast, "genus {g}");
    }
}

#[test]
fn smoothness_agrees_with_point_search() {
    for g in [2u32, 3] {
        for qv in 0..1u64 << (g + 2) {
            for pv in (0..1u64 << (2 * g + 3)).step_by(7) {
                let (q, p) = (BinPoly(qv), BinPoly(pv));
                assert_eq!(is_smooth(g, q, p), naive_smooth(g, q, p), "g={g} q={qv:x} p={pv:x}");
            }
        }
    }
}

#[test]
fn genus_six_smooth_models_by_cosets() {
    // every coset of W_q has 2^(g+1) members; orbit-stabilizer turns the model
    // count into the mass
    let g = 6;
    let mut smooth_cosets = 0u64;
    for qv in 1..1u64 << (g + 2) {
        let q = BinPoly(qv);
        let w = w_space(g, q);
        let free = w.free_positions(2 * g + 3);
        for bits in 0..1u64 << free.len() {
            let p = free.iter().enumerate().fold(0, |acc, (j, &pos)| acc | ((bits >> j) & 1) << pos);
            if is_smooth(g, q, BinPoly(p)) {
                smooth_cosets += 1;
            }
        }
    }
    let smooth_models = smooth_cosets << (g + 1);
    assert_eq!(smooth_models, 3_145_728);
    let group_order = 6u64 << (g + 2);
    assert_eq!(smooth_models % group_order, 0);
    assert_eq!(smooth_models / group_order, 2048);
}

#[test]
fn genus_six_census() {
    let (classes, mass, _) = fast_census(6);
    assert_eq!(classes, 4134);
    assert_eq!(mass, Ratio::from_integer(2048));
}

#[test]
fn psi_preserves_smoothness() {
    let g = 4;
    for qv in (1..1u64 << (g + 2)).step_by(5) {
        for pv in (0..1u64 << (2 * g + 3)).step_by(97) {
            let (q, p) = (BinPoly(qv), BinPoly(pv));
            for a in pgl2() {
                let (q2, p2) = (psi_action(a, g + 1, q), psi_action(a, 2 * g + 2, p));
                assert_eq!(is_smooth(g, q, p), is_smooth(g, q2, p2));
            }
        }
    }
}
