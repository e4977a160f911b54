use std::collections::HashSet;

use g6census::binfield::{small_field, FieldElem};
use g6census::groupact::{gl3, pgl2, F2Mat};
use g6census::orbitree::binomial;
use g6census::polyform::{eval_form, Form, FormSpace};
use g6census::smoothcert::{form_space_table, product_closed_points, SweepTable};
use g6census::strata::trigonal::{
    cox_table, enumerate_t0, enumerate_t2, eval_cox, form_to_cox, t0_problem, t0_reducible, t0_space, t2_problem,
    t2_space,
};
use g6census::strata::Shard;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mass(fixing: impl Iterator<Item = usize>) -> Ratio<i64> {
    fixing.map(|n| Ratio::new(1, n as i64)).sum()
}

fn full_smooth_count(table: &SweepTable) -> u64 {
    let basis: Vec<u64> = (0..20).map(|i| 1u64 << i).collect();
    let mut n = 0;
    table.sweep(0, &basis, |_, _| n += 1);
    n
}

#[test]
fn maroni_zero_census() {
    let (classes, elems) = enumerate_t0(Shard::ALL).unwrap();
    assert_eq!(elems.len(), 36);
    let orbit_total: u64 = classes.iter().map(|c| 36 / c.fixing.len() as u64).sum();
    let table = form_space_table(&t0_space());
    let hidden = hidden_reducible_forms(&table);
    assert!(!hidden.is_empty());
    assert_eq!(orbit_total, full_smooth_count(&table) - hidden.len() as u64);
    assert_eq!(classes.len(), 7282);
    assert_eq!(mass(classes.iter().map(|c| c.fixing.len())), Ratio::from_integer(7166));
}

/// Products g·h over the splits whose components meet only in points of
/// degree >= 7, kept when the table sees no singular point.
fn hidden_reducible_forms(table: &SweepTable) -> HashSet<u64> {
    let sp = t0_space();
    let mut out = HashSet::new();
    for (a, b) in [(1u32, 3u32), (1, 4), (0, 3), (0, 4)] {
        let gs = FormSpace::new(&[(2, a), (2, b)]);
        let hs = FormSpace::new(&[(2, 3 - a), (2, 4 - b)]);
        for g in 1..1u64 << gs.dim() {
            for h in 1..1u64 << hs.dim() {
                let mut f = 0u64;
                for i in (0..gs.dim()).filter(|&i| (g >> i) & 1 == 1) {
                    for j in (0..hs.dim()).filter(|&j| (h >> j) & 1 == 1) {
                        let e: Vec<u8> = gs.monomials()[i].iter().zip(&hs.monomials()[j]).map(|(x, y)| x + y).collect();
                        f ^= 1 << sp.index_of(&e).unwrap();
                    }
                }
                if table.is_smooth(f) {
                    out.insert(f);
                }
            }
        }
    }
    for &f in &out {
        assert!(t0_reducible(f));
    }
    out
}

#[test]
fn maroni_two_census() {
    let (classes, elems) = enumerate_t2(Shard::ALL).unwrap();
    assert_eq!(elems.len(), 48);
    let orbit_total: u64 = classes.iter().map(|c| 48 / c.fixing.len() as u64).sum();
    assert_eq!(orbit_total, full_smooth_count(&cox_table()));
    assert_eq!(orbit_total, 6148 * 48);
    assert_eq!(classes.len(), 6181);
    assert_eq!(mass(classes.iter().map(|c| c.fixing.len())), Ratio::from_integer(6148));
}

#[test]
fn orbit_trees_satisfy_burnside() {
    t0_problem().unwrap().tree.check_counts(|k| binomial(9, k as u64)).unwrap();
    t2_problem().unwrap().tree.check_counts(|k| binomial(9, k as u64)).unwrap();
}

/// X_1 : (x0^2 + x1^2) y1 + x0 x1 y2 in P^1 x P^2.
fn x1_value(ctx: &g6census::binfield::FieldCtx, p: &[FieldElem]) -> FieldElem {
    let q = ctx.square(p[0] + p[1]);
    ctx.mul(q, p[3]) + ctx.mul(ctx.mul(p[0], p[1]), p[4])
}

#[test]
fn x1_has_nine_rational_points() {
    let ctx = small_field(1);
    let pts = product_closed_points(&[2, 3], 1);
    assert_eq!(pts.len(), 21);
    assert_eq!(pts.iter().filter(|p| x1_value(ctx, p) == FieldElem::ZERO).count(), 9);
}

/// Coordinates of M v for a matrix acting on a block of coordinates.
fn apply_block(m: &F2Mat, v: &[FieldElem]) -> Vec<FieldElem> {
    (0..m.n()).map(|i| (0..m.n()).filter(|&j| m.get(i, j)).fold(FieldElem::ZERO, |acc, j| acc + v[j])).collect()
}

/// Elements of PGL_2 x PGL_3 mapping X_1 to itself, found by comparing zero
/// sets over F_4 (H has bidegree (2,1), so this pins it down up to scalars).
#[test]
fn projective_stabilizer_of_x1_is_a_proper_subgroup() {
    let ctx = small_field(2);
    let pts: Vec<Vec<FieldElem>> =
        product_closed_points(&[2, 3], 1).into_iter().chain(product_closed_points(&[2, 3], 2)).collect();
    let mut stab = Vec::new();
    for a in pgl2() {
        for b in gl3() {
            let ok = pts.iter().all(|p| {
                let mut q = apply_block(a, &p[0..2]);
                q.extend(apply_block(b, &p[2..5]));
                (x1_value(ctx, p) == FieldElem::ZERO) == (x1_value(ctx, &q) == FieldElem::ZERO)
            });
            if ok {
                stab.push((*a, *b));
            }
        }
    }
    eprintln!("projective stabilizer of X_1: order {}", stab.len());
    // the surface has 48 automorphisms; only part of them is linear in P^2
    assert_eq!(48 % stab.len(), 0, "stabilizer order {}", stab.len());
    assert!(stab.len() < 48);
    assert!(stab.len() >= 8);
}

/// Jacobian criterion for the complete intersection X_1 ∩ {F = 0} in
/// P^1 x P^2 against the Cox sweep table.
#[test]
fn smoothness_agrees_with_jacobian_on_x1() {
    let sp = t2_space();
    let table = cox_table();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut seen = [0usize; 2];
    for _ in 0..300 {
        let f: u64 = rng.gen_range(1..1 << 20);
        let form = Form::new(sp.clone(), f);
        let mut smooth = true;
        'outer: for d in 1..=6u32 {
            let ctx = small_field(d);
            for p in product_closed_points(&[2, 3], d) {
                if x1_value(ctx, &p) != FieldElem::ZERO || eval_form(&form, ctx, &p).unwrap() != FieldElem::ZERO {
                    continue;
                }
                let gf: Vec<FieldElem> =
                    (0..5).map(|v| g6census::polyform::dot(f, &sp.partial_values(ctx, &p, v))).collect();
                let gh = [
                    ctx.mul(p[1], p[4]),
                    ctx.mul(p[0], p[4]),
                    FieldElem::ZERO,
                    ctx.square(p[0] + p[1]),
                    ctx.mul(p[0], p[1]),
                ];
                let proportional = (0..5).all(|i| (0..5).all(|j| ctx.mul(gf[i], gh[j]) == ctx.mul(gf[j], gh[i])));
                if proportional {
                    smooth = false;
                    break 'outer;
                }
            }
        }
        assert_eq!(table.is_smooth(form_to_cox(f)), smooth, "form {f:05x}");
        seen[smooth as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn cox_forms_vanish_where_forms_do() {
    let sp = t2_space();
    let ctx = small_field(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts = product_closed_points(&[2, 2], 3);
    for _ in 0..50 {
        let f: u64 = rng.gen_range(1..1 << 20);
        let form = Form::new(sp.clone(), f);
        for p in pts.iter().take(40) {
            let (x0, x1, s, t) = (p[0], p[1], p[2], p[3]);
            let y = [x0, x1, s, ctx.mul(t, ctx.mul(x0, x1)), ctx.mul(t, ctx.square(x0 + x1))];
            assert_eq!(eval_form(&form, ctx, &y).unwrap(), eval_cox(ctx, form_to_cox(f), p));
        }
    }
}
