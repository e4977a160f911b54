//! Naive hyperelliptic census shared by integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use g6census::binfield::{small_field, FieldElem};
use g6census::groupact::pgl2;
use g6census::polyform::BinPoly;
use g6census::strata::hyperelliptic::{enumerate_classes, point_counts, HypElem};
use g6census::strata::Shard;
use num_rational::Ratio;

/// Singular points of y^2 + q y = p by evaluating F, F_x, F_y over F_{2^k},
/// k <= g+1, in both charts.
pub fn naive_smooth(g: u32, q: BinPoly, p: BinPoly) -> bool {
    if q.is_zero() {
        return false;
    }
    let rev = |f: BinPoly, n: u32| BinPoly((0..=n).filter(|&i| f.coeff(i)).map(|i| 1u64 << (n - i)).sum());
    let charts = [(q, p), (rev(q, g + 1), rev(p, 2 * g + 2))];
    for (ci, (q, p)) in charts.into_iter().enumerate() {
        let (dq, dp) = (q.derivative(), p.derivative());
        for k in 1..=g + 1 {
            let ctx = small_field(k);
            for x in ctx.elements() {
                if ci == 1 && x != FieldElem::ZERO {
                    continue;
                }
                let (qx, px) = (q.eval(ctx, x), p.eval(ctx, x));
                for y in ctx.elements() {
                    let f = ctx.square(y) + ctx.mul(qx, y) + px;
                    let fx = ctx.mul(dq.eval(ctx, x), y) + dp.eval(ctx, x);
                    if f == FieldElem::ZERO && qx == FieldElem::ZERO && fx == FieldElem::ZERO {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub type Profile = BTreeMap<(u64, Vec<i64>), u64>;

/// Classes by union-find over the full group; returns (classes, mass, profile).
pub fn naive_census(g: u32) -> (u64, Ratio<i64>, Profile) {
    let qbits = g + 2;
    let pbits = 2 * g + 3;
    let idx = |q: BinPoly, p: BinPoly| ((q.0 << pbits) | p.0) as usize;
    let n = 1usize << (qbits + pbits);
    let mut parent: Vec<usize> = (0..n).collect();
    let mut smooth = vec![false; n];
    let group: Vec<HypElem> =
        pgl2().iter().flat_map(|a| (0..1u64 << qbits).map(move |r| HypElem { g, a: *a, r: BinPoly(r) })).collect();
    for qv in 1..1u64 << qbits {
        for pv in 0..1u64 << pbits {
            let (q, p) = (BinPoly(qv), BinPoly(pv));
            if !naive_smooth(g, q, p) {
                continue;
            }
            smooth[idx(q, p)] = true;
            for e in &group {
                let (q2, p2) = e.act(q, p);
                let (a, b) = (find(&mut parent, idx(q, p)), find(&mut parent, idx(q2, p2)));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes = 0;
    let mut mass = Ratio::from_integer(0);
    let mut profile = Profile::new();
    for i in 0..n {
        if smooth[i] && find(&mut parent, i) == i {
            let (q, p) = (BinPoly((i >> pbits) as u64), BinPoly((i & ((1 << pbits) - 1)) as u64));
            let aut = group.iter().filter(|e| e.act(q, p) == (q, p)).count() as u64;
            classes += 1;
            mass += Ratio::new(1, aut as i64);
            *profile.entry((aut, point_counts(g, q, p, g))).or_default() += 1;
        }
    }
    (classes, mass, profile)
}

pub fn fast_census(g: u32) -> (u64, Ratio<i64>, Profile) {
    let mut profile = Profile::new();
    let mut mass = Ratio::from_integer(0);
    let cls = enumerate_classes(g, Shard::ALL);
    for c in &cls {
        let aut = c.automorphisms.len() as u64;
        mass += Ratio::new(1, aut as i64);
        *profile.entry((aut, point_counts(g, c.q, c.p, g))).or_default() += 1;
    }
    (cls.len() as u64, mass, profile)
}
