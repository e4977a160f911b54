//! Hyperelliptic curves y^2 + q(x,z) y = p(x,z) with deg q = g+1, deg p = 2g+2.
//!
//! Isomorphisms are pairs (A, r) with A in GL_2(F_2) and r a form of degree
//! g+1, acting by (q, p) -> (psi(A) q, psi(A) p + r^2 + r psi(A) q). For a
//! fixed q the p-classes live in the quotient by W_q = {r^2 + r q}.

use crate::binfield::{small_field, FieldElem};
use crate::census::CurveRecord;
use crate::error::{CensusError, Result};
use crate::groupact::{fingerprint, pgl2, psi_action, F2Mat, GroupLike};
use crate::linalg::Subspace64;
use crate::polyform::{gcd, BinPoly};
use crate::strata::{Shard, Stratum};

pub const GENUS: u32 = 6;

/// An isomorphism (A, r) between hyperelliptic models of genus g.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypElem {
    pub g: u32,
    pub a: F2Mat,
    pub r: BinPoly,
}

impl HypElem {
    pub fn identity(g: u32) -> HypElem {
        HypElem { g, a: F2Mat::identity(2), r: BinPoly::ZERO }
    }

    pub fn act(&self, q: BinPoly, p: BinPoly) -> (BinPoly, BinPoly) {
        let q2 = psi_action(&self.a, self.g + 1, q);
        let p2 = psi_action(&self.a, 2 * self.g + 2, p) + self.r.square() + self.r.mul(q2);
        (q2, p2)
    }
}

impl GroupLike for HypElem {
    /// `self.mul(o)` acts as `o` followed by `self`.
    fn mul(&self, o: &HypElem) -> HypElem {
        HypElem { g: self.g, a: o.a.mul(&self.a), r: psi_action(&self.a, self.g + 1, o.r) + self.r }
    }

    fn inv(&self) -> HypElem {
        let ai = self.a.inv();
        HypElem { g: self.g, a: ai, r: psi_action(&ai, self.g + 1, self.r) }
    }

    fn is_identity(&self) -> bool {
        self.a.is_identity() && self.r.is_zero()
    }
}

fn reverse(f: BinPoly, n: u32) -> BinPoly {
    BinPoly((0..=n).filter(|&i| f.coeff(i)).fold(0, |acc, i| acc | 1 << (n - i)))
}

/// Smoothness of the model in both charts of the weighted projective plane.
pub fn is_smooth(g: u32, q: BinPoly, p: BinPoly) -> bool {
    if q.is_zero() {
        return false;
    }
    let affine_ok = |q: BinPoly, p: BinPoly| {
        let dq = q.derivative();
        let h = dq.square().mul(p) + p.derivative().square();
        gcd(q, h) == BinPoly::ONE
    };
    if !affine_ok(q, p) {
        return false;
    }
    // at z = 0 only the point x = infinity is new
    let (qr, pr) = (reverse(q, g + 1), reverse(p, 2 * g + 2));
    qr.coeff(0) || (qr.coeff(1) & pr.coeff(0)) != pr.coeff(1)
}

/// N_1..N_n of the smooth model.
pub fn point_counts(g: u32, q: BinPoly, p: BinPoly, n: u32) -> Vec<i64> {
    (1..=n)
        .map(|k| {
            let ctx = small_field(k);
            let mut total = 0i64;
            for x in ctx.elements() {
                let qx = q.eval(ctx, x);
                if qx == FieldElem::ZERO {
                    total += 1;
                } else {
                    let c = ctx.div(p.eval(ctx, x), ctx.square(qx));
                    if ctx.trace(c) == 0 {
                        total += 2;
                    }
                }
            }
            let (qi, pi) = (q.coeff(g + 1), p.coeff(2 * g + 2));
            total += if !qi {
                1
            } else if (k as u8 & pi as u8) & 1 == 0 {
                2
            } else {
                0
            };
            total
        })
        .collect()
}

fn hex_digits(bits: u32) -> usize {
    bits.div_ceil(4) as usize
}

pub fn model_string(g: u32, q: BinPoly, p: BinPoly) -> String {
    format!("hyp:{:0w1$x}:{:0w2$x}", q.0, p.0, w1 = hex_digits(g + 2), w2 = hex_digits(2 * g + 3))
}

pub fn parse_model(s: &str) -> Result<(BinPoly, BinPoly)> {
    let bad = || CensusError::InvalidArgument(format!("bad hyperelliptic model {s:?}"));
    let mut it = s.split(':');
    if it.next() != Some("hyp") {
        return Err(bad());
    }
    let q = it.next().and_then(BinPoly::from_hex).ok_or_else(bad)?;
    let p = it.next().and_then(BinPoly::from_hex).ok_or_else(bad)?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((q, p))
}

/// W_q = span{r^2 + r q : deg r <= g+1}.
pub fn w_space(g: u32, q: BinPoly) -> Subspace64 {
    Subspace64::from_vectors((0..=g + 1).map(|i| {
        let r = BinPoly::monomial(i);
        (r.square() + r.mul(q)).0
    }))
}

/// A class of smooth models with its automorphism group.
#[derive(Clone, Debug)]
pub struct HypClass {
    pub q: BinPoly,
    pub p: BinPoly,
    pub automorphisms: Vec<HypElem>,
}

/// Orbit representatives of nonzero forms of degree g+1 under GL_2, with
/// their stabilizers.
pub fn q_orbits(g: u32) -> Vec<(BinPoly, Vec<F2Mat>)> {
    let mut out = Vec::new();
    for qv in 1..(1u64 << (g + 2)) {
        let q = BinPoly(qv);
        let imgs: Vec<BinPoly> = pgl2().iter().map(|a| psi_action(a, g + 1, q)).collect();
        if imgs.iter().all(|&x| x >= q) {
            let stab = pgl2().iter().zip(&imgs).filter(|(_, &x)| x == q).map(|(a, _)| *a).collect();
            out.push((q, stab));
        }
    }
    out
}

/// All smooth classes with q in the orbit of a representative owned by the shard.
pub fn enumerate_classes(g: u32, shard: Shard) -> Vec<HypClass> {
    let mut out = Vec::new();
    for (idx, (q, stab)) in q_orbits(g).into_iter().enumerate() {
        if !shard.owns(idx) {
            continue;
        }
        let w = w_space(g, q);
        let free = w.free_positions(2 * g + 3);
        for bits in 0..(1u64 << free.len()) {
            let p = BinPoly(free.iter().enumerate().fold(0, |acc, (j, &pos)| acc | ((bits >> j) & 1) << pos));
            if !is_smooth(g, q, p) {
                continue;
            }
            let mut canonical = true;
            let mut fixing = Vec::new();
            for a in &stab {
                let img = w.reduce(psi_action(a, 2 * g + 2, p).0);
                if img < p.0 {
                    canonical = false;
                    break;
                }
                if img == p.0 {
                    fixing.push(*a);
                }
            }
            if canonical {
                out.push(HypClass { q, p, automorphisms: lift_automorphisms(g, q, p, &fixing) });
            }
        }
    }
    out
}

/// Completes each A fixing the class of p with both r solving the
/// translation equation.
fn lift_automorphisms(g: u32, q: BinPoly, p: BinPoly, fixing: &[F2Mat]) -> Vec<HypElem> {
    let mut out = Vec::new();
    for a in fixing {
        let target = psi_action(a, 2 * g + 2, p) + p;
        for rv in 0..(1u64 << (g + 2)) {
            let r = BinPoly(rv);
            if r.square() + r.mul(q) == target {
                out.push(HypElem { g, a: *a, r });
            }
        }
    }
    out
}

pub fn run(shard: Shard) -> Result<Vec<CurveRecord>> {
    enumerate_classes(GENUS, shard)
        .into_iter()
        .map(|c| {
            let counts = point_counts(GENUS, c.q, c.p, 6);
            let fp = fingerprint(&c.automorphisms)?;
            CurveRecord::new(Stratum::Hyp, model_string(GENUS, c.q, c.p), counts.try_into().expect("six counts"), &fp)
        })
        .collect()
}
