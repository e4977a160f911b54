//! Elliptic curves over F_2 in long Weierstrass form: points, the group law,
//! automorphisms, closed points, local expansions and polynomial functions.

use std::collections::HashMap;

use crate::binfield::{small_field, FieldCtx, FieldElem};
use crate::error::{CensusError, Result};
use crate::polyform::BinPoly;

const ZERO: FieldElem = FieldElem::ZERO;
const ONE: FieldElem = FieldElem::ONE;

fn bit(b: u8) -> FieldElem {
    if b & 1 == 1 {
        ONE
    } else {
        ZERO
    }
}

/// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with a_i in F_2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weierstrass {
    /// a1, a2, a3, a4, a6
    pub a: [u8; 5],
}

/// One model for each of the five isomorphism classes over F_2.
pub const BASES: [Weierstrass; 5] = [
    Weierstrass { a: [1, 0, 0, 0, 1] },
    Weierstrass { a: [1, 1, 0, 0, 1] },
    Weierstrass { a: [0, 0, 1, 0, 0] },
    Weierstrass { a: [0, 0, 1, 1, 0] },
    Weierstrass { a: [0, 0, 1, 1, 1] },
];

/// A geometric point; affine coordinates live in whatever field the caller uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pt {
    O,
    A(FieldElem, FieldElem),
}

impl Weierstrass {
    /// a1 x + a3
    pub fn lin(&self) -> BinPoly {
        BinPoly((self.a[2] as u64) | (self.a[0] as u64) << 1)
    }

    /// x^3 + a2 x^2 + a4 x + a6
    pub fn cubic(&self) -> BinPoly {
        BinPoly(8 | (self.a[1] as u64) << 2 | (self.a[3] as u64) << 1 | self.a[4] as u64)
    }

    pub fn on_curve(&self, ctx: &FieldCtx, p: Pt) -> bool {
        match p {
            Pt::O => true,
            Pt::A(x, y) => ctx.square(y) + ctx.mul(self.lin().eval(ctx, x), y) == self.cubic().eval(ctx, x),
        }
    }

    /// All points over F_{2^k}, O first.
    pub fn points(&self, ctx: &FieldCtx) -> Vec<Pt> {
        let mut out = vec![Pt::O];
        let elems: Vec<FieldElem> = ctx.elements().collect();
        for &x in &elems {
            let b = self.lin().eval(ctx, x);
            let c = self.cubic().eval(ctx, x);
            if b == ZERO {
                out.push(Pt::A(x, ctx.sqrt(c)));
                continue;
            }
            for &y in &elems {
                if ctx.square(y) + ctx.mul(b, y) == c {
                    out.push(Pt::A(x, y));
                }
            }
        }
        out
    }

    pub fn neg(&self, ctx: &FieldCtx, p: Pt) -> Pt {
        match p {
            Pt::O => Pt::O,
            Pt::A(x, y) => Pt::A(x, y + self.lin().eval(ctx, x)),
        }
    }

    pub fn add(&self, ctx: &FieldCtx, p: Pt, q: Pt) -> Pt {
        let (x1, y1, x2, y2) = match (p, q) {
            (Pt::O, _) => return q,
            (_, Pt::O) => return p,
            (Pt::A(x1, y1), Pt::A(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, _] = self.a.map(bit);
        let (lambda, nu) = if x1 != x2 {
            let d = ctx.inv(x1 + x2);
            (ctx.mul(y1 + y2, d), ctx.mul(ctx.mul(y1, x2) + ctx.mul(y2, x1), d))
        } else {
            let den = ctx.mul(a1, x1) + a3;
            if y1 != y2 || den == ZERO {
                return Pt::O;
            }
            let d = ctx.inv(den);
            let x1sq = ctx.square(x1);
            let lam = ctx.mul(x1sq + a4 + ctx.mul(a1, y1), d);
            let nu = ctx.mul(ctx.mul(x1sq, x1) + ctx.mul(a4, x1) + ctx.mul(a3, y1), d);
            (lam, nu)
        };
        let x3 = ctx.square(lambda) + ctx.mul(a1, lambda) + a2 + x1 + x2;
        let y3 = ctx.mul(lambda + a1, x3) + nu + a3;
        Pt::A(x3, y3)
    }

    /// Exact field degree of a point over F_{2^k}.
    pub fn point_degree(ctx: &FieldCtx, p: Pt) -> u32 {
        match p {
            Pt::O => 1,
            Pt::A(x, y) => num_integer::lcm(ctx.min_subfield_degree(x), ctx.min_subfield_degree(y)),
        }
    }
}

fn frobenius(ctx: &FieldCtx, p: Pt) -> Pt {
    match p {
        Pt::O => Pt::O,
        Pt::A(x, y) => Pt::A(ctx.square(x), ctx.square(y)),
    }
}

/// Automorphism of the genus-one curve: P -> alpha(P) + t, where alpha is
/// the Weierstrass substitution (x, y) -> (x + r, y + s x + u) fixing O.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveAut {
    pub rsu: [u8; 3],
    /// Translation by a rational point (coordinates in F_2).
    pub t: Pt,
}

impl CurveAut {
    pub fn apply(&self, e: &Weierstrass, ctx: &FieldCtx, p: Pt) -> Pt {
        let [r, s, u] = self.rsu.map(bit);
        let moved = match p {
            Pt::O => Pt::O,
            Pt::A(x, y) => Pt::A(x + r, y + ctx.mul(s, x) + u),
        };
        e.add(ctx, moved, self.t)
    }
}

/// Closed point: Frobenius orbit of a geometric point of exact degree `deg`,
/// with coordinates of the representative in F_{2^deg}.
#[derive(Clone, Debug)]
pub struct ClosedPoint {
    pub deg: u32,
    pub rep: Pt,
}

/// Geometric data of one base curve.
pub struct BaseCurve {
    pub index: usize,
    pub e: Weierstrass,
    pub rational: Vec<Pt>,
    /// Automorphisms as a genus-one curve (translations composed with
    /// Weierstrass substitutions).
    pub auts: Vec<CurveAut>,
    pub closed: Vec<ClosedPoint>,
    /// (degree, geometric point) -> index into `closed`
    lookup: HashMap<(u32, Pt), usize>,
}

pub const MAX_CLOSED_DEGREE: u32 = 6;

impl BaseCurve {
    pub fn new(index: usize) -> BaseCurve {
        let e = BASES[index];
        let f1 = small_field(1);
        let rational = e.points(f1);
        let f6 = small_field(6);
        let pts6 = e.points(f6);
        let mut alphas = Vec::new();
        for rsu in 0..8u8 {
            let rsu = [rsu & 1, (rsu >> 1) & 1, (rsu >> 2) & 1];
            let a = CurveAut { rsu, t: Pt::O };
            // a cubic meeting the curve in more than six points coincides with it
            if pts6.iter().all(|&p| e.on_curve(f6, a.apply(&e, f6, p))) {
                alphas.push(rsu);
            }
        }
        let mut auts = Vec::new();
        for &t in &rational {
            for &rsu in &alphas {
                auts.push(CurveAut { rsu, t });
            }
        }
        let mut closed = Vec::new();
        let mut lookup = HashMap::new();
        for d in 1..=MAX_CLOSED_DEGREE {
            let ctx = small_field(d);
            for p in e.points(ctx) {
                if Weierstrass::point_degree(ctx, p) != d || lookup.contains_key(&(d, p)) {
                    continue;
                }
                let idx = closed.len();
                closed.push(ClosedPoint { deg: d, rep: p });
                let mut cur = p;
                for _ in 0..d {
                    lookup.insert((d, cur), idx);
                    cur = frobenius(ctx, cur);
                }
            }
        }
        BaseCurve { index, e, rational, auts, closed, lookup }
    }

    /// Index of the closed point through a geometric point of exact degree d.
    pub fn closed_index(&self, d: u32, p: Pt) -> usize {
        self.lookup[&(d, p)]
    }

    /// Image of a closed point under an automorphism.
    pub fn act_closed(&self, a: &CurveAut, idx: usize) -> usize {
        let cp = &self.closed[idx];
        let ctx = small_field(cp.deg);
        self.closed_index(cp.deg, a.apply(&self.e, ctx, cp.rep))
    }

    /// Conjugates of a closed point inside F_{2^k} (deg | k).
    pub fn conjugates(&self, idx: usize, k: u32) -> Vec<Pt> {
        let cp = &self.closed[idx];
        let (small, big) = (small_field(cp.deg), small_field(k));
        let mut p = match cp.rep {
            Pt::O => return vec![Pt::O],
            Pt::A(x, y) => Pt::A(big.embed(small, x).unwrap(), big.embed(small, y).unwrap()),
        };
        let mut out = Vec::new();
        for _ in 0..cp.deg {
            out.push(p);
            p = frobenius(big, p);
        }
        out
    }

    /// Minimal polynomial over F_2 of the x-coordinate of an affine closed point.
    pub fn x_minpoly(&self, idx: usize) -> BinPoly {
        let cp = &self.closed[idx];
        let ctx = small_field(cp.deg);
        let Pt::A(x, _) = cp.rep else { panic!("the origin has no x-coordinate") };
        let mut conj = vec![x];
        loop {
            let n = ctx.square(*conj.last().unwrap());
            if n == x {
                break;
            }
            conj.push(n);
        }
        // expand prod (X + c)
        let mut coeffs = vec![ONE];
        for c in conj {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] += a;
                next[i] += ctx.mul(a, c);
            }
            coeffs = next;
        }
        BinPoly(coeffs.iter().enumerate().fold(0u64, |acc, (i, v)| {
            assert!(v.0 <= 1);
            acc | (v.0 as u64) << i
        }))
    }
}

/// Truncated Laurent series sum_{i < len} c[i] t^{val + i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ser {
    pub val: i32,
    pub c: Vec<FieldElem>,
}

impl Ser {
    pub fn constant(v: FieldElem, len: usize) -> Ser {
        let mut c = vec![ZERO; len];
        c[0] = v;
        Ser { val: 0, c }
    }

    pub fn zero(val: i32, len: usize) -> Ser {
        Ser { val, c: vec![ZERO; len] }
    }

    /// Exponents below this are known.
    pub fn prec(&self) -> i32 {
        self.val + self.c.len() as i32
    }

    pub fn coeff(&self, i: i32) -> FieldElem {
        assert!(i < self.prec(), "coefficient t^{i} beyond precision {}", self.prec());
        if i < self.val {
            ZERO
        } else {
            self.c[(i - self.val) as usize]
        }
    }

    pub fn add(&self, o: &Ser) -> Ser {
        let val = self.val.min(o.val);
        let end = self.prec().min(o.prec());
        let c = (val..end).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Ser { val, c }
    }

    pub fn mul(&self, ctx: &FieldCtx, o: &Ser) -> Ser {
        let n = self.c.len().min(o.c.len());
        let mut c = vec![ZERO; n];
        for (i, &a) in self.c.iter().enumerate().take(n) {
            if a == ZERO {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate().take(n - i) {
                c[i + j] += ctx.mul(a, b);
            }
        }
        Ser { val: self.val + o.val, c }
    }

    /// Drops known leading zeros.
    pub fn normalized(&self) -> Ser {
        let k = self.c.iter().position(|&v| v != ZERO).unwrap_or(self.c.len());
        Ser { val: self.val + k as i32, c: self.c[k..].to_vec() }
    }

    pub fn inv(&self, ctx: &FieldCtx) -> Result<Ser> {
        let s = self.normalized();
        if s.c.is_empty() {
            return Err(CensusError::Degenerate("inverting a series with no known nonzero term".into()));
        }
        let n = s.c.len();
        let i0 = ctx.inv(s.c[0]);
        let mut c = vec![ZERO; n];
        c[0] = i0;
        for k in 1..n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += ctx.mul(s.c[j], c[k - j]);
            }
            c[k] = ctx.mul(acc, i0);
        }
        Ok(Ser { val: -s.val, c })
    }

    /// Coefficients of t^lo ..= t^hi; everything below lo must vanish.
    pub fn window(&self, lo: i32, hi: i32) -> Vec<FieldElem> {
        for i in self.val..lo.min(self.prec()) {
            assert_eq!(self.coeff(i), ZERO, "pole of order {} below the window", -i);
        }
        (lo..=hi).map(|i| self.coeff(i)).collect()
    }
}

/// Expansions of x and y in a uniformizer at a geometric point over `ctx`.
pub fn local_xy(e: &Weierstrass, ctx: &FieldCtx, p: Pt, len: usize) -> (Ser, Ser) {
    let [a1, a2, a3, a4, a6] = e.a.map(bit);
    match p {
        Pt::O => {
            // z = x/y, w = 1/y; w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
            let mut w = Ser::zero(0, len + 3);
            let mut zc = vec![ZERO; len + 3];
            zc[0] = ONE;
            let zl = Ser { val: 1, c: zc };
            let sc = |v: FieldElem, s: &Ser| Ser { val: s.val, c: s.c.iter().map(|&x| ctx.mul(v, x)).collect() };
            for _ in 0..len + 3 {
                let z2 = zl.mul(ctx, &zl);
                let z3 = z2.mul(ctx, &zl);
                let w2 = w.mul(ctx, &w);
                let w3 = w2.mul(ctx, &w);
                let terms = [
                    z3,
                    sc(a1, &zl.mul(ctx, &w)),
                    sc(a2, &z2.mul(ctx, &w)),
                    sc(a3, &w2),
                    sc(a4, &zl.mul(ctx, &w2)),
                    sc(a6, &w3),
                ];
                let mut next = Ser::zero(0, len + 3);
                for t in &terms {
                    next = next.add(t);
                }
                next.c.truncate(len + 3);
                w = next;
            }
            let winv = w.inv(ctx).expect("w has a zero of order 3 at O");
            let x = zl.mul(ctx, &winv);
            (Ser { val: x.val, c: x.c[..len].to_vec() }, Ser { val: winv.val, c: winv.c[..len].to_vec() })
        }
        Pt::A(x0, y0) => {
            let fy = e.lin().eval(ctx, x0);
            let fx = ctx.mul(a1, y0) + ctx.square(x0) + a4;
            // the coordinate with nonzero partial is solved for
            let t_is_x = fy != ZERO;
            let mut known = vec![ZERO; len];
            known[0] = if t_is_x { x0 } else { y0 };
            if len > 1 {
                known[1] = ONE;
            }
            let mut solved = vec![ZERO; len];
            solved[0] = if t_is_x { y0 } else { x0 };
            let slope = ctx.inv(if t_is_x { fy } else { fx });
            let poly_mul = |a: &[FieldElem], b: &[FieldElem]| {
                let mut c = vec![ZERO; len];
                for (i, &u) in a.iter().enumerate() {
                    if u == ZERO {
                        continue;
                    }
                    for (j, &v) in b.iter().enumerate().take(len - i) {
                        c[i + j] += ctx.mul(u, v);
                    }
                }
                c
            };
            let scal = |v: FieldElem, s: &[FieldElem]| s.iter().map(|&u| ctx.mul(v, u)).collect::<Vec<_>>();
            let add = |a: &[FieldElem], b: &[FieldElem]| a.iter().zip(b).map(|(&u, &v)| u + v).collect::<Vec<_>>();
            let mut one = vec![ZERO; len];
            one[0] = ONE;
            for n in 1..len {
                let (xs, ys) = if t_is_x { (&known, &solved) } else { (&solved, &known) };
                let x2 = poly_mul(xs, xs);
                let x3 = poly_mul(&x2, xs);
                let y2 = poly_mul(ys, ys);
                let xy = poly_mul(xs, ys);
                let mut g = add(&y2, &scal(a1, &xy));
                g = add(&g, &scal(a3, ys));
                g = add(&g, &x3);
                g = add(&g, &scal(a2, &x2));
                g = add(&g, &scal(a4, xs));
                g = add(&g, &scal(a6, &one));
                solved[n] = ctx.mul(g[n], slope);
            }
            let (xs, ys) = if t_is_x { (known, solved) } else { (solved, known) };
            (Ser { val: 0, c: xs }, Ser { val: 0, c: ys })
        }
    }
}

/// Polynomial functions p0(x) + y p1(x), stored as a bitmask over pole
/// orders at O: bit 2i is x^i, bit 2i+3 is x^i y.
pub fn split_fn(m: u64) -> (BinPoly, BinPoly) {
    assert_eq!(m & 2, 0, "no function has a simple pole at O");
    let (mut p0, mut p1) = (0u64, 0u64);
    for j in 0..64 {
        if (m >> j) & 1 == 1 {
            if j % 2 == 0 {
                p0 |= 1 << (j / 2);
            } else {
                p1 |= 1 << ((j - 3) / 2);
            }
        }
    }
    (BinPoly(p0), BinPoly(p1))
}

pub fn join_fn(p0: BinPoly, p1: BinPoly) -> u64 {
    let mut m = 0u64;
    for i in 0..32 {
        if p0.coeff(i) {
            m |= 1 << (2 * i);
        }
        if p1.coeff(i) {
            m |= 1 << (2 * i + 3);
        }
    }
    m
}

/// Product of polynomial functions on the curve.
pub fn mul_fn(e: &Weierstrass, a: u64, b: u64) -> u64 {
    let (p0, p1) = split_fn(a);
    let (q0, q1) = split_fn(b);
    let pq = p1.mul(q1);
    let c0 = p0.mul(q0) + pq.mul(e.cubic());
    let c1 = p0.mul(q1) + p1.mul(q0) + pq.mul(e.lin());
    join_fn(c0, c1)
}

pub fn eval_fn(ctx: &FieldCtx, m: u64, p: Pt) -> FieldElem {
    let Pt::A(x, y) = p else { panic!("polynomial functions are not regular at O") };
    let (p0, p1) = split_fn(m);
    p0.eval(ctx, x) + ctx.mul(y, p1.eval(ctx, x))
}

/// Expansions of the monomials of pole order 0..=max at a point.
pub fn monomial_expansions(e: &Weierstrass, ctx: &FieldCtx, p: Pt, max: u32, len: usize) -> Vec<Option<Ser>> {
    let (xs, ys) = local_xy(e, ctx, p, len);
    let mut out = vec![None; max as usize + 1];
    let mut xp = Ser::constant(ONE, len);
    for i in 0..=max / 2 {
        out[2 * i as usize] = Some(xp.clone());
        if 2 * i + 3 <= max {
            out[2 * i as usize + 3] = Some(xp.mul(ctx, &ys));
        }
        xp = xp.mul(ctx, &xs);
    }
    out
}

/// Expansion of a polynomial function from monomial expansions.
pub fn expand_fn(monos: &[Option<Ser>], m: u64) -> Ser {
    let mut acc: Option<Ser> = None;
    for (j, s) in monos.iter().enumerate() {
        if (m >> j) & 1 == 1 {
            let s = s.as_ref().expect("monomial in range");
            acc = Some(match acc {
                None => s.clone(),
                Some(a) => a.add(s),
            });
        }
    }
    assert!(m >> monos.len() == 0, "function beyond precomputed pole order");
    acc.unwrap_or_else(|| Ser::zero(0, monos[0].as_ref().map_or(1, |s| s.c.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_bases_are_distinct() {
        let counts: Vec<usize> = (0..5).map(|i| BaseCurve::new(i).rational.len()).collect();
        assert_eq!(counts, vec![4, 2, 3, 5, 1]);
    }

    #[test]
    fn group_law_is_associative_and_closed() {
        for i in 0..5 {
            let e = BASES[i];
            let ctx = small_field(4);
            let pts = e.points(ctx);
            for &p in pts.iter().step_by(3) {
                assert_eq!(e.add(ctx, p, e.neg(ctx, p)), Pt::O);
                for &q in pts.iter().step_by(2) {
                    let s = e.add(ctx, p, q);
                    assert!(e.on_curve(ctx, s));
                    assert_eq!(s, e.add(ctx, q, p));
                    for &r in pts.iter().step_by(5) {
                        assert_eq!(e.add(ctx, s, r), e.add(ctx, p, e.add(ctx, q, r)));
                    }
                }
            }
        }
    }

    #[test]
    fn automorphisms_are_group_homomorphisms_up_to_translation() {
        for i in 0..5 {
            let b = BaseCurve::new(i);
            let ctx = small_field(4);
            let pts = b.e.points(ctx);
            for a in &b.auts {
                let alpha = CurveAut { rsu: a.rsu, t: Pt::O };
                for &p in pts.iter().step_by(3) {
                    for &q in pts.iter().step_by(4) {
                        let lhs = alpha.apply(&b.e, ctx, b.e.add(ctx, p, q));
                        let rhs = b.e.add(ctx, alpha.apply(&b.e, ctx, p), alpha.apply(&b.e, ctx, q));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn closed_point_counts_match_point_counts() {
        for i in 0..5 {
            let b = BaseCurve::new(i);
            for k in 1..=MAX_CLOSED_DEGREE {
                let n: u32 = b.closed.iter().filter(|c| k % c.deg == 0).map(|c| c.deg).sum();
                assert_eq!(n as usize, b.e.points(small_field(k)).len());
            }
        }
    }

    #[test]
    fn local_expansions_satisfy_equation() {
        for i in 0..5 {
            let b = BaseCurve::new(i);
            for cp in &b.closed {
                if cp.deg > 3 {
                    continue;
                }
                let ctx = small_field(cp.deg);
                let len = 20;
                let (x, y) = local_xy(&b.e, ctx, cp.rep, len);
                let lin = |s: &Ser, v: u8| Ser {
                    val: s.val,
                    c: s.c.iter().map(|&u| if v == 1 { u } else { ZERO }).collect(),
                };
                let [a1, a2, a3, a4, a6] = b.e.a;
                let lhs = y.mul(ctx, &y).add(&lin(&x.mul(ctx, &y), a1)).add(&lin(&y, a3));
                let x2 = x.mul(ctx, &x);
                let mut rhs = x2.mul(ctx, &x).add(&lin(&x2, a2)).add(&lin(&x, a4));
                rhs = rhs.add(&lin(&Ser::constant(ONE, len), a6));
                let diff = lhs.add(&rhs);
                assert!(diff.c.iter().all(|&v| v == ZERO), "curve {i} point {:?}", cp.rep);
                // t is a uniformizer: one of x - x0, y - y0 has valuation one
                if let Pt::A(x0, y0) = cp.rep {
                    let vx = x.add(&Ser::constant(x0, len)).normalized().val;
                    let vy = y.add(&Ser::constant(y0, len)).normalized().val;
                    assert_eq!(vx.min(vy), 1);
                } else {
                    assert_eq!((x.normalized().val, y.normalized().val), (-2, -3));
                }
            }
        }
    }

    #[test]
    fn function_product_matches_values() {
        let b = BaseCurve::new(3);
        let ctx = small_field(5);
        let pts = b.e.points(ctx);
        let (f, g) = (0b1011_0101u64, 0b0100_1001u64);
        let h = mul_fn(&b.e, f, g);
        for &p in pts.iter().skip(1) {
            assert_eq!(eval_fn(ctx, h, p), ctx.mul(eval_fn(ctx, f, p), eval_fn(ctx, g, p)));
        }
    }
}
