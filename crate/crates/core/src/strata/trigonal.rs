//! Trigonal curves of genus 6.
//!
//! Maroni invariant 0: smooth (3,4)-forms on P^1 x P^1 up to PGL_2 x PGL_2.
//! Maroni invariant 2: smooth curves in |3σ + 7f| on the Hirzebruch surface
//! F_2, written in Cox coordinates (x0, x1, s, t) of weights
//! deg x = (1,0), deg s = (2,1), deg t = (0,1). F_2 embeds in P^1 x P^2 as
//! X_1 : (x0^2 + x1^2) y1 + x0 x1 y2 = 0 through y = (s, t x0 x1, t (x0 + x1)^2),
//! and Cox forms of degree (7,3) are exactly the restrictions of (1,3)-forms.
//! The trigonal pencil and the scroll are unique, so isomorphisms of curves
//! come from automorphisms of the ambient surface. Aut(F_2) over F_2 has
//! order 48: (A, c) acting by (x, s, t) -> (A x, s + c(x) t, t) with c a
//! binary quadratic.
//!
//! In both cases forms are bucketed by their zero set among the nine
//! rational points of the surface; the orbit tree supplies one subset per
//! orbit together with its stabilizer.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use crate::binfield::{small_field, FieldCtx, FieldElem};
use crate::census::CurveRecord;
use crate::error::{CensusError, Result};
use crate::groupact::{fingerprint, pgl2, F2Mat, GroupLike, ProductElem};
use crate::linalg::{solve_f2, Subspace64};
use crate::orbitree::{ExplicitAction, GroupAction, OrbitTree};
use crate::polyform::{dot, FormSpace, LinMap};
use crate::smoothcert::{
    counts_from_closed, counts_from_lanes, form_space_table, lane_on_curve, product_closed_points, PointFunctionals,
    SweepTable, MAX_DEGREE,
};
use crate::strata::formclass::canonical_stabilizer;
use crate::strata::{Shard, Stratum};

pub const NCOEFFS: u32 = 20;

/// Rational points of P^1 x P^1 (also the Cox representatives of F_2(F_2)),
/// as bitmasks (x, y) with x, y in {1, 2, 3}.
fn rational_points() -> Vec<(u32, u32)> {
    product_closed_points(&[2, 2], 1)
        .iter()
        .map(|p| {
            let bits = |a: FieldElem, b: FieldElem| a.0 | (b.0 << 1);
            (bits(p[0], p[1]), bits(p[2], p[3]))
        })
        .collect()
}

fn point_index(points: &[(u32, u32)]) -> HashMap<(u32, u32), usize> {
    points.iter().enumerate().map(|(i, &p)| (p, i)).collect()
}

/// A class found by the subset pipeline: canonical coefficients, the
/// indices of the group elements fixing them, and N_1..N_6.
#[derive(Clone, Debug)]
pub struct FormClass {
    pub form: u64,
    pub fixing: Vec<usize>,
    pub counts: [i64; 6],
    pub subset: Vec<usize>,
}

/// Everything the subset pipeline needs about one surface.
pub struct SubsetProblem<A: GroupAction> {
    pub tree: OrbitTree<A>,
    pub table: SweepTable,
    /// Evaluation of the coefficient basis at each rational point.
    pub point_rows: Vec<u64>,
    /// maps[i]: F -> F∘g_i for the i-th group element
    pub maps: Vec<LinMap>,
    pub index: HashMap<A::Elem, usize>,
    /// Invariant test for reducible forms the sweep table cannot see.
    pub reducible: Option<Box<dyn Fn(u64) -> bool + Send + Sync>>,
}

impl<A: GroupAction> SubsetProblem<A>
where
    A::Elem: Hash,
{
    /// Classes whose zero set is a representative owned by the shard.
    pub fn classes(&self, shard: Shard) -> Vec<FormClass> {
        let n = self.point_rows.len();
        let ncoeffs = self.table.ncoeffs() as u32;
        let mut out = Vec::new();
        let mut item = 0usize;
        for level in 0..=self.tree.max_level() {
            for node in self.tree.level(level) {
                let mine = shard.owns(item);
                item += 1;
                if !mine {
                    continue;
                }
                let rows: Vec<(u64, bool)> = node.subset.iter().map(|&p| (self.point_rows[p], false)).collect();
                let (_, basis) = solve_f2(&rows, ncoeffs).expect("homogeneous system");
                let stab: Vec<usize> = node.stabilizer.iter().map(|g| self.index[g]).collect();
                let mut inside = vec![false; n];
                for &p in &node.subset {
                    inside[p] = true;
                }
                self.table.sweep(0, &basis, |f, lanes| {
                    if (0..n).any(|p| lane_on_curve(lanes[p]) != inside[p]) {
                        return;
                    }
                    if let Some(fixing) = canonical_stabilizer(f, &self.maps, &stab) {
                        if self.reducible.as_ref().is_some_and(|r| r(f)) {
                            return;
                        }
                        out.push(FormClass {
                            form: f,
                            fixing,
                            counts: counts_from_closed(&counts_from_lanes(lanes, self.table.degrees())),
                            subset: node.subset.clone(),
                        });
                    }
                });
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Maroni invariant 0

pub type P1P1Action = ExplicitAction<ProductElem, Box<dyn Fn(&ProductElem, usize) -> usize + Send + Sync>>;

pub fn t0_space() -> Arc<FormSpace> {
    FormSpace::new(&[(2, 3), (2, 4)])
}

/// PGL_2 x PGL_2 on the nine rational points of P^1 x P^1.
pub fn t0_action() -> P1P1Action {
    let pts = rational_points();
    let idx = point_index(&pts);
    let elements: Vec<ProductElem> =
        pgl2().iter().flat_map(|a| pgl2().iter().map(move |b| ProductElem(vec![*a, *b]))).collect();
    ExplicitAction {
        elements,
        identity: ProductElem(vec![F2Mat::identity(2); 2]),
        npoints: pts.len(),
        act: Box::new(move |g: &ProductElem, p: usize| {
            let (x, y) = pts[p];
            idx[&(g.0[0].apply(x), g.0[1].apply(y))]
        }),
    }
}

fn rational_rows(space: &FormSpace, coords: &[Vec<FieldElem>]) -> Vec<u64> {
    let ctx = small_field(1);
    coords
        .iter()
        .map(|p| space.monomial_values(ctx, p).iter().enumerate().fold(0u64, |acc, (i, v)| acc | (u64::from(v.0) << i)))
        .collect()
}

pub fn t0_problem() -> Result<SubsetProblem<P1P1Action>> {
    let space = t0_space();
    let action = t0_action();
    let maps = action
        .elements()
        .iter()
        .map(|g| {
            let mats: Vec<Vec<u32>> = g.0.iter().map(|m| m.rows().iter().map(|&r| u32::from(r)).collect()).collect();
            LinMap::from_columns(&space.substitution_columns(&mats))
        })
        .collect();
    let index = action.elements().iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
    let point_rows = rational_rows(&space, &product_closed_points(&[2, 2], 1));
    let tree = OrbitTree::build(action, 9)?;
    Ok(SubsetProblem {
        tree,
        table: form_space_table(&space),
        point_rows,
        maps,
        index,
        reducible: Some(Box::new(t0_reducible)),
    })
}

/// A (3,4)-curve that passes the table is irreducible unless it splits as
/// (a, b) + (3 - a, 4 - b) with intersection number a(4 - b) + (3 - a)b >= 7:
/// otherwise the components meet in a point of degree <= 6. These are the
/// factor bidegrees with a <= 1 for which that happens.
pub const T0_HIDDEN_SPLITS: [(u32, u32); 4] = [(1, 3), (1, 4), (0, 3), (0, 4)];

/// Span of g·h for h of the cofactor bidegree, on the (3,4) basis.
pub fn product_span(g: &[Vec<u8>], cofactor: (u32, u32)) -> Subspace64 {
    let target = t0_space();
    let cof = FormSpace::new(&[(2, cofactor.0), (2, cofactor.1)]);
    Subspace64::from_vectors(cof.monomials().iter().map(|m| {
        g.iter().fold(0u64, |acc, e| {
            let prod: Vec<u8> = e.iter().zip(m).map(|(a, b)| a + b).collect();
            acc ^ 1 << target.index_of(&prod).expect("product has bidegree (3,4)")
        })
    }))
}

fn hidden_factor_spans() -> &'static [Subspace64] {
    static S: OnceLock<Vec<Subspace64>> = OnceLock::new();
    S.get_or_init(|| {
        let mut out = Vec::new();
        for &(a, b) in &T0_HIDDEN_SPLITS {
            let sp = FormSpace::new(&[(2, a), (2, b)]);
            for g in 1..1u64 << sp.dim() {
                let monos: Vec<Vec<u8>> =
                    (0..sp.dim()).filter(|&i| (g >> i) & 1 == 1).map(|i| sp.monomials()[i].clone()).collect();
                out.push(product_span(&monos, (3 - a, 4 - b)));
            }
        }
        out
    })
}

/// Whether a (3,4)-form factors along one of the hidden splits.
pub fn t0_reducible(f: u64) -> bool {
    hidden_factor_spans().iter().any(|s| s.contains(f))
}

pub fn t0_model_string(form: u64) -> String {
    format!("t0:{form:05x}")
}

pub fn enumerate_t0(shard: Shard) -> Result<(Vec<FormClass>, Vec<ProductElem>)> {
    let problem = t0_problem()?;
    let classes = problem.classes(shard);
    Ok((classes, problem.tree.action().elements().to_vec()))
}

pub fn run_t0(shard: Shard) -> Result<Vec<CurveRecord>> {
    let (classes, elems) = enumerate_t0(shard)?;
    classes
        .into_iter()
        .map(|c| {
            let stab: Vec<ProductElem> = c.fixing.iter().map(|&i| elems[i].clone()).collect();
            CurveRecord::new(Stratum::T0, t0_model_string(c.form), c.counts, &fingerprint(&stab)?)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Maroni invariant 2

/// Binary quadratic c0 x0^2 + c1 x0 x1 + c2 x1^2 as bits (c0, c1, c2).
fn quad_product(l: u32, m: u32) -> u8 {
    let (p0, p1, q0, q1) = (l & 1, (l >> 1) & 1, m & 1, (m >> 1) & 1);
    (p0 & q0 | ((p0 & q1) ^ (p1 & q0)) << 1 | (p1 & q1) << 2) as u8
}

/// c∘A for a binary quadratic c.
fn quad_compose(c: u8, a: &F2Mat) -> u8 {
    let (l0, l1) = (u32::from(a.rows()[0]), u32::from(a.rows()[1]));
    let mut out = 0;
    if c & 1 != 0 {
        out ^= quad_product(l0, l0);
    }
    if c & 2 != 0 {
        out ^= quad_product(l0, l1);
    }
    if c & 4 != 0 {
        out ^= quad_product(l1, l1);
    }
    out
}

fn eval_quad(ctx: &FieldCtx, c: u8, x0: FieldElem, x1: FieldElem) -> FieldElem {
    let mut v = FieldElem::ZERO;
    if c & 1 != 0 {
        v += ctx.square(x0);
    }
    if c & 2 != 0 {
        v += ctx.mul(x0, x1);
    }
    if c & 4 != 0 {
        v += ctx.square(x1);
    }
    v
}

/// Automorphism (A, c) of F_2: (x, s, t) -> (A x, s + c(x) t, t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HirzElem {
    pub a: F2Mat,
    pub c: u8,
}

impl HirzElem {
    pub fn identity() -> HirzElem {
        HirzElem { a: F2Mat::identity(2), c: 0 }
    }

    pub fn all() -> Vec<HirzElem> {
        pgl2().iter().flat_map(|a| (0..8).map(move |c| HirzElem { a: *a, c })).collect()
    }

    /// Action on a rational point given as bitmasks (x, (s, t)).
    pub fn apply_rational(&self, x: u32, st: u32) -> (u32, u32) {
        let ctx = small_field(1);
        let (x0, x1) = (FieldElem(x & 1), FieldElem(x >> 1));
        let (s, t) = (FieldElem(st & 1), FieldElem(st >> 1));
        let s2 = s + ctx.mul(eval_quad(ctx, self.c, x0, x1), t);
        (self.a.apply(x), s2.0 | (t.0 << 1))
    }
}

impl GroupLike for HirzElem {
    /// Composition: `self.mul(o)` applies `o` first.
    fn mul(&self, o: &HirzElem) -> HirzElem {
        HirzElem { a: self.a.mul(&o.a), c: o.c ^ quad_compose(self.c, &o.a) }
    }

    fn inv(&self) -> HirzElem {
        let ai = self.a.inv();
        HirzElem { a: ai, c: quad_compose(self.c, &ai) }
    }

    fn is_identity(&self) -> bool {
        self.a.is_identity() && self.c == 0
    }
}

/// Cox monomial x0^e0 x1^e1 s^e2 t^e3.
type Exps = [u8; 4];

/// Sparse polynomial over F_2 in the Cox variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Sparse(BTreeMap<Exps, ()>);

impl Sparse {
    fn mono(e: Exps) -> Sparse {
        let mut m = BTreeMap::new();
        m.insert(e, ());
        Sparse(m)
    }

    fn toggle(&mut self, e: Exps) {
        if self.0.remove(&e).is_none() {
            self.0.insert(e, ());
        }
    }

    fn add(&self, o: &Sparse) -> Sparse {
        let mut r = self.clone();
        for e in o.0.keys() {
            r.toggle(*e);
        }
        r
    }

    fn mul(&self, o: &Sparse) -> Sparse {
        let mut r = Sparse::default();
        for a in self.0.keys() {
            for b in o.0.keys() {
                r.toggle([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]);
            }
        }
        r
    }

    fn pow(&self, n: u8) -> Sparse {
        let mut r = Sparse::mono([0; 4]);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    fn linear(l: u32) -> Sparse {
        let mut r = Sparse::default();
        if l & 1 != 0 {
            r.toggle([1, 0, 0, 0]);
        }
        if l & 2 != 0 {
            r.toggle([0, 1, 0, 0]);
        }
        r
    }

    fn quad_times_t(c: u8) -> Sparse {
        let mut r = Sparse::default();
        for (bit, e) in [[2, 0, 0, 1], [1, 1, 0, 1], [0, 2, 0, 1]].into_iter().enumerate() {
            if (c >> bit) & 1 != 0 {
                r.toggle(e);
            }
        }
        r
    }
}

/// Cox monomials of degree (7, 3), by decreasing power of s then of x0.
pub fn cox_monomials() -> &'static [Exps] {
    static M: OnceLock<Vec<Exps>> = OnceLock::new();
    M.get_or_init(|| {
        let mut out = Vec::new();
        for a in (0..=3u8).rev() {
            let c = 7 - 2 * a;
            for e0 in (0..=c).rev() {
                out.push([e0, c - e0, a, 3 - a]);
            }
        }
        out
    })
}

fn cox_index(e: &Exps) -> usize {
    cox_monomials().iter().position(|m| m == e).expect("Cox monomial of degree (7,3)")
}

fn to_mask(p: &Sparse) -> u64 {
    p.0.keys().fold(0u64, |acc, e| acc | 1 << cox_index(e))
}

/// The (1,3)-forms on P^1 x P^2.
pub fn t2_space() -> Arc<FormSpace> {
    FormSpace::new(&[(2, 1), (3, 3)])
}

/// Column j: the Cox form of the j-th (1,3) monomial restricted to X_1.
pub fn restriction_columns() -> &'static [u64] {
    static C: OnceLock<Vec<u64>> = OnceLock::new();
    C.get_or_init(|| {
        let y = [
            Sparse::mono([0, 0, 1, 0]),
            Sparse::mono([1, 1, 0, 1]),
            Sparse::mono([2, 0, 0, 1]).add(&Sparse::mono([0, 2, 0, 1])),
        ];
        t2_space()
            .monomials()
            .iter()
            .map(|m| {
                let mut p = Sparse::mono([m[0], m[1], 0, 0]);
                for (v, yv) in y.iter().enumerate() {
                    p = p.mul(&yv.pow(m[2 + v]));
                }
                to_mask(&p)
            })
            .collect()
    })
}

/// Cox coefficients -> (1,3)-form coefficients.
pub fn cox_to_form(cox: u64) -> Result<u64> {
    let cols = restriction_columns();
    let rows: Vec<(u64, bool)> = (0..cols.len())
        .map(|i| {
            let row = cols.iter().enumerate().fold(0u64, |acc, (j, &c)| acc | ((c >> i) & 1) << j);
            (row, (cox >> i) & 1 == 1)
        })
        .collect();
    match solve_f2(&rows, cols.len() as u32) {
        Some((x, kernel)) if kernel.is_empty() => Ok(x),
        _ => Err(CensusError::Degenerate("restriction to X_1 is not bijective".into())),
    }
}

pub fn form_to_cox(form: u64) -> u64 {
    crate::polyform::apply_columns(restriction_columns(), form)
}

/// F -> F∘g on Cox coefficients.
pub fn cox_substitution(g: &HirzElem) -> Vec<u64> {
    let rows = g.a.rows();
    let x0 = Sparse::linear(u32::from(rows[0]));
    let x1 = Sparse::linear(u32::from(rows[1]));
    let s = Sparse::mono([0, 0, 1, 0]).add(&Sparse::quad_times_t(g.c));
    let t = Sparse::mono([0, 0, 0, 1]);
    cox_monomials()
        .iter()
        .map(|e| to_mask(&x0.pow(e[0]).mul(&x1.pow(e[1])).mul(&s.pow(e[2])).mul(&t.pow(e[3]))))
        .collect()
}

fn cox_values(ctx: &FieldCtx, p: &[FieldElem], var: Option<usize>) -> Vec<FieldElem> {
    cox_monomials()
        .iter()
        .map(|m| {
            let mut e = *m;
            if let Some(v) = var {
                if e[v] % 2 == 0 {
                    return FieldElem::ZERO;
                }
                e[v] -= 1;
            }
            (0..4).fold(FieldElem::ONE, |acc, i| ctx.mul(acc, ctx.pow(p[i], u64::from(e[i]))))
        })
        .collect()
}

/// Closed points of F_2 of degree <= 6 with value and all four Cox partials.
/// At a point of the curve the Euler relations make the vanishing of every
/// partial equivalent to singularity in a chart.
pub fn cox_table() -> SweepTable {
    let mut pts = Vec::new();
    for d in 1..=MAX_DEGREE {
        let ctx = small_field(d);
        for p in product_closed_points(&[2, 2], d) {
            let mut functionals = vec![cox_values(ctx, &p, None)];
            for v in 0..4 {
                functionals.push(cox_values(ctx, &p, Some(v)));
            }
            pts.push(PointFunctionals { degree: d, coords: p, functionals });
        }
    }
    SweepTable::new(pts, cox_monomials().len())
}

pub type HirzAction = ExplicitAction<HirzElem, Box<dyn Fn(&HirzElem, usize) -> usize + Send + Sync>>;

/// Aut(F_2) on its nine rational points.
pub fn t2_action() -> HirzAction {
    let pts = rational_points();
    let idx = point_index(&pts);
    ExplicitAction {
        elements: HirzElem::all(),
        identity: HirzElem::identity(),
        npoints: pts.len(),
        act: Box::new(move |g: &HirzElem, p: usize| {
            let (x, st) = pts[p];
            idx[&g.apply_rational(x, st)]
        }),
    }
}

pub fn t2_problem() -> Result<SubsetProblem<HirzAction>> {
    let action = t2_action();
    let maps = action.elements().iter().map(|g| LinMap::from_columns(&cox_substitution(g))).collect();
    let index = action.elements().iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let ctx = small_field(1);
    let point_rows = product_closed_points(&[2, 2], 1)
        .iter()
        .map(|p| cox_values(ctx, p, None).iter().enumerate().fold(0u64, |acc, (i, v)| acc | u64::from(v.0) << i))
        .collect();
    let tree = OrbitTree::build(action, 9)?;
    Ok(SubsetProblem { tree, table: cox_table(), point_rows, maps, index, reducible: None })
}

pub fn t2_model_string(cox: u64) -> Result<String> {
    Ok(format!("t2:{:05x}", cox_to_form(cox)?))
}

pub fn enumerate_t2(shard: Shard) -> Result<(Vec<FormClass>, Vec<HirzElem>)> {
    let problem = t2_problem()?;
    let classes = problem.classes(shard);
    Ok((classes, problem.tree.action().elements().to_vec()))
}

pub fn run_t2(shard: Shard) -> Result<Vec<CurveRecord>> {
    let (classes, elems) = enumerate_t2(shard)?;
    classes
        .into_iter()
        .map(|c| {
            let stab: Vec<HirzElem> = c.fixing.iter().map(|&i| elems[i]).collect();
            CurveRecord::new(Stratum::T2, t2_model_string(c.form)?, c.counts, &fingerprint(&stab)?)
        })
        .collect()
}

/// Evaluates Cox coefficients at a point.
pub fn eval_cox(ctx: &FieldCtx, cox: u64, p: &[FieldElem]) -> FieldElem {
    dot(cox, &cox_values(ctx, p, None))
}
