//! Bielliptic curves of genus 6 over F_2: double covers z^2 + z = f of the
//! five elliptic curves over F_2.
//!
//! A cover of genus 6 is ramified along 2D for an effective divisor D of
//! degree 5 on the base. For each D (up to automorphisms of the base as a
//! genus-one curve) the classes of f modulo h^2 + h are swept in
//! L(2D + 2O) / ℘(L(D + O)); the extra poles at O absorb the obstruction to
//! realising a class with poles on supp D alone. Local Artin–Schreier
//! reduction at each pole gives the ramification.
//!
//! Two covers of the same base with the same D are isomorphic over σ exactly
//! when f' + f∘σ lies in ℘(K(E)). This is decided on the points of degree 9:
//! a nonzero class ramified only on supp D gives a cover of genus at most 6,
//! and the Weil bound then forbids it from splitting at every point of degree
//! 9, while the constant class is inert there.

pub mod curve;
pub mod mass;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::binfield::{small_field, FieldCtx, FieldElem};
use crate::census::CurveRecord;
use crate::error::{CensusError, Result};
use crate::groupact::{fingerprint, GroupLike};
use crate::linalg::{solve_f2, Subspace64};
use crate::polyform::BinPoly;
use crate::smoothcert::counts_from_closed;
use crate::strata::{Shard, Stratum};

use curve::{eval_fn, expand_fn, join_fn, monomial_expansions, mul_fn, BaseCurve, CurveAut, Pt, Ser};
pub use mass::{mass_closed_form, mass_integral};

const ZERO: FieldElem = FieldElem::ZERO;
const ONE: FieldElem = FieldElem::ONE;

/// Relative precision of local expansions.
const LEN: usize = 64;
/// Largest pole order at O of a numerator.
const MAX_POLE: u32 = 30;
/// Degree of the points used to compare covers.
const TEST_DEGREE: u32 = 9;
pub const DIVISOR_DEGREE: u32 = 5;

/// Effective divisor as sorted (closed point index, multiplicity) pairs.
pub type Divisor = Vec<(usize, u32)>;

/// A base curve with everything that does not depend on D.
pub struct Base {
    pub curve: BaseCurve,
    /// Monomial expansions at closed points of degree <= 5.
    monos: Vec<Option<Vec<Option<Ser>>>>,
    /// Points of exact degree TEST_DEGREE.
    omega: Vec<Pt>,
    /// omega_perm[s][i] = index of auts[s](omega[i])
    omega_perm: Vec<Vec<u32>>,
    /// compose[a][b] = index of auts[a] ∘ auts[b]
    compose: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl Base {
    pub fn new(index: usize) -> Base {
        let curve = BaseCurve::new(index);
        let monos = curve
            .closed
            .iter()
            .map(|cp| {
                (cp.deg <= DIVISOR_DEGREE)
                    .then(|| monomial_expansions(&curve.e, small_field(cp.deg), cp.rep, MAX_POLE, LEN))
            })
            .collect();
        let ctx = small_field(TEST_DEGREE);
        let omega: Vec<Pt> = curve
            .e
            .points(ctx)
            .into_iter()
            .filter(|&p| curve::Weierstrass::point_degree(ctx, p) == TEST_DEGREE)
            .collect();
        let pos: HashMap<Pt, u32> = omega.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
        let omega_perm: Vec<Vec<u32>> =
            curve.auts.iter().map(|a| omega.iter().map(|&p| pos[&a.apply(&curve.e, ctx, p)]).collect()).collect();
        let by_perm: HashMap<&Vec<u32>, usize> = omega_perm.iter().enumerate().map(|(i, p)| (p, i)).collect();
        assert_eq!(by_perm.len(), curve.auts.len(), "automorphisms must act faithfully");
        let n = curve.auts.len();
        let compose: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let p: Vec<u32> = omega_perm[b].iter().map(|&i| omega_perm[a][i as usize]).collect();
                        by_perm[&p]
                    })
                    .collect()
            })
            .collect();
        let identity = curve.auts.iter().position(|a| a.rsu == [0, 0, 0] && a.t == Pt::O).unwrap();
        let inverse = (0..n).map(|a| (0..n).find(|&b| compose[a][b] == identity).unwrap()).collect();
        Base { curve, monos, omega, omega_perm, compose, inverse, identity }
    }

    fn origin(&self) -> usize {
        0
    }

    fn neg_closed(&self, idx: usize) -> usize {
        let cp = &self.curve.closed[idx];
        let ctx = small_field(cp.deg);
        self.curve.closed_index(cp.deg, self.curve.e.neg(ctx, cp.rep))
    }

    fn monos_at(&self, idx: usize) -> &[Option<Ser>] {
        self.monos[idx].as_ref().expect("expansions are kept for points of degree at most 5")
    }

    /// Effective divisors of the given degree, as orbit representatives under
    /// the automorphisms, each with its stabilizer.
    pub fn divisor_orbits(&self, degree: u32) -> Vec<(Divisor, Vec<usize>)> {
        let pts: Vec<usize> = (0..self.curve.closed.len()).filter(|&i| self.curve.closed[i].deg <= degree).collect();
        let mut all = Vec::new();
        let mut cur = Vec::new();
        divisors_rec(&self.curve, &pts, 0, degree, &mut cur, &mut all);
        let mut out = Vec::new();
        for d in all {
            let mut stab = Vec::new();
            let mut minimal = true;
            for (s, a) in self.curve.auts.iter().enumerate() {
                let img = self.act_divisor(a, &d);
                if img < d {
                    minimal = false;
                    break;
                }
                if img == d {
                    stab.push(s);
                }
            }
            if minimal {
                out.push((d, stab));
            }
        }
        out
    }

    fn act_divisor(&self, a: &CurveAut, d: &Divisor) -> Divisor {
        let mut img: Divisor = d.iter().map(|&(p, m)| (self.curve.act_closed(a, p), m)).collect();
        img.sort_unstable();
        img
    }

    /// Riemann–Roch space L(A) for A = fin + a_o O, as numerators over
    /// psi = prod m_P(x)^{a_P}.
    fn riemann_roch(&self, fin: &Divisor, a_o: u32) -> Result<RrSpace> {
        let mut psi = BinPoly::ONE;
        for &(p, m) in fin {
            psi = psi.mul(self.curve.x_minpoly(p).pow(m));
        }
        let psi_fn = join_fn(psi, BinPoly::ZERO);
        let top = 2 * psi.deg() as u32 + a_o;
        if top > MAX_POLE {
            return Err(CensusError::Degenerate(format!("numerator pole order {top} exceeds {MAX_POLE}")));
        }
        let mut zeros: Vec<usize> = fin.iter().flat_map(|&(p, _)| [p, self.neg_closed(p)]).collect();
        zeros.sort_unstable();
        zeros.dedup();
        let mult = |p: usize| fin.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, m)| m);
        let mut rows = Vec::new();
        for &r in &zeros {
            let monos = self.monos_at(r);
            let e = expand_fn(monos, psi_fn).normalized().val;
            let need = e - mult(r) as i32;
            let d = self.curve.closed[r].deg;
            for i in 0..need {
                for b in 0..d {
                    let mut row = 0u64;
                    for j in 0..=top {
                        if j != 1 && (monos[j as usize].as_ref().unwrap().coeff(i).0 >> b) & 1 == 1 {
                            row |= 1 << j;
                        }
                    }
                    rows.push((row, false));
                }
            }
        }
        // pole order one is impossible: pin that coordinate to zero
        rows.push((2, false));
        let (_, basis) = solve_f2(&rows, top + 1).expect("homogeneous system");
        let degree: u32 = fin.iter().map(|&(p, m)| m * self.curve.closed[p].deg).sum::<u32>() + a_o;
        if basis.len() != degree as usize {
            return Err(CensusError::Degenerate(format!("L(A) has dimension {} but deg A = {degree}", basis.len())));
        }
        Ok(RrSpace { psi: psi_fn, basis })
    }

    /// Expansion of numerator/psi at a closed point of degree <= 5.
    fn expand_quotient(&self, idx: usize, num: u64, psi: u64) -> Result<Ser> {
        let ctx = small_field(self.curve.closed[idx].deg);
        let monos = self.monos_at(idx);
        Ok(expand_fn(monos, num).mul(ctx, &expand_fn(monos, psi).inv(ctx)?))
    }
}

fn divisors_rec(c: &BaseCurve, pts: &[usize], start: usize, left: u32, cur: &mut Divisor, out: &mut Vec<Divisor>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..pts.len() {
        let d = c.closed[pts[i]].deg;
        let mut m = 1;
        while m * d <= left {
            cur.push((pts[i], m));
            divisors_rec(c, pts, i + 1, left - m * d, cur, out);
            cur.pop();
            m += 1;
        }
    }
}

struct RrSpace {
    psi: u64,
    basis: Vec<u64>,
}

/// Reduced local behaviour of f at a closed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Local {
    Ramified(u32),
    Unramified(FieldElem),
}

/// Artin–Schreier reduction of the window t^{-m} ..= t^0.
fn reduce_window(ctx: &FieldCtx, w: &[FieldElem]) -> Local {
    let m = w.len() - 1;
    let mut w = w.to_vec();
    for i in (1..=m).rev() {
        let c = w[m - i];
        if c == ZERO {
            continue;
        }
        if i % 2 == 1 {
            return Local::Ramified(i as u32);
        }
        w[m - i] = ZERO;
        w[m - i / 2] += ctx.sqrt(c);
    }
    Local::Unramified(w[m])
}

/// A cover z^2 + z = num / psi over one D.
#[derive(Clone, Debug)]
struct Candidate {
    num: u64,
    /// f on the test points
    omega_vals: Vec<FieldElem>,
    sig: Vec<u64>,
    /// Closed points of the cover by degree 1..=6.
    closed: [u64; 6],
}

/// An automorphism of the cover: σ on the base with z -> z + k.
#[derive(Clone)]
pub struct Lift {
    tables: Arc<LiftTables>,
    sigma: usize,
    /// k on the test points
    k: Vec<FieldElem>,
}

struct LiftTables {
    omega_perm: Vec<Vec<u32>>,
    compose: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl PartialEq for Lift {
    fn eq(&self, o: &Lift) -> bool {
        self.sigma == o.sigma && self.k == o.k
    }
}
impl Eq for Lift {}

impl std::fmt::Debug for Lift {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lift(σ{}, k[0]={:?})", self.sigma, self.k.first())
    }
}

impl GroupLike for Lift {
    /// `self ∘ o`: (σ1, k1)(σ2, k2) = (σ1σ2, k2 + k1∘σ2)
    fn mul(&self, o: &Lift) -> Lift {
        let t = &self.tables;
        let perm = &t.omega_perm[o.sigma];
        let k = o.k.iter().zip(perm).map(|(&a, &i)| a + self.k[i as usize]).collect();
        Lift { tables: self.tables.clone(), sigma: t.compose[self.sigma][o.sigma], k }
    }

    fn inv(&self) -> Lift {
        let t = &self.tables;
        let si = t.inverse[self.sigma];
        let perm = &t.omega_perm[si];
        let k = perm.iter().map(|&i| self.k[i as usize]).collect();
        Lift { tables: self.tables.clone(), sigma: si, k }
    }

    fn is_identity(&self) -> bool {
        self.sigma == self.tables.identity && self.k.iter().all(|&v| v == ZERO)
    }
}

/// One isomorphism class of bielliptic curves.
#[derive(Clone, Debug)]
pub struct BiellClass {
    pub base: usize,
    pub divisor: Divisor,
    pub num: u64,
    pub counts: [i64; 6],
    pub automorphisms: Vec<Lift>,
}

impl BiellClass {
    pub fn model_string(&self) -> String {
        let d: Vec<String> = self.divisor.iter().map(|&(p, m)| format!("p{p}^{m}")).collect();
        format!("biell:{}:{}:{:08x}", self.base, d.join("+"), self.num)
    }
}

/// Per-D precomputation and sweep.
struct DivisorSweep<'a> {
    base: &'a Base,
    divisor: Divisor,
    fin: Divisor,
    d_o: u32,
    stab: Vec<usize>,
    psi2: u64,
    /// Pole points with window depth.
    poles: Vec<(usize, u32)>,
    comp: Vec<u64>,
}

impl<'a> DivisorSweep<'a> {
    fn new(base: &'a Base, divisor: Divisor, stab: Vec<usize>) -> Result<Self> {
        let o = base.origin();
        let d_o = divisor.iter().find(|&&(p, _)| p == o).map_or(0, |&(_, m)| m);
        let fin: Divisor = divisor.iter().copied().filter(|&(p, _)| p != o).collect();
        let fin2: Divisor = fin.iter().map(|&(p, m)| (p, 2 * m)).collect();
        let rr2 = base.riemann_roch(&fin2, 2 + 2 * d_o)?;
        let rr1 = base.riemann_roch(&fin, 1 + d_o)?;
        debug_assert_eq!(mul_fn(&base.curve.e, rr1.psi, rr1.psi), rr2.psi);
        let n2 = Subspace64::from_vectors(rr2.basis.iter().copied());
        let mut w = Subspace64::new();
        for &g in &rr1.basis {
            let v = mul_fn(&base.curve.e, g, g) ^ mul_fn(&base.curve.e, g, rr1.psi);
            if !n2.contains(v) {
                return Err(CensusError::Degenerate("h^2 + h escapes L(2D + 2O)".into()));
            }
            w.insert(v);
        }
        if w.dim() + 1 != rr1.basis.len() {
            return Err(CensusError::Degenerate(format!("℘-image has dimension {}", w.dim())));
        }
        let mut comp = Subspace64::new();
        for &b in &rr2.basis {
            let r = w.reduce(b);
            if r != 0 {
                let mut s = comp.clone();
                if s.insert(r) {
                    comp = s;
                }
            }
        }
        // reduce complement vectors against W and each other so every
        // combination is the canonical coset representative
        let comp: Vec<u64> = comp.basis().iter().map(|&v| w.reduce(v)).collect();
        let mut poles: Vec<(usize, u32)> = fin.iter().map(|&(p, m)| (p, 2 * m)).collect();
        poles.push((o, 2 + 2 * d_o));
        Ok(DivisorSweep { base, divisor, fin, d_o, stab, psi2: rr2.psi, poles, comp })
    }

    fn window(&self, idx: usize, depth: u32, num: u64) -> Result<Vec<FieldElem>> {
        let s = self.base.expand_quotient(idx, num, self.psi2)?;
        Ok(s.window(-(depth as i32), 0))
    }

    fn value_at(&self, idx: usize, num: u64) -> Result<FieldElem> {
        let cp = &self.base.curve.closed[idx];
        let ctx = small_field(cp.deg);
        let den = eval_fn(ctx, self.psi2, cp.rep);
        if den != ZERO {
            return Ok(ctx.div(eval_fn(ctx, num, cp.rep), den));
        }
        Ok(self.window(idx, 0, num)?[0])
    }

    fn expected(&self, idx: usize) -> Local {
        if idx == self.base.origin() {
            if self.d_o == 0 {
                return Local::Unramified(ZERO);
            }
            return Local::Ramified(2 * self.d_o - 1);
        }
        let m = self.fin.iter().find(|&&(p, _)| p == idx).unwrap().1;
        Local::Ramified(2 * m - 1)
    }

    fn candidates(&self) -> Result<Vec<Candidate>> {
        let base = self.base;
        let windows: Vec<Vec<Vec<FieldElem>>> = self
            .comp
            .iter()
            .map(|&b| self.poles.iter().map(|&(p, d)| self.window(p, d, b)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let mut cur: Vec<Vec<FieldElem>> = self.poles.iter().map(|&(_, d)| vec![ZERO; d as usize + 1]).collect();
        let mut num = 0u64;
        let mut out = Vec::new();
        let total = 1u64 << self.comp.len();
        for i in 0..total {
            if i > 0 {
                let j = i.trailing_zeros() as usize;
                num ^= self.comp[j];
                for (c, w) in cur.iter_mut().zip(&windows[j]) {
                    for (a, b) in c.iter_mut().zip(w) {
                        *a += *b;
                    }
                }
            }
            let ok = self.poles.iter().zip(&cur).all(|(&(p, _), w)| {
                let ctx = small_field(base.curve.closed[p].deg);
                match (reduce_window(ctx, w), self.expected(p)) {
                    (Local::Ramified(a), Local::Ramified(b)) => a == b,
                    (Local::Unramified(_), Local::Unramified(_)) => true,
                    _ => false,
                }
            });
            if ok {
                out.push(self.candidate(num, &cur)?);
            }
        }
        Ok(out)
    }

    fn candidate(&self, num: u64, windows: &[Vec<FieldElem>]) -> Result<Candidate> {
        let base = self.base;
        let c = &base.curve;
        let mut closed = [0u64; 6];
        for (idx, cp) in c.closed.iter().enumerate() {
            let d = cp.deg;
            let ctx = small_field(d);
            let local = match self.poles.iter().position(|&(p, _)| p == idx) {
                Some(k) => reduce_window(ctx, &windows[k]),
                None => Local::Unramified(self.value_at(idx, num)?),
            };
            match local {
                Local::Ramified(_) => closed[d as usize - 1] += 1,
                Local::Unramified(v) if ctx.trace(v) == 0 => closed[d as usize - 1] += 2,
                Local::Unramified(_) => {
                    if 2 * d <= 6 {
                        closed[2 * d as usize - 1] += 1;
                    }
                }
            }
        }
        let ctx9 = small_field(TEST_DEGREE);
        let omega_vals: Vec<FieldElem> =
            base.omega.iter().map(|&p| ctx9.div(eval_fn(ctx9, num, p), eval_fn(ctx9, self.psi2, p))).collect();
        let mut sig = vec![0u64; omega_vals.len().div_ceil(64)];
        for (i, &v) in omega_vals.iter().enumerate() {
            sig[i / 64] |= (ctx9.trace(v) as u64) << (i % 64);
        }
        Ok(Candidate { num, omega_vals, sig, closed })
    }

    /// (σ·sig)[P] = sig[σP]
    fn act_sig(&self, s: usize, sig: &[u64]) -> Vec<u64> {
        let perm = &self.base.omega_perm[s];
        let mut out = vec![0u64; sig.len()];
        for (i, &j) in perm.iter().enumerate() {
            let j = j as usize;
            out[i / 64] |= ((sig[j / 64] >> (j % 64)) & 1) << (i % 64);
        }
        out
    }

    fn classes(&self, tables: &Arc<LiftTables>) -> Result<Vec<BiellClass>> {
        let cands = self.candidates()?;
        let mut groups: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
        for (i, c) in cands.iter().enumerate() {
            let key = self.stab.iter().map(|&s| self.act_sig(s, &c.sig)).min().unwrap();
            groups.entry(key).or_default().push(i);
        }
        let mut out = Vec::new();
        for members in groups.values() {
            let rep = &cands[*members.iter().min_by_key(|&&i| cands[i].num).unwrap()];
            let fixing: Vec<usize> =
                self.stab.iter().copied().filter(|&s| self.act_sig(s, &rep.sig) == rep.sig).collect();
            let mut automorphisms = Vec::new();
            for &s in &fixing {
                let k = self.solve_lift(s, rep)?;
                automorphisms.push(Lift { tables: tables.clone(), sigma: s, k: k.clone() });
                automorphisms.push(Lift { tables: tables.clone(), sigma: s, k: k.iter().map(|&v| v + ONE).collect() });
            }
            out.push(BiellClass {
                base: self.base.curve.index,
                divisor: self.divisor.clone(),
                num: rep.num,
                counts: counts_from_closed(&rep.closed),
                automorphisms,
            });
        }
        Ok(out)
    }

    /// k in L(D + O + σ^{-1}O) with k^2 + k = f∘σ + f, on the test points.
    fn solve_lift(&self, s: usize, rep: &Candidate) -> Result<Vec<FieldElem>> {
        let base = self.base;
        let sinv = base.inverse[s];
        let q = base.curve.auts[sinv].t;
        let mut fin = self.fin.clone();
        let mut a_o = 1 + self.d_o;
        if q == Pt::O {
            a_o += 1;
        } else {
            let qi = base.curve.closed_index(1, q);
            match fin.iter_mut().find(|(p, _)| *p == qi) {
                Some(e) => e.1 += 1,
                None => {
                    fin.push((qi, 1));
                    fin.sort_unstable();
                }
            }
        }
        let rr = base.riemann_roch(&fin, a_o)?;
        let ctx9 = small_field(TEST_DEGREE);
        let perm = &base.omega_perm[s];
        let basis_vals: Vec<Vec<FieldElem>> = rr
            .basis
            .iter()
            .map(|&g| base.omega.iter().map(|&p| ctx9.div(eval_fn(ctx9, g, p), eval_fn(ctx9, rr.psi, p))).collect())
            .collect();
        let mut rows = Vec::new();
        for (i, &j) in perm.iter().enumerate() {
            let phi = rep.omega_vals[j as usize] + rep.omega_vals[i];
            for b in 0..TEST_DEGREE {
                let mut row = 0u64;
                for (c, vals) in basis_vals.iter().enumerate() {
                    let v = vals[i];
                    if ((ctx9.square(v) + v).0 >> b) & 1 == 1 {
                        row |= 1 << c;
                    }
                }
                rows.push((row, (phi.0 >> b) & 1 == 1));
            }
        }
        let (sol, _) = solve_f2(&rows, rr.basis.len() as u32)
            .ok_or_else(|| CensusError::Degenerate("automorphism does not lift".into()))?;
        Ok((0..base.omega.len())
            .map(|i| {
                basis_vals.iter().enumerate().filter(|(c, _)| (sol >> c) & 1 == 1).fold(ZERO, |acc, (_, v)| acc + v[i])
            })
            .collect())
    }
}

/// All classes over one base curve, restricted to D-orbits owned by the shard.
/// `item` numbers the work items across calls.
pub fn classes_for_base(base: &Base, shard: Shard, item: &mut usize) -> Result<Vec<BiellClass>> {
    let tables = Arc::new(LiftTables {
        omega_perm: base.omega_perm.clone(),
        compose: base.compose.clone(),
        inverse: base.inverse.clone(),
        identity: base.identity,
    });
    let mut out = Vec::new();
    for (d, stab) in base.divisor_orbits(DIVISOR_DEGREE) {
        let mine = shard.owns(*item);
        *item += 1;
        if !mine {
            continue;
        }
        out.extend(DivisorSweep::new(base, d, stab)?.classes(&tables)?);
    }
    Ok(out)
}

pub fn enumerate(shard: Shard) -> Result<Vec<BiellClass>> {
    let mut item = 0;
    let mut out = Vec::new();
    for i in 0..curve::BASES.len() {
        out.extend(classes_for_base(&Base::new(i), shard, &mut item)?);
    }
    Ok(out)
}

pub fn run(shard: Shard) -> Result<Vec<CurveRecord>> {
    enumerate(shard)?
        .into_iter()
        .map(|c| {
            let fp = fingerprint(&c.automorphisms)?;
            CurveRecord::new(Stratum::Biell, c.model_string(), c.counts, &fp)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_of_windows() {
        let ctx = small_field(1);
        // t^-2 + t^-1 = ℘(t^-1)
        assert_eq!(reduce_window(ctx, &[ONE, ONE, ZERO]), Local::Unramified(ZERO));
        // t^-4 -> t^-2 -> t^-1
        assert_eq!(reduce_window(ctx, &[ONE, ZERO, ZERO, ZERO, ZERO]), Local::Ramified(1));
        assert_eq!(reduce_window(ctx, &[ONE, ZERO, ONE]), Local::Ramified(1));
        assert_eq!(reduce_window(ctx, &[ZERO, ZERO, ONE]), Local::Unramified(ONE));
        assert_eq!(reduce_window(ctx, &[ONE, ZERO, ZERO, ZERO]), Local::Ramified(3));
    }

    #[test]
    fn riemann_roch_dimensions() {
        let base = Base::new(3);
        for (d, _) in base.divisor_orbits(3) {
            let o = base.origin();
            let d_o = d.iter().find(|&&(p, _)| p == o).map_or(0, |&(_, m)| m);
            let fin: Divisor = d.iter().copied().filter(|&(p, _)| p != o).collect();
            base.riemann_roch(&fin, d_o + 1).unwrap();
        }
    }

    #[test]
    fn effective_divisor_counts() {
        // #Eff_n = N_1 (2^n - 1) on a genus-one curve
        for i in 0..5 {
            let base = Base::new(i);
            let n1 = base.curve.rational.len();
            let pts: Vec<usize> = (0..base.curve.closed.len()).filter(|&p| base.curve.closed[p].deg <= 5).collect();
            let mut all = Vec::new();
            divisors_rec(&base.curve, &pts, 0, 5, &mut Vec::new(), &mut all);
            assert_eq!(all.len(), n1 * 31);
            let orbit_total: usize =
                base.divisor_orbits(5).iter().map(|(_, stab)| base.curve.auts.len() / stab.len()).sum();
            assert_eq!(orbit_total, all.len());
        }
    }
}
