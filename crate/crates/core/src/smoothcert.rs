//! Smoothness certification by closed-point tables.
//!
//! For a family of curves given by a coefficient vector (at most 64 bits), each
//! closed point P of the ambient space of degree d <= 6 carries up to five
//! F_2-linear functionals with values in F_{2^d}: the value of the equation at P
//! first, then the local derivative conditions. The curve passes through P iff
//! the first functional vanishes and is singular at P iff all of them vanish.
//! Values are packed 6 bits per functional into a u32 lane per point, so a
//! Gray-code sweep over an affine family updates every point with one XOR.
//!
//! On an irreducible curve of arithmetic genus 6 a singular closed point of
//! degree d contributes delta >= d, so its singular points have degree <= 6.
//! A reducible curve can be singular only where two components meet, which
//! may happen in a single point of high degree; the strata rule those
//! configurations out separately.

use crate::binfield::{small_field, FieldElem};
use crate::error::{CensusError, Result};
use crate::polyform::{resultant_y, BinPoly, Form, FormSpace};

pub const MAX_DEGREE: u32 = 6;
const BITS: u32 = 6;
const MAX_FUNCTIONALS: usize = 5;

/// A closed point with the functionals attached to it.
#[derive(Clone, Debug)]
pub struct PointFunctionals {
    pub degree: u32,
    pub coords: Vec<FieldElem>,
    /// functionals[i][c] = value of functional i on coefficient basis vector c;
    /// functional 0 is evaluation of the equation.
    pub functionals: Vec<Vec<FieldElem>>,
}

/// Outcome of a smoothness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub smooth: bool,
    /// (field degree, coordinates) of a singular point when not smooth.
    pub witness: Option<(u32, Vec<FieldElem>)>,
}

/// Packed functional columns for every closed point of an ambient space.
#[derive(Clone, Debug)]
pub struct SweepTable {
    ncoeffs: usize,
    degrees: Vec<u32>,
    coords: Vec<Vec<FieldElem>>,
    /// cols[c][p]: packed functionals of basis vector c at point p
    cols: Vec<Vec<u32>>,
}

fn pack(vals: &[FieldElem]) -> u32 {
    vals.iter().enumerate().fold(0u32, |acc, (i, v)| acc | (v.0 << (BITS * i as u32)))
}

const ON_MASK: u32 = (1 << BITS) - 1;

impl SweepTable {
    pub fn new(points: Vec<PointFunctionals>, ncoeffs: usize) -> Self {
        let mut cols = vec![Vec::with_capacity(points.len()); ncoeffs];
        let mut degrees = Vec::with_capacity(points.len());
        let mut coords = Vec::with_capacity(points.len());
        for p in points {
            assert!(p.degree <= MAX_DEGREE && !p.functionals.is_empty());
            assert!(p.functionals.len() <= MAX_FUNCTIONALS);
            for (c, col) in cols.iter_mut().enumerate() {
                let vals: Vec<FieldElem> = p.functionals.iter().map(|f| f[c]).collect();
                col.push(pack(&vals));
            }
            degrees.push(p.degree);
            coords.push(p.coords);
        }
        SweepTable { ncoeffs, degrees, coords, cols }
    }

    pub fn num_points(&self) -> usize {
        self.degrees.len()
    }

    pub fn ncoeffs(&self) -> usize {
        self.ncoeffs
    }

    /// Number of closed points of each degree 1..=6 of the ambient.
    pub fn ambient_closed_points(&self) -> [u64; 6] {
        let mut out = [0u64; 6];
        for &d in &self.degrees {
            out[d as usize - 1] += 1;
        }
        out
    }

    pub fn lanes(&self, coeffs: u64) -> Vec<u32> {
        let mut acc = vec![0u32; self.num_points()];
        self.xor_vector(&mut acc, coeffs);
        acc
    }

    fn xor_vector(&self, acc: &mut [u32], v: u64) {
        let mut v = v;
        while v != 0 {
            let c = v.trailing_zeros() as usize;
            for (a, x) in acc.iter_mut().zip(&self.cols[c]) {
                *a ^= *x;
            }
            v &= v - 1;
        }
    }

    pub fn certify(&self, coeffs: u64) -> SingularityReport {
        let lanes = self.lanes(coeffs);
        match lanes.iter().position(|&x| x == 0) {
            None => SingularityReport { smooth: true, witness: None },
            Some(p) => SingularityReport { smooth: false, witness: Some((self.degrees[p], self.coords[p].clone())) },
        }
    }

    pub fn is_smooth(&self, coeffs: u64) -> bool {
        self.lanes(coeffs).iter().all(|&x| x != 0)
    }

    /// Closed points of degree 1..=6 on the curve.
    pub fn closed_point_counts(&self, coeffs: u64) -> [u64; 6] {
        counts_from_lanes(&self.lanes(coeffs), &self.degrees)
    }

    /// Calls `visit(coeffs, lanes)` for every smooth member of the affine
    /// family offset + span(basis), in Gray-code order.
    pub fn sweep(&self, offset: u64, basis: &[u64], mut visit: impl FnMut(u64, &[u32])) {
        assert!(basis.len() < 40);
        let deltas: Vec<Vec<u32>> = basis.iter().map(|&b| self.lanes(b)).collect();
        let mut cur = self.lanes(offset);
        let mut coeffs = offset;
        let total: u64 = 1u64 << basis.len();
        let mut i: u64 = 0;
        loop {
            if cur.iter().copied().min().unwrap_or(1) != 0 {
                visit(coeffs, &cur);
            }
            i += 1;
            if i == total {
                break;
            }
            let j = i.trailing_zeros() as usize;
            coeffs ^= basis[j];
            for (a, d) in cur.iter_mut().zip(&deltas[j]) {
                *a ^= *d;
            }
        }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
}

/// Whether the equation vanishes at the point of a packed lane.
#[inline]
pub fn lane_on_curve(lane: u32) -> bool {
    lane & ON_MASK == 0
}

/// b_1..b_6 from packed lanes: points where the equation vanishes.
pub fn counts_from_lanes(lanes: &[u32], degrees: &[u32]) -> [u64; 6] {
    let mut out = [0u64; 6];
    for (l, &d) in lanes.iter().zip(degrees) {
        if l & ON_MASK == 0 {
            out[d as usize - 1] += 1;
        }
    }
    out
}

/// N_1..N_6 from closed-point counts b_1..b_6.
pub fn counts_from_closed(b: &[u64; 6]) -> [i64; 6] {
    let mut n = [0i64; 6];
    for k in 1..=6usize {
        n[k - 1] = (1..=k).filter(|d| k % d == 0).map(|d| (d as u64 * b[d - 1]) as i64).sum();
    }
    n
}

/// Frobenius orbit representative test: the coordinate tuple is minimal among
/// its conjugates (coordinates must already be normalized).
pub fn is_orbit_rep(coords: &[FieldElem], d: u32) -> bool {
    let f = small_field(d);
    let mut cur = coords.to_vec();
    for _ in 1..d {
        for c in cur.iter_mut() {
            *c = f.square(*c);
        }
        if cur.as_slice() < coords {
            return false;
        }
    }
    true
}

/// Degree of the field generated by the coordinates, inside F_{2^d}.
pub fn exact_degree(coords: &[FieldElem], d: u32) -> u32 {
    let f = small_field(d);
    let mut l = 1u32;
    for &c in coords {
        let m = f.min_subfield_degree(c);
        l = num_integer::lcm(l, m);
    }
    l
}

/// Normalized points of P^{n-1} over F_{2^d} (first nonzero coordinate 1).
pub fn projective_points(n: usize, d: u32) -> Vec<Vec<FieldElem>> {
    let q = 1u32 << d;
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = (q as u64).pow(free as u32);
        for idx in 0..total {
            let mut v = vec![FieldElem::ZERO; n];
            v[lead] = FieldElem::ONE;
            let mut r = idx;
            for c in v.iter_mut().skip(lead + 1) {
                *c = FieldElem((r % q as u64) as u32);
                r /= q as u64;
            }
            out.push(v);
        }
    }
    out
}

/// Closed points of degree exactly d of a product of projective spaces
/// (block sizes given), one per Frobenius orbit, coordinates concatenated.
pub fn product_closed_points(blocks: &[usize], d: u32) -> Vec<Vec<FieldElem>> {
    let mut acc: Vec<Vec<FieldElem>> = vec![Vec::new()];
    for &n in blocks {
        let pts = projective_points(n, d);
        let mut next = Vec::with_capacity(acc.len() * pts.len());
        for a in &acc {
            for p in &pts {
                let mut v = a.clone();
                v.extend_from_slice(p);
                next.push(v);
            }
        }
        acc = next;
    }
    acc.into_iter().filter(|p| exact_degree(p, d) == d && is_orbit_rep(p, d)).collect()
}

/// Table for a space of multi-homogeneous forms on a product of projective
/// spaces: the equation value and all first partial derivatives.
pub fn form_space_table(space: &FormSpace) -> SweepTable {
    let blocks: Vec<usize> = space.blocks().iter().map(|b| b.0).collect();
    let nv = space.nvars();
    assert!(nv < MAX_FUNCTIONALS);
    let mut pts = Vec::new();
    for d in 1..=MAX_DEGREE {
        let ctx = small_field(d);
        for p in product_closed_points(&blocks, d) {
            let mut functionals = vec![space.monomial_values(ctx, &p)];
            for v in 0..nv {
                functionals.push(space.partial_values(ctx, &p, v));
            }
            pts.push(PointFunctionals { degree: d, coords: p, functionals });
        }
    }
    SweepTable::new(pts, space.dim())
}

/// Checks a form directly (without a precomputed table).
pub fn certify_form(f: &Form) -> SingularityReport {
    form_space_table(&f.space).certify(f.coeffs)
}

/// Monomials (exponent vectors) of the partial derivative in `var`.
fn partial_terms(space: &FormSpace, coeffs: u64, var: usize) -> Vec<Vec<u8>> {
    let mut terms: std::collections::BTreeMap<Vec<u8>, bool> = std::collections::BTreeMap::new();
    for (i, m) in space.monomials().iter().enumerate() {
        if (coeffs >> i) & 1 == 1 && m[var] % 2 == 1 {
            let mut e = m.clone();
            e[var] -= 1;
            let t = terms.entry(e).or_insert(false);
            *t = !*t;
        }
    }
    terms.retain(|_, v| *v);
    terms.into_keys().collect()
}

fn chart_poly(terms: &[Vec<u8>], xv: usize, yv: usize) -> Vec<BinPoly> {
    let mut out = vec![BinPoly::ZERO; 8];
    for e in terms {
        out[e[yv] as usize] += BinPoly::monomial(e[xv] as u32);
    }
    out
}

/// Quick test on ternary quintics: returns false only when F is provably
/// singular. Three sound rules: a singular F_2-rational point; a partial
/// derivative that vanishes identically (the other two then meet in P^2 and
/// every common zero of the partials lies on F); two partials sharing a
/// factor that involves y in the chart z = 1 (again the third meets it).
pub fn plane_prefilter(f: &Form) -> Result<bool> {
    let space = &f.space;
    if space.blocks() != [(3, 5)] {
        return Err(CensusError::InvalidArgument("plane_prefilter expects ternary quintics".into()));
    }
    if f.coeffs == 0 {
        return Err(CensusError::InvalidArgument("zero form".into()));
    }
    let zero = FieldElem::ZERO;
    let f1 = small_field(1);
    for v in 1u32..8 {
        let p = [FieldElem(v & 1), FieldElem((v >> 1) & 1), FieldElem((v >> 2) & 1)];
        let mut all = crate::polyform::dot(f.coeffs, &space.monomial_values(f1, &p)) == zero;
        for var in 0..3 {
            all &= crate::polyform::dot(f.coeffs, &space.partial_values(f1, &p, var)) == zero;
        }
        if all {
            return Ok(false);
        }
    }
    let partials: Vec<Vec<Vec<u8>>> = (0..3).map(|v| partial_terms(space, f.coeffs, v)).collect();
    if partials.iter().any(|p| p.is_empty()) {
        return Ok(false);
    }
    for a in 0..3 {
        for b in a + 1..3 {
            let pa = chart_poly(&partials[a], 0, 1);
            let pb = chart_poly(&partials[b], 0, 1);
            let ya = pa.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
            let yb = pb.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
            if ya > 0 && yb > 0 && resultant_y(&pa, &pb).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sufficient smoothness condition for ternary quintics by elimination: in
/// each standard chart, the resultants in y of (F_x, F_y) and (F_x, F_z) have
/// no common root and neither vanishes identically. Returns true only when
/// smoothness is proven; false means "not proven".
pub fn plane_resultant_certificate(f: &Form) -> bool {
    let space = &f.space;
    let partials: Vec<Vec<Vec<u8>>> = (0..3).map(|v| partial_terms(space, f.coeffs, v)).collect();
    // charts: (x variable, y variable, dehomogenized variable)
    for (xv, yv, _zv) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        let polys: Vec<Vec<BinPoly>> = partials.iter().map(|p| chart_poly(p, xv, yv)).collect();
        let r1 = resultant_y(&polys[0], &polys[1]);
        let r2 = resultant_y(&polys[0], &polys[2]);
        let r3 = resultant_y(&polys[1], &polys[2]);
        let nz: Vec<BinPoly> = [r1, r2, r3].into_iter().filter(|r| !r.is_zero()).collect();
        if nz.len() < 2 {
            return false;
        }
        let g = nz.iter().fold(BinPoly::ZERO, |acc, &r| crate::polyform::gcd(acc, r));
        if g.deg() > 0 {
            return false;
        }
    }
    true
}
