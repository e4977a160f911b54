//! Univariate polynomials over F_2 and F_{2^k}, and dense multi-homogeneous forms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::binfield::{FieldCtx, FieldElem};
use crate::error::{CensusError, Result};

/// A polynomial over F_2 of degree < 64; bit i is the coefficient of x^i.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinPoly(pub u64);

impl fmt::Debug for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..64).rev() {
            if (self.0 >> i) & 1 == 1 {
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                match i {
                    0 => write!(f, "1")?,
                    1 => write!(f, "x")?,
                    _ => write!(f, "x^{i}")?,
                }
            }
        }
        Ok(())
    }
}

impl BinPoly {
    pub const ZERO: BinPoly = BinPoly(0);
    pub const ONE: BinPoly = BinPoly(1);
    pub const X: BinPoly = BinPoly(2);

    pub fn monomial(i: u32) -> BinPoly {
        BinPoly(1u64 << i)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn deg(self) -> i32 {
        63 - self.0.leading_zeros() as i32
    }

    pub fn coeff(self, i: u32) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    pub fn mul(self, other: BinPoly) -> BinPoly {
        if self.is_zero() || other.is_zero() {
            return BinPoly::ZERO;
        }
        assert!(self.deg() + other.deg() < 64, "BinPoly product overflows degree 63");
        let mut r = 0u64;
        let mut b = other.0;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                r ^= self.0 << shift;
            }
            b >>= 1;
            shift += 1;
        }
        BinPoly(r)
    }

    pub fn square(self) -> BinPoly {
        self.mul(self)
    }

    pub fn pow(self, e: u32) -> BinPoly {
        let mut r = BinPoly::ONE;
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn divrem(self, d: BinPoly) -> (BinPoly, BinPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let mut q = 0u64;
        let mut r = self.0;
        while r != 0 && (63 - r.leading_zeros() as i32) >= dd {
            let s = (63 - r.leading_zeros() as i32) - dd;
            q |= 1u64 << s;
            r ^= d.0 << s;
        }
        (BinPoly(q), BinPoly(r))
    }

    pub fn rem(self, d: BinPoly) -> BinPoly {
        self.divrem(d).1
    }

    pub fn derivative(self) -> BinPoly {
        // d/dx x^i = i x^(i-1); only odd i survive
        BinPoly((self.0 >> 1) & 0x5555_5555_5555_5555)
    }

    /// Square root of a polynomial that is a perfect square.
    pub fn sqrt(self) -> Option<BinPoly> {
        if self.0 & 0xAAAA_AAAA_AAAA_AAAA != 0 {
            return None;
        }
        let mut r = 0u64;
        for i in 0..32 {
            if (self.0 >> (2 * i)) & 1 == 1 {
                r |= 1u64 << i;
            }
        }
        Some(BinPoly(r))
    }

    pub fn mulmod(self, other: BinPoly, m: BinPoly) -> BinPoly {
        // operands are reduced mod m, deg m <= 31 keeps the product in range
        self.rem(m).mul(other.rem(m)).rem(m)
    }

    pub fn eval(self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for i in (0..=self.deg().max(0)).rev() {
            acc = ctx.mul(acc, x);
            if self.coeff(i as u32) {
                acc += FieldElem::ONE;
            }
        }
        if self.is_zero() {
            FieldElem::ZERO
        } else {
            acc
        }
    }

    pub fn hex(self) -> String {
        format!("{:x}", self.0)
    }

    pub fn from_hex(s: &str) -> Option<BinPoly> {
        u64::from_str_radix(s, 16).ok().map(BinPoly)
    }
}

impl std::ops::Add for BinPoly {
    type Output = BinPoly;
    fn add(self, rhs: BinPoly) -> BinPoly {
        BinPoly(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for BinPoly {
    fn add_assign(&mut self, rhs: BinPoly) {
        self.0 ^= rhs.0;
    }
}

/// Monic gcd (over F_2 every nonzero polynomial is monic).
pub fn gcd(a: BinPoly, b: BinPoly) -> BinPoly {
    let (mut a, mut b) = (a, b);
    while !b.is_zero() {
        let r = a.rem(b);
        a = b;
        b = r;
    }
    a
}

fn powmod_x2k(k: u32, m: BinPoly) -> BinPoly {
    // x^(2^k) mod m
    let mut h = BinPoly::X.rem(m);
    for _ in 0..k {
        h = h.mulmod(h, m);
    }
    h
}

pub fn is_irreducible(f: BinPoly) -> bool {
    let n = f.deg();
    if n <= 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let n = n as u32;
    if powmod_x2k(n, f) != BinPoly::X.rem(f) {
        return false;
    }
    for p in crate::binfield::prime_factors(n as u64) {
        let h = powmod_x2k(n / p as u32, f) + BinPoly::X;
        if gcd(f, h) != BinPoly::ONE {
            return false;
        }
    }
    true
}

/// Squarefree decomposition: pairs (squarefree factor, multiplicity).
fn squarefree_parts(f: BinPoly) -> Vec<(BinPoly, u32)> {
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree_parts(f.sqrt().expect("zero derivative means square")) {
            out.push((g, 2 * m));
        }
        return out;
    }
    let c = gcd(f, d);
    let mut w = f.divrem(c).0;
    let mut c = c;
    let mut i = 1;
    while w.deg() > 0 {
        let y = gcd(w, c);
        let z = w.divrem(y).0;
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.divrem(y).0;
    }
    if c.deg() > 0 {
        let s = c.sqrt().expect("remaining cofactor is a square");
        for (g, m) in squarefree_parts(s) {
            out.push((g, 2 * m));
        }
    }
    out
}

fn distinct_degree(f: BinPoly) -> Vec<(BinPoly, u32)> {
    let mut out = Vec::new();
    let mut rest = f;
    let mut h = BinPoly::X;
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.mulmod(h, rest);
        let g = gcd(rest, h + BinPoly::X);
        if g.deg() > 0 {
            out.push((g, d as u32));
            rest = rest.divrem(g).0;
            h = h.rem(rest);
        }
    }
    if rest.deg() > 0 {
        out.push((rest, rest.deg() as u32));
    }
    out
}

fn equal_degree(f: BinPoly, d: u32, out: &mut Vec<BinPoly>) {
    if f.deg() as u32 == d {
        out.push(f);
        return;
    }
    // Trace map a + a^2 + ... + a^(2^(d-1)) splits f for some small a.
    let mut seed = 2u64;
    loop {
        let a = BinPoly(seed).rem(f);
        seed += 1;
        if a.deg() < 1 {
            continue;
        }
        let mut t = a;
        let mut cur = a;
        for _ in 1..d {
            cur = cur.mulmod(cur, f);
            t += cur;
        }
        let g = gcd(f, t);
        if g.deg() > 0 && g.deg() < f.deg() {
            equal_degree(g, d, out);
            equal_degree(f.divrem(g).0, d, out);
            return;
        }
    }
}

/// Factorization into irreducibles with multiplicities, sorted.
pub fn factor(f: BinPoly) -> Vec<(BinPoly, u32)> {
    assert!(!f.is_zero(), "factor of zero");
    assert!(f.deg() <= 31, "factor supports degree <= 31");
    let mut acc: BTreeMap<BinPoly, u32> = BTreeMap::new();
    for (sf, mult) in squarefree_parts(f) {
        for (g, d) in distinct_degree(sf) {
            let mut parts = Vec::new();
            equal_degree(g, d, &mut parts);
            for p in parts {
                *acc.entry(p).or_default() += mult;
            }
        }
    }
    acc.into_iter().collect()
}

/// Monic irreducible polynomials of exact degree d over F_2.
pub fn irreducibles_of_degree(d: u32) -> Vec<BinPoly> {
    ((1u64 << d)..(1u64 << (d + 1))).map(BinPoly).filter(|&p| is_irreducible(p)).collect()
}

/// A polynomial over F_{2^k}, coefficients in increasing degree, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPoly(pub Vec<FieldElem>);

impl FPoly {
    pub fn new(mut c: Vec<FieldElem>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        FPoly(c)
    }

    pub fn from_binpoly(p: BinPoly) -> Self {
        FPoly::new((0..=p.deg().max(0) as u32).map(|i| FieldElem(p.coeff(i) as u32)).collect())
    }

    pub fn deg(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn lc(&self) -> FieldElem {
        *self.0.last().unwrap_or(&FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rem(&self, ctx: &FieldCtx, d: &FPoly) -> FPoly {
        assert!(!d.is_zero());
        let mut r = self.0.clone();
        let dd = d.deg() as usize;
        let inv = ctx.inv(d.lc());
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = ctx.mul(r[top], inv);
            if !c.is_zero() {
                for (i, &dc) in d.0.iter().enumerate() {
                    r[top - dd + i] += ctx.mul(c, dc);
                }
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        FPoly::new(r)
    }

    pub fn mul(&self, ctx: &FieldCtx, o: &FPoly) -> FPoly {
        if self.is_zero() || o.is_zero() {
            return FPoly(Vec::new());
        }
        let mut r = vec![FieldElem::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                r[i + j] += ctx.mul(a, b);
            }
        }
        FPoly::new(r)
    }
}

/// Resultant over F_{2^k} (signs are irrelevant in characteristic 2).
pub fn resultant(ctx: &FieldCtx, a: &FPoly, b: &FPoly) -> FieldElem {
    if a.is_zero() || b.is_zero() {
        return FieldElem::ZERO;
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = FieldElem::ONE;
    loop {
        if b.deg() == 0 {
            return ctx.mul(acc, ctx.pow(b.lc(), a.deg() as u64));
        }
        if a.deg() == 0 {
            return ctx.mul(acc, ctx.pow(a.lc(), b.deg() as u64));
        }
        let r = a.rem(ctx, &b);
        if r.is_zero() {
            return FieldElem::ZERO;
        }
        acc = ctx.mul(acc, ctx.pow(b.lc(), (a.deg() - r.deg()) as u64));
        a = b;
        b = r;
    }
}

/// Resultant of two polynomials over F_2.
pub fn resultant_f2(a: BinPoly, b: BinPoly) -> bool {
    let f1 = crate::binfield::small_field(1);
    !resultant(f1, &FPoly::from_binpoly(a), &FPoly::from_binpoly(b)).is_zero()
}

/// Resultant in y of two bivariate polynomials over F_2, each given as its list
/// of coefficients in y (index = power of y) with coefficients in F_2[x].
/// Fraction-free Bareiss elimination on the Sylvester matrix.
pub fn resultant_y(a: &[BinPoly], b: &[BinPoly]) -> BinPoly {
    let trim = |v: &[BinPoly]| {
        let mut v = v.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let a = trim(a);
    let b = trim(b);
    if a.is_empty() || b.is_empty() {
        return BinPoly::ZERO;
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return BinPoly::ONE;
    }
    let mut mat = vec![vec![BinPoly::ZERO; size]; size];
    for i in 0..n {
        for (j, &c) in a.iter().rev().enumerate() {
            mat[i][i + j] = c;
        }
    }
    for i in 0..m {
        for (j, &c) in b.iter().rev().enumerate() {
            mat[n + i][i + j] = c;
        }
    }
    let mut prev = BinPoly::ONE;
    for k in 0..size {
        if mat[k][k].is_zero() {
            let Some(sel) = (k + 1..size).find(|&i| !mat[i][k].is_zero()) else {
                return BinPoly::ZERO;
            };
            mat.swap(k, sel);
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = mat[i][j].mul(mat[k][k]) + mat[i][k].mul(mat[k][j]);
                let (q, r) = v.divrem(prev);
                debug_assert!(r.is_zero());
                mat[i][j] = q;
            }
            mat[i][k] = BinPoly::ZERO;
        }
        prev = mat[k][k];
    }
    mat[size - 1][size - 1]
}

/// Layout of a space of multi-homogeneous forms: blocks of variables with a
/// degree per block, monomials in a fixed dense order (lexicographically
/// decreasing exponents inside a block, earlier blocks most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    blocks: Vec<(usize, u32)>,
    monomials: Vec<Vec<u8>>,
}

fn block_monomials(nvars: usize, deg: u32) -> Vec<Vec<u8>> {
    if nvars == 1 {
        return vec![vec![deg as u8]];
    }
    let mut out = Vec::new();
    for e0 in (0..=deg).rev() {
        for rest in block_monomials(nvars - 1, deg - e0) {
            let mut v = vec![e0 as u8];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

impl FormSpace {
    /// `blocks` lists (number of variables, degree) per block.
    pub fn new(blocks: &[(usize, u32)]) -> Arc<FormSpace> {
        let mut monomials: Vec<Vec<u8>> = vec![Vec::new()];
        for &(n, d) in blocks {
            let bm = block_monomials(n, d);
            let mut next = Vec::with_capacity(monomials.len() * bm.len());
            for m in &monomials {
                for b in &bm {
                    let mut v = m.clone();
                    v.extend(b);
                    next.push(v);
                }
            }
            monomials = next;
        }
        assert!(monomials.len() <= 64, "dense forms are limited to 64 monomials");
        Arc::new(FormSpace { blocks: blocks.to_vec(), monomials })
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn nvars(&self) -> usize {
        self.blocks.iter().map(|b| b.0).sum()
    }

    pub fn blocks(&self) -> &[(usize, u32)] {
        &self.blocks
    }

    pub fn monomials(&self) -> &[Vec<u8>] {
        &self.monomials
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.monomials.iter().position(|m| m.as_slice() == exps)
    }

    fn check_point(&self, point: &[FieldElem]) -> Result<()> {
        assert_eq!(point.len(), self.nvars());
        let mut off = 0;
        for &(n, _) in &self.blocks {
            if point[off..off + n].iter().all(|x| x.is_zero()) {
                return Err(CensusError::ZeroBlock);
            }
            off += n;
        }
        Ok(())
    }

    /// Values of every monomial at a point (coordinates concatenated by block).
    pub fn monomial_values(&self, ctx: &FieldCtx, point: &[FieldElem]) -> Vec<FieldElem> {
        let maxdeg = self.blocks.iter().map(|b| b.1).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<FieldElem>> = point
            .iter()
            .map(|&x| {
                let mut p = vec![FieldElem::ONE; maxdeg + 1];
                for i in 1..=maxdeg {
                    p[i] = ctx.mul(p[i - 1], x);
                }
                p
            })
            .collect();
        self.monomials
            .iter()
            .map(|m| m.iter().enumerate().fold(FieldElem::ONE, |acc, (v, &e)| ctx.mul(acc, powers[v][e as usize])))
            .collect()
    }

    /// Values at a point of d(monomial)/d(var) for every monomial.
    pub fn partial_values(&self, ctx: &FieldCtx, point: &[FieldElem], var: usize) -> Vec<FieldElem> {
        self.monomials
            .iter()
            .map(|m| {
                if m[var] % 2 == 0 {
                    return FieldElem::ZERO;
                }
                m.iter().enumerate().fold(FieldElem::ONE, |acc, (v, &e)| {
                    let e = if v == var { e - 1 } else { e };
                    ctx.mul(acc, ctx.pow(point[v], e as u64))
                })
            })
            .collect()
    }

    /// Linear map on coefficient vectors induced by substituting each block's
    /// variables: F(x) -> F(M x). `mats[b][i]` is row i of block b's matrix as
    /// a bitmask over the block's variables. Returns the image of each monomial.
    pub fn substitution_columns(&self, mats: &[Vec<u32>]) -> Vec<u64> {
        assert_eq!(mats.len(), self.blocks.len());
        let nv = self.nvars();
        let mut cols = Vec::with_capacity(self.dim());
        for m in &self.monomials {
            // sparse polynomial: set of exponent vectors with coefficient 1
            let mut poly: BTreeMap<Vec<u8>, bool> = BTreeMap::new();
            poly.insert(vec![0u8; nv], true);
            let mut off = 0;
            for (b, &(n, _)) in self.blocks.iter().enumerate() {
                for i in 0..n {
                    let row = mats[b][i];
                    for _ in 0..m[off + i] {
                        let mut next: BTreeMap<Vec<u8>, bool> = BTreeMap::new();
                        for (e, _) in poly.iter() {
                            for j in 0..n {
                                if (row >> j) & 1 == 1 {
                                    let mut e2 = e.clone();
                                    e2[off + j] += 1;
                                    let entry = next.entry(e2).or_insert(false);
                                    *entry = !*entry;
                                }
                            }
                        }
                        next.retain(|_, v| *v);
                        poly = next;
                    }
                }
                off += n;
            }
            let mut col = 0u64;
            for e in poly.keys() {
                let idx = self.index_of(e).expect("substitution preserves multidegree");
                col |= 1u64 << idx;
            }
            cols.push(col);
        }
        cols
    }

    pub fn hex_width(&self) -> usize {
        self.dim().div_ceil(4)
    }
}

/// Applies a linear map given by the images of the basis vectors.
#[inline]
pub fn apply_columns(cols: &[u64], v: u64) -> u64 {
    let mut r = 0u64;
    let mut v = v;
    while v != 0 {
        let i = v.trailing_zeros();
        r ^= cols[i as usize];
        v &= v - 1;
    }
    r
}

/// Byte-sliced version of a linear map on <= 64-bit vectors.
#[derive(Clone, Debug)]
pub struct LinMap {
    tables: Vec<[u64; 256]>,
}

impl LinMap {
    pub fn from_columns(cols: &[u64]) -> Self {
        let nbytes = cols.len().div_ceil(8);
        let mut tables = vec![[0u64; 256]; nbytes];
        for (t, table) in tables.iter_mut().enumerate() {
            for byte in 0..256usize {
                let mut acc = 0u64;
                for b in 0..8 {
                    let i = t * 8 + b;
                    if (byte >> b) & 1 == 1 && i < cols.len() {
                        acc ^= cols[i];
                    }
                }
                table[byte] = acc;
            }
        }
        LinMap { tables }
    }

    #[inline]
    pub fn apply(&self, v: u64) -> u64 {
        let mut r = 0u64;
        for (t, table) in self.tables.iter().enumerate() {
            r ^= table[((v >> (8 * t)) & 0xff) as usize];
        }
        r
    }
}

/// A form: coefficient bits over a [`FormSpace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub space: Arc<FormSpace>,
    pub coeffs: u64,
}

impl Form {
    pub fn new(space: Arc<FormSpace>, coeffs: u64) -> Self {
        Form { space, coeffs }
    }

    pub fn from_monomials(space: Arc<FormSpace>, monos: &[&[u8]]) -> Self {
        let mut coeffs = 0u64;
        for m in monos {
            let i = space.index_of(m).expect("monomial not in space");
            coeffs ^= 1u64 << i;
        }
        Form { space, coeffs }
    }

    pub fn hex(&self) -> String {
        format!("{:0w$x}", self.coeffs, w = self.space.hex_width())
    }
}

/// Evaluates a form at a point given block by block.
pub fn eval_form(f: &Form, ctx: &FieldCtx, point: &[FieldElem]) -> Result<FieldElem> {
    f.space.check_point(point)?;
    let vals = f.space.monomial_values(ctx, point);
    Ok(dot(f.coeffs, &vals))
}

#[inline]
pub fn dot(coeffs: u64, vals: &[FieldElem]) -> FieldElem {
    let mut acc = FieldElem::ZERO;
    let mut c = coeffs;
    while c != 0 {
        let i = c.trailing_zeros() as usize;
        acc += vals[i];
        c &= c - 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binfield::small_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(bits: u64) -> BinPoly {
        BinPoly(bits)
    }

    #[test]
    fn gcd_examples() {
        // x^2+1 and x+1
        assert_eq!(gcd(p(0b101), p(0b11)), p(0b11));
        assert_eq!(gcd(p(0b1011), BinPoly::ZERO), p(0b1011));
        // x^4+x and x^2+x
        assert_eq!(gcd(p(0b10010), p(0b110)), p(0b110));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(p(0b110)), vec![(p(0b10), 1), (p(0b11), 1)]);
        assert_eq!(factor(p(0b10011)), vec![(p(0b10011), 1)]);
        // brute force: monic irreducible quartics are exactly those without a proper factor
        let brute: Vec<BinPoly> =
            (16u64..32).map(BinPoly).filter(|&f| (2u64..4).chain(4..8).all(|g| !f.rem(BinPoly(g)).is_zero())).collect();
        assert_eq!(brute.len(), 3);
        assert_eq!(irreducibles_of_degree(4), brute);
        // Necklace count of irreducibles of degree 5 and 6
        assert_eq!(irreducibles_of_degree(5).len(), 6);
        assert_eq!(irreducibles_of_degree(6).len(), 9);
    }

    #[test]
    fn factor_reassembles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let deg = rng.gen_range(1..=20);
            let f = BinPoly((rng.gen::<u64>() & ((1u64 << deg) - 1)) | (1u64 << deg));
            let fs = factor(f);
            let mut prod = BinPoly::ONE;
            for &(g, m) in &fs {
                assert!(is_irreducible(g), "{g:?}");
                prod = prod.mul(g.pow(m));
            }
            assert_eq!(prod, f);
        }
    }

    #[test]
    fn resultant_examples() {
        let f1 = small_field(1);
        let r = resultant(f1, &FPoly::from_binpoly(p(0b110)), &FPoly::from_binpoly(p(0b10)));
        assert!(r.is_zero());
        let r = resultant(f1, &FPoly::from_binpoly(p(0b10)), &FPoly::from_binpoly(p(0b11)));
        assert_eq!(r, FieldElem::ONE);
    }

    #[test]
    fn resultant_vs_gcd_exhaustive() {
        for a in 1u64..64 {
            for b in 1u64..64 {
                let a = BinPoly(a);
                let b = BinPoly(b);
                if a.deg() == 0 && b.deg() == 0 {
                    continue;
                }
                assert_eq!(resultant_f2(a, b), gcd(a, b).deg() == 0, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn resultant_vs_root_products() {
        let f = small_field(4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let na = rng.gen_range(1..5);
            let nb = rng.gen_range(1..5);
            let ra: Vec<FieldElem> = (0..na).map(|_| FieldElem(rng.gen_range(0..16))).collect();
            let rb: Vec<FieldElem> = (0..nb).map(|_| FieldElem(rng.gen_range(0..16))).collect();
            let build = |roots: &[FieldElem]| {
                roots
                    .iter()
                    .fold(FPoly::new(vec![FieldElem::ONE]), |acc, &r| acc.mul(f, &FPoly::new(vec![r, FieldElem::ONE])))
            };
            let mut expect = FieldElem::ONE;
            for &x in &ra {
                for &y in &rb {
                    expect = f.mul(expect, x + y);
                }
            }
            assert_eq!(resultant(f, &build(&ra), &build(&rb)), expect);
        }
    }

    #[test]
    fn bivariate_resultant() {
        // A = y + x, B = y + x + 1 : no common zero, resultant 1
        let a = vec![p(0b10), p(1)];
        let b = vec![p(0b11), p(1)];
        assert_eq!(resultant_y(&a, &b), BinPoly::ONE);
        // A = y^2 + x, B = y + x : resultant x^2 + x
        let a = vec![p(0b10), BinPoly::ZERO, p(1)];
        let b = vec![p(0b10), p(1)];
        assert_eq!(resultant_y(&a, &b), p(0b110));
    }

    #[test]
    fn x1_form_values() {
        let space = FormSpace::new(&[(2, 2), (3, 1)]);
        // (x0^2 + x1^2) y1 + x0 x1 y2
        let f = Form::from_monomials(space.clone(), &[&[2, 0, 0, 1, 0], &[0, 2, 0, 1, 0], &[1, 1, 0, 0, 1]]);
        let f1 = small_field(1);
        let one = FieldElem::ONE;
        let zero = FieldElem::ZERO;
        assert_eq!(eval_form(&f, f1, &[one, one, zero, zero, one]).unwrap(), one);
        assert!(eval_form(&f, f1, &[zero, zero, one, zero, zero]).is_err());
        let mut count = 0;
        for x in [[one, zero], [zero, one], [one, one]] {
            for y in 1u32..8 {
                let yv = [FieldElem(y & 1), FieldElem((y >> 1) & 1), FieldElem((y >> 2) & 1)];
                let pt = [x[0], x[1], yv[0], yv[1], yv[2]];
                if eval_form(&f, f1, &pt).unwrap().is_zero() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 9);
    }

    #[test]
    fn substitution_matches_evaluation() {
        let space = FormSpace::new(&[(3, 5)]);
        assert_eq!(space.dim(), 21);
        // M = [[1,1,0],[0,1,0],[0,0,1]]: rows as bitmasks over (x0,x1,x2)
        let m = vec![0b011u32, 0b010, 0b100];
        let cols = space.substitution_columns(&[m.clone()]);
        let f4 = small_field(4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let c = rng.gen::<u64>() & ((1 << 21) - 1);
            let pt: Vec<FieldElem> = (0..3).map(|_| FieldElem(rng.gen_range(1..16))).collect();
            let img: Vec<FieldElem> = (0..3)
                .map(|i| (0..3).filter(|&j| (m[i] >> j) & 1 == 1).fold(FieldElem::ZERO, |a, j| a + pt[j]))
                .collect();
            let lhs = dot(apply_columns(&cols, c), &space.monomial_values(f4, &pt));
            let rhs = dot(c, &space.monomial_values(f4, &img));
            assert_eq!(lhs, rhs);
        }
        let lm = LinMap::from_columns(&cols);
        assert_eq!(lm.apply(0b1011), apply_columns(&cols, 0b1011));
    }

    #[test]
    fn multihomogeneity() {
        let space = FormSpace::new(&[(2, 3), (2, 4)]);
        let f16 = small_field(4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let c = rng.gen::<u64>() & ((1 << 20) - 1);
            let form = Form::new(space.clone(), c);
            let pt: Vec<FieldElem> = (0..4).map(|_| FieldElem(rng.gen_range(1..16))).collect();
            let lam = FieldElem(rng.gen_range(1..16));
            let mut scaled = pt.clone();
            scaled[2] = f16.mul(scaled[2], lam);
            scaled[3] = f16.mul(scaled[3], lam);
            let v = eval_form(&form, f16, &pt).unwrap();
            let w = eval_form(&form, f16, &scaled).unwrap();
            assert_eq!(w, f16.mul(v, f16.pow(lam, 4)));
        }
    }
}
