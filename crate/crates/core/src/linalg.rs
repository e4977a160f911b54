//! Linear algebra over F_2 (bit-packed) and over F_{2^k}.

use crate::binfield::{FieldCtx, FieldElem};

#[inline]
fn top_bit(v: u64) -> u32 {
    63 - v.leading_zeros()
}

/// A subspace of F_2^n (n <= 64) kept in fully reduced echelon form, so that
/// [`Subspace64::reduce`] returns a canonical coset representative.
#[derive(Clone, Debug, Default)]
pub struct Subspace64 {
    basis: Vec<u64>,
}

impl Subspace64 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = u64>>(vs: I) -> Self {
        let mut s = Self::new();
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    /// Clears every pivot bit of `v` using the basis.
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &b in &self.basis {
            if (v >> top_bit(b)) & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Returns false if `v` was already in the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let p = top_bit(r);
        for b in self.basis.iter_mut() {
            if (*b >> p) & 1 == 1 {
                *b ^= r;
            }
        }
        self.basis.push(r);
        self.basis.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    /// Bit positions that are not pivots: coordinates on the quotient space.
    pub fn free_positions(&self, n: u32) -> Vec<u32> {
        let pivots: u64 = self.basis.iter().fold(0, |acc, &b| acc | (1u64 << top_bit(b)));
        (0..n).filter(|&i| (pivots >> i) & 1 == 0).collect()
    }
}

/// Solves the F_2 system `<row_i, x> = rhs_i` in n <= 64 unknowns.
/// Returns a particular solution and a basis of the solution space of the
/// homogeneous system, or `None` if inconsistent.
pub fn solve_f2(rows: &[(u64, bool)], n: u32) -> Option<(u64, Vec<u64>)> {
    // Augmented rows: bit n carries the right-hand side.
    assert!(n < 64);
    let mut m: Vec<u64> = rows.iter().map(|&(r, b)| r | ((b as u64) << n)).collect();
    let mut pivots: Vec<(usize, u32)> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(sel) = (row..m.len()).find(|&i| (m[i] >> col) & 1 == 1) else {
            continue;
        };
        m.swap(row, sel);
        for i in 0..m.len() {
            if i != row && (m[i] >> col) & 1 == 1 {
                m[i] ^= m[row];
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let var_mask = (1u64 << n) - 1;
    if m[row..].iter().any(|&r| r & var_mask == 0 && r != 0) {
        return None;
    }
    let mut particular = 0u64;
    for &(r, c) in &pivots {
        if (m[r] >> n) & 1 == 1 {
            particular |= 1u64 << c;
        }
    }
    let pivot_cols: u64 = pivots.iter().fold(0, |a, &(_, c)| a | (1u64 << c));
    let mut kernel = Vec::new();
    for free in 0..n {
        if (pivot_cols >> free) & 1 == 1 {
            continue;
        }
        let mut v = 1u64 << free;
        for &(r, c) in &pivots {
            if (m[r] >> free) & 1 == 1 {
                v |= 1u64 << c;
            }
        }
        kernel.push(v);
    }
    Some((particular, kernel))
}

/// Rank of a list of F_2 row vectors.
pub fn rank_f2(rows: &[u64]) -> usize {
    Subspace64::from_vectors(rows.iter().copied()).dim()
}

/// Wide bit vectors for systems with more than 64 coordinates.
pub type BitVec = Vec<u64>;

pub fn bitvec_zero(nbits: usize) -> BitVec {
    vec![0u64; nbits.div_ceil(64)]
}

#[inline]
pub fn bit(v: &BitVec, i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub fn set_bit(v: &mut BitVec, i: usize) {
    v[i / 64] |= 1u64 << (i % 64);
}

#[inline]
pub fn xor_into(dst: &mut BitVec, src: &BitVec) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

fn first_bit(v: &BitVec) -> Option<usize> {
    v.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Echelon form of a family of wide vectors that remembers, for each echelon
/// row, which input vectors (at most 64) were combined to produce it.
#[derive(Clone, Debug, Default)]
pub struct WideEchelon {
    rows: Vec<(usize, BitVec, u64)>,
    inputs: usize,
}

impl WideEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds the next input vector; returns false if it was dependent.
    pub fn push(&mut self, v: &BitVec) -> bool {
        assert!(self.inputs < 64);
        let tag = 1u64 << self.inputs;
        self.inputs += 1;
        let (r, t) = self.reduce_tagged(v.clone(), tag);
        match first_bit(&r) {
            None => false,
            Some(p) => {
                for row in self.rows.iter_mut() {
                    if bit(&row.1, p) {
                        xor_into(&mut row.1, &r);
                        row.2 ^= t;
                    }
                }
                self.rows.push((p, r, t));
                true
            }
        }
    }

    fn reduce_tagged(&self, mut v: BitVec, mut tag: u64) -> (BitVec, u64) {
        for (p, row, t) in &self.rows {
            if bit(&v, *p) {
                xor_into(&mut v, row);
                tag ^= *t;
            }
        }
        (v, tag)
    }

    /// Expresses `v` as a combination of the inputs (bit i = input i), if possible.
    pub fn express(&self, v: &BitVec) -> Option<u64> {
        let (r, t) = self.reduce_tagged(v.clone(), 0);
        if r.iter().all(|&w| w == 0) {
            Some(t)
        } else {
            None
        }
    }
}

/// Gaussian elimination over F_{2^k}; returns the rank and leaves `rows` in
/// reduced row echelon form (pivot rows first).
pub fn rank_over(ctx: &FieldCtx, rows: &mut [Vec<FieldElem>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = ctx.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for j in 0..ncols {
                    let t = ctx.mul(f, rows[r][j]);
                    rows[i][j] += t;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Basis of the right kernel {v : M v = 0} over F_{2^k}.
pub fn kernel_over(ctx: &FieldCtx, m: &[Vec<FieldElem>], ncols: usize) -> Vec<Vec<FieldElem>> {
    let mut rows: Vec<Vec<FieldElem>> = m.to_vec();
    let rank = rank_over(ctx, &mut rows);
    let mut pivot_of_row = Vec::new();
    for row in rows.iter().take(rank) {
        let p = row.iter().position(|x| !x.is_zero()).unwrap();
        pivot_of_row.push(p);
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivot_of_row.contains(&free) {
            continue;
        }
        let mut v = vec![FieldElem::ZERO; ncols];
        v[free] = FieldElem::ONE;
        for (i, &p) in pivot_of_row.iter().enumerate() {
            // row i: x_p + sum_{j free} a_ij x_j = 0, characteristic 2
            v[p] = rows[i][free];
        }
        out.push(v);
    }
    out
}
