//! Finite matrix groups over F_2, their actions, and abstract-group fingerprints.
//!
//! Matrices act on column vectors stored as bitmasks (bit j = coordinate j).
//! Row i of a matrix is a bitmask over columns. Composition `a.mul(b)` is the
//! matrix product ab, so `a.mul(b).apply(v) == a.apply(b.apply(v))`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{CensusError, Result};
use crate::polyform::BinPoly;

/// Group operations shared by matrices and products of matrices.
pub trait GroupLike: Clone + Eq + fmt::Debug {
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_identity(&self) -> bool;

    fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut n = 1;
        while !x.is_identity() {
            x = x.mul(self);
            n += 1;
        }
        n
    }
}

/// An n×n matrix over F_2 with n <= 10.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Mat {
    n: u8,
    rows: [u16; 10],
}

impl fmt::Debug for F2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n() {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.n() {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
        }
        write!(f, "]")
    }
}

#[inline]
fn parity(x: u32) -> bool {
    x.count_ones() & 1 == 1
}

impl F2Mat {
    pub fn identity(n: usize) -> F2Mat {
        assert!((1..=10).contains(&n));
        let mut rows = [0u16; 10];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            *r = 1 << i;
        }
        F2Mat { n: n as u8, rows }
    }

    pub fn from_rows(rows: &[u16]) -> F2Mat {
        let n = rows.len();
        assert!((1..=10).contains(&n));
        let mut r = [0u16; 10];
        for (i, &x) in rows.iter().enumerate() {
            assert!(u32::from(x) < (1u32 << n), "row out of range");
            r[i] = x;
        }
        F2Mat { n: n as u8, rows: r }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn rows(&self) -> &[u16] {
        &self.rows[..self.n()]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    /// Column j as a bitmask over rows.
    pub fn col(&self, j: usize) -> u16 {
        let mut c = 0u16;
        for i in 0..self.n() {
            c |= (((self.rows[i] >> j) & 1) as u16) << i;
        }
        c
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        let mut out = 0u32;
        for i in 0..self.n() {
            out |= (parity(u32::from(self.rows[i]) & v) as u32) << i;
        }
        out
    }

    pub fn transpose(&self) -> F2Mat {
        let mut rows = [0u16; 10];
        for (j, r) in rows.iter_mut().enumerate().take(self.n()) {
            *r = self.col(j);
        }
        F2Mat { n: self.n, rows }
    }

    pub fn rank(&self) -> usize {
        crate::linalg::rank_f2(&self.rows().iter().map(|&r| u64::from(r)).collect::<Vec<_>>())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n()
    }

    pub fn try_inverse(&self) -> Result<F2Mat> {
        let n = self.n();
        // Gauss–Jordan on [M | I]
        let mut aug: Vec<u32> = (0..n).map(|i| u32::from(self.rows[i]) | (1u32 << (n + i))).collect();
        for c in 0..n {
            let Some(sel) = (c..n).find(|&i| (aug[i] >> c) & 1 == 1) else {
                return Err(CensusError::SingularMatrix);
            };
            aug.swap(c, sel);
            for i in 0..n {
                if i != c && (aug[i] >> c) & 1 == 1 {
                    aug[i] ^= aug[c];
                }
            }
        }
        let rows: Vec<u16> = aug.iter().map(|&r| (r >> n) as u16).collect();
        Ok(F2Mat::from_rows(&rows))
    }
}

impl GroupLike for F2Mat {
    fn mul(&self, o: &F2Mat) -> F2Mat {
        assert_eq!(self.n, o.n);
        let mut rows = [0u16; 10];
        for (i, r) in rows.iter_mut().enumerate().take(self.n()) {
            let mut acc = 0u16;
            let mut a = self.rows[i];
            while a != 0 {
                let k = a.trailing_zeros() as usize;
                acc ^= o.rows[k];
                a &= a - 1;
            }
            *r = acc;
        }
        F2Mat { n: self.n, rows }
    }

    fn inv(&self) -> F2Mat {
        self.try_inverse().expect("group element must be invertible")
    }

    fn is_identity(&self) -> bool {
        *self == F2Mat::identity(self.n())
    }
}

/// Element of a direct product of matrix groups.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ProductElem(pub Vec<F2Mat>);

impl GroupLike for ProductElem {
    fn mul(&self, o: &Self) -> Self {
        ProductElem(self.0.iter().zip(&o.0).map(|(a, b)| a.mul(b)).collect())
    }
    fn inv(&self) -> Self {
        ProductElem(self.0.iter().map(|a| a.inv()).collect())
    }
    fn is_identity(&self) -> bool {
        self.0.iter().all(|a| a.is_identity())
    }
}

/// |GL_n(F_2)| from the product formula.
pub fn gl_order(n: u32) -> u64 {
    (0..n).map(|i| (1u64 << n) - (1u64 << i)).product()
}

/// All invertible n×n matrices, rows chosen in increasing order outside the
/// span of the previous rows.
pub fn enumerate_gl(n: usize) -> Vec<F2Mat> {
    assert!((1..=5).contains(&n), "enumeration supported for n <= 5");
    let mut out = Vec::with_capacity(gl_order(n as u32) as usize);
    let mut rows = vec![0u16; n];
    fn rec(i: usize, n: usize, rows: &mut Vec<u16>, out: &mut Vec<F2Mat>) {
        if i == n {
            out.push(F2Mat::from_rows(rows));
            return;
        }
        let span = crate::linalg::Subspace64::from_vectors(rows[..i].iter().map(|&r| u64::from(r)));
        for v in 1u16..(1 << n) {
            if !span.contains(u64::from(v)) {
                rows[i] = v;
                rec(i + 1, n, rows, out);
            }
        }
    }
    rec(0, n, &mut rows, &mut out);
    assert_eq!(out.len() as u64, gl_order(n as u32));
    out
}

/// PGL_2(F_2) = GL_2(F_2), cached.
pub fn pgl2() -> &'static [F2Mat] {
    static G: OnceLock<Vec<F2Mat>> = OnceLock::new();
    G.get_or_init(|| enumerate_gl(2))
}

pub fn gl3() -> &'static [F2Mat] {
    static G: OnceLock<Vec<F2Mat>> = OnceLock::new();
    G.get_or_init(|| enumerate_gl(3))
}

pub fn gl5() -> &'static [F2Mat] {
    static G: OnceLock<Vec<F2Mat>> = OnceLock::new();
    G.get_or_init(|| enumerate_gl(5))
}

/// Entries of a 2×2 matrix as (a, b, c, d) = [[a, b], [c, d]].
pub fn entries2(m: &F2Mat) -> (bool, bool, bool, bool) {
    assert_eq!(m.n(), 2);
    (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1))
}

/// Twisted substitution q(x) -> (cx+d)^n q((ax+b)/(cx+d)).
///
/// With this convention the coordinates are transformed first, so
/// `psi(A, psi(B, q)) == psi(BA, q)`: an anti-homomorphism.
pub fn psi_action(m: &F2Mat, n: u32, q: BinPoly) -> BinPoly {
    assert!(q.deg() <= n as i32, "degree of q exceeds weight");
    let (a, b, c, d) = entries2(m);
    let lin = |hi: bool, lo: bool| BinPoly((lo as u64) | ((hi as u64) << 1));
    let num = lin(a, b);
    let den = lin(c, d);
    let mut out = BinPoly::ZERO;
    for i in 0..=n {
        if q.coeff(i) {
            out += num.pow(i).mul(den.pow(n - i));
        }
    }
    out
}

/// Plücker basis order of the second exterior power of a 5-dimensional space.
pub const PLUCKER: [(usize, usize); 10] =
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

pub fn plucker_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    PLUCKER.iter().position(|&p| p == (i, j)).expect("i != j")
}

/// Wedge product of two vectors of F_2^5 as a vector in the Plücker basis.
#[inline]
pub fn wedge_vectors(u: u32, v: u32) -> u32 {
    let mut out = 0u32;
    for (idx, &(a, b)) in PLUCKER.iter().enumerate() {
        let m = ((u >> a) & 1) & ((v >> b) & 1) ^ ((u >> b) & 1) & ((v >> a) & 1);
        out |= m << idx;
    }
    out
}

/// Action of M on the second exterior power.
pub fn wedge2(m: &F2Mat) -> Result<F2Mat> {
    if m.n() != 5 || !m.is_invertible() {
        return Err(CensusError::SingularMatrix);
    }
    Ok(wedge2_unchecked(m))
}

#[inline]
pub fn wedge2_unchecked(m: &F2Mat) -> F2Mat {
    let cols: [u32; 5] = std::array::from_fn(|j| u32::from(m.col(j)));
    let mut rows = [0u16; 10];
    for (idx, &(i, j)) in PLUCKER.iter().enumerate() {
        let w = wedge_vectors(cols[i], cols[j]);
        for (r, row) in rows.iter_mut().enumerate() {
            *row |= (((w >> r) & 1) as u16) << idx;
        }
    }
    F2Mat { n: 10, rows }
}

/// Elements fixing an object under a given test.
pub fn stabilizer<E: Clone>(elements: &[E], fixes: impl Fn(&E) -> bool) -> Vec<E> {
    elements.iter().filter(|g| fixes(g)).cloned().collect()
}

/// Order together with the multiset of element orders.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupFingerprint {
    pub order: u64,
    pub element_orders: BTreeMap<u64, u64>,
}

impl GroupFingerprint {
    pub fn from_orders(orders: &[(u64, u64)]) -> Self {
        let element_orders: BTreeMap<u64, u64> = orders.iter().copied().collect();
        GroupFingerprint { order: element_orders.values().sum(), element_orders }
    }

    pub fn name(&self) -> Option<&'static str> {
        FINGERPRINT_TABLE.iter().find(|(_, fp)| fp == self).map(|(n, _)| *n)
    }
}

const FINGERPRINT_TABLE_RAW: [(&str, &[(u64, u64)]); 12] = [
    ("C1", &[(1, 1)]),
    ("C2", &[(1, 1), (2, 1)]),
    ("C3", &[(1, 1), (3, 2)]),
    ("C4", &[(1, 1), (2, 1), (4, 2)]),
    ("C2xC2", &[(1, 1), (2, 3)]),
    ("C5", &[(1, 1), (5, 4)]),
    ("C6", &[(1, 1), (2, 1), (3, 2), (6, 2)]),
    ("S3", &[(1, 1), (2, 3), (3, 2)]),
    ("C10", &[(1, 1), (2, 1), (5, 4), (10, 4)]),
    ("D5", &[(1, 1), (2, 5), (5, 4)]),
    ("D10", &[(1, 1), (2, 11), (5, 4), (10, 4)]),
    ("A5", &[(1, 1), (2, 15), (3, 20), (5, 24)]),
];

static FINGERPRINT_TABLE: std::sync::LazyLock<Vec<(&'static str, GroupFingerprint)>> = std::sync::LazyLock::new(|| {
    FINGERPRINT_TABLE_RAW.iter().map(|(n, o)| (*n, GroupFingerprint::from_orders(o))).collect()
});

/// Names of the groups recognised by [`GroupFingerprint::name`].
pub fn fingerprint_names() -> Vec<&'static str> {
    FINGERPRINT_TABLE_RAW.iter().map(|(n, _)| *n).collect()
}

/// Fingerprint of a finite group given as a full element list.
pub fn fingerprint<E: GroupLike>(elements: &[E]) -> Result<GroupFingerprint> {
    // closure check on a deterministic sample of products
    let n = elements.len();
    if n == 0 || !elements.iter().any(|e| e.is_identity()) {
        return Err(CensusError::NotClosed);
    }
    let step = (n / 16).max(1);
    for i in (0..n).step_by(step) {
        for j in (0..n).step_by(step) {
            let p = elements[i].mul(&elements[j]);
            if !elements.contains(&p) {
                return Err(CensusError::NotClosed);
            }
        }
    }
    let mut element_orders = BTreeMap::new();
    for e in elements {
        *element_orders.entry(e.order()).or_insert(0) += 1;
    }
    Ok(GroupFingerprint { order: n as u64, element_orders })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_orders() {
        assert_eq!(pgl2().len(), 6);
        assert_eq!(gl3().len(), 168);
        assert_eq!(enumerate_gl(4).len(), 20160);
        assert_eq!(gl_order(5), 9_999_360);
    }

    #[test]
    fn inverse_and_apply() {
        for m in gl3() {
            assert!(m.mul(&m.inv()).is_identity());
            for v in 1..8 {
                assert_eq!(m.inv().apply(m.apply(v)), v);
            }
        }
        assert!(F2Mat::from_rows(&[1, 1]).try_inverse().is_err());
    }

    #[test]
    fn psi_examples() {
        let id = F2Mat::identity(2);
        let q = BinPoly(0b1011_0110);
        assert_eq!(psi_action(&id, 7, q), q);
        // swap (a,b,c,d) = (0,1,1,0)
        let swap = F2Mat::from_rows(&[0b10, 0b01]);
        assert_eq!(entries2(&swap), (false, true, true, false));
        assert_eq!(psi_action(&swap, 2, BinPoly::X), BinPoly::X);
    }

    #[test]
    fn psi_is_anti_homomorphism_and_bijective() {
        for a in pgl2() {
            let mut seen = std::collections::HashSet::new();
            for q in 0u64..256 {
                let img = psi_action(a, 7, BinPoly(q));
                assert!(img.deg() <= 7);
                assert!(seen.insert(img));
                for b in pgl2() {
                    let lhs = psi_action(a, 7, psi_action(b, 7, BinPoly(q)));
                    let rhs = psi_action(&b.mul(a), 7, BinPoly(q));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    fn random_gl5(rng: &mut ChaCha8Rng) -> F2Mat {
        loop {
            let rows: Vec<u16> = (0..5).map(|_| rng.gen_range(0..32)).collect();
            let m = F2Mat::from_rows(&rows);
            if m.is_invertible() {
                return m;
            }
        }
    }

    #[test]
    fn wedge2_properties() {
        assert!(wedge2(&F2Mat::identity(5)).unwrap().is_identity());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = random_gl5(&mut rng);
            let b = random_gl5(&mut rng);
            let wa = wedge2(&a).unwrap();
            assert!(wa.is_invertible());
            assert_eq!(wedge2(&a.mul(&b)).unwrap(), wa.mul(&wedge2(&b).unwrap()));
            // decomposable vectors map to decomposable vectors
            let u = rng.gen_range(1..32);
            let v = rng.gen_range(1..32);
            assert_eq!(wa.apply(wedge_vectors(u, v)), wedge_vectors(a.apply(u), a.apply(v)));
        }
        assert!(wedge2(&F2Mat::from_rows(&[1, 1, 4, 8, 16])).is_err());
    }

    #[test]
    fn wedge2_preserves_plucker_relations() {
        // The Plücker quadrics are the 4×4 Pfaffians; the decomposable vectors
        // form the zero set, so it is enough that the set of the 155
        // decomposable vectors is preserved.
        let mut dec = std::collections::BTreeSet::new();
        for u in 1u32..32 {
            for v in 1u32..32 {
                let w = wedge_vectors(u, v);
                if w != 0 {
                    dec.insert(w);
                }
            }
        }
        assert_eq!(dec.len(), 155);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let w = wedge2(&random_gl5(&mut rng)).unwrap();
            let img: std::collections::BTreeSet<u32> = dec.iter().map(|&x| w.apply(x)).collect();
            assert_eq!(img, dec);
        }
    }

    #[test]
    fn fingerprints() {
        let trivial = vec![F2Mat::identity(3)];
        assert_eq!(fingerprint(&trivial).unwrap().name(), Some("C1"));
        let fp = fingerprint(gl3()).unwrap();
        assert_eq!(fp.order, 168);
        assert_eq!(fp.name(), None);
        assert_eq!(fingerprint(pgl2()).unwrap().name(), Some("S3"));
        // an order-2 subgroup
        let swap = F2Mat::from_rows(&[0b10, 0b01]);
        assert_eq!(fingerprint(&[F2Mat::identity(2), swap]).unwrap().name(), Some("C2"));
        // a non-closed set is detected
        let t = F2Mat::from_rows(&[0b11, 0b10]);
        assert!(fingerprint(&[F2Mat::identity(2), swap, t]).is_err());
        // the table separates its 12 entries
        let fps: std::collections::BTreeSet<_> = FINGERPRINT_TABLE.iter().map(|x| x.1.clone()).collect();
        assert_eq!(fps.len(), 12);
        for (_, fp) in FINGERPRINT_TABLE.iter() {
            assert_eq!(fp.element_orders.get(&1), Some(&1));
        }
    }

    #[test]
    fn stabilizer_examples() {
        let all = stabilizer(gl3(), |_| true);
        assert_eq!(all.len(), 168);
        let fix_e0 = stabilizer(gl3(), |m| m.apply(1) == 1);
        assert_eq!(168 % fix_e0.len(), 0);
        assert_eq!(fix_e0.len(), 24);
    }
}
