//! Binary fields F_{2^k}, 1 <= k <= 24.
//!
//! Every degree uses the Conway polynomial as its modulus, so the embedding
//! F_{2^d} -> F_{2^k} that sends the generator `x` to `x^((2^k-1)/(2^d-1))` is
//! compatible along every chain of subfields. Elements are stored as the
//! coefficient bits of their polynomial-basis representation.

use crate::error::CensusError;

/// Conway polynomials over F_2, indexed by degree. Bit i is the coefficient of x^i.
pub const CONWAY: [u32; 25] = [
    0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x5b, 0x83, 0x11d, 0x211, 0x46f, 0x805, 0x10eb, 0x201b, 0x40a9, 0x8035, 0x1002d,
    0x20009, 0x41403, 0x80027, 0x1006f3, 0x200065, 0x401f61, 0x800021, 0x101e6a9,
];

/// Largest degree that gets full log/antilog tables.
const TABLE_LIMIT: u32 = 12;

pub const MAX_DEGREE: u32 = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for FieldElem {
    type Output = FieldElem;
    #[inline]
    fn add(self, rhs: FieldElem) -> FieldElem {
        FieldElem(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElem {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElem) {
        self.0 ^= rhs.0;
    }
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    k: u32,
    modulus: u32,
    // exp has length 2(2^k - 1) so that log a + log b never needs a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
    }
}

impl Eq for FieldCtx {}

/// Carry-less multiplication of two polynomials of degree < 32.
#[inline]
fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut r = 0u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    r
}

fn reduce(mut v: u64, modulus: u32, k: u32) -> u32 {
    let m = modulus as u64;
    let mut top = 63 - v.leading_zeros().min(63);
    while v != 0 && top >= k {
        if (v >> top) & 1 == 1 {
            v ^= m << (top - k);
        }
        if top == 0 {
            break;
        }
        top -= 1;
    }
    v as u32
}

impl FieldCtx {
    /// Builds F_{2^k} with the fixed Conway modulus.
    pub fn new(k: u32) -> Result<FieldCtx, CensusError> {
        if !(1..=MAX_DEGREE).contains(&k) {
            return Err(CensusError::FieldDegree(k));
        }
        let modulus = CONWAY[k as usize];
        let mut ctx = FieldCtx { k, modulus, exp: Vec::new(), log: Vec::new() };
        if k <= TABLE_LIMIT {
            let n = (1usize << k) - 1;
            let mut exp = vec![0u32; 2 * n];
            let mut log = vec![0u32; n + 1];
            let gen = if k == 1 { 1 } else { 2 };
            let mut cur = 1u32;
            for i in 0..n {
                exp[i] = cur;
                exp[i + n] = cur;
                log[cur as usize] = i as u32;
                cur = reduce(clmul(cur, gen), modulus, k);
            }
            ctx.exp = exp;
            ctx.log = log;
        }
        Ok(ctx)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn size(&self) -> usize {
        1usize << self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// All field elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size() as u32).map(FieldElem)
    }

    /// The class of `x`, a primitive element (Conway polynomials are primitive).
    pub fn generator(&self) -> FieldElem {
        if self.k == 1 {
            FieldElem::ONE
        } else {
            FieldElem(2)
        }
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        (x.0 as u64) < (1u64 << self.k)
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        if !self.exp.is_empty() {
            let i = self.log[a.0 as usize] + self.log[b.0 as usize];
            FieldElem(self.exp[i as usize])
        } else {
            FieldElem(reduce(clmul(a.0, b.0), self.modulus, self.k))
        }
    }

    #[inline]
    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut r = FieldElem::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: FieldElem) -> FieldElem {
        assert!(!a.is_zero(), "inverse of zero in F_2^{}", self.k);
        if !self.exp.is_empty() {
            let n = (1u32 << self.k) - 1;
            let l = self.log[a.0 as usize];
            FieldElem(self.exp[((n - l) % n) as usize])
        } else {
            self.pow(a, (1u64 << self.k) - 2)
        }
    }

    #[inline]
    pub fn div(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b))
    }

    /// The unique square root (Frobenius is bijective).
    pub fn sqrt(&self, a: FieldElem) -> FieldElem {
        let mut r = a;
        for _ in 1..self.k {
            r = self.square(r);
        }
        r
    }

    /// Absolute trace to F_2.
    pub fn trace(&self, x: FieldElem) -> u8 {
        let mut acc = x;
        let mut cur = x;
        for _ in 1..self.k {
            cur = self.square(cur);
            acc += cur;
        }
        debug_assert!(acc.0 <= 1);
        acc.0 as u8
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: FieldElem) -> u64 {
        assert!(!x.is_zero());
        let n = (1u64 << self.k) - 1;
        let mut ord = n;
        for p in prime_factors(n) {
            while ord % p == 0 && self.pow(x, ord / p) == FieldElem::ONE {
                ord /= p;
            }
        }
        ord
    }

    /// Image of `x in sub` under the fixed embedding of `sub` into `self`.
    pub fn embed(&self, sub: &FieldCtx, x: FieldElem) -> Result<FieldElem, CensusError> {
        let d = sub.k;
        if self.k % d != 0 {
            return Err(CensusError::NotSubfield { d, k: self.k });
        }
        let e = ((1u64 << self.k) - 1) / ((1u64 << d) - 1);
        let img = if d == 1 { FieldElem::ONE } else { self.pow(self.generator(), e) };
        // Horner in the image of the generator.
        let mut acc = FieldElem::ZERO;
        for i in (0..d).rev() {
            acc = self.mul(acc, img);
            if (x.0 >> i) & 1 == 1 {
                acc += FieldElem::ONE;
            }
        }
        Ok(acc)
    }

    /// Smallest d such that `x` lies in the subfield F_{2^d}.
    pub fn min_subfield_degree(&self, x: FieldElem) -> u32 {
        for d in 1..=self.k {
            if self.k % d == 0 {
                let mut y = x;
                for _ in 0..d {
                    y = self.square(y);
                }
                if y == x {
                    return d;
                }
            }
        }
        self.k
    }
}

/// Free-function form of [`FieldCtx::new`].
pub fn make_field(k: u32) -> Result<FieldCtx, CensusError> {
    FieldCtx::new(k)
}

/// Embeds `x` from F_{2^d} into F_{2^k}.
pub fn embed(x: FieldElem, d: u32, k: u32) -> Result<FieldElem, CensusError> {
    let big = FieldCtx::new(k)?;
    let small = FieldCtx::new(d)?;
    big.embed(&small, x)
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Shared contexts F_{2^1} .. F_{2^12}, built once.
pub fn small_field(k: u32) -> &'static FieldCtx {
    use std::sync::OnceLock;
    static FIELDS: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    let fields = FIELDS.get_or_init(|| (1..=TABLE_LIMIT).map(|k| FieldCtx::new(k).unwrap()).collect());
    &fields[(k - 1) as usize]
}
