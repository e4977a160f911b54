//! L-polynomials from point counts, Weil admissibility, Newton polygons and
//! isogeny-class lists.

use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::Path;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::error::{CensusError, Result};

/// Point counts and L-polynomial of a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilData {
    pub q: i64,
    pub g: usize,
    /// N_1..N_n
    pub counts: Vec<i64>,
    /// a_0..a_{2g}
    pub lpoly: Vec<i64>,
}

fn ipow(q: i64, e: usize) -> i128 {
    (q as i128).pow(e as u32)
}

/// Reconstructs L(T) = 1 + a_1 T + ... + a_{2g} T^{2g} from N_1..N_g.
pub fn counts_to_lpoly(counts: &[i64], q: i64, g: usize) -> Result<WeilData> {
    if counts.len() < g {
        return Err(CensusError::InvalidArgument(format!("need {g} counts, got {}", counts.len())));
    }
    // power sums of the reciprocal roots
    let s: Vec<i128> = (1..=g).map(|i| ipow(q, i) + 1 - counts[i - 1] as i128).collect();
    let mut a = vec![0i128; 2 * g + 1];
    a[0] = 1;
    for i in 1..=g {
        let mut acc = 0i128;
        for j in 1..=i {
            acc += s[j - 1] * a[i - j];
        }
        if acc % i as i128 != 0 {
            return Err(CensusError::NonIntegralLpoly);
        }
        a[i] = -acc / i as i128;
    }
    for i in 0..g {
        a[2 * g - i] = ipow(q, g - i) * a[i];
    }
    let lpoly =
        a.iter().map(|&x| i64::try_from(x).map_err(|_| CensusError::NonIntegralLpoly)).collect::<Result<_>>()?;
    Ok(WeilData { q, g, counts: counts[..g].to_vec(), lpoly })
}

/// N_1..N_n from an L-polynomial.
pub fn lpoly_to_counts(lpoly: &[i64], q: i64, n: usize) -> Vec<i64> {
    let a = |i: usize| -> i128 { lpoly.get(i).copied().unwrap_or(0) as i128 };
    let mut s = vec![0i128; n + 1];
    for i in 1..=n {
        let mut acc = i as i128 * a(i);
        for j in 1..i {
            acc += s[j] * a(i - j);
        }
        s[i] = -acc;
    }
    (1..=n).map(|i| (ipow(q, i) + 1 - s[i]) as i64).collect()
}

/// Number of closed points of each degree 1..=n from N_1..N_n.
pub fn closed_point_counts(counts: &[i64]) -> Vec<i64> {
    let n = counts.len();
    let mut b = vec![0i64; n + 1];
    for d in 1..=n {
        let mut rest = counts[d - 1];
        for e in 1..d {
            if d % e == 0 {
                rest -= e as i64 * b[e];
            }
        }
        b[d] = rest / d as i64;
    }
    b[1..].to_vec()
}

/// True if a_{2g-i} = q^{g-i} a_i for all i.
pub fn functional_equation_holds(lpoly: &[i64], q: i64, g: usize) -> bool {
    lpoly.len() == 2 * g + 1
        && lpoly[0] == 1
        && (0..g).all(|i| lpoly[2 * g - i] as i128 == ipow(q, g - i) * lpoly[i] as i128)
}

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let c = r.last().unwrap().clone() / lb.clone();
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - c.clone() * bc.clone();
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn poly_div_exact(a: &Poly, b: &Poly) -> Poly {
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let c = r.last().unwrap().clone() / b[db].clone();
        let shift = r.len() - 1 - db;
        q[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - c.clone() * bc.clone();
        }
        r.pop();
        r = trim(r);
    }
    trim(q)
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c.clone() * BigRational::from_integer(BigInt::from(i))).collect())
}

/// Sign of a + b·sqrt(q) for rational a, b and positive integer q.
fn sign_surd(a: &BigRational, b: &BigRational, q: i64) -> i32 {
    let sa = if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    };
    let sb = if b.is_zero() {
        0
    } else if b.is_positive() {
        1
    } else {
        -1
    };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let a2 = a.clone() * a.clone();
    let b2q = b.clone() * b.clone() * BigRational::from_integer(BigInt::from(q));
    if a2 > b2q {
        sa
    } else if a2 < b2q {
        sb
    } else {
        0
    }
}

/// Sign of p(s·2·sqrt(q)), s = ±1.
fn sign_at_endpoint(p: &Poly, q: i64, s: i32) -> i32 {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    let four_q = BigRational::from_integer(BigInt::from(4 * q));
    let mut even_pow = BigRational::one(); // (4q)^(i/2)
    for (i, c) in p.iter().enumerate() {
        let sign = if s < 0 && i % 2 == 1 { -BigRational::one() } else { BigRational::one() };
        if i % 2 == 0 {
            if i > 0 {
                even_pow = even_pow * four_q.clone();
            }
            a += c.clone() * even_pow.clone() * sign;
        } else {
            // y^i = (4q)^((i-1)/2) · 2 sqrt(q)
            b += c.clone() * even_pow.clone() * BigRational::from_integer(BigInt::from(2)) * sign;
        }
    }
    sign_surd(&a, &b, q)
}

fn sign_changes(signs: &[i32]) -> usize {
    let nz: Vec<i32> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Real Weil polynomial h with x^{2g} L(1/x) = x^g h(x + q/x), as integers
/// in increasing degree.
pub fn real_weil_poly(lpoly: &[i64], q: i64, g: usize) -> Vec<i128> {
    // D_0 = 2, D_1 = y, D_k = y D_{k-1} - q D_{k-2}
    let mut d: Vec<Vec<i128>> = vec![vec![2], vec![0, 1]];
    for k in 2..=g {
        let mut next = vec![0i128; k + 1];
        for (i, &c) in d[k - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, &c) in d[k - 2].iter().enumerate() {
            next[i] -= q as i128 * c;
        }
        d.push(next);
    }
    let mut h = vec![0i128; g + 1];
    h[0] = lpoly[g] as i128;
    for k in 1..=g {
        for (i, &c) in d[k].iter().enumerate() {
            h[i] += lpoly[g - k] as i128 * c;
        }
    }
    h
}

/// True iff all roots of the real Weil polynomial are real and lie in
/// [-2 sqrt(q), 2 sqrt(q)], decided exactly with Sturm sequences.
pub fn roots_on_circle(lpoly: &[i64], q: i64, g: usize) -> bool {
    let h = real_weil_poly(lpoly, q, g);
    let mut p: Poly = trim(h.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect());
    if p.is_empty() {
        return false;
    }
    // strip the endpoint factors so that Sturm counts on an open interval
    let r = (q as f64).sqrt().round() as i64;
    let square = r * r == q;
    let mut endpoint_factors: Vec<Poly> =
        vec![vec![BigRational::from_integer(BigInt::from(-4 * q)), BigRational::zero(), BigRational::one()]];
    if square {
        endpoint_factors = vec![
            vec![BigRational::from_integer(BigInt::from(-2 * r)), BigRational::one()],
            vec![BigRational::from_integer(BigInt::from(2 * r)), BigRational::one()],
        ];
    }
    for f in &endpoint_factors {
        while p.len() > f.len() - 1 && poly_rem(&p, f).is_empty() {
            p = poly_div_exact(&p, f);
        }
    }
    // squarefree part: same root set
    let dp = derivative(&p);
    if !dp.is_empty() {
        let gg = poly_gcd(&p, &dp);
        if gg.len() > 1 {
            p = poly_div_exact(&p, &gg);
        }
    }
    let deg = p.len() - 1;
    if deg == 0 {
        return true;
    }
    let mut seq = vec![p.clone(), derivative(&p)];
    loop {
        let n = seq.len();
        let r = poly_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let lo: Vec<i32> = seq.iter().map(|s| sign_at_endpoint(s, q, -1)).collect();
    let hi: Vec<i32> = seq.iter().map(|s| sign_at_endpoint(s, q, 1)).collect();
    if lo[0] == 0 || hi[0] == 0 {
        return false;
    }
    sign_changes(&lo) - sign_changes(&hi) == deg
}

/// Functional equation, unitarity, nonnegative closed-point counts up to
/// degree 2g, and the genus-6 bound N_1 <= 10 over F_2.
pub fn admissible(w: &WeilData) -> bool {
    if !functional_equation_holds(&w.lpoly, w.q, w.g) {
        return false;
    }
    let counts = lpoly_to_counts(&w.lpoly, w.q, 2 * w.g);
    if counts[0] < 0 {
        return false;
    }
    if w.g == 6 && w.q == 2 && counts[0] > 10 {
        return false;
    }
    let b = closed_point_counts(&counts);
    if b.iter().any(|&x| x < 0) {
        return false;
    }
    roots_on_circle(&w.lpoly, w.q, w.g)
}

fn v_p(mut x: i64, p: i64) -> i64 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Slopes of the p-adic Newton polygon, one per reciprocal root, sorted.
pub fn newton_polygon(lpoly: &[i64], p: i64) -> Vec<Ratio<i64>> {
    let pts: Vec<(i64, i64)> =
        lpoly.iter().enumerate().filter(|(_, &a)| a != 0).map(|(i, &a)| (i as i64, v_p(a, p))).collect();
    // lower convex hull
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // remove the middle point if it lies on or above the segment
            if (y2 - y1) * (pt.0 - x1) >= (pt.1 - y1) * (x2 - x1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut slopes = Vec::new();
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        let s = Ratio::new(y2 - y1, x2 - x1);
        for _ in 0..(x2 - x1) {
            slopes.push(s);
        }
    }
    slopes
}

/// Slopes as "n/d" strings, used as a hashable key.
pub fn newton_key(lpoly: &[i64]) -> Vec<String> {
    newton_polygon(lpoly, 2).iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect()
}

pub fn is_supersingular(lpoly: &[i64]) -> bool {
    newton_polygon(lpoly, 2).iter().all(|s| *s == Ratio::new(1, 2))
}

/// Reads an isogeny-class list: one class per line, comma-separated integers
/// a_0..a_{2g}. Blank lines are skipped.
pub fn load_isogeny_list(path: &Path) -> Result<HashSet<Vec<i64>>> {
    let f = std::fs::File::open(path)?;
    read_isogeny_list(std::io::BufReader::new(f))
}

pub fn read_isogeny_list<R: BufRead>(r: R) -> Result<HashSet<Vec<i64>>> {
    let mut out = HashSet::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let v: std::result::Result<Vec<i64>, _> = t.split(',').map(|x| x.trim().parse::<i64>()).collect();
        let v = v.map_err(|e| CensusError::Parse { line: i + 1, msg: e.to_string() })?;
        if v.len() % 2 == 0 || v[0] != 1 {
            return Err(CensusError::Parse { line: i + 1, msg: "expected a_0 = 1 and 2g+1 coefficients".into() });
        }
        out.insert(v);
    }
    Ok(out)
}

pub fn write_isogeny_list<W: Write>(w: &mut W, classes: &[Vec<i64>]) -> Result<()> {
    for c in classes {
        let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        writeln!(w, "{}", s.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binfield::{small_field, FieldElem};

    fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut r = vec![0i64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        r
    }

    /// Affine points of y^2 + y = f(x) over F_{2^k} plus one point at infinity.
    fn count_as(f: &dyn Fn(&crate::binfield::FieldCtx, FieldElem) -> FieldElem, k: u32) -> i64 {
        let ctx = small_field(k);
        let mut n = 1;
        for x in ctx.elements() {
            if ctx.trace(f(ctx, x)) == 0 {
                n += 2;
            }
        }
        n
    }

    #[test]
    fn elliptic_example() {
        let cube = |c: &crate::binfield::FieldCtx, x: FieldElem| c.pow(x, 3);
        let n1 = count_as(&cube, 1);
        assert_eq!(n1, 3);
        let w = counts_to_lpoly(&[n1], 2, 1).unwrap();
        assert_eq!(w.lpoly, vec![1, 0, 2]);
        assert_eq!(lpoly_to_counts(&w.lpoly, 2, 2)[1], count_as(&cube, 2));
        assert_eq!(count_as(&cube, 2), 9);
    }

    #[test]
    fn hyperelliptic_x13_round_trip() {
        let f = |c: &crate::binfield::FieldCtx, x: FieldElem| c.pow(x, 13);
        let counts: Vec<i64> = (1..=6).map(|k| count_as(&f, k)).collect();
        let w = counts_to_lpoly(&counts, 2, 6).unwrap();
        assert_eq!(lpoly_to_counts(&w.lpoly, 2, 6), counts);
        assert!(admissible(&w));
        // predictions beyond the input range agree with direct counts
        let pred = lpoly_to_counts(&w.lpoly, 2, 10);
        for k in 7..=10 {
            assert_eq!(pred[k - 1], count_as(&f, k as u32));
        }
    }

    #[test]
    fn non_integral_counts() {
        assert!(matches!(counts_to_lpoly(&[3, 4], 2, 2), Err(CensusError::NonIntegralLpoly)));
    }

    #[test]
    fn admissibility_examples() {
        let mut ss = vec![1i64];
        for _ in 0..6 {
            ss = poly_mul(&ss, &[1, 0, 2]);
        }
        // all reciprocal roots have absolute value sqrt(2), but N_4 = 17 - 48 < 0
        assert!(roots_on_circle(&ss, 2, 6));
        assert!(is_supersingular(&ss));
        assert_eq!(lpoly_to_counts(&ss, 2, 4)[3], -31);
        let w = WeilData { q: 2, g: 6, counts: vec![], lpoly: ss.clone() };
        assert!(!admissible(&w));
        // L = 1 + 3T + 2T^2 = (1+T)(1+2T): reciprocal roots of absolute value 1 and 2
        assert!(!roots_on_circle(&[1, 3, 2], 2, 1));
        assert!(roots_on_circle(&[1, 2, 2], 2, 1));
        assert!(!roots_on_circle(&[1, 3, 2], 2, 1));
        // q = 4: a = 4 is exactly on the boundary (double root T = 1/2)
        assert!(roots_on_circle(&[1, 4, 4], 4, 1));
        assert!(!roots_on_circle(&[1, 5, 4], 4, 1));
    }

    #[test]
    fn serre_bound_clause() {
        // a genus-6 L-polynomial with N_1 = 11 is rejected
        let mut lp = vec![1i64];
        for _ in 0..4 {
            lp = poly_mul(&lp, &[1, 2, 2]);
        }
        lp = poly_mul(&lp, &poly_mul(&[1, 0, 2], &[1, 0, 2]));
        assert!(functional_equation_holds(&lp, 2, 6));
        assert!(roots_on_circle(&lp, 2, 6));
        let c = lpoly_to_counts(&lp, 2, 1);
        assert_eq!(c[0], 11);
        let w = WeilData { q: 2, g: 6, counts: c, lpoly: lp };
        assert!(!admissible(&w));
    }

    #[test]
    fn newton_examples() {
        let ord = vec![1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 64];
        let mut ord6 = ord.clone();
        ord6[6] = 1;
        let s = newton_polygon(&ord6, 2);
        assert_eq!(s.len(), 12);
        assert_eq!(s.iter().filter(|x| **x == Ratio::new(0, 1)).count(), 6);
        assert_eq!(s.iter().filter(|x| **x == Ratio::new(1, 1)).count(), 6);
    }

    #[test]
    fn isogeny_list_io() {
        let e: HashSet<Vec<i64>> = read_isogeny_list(std::io::Cursor::new("")).unwrap();
        assert!(e.is_empty());
        let mut buf = Vec::new();
        let one = vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 64];
        write_isogeny_list(&mut buf, &[one.clone()]).unwrap();
        let back = read_isogeny_list(std::io::Cursor::new(buf)).unwrap();
        assert_eq!(back.len(), 1);
        assert!(back.contains(&one));
        let err = read_isogeny_list(std::io::Cursor::new("1,0,2\n1,x,2\n")).unwrap_err();
        assert!(matches!(err, CensusError::Parse { line: 2, .. }));
    }

    #[test]
    fn closed_points() {
        // P^1 over F_2: N_k = 2^k + 1, b_1 = 3, b_2 = 1, b_3 = 2
        let counts: Vec<i64> = (1..=3).map(|k| (1 << k) + 1).collect();
        assert_eq!(closed_point_counts(&counts), vec![3, 1, 2]);
    }
}
