//! Mass of the bielliptic locus over odd prime fields.
//!
//! The closed form is checked against a direct evaluation of the integral of
//! d_{2g-2}(E) / #E(F_q) over the moduli of elliptic curves, where each
//! isomorphism class is weighted by 1/#Aut(E).

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{CensusError, Result};

pub type Q = Ratio<i128>;

/// (q^{2g} - q^{2g-4} - q^{2g-5} + (-1)^{g+1} q) / (q^2 + 1) for 6 <= g <= 11.
pub fn mass_closed_form(g: u32, q: i64) -> Result<Q> {
    if !(6..=11).contains(&g) {
        return Err(CensusError::InvalidArgument(format!("genus {g} outside 6..=11")));
    }
    if q < 2 {
        return Err(CensusError::InvalidArgument(format!("bad field size {q}")));
    }
    let q = q as i128;
    let sign = if g % 2 == 1 { 1 } else { -1 };
    let num = q.pow(2 * g) - q.pow(2 * g - 4) - q.pow(2 * g - 5) + sign * q;
    let den = q * q + 1;
    if num % den != 0 {
        return Err(CensusError::Degenerate(format!("closed form not integral at g={g}, q={q}")));
    }
    Ok(Q::from_integer(num / den))
}

fn series_mul(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Power series quotient a / b with b[0] = 1.
fn series_div(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
    assert_eq!(b[0], 1);
    let mut out = vec![0i128; n];
    for k in 0..n {
        let mut acc = a.get(k).copied().unwrap_or(0);
        for j in 1..=k.min(b.len() - 1) {
            acc -= b[j] * out[k - j];
        }
        out[k] = acc;
    }
    out
}

/// d_0..d_{n_max}: numbers of effective squarefree divisors of each degree on
/// an elliptic curve with Frobenius trace a over F_q.
pub fn dn_series(a: i64, q: i64, n_max: usize) -> Vec<i128> {
    let (a, q) = (a as i128, q as i128);
    let n = n_max + 1;
    let num = series_mul(&series_mul(&[1, 0, -1], &[1, 0, -q], n), &[1, -a, q], n);
    let den = series_mul(&series_mul(&[1, -1], &[1, -q], n), &[1, 0, -a, 0, q], n);
    series_div(&num, &den, n)
}

fn is_odd_prime(q: i64) -> bool {
    q > 2 && q % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

fn legendre(x: i64, q: i64) -> i64 {
    let x = x.rem_euclid(q);
    if x == 0 {
        return 0;
    }
    let mut r = 1i64;
    let (mut b, mut e) = (x, (q - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Frobenius traces of all nonsingular y^2 = x^3 + b x^2 + c x + d over F_q,
/// each with weight 1/(q(q-1)): the substitutions x -> u^2 x + r, y -> u^3 y
/// act on these models with stabilizers Aut(E), so the weights sum to the
/// stacky measure. Requires q an odd prime.
pub fn weighted_traces(q: i64) -> Result<Vec<(i64, Q)>> {
    if !is_odd_prime(q) {
        return Err(CensusError::InvalidArgument(format!("{q} is not an odd prime")));
    }
    let w = Q::new(1, (q * (q - 1)) as i128);
    let mut out = Vec::new();
    for b in 0..q {
        for c in 0..q {
            for d in 0..q {
                let disc = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
                if disc.rem_euclid(q) == 0 {
                    continue;
                }
                let points: i64 =
                    1 + (0..q).map(|x| 1 + legendre(((x * x % q + b * x) % q * x + c * x + d) % q, q)).sum::<i64>();
                out.push((q + 1 - points, w));
            }
        }
    }
    Ok(out)
}

/// Weighted sum of a(E)^k.
pub fn trace_moment(q: i64, k: u32) -> Result<Q> {
    Ok(weighted_traces(q)?.into_iter().fold(Q::zero(), |acc, (a, w)| acc + w * Q::from_integer((a as i128).pow(k))))
}

/// Known values of the even trace moments for k = 2, 4, 6, 8.
pub fn birch_moment(q: i64, k: u32) -> Option<i128> {
    let q = q as i128;
    match k {
        0 => Some(q),
        2 => Some(q * q - 1),
        4 => Some(2 * q.pow(3) - 3 * q - 1),
        6 => Some(5 * q.pow(4) - 9 * q * q - 5 * q - 1),
        8 => Some(14 * q.pow(5) - 28 * q.pow(3) - 20 * q * q - 7 * q - 1),
        k if k % 2 == 1 => Some(0),
        _ => None,
    }
}

/// Coefficients of the integral of 1/(1 - a T + q T^2) up to T^{n-1}.
pub fn integrated_inverse_series(q: i64, n: usize) -> Result<Vec<Q>> {
    let mut out = vec![Q::zero(); n];
    for (a, w) in weighted_traces(q)? {
        let s = series_div(&[1], &[1, -(a as i128), q as i128], n);
        for (o, c) in out.iter_mut().zip(s) {
            *o += w * Q::from_integer(c);
        }
    }
    Ok(out)
}

/// The integral of d_{2g-2}(E) / #E(F_q), evaluated curve by curve.
pub fn mass_integral(g: u32, q: i64) -> Result<Q> {
    if !(6..=11).contains(&g) {
        return Err(CensusError::InvalidArgument(format!("genus {g} outside 6..=11")));
    }
    let n = (2 * g - 2) as usize;
    let mut total = Q::zero();
    for (a, w) in weighted_traces(q)? {
        let d = dn_series(a, q, n)[n];
        total += w * Q::new(d, (q + 1 - a) as i128);
    }
    Ok(total)
}
