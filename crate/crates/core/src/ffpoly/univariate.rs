//! Dense univariate polynomials over a [`FiniteField`], coefficients in
//! ascending order. Results are trimmed (no trailing zeros); the zero
//! polynomial is the empty vector.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::FiniteField;
use crate::error::{Error, Result};

const EDF_SEED: u64 = 0x5eed_f00d;

pub fn trim<F: FiniteField>(field: &F, a: &mut Vec<F::Elem>) {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
}

pub fn trimmed<F: FiniteField>(field: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    trim(field, &mut a);
    a
}

/// Degree, or `None` for the zero polynomial.
pub fn degree<F: FiniteField>(field: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !field.is_zero(c))
}

pub fn add<F: FiniteField>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = field.zero();
    let out = (0..n)
        .map(|i| field.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(field, out)
}

pub fn sub<F: FiniteField>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = field.zero();
    let out = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(field, out)
}

pub fn scale<F: FiniteField>(field: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    trimmed(field, a.iter().map(|x| field.mul(x, c)).collect())
}

pub fn mul<F: FiniteField>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trimmed(field, out)
}

/// Quotient and remainder; panics when `b` is zero.
pub fn divrem<F: FiniteField>(
    field: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(field, b).expect("division by zero polynomial");
    let mut r = trimmed(field, a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead_inv = field.inv(&b[db]);
    let mut q = vec![field.zero(); r.len() - db];
    while let Some(dr) = degree(field, &r).filter(|&d| d >= db) {
        let c = field.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b[..=db].iter().enumerate() {
            r[shift + i] = field.sub(&r[shift + i], &field.mul(&c, bc));
        }
        q[shift] = c;
        trim(field, &mut r);
    }
    (trimmed(field, q), r)
}

pub fn rem<F: FiniteField>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(field, a, b).1
}

pub fn make_monic<F: FiniteField>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match degree(field, a) {
        None => Vec::new(),
        Some(d) => scale(field, &a[..=d], &field.inv(&a[d])),
    }
}

/// Monic gcd (zero when both inputs are zero).
pub fn gcd<F: FiniteField>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trimmed(field, a.to_vec());
    let mut y = trimmed(field, b.to_vec());
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    make_monic(field, &x)
}

/// Inverse of `a` modulo `m`, or `None` when they are not coprime.
pub fn inv_mod<F: FiniteField>(field: &F, a: &[F::Elem], m: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let (mut r0, mut r1) = (trimmed(field, m.to_vec()), rem(field, a, m));
    let (mut s0, mut s1) = (Vec::new(), vec![field.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(field, &r0, &r1);
        let s = sub(field, &s0, &mul(field, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if degree(field, &r0) != Some(0) {
        return None;
    }
    let c = field.inv(&r0[0]);
    Some(rem(field, &scale(field, &s0, &c), m))
}

pub fn mulmod<F: FiniteField>(
    field: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    m: &[F::Elem],
) -> Vec<F::Elem> {
    rem(field, &mul(field, a, b), m)
}

pub fn powmod<F: FiniteField>(
    field: &F,
    base: &[F::Elem],
    mut e: u128,
    m: &[F::Elem],
) -> Vec<F::Elem> {
    let mut acc = rem(field, &[field.one()], m);
    let mut b = rem(field, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(field, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(field, &b, &b, m);
        }
    }
    acc
}

pub fn derivative<F: FiniteField>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.from_u64(i as u64)))
        .collect();
    trimmed(field, out)
}

pub fn eval<F: FiniteField>(field: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

fn var<F: FiniteField>(field: &F) -> Vec<F::Elem> {
    vec![field.zero(), field.one()]
}

/// True when `a` (nonzero, degree >= 1) has no repeated factor.
pub fn is_squarefree<F: FiniteField>(field: &F, a: &[F::Elem]) -> bool {
    degree(field, &gcd(field, a, &derivative(field, a))) == Some(0)
}

/// Rabin's irreducibility test.
pub fn is_irreducible<F: FiniteField>(field: &F, a: &[F::Elem]) -> bool {
    let Some(n) = degree(field, a) else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let m = make_monic(field, a);
    let q = field.order();
    let x = var(field);
    // frob[i] = x^(q^i) mod m
    let mut frob = vec![rem(field, &x, &m)];
    for i in 1..=n {
        let next = powmod(field, &frob[i - 1], q, &m);
        frob.push(next);
    }
    if !sub(field, &frob[n], &x).is_empty() {
        return false;
    }
    for (r, _) in crate::arith::factorize(n as u64) {
        let g = gcd(field, &sub(field, &frob[n / r as usize], &x), &m);
        if degree(field, &g) != Some(0) {
            return false;
        }
    }
    true
}

/// Distinct roots in the field, sorted. Errors when `a` is zero.
pub fn roots<F: FiniteField>(field: &F, a: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let Some(n) = degree(field, a) else {
        return Err(Error::IdenticallyZero);
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = make_monic(field, a);
    let x = var(field);
    let xq = powmod(field, &x, field.order(), &m);
    let linear_part = gcd(field, &sub(field, &xq, &x), &m);
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out: Vec<F::Elem> = equal_degree_split(field, &linear_part, 1, &mut rng)
        .into_iter()
        .map(|l| field.neg(&l[0]))
        .collect();
    out.sort();
    Ok(out)
}

/// Factors a monic squarefree polynomial into monic irreducibles.
pub fn factor_squarefree<F: FiniteField>(field: &F, a: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(field, a) {
        out.extend(equal_degree_split(field, &g, d, &mut rng));
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree<F: FiniteField>(field: &F, a: &[F::Elem]) -> Vec<(Vec<F::Elem>, usize)> {
    let mut rest = make_monic(field, a);
    let mut out = Vec::new();
    let x = var(field);
    let q = field.order();
    let mut h = rem(field, &x, &rest);
    let mut d = 0;
    while degree(field, &rest).is_some_and(|n| n >= 2 * (d + 1)) {
        d += 1;
        h = powmod(field, &h, q, &rest);
        let g = gcd(field, &sub(field, &h, &x), &rest);
        if degree(field, &g).is_some_and(|k| k > 0) {
            rest = divrem(field, &rest, &g).0;
            h = rem(field, &h, &rest);
            out.push((g, d));
        }
    }
    if let Some(n) = degree(field, &rest).filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

/// Splits a monic product of distinct degree-`d` irreducibles
/// (Cantor–Zassenhaus; trace map in characteristic 2).
fn equal_degree_split<F: FiniteField, R: rand::Rng>(
    field: &F,
    a: &[F::Elem],
    d: usize,
    rng: &mut R,
) -> Vec<Vec<F::Elem>> {
    let Some(n) = degree(field, a) else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![make_monic(field, a)];
    }
    let q = field.order();
    loop {
        let r: Vec<F::Elem> = trimmed(field, (0..n).map(|_| field.random(rng)).collect());
        if degree(field, &r).is_none_or(|k| k == 0) {
            continue;
        }
        let b = if field.characteristic() == 2 {
            let steps = field.degree() as usize * d;
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..steps {
                t = mulmod(field, &t, &t, a);
                acc = add(field, &acc, &t);
            }
            acc
        } else {
            // r^((q^d - 1)/2) = (r^(1 + q + ... + q^(d-1)))^((q - 1)/2)
            let mut t = rem(field, &r, a);
            let mut acc = t.clone();
            for _ in 1..d {
                t = powmod(field, &t, q, a);
                acc = mulmod(field, &acc, &t, a);
            }
            let s = powmod(field, &acc, (q - 1) / 2, a);
            sub(field, &s, &[field.one()])
        };
        let g = gcd(field, &b, a);
        if degree(field, &g).is_some_and(|k| k > 0 && k < n) {
            let h = divrem(field, a, &g).0;
            let mut out = equal_degree_split(field, &g, d, rng);
            out.extend(equal_degree_split(field, &h, d, rng));
            return out;
        }
    }
}
