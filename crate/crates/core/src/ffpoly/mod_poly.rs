use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::int_poly::IntBivariatePoly;
use crate::arith::mul_mod;

/// A bivariate polynomial over `F_p`, usually the reduction of an
/// [`IntBivariatePoly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModBivariatePoly {
    p: u64,
    terms: BTreeMap<(u32, u32), u64>,
    degree: u32,
    preimage_degree: u32,
}

impl ModBivariatePoly {
    /// Builds a polynomial from raw terms; coefficients are reduced mod `p`.
    pub fn from_terms<I>(p: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), u64)>,
    {
        let mut f = Self::with_preimage_degree(p, terms, 0);
        f.preimage_degree = f.degree;
        f
    }

    pub(crate) fn with_preimage_degree<I>(p: u64, terms: I, preimage_degree: u32) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), u64)>,
    {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            let e = map.entry(k).or_insert(0u64);
            *e = (*e + c % p) % p;
        }
        map.retain(|_, c| *c != 0);
        let degree = map.keys().map(|&(i, j)| i + j).max().unwrap_or(0);
        Self {
            p,
            terms: map,
            degree,
            preimage_degree,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), u64> {
        &self.terms
    }

    /// Total degree over `F_p`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn degree_u(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn degree_v(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Total degree of the integer polynomial this was reduced from.
    pub fn preimage_degree(&self) -> u32 {
        self.preimage_degree
    }

    pub fn degree_dropped(&self) -> bool {
        self.degree < self.preimage_degree
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `f - a` over `F_p`.
    pub fn sub_constant(&self, a: u64) -> Self {
        let mut g = self.clone();
        let a = a % self.p;
        let e = g.terms.entry((0, 0)).or_insert(0);
        *e = (*e + self.p - a) % self.p;
        if *e == 0 {
            g.terms.remove(&(0, 0));
        }
        g.degree = g.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0);
        g
    }

    pub fn eval(&self, x: u64, y: u64) -> u64 {
        eval_univariate(&self.specialize_u(x), y, self.p)
    }

    /// `f(x, V)` as ascending coefficients in `V`, length `degree_v + 1`.
    pub fn specialize_u(&self, x: u64) -> Vec<u64> {
        let p = self.p;
        let x = x % p;
        let mut out = vec![0u64; self.degree_v() as usize + 1];
        let mut powers = vec![1 % p];
        for _ in 0..self.degree_u() {
            let last = *powers.last().unwrap();
            powers.push(mul_mod(last, x, p));
        }
        for (&(i, j), &c) in &self.terms {
            let t = mul_mod(c, powers[i as usize], p);
            out[j as usize] = (out[j as usize] + t) % p;
        }
        out
    }

    /// `f(U, y)` as ascending coefficients in `U`.
    pub fn specialize_v(&self, y: u64) -> Vec<u64> {
        self.swapped().specialize_u(y)
    }

    /// `f(V, U)`.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.p,
            terms: self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)).collect(),
            degree: self.degree,
            preimage_degree: self.preimage_degree,
        }
    }

    /// Canonical integer lift with coefficients in `[0, p-1]`.
    pub fn lift(&self) -> IntBivariatePoly {
        IntBivariatePoly::from_terms(self.terms.iter().map(|(&k, &c)| (k, BigInt::from(c))))
    }
}

/// Horner evaluation of ascending coefficients at `y` modulo `p`.
#[inline]
pub fn eval_univariate(coeffs: &[u64], y: u64, p: u64) -> u64 {
    let y = y % p;
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| (mul_mod(acc, y, p) + c) % p)
}
