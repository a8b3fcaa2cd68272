//! Prime fields `F_p` and extensions `F_{p^k} = F_p[z]/(m(z))`.

use std::fmt::Debug;

use rand::Rng;

use super::univariate;
use crate::arith::{is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Arithmetic in a finite field of characteristic `p`.
pub trait FiniteField: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Ord + Debug;

    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> u32;
    /// Number of elements, `p^degree`.
    fn order(&self) -> u128;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under `Z -> F_p -> F`.
    fn from_u64(&self, v: u64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// `index`-th element in a fixed enumeration, `0 <= index < order`.
    /// Index 0 is zero and index 1 is one.
    fn element(&self, index: u128) -> Self::Elem;

    fn random<R: Rng>(&self, rng: &mut R) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order() - 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidArgument(format!(
                "modulus {p} must be below 2^32"
            )));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl FiniteField for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> u32 {
        1
    }
    fn order(&self) -> u128 {
        self.p as u128
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn element(&self, index: u128) -> u64 {
        (index % self.p as u128) as u64
    }
    fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        pow_mod(*a, self.p - 2, self.p)
    }
}

/// `F_{p^k}` with elements stored as coefficient vectors of length `k`
/// modulo a monic irreducible `modulus` of degree `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionField {
    p: u64,
    k: u32,
    modulus: Vec<u64>,
    order: u128,
}

impl ExtensionField {
    /// Builds `F_{p^k}` using [`find_irreducible_poly`].
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if k == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be >= 1".into(),
            ));
        }
        let order = (p as u128)
            .checked_pow(k)
            .filter(|&q| q < (1u128 << 126))
            .ok_or(Error::FieldTooLarge { p, k })?;
        let modulus = find_irreducible_in(&base, k);
        Ok(Self {
            p,
            k,
            modulus,
            order,
        })
    }

    /// Builds `F_p[z]/(modulus)`, verifying that `modulus` is monic and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        let k = univariate::degree(&base, &modulus)
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidArgument("modulus must have degree >= 1".into()))?;
        if modulus[k] != 1 || modulus.len() != k + 1 {
            return Err(Error::InvalidArgument("modulus must be monic".into()));
        }
        if !univariate::is_irreducible(&base, &modulus) {
            return Err(Error::InvalidArgument("modulus is reducible".into()));
        }
        let order = (p as u128)
            .checked_pow(k as u32)
            .filter(|&q| q < (1u128 << 126))
            .ok_or(Error::FieldTooLarge { p, k: k as u32 })?;
        Ok(Self {
            p,
            k: k as u32,
            modulus,
            order,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    /// The generator `z` of the extension (the class of the variable).
    pub fn generator(&self) -> Vec<u64> {
        let mut z = vec![0; self.k as usize];
        if self.k == 1 {
            z[0] = (self.p - self.modulus[0]) % self.p;
        } else {
            z[1] = 1;
        }
        z
    }
}

impl FiniteField for ExtensionField {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> u32 {
        self.k
    }
    fn order(&self) -> u128 {
        self.order
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.k as usize]
    }
    fn one(&self) -> Vec<u64> {
        self.from_u64(1)
    }
    fn from_u64(&self, v: u64) -> Vec<u64> {
        let mut e = self.zero();
        e[0] = v % self.p;
        e
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let k = self.k as usize;
        let p = self.p;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        // Reduce using z^k = -(m_0 + ... + m_{k-1} z^{k-1}).
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + p - mul_mod(c, m, p)) % p;
            }
        }
        prod.truncate(k);
        prod
    }
    fn element(&self, mut index: u128) -> Vec<u64> {
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = (index % self.p as u128) as u64;
            index /= self.p as u128;
        }
        e
    }
    fn random<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.k).map(|_| rng.gen_range(0..self.p)).collect()
    }
}

fn find_irreducible_in(base: &PrimeField, k: u32) -> Vec<u64> {
    let p = base.p();
    let k = k as usize;
    let mut coeffs = vec![0u64; k + 1];
    coeffs[k] = 1;
    loop {
        if univariate::is_irreducible(base, &coeffs) {
            return coeffs;
        }
        // Next candidate: count in base p with the constant term least significant.
        let mut i = 0;
        loop {
            assert!(i < k, "an irreducible polynomial of every degree exists");
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// First monic irreducible polynomial of degree `k` over `F_p`, searching
/// coefficient vectors in increasing order with the constant term varying
/// fastest. Coefficients are returned in ascending order.
pub fn find_irreducible_poly(p: u64, k: u32) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    Ok(find_irreducible_in(&PrimeField::new(p)?, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_search_examples() {
        assert_eq!(find_irreducible_poly(5, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible_poly(7, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(find_irreducible_poly(5, 2).unwrap(), vec![2, 0, 1]);
        assert!(find_irreducible_poly(6, 2).is_err());
    }

    /// Residue check for quadratics `V^2 + c` independent of the search.
    #[test]
    fn quadratic_moduli_have_no_roots() {
        for p in [3u64, 5, 7, 11, 13] {
            let m = find_irreducible_poly(p, 2).unwrap();
            for v in 0..p {
                assert_ne!((v * v + m[1] * v + m[0]) % p, 0);
            }
        }
    }

    #[test]
    fn extension_field_order_and_group() {
        let f = ExtensionField::new(3, 3).unwrap();
        assert_eq!(f.order(), 27);
        let elems: Vec<_> = (0..27).map(|i| f.element(i)).collect();
        let distinct: std::collections::BTreeSet<_> = elems.iter().cloned().collect();
        assert_eq!(distinct.len(), 27);
        for a in elems.iter().filter(|a| !f.is_zero(a)) {
            assert_eq!(f.pow(a, 26), f.one());
            assert_eq!(f.mul(a, &f.inv(a)), f.one());
        }
        assert_eq!(f.element(0), f.zero());
        assert_eq!(f.element(1), f.one());
    }

    #[test]
    fn f49_has_square_root_of_minus_one() {
        let f = ExtensionField::new(7, 2).unwrap();
        let minus_one = f.neg(&f.one());
        let roots: Vec<_> = (0..49)
            .map(|i| f.element(i))
            .filter(|a| f.mul(a, a) == minus_one)
            .collect();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn with_modulus_validates() {
        assert!(ExtensionField::with_modulus(7, vec![1, 0, 1]).is_ok());
        assert!(ExtensionField::with_modulus(5, vec![1, 0, 1]).is_err());
        assert!(ExtensionField::with_modulus(5, vec![2, 0, 2]).is_err());
        assert!(matches!(
            ExtensionField::new(1009, 40),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
        }
        assert!(PrimeField::new(15).is_err());
    }
}
