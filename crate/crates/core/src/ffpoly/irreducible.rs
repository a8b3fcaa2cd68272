//! Irreducibility and absolute irreducibility of bivariate polynomials
//! over finite fields.
//!
//! Irreducibility over `F_q` is decided exactly:
//!
//! 1. shear `U -> U + cV` so the polynomial is monic in `V` of degree equal
//!    to its total degree `n` and has a nonzero `V`-derivative;
//! 2. find `u0` with `f(u0, V)` squarefree (if none exists among
//!    `n(n-1) + 1` points the discriminant vanishes identically and `f`
//!    has a repeated factor);
//! 3. factor `f(u0, V)`, Hensel-lift the factors to precision `U^(n+1)`
//!    and test every subset product for exact division.
//!
//! Fields too small for steps 1–2 are replaced by `F_{q^r}` with `r` the
//! least prime above `n`; a polynomial with coefficients in `F_q` keeps its
//! factor count there because every factor has degree below `r`.
//!
//! Absolute irreducibility: an `F_p`-irreducible `f` that splits over the
//! algebraic closure splits into `e > 1` conjugate factors with `e | n`, so
//! it already splits over `F_{p^l}` for each prime `l | e`. Checking
//! `l = 1` and every prime `l | n` is therefore exact.

use std::collections::BTreeSet;

use super::field::{ExtensionField, FiniteField, PrimeField};
use super::int_poly::IntBivariatePoly;
use super::mod_poly::ModBivariatePoly;
use super::univariate as uni;
use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

/// A field extension in which a splitting was observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SplittingWitness {
    /// `e` such that the polynomial factors over `F_{p^e}`.
    pub extension_degree: u32,
    /// Total degree of one nontrivial factor, when the search produced one.
    pub factor_degree: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct IrreducibilityVerdict {
    pub irreducible_over_base: bool,
    pub absolutely_irreducible: bool,
    pub witness: Option<SplittingWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Splitting {
    Irreducible,
    Reducible { factor_degree: Option<u32> },
}

/// Smallest field order for which the shear and squarefree searches are exact.
fn min_order(n: u32) -> u128 {
    let n = n as u128;
    (n + 2).max(n * (n - 1) + 1)
}

fn least_prime_above(n: u32) -> u32 {
    (n + 1..)
        .find(|&r| is_prime(r as u64))
        .expect("primes are unbounded")
}

/// Decides irreducibility of `f` over `field`, which must have the same
/// characteristic as `f`.
pub fn is_irreducible_bivariate<F: FiniteField>(f: &ModBivariatePoly, field: &F) -> Result<bool> {
    if field.characteristic() != f.modulus() {
        return Err(Error::InvalidArgument(format!(
            "field characteristic {} differs from polynomial modulus {}",
            field.characteristic(),
            f.modulus()
        )));
    }
    Ok(split_over(f, field)? == Splitting::Irreducible)
}

fn split_over<F: FiniteField>(f: &ModBivariatePoly, field: &F) -> Result<Splitting> {
    let n = f.degree();
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(Splitting::Irreducible);
    }
    if field.order() < min_order(n) {
        let lifted = ExtensionField::new(f.modulus(), field.degree() * least_prime_above(n))?;
        return Ok(split_core(&lifted, f));
    }
    Ok(split_core(field, f))
}

/// Dense bivariate polynomial: `rows[i]` is the coefficient of `U^i`, a
/// polynomial in `V`.
type Rows<E> = Vec<Vec<E>>;

fn to_rows<F: FiniteField>(field: &F, f: &ModBivariatePoly) -> Rows<F::Elem> {
    let mut rows = vec![vec![field.zero(); f.degree_v() as usize + 1]; f.degree_u() as usize + 1];
    for (&(i, j), &c) in f.terms() {
        rows[i as usize][j as usize] = field.from_u64(c);
    }
    rows.into_iter().map(|r| uni::trimmed(field, r)).collect()
}

fn binomials<F: FiniteField>(field: &F, n: usize) -> Vec<Vec<F::Elem>> {
    let mut tri: Vec<Vec<F::Elem>> = vec![vec![field.one()]];
    for i in 1..=n {
        let prev = &tri[i - 1];
        let mut row = vec![field.one(); i + 1];
        for m in 1..i {
            row[m] = field.add(&prev[m - 1], &prev[m]);
        }
        tri.push(row);
    }
    tri
}

fn powers<F: FiniteField>(field: &F, c: &F::Elem, n: usize) -> Vec<F::Elem> {
    let mut out = vec![field.one()];
    for _ in 0..n {
        let next = field.mul(out.last().unwrap(), c);
        out.push(next);
    }
    out
}

/// `f(U + cV, V)`.
fn shear<F: FiniteField>(field: &F, f: &Rows<F::Elem>, c: &F::Elem, n: usize) -> Rows<F::Elem> {
    let binom = binomials(field, n);
    let cp = powers(field, c, n);
    let mut out = vec![vec![field.zero(); 2 * n + 1]; n + 1];
    for (i, row) in f.iter().enumerate() {
        for (j, a) in row.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for m in 0..=i {
                let t = field.mul(a, &field.mul(&binom[i][m], &cp[i - m]));
                let slot = &mut out[m][j + i - m];
                *slot = field.add(slot, &t);
            }
        }
    }
    out.into_iter().map(|r| uni::trimmed(field, r)).collect()
}

/// `f(U + u0, V)`.
fn shift<F: FiniteField>(field: &F, f: &Rows<F::Elem>, u0: &F::Elem) -> Rows<F::Elem> {
    let n = f.len().saturating_sub(1);
    let binom = binomials(field, n);
    let up = powers(field, u0, n);
    let mut out: Rows<F::Elem> = vec![Vec::new(); f.len()];
    for (i, row) in f.iter().enumerate() {
        for m in 0..=i {
            let s = field.mul(&binom[i][m], &up[i - m]);
            out[m] = uni::add(field, &out[m], &uni::scale(field, row, &s));
        }
    }
    out
}

fn eval_at_u<F: FiniteField>(field: &F, f: &Rows<F::Elem>, u0: &F::Elem) -> Vec<F::Elem> {
    f.iter().rev().fold(Vec::new(), |acc, row| {
        uni::add(field, &uni::scale(field, &acc, u0), row)
    })
}

fn partial_v_is_zero<F: FiniteField>(field: &F, f: &Rows<F::Elem>) -> bool {
    f.iter().all(|row| uni::derivative(field, row).is_empty())
}

fn partial_u_is_zero<F: FiniteField>(field: &F, f: &Rows<F::Elem>) -> bool {
    f.iter()
        .enumerate()
        .skip(1)
        .all(|(i, row)| uni::scale(field, row, &field.from_u64(i as u64)).is_empty())
}

fn mul_trunc<F: FiniteField>(
    field: &F,
    a: &Rows<F::Elem>,
    b: &Rows<F::Elem>,
    prec: usize,
) -> Rows<F::Elem> {
    let mut out: Rows<F::Elem> = vec![Vec::new(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        for (j, y) in b.iter().enumerate().take(prec - i) {
            out[i + j] = uni::add(field, &out[i + j], &uni::mul(field, x, y));
        }
    }
    out
}

/// Exact division test of `f` by `g`, where `g` is monic in `V` of degree `k`.
fn divides<F: FiniteField>(
    field: &F,
    g: &Rows<F::Elem>,
    f: &Rows<F::Elem>,
    k: usize,
    n: usize,
) -> bool {
    // Transpose into V-major form: coefficient of V^j as a polynomial in U.
    let transpose = |rows: &Rows<F::Elem>, width: usize| -> Vec<Vec<F::Elem>> {
        (0..=width)
            .map(|j| {
                let col = rows
                    .iter()
                    .map(|r| r.get(j).cloned().unwrap_or_else(|| field.zero()))
                    .collect();
                uni::trimmed(field, col)
            })
            .collect()
    };
    let gv = transpose(g, k);
    let mut rem = transpose(f, n);
    for j in (k..=n).rev() {
        let c = std::mem::take(&mut rem[j]);
        if c.is_empty() {
            continue;
        }
        for (t, gt) in gv.iter().enumerate().take(k) {
            let idx = j - k + t;
            rem[idx] = uni::sub(field, &rem[idx], &uni::mul(field, &c, gt));
        }
    }
    rem.iter().all(|c| c.is_empty())
}

fn split_core<F: FiniteField>(field: &F, f: &ModBivariatePoly) -> Splitting {
    let n = f.degree() as usize;
    let q = field.order();
    let rows = to_rows(field, f);

    if partial_u_is_zero(field, &rows) && partial_v_is_zero(field, &rows) {
        // A polynomial in U^p and V^p is a p-th power over a perfect field.
        return Splitting::Reducible {
            factor_degree: Some((n as u64 / f.modulus()) as u32),
        };
    }

    // Shear until monic in V of full degree with a nonzero V-derivative.
    let sheared = (0..(n as u128 + 2).min(q))
        .map(|idx| shear(field, &rows, &field.element(idx), n))
        .find(|g| {
            g[0].get(n).is_some_and(|lead| !field.is_zero(lead)) && !partial_v_is_zero(field, g)
        })
        .expect("field order admits a good shear");
    let lead_inv = field.inv(&sheared[0][n]);
    let monic: Rows<F::Elem> = sheared
        .iter()
        .map(|r| uni::scale(field, r, &lead_inv))
        .collect();

    let candidates = (n * (n - 1) + 1) as u128;
    let Some(u0) = (0..candidates.min(q))
        .map(|idx| field.element(idx))
        .find(|u0| uni::is_squarefree(field, &eval_at_u(field, &monic, u0)))
    else {
        // disc_V vanishes at more points than its degree allows: f shares a
        // factor with its V-derivative.
        return Splitting::Reducible {
            factor_degree: None,
        };
    };

    let mut g = shift(field, &monic, &u0);
    g.resize(n + 1, Vec::new());
    let base = g[0].clone();
    let factors = uni::factor_squarefree(field, &base);
    if factors.len() == 1 {
        return Splitting::Irreducible;
    }

    let prec = n + 1;
    let lifted = hensel_lift(field, &g, &factors, prec);
    let r = lifted.len();
    for mask in 1u32..(1 << r) - 1 {
        if mask.count_ones() as usize > r / 2 {
            continue;
        }
        let mut cand: Rows<F::Elem> = vec![vec![field.one()]];
        let mut k = 0;
        for (i, lf) in lifted.iter().enumerate() {
            if mask & (1 << i) != 0 {
                cand = mul_trunc(field, &cand, lf, prec);
                k += factors[i].len() - 1;
            }
        }
        if divides(field, &cand, &g, k, n) {
            return Splitting::Reducible {
                factor_degree: Some(k as u32),
            };
        }
    }
    Splitting::Irreducible
}

/// Lifts `f(0, V) = prod factors` to a factorization modulo `U^prec`.
fn hensel_lift<F: FiniteField>(
    field: &F,
    f: &Rows<F::Elem>,
    factors: &[Vec<F::Elem>],
    prec: usize,
) -> Vec<Rows<F::Elem>> {
    let base = &f[0];
    let cofactor_inv: Vec<Vec<F::Elem>> = factors
        .iter()
        .map(|gi| {
            let cof = uni::divrem(field, base, gi).0;
            uni::inv_mod(field, &cof, gi).expect("factors of a squarefree polynomial are coprime")
        })
        .collect();
    let mut lifted: Vec<Rows<F::Elem>> = factors.iter().map(|gi| vec![gi.clone()]).collect();
    for k in 1..prec {
        let prod = lifted.iter().fold(vec![vec![field.one()]], |acc, lf| {
            mul_trunc(field, &acc, lf, k + 1)
        });
        let err = uni::sub(field, &f[k], prod.get(k).map_or(&[][..], |v| &v[..]));
        for ((lf, gi), si) in lifted.iter_mut().zip(factors).zip(&cofactor_inv) {
            lf.push(uni::rem(field, &uni::mul(field, &err, si), gi));
        }
    }
    lifted
}

#[derive(Debug, Clone)]
enum AnyField {
    Prime(PrimeField),
    Ext(ExtensionField),
}

impl AnyField {
    fn split(&self, f: &ModBivariatePoly) -> Result<Splitting> {
        match self {
            AnyField::Prime(k) => split_over(f, k),
            AnyField::Ext(k) => split_over(f, k),
        }
    }
}

/// Absolute-irreducibility checker for polynomials of a fixed total degree
/// over `F_p`; the extension fields are built once and reused.
#[derive(Debug, Clone)]
pub struct IrreducibilityTester {
    p: u64,
    degree: u32,
    fields: Vec<(u32, AnyField)>,
}

impl IrreducibilityTester {
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let mut exts = vec![1u32];
        if degree >= 2 {
            exts.extend(factorize(degree as u64).into_iter().map(|(l, _)| l as u32));
        }
        let mut fields = Vec::with_capacity(exts.len());
        for l in exts {
            let mut k = l;
            if degree >= 2 && (p as u128).saturating_pow(l) < min_order(degree) {
                k = l * least_prime_above(degree);
            }
            let field = if k == 1 {
                AnyField::Prime(base)
            } else {
                AnyField::Ext(ExtensionField::new(p, k)?)
            };
            fields.push((l, field));
        }
        Ok(Self { p, degree, fields })
    }

    pub fn verdict(&self, f: &ModBivariatePoly) -> Result<IrreducibilityVerdict> {
        if f.modulus() != self.p {
            return Err(Error::InvalidArgument(format!(
                "tester built for p = {}, got {}",
                self.p,
                f.modulus()
            )));
        }
        if f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if f.degree() != self.degree {
            return Self::new(self.p, f.degree())?.verdict(f);
        }
        if f.degree() == 1 {
            return Ok(IrreducibilityVerdict {
                irreducible_over_base: true,
                absolutely_irreducible: true,
                witness: None,
            });
        }
        for (idx, (l, field)) in self.fields.iter().enumerate() {
            if let Splitting::Reducible { factor_degree } = field.split(f)? {
                return Ok(IrreducibilityVerdict {
                    irreducible_over_base: idx > 0,
                    absolutely_irreducible: false,
                    witness: Some(SplittingWitness {
                        extension_degree: *l,
                        factor_degree,
                    }),
                });
            }
        }
        Ok(IrreducibilityVerdict {
            irreducible_over_base: true,
            absolutely_irreducible: true,
            witness: None,
        })
    }
}

pub fn is_absolutely_irreducible(f: &ModBivariatePoly) -> Result<IrreducibilityVerdict> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    IrreducibilityTester::new(f.modulus(), f.degree())?.verdict(f)
}

/// Residues `a` for which `f - a` is not absolutely irreducible modulo `p`.
pub fn bad_level_values(f: &IntBivariatePoly, p: u64) -> Result<BTreeSet<u64>> {
    let m = f.reduce_mod(p)?;
    let tester = IrreducibilityTester::new(p, m.degree())?;
    let mut bad = BTreeSet::new();
    for a in 0..p {
        if !tester.verdict(&m.sub_constant(a))?.absolutely_irreducible {
            bad.insert(a);
        }
    }
    Ok(bad)
}
