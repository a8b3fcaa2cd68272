use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mod_poly::ModBivariatePoly;
use crate::error::{Error, Result};

/// Bivariate polynomial `f(U, V)` with exact integer coefficients.
///
/// Terms are keyed by `(i, j)` for `U^i V^j`; zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntBivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
    degree: u32,
}

impl IntBivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), C)>,
        C: Into<BigInt>,
    {
        let mut f = Self::zero();
        for (exp, c) in terms {
            f.add_term(exp, c.into());
        }
        f
    }

    /// Adds `c * U^i V^j`, merging with an existing term.
    pub fn add_term(&mut self, (i, j): (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
        self.recompute_degree();
    }

    fn recompute_degree(&mut self) {
        self.degree = self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0);
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    /// Total degree; 0 for constants (including the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn degree_u(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn degree_v(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// `f - a`.
    pub fn sub_constant(&self, a: &BigInt) -> Self {
        let mut g = self.clone();
        g.add_term((0, 0), -a.clone());
        g
    }

    /// Exact evaluation at an integer point.
    pub fn eval(&self, u: &BigInt, v: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), c)| {
                c * num_traits::pow(u.clone(), i as usize) * num_traits::pow(v.clone(), j as usize)
            })
            .sum()
    }

    /// Coefficients of `f(u, V)` as a polynomial in `V`, ascending.
    pub fn specialize_u(&self, u: &BigInt) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree_v() as usize + 1];
        for (&(i, j), c) in &self.terms {
            out[j as usize] += c * num_traits::pow(u.clone(), i as usize);
        }
        out
    }

    /// Reduction modulo `p`. Fails with `DegenerateReduction` when the
    /// result is constant.
    pub fn reduce_mod(&self, p: u64) -> Result<ModBivariatePoly> {
        if !crate::arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = self.reduce_mod_unchecked(p);
        if m.is_constant() {
            return Err(Error::DegenerateReduction {
                poly: self.to_string(),
                p,
            });
        }
        Ok(m)
    }

    /// Reduction modulo `p` with no constancy check.
    pub(crate) fn reduce_mod_unchecked(&self, p: u64) -> ModBivariatePoly {
        let pb = BigInt::from(p);
        let terms = self.terms.iter().map(|(&k, c)| {
            let r = c.mod_floor(&pb).to_u64().expect("residue fits u64");
            (k, r)
        });
        ModBivariatePoly::with_preimage_degree(p, terms, self.degree)
    }
}

impl fmt::Display for IntBivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, &(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (i, j) == (0, 0) {
                parts.push(mag.to_string());
            }
            for (var, e) in [("U", i), ("V", j)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for IntBivariatePoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

/// Recursive-descent parser for `c*U^i*V^j` sums.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<IntBivariatePoly> {
        let mut poly = IntBivariatePoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return self.err(format!("expected '+' or '-', found '{}'", c as char)),
            };
            first = false;
            let (exp, c) = self.term()?;
            poly.add_term(exp, c * sign);
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<((u32, u32), BigInt)> {
        let mut coeff = BigInt::one();
        let mut exp = (0u32, 0u32);
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.integer()?,
                Some(b'U') | Some(b'V') => {
                    let var = self.src[self.pos];
                    self.pos += 1;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.integer()?.to_u32().ok_or(Error::Parse {
                            pos: self.pos,
                            msg: "exponent too large".into(),
                        })?;
                    }
                    if var == b'U' {
                        exp.0 += e;
                    } else {
                        exp.1 += e;
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    return self.err(format!(
                        "unknown variable '{}' (only U and V allowed)",
                        c as char
                    ))
                }
                Some(c) => return self.err(format!("unexpected '{}'", c as char)),
                None => return self.err("unexpected end of input"),
            }
            match self.peek() {
                Some(b'*') => self.pos += 1,
                None | Some(b'+') | Some(b'-') => return Ok((exp, coeff)),
                Some(c) => return self.err(format!("expected '*', found '{}'", c as char)),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("valid digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntBivariatePoly {
        s.parse().unwrap()
    }

    #[test]
    fn parses_grammar() {
        let f = poly("V^2 - U^3 - U - 1");
        assert_eq!(f.degree(), 3);
        assert_eq!(f.coeff(0, 2), BigInt::from(1));
        assert_eq!(f.coeff(3, 0), BigInt::from(-1));
        assert_eq!(f.coeff(1, 0), BigInt::from(-1));
        assert_eq!(f.coeff(0, 0), BigInt::from(-1));
        assert_eq!(poly("U*V"), IntBivariatePoly::from_terms([((1, 1), 1)]));
        assert_eq!(
            poly(" 3 * U ^ 2 * V - 2*V*U^2 "),
            IntBivariatePoly::from_terms([((2, 1), 1)])
        );
        assert_eq!(poly("-7"), IntBivariatePoly::from_terms([((0, 0), -7)]));
        let big = poly("123456789012345678901234567890*U");
        assert_eq!(
            big.coeff(1, 0).to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn rejects_bad_input() {
        for s in [
            "", "U*W", "x", "2U", "UV", "U^", "U**V", "U +", "U^-1", "3 4",
        ] {
            assert!(s.parse::<IntBivariatePoly>().is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = poly("U*V + 2 - U*V");
        assert_eq!(f.degree(), 0);
        assert_eq!(f.terms().len(), 1);
        assert!(poly("U - U").is_zero());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "V^2 - U^3 - U - 1",
            "U*V",
            "-5*U^2*V + 3",
            "0",
            "U^2 + V^2",
            "V - U^2",
        ] {
            let f = poly(s);
            assert_eq!(poly(&f.to_string()), f, "{s} -> {f}");
        }
    }

    #[test]
    fn exact_evaluation() {
        let f = poly("V^2 - U^3");
        assert!(f.eval(&BigInt::from(4), &BigInt::from(8)).is_zero());
        assert_eq!(f.eval(&BigInt::from(2), &BigInt::from(1)), BigInt::from(-7));
        assert_eq!(
            f.specialize_u(&BigInt::from(2)),
            vec![BigInt::from(-8), BigInt::zero(), BigInt::one()]
        );
    }
}
