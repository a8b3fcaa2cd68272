//! Exact counts of level-curve points `#F_{p,a}(X, Y)`, gcd-divisible
//! counts `M_{p,a}(d; X, Y)` and visible counts `N_{p,a}(X, Y)`.
//!
//! Residues lift to lattice values by `r -> r` for `r >= 1` and `0 -> p`,
//! so each residue class meets `[1, Y]` at most once when `Y <= p`.

use std::thread;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mobius_sieve, INV_ZETA2};
use crate::error::{Error, Result};
use crate::ffpoly::{
    eval_univariate, univariate_roots, IntBivariatePoly, ModBivariatePoly, PrimeField,
};

/// The congruence `f(x, y) = a (mod p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelCurveSpec {
    f: IntBivariatePoly,
    reduced: ModBivariatePoly,
    a: u64,
}

impl LevelCurveSpec {
    /// Fails with `DegenerateReduction` when `f mod p` is constant.
    pub fn new(f: IntBivariatePoly, p: u64, a: u64) -> Result<Self> {
        let reduced = f.reduce_mod(p)?;
        Ok(Self {
            f,
            reduced,
            a: a % p,
        })
    }

    pub fn poly(&self) -> &IntBivariatePoly {
        &self.f
    }

    pub fn reduced(&self) -> &ModBivariatePoly {
        &self.reduced
    }

    pub fn p(&self) -> u64 {
        self.reduced.modulus()
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// Whether `f mod p` has degree at least 2.
    pub fn within_theorem_scope(&self) -> bool {
        self.reduced.degree() >= 2
    }
}

/// The box `[1, X] x [1, Y]` with real sides; enumeration uses the floors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountBox {
    pub x: f64,
    pub y: f64,
}

impl CountBox {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && x >= 1.0 && y >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "box sides must be finite and >= 1, got {x} x {y}"
            )));
        }
        Ok(Self { x, y })
    }

    /// Box valid for the prime `p`: `1 <= X, Y <= p`.
    pub fn for_prime(x: f64, y: f64, p: u64) -> Result<Self> {
        let b = Self::new(x, y).map_err(|_| Error::InvalidBox { x, y, p })?;
        b.check(p)?;
        Ok(b)
    }

    pub fn square(side: u64) -> Self {
        Self {
            x: side as f64,
            y: side as f64,
        }
    }

    pub fn check(&self, p: u64) -> Result<()> {
        let ok = |s: f64| s.is_finite() && s >= 1.0 && s <= p as f64;
        if ok(self.x) && ok(self.y) {
            Ok(())
        } else {
            Err(Error::InvalidBox {
                x: self.x,
                y: self.y,
                p,
            })
        }
    }

    pub fn x_floor(&self) -> u64 {
        self.x.floor() as u64
    }

    pub fn y_floor(&self) -> u64 {
        self.y.floor() as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Evaluate at every grid point.
    GridSweep,
    /// Find the roots of `f(x, V) - a` in each row.
    RowRoots,
    /// `RowRoots` when the whole column `[1, p]` is in range and
    /// `deg_V f <= 4`, otherwise `GridSweep`.
    #[default]
    Auto,
}

pub fn count_level_points(spec: &LevelCurveSpec, bx: &CountBox, strategy: Strategy) -> Result<u64> {
    let p = spec.p();
    bx.check(p)?;
    let f = spec.reduced();
    let strategy = match strategy {
        Strategy::Auto if bx.y_floor() == p && f.degree_v() <= 4 => Strategy::RowRoots,
        Strategy::Auto => Strategy::GridSweep,
        s => s,
    };
    let (xs, ys) = (bx.x_floor(), bx.y_floor());
    let a = spec.a();
    Ok(match strategy {
        Strategy::RowRoots => {
            let field = PrimeField::new(p)?;
            let mut total = 0;
            for x in 1..=xs {
                let mut row = f.specialize_u(x);
                row[0] = (row[0] + p - a) % p;
                total += match univariate_roots(&field, &row) {
                    Err(Error::IdenticallyZero) => ys,
                    Err(e) => return Err(e),
                    Ok(roots) => roots
                        .into_iter()
                        .map(|r| if r == 0 { p } else { r })
                        .filter(|&y| y <= ys)
                        .count() as u64,
                };
            }
            total
        }
        _ => {
            let mut total = 0;
            for x in 1..=xs {
                let row = f.specialize_u(x);
                total += (1..=ys)
                    .filter(|&y| eval_univariate(&row, y, p) == a)
                    .count() as u64;
            }
            total
        }
    })
}

/// `M_{p,a}(d; X, Y)`: level points whose coordinates are both divisible by `d`.
pub fn count_divisible(spec: &LevelCurveSpec, bx: &CountBox, d: u64) -> Result<u64> {
    let p = spec.p();
    bx.check(p)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be >= 1".into()));
    }
    Ok(count_divisible_unchecked(
        spec.reduced(),
        spec.a(),
        bx.x_floor(),
        bx.y_floor(),
        d,
    ))
}

fn count_divisible_unchecked(f: &ModBivariatePoly, a: u64, xs: u64, ys: u64, d: u64) -> u64 {
    let p = f.modulus();
    let (smax, tmax) = (xs / d, ys / d);
    let mut total = 0;
    for s in 1..=smax {
        let row = f.specialize_u(d * s);
        total += (1..=tmax)
            .filter(|&t| eval_univariate(&row, d * t, p) == a)
            .count() as u64;
    }
    total
}

/// `N_{p,a}(X, Y)` by enumerating level points and filtering on `gcd(x, y) = 1`.
pub fn count_visible_direct(spec: &LevelCurveSpec, bx: &CountBox) -> Result<u64> {
    let p = spec.p();
    bx.check(p)?;
    let f = spec.reduced();
    let a = spec.a();
    let mut total = 0;
    for x in 1..=bx.x_floor() {
        let row = f.specialize_u(x);
        total += (1..=bx.y_floor())
            .filter(|&y| eval_univariate(&row, y, p) == a && gcd(x, y) == 1)
            .count() as u64;
    }
    Ok(total)
}

/// `N_{p,a}(X, Y) = Σ_d μ(d) M_{p,a}(d; X, Y)`, truncated at `min(X, Y)`
/// where `M` vanishes.
pub fn count_visible_mobius(spec: &LevelCurveSpec, bx: &CountBox) -> Result<u64> {
    let p = spec.p();
    bx.check(p)?;
    let (xs, ys) = (bx.x_floor(), bx.y_floor());
    let dmax = xs.min(ys);
    let mu = mobius_sieve(dmax)?;
    let mut total: i64 = 0;
    for d in 1..=dmax {
        let m = mu.get(d);
        if m != 0 {
            total +=
                m as i64 * count_divisible_unchecked(spec.reduced(), spec.a(), xs, ys, d) as i64;
        }
    }
    debug_assert!(total >= 0);
    Ok(total as u64)
}

/// Main term `(6/π²) X Y / p`, with the real sides.
pub fn expected_visible(bx: &CountBox, p: u64) -> f64 {
    INV_ZETA2 * bx.x * bx.y / p as f64
}

/// Per-level point counts and visible counts for every `a` in `[0, p-1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VisibleHistogram {
    pub p: u64,
    pub bx: CountBox,
    pub level_counts: Vec<u64>,
    pub visible_counts: Vec<u64>,
}

pub fn visible_histogram(f: &IntBivariatePoly, p: u64, bx: &CountBox) -> Result<VisibleHistogram> {
    visible_histogram_with_workers(f, p, bx, 1)
}

/// Single sweep over the grid; rows are split into contiguous blocks across
/// `workers` threads and the integer tallies are summed.
pub fn visible_histogram_with_workers(
    f: &IntBivariatePoly,
    p: u64,
    bx: &CountBox,
    workers: usize,
) -> Result<VisibleHistogram> {
    let m = f.reduce_mod(p)?;
    bx.check(p)?;
    let (xs, ys) = (bx.x_floor(), bx.y_floor());
    let workers = workers.clamp(1, xs.max(1) as usize);
    let block = xs.div_ceil(workers as u64);

    let sweep = |lo: u64, hi: u64| {
        let mut level = vec![0u64; p as usize];
        let mut visible = vec![0u64; p as usize];
        for x in lo..=hi {
            let row = m.specialize_u(x);
            for y in 1..=ys {
                let v = eval_univariate(&row, y, p) as usize;
                level[v] += 1;
                if gcd(x, y) == 1 {
                    visible[v] += 1;
                }
            }
        }
        (level, visible)
    };

    let parts: Vec<(Vec<u64>, Vec<u64>)> = if workers == 1 {
        vec![sweep(1, xs)]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| (1 + w * block, ((w + 1) * block).min(xs)))
                .filter(|(lo, hi)| lo <= hi)
                .map(|(lo, hi)| s.spawn(move || sweep(lo, hi)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("histogram worker panicked"))
                .collect()
        })
    };

    let mut level_counts = vec![0u64; p as usize];
    let mut visible_counts = vec![0u64; p as usize];
    for (lv, vis) in parts {
        for (acc, v) in level_counts.iter_mut().zip(lv) {
            *acc += v;
        }
        for (acc, v) in visible_counts.iter_mut().zip(vis) {
            *acc += v;
        }
    }
    Ok(VisibleHistogram {
        p,
        bx: *bx,
        level_counts,
        visible_counts,
    })
}
