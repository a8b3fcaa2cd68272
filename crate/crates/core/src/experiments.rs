//! Discrepancy sweeps over all levels `a` (fixed `p`) and over primes
//! `p in [T/2, T]` (fixed `a = 0`), point-count deviation diagnostics and
//! integer zero sets.

use std::thread;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::primes_in_range;
use crate::counting::{
    count_level_points, count_visible_direct, expected_visible, visible_histogram_with_workers,
    CountBox, LevelCurveSpec, Strategy, VisibleHistogram,
};
use crate::error::{Error, Result};
use crate::ffpoly::{is_absolutely_irreducible, IntBivariatePoly, ModBivariatePoly};

/// Thresholds reported by [`corollary1_profile_grid`] when none are given.
pub const DEFAULT_DELTAS: [f64; 3] = [0.1, 0.25, 0.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// Sum over `a = 0..p-1` at a fixed prime.
    LevelAverage,
    /// Sum over primes `T/2 <= p <= T` at `a = 0`.
    PrimeAverage,
}

impl SweepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepKind::LevelAverage => "level_average",
            SweepKind::PrimeAverage => "prime_average",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "level_average" => Ok(SweepKind::LevelAverage),
            "prime_average" => Ok(SweepKind::PrimeAverage),
            other => Err(Error::Format(format!("unknown sweep kind {other:?}"))),
        }
    }
}

/// One row of a discrepancy sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyRecord {
    pub kind: SweepKind,
    /// The prime for level averages.
    pub p: Option<u64>,
    /// The range parameter for prime averages.
    pub t: Option<f64>,
    pub x: f64,
    pub y: f64,
    pub x_floor: u64,
    pub y_floor: u64,
    pub poly: String,
    /// Fixed level for prime averages.
    pub a: Option<u64>,
    /// Number of summands (levels or primes).
    pub terms: u64,
    /// `Σ |N - (6/π²) X Y / p|`.
    pub sum_abs_dev: f64,
    pub bound_value: f64,
    pub ratio: f64,
    /// `XY >= p^{3/2}` (or `T^{3/2}`), where the bounds are nontrivial.
    pub nontrivial: bool,
    pub skipped_primes: Vec<u64>,
}

/// Neumaier-compensated sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Checks `f mod p` has degree > 1 and is absolutely irreducible.
fn check_hypothesis(m: &ModBivariatePoly, what: &str) -> Result<()> {
    if m.degree() < 2 {
        return Err(Error::HypothesisViolated(format!(
            "{what} has degree {} modulo {}, need > 1",
            m.degree(),
            m.modulus()
        )));
    }
    let v = is_absolutely_irreducible(m)?;
    if !v.absolutely_irreducible {
        let e = v.witness.map_or(1, |w| w.extension_degree);
        return Err(Error::HypothesisViolated(format!(
            "{what} is not absolutely irreducible modulo {} (splits over F_{}^{})",
            m.modulus(),
            m.modulus(),
            e
        )));
    }
    Ok(())
}

fn hypothesis_ok(m: &ModBivariatePoly) -> Result<bool> {
    Ok(m.degree() >= 2 && is_absolutely_irreducible(m)?.absolutely_irreducible)
}

fn gated_histogram(
    f: &IntBivariatePoly,
    p: u64,
    bx: &CountBox,
    workers: usize,
) -> Result<VisibleHistogram> {
    let m = f.reduce_mod(p)?;
    bx.check(p)?;
    check_hypothesis(&m, &format!("f = {f}"))?;
    visible_histogram_with_workers(f, p, bx, workers)
}

/// `Σ_a |N_{p,a} - E|` against `X^{1/2} Y^{1/2} p^{3/4} log p`.
pub fn theorem1_sweep(f: &IntBivariatePoly, p: u64, bx: &CountBox) -> Result<DiscrepancyRecord> {
    theorem1_sweep_with_workers(f, p, bx, 1)
}

pub fn theorem1_sweep_with_workers(
    f: &IntBivariatePoly,
    p: u64,
    bx: &CountBox,
    workers: usize,
) -> Result<DiscrepancyRecord> {
    let hist = gated_histogram(f, p, bx, workers)?;
    Ok(level_average_record(f, &hist))
}

/// Builds the level-average record from a histogram without re-checking hypotheses.
pub fn level_average_record(f: &IntBivariatePoly, hist: &VisibleHistogram) -> DiscrepancyRecord {
    let p = hist.p;
    let bx = hist.bx;
    let expected = expected_visible(&bx, p);
    let mut acc = CompensatedSum::default();
    for &n in &hist.visible_counts {
        acc.add((n as f64 - expected).abs());
    }
    let pf = p as f64;
    let bound_value = (bx.x * bx.y).sqrt() * pf.powf(0.75) * pf.ln();
    let sum_abs_dev = acc.value();
    DiscrepancyRecord {
        kind: SweepKind::LevelAverage,
        p: Some(p),
        t: None,
        x: bx.x,
        y: bx.y,
        x_floor: bx.x_floor(),
        y_floor: bx.y_floor(),
        poly: f.to_string(),
        a: None,
        terms: p,
        sum_abs_dev,
        bound_value,
        ratio: sum_abs_dev / bound_value,
        nontrivial: bx.x * bx.y >= pf.powf(1.5),
        skipped_primes: Vec::new(),
    }
}

/// Per-prime visible counts `N_p(X, Y)` for primes in `[T/2, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeAverageTerms {
    /// `(p, N_p)` for primes satisfying the hypotheses, ascending.
    pub counts: Vec<(u64, u64)>,
    /// Primes where `f mod p` had degree <= 1 or was not absolutely irreducible.
    pub skipped: Vec<u64>,
}

fn check_t(t: f64, bx: &CountBox) -> Result<()> {
    if !t.is_finite() || t < 4.0 {
        return Err(Error::InvalidArgument(format!(
            "T must be finite and >= 4, got {t}"
        )));
    }
    let need = 2.0 * bx.x.max(bx.y);
    if t < need {
        return Err(Error::BoxTooLarge { t, need });
    }
    Ok(())
}

pub fn theorem2_terms(
    f: &IntBivariatePoly,
    t: f64,
    bx: &CountBox,
    workers: usize,
) -> Result<PrimeAverageTerms> {
    check_t(t, bx)?;
    let primes = primes_in_range((t / 2.0).ceil() as u64, t.floor() as u64);
    let term = |p: u64| -> Result<Option<u64>> {
        let m = f.reduce_mod_unchecked(p);
        if m.is_constant() || !hypothesis_ok(&m)? {
            return Ok(None);
        }
        let spec = LevelCurveSpec::new(f.clone(), p, 0)?;
        count_visible_direct(&spec, bx).map(Some)
    };
    let workers = workers.clamp(1, primes.len().max(1));
    let results: Vec<Result<Option<u64>>> = if workers == 1 {
        primes.iter().map(|&p| term(p)).collect()
    } else {
        let chunk = primes.len().div_ceil(workers);
        thread::scope(|s| {
            let handles: Vec<_> = primes
                .chunks(chunk.max(1))
                .map(|ps| s.spawn(move || ps.iter().map(|&p| term(p)).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };
    let mut out = PrimeAverageTerms {
        counts: Vec::new(),
        skipped: Vec::new(),
    };
    for (&p, r) in primes.iter().zip(results) {
        match r? {
            Some(n) => out.counts.push((p, n)),
            None => out.skipped.push(p),
        }
    }
    Ok(out)
}

/// `Σ_{T/2 <= p <= T} |N_p - (6/π²) X Y / p|` against `X^{1/2} Y^{1/2} T^{3/4}`.
pub fn theorem2_sweep(f: &IntBivariatePoly, t: f64, bx: &CountBox) -> Result<DiscrepancyRecord> {
    theorem2_sweep_with_workers(f, t, bx, 1)
}

pub fn theorem2_sweep_with_workers(
    f: &IntBivariatePoly,
    t: f64,
    bx: &CountBox,
    workers: usize,
) -> Result<DiscrepancyRecord> {
    let terms = theorem2_terms(f, t, bx, workers)?;
    let mut acc = CompensatedSum::default();
    for &(p, n) in &terms.counts {
        acc.add((n as f64 - expected_visible(bx, p)).abs());
    }
    let sum_abs_dev = acc.value();
    let bound_value = (bx.x * bx.y).sqrt() * t.powf(0.75);
    Ok(DiscrepancyRecord {
        kind: SweepKind::PrimeAverage,
        p: None,
        t: Some(t),
        x: bx.x,
        y: bx.y,
        x_floor: bx.x_floor(),
        y_floor: bx.y_floor(),
        poly: f.to_string(),
        a: Some(0),
        terms: terms.counts.len() as u64,
        sum_abs_dev,
        bound_value,
        ratio: sum_abs_dev / bound_value,
        nontrivial: bx.x * bx.y >= t.powf(1.5),
        skipped_primes: terms.skipped,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BombieriRecord {
    pub count: u64,
    pub main_term: f64,
    pub abs_dev: f64,
    /// `abs_dev / (p^{1/2} (log p)^2)`.
    pub normalized: f64,
}

/// Deviation of `#F_{p,a}(X, Y)` from `XY/p` on an absolutely irreducible level.
pub fn bombieri_deviation(spec: &LevelCurveSpec, bx: &CountBox) -> Result<BombieriRecord> {
    let p = spec.p();
    bx.check(p)?;
    check_hypothesis(
        &spec.reduced().sub_constant(spec.a()),
        &format!("f - {} = {} - {}", spec.a(), spec.poly(), spec.a()),
    )?;
    let count = count_level_points(spec, bx, Strategy::Auto)?;
    let pf = p as f64;
    let main_term = bx.x * bx.y / pf;
    let abs_dev = (count as f64 - main_term).abs();
    Ok(BombieriRecord {
        count,
        main_term,
        abs_dev,
        normalized: abs_dev / (pf.sqrt() * pf.ln().powi(2)),
    })
}

fn within_fraction(hist: &VisibleHistogram, delta: f64) -> f64 {
    let expected = expected_visible(&hist.bx, hist.p);
    let hits = hist
        .visible_counts
        .iter()
        .filter(|&&n| (n as f64 - expected).abs() <= delta * expected)
        .count();
    hits as f64 / hist.p as f64
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "delta must lie in (0, 1), got {delta}"
        )))
    }
}

/// Fraction of levels `a` with `|N_{p,a} - E| <= delta * E`.
pub fn corollary1_profile(f: &IntBivariatePoly, p: u64, bx: &CountBox, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let hist = gated_histogram(f, p, bx, 1)?;
    Ok(within_fraction(&hist, delta))
}

/// [`corollary1_profile`] at several thresholds from one histogram.
pub fn corollary1_profile_grid(
    f: &IntBivariatePoly,
    p: u64,
    bx: &CountBox,
    deltas: &[f64],
    workers: usize,
) -> Result<Vec<(f64, f64)>> {
    for &d in deltas {
        check_delta(d)?;
    }
    let hist = gated_histogram(f, p, bx, workers)?;
    Ok(profile_from_histogram(&hist, deltas))
}

pub fn profile_from_histogram(hist: &VisibleHistogram, deltas: &[f64]) -> Vec<(f64, f64)> {
    deltas
        .iter()
        .map(|&d| (d, within_fraction(hist, d)))
        .collect()
}

/// Integer zeros of `f` in a box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSetReport {
    pub poly: String,
    pub x: f64,
    pub y: f64,
    pub points: Vec<(u64, u64)>,
}

// Two primes below 2^62 used as a pre-filter before exact evaluation.
const FILTER_PRIMES: [u64; 2] = [4_611_686_018_427_387_847, 4_611_686_018_427_387_817];

/// All `(u, v)` in the box with `f(u, v) = 0` over the integers.
pub fn integer_zero_set(f: &IntBivariatePoly, bx: &CountBox) -> Result<ZeroSetReport> {
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let (xs, ys) = (bx.x_floor(), bx.y_floor());
    let mut points = Vec::new();
    for u in 1..=xs {
        let row = f.specialize_u(&BigInt::from(u));
        if row.iter().all(Zero::is_zero) {
            points.extend((1..=ys).map(|v| (u, v)));
            continue;
        }
        let reduced: Vec<Vec<u64>> = FILTER_PRIMES
            .iter()
            .map(|&q| {
                let qb = BigInt::from(q);
                row.iter()
                    .map(|c| c.mod_floor(&qb).to_u64().expect("residue fits"))
                    .collect()
            })
            .collect();
        for v in 1..=ys {
            let passes = FILTER_PRIMES
                .iter()
                .zip(&reduced)
                .all(|(&q, coeffs)| crate::ffpoly::eval_univariate(coeffs, v, q) == 0);
            if passes {
                let exact = row.iter().rev().fold(BigInt::zero(), |acc, c| acc * v + c);
                if exact.is_zero() {
                    points.push((u, v));
                }
            }
        }
    }
    Ok(ZeroSetReport {
        poly: f.to_string(),
        x: bx.x,
        y: bx.y,
        points,
    })
}

/// One parameter tuple of a sweep plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepPoint {
    LevelAverage { p: u64, x: f64, y: f64 },
    PrimeAverage { t: f64, x: f64, y: f64 },
}

/// Runs each plan entry; per-entry failures are returned in place.
pub fn run_sweep_series(
    f: &IntBivariatePoly,
    plan: &[SweepPoint],
    workers: usize,
) -> Result<Vec<Result<DiscrepancyRecord>>> {
    if plan.is_empty() {
        return Err(Error::EmptyPlan);
    }
    Ok(plan
        .iter()
        .map(|pt| match *pt {
            SweepPoint::LevelAverage { p, x, y } => CountBox::for_prime(x, y, p)
                .and_then(|bx| theorem1_sweep_with_workers(f, p, &bx, workers)),
            SweepPoint::PrimeAverage { t, x, y } => {
                CountBox::new(x, y).and_then(|bx| theorem2_sweep_with_workers(f, t, &bx, workers))
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::LevelCurveSpec;

    fn poly(s: &str) -> IntBivariatePoly {
        s.parse().unwrap()
    }

    /// Independent double loop: for each a, walk the grid with exact
    /// integer evaluation and Euclid's gcd.
    fn sum_abs_dev_oracle(s: &str, p: u64, side: u64) -> f64 {
        let f = poly(s);
        let pb = BigInt::from(p);
        let e =
            6.0 / (std::f64::consts::PI * std::f64::consts::PI) * (side * side) as f64 / p as f64;
        let mut total = CompensatedSum::default();
        for a in 0..p {
            let mut n = 0u64;
            for x in 1..=side {
                for y in 1..=side {
                    if f.eval(&BigInt::from(x), &BigInt::from(y)).mod_floor(&pb) == BigInt::from(a)
                        && num_integer::gcd(x, y) == 1
                    {
                        n += 1;
                    }
                }
            }
            total.add((n as f64 - e).abs());
        }
        total.value()
    }

    #[test]
    fn level_average_matches_double_loop() {
        let r = theorem1_sweep(&poly("V - U^2"), 7, &CountBox::square(7)).unwrap();
        assert!((r.sum_abs_dev - sum_abs_dev_oracle("V - U^2", 7, 7)).abs() < 1e-9);
        assert_eq!(r.terms, 7);
        let r = theorem1_sweep(&poly("V^2 - U^3 - U - 1"), 31, &CountBox::square(31)).unwrap();
        assert!((r.sum_abs_dev - sum_abs_dev_oracle("V^2 - U^3 - U - 1", 31, 31)).abs() < 1e-9);
        let expected_bound = 31.0 * 31f64.powf(0.75) * 31f64.ln();
        assert!((r.bound_value - expected_bound).abs() < 1e-9 * expected_bound);
        assert!(r.ratio.is_finite() && r.ratio > 0.0);
    }

    #[test]
    fn hypothesis_gating() {
        for (s, p) in [
            ("U*V", 5u64),
            ("U^2 + V^2", 7),
            ("U^2 + V^2", 5),
            ("U + V", 7),
        ] {
            let err = theorem1_sweep(&poly(s), p, &CountBox::square(p)).unwrap_err();
            assert!(
                matches!(err, Error::HypothesisViolated(_)),
                "{s} mod {p}: {err:?}"
            );
        }
    }

    #[test]
    fn prime_average_small() {
        let f = poly("V - U^3");
        let bx = CountBox::square(20);
        let terms = theorem2_terms(&f, 40.0, &bx, 1).unwrap();
        assert_eq!(
            terms.counts.iter().map(|c| c.0).collect::<Vec<_>>(),
            vec![23, 29, 31, 37]
        );
        assert!(terms.skipped.is_empty());
        for &(p, n) in &terms.counts {
            let spec = LevelCurveSpec::new(f.clone(), p, 0).unwrap();
            assert_eq!(
                n,
                crate::counting::count_visible_mobius(&spec, &bx).unwrap()
            );
        }
        let r1 = theorem2_sweep(&f, 40.0, &bx).unwrap();
        let r3 = theorem2_sweep_with_workers(&f, 40.0, &bx, 3).unwrap();
        assert_eq!(r1, r3);
        assert_eq!(r1.bound_value, 20.0 * 40f64.powf(0.75));
        assert!(matches!(
            theorem2_sweep(&f, 10.0, &CountBox::square(6)),
            Err(Error::BoxTooLarge { .. })
        ));
    }

    #[test]
    fn prime_average_skips_failing_primes() {
        // U^2 + V^2 is never absolutely irreducible mod odd p.
        let terms = theorem2_terms(&poly("U^2 + V^2"), 30.0, &CountBox::square(10), 1).unwrap();
        assert!(terms.counts.is_empty());
        assert_eq!(terms.skipped, vec![17, 19, 23, 29]);
        // Primes in [6, 12] are 7 and 11; the leading part vanishes mod 7 only.
        let terms =
            theorem2_terms(&poly("5*U^2 + V - 5*V^2"), 12.0, &CountBox::square(5), 1).unwrap();
        assert!(terms.skipped.is_empty());
        let terms =
            theorem2_terms(&poly("7*U^2 + V - 7*V^2"), 12.0, &CountBox::square(5), 1).unwrap();
        assert_eq!(terms.skipped, vec![7]);
        assert_eq!(
            terms.counts.iter().map(|c| c.0).collect::<Vec<_>>(),
            vec![11]
        );
    }

    #[test]
    fn bombieri_examples() {
        let spec = LevelCurveSpec::new(poly("V - U^2"), 13, 0).unwrap();
        let r = bombieri_deviation(&spec, &CountBox::square(13)).unwrap();
        assert_eq!(r.count, 13);
        assert_eq!(r.main_term, 13.0);
        assert_eq!(r.abs_dev, 0.0);

        for p in [5u64, 7, 11, 101] {
            let spec = LevelCurveSpec::new(poly("U*V"), p, 1).unwrap();
            let r = bombieri_deviation(&spec, &CountBox::square(p)).unwrap();
            assert_eq!(r.count, p - 1);
            assert_eq!(r.abs_dev, 1.0);
        }

        let spec = LevelCurveSpec::new(poly("U*V"), 11, 0).unwrap();
        assert!(matches!(
            bombieri_deviation(&spec, &CountBox::square(11)),
            Err(Error::HypothesisViolated(_))
        ));

        let p = 101;
        let spec = LevelCurveSpec::new(poly("V^2 - U^3 - U - 1"), p, 1).unwrap();
        let r = bombieri_deviation(&spec, &CountBox::square(p)).unwrap();
        assert!(r.abs_dev <= 5.0 * (p as f64).sqrt());
        assert!(r.normalized < 1.0);
    }

    #[test]
    fn corollary_profile_is_monotone_and_hand_checkable() {
        let f = poly("V - U^2");
        let bx = CountBox::square(7);
        let hist = crate::counting::visible_histogram(&f, 7, &bx).unwrap();
        let e = expected_visible(&bx, 7);
        let by_hand = hist
            .visible_counts
            .iter()
            .filter(|&&n| (n as f64 - e).abs() <= 0.9 * e)
            .count() as f64
            / 7.0;
        assert_eq!(corollary1_profile(&f, 7, &bx, 0.9).unwrap(), by_hand);

        let deltas: Vec<f64> = (1..100).map(|k| k as f64 / 100.0).collect();
        let ec = poly("V^2 - U^3 - U - 1");
        let prof = corollary1_profile_grid(&ec, 101, &CountBox::square(101), &deltas, 2).unwrap();
        for w in prof.windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
        assert!(prof.iter().all(|&(_, fr)| (0.0..=1.0).contains(&fr)));
        assert!(corollary1_profile(&f, 7, &bx, 0.0).is_err());
        assert!(corollary1_profile(&f, 7, &bx, 1.0).is_err());
    }

    #[test]
    fn zero_set_examples() {
        let r =
            integer_zero_set(&poly("V^2 - U^3"), &CountBox::new(100.0, 1000.0).unwrap()).unwrap();
        let expect: Vec<(u64, u64)> = (1..=10).map(|t| (t * t, t * t * t)).collect();
        assert_eq!(r.points, expect);

        let r = integer_zero_set(&poly("U*V"), &CountBox::square(50)).unwrap();
        assert!(r.points.is_empty());

        let r = integer_zero_set(&poly("V - U^2"), &CountBox::new(5.0, 25.0).unwrap()).unwrap();
        assert_eq!(r.points, vec![(1, 1), (2, 4), (3, 9), (4, 16), (5, 25)]);

        // A vertical component: every v in the row u = 3 is a zero.
        let r = integer_zero_set(&poly("U*V - 3*V"), &CountBox::new(4.0, 6.0).unwrap()).unwrap();
        assert_eq!(r.points, (1..=6).map(|v| (3, v)).collect::<Vec<_>>());

        assert!(integer_zero_set(&IntBivariatePoly::zero(), &CountBox::square(3)).is_err());
    }

    #[test]
    fn zero_set_with_huge_coefficients() {
        // The large terms cancel exactly; only V - U^3 remains.
        let f =
            poly("V - 1000000000000000000000000000000*U + 1000000000000000000000000000000*U - U^3");
        let r = integer_zero_set(&f, &CountBox::new(10.0, 1000.0).unwrap()).unwrap();
        assert_eq!(
            r.points,
            (1..=10).map(|u| (u, u * u * u)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn sweep_series_isolates_errors() {
        let f = poly("V^2 - U^3 - U - 1");
        assert_eq!(run_sweep_series(&f, &[], 1).unwrap_err(), Error::EmptyPlan);
        let plan = [
            SweepPoint::LevelAverage {
                p: 31,
                x: 31.0,
                y: 31.0,
            },
            SweepPoint::LevelAverage {
                p: 37,
                x: 40.0,
                y: 37.0,
            },
            SweepPoint::PrimeAverage {
                t: 10.0,
                x: 6.0,
                y: 6.0,
            },
            SweepPoint::PrimeAverage {
                t: 60.0,
                x: 30.0,
                y: 30.0,
            },
        ];
        let out = run_sweep_series(&f, &plan, 2).unwrap();
        assert!(out[0].is_ok());
        assert!(matches!(out[1], Err(Error::InvalidBox { .. })));
        assert!(matches!(out[2], Err(Error::BoxTooLarge { .. })));
        assert!(out[3].is_ok());

        let uv = run_sweep_series(&poly("U*V"), &plan[..1], 1).unwrap();
        assert!(matches!(uv[0], Err(Error::HypothesisViolated(_))));
    }
}
