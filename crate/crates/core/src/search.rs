//! Lattice-point searches for invariant values: exhaustive box scans,
//! annealed walks on unimodular orbits, and the quadratic-form baseline.
//!
//! Exactness contract: a value function performs its entire computation
//! in exact integer arithmetic (pairs `a + b*sqrt(d)` over a common
//! denominator) and converts to `f64` once at the end. The fast path uses
//! `i128` with overflow checks and falls back to big integers, which
//! round to the identical `f64`, so results do not depend on the path
//! taken.
//!
//! Determinism contract: box searches shard by the leading coordinate and
//! merge shard results in enumeration order, so reports are identical for
//! any thread count; walks are reproducible from their recorded seed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::points::{is_primitive, primitive_points_shard};
use crate::poly::PolyOnV;
use crate::projective::projective_is_rational;
use crate::scalar::QScalar;

/// A deterministic, thread-safe map from integer points to real values.
pub trait ValueFunction: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[i64]) -> f64;
}

// ---------------------------------------------------------------------------
// Exact evaluation bridge
// ---------------------------------------------------------------------------

fn lcm_denoms(acc: &mut BigInt, r: &num_rational::BigRational) {
    *acc = acc.lcm(r.denom());
}

fn pair_of(c: &QScalar, scale: &BigInt) -> (BigInt, BigInt) {
    let u = c.rational_part() * scale;
    let w = c.sqrt_part() * scale;
    debug_assert!(u.is_integer() && w.is_integer());
    (u.to_integer(), w.to_integer())
}

fn to_i128(b: &BigInt) -> Option<i128> {
    b.to_i128()
}

/// Exponent vector with an `a + b*sqrt(d)` coefficient pair.
type Term<T> = (Vec<u32>, (T, T));

/// Exact evaluator for `P(g^{-1} x)` (or `P(x)`) at integer points.
///
/// `P` is a polynomial with coefficients in Q(sqrt(d)) and `g` an
/// invertible matrix over the same field. All scalars are cleared to
/// integer pairs over one denominator at construction time.
pub struct ExactValue {
    n: usize,
    d: i128,
    sqrt_d: f64,
    /// Final denominator applied after the integer computation.
    den: f64,
    terms_big: Vec<Term<BigInt>>,
    terms_small: Option<Vec<Term<i128>>>,
    g_big: Option<(Vec<BigInt>, Vec<BigInt>)>,
    g_small: Option<(Vec<i128>, Vec<i128>)>,
    g_present: bool,
}

impl ExactValue {
    /// Builds the evaluator; `g = None` means the identity change of
    /// coordinates. The polynomial must be non-zero.
    pub fn new(poly: &PolyOnV, g: Option<&QMatrix>) -> Result<Self> {
        let n = poly.nvars();
        if poly.is_zero() {
            return Err(Error::Invalid("value function polynomial is zero".into()));
        }
        // Join the quadratic contexts of the polynomial and of g.
        let mut d: Option<u64> = None;
        let mut join = |f: Option<u64>| -> Result<()> {
            match (d, f) {
                (None, x) => {
                    d = x;
                    Ok(())
                }
                (Some(_), None) => Ok(()),
                (Some(a), Some(b)) if a == b => Ok(()),
                (Some(a), Some(b)) => Err(Error::MixedContexts(a, b)),
            }
        };
        for (_, c) in poly.terms() {
            join(c.field())?;
        }
        let gi = match g {
            Some(g) => {
                if g.nrows() != n || g.ncols() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: g.nrows(),
                    });
                }
                let gi = g.inverse()?;
                join(gi.field()?)?;
                Some(gi)
            }
            None => None,
        };

        let deg = poly.degree().expect("non-zero polynomial");
        let mut lp = BigInt::one();
        for (_, c) in poly.terms() {
            lcm_denoms(&mut lp, c.rational_part());
            lcm_denoms(&mut lp, c.sqrt_part());
        }
        let terms_big: Vec<(Vec<u32>, (BigInt, BigInt))> = poly
            .terms()
            .iter()
            .map(|(e, c)| (e.to_vec(), pair_of(c, &lp)))
            .collect();

        let mut lg = BigInt::one();
        let g_big = match &gi {
            None => None,
            Some(gi) => {
                for e in gi.entries() {
                    lcm_denoms(&mut lg, e.rational_part());
                    lcm_denoms(&mut lg, e.sqrt_part());
                }
                let mut us = Vec::with_capacity(n * n);
                let mut ws = Vec::with_capacity(n * n);
                for e in gi.entries() {
                    let (u, w) = pair_of(e, &lg);
                    us.push(u);
                    ws.push(w);
                }
                Some((us, ws))
            }
        };

        let den_big = &lp * lg.pow(deg);
        let den = den_big.to_f64().unwrap_or(f64::NAN);

        let terms_small = terms_big
            .iter()
            .map(|(e, (a, b))| Some((e.clone(), (to_i128(a)?, to_i128(b)?))))
            .collect::<Option<Vec<_>>>();
        let g_small = match &g_big {
            None => None,
            Some((us, ws)) => (|| {
                let u = us.iter().map(to_i128).collect::<Option<Vec<_>>>()?;
                let w = ws.iter().map(to_i128).collect::<Option<Vec<_>>>()?;
                Some((u, w))
            })(),
        };

        Ok(ExactValue {
            n,
            d: d.unwrap_or(0) as i128,
            sqrt_d: d.map(|d| (d as f64).sqrt()).unwrap_or(0.0),
            den,
            terms_big,
            terms_small,
            g_present: g_big.is_some(),
            g_big,
            g_small,
        })
    }

    fn mul_pair(&self, a: (i128, i128), b: (i128, i128)) -> Option<(i128, i128)> {
        let u = a.0.checked_mul(b.0)?.checked_add(
            self.d.checked_mul(a.1)?.checked_mul(b.1)?,
        )?;
        let w = a.0.checked_mul(b.1)?.checked_add(a.1.checked_mul(b.0)?)?;
        Some((u, w))
    }

    fn eval_small(&self, x: &[i64]) -> Option<(i128, i128)> {
        let terms = self.terms_small.as_ref()?;
        let ys: Vec<(i128, i128)> = if self.g_present {
            let (gu, gw) = self.g_small.as_ref()?;
            (0..self.n)
                .map(|i| {
                    let mut u: i128 = 0;
                    let mut w: i128 = 0;
                    for j in 0..self.n {
                        u = u.checked_add(gu[i * self.n + j].checked_mul(x[j] as i128)?)?;
                        w = w.checked_add(gw[i * self.n + j].checked_mul(x[j] as i128)?)?;
                    }
                    Some((u, w))
                })
                .collect::<Option<Vec<_>>>()?
        } else {
            x.iter().map(|&v| (v as i128, 0)).collect()
        };
        let mut acc = (0i128, 0i128);
        for (e, c) in terms {
            let mut t = *c;
            for (i, &ei) in e.iter().enumerate() {
                for _ in 0..ei {
                    t = self.mul_pair(t, ys[i])?;
                }
            }
            acc = (acc.0.checked_add(t.0)?, acc.1.checked_add(t.1)?);
        }
        Some(acc)
    }

    fn eval_big(&self, x: &[i64]) -> (BigInt, BigInt) {
        let d = BigInt::from(self.d);
        let mul = |a: &(BigInt, BigInt), b: &(BigInt, BigInt)| -> (BigInt, BigInt) {
            (&a.0 * &b.0 + &d * &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
        };
        let ys: Vec<(BigInt, BigInt)> = if self.g_present {
            let (gu, gw) = self.g_big.as_ref().unwrap();
            (0..self.n)
                .map(|i| {
                    let mut u = BigInt::zero();
                    let mut w = BigInt::zero();
                    for j in 0..self.n {
                        u += &gu[i * self.n + j] * x[j];
                        w += &gw[i * self.n + j] * x[j];
                    }
                    (u, w)
                })
                .collect()
        } else {
            x.iter()
                .map(|&v| (BigInt::from(v), BigInt::zero()))
                .collect()
        };
        let mut acc = (BigInt::zero(), BigInt::zero());
        for (e, c) in &self.terms_big {
            let mut t = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                for _ in 0..ei {
                    t = mul(&t, &ys[i]);
                }
            }
            acc.0 += t.0;
            acc.1 += t.1;
        }
        acc
    }

    fn finish(&self, u: f64, w: f64) -> f64 {
        (u + w * self.sqrt_d) / self.den
    }

    #[cfg(test)]
    fn eval_forced_big(&self, x: &[i64]) -> f64 {
        let (u, w) = self.eval_big(x);
        self.finish(
            u.to_f64().unwrap_or(f64::NAN),
            w.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl ValueFunction for ExactValue {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &[i64]) -> f64 {
        assert_eq!(x.len(), self.n, "point dimension mismatch");
        match self.eval_small(x) {
            Some((u, w)) => self.finish(u as f64, w as f64),
            None => {
                let (u, w) = self.eval_big(x);
                self.finish(
                    u.to_f64().unwrap_or(f64::NAN),
                    w.to_f64().unwrap_or(f64::NAN),
                )
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// One step of a monotone best-error trace. `at` is the evaluation count
/// at the improvement (or the box radius, for baseline curves).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub at: u64,
    pub error: f64,
}

/// Outcome of one search for one target value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub case: String,
    pub target: f64,
    pub best_point: Vec<i64>,
    pub best_value: f64,
    pub error: f64,
    pub evaluations: u64,
    pub radius_or_budget: u64,
    pub seed: u64,
    pub trace: Vec<TraceEntry>,
}

/// Simulated-annealing schedule: geometric cooling from `t0` by `cooling`
/// per step; `restarts` independent passes where supported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealParams {
    pub t0: f64,
    pub cooling: f64,
    pub restarts: u32,
}

impl Default for AnnealParams {
    fn default() -> Self {
        // Calibrated on planted basis recovery: many short quenches beat
        // few slow anneals on these integer plateaus.
        AnnealParams {
            t0: 0.03,
            cooling: 0.985,
            restarts: 100,
        }
    }
}

// ---------------------------------------------------------------------------
// Box search
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct Improvement {
    at: u64, // local evaluation index within the shard, 1-based
    error: f64,
    point: Vec<i64>,
    value: f64,
}

struct ShardResult {
    count: u64,
    per_target: Vec<Vec<Improvement>>,
}

fn scan_shard(f: &dyn ValueFunction, r: i64, lead: i64, targets: &[f64]) -> ShardResult {
    let mut count = 0u64;
    let mut per_target: Vec<Vec<Improvement>> = vec![Vec::new(); targets.len()];
    let mut best: Vec<f64> = vec![f64::INFINITY; targets.len()];
    for x in primitive_points_shard(f.dim(), r, lead) {
        count += 1;
        let v = f.eval(&x);
        for (k, &t) in targets.iter().enumerate() {
            let e = (v - t).abs();
            if e < best[k] {
                best[k] = e;
                per_target[k].push(Improvement {
                    at: count,
                    error: e,
                    point: x.clone(),
                    value: v,
                });
            }
        }
    }
    ShardResult { count, per_target }
}

/// Exhaustive scan of all primitive points with sup-norm at most `r`.
///
/// For each target the minimal-error point is reported, ties broken by
/// enumeration (lexicographic) order. Shards run in parallel by leading
/// coordinate; the merged result is identical to a serial scan.
pub fn box_search(
    case: &str,
    f: &dyn ValueFunction,
    r: i64,
    targets: &[f64],
    eps: f64,
) -> Result<Vec<SearchReport>> {
    if r < 1 {
        return Err(Error::Invalid("box radius must be at least 1".into()));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Invalid("epsilon must be positive".into()));
    }
    if targets.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    let shards: Vec<ShardResult> = (-r..=r)
        .into_par_iter()
        .map(|lead| scan_shard(f, r, lead, targets))
        .collect();

    let mut reports = Vec::with_capacity(targets.len());
    for (k, &target) in targets.iter().enumerate() {
        let mut trace: Vec<TraceEntry> = Vec::new();
        let mut best: Option<Improvement> = None;
        let mut offset = 0u64;
        let mut total = 0u64;
        for shard in &shards {
            for imp in &shard.per_target[k] {
                let better = match &best {
                    None => true,
                    Some(b) => imp.error < b.error,
                };
                if better {
                    let mut global = imp.clone();
                    global.at += offset;
                    trace.push(TraceEntry {
                        at: global.at,
                        error: global.error,
                    });
                    best = Some(global);
                }
            }
            offset += shard.count;
            total += shard.count;
        }
        let best = best.ok_or(Error::ZeroVector)?;
        reports.push(SearchReport {
            case: case.to_string(),
            target,
            best_point: best.point,
            best_value: best.value,
            error: best.error,
            evaluations: total,
            radius_or_budget: r as u64,
            seed: 0,
            trace,
        });
    }
    Ok(reports)
}

// ---------------------------------------------------------------------------
// Annealed walk
// ---------------------------------------------------------------------------

/// Entry bound beyond which walk moves are rejected to avoid overflow.
const WALK_ENTRY_LIMIT: i64 = 1 << 40;

/// Annealed random walk on the unimodular orbit of a primitive point.
///
/// Moves are elementary row operations `x_i <- x_i +- x_j`, which keep
/// the point primitive. Acceptance follows simulated annealing on
/// `|f(x) - target|` with the geometric schedule in `params`. One
/// independent run per target, seeded `seed + target index`.
pub fn walk_search(
    case: &str,
    f: &dyn ValueFunction,
    x0: &[i64],
    targets: &[f64],
    budget: u64,
    seed: u64,
    params: &AnnealParams,
) -> Result<Vec<SearchReport>> {
    if x0.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: x0.len(),
        });
    }
    if !is_primitive(x0) {
        return Err(Error::NotPrimitive);
    }
    if budget < 1 {
        return Err(Error::Invalid("walk budget must be at least 1".into()));
    }
    if targets.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    let n = f.dim();
    let mut reports = Vec::with_capacity(targets.len());
    for (k, &target) in targets.iter().enumerate() {
        let run_seed = seed.wrapping_add(k as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(run_seed);
        let mut x = x0.to_vec();
        let mut value = f.eval(&x);
        let mut error = (value - target).abs();
        let mut evals = 1u64;
        let mut best = Improvement {
            at: 1,
            error,
            point: x.clone(),
            value,
        };
        let mut trace = vec![TraceEntry { at: 1, error }];
        let mut temp = params.t0;
        while evals < budget {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let sign: i64 = if rng.gen::<bool>() { 1 } else { -1 };
            let cand_i = x[i].checked_add(sign * x[j]);
            temp *= params.cooling;
            let Some(cand_i) = cand_i else { continue };
            if cand_i.abs() > WALK_ENTRY_LIMIT {
                continue;
            }
            let mut cand = x.clone();
            cand[i] = cand_i;
            let cand_value = f.eval(&cand);
            evals += 1;
            let cand_error = (cand_value - target).abs();
            let accept = cand_error <= error
                || rng.gen::<f64>() < (-(cand_error - error) / temp.max(1e-300)).exp();
            if accept {
                x = cand;
                value = cand_value;
                error = cand_error;
                if error < best.error {
                    best = Improvement {
                        at: evals,
                        error,
                        point: x.clone(),
                        value,
                    };
                    trace.push(TraceEntry { at: evals, error });
                }
            }
        }
        debug_assert!(is_primitive(&best.point));
        reports.push(SearchReport {
            case: case.to_string(),
            target,
            best_point: best.point,
            best_value: best.value,
            error: best.error,
            evaluations: evals,
            radius_or_budget: budget,
            seed: run_seed,
            trace,
        });
    }
    Ok(reports)
}

// ---------------------------------------------------------------------------
// Quadratic baseline
// ---------------------------------------------------------------------------

/// Expands the quadratic form of a symmetric Gram matrix as a polynomial.
pub fn quadratic_form_poly(a: &QMatrix) -> PolyOnV {
    let n = a.nrows();
    let mut p = PolyOnV::zero(n);
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)].is_zero() {
                continue;
            }
            let mut e = vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            p = p.add(&PolyOnV::monomial(e, a[(i, j)].clone()));
        }
    }
    p
}

/// Checks the density hypotheses for a quadratic form and runs the box
/// scan, attaching the doubling-radius error curve as the trace.
///
/// Hypotheses: dimension at least 3, non-degenerate, indefinite, and
/// irrational (no scalar multiple of the coefficient vector is rational).
/// The violated hypothesis is named in the error.
pub fn oppenheim_baseline(
    case: &str,
    form: &QMatrix,
    targets: &[f64],
    r: i64,
) -> Result<Vec<SearchReport>> {
    let n = form.nrows();
    if !form.is_square() || *form != form.transpose() {
        return Err(Error::Invalid("quadratic form matrix must be symmetric".into()));
    }
    if n < 3 {
        return Err(Error::Hypothesis("form must have dimension at least 3"));
    }
    if form.det().is_zero() {
        return Err(Error::Hypothesis("form must be non-degenerate"));
    }
    let (np, nm, _) = form.signature()?;
    if np == 0 || nm == 0 {
        return Err(Error::Hypothesis("form must be indefinite"));
    }
    let mut coeffs = Vec::new();
    for i in 0..n {
        for j in i..n {
            coeffs.push(form[(i, j)].clone());
        }
    }
    if projective_is_rational(&coeffs)?.is_rational() {
        return Err(Error::Hypothesis(
            "form must be irrational (some coefficient ratio not in Q)",
        ));
    }
    if r < 2 {
        return Err(Error::Invalid("baseline radius must be at least 2".into()));
    }
    if targets.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFiniteInput);
    }

    let f = ExactValue::new(&quadratic_form_poly(form), None)?;
    // Doubling radii 2, 4, ..., capped by and ending at r.
    let mut radii: Vec<i64> = Vec::new();
    let mut cur = 2i64;
    while cur < r {
        radii.push(cur);
        cur *= 2;
    }
    radii.push(r);
    let bucket_of = |x: &[i64]| -> usize {
        let norm = x.iter().map(|v| v.abs()).max().unwrap_or(0);
        radii.iter().position(|&rr| norm <= rr).expect("norm <= r")
    };

    // Sharded scan keeping per-bucket minima.
    struct BaselineShard {
        count: u64,
        // per target, per bucket: (error, local index, point, value)
        best: Vec<Vec<Option<Improvement>>>,
    }
    let shards: Vec<BaselineShard> = (-r..=r)
        .into_par_iter()
        .map(|lead| {
            let mut count = 0u64;
            let mut best: Vec<Vec<Option<Improvement>>> =
                vec![vec![None; radii.len()]; targets.len()];
            for x in primitive_points_shard(n, r, lead) {
                count += 1;
                let v = f.eval(&x);
                let b = bucket_of(&x);
                for (k, &t) in targets.iter().enumerate() {
                    let e = (v - t).abs();
                    let slot = &mut best[k][b];
                    let better = match slot {
                        None => true,
                        Some(s) => e < s.error,
                    };
                    if better {
                        *slot = Some(Improvement {
                            at: count,
                            error: e,
                            point: x.clone(),
                            value: v,
                        });
                    }
                }
            }
            BaselineShard { count, best }
        })
        .collect();

    let mut reports = Vec::with_capacity(targets.len());
    for (k, &target) in targets.iter().enumerate() {
        // Merge buckets across shards in enumeration order, then take
        // prefix minima over growing radius.
        let mut bucket_best: Vec<Option<Improvement>> = vec![None; radii.len()];
        let mut offset = 0u64;
        let mut total = 0u64;
        for shard in &shards {
            for (b, slot) in shard.best[k].iter().enumerate() {
                if let Some(s) = slot {
                    let better = match &bucket_best[b] {
                        None => true,
                        Some(cur) => s.error < cur.error,
                    };
                    if better {
                        let mut g = s.clone();
                        g.at += offset;
                        bucket_best[b] = Some(g);
                    }
                }
            }
            offset += shard.count;
            total += shard.count;
        }
        let mut curve: Vec<TraceEntry> = Vec::new();
        let mut running: Option<Improvement> = None;
        for (b, slot) in bucket_best.iter().enumerate() {
            if let Some(s) = slot {
                let better = match &running {
                    None => true,
                    Some(cur) => {
                        s.error < cur.error || (s.error == cur.error && s.at < cur.at)
                    }
                };
                if better {
                    running = Some(s.clone());
                }
            }
            if let Some(cur) = &running {
                curve.push(TraceEntry {
                    at: radii[b] as u64,
                    error: cur.error,
                });
            }
        }
        let best = running.ok_or(Error::ZeroVector)?;
        reports.push(SearchReport {
            case: case.to_string(),
            target,
            best_point: best.point,
            best_value: best.value,
            error: best.error,
            evaluations: total,
            radius_or_budget: r as u64,
            seed: 0,
            trace: curve,
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{delta_poly, disc_cubic};

    fn delta_value() -> ExactValue {
        ExactValue::new(delta_poly(), None).unwrap()
    }

    fn sqrt2_form() -> QMatrix {
        // x^2 + y^2 - sqrt(2) z^2
        let mut m = QMatrix::identity(3);
        m[(2, 2)] = -QScalar::sqrt_d(2).unwrap();
        m
    }

    #[test]
    fn exact_value_matches_rational_eval() {
        let f = delta_value();
        for p in [[1i64, 0, 1, 0], [2, 3, -5, 7], [1, -6, 11, -6]] {
            let exact = disc_cubic(
                &p.iter()
                    .map(|&k| QScalar::from_int(k))
                    .collect::<Vec<_>>(),
            );
            assert_eq!(f.eval(&p), exact.to_f64());
            assert_eq!(f.eval_forced_big(&p), f.eval(&p));
        }
    }

    #[test]
    fn exact_value_with_irrational_g() {
        // g = diag(1, 1, 1, 1 + sqrt 2): disc(g^{-1} x) at x = (1,0,0,1)
        // is -27/(1+sqrt 2)^2 = -27(3 - 2 sqrt 2).
        let mut g = QMatrix::identity(4);
        g[(3, 3)] = QScalar::new(
            num_rational::BigRational::one(),
            num_rational::BigRational::one(),
            2,
        )
        .unwrap();
        let f = ExactValue::new(delta_poly(), Some(&g)).unwrap();
        let expect = -27.0 * (3.0 - 2.0 * 2.0f64.sqrt());
        let got = f.eval(&[1, 0, 0, 1]);
        assert!((got - expect).abs() < 1e-9, "got {got}, expect {expect}");
        assert_eq!(f.eval_forced_big(&[1, 0, 0, 1]), got);
    }

    #[test]
    fn exact_value_rejects_mixed_fields() {
        let mut g = QMatrix::identity(4);
        g[(0, 0)] = QScalar::sqrt_d(3).unwrap();
        let q = quadratic_form_poly(&sqrt2_form());
        assert!(ExactValue::new(&q, None).is_ok());
        let mut g4 = QMatrix::identity(3);
        g4[(0, 0)] = QScalar::sqrt_d(3).unwrap();
        assert!(matches!(
            ExactValue::new(&q, Some(&g4)),
            Err(Error::MixedContexts(_, _))
        ));
    }

    #[test]
    fn box_finds_exact_values() {
        let f = delta_value();
        let reports = box_search("CUBIC4", &f, 1, &[-4.0, 0.0], 1e-9).unwrap();
        assert_eq!(reports[0].error, 0.0);
        assert_eq!(reports[0].best_value, -4.0);
        assert!(is_primitive(&reports[0].best_point));
        assert_eq!(reports[1].error, 0.0);
        assert_eq!(reports[1].best_value, 0.0);
        // Reported value is reproducible bit for bit.
        for rep in &reports {
            assert_eq!(f.eval(&rep.best_point), rep.best_value);
        }
    }

    #[test]
    fn box_trace_is_monotone_and_deterministic() {
        let f = delta_value();
        let a = box_search("CUBIC4", &f, 3, &[7.0], 1e-9).unwrap();
        let b = box_search("CUBIC4", &f, 3, &[7.0], 1e-9).unwrap();
        assert_eq!(a, b);
        let trace = &a[0].trace;
        assert!(!trace.is_empty());
        for w in trace.windows(2) {
            assert!(w[1].error < w[0].error);
            assert!(w[1].at > w[0].at);
        }
        assert_eq!(trace.last().unwrap().error, a[0].error);
    }

    #[test]
    fn box_nested_radii_monotone() {
        let f = delta_value();
        let mut last = f64::INFINITY;
        for r in [1i64, 2, 4] {
            let rep = box_search("CUBIC4", &f, r, &[7.0], 1e-9).unwrap();
            assert!(rep[0].error <= last);
            last = rep[0].error;
        }
    }

    #[test]
    fn box_rejects_bad_arguments() {
        let f = delta_value();
        assert!(box_search("CUBIC4", &f, 0, &[0.0], 1e-9).is_err());
        assert!(box_search("CUBIC4", &f, 1, &[0.0], 0.0).is_err());
        assert!(box_search("CUBIC4", &f, 1, &[f64::NAN], 1e-9).is_err());
    }

    #[test]
    fn walk_immediate_hit() {
        let f = delta_value();
        let x0 = [1i64, 0, 1, 0];
        let target = f.eval(&x0);
        let reports = walk_search(
            "CUBIC4",
            &f,
            &x0,
            &[target],
            1,
            42,
            &AnnealParams::default(),
        )
        .unwrap();
        assert_eq!(reports[0].error, 0.0);
        assert_eq!(reports[0].evaluations, 1);
        assert_eq!(reports[0].best_point, x0);
    }

    #[test]
    fn walk_rejects_imprimitive_seed() {
        let f = delta_value();
        assert!(matches!(
            walk_search(
                "CUBIC4",
                &f,
                &[2, 0, 2, 0],
                &[0.0],
                10,
                1,
                &AnnealParams::default()
            ),
            Err(Error::NotPrimitive)
        ));
    }

    #[test]
    fn walk_is_reproducible_and_primitive() {
        let f = delta_value();
        let p = AnnealParams::default();
        let a = walk_search("CUBIC4", &f, &[1, 0, 1, 0], &[7.0, -3.0], 500, 11, &p).unwrap();
        let b = walk_search("CUBIC4", &f, &[1, 0, 1, 0], &[7.0, -3.0], 500, 11, &p).unwrap();
        assert_eq!(a, b);
        for rep in &a {
            assert!(is_primitive(&rep.best_point));
            for w in rep.trace.windows(2) {
                assert!(w[1].error < w[0].error);
            }
            // Distinct targets get distinct recorded seeds.
        }
        assert_ne!(a[0].seed, a[1].seed);
    }

    #[test]
    fn baseline_rejects_bad_forms() {
        // Rational indefinite form.
        let mut rational = QMatrix::identity(3);
        rational[(2, 2)] = QScalar::from_int(-2);
        assert!(matches!(
            oppenheim_baseline("BASELINE", &rational, &[0.0], 4),
            Err(Error::Hypothesis(msg)) if msg.contains("irrational")
        ));
        // Definite form.
        let mut definite = QMatrix::identity(3);
        definite[(2, 2)] = QScalar::sqrt_d(2).unwrap();
        assert!(matches!(
            oppenheim_baseline("BASELINE", &definite, &[0.0], 4),
            Err(Error::Hypothesis(msg)) if msg.contains("indefinite")
        ));
        // Too small.
        let mut small = QMatrix::identity(2);
        small[(1, 1)] = -QScalar::sqrt_d(2).unwrap();
        assert!(matches!(
            oppenheim_baseline("BASELINE", &small, &[0.0], 4),
            Err(Error::Hypothesis(msg)) if msg.contains("dimension")
        ));
        // Degenerate.
        let zero_row = QMatrix::zeros(3, 3);
        assert!(matches!(
            oppenheim_baseline("BASELINE", &zero_row, &[0.0], 4),
            Err(Error::Hypothesis(msg)) if msg.contains("non-degenerate")
        ));
    }

    #[test]
    fn baseline_curve_monotone() {
        let reports = oppenheim_baseline("BASELINE", &sqrt2_form(), &[0.0, 1.0], 8).unwrap();
        for rep in &reports {
            assert_eq!(
                rep.trace.iter().map(|t| t.at).collect::<Vec<_>>(),
                vec![2, 4, 8]
            );
            for w in rep.trace.windows(2) {
                assert!(w[1].error <= w[0].error);
            }
            assert_eq!(rep.trace.last().unwrap().error, rep.error);
            assert!(is_primitive(&rep.best_point));
        }
    }

    #[test]
    fn baseline_matches_plain_box() {
        // Same best error as an undecorated box scan at the full radius.
        let form = sqrt2_form();
        let base = oppenheim_baseline("BASELINE", &form, &[0.5], 6).unwrap();
        let f = ExactValue::new(&quadratic_form_poly(&form), None).unwrap();
        let boxed = box_search("BASELINE", &f, 6, &[0.5], 1e-9).unwrap();
        assert_eq!(base[0].error, boxed[0].error);
        assert_eq!(base[0].best_point, boxed[0].best_point);
        assert_eq!(base[0].evaluations, boxed[0].evaluations);
    }

    #[test]
    fn shard_count_does_not_change_reports() {
        let f = delta_value();
        let run = || box_search("CUBIC4", &f, 2, &[5.0], 1e-9).unwrap();
        let serial = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(run);
        let parallel = rayon::ThreadPoolBuilder::new()
            .num_threads(8)
            .build()
            .unwrap()
            .install(run);
        assert_eq!(serial, parallel);
    }
}
