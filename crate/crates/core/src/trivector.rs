//! Alternating trilinear forms on a six-dimensional space.
//!
//! A generic trivector determines a scaled involution `K` on the
//! underlying space and a quartic value `lambda = tr(K^2)/6`. When
//! `lambda > 0` the trivector splits as a sum of two decomposable pieces
//! supported on the eigenplanes of `K`; the rationality of that pair of
//! planes is what the certification here measures. When `lambda < 0` the
//! operator `K/sqrt(-lambda)` is a complex structure and no real split
//! exists.
//!
//! Coefficients are indexed by the 20 strictly increasing index triples
//! in lexicographic order, `(0,1,2), (0,1,3), ..., (3,4,5)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::ExtForm;
use crate::linalg::{eigensplit_sqrt, QMatrix, QVector};
use crate::projective::{projective_is_rational, RationalityVerdict};
use crate::scalar::{parse_scalar, QScalar};
use crate::search::{AnnealParams, TraceEntry};

/// The 20 index triples in lexicographic order.
pub const TRIPLES: [[usize; 3]; 20] = [
    [0, 1, 2],
    [0, 1, 3],
    [0, 1, 4],
    [0, 1, 5],
    [0, 2, 3],
    [0, 2, 4],
    [0, 2, 5],
    [0, 3, 4],
    [0, 3, 5],
    [0, 4, 5],
    [1, 2, 3],
    [1, 2, 4],
    [1, 2, 5],
    [1, 3, 4],
    [1, 3, 5],
    [1, 4, 5],
    [2, 3, 4],
    [2, 3, 5],
    [2, 4, 5],
    [3, 4, 5],
];

/// The 10 triples contained in the first five indices, lexicographic.
/// These are the slots a basis search tries to match.
pub const TARGET_TRIPLES: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 1, 3],
    [0, 1, 4],
    [0, 2, 3],
    [0, 2, 4],
    [0, 3, 4],
    [1, 2, 3],
    [1, 2, 4],
    [1, 3, 4],
    [2, 3, 4],
];

fn triple_index(t: &[usize; 3]) -> usize {
    TRIPLES.iter().position(|u| u == t).expect("sorted triple")
}

/// An alternating 3-form in six variables, stored as 20 coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Trivector {
    coeffs: Vec<QScalar>,
}

impl Trivector {
    pub fn new(coeffs: Vec<QScalar>) -> Result<Self> {
        if coeffs.len() != 20 {
            return Err(Error::DimensionMismatch {
                expected: 20,
                got: coeffs.len(),
            });
        }
        Ok(Trivector { coeffs })
    }

    pub fn zero() -> Self {
        Trivector {
            coeffs: vec![QScalar::zero(); 20],
        }
    }

    /// The split form `e0^e1^e2 + e3^e4^e5`.
    pub fn standard_split() -> Self {
        let mut x = Self::zero();
        x.coeffs[0] = QScalar::one();
        x.coeffs[19] = QScalar::one();
        x
    }

    pub fn coeffs(&self) -> &[QScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Signed coefficient at an arbitrary index triple; zero on repeats.
    pub fn coeff(&self, a: usize, b: usize, c: usize) -> QScalar {
        let mut t = [a, b, c];
        let mut sign = 1i64;
        // Sort three indices, tracking the permutation sign.
        for i in 0..2 {
            for j in 0..2 - i {
                if t[j] > t[j + 1] {
                    t.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if t[0] == t[1] || t[1] == t[2] {
            return QScalar::zero();
        }
        let v = self.coeffs[triple_index(&t)].clone();
        if sign < 0 {
            -&v
        } else {
            v
        }
    }

    /// Joined quadratic context of all coefficients.
    pub fn field(&self) -> Result<Option<u64>> {
        let mut d = None;
        for c in &self.coeffs {
            d = QScalar::join_field(d, c.field()).map_err(|_| {
                Error::MixedContexts(d.unwrap_or(0), c.field().unwrap_or(0))
            })?;
        }
        Ok(d)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Trivector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Trivector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, t: &QScalar) -> Self {
        Trivector {
            coeffs: self.coeffs.iter().map(|c| c * t).collect(),
        }
    }

    pub fn to_ext(&self) -> ExtForm {
        let mut f = ExtForm::zero(6);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let t = TRIPLES[k];
                f = f.add(&ExtForm::basis(
                    6,
                    &[t[0] as u8, t[1] as u8, t[2] as u8],
                    c.clone(),
                ));
            }
        }
        f
    }

    pub fn from_ext(f: &ExtForm) -> Result<Self> {
        if f.dim() != 6 {
            return Err(Error::DimensionMismatch {
                expected: 6,
                got: f.dim(),
            });
        }
        let mut coeffs = vec![QScalar::zero(); 20];
        for (idx, c) in f.terms() {
            if idx.len() != 3 {
                return Err(Error::Invalid("form is not homogeneous of degree 3".into()));
            }
            let t = [idx[0] as usize, idx[1] as usize, idx[2] as usize];
            coeffs[triple_index(&t)] = c.clone();
        }
        Ok(Trivector { coeffs })
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64()).collect()
    }

    /// Parses 20 whitespace-separated scalars in triple order. Scalars
    /// themselves must be written without internal whitespace.
    pub fn parse(text: &str, ctx: Option<u64>) -> Result<Self> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 20 {
            return Err(Error::Parse(format!(
                "expected 20 coefficients, got {}",
                toks.len()
            )));
        }
        let coeffs = toks
            .iter()
            .map(|t| parse_scalar(t, ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(Trivector { coeffs })
    }

    /// Inverse of `parse`: compact scalars joined by single spaces.
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string().replace(' ', ""))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Wedge of three vectors as a trivector; zero if they are dependent.
pub fn from_wedge(u: &[QScalar], v: &[QScalar], t: &[QScalar]) -> Result<Trivector> {
    for x in [u, v, t] {
        if x.len() != 6 {
            return Err(Error::DimensionMismatch {
                expected: 6,
                got: x.len(),
            });
        }
    }
    let w = ExtForm::one_form(u)
        .wedge(&ExtForm::one_form(v))
        .wedge(&ExtForm::one_form(t));
    Trivector::from_ext(&w)
}

/// Pushforward of a trivector along an invertible matrix: each basis
/// vector `e_i` is replaced by the `i`-th column of `g`.
pub fn act(g: &QMatrix, x: &Trivector) -> Result<Trivector> {
    if g.nrows() != 6 || g.ncols() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            got: g.nrows(),
        });
    }
    Trivector::from_ext(&x.to_ext().linear_substitute(g))
}

/// Value of the trilinear form on three vectors.
pub fn eval_trivector(
    x: &Trivector,
    u: &[QScalar],
    v: &[QScalar],
    t: &[QScalar],
) -> Result<QScalar> {
    let w = from_wedge(u, v, t)?;
    let mut acc = QScalar::zero();
    for (a, b) in x.coeffs.iter().zip(&w.coeffs) {
        acc = &acc + &(a * b);
    }
    Ok(acc)
}

/// Values of `x` on the row triples of `u` listed in `TARGET_TRIPLES`.
pub fn target_values(x: &Trivector, u: &QMatrix) -> Result<Vec<QScalar>> {
    if u.nrows() != 6 || u.ncols() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            got: u.nrows(),
        });
    }
    TARGET_TRIPLES
        .iter()
        .map(|t| eval_trivector(x, u.row(t[0]), u.row(t[1]), u.row(t[2])))
        .collect()
}

/// The operator `K` of a trivector: contracting with a covector and
/// wedging back, `(iota_xi omega) ^ omega`, lands in the 5-forms, which
/// the volume form identifies with covectors again. Transposing that
/// dual-space matrix gives the endomorphism of the underlying space,
/// which satisfies `K(g omega) = det(g) g K(omega) g^{-1}` and whose
/// eigenplanes carry the split of `omega`.
pub fn k_operator(x: &Trivector) -> QMatrix {
    let om = x.to_ext();
    let mut k = QMatrix::zeros(6, 6);
    for a in 0..6 {
        let mut ea = vec![QScalar::zero(); 6];
        ea[a] = QScalar::one();
        let five = om.contract(&ea).wedge(&om);
        for b in 0..6usize {
            let comp: Vec<u8> = (0..6u8).filter(|&i| i as usize != b).collect();
            let c = five.coeff(&comp);
            k[(a, b)] = if b % 2 == 1 { -&c } else { c };
        }
    }
    k
}

/// The quartic value `tr(K^2)/6`.
pub fn quartic_lambda(x: &Trivector) -> QScalar {
    let k = k_operator(x);
    let t = k.mul(&k).trace();
    &t * &QScalar::from_rational(num_rational::BigRational::new(
        num_bigint::BigInt::from(1),
        num_bigint::BigInt::from(6),
    ))
}

/// Eigenplane split of a trivector with `lambda != 0`.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Decomposition {
    /// `lambda > 0`: `omega = omega1 + omega2` with each piece
    /// decomposable on a 3-dimensional eigenplane of `K`.
    RealSplit {
        lambda: QScalar,
        /// Positive square root of `lambda`, possibly in an extension.
        root: QScalar,
        /// Field parameter after any extension.
        field: Option<u64>,
        /// Basis of the `+root` eigenplane.
        e1: Vec<QVector>,
        /// Basis of the `-root` eigenplane.
        e2: Vec<QVector>,
        omega1: Trivector,
        omega2: Trivector,
    },
    /// `lambda < 0`: `K/sqrt(-lambda)` is a complex structure; no real
    /// split exists.
    ComplexPair { lambda: QScalar, k: QMatrix },
}

/// Splits a trivector along the eigenplanes of its `K` operator.
///
/// Errors: `NotSemistable` when `lambda = 0`, `NotAScaledInvolution`
/// when `K^2 != lambda I`, `SqrtNotInField` when the split would need a
/// second independent square root.
pub fn decompose_trivector(x: &Trivector) -> Result<Decomposition> {
    let k = k_operator(x);
    let lambda = quartic_lambda(x);
    if lambda.is_zero() {
        return Err(Error::NotSemistable);
    }
    if k.mul(&k) != QMatrix::identity(6).scale(&lambda) {
        return Err(Error::NotAScaledInvolution);
    }
    if lambda.signum() < 0 {
        return Ok(Decomposition::ComplexPair { lambda, k });
    }
    let split = eigensplit_sqrt(&k, &lambda)?;
    if split.plus.len() != 3 || split.minus.len() != 3 {
        return Err(Error::Invalid(format!(
            "eigenplanes have dimensions {} and {}, expected 3 and 3",
            split.plus.len(),
            split.minus.len()
        )));
    }
    // Change of basis to the eigenbasis: columns of p are e1 then e2.
    let p = QMatrix::from_fn(6, 6, |i, j| {
        if j < 3 {
            split.plus[j][i].clone()
        } else {
            split.minus[j - 3][i].clone()
        }
    });
    let eta = act(&p.inverse()?, x)?;
    for (idx, t) in TRIPLES.iter().enumerate() {
        let pure = *t == [0, 1, 2] || *t == [3, 4, 5];
        if !pure && !eta.coeffs[idx].is_zero() {
            return Err(Error::Invalid(
                "mixed eigenplane components do not vanish".into(),
            ));
        }
    }
    let y1 = eta.coeffs[0].clone();
    let y2 = eta.coeffs[19].clone();
    let omega1 = from_wedge(&split.plus[0], &split.plus[1], &split.plus[2])?.scale(&y1);
    let omega2 = from_wedge(&split.minus[0], &split.minus[1], &split.minus[2])?.scale(&y2);
    if omega1.add(&omega2) != *x {
        return Err(Error::Invalid("eigenplane pieces do not sum back".into()));
    }
    Ok(Decomposition::RealSplit {
        lambda,
        root: split.root,
        field: split.field,
        e1: split.plus,
        e2: split.minus,
        omega1,
        omega2,
    })
}

/// True when the form is a single wedge of three vectors. Tested via the
/// annihilator `{v : v ^ omega = 0}`, which is 3-dimensional exactly for
/// non-zero decomposable forms.
pub fn is_decomposable(x: &Trivector) -> bool {
    if x.is_zero() {
        return false;
    }
    let om = x.to_ext();
    // 4-subsets of {0..5} in lexicographic order index the rows.
    let mut quads: Vec<Vec<u8>> = Vec::new();
    for a in 0..6u8 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                for e in c + 1..6 {
                    quads.push(vec![a, b, c, e]);
                }
            }
        }
    }
    let mut m = QMatrix::zeros(quads.len(), 6);
    for j in 0..6usize {
        let mut ej = vec![QScalar::zero(); 6];
        ej[j] = QScalar::one();
        let w = ExtForm::one_form(&ej).wedge(&om);
        for (i, q) in quads.iter().enumerate() {
            m[(i, j)] = w.coeff(q);
        }
    }
    m.right_kernel().len() == 3
}

/// Maximal minors of a 6x3 basis matrix, indexed by `TRIPLES`.
pub fn plucker(basis: &[QVector]) -> Result<Vec<QScalar>> {
    if basis.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: basis.len(),
        });
    }
    let w = from_wedge(&basis[0], &basis[1], &basis[2])?;
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(w.coeffs)
}

fn plucker_coeff(p: &[QScalar], a: usize, b: usize, c: usize) -> QScalar {
    let mut t = [a, b, c];
    let mut sign = 1i64;
    for i in 0..2 {
        for j in 0..2 - i {
            if t[j] > t[j + 1] {
                t.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if t[0] == t[1] || t[1] == t[2] {
        return QScalar::zero();
    }
    let v = p[triple_index(&t)].clone();
    if sign < 0 {
        -&v
    } else {
        v
    }
}

/// Checks the quadratic shuffle relations cutting out the image of
/// `plucker` inside the 20 coordinates.
pub fn plucker_relations_hold(p: &[QScalar]) -> Result<bool> {
    if p.len() != 20 {
        return Err(Error::DimensionMismatch {
            expected: 20,
            got: p.len(),
        });
    }
    // For each pair s1 < s2 and each 4-set t1 < t2 < t3 < t4:
    // sum_l (-1)^l p[s1 s2 tl] p[t-set minus tl] = 0.
    for s1 in 0..6usize {
        for s2 in s1 + 1..6 {
            for t1 in 0..6usize {
                for t2 in t1 + 1..6 {
                    for t3 in t2 + 1..6 {
                        for t4 in t3 + 1..6 {
                            let quad = [t1, t2, t3, t4];
                            let mut acc = QScalar::zero();
                            for (l, &tl) in quad.iter().enumerate() {
                                let rest: Vec<usize> =
                                    quad.iter().copied().filter(|&q| q != tl).collect();
                                let prod = &plucker_coeff(p, s1, s2, tl)
                                    * &plucker_coeff(p, rest[0], rest[1], rest[2]);
                                acc = if l % 2 == 0 {
                                    &acc + &prod
                                } else {
                                    &acc - &prod
                                };
                            }
                            if !acc.is_zero() {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Symmetrized pairwise products of two 20-coordinate vectors: the 210
/// entries `p_i q_j + p_j q_i` for `i <= j`, lexicographic.
pub fn pair_point(p: &[QScalar], q: &[QScalar]) -> Result<Vec<QScalar>> {
    if p.len() != 20 || q.len() != 20 {
        return Err(Error::DimensionMismatch {
            expected: 20,
            got: p.len().max(q.len()),
        });
    }
    let mut out = Vec::with_capacity(210);
    for i in 0..20 {
        for j in i..20 {
            out.push(&(&p[i] * &q[j]) + &(&p[j] * &q[i]));
        }
    }
    Ok(out)
}

/// Whether the eigenplane pair is real or complex conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reality {
    RealPair,
    ComplexPair,
}

/// Rationality audit of the eigenplane pair of a trivector.
#[derive(Debug, Clone)]
pub struct Theorem11Certificate {
    pub lambda: QScalar,
    pub reality: Reality,
    /// Verdict on the first eigenplane's minor vector.
    pub verdict_e1: Option<RationalityVerdict>,
    /// Verdict on the second eigenplane's minor vector.
    pub verdict_e2: Option<RationalityVerdict>,
    /// Verdict on the symmetrized pair point, which sees the unordered
    /// pair of planes.
    pub verdict_pair: Option<RationalityVerdict>,
    /// True when the split is real and all three verdicts are irrational.
    pub sufficiently_irrational: bool,
}

/// Decomposes the trivector and audits the rationality of its planes.
///
/// All three images must be irrational: each plane separately and the
/// unordered pair. The tests are independent: conjugate planes are
/// individually irrational yet rational as a pair, while a shear can
/// leave one plane rational and still scramble the pair point.
pub fn certify_theorem11(x: &Trivector) -> Result<Theorem11Certificate> {
    match decompose_trivector(x)? {
        Decomposition::RealSplit {
            lambda, e1, e2, ..
        } => {
            let p1 = plucker(&e1)?;
            let p2 = plucker(&e2)?;
            let v1 = projective_is_rational(&p1)?;
            let v2 = projective_is_rational(&p2)?;
            let pair = pair_point(&p1, &p2)?;
            let vp = projective_is_rational(&pair)?;
            let sufficient =
                !v1.is_rational() && !v2.is_rational() && !vp.is_rational();
            Ok(Theorem11Certificate {
                lambda,
                reality: Reality::RealPair,
                verdict_e1: Some(v1),
                verdict_e2: Some(v2),
                verdict_pair: Some(vp),
                sufficiently_irrational: sufficient,
            })
        }
        Decomposition::ComplexPair { lambda, .. } => Ok(Theorem11Certificate {
            lambda,
            reality: Reality::ComplexPair,
            verdict_e1: None,
            verdict_e2: None,
            verdict_pair: None,
            sufficiently_irrational: false,
        }),
    }
}

// ---------------------------------------------------------------------------
// Integer basis search
// ---------------------------------------------------------------------------

/// Entry bound beyond which row moves are rejected; keeps 3x3 minors
/// inside `i128`.
const BASIS_ENTRY_LIMIT: i64 = 1 << 40;

/// Outcome of a basis search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisSearchReport {
    /// Best achieved objective: max absolute slot error.
    pub objective: f64,
    /// The unimodular matrix achieving it, as rows.
    pub best_basis: Vec<Vec<i64>>,
    pub evaluations: u64,
    pub budget: u64,
    pub seed: u64,
    pub trace: Vec<TraceEntry>,
}

fn det3(u: &[[i64; 6]; 6], r: [usize; 3], c: [usize; 3]) -> i128 {
    let m = |i: usize, j: usize| u[r[i]][c[j]] as i128;
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Returns (objective, energy): the objective is the max slot error;
/// the energy adds a small multiple of the total error so annealing can
/// walk plateaus where the max alone is flat.
fn basis_objective(u: &[[i64; 6]; 6], terms: &[(f64, [usize; 3])], y: &[f64]) -> (f64, f64) {
    let mut worst = 0.0f64;
    let mut total = 0.0f64;
    for (slot, t) in TARGET_TRIPLES.iter().enumerate() {
        let mut val = 0.0f64;
        for (c, cols) in terms {
            val += c * det3(u, *t, *cols) as f64;
        }
        let e = (val - y[slot]).abs();
        total += e;
        if e > worst {
            worst = e;
        }
    }
    (worst, worst + 0.15 * total)
}

/// Annealed search for an integer unimodular basis whose first five rows
/// give prescribed values of the trilinear form.
///
/// State is a matrix in `GL(6, Z)` starting at the identity; moves are
/// row operations `u_i <- u_i +- u_j`. The objective is the maximum
/// absolute error over the ten `TARGET_TRIPLES` slots. Restarts reuse
/// one random stream, so a report is reproducible from its seed.
pub fn basis_search(
    x: &[f64],
    y: &[f64],
    eps: f64,
    budget: u64,
    seed: u64,
    params: &AnnealParams,
) -> Result<BasisSearchReport> {
    if x.len() != 20 {
        return Err(Error::DimensionMismatch {
            expected: 20,
            got: x.len(),
        });
    }
    if y.len() != 10 {
        return Err(Error::DimensionMismatch {
            expected: 10,
            got: y.len(),
        });
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    if eps.is_nan() || eps < 0.0 || budget < 1 {
        return Err(Error::Invalid(
            "basis search needs eps >= 0 and a positive budget".into(),
        ));
    }
    let terms: Vec<(f64, [usize; 3])> = x
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(i, c)| (*c, TRIPLES[i]))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let restarts = params.restarts.max(1) as u64;
    let per_restart = (budget / restarts).max(1);

    let identity = {
        let mut u = [[0i64; 6]; 6];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = 1;
        }
        u
    };
    let (mut best, _) = basis_objective(&identity, &terms, y);
    let mut best_u = identity;
    let mut evals = 1u64;
    let mut trace = vec![TraceEntry {
        at: 1,
        error: best,
    }];

    'outer: for _ in 0..restarts {
        let mut u = identity;
        let (_, mut cur) = basis_objective(&u, &terms, y);
        let mut temp = params.t0 * (1.0 + cur);
        let mut steps = 0u64;
        while steps < per_restart {
            if best <= eps {
                break 'outer;
            }
            if evals >= budget {
                break 'outer;
            }
            let i = rng.gen_range(0..6);
            let mut j = rng.gen_range(0..5);
            if j >= i {
                j += 1;
            }
            let sign: i64 = if rng.gen::<bool>() { 1 } else { -1 };
            temp *= params.cooling;
            steps += 1;
            let mut row = [0i64; 6];
            let mut ok = true;
            for (k, slot) in row.iter_mut().enumerate() {
                let v = u[i][k] + sign * u[j][k];
                if v.abs() > BASIS_ENTRY_LIMIT {
                    ok = false;
                    break;
                }
                *slot = v;
            }
            if !ok {
                continue;
            }
            let mut cand = u;
            cand[i] = row;
            let (cand_obj, cand_energy) = basis_objective(&cand, &terms, y);
            evals += 1;
            let accept = cand_energy <= cur
                || rng.gen::<f64>() < (-(cand_energy - cur) / temp.max(1e-300)).exp();
            if accept {
                u = cand;
                cur = cand_energy;
                if cand_obj < best {
                    best = cand_obj;
                    best_u = u;
                    trace.push(TraceEntry {
                        at: evals,
                        error: best,
                    });
                }
            }
        }
        if best <= eps {
            break;
        }
    }

    Ok(BasisSearchReport {
        objective: best,
        best_basis: best_u.iter().map(|r| r.to_vec()).collect(),
        evaluations: evals,
        budget,
        seed,
        trace,
    })
}
