//! Polynomial invariants of three small representations: binary cubics
//! and binary quartics under SL(2), and the adjoint representation of
//! SL(3). A generic solver derives the invariants of a given degree as
//! the exact kernel of the infinitesimal generator actions; the derived
//! quadratic/cubic pairs feed the irrationality certificates used by the
//! density searches.
//!
//! Normalization rule for emitted polynomials: coprime integer
//! coefficients, and the first non-zero coefficient in the canonical
//! monomial order is positive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::LazyLock;

use crate::actions::{derivation_apply, derivation_matrix, sl2_generators};
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVector};
use crate::poly::{monomials_of_degree, PolyOnV};
use crate::projective::{projective_is_rational, RationalityVerdict};
use crate::scalar::QScalar;

/// The representations known to the invariant solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rep {
    /// Binary cubics under SL(2): 4 coordinates.
    Sym3,
    /// Binary quartics under SL(2): 5 coordinates.
    Sym4,
    /// Traceless 3 x 3 matrices under conjugation: 8 coordinates.
    AdjointSl3,
}

impl Rep {
    pub fn dim(self) -> usize {
        match self {
            Rep::Sym3 => 4,
            Rep::Sym4 => 5,
            Rep::AdjointSl3 => 8,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Rep::Sym3 => "CUBIC4",
            Rep::Sym4 => "SYM4",
            Rep::AdjointSl3 => "ADJ_SL3",
        }
    }
}

/// Fixed basis of the traceless 3 x 3 matrices: the six off-diagonal
/// units in row-major order, then diag(1,-1,0) and diag(0,1,-1). The
/// order is part of the interface; coordinate files rely on it.
pub fn adj_sl3_basis() -> Vec<QMatrix> {
    let mut basis = Vec::with_capacity(8);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut m = QMatrix::zeros(3, 3);
                m[(i, j)] = QScalar::one();
                basis.push(m);
            }
        }
    }
    basis.push(QMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]));
    basis.push(QMatrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]]));
    basis
}

/// Coordinates of a traceless matrix in [`adj_sl3_basis`].
pub fn adj_sl3_coords(x: &QMatrix) -> Result<QVector> {
    if x.nrows() != 3 || x.ncols() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: x.nrows(),
        });
    }
    if !x.trace().is_zero() {
        return Err(Error::NotTraceless);
    }
    Ok(vec![
        x[(0, 1)].clone(),
        x[(0, 2)].clone(),
        x[(1, 0)].clone(),
        x[(1, 2)].clone(),
        x[(2, 0)].clone(),
        x[(2, 1)].clone(),
        x[(0, 0)].clone(),
        &x[(0, 0)] + &x[(1, 1)],
    ])
}

pub fn adj_sl3_from_coords(c: &[QScalar]) -> QMatrix {
    assert_eq!(c.len(), 8);
    let basis = adj_sl3_basis();
    let mut m = QMatrix::zeros(3, 3);
    for (ck, bk) in c.iter().zip(&basis) {
        m = m.add(&bk.scale(ck));
    }
    m
}

/// Matrix of `Y -> [x, Y]` on the 8 adjoint coordinates.
pub fn adj_infinitesimal_matrix(x: &QMatrix) -> Result<QMatrix> {
    let basis = adj_sl3_basis();
    let mut cols = Vec::with_capacity(8);
    for b in &basis {
        cols.push(adj_sl3_coords(&x.mul(b).sub(&b.mul(x)))?);
    }
    Ok(QMatrix::from_fn(8, 8, |r, c| cols[c][r].clone()))
}

/// Matrix of `Y -> g Y g^{-1}` on the 8 adjoint coordinates.
pub fn adj_rep_matrix(g: &QMatrix) -> Result<QMatrix> {
    let gi = g.inverse()?;
    let basis = adj_sl3_basis();
    let mut cols = Vec::with_capacity(8);
    for b in &basis {
        cols.push(adj_sl3_coords(&g.mul(b).mul(&gi))?);
    }
    Ok(QMatrix::from_fn(8, 8, |r, c| cols[c][r].clone()))
}

/// Infinitesimal generator actions on the representation's coordinate
/// space. Kernels of the induced derivations cut out the invariants.
pub fn rep_generator_actions(rep: Rep) -> Vec<QMatrix> {
    match rep {
        Rep::Sym3 | Rep::Sym4 => {
            let deg = if rep == Rep::Sym3 { 3 } else { 4 };
            let (e, _, f) = sl2_generators();
            vec![derivation_matrix(&e, deg), derivation_matrix(&f, deg)]
        }
        Rep::AdjointSl3 => {
            // E12, E21, E23, E32 generate the full algebra.
            let pairs = [(0usize, 1usize), (1, 0), (1, 2), (2, 1)];
            pairs
                .iter()
                .map(|&(i, j)| {
                    let mut m = QMatrix::zeros(3, 3);
                    m[(i, j)] = QScalar::one();
                    adj_infinitesimal_matrix(&m).expect("traceless generator")
                })
                .collect()
        }
    }
}

/// Rescales to coprime integer coefficients with positive leading
/// coefficient (first non-zero in canonical monomial order).
pub fn normalize_integer(p: &PolyOnV, degree: u32) -> Result<PolyOnV> {
    let coeffs = p.coeff_vector(degree);
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    let mut leading_sign = 0i32;
    for c in &coeffs {
        let r = c
            .as_rational()
            .ok_or_else(|| Error::Invalid("normalization needs rational coefficients".into()))?;
        if r.is_zero() {
            continue;
        }
        if leading_sign == 0 {
            leading_sign = if r.is_positive() { 1 } else { -1 };
        }
        lcm = lcm.lcm(r.denom());
        gcd = gcd.gcd(r.numer());
    }
    if leading_sign == 0 {
        return Ok(p.clone());
    }
    // Multiply by lcm of denominators over gcd of numerators; the result
    // has integer coefficients with unit content.
    let scale = QScalar::from_rational(num_rational::BigRational::new(
        BigInt::from(leading_sign) * lcm,
        gcd,
    ));
    Ok(p.scale(&scale))
}

/// Basis of the degree-`degree` invariants of `rep`, derived as the
/// exact kernel of the stacked generator derivations and normalized to
/// coprime integer coefficients.
pub fn solve_invariants(rep: Rep, degree: u32) -> Result<Vec<PolyOnV>> {
    if degree > 4 {
        return Err(Error::UnsupportedRep(format!(
            "invariant solver handles degree <= 4, got {degree}"
        )));
    }
    let n = rep.dim();
    let gens = rep_generator_actions(rep);
    let mons = monomials_of_degree(n, degree);
    let ncols = mons.len();
    // One block of rows per generator: the derivation of each basis
    // monomial, expanded back over the same monomial basis.
    let mut rows: Vec<QVector> = Vec::with_capacity(gens.len() * ncols);
    for gen in &gens {
        let mut block: Vec<QVector> = vec![vec![QScalar::zero(); ncols]; ncols];
        for (k, e) in mons.iter().enumerate() {
            let m = PolyOnV::monomial(e.clone(), QScalar::one());
            let image = derivation_apply(gen, &m).coeff_vector(degree);
            for (r, val) in image.into_iter().enumerate() {
                block[r][k] = val;
            }
        }
        rows.extend(block);
    }
    let kernel = QMatrix::from_rows(rows).right_kernel();
    kernel
        .iter()
        .map(|v| normalize_integer(&PolyOnV::from_coeff_vector(n, degree, v), degree))
        .collect()
}

/// The quadratic and cubic generators of one Theorem-15 family.
#[derive(Debug, Clone)]
pub struct InvariantPair {
    pub rep: Rep,
    pub q: PolyOnV,
    pub f: PolyOnV,
}

static SYM4_PAIR: LazyLock<InvariantPair> = LazyLock::new(|| {
    InvariantPair::derive(Rep::Sym4).expect("quartic invariants must exist")
});
static ADJ_PAIR: LazyLock<InvariantPair> = LazyLock::new(|| {
    InvariantPair::derive(Rep::AdjointSl3).expect("adjoint invariants must exist")
});

impl InvariantPair {
    fn derive(rep: Rep) -> Result<InvariantPair> {
        let q = solve_invariants(rep, 2)?;
        let f = solve_invariants(rep, 3)?;
        match (q.as_slice(), f.as_slice()) {
            ([q], [f]) => Ok(InvariantPair {
                rep,
                q: q.clone(),
                f: f.clone(),
            }),
            _ => Err(Error::Invalid(format!(
                "expected unique quadratic and cubic invariants, got {} and {}",
                q.len(),
                f.len()
            ))),
        }
    }

    /// Cached generators for the two supported families.
    pub fn cached(rep: Rep) -> Result<&'static InvariantPair> {
        match rep {
            Rep::Sym4 => Ok(&SYM4_PAIR),
            Rep::AdjointSl3 => Ok(&ADJ_PAIR),
            Rep::Sym3 => Err(Error::UnsupportedRep(
                "binary cubics have no quadratic invariant".into(),
            )),
        }
    }
}

/// Evaluates the derived (Q, F) pair on a binary quartic.
pub fn quartic_qf(coeffs: &[QScalar]) -> (QScalar, QScalar) {
    assert_eq!(coeffs.len(), 5, "binary quartic has 5 coefficients");
    let pair = InvariantPair::cached(Rep::Sym4).unwrap();
    (pair.q.eval(coeffs), pair.f.eval(coeffs))
}

/// `(tr X^2, det X)` for a traceless 3 x 3 matrix.
pub fn sl3_qf(x: &QMatrix) -> Result<(QScalar, QScalar)> {
    if x.nrows() != 3 || x.ncols() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: x.nrows(),
        });
    }
    if !x.trace().is_zero() {
        return Err(Error::NotTraceless);
    }
    Ok((x.mul(x).trace(), x.det()))
}

/// Certificate that a coordinate change makes the quadratic invariant
/// irrational (the density hypothesis for these families).
#[derive(Debug, Clone)]
pub struct Theorem15Certificate {
    pub rep: Rep,
    /// `Q(g^{-1} x)` as an exact quadratic form.
    pub pulled: PolyOnV,
    /// Rationality of the pulled-back coefficient vector up to scale.
    pub q_verdict: RationalityVerdict,
    pub irrational: bool,
}

/// Pulls the quadratic invariant back through `g` and decides whether
/// the resulting form is irrational (no scalar multiple has all-rational
/// coefficients).
pub fn certify_theorem15(g: &QMatrix, rep: Rep) -> Result<Theorem15Certificate> {
    let pair = InvariantPair::cached(rep)?;
    let n = rep.dim();
    if g.nrows() != n || g.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: g.nrows(),
        });
    }
    let pulled = pair.q.substitute_linear(&g.inverse()?);
    let coeffs = pulled.coeff_vector(2);
    let q_verdict = projective_is_rational(&coeffs)?;
    let irrational = !q_verdict.is_rational();
    Ok(Theorem15Certificate {
        rep,
        pulled,
        q_verdict,
        irrational,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::sym_power_action;
    use crate::cubic::delta_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cubic_discriminant_is_the_unique_quartic_invariant() {
        let basis = solve_invariants(Rep::Sym3, 4).unwrap();
        assert_eq!(basis.len(), 1);
        // The canonical-order leading term of the discriminant is the
        // negative -27 x0^2 x3^2, so normalization flips the sign.
        assert_eq!(basis[0], delta_poly().scale(&QScalar::from_int(-1)));
    }

    #[test]
    fn no_low_degree_cubic_invariants() {
        for d in 1..=3u32 {
            assert!(solve_invariants(Rep::Sym3, d).unwrap().is_empty());
        }
        assert!(solve_invariants(Rep::Sym4, 1).unwrap().is_empty());
        assert!(solve_invariants(Rep::AdjointSl3, 1).unwrap().is_empty());
    }

    #[test]
    fn degree_bound_enforced() {
        assert!(matches!(
            solve_invariants(Rep::Sym4, 5),
            Err(Error::UnsupportedRep(_))
        ));
    }

    #[test]
    fn quartic_q_matches_apolar_form() {
        // Independent derivation: the quadratic invariant of
        // a t^4 + b t^3 + c t^2 + d t + e is proportional to
        // 12 a e - 3 b d + c^2.
        let basis = solve_invariants(Rep::Sym4, 2).unwrap();
        assert_eq!(basis.len(), 1);
        let mut expect = PolyOnV::zero(5);
        for (e, c) in [
            (vec![1u32, 0, 0, 0, 1], 12i64),
            (vec![0, 1, 0, 1, 0], -3),
            (vec![0, 0, 2, 0, 0], 1),
        ] {
            expect = expect.add(&PolyOnV::monomial(e, QScalar::from_int(c)));
        }
        assert_eq!(basis[0], expect);
    }

    #[test]
    fn quartic_invariants_are_annihilated() {
        let pair = InvariantPair::cached(Rep::Sym4).unwrap();
        for gen in rep_generator_actions(Rep::Sym4) {
            assert!(derivation_apply(&gen, &pair.q).is_zero());
            assert!(derivation_apply(&gen, &pair.f).is_zero());
        }
    }

    #[test]
    fn quartic_null_cone_point() {
        let x: Vec<QScalar> = [1i64, 0, 0, 0, 0]
            .iter()
            .map(|&k| QScalar::from_int(k))
            .collect();
        assert_eq!(quartic_qf(&x), (QScalar::zero(), QScalar::zero()));
    }

    #[test]
    fn quartic_invariance_and_homogeneity() {
        let pair = InvariantPair::cached(Rep::Sym4).unwrap();
        let s = QMatrix::from_i64(&[&[2, 5], &[1, 3]]); // det 1
        let rho = sym_power_action(&s, 4).unwrap();
        assert_eq!(pair.q.substitute_linear(&rho), pair.q);
        assert_eq!(pair.f.substitute_linear(&rho), pair.f);
        // F(t x) = t^3 F(x)
        let x: Vec<QScalar> = [2i64, -1, 3, 0, 5]
            .iter()
            .map(|&k| QScalar::from_int(k))
            .collect();
        let t = QScalar::rational(7, 2);
        let tx: Vec<QScalar> = x.iter().map(|v| v * &t).collect();
        let (_, f) = quartic_qf(&x);
        let (_, ft) = quartic_qf(&tx);
        assert_eq!(ft, &t.pow(3).unwrap() * &f);
    }

    #[test]
    fn adjoint_invariants_match_trace_and_det() {
        // Closed forms of tr X^2 and det X in the fixed coordinates,
        // expanded independently from the basis matrices.
        let basis = adj_sl3_basis();
        let entry = |i: usize, j: usize| {
            let mut p = PolyOnV::zero(8);
            for (k, b) in basis.iter().enumerate() {
                if !b[(i, j)].is_zero() {
                    let mut e = vec![0u32; 8];
                    e[k] = 1;
                    p = p.add(&PolyOnV::monomial(e, b[(i, j)].clone()));
                }
            }
            p
        };
        let mut tr2 = PolyOnV::zero(8);
        for i in 0..3 {
            for j in 0..3 {
                tr2 = tr2.add(&entry(i, j).mul(&entry(j, i)));
            }
        }
        let mut det = PolyOnV::zero(8);
        for (perm, sign) in [
            ([0usize, 1, 2], 1i64),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
            ([1, 0, 2], -1),
        ] {
            let term = entry(0, perm[0])
                .mul(&entry(1, perm[1]))
                .mul(&entry(2, perm[2]));
            det = det.add(&term.scale(&QScalar::from_int(sign)));
        }
        let pair = InvariantPair::cached(Rep::AdjointSl3).unwrap();
        assert_eq!(pair.q, normalize_integer(&tr2, 2).unwrap());
        assert_eq!(pair.f, normalize_integer(&det, 3).unwrap());
    }

    #[test]
    fn sl3_qf_reference_values() {
        let x = QMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
        assert_eq!(
            sl3_qf(&x).unwrap(),
            (QScalar::from_int(2), QScalar::zero())
        );
        let y = QMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]);
        assert_eq!(
            sl3_qf(&y).unwrap(),
            (QScalar::from_int(6), QScalar::from_int(-2))
        );
        let bad = QMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(matches!(sl3_qf(&bad), Err(Error::NotTraceless)));
    }

    #[test]
    fn sl3_qf_conjugation_invariance() {
        let x = QMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, -2]]);
        let g = QMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]); // det 1
        let gx = g.mul(&x).mul(&g.inverse().unwrap());
        assert_eq!(sl3_qf(&x).unwrap(), sl3_qf(&gx).unwrap());
    }

    #[test]
    fn adjoint_coords_round_trip() {
        let x = QMatrix::from_i64(&[&[2, 5, -1], &[3, -7, 0], &[1, 4, 5]]);
        let c = adj_sl3_coords(&x).unwrap();
        assert_eq!(adj_sl3_from_coords(&c), x);
        assert!(matches!(
            adj_sl3_coords(&QMatrix::identity(3)),
            Err(Error::NotTraceless)
        ));
    }

    #[test]
    fn adjoint_rep_matrix_is_a_homomorphism() {
        let g = QMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let h = QMatrix::from_i64(&[&[1, 0, 0], &[2, 1, 0], &[0, 3, 1]]);
        let lhs = adj_rep_matrix(&g.mul(&h)).unwrap();
        let rhs = adj_rep_matrix(&g)
            .unwrap()
            .mul(&adj_rep_matrix(&h).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariants_closed_under_group_action() {
        // Pullback through a rational group element stays in the span
        // (here: equality, since invariants are absolute for SL).
        let pair = InvariantPair::cached(Rep::AdjointSl3).unwrap();
        let g = QMatrix::from_i64(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 1]]); // det 1
        let rep = adj_rep_matrix(&g).unwrap();
        assert_eq!(pair.q.substitute_linear(&rep), pair.q);
        assert_eq!(pair.f.substitute_linear(&rep), pair.f);
    }

    #[test]
    fn certify_identity_is_rational() {
        for rep in [Rep::Sym4, Rep::AdjointSl3] {
            let c = certify_theorem15(&QMatrix::identity(rep.dim()), rep).unwrap();
            assert!(!c.irrational);
            assert_eq!(c.irrational, !c.q_verdict.is_rational());
        }
    }

    #[test]
    fn certify_sqrt2_stretch_is_irrational() {
        let mut g = QMatrix::identity(5);
        g[(0, 0)] = QScalar::new(
            num_rational::BigRational::one(),
            num_rational::BigRational::one(),
            2,
        )
        .unwrap();
        let c = certify_theorem15(&g, Rep::Sym4).unwrap();
        assert!(c.irrational);
    }

    #[test]
    fn certify_group_image_is_rational() {
        // s in SL(2, Q(sqrt 2)): Q is invariant, so the class stays [Q].
        let s2 = QScalar::sqrt_d(2).unwrap();
        let s = QMatrix::from_rows(vec![
            vec![QScalar::one(), s2.clone()],
            vec![&s2 * &QScalar::rational(1, 2), QScalar::from_int(2)],
        ]);
        assert_eq!(s.det(), QScalar::one());
        let g = sym_power_action(&s, 4).unwrap();
        let c = certify_theorem15(&g, Rep::Sym4).unwrap();
        assert!(!c.irrational);
    }

    #[test]
    fn certify_verdict_stable_under_rational_group_factor() {
        let mut g = QMatrix::identity(5);
        g[(0, 0)] = QScalar::new(
            num_rational::BigRational::one(),
            num_rational::BigRational::one(),
            2,
        )
        .unwrap();
        let s = QMatrix::from_i64(&[&[3, 2], &[4, 3]]); // det 1
        let gs = g.mul(&sym_power_action(&s, 4).unwrap());
        let c1 = certify_theorem15(&g, Rep::Sym4).unwrap();
        let c2 = certify_theorem15(&gs, Rep::Sym4).unwrap();
        assert_eq!(c1.irrational, c2.irrational);
        // Q (g rho(s))^{-1} x = Q g^{-1} x exactly.
        assert_eq!(c1.pulled, c2.pulled);
    }

    #[test]
    fn certify_dimension_errors() {
        assert!(matches!(
            certify_theorem15(&QMatrix::identity(4), Rep::Sym4),
            Err(Error::DimensionMismatch { expected: 5, got: 4 })
        ));
        assert!(matches!(
            certify_theorem15(&QMatrix::identity(4), Rep::Sym3),
            Err(Error::UnsupportedRep(_))
        ));
        let z = QMatrix::zeros(5, 5);
        assert!(matches!(
            certify_theorem15(&z, Rep::Sym4),
            Err(Error::SingularMatrix)
        ));
    }

    /// Formal resultant of the quartic and its derivative, divided by
    /// the leading coefficient: an independent discriminant oracle.
    fn disc_oracle(x: &[QScalar]) -> QScalar {
        assert!(!x[0].is_zero());
        let p = [&x[0], &x[1], &x[2], &x[3], &x[4]];
        let dp = [
            &x[0] * &QScalar::from_int(4),
            &x[1] * &QScalar::from_int(3),
            &x[2] * &QScalar::from_int(2),
            x[3].clone(),
        ];
        // 7 x 7 Sylvester matrix: 3 shifted copies of p, 4 of p'.
        let mut m = QMatrix::zeros(7, 7);
        for r in 0..3 {
            for k in 0..5 {
                m[(r, r + k)] = p[k].clone();
            }
        }
        for r in 0..4 {
            for k in 0..4 {
                m[(3 + r, r + k)] = dp[k].clone();
            }
        }
        m.det().checked_div(&x[0]).unwrap()
    }

    #[test]
    fn quartic_syzygy_with_resultant_oracle() {
        // disc = A Q^3 + B F^2 for constants found from two points and
        // confirmed on 20 random ones.
        let qf = |x: &[QScalar]| quartic_qf(x);
        let pt = |v: [i64; 5]| -> Vec<QScalar> {
            v.iter().map(|&k| QScalar::from_int(k)).collect()
        };
        // Null cone: everything vanishes.
        let x0 = pt([1, 0, 0, 0, 0]);
        assert_eq!(disc_oracle(&x0), QScalar::zero());
        // Two generic points determine (A, B).
        let x1 = pt([1, 0, 1, 0, 0]);
        let x2 = pt([1, 1, 0, 0, 2]);
        let (q1, f1) = qf(&x1);
        let (q2, f2) = qf(&x2);
        let m = QMatrix::from_rows(vec![
            vec![q1.pow(3).unwrap(), f1.pow(2).unwrap()],
            vec![q2.pow(3).unwrap(), f2.pow(2).unwrap()],
        ]);
        let ab = m
            .solve(&[disc_oracle(&x1), disc_oracle(&x2)])
            .expect("calibration points are independent");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 20 {
            let x: Vec<QScalar> = (0..5)
                .map(|_| QScalar::from_int(rng.gen_range(-6..=6)))
                .collect();
            if x[0].is_zero() {
                continue;
            }
            let (q, f) = qf(&x);
            let lhs = disc_oracle(&x);
            let rhs = &(&ab[0] * &q.pow(3).unwrap()) + &(&ab[1] * &f.pow(2).unwrap());
            assert_eq!(lhs, rhs, "syzygy fails at {x:?}");
            checked += 1;
        }
    }
}
