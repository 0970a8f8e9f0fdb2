//! The space of binary cubic forms as a prehomogeneous vector space.
//!
//! Coordinates: `x = (x0, x1, x2, x3)` stands for the cubic
//! `x0 v1^3 + x1 v1^2 v2 + x2 v1 v2^2 + x3 v2^3`. The discriminant `Delta`
//! is the relative invariant; the alternating form `B` pairs the space
//! with itself. A linear change of variables `g` on the coordinate space
//! is *sufficiently irrational* when the pulled-back discriminant
//! `Delta(g^{-1} x)` is not a scalar multiple of a rational quartic; that
//! property is decided exactly, with witnesses, by [`certify_theorem14`].

use num_rational::BigRational;
use num_traits::Zero;
use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::PolyOnV;
use crate::projective::{projective_is_rational, RationalityVerdict};
use crate::scalar::QScalar;

/// Discriminant of the cubic with coefficients `x`, via the closed form
/// `x1^2 x2^2 - 4 x0 x2^3 - 4 x1^3 x3 + 18 x0 x1 x2 x3 - 27 x0^2 x3^2`.
pub fn disc_cubic(x: &[QScalar]) -> QScalar {
    assert_eq!(x.len(), 4, "binary cubic has 4 coefficients");
    let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
    let t1 = b * b * c * c;
    let t2 = QScalar::from_int(-4) * a * c * c * c;
    let t3 = QScalar::from_int(-4) * b * b * b * d;
    let t4 = QScalar::from_int(18) * a * b * c * d;
    let t5 = QScalar::from_int(-27) * a * a * d * d;
    t1 + t2 + t3 + t4 + t5
}

static DELTA: LazyLock<PolyOnV> = LazyLock::new(|| {
    let mut p = PolyOnV::zero(4);
    for (e, c) in [
        (vec![0u32, 2, 2, 0], 1i64),
        (vec![1, 0, 3, 0], -4),
        (vec![0, 3, 0, 1], -4),
        (vec![1, 1, 1, 1], 18),
        (vec![2, 0, 0, 2], -27),
    ] {
        p = p.add(&PolyOnV::monomial(e, QScalar::from_int(c)));
    }
    p
});

/// The discriminant as a quartic polynomial in the four coefficients.
pub fn delta_poly() -> &'static PolyOnV {
    &DELTA
}

/// Gram matrix of the alternating form
/// `B(x, y) = x0 y3 - (1/3) x1 y2 + (1/3) x2 y1 - x3 y0`.
pub fn b_matrix() -> QMatrix {
    let third = QScalar::rational(1, 3);
    let mut m = QMatrix::zeros(4, 4);
    m[(0, 3)] = QScalar::one();
    m[(1, 2)] = -&third;
    m[(2, 1)] = third;
    m[(3, 0)] = -QScalar::one();
    m
}

pub fn bform(x: &[QScalar], y: &[QScalar]) -> QScalar {
    assert!(x.len() == 4 && y.len() == 4);
    let m = b_matrix();
    let mut acc = QScalar::zero();
    for i in 0..4 {
        for j in 0..4 {
            if !m[(i, j)].is_zero() {
                acc = &acc + &(&x[i] * &m[(i, j)] * &y[j]);
            }
        }
    }
    acc
}

/// Result of the irrationality certification for a coordinate change `g`
/// on the space of binary cubics.
#[derive(Debug, Clone)]
pub struct Theorem14Certificate {
    /// The pulled-back discriminant `Delta(g^{-1} x)`.
    pub pulled: PolyOnV,
    /// Rationality verdict on its 35-entry coefficient vector.
    pub verdict: RationalityVerdict,
}

impl Theorem14Certificate {
    /// Certified means the pulled-back form is not proportional to any
    /// rational quartic, so its values at primitive integer points are
    /// dense in the reals.
    pub fn is_certified(&self) -> bool {
        !self.verdict.is_rational()
    }
}

/// Decides whether `g` is sufficiently irrational for the density
/// statement on binary cubics.
///
/// Pulls the discriminant back through `g` and tests the projective
/// rationality of its coefficient vector. `Certified` comes with an index
/// pair certifying an irrational coefficient ratio; the negative verdict
/// carries the rational rescaling.
pub fn certify_theorem14(g: &QMatrix) -> Result<Theorem14Certificate> {
    assert_eq!((g.nrows(), g.ncols()), (4, 4), "expected a 4 x 4 matrix");
    let pulled = DELTA.substitute_linear(&g.inverse()?);
    let coeffs = pulled.coeff_vector(4);
    let verdict = projective_is_rational(&coeffs)?;
    Ok(Theorem14Certificate { pulled, verdict })
}

/// An exact realization of a target value: a rational `h` and primitive
/// point `e = (1, 0, 1, 0)` with `Delta(h^{-1} e) = r`. Errors on `r = 0`.
pub fn witness_target(r: &BigRational) -> Result<(QMatrix, Vec<i64>)> {
    if r.is_zero() {
        return Err(Error::Invalid("witness target must be non-zero".into()));
    }
    let rq = QScalar::from_rational(r.clone());
    let mut h = QMatrix::identity(4);
    h[(0, 0)] = QScalar::from_int(-4).checked_div(&rq)?;
    h[(1, 1)] = -&rq * &QScalar::rational(1, 4);
    Ok((h, vec![1, 0, 1, 0]))
}
