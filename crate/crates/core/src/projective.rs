//! Rationality of points in projective space over a quadratic field.
//!
//! A non-zero coefficient vector `p` in Q(sqrt(d))^n represents a
//! projective point. The point is *rational* when some scalar multiple
//! `t*p` has all coordinates in Q. Splitting each coordinate as
//! `p_k = u_k + w_k*sqrt(d)`, the point is rational iff the 2 x n
//! rational matrix with rows `u`, `w` has rank at most 1; each verdict
//! comes with a checkable witness either way.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::QScalar;

/// Outcome of the projective rationality test, with witness data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalityVerdict {
    /// Some multiple of the point is rational: `scaling * p = rescaled`
    /// holds exactly, and `rescaled` is a rational vector.
    Rational {
        scaling: QScalar,
        rescaled: Vec<BigRational>,
    },
    /// No multiple is rational: coordinates `i` and `j` have an
    /// irrational ratio, certified by `u_i w_j - u_j w_i != 0`.
    Irrational { witness: (usize, usize) },
}

impl RationalityVerdict {
    pub fn is_rational(&self) -> bool {
        matches!(self, RationalityVerdict::Rational { .. })
    }
}

/// Decides rationality of the projective point spanned by `p`.
///
/// Errors on the zero vector and on coordinates from different quadratic
/// fields. The returned witness is canonical: the scaling uses the first
/// non-zero coordinate, the irrationality witness is the lexicographically
/// first index pair with a non-vanishing 2 x 2 minor.
pub fn projective_is_rational(p: &[QScalar]) -> Result<RationalityVerdict> {
    if p.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let mut field = None;
    for x in p {
        match (field, x.field()) {
            (None, f) => field = f,
            (Some(_), None) => {}
            (Some(a), Some(b)) if a == b => {}
            (Some(a), Some(b)) => return Err(Error::MixedContexts(a, b)),
        }
    }
    let u: Vec<&BigRational> = p.iter().map(|x| x.rational_part()).collect();
    let w: Vec<&BigRational> = p.iter().map(|x| x.sqrt_part()).collect();

    // Look for a non-vanishing 2 x 2 minor of the rows (u, w).
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let minor = u[i] * w[j] - u[j] * w[i];
            if !minor.is_zero() {
                return Ok(RationalityVerdict::Irrational { witness: (i, j) });
            }
        }
    }

    // Rank <= 1: dividing by the first non-zero coordinate lands in Q^n.
    let lead = p.iter().position(|x| !x.is_zero()).expect("non-zero point");
    let scaling = p[lead].inv()?;
    let rescaled = p
        .iter()
        .map(|x| {
            let r = &scaling * x;
            r.as_rational()
                .cloned()
                .expect("rank-1 rescaling must be rational")
        })
        .collect();
    Ok(RationalityVerdict::Rational { scaling, rescaled })
}

/// Whether two non-zero vectors span the same projective point.
pub fn projectively_equal(p: &[QScalar], q: &[QScalar]) -> Result<bool> {
    if p.iter().all(|x| x.is_zero()) || q.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    let j = q.iter().position(|x| !x.is_zero()).expect("non-zero point");
    if p[j].is_zero() {
        return Ok(false);
    }
    let c = p[j].checked_div(&q[j])?;
    for (a, b) in p.iter().zip(q) {
        if *a != c.checked_mul(b)? {
            return Ok(false);
        }
    }
    Ok(true)
}
