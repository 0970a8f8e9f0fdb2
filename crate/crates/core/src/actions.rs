//! Group actions on forms: the symmetric-power action of GL(2) on binary
//! forms, pullbacks of polynomials and bilinear forms on coordinate
//! spaces, and the matching infinitesimal (Lie algebra) actions.
//!
//! Convention throughout: a group element acts on functions by
//! `(g . f)(v) = f(g^{-1} v)`, so the infinitesimal action of `X` is the
//! negated derivation `-sum_{ij} X_ij v_j d/dv_i`.

use crate::error::Result;
use crate::linalg::{QMatrix, QVector};
use crate::poly::PolyOnV;
use crate::scalar::QScalar;

/// A binary form of degree `deg`: `sum_i coeffs[i] * v1^(deg-i) v2^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub deg: u32,
    pub coeffs: QVector,
}

impl BinaryForm {
    pub fn new(deg: u32, coeffs: QVector) -> Self {
        assert_eq!(coeffs.len(), deg as usize + 1, "coefficient count");
        BinaryForm { deg, coeffs }
    }

    pub fn to_poly(&self) -> PolyOnV {
        PolyOnV::from_coeff_vector(2, self.deg, &self.coeffs)
    }

    pub fn from_poly(p: &PolyOnV, deg: u32) -> Self {
        Self::new(deg, p.coeff_vector(deg))
    }

    pub fn eval(&self, v1: &QScalar, v2: &QScalar) -> QScalar {
        self.to_poly().eval(&[v1.clone(), v2.clone()])
    }

    /// The form `(s . f)(v) = f(s^{-1} v)`.
    pub fn act(&self, s: &QMatrix) -> Result<Self> {
        let rho = sym_power_action(s, self.deg)?;
        Ok(Self::new(self.deg, rho.mul_vec(&self.coeffs)))
    }
}

/// Matrix of the symmetric-power action on degree-`deg` binary forms.
///
/// Column `i` holds the coefficients of `(a v1 + b v2)^(deg-i)
/// (c v1 + d v2)^i` where `[[a, b], [c, d]] = s^{-1}`, so that the
/// coefficient vector of `f(s^{-1} v)` is this matrix times the
/// coefficient vector of `f`.
pub fn sym_power_action(s: &QMatrix, deg: u32) -> Result<QMatrix> {
    assert_eq!((s.nrows(), s.ncols()), (2, 2), "expected a 2 x 2 matrix");
    let sinv = s.inverse()?;
    let n = deg as usize + 1;
    let l1 = PolyOnV::from_coeff_vector(2, 1, &[sinv[(0, 0)].clone(), sinv[(0, 1)].clone()]);
    let l2 = PolyOnV::from_coeff_vector(2, 1, &[sinv[(1, 0)].clone(), sinv[(1, 1)].clone()]);
    let mut cols: Vec<QVector> = Vec::with_capacity(n);
    for i in 0..n {
        let p = l1.pow(deg - i as u32).mul(&l2.pow(i as u32));
        cols.push(p.coeff_vector(deg));
    }
    Ok(QMatrix::from_fn(n, n, |r, c| cols[c][r].clone()))
}

/// The negated derivation `D_X p = -sum_{ij} X_ij v_j dp/dv_i`, the
/// infinitesimal version of the pullback action.
pub fn derivation_apply(x: &QMatrix, p: &PolyOnV) -> PolyOnV {
    assert!(x.is_square());
    assert_eq!(x.nrows(), p.nvars(), "derivation arity mismatch");
    let n = p.nvars();
    let mut acc = PolyOnV::zero(n);
    for i in 0..n {
        let dp = p.partial_deriv(i);
        if dp.is_zero() {
            continue;
        }
        for j in 0..n {
            if x[(i, j)].is_zero() {
                continue;
            }
            let vj = PolyOnV::variable(n, j);
            acc = acc.add(&dp.mul(&vj).scale(&-&x[(i, j)]));
        }
    }
    acc
}

/// Matrix of `derivation_apply(x, .)` on the monomial basis of
/// degree-`deg` binary forms (same basis as [`sym_power_action`]).
pub fn derivation_matrix(x: &QMatrix, deg: u32) -> QMatrix {
    assert_eq!((x.nrows(), x.ncols()), (2, 2), "expected a 2 x 2 matrix");
    let n = deg as usize + 1;
    let mut cols: Vec<QVector> = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![0u32; 2];
        e[0] = deg - i as u32;
        e[1] = i as u32;
        let m = PolyOnV::monomial(e, QScalar::one());
        cols.push(derivation_apply(x, &m).coeff_vector(deg));
    }
    QMatrix::from_fn(n, n, |r, c| cols[c][r].clone())
}

/// Pullback `(g . P)(x) = P(g^{-1} x)` of a polynomial on V.
pub fn poly_pullback(p: &PolyOnV, g: &QMatrix) -> Result<PolyOnV> {
    Ok(p.substitute_linear(&g.inverse()?))
}

/// Pullback of a bilinear form with Gram matrix `m`:
/// `(g . B)(x, y) = B(g^{-1} x, g^{-1} y)`, i.e. `(g^{-1})^T M g^{-1}`.
pub fn altform_pullback(m: &QMatrix, g: &QMatrix) -> Result<QMatrix> {
    let gi = g.inverse()?;
    Ok(gi.transpose().mul(m).mul(&gi))
}

/// Conjugation `g x g^{-1}`, the adjoint action on matrix Lie algebras.
pub fn adjoint_action(g: &QMatrix, x: &QMatrix) -> Result<QMatrix> {
    Ok(g.mul(x).mul(&g.inverse()?))
}

/// The standard sl(2) triple `(e, h, f)`.
pub fn sl2_generators() -> (QMatrix, QMatrix, QMatrix) {
    (
        QMatrix::from_i64(&[&[0, 1], &[0, 0]]),
        QMatrix::from_i64(&[&[1, 0], &[0, -1]]),
        QMatrix::from_i64(&[&[0, 0], &[1, 0]]),
    )
}

/// Elementary unipotent `[[1, t], [0, 1]]` (upper) or `[[1, 0], [t, 1]]`.
pub fn elementary2(upper: bool, t: &QScalar) -> QMatrix {
    let mut m = QMatrix::identity(2);
    if upper {
        m[(0, 1)] = t.clone();
    } else {
        m[(1, 0)] = t.clone();
    }
    m
}
