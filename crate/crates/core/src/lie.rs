//! Structure of sl(4) under the principal sl(2) embedded through cubics.
//!
//! The degree-3 symmetric power of the standard representation turns the
//! sl(2) triple (e, h, f) into traceless 4 x 4 matrices (E, H, F). This
//! module decomposes the 15-dimensional space of traceless matrices into
//! irreducibles under that triple, constructs the symplectic algebra of
//! the invariant alternating form, and verifies that the middle component
//! bracket-generates everything.
//!
//! Matrices are flattened row-major to 16-vectors; the traceless
//! condition rides along as one extra linear constraint wherever kernels
//! are computed.

use std::collections::BTreeMap;

use crate::actions::{derivation_matrix, sl2_generators};
use crate::cubic::b_matrix;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVector};
use crate::scalar::QScalar;

/// Images of the standard sl(2) triple inside the traceless 4 x 4
/// matrices, via the derivation action on binary cubics.
#[derive(Debug, Clone)]
pub struct Sl2Triple {
    pub e: QMatrix,
    pub h: QMatrix,
    pub f: QMatrix,
}

fn bracket(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.mul(b).sub(&b.mul(a))
}

impl Sl2Triple {
    /// Checks the defining relations exactly.
    pub fn validate(&self) -> Result<()> {
        for m in [&self.e, &self.h, &self.f] {
            if !(m.is_square() && m.nrows() == 4) {
                return Err(Error::DimensionMismatch {
                    expected: 4,
                    got: m.nrows(),
                });
            }
            if !m.trace().is_zero() {
                return Err(Error::NotTraceless);
            }
        }
        let ok = bracket(&self.h, &self.e) == self.e.scale(&QScalar::from_int(2))
            && bracket(&self.h, &self.f) == self.f.scale(&QScalar::from_int(-2))
            && bracket(&self.e, &self.f) == self.h;
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid("sl(2) triple relations violated".into()))
        }
    }
}

/// The triple obtained by differentiating the cubic substitution action.
pub fn sl2_triple_sym3() -> Sl2Triple {
    let (e, h, f) = sl2_generators();
    Sl2Triple {
        e: derivation_matrix(&e, 3),
        h: derivation_matrix(&h, 3),
        f: derivation_matrix(&f, 3),
    }
}

pub fn flatten(m: &QMatrix) -> QVector {
    assert_eq!((m.nrows(), m.ncols()), (4, 4));
    m.entries().to_vec()
}

pub fn unflatten(v: &[QScalar]) -> QMatrix {
    assert_eq!(v.len(), 16);
    QMatrix::new(4, 4, v.to_vec())
}

/// Matrix of `ad(X): Y -> XY - YX` on row-major flattened 4 x 4 matrices.
pub fn ad_matrix(x: &QMatrix) -> QMatrix {
    QMatrix::from_fn(16, 16, |r, c| {
        // Column c is ad(X) applied to the basis matrix E_{ab}, a=c/4, b=c%4.
        let (a, b) = (c / 4, c % 4);
        let (i, j) = (r / 4, r % 4);
        // (X E_ab)_{ij} = X_{ia} [j == b]; (E_ab X)_{ij} = [i == a] X_{bj}
        let mut v = QScalar::zero();
        if j == b {
            v = &v + &x[(i, a)];
        }
        if i == a {
            v = &v - &x[(b, j)];
        }
        v
    })
}

fn trace_row() -> QVector {
    (0..16)
        .map(|c| QScalar::from_int((c % 5 == 0) as i64))
        .collect()
}

/// Rows of `op - mu * I` on the flattened space.
fn shifted_rows(op: &QMatrix, mu: i64) -> Vec<QVector> {
    let m = QScalar::from_int(mu);
    (0..16)
        .map(|r| {
            (0..16)
                .map(|c| {
                    if r == c {
                        &op[(r, c)] - &m
                    } else {
                        op[(r, c)].clone()
                    }
                })
                .collect()
        })
        .collect()
}

fn rank_of(rows: &[QVector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    QMatrix::from_rows(rows.to_vec()).rank()
}

/// Whether every vector of `others` lies in the row span of `span`.
fn span_contains(span: &[QVector], others: &[QVector]) -> bool {
    let base = rank_of(span);
    let mut all: Vec<QVector> = span.to_vec();
    all.extend_from_slice(others);
    rank_of(&all) == base
}

/// Decomposition of sl(4) into irreducibles under an sl(2) triple.
#[derive(Debug, Clone)]
pub struct IsotypicReport {
    /// Highest weight -> number of irreducible summands.
    pub multiplicities: BTreeMap<u32, usize>,
    /// One entry per summand, ordered by increasing highest weight: the
    /// highest weight and a matrix basis (weight-descending chain).
    pub components: Vec<(u32, Vec<QMatrix>)>,
    /// Dimensions of the summands, in the same order.
    pub dims: Vec<usize>,
    /// ad(H) eigenvalue -> multiplicity on the traceless subspace.
    pub weight_multiset: BTreeMap<i64, usize>,
}

impl IsotypicReport {
    /// Basis of the summand with highest weight `hw`, when unique.
    pub fn component(&self, hw: u32) -> Option<&[QMatrix]> {
        let found: Vec<&Vec<QMatrix>> = self
            .components
            .iter()
            .filter(|(w, _)| *w == hw)
            .map(|(_, b)| b)
            .collect();
        match found.as_slice() {
            [one] => Some(one.as_slice()),
            _ => None,
        }
    }
}

/// Decomposes the traceless 4 x 4 matrices under `ad` of the triple.
///
/// Highest-weight vectors are exact kernels of ad(E) restricted to each
/// ad(H)-eigenspace; each irreducible is generated downward by ad(F).
pub fn isotypic_decomposition(t: &Sl2Triple) -> Result<IsotypicReport> {
    t.validate()?;
    let ad_e = ad_matrix(&t.e);
    let ad_h = ad_matrix(&t.h);
    let ad_f = ad_matrix(&t.f);

    // Any eigenvalue mu of ad(H) satisfies mu^2 <= tr(ad(H)^2).
    let tr2 = ad_h.mul(&ad_h).trace();
    let bound = tr2
        .to_f64()
        .max(0.0)
        .sqrt()
        .ceil() as i64;

    // Weight space dimensions on the traceless part.
    let mut weight_multiset = BTreeMap::new();
    let mut total = 0usize;
    for mu in -bound..=bound {
        let mut rows = shifted_rows(&ad_h, mu);
        rows.push(trace_row());
        let dim = QMatrix::from_rows(rows).right_kernel().len();
        if dim > 0 {
            weight_multiset.insert(mu, dim);
            total += dim;
        }
    }
    if total != 15 {
        return Err(Error::Invalid(format!(
            "ad(H) is not diagonalizable over the integers: weight spaces cover {total} of 15"
        )));
    }

    let mut multiplicities = BTreeMap::new();
    let mut components = Vec::new();
    let mut dims = Vec::new();
    let mut all_vectors: Vec<QVector> = Vec::new();
    for mu in 0..=bound {
        // Highest-weight vectors of weight mu: kernel of ad(E) inside the
        // mu-eigenspace of ad(H), traceless.
        let mut rows = shifted_rows(&ad_h, mu);
        for r in 0..16 {
            rows.push(ad_e.row(r).to_vec());
        }
        rows.push(trace_row());
        let hw = QMatrix::from_rows(rows).right_kernel();
        if hw.is_empty() {
            continue;
        }
        *multiplicities.entry(mu as u32).or_insert(0) += hw.len();
        for v in hw {
            let mut chain = vec![v];
            loop {
                let next = ad_f.mul_vec(chain.last().unwrap());
                if next.iter().all(|x| x.is_zero()) {
                    break;
                }
                chain.push(next);
            }
            if chain.len() != mu as usize + 1 {
                return Err(Error::Invalid(format!(
                    "weight-{mu} chain has length {}, expected {}",
                    chain.len(),
                    mu + 1
                )));
            }
            dims.push(chain.len());
            all_vectors.extend(chain.iter().cloned());
            components.push((mu as u32, chain.iter().map(|v| unflatten(v)).collect()));
        }
    }
    if all_vectors.len() != 15 || rank_of(&all_vectors) != 15 {
        return Err(Error::Invalid(
            "isotypic components do not span the traceless matrices".into(),
        ));
    }
    Ok(IsotypicReport {
        multiplicities,
        components,
        dims,
        weight_multiset,
    })
}

/// Exact basis of `{X : X^T M + M X = 0}` for the alternating form `M`
/// on binary cubics: the symplectic algebra of that form, dimension 10.
pub fn sp4_from_b() -> Vec<QMatrix> {
    let m = b_matrix();
    // Column ab of the constraint map sends E_ab to E_ab^T M + M E_ab.
    let cons = QMatrix::from_fn(16, 16, |r, c| {
        let (a, b) = (c / 4, c % 4);
        let (i, j) = (r / 4, r % 4);
        // (E_ab^T M)_{ij} = [i == b] M_{aj}; (M E_ab)_{ij} = M_{ia} [j == b]
        let mut v = QScalar::zero();
        if i == b {
            v = &v + &m[(a, j)];
        }
        if j == b {
            v = &v + &m[(i, a)];
        }
        v
    });
    let basis: Vec<QMatrix> = cons.right_kernel().iter().map(|v| unflatten(v)).collect();
    assert_eq!(basis.len(), 10, "symplectic algebra must have dimension 10");
    basis
}

/// Outcome of the bracket-generation check on the 5-dimensional
/// component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BracketGeneration {
    /// Brackets of the component span a space containing the full
    /// symplectic algebra.
    pub contains_sp4: bool,
    /// Dimension of span(component + its brackets).
    pub span_dim: usize,
}

/// Computes span{[u, u']} over a basis `u1` of the 5-dimensional middle
/// component and checks it contains the symplectic algebra; also reports
/// the dimension of span(u1 and all brackets).
pub fn verify_bracket_generation(u1: &[QMatrix]) -> Result<BracketGeneration> {
    if u1.len() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: u1.len(),
        });
    }
    let mut brackets: Vec<QVector> = Vec::new();
    for i in 0..u1.len() {
        for j in i + 1..u1.len() {
            brackets.push(flatten(&bracket(&u1[i], &u1[j])));
        }
    }
    let sp4: Vec<QVector> = sp4_from_b().iter().map(flatten).collect();
    let contains_sp4 = span_contains(&brackets, &sp4);
    let mut all: Vec<QVector> = u1.iter().map(flatten).collect();
    all.extend(brackets);
    Ok(BracketGeneration {
        contains_sp4,
        span_dim: rank_of(&all),
    })
}
