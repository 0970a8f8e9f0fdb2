//! Minimal exterior algebra over [`QScalar`] coefficients.
//!
//! Forms are stored sparsely: strictly increasing index tuples mapped to
//! non-zero coefficients. Only what the trivector computations need is
//! implemented: wedge products, contraction with a vector, and pullback
//! along a linear map.

use std::collections::BTreeMap;

use crate::linalg::QMatrix;
use crate::scalar::QScalar;

/// Sparse exterior form on a `dim`-dimensional space.
///
/// Invariant: every key is a strictly increasing tuple of indices below
/// `dim`, and every stored coefficient is non-zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtForm {
    dim: usize,
    terms: BTreeMap<Vec<u8>, QScalar>,
}

/// Sign of the permutation sorting `indices`, or `None` on a repeat.
fn sort_sign(indices: &[u8]) -> Option<(Vec<u8>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1i32;
    // Insertion sort, counting swaps; inputs are tiny.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

impl ExtForm {
    pub fn zero(dim: usize) -> Self {
        ExtForm {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The basis form `e_{i1} ^ ... ^ e_{ik}` for possibly unsorted,
    /// distinct indices (the sign of sorting is absorbed).
    pub fn basis(dim: usize, indices: &[u8], coeff: QScalar) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(indices, coeff);
        f
    }

    /// A 1-form with the given coordinates.
    pub fn one_form(coords: &[QScalar]) -> Self {
        let mut f = Self::zero(coords.len());
        for (i, c) in coords.iter().enumerate() {
            f.add_term(&[i as u8], c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, indices: &[u8]) -> QScalar {
        match sort_sign(indices) {
            None => QScalar::zero(),
            Some((key, sign)) => {
                let c = self.terms.get(&key).cloned().unwrap_or_else(QScalar::zero);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &QScalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, indices: &[u8], coeff: QScalar) {
        if coeff.is_zero() {
            return;
        }
        assert!(
            indices.iter().all(|&i| (i as usize) < self.dim),
            "index out of range"
        );
        let Some((key, sign)) = sort_sign(indices) else {
            return; // repeated index: the term vanishes
        };
        let coeff = if sign < 0 { -coeff } else { coeff };
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, t: &QScalar) -> Self {
        let mut out = Self::zero(self.dim);
        for (k, c) in &self.terms {
            out.add_term(k, c * t);
        }
        out
    }

    pub fn wedge(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut out = Self::zero(self.dim);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let mut key: Vec<u8> = ka.clone();
                key.extend_from_slice(kb);
                out.add_term(&key, ca * cb);
            }
        }
        out
    }

    /// Interior product `i_v` with the vector `v`:
    /// `i_v (e_{i1} ^ ... ^ e_{ik}) = sum_t (-1)^(t-1) v_{it} e_{... without i_t}`.
    pub fn contract(&self, v: &[QScalar]) -> Self {
        assert_eq!(v.len(), self.dim);
        let mut out = Self::zero(self.dim);
        for (k, c) in &self.terms {
            for (t, &idx) in k.iter().enumerate() {
                let vi = &v[idx as usize];
                if vi.is_zero() {
                    continue;
                }
                let mut key = k.clone();
                key.remove(t);
                let sign = if t % 2 == 0 {
                    QScalar::one()
                } else {
                    -QScalar::one()
                };
                out.add_term(&key, c * vi * &sign);
            }
        }
        out
    }

    /// Pullback along the substitution `e_i -> sum_a m[a][i] e_a`
    /// (columns of `m` are the images of the basis vectors).
    pub fn linear_substitute(&self, m: &QMatrix) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        assert_eq!(m.nrows(), self.dim);
        let cols: Vec<ExtForm> = (0..self.dim)
            .map(|i| ExtForm::one_form(&m.col(i)))
            .collect();
        let mut out = Self::zero(self.dim);
        for (k, c) in &self.terms {
            let mut w = ExtForm::basis(self.dim, &[], QScalar::one());
            for &idx in k {
                w = w.wedge(&cols[idx as usize]);
            }
            out = out.add(&w.scale(c));
        }
        out
    }
}
