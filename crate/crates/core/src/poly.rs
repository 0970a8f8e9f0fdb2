//! Exact multivariate polynomials on a coordinate space.
//!
//! Terms are keyed by exponent vectors. The canonical monomial order used
//! for coefficient vectors is degree-then-lex with `x0 > x1 > ...`, i.e.
//! within one degree the exponent tuples are listed lex-descending.

use std::collections::BTreeMap;

use crate::linalg::QMatrix;
use crate::scalar::QScalar;

/// A polynomial in `nvars` variables with exact coefficients.
///
/// Invariant: stored coefficients are non-zero and every exponent key has
/// length `nvars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyOnV {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, QScalar>,
}

impl PolyOnV {
    pub fn zero(nvars: usize) -> Self {
        PolyOnV {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exps: Vec<u32>, coeff: QScalar) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, QScalar::one())
    }

    pub fn constant(nvars: usize, c: QScalar) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: QScalar) {
        assert_eq!(exps.len(), self.nvars, "exponent arity mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn coeff(&self, exps: &[u32]) -> QScalar {
        self.terms.get(exps).cloned().unwrap_or_else(QScalar::zero)
    }

    /// Terms in canonical order (degree descending, then lex-descending).
    pub fn terms(&self) -> Vec<(&[u32], &QScalar)> {
        let mut v: Vec<(&[u32], &QScalar)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.as_slice(), c))
            .collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        PolyOnV {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &QScalar) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        PolyOnV {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, QScalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn eval(&self, x: &[QScalar]) -> QScalar {
        assert_eq!(x.len(), self.nvars, "evaluation arity mismatch");
        // Precompute per-variable powers up to the largest exponent seen.
        let mut max_e = vec![0u32; self.nvars];
        for e in self.terms.keys() {
            for (m, &ei) in max_e.iter_mut().zip(e) {
                *m = (*m).max(ei);
            }
        }
        let powers: Vec<Vec<QScalar>> = x
            .iter()
            .zip(&max_e)
            .map(|(xi, &m)| {
                let mut p = Vec::with_capacity(m as usize + 1);
                p.push(QScalar::one());
                for k in 1..=m {
                    let prev = p[k as usize - 1].clone();
                    p.push(&prev * xi);
                }
                p
            })
            .collect();
        let mut acc = QScalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = &term * &powers[i][ei as usize];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn partial_deriv(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * &QScalar::from_int(e[i] as i64));
        }
        out
    }

    /// Substitutes `x_i := sum_j M[i][j] y_j`, returning `P(My)`.
    pub fn substitute_linear(&self, m: &QMatrix) -> Self {
        assert_eq!(m.nrows(), self.nvars, "substitution arity mismatch");
        let out_vars = m.ncols();
        let forms: Vec<PolyOnV> = (0..self.nvars)
            .map(|i| {
                let mut f = PolyOnV::zero(out_vars);
                for j in 0..out_vars {
                    let mut e = vec![0; out_vars];
                    e[j] = 1;
                    f.add_term(e, m[(i, j)].clone());
                }
                f
            })
            .collect();
        // Cache powers of each substituted form.
        let mut max_e = vec![0u32; self.nvars];
        for e in self.terms.keys() {
            for (mx, &ei) in max_e.iter_mut().zip(e) {
                *mx = (*mx).max(ei);
            }
        }
        let powers: Vec<Vec<PolyOnV>> = forms
            .iter()
            .zip(&max_e)
            .map(|(f, &mx)| {
                let mut p = Vec::with_capacity(mx as usize + 1);
                p.push(PolyOnV::constant(out_vars, QScalar::one()));
                for k in 1..=mx {
                    let prev = p[k as usize - 1].clone();
                    p.push(prev.mul(f));
                }
                p
            })
            .collect();
        let mut acc = PolyOnV::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = PolyOnV::constant(out_vars, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = term.mul(&powers[i][ei as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Coefficient vector against `monomials_of_degree(nvars, d)`.
    pub fn coeff_vector(&self, d: u32) -> Vec<QScalar> {
        assert!(self.is_homogeneous_of_degree(d), "not homogeneous");
        monomials_of_degree(self.nvars, d)
            .iter()
            .map(|e| self.coeff(e))
            .collect()
    }

    pub fn from_coeff_vector(nvars: usize, d: u32, coeffs: &[QScalar]) -> Self {
        let mons = monomials_of_degree(nvars, d);
        assert_eq!(coeffs.len(), mons.len(), "coefficient count mismatch");
        let mut p = Self::zero(nvars);
        for (e, c) in mons.into_iter().zip(coeffs) {
            p.add_term(e, c.clone());
        }
        p
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, in the
/// canonical order (lex-descending).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if nvars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}
