use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{dot_int, q, to_f64, Q};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub exp: Vec<i64>,
    pub coeff: Q,
}

/// Min-plus polynomial `min_v (a_v + <v, x>)` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    n: usize,
    monomials: Vec<Monomial>,
}

impl TropicalPolynomial {
    pub fn new(n: usize, terms: Vec<(Vec<i64>, Q)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let mut seen = BTreeSet::new();
        let mut monomials = Vec::with_capacity(terms.len());
        for (exp, coeff) in terms {
            if exp.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: exp.len() });
            }
            if !seen.insert(exp.clone()) {
                return Err(Error::DuplicateExponent(exp));
            }
            monomials.push(Monomial { exp, coeff });
        }
        monomials.sort();
        Ok(TropicalPolynomial { n, monomials })
    }

    pub fn from_ints(n: usize, terms: &[(&[i64], i64)]) -> Result<Self> {
        Self::new(n, terms.iter().map(|(e, c)| (e.to_vec(), q(*c))).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn exponents(&self) -> Vec<Vec<i64>> {
        self.monomials.iter().map(|m| m.exp.clone()).collect()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Option<&Q> {
        self.monomials.iter().find(|m| m.exp == exp).map(|m| &m.coeff)
    }

    pub fn affine_value(&self, i: usize, x: &[Q]) -> Q {
        let m = &self.monomials[i];
        &m.coeff + dot_int(&m.exp, x)
    }

    /// Exact value and the full argmin set.
    pub fn evaluate(&self, x: &[Q]) -> Result<(Q, Vec<Vec<i64>>)> {
        let (val, idx) = self.evaluate_indices(x)?;
        Ok((val, idx.into_iter().map(|i| self.monomials[i].exp.clone()).collect()))
    }

    pub fn evaluate_indices(&self, x: &[Q]) -> Result<(Q, Vec<usize>)> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        let vals: Vec<Q> = (0..self.monomials.len()).map(|i| self.affine_value(i, x)).collect();
        let min = vals.iter().min().expect("nonempty").clone();
        let active = vals.iter().enumerate().filter(|(_, v)| **v == min).map(|(i, _)| i).collect();
        Ok((min, active))
    }

    /// Floating point value and one minimizing monomial index.
    pub fn eval_f64(&self, x: &[f64]) -> (f64, usize) {
        let mut best = f64::INFINITY;
        let mut arg = 0;
        for (i, m) in self.monomials.iter().enumerate() {
            let v = to_f64(&m.coeff) + m.exp.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum::<f64>();
            if v < best {
                best = v;
                arg = i;
            }
        }
        (best, arg)
    }

    /// Tropical product: exponents add, coefficients add.
    pub fn tropical_mul(&self, other: &TropicalPolynomial) -> Result<TropicalPolynomial> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let mut terms: std::collections::BTreeMap<Vec<i64>, Q> = Default::default();
        for a in &self.monomials {
            for b in &other.monomials {
                let e: Vec<i64> = a.exp.iter().zip(&b.exp).map(|(x, y)| x + y).collect();
                let c = &a.coeff + &b.coeff;
                terms.entry(e).and_modify(|old| {
                    if c < *old {
                        *old = c.clone()
                    }
                }).or_insert(c);
            }
        }
        TropicalPolynomial::new(self.n, terms.into_iter().collect())
    }

    pub fn is_single_monomial(&self) -> bool {
        self.monomials.len() == 1
    }

    pub fn all_coefficients_zero(&self) -> bool {
        self.monomials.iter().all(|m| m.coeff.is_zero())
    }
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .monomials
            .iter()
            .map(|m| format!("{} + <{:?}, x>", m.coeff, m.exp))
            .collect();
        write!(f, "min({})", parts.join(", "))
    }
}

/// Polynomials that recur throughout the examples and tests.
pub mod named {
    use super::*;

    /// `x1 ⊕ x2 ⊕ c·(x1 x2)^{-1} ⊕ 0`; for `c = 0` the constant term is dropped.
    pub fn phi_t2(c: Q) -> TropicalPolynomial {
        let mut terms = vec![(vec![1, 0], q(0)), (vec![0, 1], q(0)), (vec![-1, -1], c.clone())];
        if !c.is_zero() {
            terms.push((vec![0, 0], q(0)));
        }
        TropicalPolynomial::new(2, terms).expect("valid")
    }

    /// `0 ⊕ x1 ⊕ x2 ⊕ x1 x2` with the constant read as the tropical unit.
    pub fn phi_plus() -> TropicalPolynomial {
        TropicalPolynomial::from_ints(2, &[(&[0, 0], 0), (&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0)]).expect("valid")
    }

    pub fn tropical_line() -> TropicalPolynomial {
        TropicalPolynomial::from_ints(2, &[(&[0, 0], 0), (&[1, 0], 0), (&[0, 1], 0)]).expect("valid")
    }

    /// `0 ⊕ x` in one variable.
    pub fn kink() -> TropicalPolynomial {
        TropicalPolynomial::from_ints(1, &[(&[0], 0), (&[1], 0)]).expect("valid")
    }
}
