use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_POINTS: usize = 50_000_000;

/// Axis-aligned grid `lo + i·h`, stored row-major (last axis fastest).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub h: f64,
}

impl GridSpec {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, h: f64) -> Result<GridSpec> {
        let g = GridSpec { lo, hi, h };
        g.validate()?;
        Ok(g)
    }

    /// Cube `[-r, r]^n` with spacing `h`.
    pub fn cube(n: usize, r: f64, h: f64) -> Result<GridSpec> {
        GridSpec::new(vec![-r; n], vec![r; n], h)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo.len() != self.hi.len() || self.lo.is_empty() {
            return Err(Error::InvalidGrid("bbox corners must have equal positive length".into()));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::InvalidGrid(format!("spacing must be positive, got {}", self.h)));
        }
        if self.lo.iter().zip(&self.hi).any(|(a, b)| !(a < b)) {
            return Err(Error::InvalidGrid("bbox must satisfy lo < hi".into()));
        }
        let total = self.dims().iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
        match total {
            Some(t) if t <= MAX_POINTS => Ok(()),
            _ => Err(Error::InvalidGrid(format!("more than {MAX_POINTS} grid points"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| ((b - a) / self.h).round() as usize + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.dims().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn strides(&self) -> Vec<usize> {
        let dims = self.dims();
        let mut s = vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            s[k] = s[k + 1] * dims[k + 1];
        }
        s
    }

    pub fn multi_index(&self, mut i: usize) -> Vec<usize> {
        let dims = self.dims();
        let mut out = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            out[k] = i % dims[k];
            i /= dims[k];
        }
        out
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        self.strides().iter().zip(idx).map(|(s, i)| s * i).sum()
    }

    pub fn point(&self, i: usize) -> Vec<f64> {
        self.multi_index(i).iter().zip(&self.lo).map(|(&k, lo)| lo + k as f64 * self.h).collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        let tol = 1e-9 * self.h;
        x.len() == self.dim()
            && x.iter().zip(self.lo.iter().zip(self.upper())).all(|(v, (lo, hi))| *v >= lo - tol && *v <= hi + tol)
    }

    /// Largest grid coordinate on each axis.
    pub fn upper(&self) -> Vec<f64> {
        self.lo.iter().zip(self.dims()).map(|(lo, d)| lo + (d - 1) as f64 * self.h).collect()
    }

    /// Flat indices of the grid neighbours differing by one step along one axis.
    pub fn axis_neighbors(&self, i: usize, out: &mut Vec<usize>) {
        out.clear();
        let dims = self.dims();
        let strides = self.strides();
        let idx = self.multi_index(i);
        for k in 0..dims.len() {
            if idx[k] > 0 {
                out.push(i - strides[k]);
            }
            if idx[k] + 1 < dims[k] {
                out.push(i + strides[k]);
            }
        }
    }
}

/// Boolean grid mask, exported as run lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mask {
    pub dims: Vec<usize>,
    pub data: Vec<bool>,
}

impl Mask {
    pub fn count(&self) -> usize {
        self.data.iter().filter(|b| **b).count()
    }

    /// Alternating run lengths starting with a run of `false` (possibly 0).
    pub fn run_lengths(&self) -> Vec<usize> {
        let mut runs = Vec::new();
        let mut cur = false;
        let mut len = 0;
        for &b in &self.data {
            if b == cur {
                len += 1;
            } else {
                runs.push(len);
                cur = b;
                len = 1;
            }
        }
        runs.push(len);
        runs
    }

    pub fn from_run_lengths(dims: Vec<usize>, runs: &[usize]) -> Mask {
        let mut data = Vec::new();
        let mut cur = false;
        for &r in runs {
            data.extend(std::iter::repeat_n(cur, r));
            cur = !cur;
        }
        Mask { dims, data }
    }
}
