//! Dense univariate polynomials with exact rational coefficients, used for
//! Hilbert/Euler polynomials and window tails.

use crate::num::{rat, Rational};
use num::traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Coefficients are stored constant term first and kept normalized
/// (no trailing zero coefficients).
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    #[serde(with = "crate::format::rational_vec_serde")]
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// scale * (x - r_1)...(x - r_s) expanded.
    pub fn from_integer_roots(roots: &[i64], scale: &Rational) -> Self {
        let mut coeffs = vec![scale.clone()];
        for &r in roots {
            // multiply by (x - r)
            let mut next = vec![Rational::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * rat(r);
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat(x))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            out[k] += c;
        }
        Polynomial::new(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            out[k] -= c;
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// p(x + a), exact coefficient shift via the binomial theorem.
    pub fn shift_var(&self, a: i64) -> Polynomial {
        let mut out = Polynomial::zero();
        // Horner on (x + a): p(x + a) = sum c_k (x + a)^k
        for c in self.coeffs.iter().rev() {
            // out = out * (x + a) + c
            let mut next = vec![Rational::zero(); out.coeffs.len() + 1];
            for (k, oc) in out.coeffs.iter().enumerate() {
                next[k + 1] += oc;
                next[k] += oc * rat(a);
            }
            if next.is_empty() {
                next.push(Rational::zero());
            }
            next[0] += c;
            out = Polynomial::new(next);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*d")?,
                _ => write!(f, "({c})*d^{k}")?,
            }
        }
        Ok(())
    }
}
