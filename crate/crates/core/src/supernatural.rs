//! Closed-form tables of supernatural sheaves: for a root sequence
//! z_1 > ... > z_s, row i is nonzero exactly on the open interval
//! (z_{i+1}, z_i) where it takes the value scale * |d - z_1|...|d - z_s|.
//! The normalization makes the Hilbert polynomial scale * (d - z_1)...(d - z_s).

use crate::error::{Error, Result};
use crate::num::Rational;
use crate::poly::Polynomial;
use crate::roots::RootSequence;
use crate::table::{CohomologyTable, Support, Tails, Window};
use num::traits::{Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Debug)]
pub struct SupernaturalSpec {
    roots: RootSequence,
    scale: Rational,
    ambient: usize,
}

impl SupernaturalSpec {
    pub fn new(roots: RootSequence, scale: Rational, ambient: usize) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::Invalid(format!("scale must be positive, got {scale}")));
        }
        if ambient < roots.len() {
            return Err(Error::Invalid(format!(
                "ambient dimension {ambient} is smaller than the number of roots {}",
                roots.len()
            )));
        }
        Ok(SupernaturalSpec {
            roots,
            scale,
            ambient,
        })
    }

    pub fn roots(&self) -> &RootSequence {
        &self.roots
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// γ^z_{i,d}: nonzero only when z_i > d > z_{i+1}, with z_0 = +inf and
    /// roots beyond the sequence read as -inf.
    pub fn entry(&self, i: usize, d: i64) -> Rational {
        let s = self.roots.len();
        // z_i for i > s reads as -inf, so rows above the root count vanish
        let above_ok = match i {
            0 => true,
            _ => match self.roots.get(i - 1) {
                Some(z) => d < z,
                None => false,
            },
        };
        let below_ok = i >= s || d > self.roots.get(i).unwrap();
        if !(above_ok && below_ok) || i > self.ambient {
            return Rational::zero();
        }
        let mut v = self.scale.clone();
        for z in self.roots.iter() {
            v *= crate::num::rat((d - z).abs());
        }
        v
    }

    /// scale * (d - z_1)...(d - z_s).
    pub fn hilbert_polynomial(&self) -> Polynomial {
        Polynomial::from_integer_roots(self.roots.as_slice(), &self.scale)
    }

    /// Materialize over a window. Supports record the true suprema
    /// (row i last nonzero at z_i - 1) even when those lie outside the
    /// window; tails are attached whenever the window reaches far enough for
    /// a single polynomial to describe each side.
    pub fn table(&self, window: Window) -> Result<CohomologyTable> {
        let n = self.ambient;
        let s = self.roots.len();
        let mut entries = BTreeMap::new();
        for i in 0..=n {
            for d in window.iter() {
                let v = self.entry(i, d);
                if !v.is_zero() {
                    entries.insert((i, d), v);
                }
            }
        }

        let mut row_sup = vec![Support::Empty; n + 1];
        row_sup[0] = Support::Infinite;
        for (i, sup) in row_sup.iter_mut().enumerate().take(s + 1).skip(1) {
            let zi = self.roots.get(i - 1).unwrap();
            let below = self.roots.get(i);
            // row empty when the open interval (z_{i+1}, z_i) has no integers
            if below.is_none_or(|zn| zn < zi - 1) {
                *sup = Support::UpTo(zi - 1);
            }
        }

        let hilbert = self.hilbert_polynomial();
        let upper_ok = match self.roots.get(0) {
            Some(z1) => window.hi >= z1 - 1,
            None => true,
        };
        let lower_ok = match self.roots.get(s.wrapping_sub(1)) {
            Some(zs) => window.lo <= zs,
            None => true,
        };
        let upper_row0 = upper_ok.then(|| hilbert.clone());
        let lower = lower_ok.then(|| {
            let mut ls = vec![Polynomial::zero(); n + 1];
            // bottom row: |d - z_k| = (-1)^s (d - z_k) for d below every root
            let sign = if s.is_multiple_of(2) {
                crate::num::rat(1)
            } else {
                crate::num::rat(-1)
            };
            ls[s] = hilbert.scale(&sign);
            ls
        });

        Ok(CohomologyTable::from_raw(
            n,
            window,
            entries,
            row_sup,
            Tails { upper_row0, lower },
        ))
    }
}
