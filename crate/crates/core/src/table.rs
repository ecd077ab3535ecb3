//! Exact-rational cohomology tables on a finite degree window.
//!
//! A table stores the values γ_{i,d} for rows 0..=n and degrees inside a
//! closed window, together with per-row support suprema and optional tail
//! polynomials describing the values outside the window (row 0 to the right,
//! each row to the left). All coordinates are entry coordinates (i, d) with
//! value h^i(F(d)); only the text grid renderer works in display columns
//! d + i.
//!
//! Operations never extrapolate: reading a position not covered by the
//! window or a tail is an error.

use crate::error::{Error, Result};
use crate::num::{rat, Rational};
use crate::poly::Polynomial;
use crate::roots::RootSequence;
use num::traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Closed integer degree interval.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    pub fn len(&self) -> i64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected lo:hi, got {s:?}")))?;
        let lo = a
            .trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad window bound {a:?}: {e}")))?;
        let hi = b
            .trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad window bound {b:?}: {e}")))?;
        Window::new(lo, hi)
    }
}

/// Row bound for partial Euler characteristics: a cutoff row or no cutoff.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bound {
    Finite(i64),
    Infinite,
}

impl Bound {
    /// Largest row index to include for a table with rows 0..=n, or None for
    /// an empty sum.
    pub fn top_row(&self, n: usize) -> Option<usize> {
        match self {
            Bound::Infinite => Some(n),
            Bound::Finite(t) if *t < 0 => None,
            Bound::Finite(t) => Some((*t as usize).min(n)),
        }
    }
}

/// Supremum of a row's support.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Support {
    /// Identically zero as far as the table's data extends.
    Empty,
    /// Last nonzero degree (may lie outside the stored window when the
    /// constructor knows the row in closed form).
    UpTo(i64),
    /// Nonzero for arbitrarily large degrees (row 0 of a positive-dimensional
    /// table).
    Infinite,
}

/// Polynomial tails extending a table beyond its window: for d > hi row 0
/// follows `upper_row0` and rows >= 1 vanish; for d < lo row i follows
/// `lower[i]`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Tails {
    pub upper_row0: Option<Polynomial>,
    pub lower: Option<Vec<Polynomial>>,
}

impl Tails {
    pub fn none() -> Self {
        Tails::default()
    }

    pub fn is_none(&self) -> bool {
        self.upper_row0.is_none() && self.lower.is_none()
    }
}

/// Corner of a table: the exposed last nonzero entry of a row.
#[derive(Clone, PartialEq, Debug)]
pub struct Corner {
    pub row: usize,
    pub degree: i64,
    pub value: Rational,
}

/// The central object: exact values γ_{i,d} on a window, with support
/// metadata and optional tails. Immutable after construction.
#[derive(Clone, PartialEq, Debug)]
pub struct CohomologyTable {
    pub(crate) n: usize,
    pub(crate) window: Window,
    /// Nonzero entries only, keyed by (row, degree).
    pub(crate) entries: BTreeMap<(usize, i64), Rational>,
    pub(crate) row_sup: Vec<Support>,
    pub(crate) tails: Tails,
}

impl CohomologyTable {
    /// The zero table.
    pub fn zero(n: usize, window: Window) -> Self {
        CohomologyTable {
            n,
            window,
            entries: BTreeMap::new(),
            row_sup: vec![Support::Empty; n + 1],
            tails: Tails::none(),
        }
    }

    /// Build from explicit entries; zeros are dropped, supports are computed
    /// from the data. Without tails the table is exactly its window.
    pub fn from_entries<I>(n: usize, window: Window, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, i64), Rational)>,
    {
        let mut map = BTreeMap::new();
        for ((i, d), v) in entries {
            if i > n {
                return Err(Error::IndexRange(format!("row {i} exceeds n = {n}")));
            }
            if !window.contains(d) {
                return Err(Error::OutOfWindow { row: i, degree: d });
            }
            if !v.is_zero()
                && map.insert((i, d), v).is_some() {
                    return Err(Error::Invalid(format!("duplicate entry at ({i}, {d})")));
                }
        }
        let tails = Tails::none();
        let row_sup = compute_supports(n, window, &map, &tails);
        Ok(CohomologyTable {
            n,
            window,
            entries: map,
            row_sup,
            tails,
        })
    }

    /// Attach tails and recompute supports accordingly.
    pub fn with_tails(mut self, tails: Tails) -> Result<Self> {
        if let Some(lower) = &tails.lower {
            if lower.len() != self.n + 1 {
                return Err(Error::Invalid(format!(
                    "lower tails must cover rows 0..={}, got {} polynomials",
                    self.n,
                    lower.len()
                )));
            }
        }
        self.tails = tails;
        self.row_sup = compute_supports(self.n, self.window, &self.entries, &self.tails);
        Ok(self)
    }

    pub(crate) fn from_raw(
        n: usize,
        window: Window,
        entries: BTreeMap<(usize, i64), Rational>,
        row_sup: Vec<Support>,
        tails: Tails,
    ) -> Self {
        debug_assert_eq!(row_sup.len(), n + 1);
        debug_assert!(entries.values().all(|v| !v.is_zero()));
        debug_assert!(entries.keys().all(|(i, d)| *i <= n && window.contains(*d)));
        // no in-window nonzero entry beyond the claimed supremum
        debug_assert!(entries.keys().all(|(i, d)| match row_sup[*i] {
            Support::Empty => false,
            Support::UpTo(s) => *d <= s,
            Support::Infinite => true,
        }));
        CohomologyTable {
            n,
            window,
            entries,
            row_sup,
            tails,
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn tails(&self) -> &Tails {
        &self.tails
    }

    pub fn row_support(&self, i: usize) -> Support {
        self.row_sup[i]
    }

    /// Nonzero entries in (row, degree) order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, i64, &Rational)> {
        self.entries.iter().map(|(&(i, d), v)| (i, d, v))
    }

    pub fn is_zero(&self) -> bool {
        self.dimension().is_none()
    }

    pub(crate) fn entry_window(&self, i: usize, d: i64) -> Rational {
        self.entries
            .get(&(i, d))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// γ_{i,d}, using tail polynomials outside the window when available.
    pub fn entry(&self, i: usize, d: i64) -> Result<Rational> {
        if i > self.n {
            return Err(Error::IndexRange(format!(
                "row {i} exceeds n = {}",
                self.n
            )));
        }
        if self.window.contains(d) {
            return Ok(self.entry_window(i, d));
        }
        if d > self.window.hi {
            return match &self.tails.upper_row0 {
                Some(u) => Ok(if i == 0 {
                    u.eval_int(d)
                } else {
                    Rational::zero()
                }),
                None => Err(Error::OutOfWindow { row: i, degree: d }),
            };
        }
        match &self.tails.lower {
            Some(ls) => Ok(ls[i].eval_int(d)),
            None => Err(Error::OutOfWindow { row: i, degree: d }),
        }
    }

    /// Max row index with nonzero support, None for the zero table.
    pub fn dimension(&self) -> Option<usize> {
        (0..=self.n).rev().find(|&i| self.row_sup[i] != Support::Empty)
    }

    /// The per-row vanishing thresholds (z_1, ..., z_s) where s is the
    /// dimension: z_i = max_{j >= i} (sup_j + 1 + j) - i. Strictly decreasing
    /// by construction, and equal to the root sequence on supernatural
    /// tables.
    pub fn regularity_sequence(&self) -> Result<RootSequence> {
        let s = match self.dimension() {
            None | Some(0) => return Ok(RootSequence::empty()),
            Some(s) => s,
        };
        let mut z = Vec::with_capacity(s);
        let mut running: Option<i64> = None; // max over j >= i of sup_j + 1 + j
        for i in (1..=s).rev() {
            match self.row_sup[i] {
                Support::Infinite => return Err(Error::UnboundedRow { row: i }),
                Support::UpTo(d) => {
                    let m = d + 1 + i as i64;
                    running = Some(running.map_or(m, |r| r.max(m)));
                }
                Support::Empty => {}
            }
            // row s is nonzero, so running is set from the first iteration
            z.push(running.expect("top row of a positive-dimensional table is nonzero") - i as i64);
        }
        z.reverse();
        RootSequence::new(z)
    }

    /// The corners (i, z_i - 1) exposed by the regularity sequence, for rows
    /// 1..=s with z_{i+1} < z_i - 1 (always including i = s). Reading a
    /// corner value outside the window is an error.
    pub fn corners(&self) -> Result<Vec<Corner>> {
        let z = self.regularity_sequence()?;
        let s = z.len();
        let mut out = Vec::new();
        for i in 1..=s {
            let zi = z.get(i - 1).unwrap();
            let below = z.get(i); // z_{i+1}, None = -inf
            if below.is_none_or(|zn| zn < zi - 1) {
                let degree = zi - 1;
                let value = self.entry(i, degree).map_err(|e| match e {
                    Error::OutOfWindow { row, degree } => Error::WindowExhausted { row, degree },
                    other => other,
                })?;
                out.push(Corner {
                    row: i,
                    degree,
                    value,
                });
            }
        }
        Ok(out)
    }

    /// Partial Euler characteristic of the d-th twist: the alternating sum of
    /// the column at degree d up to the given row bound.
    pub fn partial_euler(&self, d: i64, bound: Bound) -> Result<Rational> {
        let mut acc = Rational::zero();
        let Some(top) = bound.top_row(self.n) else {
            return Ok(acc);
        };
        for i in 0..=top {
            let v = self.entry(i, d)?;
            if i % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        Ok(acc)
    }

    /// Checks that d -> χ_d is a polynomial of degree <= expected_degree over
    /// the window (all (expected_degree+1)-st finite differences vanish) and
    /// returns the interpolating polynomial.
    pub fn euler_polynomial(&self, expected_degree: usize) -> Result<Polynomial> {
        let needed = expected_degree as i64 + 3;
        if self.window.len() < needed {
            return Err(Error::WindowTooSmall {
                lo: self.window.lo,
                hi: self.window.hi,
                needed,
            });
        }
        let samples: Vec<Rational> = self
            .window
            .iter()
            .map(|d| self.partial_euler(d, Bound::Infinite).expect("in window"))
            .collect();
        // forward differences; keep the leading value of each order for Newton
        let mut leading = Vec::with_capacity(expected_degree + 1);
        let mut level = samples;
        for _ in 0..=expected_degree {
            leading.push(level[0].clone());
            level = level.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        if let Some(pos) = level.iter().position(|v| !v.is_zero()) {
            return Err(Error::NotPolynomial {
                expected: expected_degree,
                at: self.window.lo + pos as i64,
            });
        }
        // Newton forward form: sum_k Δ^k χ(lo) * (x - lo)...(x - lo - k + 1) / k!
        let mut poly = Polynomial::zero();
        let mut factorial = rat(1);
        for (k, delta) in leading.iter().enumerate() {
            if k > 0 {
                factorial *= rat(k as i64);
            }
            if delta.is_zero() {
                continue;
            }
            let nodes: Vec<i64> = (0..k).map(|m| self.window.lo + m as i64).collect();
            let basis = Polynomial::from_integer_roots(&nodes, &(delta / &factorial));
            poly = poly.add(&basis);
        }
        Ok(poly)
    }

    /// The checkable surrogate of admissibility. Realizability of the lower
    /// positions is not decidable from a finite window and is reported as
    /// unchecked.
    pub fn admissibility_check(&self) -> AdmissibilityReport {
        let first_negative = self
            .entries
            .iter()
            .find(|(_, v)| v.is_negative())
            .map(|(&(i, d), v)| (i, d, v.clone()));
        let mut non_vanishing_rows = Vec::new();
        for i in 1..=self.n {
            let ok = match self.row_sup[i] {
                Support::Empty => true,
                Support::Infinite => false,
                Support::UpTo(d) => {
                    if self.tails.upper_row0.is_some() {
                        d <= self.window.hi
                    } else {
                        d < self.window.hi
                    }
                }
            };
            if !ok {
                non_vanishing_rows.push(i);
            }
        }
        let expected = self.dimension().unwrap_or(0);
        let euler = self.euler_polynomial(expected);
        AdmissibilityReport {
            first_negative,
            non_vanishing_rows,
            euler,
        }
    }

    /// Entrywise exact linear combination. The result window is the
    /// intersection of the input windows; support beyond it is resolved from
    /// the inputs' own windows and tails, and failing that the combination is
    /// an error rather than a guess.
    pub fn linear_combine(coeffs: &[Rational], tables: &[&CohomologyTable]) -> Result<Self> {
        if coeffs.len() != tables.len() || tables.is_empty() {
            return Err(Error::Invalid(
                "linear_combine needs matching, nonempty coefficient and table lists".into(),
            ));
        }
        let n = tables[0].n;
        if tables.iter().any(|t| t.n != n) {
            return Err(Error::Incompatible(
                "tables have different ambient dimensions".into(),
            ));
        }
        let lo = tables.iter().map(|t| t.window.lo).max().unwrap();
        let hi = tables.iter().map(|t| t.window.hi).min().unwrap();
        let window = Window::new(lo, hi)?;

        let active: Vec<(&Rational, &CohomologyTable)> = coeffs
            .iter()
            .zip(tables.iter().copied())
            .filter(|(c, _)| !c.is_zero())
            .collect();

        let mut entries = BTreeMap::new();
        for i in 0..=n {
            for d in window.iter() {
                let mut v = Rational::zero();
                for (c, t) in &active {
                    let e = t.entry_window(i, d);
                    if !e.is_zero() {
                        v += *c * e;
                    }
                }
                if !v.is_zero() {
                    entries.insert((i, d), v);
                }
            }
        }

        let tails = Tails {
            upper_row0: combine_upper(&active, hi),
            lower: combine_lower(&active, lo, n),
        };
        let mut row_sup = compute_supports(n, window, &entries, &tails);

        // Rows >= 1: content above the result window, known only to some input.
        for (i, sup) in row_sup.iter_mut().enumerate().skip(1) {
            let beyond = active
                .iter()
                .filter_map(|(_, t)| match t.row_sup[i] {
                    Support::UpTo(d) if d > hi => Some(d),
                    _ => None,
                })
                .max();
            if let Some(start) = beyond {
                let mut found = None;
                for d in (hi + 1..=start).rev() {
                    let mut v = Rational::zero();
                    for (c, t) in &active {
                        v += *c * entry_with_support_claim(t, i, d)?;
                    }
                    if !v.is_zero() {
                        found = Some(d);
                        break;
                    }
                }
                if let Some(d) = found {
                    *sup = Support::UpTo(d);
                }
            }
        }

        // Row 0 beyond the window without a combined upper tail.
        if tails.upper_row0.is_none() {
            let infinites = active
                .iter()
                .filter(|(_, t)| t.row_sup[0] == Support::Infinite)
                .count();
            match infinites {
                0 => {
                    let beyond = active
                        .iter()
                        .filter_map(|(_, t)| match t.row_sup[0] {
                            Support::UpTo(d) if d > hi => Some(d),
                            _ => None,
                        })
                        .max();
                    if let Some(start) = beyond {
                        for d in (hi + 1..=start).rev() {
                            let mut v = Rational::zero();
                            for (c, t) in &active {
                                v += *c * entry_with_support_claim(t, 0, d)?;
                            }
                            if !v.is_zero() {
                                row_sup[0] = Support::UpTo(d);
                                break;
                            }
                        }
                    }
                }
                1 => row_sup[0] = Support::Infinite,
                _ => {
                    return Err(Error::OutOfWindow {
                        row: 0,
                        degree: hi + 1,
                    })
                }
            }
        }

        Ok(CohomologyTable::from_raw(n, window, entries, row_sup, tails))
    }

    /// Degree shift γ_{i,d} -> γ_{i,d+a}; the window moves by -a and tails
    /// are recomposed accordingly.
    pub fn twist(&self, a: i64) -> CohomologyTable {
        let window = Window {
            lo: self.window.lo - a,
            hi: self.window.hi - a,
        };
        let entries = self
            .entries
            .iter()
            .map(|(&(i, d), v)| ((i, d - a), v.clone()))
            .collect();
        let row_sup = self
            .row_sup
            .iter()
            .map(|s| match s {
                Support::UpTo(d) => Support::UpTo(d - a),
                other => *other,
            })
            .collect();
        let tails = Tails {
            upper_row0: self.tails.upper_row0.as_ref().map(|p| p.shift_var(a)),
            lower: self
                .tails
                .lower
                .as_ref()
                .map(|ls| ls.iter().map(|p| p.shift_var(a)).collect()),
        };
        CohomologyTable::from_raw(self.n, window, entries, row_sup, tails)
    }
}

/// Structured result of the admissibility surrogate. The third condition
/// (sheaf-realized lower positions) is never checked here.
#[derive(Debug)]
pub struct AdmissibilityReport {
    pub first_negative: Option<(usize, i64, Rational)>,
    pub non_vanishing_rows: Vec<usize>,
    pub euler: Result<Polynomial>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.first_negative.is_none() && self.non_vanishing_rows.is_empty() && self.euler.is_ok()
    }

    pub fn summary(&self) -> String {
        let mut lines = Vec::new();
        match &self.first_negative {
            None => lines.push("entries nonnegative: pass".to_string()),
            Some((i, d, v)) => {
                lines.push(format!("entries nonnegative: FAIL at ({i}, {d}) = {v}"))
            }
        }
        if self.non_vanishing_rows.is_empty() {
            lines.push("higher rows vanish on the right: pass".to_string());
        } else {
            lines.push(format!(
                "higher rows vanish on the right: FAIL for rows {:?}",
                self.non_vanishing_rows
            ));
        }
        match &self.euler {
            Ok(p) => lines.push(format!("Euler characteristic polynomial: pass ({p})")),
            Err(e) => lines.push(format!("Euler characteristic polynomial: FAIL ({e})")),
        }
        lines.push("lower positions realized by a sheaf: not checked".to_string());
        lines.join("\n")
    }
}

/// A table value, falling back on the support metadata: degrees beyond a
/// row's claimed supremum are zero even when no tail covers them.
fn entry_with_support_claim(t: &CohomologyTable, i: usize, d: i64) -> Result<Rational> {
    match t.entry(i, d) {
        Ok(v) => Ok(v),
        Err(Error::OutOfWindow { .. }) => match t.row_sup[i] {
            Support::Empty => Ok(Rational::zero()),
            Support::UpTo(s) if d > s => Ok(Rational::zero()),
            _ => Err(Error::OutOfWindow { row: i, degree: d }),
        },
        Err(e) => Err(e),
    }
}

fn row_max_in_window(
    entries: &BTreeMap<(usize, i64), Rational>,
    i: usize,
    window: Window,
) -> Option<i64> {
    entries
        .range((i, window.lo)..=(i, window.hi))
        .next_back()
        .map(|(&(_, d), _)| d)
}

/// Last degree strictly below `lo` where a nonzero polynomial does not
/// vanish; a degree-D polynomial cannot vanish at D+1 consecutive integers.
fn last_nonzero_below(p: &Polynomial, lo: i64) -> Option<i64> {
    let deg = p.degree()? as i64;
    (lo - deg - 2..lo).rev().find(|&d| !p.eval_int(d).is_zero())
}

pub(crate) fn compute_supports(
    n: usize,
    window: Window,
    entries: &BTreeMap<(usize, i64), Rational>,
    tails: &Tails,
) -> Vec<Support> {
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        if i == 0 {
            if let Some(u) = &tails.upper_row0 {
                if !u.is_zero() {
                    out.push(Support::Infinite);
                    continue;
                }
            }
        }
        if let Some(d) = row_max_in_window(entries, i, window) {
            out.push(Support::UpTo(d));
            continue;
        }
        let from_tail = tails
            .lower
            .as_ref()
            .and_then(|ls| last_nonzero_below(&ls[i], window.lo));
        out.push(match from_tail {
            Some(d) => Support::UpTo(d),
            None => Support::Empty,
        });
    }
    out
}

/// Row-0 values of each active input as one polynomial valid for all
/// d > hi, when that much is known; the combination otherwise has no upper
/// tail.
fn combine_upper(active: &[(&Rational, &CohomologyTable)], hi: i64) -> Option<Polynomial> {
    let mut sum = Polynomial::zero();
    for (c, t) in active {
        let contribution = match &t.tails.upper_row0 {
            Some(u) => {
                // stored entries past the result window must agree with the tail
                for d in hi + 1..=t.window.hi {
                    if t.entry_window(0, d) != u.eval_int(d) {
                        return None;
                    }
                }
                u.clone()
            }
            None => match t.row_sup[0] {
                Support::UpTo(d) if d <= hi => Polynomial::zero(),
                Support::Empty => Polynomial::zero(),
                _ => return None,
            },
        };
        sum = sum.add(&contribution.scale(c));
    }
    Some(sum)
}

fn combine_lower(
    active: &[(&Rational, &CohomologyTable)],
    lo: i64,
    n: usize,
) -> Option<Vec<Polynomial>> {
    let mut sums = vec![Polynomial::zero(); n + 1];
    for (c, t) in active {
        match &t.tails.lower {
            Some(ls) => {
                for (i, p) in ls.iter().enumerate() {
                    for d in t.window.lo..lo {
                        if t.entry_window(i, d) != p.eval_int(d) {
                            return None;
                        }
                    }
                    sums[i] = sums[i].add(&p.scale(c));
                }
            }
            None => {
                // usable only if the input is zero strictly below the result
                // window on its own data
                for d in t.window.lo..lo {
                    for i in 0..=n {
                        if !t.entry_window(i, d).is_zero() {
                            return None;
                        }
                    }
                }
            }
        }
    }
    Some(sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::frac;
    use crate::sheaves::{direct_sum, StockKind, StockSheaf};
    use crate::supernatural::SupernaturalSpec;

    fn ip(window: Window) -> CohomologyTable {
        StockSheaf::new(StockKind::PointIdealP2, 0)
            .table(window)
            .unwrap()
    }

    fn mixed(window: Window) -> CohomologyTable {
        let line = StockSheaf::new(
            StockKind::LineInPn {
                twist: -4,
                ambient: 2,
            },
            0,
        )
        .table(window)
        .unwrap();
        direct_sum(&ip(window), &line).unwrap()
    }

    #[test]
    fn point_ideal_entries() {
        let t = ip(Window::new(-8, 6).unwrap());
        assert_eq!(t.entry(0, 2).unwrap(), rat(5));
        assert_eq!(t.entry(0, 0).unwrap(), rat(0));
        assert_eq!(t.entry(2, -5).unwrap(), rat(6));
        assert_eq!(t.entry(1, -1).unwrap(), rat(1));
        // outside the window, covered by tails
        assert_eq!(t.entry(0, 10).unwrap(), rat(65));
        assert_eq!(t.entry(1, -30).unwrap(), rat(1));
        assert_eq!(t.entry(2, -30).unwrap(), rat(406));
    }

    #[test]
    fn out_of_window_without_tails_errors() {
        let t = CohomologyTable::from_entries(
            1,
            Window::new(-2, 2).unwrap(),
            vec![((0, 0), rat(1))],
        )
        .unwrap();
        assert_eq!(t.entry(0, 1).unwrap(), rat(0));
        assert!(matches!(
            t.entry(0, 3),
            Err(Error::OutOfWindow { row: 0, degree: 3 })
        ));
        assert!(matches!(t.entry(1, -3), Err(Error::OutOfWindow { .. })));
    }

    #[test]
    fn dimension_and_regularity() {
        let w = Window::new(-8, 6).unwrap();
        assert_eq!(CohomologyTable::zero(2, w).dimension(), None);
        let t = ip(w);
        assert_eq!(t.dimension(), Some(2));
        assert_eq!(t.regularity_sequence().unwrap().as_slice(), &[0, -2]);

        let m = mixed(w);
        assert_eq!(m.regularity_sequence().unwrap().as_slice(), &[3, -2]);

        let sn = SupernaturalSpec::new(RootSequence::new(vec![0, -5]).unwrap(), rat(1), 2)
            .unwrap()
            .table(w)
            .unwrap();
        assert_eq!(sn.regularity_sequence().unwrap().as_slice(), &[0, -5]);
    }

    #[test]
    fn corners_of_fixtures() {
        let w = Window::new(-8, 6).unwrap();
        let t = ip(w);
        let cs = t.corners().unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!((cs[0].row, cs[0].degree, cs[0].value.clone()), (1, -1, rat(1)));
        assert_eq!((cs[1].row, cs[1].degree, cs[1].value.clone()), (2, -3, rat(1)));

        let m = mixed(w);
        let cs = m.corners().unwrap();
        assert_eq!((cs[0].row, cs[0].degree, cs[0].value.clone()), (1, 2, rat(1)));
        assert_eq!((cs[1].row, cs[1].degree, cs[1].value.clone()), (2, -3, rat(1)));

        let sn = SupernaturalSpec::new(RootSequence::new(vec![3, -2]).unwrap(), rat(1), 2)
            .unwrap()
            .table(w)
            .unwrap();
        assert_eq!(sn.dimension(), Some(2));
        let cs = sn.corners().unwrap();
        assert_eq!((cs[0].row, cs[0].degree, cs[0].value.clone()), (1, 2, rat(4)));
        assert_eq!((cs[1].row, cs[1].degree, cs[1].value.clone()), (2, -3, rat(6)));
    }

    #[test]
    fn corner_outside_window_is_window_exhausted() {
        // supernatural roots (3,-2) on a window that stops before the row-1
        // corner at degree 2
        let spec = SupernaturalSpec::new(RootSequence::new(vec![3, -2]).unwrap(), rat(1), 2)
            .unwrap();
        let t = spec.table(Window::new(-5, 0).unwrap()).unwrap();
        assert!(matches!(
            t.corners(),
            Err(Error::WindowExhausted { row: 1, degree: 2 })
        ));
    }

    #[test]
    fn partial_euler_examples() {
        let t = ip(Window::new(-8, 6).unwrap());
        assert_eq!(t.partial_euler(2, Bound::Infinite).unwrap(), rat(5));
        assert_eq!(t.partial_euler(-1, Bound::Infinite).unwrap(), rat(-1));
        assert_eq!(t.partial_euler(-1, Bound::Finite(-1)).unwrap(), rat(0));
        assert_eq!(t.partial_euler(0, Bound::Finite(0)).unwrap(), rat(0));
        assert_eq!(t.partial_euler(-5, Bound::Finite(1)).unwrap(), rat(-1));
    }

    #[test]
    fn euler_polynomial_examples() {
        let w = Window::new(-8, 6).unwrap();
        let t = ip(w);
        let p = t.euler_polynomial(2).unwrap();
        assert_eq!(p.coeffs(), &[rat(-1) + rat(1), frac(3, 2), frac(1, 2)]);
        let sn = SupernaturalSpec::new(RootSequence::new(vec![3, -2]).unwrap(), rat(1), 2)
            .unwrap()
            .table(w)
            .unwrap();
        assert_eq!(
            sn.euler_polynomial(2).unwrap(),
            Polynomial::from_integer_roots(&[3, -2], &rat(1))
        );
        assert!(CohomologyTable::zero(2, w)
            .euler_polynomial(0)
            .unwrap()
            .is_zero());
        // a lone entry is not a polynomial table
        let bad =
            CohomologyTable::from_entries(1, w, vec![((0, 0), rat(1))]).unwrap();
        assert!(matches!(
            bad.euler_polynomial(0),
            Err(Error::NotPolynomial { .. })
        ));
    }

    #[test]
    fn admissibility_surrogate() {
        let w = Window::new(-8, 6).unwrap();
        assert!(ip(w).admissibility_check().passed());

        let neg =
            CohomologyTable::from_entries(1, w, vec![((0, 0), rat(-1))]).unwrap();
        let rep = neg.admissibility_check();
        assert!(!rep.passed());
        assert_eq!(rep.first_negative, Some((0, 0, rat(-1))));

        // subtracting too much of a generator breaks nonnegativity at (2, -3)
        let sn = SupernaturalSpec::new(RootSequence::new(vec![0, -2]).unwrap(), rat(1), 2)
            .unwrap()
            .table(w)
            .unwrap();
        let combo =
            CohomologyTable::linear_combine(&[rat(1), frac(-1, 2)], &[&ip(w), &sn]).unwrap();
        // the documented witness: half the generator overshoots the corner
        assert_eq!(combo.entry(2, -3).unwrap(), frac(-1, 2));
        let rep = combo.admissibility_check();
        assert!(!rep.passed());
        let (row, _, value) = rep.first_negative.as_ref().unwrap();
        assert_eq!(*row, 2);
        assert!(value.is_negative());
        assert!(rep.summary().contains("not checked"));
    }

    #[test]
    fn linear_combine_examples() {
        let w = Window::new(-8, 6).unwrap();
        let t = ip(w);
        let sn = SupernaturalSpec::new(RootSequence::new(vec![0, -2]).unwrap(), rat(1), 2)
            .unwrap()
            .table(w)
            .unwrap();
        // identity: 1*t - 0*sn
        let same = CohomologyTable::linear_combine(&[rat(1), rat(0)], &[&t, &sn]).unwrap();
        for (i, d, v) in t.nonzero_entries() {
            assert_eq!(same.entry(i, d).unwrap(), *v);
        }
        let diff = CohomologyTable::linear_combine(&[rat(1), frac(-1, 3)], &[&t, &sn]).unwrap();
        assert_eq!(diff.entry(1, -1).unwrap(), frac(2, 3));

        let m = mixed(w);
        let snz = SupernaturalSpec::new(RootSequence::new(vec![3, -2]).unwrap(), rat(1), 2)
            .unwrap()
            .table(w)
            .unwrap();
        let resid = CohomologyTable::linear_combine(&[rat(1), frac(-1, 6)], &[&m, &snz]).unwrap();
        assert_eq!(resid.entry(1, -1).unwrap(), frac(13, 3));
        assert_eq!(resid.entry(1, 0).unwrap(), rat(2));
        assert_eq!(resid.entry(2, -3).unwrap(), rat(0));
    }

    #[test]
    fn combine_tracks_support_beyond_result_window() {
        // wider table knows row 1 is nonzero above the narrow window's hi
        let wide = SupernaturalSpec::new(RootSequence::new(vec![5]).unwrap(), rat(1), 1)
            .unwrap()
            .table(Window::new(-6, 8).unwrap())
            .unwrap();
        let narrow = CohomologyTable::zero(1, Window::new(-6, 2).unwrap());
        let c = CohomologyTable::linear_combine(&[rat(1), rat(1)], &[&wide, &narrow]).unwrap();
        assert_eq!(c.window(), Window::new(-6, 2).unwrap());
        assert_eq!(c.row_support(1), Support::UpTo(4));
        assert_eq!(c.regularity_sequence().unwrap().as_slice(), &[5]);
    }

    #[test]
    fn twist_round_trip_and_roots() {
        let w = Window::new(-8, 6).unwrap();
        let t = ip(w);
        let back = t.twist(3).twist(-3);
        assert_eq!(t, back);
        let spec = SupernaturalSpec::new(RootSequence::new(vec![2, -1]).unwrap(), rat(1), 2)
            .unwrap();
        let tw = spec.table(w).unwrap().twist(4);
        let direct = SupernaturalSpec::new(RootSequence::new(vec![-2, -5]).unwrap(), rat(1), 2)
            .unwrap()
            .table(Window::new(-12, 2).unwrap())
            .unwrap();
        assert_eq!(tw, direct);
    }
}
