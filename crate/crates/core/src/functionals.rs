//! Linear functionals on cohomology tables: alternating Vandermonde-weighted
//! sums of partial Euler characteristics, the special bound sequences that
//! make them nonnegative on sheaf tables, the Betti-table pairings they come
//! from, and a search for violations that certify a table as non-realizable.

use crate::error::{Error, Result};
use crate::num::{rat, Rational};
use crate::table::{Bound, CohomologyTable, Window};
use num::traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Strictly increasing integers d_0 < ... < d_{s+1}. Subsequences of length
/// one are allowed; they arise when longer functionals are telescoped down.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeSequence(Vec<i64>);

impl DegreeSequence {
    pub fn new(degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Invalid("degree sequence must be nonempty".into()));
        }
        for w in degrees.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Invalid(format!(
                    "degree sequence must be strictly increasing, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// s with len = s + 2; -1 for a single-degree sequence.
    pub fn s(&self) -> i64 {
        self.0.len() as i64 - 2
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// The prefix (d_1, ..., d_j) dropping d_0.
    pub fn inner_prefix(&self, j: usize) -> DegreeSequence {
        DegreeSequence(self.0[1..=j].to_vec())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let degrees = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad degree {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DegreeSequence::new(degrees)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Row bounds ψ paired with a degree sequence of the same length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundSequence(Vec<Bound>);

impl BoundSequence {
    pub fn new(bounds: Vec<Bound>) -> Self {
        BoundSequence(bounds)
    }

    pub fn all_infinite(len: usize) -> Self {
        BoundSequence(vec![Bound::Infinite; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Bound] {
        &self.0
    }

    /// The bound sequence φ^j(s) of length s+2. For j >= 1 it is
    /// (0,...,j-2, j-1, j-1, j-1, j,...,s-1); φ^0(s) starts at -1 (an empty
    /// partial sum) and repeats s-1 at the end.
    pub fn phi(j: usize, s: usize) -> Result<Self> {
        if j > s {
            return Err(Error::IndexRange(format!("phi^{j} needs j <= s = {s}")));
        }
        let len = s + 2;
        let mut out = Vec::with_capacity(len);
        if j == 0 {
            out.push(Bound::Finite(-1));
            for i in 1..=s {
                out.push(Bound::Finite(i as i64 - 1));
            }
            out.push(Bound::Finite(s as i64 - 1));
        } else {
            for i in 0..len {
                let v = if i < j {
                    i as i64
                } else if i == j {
                    i as i64 - 1
                } else {
                    i as i64 - 2
                };
                out.push(Bound::Finite(v));
            }
        }
        Ok(BoundSequence(out))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bounds = s
            .split(',')
            .map(|p| {
                let p = p.trim();
                if p == "inf" || p == "+inf" {
                    Ok(Bound::Infinite)
                } else {
                    p.parse::<i64>()
                        .map(Bound::Finite)
                        .map_err(|e| Error::Parse(format!("bad bound {p:?}: {e}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundSequence(bounds))
    }
}

/// r_i(d): the product of all pairwise differences d_k - d_j over
/// 0 <= j < k <= s+1 omitting every pair that touches index i. Positive for
/// increasing d.
pub fn vandermonde_weight(d: &DegreeSequence, i: usize) -> Rational {
    let v = d.as_slice();
    let mut p = rat(1);
    for j in 0..v.len() {
        for k in j + 1..v.len() {
            if j != i && k != i {
                p *= rat(v[k] - v[j]);
            }
        }
    }
    p
}

/// L(d, ψ)(γ) = Σ_i (-1)^i r_i(d) χ_{-d_i}^{<= ψ_i}(γ), exactly.
pub fn evaluate(d: &DegreeSequence, bounds: &BoundSequence, table: &CohomologyTable) -> Result<Rational> {
    if d.len() != bounds.len() {
        return Err(Error::Invalid(format!(
            "degree sequence of length {} paired with {} bounds",
            d.len(),
            bounds.len()
        )));
    }
    let mut acc = Rational::zero();
    for (i, (&di, &bi)) in d.as_slice().iter().zip(bounds.as_slice()).enumerate() {
        if bi.top_row(table.ambient()).is_none() {
            continue;
        }
        let chi = table.partial_euler(-di, bi)?;
        if chi.is_zero() {
            continue;
        }
        let term = vandermonde_weight(d, i) * chi;
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// The dot-product table of L(d, ψ): coefficient (-1)^{i+j} r_i at position
/// (j, -d_i) for every j <= ψ_i, rows up to `nrows`. Rendering it reproduces
/// the ±r_i diagonal pattern.
pub fn coefficient_table(d: &DegreeSequence, bounds: &BoundSequence, nrows: usize) -> Result<CohomologyTable> {
    if d.len() != bounds.len() {
        return Err(Error::Invalid("degrees/bounds length mismatch".into()));
    }
    let twists: Vec<i64> = d.as_slice().iter().map(|&di| -di).collect();
    let lo = *twists.iter().min().unwrap();
    let hi = *twists.iter().max().unwrap();
    let mut entries = BTreeMap::new();
    for (i, (&e, &bi)) in twists.iter().zip(bounds.as_slice()).enumerate() {
        let Some(top) = bi.top_row(nrows) else {
            continue;
        };
        let r = vandermonde_weight(d, i);
        for j in 0..=top {
            let sign = if (i + j) % 2 == 0 { rat(1) } else { rat(-1) };
            entries.insert((j, e), sign * &r);
        }
    }
    CohomologyTable::from_entries(nrows, Window::new(lo, hi)?, entries)
}

/// L(d, ∞)(γ) after verifying that χ is a polynomial of degree <= s on the
/// window; zero under that precondition.
pub fn interpolation_check(d: &DegreeSequence, table: &CohomologyTable) -> Result<Rational> {
    if d.s() < 0 {
        return Err(Error::Invalid(
            "interpolation check needs a degree sequence of length >= 2".into(),
        ));
    }
    table.euler_polynomial(d.s() as usize)?;
    evaluate(d, &BoundSequence::all_infinite(d.len()), table)
}

/// Finitely supported nonnegative array β_{i,k} over (homological index,
/// internal degree).
#[derive(Clone, PartialEq, Debug, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), Rational>,
}

impl BettiTable {
    pub fn from_entries<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, i64), Rational)>,
    {
        let mut map = BTreeMap::new();
        for ((i, k), v) in entries {
            if v.is_negative() {
                return Err(Error::Invalid(format!(
                    "betti entries must be nonnegative, got {v} at ({i}, {k})"
                )));
            }
            if !v.is_zero() {
                map.insert((i, k), v);
            }
        }
        Ok(BettiTable { entries: map })
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, i64, &Rational)> {
        self.entries.iter().map(|(&(i, k), v)| (i, k, v))
    }

    pub fn get(&self, i: usize, k: i64) -> Rational {
        self.entries
            .get(&(i, k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// The pure Betti table β^d with β_{i, d_i} = r_i(d).
pub fn pure_betti(d: &DegreeSequence) -> BettiTable {
    let entries = d
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &di)| ((i, di), vandermonde_weight(d, i)));
    BettiTable::from_entries(entries).expect("vandermonde weights are positive")
}

/// ⟨β, γ⟩ = Σ_{j <= i} (-1)^{i-j} β_{i,k} γ_{j,-k}.
pub fn pairing(beta: &BettiTable, table: &CohomologyTable) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (i, k, b) in beta.nonzero_entries() {
        for j in 0..=i.min(table.ambient()) {
            let g = table.entry(j, -k)?;
            if g.is_zero() {
                continue;
            }
            let term = b * g;
            if (i - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    Ok(acc)
}

/// The truncated pairing ⟨β, γ⟩_{c,τ}: the part of ⟨β, γ⟩ with j < τ or
/// j <= i - 2, plus the two diagonal-adjacent terms at j = τ, i = τ + ε
/// restricted to internal degree k <= c + ε.
pub fn pairing_bounded(
    beta: &BettiTable,
    table: &CohomologyTable,
    c: i64,
    tau: usize,
) -> Result<Rational> {
    if tau > table.ambient() {
        return Err(Error::IndexRange(format!(
            "tau = {tau} exceeds the ambient dimension {}",
            table.ambient()
        )));
    }
    let mut acc = Rational::zero();
    for (i, k, b) in beta.nonzero_entries() {
        for j in 0..=i.min(table.ambient()) {
            if !(j < tau || j + 2 <= i) {
                continue;
            }
            let g = table.entry(j, -k)?;
            if g.is_zero() {
                continue;
            }
            let term = b * g;
            if (i - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        for eps in 0..=1i64 {
            if i == tau + eps as usize && k <= c + eps {
                let g = table.entry(tau, -k)?;
                if g.is_zero() {
                    continue;
                }
                let term = b * g;
                if eps == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
        }
    }
    Ok(acc)
}

/// The nonnegative coefficients A_0..A_s expressing -L(d, φ^0(s)) as a
/// combination of shorter all-tops functionals:
/// A_k = Π_{1<=j<=s-k} (d_j - d_0) · Π_{1<=i<j<=s+1, j>s+1-k} (d_j - d_i).
pub fn eq1_coefficients(d: &DegreeSequence) -> Result<Vec<Rational>> {
    let s = d.s();
    if s < 0 {
        return Err(Error::Invalid(
            "equation-one coefficients need a degree sequence of length >= 2".into(),
        ));
    }
    let s = s as usize;
    let v = d.as_slice();
    let mut out = Vec::with_capacity(s + 1);
    for k in 0..=s {
        let mut a = rat(1);
        for j in 1..=s - k {
            a *= rat(v[j] - v[0]);
        }
        for i in 1..=s + 1 {
            for j in i + 1..=s + 1 {
                if j > s + 1 - k {
                    a *= rat(v[j] - v[i]);
                }
            }
        }
        out.push(a);
    }
    Ok(out)
}

/// The bounds ψ^(j) paired with the inner prefix (d_1, ..., d_j):
/// (0,...,j-1) for j <= s, with the last value repeated once when j = s+1.
pub fn eq1_truncated_bounds(j: usize, s: usize) -> BoundSequence {
    let mut out: Vec<Bound> = (0..j as i64).map(Bound::Finite).collect();
    if j == s + 1 {
        out[s] = Bound::Finite(s as i64 - 1);
    }
    BoundSequence::new(out)
}

/// -L(d, φ^0) minus its telescoped expansion; identically zero on every
/// table, which validates the A_k coefficients exactly.
pub fn eq1_identity_gap(d: &DegreeSequence, table: &CohomologyTable) -> Result<Rational> {
    let s = d.s();
    if s < 0 {
        return Err(Error::Invalid("need a degree sequence of length >= 2".into()));
    }
    let s = s as usize;
    let lhs = -evaluate(d, &BoundSequence::phi(0, s)?, table)?;
    let coeffs = eq1_coefficients(d)?;
    let mut rhs = Rational::zero();
    for (k, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let j = s + 1 - k;
        let prefix = d.inner_prefix(j);
        let bounds = eq1_truncated_bounds(j, s);
        rhs += a * evaluate(&prefix, &bounds, table)?;
    }
    Ok(lhs - rhs)
}

/// The descending-induction product identity behind the A_k reconstruction:
/// for values x_0..x_{s+1} and 0 <= ell <= s+1, -1 <= t <= ell-1,
///   Σ_{k=0}^{ell} P(b, s-k) Q(s-k+1)
///     = P(b+1, s-t) Q(s-t) + Σ_{k=0}^{t} P(b, s-k) Q(s-k+1)
/// where b = s-ell+1, P(a, m) = Π_{a<=j<=m} (x_j - x_0) and
/// Q(m) = Π_{m<j<=s+1} (x_j - x_b). Returns whether both sides agree.
pub fn product_identity_check(values: &[Rational], ell: usize, t: i64) -> Result<bool> {
    if values.len() < 2 {
        return Err(Error::IndexRange("need at least two values".into()));
    }
    let s = values.len() as i64 - 2;
    if ell as i64 > s + 1 {
        return Err(Error::IndexRange(format!("ell = {ell} exceeds s + 1 = {}", s + 1)));
    }
    if t < -1 || t > ell as i64 - 1 {
        return Err(Error::IndexRange(format!(
            "t = {t} outside [-1, ell - 1 = {}]",
            ell as i64 - 1
        )));
    }
    let base = s - ell as i64 + 1;
    let p = |a: i64, m: i64| -> Rational {
        let mut acc = rat(1);
        let mut j = a;
        while j <= m {
            acc *= &values[j as usize] - &values[0];
            j += 1;
        }
        acc
    };
    let q = |m: i64| -> Rational {
        let mut acc = rat(1);
        let mut j = m + 1;
        while j <= s + 1 {
            acc *= &values[j as usize] - &values[base as usize];
            j += 1;
        }
        acc
    };
    let mut lhs = Rational::zero();
    for k in 0..=ell as i64 {
        lhs += p(base, s - k) * q(s - k + 1);
    }
    let mut rhs = p(base + 1, s - t) * q(s - t);
    for k in 0..=t {
        rhs += p(base, s - k) * q(s - k + 1);
    }
    Ok(lhs == rhs)
}

/// A violated positivity functional: evidence that no positive multiple of
/// the table is the cohomology table of a coherent sheaf. `value` is the
/// violated nonnegative form, L(d, φ^j) for j >= 1 and -L(d, φ^0) for j = 0,
/// so it is negative.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub degrees: Vec<i64>,
    pub j: usize,
    #[serde(with = "crate::format::rational_serde")]
    pub value: Rational,
}

/// Searches degree sequences inside `box_window` (lengths up to s_max + 2)
/// for a violated functional. Deterministic enumeration: by s, then by the
/// span d_{s+1} - d_0, then lexicographically, with j innermost; the first
/// violation is returned. None means the search was exhaustive within the
/// box and found nothing, which is inconclusive rather than a proof of
/// realizability.
pub fn certificate_search(
    table: &CohomologyTable,
    box_window: Window,
    s_max: usize,
) -> Result<Option<Certificate>> {
    for s in 0..=s_max {
        let len = s + 2;
        let min_span = len as i64 - 1;
        for span in min_span..=box_window.hi - box_window.lo {
            for d0 in box_window.lo..=box_window.hi - span {
                let mut interior = Vec::with_capacity(s);
                if let Some(cert) = search_interior(
                    table,
                    s,
                    d0,
                    d0 + span,
                    d0 + 1,
                    &mut interior,
                )? {
                    return Ok(Some(cert));
                }
            }
        }
    }
    Ok(None)
}

fn search_interior(
    table: &CohomologyTable,
    s: usize,
    d0: i64,
    dlast: i64,
    from: i64,
    interior: &mut Vec<i64>,
) -> Result<Option<Certificate>> {
    if interior.len() == s {
        let mut degrees = Vec::with_capacity(s + 2);
        degrees.push(d0);
        degrees.extend_from_slice(interior);
        degrees.push(dlast);
        let d = DegreeSequence::new(degrees.clone()).expect("built increasing");
        for j in 0..=s {
            let l = evaluate(&d, &BoundSequence::phi(j, s)?, table)?;
            let value = if j == 0 { -l } else { l };
            if value.is_negative() {
                return Ok(Some(Certificate { degrees, j, value }));
            }
        }
        return Ok(None);
    }
    let remaining = (s - interior.len()) as i64;
    let mut v = from;
    while dlast - v >= remaining {
        interior.push(v);
        if let Some(cert) = search_interior(table, s, d0, dlast, v + 1, interior)? {
            return Ok(Some(cert));
        }
        interior.pop();
        v += 1;
    }
    Ok(None)
}
