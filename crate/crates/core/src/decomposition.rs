//! Greedy decomposition of an admissible table into a chain of supernatural
//! tables: repeatedly take the regularity sequence z of the working table,
//! subtract the largest multiple q of the normalized generator with roots z
//! that keeps every corner nonnegative, and continue on the residual. The
//! subtraction kills at least one corner, so the regularity sequence drops
//! strictly; exact arithmetic keeps every coefficient rational.

use crate::error::{Error, Result};
use crate::num::{rat, Rational};
use crate::roots::RootSequence;
use crate::supernatural::SupernaturalSpec;
use crate::table::{CohomologyTable, Support, Window};
use num::traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Debug)]
pub struct DecompositionStep {
    pub roots: RootSequence,
    pub coefficient: Rational,
    /// Rows whose corner ratio attained the minimum; those corners are
    /// exactly zero in the residual.
    pub killed_corners: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionStatus {
    ExhaustedToZero,
    BudgetReached,
    WindowExhausted { row: usize, degree: i64 },
}

#[derive(Clone, PartialEq, Debug)]
pub struct Decomposition {
    pub steps: Vec<DecompositionStep>,
    pub residual: CohomologyTable,
    pub status: DecompositionStatus,
}

impl Decomposition {
    /// Successive root sequences strictly decreasing termwise (with -inf
    /// padding) and all coefficients positive.
    pub fn verify_chain(&self) -> bool {
        if !self.steps.iter().all(|s| s.coefficient.is_positive()) {
            return false;
        }
        self.steps
            .windows(2)
            .all(|w| w[0].roots.strictly_above(&w[1].roots))
    }

    /// (step index, dimension before, dimension after) for every step at
    /// which the working dimension dropped.
    pub fn dimension_drops(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (k, w) in self.steps.windows(2).enumerate() {
            let (a, b) = (w[0].roots.len(), w[1].roots.len());
            if b < a {
                out.push((k + 1, a, b));
            }
        }
        out
    }

    /// Largest residual entry in the current top row, for budget-reached
    /// diagnostics.
    pub fn tail_diagnostic(&self) -> Option<(usize, i64, Rational)> {
        let top = self.residual.dimension()?;
        self.residual
            .nonzero_entries()
            .filter(|(i, _, _)| *i == top)
            .max_by(|a, b| a.2.cmp(b.2))
            .map(|(i, d, v)| (i, d, v.clone()))
    }
}

pub fn verify_chain(dec: &Decomposition) -> bool {
    dec.verify_chain()
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    pub max_steps: usize,
    pub max_steps_per_dimension: Option<usize>,
}

impl DecomposeOptions {
    pub fn with_max_steps(max_steps: usize) -> Self {
        DecomposeOptions {
            max_steps,
            max_steps_per_dimension: None,
        }
    }
}

/// One greedy subtraction. The input must be nonzero and should pass the
/// admissibility surrogate; a negative residual entry is reported as
/// NonAdmissible and is itself a witness that the input was not a sheaf
/// table. Corners outside the window surface as WindowExhausted.
pub fn decompose_step(table: &CohomologyTable) -> Result<(DecompositionStep, CohomologyTable)> {
    let Some(s) = table.dimension() else {
        return Err(Error::ZeroTable);
    };
    let roots = table.regularity_sequence()?;
    let spec = SupernaturalSpec::new(roots.clone(), rat(1), table.ambient())?;

    let (q, killed) = if s == 0 {
        // zero-dimensional: the generator is the constant-one row 0, and an
        // admissible table has constant row 0, so any degree gives the ratio
        let q = table.entry(0, table.window().hi)?;
        if !q.is_positive() {
            // nonzero table with a nonpositive right edge cannot be admissible
            return Err(Error::NonAdmissible {
                row: 0,
                degree: table.window().hi,
                value: q,
            });
        }
        (q, vec![0])
    } else {
        let corners = table.corners()?;
        let mut best: Option<Rational> = None;
        let mut ratios = Vec::with_capacity(corners.len());
        for c in &corners {
            let denom = spec.entry(c.row, c.degree);
            debug_assert!(denom.is_positive());
            if !c.value.is_positive() {
                return Err(Error::NonAdmissible {
                    row: c.row,
                    degree: c.degree,
                    value: c.value.clone(),
                });
            }
            let ratio = &c.value / &denom;
            if best.as_ref().is_none_or(|b| ratio < *b) {
                best = Some(ratio.clone());
            }
            ratios.push((c.row, ratio));
        }
        let q = best.expect("dimension >= 1 tables have a bottom corner");
        let killed = ratios
            .into_iter()
            .filter(|(_, r)| *r == q)
            .map(|(row, _)| row)
            .collect();
        (q, killed)
    };

    let residual = subtract_generator(table, &spec, &q)?;
    Ok((
        DecompositionStep {
            roots,
            coefficient: q,
            killed_corners: killed,
        },
        residual,
    ))
}

/// working - q * generator over the window, with exact tail updates and
/// support rescans. Only positions where the generator is nonzero change;
/// any of them going negative aborts with the witness.
fn subtract_generator(
    table: &CohomologyTable,
    spec: &SupernaturalSpec,
    q: &Rational,
) -> Result<CohomologyTable> {
    let n = table.ambient();
    let window = table.window();
    let s = spec.roots().len();
    let mut entries = table.entries.clone();

    for i in 0..=s.min(n) {
        for d in window.iter() {
            let g = spec.entry(i, d);
            if g.is_zero() {
                continue;
            }
            let old = entries.remove(&(i, d)).unwrap_or_else(Rational::zero);
            let new = old - q * g;
            if new.is_negative() {
                return Err(Error::NonAdmissible {
                    row: i,
                    degree: d,
                    value: new,
                });
            }
            if !new.is_zero() {
                entries.insert((i, d), new);
            }
        }
    }

    // Tail updates. Corners inside the window force hi >= every degree where
    // the generator's row 0 differs from its Hilbert polynomial, and
    // lo <= z_s - 1, so on each side a single polynomial correction is exact.
    let hp = spec.hilbert_polynomial();
    let mut tails = table.tails.clone();
    if let Some(u) = tails.upper_row0.take() {
        tails.upper_row0 = Some(u.sub(&hp.scale(q)));
    }
    if let Some(mut ls) = tails.lower.take() {
        if s == 0 {
            ls[0] = ls[0].sub(&crate::poly::Polynomial::constant(q.clone()));
        } else {
            let signed = if s.is_multiple_of(2) {
                hp.scale(q)
            } else {
                hp.scale(&-q.clone())
            };
            ls[s] = ls[s].sub(&signed);
        }
        tails.lower = Some(ls);
    }

    // Support rescans for the touched rows. A row that empties inside the
    // window can only be declared finished when a tail certifies it; anything
    // else means the window no longer covers the run.
    let mut row_sup = table.row_sup.clone();
    for (i, sup) in row_sup.iter_mut().enumerate().take(s.min(n) + 1) {
        if i == 0 {
            match &tails.upper_row0 {
                Some(u) if !u.is_zero() => *sup = Support::Infinite,
                Some(_) => *sup = rescan_row(&entries, window, &tails, 0)?,
                None => {
                    if *sup == Support::Infinite {
                        return Err(Error::WindowExhausted {
                            row: 0,
                            degree: window.hi + 1,
                        });
                    }
                    *sup = rescan_row(&entries, window, &tails, 0)?;
                }
            }
        } else {
            let touched = match spec.roots().get(i) {
                Some(znext) => znext < spec.roots().get(i - 1).unwrap() - 1,
                None => true,
            };
            if touched {
                *sup = rescan_row(&entries, window, &tails, i)?;
            }
        }
    }

    Ok(CohomologyTable::from_raw(n, window, entries, row_sup, tails))
}

fn rescan_row(
    entries: &std::collections::BTreeMap<(usize, i64), Rational>,
    window: Window,
    tails: &crate::table::Tails,
    i: usize,
) -> Result<Support> {
    if let Some((&(_, d), _)) = entries.range((i, window.lo)..=(i, window.hi)).next_back() {
        return Ok(Support::UpTo(d));
    }
    match &tails.lower {
        Some(ls) => {
            let p = &ls[i];
            if let Some(deg) = p.degree() {
                for d in (window.lo - deg as i64 - 2..window.lo).rev() {
                    if !p.eval_int(d).is_zero() {
                        return Ok(Support::UpTo(d));
                    }
                }
            }
            Ok(Support::Empty)
        }
        None => Err(Error::WindowExhausted {
            row: i,
            degree: window.lo - 1,
        }),
    }
}

/// Iterate greedy steps until the residual is zero or a budget or the window
/// runs out. Corners falling outside the window end the run with a
/// window-exhausted status naming the first uncovered position; negative
/// residual entries abort with NonAdmissible.
pub fn decompose_with(table: &CohomologyTable, opts: DecomposeOptions) -> Result<Decomposition> {
    let report = table.admissibility_check();
    if let Some((row, degree, value)) = report.first_negative {
        return Err(Error::NonAdmissible { row, degree, value });
    }
    if let Some(&row) = report.non_vanishing_rows.first() {
        return Err(Error::WindowExhausted {
            row,
            degree: table.window().hi + 1,
        });
    }
    report.euler?;

    let mut working = table.clone();
    let mut steps: Vec<DecompositionStep> = Vec::new();
    let mut in_current_dim = 0usize;
    let mut current_dim = working.dimension();
    loop {
        if working.is_zero() {
            return Ok(Decomposition {
                steps,
                residual: working,
                status: DecompositionStatus::ExhaustedToZero,
            });
        }
        let budget_hit = steps.len() >= opts.max_steps
            || opts
                .max_steps_per_dimension
                .is_some_and(|m| in_current_dim >= m);
        if budget_hit {
            return Ok(Decomposition {
                steps,
                residual: working,
                status: DecompositionStatus::BudgetReached,
            });
        }
        match decompose_step(&working) {
            Ok((step, residual)) => {
                if let Some(prev) = steps.last() {
                    debug_assert!(prev.roots.strictly_above(&step.roots));
                }
                let dim = residual.dimension();
                if dim == current_dim {
                    in_current_dim += 1;
                } else {
                    current_dim = dim;
                    in_current_dim = 0;
                }
                steps.push(step);
                working = residual;
            }
            Err(Error::WindowExhausted { row, degree }) => {
                return Ok(Decomposition {
                    steps,
                    residual: working,
                    status: DecompositionStatus::WindowExhausted { row, degree },
                });
            }
            Err(e) => return Err(e),
        }
    }
}

pub fn decompose(table: &CohomologyTable, max_steps: usize) -> Result<Decomposition> {
    decompose_with(table, DecomposeOptions::with_max_steps(max_steps))
}

/// Σ q_z γ^z over the window; adding the residual recovers the decomposed
/// table entrywise.
pub fn reconstruct(dec: &Decomposition, window: Window) -> Result<CohomologyTable> {
    reconstruct_steps(&dec.steps, dec.residual.ambient(), window)
}

pub fn reconstruct_steps(
    steps: &[DecompositionStep],
    ambient: usize,
    window: Window,
) -> Result<CohomologyTable> {
    if steps.is_empty() {
        return Ok(CohomologyTable::zero(ambient, window));
    }
    let tables = steps
        .iter()
        .map(|st| SupernaturalSpec::new(st.roots.clone(), rat(1), ambient)?.table(window))
        .collect::<Result<Vec<_>>>()?;
    let coeffs: Vec<Rational> = steps.iter().map(|st| st.coefficient.clone()).collect();
    let refs: Vec<&CohomologyTable> = tables.iter().collect();
    CohomologyTable::linear_combine(&coeffs, &refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::frac;
    use crate::sheaves::{direct_sum, StockKind, StockSheaf};

    fn stock(kind: StockKind, lo: i64, hi: i64) -> CohomologyTable {
        StockSheaf::new(kind, 0)
            .table(Window::new(lo, hi).unwrap())
            .unwrap()
    }

    fn generator(roots: &[i64], scale: Rational, n: usize, lo: i64, hi: i64) -> CohomologyTable {
        let spec = SupernaturalSpec::new(
            RootSequence::new(roots.to_vec()).unwrap(),
            scale,
            n,
        )
        .unwrap();
        let base = spec.table(Window::new(lo, hi).unwrap()).unwrap();
        CohomologyTable::linear_combine(&[rat(1)], &[&base]).unwrap()
    }

    #[test]
    fn single_generator_is_recovered_exactly() {
        let t = generator(&[1, -2], frac(7, 3), 2, -12, 6);
        let dec = decompose(&t, 10).unwrap();
        assert_eq!(dec.status, DecompositionStatus::ExhaustedToZero);
        assert_eq!(dec.steps.len(), 1);
        assert_eq!(dec.steps[0].roots.as_slice(), &[1, -2]);
        assert_eq!(dec.steps[0].coefficient, frac(7, 3));
        assert_eq!(dec.steps[0].killed_corners, vec![1, 2]);
        assert!(dec.residual.is_zero());
    }

    #[test]
    fn chain_of_two_is_recovered_in_order() {
        let a = generator(&[2, 0], rat(3), 2, -12, 8);
        let b = generator(&[1, -1], rat(5), 2, -12, 8);
        let sum = direct_sum(&a, &b).unwrap();
        let dec = decompose(&sum, 10).unwrap();
        assert_eq!(dec.status, DecompositionStatus::ExhaustedToZero);
        assert_eq!(dec.steps.len(), 2);
        assert_eq!(dec.steps[0].roots.as_slice(), &[2, 0]);
        assert_eq!(dec.steps[0].coefficient, rat(3));
        assert_eq!(dec.steps[1].roots.as_slice(), &[1, -1]);
        assert_eq!(dec.steps[1].coefficient, rat(5));
        assert!(dec.verify_chain());
        // reconstruction telescopes back to the input
        let rec = reconstruct(&dec, Window::new(-12, 8).unwrap()).unwrap();
        assert_eq!(rec, CohomologyTable::linear_combine(&[rat(1)], &[&sum]).unwrap());
    }

    #[test]
    fn zero_dimensional_generator() {
        let t = generator(&[], frac(5, 2), 1, -3, 3);
        let dec = decompose(&t, 5).unwrap();
        assert_eq!(dec.steps.len(), 1);
        assert!(dec.steps[0].roots.is_empty());
        assert_eq!(dec.steps[0].coefficient, frac(5, 2));
        assert_eq!(dec.steps[0].killed_corners, vec![0]);
        assert!(dec.residual.is_zero());
    }

    #[test]
    fn point_ideal_first_step() {
        let t = stock(StockKind::PointIdealP2, -12, 6);
        let (step, residual) = decompose_step(&t).unwrap();
        assert_eq!(step.roots.as_slice(), &[0, -2]);
        assert_eq!(step.coefficient, frac(1, 3));
        assert_eq!(step.killed_corners, vec![2]);
        assert_eq!(residual.entry(1, -1).unwrap(), frac(2, 3));
        assert_eq!(residual.entry(2, -3).unwrap(), rat(0));
        assert_eq!(residual.regularity_sequence().unwrap().as_slice(), &[0, -3]);
    }

    #[test]
    fn mixed_sum_two_steps_match_printed_values() {
        let w = Window::new(-8, 6).unwrap();
        let ip = stock(StockKind::PointIdealP2, -8, 6);
        let line = StockSheaf::new(
            StockKind::LineInPn {
                twist: -4,
                ambient: 2,
            },
            0,
        )
        .table(w)
        .unwrap();
        let f = direct_sum(&ip, &line).unwrap();

        let (s1, r1) = decompose_step(&f).unwrap();
        assert_eq!(s1.roots.as_slice(), &[3, -2]);
        assert_eq!(s1.coefficient, frac(1, 6));
        assert_eq!(s1.killed_corners, vec![2]);
        assert_eq!(r1.entry(2, -4).unwrap(), frac(2, 3));
        assert_eq!(r1.entry(1, -1).unwrap(), frac(13, 3));
        assert_eq!(r1.entry(1, 2).unwrap(), frac(1, 3));

        let (s2, r2) = decompose_step(&r1).unwrap();
        assert_eq!(s2.roots.as_slice(), &[3, -3]);
        assert_eq!(s2.coefficient, frac(1, 15));
        assert_eq!(s2.killed_corners, vec![1]);
        assert_eq!(r2.entry(2, -4).unwrap(), frac(1, 5));
        assert_eq!(r2.entry(1, -1).unwrap(), frac(19, 5));
        assert_eq!(r2.entry(1, 0).unwrap(), frac(7, 5));
        assert_eq!(r2.entry(1, 1).unwrap(), frac(7, 15));
        assert_eq!(r2.entry(2, -5).unwrap(), frac(14, 15));
        assert_eq!(r2.entry(1, -2).unwrap(), frac(17, 3));
        assert_eq!(r2.entry(0, 4).unwrap(), frac(203, 15));
    }

    #[test]
    fn window_exhaustion_is_a_status_not_an_error() {
        // parsed-style table without tails: the row-2 corner leaves the
        // window after enough steps
        let t = stock(StockKind::PointIdealP2, -10, 6);
        let bare = CohomologyTable::from_entries(
            2,
            t.window(),
            t.nonzero_entries().map(|(i, d, v)| ((i, d), v.clone())),
        )
        .unwrap();
        let dec = decompose(&bare, 10).unwrap();
        assert_eq!(dec.steps.len(), 7);
        assert_eq!(
            dec.status,
            DecompositionStatus::WindowExhausted {
                row: 2,
                degree: -11
            }
        );
        assert!(dec.verify_chain());
        assert!(dec.tail_diagnostic().is_some());
    }

    #[test]
    fn non_realizable_table_hits_a_negative_entry() {
        let t3 = stock(StockKind::T3, -30, 8);
        let err = decompose(&t3, 40).unwrap_err();
        match err {
            Error::NonAdmissible { row, degree, value } => {
                assert_eq!((row, degree), (2, -3));
                assert_eq!(value, frac(-1, 3876));
            }
            other => panic!("expected NonAdmissible, got {other:?}"),
        }
    }

    #[test]
    fn monotone_residuals_and_budget_diagnostics() {
        let t = stock(StockKind::PointIdealP2, -20, 6);
        let mut working = t.clone();
        let mut prev: Option<CohomologyTable> = None;
        for _ in 0..8 {
            let (_, residual) = decompose_step(&working).unwrap();
            if let Some(p) = &prev {
                for (i, d, v) in residual.nonzero_entries() {
                    assert!(*v <= p.entry(i, d).unwrap());
                }
            }
            prev = Some(working);
            working = residual;
        }
        let dec = decompose(&t, 3).unwrap();
        assert_eq!(dec.status, DecompositionStatus::BudgetReached);
        let (row, _, _) = dec.tail_diagnostic().unwrap();
        assert_eq!(row, 2);
    }

    #[test]
    fn per_dimension_budget_stops_the_loop() {
        let t = stock(StockKind::PointIdealP2, -20, 6);
        let dec = decompose_with(
            &t,
            DecomposeOptions {
                max_steps: 50,
                max_steps_per_dimension: Some(4),
            },
        )
        .unwrap();
        assert_eq!(dec.status, DecompositionStatus::BudgetReached);
        assert_eq!(dec.steps.len(), 4);
    }

    #[test]
    fn chain_checks_reject_bad_sequences() {
        let w = Window::new(-4, 4).unwrap();
        let mk = |roots: &[i64], q: Rational| DecompositionStep {
            roots: RootSequence::new(roots.to_vec()).unwrap(),
            coefficient: q,
            killed_corners: vec![1],
        };
        let base = Decomposition {
            steps: vec![mk(&[0, -2], rat(1)), mk(&[1, -3], rat(1))],
            residual: CohomologyTable::zero(2, w),
            status: DecompositionStatus::ExhaustedToZero,
        };
        assert!(!base.verify_chain());
        let repeated = Decomposition {
            steps: vec![mk(&[0, -2], rat(1)), mk(&[0, -2], rat(1))],
            residual: CohomologyTable::zero(2, w),
            status: DecompositionStatus::ExhaustedToZero,
        };
        assert!(!repeated.verify_chain());
        let drop_dim = Decomposition {
            steps: vec![mk(&[0, -2], rat(1)), mk(&[0], rat(2))],
            residual: CohomologyTable::zero(2, w),
            status: DecompositionStatus::ExhaustedToZero,
        };
        assert!(drop_dim.verify_chain());
        assert_eq!(drop_dim.dimension_drops(), vec![(1, 2, 1)]);
    }

    #[test]
    fn empty_reconstruction_is_zero() {
        let dec = Decomposition {
            steps: vec![],
            residual: CohomologyTable::zero(3, Window::new(-2, 2).unwrap()),
            status: DecompositionStatus::ExhaustedToZero,
        };
        let rec = reconstruct(&dec, Window::new(-5, 5).unwrap()).unwrap();
        assert!(rec.is_zero());
    }
}
