//! Stock cohomology tables with exact closed-form rows and tails: twisted
//! line bundles on linear subspaces, the ideal sheaf of a point in the plane,
//! and the two-skew-lines / conic-plus-point ideal sheaves in 3-space along
//! with the two near-miss variants of the latter used as non-realizable
//! test tables.

use crate::error::{Error, Result};
use crate::num::{binomial, frac, rat, Rational};
use crate::poly::Polynomial;
use crate::roots::RootSequence;
use crate::supernatural::SupernaturalSpec;
use crate::table::{CohomologyTable, Tails, Window};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StockKind {
    /// O(a) on a linear P^dim inside P^ambient.
    LineBundle {
        dim: usize,
        twist: i64,
        ambient: usize,
    },
    /// Ideal sheaf of a point in P^2.
    PointIdealP2,
    /// O_L(a) for a line L in P^ambient.
    LineInPn { twist: i64, ambient: usize },
    /// Ideal sheaf of two skew lines in P^3.
    SkewLinesP3,
    /// Ideal sheaf of a conic plus an off-plane point in P^3.
    ConicPointP3,
    /// Integral tables between the previous two that no sheaf realizes.
    T2,
    T3,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StockSheaf {
    pub kind: StockKind,
    pub twist: i64,
}

impl StockSheaf {
    pub fn new(kind: StockKind, twist: i64) -> Self {
        StockSheaf { kind, twist }
    }

    /// CLI names: ideal-point-p2, line:a:n, line-bundle:s:a:n, skew-lines,
    /// conic-point, T2, T3.
    pub fn parse(name: &str) -> Result<StockKind> {
        let name = name.trim();
        match name {
            "ideal-point-p2" => return Ok(StockKind::PointIdealP2),
            "skew-lines" => return Ok(StockKind::SkewLinesP3),
            "conic-point" => return Ok(StockKind::ConicPointP3),
            "T2" | "t2" => return Ok(StockKind::T2),
            "T3" | "t3" => return Ok(StockKind::T3),
            _ => {}
        }
        let parts: Vec<&str> = name.split(':').collect();
        let parse_int = |p: &str| {
            p.parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad stock parameter {p:?}: {e}")))
        };
        match parts.as_slice() {
            ["line", a, n] => Ok(StockKind::LineInPn {
                twist: parse_int(a)?,
                ambient: parse_int(n)? as usize,
            }),
            ["line-bundle", s, a, n] => Ok(StockKind::LineBundle {
                dim: parse_int(s)? as usize,
                twist: parse_int(a)?,
                ambient: parse_int(n)? as usize,
            }),
            _ => Err(Error::Parse(format!("unknown stock sheaf {name:?}"))),
        }
    }

    pub fn table(&self, window: Window) -> Result<CohomologyTable> {
        let base = match self.kind {
            StockKind::LineBundle {
                dim,
                twist,
                ambient,
            } => line_bundle_table(dim, twist, ambient, window_shift(window, self.twist))?,
            StockKind::LineInPn { twist, ambient } => {
                line_bundle_table(1, twist, ambient, window_shift(window, self.twist))?
            }
            StockKind::PointIdealP2 => point_ideal_table(window_shift(window, self.twist))?,
            StockKind::SkewLinesP3 => {
                fixture_table(FixtureRows::skew_lines(), window_shift(window, self.twist))?
            }
            StockKind::ConicPointP3 => {
                fixture_table(FixtureRows::conic_point(), window_shift(window, self.twist))?
            }
            StockKind::T2 => fixture_table(FixtureRows::t2(), window_shift(window, self.twist))?,
            StockKind::T3 => fixture_table(FixtureRows::t3(), window_shift(window, self.twist))?,
        };
        Ok(if self.twist == 0 {
            base
        } else {
            base.twist(self.twist)
        })
    }
}

impl fmt::Display for StockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StockKind::LineBundle {
                dim,
                twist,
                ambient,
            } => write!(f, "line-bundle:{dim}:{twist}:{ambient}"),
            StockKind::PointIdealP2 => write!(f, "ideal-point-p2"),
            StockKind::LineInPn { twist, ambient } => write!(f, "line:{twist}:{ambient}"),
            StockKind::SkewLinesP3 => write!(f, "skew-lines"),
            StockKind::ConicPointP3 => write!(f, "conic-point"),
            StockKind::T2 => write!(f, "T2"),
            StockKind::T3 => write!(f, "T3"),
        }
    }
}

fn window_shift(window: Window, twist: i64) -> Window {
    // the base table is built on the window the twisted table will occupy
    Window {
        lo: window.lo + twist,
        hi: window.hi + twist,
    }
}

/// O(a) on P^s in P^n is the supernatural table with roots
/// (-a-1, ..., -a-s) and scale 1/s!.
fn line_bundle_table(dim: usize, a: i64, ambient: usize, window: Window) -> Result<CohomologyTable> {
    let roots = RootSequence::new((1..=dim as i64).map(|i| -a - i).collect())?;
    let mut s_factorial = rat(1);
    for i in 1..=dim as i64 {
        s_factorial *= rat(i);
    }
    let scale = rat(1) / s_factorial;
    SupernaturalSpec::new(roots, scale, ambient)?.table(window)
}

/// Rows of the ideal sheaf of a point in P^2:
///   h^0 = C(d+2,2) - 1 for d >= 1, h^1 = 1 for d <= -1, h^2 = C(-d-1,2).
fn point_ideal_table(window: Window) -> Result<CohomologyTable> {
    let rows = FixtureRows {
        ambient: 2,
        rows: vec![
            RowForm {
                values: |d| {
                    if d >= 1 {
                        binomial(d + 2, 2) - rat(1)
                    } else {
                        Rational::zero()
                    }
                },
                right_zero_from: 1, // polynomial from here on
                left_poly: Polynomial::zero(),
                left_poly_from: 0,
            },
            RowForm {
                values: |d| if d <= -1 { rat(1) } else { Rational::zero() },
                right_zero_from: 0,
                left_poly: Polynomial::constant(rat(1)),
                left_poly_from: -1,
            },
            RowForm {
                values: |d| {
                    if d <= -3 {
                        binomial(-d - 1, 2)
                    } else {
                        Rational::zero()
                    }
                },
                right_zero_from: -2,
                // C(-d-1,2) = (d+1)(d+2)/2 as a polynomial identity
                left_poly: Polynomial::new(vec![rat(1), frac(3, 2), frac(1, 2)]),
                left_poly_from: -1,
            },
        ],
        hilbert: Polynomial::new(vec![rat(0), frac(3, 2), frac(1, 2)]),
        hilbert_from: 1,
    };
    fixture_table(rows, window)
}

/// One row of a fixture in closed form. `values` is total over all degrees;
/// the metadata records from which degree on each side a single polynomial
/// (or zero) describes it, so tails can be attached when the window reaches
/// far enough.
struct RowForm {
    values: fn(i64) -> Rational,
    /// values(d) = 0 for all d >= this degree (rows >= 1 only).
    right_zero_from: i64,
    /// values(d) = left_poly(d) for all d <= this degree.
    left_poly: Polynomial,
    left_poly_from: i64,
}

struct FixtureRows {
    ambient: usize,
    rows: Vec<RowForm>,
    /// row 0 equals this polynomial for all d >= hilbert_from.
    hilbert: Polynomial,
    hilbert_from: i64,
}

/// h^0 shared by all the ideal-sheaf fixtures in P^3: C(d+3,3) - (2d+2) for
/// d >= 1, zero below.
fn p3_curve_row0(d: i64) -> Rational {
    if d >= 1 {
        binomial(d + 3, 3) - rat(2 * d + 2)
    } else {
        Rational::zero()
    }
}

fn p3_row0_form() -> RowForm {
    RowForm {
        values: p3_curve_row0,
        right_zero_from: 1,
        left_poly: Polynomial::zero(),
        left_poly_from: 0,
    }
}

fn p3_row3_form() -> RowForm {
    RowForm {
        values: |d| {
            if d <= -4 {
                binomial(-d - 1, 3)
            } else {
                Rational::zero()
            }
        },
        right_zero_from: -3,
        // C(-d-1,3) = -(d+1)(d+2)(d+3)/6
        left_poly: Polynomial::new(vec![
            rat(-1),
            frac(-11, 6),
            rat(-1),
            frac(-1, 6),
        ]),
        left_poly_from: -1,
    }
}

fn p3_hilbert() -> Polynomial {
    // C(d+3,3) - 2d - 2
    Polynomial::new(vec![rat(-1), frac(-1, 6), rat(1), frac(1, 6)])
}

impl FixtureRows {
    fn skew_lines() -> Self {
        FixtureRows {
            ambient: 3,
            rows: vec![
                p3_row0_form(),
                RowForm {
                    values: |d| if d == 0 { rat(1) } else { Rational::zero() },
                    right_zero_from: 1,
                    left_poly: Polynomial::zero(),
                    left_poly_from: -1,
                },
                RowForm {
                    values: |d| {
                        if d <= -2 {
                            rat(-2 * d - 2)
                        } else {
                            Rational::zero()
                        }
                    },
                    right_zero_from: -1,
                    left_poly: Polynomial::new(vec![rat(-2), rat(-2)]),
                    left_poly_from: -1,
                },
                p3_row3_form(),
            ],
            hilbert: p3_hilbert(),
            hilbert_from: 1,
        }
    }

    fn conic_point() -> Self {
        FixtureRows {
            ambient: 3,
            rows: vec![
                p3_row0_form(),
                RowForm {
                    values: |d| if d <= 0 { rat(1) } else { Rational::zero() },
                    right_zero_from: 1,
                    left_poly: Polynomial::constant(rat(1)),
                    left_poly_from: 0,
                },
                RowForm {
                    values: |d| {
                        if d <= -1 {
                            rat(-2 * d - 1)
                        } else {
                            Rational::zero()
                        }
                    },
                    right_zero_from: 0,
                    left_poly: Polynomial::new(vec![rat(-1), rat(-2)]),
                    left_poly_from: -1,
                },
                p3_row3_form(),
            ],
            hilbert: p3_hilbert(),
            hilbert_from: 1,
        }
    }

    /// Conic-point table with h^1 zeroed and h^2 decremented for d <= -2.
    fn t2() -> Self {
        FixtureRows {
            ambient: 3,
            rows: vec![
                p3_row0_form(),
                RowForm {
                    values: |d| {
                        if (-1..=0).contains(&d) {
                            rat(1)
                        } else {
                            Rational::zero()
                        }
                    },
                    right_zero_from: 1,
                    left_poly: Polynomial::zero(),
                    left_poly_from: -2,
                },
                RowForm {
                    values: |d| match d {
                        -1 => rat(1),
                        d if d <= -2 => rat(-2 * d - 2),
                        _ => Rational::zero(),
                    },
                    right_zero_from: 0,
                    left_poly: Polynomial::new(vec![rat(-2), rat(-2)]),
                    left_poly_from: -2,
                },
                p3_row3_form(),
            ],
            hilbert: p3_hilbert(),
            hilbert_from: 1,
        }
    }

    /// Same with the modification applied for d <= -3.
    fn t3() -> Self {
        FixtureRows {
            ambient: 3,
            rows: vec![
                p3_row0_form(),
                RowForm {
                    values: |d| {
                        if (-2..=0).contains(&d) {
                            rat(1)
                        } else {
                            Rational::zero()
                        }
                    },
                    right_zero_from: 1,
                    left_poly: Polynomial::zero(),
                    left_poly_from: -3,
                },
                RowForm {
                    values: |d| match d {
                        -1 => rat(1),
                        -2 => rat(3),
                        d if d <= -3 => rat(-2 * d - 2),
                        _ => Rational::zero(),
                    },
                    right_zero_from: 0,
                    left_poly: Polynomial::new(vec![rat(-2), rat(-2)]),
                    left_poly_from: -3,
                },
                p3_row3_form(),
            ],
            hilbert: p3_hilbert(),
            hilbert_from: 1,
        }
    }
}

fn fixture_table(form: FixtureRows, window: Window) -> Result<CohomologyTable> {
    let n = form.ambient;
    debug_assert_eq!(form.rows.len(), n + 1);
    let mut entries = BTreeMap::new();
    for (i, row) in form.rows.iter().enumerate() {
        for d in window.iter() {
            let v = (row.values)(d);
            if !v.is_zero() {
                entries.insert((i, d), v);
            }
        }
    }
    let upper_ok = window.hi + 1 >= form.hilbert_from
        && form.rows.iter().skip(1).all(|r| window.hi + 1 >= r.right_zero_from);
    let lower_ok = form.rows.iter().all(|r| window.lo - 1 <= r.left_poly_from);
    let tails = Tails {
        upper_row0: upper_ok.then(|| form.hilbert.clone()),
        lower: lower_ok.then(|| form.rows.iter().map(|r| r.left_poly.clone()).collect()),
    };
    let table = CohomologyTable::from_entries(n, window, entries)?;
    table.with_tails(tails)
}

/// Entrywise sum; the cohomology table of a direct sum of sheaves.
pub fn direct_sum(a: &CohomologyTable, b: &CohomologyTable) -> Result<CohomologyTable> {
    CohomologyTable::linear_combine(&[rat(1), rat(1)], &[a, b])
}

/// Degree shift as a free function, matching the table method.
pub fn twist(t: &CohomologyTable, a: i64) -> CohomologyTable {
    t.twist(a)
}

/// The stock tables that really are cohomology tables of sheaves; the
/// randomized positivity suites quantify over these.
pub fn stock_sheaves() -> Vec<(String, StockSheaf)> {
    let kinds = vec![
        StockKind::PointIdealP2,
        StockKind::LineInPn {
            twist: -4,
            ambient: 2,
        },
        StockKind::LineBundle {
            dim: 2,
            twist: 1,
            ambient: 3,
        },
        StockKind::SkewLinesP3,
        StockKind::ConicPointP3,
    ];
    kinds
        .into_iter()
        .map(|k| (k.to_string(), StockSheaf::new(k, 0)))
        .collect()
}

/// Every stock table, including the two non-realizable ones.
pub fn all_stock() -> Vec<(String, StockSheaf)> {
    let mut out = stock_sheaves();
    for k in [StockKind::T2, StockKind::T3] {
        out.push((k.to_string(), StockSheaf::new(k, 0)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Bound;

    fn build(kind: StockKind, lo: i64, hi: i64) -> CohomologyTable {
        StockSheaf::new(kind, 0)
            .table(Window::new(lo, hi).unwrap())
            .unwrap()
    }

    #[test]
    fn point_ideal_examples() {
        let t = build(StockKind::PointIdealP2, -8, 6);
        assert_eq!(t.entry(0, 3).unwrap(), rat(9));
        assert_eq!(t.entry(1, -5).unwrap(), rat(1));
        assert_eq!(t.entry(2, -6).unwrap(), rat(10));
    }

    #[test]
    fn conic_point_examples() {
        let t = build(StockKind::ConicPointP3, -8, 6);
        for d in -6..=0 {
            assert_eq!(t.entry(1, d).unwrap(), rat(1));
        }
        assert_eq!(t.entry(1, 1).unwrap(), rat(0));
        // row 2 ends ... 3, 1 at degrees -2, -1
        assert_eq!(t.entry(2, -2).unwrap(), rat(3));
        assert_eq!(t.entry(2, -1).unwrap(), rat(1));
        assert_eq!(t.entry(2, 0).unwrap(), rat(0));
        assert_eq!(t.entry(3, -4).unwrap(), rat(1));
        assert_eq!(t.entry(3, -7).unwrap(), rat(20));
    }

    #[test]
    fn skew_lines_examples() {
        let t = build(StockKind::SkewLinesP3, -8, 6);
        assert_eq!(t.entry(1, 0).unwrap(), rat(1));
        assert_eq!(t.entry(1, 1).unwrap(), rat(0));
        assert_eq!(t.entry(1, -1).unwrap(), rat(0));
        assert_eq!(t.entry(2, -2).unwrap(), rat(2));
        assert_eq!(t.entry(2, -6).unwrap(), rat(10));
        assert_eq!(t.entry(0, 2).unwrap(), rat(4));
        assert_eq!(t.entry(0, 4).unwrap(), rat(25));
    }

    #[test]
    fn near_miss_fixtures_differ_from_conic_point_by_the_documented_pattern() {
        let iy = build(StockKind::ConicPointP3, -12, 8);
        for (t, cutoff) in [
            (build(StockKind::T2, -12, 8), -2i64),
            (build(StockKind::T3, -12, 8), -3i64),
        ] {
            for d in -12..=8 {
                let modified = d <= cutoff;
                let h1 = t.entry(1, d).unwrap();
                let h2 = t.entry(2, d).unwrap();
                if modified {
                    assert_eq!(h1, rat(0));
                    assert_eq!(h2, iy.entry(2, d).unwrap() - rat(1));
                } else {
                    assert_eq!(h1, iy.entry(1, d).unwrap());
                    assert_eq!(h2, iy.entry(2, d).unwrap());
                }
                assert_eq!(t.entry(0, d).unwrap(), iy.entry(0, d).unwrap());
                assert_eq!(t.entry(3, d).unwrap(), iy.entry(3, d).unwrap());
            }
        }
    }

    #[test]
    fn fixtures_pass_admissibility_with_full_degree_euler() {
        for (name, s) in all_stock() {
            let t = s.table(Window::new(-12, 8).unwrap()).unwrap();
            let rep = t.admissibility_check();
            assert!(rep.passed(), "{name}: {}", rep.summary());
            let dim = t.dimension().unwrap();
            let p = rep.euler.unwrap();
            assert_eq!(p.degree(), Some(dim), "{name}");
            // chi agrees with the tails far outside the window
            assert_eq!(
                t.partial_euler(30, Bound::Infinite).unwrap(),
                p.eval_int(30),
                "{name}"
            );
            assert_eq!(
                t.partial_euler(-30, Bound::Infinite).unwrap(),
                p.eval_int(-30),
                "{name}"
            );
        }
    }

    #[test]
    fn direct_sum_examples() {
        let w = Window::new(-8, 6).unwrap();
        let ip = build(StockKind::PointIdealP2, -8, 6);
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
        assert_eq!(f.entry(1, -1).unwrap(), rat(5));
        assert_eq!(f.entry(1, 1).unwrap(), rat(2));
        assert_eq!(f.entry(0, 4).unwrap(), rat(15));
        let zero = CohomologyTable::zero(2, w);
        assert_eq!(direct_sum(&ip, &zero).unwrap(), ip);
    }

    #[test]
    fn twist_matches_retwisted_line() {
        let w = Window::new(-6, 6).unwrap();
        let a = StockSheaf::new(
            StockKind::LineInPn {
                twist: 0,
                ambient: 2,
            },
            0,
        )
        .table(Window::new(-10, 2).unwrap())
        .unwrap()
        .twist(-4);
        let b = StockSheaf::new(
            StockKind::LineInPn {
                twist: -4,
                ambient: 2,
            },
            0,
        )
        .table(w)
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn stock_twist_field_shifts_the_table() {
        let w = Window::new(-8, 6).unwrap();
        let plain = StockSheaf::new(StockKind::PointIdealP2, 0).table(w).unwrap();
        let shifted = StockSheaf::new(StockKind::PointIdealP2, 2).table(w).unwrap();
        for d in -8..=6 {
            for i in 0..=2 {
                assert_eq!(shifted.entry(i, d).unwrap(), plain.entry(i, d + 2).unwrap());
            }
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            StockSheaf::parse("ideal-point-p2").unwrap(),
            StockKind::PointIdealP2
        );
        assert_eq!(
            StockSheaf::parse("line:-4:2").unwrap(),
            StockKind::LineInPn {
                twist: -4,
                ambient: 2
            }
        );
        assert_eq!(StockSheaf::parse("T2").unwrap(), StockKind::T2);
        assert!(StockSheaf::parse("nope").is_err());
    }
}
