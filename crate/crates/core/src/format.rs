//! Table interchange formats.
//!
//! Text format, one file per table: a header line `n=<int> window=<lo>:<hi>`
//! followed by `i d value` lines with exact rationals (`p/q` or a bare
//! integer). The JSON mirror carries the same fields plus the optional tail
//! polynomials as coefficient lists, constant term first. Serialization is
//! bit-exact: every rational re-parses to the identical value.

use crate::decomposition::{Decomposition, DecompositionStatus, DecompositionStep};
use crate::error::{Error, Result};
use crate::functionals::BettiTable;
use crate::num::{format_rational, parse_rational, Rational};
use crate::poly::Polynomial;
use crate::roots::RootSequence;
use crate::table::{CohomologyTable, Tails, Window};
use serde::{Deserialize, Serialize};

/// Serde adapter: one rational as its exact string form.
pub mod rational_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a vector of rationals as exact strings.
pub mod rational_vec_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[Rational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(format_rational).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub fn emit_text(t: &CohomologyTable) -> String {
    let mut out = format!(
        "n={} window={}:{}\n",
        t.ambient(),
        t.window().lo,
        t.window().hi
    );
    for (i, d, v) in t.nonzero_entries() {
        out.push_str(&format!("{i} {d} {}\n", format_rational(v)));
    }
    out
}

pub fn parse_text(input: &str) -> Result<CohomologyTable> {
    let mut lines = input.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty table input".into()))?;
    let header = header.trim();
    let mut n: Option<usize> = None;
    let mut window: Option<Window> = None;
    for part in header.split_whitespace() {
        if let Some(v) = part.strip_prefix("n=") {
            n = Some(
                v.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad n in header: {e}")))?,
            );
        } else if let Some(v) = part.strip_prefix("window=") {
            window = Some(Window::parse(v)?);
        } else {
            return Err(Error::Parse(format!("unexpected header token {part:?}")));
        }
    }
    let n = n.ok_or_else(|| Error::Parse("header missing n=".into()))?;
    let window = window.ok_or_else(|| Error::Parse("header missing window=".into()))?;
    let mut entries = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        let (Some(i), Some(d), Some(v), None) = (it.next(), it.next(), it.next(), it.next())
        else {
            return Err(Error::Parse(format!("expected `i d value`, got {line:?}")));
        };
        let i = i
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad row index {i:?}: {e}")))?;
        let d = d
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad degree {d:?}: {e}")))?;
        entries.push(((i, d), parse_rational(v)?));
    }
    CohomologyTable::from_entries(n, window, entries)
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    i: usize,
    d: i64,
    #[serde(with = "rational_serde")]
    v: Rational,
}

#[derive(Serialize, Deserialize)]
struct TailJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    upper_row0: Option<Polynomial>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    lower: Option<Vec<Polynomial>>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: usize,
    window: Window,
    entries: Vec<EntryJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tail: Option<TailJson>,
}

pub fn emit_json(t: &CohomologyTable) -> String {
    let tail = if t.tails().is_none() {
        None
    } else {
        Some(TailJson {
            upper_row0: t.tails().upper_row0.clone(),
            lower: t.tails().lower.clone(),
        })
    };
    let doc = TableJson {
        n: t.ambient(),
        window: t.window(),
        entries: t
            .nonzero_entries()
            .map(|(i, d, v)| EntryJson { i, d, v: v.clone() })
            .collect(),
        tail,
    };
    serde_json::to_string_pretty(&doc).expect("table serialization cannot fail")
}

pub fn parse_json(input: &str) -> Result<CohomologyTable> {
    let doc: TableJson =
        serde_json::from_str(input).map_err(|e| Error::Parse(format!("bad table json: {e}")))?;
    let table = CohomologyTable::from_entries(
        doc.n,
        doc.window,
        doc.entries.into_iter().map(|e| ((e.i, e.d), e.v)),
    )?;
    match doc.tail {
        Some(t) => table.with_tails(Tails {
            upper_row0: t.upper_row0,
            lower: t.lower,
        }),
        None => Ok(table),
    }
}

/// Accepts either format, keyed on the leading character.
pub fn parse_table_auto(input: &str) -> Result<CohomologyTable> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

/// Betti tables as `i k value` lines.
pub fn parse_betti_text(input: &str) -> Result<BettiTable> {
    let mut entries = Vec::new();
    for line in input.lines().filter(|l| !l.trim().is_empty()) {
        let mut it = line.split_whitespace();
        let (Some(i), Some(k), Some(v), None) = (it.next(), it.next(), it.next(), it.next())
        else {
            return Err(Error::Parse(format!("expected `i k value`, got {line:?}")));
        };
        let i = i
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad homological index {i:?}: {e}")))?;
        let k = k
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad degree {k:?}: {e}")))?;
        entries.push(((i, k), parse_rational(v)?));
    }
    BettiTable::from_entries(entries)
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    roots: Vec<i64>,
    q: String,
    killed: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    n: usize,
    window: Window,
    steps: Vec<StepJson>,
    residual_nonzero_entries: Vec<EntryJson>,
    status: DecompositionStatus,
}

pub fn emit_decomposition_json(dec: &Decomposition) -> String {
    let doc = DecompositionJson {
        n: dec.residual.ambient(),
        window: dec.residual.window(),
        steps: dec
            .steps
            .iter()
            .map(|s| StepJson {
                roots: s.roots.as_slice().to_vec(),
                q: format_rational(&s.coefficient),
                killed: s.killed_corners.clone(),
            })
            .collect(),
        residual_nonzero_entries: dec
            .residual
            .nonzero_entries()
            .map(|(i, d, v)| EntryJson { i, d, v: v.clone() })
            .collect(),
        status: dec.status,
    };
    serde_json::to_string_pretty(&doc).expect("decomposition serialization cannot fail")
}

pub fn parse_decomposition_json(input: &str) -> Result<Decomposition> {
    let doc: DecompositionJson = serde_json::from_str(input)
        .map_err(|e| Error::Parse(format!("bad decomposition json: {e}")))?;
    let steps = doc
        .steps
        .into_iter()
        .map(|s| {
            Ok(DecompositionStep {
                roots: RootSequence::new(s.roots)?,
                coefficient: parse_rational(&s.q)?,
                killed_corners: s.killed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let residual = CohomologyTable::from_entries(
        doc.n,
        doc.window,
        doc.residual_nonzero_entries
            .into_iter()
            .map(|e| ((e.i, e.d), e.v)),
    )?;
    Ok(Decomposition {
        steps,
        residual,
        status: doc.status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, rat};
    use crate::sheaves::{StockKind, StockSheaf};

    fn stock(kind: StockKind) -> CohomologyTable {
        StockSheaf::new(kind, 0)
            .table(Window::new(-8, 6).unwrap())
            .unwrap()
    }

    #[test]
    fn text_round_trip() {
        let t = stock(StockKind::PointIdealP2);
        let text = emit_text(&t);
        assert!(text.starts_with("n=2 window=-8:6\n"));
        let back = parse_text(&text).unwrap();
        assert_eq!(back.ambient(), t.ambient());
        assert_eq!(back.window(), t.window());
        for (i, d, v) in t.nonzero_entries() {
            assert_eq!(back.entry(i, d).unwrap(), *v);
        }
        // canonical form is stable
        assert_eq!(emit_text(&back), text);
    }

    #[test]
    fn json_round_trip_preserves_tails() {
        let t = stock(StockKind::ConicPointP3);
        let back = parse_json(&emit_json(&t)).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.entry(2, -20).unwrap(), rat(39));
    }

    #[test]
    fn rational_values_survive_exactly() {
        let w = Window::new(-1, 1).unwrap();
        let t = CohomologyTable::from_entries(
            1,
            w,
            vec![((0usize, 0i64), frac(203, 15)), ((1, -1), frac(-7, 3))],
        )
        .unwrap();
        let back = parse_text(&emit_text(&t)).unwrap();
        assert_eq!(back.entry(0, 0).unwrap(), frac(203, 15));
        assert_eq!(back.entry(1, -1).unwrap(), frac(-7, 3));
        let back = parse_json(&emit_json(&t)).unwrap();
        assert_eq!(back.entry(1, -1).unwrap(), frac(-7, 3));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_text("").is_err());
        assert!(parse_text("n=2\n").is_err());
        assert!(parse_text("n=2 window=3:1\n").is_err());
        assert!(parse_text("n=1 window=-1:1\n0 0\n").is_err());
        assert!(parse_text("n=1 window=-1:1\n0 5 1\n").is_err());
        assert!(parse_text("n=1 window=-1:1\n0 0 1/0\n").is_err());
    }

    #[test]
    fn betti_text_parses() {
        let b = parse_betti_text("0 0 1\n1 1 2\n2 2 1\n").unwrap();
        assert_eq!(b.get(1, 1), rat(2));
        assert!(parse_betti_text("0 0 -1\n").is_err());
    }

    #[test]
    fn decomposition_json_round_trip() {
        let t = stock(StockKind::PointIdealP2);
        let dec = crate::decomposition::decompose(&t, 3).unwrap();
        let text = emit_decomposition_json(&dec);
        let back = parse_decomposition_json(&text).unwrap();
        assert_eq!(back.steps.len(), dec.steps.len());
        for (a, b) in back.steps.iter().zip(&dec.steps) {
            assert_eq!(a.roots, b.roots);
            assert_eq!(a.coefficient, b.coefficient);
            assert_eq!(a.killed_corners, b.killed_corners);
        }
        assert_eq!(back.status, dec.status);
        for (i, d, v) in dec.residual.nonzero_entries() {
            assert_eq!(back.residual.entry(i, d).unwrap(), *v);
        }
    }
}
