//! Seeded randomized identity and positivity suites. Every suite is
//! deterministic for a fixed seed and evaluates its identity in exact
//! arithmetic, so a single failure is meaningful.

use crate::functionals::{
    eq1_coefficients, eq1_identity_gap, evaluate, interpolation_check, pairing_bounded,
    product_identity_check, pure_betti, BoundSequence, DegreeSequence,
};
use crate::num::{frac, Rational};
use crate::roots::RootSequence;
use crate::sheaves::stock_sheaves;
use crate::supernatural::SupernaturalSpec;
use crate::table::{Bound, CohomologyTable, Window};
use num::traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Debug)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{}: pass ({} trials)", self.name, self.trials)
        } else {
            format!(
                "{}: FAIL ({} of {} trials): {}",
                self.name,
                self.failures.len(),
                self.trials,
                self.failures
                    .first()
                    .map(String::as_str)
                    .unwrap_or_default()
            )
        }
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

fn random_degrees(rng: &mut ChaCha8Rng, lo: i64, hi: i64, len: usize) -> DegreeSequence {
    let mut picked = std::collections::BTreeSet::new();
    while picked.len() < len {
        picked.insert(rng.gen_range(lo..=hi));
    }
    DegreeSequence::new(picked.into_iter().collect()).expect("sorted distinct")
}

fn random_roots(rng: &mut ChaCha8Rng, max_len: usize) -> RootSequence {
    let len = rng.gen_range(0..=max_len);
    let mut picked = std::collections::BTreeSet::new();
    while picked.len() < len {
        picked.insert(rng.gen_range(-6..=6));
    }
    RootSequence::new(picked.into_iter().rev().collect()).expect("sorted distinct")
}

/// Arbitrary finitely supported table with signed rational entries; the
/// formal identities hold on any table, realizable or not.
fn random_table(rng: &mut ChaCha8Rng, n: usize, window: Window) -> CohomologyTable {
    let count = rng.gen_range(5..=25);
    let mut entries = std::collections::BTreeMap::new();
    for _ in 0..count {
        let i = rng.gen_range(0..=n);
        let d = rng.gen_range(window.lo..=window.hi);
        entries.insert((i, d), random_rational(rng));
    }
    CohomologyTable::from_entries(n, window, entries).expect("in-window entries")
}

/// Interpolation vanishing: L(d, inf) is zero on every table whose Euler
/// characteristic is a polynomial of degree <= s, exercised on the stock
/// sheaf tables and on random supernatural generators.
pub fn interpolation_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut rng = rng_for(seed);
    let window = Window::new(-12, 12).unwrap();
    let stock: Vec<(String, CohomologyTable)> = stock_sheaves()
        .into_iter()
        .map(|(name, s)| (name, s.table(window).unwrap()))
        .collect();
    let mut failures = Vec::new();
    for trial in 0..trials {
        let (name, table, dim) = if trial % 2 == 0 {
            let (name, t) = &stock[trial / 2 % stock.len()];
            (name.clone(), t.clone(), t.dimension().unwrap())
        } else {
            let roots = random_roots(&mut rng, 4);
            let dim = roots.len();
            let spec =
                SupernaturalSpec::new(roots.clone(), frac(rng.gen_range(1..=9), rng.gen_range(1..=9)), dim.max(1))
                    .unwrap();
            (format!("supernatural {roots}"), spec.table(window).unwrap(), dim)
        };
        let len = rng.gen_range(dim + 2..=dim + 4);
        let d = random_degrees(&mut rng, -8, 8, len);
        match interpolation_check(&d, &table) {
            Ok(v) if v.is_zero() => {}
            Ok(v) => failures.push(format!("L({d}, inf)({name}) = {v}, expected 0")),
            Err(e) => failures.push(format!("{name} with d = {d}: {e}")),
        }
    }
    SuiteOutcome {
        name: "interpolation",
        trials,
        failures,
    }
}

/// The telescoped expansion of -L(d, phi^0) with the nonnegative
/// coefficients A_k agrees with the direct evaluation on random tables.
pub fn eq1_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut rng = rng_for(seed);
    let window = Window::new(-8, 8).unwrap();
    let mut failures = Vec::new();
    for _ in 0..trials {
        let s = rng.gen_range(0..=6usize);
        let d = random_degrees(&mut rng, -8, 8, s + 2);
        let table = random_table(&mut rng, s.max(1), window);
        match eq1_identity_gap(&d, &table) {
            Ok(gap) if gap.is_zero() => {}
            Ok(gap) => failures.push(format!("gap {gap} for d = {d}")),
            Err(e) => failures.push(format!("d = {d}: {e}")),
        }
        for a in eq1_coefficients(&d).unwrap() {
            if a.is_negative() {
                failures.push(format!("negative coefficient {a} for d = {d}"));
            }
        }
    }
    SuiteOutcome {
        name: "equation-one",
        trials,
        failures,
    }
}

/// The descending-induction product identity over random rational values,
/// all valid (ell, t) pairs per draw.
pub fn product_identity_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut rng = rng_for(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let s = rng.gen_range(0..=6usize);
        let values: Vec<Rational> = (0..s + 2).map(|_| random_rational(&mut rng)).collect();
        for ell in 0..=s + 1 {
            for t in -1..=ell as i64 - 1 {
                match product_identity_check(&values, ell, t) {
                    Ok(true) => {}
                    Ok(false) => {
                        failures.push(format!("mismatch at s = {s}, ell = {ell}, t = {t}"))
                    }
                    Err(e) => failures.push(format!("s = {s}, ell = {ell}, t = {t}: {e}")),
                }
            }
        }
    }
    SuiteOutcome {
        name: "product-identity",
        trials,
        failures,
    }
}

/// The truncated pairing against a pure Betti table collapses to the
/// positivity functionals in the two stated cutoff regimes, and the
/// untruncated pairing is the all-tops functional.
pub fn pairing_reduction_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut rng = rng_for(seed);
    let window = Window::new(-8, 8).unwrap();
    let mut failures = Vec::new();
    for _ in 0..trials {
        let s = rng.gen_range(1..=4usize);
        let d = random_degrees(&mut rng, -8, 8, s + 2);
        let table = random_table(&mut rng, s, window);
        let beta = pure_betti(&d);

        let all_tops =
            BoundSequence::new((0..s as i64 + 2).map(Bound::Finite).collect());
        let lhs = crate::functionals::pairing(&beta, &table).unwrap();
        let rhs = evaluate(&d, &all_tops, &table).unwrap();
        if lhs != rhs {
            failures.push(format!("all-tops mismatch {lhs} vs {rhs} for d = {d}"));
        }

        let tau = rng.gen_range(1..=s);
        let c = d.get(tau) - rng.gen_range(1..=3);
        let lhs = pairing_bounded(&beta, &table, c, tau).unwrap();
        let rhs = evaluate(&d, &BoundSequence::phi(tau, s).unwrap(), &table).unwrap();
        if lhs != rhs {
            failures.push(format!(
                "low-cutoff mismatch {lhs} vs {rhs} for d = {d}, tau = {tau}, c = {c}"
            ));
        }

        let tau = rng.gen_range(0..=s - 1);
        let c = d.get(tau + 1) + rng.gen_range(0..=3);
        let lhs = pairing_bounded(&beta, &table, c, tau).unwrap();
        let rhs = evaluate(&d, &BoundSequence::phi(tau + 1, s).unwrap(), &table).unwrap();
        if lhs != rhs {
            failures.push(format!(
                "high-cutoff mismatch {lhs} vs {rhs} for d = {d}, tau = {tau}, c = {c}"
            ));
        }
    }
    SuiteOutcome {
        name: "pairing-reduction",
        trials,
        failures,
    }
}

/// Positivity of L(d, phi^j) for j >= 1 and of -L(d, phi^0) on every stock
/// sheaf table, over seeded random degree sequences inside [-8, 8].
pub fn positivity_suite(trials_per_table: usize, seed: u64) -> SuiteOutcome {
    let mut rng = rng_for(seed);
    let window = Window::new(-10, 10).unwrap();
    let mut failures = Vec::new();
    let mut trials = 0;
    for (name, sheaf) in stock_sheaves() {
        let table = sheaf.table(window).unwrap();
        for _ in 0..trials_per_table {
            trials += 1;
            let s = rng.gen_range(0..=3usize);
            let d = random_degrees(&mut rng, -8, 8, s + 2);
            for j in 0..=s {
                let l = evaluate(&d, &BoundSequence::phi(j, s).unwrap(), &table).unwrap();
                let value = if j == 0 { -l } else { l };
                if value.is_negative() {
                    failures.push(format!(
                        "violation on {name}: d = {d}, j = {j}, value {value}"
                    ));
                }
            }
        }
    }
    SuiteOutcome {
        name: "positivity",
        trials,
        failures,
    }
}

/// L(d, inf) vanishes identically on supernatural generators.
pub fn generator_vanishing_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut rng = rng_for(seed);
    let window = Window::new(-12, 12).unwrap();
    let mut failures = Vec::new();
    for _ in 0..trials {
        let roots = random_roots(&mut rng, 4);
        let spec = SupernaturalSpec::new(
            roots.clone(),
            frac(rng.gen_range(1..=9), rng.gen_range(1..=9)),
            roots.len().max(1),
        )
        .unwrap();
        let table = spec.table(window).unwrap();
        let len = rng.gen_range(roots.len() + 2..=roots.len() + 4);
        let d = random_degrees(&mut rng, -8, 8, len);
        let v = evaluate(&d, &BoundSequence::all_infinite(len), &table).unwrap();
        if !v.is_zero() {
            failures.push(format!("L({d}, inf) = {v} on generator {roots}"));
        }
    }
    SuiteOutcome {
        name: "generator-vanishing",
        trials,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_on_a_smoke_budget() {
        for outcome in [
            interpolation_suite(40, DEFAULT_SEED),
            eq1_suite(60, DEFAULT_SEED),
            product_identity_suite(40, DEFAULT_SEED),
            pairing_reduction_suite(40, DEFAULT_SEED),
            positivity_suite(25, DEFAULT_SEED),
            generator_vanishing_suite(40, DEFAULT_SEED),
        ] {
            assert!(outcome.passed(), "{}", outcome.summary());
        }
    }

    #[test]
    fn suites_are_deterministic_per_seed() {
        let a = positivity_suite(5, 7);
        let b = positivity_suite(5, 7);
        assert_eq!(a.trials, b.trials);
        assert_eq!(a.failures, b.failures);
    }
}
