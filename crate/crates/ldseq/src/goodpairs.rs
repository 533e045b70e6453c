//! Enumeration of the good pairs: which lines `c·n + d` actually occur as
//! block complexity functions of leading-digit sequences.
//!
//! A pair `(c, d)` is good when some admissible `(a, b)` has complexity line
//! `c·n + d`; since `c + d = b − 1` and `⌊(b−1)/2⌋ ≤ c ≤ b − 1`, the base is
//! determined (`b = c + d + 1`) and only finitely many bases can realize a
//! given `c`. Witnesses are searched over canonical `(r, s)` up to
//! per-base caps; nothing guarantees the caps see every pair, so the module
//! pairs the enumeration with a stabilize-under-doubling check.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::complexity::complexity_line;
use crate::error::{Error, Result};
use crate::number::{factorize, is_squarefree, AdmissiblePair, Rational};

/// A per-base search cap, kept symbolic so one value can scale across the
/// range of bases a sweep visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `m·b²` at base `b` — the default shape for the `r` cap.
    TimesBSquared(u64),
    /// `m·b` at base `b` — the default shape for the `s` cap.
    TimesB(u64),
    /// The same absolute cap at every base.
    Fixed(u64),
}

impl Bound {
    fn cap(self, b: u64) -> u64 {
        match self {
            Bound::TimesBSquared(m) => m * b * b,
            Bound::TimesB(m) => m * b,
            Bound::Fixed(v) => v,
        }
    }

    fn doubled(self) -> Bound {
        match self {
            Bound::TimesBSquared(m) => Bound::TimesBSquared(2 * m),
            Bound::TimesB(m) => Bound::TimesB(2 * m),
            Bound::Fixed(v) => Bound::Fixed(2 * v),
        }
    }
}

/// How far the witness search looks at each base, plus how many doubling
/// rounds [`saturation_check`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub r_max: Bound,
    pub s_max: Bound,
    pub saturation_passes: u32,
}

impl Default for EnumerationBounds {
    /// `r ≤ b²`, `s ≤ b`, one saturation pass.
    fn default() -> Self {
        EnumerationBounds {
            r_max: Bound::TimesBSquared(1),
            s_max: Bound::TimesB(1),
            saturation_passes: 1,
        }
    }
}

impl EnumerationBounds {
    /// The `r` cap at base `b`, never below `b` itself.
    pub fn r_cap(&self, b: u64) -> u64 {
        self.r_max.cap(b).max(b)
    }

    /// The `s` cap at base `b`, never below 1.
    pub fn s_cap(&self, b: u64) -> u64 {
        self.s_max.cap(b).max(1)
    }

    fn doubled(&self) -> EnumerationBounds {
        EnumerationBounds {
            r_max: self.r_max.doubled(),
            s_max: self.s_max.doubled(),
            saturation_passes: self.saturation_passes,
        }
    }
}

/// The canonical data `(b, r, s)` realizing a good pair: `a = r/s` is
/// admissible for `b` and has complexity line `c·n + d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub b: u64,
    pub r: u64,
    pub s: u64,
}

/// A realized complexity line, with the smallest witness found for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoodPair {
    pub c: u64,
    pub d: u64,
    pub witness: Witness,
}

/// One row of [`conjecture_stats`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjectureRow {
    pub c: u64,
    /// `|G(c)|`, the number of distinct intercepts realized with slope `c`.
    pub count: u64,
    /// `|G(c)| / √c`.
    pub ratio: f64,
    /// `Σ_{c' ≤ c} |G(c')| / c^{3/2}`.
    pub cumulative_ratio: f64,
}

/// All intercepts `d` realized at base `b` within the bounds.
///
/// These are the values `⌊(b−1)/r⌋ + ⌊(gcd(b,r)−1)/s⌋` over coprime `(r, s)`
/// with `s < r < s·b` (that is, `1 < r/s < b`), truncated to `r ≤ r_cap(b)`
/// and `s ≤ s_cap(b)`.
pub fn good_ds_for_base(b: u64, bounds: &EnumerationBounds) -> Result<BTreeSet<u64>> {
    Ok(good_ds_with_witnesses(b, bounds)?.into_keys().collect())
}

/// As [`good_ds_for_base`], but with each `d` paired to the
/// lexicographically smallest `(r, s)` realizing it.
pub fn good_pairs_for_base(b: u64, bounds: &EnumerationBounds) -> Result<Vec<GoodPair>> {
    let ds = good_ds_with_witnesses(b, bounds)?;
    Ok(ds
        .into_iter()
        .map(|(d, (r, s))| GoodPair {
            c: b - 1 - d,
            d,
            witness: Witness { b, r, s },
        })
        .collect())
}

fn check_base(b: u64) -> Result<()> {
    if b < 5 {
        return Err(Error::BaseTooSmall { b, min: 5 });
    }
    if !is_squarefree(b) {
        return Err(Error::BaseNotSquarefree { b });
    }
    Ok(())
}

/// The full search at one base: `d → smallest (r, s)`.
///
/// The search space splits at `r = b`. Below it both floor terms matter and
/// the ranges are small enough to walk literally. From `r = b` on, the first
/// floor term vanishes and `d` depends only on `(gcd(b,r), s)`, so it
/// suffices to find, for every divisor `g` of `b` and every `s`, the
/// smallest `r ≥ b` in that class — stepping over multiples of `g` instead
/// of every integer up to the quadratic cap.
fn good_ds_with_witnesses(b: u64, bounds: &EnumerationBounds) -> Result<BTreeMap<u64, (u64, u64)>> {
    check_base(b)?;
    let r_cap = bounds.r_cap(b);
    let s_cap = bounds.s_cap(b);
    let mut out: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    let mut record = |d: u64, r: u64, s: u64| {
        out.entry(d)
            .and_modify(|best| {
                if (r, s) < *best {
                    *best = (r, s);
                }
            })
            .or_insert((r, s));
    };

    // r < b: here s < r < s·b reduces to s < r, and r ≤ r_cap is no
    // constraint because r_cap ≥ b.
    for r in 2..b.min(r_cap + 1) {
        let t1 = (b - 1) / r;
        let g = b.gcd(&r);
        for s in 1..=(r - 1).min(s_cap) {
            if r.gcd(&s) == 1 {
                record(t1 + (g - 1) / s, r, s);
            }
        }
    }

    // r ≥ b, per class (g = gcd(b, r), s): d = ⌊(g−1)/s⌋ once any valid r
    // exists, and the smallest is found by stepping r over multiples of g.
    for g in factorize(b).divisors() {
        let b_over_g = b / g;
        for s in 1..=s_cap {
            let r_lo = b.max(s + 1);
            let r_hi = r_cap.min(s.saturating_mul(b).saturating_sub(1));
            if r_lo > r_hi {
                continue;
            }
            let mut m = r_lo.div_ceil(g);
            while m * g <= r_hi {
                let r = m * g;
                if b_over_g.gcd(&m) == 1 && r.gcd(&s) == 1 {
                    record((g - 1) / s, r, s);
                    break;
                }
                m += 1;
            }
        }
    }
    Ok(out)
}

/// The bases able to realize slope `c`: squarefree `b` with
/// `max(5, c+1) ≤ b ≤ 2c + 2`, forced by `c + d = b − 1` and the extreme
/// bounds on `c`.
fn bases_for_slope(c: u64) -> impl Iterator<Item = u64> {
    (5.max(c + 1)..=2 * c + 2).filter(|&b| is_squarefree(b))
}

/// The good pairs with slope `c`, sorted by intercept, each carrying its
/// smallest witness. Every returned pair has been re-validated through the
/// closed-form complexity line of its witness.
pub fn g_of_c(c: u64, bounds: &EnumerationBounds) -> Vec<GoodPair> {
    assert!(c >= 1, "slopes start at 1");
    let mut pairs = Vec::new();
    for b in bases_for_slope(c) {
        let d = b - 1 - c;
        let ds = good_ds_with_witnesses(b, bounds).expect("bases_for_slope yields valid bases");
        if let Some(&(r, s)) = ds.get(&d) {
            let pair = GoodPair {
                c,
                d,
                witness: Witness { b, r, s },
            };
            validate(&pair);
            pairs.push(pair);
        }
    }
    pairs.sort_by_key(|p| p.d);
    pairs
}

/// The set `G(c)` of intercepts realized with slope `c`.
pub fn g_of_c_ds(c: u64, bounds: &EnumerationBounds) -> BTreeSet<u64> {
    g_of_c(c, bounds).into_iter().map(|p| p.d).collect()
}

/// `G(c)` for every `c = 1..=c_max` at once (index `c − 1`), each pair
/// re-validated and sorted by intercept.
///
/// A base `b` serves every slope in `[⌈(b−1)/2⌉, b−2]`, so slope-by-slope
/// calls to [`g_of_c`] redo each base's search ~`b/2` times; here every
/// squarefree `b ≤ 2·c_max + 2` is enumerated exactly once and its pairs
/// are bucketed by `c = b − 1 − d`. Use this for tables and sweeps.
pub fn g_table(c_max: u64, bounds: &EnumerationBounds) -> Vec<Vec<GoodPair>> {
    assert!(c_max >= 1, "slopes start at 1");
    let mut table: Vec<Vec<GoodPair>> = vec![Vec::new(); c_max as usize];
    for b in (5..=2 * c_max + 2).filter(|&b| is_squarefree(b)) {
        for pair in good_pairs_for_base(b, bounds).expect("bases are squarefree and large enough") {
            if pair.c <= c_max {
                validate(&pair);
                table[pair.c as usize - 1].push(pair);
            }
        }
    }
    for row in &mut table {
        row.sort_by_key(|p| p.d);
    }
    table
}

/// Check a claimed witness against the formula it is supposed to realize.
fn validate(pair: &GoodPair) {
    let a = Rational::new(pair.witness.r.into(), pair.witness.s.into())
        .expect("witness parts are positive");
    let admissible =
        AdmissiblePair::new(a, pair.witness.b).expect("witnesses are admissible by construction");
    let line = complexity_line(&admissible);
    assert!(
        line.c == pair.c && line.d == pair.d,
        "witness failed re-validation"
    );
}

/// `(c, |G(c)|, |G(c)|/√c, Σ|G(c')|/c^{3/2})` for `c = 1..=c_max`.
///
/// Counts are exact; the two ratio columns are the quantities the
/// square-root growth conjecture bounds between fixed constants.
pub fn conjecture_stats(c_max: u64, bounds: &EnumerationBounds) -> Vec<ConjectureRow> {
    assert!(c_max >= 5, "too few rows to say anything");
    // One shared per-base cache: every slope in range re-reads the same
    // bases.
    let mut cache: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
    let mut rows = Vec::with_capacity(c_max as usize);
    let mut total = 0u64;
    for c in 1..=c_max {
        let mut count = 0u64;
        for b in bases_for_slope(c) {
            let ds = cache
                .entry(b)
                .or_insert_with(|| good_ds_for_base(b, bounds).expect("valid base"));
            if ds.contains(&(b - 1 - c)) {
                count += 1;
            }
        }
        total += count;
        let c_f = c as f64;
        rows.push(ConjectureRow {
            c,
            count,
            ratio: count as f64 / libm::sqrt(c_f),
            cumulative_ratio: total as f64 / (c_f * libm::sqrt(c_f)),
        });
    }
    rows
}

/// `true` when every `G(c)` for `c ≤ c_max` is unchanged by enlarging the
/// search bounds (`saturation_passes` rounds of doubling both caps).
///
/// Stability under doubling is the working criterion that the default caps
/// saw everything; it is evidence, not proof.
pub fn saturation_check(c_max: u64, bounds: &EnumerationBounds) -> bool {
    let reference = slope_sets(c_max, bounds);
    let mut wider = *bounds;
    for _ in 0..bounds.saturation_passes.max(1) {
        wider = wider.doubled();
        if slope_sets(c_max, &wider) != reference {
            return false;
        }
    }
    true
}

/// The intercept sets of [`g_table`], without witness bookkeeping or
/// re-validation (saturation compares sets, not witnesses — a wider cap may
/// legitimately find a smaller witness for the same pair).
fn slope_sets(c_max: u64, bounds: &EnumerationBounds) -> Vec<BTreeSet<u64>> {
    let mut sets: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); c_max as usize];
    for b in (5..=2 * c_max + 2).filter(|&b| is_squarefree(b)) {
        for d in good_ds_for_base(b, bounds).expect("bases are squarefree and large enough") {
            let c = b - 1 - d;
            if (1..=c_max).contains(&c) {
                sets[c as usize - 1].insert(d);
            }
        }
    }
    sets
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The definition, walked literally: every `(r, s)` up to the caps.
    fn good_ds_brute(b: u64, bounds: &EnumerationBounds) -> BTreeMap<u64, (u64, u64)> {
        let mut out = BTreeMap::new();
        for r in 2..=bounds.r_cap(b) {
            for s in 1..=bounds.s_cap(b) {
                if s < r && r < s * b && r.gcd(&s) == 1 {
                    let d = (b - 1) / r + (b.gcd(&r) - 1) / s;
                    out.entry(d).or_insert((r, s));
                }
            }
        }
        out
    }

    #[test]
    fn split_search_matches_literal_search() {
        let variants = [
            EnumerationBounds::default(),
            EnumerationBounds {
                r_max: Bound::TimesB(1),
                ..EnumerationBounds::default()
            },
            EnumerationBounds {
                r_max: Bound::Fixed(40),
                s_max: Bound::Fixed(7),
                ..EnumerationBounds::default()
            },
            EnumerationBounds {
                r_max: Bound::TimesBSquared(2),
                s_max: Bound::TimesB(2),
                ..EnumerationBounds::default()
            },
        ];
        for b in (5..=30).filter(|&b| is_squarefree(b)) {
            for bounds in &variants {
                assert_eq!(
                    good_ds_with_witnesses(b, bounds).unwrap(),
                    good_ds_brute(b, bounds),
                    "b={b} bounds={bounds:?}"
                );
            }
        }
    }

    #[test]
    fn base_ten_intercepts() {
        let ds = good_ds_for_base(10, &EnumerationBounds::default()).unwrap();
        for d in [5, 3, 2, 1, 0] {
            assert!(ds.contains(&d), "missing d={d}");
        }
        assert!(!ds.contains(&4));
    }

    #[test]
    fn base_five_intercepts() {
        let ds = good_ds_for_base(5, &EnumerationBounds::default()).unwrap();
        assert_eq!(ds, [0, 1, 2].into_iter().collect());
    }

    #[test]
    fn zero_is_always_realized() {
        for b in (5..=60).filter(|&b| is_squarefree(b)) {
            let ds = good_ds_for_base(b, &EnumerationBounds::default()).unwrap();
            assert!(ds.contains(&0), "b={b}");
        }
    }

    #[test]
    fn invalid_bases_are_rejected() {
        let bounds = EnumerationBounds::default();
        assert!(matches!(
            good_ds_for_base(12, &bounds),
            Err(Error::BaseNotSquarefree { b: 12 })
        ));
        assert!(matches!(
            good_ds_for_base(4, &bounds),
            Err(Error::BaseTooSmall { b: 4, min: 5 })
        ));
    }

    #[test]
    fn g_of_c_reference_sets() {
        let bounds = EnumerationBounds::default();
        assert_eq!(g_of_c_ds(2, &bounds), [2, 3].into_iter().collect());
        assert_eq!(g_of_c_ds(4, &bounds), [0, 1, 2, 5].into_iter().collect());
        assert_eq!(
            g_of_c_ds(10, &bounds),
            [0, 2, 3, 4, 10, 11].into_iter().collect()
        );
        // No squarefree base in range realizes slope 1: G(1) is empty.
        assert_eq!(g_of_c_ds(1, &bounds), BTreeSet::new());
    }

    #[test]
    fn g_of_c_witnesses_are_smallest_and_consistent() {
        let bounds = EnumerationBounds::default();
        let pairs = g_of_c(4, &bounds);
        // (4, 5) is realized at base 10 by a = 2 — the doubling sequence.
        let p45 = pairs.iter().find(|p| p.d == 5).unwrap();
        assert_eq!(p45.witness, Witness { b: 10, r: 2, s: 1 });
        for p in &pairs {
            assert_eq!(p.c + p.d, p.witness.b - 1);
            assert!(p.d <= p.c + 1);
        }
    }

    #[test]
    fn g_of_c_grows_with_the_bounds() {
        let small = EnumerationBounds {
            r_max: Bound::TimesB(1),
            s_max: Bound::Fixed(2),
            ..EnumerationBounds::default()
        };
        let default = EnumerationBounds::default();
        let wide = default.doubled();
        for c in [2u64, 4, 7, 10, 15] {
            let a = g_of_c_ds(c, &small);
            let b = g_of_c_ds(c, &default);
            let c_set = g_of_c_ds(c, &wide);
            assert!(a.is_subset(&b));
            assert!(b.is_subset(&c_set));
        }
    }

    #[test]
    fn a_equals_two_pair_is_always_good() {
        for b in (5..=40).filter(|&b| is_squarefree(b)) {
            let c = (b - 1) / 2;
            let d = b - 1 - c;
            assert!(
                g_of_c_ds(c, &EnumerationBounds::default()).contains(&d),
                "b={b}"
            );
        }
    }

    #[test]
    fn conjecture_stats_reference_counts() {
        let rows = conjecture_stats(50, &EnumerationBounds::default());
        assert_eq!(rows.len(), 50);
        let count = |c: u64| rows[c as usize - 1].count;
        assert_eq!(count(20), 9);
        assert_eq!(count(50), 14);
        // |G(c)| ≥ 1 once c ≥ 4 within this range.
        for c in 4..=50 {
            assert!(count(c) >= 1, "c={c}");
        }
        let last = rows.last().unwrap();
        let total: u64 = rows.iter().map(|row| row.count).sum();
        assert!((last.cumulative_ratio - total as f64 / 50f64.powf(1.5)).abs() < 1e-12);
    }

    #[test]
    fn saturation_holds_for_default_bounds() {
        assert!(saturation_check(20, &EnumerationBounds::default()));
    }

    #[test]
    fn saturation_check_small_cases() {
        assert!(saturation_check(5, &EnumerationBounds::default()));
    }

    #[test]
    fn table_matches_slope_by_slope_queries() {
        let bounds = EnumerationBounds::default();
        let table = g_table(30, &bounds);
        assert_eq!(table.len(), 30);
        for c in 1..=30u64 {
            assert_eq!(table[c as usize - 1], g_of_c(c, &bounds), "c={c}");
        }
    }

    #[test]
    fn table_counts_match_stats_counts() {
        let bounds = EnumerationBounds::default();
        let table = g_table(25, &bounds);
        let rows = conjecture_stats(25, &bounds);
        for (row, pairs) in rows.iter().zip(&table) {
            assert_eq!(row.count as usize, pairs.len(), "c={}", row.c);
        }
    }
}
