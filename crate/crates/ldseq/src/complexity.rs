//! Block complexity of leading-digit sequences: the closed-form complexity
//! line, empirical window counting, extreme-value bounds, and slope
//! statistics.
//!
//! For an admissible pair the number of distinct length-`n` blocks is exactly
//! linear, `p(n) = c·n + d`, and the coefficients come straight out of the
//! canonical form of `a`. The empirical counter is the independent check: it
//! scans an actual digit prefix and counts windows by exact comparison.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::digits::{generate_prefix, Digit, DigitSequencePrefix, Mode};
use crate::error::{Error, Result};
use crate::number::{AdmissiblePair, Rational};

/// The complexity line `p(n) = c·n + d` of an admissible pair in base `b`.
///
/// Always satisfies `c + d = b − 1` and `⌊(b−1)/2⌋ ≤ c ≤ b − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearComplexity {
    /// The base the sequence is written in.
    pub b: u64,
    /// Slope: the number of new blocks per unit of block length.
    pub c: u64,
    /// Intercept: `b − 1 − c`.
    pub d: u64,
}

impl LinearComplexity {
    /// The block count `c·n + d` predicted for blocks of length `n ≥ 1`.
    pub fn eval(&self, n: u64) -> u64 {
        self.c * n + self.d
    }
}

/// How the points of a [`ComplexityProfile`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileMethod {
    /// Evaluated from the closed-form complexity line.
    Formula,
    /// Cardinalities of the exact torus sets.
    Oracle,
    /// Windows counted in a concrete digit prefix. `converged` is set only
    /// when the doubling protocol verified that all counts were stable
    /// across one doubling of the prefix.
    Empirical {
        prefix_length: usize,
        converged: bool,
    },
}

/// Block counts `(n, p(n))` for `n = 1..=n_max`, tagged with their origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityProfile {
    /// Strictly increasing in `n`; `p` is nondecreasing on any input long
    /// enough to be representative.
    pub points: Vec<(u64, u64)>,
    pub method: ProfileMethod,
}

/// Whether [`empirical_profile`] counts on the prefix as given or grows it
/// until the counts stop moving.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixPolicy {
    /// Count within exactly `initial_prefix` digits.
    Fixed,
    /// Double the prefix until every count for `n ≤ n_max` is unchanged
    /// across one doubling, then report the stable counts.
    Converged,
}

/// Most doublings [`PrefixPolicy::Converged`] will attempt before giving up.
const MAX_DOUBLINGS: u32 = 6;

/// The slope and intercept of `p(n)` for an admissible pair, from the
/// canonical form `a = (r/s)·b^k`:
///
/// `c = b − 1 − ⌊(b−1)/r⌋ − ⌊(gcd(b,r) − 1)/s⌋`, `d = b − 1 − c`.
pub fn complexity_line(pair: &AdmissiblePair) -> LinearComplexity {
    let b = pair.base();
    let canon = pair.canon();
    if let (Some(r), Some(s)) = (canon.r.to_u64(), canon.s.to_u64()) {
        return line_from_parts(b, r, s);
    }
    // Canonical numerator or denominator beyond u64: the floor terms are
    // computed on the reduced quantities instead. ⌊(b−1)/r⌋ = 0 whenever r
    // does not fit in a u64, and gcd(b, r) = gcd(b, r mod b).
    let r_mod_b = (&canon.r % b).to_u64().expect("residue < b");
    let g = if r_mod_b == 0 { b } else { b.gcd(&r_mod_b) };
    let t2 = match canon.s.to_u64() {
        Some(s) => (g - 1) / s,
        None => 0,
    };
    let c = b - 1 - t2;
    LinearComplexity { b, c, d: b - 1 - c }
}

/// The general formula evaluated at machine width. `average_slope` funnels
/// every integer `a` through this same expression, so the two public entry
/// points cover one another.
pub(crate) fn line_from_parts(b: u64, r: u64, s: u64) -> LinearComplexity {
    let t1 = (b - 1) / r;
    let g = b.gcd(&r);
    let t2 = (g - 1) / s;
    let c = b - 1 - t1 - t2;
    LinearComplexity { b, c, d: b - 1 - c }
}

/// Closed-form `p(n) = c·n + d` for an admissible pair and `n ≥ 1`.
pub fn p_formula(pair: &AdmissiblePair, n: u64) -> u64 {
    complexity_line(pair).eval(n)
}

/// The number of distinct contiguous length-`n` blocks in the prefix.
///
/// This is exact (windows are compared digit for digit) and is a lower bound
/// for the true `p(n)` of the infinite sequence, with equality once the
/// prefix is long enough.
pub fn empirical_complexity(prefix: &DigitSequencePrefix, n: usize) -> Result<u64> {
    distinct_windows(prefix.digits(), n)
}

/// Count distinct `n`-windows of a digit slice by sorting window start
/// offsets under window comparison and counting boundaries between runs.
pub(crate) fn distinct_windows(digits: &[Digit], n: usize) -> Result<u64> {
    assert!(n >= 1, "block length must be at least 1");
    if n > digits.len() {
        return Err(Error::BlockLongerThanPrefix {
            n,
            prefix_len: digits.len(),
        });
    }
    let window = |start: u32| &digits[start as usize..start as usize + n];
    let mut starts: Vec<u32> = (0..(digits.len() - n + 1) as u32).collect();
    starts.sort_unstable_by(|&i, &j| window(i).cmp(window(j)));
    let boundaries = starts
        .windows(2)
        .filter(|pair| window(pair[0]) != window(pair[1]))
        .count();
    Ok(boundaries as u64 + 1)
}

/// Count distinct blocks of every length `1..=n_max` in a digit prefix.
///
/// With [`PrefixPolicy::Fixed`] the prefix has exactly `initial_prefix`
/// digits. With [`PrefixPolicy::Converged`] the prefix is doubled (at most
/// six times) until no count changes across a doubling; if the counts never
/// stabilize the budget is reported as exceeded. The `mode` is forwarded to
/// digit generation.
pub fn empirical_profile(
    a: &Rational,
    b: u64,
    n_max: u64,
    initial_prefix: usize,
    policy: PrefixPolicy,
    mode: Mode,
) -> Result<ComplexityProfile> {
    if (initial_prefix as u64) < n_max {
        return Err(Error::PrefixTooShort {
            needed: n_max as usize,
            got: initial_prefix,
        });
    }
    match policy {
        PrefixPolicy::Fixed => {
            let prefix = generate_prefix(a, b, initial_prefix, mode)?;
            let points = profile_points(prefix.digits(), n_max)?;
            Ok(ComplexityProfile {
                points,
                method: ProfileMethod::Empirical {
                    prefix_length: initial_prefix,
                    converged: false,
                },
            })
        }
        PrefixPolicy::Converged => {
            let (prefix, points) = doubled_until_stable(a, b, n_max, initial_prefix, mode)?;
            Ok(ComplexityProfile {
                points,
                method: ProfileMethod::Empirical {
                    prefix_length: prefix.len(),
                    converged: true,
                },
            })
        }
    }
}

/// A digit prefix long enough that every window count for `n ≤ n_max` is
/// stable across one doubling of its length.
///
/// This is the prefix the graph constructions build on when they need the
/// full block inventory rather than whatever a fixed length happens to see.
pub fn converged_prefix(
    a: &Rational,
    b: u64,
    n_max: u64,
    initial_prefix: usize,
    mode: Mode,
) -> Result<DigitSequencePrefix> {
    let (prefix, _) = doubled_until_stable(a, b, n_max, initial_prefix, mode)?;
    Ok(prefix)
}

/// Double the prefix until the window counts for all `n ≤ n_max` survive a
/// doubling unchanged; return the doubled (stable) prefix and its counts.
fn doubled_until_stable(
    a: &Rational,
    b: u64,
    n_max: u64,
    initial_prefix: usize,
    mode: Mode,
) -> Result<(DigitSequencePrefix, Vec<(u64, u64)>)> {
    let mut len = initial_prefix;
    let mut points = profile_points(generate_prefix(a, b, len, mode)?.digits(), n_max)?;
    for _ in 0..MAX_DOUBLINGS {
        len *= 2;
        let next = generate_prefix(a, b, len, mode)?;
        let next_points = profile_points(next.digits(), n_max)?;
        if next_points == points {
            return Ok((next, next_points));
        }
        points = next_points;
    }
    Err(Error::ConvergenceBudgetExceeded {
        final_prefix_len: len,
    })
}

fn profile_points(digits: &[Digit], n_max: u64) -> Result<Vec<(u64, u64)>> {
    (1..=n_max)
        .map(|n| Ok((n, distinct_windows(digits, n as usize)?)))
        .collect()
}

/// The attainable range of complexity lines over a squarefree base `b ≥ 5`:
/// the lower line `⌊(b−1)/2⌋·n + ⌈(b−1)/2⌉` (attained at `a = 2`) and the
/// upper line `(b−1)·n` (attained at any integer `a > b` coprime to `b`).
pub fn extreme_bounds(b: u64) -> Result<(LinearComplexity, LinearComplexity)> {
    check_base(b)?;
    let low = (b - 1) / 2;
    let lower = LinearComplexity {
        b,
        c: low,
        d: b - 1 - low,
    };
    let upper = LinearComplexity { b, c: b - 1, d: 0 };
    Ok((lower, upper))
}

/// The limit of `c_{a,b}/b` as the squarefree base grows, for a fixed
/// integer `a ≥ 2`: exactly `1 − 1/a`.
pub fn asymptotic_slope_limit(a: u64) -> Rational {
    assert!(a >= 2, "the slope limit is defined for integer a >= 2");
    Rational::new((a - 1).into(), a.into()).expect("positive denominator")
}

/// The exact average slope `c̄_b = (Σ_{a=2}^{b−1} c_{a,b}) / (b − 2)` over
/// the integer values of `a`, every one of which is admissible when `b` is
/// squarefree.
pub fn average_slope(b: u64) -> Result<Rational> {
    check_base(b)?;
    // Integer 1 < a < b has canonical form (k, r, s) = (0, a, 1); each term
    // goes through the general formula rather than the simplified integer
    // corollary so that this sum exercises the same path as complexity_line.
    let sum: u64 = (2..b).map(|a| line_from_parts(b, a, 1).c).sum();
    Rational::new(sum.into(), (b - 2).into())
}

fn check_base(b: u64) -> Result<()> {
    if b < 5 {
        return Err(Error::BaseTooSmall { b, min: 5 });
    }
    if !crate::number::is_squarefree(b) {
        return Err(Error::BaseNotSquarefree { b });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pair(a: u64, b: u64) -> AdmissiblePair {
        AdmissiblePair::new(Rational::from_integer(a).unwrap(), b).unwrap()
    }

    fn pair_frac(num: u64, den: u64, b: u64) -> AdmissiblePair {
        AdmissiblePair::new(
            Rational::new(num.into(), den.into()).unwrap(),
            b,
        )
        .unwrap()
    }

    #[test]
    fn complexity_line_reference_values() {
        let line = complexity_line(&pair(2, 10));
        assert_eq!((line.c, line.d), (4, 5));
        let line = complexity_line(&pair(7, 10));
        assert_eq!((line.c, line.d), (8, 1));
        // 9 in base 6 reduces to canonical r/s = 3/2.
        let line = complexity_line(&pair(9, 6));
        assert_eq!((line.c, line.d), (3, 2));
    }

    #[test]
    fn complexity_line_full_small_base_table() {
        // (a, b) -> (c, d) for every integer a the bases 5, 6, 7 and 10 admit.
        let table: &[(u64, u64, u64, u64)] = &[
            (2, 5, 2, 2),
            (3, 5, 3, 1),
            (4, 5, 3, 1),
            (6, 5, 4, 0),
            (7, 5, 4, 0),
            (8, 5, 4, 0),
            (9, 5, 4, 0),
            (2, 6, 2, 3),
            (3, 6, 2, 3),
            (4, 6, 3, 2),
            (5, 6, 4, 1),
            (7, 6, 5, 0),
            (8, 6, 4, 1),
            (9, 6, 3, 2),
            (2, 7, 3, 3),
            (3, 7, 4, 2),
            (4, 7, 5, 1),
            (5, 7, 5, 1),
            (6, 7, 5, 1),
            (8, 7, 6, 0),
            (9, 7, 6, 0),
            (2, 10, 4, 5),
            (3, 10, 6, 3),
            (4, 10, 6, 3),
            (5, 10, 4, 5),
            (6, 10, 7, 2),
            (7, 10, 8, 1),
            (8, 10, 7, 2),
            (9, 10, 8, 1),
        ];
        for &(a, b, c, d) in table {
            let line = complexity_line(&pair(a, b));
            assert_eq!((line.c, line.d), (c, d), "a={a} b={b}");
        }
    }

    #[test]
    fn integers_above_base_coprime_to_it_reach_the_upper_line() {
        for b in [5u64, 6, 7, 10, 13] {
            let line = complexity_line(&pair(b + 1, b));
            assert_eq!((line.c, line.d), (b - 1, 0));
        }
    }

    #[test]
    fn p_formula_reference_values() {
        assert_eq!(p_formula(&pair(2, 10), 1), 9);
        assert_eq!(p_formula(&pair(2, 5), 3), 8);
        assert_eq!(p_formula(&pair(3, 7), 2), 10);
    }

    #[test]
    fn slope_and_intercept_always_sum_to_b_minus_one() {
        for b in [5u64, 6, 7, 10, 14, 15, 21, 30] {
            for a in 2..3 * b {
                if a == b || a % b == 0 {
                    continue;
                }
                let line = complexity_line(&pair(a, b));
                assert_eq!(line.c + line.d, b - 1);
                assert!(line.c >= (b - 1) / 2 && line.c <= b - 1);
            }
        }
    }

    #[test]
    fn rational_a_matches_its_reduced_canonical_form() {
        // 10/4 = 5/2, so (10/4, 7) and (5/2, 7) share a line.
        let via_unreduced = complexity_line(&pair_frac(10, 4, 7));
        let via_reduced = complexity_line(&pair_frac(5, 2, 7));
        assert_eq!(via_unreduced, via_reduced);
    }

    #[test]
    fn integer_a_corollary_matches_general_formula() {
        use num_integer::Integer;
        for b in [5u64, 6, 7, 10, 13, 14, 15, 21, 22, 26, 30, 33] {
            for a in 2..b {
                let general = line_from_parts(b, a, 1).c;
                let corollary = b - (b - 1) / a - a.gcd(&b);
                assert_eq!(general, corollary, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn a_equals_two_specialization() {
        for b in [5u64, 6, 7, 10, 11, 21, 1001] {
            let line = complexity_line(&pair(2, b));
            assert_eq!(line.c, (b - 1) / 2);
            assert_eq!(line.d, b - 1 - (b - 1) / 2);
        }
    }

    #[test]
    fn empirical_counts_on_explicit_prefix() {
        let digits = vec![2, 4, 8, 1, 3, 6, 1, 2, 5, 1];
        assert_eq!(distinct_windows(&digits, 1).unwrap(), 7);
        assert_eq!(distinct_windows(&digits, 2).unwrap(), 9);
        // A window as long as the whole prefix is unique.
        assert_eq!(distinct_windows(&digits, 10).unwrap(), 1);
        assert!(matches!(
            distinct_windows(&digits, 11),
            Err(Error::BlockLongerThanPrefix { n: 11, prefix_len: 10 })
        ));
    }

    #[test]
    fn empirical_complexity_matches_formula_on_long_prefix() {
        let a = Rational::from_integer(2).unwrap();
        let prefix = generate_prefix(&a, 10, 20_000, Mode::Adaptive).unwrap();
        let line = complexity_line(&pair(2, 10));
        for n in 1..=6 {
            assert_eq!(
                empirical_complexity(&prefix, n as usize).unwrap(),
                line.eval(n)
            );
        }
    }

    #[test]
    fn empirical_profile_converges_and_matches_formula() {
        let a = Rational::from_integer(2).unwrap();
        let profile =
            empirical_profile(&a, 10, 5, 2_000, PrefixPolicy::Converged, Mode::Adaptive).unwrap();
        let line = complexity_line(&pair(2, 10));
        let expected: Vec<(u64, u64)> = (1..=5).map(|n| (n, line.eval(n))).collect();
        assert_eq!(profile.points, expected);
        match profile.method {
            ProfileMethod::Empirical {
                prefix_length,
                converged,
            } => {
                assert!(converged);
                assert!(prefix_length >= 4_000);
            }
            other => panic!("unexpected method {other:?}"),
        }
    }

    #[test]
    fn fixed_profile_reports_its_prefix_and_no_convergence_claim() {
        let a = Rational::from_integer(2).unwrap();
        let profile =
            empirical_profile(&a, 10, 3, 100, PrefixPolicy::Fixed, Mode::Exact).unwrap();
        assert_eq!(
            profile.method,
            ProfileMethod::Empirical {
                prefix_length: 100,
                converged: false
            }
        );
        assert_eq!(profile.points.len(), 3);
    }

    #[test]
    fn convergence_budget_is_finite() {
        // Base 101 has a hundred distinct digits; 2^n reveals new ones far
        // beyond 2·2⁶ = 128 terms, so a tiny initial prefix cannot settle.
        let a = Rational::from_integer(2).unwrap();
        let err =
            empirical_profile(&a, 101, 1, 2, PrefixPolicy::Converged, Mode::Adaptive).unwrap_err();
        assert!(matches!(
            err,
            Error::ConvergenceBudgetExceeded { final_prefix_len: 128 }
        ));
    }

    #[test]
    fn profile_rejects_prefix_shorter_than_longest_block() {
        let a = Rational::from_integer(2).unwrap();
        let err = empirical_profile(&a, 10, 50, 10, PrefixPolicy::Fixed, Mode::Exact).unwrap_err();
        assert!(matches!(err, Error::PrefixTooShort { .. }));
    }

    #[test]
    fn extreme_bounds_reference_values() {
        let (lower, upper) = extreme_bounds(10).unwrap();
        assert_eq!((lower.c, lower.d), (4, 5));
        assert_eq!((upper.c, upper.d), (9, 0));
        let (lower, _) = extreme_bounds(5).unwrap();
        assert_eq!((lower.c, lower.d), (2, 2));
        let (lower, _) = extreme_bounds(7).unwrap();
        assert_eq!((lower.c, lower.d), (3, 3));
    }

    #[test]
    fn extreme_bounds_validate_the_base() {
        assert!(matches!(
            extreme_bounds(4),
            Err(Error::BaseTooSmall { b: 4, min: 5 })
        ));
        assert!(matches!(
            extreme_bounds(12),
            Err(Error::BaseNotSquarefree { b: 12 })
        ));
    }

    #[test]
    fn asymptotic_slope_limit_values() {
        assert_eq!(
            asymptotic_slope_limit(2),
            Rational::new(1u32.into(), 2u32.into()).unwrap()
        );
        assert_eq!(
            asymptotic_slope_limit(5),
            Rational::new(4u32.into(), 5u32.into()).unwrap()
        );
    }

    #[test]
    fn slope_ratio_approaches_the_limit() {
        // b = 9970 = 2·5·997 is squarefree; c_{2,b}/b is within 1/b of 1/2,
        // i.e. |2c − b| ≤ 2 as an exact integer statement.
        let b = 9970u64;
        assert!(crate::number::is_squarefree(b));
        let line = complexity_line(&pair(2, b));
        assert!((2 * line.c).abs_diff(b) <= 2);
    }

    #[test]
    fn average_slope_reference_values() {
        let expect = |n: u64, d: u64| Rational::new(n.into(), d.into()).unwrap();
        assert_eq!(average_slope(5).unwrap(), expect(8, 3));
        assert_eq!(average_slope(7).unwrap(), expect(22, 5));
        assert_eq!(average_slope(10).unwrap(), expect(50, 8));
        assert!(matches!(
            average_slope(12),
            Err(Error::BaseNotSquarefree { b: 12 })
        ));
    }

    #[test]
    fn average_slope_deficit_is_positive_and_small() {
        for b in [10u64, 30, 105, 1001, 9970] {
            let mean = average_slope(b).unwrap().to_f64();
            let deficit = b as f64 - mean;
            let tau = crate::number::factorize(b).divisor_count() as f64;
            assert!(deficit > 0.0, "b={b}");
            assert!(deficit <= 2.0 * ((b as f64).ln() + tau), "b={b}");
        }
    }
}
