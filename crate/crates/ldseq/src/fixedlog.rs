//! Certified fixed-point base-b logarithms for the adaptive digit path.
//!
//! `frac(log_b(x))` is extracted bit by bit: squaring `x` doubles the
//! logarithm, and whether the doubled logarithm crossed 1 is decided by one
//! comparison against `b`. Running the squarings on integer *intervals* with
//! guard bits makes every emitted bit certain or forces a retry at higher
//! precision. If `x` is an exact power coincidence (`x = b^{p/q}`), some
//! comparison is an exact tie no interval can settle — callers must rule
//! that case out (or use [`log_digit_fixed`], which special-cases it).

use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::One;

use crate::number::factorize;

/// Fractional bits in the returned fixed-point values.
pub(crate) const FRAC_BITS: u32 = 128;

/// `floor(frac(log_b(num/den)) · 2¹²⁸)` for `1 ≤ num/den < b`.
///
/// The value is the true binary expansion truncated, so the represented
/// number is within one ulp below the real logarithm. The input must not be
/// a rational power coincidence with `b` (callers check), except for the
/// harmless exact case `num = den` which returns 0.
pub(crate) fn frac_log_fixed(num: &BigUint, den: &BigUint, b: u64) -> u128 {
    debug_assert!(b >= 2);
    debug_assert!(num >= den, "input below 1");
    debug_assert!(num < &(den * b), "input not below b");
    let mut guard_bits = 64u32;
    loop {
        if let Some(bits) = try_extract(num, den, b, FRAC_BITS + guard_bits) {
            return bits;
        }
        guard_bits *= 2;
    }
}

/// One extraction attempt at working precision `f`; `None` if some
/// comparison straddles at this precision.
fn try_extract(num: &BigUint, den: &BigUint, b: u64, f: u32) -> Option<u128> {
    let one = BigUint::one() << f;
    let cap = &one * b; // b·2^f
    // y ∈ [lo, hi]·2^-f, certified
    let mut lo = (num << f) / den;
    let mut hi = &lo + 1u32;
    let mut acc: u128 = 0;
    for _ in 0..FRAC_BITS {
        acc <<= 1;
        // y ← y², interval with outward rounding
        lo = (&lo * &lo) >> f;
        hi = (&hi * &hi + &one - 1u32) >> f;
        if lo >= cap {
            // certainly crossed b: bit 1, renormalize
            acc |= 1;
            lo /= b;
            hi = (hi + (b - 1)) / b;
        } else if hi >= cap {
            return None; // interval straddles b
        }
    }
    Some(acc)
}

/// `floor(log_b(d) · 2¹²⁸)` for a digit `1 ≤ d < b`: the partition point
/// below which the mantissa has leading digit `< d`.
///
/// Unlike a general `x`, a digit can be an exact power coincidence with the
/// base (`d = 8`, `b = 16` gives `log = 3/4`); that case is computed from
/// the exponent ratio instead of digit extraction.
pub(crate) fn log_digit_fixed(d: u64, b: u64) -> u128 {
    debug_assert!(d >= 1 && d < b);
    if d == 1 {
        return 0;
    }
    if let Some((p, q)) = power_ratio(d, b) {
        // log_b d = p/q exactly; floor(p·2¹²⁸/q) without overflow
        let v = (BigUint::from(p) << FRAC_BITS) / q;
        let mut out: u128 = 0;
        for (i, limb) in v.iter_u64_digits().enumerate().take(2) {
            out |= u128::from(limb) << (64 * i);
        }
        return out;
    }
    frac_log_fixed(&BigUint::from(d), &BigUint::one(), b)
}

/// If `d = b^(p/q)` for positive integers, return the reduced `(p, q)`.
fn power_ratio(d: u64, b: u64) -> Option<(u64, u64)> {
    debug_assert!(d >= 2);
    let mut rest = d;
    let mut ratio: Option<(u64, u64)> = None;
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for (p, e) in factorize(b).factors() {
        let mut v = 0u64;
        while rest % p == 0 {
            rest /= p;
            v += 1;
        }
        pairs.push((v, u64::from(e)));
        if ratio.is_none() && v > 0 {
            ratio = Some((v, u64::from(e)));
        }
    }
    if rest != 1 {
        return None; // a prime outside b's support
    }
    let (v0, e0) = ratio?;
    if pairs.iter().all(|&(v, e)| v * e0 == v0 * e) {
        let g = gcd_u64(v0, e0);
        Some((v0 / g, e0 / g))
    } else {
        None
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference value via careful floating point: only used to sanity-check
    /// the integer extraction in tests, never in library code.
    fn approx(x: f64, b: u64) -> f64 {
        x.ln() / (b as f64).ln()
    }

    #[test]
    fn extraction_matches_float_reference() {
        for (num, den, b) in [
            (2u64, 1u64, 10u64),
            (3, 2, 10),
            (9, 8, 10),
            (7, 1, 12),
            (29, 17, 30),
        ] {
            let got = frac_log_fixed(&BigUint::from(num), &BigUint::from(den), b);
            let want = approx(num as f64 / den as f64, b);
            let got_f = got as f64 / 2f64.powi(128);
            assert!(
                (got_f - want).abs() < 1e-12,
                "log_{b}({num}/{den}): fixed {got_f} vs float {want}"
            );
        }
    }

    #[test]
    fn exact_one_is_zero() {
        assert_eq!(frac_log_fixed(&BigUint::one(), &BigUint::one(), 10), 0);
        assert_eq!(log_digit_fixed(1, 10), 0);
    }

    #[test]
    fn power_coincidence_digits() {
        // log_16 8 = 3/4 exactly
        assert_eq!(power_ratio(8, 16), Some((3, 4)));
        let v = log_digit_fixed(8, 16);
        assert_eq!(v, (3u128 << 126)); // 0.75 · 2^128
        // log_8 4 = 2/3: v = floor(2·2¹²⁸/3), so 3v ≤ 2¹²⁹ < 3v + 3
        assert_eq!(power_ratio(4, 8), Some((2, 3)));
        let v = BigUint::from(log_digit_fixed(4, 8));
        let three_v = &v * 3u32;
        let twice = BigUint::one() << 129;
        assert!(three_v <= twice && twice < three_v + 3u32);
        // not coincidences
        assert_eq!(power_ratio(3, 10), None);
        assert_eq!(power_ratio(6, 12), None);
    }

    #[test]
    fn truncation_is_one_sided() {
        // extracted value never exceeds the true logarithm
        let v = log_digit_fixed(2, 10);
        let exactish = 0.301_029_995_663_981_2_f64; // log10(2)
        let got = v as f64 / 2f64.powi(128);
        assert!(got <= exactish + 1e-15);
        assert!(got >= exactish - 1e-12);
    }
}
