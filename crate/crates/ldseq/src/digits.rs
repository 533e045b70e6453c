//! Exact generation of the leading-digit sequence `S_{a,b} = (D_b(aⁿ))ₙ`.
//!
//! The exact path iterates the normalized mantissa of `aⁿ` as a big
//! rational. The adaptive path tracks `frac(n·log_b a)` in certified 128-bit
//! fixed point and falls back to an exact single-term computation for terms
//! that land within the error band of a digit boundary, so both modes
//! produce identical output by construction.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fixedlog;
use crate::number::{
    canonicalize, factorize, is_rational_power_of, normalize_into_base, CanonicalForm, Rational,
};

/// A base-b leading digit, always in `[1, b−1]`.
pub type Digit = u64;

/// How a digit prefix is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Big-rational mantissa iteration; O(n²) word operations in total.
    #[default]
    Exact,
    /// Certified fixed-point rotation with exact fallback; near-linear time.
    Adaptive,
}

/// A finite prefix of `S_{a,b}`: the digits of `a^start, a^(start+1), …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSequencePrefix {
    b: u64,
    start_exponent: u64,
    digits: Vec<Digit>,
}

impl DigitSequencePrefix {
    pub fn base(&self) -> u64 {
        self.b
    }

    pub fn start_exponent(&self) -> u64 {
        self.start_exponent
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

impl fmt::Display for DigitSequencePrefix {
    /// Contiguous digit string for `b ≤ 10`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
        } else {
            for (i, d) in self.digits.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{d}")?;
            }
        }
        Ok(())
    }
}

/// `aⁿ` scaled by the unique power of `b` into `[1, b)`, as an exact reduced
/// fraction. Its floor is the leading digit of `aⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedMantissa {
    num: BigUint,
    den: BigUint,
}

impl NormalizedMantissa {
    /// Mantissa of `aⁿ` computed directly by binary exponentiation.
    pub fn of_power(a: &Rational, b: u64, n: u64) -> Result<Self> {
        canonicalize(a, b)?; // reject a = b^k and b < 2 up front
        let (_, num, den) = normalize_into_base(big_pow(a.num(), n), big_pow(a.den(), n), b);
        Ok(NormalizedMantissa { num, den })
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    /// The leading digit `⌊num/den⌋`.
    pub fn digit(&self) -> Digit {
        (&self.num / &self.den).to_u64().expect("digit fits in u64")
    }

    /// One step along the sequence: multiply by `r/s`, then divide by `b`
    /// iff the product left `[1, b)` (at most once, since `r/s < b`).
    /// Returns the digit of the new mantissa.
    pub fn advance(&mut self, canon: &CanonicalForm, b: u64) -> Digit {
        self.num *= &canon.r;
        self.den *= &canon.s;
        if self.num >= &self.den * b {
            self.den *= b;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num /= &g;
            self.den /= &g;
        }
        self.digit()
    }
}

pub(crate) fn big_pow(base: &BigUint, mut exp: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Leading digit of `aⁿ` in base `b ≥ 3`.
pub fn leading_digit(a: &Rational, b: u64, n: u64) -> Result<Digit> {
    if b < 3 {
        return Err(Error::BaseTooSmall { b, min: 3 });
    }
    Ok(NormalizedMantissa::of_power(a, b, n)?.digit())
}

/// First `len` digits of `S_{a,b}` starting at exponent 1.
///
/// `b` need not be squarefree here; only `b ≥ 3` and `a` not an integral
/// power of `b` are required.
pub fn generate_prefix(a: &Rational, b: u64, len: usize, mode: Mode) -> Result<DigitSequencePrefix> {
    generate_prefix_from(a, b, 1, len, mode)
}

/// As [`generate_prefix`], but starting at an arbitrary exponent (the
/// five-block decomposition of the doubling sequence wants exponent 0).
pub fn generate_prefix_from(
    a: &Rational,
    b: u64,
    start_exponent: u64,
    len: usize,
    mode: Mode,
) -> Result<DigitSequencePrefix> {
    if b < 3 {
        return Err(Error::BaseTooSmall { b, min: 3 });
    }
    let digits = match mode {
        Mode::Exact => exact_digits(a, b, start_exponent, len)?,
        Mode::Adaptive => adaptive_digits(a, b, start_exponent, len)?,
    };
    Ok(DigitSequencePrefix {
        b,
        start_exponent,
        digits,
    })
}

fn exact_digits(a: &Rational, b: u64, start_exponent: u64, len: usize) -> Result<Vec<Digit>> {
    let canon = canonicalize(a, b)?;
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return Ok(out);
    }
    let mut m = NormalizedMantissa::of_power(a, b, start_exponent)?;
    // The mantissa numerator always divides a power of r and the denominator
    // a power of s·b with gcd(r,s) = 1, so the only primes that can ever be
    // shared are those of gcd(r, b): reduction never needs a big-integer gcd.
    let shared: Vec<BigUint> = {
        let g = canon.r.gcd(&BigUint::from(b)).to_u64().expect("gcd ≤ b");
        factorize(g).primes().map(BigUint::from).collect()
    };
    let s_is_one = canon.s.is_one();
    let big_b = BigUint::from(b);
    out.push(m.digit());
    while out.len() < len {
        m.num *= &canon.r;
        if !s_is_one {
            m.den *= &canon.s;
        }
        if m.num >= &m.den * &big_b {
            m.den *= &big_b;
        }
        for p in &shared {
            loop {
                let (qn, rn) = m.num.div_rem(p);
                if !rn.is_zero() {
                    break;
                }
                let (qd, rd) = m.den.div_rem(p);
                if !rd.is_zero() {
                    break;
                }
                m.num = qn;
                m.den = qd;
            }
        }
        out.push(m.digit());
    }
    Ok(out)
}

fn adaptive_digits(a: &Rational, b: u64, start_exponent: u64, len: usize) -> Result<Vec<Digit>> {
    let canon = canonicalize(a, b)?;
    if is_rational_power_of(a, b)? {
        // Rational rotation number (possible only for non-squarefree b):
        // the sequence is periodic and cheap, and the log extraction below
        // could never certify its bits. Run the exact path instead.
        return exact_digits(a, b, start_exponent, len);
    }
    // φ_n = frac(n·α) in 128 fractional bits; the wrapping multiply is exact
    // mod 1, so the only error is α's one truncated ulp, amplified n-fold.
    let alpha = fixedlog::frac_log_fixed(&canon.r, &canon.s, b);
    let points: Vec<u128> = (2..b).map(|d| fixedlog::log_digit_fixed(d, b)).collect();
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let n = start_exponent + i as u64;
        let phi = alpha.wrapping_mul(u128::from(n));
        // partition points are one more truncated ulp low; pad by 2
        let eps = u128::from(n).saturating_add(2);
        let idx = points.partition_point(|&p| p <= phi);
        let dist_down = if idx == 0 { phi } else { phi - points[idx - 1] };
        let dist_up = if idx == points.len() {
            0u128.wrapping_sub(phi) // distance up to 1 ≡ 2¹²⁸
        } else {
            points[idx] - phi
        };
        if dist_down <= eps || dist_up <= eps {
            // too close to a boundary to certify: settle the term exactly
            out.push(NormalizedMantissa::of_power(a, b, n)?.digit());
        } else {
            out.push(idx as Digit + 1);
        }
    }
    Ok(out)
}
