//! The torus-set oracle: block complexity as the cardinality of an exact
//! set of circle points.
//!
//! Writing `α = log_b a`, the block structure of the digit sequence is
//! governed by the sets `L_k = {log_b d − i·α mod 1 : 1 ≤ d < b, 0 ≤ i < k}`
//! on the circle ℝ/ℤ, and `p(k) = |L_k|` whenever `α` is irrational. Every
//! element of `L_k` is the logarithm of a unique rational `w = d·sⁱ·bᵐ/rⁱ`
//! in `[1, b)`, so the set — and hence `p(k)` — is computed with integer
//! arithmetic only. This route does not assume `b` squarefree, which is what
//! lets it certify bases where the complexity is *not* linear from the start.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::digits::big_pow;
use crate::error::{Error, Result};
use crate::number::{canonicalize, is_rational_power_of, normalize_into_base, CanonicalForm, Rational};

/// A point of the circle ℝ/ℤ in exact normal form.
///
/// The point `log_b d − i·α (mod 1)` is represented by the unique reduced
/// fraction `w = d·sⁱ·bᵐ/rⁱ` with `1 ≤ w < b`; two `(d, i)` pairs name the
/// same circle point exactly when their normal forms are equal. Ordering is
/// by value, which for points in `[1, b)` is the circle order of the
/// corresponding logarithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    num: BigUint,
    den: BigUint,
}

impl TorusPoint {
    /// Normal form of `log_b d − i·α` for the canonical form `a = (r/s)·bᵏ`.
    pub fn new(d: u64, i: u64, canon: &CanonicalForm, b: u64) -> TorusPoint {
        let s_pow = big_pow(&canon.s, i);
        let r_pow = big_pow(&canon.r, i);
        TorusPoint::from_parts(d, &s_pow, &r_pow, b)
    }

    /// As [`TorusPoint::new`] but with `sⁱ` and `rⁱ` supplied by the caller,
    /// so a whole layer of points can share one pair of powers.
    fn from_parts(d: u64, s_pow: &BigUint, r_pow: &BigUint, b: u64) -> TorusPoint {
        let mut num = BigUint::from(d) * s_pow;
        let mut den = r_pow.clone();
        // gcd(r, s) = 1, so any common factor enters through d; the numbers
        // stay small enough here that a full gcd is the simplest way out.
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        let (_, num, den) = normalize_into_base(num, den, b);
        TorusPoint { num, den }
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    /// The represented rational `num/den ∈ [1, b)`.
    pub fn value(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone()).expect("normal form is positive")
    }
}

impl Ord for TorusPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for TorusPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TorusPoint {
    /// Always `num/den`, even for integers, so the form round-trips.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The exact set `L_k`, with its points sorted by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LkSet {
    k: u64,
    points: BTreeSet<TorusPoint>,
}

impl LkSet {
    pub fn k(&self) -> u64 {
        self.k
    }

    /// Points in increasing order of value.
    pub fn points(&self) -> impl Iterator<Item = &TorusPoint> {
        self.points.iter()
    }

    pub fn len(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// JSON rendering `{"k":K,"points":["num/den",...]}` with the points in
    /// increasing order of value, for debugging and golden tests.
    pub fn to_json(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        let _ = write!(out, "{{\"k\":{},\"points\":[", self.k);
        for (i, point) in self.points.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "\"{point}\"");
        }
        out.push_str("]}");
        out
    }
}

/// Validate the oracle's preconditions (`b ≥ 5`, `a` not a rational power
/// of `b`) and hand back the canonical form. Squarefreeness of `b` is *not*
/// required here.
fn checked_canonical(a: &Rational, b: u64) -> Result<CanonicalForm> {
    if b < 5 {
        return Err(Error::BaseTooSmall { b, min: 5 });
    }
    let canon = canonicalize(a, b)?;
    if is_rational_power_of(a, b)? {
        return Err(Error::RationalPowerOfBase);
    }
    Ok(canon)
}

/// The set `L_k` itself.
pub fn lk_set(a: &Rational, b: u64, k: u64) -> Result<LkSet> {
    let canon = checked_canonical(a, b)?;
    let mut points = BTreeSet::new();
    let mut s_pow = BigUint::one();
    let mut r_pow = BigUint::one();
    for i in 0..k {
        if i > 0 {
            s_pow *= &canon.s;
            r_pow *= &canon.r;
        }
        for d in 1..b {
            points.insert(TorusPoint::from_parts(d, &s_pow, &r_pow, b));
        }
    }
    Ok(LkSet { k, points })
}

/// `|L_k|`, the true block complexity `p(k)` for `k ≥ 1`.
pub fn lk_size(a: &Rational, b: u64, k: u64) -> Result<u64> {
    Ok(lk_set(a, b, k)?.len())
}

/// `|L_1|, …, |L_{k_max}|` computed incrementally in one pass.
pub fn lk_sizes(a: &Rational, b: u64, k_max: u64) -> Result<Vec<u64>> {
    let canon = checked_canonical(a, b)?;
    let mut points = BTreeSet::new();
    let mut sizes = Vec::with_capacity(k_max as usize);
    let mut s_pow = BigUint::one();
    let mut r_pow = BigUint::one();
    for i in 0..k_max {
        if i > 0 {
            s_pow *= &canon.s;
            r_pow *= &canon.r;
        }
        for d in 1..b {
            points.insert(TorusPoint::from_parts(d, &s_pow, &r_pow, b));
        }
        sizes.push(points.len() as u64);
    }
    Ok(sizes)
}

/// Alias of [`lk_size`], named for what it delivers: the exact `p(k)`,
/// valid for any `b ≥ 5` whether squarefree or not.
pub fn p_oracle(a: &Rational, b: u64, k: u64) -> Result<u64> {
    lk_size(a, b, k)
}
