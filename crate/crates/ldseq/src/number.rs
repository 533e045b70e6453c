//! Naturals, positive rationals, and the canonical form `a = (r/s)·bᵏ`.
//!
//! Everything downstream — digit generation, the complexity formula, the
//! torus oracle — is phrased in terms of the canonical triple `(k, r, s)`,
//! so this module is where admissibility of a pair `(a, b)` is decided.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Prime factorization of a machine-sized positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: BTreeMap<u64, u32>,
}

impl Factorization {
    /// `(prime, exponent)` pairs, primes ascending.
    pub fn factors(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    /// Distinct prime factors, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.values().all(|&e| e == 1)
    }

    /// Number of divisors τ(n).
    pub fn divisor_count(&self) -> u64 {
        self.factors.values().map(|&e| u64::from(e) + 1).product()
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for (&p, &e) in &self.factors {
            let base = out.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                out.extend(base.iter().map(|d| d * pk));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Factor `n ≥ 1` by trial division up to √n.
pub fn factorize(mut n: u64) -> Factorization {
    assert!(n > 0, "cannot factor zero");
    let mut factors = BTreeMap::new();
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            *factors.entry(p).or_insert(0u32) += 1;
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *factors.entry(n).or_insert(0) += 1;
    }
    Factorization { factors }
}

/// True iff no square larger than 1 divides `n ≥ 1`.
pub fn is_squarefree(mut n: u64) -> bool {
    assert!(n > 0);
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// A positive rational kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational {
    num: BigUint,
    den: BigUint,
}

impl Rational {
    /// Reduce and validate; both parts must be nonzero.
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if num.is_zero() {
            return Err(Error::InvalidRational("numerator is zero"));
        }
        if den.is_zero() {
            return Err(Error::InvalidRational("denominator is zero"));
        }
        let g = num.gcd(&den);
        Ok(Rational {
            num: &num / &g,
            den: &den / &g,
        })
    }

    pub fn from_integer(n: u64) -> Result<Self> {
        Self::new(BigUint::from(n), BigUint::one())
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn recip(&self) -> Rational {
        Rational {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    /// Nearest floating-point value, for display and inexact comparisons.
    pub fn to_f64(&self) -> f64 {
        let num = self.num.to_f64().unwrap_or(f64::INFINITY);
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        num / den
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl Mul for &Rational {
    type Output = Rational;

    fn mul(self, rhs: &Rational) -> Rational {
        // cross-reduce first so the products stay small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        Rational {
            num: (&self.num / &g1) * (&rhs.num / &g2),
            den: (&self.den / &g2) * (&rhs.den / &g1),
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts exactly `INT` or `INT/INT` in base-10 digits — no signs, no
    /// whitespace, no floating point.
    fn from_str(s: &str) -> Result<Self> {
        fn int_part(s: &str) -> Result<BigUint> {
            if s.is_empty() {
                return Err(Error::InvalidRational("empty integer part"));
            }
            if !s.bytes().all(|c| c.is_ascii_digit()) {
                return Err(Error::InvalidRational("expected base-10 digits"));
            }
            BigUint::parse_bytes(s.as_bytes(), 10)
                .ok_or(Error::InvalidRational("expected base-10 digits"))
        }
        match s.split_once('/') {
            None => Rational::new(int_part(s)?, BigUint::one()),
            Some((n, d)) => Rational::new(int_part(n)?, int_part(d)?),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// The canonical triple of a ratio: `a = (r/s)·bᵏ` with `gcd(r,s) = 1` and
/// `1 < r/s < b`. Unique when it exists; fails to exist exactly for `a = bᵏ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub k: i64,
    pub r: BigUint,
    pub s: BigUint,
}

impl CanonicalForm {
    /// The in-range ratio `r/s` as a value.
    pub fn ratio(&self) -> Rational {
        Rational {
            num: self.r.clone(),
            den: self.s.clone(),
        }
    }
}

/// Scale `num/den` by the unique power `b^(-k)` that lands its value in
/// `[1, b)`. Returns `(k, num', den')` with `num'/den'` reduced, so
/// `num/den = (num'/den')·bᵏ`. Pure integer comparisons, no logarithms.
pub(crate) fn normalize_into_base(
    mut num: BigUint,
    mut den: BigUint,
    b: u64,
) -> (i64, BigUint, BigUint) {
    debug_assert!(b >= 2 && !num.is_zero() && !den.is_zero());
    let big_b = BigUint::from(b);
    let mut k: i64 = 0;
    while num < den {
        num *= &big_b;
        k -= 1;
    }
    loop {
        let hi = &den * &big_b;
        if num < hi {
            break;
        }
        den = hi;
        k += 1;
    }
    // Only b's primes can have become shared between the two sides.
    for p in factorize(b).primes() {
        let p = BigUint::from(p);
        loop {
            let (qn, rn) = num.div_rem(&p);
            if !rn.is_zero() {
                break;
            }
            let (qd, rd) = den.div_rem(&p);
            if !rd.is_zero() {
                break;
            }
            num = qn;
            den = qd;
        }
    }
    (k, num, den)
}

/// Compute the canonical form of `a` in base `b ≥ 2`.
pub fn canonicalize(a: &Rational, b: u64) -> Result<CanonicalForm> {
    if b < 2 {
        return Err(Error::BaseTooSmall { b, min: 2 });
    }
    let (k, r, s) = normalize_into_base(a.num.clone(), a.den.clone(), b);
    if r == s {
        // r/s = 1, i.e. a = b^k exactly (this includes a = 1 with k = 0)
        return Err(Error::IntegralPowerOfBase { k });
    }
    Ok(CanonicalForm { k, r, s })
}

/// Is `a = b^(p/q)` for some integers p, q? Such a rational must be `m/1` or
/// `1/m` with `m`'s prime support inside `b`'s and the exponent vectors
/// proportional, so only `b`'s primes are ever trial-divided — huge `a` is
/// cheap to test.
pub fn is_rational_power_of(a: &Rational, b: u64) -> Result<bool> {
    if b < 2 {
        return Err(Error::BaseTooSmall { b, min: 2 });
    }
    if a.is_one() {
        return Ok(true); // b^0
    }
    let side = if a.is_integer() {
        &a.num
    } else if a.num.is_one() {
        &a.den
    } else {
        return Ok(false);
    };
    let mut rest = side.clone();
    let mut valuations: Vec<(u64, u64)> = Vec::new(); // (v_p(side), v_p(b))
    for (p, e) in factorize(b).factors() {
        let p = BigUint::from(p);
        let mut v = 0u64;
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            v += 1;
        }
        valuations.push((v, u64::from(e)));
    }
    if !rest.is_one() {
        return Ok(false); // a prime outside b's support
    }
    let (v0, e0) = valuations[0];
    Ok(valuations.iter().all(|&(v, e)| v * e0 == v0 * e))
}

/// A pair `(a, b)` under the standing assumptions: `b` squarefree and at
/// least 5, `a` a positive rational that is not an integral power of `b`.
#[derive(Debug, Clone)]
pub struct AdmissiblePair {
    a: Rational,
    b: u64,
    canon: CanonicalForm,
    b_factors: Factorization,
}

impl AdmissiblePair {
    /// Validate the standing assumptions and precompute the canonical form.
    pub fn new(a: Rational, b: u64) -> Result<Self> {
        if b < 5 {
            return Err(Error::BaseTooSmall { b, min: 5 });
        }
        let b_factors = factorize(b);
        if !b_factors.is_squarefree() {
            return Err(Error::BaseNotSquarefree { b });
        }
        let canon = canonicalize(&a, b)?;
        Ok(AdmissiblePair {
            a,
            b,
            canon,
            b_factors,
        })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn base(&self) -> u64 {
        self.b
    }

    pub fn canon(&self) -> &CanonicalForm {
        &self.canon
    }

    pub fn base_factors(&self) -> &Factorization {
        &self.b_factors
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn factorize_small_numbers() {
        assert_eq!(factorize(1).factors().count(), 0);
        assert_eq!(
            factorize(12).factors().collect::<Vec<_>>(),
            vec![(2, 2), (3, 1)]
        );
        assert_eq!(factorize(97).factors().collect::<Vec<_>>(), vec![(97, 1)]);
        assert_eq!(
            factorize(1_000_000).factors().collect::<Vec<_>>(),
            vec![(2, 6), (5, 6)]
        );
    }

    #[test]
    fn divisors_and_tau() {
        let f = factorize(60);
        assert_eq!(f.divisor_count(), 12);
        assert_eq!(f.divisors(), vec![1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]);
        assert_eq!(factorize(1).divisors(), vec![1]);
    }

    #[test]
    fn squarefree_matches_factorization() {
        for n in 1..500u64 {
            assert_eq!(
                is_squarefree(n),
                factorize(n).is_squarefree(),
                "disagreement at {n}"
            );
        }
        assert!(is_squarefree(10));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(49));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(rat("6/4"), rat("3/2"));
        assert_eq!(rat("5").to_string(), "5");
        assert_eq!(rat("10/4").to_string(), "5/2");
        assert!("".parse::<Rational>().is_err());
        assert!("3/".parse::<Rational>().is_err());
        assert!("/3".parse::<Rational>().is_err());
        assert!("-3".parse::<Rational>().is_err());
        assert!("3.5".parse::<Rational>().is_err());
        assert!("3 /2".parse::<Rational>().is_err());
        assert!("0/5".parse::<Rational>().is_err());
        assert!("5/0".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
    }

    #[test]
    fn rational_ordering_and_mul() {
        assert!(rat("3/2") < rat("2"));
        assert!(rat("7/3") > rat("9/4"));
        assert_eq!(&rat("3/2") * &rat("4/9"), rat("2/3"));
        assert_eq!(rat("3/2").recip(), rat("2/3"));
    }

    #[test]
    fn canonical_form_examples() {
        // 9 = (3/2)·6
        let c = canonicalize(&rat("9"), 6).unwrap();
        assert_eq!((c.k, c.r.to_string(), c.s.to_string()), (1, "3".into(), "2".into()));
        // 1/7 = (10/7)·10⁻¹
        let c = canonicalize(&rat("1/7"), 10).unwrap();
        assert_eq!((c.k, c.r.to_string(), c.s.to_string()), (-1, "10".into(), "7".into()));
        // 2 is already in range
        let c = canonicalize(&rat("2"), 10).unwrap();
        assert_eq!((c.k, c.r.to_string(), c.s.to_string()), (0, "2".into(), "1".into()));
        // 1000000/7 = (10/7)·10⁵
        let c = canonicalize(&rat("1000000/7"), 10).unwrap();
        assert_eq!((c.k, c.r.to_string(), c.s.to_string()), (5, "10".into(), "7".into()));
    }

    #[test]
    fn canonical_form_rejects_powers_of_b() {
        assert_eq!(
            canonicalize(&rat("100"), 10),
            Err(Error::IntegralPowerOfBase { k: 2 })
        );
        assert_eq!(
            canonicalize(&rat("1"), 10),
            Err(Error::IntegralPowerOfBase { k: 0 })
        );
        assert_eq!(
            canonicalize(&rat("1/36"), 6),
            Err(Error::IntegralPowerOfBase { k: -2 })
        );
    }

    #[test]
    fn canonical_form_round_trips() {
        // a = (r/s)·b^k reconstructs the input exactly
        for (a, b) in [
            ("9", 6u64),
            ("1/7", 10),
            ("355/113", 30),
            ("123456789123456789/4", 7),
            ("1/99999999999", 12),
        ] {
            let a = rat(a);
            let c = canonicalize(&a, b).unwrap();
            let mut num = c.r.clone();
            let mut den = c.s.clone();
            if c.k >= 0 {
                num *= BigUint::from(b).pow(c.k as u32);
            } else {
                den *= BigUint::from(b).pow((-c.k) as u32);
            }
            assert_eq!(Rational::new(num, den).unwrap(), a, "round trip for {a} base {b}");
            // and the ratio is strictly inside (1, b)
            assert!(c.ratio() > rat("1"));
            assert!(c.ratio() < Rational::from_integer(b).unwrap());
        }
    }

    #[test]
    fn rational_power_detection() {
        assert!(is_rational_power_of(&rat("1"), 7).unwrap());
        assert!(is_rational_power_of(&rat("2"), 8).unwrap()); // 8^(1/3)
        assert!(is_rational_power_of(&rat("4"), 16).unwrap()); // 16^(1/2)
        assert!(is_rational_power_of(&rat("6"), 36).unwrap()); // 36^(1/2)
        assert!(is_rational_power_of(&rat("1/9"), 3).unwrap()); // 3^(-2)
        assert!(is_rational_power_of(&rat("27"), 9).unwrap()); // 9^(3/2)
        assert!(!is_rational_power_of(&rat("2"), 12).unwrap());
        assert!(!is_rational_power_of(&rat("3/2"), 10).unwrap());
        assert!(!is_rational_power_of(&rat("10"), 12).unwrap());
        assert!(!is_rational_power_of(&rat("6"), 12).unwrap());
    }

    #[test]
    fn admissibility_gates() {
        assert!(AdmissiblePair::new(rat("2"), 10).is_ok());
        assert_eq!(
            AdmissiblePair::new(rat("2"), 4).unwrap_err(),
            Error::BaseTooSmall { b: 4, min: 5 }
        );
        assert_eq!(
            AdmissiblePair::new(rat("2"), 12).unwrap_err(),
            Error::BaseNotSquarefree { b: 12 }
        );
        assert_eq!(
            AdmissiblePair::new(rat("100"), 10).unwrap_err(),
            Error::IntegralPowerOfBase { k: 2 }
        );
        // huge but admissible
        assert!(AdmissiblePair::new(rat("123456789123456789123456789/1024"), 10).is_ok());
    }
}
