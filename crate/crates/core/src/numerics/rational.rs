//! Exact rationals over arbitrary-precision integers, their gcd, and
//! continued-fraction approximation of floats.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A rational number in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d: BigInt = denom.into();
        if d.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    /// The exact value of a finite float.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The integer value, if this rational is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl std::ops::$tr for &Rational {
            type Output = Rational;

            fn $method(self, rhs: &Rational) -> Rational {
                Rational(std::ops::$tr::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not a rational literal: {s:?}"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(p, q)))
    }
}

/// The continued-fraction convergent of `x` with the smallest denominator
/// satisfying `|x - p/q| <= tolerance` and `q <= max_denominator`.
///
/// Convergents are generated from the exact binary value of `x`, so the
/// expansion terminates and no floating-point drift enters the terms.
pub fn rationalize(x: f64, tolerance: f64, max_denominator: u64) -> Result<Rational> {
    if !(tolerance > 0.0) || max_denominator == 0 {
        return Err(Error::InvalidArgument(
            "tolerance must be positive and max_denominator at least 1".into(),
        ));
    }
    let reject = || Error::NoRationalWithinTolerance {
        value: x,
        tolerance,
        max_denominator,
    };
    let target = BigRational::from_float(x).ok_or_else(reject)?;
    let tol = BigRational::from_float(tolerance).ok_or_else(reject)?;
    let qmax = BigInt::from(max_denominator);

    // Convergent recurrences h_n = a_n h_{n-1} + h_{n-2}, k_n likewise.
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    loop {
        let a = rest.floor().to_integer();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > qmax {
            return Err(reject());
        }
        let candidate = BigRational::new(h_next.clone(), k_next.clone());
        if (&target - &candidate).abs() <= tol {
            return Ok(Rational(candidate));
        }
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return Err(reject());
        }
        rest = frac.recip();
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Largest positive rational `g` such that every `x / g` is an integer.
///
/// Signs are ignored and zero entries impose no constraint.
pub fn rational_gcd(xs: &[Rational]) -> Result<Rational> {
    let mut numer = BigInt::zero();
    let mut denom = BigInt::one();
    let mut any = false;
    for x in xs.iter().filter(|x| !x.is_zero()) {
        any = true;
        numer = numer.gcd(x.numer());
        denom = denom.lcm(x.denom());
    }
    if !any {
        return Err(Error::AllZero);
    }
    Ok(Rational(BigRational::new(numer, denom)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let x = r(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!("-6/4".parse::<Rational>().unwrap(), x);
        assert_eq!("7".parse::<Rational>().unwrap(), r(7, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn rationalize_examples() {
        assert_eq!(rationalize(0.25, 1e-9, 1_000_000).unwrap(), r(1, 4));
        assert_eq!(rationalize(0.333333333, 1e-6, 1_000_000).unwrap(), r(1, 3));
        assert!(matches!(
            rationalize(2f64.sqrt(), 1e-12, 1000),
            Err(Error::NoRationalWithinTolerance { .. })
        ));
        assert_eq!(rationalize(-2.5, 1e-12, 10).unwrap(), r(-5, 2));
        assert_eq!(rationalize(0.0, 1e-12, 1).unwrap(), r(0, 1));
    }

    #[test]
    fn rationalize_rejects_bad_arguments() {
        assert!(rationalize(1.0, 0.0, 10).is_err());
        assert!(rationalize(1.0, 1e-9, 0).is_err());
        assert!(rationalize(f64::NAN, 1e-9, 10).is_err());
    }

    /// Brute force: smallest q whose nearest p/q lies within the tolerance.
    fn smallest_denominator_oracle(x: f64, tol: f64, qmax: i64) -> Option<(i64, i64)> {
        (1..=qmax).find_map(|q| {
            let p = (x * q as f64).round() as i64;
            ((x - p as f64 / q as f64).abs() <= tol).then_some((p, q))
        })
    }

    #[test]
    fn continued_fraction_oracle_for_third() {
        // 0.333333333 = [0; 3, 333333333], convergents 0/1, 1/3, ...
        let (p, q) = smallest_denominator_oracle(0.333333333, 1e-6, 1000).unwrap();
        assert_eq!((p, q), (1, 3));
    }

    #[test]
    fn gcd_examples() {
        let ints: Vec<Rational> = [0, 7, 24, 51, 88].iter().map(|&v| r(v, 1)).collect();
        assert_eq!(rational_gcd(&ints).unwrap(), r(1, 1));
        assert_eq!(rational_gcd(&[r(0, 1), r(1, 2), r(1, 1)]).unwrap(), r(1, 2));
        assert_eq!(rational_gcd(&[r(3, 1), r(3, 1), r(3, 1)]).unwrap(), r(3, 1));
        assert_eq!(rational_gcd(&[r(-4, 3), r(2, 1)]).unwrap(), r(2, 3));
        assert!(matches!(rational_gcd(&[r(0, 1), r(0, 5)]), Err(Error::AllZero)));
    }

    /// Enumerate candidates 1/d, 2/d, ... on a grid and keep the largest that
    /// divides every input; independent of the gcd/lcm identity.
    fn gcd_by_enumeration(xs: &[(i64, i64)]) -> (i64, i64) {
        let mut best = (0i64, 1i64);
        for d in 1..=24i64 {
            for p in 1..=24i64 {
                let divides = xs.iter().all(|&(a, b)| (a * d) % (b * p) == 0);
                if divides && p * best.1 > best.0 * d {
                    best = (p, d);
                }
            }
        }
        let g = num_integer::gcd(best.0, best.1);
        (best.0 / g, best.1 / g)
    }

    #[test]
    fn gcd_matches_enumeration() {
        let cases: &[&[(i64, i64)]] = &[
            &[(0, 1), (1, 2), (1, 1)],
            &[(2, 3), (4, 9), (10, 3)],
            &[(3, 4), (9, 8)],
            &[(5, 6), (5, 4), (0, 1)],
        ];
        for xs in cases {
            let (p, q) = gcd_by_enumeration(xs);
            let rs: Vec<Rational> = xs.iter().map(|&(a, b)| r(a, b)).collect();
            assert_eq!(rational_gcd(&rs).unwrap(), r(p, q), "inputs {xs:?}");
        }
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rationalize_recovers_small_fractions(q in 1i64..=1000, p in -1_000_000i64..=1_000_000) {
            prop_assume!((p as f64 / q as f64).abs() <= 1e3);
            let exact = Rational::new(p, q).unwrap();
            let found = rationalize(p as f64 / q as f64, 1e-9, 1_000_000).unwrap();
            prop_assert_eq!(found, exact);
        }

        #[test]
        fn gcd_divides_every_entry(xs in prop::collection::vec((-500i64..500, 1i64..50), 1..8)) {
            let rs: Vec<Rational> = xs.iter().map(|&(p, q)| Rational::new(p, q).unwrap()).collect();
            prop_assume!(rs.iter().any(|r| !r.is_zero()));
            let g = rational_gcd(&rs).unwrap();
            for r in &rs {
                prop_assert!((r / &g).is_integer());
            }
        }
    }
}
