//! Exact scalars: big rationals, integer square roots and values of the
//! form `q * sqrt(n)`.
//!
//! Every bound in this crate is a [`Surd`]. Two nonnegative surds compare
//! like their squares, and a square is an ordinary rational, so all order
//! questions reduce to big-integer cross-multiplication.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `floor(sqrt(n))`.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return domain(format!("isqrt of negative integer {n}"));
    }
    Ok(n.sqrt())
}

/// `ceil(sqrt(n))`.
pub fn ceil_sqrt(n: &BigInt) -> Result<BigInt> {
    let t = isqrt(n)?;
    if &(&t * &t) == n {
        Ok(t)
    } else {
        Ok(t + 1)
    }
}

pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    match isqrt(n) {
        Ok(t) => &(&t * &t) == n,
        Err(_) => false,
    }
}

/// Splits `n >= 1` as `a^2 * b` with `b` squarefree, by trial division.
pub fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if !n.is_positive() {
        return domain(format!("squarefree decomposition needs n >= 1, got {n}"));
    }
    let mut rest = n.clone();
    let mut square_root = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut exp = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            exp += 1;
        }
        if exp > 0 {
            square_root *= p.pow(exp / 2);
            if exp % 2 == 1 {
                free *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    // whatever is left is 1 or a prime
    free *= rest;
    Ok((square_root, free))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    Truncate,
    Round,
}

/// A nonnegative real `coeff * sqrt(radicand)` in canonical form.
///
/// The radicand is squarefree, and a zero coefficient always carries
/// radicand 1, so structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    coeff: Rational,
    radicand: BigInt,
}

impl Surd {
    pub fn new(coeff: Rational, radicand: BigInt) -> Result<Self> {
        if coeff.is_negative() {
            return domain(format!("surd coefficient must be nonnegative, got {coeff}"));
        }
        if radicand.is_negative() {
            return domain(format!("surd radicand must be nonnegative, got {radicand}"));
        }
        if coeff.is_zero() || radicand.is_zero() {
            return Ok(Self::zero());
        }
        let (outer, free) = squarefree_decompose(&radicand)?;
        Ok(Surd {
            coeff: coeff * Rational::from_integer(outer),
            radicand: free,
        })
    }

    pub fn zero() -> Self {
        Surd {
            coeff: Rational::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one()).expect("one is nonnegative")
    }

    pub fn rational(q: Rational) -> Result<Self> {
        Self::new(q, BigInt::one())
    }

    pub fn integer(n: u64) -> Self {
        Surd {
            coeff: Rational::from_integer(BigInt::from(n)),
            radicand: BigInt::one(),
        }
    }

    /// `sqrt(q)` for a nonnegative rational, using `sqrt(a/b) = sqrt(a*b)/b`.
    pub fn sqrt_of(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return domain(format!("square root of negative rational {q}"));
        }
        let den = q.denom().clone();
        let under = q.numer() * &den;
        Self::new(Rational::new(BigInt::one(), den), under)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeff.clone())
    }

    /// The exact square `coeff^2 * radicand`.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * Rational::from_integer(self.radicand.clone())
    }

    pub fn scale(&self, q: &Rational) -> Result<Self> {
        Self::new(&self.coeff * q, self.radicand.clone())
    }

    /// Decimal expansion with `digits` fractional digits.
    ///
    /// The value is `a/b * sqrt(n)`; `floor(10^D * value)` equals
    /// `floor(isqrt(a^2 * 10^(2D) * n) / b)`, so no floating point is involved.
    pub fn render(&self, digits: u32, mode: RenderMode) -> String {
        let a = self.coeff.numer();
        let b = self.coeff.denom();
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = match mode {
            RenderMode::Truncate => {
                let root = (a * a * &scale * &scale * &self.radicand).sqrt();
                root.div_floor(b)
            }
            RenderMode::Round => {
                // floor(value * 10^D + 1/2) = floor((floor(2 a 10^D sqrt n) + b) / 2b)
                let two_a = a * 2u32;
                let root = (&two_a * &two_a * &scale * &scale * &self.radicand).sqrt();
                (root + b).div_floor(&(b * 2u32))
            }
        };
        if digits == 0 {
            return scaled.to_string();
        }
        let (whole, frac) = scaled.div_rem(&scale);
        format!("{whole}.{:0>width$}", frac.to_string(), width = digits as usize)
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        let n = self.radicand.to_f64().unwrap_or(f64::NAN);
        c * n.sqrt()
    }
}

/// Exact real-order comparison of two surds.
pub fn surd_compare(x: &Surd, y: &Surd) -> Ordering {
    x.cmp(y)
}

pub fn render_decimal(x: &Surd, digits: u32, mode: RenderMode) -> String {
    x.render(digits, mode)
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.radicand == other.radicand {
            return self.coeff.cmp(&other.coeff);
        }
        self.square().cmp(&other.square())
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Surd {
    type Output = Surd;

    fn mul(self, rhs: &Surd) -> Surd {
        Surd::new(&self.coeff * &rhs.coeff, &self.radicand * &rhs.radicand)
            .expect("product of nonnegative surds is nonnegative")
    }
}

impl Mul for Surd {
    type Output = Surd;

    fn mul(self, rhs: Surd) -> Surd {
        &self * &rhs
    }
}

impl From<Rational> for Surd {
    /// Panics on a negative rational.
    fn from(q: Rational) -> Self {
        Surd::rational(q).expect("nonnegative rational")
    }
}

/// Canonical exact string: `p`, `p/q`, `sqrt(n)`, `p/q*sqrt(n)`.
impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

impl FromStr for Surd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let s = s.trim();
        let parse_sqrt = |t: &str| -> Result<BigInt> {
            t.strip_prefix("sqrt(")
                .and_then(|t| t.strip_suffix(')'))
                .and_then(|t| t.trim().parse::<BigInt>().ok())
                .ok_or_else(bad)
        };
        let parse_rational = |t: &str| -> Result<Rational> {
            t.trim().parse::<Rational>().map_err(|_| bad())
        };
        let (coeff, radicand) = match s.split_once('*') {
            Some((c, r)) => (parse_rational(c)?, parse_sqrt(r.trim())?),
            None if s.starts_with("sqrt(") => (Rational::one(), parse_sqrt(s)?),
            None => (parse_rational(s)?, BigInt::one()),
        };
        Surd::new(coeff, radicand).map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&big(0)).unwrap(), big(0));
        assert_eq!(isqrt(&big(49)).unwrap(), big(7));
        assert_eq!(isqrt(&big(3535)).unwrap(), big(59));
        assert!(matches!(isqrt(&big(-1)), Err(Error::Domain(_))));
    }

    #[test]
    fn isqrt_exhaustive_to_a_million() {
        for n in 0u64..=1_000_000 {
            let t = isqrt_u64(n);
            assert!(t * t <= n && n < (t + 1) * (t + 1), "n = {n}");
        }
    }

    #[test]
    fn ceil_sqrt_examples() {
        assert_eq!(ceil_sqrt(&big(60)).unwrap(), big(8));
        assert_eq!(ceil_sqrt(&big(64)).unwrap(), big(8));
        assert_eq!(ceil_sqrt(&big(3535)).unwrap(), big(60));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_decompose(&big(1)).unwrap(), (big(1), big(1)));
        assert_eq!(squarefree_decompose(&big(12)).unwrap(), (big(2), big(3)));
        assert_eq!(squarefree_decompose(&big(2340)).unwrap(), (big(6), big(65)));
        assert!(squarefree_decompose(&big(0)).is_err());
        let s = Surd::sqrt_of(&ratio(180, 13)).unwrap();
        assert_eq!(s.coeff(), &ratio(6, 13));
        assert_eq!(s.radicand(), &big(65));
    }

    #[test]
    fn zero_is_canonical() {
        let z = Surd::new(int(0), big(7)).unwrap();
        assert_eq!(z, Surd::zero());
        assert_eq!(Surd::new(int(3), big(0)).unwrap(), Surd::zero());
        assert!(Surd::new(int(-1), big(2)).is_err());
    }

    #[test]
    fn compare_examples() {
        let three_halves = Surd::from(ratio(3, 2));
        let generic = Surd::new(ratio(1, 5), big(60)).unwrap();
        assert_eq!(surd_compare(&three_halves, &generic), Ordering::Less);
        assert_eq!(surd_compare(&generic, &generic), Ordering::Equal);
        let a = Surd::from(ratio(59, 101));
        let b = Surd::from(ratio(35, 60));
        assert_eq!(surd_compare(&a, &b), Ordering::Greater);
    }

    #[test]
    fn render_examples() {
        let s = Surd::sqrt_of(&ratio(180, 13)).unwrap();
        assert_eq!(render_decimal(&s, 2, RenderMode::Truncate), "3.72");
        assert_eq!(render_decimal(&Surd::one(), 3, RenderMode::Truncate), "1.000");
        let s = Surd::sqrt_of(&ratio(42, 65)).unwrap();
        assert_eq!(render_decimal(&s, 3, RenderMode::Truncate), "0.803");
        assert_eq!(render_decimal(&s, 3, RenderMode::Round), "0.804");
        assert_eq!(render_decimal(&Surd::from(ratio(3, 2)), 0, RenderMode::Truncate), "1");
        assert_eq!(render_decimal(&Surd::from(ratio(1, 200)), 2, RenderMode::Round), "0.01");
        assert_eq!(render_decimal(&Surd::from(ratio(1, 201)), 2, RenderMode::Round), "0.00");
    }

    #[test]
    fn display_and_parse() {
        let s = Surd::sqrt_of(&ratio(180, 13)).unwrap();
        assert_eq!(s.to_string(), "6/13*sqrt(65)");
        assert_eq!(Surd::sqrt_of(&int(3)).unwrap().to_string(), "sqrt(3)");
        assert_eq!(Surd::from(ratio(3, 2)).to_string(), "3/2");
        assert_eq!("2*sqrt(12)".parse::<Surd>().unwrap().to_string(), "4*sqrt(3)");
        assert!("sqrt(-3)".parse::<Surd>().is_err());
        assert!("abc".parse::<Surd>().is_err());
    }

    #[test]
    fn product_canonicalizes() {
        let p = Surd::sqrt_of(&int(6)).unwrap() * Surd::sqrt_of(&int(10)).unwrap();
        assert_eq!(p.coeff(), &int(2));
        assert_eq!(p.radicand(), &big(15));
    }

    #[test]
    fn mediant_is_at_least_the_smaller_ratio() {
        for a in 1..30i64 {
            for c in 1..30i64 {
                for (b, d) in [(1, 1), (3, 7), (11, 2), (5, 9)] {
                    let mediant = ratio(a + b, c + d);
                    assert!(mediant >= ratio(a, c).min(ratio(b, d)));
                }
            }
        }
    }

    fn arb_surd() -> impl Strategy<Value = Surd> {
        (0i64..500, 1i64..200, 0i64..2000)
            .prop_map(|(p, q, n)| Surd::new(ratio(p, q), BigInt::from(n)).unwrap())
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent(s in arb_surd()) {
            let again = Surd::new(s.coeff().clone(), s.radicand().clone()).unwrap();
            prop_assert_eq!(&again, &s);
            let parsed: Surd = s.to_string().parse().unwrap();
            prop_assert_eq!(parsed, s);
        }

        #[test]
        fn order_matches_squares(x in arb_surd(), y in arb_surd()) {
            prop_assert_eq!(surd_compare(&x, &y), x.square().cmp(&y.square()));
        }

        #[test]
        fn truncation_is_within_one_ulp_below(x in arb_surd(), digits in 1u32..8) {
            let text = x.render(digits, RenderMode::Truncate);
            let shown: Rational = {
                let (w, f) = text.split_once('.').unwrap();
                let den = BigInt::from(10u32).pow(digits);
                Rational::new(w.parse::<BigInt>().unwrap() * &den + f.parse::<BigInt>().unwrap(), den)
            };
            let step = Rational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
            prop_assert!(Surd::from(shown.clone()) <= x);
            prop_assert!(x < Surd::from(shown + step));
        }

        #[test]
        fn mediant_property(a in 1i64..10_000, c in 1i64..10_000, b in 1i64..10_000, d in 1i64..10_000) {
            prop_assert!(ratio(a + b, c + d) >= ratio(a, c).min(ratio(b, d)));
        }
    }
}
