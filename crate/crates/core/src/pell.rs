//! Fundamental solutions of `q^2 - k p^2 = 1` and the single-point bound
//! `k * p0 / q0` they induce on Picard-number-one surfaces.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{isqrt_u64, Rational};

/// The minimal solution `(p0, q0)`, `q0 > 1`, of `q^2 - k p^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub p0: BigInt,
    pub q0: BigInt,
    pub k: u64,
}

impl PellSolution {
    pub fn residual(&self) -> BigInt {
        &self.q0 * &self.q0 - BigInt::from(self.k) * &self.p0 * &self.p0
    }
}

/// Solves the Pell equation through the periodic continued fraction of
/// `sqrt(k)`; the first convergent `q/p` with `q^2 - k p^2 = 1` is minimal.
pub fn pell_fundamental(k: u64) -> Result<PellSolution> {
    if k <= 1 {
        return domain(format!("Pell equation needs k >= 2, got {k}"));
    }
    let a0 = isqrt_u64(k);
    if a0 * a0 == k {
        return domain(format!(
            "Pell equation q²−kp²=1 has only trivial solutions (k = {k} is a perfect square)"
        ));
    }
    let big_k = BigInt::from(k);
    // partial quotient state for (sqrt(k) + m) / d
    let (mut m, mut d, mut a) = (0u64, 1u64, a0);
    // convergents q_n / p_n
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::from(a0));
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    loop {
        if &q * &q - &big_k * &p * &p == BigInt::one() {
            return Ok(PellSolution { p0: p, q0: q, k });
        }
        m = d * a - m;
        d = (k - m * m) / d;
        a = (a0 + m) / d;
        let q_next = BigInt::from(a) * &q + &q_prev;
        let p_next = BigInt::from(a) * &p + &p_prev;
        q_prev = std::mem::replace(&mut q, q_next);
        p_prev = std::mem::replace(&mut p, p_next);
    }
}

/// `eps(X, L, 1) >= k * p0 / q0`, conjectured in general and proved when
/// `k = n^2 +- 1`.
pub fn szemberg_single_point_bound(k: u64) -> Result<Rational> {
    let sol = pell_fundamental(k)?;
    Ok(Rational::new(sol.p0 * BigInt::from(k), sol.q0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareShift {
    /// `k = n^2 - 1`
    MinusOne,
    /// `k = n^2 + 1`
    PlusOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FsstWitness {
    pub n: u64,
    pub form: SquareShift,
}

impl FsstWitness {
    pub fn formula(&self) -> &'static str {
        match self.form {
            SquareShift::MinusOne => "n²−1",
            SquareShift::PlusOne => "n²+1",
        }
    }
}

impl fmt::Display for FsstWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            SquareShift::MinusOne => write!(f, "n={} (n²−1)", self.n),
            SquareShift::PlusOne => write!(f, "n={} (n²+1)", self.n),
        }
    }
}

/// Whether `k = n^2 - 1` or `k = n^2 + 1` for some positive `n`, the cases
/// in which the single-point Pell bound is a theorem.
pub fn fsst_applicable(k: u64) -> Option<FsstWitness> {
    let below = isqrt_u64(k);
    if below >= 1 && below * below + 1 == k {
        return Some(FsstWitness { n: below, form: SquareShift::PlusOne });
    }
    let above = below + 1;
    if above * above - 1 == k {
        return Some(FsstWitness { n: above, form: SquareShift::MinusOne });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio, Surd};

    /// Scan q = 2, 3, ... for the first q with (q^2 - 1) / k a perfect square.
    fn brute_pell(k: u64, q_limit: u64) -> Option<(u64, u64)> {
        (2..=q_limit).find_map(|q| {
            let rest = q * q - 1;
            if rest % k != 0 {
                return None;
            }
            let p2 = rest / k;
            let p = isqrt_u64(p2);
            (p * p == p2 && p > 0).then_some((p, q))
        })
    }

    /// The cyclic (chakravala) method, an algorithm independent of continued
    /// fractions that lands on the fundamental solution. Returns `(p, q)`.
    fn chakravala(k: u64) -> (BigInt, BigInt) {
        use num_integer::Integer;
        use num_traits::Signed;
        let n = BigInt::from(k);
        let root = BigInt::from(isqrt_u64(k));
        let mut a: BigInt = root.clone() + 1;
        let mut b: BigInt = BigInt::one();
        let mut t: BigInt = &a * &a - &n;
        while t != BigInt::one() {
            let modulus: BigInt = t.abs();
            // m with a + b m = 0 (mod |t|), closest to sqrt(k) in |m^2 - k|
            let mut m0: BigInt = BigInt::zero();
            while !Integer::is_multiple_of(&(&a + &b * &m0), &modulus) {
                m0 += 1;
            }
            let base = &root - (&root - &m0).mod_floor(&modulus);
            let m = [base.clone(), &base + &modulus]
                .into_iter()
                .filter(|m| m.is_positive())
                .min_by_key(|m| (m * m - &n).abs())
                .unwrap();
            let next_a = (&a * &m + &n * &b) / &modulus;
            let next_b = (&a + &b * &m) / &modulus;
            t = (&m * &m - &n) / &t;
            a = next_a.abs();
            b = next_b.abs();
        }
        (b, a)
    }

    #[test]
    fn small_examples() {
        let s = pell_fundamental(2).unwrap();
        assert_eq!((s.p0, s.q0), (BigInt::from(2), BigInt::from(3)));
        let s = pell_fundamental(35).unwrap();
        assert_eq!((s.p0, s.q0), (BigInt::from(1), BigInt::from(6)));
        assert_eq!(brute_pell(35, 100), Some((1, 6)));
        assert!(pell_fundamental(4).is_err());
        assert!(pell_fundamental(1).is_err());
        assert!(pell_fundamental(0).is_err());
    }

    #[test]
    fn large_period_case() {
        let s = pell_fundamental(61).unwrap();
        assert_eq!(s.q0, "1766319049".parse::<BigInt>().unwrap());
        assert_eq!(s.p0, "226153980".parse::<BigInt>().unwrap());
        assert!(s.residual().is_one());
    }

    #[test]
    fn single_point_bounds() {
        assert_eq!(szemberg_single_point_bound(35).unwrap(), ratio(35, 6));
        assert_eq!(szemberg_single_point_bound(2).unwrap(), ratio(4, 3));
        assert_eq!(szemberg_single_point_bound(3).unwrap(), ratio(3, 2));
        assert!(szemberg_single_point_bound(9).is_err());
    }

    #[test]
    fn fsst_forms() {
        assert_eq!(fsst_applicable(35), Some(FsstWitness { n: 6, form: SquareShift::MinusOne }));
        assert_eq!(fsst_applicable(5), Some(FsstWitness { n: 2, form: SquareShift::PlusOne }));
        assert_eq!(fsst_applicable(2), Some(FsstWitness { n: 1, form: SquareShift::PlusOne }));
        assert_eq!(fsst_applicable(3), Some(FsstWitness { n: 2, form: SquareShift::MinusOne }));
        assert_eq!(fsst_applicable(7), None);
        assert_eq!(fsst_applicable(4), None);
    }

    #[test]
    fn identity_minimality_and_suboptimality_to_200() {
        for k in 2u64..=200 {
            if isqrt_u64(k).pow(2) == k {
                continue;
            }
            let s = pell_fundamental(k).unwrap();
            assert!(s.residual().is_one(), "k = {k}");
            if let Ok(q0) = u64::try_from(&s.q0) {
                if q0 <= 50_000_000 {
                    let (p, q) = brute_pell(k, q0).expect("brute force reaches q0");
                    assert_eq!((BigInt::from(p), BigInt::from(q)), (s.p0.clone(), s.q0.clone()), "k = {k}");
                }
            }
            // q0 is out of brute-force reach for k = 109, 181, ...
            assert_eq!(chakravala(k), (s.p0.clone(), s.q0.clone()), "k = {k}");
            let bound = Surd::from(szemberg_single_point_bound(k).unwrap());
            let root = Surd::sqrt_of(&int(k as i64)).unwrap();
            assert!(bound < root, "k = {k}");
        }
    }
}
