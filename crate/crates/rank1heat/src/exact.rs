//! Arbitrary-precision rational arithmetic and the special constants
//! (Bernoulli numbers, half-integer gamma values, binomials) that every
//! closed-form coefficient consumes.

use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = num_rational::BigRational;

/// Exact `n!`.
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}

/// Exact binomial coefficient `n` choose `k`.
pub fn binomial(n: u64, k: u64) -> Result<Rational> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "binomial({n}, {k}): k exceeds n"
        )));
    }
    let k = k.min(n - k);
    let mut num = Int::one();
    let mut den = Int::one();
    for i in 0..k {
        num *= Int::from(n - i);
        den *= Int::from(i + 1);
    }
    Ok(Rational::new(num, den))
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// Bernoulli number `B_m` in the convention with `B_1 = -1/2`, `B_2 = 1/6`.
///
/// Computed by the recurrence `sum_{j=0}^{m} C(m+1, j) B_j = 0` and memoized.
pub fn bernoulli(m: u64) -> Rational {
    let m = m as usize;
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= m {
        let next = cache.len() as u64;
        // B_next = -1/(next+1) * sum_{j<next} C(next+1, j) B_j
        let mut sum = Rational::zero();
        for (j, b) in cache.iter().enumerate() {
            let c = binomial(next + 1, j as u64).expect("j < next + 1");
            sum += c * b;
        }
        let value = -sum / Rational::from_integer(Int::from(next + 1));
        cache.push(value);
    }
    cache[m].clone()
}

/// Exact value `coeff * pi^(pi_half_exp / 2)`.
///
/// Every closed-form output of the library is a rational multiple of a
/// half-integer power of pi, so this representation is closed under all the
/// formulas involved. Addition is defined only between operands with the same
/// pi exponent (the canonical zero `(0, 0)` is absorbing on either side);
/// a mismatch is reported as an error rather than coerced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScaledRational {
    coeff: Rational,
    pi_half_exp: i64,
}

impl PiScaledRational {
    pub fn new(coeff: Rational, pi_half_exp: i64) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { coeff, pi_half_exp }
        }
    }

    pub fn zero() -> Self {
        Self {
            coeff: Rational::zero(),
            pi_half_exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(coeff: Rational) -> Self {
        Self::new(coeff, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(Int::from(n)))
    }

    /// `pi^(half_exp / 2)`.
    pub fn pi_power(half_exp: i64) -> Self {
        Self::new(Rational::one(), half_exp)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_half_exp(&self) -> i64 {
        self.pi_half_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_half_exp != rhs.pi_half_exp {
            return Err(Error::PiExponentMismatch {
                lhs: self.pi_half_exp,
                rhs: rhs.pi_half_exp,
            });
        }
        Ok(Self::new(&self.coeff + &rhs.coeff, self.pi_half_exp))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.clone().neg())
    }

    pub fn neg(self) -> Self {
        Self::new(-self.coeff, self.pi_half_exp)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(&self.coeff * &rhs.coeff, self.pi_half_exp + rhs.pi_half_exp)
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        Self::new(&self.coeff * q, self.pi_half_exp)
    }

    /// Multiplicative inverse; zero has none.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "reciprocal of zero pi-scaled value".into(),
            ));
        }
        Ok(Self::new(self.coeff.recip(), -self.pi_half_exp))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn is_negative(&self) -> bool {
        self.coeff.is_negative()
    }
}

impl fmt::Display for PiScaledRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_half_exp == 0 {
            write!(f, "{}", self.coeff)
        } else if self.pi_half_exp % 2 == 0 {
            write!(f, "{} * pi^{}", self.coeff, self.pi_half_exp / 2)
        } else {
            write!(f, "{} * pi^({}/2)", self.coeff, self.pi_half_exp)
        }
    }
}

/// `Gamma(m + 1/2) = pi^(1/2) (2m)! / (2^(2m) m!)` exactly.
pub fn half_gamma(m: u64) -> PiScaledRational {
    let num = factorial(2 * m);
    let den = factorial(m) * Int::from(4u32).pow(m as u32);
    PiScaledRational::new(Rational::new(num, den), 1)
}

/// `Gamma(t/2)` for odd `t`, positive or negative.
///
/// Negative half-integer arguments are reached from `Gamma(1/2)` by the
/// recurrence `Gamma(x) = Gamma(x+1) / x` applied exactly.
pub fn gamma_half_odd(t: i64) -> Result<PiScaledRational> {
    if t % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "gamma_half_odd({t}): argument must be odd"
        )));
    }
    if t > 0 {
        return Ok(half_gamma(((t - 1) / 2) as u64));
    }
    // Gamma(t/2) = Gamma(1/2) / [ (t/2)(t/2 + 1) ... (-1/2) ]
    let mut den = Rational::one();
    let mut x = Rational::new(Int::from(t), Int::from(2));
    while x.is_negative() {
        den *= x.clone();
        x += Rational::one();
    }
    Ok(half_gamma(0).mul_rational(&den.recip()))
}

/// `Gamma(m)` for a positive integer `m`, i.e. `(m-1)!`.
pub fn int_gamma(m: u64) -> Result<Rational> {
    if m == 0 {
        return Err(Error::InvalidArgument("int_gamma(0) is a pole".into()));
    }
    Ok(Rational::from_integer(factorial(m - 1)))
}

/// Convenience constructor for small rationals in tests and tables.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        // Frozen from the zeta(2k) oracle: B_{2k} = 2 (2k)! zeta(2k) / (2 pi)^{2k}
        // evaluated numerically for k = 1, 2 (see oracle agreement test below).
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_even_convention_matches_zeta_oracle() {
        // Independent numeric check: B_{2k} = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k}
        // with zeta(2k) summed directly.
        for k in 1u32..=3 {
            let zeta: f64 = (1..200_000).map(|n: u64| (n as f64).powi(-2 * k as i32)).sum();
            let expect = (-1f64).powi(k as i32 + 1) * 2.0 * (1..=2 * k as u64).product::<u64>() as f64
                * zeta
                / (2.0 * std::f64::consts::PI).powi(2 * k as i32);
            let got = bernoulli(2 * k as u64);
            let got_f = got.numer().to_string().parse::<f64>().unwrap()
                / got.denom().to_string().parse::<f64>().unwrap();
            assert!(
                (got_f - expect).abs() < 1e-5,
                "B_{} = {} vs oracle {}",
                2 * k,
                got_f,
                expect
            );
        }
    }

    #[test]
    fn bernoulli_odd_vanish() {
        for m in 1..=14 {
            assert!(bernoulli(2 * m + 1).is_zero(), "B_{} != 0", 2 * m + 1);
        }
    }

    #[test]
    fn half_gamma_small_values() {
        assert_eq!(half_gamma(0), PiScaledRational::new(rat(1, 1), 1));
        assert_eq!(half_gamma(1), PiScaledRational::new(rat(1, 2), 1));
        assert_eq!(half_gamma(2), PiScaledRational::new(rat(3, 4), 1));
    }

    #[test]
    fn half_gamma_recurrence() {
        for m in 0..=20u64 {
            let lhs = half_gamma(m + 1);
            let rhs = half_gamma(m).mul_rational(&(rat(1, 2) + Rational::from_integer(Int::from(m))));
            assert_eq!(lhs, rhs, "recurrence fails at m = {m}");
        }
    }

    #[test]
    fn gamma_at_negative_half_integers() {
        // Gamma(-1/2) = -2 sqrt(pi), Gamma(-3/2) = 4/3 sqrt(pi)
        assert_eq!(gamma_half_odd(-1).unwrap(), PiScaledRational::new(rat(-2, 1), 1));
        assert_eq!(gamma_half_odd(-3).unwrap(), PiScaledRational::new(rat(4, 3), 1));
        assert_eq!(gamma_half_odd(3).unwrap(), half_gamma(1));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0).unwrap(), rat(1, 1));
        assert_eq!(binomial(4, 2).unwrap(), rat(6, 1));
        assert!(binomial(3, 5).is_err());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        // Pascal-triangle oracle, independent of the product formula.
        let mut row = vec![Rational::one()];
        for n in 1..=12u64 {
            let mut next = vec![Rational::one()];
            for k in 1..n as usize {
                next.push(&row[k - 1] + &row[k]);
            }
            next.push(Rational::one());
            row = next;
            for (k, expect) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k as u64).unwrap(), expect, "C({n},{k})");
            }
        }
        assert_eq!(binomial(10, 5).unwrap(), rat(252, 1));
    }

    #[test]
    fn pi_scaled_addition_rules() {
        let a = PiScaledRational::new(rat(1, 2), 2);
        let b = PiScaledRational::new(rat(1, 3), 2);
        assert_eq!(a.checked_add(&b).unwrap(), PiScaledRational::new(rat(5, 6), 2));

        let c = PiScaledRational::new(rat(1, 1), 1);
        assert!(matches!(
            a.checked_add(&c),
            Err(Error::PiExponentMismatch { lhs: 2, rhs: 1 })
        ));

        // canonical zero is absorbing regardless of exponent
        assert_eq!(a.checked_add(&PiScaledRational::zero()).unwrap(), a);
        assert_eq!(PiScaledRational::zero().checked_add(&c).unwrap(), c);
    }

    #[test]
    fn pi_scaled_cancellation_is_canonical() {
        let a = PiScaledRational::new(rat(2, 3), 4);
        let sum = a.checked_add(&a.clone().neg()).unwrap();
        assert_eq!(sum, PiScaledRational::zero());
        assert_eq!(sum.pi_half_exp(), 0);
    }

    #[test]
    fn pi_scaled_multiplication() {
        let a = PiScaledRational::new(rat(3, 2), 1);
        let b = PiScaledRational::new(rat(2, 5), -2);
        assert_eq!(a.mul(&b), PiScaledRational::new(rat(3, 5), -1));
        assert_eq!(a.mul(&a.recip().unwrap()), PiScaledRational::one());
    }
}
