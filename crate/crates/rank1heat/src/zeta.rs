//! Exact residues and special values of the spectral zeta function, per unit
//! `chi(1) * Vol(Gamma\G)`.

use num_traits::{One, Zero};

use crate::catalog::{plancherel_polynomial, AGKind, DensityKind, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::exact::{bernoulli, binomial, factorial, gamma_half_odd, half_gamma, Int, PiScaledRational, Rational};

/// The opaque spectral inputs: representation dimension, quotient volume and
/// the multiplicity of the zero eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralParams {
    pub chi_dim: u32,
    /// Vol(Gamma\G) in the Haar normalization; kept rational so scaled
    /// outputs stay exact.
    pub volume: Rational,
    pub n0: u32,
}

impl SpectralParams {
    pub fn unit() -> Self {
        Self {
            chi_dim: 1,
            volume: Rational::one(),
            n0: 0,
        }
    }

    /// `chi(1) * Vol(Gamma\G)` as a rational scale factor.
    pub fn scale(&self) -> Rational {
        &self.volume * Rational::from_integer(Int::from(self.chi_dim))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaKind {
    Residue,
    SpecialValue,
}

/// One residue or special value, per unit `chi(1) Vol`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaResult {
    pub kind: ZetaKind,
    /// The point `s` at which the value or residue is taken.
    pub location: Rational,
    /// Value per unit `chi(1) Vol(Gamma\G)`.
    pub value: PiScaledRational,
    /// Additive integer contribution from the zero mode; nonzero only at
    /// `s = 0`, where it equals `-n0`.
    pub n0_term: i64,
}

fn rat_pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

fn fact_rat(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

fn sign(j: u64) -> Rational {
    if j % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// The Bernoulli-weighted coefficient
/// `b_p(j) = [2^(1-2(p+j)) - 1] [pi/a(G)]^(2(p+j)) (-1)^j B_{2(p+j)} / (2(p+j)(p-1)!)`.
///
/// The pi power collapses to a rational: it is 1 when `a(G) = pi` and
/// `2^(2(p+j))` when `a(G) = pi/2`.
pub fn b_coefficient(p: u64, j: u64, desc: &SpaceDescriptor) -> Result<Rational> {
    if p == 0 {
        return Err(Error::InvalidArgument("b_coefficient requires p >= 1".into()));
    }
    let a_g = desc.a_g_kind.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "a(G) is not defined for {}",
            desc.label()
        ))
    })?;
    let s = p + j;
    let two_pow = Rational::new(Int::one(), Int::from(2u8).pow(2 * s as u32 - 1));
    let bracket = two_pow - Rational::one();
    let pi_over_a = match a_g {
        AGKind::Pi => Rational::one(),
        AGKind::PiHalf => Rational::from_integer(Int::from(2u8).pow(2 * s as u32)),
    };
    let num = bracket * pi_over_a * sign(j) * bernoulli(2 * s);
    let den = Rational::from_integer(Int::from(2 * s)) * fact_rat(p - 1);
    Ok(num / den)
}

fn require_even_branch(desc: &SpaceDescriptor) -> Result<()> {
    match desc.density_kind {
        DensityKind::CothHalf => Err(Error::NotCovered(desc.label())),
        DensityKind::Polynomial => Err(Error::InvalidArgument(format!(
            "{} has half-integer poles; use residue_at_half",
            desc.label()
        ))),
        _ => Ok(()),
    }
}

/// Residue of the zeta function at integer `s = m`, `1 <= m <= d/2`, for the
/// even-dimensional non-cotangent branch; per unit `chi(1) Vol`.
pub fn residue_at(desc: &SpaceDescriptor, m: u32) -> Result<PiScaledRational> {
    require_even_branch(desc)?;
    let half_d = desc.d / 2;
    if m < 1 || m > half_d {
        return Err(Error::InvalidArgument(format!(
            "residue location m = {m} outside 1..={half_d} for {}",
            desc.label()
        )));
    }
    let poly = plancherel_polynomial(desc);
    let mut sum = Rational::zero();
    for j in 0..=(half_d - m) as u64 {
        let c = binomial(m as u64 + j - 1, j)?;
        sum += sign(j)
            * c
            * rat_pow(&desc.rho0, 2 * j as u32)
            * poly.coeff((m as u64 + j - 1) as usize);
    }
    Ok(desc
        .c_g
        .mul_rational(&(sum / Rational::from_integer(Int::from(4)))))
}

/// Residue of the zeta function at `s = d/2 - k` for SO_1(2n+1,1); per unit
/// `chi(1) Vol`.
pub fn residue_at_half(desc: &SpaceDescriptor, k: u32) -> Result<PiScaledRational> {
    if desc.density_kind != DensityKind::Polynomial {
        return Err(Error::InvalidArgument(format!(
            "{} has integer poles only; use residue_at",
            desc.label()
        )));
    }
    // Paper-side parameter: the space is SO_1(2n+1,1) with rho_0 = n.
    let n = (desc.d - 1) / 2;
    let poly = plancherel_polynomial(desc);
    let gamma_den = gamma_half_odd(2 * (n as i64 - k as i64) + 1)?;
    let mut sum = PiScaledRational::zero();
    if k >= n {
        for j in 0..=n as u64 {
            let fact_idx = j as i64 - n as i64 + k as i64;
            let term = half_gamma(j)
                .div(&gamma_den)?
                .mul_rational(
                    &(sign(j + n as u64 + k as u64)
                        * rat_pow(&desc.rho0, 2 * (j as u32 + k - n))
                        * poly.coeff(j as usize)
                        / fact_rat(fact_idx as u64)),
                );
            sum = sum.checked_add(&term)?;
        }
    } else {
        for j in 0..=k as u64 {
            let idx = (n - k) as u64 + j;
            let term = half_gamma(idx)
                .div(&gamma_den)?
                .mul_rational(
                    &(sign(j)
                        * rat_pow(&desc.rho0, 2 * j as u32)
                        * poly.coeff(idx as usize)
                        / fact_rat(j)),
                );
            sum = sum.checked_add(&term)?;
        }
    }
    Ok(desc
        .c_g
        .mul(&sum)
        .mul_rational(&Rational::new(Int::one(), Int::from(4))))
}

/// Special value of the zeta function at `s = -n`, `n >= 0`; per unit
/// `chi(1) Vol`, with the zero-mode contribution reported separately in
/// `n0_term`.
pub fn special_value(
    desc: &SpaceDescriptor,
    n: u32,
    params: &SpectralParams,
) -> Result<ZetaResult> {
    if desc.density_kind == DensityKind::CothHalf {
        return Err(Error::NotCovered(desc.label()));
    }
    let location = -Rational::from_integer(Int::from(n));
    let n0_term = if n == 0 { -(params.n0 as i64) } else { 0 };
    if desc.density_kind == DensityKind::Polynomial {
        // Odd orthogonal branch: all special values vanish.
        return Ok(ZetaResult {
            kind: ZetaKind::SpecialValue,
            location,
            value: PiScaledRational::zero(),
            n0_term,
        });
    }
    let poly = plancherel_polynomial(desc);
    let half_d = (desc.d / 2) as u64;
    let n = n as u64;
    let mut first = Rational::zero();
    for j in 0..half_d {
        // Product (n+1)(n+2)...(n+j+1) = (n+j+1)! / n!
        let den = fact_rat(n + j + 1) / fact_rat(n);
        first += sign(j + 1) * fact_rat(j) * rat_pow(&desc.rho0, 2 * (j + n + 1) as u32)
            * poly.coeff(j as usize)
            / den;
    }
    let mut second = Rational::zero();
    for j in 0..half_d {
        let aj = poly.coeff(j as usize);
        if aj.is_zero() {
            continue;
        }
        for k in 0..=n {
            let term = sign(k) * (fact_rat(n) / fact_rat(n - k))
                * rat_pow(&desc.rho0, 2 * (n - k) as u32)
                * b_coefficient(k + 1, j, desc)?
                * &aj;
            second += term;
        }
    }
    let total = (first + second * Rational::from_integer(Int::from(2)))
        / Rational::from_integer(Int::from(4));
    Ok(ZetaResult {
        kind: ZetaKind::SpecialValue,
        location,
        value: desc.c_g.mul_rational(&total),
        n0_term,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{describe, Family};
    use crate::exact::rat;

    fn so(n: u32) -> SpaceDescriptor {
        describe(Family::RealHyperbolic, Some(n)).unwrap()
    }

    #[test]
    fn b_coefficient_values() {
        let so2 = so(2);
        assert_eq!(b_coefficient(1, 0, &so2).unwrap(), rat(-1, 24));
        assert_eq!(b_coefficient(2, 0, &so2).unwrap(), rat(7, 960));
        let sp2 = describe(Family::QuaternionicHyperbolic, Some(2)).unwrap();
        assert_eq!(b_coefficient(1, 0, &sp2).unwrap(), rat(-1, 6));
    }

    #[test]
    fn b_coefficient_depends_on_p_plus_j() {
        // b_p(j) (p-1)! (-1)^j depends only on p + j and the a(G) kind.
        for desc in [so(2), describe(Family::QuaternionicHyperbolic, Some(3)).unwrap()] {
            for total in 2u64..=8 {
                let mut seen: Option<Rational> = None;
                for p in 1..total {
                    let j = total - p;
                    let normalized = b_coefficient(p, j, &desc).unwrap()
                        * fact_rat(p - 1)
                        * sign(j);
                    match &seen {
                        None => seen = Some(normalized),
                        Some(prev) => assert_eq!(prev, &normalized),
                    }
                }
            }
        }
    }

    #[test]
    fn residues_so4() {
        let desc = so(4);
        assert_eq!(
            residue_at(&desc, 2).unwrap(),
            PiScaledRational::from_rational(rat(1, 64))
        );
        assert_eq!(
            residue_at(&desc, 1).unwrap(),
            PiScaledRational::from_rational(rat(-1, 32))
        );
        assert!(matches!(residue_at(&desc, 3), Err(Error::InvalidArgument(_))));
        assert!(matches!(residue_at(&desc, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn residue_guards() {
        let su2 = describe(Family::ComplexHyperbolic, Some(2)).unwrap();
        assert!(matches!(residue_at(&su2, 1), Err(Error::NotCovered(_))));
        let so3 = so(3);
        assert!(matches!(residue_at(&so3, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(residue_at_half(&su2, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn half_residues_so3() {
        let desc = so(3);
        assert_eq!(
            residue_at_half(&desc, 0).unwrap(),
            PiScaledRational::new(rat(1, 4), -2)
        );
        assert_eq!(
            residue_at_half(&desc, 1).unwrap(),
            PiScaledRational::new(rat(-1, 8), -2)
        );
    }

    #[test]
    fn special_value_so2_at_zero() {
        let desc = so(2);
        let res = special_value(&desc, 0, &SpectralParams { chi_dim: 1, volume: rat(1, 1), n0: 3 }).unwrap();
        assert_eq!(res.value, PiScaledRational::from_rational(rat(-1, 12)));
        assert_eq!(res.n0_term, -3);
        assert_eq!(res.kind, ZetaKind::SpecialValue);
    }

    #[test]
    fn special_values_odd_so_vanish() {
        for n_so in [3u32, 5, 7, 9, 11] {
            let desc = so(n_so);
            for n in 1..=10 {
                let res = special_value(&desc, n, &SpectralParams::unit()).unwrap();
                assert!(res.value.is_zero());
                assert_eq!(res.n0_term, 0);
            }
            let at_zero = special_value(
                &desc,
                0,
                &SpectralParams { chi_dim: 1, volume: rat(1, 1), n0: 1 },
            )
            .unwrap();
            assert!(at_zero.value.is_zero());
            assert_eq!(at_zero.n0_term, -1);
        }
    }

    #[test]
    fn top_residue_is_leading_coefficient_term() {
        // Single-term case j = 0 at m = d/2.
        for desc in crate::catalog::admissible_spaces(16) {
            if desc.is_cotangent() || desc.density_kind == DensityKind::Polynomial {
                continue;
            }
            let poly = plancherel_polynomial(&desc);
            let top = residue_at(&desc, desc.d / 2).unwrap();
            let expect = desc
                .c_g
                .mul_rational(&(poly.coeff((desc.d / 2 - 1) as usize) / rat(4, 1)));
            assert_eq!(top, expect, "space {}", desc.label());
        }
    }

    #[test]
    fn cotangent_special_value_not_covered() {
        let su2 = describe(Family::ComplexHyperbolic, Some(2)).unwrap();
        assert!(matches!(
            special_value(&su2, 0, &SpectralParams::unit()),
            Err(Error::NotCovered(_))
        ));
    }
}
