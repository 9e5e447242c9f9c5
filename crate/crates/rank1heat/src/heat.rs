//! Heat-trace expansion coefficients `A_k`, produced by two independent exact
//! routes: the direct closed forms, and the residue/special-value relations of
//! the spectral zeta function. The table constructor cross-checks both routes
//! and refuses to return on any mismatch.

use num_traits::{One, Zero};
use rug::Float;

use crate::catalog::{plancherel_polynomial, DensityKind, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::exact::{factorial, gamma_half_odd, half_gamma, Int, PiScaledRational, Rational};
use crate::render::{pi_scaled_to_float, rational_to_float};
use crate::zeta::{b_coefficient, residue_at, residue_at_half, special_value, SpectralParams};

/// Which formula branch produced a table entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Even-dimensional space, `k < d/2` (residue range).
    BelowD2,
    /// Even-dimensional space, `k = d/2` (value at `s = 0`).
    AtD2,
    /// Even-dimensional space, `k > d/2` (special values).
    AboveD2,
    /// SO_1(odd,1): the single half-integer-residue formula covers all `k`.
    OddSo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientEntry {
    pub k: u32,
    /// `A_k` per unit `chi(1) Vol(Gamma\G)`.
    pub value: PiScaledRational,
    pub branch: Branch,
}

/// Dense table of `A_k` for `k = 0..=k_max`, per unit `chi(1) Vol(Gamma\G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub desc: SpaceDescriptor,
    pub entries: Vec<CoefficientEntry>,
    pub k_max: u32,
}

fn fact_rat(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

fn rat_pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

fn sign(j: u64) -> Rational {
    if j % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `(4 pi)^(half_exp / 2)` for even `half_exp`, i.e. integer powers of `4 pi`;
/// `power` counts full powers of `4 pi` doubled so half powers are exact.
fn four_pi_pow_half(twice_power: i64) -> PiScaledRational {
    // (4 pi)^(twice_power/2) = 2^twice_power * pi^(twice_power/2)
    let coeff = if twice_power >= 0 {
        Rational::from_integer(Int::one() << twice_power as usize)
    } else {
        Rational::new(Int::one(), Int::one() << (-twice_power) as usize)
    };
    PiScaledRational::new(coeff, twice_power)
}

fn guard_covered(desc: &SpaceDescriptor) -> Result<()> {
    if desc.is_cotangent() {
        Err(Error::NotCovered(desc.label()))
    } else {
        Ok(())
    }
}

/// Direct closed form for `A_k`, per unit `chi(1) Vol`.
pub fn coeff_closed(desc: &SpaceDescriptor, k: u32) -> Result<PiScaledRational> {
    guard_covered(desc)?;
    if desc.density_kind == DensityKind::Polynomial {
        return coeff_closed_odd_gamma(desc, k);
    }
    let half_d = desc.d / 2;
    if k < half_d {
        coeff_closed_even_low(desc, k)
    } else {
        coeff_closed_even_high(desc, k - half_d)
    }
}

/// Even-dimensional branch for `0 <= k <= d/2 - 1`:
/// `A_k = (4 pi)^(d/2-1) C_G pi sum_l (-rho0^2)^(k-l)/(k-l)! (d/2-l-1)! a_{2(d/2-l-1)}`.
fn coeff_closed_even_low(desc: &SpaceDescriptor, k: u32) -> Result<PiScaledRational> {
    let half_d = desc.d / 2;
    debug_assert!(k < half_d);
    let poly = plancherel_polynomial(desc);
    let neg_rho2 = -(&desc.rho0 * &desc.rho0);
    let mut sum = Rational::zero();
    for l in 0..=k as u64 {
        let idx = (half_d - l as u32 - 1) as u64;
        sum += rat_pow(&neg_rho2, k - l as u32) / fact_rat(k as u64 - l)
            * fact_rat(idx)
            * poly.coeff(idx as usize);
    }
    let prefactor = four_pi_pow_half(2 * (half_d as i64 - 1))
        .mul(&desc.c_g)
        .mul(&PiScaledRational::pi_power(2));
    Ok(prefactor.mul_rational(&sum))
}

/// Even-dimensional branch for `k = d/2 + n`, `n >= 0`.
fn coeff_closed_even_high(desc: &SpaceDescriptor, n: u32) -> Result<PiScaledRational> {
    let half_d = (desc.d / 2) as u64;
    let n = n as u64;
    let poly = plancherel_polynomial(desc);
    let mut first = Rational::zero();
    for j in 0..half_d {
        first += sign(j + 1) * rat_pow(&desc.rho0, 2 * (n + 1 + j) as u32) * fact_rat(j)
            * poly.coeff(j as usize)
            / fact_rat(n + 1 + j);
    }
    let mut second = Rational::zero();
    for j in 0..half_d {
        let aj = poly.coeff(j as usize);
        if aj.is_zero() {
            continue;
        }
        for l in 0..=n {
            second += sign(l) * rat_pow(&desc.rho0, 2 * (n - l) as u32) / fact_rat(n - l)
                * b_coefficient(l + 1, j, desc)?
                * &aj;
        }
    }
    let bracket = first + second * Rational::from_integer(Int::from(2));
    let prefactor = four_pi_pow_half(2 * (half_d as i64 - 1))
        .mul(&desc.c_g)
        .mul(&PiScaledRational::pi_power(2));
    Ok(prefactor.mul_rational(&(sign(n) * bracket)))
}

/// Odd orthogonal closed form in its half-integer-gamma shape:
/// `A_k = pi (4 pi)^(n-1/2) C_G sum_l (-n^2)^(k-l) Gamma(n-l+1/2) a_{2(n-l)} / (k-l)!`.
pub fn coeff_closed_odd_gamma(desc: &SpaceDescriptor, k: u32) -> Result<PiScaledRational> {
    if desc.density_kind != DensityKind::Polynomial {
        return Err(Error::InvalidArgument(format!(
            "{} is not an odd orthogonal space",
            desc.label()
        )));
    }
    let n = ((desc.d - 1) / 2) as u64;
    let poly = plancherel_polynomial(desc);
    let neg_rho2 = -(&desc.rho0 * &desc.rho0);
    let mut sum = PiScaledRational::zero();
    for l in 0..=(k as u64).min(n) {
        let term = half_gamma(n - l).mul_rational(
            &(rat_pow(&neg_rho2, k - l as u32) * poly.coeff((n - l) as usize)
                / fact_rat(k as u64 - l)),
        );
        sum = sum.checked_add(&term)?;
    }
    let prefactor = PiScaledRational::pi_power(2)
        .mul(&four_pi_pow_half(2 * n as i64 - 1))
        .mul(&desc.c_g);
    Ok(prefactor.mul(&sum))
}

/// The same odd orthogonal coefficient with the gamma values expanded into
/// factorials; kept as a distinct route for the form-equivalence check.
pub fn coeff_closed_odd_factorial(desc: &SpaceDescriptor, k: u32) -> Result<PiScaledRational> {
    if desc.density_kind != DensityKind::Polynomial {
        return Err(Error::InvalidArgument(format!(
            "{} is not an odd orthogonal space",
            desc.label()
        )));
    }
    let n = ((desc.d - 1) / 2) as u64;
    let poly = plancherel_polynomial(desc);
    let neg_rho2 = -(&desc.rho0 * &desc.rho0);
    let mut sum = Rational::zero();
    for l in 0..=(k as u64).min(n) {
        let m = n - l;
        sum += rat_pow(&neg_rho2, k - l as u32)
            * Rational::from_integer(factorial(2 * m))
            * poly.coeff(m as usize)
            / (fact_rat(k as u64 - l)
                * fact_rat(m)
                * Rational::from_integer(Int::one() << (2 * m) as usize));
    }
    let prefactor = PiScaledRational::pi_power(3)
        .mul(&four_pi_pow_half(2 * n as i64 - 1))
        .mul(&desc.c_g);
    Ok(prefactor.mul_rational(&sum))
}

/// `A_k` recovered from residues and special values of the zeta function.
/// The result is independent of `params.n0`: at `k = d/2` the zero-mode terms
/// cancel exactly.
pub fn coeff_via_zeta(
    desc: &SpaceDescriptor,
    k: u32,
    params: &SpectralParams,
) -> Result<PiScaledRational> {
    guard_covered(desc)?;
    if desc.density_kind == DensityKind::Polynomial {
        let n = ((desc.d - 1) / 2) as i64;
        let gamma = gamma_half_odd(2 * (n - k as i64) + 1)?;
        let res = residue_at_half(desc, k)?;
        return Ok(four_pi_pow_half(2 * n + 1).mul(&gamma).mul(&res));
    }
    let half_d = desc.d / 2;
    let four_pi_d2 = four_pi_pow_half(desc.d as i64);
    if k < half_d {
        let m = half_d - k;
        let res = residue_at(desc, m)?;
        Ok(four_pi_d2.mul_rational(&fact_rat(m as u64 - 1)).mul(&res))
    } else if k == half_d {
        let zeta0 = special_value(desc, 0, params)?;
        // n0 + zeta(0) = n0 + n0_term + value = value
        let residual = params.n0 as i64 + zeta0.n0_term;
        let total = zeta0.value.checked_add(&PiScaledRational::from_int(residual))?;
        Ok(four_pi_d2.mul(&total))
    } else {
        let n = (k - half_d) as u64;
        let val = special_value(desc, (k - half_d) as u32, params)?;
        Ok(four_pi_d2
            .mul_rational(&(sign(n) / fact_rat(n)))
            .mul(&val.value))
    }
}

fn branch_for(desc: &SpaceDescriptor, k: u32) -> Branch {
    if desc.density_kind == DensityKind::Polynomial {
        Branch::OddSo
    } else {
        let half_d = desc.d / 2;
        if k < half_d {
            Branch::BelowD2
        } else if k == half_d {
            Branch::AtD2
        } else {
            Branch::AboveD2
        }
    }
}

/// Build the dense coefficient table for `k = 0..=k_max`, cross-checking the
/// closed form against the zeta route for every entry.
pub fn coefficient_table(
    desc: &SpaceDescriptor,
    k_max: u32,
    params: &SpectralParams,
) -> Result<CoefficientTable> {
    let mut entries = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let closed = coeff_closed(desc, k)?;
        let via_zeta = coeff_via_zeta(desc, k, params)?;
        if closed != via_zeta {
            return Err(Error::InvalidArgument(format!(
                "internal cross-check failed for {} at k = {k}: closed {closed} vs zeta {via_zeta}",
                desc.label()
            )));
        }
        entries.push(CoefficientEntry {
            k,
            value: closed,
            branch: branch_for(desc, k),
        });
    }
    Ok(CoefficientTable {
        desc: desc.clone(),
        entries,
        k_max,
    })
}

impl CoefficientTable {
    pub fn value(&self, k: u32) -> &PiScaledRational {
        &self.entries[k as usize].value
    }
}

/// Evaluate the truncated expansion
/// `chi(1) Vol (4 pi t)^(-d/2) sum_{k<=N} A_k t^k` at precision `prec` bits.
pub fn evaluate_expansion(
    table: &CoefficientTable,
    params: &SpectralParams,
    t: f64,
    n_terms: u32,
    prec: u32,
) -> Result<Float> {
    if t <= 0.0 {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    if n_terms > table.k_max {
        return Err(Error::InvalidArgument(format!(
            "N = {n_terms} exceeds table k_max = {}",
            table.k_max
        )));
    }
    let t = Float::with_val(prec, t);
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let four_pi_t = Float::with_val(prec, 4) * &pi * &t;
    let d_half = Float::with_val(prec, table.desc.d) / 2u32;
    let prefactor = four_pi_t.pow(-d_half);
    let mut sum = Float::with_val(prec, 0);
    let mut t_pow = Float::with_val(prec, 1);
    for k in 0..=n_terms {
        sum += pi_scaled_to_float(table.value(k), prec) * &t_pow;
        t_pow *= &t;
    }
    let scale = rational_to_float(&params.scale(), prec);
    Ok(scale * prefactor * sum)
}

use rug::ops::Pow;
