//! The four rank-1 families and their spectral data: dimension, half-sum
//! constant, Plancherel constant and density polynomial.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, gamma_half_odd, Int, PiScaledRational, Rational};

/// One of the four admissible families of rank-1 simple groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// SO_1(n,1), real hyperbolic, n >= 2.
    RealHyperbolic,
    /// SU(n,1), complex hyperbolic, n >= 2.
    ComplexHyperbolic,
    /// SP(n,1), quaternionic hyperbolic, n >= 2.
    QuaternionicHyperbolic,
    /// F_4(-20), octonionic hyperbolic plane; takes no parameter.
    OctonionicHyperbolic,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::RealHyperbolic => "so",
            Family::ComplexHyperbolic => "su",
            Family::QuaternionicHyperbolic => "sp",
            Family::OctonionicHyperbolic => "f4",
        }
    }

    pub fn parse(tag: &str) -> Result<Family> {
        match tag {
            "so" => Ok(Family::RealHyperbolic),
            "su" => Ok(Family::ComplexHyperbolic),
            "sp" => Ok(Family::QuaternionicHyperbolic),
            "f4" => Ok(Family::OctonionicHyperbolic),
            other => Err(Error::InvalidArgument(format!("unknown family '{other}'"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Shape of the Plancherel density as a function of `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityKind {
    /// `C_G pi r P(r) tanh(pi r)` — SO_1(2m,1).
    TanhFull,
    /// `C_G pi r P(r) tanh(pi r / 2)` — SU(n,1) n odd, SP(n,1), F_4(-20).
    TanhHalf,
    /// `C_G pi r P(r) coth(pi r / 2)` — SU(n,1) n even (cotangent case).
    CothHalf,
    /// `C_G pi P(r)` — SO_1(2m+1,1).
    Polynomial,
}

/// The constant `a(G)` entering the Bernoulli-weighted coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AGKind {
    /// `a(G) = pi` (SO_1(l,1) with l even).
    Pi,
    /// `a(G) = pi / 2` (SU(q,1) q odd, SP(l,1), F_4(-20)).
    PiHalf,
}

/// One quadratic (or constant) factor `c1 r^2 + c0` of the density polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticFactor {
    pub r2_coeff: Rational,
    pub constant: Rational,
}

/// Full spectral description of one rank-1 space instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceDescriptor {
    pub family: Family,
    /// Family parameter; `None` for F_4(-20).
    pub n: Option<u32>,
    /// Real dimension of the symmetric space.
    pub d: u32,
    /// Half-sum constant rho_0.
    pub rho0: Rational,
    /// Plancherel constant C_G.
    pub c_g: PiScaledRational,
    /// `a(G)` kind, where defined. `None` for SO_1(odd,1) (where it is unused)
    /// and SU(even,1) (the cotangent case).
    pub a_g_kind: Option<AGKind>,
    pub density_kind: DensityKind,
    /// Factored form of P(r); kept alongside the expansion for stable
    /// numerical evaluation.
    pub factors: Vec<QuadraticFactor>,
}

impl SpaceDescriptor {
    /// Short label such as `so(4,1)` or `f4(-20)`.
    pub fn label(&self) -> String {
        match self.n {
            Some(n) => format!("{}({},1)", self.family.tag(), n),
            None => "f4(-20)".to_string(),
        }
    }

    /// True for SU(q,1) with q even, whose closed forms are not available.
    pub fn is_cotangent(&self) -> bool {
        self.density_kind == DensityKind::CothHalf
    }
}

/// Even polynomial with exact coefficients; index `j` holds `a_{2j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenPolynomial {
    coeffs: Vec<Rational>,
}

impl EvenPolynomial {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    /// `a_{2j}` coefficients, lowest first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `a_{2j}`, zero beyond the stored degree.
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree in `r` (the leading stored coefficient is nonzero for all
    /// tabulated families).
    pub fn degree(&self) -> u32 {
        2 * (self.coeffs.len() as u32 - 1)
    }

    pub fn eval(&self, r: &Rational) -> Rational {
        let r2 = r * r;
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &r2 + c;
        }
        acc
    }
}

fn quad(r2_coeff: Rational, constant: Rational) -> QuadraticFactor {
    QuadraticFactor { r2_coeff, constant }
}

fn sq(q: Rational) -> Rational {
    &q * &q
}

fn int(v: i64) -> Rational {
    Rational::from_integer(Int::from(v))
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// `Gamma(n/2)` exactly for positive integer argument `n2 = n` given as twice
/// the half-integer: integer n even -> (n/2 - 1)!, odd -> half-integer gamma.
fn gamma_of_half(n: u32) -> PiScaledRational {
    if n % 2 == 0 {
        PiScaledRational::from_rational(Rational::from_integer(factorial((n / 2 - 1) as u64)))
    } else {
        gamma_half_odd(n as i64).expect("odd argument")
    }
}

/// Build the descriptor for an admissible `(family, n)` pair.
pub fn describe(family: Family, n: Option<u32>) -> Result<SpaceDescriptor> {
    match family {
        Family::OctonionicHyperbolic => {
            if n.is_some() {
                return Err(Error::InvalidArgument(
                    "f4 takes no rank parameter".into(),
                ));
            }
            // C_G = [2^21 Gamma(8)^2]^{-1}
            let c_g = PiScaledRational::from_rational(Rational::new(
                Int::one(),
                Int::from(1u64 << 21) * factorial(7) * factorial(7),
            ));
            let mut factors = vec![quad(frac(1, 4), frac(1, 4)), quad(frac(1, 4), frac(9, 4))];
            for j in 0..=4i64 {
                factors.push(quad(frac(1, 4), sq(frac(2 * j + 1, 2))));
            }
            Ok(SpaceDescriptor {
                family,
                n: None,
                d: 16,
                rho0: int(11),
                c_g,
                a_g_kind: Some(AGKind::PiHalf),
                density_kind: DensityKind::TanhHalf,
                factors,
            })
        }
        _ => {
            let n = n.ok_or_else(|| {
                Error::InvalidArgument(format!("family '{}' requires a parameter n", family))
            })?;
            if n < 2 {
                return Err(Error::InvalidArgument(format!(
                    "{}({n},1): parameter must satisfy n >= 2",
                    family
                )));
            }
            match family {
                Family::RealHyperbolic => {
                    // C_G = [2^(2n-4) Gamma(n/2)^2]^{-1}
                    let g = gamma_of_half(n);
                    let pow = PiScaledRational::from_rational(Rational::new(
                        Int::one(),
                        Int::from(2u8).pow(2 * n - 4),
                    ));
                    let c_g = pow.mul(&g.mul(&g).recip()?);
                    if n % 2 == 0 {
                        let m = n / 2;
                        let factors = (0..m.saturating_sub(1))
                            .map(|j| quad(int(1), sq(frac(2 * j as i64 + 1, 2))))
                            .collect();
                        Ok(SpaceDescriptor {
                            family,
                            n: Some(n),
                            d: n,
                            rho0: frac(n as i64 - 1, 2),
                            c_g,
                            a_g_kind: Some(AGKind::Pi),
                            density_kind: DensityKind::TanhFull,
                            factors,
                        })
                    } else {
                        let m = (n - 1) / 2;
                        let factors = (0..m)
                            .map(|j| quad(int(1), sq(int(j as i64))))
                            .collect();
                        Ok(SpaceDescriptor {
                            family,
                            n: Some(n),
                            d: n,
                            rho0: frac(n as i64 - 1, 2),
                            c_g,
                            a_g_kind: None,
                            density_kind: DensityKind::Polynomial,
                            factors,
                        })
                    }
                }
                Family::ComplexHyperbolic => {
                    // C_G = [2^(2n-1) Gamma(n)^2]^{-1}
                    let g = factorial(n as u64 - 1);
                    let c_g = PiScaledRational::from_rational(Rational::new(
                        Int::one(),
                        Int::from(2u8).pow(2 * n - 1) * &g * &g,
                    ));
                    let factors = (1..n)
                        .map(|j| quad(frac(1, 4), sq(frac(n as i64 - 2 * j as i64, 2))))
                        .collect();
                    let (a_g_kind, density_kind) = if n % 2 == 1 {
                        (Some(AGKind::PiHalf), DensityKind::TanhHalf)
                    } else {
                        (None, DensityKind::CothHalf)
                    };
                    Ok(SpaceDescriptor {
                        family,
                        n: Some(n),
                        d: 2 * n,
                        rho0: int(n as i64),
                        c_g,
                        a_g_kind,
                        density_kind,
                        factors,
                    })
                }
                Family::QuaternionicHyperbolic => {
                    // C_G = [2^(4n+1) Gamma(2n)^2]^{-1}
                    let g = factorial(2 * n as u64 - 1);
                    let c_g = PiScaledRational::from_rational(Rational::new(
                        Int::one(),
                        Int::from(2u8).pow(4 * n + 1) * &g * &g,
                    ));
                    let mut factors = vec![quad(frac(1, 4), frac(1, 4))];
                    for j in 3..=(n as i64 + 1) {
                        factors.push(quad(frac(1, 4), sq(frac(2 * (n as i64 - j) + 3, 2))));
                        factors.push(quad(frac(1, 4), sq(frac(2 * (n as i64 - j) + 5, 2))));
                    }
                    Ok(SpaceDescriptor {
                        family,
                        n: Some(n),
                        d: 4 * n,
                        rho0: int(2 * n as i64 + 1),
                        c_g,
                        a_g_kind: Some(AGKind::PiHalf),
                        density_kind: DensityKind::TanhHalf,
                        factors,
                    })
                }
                Family::OctonionicHyperbolic => unreachable!(),
            }
        }
    }
}

/// Expand the factored density polynomial into `a_{2j}` coefficients.
pub fn plancherel_polynomial(desc: &SpaceDescriptor) -> EvenPolynomial {
    let mut coeffs = vec![Rational::one()];
    for f in &desc.factors {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j] += c * &f.constant;
            next[j + 1] += c * &f.r2_coeff;
        }
        coeffs = next;
    }
    EvenPolynomial::from_coeffs(coeffs)
}

/// Check the expanded degree against the structural rule: `d - 1` for
/// SO_1(odd,1), `d - 2` otherwise.
pub fn degree_check(desc: &SpaceDescriptor) -> bool {
    let poly = plancherel_polynomial(desc);
    let expected = match desc.density_kind {
        DensityKind::Polynomial => desc.d - 1,
        _ => desc.d - 2,
    };
    poly.degree() == expected && !poly.coeffs().last().unwrap().is_zero()
}

/// All admissible spaces of real dimension at most `d_max`.
pub fn admissible_spaces(d_max: u32) -> Vec<SpaceDescriptor> {
    let mut out = Vec::new();
    for n in 2..=d_max.max(2) {
        if n <= d_max {
            out.push(describe(Family::RealHyperbolic, Some(n)).unwrap());
        }
    }
    for n in 2..=d_max / 2 {
        out.push(describe(Family::ComplexHyperbolic, Some(n)).unwrap());
    }
    for n in 2..=d_max / 4 {
        out.push(describe(Family::QuaternionicHyperbolic, Some(n)).unwrap());
    }
    if d_max >= 16 {
        out.push(describe(Family::OctonionicHyperbolic, None).unwrap());
    }
    out
}
